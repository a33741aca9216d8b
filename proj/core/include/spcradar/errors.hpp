#ifndef SPCRADAR_ERRORS_HPP
#define SPCRADAR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace spcr {

class dsp_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class invalid_profile_error : public dsp_error {
public:
    using dsp_error::dsp_error;
};

class invalid_size_error : public dsp_error {
public:
    using dsp_error::dsp_error;
};

class delay_too_large_error : public dsp_error {
public:
    using dsp_error::dsp_error;
};

class invalid_segment_error : public dsp_error {
public:
    using dsp_error::dsp_error;
};

class insufficient_noise_error : public dsp_error {
public:
    using dsp_error::dsp_error;
};

class invalid_window_error : public dsp_error {
public:
    using dsp_error::dsp_error;
};

class no_peak_error : public dsp_error {
public:
    using dsp_error::dsp_error;
};

class invalid_estimate_error : public dsp_error {
public:
    using dsp_error::dsp_error;
};

class incompatible_spectra_error : public dsp_error {
public:
    using dsp_error::dsp_error;
};

class invalid_annulus_error : public dsp_error {
public:
    using dsp_error::dsp_error;
};

// Configuration / file-format problems. The CLI maps this to exit code 2.
class config_error : public dsp_error {
public:
    using dsp_error::dsp_error;
};

// Frequency-plan validation failed and the caller did not override. Exit code 3.
class plan_error : public dsp_error {
public:
    using dsp_error::dsp_error;
};

// Capture file size does not match its header. Exit code 4.
class capture_size_error : public dsp_error {
public:
    using dsp_error::dsp_error;
};

// Capture or sidecar file could not be read. Exit code 5.
class capture_io_error : public dsp_error {
public:
    using dsp_error::dsp_error;
};

} // namespace spcr

#endif
