#include "spcradar/errors.hpp"
#include "spcradar/psd_profile.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace spcr;

TEST_SUITE_BEGIN("psd_profile");

TEST_CASE("log-log interpolation between points") {
    PsdProfile p({{1e3, -70.0}, {1e4, -85.0}});
    CHECK(p.level_dbc_hz(1e3) == doctest::Approx(-70.0));
    CHECK(p.level_dbc_hz(1e4) == doctest::Approx(-85.0));
    // log-frequency midpoint maps to the dB midpoint
    CHECK(p.level_dbc_hz(std::sqrt(1e3 * 1e4)) == doctest::Approx(-77.5));
}

TEST_CASE("evaluation clamps outside the covered range") {
    PsdProfile p({{1e3, -70.0}, {1e6, -110.0}});
    CHECK(p.level_dbc_hz(10.0) == doctest::Approx(-70.0));
    CHECK(p.level_dbc_hz(1e8) == doctest::Approx(-110.0));
}

TEST_CASE("one-sided PSD counts both sidebands") {
    PsdProfile p({{1e3, -100.0}, {1e6, -100.0}});
    CHECK(p.psd_one_sided(1e4) == doctest::Approx(2e-10));
}

TEST_CASE("invariants rejected at construction") {
    CHECK_THROWS_AS(PsdProfile({{1e3, -70.0}}), invalid_profile_error);
    CHECK_THROWS_AS(PsdProfile({{1e3, -70.0}, {1e3, -80.0}}), invalid_profile_error);
    CHECK_THROWS_AS(PsdProfile({{1e4, -70.0}, {1e3, -80.0}}), invalid_profile_error);
    CHECK_THROWS_AS(PsdProfile({{-1.0, -70.0}, {1e3, -80.0}}), invalid_profile_error);
    const double nan = std::nan("");
    CHECK_THROWS_AS(PsdProfile({{1e3, nan}, {1e4, -80.0}}), invalid_profile_error);
}

TEST_CASE("csv round trip with comments and header") {
    const auto dir = std::filesystem::temp_directory_path() / "spcr_psd_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "profile.csv";
    {
        std::ofstream out(path);
        out << "# measured on bench\n";
        out << "offset_hz,level_dbc_hz\n";
        out << "1000,-70.5\n";
        out << "10000,-85 # corner\n";
    }
    const auto p = PsdProfile::load_csv(path);
    REQUIRE(p.points().size() == 2);
    CHECK(p.points()[0].offset_hz == doctest::Approx(1e3));
    CHECK(p.points()[1].level_dbc_hz == doctest::Approx(-85.0));

    const auto path2 = dir / "saved.csv";
    p.save_csv(path2);
    const auto q = PsdProfile::load_csv(path2);
    CHECK(q.points()[0].level_dbc_hz == doctest::Approx(-70.5));
}

TEST_CASE("csv without header is rejected") {
    const auto dir = std::filesystem::temp_directory_path() / "spcr_psd_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "no_header.csv";
    {
        std::ofstream out(path);
        out << "1000,-70\n10000,-85\n";
    }
    CHECK_THROWS_AS(PsdProfile::load_csv(path), config_error);
    CHECK_THROWS_AS(PsdProfile::load_csv(dir / "missing.csv"), config_error);
}

TEST_SUITE_END();
