#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fas/modulation.hpp"
#include "oracles.hpp"

#include <cmath>
#include <random>

using fas::conditional_ser;
using fas::ModulationFamily;
using fas::ModulationScheme;
using fas::parse_scheme;
using fas::scheme_params;

TEST_CASE("table parameters") {
    const ModulationScheme bpsk = scheme_params(ModulationFamily::bpsk, 2);
    CHECK(bpsk.p == 1.0);
    CHECK(bpsk.k == 2.0);
    CHECK(bpsk.exact);

    const ModulationScheme qpsk = scheme_params(ModulationFamily::mpsk, 4);
    CHECK(qpsk.p == 2.0);
    CHECK(qpsk.k == doctest::Approx(1.0).epsilon(1e-15));  // 2 sin^2(pi/4)
    CHECK_FALSE(qpsk.exact);

    const ModulationScheme qam16 = scheme_params(ModulationFamily::mqam, 16);
    CHECK(qam16.p == 3.0);
    CHECK(qam16.k == 0.2);
    CHECK_FALSE(qam16.exact);

    const ModulationScheme pam4 = scheme_params(ModulationFamily::mpam, 4);
    CHECK(pam4.p == 1.5);
    CHECK(pam4.k == 0.4);
    CHECK(pam4.exact);
}

TEST_CASE("cross-family arithmetic: qam16 vs pam4") {
    const ModulationScheme qam16 = scheme_params(ModulationFamily::mqam, 16);
    const ModulationScheme pam4 = scheme_params(ModulationFamily::mpam, 4);
    CHECK(qam16.k == doctest::Approx(pam4.k / 2.0).epsilon(1e-15));
}

TEST_CASE("invalid combinations") {
    CHECK_THROWS_AS(scheme_params(ModulationFamily::bpsk, 4), std::domain_error);
    CHECK_THROWS_AS(scheme_params(ModulationFamily::mpsk, 2), std::domain_error);
    CHECK_THROWS_AS(scheme_params(ModulationFamily::mpsk, 6), std::domain_error);
    CHECK_THROWS_AS(scheme_params(ModulationFamily::mpam, 1), std::domain_error);
    CHECK_THROWS_AS(scheme_params(ModulationFamily::mqam, 8), std::domain_error);
    CHECK_THROWS_AS(scheme_params(ModulationFamily::mqam, 2), std::domain_error);
}

TEST_CASE("scheme names round-trip through the parser") {
    for (const char* name : {"bpsk", "psk4", "psk8", "psk16", "pam2", "pam4",
                             "pam8", "qam4", "qam16", "qam64"}) {
        const ModulationScheme s = parse_scheme(name);
        CHECK(s.name() == name);
    }
    CHECK_THROWS_AS(parse_scheme("qam15"), std::domain_error);
    CHECK_THROWS_AS(parse_scheme("dpsk4"), std::domain_error);
    CHECK_THROWS_AS(parse_scheme("psk"), std::domain_error);
    CHECK_THROWS_AS(parse_scheme(""), std::domain_error);
    CHECK_THROWS_AS(parse_scheme("qam99999999999999999999"), std::domain_error);
}

TEST_CASE("conditional SER spot values") {
    const ModulationScheme bpsk = scheme_params(ModulationFamily::bpsk, 2);
    CHECK(conditional_ser(bpsk, 0.0) == 0.5);
    // Q(sqrt(8)), frozen from the quadrature oracle.
    CHECK(conditional_ser(bpsk, 4.0) ==
          doctest::Approx(oracles::q_quadrature(std::sqrt(8.0))).epsilon(1e-12));

    const ModulationScheme qam16 = scheme_params(ModulationFamily::mqam, 16);
    CHECK(conditional_ser(qam16, 0.0) == 1.0);  // cap engaged: 3 * 0.5 > 1

    CHECK_THROWS_AS(conditional_ser(bpsk, -1e-9), std::domain_error);
}

TEST_CASE("conditional SER is monotone decreasing for every scheme") {
    for (const char* name : {"bpsk", "psk8", "pam4", "qam16", "qam64"}) {
        const ModulationScheme s = parse_scheme(name);
        double prev = conditional_ser(s, 0.0);
        for (double g = 0.25; g <= 60.0; g += 0.25) {
            const double cur = conditional_ser(s, g);
            CHECK(cur <= prev);
            prev = cur;
        }
        CHECK(conditional_ser(s, 0.0) <= 1.0);
    }
}

TEST_CASE("BPSK symbol-level AWGN agreement") {
    // At fixed instantaneous SNR gamma, count sign-flip errors for
    // s = +sqrt(gamma) in unit-variance complex noise; the real part of the
    // matched component has variance 1/2. This rig is independent of the
    // channel machinery.
    std::mt19937_64 rng(7);
    std::normal_distribution<double> noise(0.0, std::sqrt(0.5));
    const ModulationScheme bpsk = scheme_params(ModulationFamily::bpsk, 2);
    for (double gamma : {1.0, 4.0, 9.0}) {
        const int symbols = 1'000'000;
        int errors = 0;
        const double amp = std::sqrt(gamma);
        for (int i = 0; i < symbols; ++i) {
            if (amp + noise(rng) < 0.0) ++errors;
        }
        const double expected = conditional_ser(bpsk, gamma);
        const double sd = std::sqrt(expected * (1.0 - expected) / symbols);
        CHECK(std::abs(static_cast<double>(errors) / symbols - expected) <= 3.0 * sd);
    }
}
