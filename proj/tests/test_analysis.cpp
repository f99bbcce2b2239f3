#include <doctest.h>

#include <cmath>

#include "otoc/analysis.hpp"
#include "otoc/propagator.hpp"

using namespace otoc;

TEST_CASE("o_infinity closed form") {
    CHECK(o_infinity(2) == doctest::Approx(16.0 / 15.0).epsilon(1e-15));
    CHECK(o_infinity(1) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    CHECK(o_infinity(10) == doctest::Approx(1.0 + 1.0 / 1048575.0).epsilon(1e-15));
}

TEST_CASE("counting oracle matches exactly as a rational") {
    for (int n = 1; n <= 6; ++n) {
        const auto c = o_infinity_bruteforce(n);
        // closed form is 4^n / (4^n - 1); compare integer cross products
        const std::int64_t fourn = std::int64_t{1} << (2 * n);
        CHECK(c.den == fourn - 1);
        CHECK(c.num == fourn);
        CHECK(c.commuting == 2 * (fourn / 4) - 1);
        CHECK(c.anticommuting == 2 * (fourn / 4));
        CHECK(c.value == doctest::Approx(o_infinity(n)).epsilon(1e-15));
    }
    CHECK_THROWS_AS(o_infinity_bruteforce(9), std::invalid_argument);
}

TEST_CASE("rate of a geometric series is constant") {
    OtocSeries s;
    s.n = 6;
    s.i = 1;
    s.ticks_per_period = 1;
    const double oinf = o_infinity(6), lam = 0.6;
    for (int t = 0; t <= 20; ++t) {
        s.ticks.push_back(t);
        std::vector<double> row(6, oinf);
        row[3] = oinf + std::pow(lam, t);
        s.values.push_back(row);
    }
    const auto r = rate_series(s, 4);
    for (std::size_t k = 0; k < r.rates.size(); ++k) {
        REQUIRE(r.defined[k]);
        CHECK(r.rates[k] == doctest::Approx(-std::log(lam)).epsilon(1e-12));
    }
}

TEST_CASE("swap series has no defined rate off the cone") {
    const GateKernel sw = kernel_from_gate(CanonicalGate(1, 1, 1));
    auto series = evolve(Protocol::brickwall(8, Boundary::pbc), sw, 1, 16);
    const auto r = rate_series(series, 4);
    int nonzero = 0;
    for (std::size_t k = 0; k < r.rates.size(); ++k)
        if (r.defined[k] && std::abs(r.rates[k]) > 1e-12) ++nonzero;
    CHECK(nonzero <= 8);   // only the cone-passing blips contribute
}

TEST_CASE("light-cone closed form values") {
    const auto du = derive_uv(CanonicalGate(1, 1, 0.2));
    for (long t = 1; t <= 6; ++t)
        CHECK(lightcone_value(du, 1, 1 + 2 * t, t) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));

    const auto u4 = scalars_haar_u4();
    CHECK(lightcone_value(u4, 1, 3, 1) ==
          doctest::Approx((4.0 / 3.0) * (16.0 / 25.0)).epsilon(1e-14));   // c-^2 branch
    CHECK(lightcone_value(u4, 2, 3, 1) ==
          doctest::Approx((4.0 / 3.0) * 0.8 * 0.8).epsilon(1e-14));   // c+ c- branch, even i

    const auto wg = derive_uv(CanonicalGate(0.5, 0.3, 0.1));
    CHECK(lightcone_value(wg, 1, 3, 1) ==
          doctest::Approx((4.0 / 3.0) * wg.cminus * wg.cminus).epsilon(1e-14));
    CHECK_THROWS_AS(lightcone_value(wg, 1, 4, 1), std::invalid_argument);
    // even-i mirror: boundary sits at i - 2t and i + (2t - 1)
    CHECK(on_lightcone_boundary(6, 2, 2));
    CHECK(on_lightcone_boundary(6, 9, 2));
    CHECK(!on_lightcone_boundary(6, 10, 2));
    CHECK(!on_lightcone_boundary(6, 3, 2));
}

TEST_CASE("simulated boundary equals the closed form while inside the wrap window") {
    const int n = 14;
    const auto wg = derive_uv(CanonicalGate(0.5, 0.3, 0.1));
    const GateKernel k = kernel_from_scalars(wg);
    auto series = evolve(Protocol::brickwall(n, Boundary::pbc), k, 1, n);
    // clean while t < (n+2)/4
    for (long t = 1; 4 * t < n + 2; ++t) {
        const int j = (1 + 2 * t - 1) % n + 1;
        CHECK(series.at_tick(2 * t, j) ==
              doctest::Approx(lightcone_value(wg, 1, 1 + 2 * t, t)).epsilon(1e-12));
    }
}

TEST_CASE("transition time predictions") {
    CHECK(*predict_transition_time(34, 1, 7, GateClass::dual_unitary) == doctest::Approx(20.0));
    CHECK(*predict_transition_time(34, 1, 8, GateClass::dual_unitary) == doctest::Approx(14.0));
    CHECK(!predict_transition_time(12, 1, 1, GateClass::dual_unitary).has_value());
    CHECK(!predict_transition_time(12, 1, 7, GateClass::generic).has_value());
    CHECK(!predict_transition_time(12, 2, 5, GateClass::dual_unitary).has_value());
}

TEST_CASE("spike time predictions") {
    auto right = predict_spike_times(34, 1, 7, Boundary::pbc, 40);
    REQUIRE(right.size() >= 3);
    CHECK(right[0] == doctest::Approx(3.0));
    CHECK(std::count_if(right.begin(), right.end(),
                        [](double t) { return std::abs(t - 20.0) < 1e-12; }) == 1);
    CHECK(std::count_if(right.begin(), right.end(),
                        [](double t) { return std::abs(t - 37.0) < 1e-12; }) == 1);

    auto both = predict_spike_times(34, 1, 8, Boundary::pbc, 40);
    CHECK(std::count_if(both.begin(), both.end(),
                        [](double t) { return std::abs(t - 14.0) < 1e-12; }) == 1);
    CHECK(std::count_if(both.begin(), both.end(),
                        [](double t) { return std::abs(t - 31.0) < 1e-12; }) == 1);

    auto obc = predict_spike_times(26, 1, 8, Boundary::obc, 80);
    REQUIRE(obc.size() == 3);
    CHECK(obc[0] == doctest::Approx(23.0));
    CHECK(obc[1] == doctest::Approx(49.0));
    CHECK(obc[2] == doctest::Approx(75.0));
}

TEST_CASE("phantom report on synthetic two-slope data") {
    OtocSeries s;
    s.n = 24;
    s.i = 1;
    s.ticks_per_period = 1;
    s.protocol = "bw_pbc";
    const double oinf = o_infinity(24);
    const double r_early = 0.3, r_late = 0.8, tc = 20;
    for (int t = 0; t <= 40; ++t) {
        s.ticks.push_back(t);
        std::vector<double> row(24, oinf);
        double offset = (t < 3) ? 0.0
                                : ((t <= tc) ? std::exp(-r_early * t)
                                             : std::exp(-r_early * tc - r_late * (t - tc)));
        row[4] = oinf + offset;
        s.values.push_back(row);
    }
    std::vector<LambdaRef> refs{{"bw_pbc", std::exp(-0.8), 24}, {"bw_obc", std::exp(-0.3), 24}};
    const auto rep = phantom_report(s, 5, refs, tc);
    CHECK(rep.early_rate == doctest::Approx(r_early).epsilon(1e-6));
    CHECK(rep.late_rate == doctest::Approx(r_late).epsilon(1e-6));
    CHECK(rep.early_match == "bw_obc");
    CHECK(rep.late_match == "bw_pbc");
    CHECK(rep.t_c_observed == doctest::Approx(tc).epsilon(0.1));
    CHECK(rep.early_rate < rep.late_rate);
    const auto js = phantom_report_json(rep);
    CHECK(js.find("\"early_rate\"") != std::string::npos);
}

TEST_CASE("phantom report flags swap-like series") {
    const GateKernel sw = kernel_from_gate(CanonicalGate(1, 1, 1));
    auto series = evolve(Protocol::brickwall(12, Boundary::pbc), sw, 1, 60);
    const auto rep = phantom_report(series, 4, {}, 9.0);
    CHECK(rep.no_exponential_relaxation);
}
