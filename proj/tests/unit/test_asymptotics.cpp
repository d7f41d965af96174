#include <cmath>
#include <random>

#include "doctest.h"
#include "sos/asymptotics.hpp"
#include "sos/error.hpp"

using namespace sos;

namespace {

const DisorderSpec rad = DisorderSpec::rademacher();

GParams gp(double beta, double theta1 = 1.05) { return make_gparams(beta, rad, 1.0, theta1); }

}  // namespace

TEST_CASE("G at the ends") {
    const auto g = gp(3.5);
    CHECK(G(g, 0.0) == 0.0);
    const double v = g.var_xi;
    CHECK(v == doctest::Approx(xi_variance(rad, 1.0)));
    // The n = 0 piece wins from the first kink v (p_0 + p_1) / 2 on; the closed form
    // index switches at theta1 v / 2, slightly earlier.
    CHECK(n_G(g, g.theta1 * v / 2) == 0);
    CHECK(n_argmax(g, g.theta1 * v / 2) == 1);
    for (double h : {kink_sequence(g, 1).kinks[0] * (1 + 1e-9), g.theta1 * v, 10.0}) {
        CHECK(n_argmax(g, h) == 0);
        CHECK(n_G(g, h) == 0);
        CHECK(G(g, h) == doctest::Approx(g.theta1 * h - g.theta1 * g.theta1 * v / 2).epsilon(1e-14));
    }
}

TEST_CASE("G is the maximum over the pieces") {
    const auto g = gp(3.0);
    for (double h = 1e-9; h < 1; h *= 1.7) {
        double best = 0;
        for (int n = 0; n < 60; ++n) best = std::max(best, g.p(n) * h - g.p(n) * g.p(n) * g.var_xi / 2);
        CHECK(G(g, h) == doctest::Approx(best).epsilon(1e-14));
        const int n = n_argmax(g, h);
        CHECK(g.p(n) * h - g.p(n) * g.p(n) * g.var_xi / 2 == doctest::Approx(G(g, h)).epsilon(1e-14));
    }
}

TEST_CASE("kinks") {
    for (double beta : {3.5, 5.0}) {
        const auto g = gp(beta);
        const auto ks = kink_sequence(g, 8);
        REQUIRE(ks.kinks.size() == 8);
        const double q = std::exp(-4 * beta);
        for (int n = 0; n < 8; ++n) {
            CHECK(ks.kinks[n] ==
                  doctest::Approx(g.theta1 * g.var_xi * std::pow(q, n) * (1 + q) / 2).epsilon(1e-13));
            CHECK(ks.kinks[n] == doctest::Approx(kink_by_bisection(g, n)).epsilon(1e-9));
            CHECK(ks.slopes[n] == doctest::Approx(g.p(n)));
            if (n > 0) CHECK(ks.kinks[n] / ks.kinks[n - 1] == doctest::Approx(q).epsilon(1e-12));
            // The maximiser switches from n to n + 1 across the kink.
            CHECK(n_argmax(g, ks.kinks[n] * (1 + 1e-6)) == n);
            CHECK(n_argmax(g, ks.kinks[n] * (1 - 1e-6)) == n + 1);
        }
    }
}

TEST_CASE("closed form index is within one of the maximiser") {
    for (double beta : {3.5, 5.0}) {
        const auto g = gp(beta);
        int worst = 0;
        double lo = 1e9, hi = -1e9;
        for (int i = 0; i < 1000; ++i) {
            const double h = std::pow(10.0, -12 + 10.0 * i / 999);
            worst = std::max(worst, std::abs(n_G(g, h) - n_argmax(g, h)));
            const double d = n_argmax(g, h) - std::abs(std::log(h)) / (4 * beta);
            lo = std::min(lo, d);
            hi = std::max(hi, d);
        }
        CHECK(worst <= 1);
        CHECK(hi - lo < 1.5);
    }
}

TEST_CASE("G over h squared oscillates") {
    const double beta = 3.5;
    const auto g = gp(beta);
    const double period = std::exp(4 * beta);
    double lo = 1e300, hi = 0;
    for (int i = 0; i <= 3000; ++i) {
        const double h = 1e-8 * std::pow(period, 3.0 * i / 3000);
        const double r = G(g, h) / (h * h);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    CHECK(hi / lo >= 1.01);
    CHECK(hi * 2 * g.var_xi <= 1 + 1e-12);
}

TEST_CASE("Bernoulli free energy") {
    CHECK(bernoulli_free_energy(0.0, rad, 1.0, 0.3) == 0.0);
    for (double p : {0.01, 0.2, 0.5}) CHECK(bernoulli_free_energy(p, rad, 1.0, 0.0) <= 0.0);
    const double p = 0.1, h = 0.05;
    const double lam = log_mgf(rad, 1.0);
    const double closed = 0.5 * (std::log(1 + p * (std::exp(h + 1 - lam) - 1)) +
                                 std::log(1 + p * (std::exp(h - 1 - lam) - 1)));
    CHECK(bernoulli_free_energy(p, rad, 1.0, h) == doctest::Approx(closed).epsilon(1e-13));
    std::mt19937_64 rng(7);
    const int n = 10000000;
    double s = 0, s2 = 0;
    for (int i = 0; i < n; ++i) {
        const double w = (rng() >> 63) ? 1.0 : -1.0;
        const double x = std::log(1 + p * (std::exp(h + w - lam) - 1));
        s += x;
        s2 += x * x;
    }
    const double mean = s / n, se = std::sqrt((s2 / n - mean * mean) / n);
    CHECK(std::abs(mean - closed) < 3 * se);
    // Gaussian disorder goes through the quadrature.
    const auto gs = DisorderSpec::gaussian();
    CHECK(bernoulli_free_energy(0.3, gs, 0.5, 0.0) < 0);
}

TEST_CASE("Taylor gap") {
    CHECK(taylor_gap(0.0, rad, 1.0, 0.1) == 0.0);
    double sup = 0;
    for (double p = 1e-4; p < 0.3; p *= 1.5)
        for (double h = 1e-4; h < 0.3; h *= 1.5)
            sup = std::max(sup, taylor_gap(p, rad, 1.0, h) / (h * h * p + h * p * p + p * p * p));
    CHECK(sup < 20);
}

TEST_CASE("Bernoulli maximum approaches G") {
    const double beta = 3.5;
    const auto g = gp(beta);
    double last = 1e9;
    for (double h : {1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8}) {
        double best = -1e300;
        for (int n = 1; n < 40; ++n) best = std::max(best, bernoulli_free_energy(g.p(n), rad, 1.0, h));
        const double gap = std::abs(best / G(g, h) - 1);
        CHECK(gap < last + 1e-3);
        last = gap;
    }
    CHECK(last < 0.05);
}

TEST_CASE("golden section") {
    const auto m = golden_section_max([](double x) { return -(x - 0.3) * (x - 0.3) + 2; }, 0, 1);
    CHECK(m.p_star == doctest::Approx(0.3).epsilon(1e-8));
    CHECK(m.value == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(m.concave);
    CHECK_THROWS_AS(golden_section_max([](double x) { return x; }, 1, 0), InputError);
}

TEST_CASE("max over p dominates G and matches the quadratic asympotic") {
    CHECK(upper_bound_max_p(rad, 1.0, 0.0).value == 0.0);
    CHECK(upper_bound_max_p(rad, 1.0, 0.0).p_star == 0.0);
    const auto g = gp(3.5);
    // Below the first kink every p_n in play lies in [0, 1].
    for (double h = 1e-8; h < kink_sequence(g, 1).kinks[0]; h *= 3) CHECK(upper_bound_max_p(rad, 1.0, h).value >= G(g, h) * (1 - 1e-12));
    for (double h : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
        const double r = upper_bound_max_p(rad, 1.0, h).value / (h * h / (2 * g.var_xi));
        CHECK(r == doctest::Approx(1.0).epsilon(h < 1e-3 ? 0.01 : 0.2));
    }
    double last = 0;
    for (double h = 1e-4; h < 0.5; h *= 2) {
        const double v = upper_bound_max_p(rad, 1.0, h).value;
        CHECK(v > last);
        last = v;
    }
}

TEST_CASE("fractional bound") {
    const double h = 1e-3;
    const double full = upper_bound_max_p(rad, 1.0, h).value;
    const double root = p_h_maximizer(rad, 1.0, h).value;
    double last = 0;
    for (double theta : {1e-6, 0.2, 0.45, 0.8, 0.99}) {
        const double v = fractional_upper_bound(rad, 1.0, h, theta);
        // Jensen both ways: E log X <= theta^{-1} log E X^theta <= log E X <= h.
        CHECK(v >= full * (1 - 1e-9));
        CHECK(v <= h * (1 + 1e-12));
        CHECK(v >= last);
        if (theta < 0.5) CHECK(v <= 2 * std::log(root) * (1 + 1e-9));
        last = v;
    }
    CHECK(fractional_upper_bound(rad, 1.0, h, 1e-6) == doctest::Approx(full).epsilon(1e-4));
    const double theta = std::pow(1e-4, 0.05);
    const double a = fractional_upper_bound(rad, 1.0, 1e-4, theta);
    CHECK(std::isfinite(a));
    CHECK(a == fractional_upper_bound(rad, 1.0, 1e-4, theta));
    CHECK_THROWS_AS(fractional_upper_bound(rad, 1.0, h, 1.5), InputError);
}

TEST_CASE("rho functions") {
    for (const auto& spec : {rad, DisorderSpec::gaussian()}) {
        const double v = xi_variance(spec, 1.0);
        const auto tiny = rho_functions(1e-9, 0.2, spec, 1.0);
        CHECK(std::abs(tiny.rho1) < 1e-15);
        CHECK(std::abs(tiny.rho2) < 1e-15);
        CHECK(std::abs(tiny.rho3) < 1e-7);
        double c = 0;
        for (int i = 1; i <= 20; ++i)
            for (int j = 1; j <= 20; ++j) {
                const double p = 0.45 * i / 20, th = 0.45 * j / 20;
                const auto r = rho_functions(p, th, spec, 1.0);
                c = std::max(c, (r.rho1 + p * p * v / 2) / (p * p * p + th * p * p));
                c = std::max(c, (r.rho2 - p * p * v) / (p * p * p));
                c = std::max(c, (r.rho3 + p * v) / (p * p));
                if (p < 0.05) CHECK(r.rho2 >= 0);
            }
        CHECK(c <= 50);
    }
    CHECK_THROWS_AS(rho_functions(0.6, 0.2, rad, 1.0), InputError);
}

TEST_CASE("square-root maximiser") {
    CHECK(p_h_maximizer(rad, 1.0, 0.0).p_h == 0.0);
    const auto curve = p_h_curve(rad, 1.0, {1e-5, 1e-4, 1e-3, 1e-2});
    REQUIRE(curve.size() == 4);
    for (const auto& pt : curve) {
        if (pt.h <= 1e-3) CHECK(pt.ratio == doctest::Approx(1.0).epsilon(0.1));
        CHECK(std::isfinite(pt.excess_h2));
        CHECK(pt.excess_h2 > 0);
        CHECK(pt.excess_h2 < 1);
    }
}
