#include <cmath>

#include "doctest.h"
#include "sos/disorder.hpp"
#include "sos/error.hpp"

using namespace sos;

TEST_CASE("log mgf closed forms") {
    for (const auto& s : {DisorderSpec::gaussian(), DisorderSpec::rademacher()}) CHECK(log_mgf(s, 0) == 0);
    CHECK(log_mgf(DisorderSpec::gaussian(), 1) == doctest::Approx(0.5));
    CHECK(log_mgf(DisorderSpec::rademacher(), 1) == doctest::Approx(0.4337808304830271).epsilon(1e-14));
    CHECK(log_mgf(DisorderSpec::rademacher(), 800) == doctest::Approx(800 - std::log(2.0)));
    const auto d = DisorderSpec::discrete({-1, 2}, {2.0 / 3, 1.0 / 3});
    CHECK(log_mgf(d, 0.7) == doctest::Approx(std::log(2.0 / 3 * std::exp(-0.7) + std::exp(1.4) / 3)));
}

TEST_CASE("xi variance") {
    CHECK(xi_variance(DisorderSpec::rademacher(), 0) == 0);
    for (double a : {0.3, 1.0, 1.7})
        CHECK(xi_variance(DisorderSpec::gaussian(), a) == doctest::Approx(std::expm1(a * a)).epsilon(1e-13));
    CHECK(xi_variance(DisorderSpec::rademacher(), 1) ==
          doctest::Approx(std::cosh(2.0) / (std::cosh(1.0) * std::cosh(1.0)) - 1).epsilon(1e-14));
    for (double a : {0.1, 0.5, 2.0}) CHECK(xi_variance(DisorderSpec::rademacher(), a) > 0);
}

TEST_CASE("quadrature reproduces moments") {
    const auto g = DisorderSpec::gaussian();
    CHECK(expectation(g, [](double) { return 1.0; }) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(expectation(g, [](double w) { return w; })) < 1e-14);
    CHECK(expectation(g, [](double w) { return w * w; }) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(expectation(g, [](double w) { return w * w * w * w; }) == doctest::Approx(3.0).epsilon(1e-13));
    for (double a : {0.5, 1.0, 2.0})
        CHECK(expectation(g, [&](double w) { return std::exp(a * w); }) ==
              doctest::Approx(std::exp(a * a / 2)).epsilon(1e-12));
    for (const auto& s : {g, DisorderSpec::rademacher(), DisorderSpec::discrete({-2, 1}, {1.0 / 3, 2.0 / 3})})
        CHECK(xi_expectation(s, 1.0, [](double x) { return x; }) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("lambda is convex") {
    for (const auto& s : {DisorderSpec::gaussian(), DisorderSpec::rademacher(),
                          DisorderSpec::discrete({-1, 0, 3}, {0.5, 1.0 / 3, 1.0 / 6})}) {
        const double d = 1e-3;
        for (double a = 0.0; a <= 3.0; a += 0.1)
            CHECK(log_mgf(s, a + d) + log_mgf(s, a - d) - 2 * log_mgf(s, a) >= -1e-12);
    }
}

TEST_CASE("discrete law validation and parsing") {
    CHECK_THROWS_AS(DisorderSpec::discrete({1, 2}, {0.5, 0.5}), InputError);
    CHECK_THROWS_AS(DisorderSpec::discrete({-1, 1}, {0.5, 0.6}), InputError);
    const auto d = DisorderSpec::discrete({-1, 3}, {0.75, 0.25});
    CHECK(DisorderSpec::parse(d.to_string()) == d);
    CHECK(DisorderSpec::parse("gaussian").kind == DisorderKind::gaussian);
    CHECK(DisorderSpec::parse("rademacher").kind == DisorderKind::rademacher);
    CHECK_THROWS_AS(DisorderSpec::parse("cauchy"), InputError);
}

TEST_CASE("sampling is reproducible and order independent") {
    const Box b(8, 5);
    const auto s = DisorderSpec::gaussian();
    CHECK(sample(s, b, 42).values() == sample(s, b, 42).values());
    CHECK(sample(s, b, 42).values() != sample(s, b, 43).values());
    // A sub-box sees the same values at the same sites.
    const Box sub(3, 2, {4, 2});
    const auto big = sample(s, b, 9), small = sample(s, sub, 9);
    for (std::size_t i = 0; i < sub.size(); ++i) CHECK(small[sub.site(i)] == big[sub.site(i)]);
    const auto signs = sample(DisorderSpec::rademacher(), b, 1);
    for (double v : signs.values()) CHECK((v == 1.0 || v == -1.0));
}

TEST_CASE("gaussian sample moments") {
    const Box b(1000, 1000);
    const auto f = sample(DisorderSpec::gaussian(), b, 2024);
    double m = 0, m2 = 0;
    for (double v : f.values()) {
        m += v;
        m2 += v * v;
    }
    m /= b.size();
    m2 /= b.size();
    CHECK(std::abs(m) < 0.005);
    CHECK(std::abs(m2 - 1) < 0.01);
    const auto d = sample(DisorderSpec::discrete({-1, 3}, {0.75, 0.25}), Box(500, 200), 5);
    double md = 0;
    for (double v : d.values()) md += v;
    CHECK(std::abs(md / 1e5) < 3 * std::sqrt(3.0 / 1e5));
}

TEST_CASE("derived seeds differ") {
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
    CHECK(derive_seed(5, 7) == derive_seed(5, 7));
}
