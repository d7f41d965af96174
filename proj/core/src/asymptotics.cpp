#include "sos/asymptotics.hpp"

#include <cmath>
#include <limits>

#include "sos/error.hpp"

namespace sos {

double GParams::p(int n) const { return theta1 * std::exp(-4.0 * beta * n); }

GParams make_gparams(double beta, const DisorderSpec& spec, double alpha, double theta1) {
    if (!(theta1 > 0)) throw InputError("theta1 must be positive");
    return {beta, alpha, theta1, xi_variance(spec, alpha)};
}

namespace {

double piece(const GParams& g, int n, double h) {
    const double p = g.p(n);
    return p * h - 0.5 * p * p * g.var_xi;
}

// Pieces increase in n while p_n > h / v and decrease after, so the scan can stop at
// the first p_n <= h / v.
std::pair<int, double> best_piece(const GParams& g, double h) {
    int best = 0;
    double value = piece(g, 0, h);
    for (int n = 0;; ++n) {
        const double t = piece(g, n, h);
        if (t > value) {
            value = t;
            best = n;
        }
        if (g.p(n) * g.var_xi <= h || g.p(n) == 0) break;
    }
    return {best, value};
}

}  // namespace

double G(const GParams& g, double h) {
    if (h < 0) throw InputError("G needs h >= 0");
    if (h == 0) return 0;
    return best_piece(g, h).second;
}

int n_argmax(const GParams& g, double h) {
    if (!(h > 0)) throw InputError("n_argmax needs h > 0");
    return best_piece(g, h).first;
}

int n_G(const GParams& g, double h) {
    if (!(h > 0)) throw InputError("n_G needs h > 0");
    if (g.var_xi == 0) return 0;
    const double x = std::log(g.theta1 * g.var_xi / (2 * h)) / (4 * g.beta);
    return std::max(0, static_cast<int>(std::ceil(x)));
}

KinkSequence kink_sequence(const GParams& g, int count) {
    KinkSequence k;
    for (int n = 0; n < count; ++n) {
        k.kinks.push_back(0.5 * g.var_xi * (g.p(n) + g.p(n + 1)));
        k.slopes.push_back(g.p(n));
    }
    return k;
}

double kink_by_bisection(const GParams& g, int n) {
    auto diff = [&](double h) { return piece(g, n, h) - piece(g, n + 1, h); };
    double lo = 0, hi = g.var_xi * g.p(n) + 1;
    // diff is increasing in h (slope p_n - p_{n+1} > 0).
    for (int it = 0; it < 2000 && hi - lo > 0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (diff(mid) < 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double bernoulli_free_energy(double p, const DisorderSpec& spec, double alpha, double h) {
    if (p < 0 || p > 1) throw InputError("p must lie in [0, 1]");
    const double lambda = log_mgf(spec, alpha);
    return expectation(spec, [&](double w) { return std::log1p(p * std::expm1(alpha * w - lambda + h)); });
}

double taylor_gap(double p, const DisorderSpec& spec, double alpha, double h) {
    const double v = xi_variance(spec, alpha);
    return std::abs(bernoulli_free_energy(p, spec, alpha, h) - (p * h - 0.5 * p * p * v));
}

Maximum golden_section_max(const std::function<double(double)>& f, double a, double b, double tol) {
    if (!(a < b) || !(tol > 0)) throw InputError("golden section needs a < b and tol > 0");
    const double r = (std::sqrt(5.0) - 1) / 2;
    double c = b - r * (b - a), d = a + r * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        } else {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        }
    }
    Maximum m;
    m.p_star = 0.5 * (a + b);
    m.value = f(m.p_star);
    // Endpoints are candidates too.
    for (double e : {a, b}) {
        const double fe = f(e);
        if (fe > m.value) {
            m.value = fe;
            m.p_star = e;
        }
    }
    const double step = std::max(1e-6 * m.p_star, 1e-9);
    if (m.p_star - step > 0)
        m.concave = f(m.p_star - step) + f(m.p_star + step) - 2 * m.value <= 1e-15 * std::abs(m.value);
    return m;
}

Maximum upper_bound_max_p(const DisorderSpec& spec, double alpha, double h) {
    if (h < 0) throw InputError("upper bound needs h >= 0");
    if (h == 0) return {0, 0, true};
    return golden_section_max([&](double p) { return bernoulli_free_energy(p, spec, alpha, h); }, 0.0, 1.0);
}

double fractional_upper_bound(const DisorderSpec& spec, double alpha, double h, double theta) {
    if (!(theta > 0 && theta < 1)) throw InputError("theta must lie in (0, 1)");
    const double lambda = log_mgf(spec, alpha);
    auto f = [&](double p) {
        const double m1 = expectation(spec, [&](double w) {
            return std::expm1(theta * std::log1p(p * std::expm1(alpha * w - lambda + h)));
        });
        return std::log1p(m1) / theta;
    };
    return golden_section_max(f, 0.0, 1.0).value;
}

RhoValues rho_functions(double p, double theta, const DisorderSpec& spec, double alpha) {
    if (!(p > 0 && p < 0.5) || !(theta > 0 && theta < 0.5)) throw InputError("p and theta must lie in (0, 1/2)");
    const double lambda = log_mgf(spec, alpha);
    const Quadrature q = quadrature(spec);
    for (double w : q.nodes)
        if (1 + p * std::expm1(alpha * w - lambda) <= 0) throw DomainError("1 + p (xi - 1) must stay positive");
    const double s = theta / (1 - theta);
    RhoValues r;
    const double e1 = expectation(spec, [&](double w) {
        return std::expm1(s * std::log1p(p * std::expm1(alpha * w - lambda)));
    });
    r.rho1 = (1 - theta) / theta * std::log1p(e1);
    const double e2 = expectation(spec, [&](double w) {
        const double y = p * std::expm1(alpha * w - lambda);
        return -y / (1 + y);
    });
    r.rho2 = std::log1p(e2);
    const double e3 = expectation(spec, [&](double w) {
        const double x = std::expm1(alpha * w - lambda);
        return x * (1 - p) / (1 + p * x);
    });
    r.rho3 = std::log1p(e3) - r.rho2;
    return r;
}

PhPoint p_h_maximizer(const DisorderSpec& spec, double alpha, double h) {
    PhPoint pt;
    pt.h = h;
    if (h <= 0) {
        pt.value = 1;
        return pt;
    }
    const double lambda = log_mgf(spec, alpha);
    // E[sqrt(1 + x)] - 1 written as E[x / (1 + sqrt(1 + x))] to keep digits for small h.
    auto f = [&](double p) {
        return expectation(spec, [&](double w) {
            const double x = p * std::expm1(alpha * w - lambda + h);
            return x / (1 + std::sqrt(1 + x));
        });
    };
    const Maximum m = golden_section_max(f, 0.0, 1.0);
    const double v = xi_variance(spec, alpha);
    pt.p_h = m.p_star;
    pt.value = 1 + m.value;
    pt.ratio = pt.p_h * v / (2 * h);
    pt.excess_h2 = m.value / (h * h);
    return pt;
}

std::vector<PhPoint> p_h_curve(const DisorderSpec& spec, double alpha, const std::vector<double>& h_grid) {
    std::vector<PhPoint> out;
    for (double h : h_grid) out.push_back(p_h_maximizer(spec, alpha, h));
    return out;
}

}  // namespace sos
