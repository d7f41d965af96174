// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "sos/asymptotics.hpp"
#include "sos/coarse.hpp"
#include "sos/contour.hpp"
#include "sos/disorder.hpp"
#include "sos/lattice.hpp"
#include "sos/mcmc.hpp"
#include "sos/oracle.hpp"

using namespace sos;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

void require(Outcome& o, bool ok, const std::string& what) {
    if (!ok) {
        o.pass = false;
        o.detail += (o.detail.empty() ? "" : "; ") + ("failed: " + what);
    }
}

void info(Outcome& o, const std::string& what) { o.detail += (o.detail.empty() ? "" : "; ") + what; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ModelParams model(double beta, HeightWindow w = {-3, 3}, int bc = 0) {
    ModelParams p;
    p.beta = beta;
    p.bc = bc;
    p.height_window = w;
    return p;
}

const double kInf = std::numeric_limits<double>::infinity();
const double kBeta = 3.5;
double g_theta1 = 0;  // set by the peak criterion

// 1 ----------------------------------------------------------------------------

Outcome bijection() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const Box box(6, 6);
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<int> d(-3, 3);
    long roundtrip = 0, energy = 0, fields = 0;
    for (int bc : {-1, 0, 2}) {
        for (int i = 0; i < 10000; ++i) {
            std::vector<int> h(box.size());
            for (auto& v : h) v = d(rng);
            const HeightField f(box, bc, std::move(h));
            const auto cyl = extract_cylinders(f);
            roundtrip += !(reconstruct_field(cyl, box, bc) == f);
            energy += contour_energy(cyl) != hamiltonian(f);
            ++fields;
        }
    }
    const double t = seconds_since(t0);
    info(o, fmt("%ld fields, roundtrip failures %ld, energy failures %ld, %.1f s", fields, roundtrip, energy, t));
    require(o, roundtrip == 0, "roundtrip");
    require(o, energy == 0, "energy identity");
    require(o, t < 30, "runtime < 30 s");
    return o;
}

// 2 ----------------------------------------------------------------------------

Outcome cross_validation() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0;
    for (int side : {1, 2, 3}) {
        for (double beta : {3.0, 3.5, 5.0}) {
            const Box b(side, side);
            const auto p = model(beta);
            const auto e = enumerate_logZ(b, p);
            const auto c = contour_logZ(b, p);
            const double tm = transfer_matrix_logZ(side, side, p);
            const double tail = window_tail_bound(b.size(), beta, 0, p.height_window);
            const double d1 = std::abs(e.value - c.value), d2 = std::abs(e.value - tm);
            const double tol1 = e.tail_bound + c.tail_bound + 1e-9, tol2 = e.tail_bound + tail + 1e-9;
            worst = std::max({worst, d1 / tol1, d2 / tol2});
            require(o, d1 <= tol1, fmt("enumerate vs contour on %dx%d at beta %.1f", side, side, beta));
            require(o, d2 <= tol2, fmt("enumerate vs transfer matrix on %dx%d at beta %.1f", side, side, beta));
        }
    }
    const double t = seconds_since(t0);
    info(o, fmt("worst difference / tolerance %.3g, %.1f s", worst, t));
    require(o, t < 120, "runtime < 2 min");
    return o;
}

// 3 ----------------------------------------------------------------------------

Outcome peaks() {
    Outcome o;
    auto p = model(kBeta, default_window(0));
    const auto est = theta1_estimate(p, {7, 5}, {1, 2, 3, 4});
    g_theta1 = est.theta1;
    std::string scaled;
    for (std::size_t k = 0; k < est.scaled.size(); ++k) scaled += fmt("%s%.6f", k ? "," : "", est.scaled[k]);
    info(o, fmt("box %d, scaled tails [%s], theta1 %.6f, stability %.2g", est.box_side, scaled.c_str(), est.theta1,
                est.stability));
    require(o, est.n_used >= 2, "at least two n values resolved");
    require(o, est.stability < 0.05, "successive relative change < 5%");

    const Box b(5, 5);
    p.height_window = {-3, 3};
    const auto marg = marginal_height_distribution(b, p, b.center());
    double lo = kInf, hi = 0;
    for (int n = 1; n <= 3; ++n) {
        const double s = marg.at(n) * std::exp(4 * kBeta * n);
        lo = std::min(lo, s);
        hi = std::max(hi, s);
        require(o, s >= 0.1 && s <= 10, fmt("P[phi = %d] within [1/10, 10] e^{-4 beta n}", n));
    }
    double two = 0;
    const Site c = b.center();
    for (int n = 1; n <= 2; ++n)
        for (Site y : {Site{c.x + 1, c.y}, Site{c.x + 1, c.y + 1}, Site{b.origin.x, b.origin.y}}) {
            const double s = joint_tail_probability(b, p, c, y, n) * std::exp(6 * kBeta * n);
            two = std::max(two, s);
            require(o, s <= 10, fmt("two-point bound at n = %d", n));
        }
    info(o, fmt("scaled peak law in [%.3f, %.3f], max scaled two-point %.3g", lo, hi, two));
    return o;
}

// 4 ----------------------------------------------------------------------------

Outcome intensity_law() {
    Outcome o;
    const Box b(3, 3);
    const auto p = model(kBeta);
    for (int sign : {1, -1}) {
        const SignedContour g{GeometricContour::from_interior({b.center()}), sign};
        const auto law = intensity_law_check(b, p, g);
        info(o, fmt("sign %+d: tv %.3g, tail %.3g, presence %.3g", sign, law.tv, law.tail_bound, law.presence));
        require(o, law.presence > 0, "contour present with positive probability");
        require(o, law.tv <= law.tail_bound, fmt("tv within truncation tail for sign %+d", sign));
    }
    return o;
}

// 5 ----------------------------------------------------------------------------

Outcome domination() {
    Outcome o;
    const Box b(3, 3);
    for (double beta : {3.0, 3.5, 5.0}) {
        const double ep = contour_sum(b, model(beta)).mean_contour_count;
        const double eq = QSampler(b, beta, max_contour_length(b)).expected_count();
        info(o, fmt("beta %.1f: E_P %.6g <= E_Q %.6g", beta, ep, eq));
        require(o, ep <= eq, fmt("domination at beta %.1f", beta));
    }
    return o;
}

// 6 ----------------------------------------------------------------------------

double pure_log_z_per_site(int width, int length, const ModelParams& p) {
    ModelParams q = p;
    q.alpha = 0;
    q.h = 0;
    return transfer_matrix_logZ(width, length, q) / (static_cast<double>(width) * length);
}

Outcome free_energy_properties() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const int width = 4, length = 64, replicas = 200;
    const auto spec = DisorderSpec::rademacher();
    auto p = model(kBeta);
    p.alpha = 1;
    const double base = pure_log_z_per_site(width, length, p);
    std::vector<double> grid;
    for (int k = 0; k <= 14; ++k) grid.push_back(-0.2 + 0.05 * k);
    std::vector<QuenchedResult> q;
    for (double h : grid) {
        p.h = h;
        q.push_back(quenched_free_energy_exact(width, length, p, spec, replicas, 77));
    }
    auto paired_se = [&](auto diff) {
        double s = 0, s2 = 0;
        for (int r = 0; r < replicas; ++r) s += diff(r);
        const double mu = s / replicas;
        for (int r = 0; r < replicas; ++r) s2 += (diff(r) - mu) * (diff(r) - mu);
        return std::pair{mu, std::sqrt(s2 / (replicas - 1) / replicas)};
    };
    int mono = 0, convex = 0, annealed = 0, shifted = 0;
    double min_slope = kInf, min_curv = kInf;
    for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
        const auto [d, se] = paired_se([&](int r) { return q[k + 1].samples[r] - q[k].samples[r]; });
        min_slope = std::min(min_slope, d);
        mono += d < -3 * se;
    }
    for (std::size_t k = 1; k + 1 < grid.size(); ++k) {
        const auto [d, se] = paired_se(
            [&](int r) { return q[k + 1].samples[r] - 2 * q[k].samples[r] + q[k - 1].samples[r]; });
        min_curv = std::min(min_curv, d);
        convex += d < -3 * se;
    }
    for (const auto& r : q) {
        annealed += r.mean - r.annealed > 3 * r.std_error;
        shifted += r.shifted - r.mean > 3 * r.std_error;
    }
    require(o, mono == 0, "non-decreasing in h");
    require(o, convex == 0, "convex in h");
    require(o, annealed == 0, "annealed upper bound");
    require(o, shifted == 0, "h - lambda lower bound");
    info(o, fmt("log Z / site at h = 0.5: quenched %.6f, annealed %.6f, shifted %.6f (pure %.6f)",
                q.back().mean - base, q.back().annealed - base, q.back().shifted - base, base));
    info(o, fmt("min slope %.3g, min second difference %.3g", min_slope, min_curv));

    // Derivative against a central difference on single replicas.
    const Box box = strip_box(width, length);
    double worst = 0;
    for (int r = 0; r < 3; ++r) {
        const DisorderField omega = sample(spec, box, derive_seed(77, r));
        for (double h : {-0.1, 0.1, 0.4}) {
            ModelParams a = p;
            a.h = h;
            const double contact = transfer_matrix(box, a, &omega, nullptr, true).contact_mean;
            const double e = 1e-4;
            a.h = h + e;
            const double up = transfer_matrix(box, a, &omega).log_z;
            a.h = h - e;
            const double down = transfer_matrix(box, a, &omega).log_z;
            worst = std::max(worst, std::abs((up - down) / (2 * e) - contact) / contact);
        }
    }
    info(o, fmt("derivative relative error %.2g", worst));
    require(o, worst <= 1e-6, "derivative matches contact expectation");
    const double t = seconds_since(t0);
    info(o, fmt("%.1f s", t));
    require(o, t < 600, "runtime < 10 min");
    return o;
}

// 7 ----------------------------------------------------------------------------

Outcome quadratic_bracket() {
    Outcome o;
    const int width = 4, length = 256, replicas = 100;
    const auto spec = DisorderSpec::rademacher();
    const auto g = make_gparams(kBeta, spec, 1, g_theta1);
    for (double h : {0.02, 0.05, 0.1}) {
        // Finite-volume estimate: the best boundary height, as the interface localises
        // at the height that maximises the free energy.
        double best = -kInf, best_se = 0;
        int best_n = 0;
        for (int n : {0, 1, 2}) {
            auto p = model(kBeta, {std::min(-2, n - 3), std::max(2, n + 3)}, n);
            p.alpha = 1;
            const double base = pure_log_z_per_site(width, length, p);
            p.h = h;
            const auto r = quenched_free_energy_exact(width, length, p, spec, replicas, 99);
            if (r.mean - base > best) {
                best = r.mean - base;
                best_se = r.std_error;
                best_n = n;
            }
        }
        const double lo = G(g, h) / 3, hi = 3 * upper_bound_max_p(spec, 1, h).value;
        info(o, fmt("h %.2f: F %.4g +- %.2g (bc %d) in [%.4g, %.4g]", h, best, best_se, best_n, lo, hi));
        require(o, best >= lo && best <= hi, fmt("bracket at h = %.2f", h));
    }
    return o;
}

// 8 ----------------------------------------------------------------------------

Outcome sandwich() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const auto spec = DisorderSpec::rademacher();
    const auto g = make_gparams(kBeta, spec, 1, g_theta1);
    const double first_kink = kink_sequence(g, 1).kinks[0];
    for (int e = 3; e <= 8; ++e) {
        const double h = std::pow(10.0, -e);
        const double gv = G(g, h), ub = upper_bound_max_p(spec, 1, h).value;
        if (h < first_kink) require(o, gv <= ub, fmt("G <= upper bound at h = 1e-%d", e));
    }
    const double h = 1e-8;
    double best = -kInf;
    for (int n = 1; n <= 12; ++n) best = std::max(best, bernoulli_free_energy(g.p(n), spec, 1, h));
    const double ratio = best / G(g, h);
    info(o, fmt("theta1 %.6f, Bernoulli max / G at 1e-8 = %.6f", g.theta1, ratio));
    require(o, std::abs(ratio - 1) <= 0.05, "ratio within 5% at h = 1e-8");
    const auto ks = kink_sequence(g, 8);
    double kerr = 0;
    for (std::size_t i = 0; i + 1 < ks.kinks.size(); ++i)
        kerr = std::max(kerr, std::abs(ks.kinks[i + 1] / ks.kinks[i] / std::exp(-4 * kBeta) - 1));
    info(o, fmt("kink ratio error %.2g", kerr));
    require(o, kerr <= 1e-9, "kink ratios");
    // Three geometric periods below the second kink, log-spaced.
    const double q = std::exp(-4 * kBeta), start = ks.kinks[4];
    double lo = kInf, hi = 0;
    for (int i = 0; i <= 3000; ++i) {
        const double x = start * std::pow(q, -3.0 * i / 3000);
        const double v = G(g, x) / (x * x);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    info(o, fmt("G/h^2 max/min over three periods %.4g", hi / lo));
    require(o, hi / lo >= 1.01, "oscillation");
    const double t = seconds_since(t0);
    require(o, t < 60, "runtime < 1 min");
    return o;
}

// 9 ----------------------------------------------------------------------------

Outcome rho_inequalities() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    double c = 0;
    for (const auto& spec : {DisorderSpec::rademacher(), DisorderSpec::gaussian()}) {
        const double v = xi_variance(spec, 1);
        for (int i = 1; i <= 50; ++i)
            for (int j = 1; j <= 50; ++j) {
                const double p = 0.45 * i / 50, th = 0.45 * j / 50;
                const auto r = rho_functions(p, th, spec, 1);
                c = std::max({c, (r.rho1 + p * p * v / 2) / (p * p * p + th * p * p), (r.rho2 - p * p * v) / (p * p * p),
                              (r.rho3 + p * v) / (p * p)});
            }
    }
    const double t = seconds_since(t0);
    info(o, fmt("smallest admissible C %.4g over 2 x 2500 points, %.2f s", c, t));
    require(o, c <= 50, "C <= 50");
    require(o, t < 60, "runtime < 1 min");
    return o;
}

// 10 ---------------------------------------------------------------------------

Outcome mcmc() {
    Outcome o;
    {
        const Box b(1, 1);
        auto p = model(0.5, default_window(0));
        const DisorderField omega = zero_disorder(b);
        const HeatBath hb(p, omega);
        HeightField f(b, 0);
        std::map<int, long> counts;
        const long draws = 1000000;
        for (long t = 0; t < draws; ++t) {
            hb.update(f, b.origin, uniform_for(2024, t, 0));
            ++counts[f[b.origin]];
        }
        double z = 0;
        for (int k = p.height_window.lo; k <= p.height_window.hi; ++k) z += std::exp(-4 * p.beta * std::abs(k));
        double tv = 0;
        for (int k = p.height_window.lo; k <= p.height_window.hi; ++k)
            tv += std::abs(static_cast<double>(counts[k]) / draws - std::exp(-4 * p.beta * std::abs(k)) / z);
        tv /= 2;
        info(o, fmt("1x1 TV %.4g over 1e6 draws", tv));
        require(o, tv <= 0.005, "1x1 conditional law");
    }
    const int width = 4, length = 64, replicas = 20;
    const Box box = strip_box(width, length);
    auto p = model(kBeta, default_window(0));
    p.alpha = 1;
    const auto spec = DisorderSpec::rademacher();
    std::vector<double> grid;
    for (int k = 0; k <= 10; ++k) grid.push_back(0.05 * k);
    const std::uint64_t seed = 4242;
    const auto curve = thermo_integrate(box, p, spec, grid, replicas, seed, {200, 50});
    // Exact increments log Z(h) - log Z(0) on the same disorder fields.
    std::vector<std::vector<double>> ref(replicas, std::vector<double>(grid.size()));
    for (int r = 0; r < replicas; ++r) {
        const DisorderField omega = sample(spec, box, derive_seed(seed, r));
        double at0 = 0;
        for (std::size_t k = 0; k < grid.size(); ++k) {
            ModelParams q = p;
            q.h = grid[k];
            const double v = transfer_matrix(box, q, &omega).log_z / box.size();
            if (k == 0) at0 = v;
            ref[r][k] = v - at0;
        }
    }
    double worst = 0, worst_paired = 0;
    for (std::size_t k = 1; k < grid.size(); ++k) {
        double m = 0, s2 = 0, dm = 0, d2 = 0;
        for (int r = 0; r < replicas; ++r) {
            m += ref[r][k];
            dm += curve.replica_excess[r][k] - ref[r][k];
        }
        m /= replicas;
        dm /= replicas;
        for (int r = 0; r < replicas; ++r) {
            s2 += (ref[r][k] - m) * (ref[r][k] - m);
            const double d = curve.replica_excess[r][k] - ref[r][k] - dm;
            d2 += d * d;
        }
        const double se_ref = std::sqrt(s2 / (replicas - 1) / replicas);
        const double sigma = std::hypot(curve.integrated_stderr[k], se_ref);
        const double z = sigma > 0 ? (curve.integrated_excess[k] - m) / sigma : 0;
        const double se_d = std::sqrt(d2 / (replicas - 1) / replicas);
        worst = std::max(worst, std::abs(z));
        if (se_d > 0) worst_paired = std::max(worst_paired, std::abs(dm) / se_d);
        require(o, std::abs(z) <= 3, fmt("curve at h = %.2f", grid[k]));
    }
    info(o, fmt("4x64 curve: max |z| %.3g, paired max |z| %.3g, excess at h = 0.5 %.6f", worst, worst_paired,
                curve.integrated_excess.back()));
    return o;
}

// 11 ---------------------------------------------------------------------------

Outcome coarse_graining() {
    Outcome o;
    long contours = 0, bad = 0;
    for (int L : {2, 4, 8}) {
        const Box b(8, 8);
        for (const auto& g : enumerate_contours(b, 12)) {
            const auto iota = interior_function(g, L);
            ++contours;
            bad += !is_connected(iota.trace) || !interior_is_consistent(iota);
        }
    }
    info(o, fmt("%ld contour traces, %ld disconnected or inconsistent", contours, bad));
    require(o, bad == 0, "trace connectivity");

    // Every trace of at most four blocks fits in one of these block rectangles.
    std::map<std::pair<int, std::vector<Site>>, std::set<CoarseInterior>> by_trace;
    for (int L : {2, 3}) {
        for (auto [bw, bh] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {3, 1}, {4, 1}, {2, 2}, {3, 2}}) {
            for (bool flip : {false, true}) {
                const int w = L * bw - 1, h = L * bh - 1;
                const Box b = flip ? Box(h, w) : Box(w, h);
                if (b.size() > 16) continue;
                for (const auto& g : enumerate_contours(b, max_contour_length(b))) {
                    auto iota = interior_function(g, L);
                    if (iota.trace.size() <= 4) by_trace[{L, iota.trace}].insert(std::move(iota));
                }
            }
        }
    }
    std::size_t worst = 0, over = 0;
    for (const auto& [key, set] : by_trace) {
        const std::size_t chi = key.second.size();
        worst = std::max(worst, set.size());
        over += set.size() > (1u << chi);
    }
    info(o, fmt("%zu traces with |chi| <= 4, at most %zu interiors each", by_trace.size(), worst));
    require(o, over == 0, "interior count <= 2^|chi|");

    // Laplace transform of the large-contour mass under Q.
    const int N = 32, L = 8, cap = 12;
    const Box box(N, N);
    const QSampler q(box, kBeta, cap);
    double exact_log = 0;
    for (const auto& g : q.geometries())
        if (static_cast<int>(g.length()) >= L)
            exact_log += 2 * std::log1p(std::exp((1 - kBeta) * g.length()) - std::exp(-kBeta * g.length()));
    std::mt19937_64 rng(31337);
    const int samples = 200000;
    double s = 0, s2 = 0;
    for (int i = 0; i < samples; ++i) {
        std::int64_t mass = 0;
        for (auto id : q.sample(rng)) {
            const auto len = static_cast<std::int64_t>(q.contour(id).geometry.length());
            if (len >= L) mass += len;
        }
        const double v = std::exp(static_cast<double>(mass));
        s += v;
        s2 += v * v;
    }
    const double mean = s / samples, se = std::sqrt(std::max(0.0, s2 / samples - mean * mean) / samples);
    double series = 0;
    for (int n = L; n < 400; ++n) series += n * std::exp(n * std::log(4.0) + (1 - kBeta) * n);
    const double bound = std::exp(static_cast<double>(N) * N * series);
    info(o, fmt("E_Q[e^L] empirical %.8f +- %.2g (exact %.8f, cap %d), bound %.4g", mean, se, std::exp(exact_log),
                cap, bound));
    require(o, mean <= bound, "Laplace bound");
    require(o, std::exp(exact_log) <= bound, "Laplace bound (exact Q value)");
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"contour bijection", bijection},
        {"partition function cross-validation", cross_validation},
        {"peak scaling and theta1", peaks},
        {"geometric intensity law", intensity_law},
        {"stochastic domination", domination},
        {"free-energy properties", free_energy_properties},
        {"quadratic bracket", quadratic_bracket},
        {"asymptotic sandwich", sandwich},
        {"rho inequalities", rho_inequalities},
        {"mcmc correctness", mcmc},
        {"coarse-graining", coarse_graining},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        failed += !o.pass;
        std::printf("%s %2zu %s (%.1f s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    seconds_since(t0), o.detail.c_str());
        std::fflush(stdout);
    }
    return failed ? 1 : 0;
}
