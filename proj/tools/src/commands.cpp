#include "sos_cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>

#include "sos/asymptotics.hpp"
#include "sos/coarse.hpp"
#include "sos/error.hpp"
#include "sos/mcmc.hpp"
#include "sos/oracle.hpp"
#include "sos/parallel.hpp"
#include "sos_cli/io.hpp"

namespace sos::cli {

namespace {

using Row = std::vector<std::string>;

std::string status_text(const std::exception& e) {
    std::string s = std::string("capacity: ") + e.what();
    std::replace(s.begin(), s.end(), ',', ';');
    return s;
}

std::string box_text(const Box& b) { return std::to_string(b.width) + "x" + std::to_string(b.height); }

template <class T>
std::vector<T> or_default(const std::vector<T>& v, std::vector<T> fallback) {
    return v.empty() ? fallback : v;
}

bool wants(const ExperimentConfig& c, const std::string& task, std::vector<std::string> fallback) {
    const auto& t = c.tasks.empty() ? fallback : c.tasks;
    return std::find(t.begin(), t.end(), task) != t.end();
}

struct BijectionStats {
    long fields = 0;
    long roundtrip_failures = 0;
    long energy_failures = 0;
};

BijectionStats bijection_batch(const Box& box, int bc, HeightWindow heights, int count, std::uint64_t seed) {
    std::vector<char> rt(count, 0), en(count, 0);
    parallel_for(static_cast<std::size_t>(count), [&](std::size_t i) {
        std::mt19937_64 rng(derive_seed(seed, i));
        std::uniform_int_distribution<int> d(heights.lo, heights.hi);
        std::vector<int> h(box.size());
        for (auto& v : h) v = d(rng);
        const HeightField f(box, bc, std::move(h));
        const auto cyl = extract_cylinders(f);
        en[i] = contour_energy(cyl) != hamiltonian(f);
        try {
            rt[i] = !(reconstruct_field(cyl, box, bc) == f);
        } catch (const ValidationError&) {
            rt[i] = 1;
        }
    });
    BijectionStats s;
    s.fields = count;
    s.roundtrip_failures = std::count(rt.begin(), rt.end(), 1);
    s.energy_failures = std::count(en.begin(), en.end(), 1);
    return s;
}

double estimated_theta1(const ExperimentConfig& c) {
    if (c.theta1 > 0) return c.theta1;
    ModelParams p;
    p.beta = c.beta;
    p.height_window = default_window(0);
    return theta1_estimate(p, {7, 5}, {2, 3, 4}).theta1;
}

// Oracle tasks -----------------------------------------------------------------

std::vector<Row> theta1_rows(const ExperimentConfig& c, double beta) {
    ModelParams p;
    p.beta = beta;
    p.height_window = default_window(0);
    try {
        const auto est = theta1_estimate(p, or_default(c.sides, {7, 5}), or_default(c.n_grid, {2, 3, 4}));
        const bool ok = est.stability < 0.05;
        return {{"theta1", "n=" + std::to_string(est.n_used), cell(beta), box_text(Box(est.box_side, est.box_side)),
                 cell(0.0), cell(est.theta1), cell(est.stability), cell(est.stability), cell(0.05), cell(0.0),
                 cell(static_cast<long long>(c.seed)), ok ? "ok" : "violation"}};
    } catch (const CapacityError& e) {
        return {{"theta1", "", cell(beta), "", cell(0.0), "", "", "", cell(0.05), "", cell(static_cast<long long>(c.seed)),
                 status_text(e)}};
    }
}

std::vector<Row> crosscheck_rows(const ExperimentConfig& c, double beta, int side) {
    ModelParams p;
    p.beta = beta;
    p.height_window = c.window ? *c.window : HeightWindow{-3, 3};
    const Box b(side, side);
    const std::string seed = cell(static_cast<long long>(c.seed));
    try {
        const auto e = enumerate_logZ(b, p);
        const auto k = contour_logZ(b, p);
        const double tm = transfer_matrix(b, p).log_z;
        const double tm_tail = window_tail_bound(b.size(), beta, 0, p.height_window);
        const double d1 = std::abs(e.value - k.value), t1 = e.tail_bound + k.tail_bound + c.tolerance;
        const double d2 = std::abs(e.value - tm), t2 = e.tail_bound + tm_tail + c.tolerance;
        return {{"crosscheck", "enumerate-contour", cell(beta), box_text(b), cell(0.0), cell(e.value), cell(k.value),
                 cell(d1), cell(t1), cell(e.tail_bound + k.tail_bound), seed, d1 <= t1 ? "ok" : "violation"},
                {"crosscheck", "enumerate-transfer", cell(beta), box_text(b), cell(0.0), cell(e.value), cell(tm),
                 cell(d2), cell(t2), cell(e.tail_bound + tm_tail), seed, d2 <= t2 ? "ok" : "violation"}};
    } catch (const CapacityError& e) {
        return {{"crosscheck", "", cell(beta), box_text(b), cell(0.0), "", "", "", "", "", seed, status_text(e)}};
    }
}

std::vector<Row> annealed_rows(const ExperimentConfig& c, double h) {
    ModelParams p = c.model();
    p.h = h;
    const std::string seed = cell(static_cast<long long>(c.seed));
    const Box b(c.width, c.height);
    try {
        const auto q = quenched_free_energy_exact(c.height, c.width, p, c.disorder, c.replicas, c.seed);
        const bool up = q.mean <= q.annealed + 3 * q.std_error;
        const bool down = q.mean >= q.shifted - 3 * q.std_error;
        return {{"annealed", "upper", cell(p.beta), box_text(b), cell(h), cell(q.mean), cell(q.annealed),
                 cell(q.mean - q.annealed), cell(3 * q.std_error), cell(0.0), seed, up ? "ok" : "violation"},
                {"annealed", "lower", cell(p.beta), box_text(b), cell(h), cell(q.mean), cell(q.shifted),
                 cell(q.shifted - q.mean), cell(3 * q.std_error), cell(0.0), seed, down ? "ok" : "violation"}};
    } catch (const CapacityError& e) {
        return {{"annealed", "", cell(p.beta), box_text(b), cell(h), "", "", "", "", "", seed, status_text(e)}};
    }
}

int emit_rows(CsvWriter& w, const std::vector<std::vector<Row>>& items) {
    int violations = 0;
    for (const auto& rows : items)
        for (const auto& r : rows) {
            w.row(r);
            violations += r.back() == "violation";
        }
    return violations;
}

// mcmc -------------------------------------------------------------------------

int mcmc_chain(const ExperimentConfig& c, std::ostream& out) {
    const ModelParams p = c.model();
    const Box box(c.width, c.height);
    const DisorderField omega = p.alpha == 0 ? zero_disorder(box) : sample(c.disorder, box, c.seed);
    Checkpoint cp{initial_state(box, p, c.seed), {}};
    const bool resume = !c.checkpoint.empty() && std::filesystem::exists(c.checkpoint);
    if (resume) {
        cp = load_checkpoint(c.checkpoint);
        if (!(cp.state.field.box() == box) || cp.state.field.bc() != p.bc || cp.state.seed != c.seed)
            throw InputError("checkpoint " + c.checkpoint + " does not match the configured box, bc and seed");
        if (cp.state.sweep_count > c.sweeps)
            throw InputError("checkpoint is already past the requested sweep count");
    }
    // Sweep t draws from (seed, t), so chunking does not change the chain.
    constexpr std::uint64_t chunk = 1000;
    while (cp.state.sweep_count < c.sweeps) {
        auto r = run_chain(p, omega, cp.state, std::min(chunk, c.sweeps - cp.state.sweep_count), 0);
        cp.state = r.state;
        cp.trace.contacts.insert(cp.trace.contacts.end(), r.trace.contacts.begin(), r.trace.contacts.end());
        cp.trace.rao_blackwell.insert(cp.trace.rao_blackwell.end(), r.trace.rao_blackwell.begin(),
                                      r.trace.rao_blackwell.end());
        if (!c.checkpoint.empty()) save_checkpoint(c.checkpoint, cp);
    }

    CsvWriter w(out, c, {"sweep", "contacts", "rao_blackwell"});
    for (std::size_t t = 0; t < cp.trace.contacts.size(); ++t)
        w.row({cell(t + 1), cell(cp.trace.contacts[t]), cell(cp.trace.rao_blackwell[t])});
    const std::size_t skip = std::min<std::size_t>(c.burn_in, cp.trace.rao_blackwell.size());
    std::vector<double> kept(cp.trace.rao_blackwell.begin() + skip, cp.trace.rao_blackwell.end());
    double se = 0;
    const double tau = batch_means_tau(kept, &se);
    double mean = 0;
    for (double v : kept) mean += v;
    if (!kept.empty()) mean /= kept.size();
    w.note("contact_fraction", cell(mean / box.size()));
    w.note("contact_stderr", cell(se / box.size()));
    w.note("tau_int", cell(tau));
    w.note("resumed", resume ? "true" : "false");
    return 0;
}

int mcmc_curve(const ExperimentConfig& c, std::ostream& out) {
    const ModelParams p = c.model();
    const Box box(c.width, c.height);
    const auto grid = or_default(c.h_grid, {0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3});
    const auto curve = thermo_integrate(box, p, c.disorder, grid, c.replicas, c.seed, {c.sweeps, c.burn_in});

    // Exact reference on the same disorder replicas, when the strip is small enough.
    const bool oracle = wants(c, "oracle", {"oracle"});
    std::vector<double> ref(grid.size(), 0), ref_se(grid.size(), 0);
    std::string oracle_status = oracle ? "ok" : "skipped";
    if (oracle) {
        std::vector<std::vector<double>> per(c.replicas, std::vector<double>(grid.size()));
        try {
            parallel_for(static_cast<std::size_t>(c.replicas), [&](std::size_t r) {
                const DisorderField omega =
                    p.alpha == 0 ? zero_disorder(box) : sample(c.disorder, box, derive_seed(c.seed, r));
                double base = 0;
                for (std::size_t k = 0; k < grid.size(); ++k) {
                    ModelParams q = p;
                    q.h = grid[k];
                    const double v = transfer_matrix(box, q, &omega).log_z / box.size();
                    if (k == 0) base = v;
                    per[r][k] = v - base;
                }
            });
            for (std::size_t k = 0; k < grid.size(); ++k) {
                double s = 0, s2 = 0;
                for (int r = 0; r < c.replicas; ++r) s += per[r][k];
                const double mu = s / c.replicas;
                for (int r = 0; r < c.replicas; ++r) s2 += (per[r][k] - mu) * (per[r][k] - mu);
                ref[k] = mu;
                ref_se[k] = c.replicas > 1 ? std::sqrt(s2 / (c.replicas - 1) / c.replicas) : 0;
            }
        } catch (const CapacityError& e) {
            oracle_status = status_text(e);
        }
    }
    CsvWriter w(out, c,
                {"h", "contact_fraction", "contact_stderr", "excess", "excess_stderr", "oracle_excess",
                 "oracle_stderr", "z", "status"});
    int violations = 0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        std::string status = oracle_status;
        double z = 0;
        if (oracle_status == "ok" && k > 0) {
            const double sigma = std::hypot(curve.integrated_stderr[k], ref_se[k]);
            z = sigma > 0 ? (curve.integrated_excess[k] - ref[k]) / sigma : 0;
            if (std::abs(z) > 3) {
                status = "violation";
                ++violations;
            }
        }
        if (k > 0 && curve.integrated_excess[k] < curve.integrated_excess[k - 1] - 3 * curve.integrated_stderr[k]) {
            status = "violation";
            ++violations;
        }
        w.row({cell(grid[k]), cell(curve.contact_fraction[k]), cell(curve.contact_stderr[k]),
               cell(curve.integrated_excess[k]), cell(curve.integrated_stderr[k]), cell(ref[k]), cell(ref_se[k]),
               cell(z), status});
    }
    w.note("violations", cell(violations));
    return violations;
}

// asymptotics ------------------------------------------------------------------

struct GTable {
    int violations = 0;
    double oscillation = 0;
    double smallest_ratio_gap = 0;
};

GTable g_table(const ExperimentConfig& c, CsvWriter& w, bool check_transitions) {
    const double theta1 = estimated_theta1(c);
    const double alpha = c.alpha > 0 ? c.alpha : 1.0;
    const auto g = make_gparams(c.beta, c.disorder, alpha, theta1);
    const auto ks = kink_sequence(g, 8);
    GTable t;
    const double q = std::exp(-4 * c.beta);
    for (std::size_t n = 0; n < ks.kinks.size(); ++n) {
        const double ratio = n ? ks.kinks[n] / ks.kinks[n - 1] : 0;
        const double err = n ? std::abs(ratio / q - 1) : 0;
        std::string status = err <= 1e-9 ? "ok" : "violation";
        if (check_transitions && (n_argmax(g, ks.kinks[n] * (1 + 1e-7)) != static_cast<int>(n) ||
                                  n_argmax(g, ks.kinks[n] * (1 - 1e-7)) != static_cast<int>(n) + 1))
            status = "violation";
        t.violations += status == "violation";
        w.row({"kink", cell(static_cast<int>(n)), cell(ks.kinks[n]), cell(G(g, ks.kinks[n])), "", "", "", "", "", "",
               "", cell(ratio), cell(err), status});
    }
    const auto grid =
        or_default(c.h_grid, {1e-3, 3e-4, 1e-4, 3e-5, 1e-5, 3e-6, 1e-6, 3e-7, 1e-7, 3e-8, 1e-8});
    double smallest_h = 1e300;
    for (double h : grid) {
        const double gv = G(g, h);
        const auto ub = upper_bound_max_p(c.disorder, alpha, h);
        double best = -1e300;
        for (int n = 1; n < 64 && g.p(n) > 0; ++n)
            if (g.p(n) <= 1) best = std::max(best, bernoulli_free_energy(g.p(n), c.disorder, alpha, h));
        const double ratio = best / gv;
        std::string status = "ok";
        if (h < ks.kinks[0] && gv > ub.value * (1 + 1e-12)) status = "violation";
        if (h <= smallest_h) {
            smallest_h = h;
            t.smallest_ratio_gap = std::abs(ratio - 1);
        }
        t.violations += status == "violation";
        w.row({"point", cell(n_argmax(g, h)), cell(h), cell(gv), cell(n_argmax(g, h)), cell(n_G(g, h)),
               cell(ub.value), cell(ub.p_star), cell(best), cell(ratio), cell(gv / (h * h)), "", "", status});
    }
    // G / h^2 over three periods of the kink sequence, below the first kink.
    double lo = 1e300, hi = 0;
    const double start = ks.kinks[3];
    for (int i = 0; i <= 3000; ++i) {
        const double h = start * std::pow(1 / q, 3.0 * i / 3000);
        lo = std::min(lo, G(g, h) / (h * h));
        hi = std::max(hi, G(g, h) / (h * h));
    }
    t.oscillation = hi / lo;
    if (t.oscillation < 1.01) ++t.violations;
    if (t.smallest_ratio_gap > 0.05) ++t.violations;
    w.note("theta1", cell(theta1));
    w.note("g_over_h2_max_over_min", cell(t.oscillation));
    w.note("bernoulli_ratio_gap_at_smallest_h", cell(t.smallest_ratio_gap));
    w.note("violations", cell(t.violations));
    return t;
}

const std::vector<std::string> g_columns{"kind",          "n",     "h",     "G",
                                         "n_argmax",      "n_G",   "upper_bound", "p_star",
                                         "bernoulli_max", "bernoulli_ratio", "G_over_h2", "kink_ratio",
                                         "kink_ratio_error", "status"};

// experiments ------------------------------------------------------------------

int exp_bijection(const ExperimentConfig& c, std::ostream& out) {
    CsvWriter w(out, c, {"bc", "fields", "roundtrip_failures", "energy_failures", "status"});
    int violations = 0;
    const auto bcs = or_default(c.n_grid, {-1, 0, 2});
    const HeightWindow heights = c.window ? *c.window : HeightWindow{-3, 3};
    for (std::size_t i = 0; i < bcs.size(); ++i) {
        const auto s = bijection_batch(Box(c.width, c.height), bcs[i], heights, c.batch, derive_seed(c.seed, i));
        const bool ok = s.roundtrip_failures == 0 && s.energy_failures == 0;
        violations += !ok;
        w.row({cell(bcs[i]), cell(static_cast<long long>(s.fields)), cell(static_cast<long long>(s.roundtrip_failures)),
               cell(static_cast<long long>(s.energy_failures)), ok ? "ok" : "violation"});
    }
    return violations;
}

int exp_peaks(const ExperimentConfig& c, std::ostream& out) {
    CsvWriter w(out, c, {"quantity", "n", "box", "value", "bound_low", "bound_high", "status"});
    int violations = 0;
    auto emit = [&](const std::string& what, int n, const Box& b, double v, double lo, double hi) {
        const bool ok = v >= lo && v <= hi;
        violations += !ok;
        w.row({what, cell(n), box_text(b), cell(v), cell(lo), cell(hi), ok ? "ok" : "violation"});
    };
    ModelParams p;
    p.beta = c.beta;
    p.height_window = default_window(0);
    const auto est = theta1_estimate(p, or_default(c.sides, {7, 5}), or_default(c.n_grid, {1, 2, 3, 4}));
    const Box tb(est.box_side, est.box_side);
    for (std::size_t k = 0; k < est.n_values.size(); ++k)
        w.row({"scaled_tail", cell(est.n_values[k]), box_text(tb), cell(est.scaled[k]), "", "", "info"});
    emit("theta1_stability", est.n_used, tb, est.stability, 0, 0.05);
    w.note("theta1", cell(est.theta1));
    const Box b(5, 5);
    ModelParams m = p;
    m.height_window = {-3, 3};
    const auto marg = marginal_height_distribution(b, m, b.center());
    for (int n = 1; n <= 3; ++n) emit("peak_scaled", n, b, marg.at(n) * std::exp(4 * c.beta * n), 0.1, 10);
    const Site far{b.origin.x + b.width - 1, b.origin.y + b.height - 1};
    for (int n = 1; n <= 2; ++n)
        for (Site y : {Site{b.center().x + 1, b.center().y}, far})
            emit("two_point_scaled", n, b, joint_tail_probability(b, m, b.center(), y, n) * std::exp(6 * c.beta * n),
                 0, 10);
    return violations;
}

int exp_localization(const ExperimentConfig& c, std::ostream& out) {
    const Box box(c.width, c.height);
    CsvWriter w(out, c,
                {"bc", "threshold", "contact_fraction", "contact_stderr", "large_mass", "coarse_cylinders",
                 "good_fraction", "mean_bulk_height", "low_density", "status"});
    int violations = 0;
    const auto ns = or_default(c.n_grid, {1, 2, 3});
    for (std::size_t i = 0; i < ns.size(); ++i) {
        ModelParams p = c.model();
        p.bc = ns[i];
        p.height_window = default_window(ns[i]);
        const DisorderField omega = p.alpha == 0 ? zero_disorder(box) : sample(c.disorder, box, derive_seed(c.seed, i));
        const auto r = run_chain(p, omega, c.sweeps, c.burn_in, derive_seed(c.seed ^ 0x10ca1ULL, i));
        const auto cyl = extract_cylinders(r.state.field);
        const int threshold = std::max(4, ns[i] * ns[i] * ns[i] * ns[i]);
        const auto coarse = coarse_cylinders(cyl, c.L, threshold);
        const auto cells = classify_cells(coarse, box, c.L, c.M, p.h);
        bool ok = true;
        for (const auto& cc : coarse) ok = ok && is_connected(cc.trace()) && interior_is_consistent(cc.iota);
        double bulk = 0;
        const auto good = cells.good_sites();
        for (Site s : good) bulk += bulk_height(s, coarse, cells);
        violations += !ok;
        w.row({cell(ns[i]), cell(threshold), cell(r.contact_fraction), cell(r.contact_stderr),
               cell(static_cast<long long>(large_contour_mass(cyl, threshold))), cell(coarse.size()),
               cell(static_cast<double>(good.size()) / box.size()), cell(good.empty() ? 0.0 : bulk / good.size()),
               cells.low_density ? "true" : "false", ok ? "ok" : "violation"});
        if (!c.out.empty()) {
            std::ofstream js(c.out + ".bc" + std::to_string(ns[i]) + ".coarse.json");
            nlohmann::json j = coarse_map_json(coarse, cells);
            j["config"] = config_json(c);
            js << j.dump(1) << '\n';
        }
    }
    return violations;
}

int exp_layering(const ExperimentConfig& c, std::ostream& out) {
    CsvWriter w(out, c, g_columns);
    return g_table(c, w, true).violations;
}

}  // namespace

int cmd_contours(const ExperimentConfig& c, std::ostream& out) {
    nlohmann::json j;
    j["config"] = config_json(c);
    int violations = 0;
    if (!c.input.empty()) {
        const HeightField f = read_height_grid(c.input, c.bc);
        const auto cyl = extract_cylinders(f);
        bool roundtrip = true;
        try {
            roundtrip = reconstruct_field(cyl, f.box(), f.bc()) == f;
        } catch (const ValidationError&) {
            roundtrip = false;
        }
        const bool energy = contour_energy(cyl) == hamiltonian(f);
        violations = !roundtrip + !energy;
        j["box"] = {{"width", f.box().width}, {"height", f.box().height}, {"origin", {f.box().origin.x, f.box().origin.y}}};
        j["bc"] = f.bc();
        j["energy"] = hamiltonian(f);
        j["cylinders"] = cylinders_json(cyl);
        j["external"] = external_contours(cyl).size();
        j["roundtrip"] = roundtrip;
        j["energy_identity"] = energy;
    } else {
        const HeightWindow heights = c.window ? *c.window : HeightWindow{-3, 3};
        const int count = c.batch > 0 ? c.batch : 10000;
        const auto s = bijection_batch(Box(c.width, c.height), c.bc, heights, count, c.seed);
        violations = static_cast<int>(std::min<long>(s.roundtrip_failures + s.energy_failures, 1 << 30));
        j["fields"] = s.fields;
        j["roundtrip_failures"] = s.roundtrip_failures;
        j["energy_failures"] = s.energy_failures;
        j["roundtrip"] = s.roundtrip_failures == 0;
    }
    out << j.dump(1) << '\n';
    return violations;
}

int cmd_oracle(const ExperimentConfig& c, std::ostream& out) {
    const std::vector<std::string> all{"theta1", "crosscheck", "annealed"};
    std::vector<std::function<std::vector<Row>()>> items;
    if (wants(c, "theta1", all))
        for (double beta : or_default(c.beta_grid, {3.0, 3.5, 4.0}))
            items.push_back([&c, beta] { return theta1_rows(c, beta); });
    if (wants(c, "crosscheck", all))
        for (double beta : or_default(c.beta_grid, {3.0, 3.5, 5.0}))
            for (int side : or_default(c.sides, {1, 2, 3})) items.push_back([&c, beta, side] { return crosscheck_rows(c, beta, side); });
    if (wants(c, "annealed", all))
        for (double h : or_default(c.h_grid, {-0.2, 0.0, 0.2, 0.5}))
            items.push_back([&c, h] { return annealed_rows(c, h); });
    std::vector<std::vector<Row>> rows(items.size());
    parallel_for(items.size(), [&](std::size_t i) { rows[i] = items[i](); });
    CsvWriter w(out, c,
                {"task", "item", "beta", "box", "h", "value", "reference", "difference", "tolerance", "tail_bound",
                 "seed", "status"});
    const int v = emit_rows(w, rows);
    w.note("violations", cell(v));
    return v;
}

int cmd_mcmc(const ExperimentConfig& c, std::ostream& out) {
    if (c.mcmc_mode == "chain") return mcmc_chain(c, out);
    if (c.mcmc_mode == "curve") return mcmc_curve(c, out);
    throw InputError("mcmc_mode must be 'curve' or 'chain'");
}

int cmd_gfunc(const ExperimentConfig& c, std::ostream& out) {
    CsvWriter w(out, c, g_columns);
    return g_table(c, w, false).violations;
}

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names{"bijection", "peaks", "localization", "layering"};
    return names;
}

ExperimentConfig experiment_preset(const std::string& name) {
    ExperimentConfig c;
    c.command = "experiment";
    c.experiment = name;
    if (name == "bijection") {
        c.batch = 10000;
        c.n_grid = {-1, 0, 2};
        c.window = HeightWindow{-3, 3};
    } else if (name == "peaks") {
        c.n_grid = {1, 2, 3, 4};
    } else if (name == "localization") {
        c.width = c.height = 64;
        c.L = 4;
        c.M = 32;
        c.h = 0.02;
        c.alpha = 1.0;
        c.n_grid = {1, 2};
        c.sweeps = 200;
        c.burn_in = 50;
    } else if (name == "layering") {
        c.alpha = 1.0;
    } else {
        throw InputError("unknown experiment: " + name);
    }
    return c;
}

int cmd_experiment(const ExperimentConfig& c, std::ostream& out) {
    if (c.experiment == "bijection") return exp_bijection(c, out);
    if (c.experiment == "peaks") return exp_peaks(c, out);
    if (c.experiment == "localization") return exp_localization(c, out);
    if (c.experiment == "layering") return exp_layering(c, out);
    throw InputError("unknown experiment: '" + c.experiment + "'");
}

}  // namespace sos::cli
