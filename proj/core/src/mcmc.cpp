#include "sos/mcmc.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <numeric>

#include "sos/error.hpp"
#include "sos/parallel.hpp"

namespace sos {

HeatBath::HeatBath(const ModelParams& params, const DisorderField& disorder) : params_(params) {
    params_.validate();
    const Box& box = disorder.box();
    const double lambda = log_mgf(disorder.spec(), params.alpha);
    reward_.resize(box.size());
    for (std::size_t i = 0; i < box.size(); ++i)
        reward_[i] = std::exp(params.alpha * disorder.values()[i] - lambda + params.h);
    const HeightWindow& w = params.height_window;
    const int span = 4 * (std::max(w.hi, params.bc) - std::min(w.lo, params.bc));
    kernel_.resize(span + 1);
    for (int d = 0; d <= span; ++d) kernel_[d] = std::exp(-params.beta * d);
    scratch_.resize(w.size());
}

double HeatBath::conditional(const HeightField& f, Site x, std::vector<double>& law) const {
    const HeightWindow& w = params_.height_window;
    const int nb[4] = {f.at({x.x + 1, x.y}), f.at({x.x - 1, x.y}), f.at({x.x, x.y + 1}), f.at({x.x, x.y - 1})};
    int emin = std::numeric_limits<int>::max();
    law.resize(w.size());
    std::vector<int>& energy = energy_;
    energy.resize(w.size());
    for (int k = w.lo; k <= w.hi; ++k) {
        int e = 0;
        for (int v : nb) e += std::abs(k - v);
        energy[k - w.lo] = e;
        emin = std::min(emin, e);
    }
    double z = 0;
    const double pin = reward_[f.box().index(x)];
    for (int k = w.lo; k <= w.hi; ++k) {
        double p = kernel_[energy[k - w.lo] - emin];
        if (k == 0) p *= pin;
        law[k - w.lo] = p;
        z += p;
    }
    for (double& p : law) p /= z;
    return w.contains(0) ? law[-w.lo] : 0.0;
}

double HeatBath::update(HeightField& f, Site x, double u) const {
    const double p0 = conditional(f, x, scratch_);
    const HeightWindow& w = params_.height_window;
    double acc = 0;
    int pick = w.hi;
    for (int k = w.lo; k <= w.hi; ++k) {
        acc += scratch_[k - w.lo];
        if (u < acc) {
            pick = k;
            break;
        }
    }
    f[x] = pick;
    return p0;
}

double HeatBath::sweep(ChainState& state) const {
    const Box& box = state.field.box();
    double rb = 0;
    for (std::size_t i = 0; i < box.size(); ++i)
        rb += update(state.field, box.site(i), uniform_for(state.seed, state.sweep_count, i));
    ++state.sweep_count;
    return rb;
}

double uniform_for(std::uint64_t seed, std::uint64_t sweep, std::uint64_t site) {
    const std::uint64_t r = derive_seed(derive_seed(seed, sweep), site);
    return static_cast<double>(r >> 11) * 0x1.0p-53;
}

ChainState heat_bath_site(const ChainState& state, const ModelParams& params, const DisorderField& disorder,
                          Site site) {
    if (!state.field.box().contains(site)) throw InputError("site outside box");
    ChainState next = state;
    HeatBath(params, disorder).update(next.field, site,
                                      uniform_for(state.seed, state.sweep_count, state.field.box().index(site)));
    return next;
}

ChainState initial_state(const Box& box, const ModelParams& params, std::uint64_t seed) {
    return {HeightField(box, params.bc), seed, 0};
}

double batch_means_tau(const std::vector<double>& x, double* stderr_out) {
    const std::size_t n = x.size();
    if (n < 2) {
        if (stderr_out) *stderr_out = 0;
        return 0.5;
    }
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double var = 0;
    for (double v : x) var += (v - mean) * (v - mean);
    var /= (n - 1);
    const std::size_t batches = std::max<std::size_t>(2, static_cast<std::size_t>(std::sqrt(static_cast<double>(n))));
    const std::size_t b = n / batches;
    if (b < 1 || var <= 0) {
        if (stderr_out) *stderr_out = std::sqrt(var / n);
        return 0.5;
    }
    double bvar = 0;
    for (std::size_t k = 0; k < batches; ++k) {
        const double m = std::accumulate(x.begin() + k * b, x.begin() + (k + 1) * b, 0.0) / b;
        bvar += (m - mean) * (m - mean);
    }
    bvar /= (batches - 1);
    if (stderr_out) *stderr_out = std::sqrt(std::max(bvar / batches, var / n));
    return std::max(0.5, 0.5 * b * bvar / var);
}

ChainResult run_chain(const ModelParams& params, const DisorderField& disorder, ChainState state,
                      std::uint64_t sweeps, std::uint64_t burn_in) {
    if (!(state.field.box() == disorder.box())) throw InputError("disorder box does not match chain");
    const HeatBath hb(params, disorder);
    ChainResult out;
    for (std::uint64_t t = 0; t < burn_in; ++t) hb.sweep(state);
    out.trace.contacts.reserve(sweeps);
    out.trace.rao_blackwell.reserve(sweeps);
    for (std::uint64_t t = 0; t < sweeps; ++t) {
        out.trace.rao_blackwell.push_back(hb.sweep(state));
        out.trace.contacts.push_back(state.field.contact_count());
    }
    const double sites = static_cast<double>(state.field.box().size());
    if (sweeps > 0) {
        const auto& rb = out.trace.rao_blackwell;
        out.contact_fraction = std::accumulate(rb.begin(), rb.end(), 0.0) / sweeps / sites;
        const auto& raw = out.trace.contacts;
        out.raw_fraction = std::accumulate(raw.begin(), raw.end(), 0.0) / sweeps / sites;
        double se = 0;
        out.tau_int = batch_means_tau(rb, &se);
        out.contact_stderr = se / sites;
    }
    out.state = std::move(state);
    return out;
}

ChainResult run_chain(const ModelParams& params, const DisorderField& disorder, std::uint64_t sweeps,
                      std::uint64_t burn_in, std::uint64_t seed) {
    return run_chain(params, disorder, initial_state(disorder.box(), params, seed), sweeps, burn_in);
}

FreeEnergyCurve thermo_integrate(const Box& box, const ModelParams& params, const DisorderSpec& spec,
                                 const std::vector<double>& h_grid, int replicas, std::uint64_t seed,
                                 const IntegrationSettings& settings) {
    if (h_grid.empty() || h_grid.front() != 0.0) throw InputError("h grid must start at 0");
    if (!std::is_sorted(h_grid.begin(), h_grid.end())) throw InputError("h grid must be ascending");
    if (replicas < 1) throw InputError("need at least one replica");
    const std::size_t m = h_grid.size();
    std::vector<std::vector<double>> rho(replicas, std::vector<double>(m));
    parallel_for(static_cast<std::size_t>(replicas), [&](std::size_t r) {
        const DisorderField omega = params.alpha == 0 ? zero_disorder(box) : sample(spec, box, derive_seed(seed, r));
        const std::uint64_t chain_seed = derive_seed(seed ^ 0xc4a1d5eed5ULL, r);
        for (std::size_t k = 0; k < m; ++k) {
            ModelParams p = params;
            p.h = h_grid[k];
            rho[r][k] = run_chain(p, omega, settings.sweeps, settings.burn_in, chain_seed).contact_fraction;
        }
    });
    FreeEnergyCurve c;
    c.h_grid = h_grid;
    c.replica_excess.assign(replicas, std::vector<double>(m, 0.0));
    for (int r = 0; r < replicas; ++r)
        for (std::size_t k = 1; k < m; ++k)
            c.replica_excess[r][k] =
                c.replica_excess[r][k - 1] + 0.5 * (h_grid[k] - h_grid[k - 1]) * (rho[r][k] + rho[r][k - 1]);
    auto stats = [&](auto get, std::vector<double>& mean, std::vector<double>& se) {
        mean.assign(m, 0.0);
        se.assign(m, 0.0);
        for (std::size_t k = 0; k < m; ++k) {
            double s = 0, s2 = 0;
            for (int r = 0; r < replicas; ++r) s += get(r, k);
            const double mu = s / replicas;
            for (int r = 0; r < replicas; ++r) s2 += (get(r, k) - mu) * (get(r, k) - mu);
            mean[k] = mu;
            se[k] = replicas > 1 ? std::sqrt(s2 / (replicas - 1) / replicas) : 0.0;
        }
    };
    stats([&](int r, std::size_t k) { return rho[r][k]; }, c.contact_fraction, c.contact_stderr);
    stats([&](int r, std::size_t k) { return c.replica_excess[r][k]; }, c.integrated_excess, c.integrated_stderr);
    return c;
}

namespace {

template <class T>
void put(std::ofstream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::ifstream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!is) throw InputError("truncated checkpoint");
    return v;
}

}  // namespace

void save_checkpoint(const std::string& path, const Checkpoint& cp) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw InputError("cannot write checkpoint: " + path);
    const Box& b = cp.state.field.box();
    put<std::int32_t>(os, kCheckpointMagic);
    put<std::int32_t>(os, b.width);
    put<std::int32_t>(os, b.height);
    put<std::int32_t>(os, cp.state.field.bc());
    for (int v : cp.state.field.heights()) put<std::int32_t>(os, v);
    put<std::uint64_t>(os, cp.state.sweep_count);
    put<std::uint64_t>(os, cp.state.seed);
    put<std::uint64_t>(os, cp.trace.contacts.size());
    for (std::size_t i = 0; i < cp.trace.contacts.size(); ++i) {
        put<double>(os, cp.trace.contacts[i]);
        put<double>(os, cp.trace.rao_blackwell[i]);
    }
}

Checkpoint load_checkpoint(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw InputError("cannot read checkpoint: " + path);
    const auto magic = get<std::int32_t>(is);
    if ((magic & ~0xff) != (kCheckpointMagic & ~0xff)) throw InputError("not a chain checkpoint: " + path);
    if (magic != kCheckpointMagic)
        throw InputError("checkpoint format version " + std::to_string(magic & 0xff) + " is not supported");
    const int w = get<std::int32_t>(is), h = get<std::int32_t>(is), bc = get<std::int32_t>(is);
    if (w <= 0 || h <= 0 || static_cast<long long>(w) * h > (1LL << 28)) throw InputError("bad checkpoint geometry");
    std::vector<int> heights(static_cast<std::size_t>(w) * h);
    for (auto& v : heights) v = get<std::int32_t>(is);
    Checkpoint cp;
    cp.state.field = HeightField(Box(w, h), bc, std::move(heights));
    cp.state.sweep_count = get<std::uint64_t>(is);
    cp.state.seed = get<std::uint64_t>(is);
    const auto n = get<std::uint64_t>(is);
    for (std::uint64_t i = 0; i < n; ++i) {
        cp.trace.contacts.push_back(get<double>(is));
        cp.trace.rao_blackwell.push_back(get<double>(is));
    }
    return cp;
}

}  // namespace sos
