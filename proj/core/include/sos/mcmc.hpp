#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sos/disorder.hpp"
#include "sos/lattice.hpp"

namespace sos {

// The random stream of sweep t is derived from (seed, t), so the state below is
// enough to resume a chain exactly.
struct ChainState {
    HeightField field;
    std::uint64_t seed = 0;
    std::uint64_t sweep_count = 0;
};

struct ChainTrace {
    std::vector<double> contacts;       // sum of delta_x after each sweep
    std::vector<double> rao_blackwell;  // sum of P(phi_x = 0 | rest) during each sweep
};

struct ChainResult {
    ChainState state;
    ChainTrace trace;
    double contact_fraction = 0;  // Rao-Blackwellized, per site
    double contact_stderr = 0;    // batch means
    double raw_fraction = 0;
    double tau_int = 0;           // integrated autocorrelation time of the estimator
};

class HeatBath {
public:
    HeatBath(const ModelParams& params, const DisorderField& disorder);

    // Exact conditional law over the window at x given the rest; returns P(phi_x = 0).
    double conditional(const HeightField& field, Site x, std::vector<double>& law) const;
    // Resamples x using the uniform u in [0, 1); returns P(phi_x = 0) before the move.
    double update(HeightField& field, Site x, double u) const;
    // One systematic scan; returns the Rao-Blackwell contact sum.
    double sweep(ChainState& state) const;

    const ModelParams& params() const { return params_; }

private:
    ModelParams params_;
    std::vector<double> reward_;  // exp(alpha omega - lambda + h)
    std::vector<double> kernel_;
    mutable std::vector<double> scratch_;
    mutable std::vector<int> energy_;
};

double uniform_for(std::uint64_t seed, std::uint64_t sweep, std::uint64_t site);

ChainState heat_bath_site(const ChainState& state, const ModelParams& params, const DisorderField& disorder,
                          Site site);

ChainState initial_state(const Box& box, const ModelParams& params, std::uint64_t seed);

// Runs burn_in + sweeps sweeps from state; the trace covers the last `sweeps`.
ChainResult run_chain(const ModelParams& params, const DisorderField& disorder, ChainState state,
                      std::uint64_t sweeps, std::uint64_t burn_in);
ChainResult run_chain(const ModelParams& params, const DisorderField& disorder, std::uint64_t sweeps,
                      std::uint64_t burn_in, std::uint64_t seed);

// tau_int of a series from batch means (0.5 for uncorrelated data).
double batch_means_tau(const std::vector<double>& series, double* stderr_out = nullptr);

struct FreeEnergyCurve {
    std::vector<double> h_grid;
    std::vector<double> contact_fraction;
    std::vector<double> contact_stderr;
    std::vector<double> integrated_excess;
    std::vector<double> integrated_stderr;
    std::vector<std::vector<double>> replica_excess;  // [replica][grid point]
};

struct IntegrationSettings {
    std::uint64_t sweeps = 200;
    std::uint64_t burn_in = 50;
};

// Trapezoid integral of the contact fraction over h_grid (ascending, starting at 0).
// Each replica uses one disorder field for every h; chain seeds are shared across h.
FreeEnergyCurve thermo_integrate(const Box& box, const ModelParams& params, const DisorderSpec& spec,
                                 const std::vector<double>& h_grid, int replicas, std::uint64_t seed,
                                 const IntegrationSettings& settings = {});

struct Checkpoint {
    ChainState state;
    ChainTrace trace;
};

constexpr std::int32_t kCheckpointMagic = 0x534f5301;  // "SOS", format version 1

void save_checkpoint(const std::string& path, const Checkpoint& cp);
// Throws InputError on a bad magic or version.
Checkpoint load_checkpoint(const std::string& path);

}  // namespace sos
