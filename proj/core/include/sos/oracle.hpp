#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "sos/contour.hpp"
#include "sos/disorder.hpp"
#include "sos/lattice.hpp"

namespace sos {

struct TruncationReport {
    double value = 0;       // log partition function
    double tail_bound = 0;  // bound on |true log Z - value|
};

// Bound on the log Z error from restricting every site to the window, using the
// peak decay P[|phi(x) - n| >= m] <= e^K e^{-3 beta m}. Infinite when not summable.
double window_tail_bound(std::size_t sites, double beta, int bc, const HeightWindow& window);

constexpr double kEnumerationLimit = 1e8;

// Direct sum over all fields with heights in params.height_window. Pinning weights are
// included when a disorder field is given or params.h != 0.
TruncationReport enumerate_logZ(const Box& box, const ModelParams& params,
                                const DisorderField* disorder = nullptr);

// Signed contours entering the contour representation of Z.
struct ContourConfigSpace {
    std::vector<SignedContour> contours;  // ordered by decreasing length
    int intensity_cap = 0;                // 0 means uncapped
    int max_length = 0;
};

ContourConfigSpace make_config_space(const Box& box, int max_length, int intensity_cap = 0);

struct ContourSum {
    TruncationReport log_z;
    double mean_contour_count = 0;  // E[number of contours] under the contour measure
    std::uint64_t collections = 0;  // compatible collections visited
};

// Z = sum over compatible contour sets of prod 1 / (e^{beta |gamma|} - 1).
// max_length 0 means every contour of the box.
ContourSum contour_sum(const Box& box, const ModelParams& params, int max_length = 0, int intensity_cap = 0);

TruncationReport contour_logZ(const Box& box, const ModelParams& params, int max_length = 0,
                              int intensity_cap = 0);

constexpr double kTransferStateLimit = 2e5;

struct TransferResult {
    double log_z = 0;
    double contact_mean = 0;  // E[sum of delta_x]; only with derivative requested
};

// Column transfer matrix along x for the given box, bc on all four sides. Each site can
// carry its own window (row-major, box.size() entries); otherwise params.height_window.
// The contact reward at x is alpha*omega_x - lambda(alpha) + h with disorder, h without.
TransferResult transfer_matrix(const Box& box, const ModelParams& params, const DisorderField* disorder = nullptr,
                               const std::vector<HeightWindow>* windows = nullptr, bool derivative = false);

// width = transverse size (column height), length = number of columns.
double transfer_matrix_logZ(int width, int length, const ModelParams& params,
                            const DisorderField* disorder = nullptr);

// Strip box used by transfer_matrix_logZ.
inline Box strip_box(int width, int length) { return Box(length, width); }

std::map<int, double> marginal_height_distribution(const Box& box, const ModelParams& params, Site site);

// P[phi(x) >= n]; the window at x is widened upward to n + extra.
double tail_probability(const Box& box, const ModelParams& params, Site x, int n, int extra = 4);
// P[min(phi(x), phi(y)) >= n].
double joint_tail_probability(const Box& box, const ModelParams& params, Site x, Site y, int n, int extra = 2);

struct Theta1Estimate {
    double theta1 = 0;
    double stability = 0;  // max relative change between consecutive n
    int box_side = 0;
    int n_used = 0;
    std::vector<int> n_values;
    std::vector<double> scaled;      // e^{4 beta n} P[phi(center) >= n]
    std::vector<double> probability;  // P[phi(center) >= n]
};

constexpr double kTheta1ProbabilityFloor = 1e-13;

// Uses the largest feasible square box; theta1 is read at the largest n whose
// probability exceeds the floor. Sites other than the centre are kept within bc +- 2
// (further clipped to params.height_window); the centre runs up to n + 4.
Theta1Estimate theta1_estimate(const ModelParams& params, std::vector<int> box_sides, std::vector<int> n_range);

// Product measure over signed contours: each included independently with
// probability e^{-beta |gamma|}, sampled per length class by geometric skipping.
class QSampler {
public:
    QSampler(const Box& box, double beta, int max_length);

    const std::vector<GeometricContour>& geometries() const { return geometries_; }
    // Signed contour id: 2 * geometry index + (sign < 0).
    SignedContour contour(std::size_t id) const;
    double expected_count() const { return expected_count_; }
    std::vector<std::size_t> sample(std::mt19937_64& rng) const;

private:
    struct LengthClass {
        int length;
        double p;
        std::size_t first;  // first signed id
        std::size_t count;  // number of signed ids
    };
    std::vector<GeometricContour> geometries_;
    std::vector<LengthClass> classes_;
    double expected_count_ = 0;
};

// Requires params.contour_length_cap; one draw with a generator seeded from seed.
std::vector<SignedContour> sample_Q(const Box& box, const ModelParams& params, std::uint64_t seed);

struct IntensityLaw {
    std::vector<double> probability;  // P[k = m | contour present], m = 1, 2, ...
    double presence = 0;              // P[contour present] in the window measure
    double tv = 0;                    // distance to Geometric(e^{-beta |gamma|})
    double tail_bound = 0;            // bound on the window's contribution to tv
};

// Exact conditional intensity law of a contour, by enumeration over the window.
IntensityLaw intensity_law_check(const Box& box, const ModelParams& params, const SignedContour& contour);

struct QuenchedResult {
    double mean = 0;
    double std_error = 0;
    double annealed = 0;  // alpha = 0 at the same h
    double shifted = 0;   // alpha = 0 at h - lambda(alpha)
    std::vector<double> samples;
};

// Disorder average of log Z / |Lambda| over n_samples replicas on a width x length strip.
QuenchedResult quenched_free_energy_exact(int width, int length, const ModelParams& params, const DisorderSpec& spec,
                                          int n_samples, std::uint64_t seed);

}  // namespace sos
