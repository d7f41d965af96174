#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "sos/lattice.hpp"

namespace sos {

enum class DisorderKind { gaussian, rademacher, discrete };

struct DisorderSpec {
    DisorderKind kind = DisorderKind::rademacher;
    // Support and law, used only by the discrete kind.
    std::vector<double> values;
    std::vector<double> probabilities;

    static DisorderSpec gaussian();
    static DisorderSpec rademacher();
    // Throws InputError unless the law is centred and normalised.
    static DisorderSpec discrete(std::vector<double> values, std::vector<double> probabilities);

    // "gaussian", "rademacher" or "discrete:v1@p1,v2@p2,...".
    std::string to_string() const;
    static DisorderSpec parse(const std::string& text);

    friend bool operator==(const DisorderSpec&, const DisorderSpec&) = default;
};

// E[f(omega)] = sum_i weights[i] * f(nodes[i]).
struct Quadrature {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Exact for discrete laws, 64-point Gauss-Hermite for the gaussian.
Quadrature quadrature(const DisorderSpec& spec);

// log E[exp(alpha * omega)].
double log_mgf(const DisorderSpec& spec, double alpha);

// Var(xi) for xi = exp(alpha * omega - log_mgf(alpha)).
double xi_variance(const DisorderSpec& spec, double alpha);

template <class F>
double expectation(const DisorderSpec& spec, F&& f) {
    const Quadrature q = quadrature(spec);
    double s = 0.0;
    for (std::size_t i = 0; i < q.nodes.size(); ++i) s += q.weights[i] * f(q.nodes[i]);
    return s;
}

// E[f(xi)] with xi = exp(alpha * omega - lambda(alpha)).
template <class F>
double xi_expectation(const DisorderSpec& spec, double alpha, F&& f) {
    const double lambda = log_mgf(spec, alpha);
    return expectation(spec, [&](double w) { return f(std::exp(alpha * w - lambda)); });
}

std::uint64_t splitmix64(std::uint64_t x);
// Independent child seed for work item `index`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

class DisorderField {
public:
    DisorderField() = default;
    DisorderField(DisorderSpec spec, Box box, std::uint64_t seed, std::vector<double> values);

    const DisorderSpec& spec() const { return spec_; }
    const Box& box() const { return box_; }
    std::uint64_t seed() const { return seed_; }
    const std::vector<double>& values() const { return values_; }
    double operator[](Site s) const { return values_[box_.index(s)]; }

private:
    DisorderSpec spec_;
    Box box_;
    std::uint64_t seed_ = 0;
    std::vector<double> values_;
};

// The value at a site depends only on (spec, seed, absolute site), never on the box
// or on traversal order.
DisorderField sample(const DisorderSpec& spec, const Box& box, std::uint64_t seed);

// All-zero field (alpha plays no role).
DisorderField zero_disorder(const Box& box);

}  // namespace sos
