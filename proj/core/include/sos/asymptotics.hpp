#pragma once

#include <functional>
#include <vector>

#include "sos/disorder.hpp"

namespace sos {

struct GParams {
    double beta = 0;
    double alpha = 0;
    double theta1 = 1;
    double var_xi = 0;

    // p_n = theta1 e^{-4 beta n}.
    double p(int n) const;
};

GParams make_gparams(double beta, const DisorderSpec& spec, double alpha, double theta1);

// max over n >= 0 of p_n h - p_n^2 v / 2; 0 at h = 0.
double G(const GParams& g, double h);
// Smallest maximising n.
int n_argmax(const GParams& g, double h);
// max(0, ceil(log(theta1 v / (2h)) / (4 beta))).
int n_G(const GParams& g, double h);

struct KinkSequence {
    std::vector<double> kinks;   // h*_n between pieces n and n + 1, descending
    std::vector<double> slopes;  // p_n of piece n
};

// Closed-form kinks h*_n = v (p_n + p_{n+1}) / 2 for n < count.
KinkSequence kink_sequence(const GParams& g, int count);
// The same kink from bisection on the two adjacent pieces.
double kink_by_bisection(const GParams& g, int n);

// E[log(1 + p (e^h xi - 1))].
double bernoulli_free_energy(double p, const DisorderSpec& spec, double alpha, double h);
// |bernoulli_free_energy - (p h - p^2 v / 2)|.
double taylor_gap(double p, const DisorderSpec& spec, double alpha, double h);

struct Maximum {
    double value = 0;
    double p_star = 0;
    bool concave = true;  // second difference at the optimum is non-positive
};

// Golden-section maximisation of a unimodal function on [a, b].
Maximum golden_section_max(const std::function<double(double)>& f, double a, double b, double tol = 1e-12);

Maximum upper_bound_max_p(const DisorderSpec& spec, double alpha, double h);

// max_p theta^{-1} log E[(1 + p (e^h xi - 1))^theta]. Lies between upper_bound_max_p
// (the theta -> 0 limit) and h (theta -> 1).
double fractional_upper_bound(const DisorderSpec& spec, double alpha, double h, double theta);

struct RhoValues {
    double rho1 = 0;
    double rho2 = 0;
    double rho3 = 0;
};

// p, theta in (0, 1/2). Throws DomainError if 1 + p (xi - 1) <= 0 at a support point.
RhoValues rho_functions(double p, double theta, const DisorderSpec& spec, double alpha);

struct PhPoint {
    double h = 0;
    double p_h = 0;
    double value = 0;       // max of E[sqrt(1 + p (e^h xi - 1))]
    double ratio = 0;       // p_h v / (2 h)
    double excess_h2 = 0;   // (value - 1) / h^2
};

PhPoint p_h_maximizer(const DisorderSpec& spec, double alpha, double h);
std::vector<PhPoint> p_h_curve(const DisorderSpec& spec, double alpha, const std::vector<double>& h_grid);

}  // namespace sos
