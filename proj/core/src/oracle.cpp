#include "sos/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "sos/error.hpp"
#include "sos/parallel.hpp"

namespace sos {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> kernel_table(double beta, int span) {
    std::vector<double> k(span + 1);
    for (int d = 0; d <= span; ++d) k[d] = std::exp(-beta * d);
    return k;
}

std::vector<double> contact_rewards(const Box& box, const ModelParams& params, const DisorderField* disorder) {
    std::vector<double> u(box.size(), params.h);
    if (disorder) {
        if (!(disorder->box() == box)) throw InputError("disorder box does not match geometry");
        const double lambda = log_mgf(disorder->spec(), params.alpha);
        for (std::size_t i = 0; i < u.size(); ++i) u[i] = params.alpha * disorder->values()[i] - lambda + params.h;
    }
    return u;
}

// Depth-first sum over all fields in a window, with the Boltzmann and contact weight of
// each completed field passed to leaf(heights, weight).
template <class Leaf>
class FieldEnumerator {
public:
    FieldEnumerator(const Box& box, HeightWindow window, int bc, double beta, std::vector<double> rewards,
                    Leaf& leaf)
        : box_(box), w_(window), bc_(bc), kernel_(kernel_table(beta, window.hi - window.lo)),
          leaf_(leaf), heights_(box.size(), bc) {
        pin_.resize(box.size());
        for (std::size_t i = 0; i < rewards.size(); ++i) pin_[i] = std::exp(rewards[i]);
    }

    void run() { place(0, 1.0); }

private:
    double k(int a, int b) const { return kernel_[std::abs(a - b)]; }

    void place(std::size_t i, double weight) {
        if (i == heights_.size()) {
            leaf_(heights_, weight);
            return;
        }
        const int x = static_cast<int>(i % box_.width), y = static_cast<int>(i / box_.width);
        const bool right = x == box_.width - 1, top = y == box_.height - 1;
        for (int v = w_.lo; v <= w_.hi; ++v) {
            double f = weight;
            f *= x == 0 ? k(v, bc_) : k(v, heights_[i - 1]);
            f *= y == 0 ? k(v, bc_) : k(v, heights_[i - box_.width]);
            if (right) f *= k(v, bc_);
            if (top) f *= k(v, bc_);
            if (v == 0) f *= pin_[i];
            heights_[i] = v;
            place(i + 1, f);
        }
        heights_[i] = bc_;
    }

    Box box_;
    HeightWindow w_;
    int bc_;
    std::vector<double> kernel_;
    std::vector<double> pin_;
    Leaf& leaf_;
    std::vector<int> heights_;
};

template <class Leaf>
void enumerate_fields(const Box& box, const HeightWindow& window, int bc, double beta,
                      const std::vector<double>& rewards, Leaf& leaf) {
    const double count = std::pow(static_cast<double>(window.size()), static_cast<double>(box.size()));
    if (count > kEnumerationLimit)
        throw CapacityError("enumeration guard: " + std::to_string(window.size()) + "^" +
                            std::to_string(box.size()) + " fields; use the transfer matrix");
    FieldEnumerator<Leaf>(box, window, bc, beta, rewards, leaf).run();
}

double contour_weight(double beta, std::size_t length, int cap) {
    const double x = beta * static_cast<double>(length);
    const double w = 1.0 / std::expm1(x);
    return cap > 0 ? w * -std::expm1(-x * cap) : w;
}

}  // namespace

double window_tail_bound(std::size_t sites, double beta, int bc, const HeightWindow& window) {
    const int m = std::min(window.hi - bc, bc - window.lo) + 1;
    if (beta <= std::log(3.0) + 1e-3) return kInf;
    // K bounds log E[e^{3 beta (phi(x) - n)}] through the contour count l 3^{l-2}.
    double k = 0;
    for (int l = 4; l < 4000; l += 2) {
        const double term = std::exp(std::log(l) + (l - 2) * std::log(3.0) - beta * (l - 3)) / -std::expm1(-beta);
        k += term;
        if (term < 1e-18 * k) break;
    }
    const double eps = 2.0 * static_cast<double>(sites) * std::exp(k - 3.0 * beta * m);
    if (!(eps < 1.0)) return kInf;
    return -std::log1p(-eps);
}

TruncationReport enumerate_logZ(const Box& box, const ModelParams& params, const DisorderField* disorder) {
    params.validate();
    long double z = 0;
    auto leaf = [&](const std::vector<int>&, double w) { z += w; };
    enumerate_fields(box, params.height_window, params.bc, params.beta, contact_rewards(box, params, disorder), leaf);
    return {static_cast<double>(std::log(z)),
            window_tail_bound(box.size(), params.beta, params.bc, params.height_window)};
}

ContourConfigSpace make_config_space(const Box& box, int max_length, int intensity_cap) {
    ContourConfigSpace space;
    space.max_length = max_length > 0 ? max_length : max_contour_length(box);
    space.intensity_cap = intensity_cap;
    auto geo = enumerate_contours(box, space.max_length);
    std::stable_sort(geo.begin(), geo.end(),
                     [](const GeometricContour& a, const GeometricContour& b) { return a.length() > b.length(); });
    space.contours.reserve(2 * geo.size());
    for (auto& g : geo) {
        space.contours.push_back({g, 1});
        space.contours.push_back({std::move(g), -1});
    }
    return space;
}

namespace {

class CompatibleSetSum {
public:
    CompatibleSetSum(const std::vector<std::vector<std::size_t>>& adj, std::vector<double> weights)
        : n_(weights.size()), words_((n_ + 63) / 64), w_(std::move(weights)), forbid_(n_ * words_, 0),
          stack_((n_ + 1) * words_, 0) {
        for (std::size_t i = 0; i < n_; ++i) {
            std::uint64_t* f = &forbid_[i * words_];
            // Forbid i itself and every index up to i so each set is generated once.
            for (std::size_t j = 0; j <= i; ++j) f[j / 64] |= 1ULL << (j % 64);
            for (std::size_t j : adj[i]) f[j / 64] |= 1ULL << (j % 64);
        }
    }

    struct Acc {
        long double z = 1;
        long double m = 0;
    };

    Acc run() {
        std::uint64_t* all = &stack_[0];
        for (std::size_t j = 0; j < n_; ++j) all[j / 64] |= 1ULL << (j % 64);
        return solve(0);
    }

    std::uint64_t visited() const { return visited_; }

private:
    Acc solve(std::size_t depth) {
        ++visited_;
        Acc acc;
        const std::uint64_t* c = &stack_[depth * words_];
        std::uint64_t* next = &stack_[(depth + 1) * words_];
        for (std::size_t wi = 0; wi < words_; ++wi) {
            std::uint64_t bits = c[wi];
            while (bits) {
                const std::size_t i = wi * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                bits &= bits - 1;
                const std::uint64_t* f = &forbid_[i * words_];
                for (std::size_t k = 0; k < words_; ++k) next[k] = c[k] & ~f[k];
                const Acc sub = solve(depth + 1);
                acc.z += w_[i] * sub.z;
                acc.m += w_[i] * (sub.m + sub.z);
            }
        }
        return acc;
    }

    std::size_t n_, words_;
    std::vector<double> w_;
    std::vector<std::uint64_t> forbid_;
    std::vector<std::uint64_t> stack_;
    std::uint64_t visited_ = 0;
};

}  // namespace

ContourSum contour_sum(const Box& box, const ModelParams& params, int max_length, int intensity_cap) {
    params.validate();
    const ContourConfigSpace space = make_config_space(box, max_length, intensity_cap);
    std::vector<double> w;
    w.reserve(space.contours.size());
    double tail = 0;
    for (const auto& c : space.contours) {
        w.push_back(contour_weight(params.beta, c.geometry.length(), intensity_cap));
        if (intensity_cap > 0)
            tail += -std::log1p(-std::exp(-params.beta * static_cast<double>(c.geometry.length()) * intensity_cap));
    }
    // Contours longer than the cap can only add factors (1 + w) per omitted contour.
    const int longest = max_contour_length(box);
    for (int l = space.max_length + 1; l <= longest; ++l) {
        if (l % 2) continue;
        const double count = 2.0 * static_cast<double>(box.size()) * l * std::pow(3.0, l - 2);
        tail += count * -std::log1p(-std::exp(-params.beta * l));
    }
    const auto adj = incompatibility_graph(space.contours);
    CompatibleSetSum sum(adj, std::move(w));
    const auto acc = sum.run();
    ContourSum out;
    out.log_z = {static_cast<double>(std::log(acc.z)), tail};
    out.mean_contour_count = static_cast<double>(acc.m / acc.z);
    out.collections = sum.visited();
    return out;
}

TruncationReport contour_logZ(const Box& box, const ModelParams& params, int max_length, int intensity_cap) {
    return contour_sum(box, params, max_length, intensity_cap).log_z;
}

TransferResult transfer_matrix(const Box& box, const ModelParams& params, const DisorderField* disorder,
                               const std::vector<HeightWindow>* windows, bool derivative) {
    params.validate();
    const int rows = box.height, cols = box.width, n = params.bc;
    std::vector<HeightWindow> win(box.size(), params.height_window);
    if (windows) {
        if (windows->size() != box.size()) throw InputError("one window per site required");
        win = *windows;
    }
    int lo = n, hi = n;
    for (const auto& w : win) {
        if (w.lo > w.hi) throw InputError("empty site window");
        lo = std::min(lo, w.lo);
        hi = std::max(hi, w.hi);
    }
    const std::vector<double> u = contact_rewards(box, params, disorder);
    const int span = hi - lo;
    const std::vector<double> kern = kernel_table(params.beta, (rows + 1) * span);

    auto column_windows = [&](int c) {
        std::vector<HeightWindow> cw(rows);
        for (int r = 0; r < rows; ++r) cw[r] = (c < 0 || c >= cols) ? HeightWindow{n, n} : win[r * cols + c];
        return cw;
    };
    auto states = [&](const std::vector<HeightWindow>& cw) {
        double s = 1;
        for (const auto& w : cw) s *= w.size();
        return s;
    };

    std::vector<double> v(1, 1.0), dv(1, 0.0), tmp, dtmp;
    std::vector<HeightWindow> prev = column_windows(-1);
    double log_scale = 0;
    for (int c = 0; c <= cols; ++c) {
        const std::vector<HeightWindow> cur = column_windows(c);
        // Horizontal couplings, one row at a time.
        std::vector<int> dims(rows);
        for (int r = 0; r < rows; ++r) dims[r] = prev[r].size();
        for (int r = 0; r < rows; ++r) {
            std::size_t inner = 1, outer = 1;
            for (int k = 0; k < r; ++k) inner *= dims[k];
            for (int k = r + 1; k < rows; ++k) outer *= dims[k];
            const int da = prev[r].size(), db = cur[r].size();
            const double size = static_cast<double>(inner) * outer * db;
            if (size > kTransferStateLimit * 4 || states(cur) > kTransferStateLimit)
                throw CapacityError("transfer matrix guard: " + std::to_string(static_cast<long long>(states(cur))) +
                                    " column states");
            std::vector<double> km(static_cast<std::size_t>(da) * db);
            for (int a = 0; a < da; ++a)
                for (int b = 0; b < db; ++b) km[a * db + b] = kern[std::abs(prev[r].lo + a - cur[r].lo - b)];
            tmp.assign(inner * db * outer, 0.0);
            if (derivative) dtmp.assign(tmp.size(), 0.0);
            for (std::size_t o = 0; o < outer; ++o) {
                for (int a = 0; a < da; ++a) {
                    const double* src = &v[(o * da + a) * inner];
                    const double* dsrc = derivative ? &dv[(o * da + a) * inner] : nullptr;
                    for (int b = 0; b < db; ++b) {
                        const double kab = km[a * db + b];
                        double* dst = &tmp[(o * db + b) * inner];
                        for (std::size_t i = 0; i < inner; ++i) dst[i] += kab * src[i];
                        if (derivative) {
                            double* ddst = &dtmp[(o * db + b) * inner];
                            for (std::size_t i = 0; i < inner; ++i) ddst[i] += kab * dsrc[i];
                        }
                    }
                }
            }
            v.swap(tmp);
            if (derivative) dv.swap(dtmp);
            dims[r] = db;
        }
        if (c == cols) break;
        // Vertical couplings inside the column, boundary rows to bc, and contacts.
        std::vector<int> h(rows);
        for (int r = 0; r < rows; ++r) h[r] = cur[r].lo;
        double mx = 0;
        for (std::size_t s = 0; s < v.size(); ++s) {
            int e = std::abs(h[0] - n) + std::abs(h[rows - 1] - n);
            for (int r = 0; r + 1 < rows; ++r) e += std::abs(h[r] - h[r + 1]);
            double w = kern[e];
            int zeros = 0;
            for (int r = 0; r < rows; ++r)
                if (h[r] == 0) {
                    w *= std::exp(u[r * cols + c]);
                    ++zeros;
                }
            if (derivative) dv[s] = (dv[s] + v[s] * zeros) * w;
            v[s] *= w;
            mx = std::max(mx, v[s]);
            for (int r = 0; r < rows; ++r) {
                if (++h[r] <= cur[r].hi) break;
                h[r] = cur[r].lo;
            }
        }
        if (!(mx > 0)) throw DomainError("transfer matrix underflow");
        for (auto& x : v) x /= mx;
        if (derivative)
            for (auto& x : dv) x /= mx;
        log_scale += std::log(mx);
        prev = cur;
    }
    TransferResult out;
    out.log_z = std::log(v[0]) + log_scale;
    if (derivative) out.contact_mean = dv[0] / v[0];
    return out;
}

double transfer_matrix_logZ(int width, int length, const ModelParams& params, const DisorderField* disorder) {
    return transfer_matrix(strip_box(width, length), params, disorder).log_z;
}

std::map<int, double> marginal_height_distribution(const Box& box, const ModelParams& params, Site site) {
    if (!box.contains(site)) throw InputError("site outside box");
    const double log_z = transfer_matrix(box, params).log_z;
    std::vector<HeightWindow> win(box.size(), params.height_window);
    std::map<int, double> out;
    for (int k = params.height_window.lo; k <= params.height_window.hi; ++k) {
        win[box.index(site)] = {k, k};
        out[k] = std::exp(transfer_matrix(box, params, nullptr, &win).log_z - log_z);
    }
    return out;
}

double tail_probability(const Box& box, const ModelParams& params, Site x, int n, int extra) {
    if (!box.contains(x)) throw InputError("site outside box");
    const HeightWindow& w = params.height_window;
    if (n <= w.lo) return 1.0;
    const int top = std::max(w.hi, n + extra);
    std::vector<HeightWindow> win(box.size(), w);
    win[box.index(x)] = {w.lo, top};
    const double log_z = transfer_matrix(box, params, nullptr, &win).log_z;
    win[box.index(x)] = {n, top};
    return std::exp(transfer_matrix(box, params, nullptr, &win).log_z - log_z);
}

double joint_tail_probability(const Box& box, const ModelParams& params, Site x, Site y, int n, int extra) {
    if (!box.contains(x) || !box.contains(y) || x == y) throw InputError("need two distinct sites in the box");
    const HeightWindow& w = params.height_window;
    const int top = std::max(w.hi, n + extra);
    std::vector<HeightWindow> win(box.size(), w);
    win[box.index(x)] = win[box.index(y)] = {w.lo, top};
    const double log_z = transfer_matrix(box, params, nullptr, &win).log_z;
    win[box.index(x)] = win[box.index(y)] = {std::max(n, w.lo), top};
    return std::exp(transfer_matrix(box, params, nullptr, &win).log_z - log_z);
}

Theta1Estimate theta1_estimate(const ModelParams& params, std::vector<int> box_sides, std::vector<int> n_range) {
    if (box_sides.empty() || n_range.empty()) throw InputError("need box sizes and an n range");
    std::sort(box_sides.rbegin(), box_sides.rend());
    std::sort(n_range.begin(), n_range.end());
    std::string last_error = "no feasible box";
    for (int side : box_sides) {
        try {
            const Box box(side, side);
            ModelParams narrow = params;
            narrow.height_window = {std::max(params.height_window.lo, std::min(params.bc - 2, 0)),
                                    std::min(params.height_window.hi, std::max(params.bc + 2, 0))};
            Theta1Estimate est;
            est.box_side = side;
            for (int n : n_range) {
                const double p = tail_probability(box, narrow, box.center(), n);
                est.n_values.push_back(n);
                est.probability.push_back(p);
                est.scaled.push_back(p * std::exp(4.0 * params.beta * n));
            }
            for (std::size_t k = 1; k < est.scaled.size(); ++k)
                est.stability =
                    std::max(est.stability, std::abs(est.scaled[k] - est.scaled[k - 1]) / est.scaled[k - 1]);
            std::size_t pick = 0;
            for (std::size_t k = 0; k < est.probability.size(); ++k)
                if (est.probability[k] > kTheta1ProbabilityFloor) pick = k;
            est.theta1 = est.scaled[pick];
            est.n_used = est.n_values[pick];
            return est;
        } catch (const CapacityError& e) {
            last_error = e.what();
        }
    }
    throw CapacityError(last_error);
}

QSampler::QSampler(const Box& box, double beta, int max_length) {
    geometries_ = enumerate_contours(box, max_length);
    for (std::size_t i = 0; i < geometries_.size();) {
        std::size_t j = i;
        while (j < geometries_.size() && geometries_[j].length() == geometries_[i].length()) ++j;
        const int l = static_cast<int>(geometries_[i].length());
        const double p = std::exp(-beta * l);
        classes_.push_back({l, p, 2 * i, 2 * (j - i)});
        expected_count_ += p * 2.0 * (j - i);
        i = j;
    }
}

SignedContour QSampler::contour(std::size_t id) const {
    return {geometries_[id / 2], (id % 2) ? -1 : 1};
}

std::vector<std::size_t> QSampler::sample(std::mt19937_64& rng) const {
    std::vector<std::size_t> out;
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (const auto& cls : classes_) {
        if (cls.p <= 0) continue;
        if (cls.p >= 1) {
            for (std::size_t k = 0; k < cls.count; ++k) out.push_back(cls.first + k);
            continue;
        }
        const double denom = std::log1p(-cls.p);
        double pos = -1;
        while (true) {
            double r = unif(rng);
            while (r <= 0) r = unif(rng);
            pos += 1 + std::floor(std::log(r) / denom);
            if (pos >= static_cast<double>(cls.count)) break;
            out.push_back(cls.first + static_cast<std::size_t>(pos));
        }
    }
    return out;
}

std::vector<SignedContour> sample_Q(const Box& box, const ModelParams& params, std::uint64_t seed) {
    if (!params.contour_length_cap) throw InputError("sample_Q needs a contour length cap");
    const QSampler q(box, params.beta, *params.contour_length_cap);
    std::mt19937_64 rng(seed);
    std::vector<SignedContour> out;
    for (std::size_t id : q.sample(rng)) out.push_back(q.contour(id));
    return out;
}

IntensityLaw intensity_law_check(const Box& box, const ModelParams& params, const SignedContour& contour) {
    params.validate();
    for (Site s : contour.geometry.interior())
        if (!box.contains(s)) throw InputError("contour interior leaves the box");
    const Neighborhoods nb = neighborhoods(contour);
    std::vector<long> inner, outer;  // box indices, or -1 for boundary sites
    for (Site s : nb.internal) inner.push_back(static_cast<long>(box.index(s)));
    for (Site s : nb.external) outer.push_back(box.contains(s) ? static_cast<long>(box.index(s)) : -1L);
    const int n = params.bc;
    const int span = params.height_window.size();
    std::vector<long double> mass(span + 2, 0.0L);
    long double z = 0;
    auto leaf = [&](const std::vector<int>& h, double w) {
        z += w;
        int imin = std::numeric_limits<int>::max(), imax = std::numeric_limits<int>::min();
        int omin = imin, omax = imax;
        for (long i : inner) {
            imin = std::min(imin, h[i]);
            imax = std::max(imax, h[i]);
        }
        for (long i : outer) {
            const int v = i < 0 ? n : h[i];
            omin = std::min(omin, v);
            omax = std::max(omax, v);
        }
        const int k = contour.sign > 0 ? imin - omax : omin - imax;
        if (k > 0) mass[std::min(k, span + 1)] += w;
    };
    enumerate_fields(box, params.height_window, n, params.beta, std::vector<double>(box.size(), 0.0), leaf);
    IntensityLaw out;
    long double present = 0;
    for (int k = 1; k <= span + 1; ++k) present += mass[k];
    out.presence = static_cast<double>(present / z);
    if (present <= 0) {
        out.tv = 1;
        out.tail_bound = kInf;
        return out;
    }
    const double q = std::exp(-params.beta * static_cast<double>(contour.geometry.length()));
    double tv = 0, geo_mass = 0;
    for (int k = 1; k <= span + 1; ++k) {
        const double p = static_cast<double>(mass[k] / present);
        out.probability.push_back(p);
        const double g = (1 - q) * std::pow(q, k - 1);
        geo_mass += g;
        tv += std::abs(p - g);
    }
    tv += std::max(0.0, 1.0 - geo_mass);
    out.tv = 0.5 * tv;
    const double tb = window_tail_bound(box.size(), params.beta, n, params.height_window);
    const double eps = std::expm1(tb);
    out.tail_bound = eps < 1 ? eps / (out.presence * (1 - eps)) : kInf;
    return out;
}

QuenchedResult quenched_free_energy_exact(int width, int length, const ModelParams& params, const DisorderSpec& spec,
                                          int n_samples, std::uint64_t seed) {
    if (n_samples < 1) throw InputError("need at least one disorder sample");
    const Box box = strip_box(width, length);
    const double sites = static_cast<double>(box.size());
    QuenchedResult out;
    ModelParams pure = params;
    pure.alpha = 0;
    out.annealed = transfer_matrix(box, pure).log_z / sites;
    pure.h = params.h - log_mgf(spec, params.alpha);
    out.shifted = transfer_matrix(box, pure).log_z / sites;
    out.samples.assign(n_samples, 0.0);
    if (params.alpha == 0) {
        std::fill(out.samples.begin(), out.samples.end(), out.annealed);
        out.mean = out.annealed;
        return out;
    }
    parallel_for(static_cast<std::size_t>(n_samples), [&](std::size_t r) {
        const DisorderField omega = sample(spec, box, derive_seed(seed, r));
        out.samples[r] = transfer_matrix(box, params, &omega).log_z / sites;
    });
    const double mean = std::accumulate(out.samples.begin(), out.samples.end(), 0.0) / n_samples;
    double var = 0;
    for (double s : out.samples) var += (s - mean) * (s - mean);
    out.mean = mean;
    out.std_error = n_samples > 1 ? std::sqrt(var / (n_samples - 1) / n_samples) : 0.0;
    return out;
}

}  // namespace sos
