#include "sos/disorder.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "sos/error.hpp"

namespace sos {

namespace {

// Newton iteration on the normalised Hermite recurrence.
Quadrature gauss_hermite(int n) {
    std::vector<long double> x(n), w(n);
    const long double pim4 = 0.7511255444649424828587030047762276930510L;  // pi^(-1/4)
    long double z = 0;
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        if (i == 0)
            z = std::sqrt(2.0L * n + 1) - 1.85575L * std::pow(2.0L * n + 1, -0.16667L);
        else if (i == 1)
            z -= 1.14L * std::pow(static_cast<long double>(n), 0.426L) / z;
        else if (i == 2)
            z = 1.86L * z - 0.86L * x[0];
        else if (i == 3)
            z = 1.91L * z - 0.91L * x[1];
        else
            z = 2.0L * z - x[i - 2];
        long double pp = 0;
        for (int it = 0; it < 100; ++it) {
            long double p1 = pim4, p2 = 0;
            for (int j = 0; j < n; ++j) {
                const long double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0L / (j + 1)) * p2 - std::sqrt(static_cast<long double>(j) / (j + 1)) * p3;
            }
            pp = std::sqrt(2.0L * n) * p2;
            const long double z1 = z;
            z = z1 - p1 / pp;
            if (std::fabs(z - z1) <= 1e-18L) break;
        }
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = 2.0L / (pp * pp);
        w[n - 1 - i] = w[i];
    }
    // Physicists' weight e^{-x^2}; map to the standard normal.
    Quadrature q;
    const long double s = std::sqrt(std::numbers::pi_v<long double>);
    for (int i = n - 1; i >= 0; --i) {
        q.nodes.push_back(static_cast<double>(std::sqrt(2.0L) * x[i]));
        q.weights.push_back(static_cast<double>(w[i] / s));
    }
    return q;
}

double uniform01(std::uint64_t bits) {
    // 53 random bits, strictly inside (0, 1).
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

DisorderSpec DisorderSpec::gaussian() { return {DisorderKind::gaussian, {}, {}}; }

DisorderSpec DisorderSpec::rademacher() { return {DisorderKind::rademacher, {}, {}}; }

DisorderSpec DisorderSpec::discrete(std::vector<double> values, std::vector<double> probabilities) {
    if (values.empty() || values.size() != probabilities.size())
        throw InputError("discrete law needs matching values and probabilities");
    double total = 0, mean = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(probabilities[i] >= 0)) throw InputError("negative probability");
        total += probabilities[i];
        mean += probabilities[i] * values[i];
    }
    if (std::abs(total - 1.0) > 1e-12) throw InputError("probabilities must sum to 1");
    if (std::abs(mean) > 1e-12) throw InputError("discrete law must be centred");
    return {DisorderKind::discrete, std::move(values), std::move(probabilities)};
}

std::string DisorderSpec::to_string() const {
    switch (kind) {
        case DisorderKind::gaussian: return "gaussian";
        case DisorderKind::rademacher: return "rademacher";
        case DisorderKind::discrete: break;
    }
    std::ostringstream os;
    os.precision(17);
    os << "discrete:";
    for (std::size_t i = 0; i < values.size(); ++i)
        os << (i ? "," : "") << values[i] << "@" << probabilities[i];
    return os.str();
}

DisorderSpec DisorderSpec::parse(const std::string& text) {
    if (text == "gaussian") return gaussian();
    if (text == "rademacher") return rademacher();
    const std::string prefix = "discrete:";
    if (text.rfind(prefix, 0) != 0) throw InputError("unknown disorder kind: " + text);
    std::vector<double> v, p;
    std::istringstream is(text.substr(prefix.size()));
    std::string item;
    while (std::getline(is, item, ',')) {
        const auto at = item.find('@');
        if (at == std::string::npos) throw InputError("discrete item needs value@probability: " + item);
        try {
            v.push_back(std::stod(item.substr(0, at)));
            p.push_back(std::stod(item.substr(at + 1)));
        } catch (const std::exception&) {
            throw InputError("bad number in discrete law: " + item);
        }
    }
    return discrete(std::move(v), std::move(p));
}

Quadrature quadrature(const DisorderSpec& spec) {
    static const Quadrature gh = gauss_hermite(64);
    switch (spec.kind) {
        case DisorderKind::gaussian: return gh;
        case DisorderKind::rademacher: return {{-1.0, 1.0}, {0.5, 0.5}};
        case DisorderKind::discrete: break;
    }
    return {spec.values, spec.probabilities};
}

double log_mgf(const DisorderSpec& spec, double alpha) {
    switch (spec.kind) {
        case DisorderKind::gaussian: return 0.5 * alpha * alpha;
        case DisorderKind::rademacher: {
            // log cosh without overflow.
            const double a = std::abs(alpha);
            return a + std::log1p(std::exp(-2 * a)) - std::numbers::ln2;
        }
        case DisorderKind::discrete: break;
    }
    const double m = *std::max_element(spec.values.begin(), spec.values.end(),
                                       [&](double a, double b) { return alpha * a < alpha * b; });
    double s = 0;
    for (std::size_t i = 0; i < spec.values.size(); ++i)
        s += spec.probabilities[i] * std::exp(alpha * (spec.values[i] - m));
    return alpha * m + std::log(s);
}

double xi_variance(const DisorderSpec& spec, double alpha) {
    return std::expm1(log_mgf(spec, 2 * alpha) - 2 * log_mgf(spec, alpha));
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(splitmix64(master) ^ splitmix64(index + 0x5851f42d4c957f2dULL));
}

DisorderField::DisorderField(DisorderSpec spec, Box box, std::uint64_t seed, std::vector<double> values)
    : spec_(std::move(spec)), box_(box), seed_(seed), values_(std::move(values)) {
    if (values_.size() != box_.size()) throw InputError("disorder value count does not match box");
}

DisorderField sample(const DisorderSpec& spec, const Box& box, std::uint64_t seed) {
    std::vector<double> v(box.size());
    const std::uint64_t base = splitmix64(seed);
    for (std::size_t i = 0; i < box.size(); ++i) {
        const Site s = box.site(i);
        const std::uint64_t key =
            (static_cast<std::uint64_t>(static_cast<std::uint32_t>(s.x)) << 32) |
            static_cast<std::uint32_t>(s.y);
        const std::uint64_t r1 = splitmix64(base ^ splitmix64(key));
        const std::uint64_t r2 = splitmix64(r1);
        switch (spec.kind) {
            case DisorderKind::gaussian:
                v[i] = std::sqrt(-2.0 * std::log(uniform01(r1))) *
                       std::cos(2.0 * std::numbers::pi * uniform01(r2));
                break;
            case DisorderKind::rademacher:
                v[i] = (r1 >> 63) ? 1.0 : -1.0;
                break;
            case DisorderKind::discrete: {
                const double u = uniform01(r1);
                double acc = 0;
                std::size_t k = 0;
                for (; k + 1 < spec.values.size(); ++k) {
                    acc += spec.probabilities[k];
                    if (u < acc) break;
                }
                v[i] = spec.values[k];
                break;
            }
        }
    }
    return DisorderField(spec, box, seed, std::move(v));
}

DisorderField zero_disorder(const Box& box) {
    return DisorderField(DisorderSpec::rademacher(), box, 0, std::vector<double>(box.size(), 0.0));
}

}  // namespace sos
