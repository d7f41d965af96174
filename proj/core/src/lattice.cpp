#include "sos/lattice.hpp"

#include <cstdlib>
#include <string>

#include "sos/disorder.hpp"
#include "sos/error.hpp"

namespace sos {

Box::Box(int w, int h, Site o) : width(w), height(h), origin(o) {
    if (w <= 0 || h <= 0) throw InputError("box sides must be positive");
}

std::vector<Site> Box::external_boundary() const {
    std::vector<Site> out;
    const int x0 = origin.x, y0 = origin.y, x1 = origin.x + width - 1, y1 = origin.y + height - 1;
    for (int x = x0; x <= x1; ++x) out.push_back({x, y0 - 1});
    for (int y = y0; y <= y1; ++y) {
        out.push_back({x0 - 1, y});
        out.push_back({x1 + 1, y});
    }
    for (int x = x0; x <= x1; ++x) out.push_back({x, y1 + 1});
    return out;
}

HeightField::HeightField(Box box, int bc) : box_(box), bc_(bc), heights_(box.size(), bc) {}

HeightField::HeightField(Box box, int bc, std::vector<int> heights)
    : box_(box), bc_(bc), heights_(std::move(heights)) {
    if (heights_.size() != box_.size()) throw InputError("height count does not match box");
}

int HeightField::contact_count() const {
    int c = 0;
    for (int v : heights_) c += (v == 0);
    return c;
}

void ModelParams::validate() const {
    if (!(beta >= 0.0)) throw InputError("beta must be nonnegative");
    if (!(alpha >= 0.0)) throw InputError("alpha must be nonnegative");
    if (height_window.lo > height_window.hi) throw InputError("empty height window");
    if (!height_window.contains(bc) || !height_window.contains(0))
        throw InputError("height window must contain bc and 0");
    if (contour_length_cap && *contour_length_cap < 4)
        throw InputError("contour length cap must be at least 4");
}

HeightWindow default_window(int bc, int w) {
    return {std::min(bc - w, -2), std::max(bc + w, 2)};
}

std::int64_t hamiltonian(const HeightField& field) {
    const Box& b = field.box();
    const int n = field.bc();
    std::int64_t e = 0;
    for (int y = b.origin.y; y < b.origin.y + b.height; ++y) {
        for (int x = b.origin.x; x < b.origin.x + b.width; ++x) {
            const int v = field[{x, y}];
            // Right and up neighbours count every interior pair once; the left and
            // bottom boundary edges are added separately.
            e += std::abs(v - field.at({x + 1, y}));
            e += std::abs(v - field.at({x, y + 1}));
            if (x == b.origin.x) e += std::abs(v - n);
            if (y == b.origin.y) e += std::abs(v - n);
        }
    }
    return e;
}

double boltzmann_log_weight(const HeightField& field, const ModelParams& params) {
    return -params.beta * static_cast<double>(hamiltonian(field));
}

double pinning_log_weight(const HeightField& field, const ModelParams& params,
                          const DisorderField& disorder) {
    if (!(disorder.box() == field.box())) throw InputError("disorder box does not match field box");
    double w = boltzmann_log_weight(field, params);
    if (params.alpha == 0.0 && params.h == 0.0) return w;
    const double lambda = log_mgf(disorder.spec(), params.alpha);
    const Box& b = field.box();
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (field.heights()[i] != 0) continue;
        w += params.alpha * disorder.values()[i] - lambda + params.h;
    }
    return w;
}

}  // namespace sos
