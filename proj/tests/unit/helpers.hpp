#pragma once

#include <random>
#include <vector>

#include "sos/lattice.hpp"

namespace sos::test {

inline HeightField random_field(const Box& box, int bc, int lo, int hi, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> d(lo, hi);
    std::vector<int> h(box.size());
    for (auto& v : h) v = d(rng);
    return HeightField(box, bc, std::move(h));
}

inline HeightField field_from_rows(const Box& box, int bc, const std::vector<std::vector<int>>& rows) {
    // rows[0] is the bottom row.
    HeightField f(box, bc);
    for (int r = 0; r < box.height; ++r)
        for (int c = 0; c < box.width; ++c) f[{box.origin.x + c, box.origin.y + r}] = rows[r][c];
    return f;
}

}  // namespace sos::test
