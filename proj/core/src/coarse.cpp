#include "sos/coarse.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>

#include "sos/error.hpp"

namespace sos {

namespace {

int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

// Block coordinate of the half-integer 2t/2 - 1/2, given t = 2 * label - 1.
int block_of_half(int twice, int L) { return floor_div(twice, 2 * L); }

bool contains(const std::vector<Site>& v, Site s) { return std::binary_search(v.begin(), v.end(), s); }

}  // namespace

Site block_of(Site s, int L) { return {floor_div(s.x, L), floor_div(s.y, L)}; }

std::vector<Site> coarse_trace(const GeometricContour& c, int L) {
    if (L < 1) throw InputError("block size must be positive");
    std::set<Site> cells;
    for (const auto& e : c.edges()) {
        // Endpoints (i - 1/2, j - 1/2) scaled by 2 are (2i - 1, 2j - 1).
        const auto [a, b] = e.endpoints();
        const int x0 = block_of_half(2 * a.x - 1, L), x1 = block_of_half(2 * b.x - 1, L);
        const int y0 = block_of_half(2 * a.y - 1, L), y1 = block_of_half(2 * b.y - 1, L);
        for (int x = std::min(x0, x1); x <= std::max(x0, x1); ++x)
            for (int y = std::min(y0, y1); y <= std::max(y0, y1); ++y) cells.insert({x, y});
    }
    return {cells.begin(), cells.end()};
}

double CoarseInterior::operator()(Site cell) const {
    if (contains(trace, cell)) return 0.5;
    return contains(inside, cell) ? 1.0 : 0.0;
}

CoarseInterior interior_function(const GeometricContour& c, int L) {
    CoarseInterior iota;
    iota.trace = coarse_trace(c, L);
    std::set<Site> in;
    for (Site s : c.interior()) {
        const Site z = block_of(s, L);
        if (!contains(iota.trace, z)) in.insert(z);
    }
    iota.inside.assign(in.begin(), in.end());
    return iota;
}

std::vector<CoarseCylinder> coarse_cylinders(const CylinderCollection& collection, int L, int length_threshold) {
    std::map<CoarseInterior, int> groups;
    for (const auto& cyl : collection) {
        const auto& g = cyl.contour.geometry;
        if (static_cast<int>(g.length()) < length_threshold) continue;
        groups[interior_function(g, L)] += cyl.contour.sign * cyl.intensity;
    }
    std::vector<CoarseCylinder> out;
    for (auto& [iota, q] : groups) out.push_back({iota, q});
    return out;
}

bool is_connected(const std::vector<Site>& cells) {
    if (cells.empty()) return true;
    std::set<Site> all(cells.begin(), cells.end()), seen{cells.front()};
    std::queue<Site> todo;
    todo.push(cells.front());
    while (!todo.empty()) {
        const Site s = todo.front();
        todo.pop();
        for (Site t : {Site{s.x + 1, s.y}, Site{s.x - 1, s.y}, Site{s.x, s.y + 1}, Site{s.x, s.y - 1}})
            if (all.count(t) && seen.insert(t).second) todo.push(t);
    }
    return seen.size() == all.size();
}

bool interior_is_consistent(const CoarseInterior& iota) {
    if (iota.trace.empty()) return iota.inside.empty();
    for (Site s : iota.inside)
        if (contains(iota.trace, s)) return false;
    Site lo = iota.trace.front(), hi = lo;
    for (Site s : iota.trace) {
        lo = {std::min(lo.x, s.x), std::min(lo.y, s.y)};
        hi = {std::max(hi.x, s.x), std::max(hi.y, s.y)};
    }
    for (Site s : iota.inside)
        if (s.x <= lo.x || s.x >= hi.x || s.y <= lo.y || s.y >= hi.y) return false;
    // Flood the complement inside a frame one cell wider than the trace.
    std::set<Site> seen;
    for (int y = lo.y - 1; y <= hi.y + 1; ++y) {
        for (int x = lo.x - 1; x <= hi.x + 1; ++x) {
            const Site start{x, y};
            if (contains(iota.trace, start) || seen.count(start)) continue;
            const double value = iota(start);
            bool outer = false;
            std::queue<Site> todo;
            todo.push(start);
            seen.insert(start);
            while (!todo.empty()) {
                const Site s = todo.front();
                todo.pop();
                if (iota(s) != value) return false;
                if (s.x == lo.x - 1 || s.x == hi.x + 1 || s.y == lo.y - 1 || s.y == hi.y + 1) outer = true;
                for (Site t : {Site{s.x + 1, s.y}, Site{s.x - 1, s.y}, Site{s.x, s.y + 1}, Site{s.x, s.y - 1}}) {
                    if (t.x < lo.x - 1 || t.x > hi.x + 1 || t.y < lo.y - 1 || t.y > hi.y + 1) continue;
                    if (contains(iota.trace, t) || seen.count(t)) continue;
                    seen.insert(t);
                    todo.push(t);
                }
            }
            if (outer && value != 0.0) return false;
        }
    }
    return true;
}

std::vector<Site> CellClassification::bad_sites() const {
    std::vector<Site> out;
    for (std::size_t i = 0; i < box.size(); ++i)
        if (!good_site[i]) out.push_back(box.site(i));
    return out;
}

std::vector<Site> CellClassification::good_sites() const {
    std::vector<Site> out;
    for (std::size_t i = 0; i < box.size(); ++i)
        if (good_site[i]) out.push_back(box.site(i));
    return out;
}

CellClassification classify_cells(const std::vector<CoarseCylinder>& coarse, const Box& box, int L, int M,
                                  double h) {
    if (L < 1 || M < L || M % L) throw InputError("cell size M must be a positive multiple of L");
    if (box.width % M || box.height % M) throw InputError("box sides must be multiples of M");
    const Site off{box.origin.x - 1, box.origin.y - 1};
    if (off.x % L || off.y % L) throw InputError("box origin is not aligned with the block grid");
    CellClassification cc;
    cc.L = L;
    cc.M = M;
    cc.box = box;
    const int r = M / L;
    const Site block_off{off.x / L, off.y / L};
    std::set<Site> bad_cells;
    for (const auto& c : coarse) {
        cc.trace_mass += c.trace().size();
        for (Site z : c.trace())
            bad_cells.insert({floor_div(z.x - block_off.x, r), floor_div(z.y - block_off.y, r)});
    }
    cc.good_site.assign(box.size(), 0);
    const int cw = box.width / M, ch = box.height / M;
    for (int yy = 0; yy < ch; ++yy) {
        for (int yx = 0; yx < cw; ++yx) {
            if (bad_cells.count({yx, yy})) continue;
            cc.good_cells.push_back({yx, yy});
            for (int dy = 2 * L + 1; dy <= M - 2 * L; ++dy)
                for (int dx = 2 * L + 1; dx <= M - 2 * L; ++dx) {
                    const Site s{off.x + yx * M + dx, off.y + yy * M + dy};
                    if (box.contains(s)) cc.good_site[box.index(s)] = 1;
                }
        }
    }
    std::sort(cc.good_cells.begin(), cc.good_cells.end());
    for (char g : cc.good_site) cc.bad_count += !g;
    cc.low_density = static_cast<double>(cc.trace_mass) <= std::sqrt(std::max(h, 0.0)) * static_cast<double>(box.size());
    return cc;
}

std::int64_t large_contour_mass(const CylinderCollection& collection, int length_threshold) {
    std::int64_t m = 0;
    for (const auto& c : collection) {
        const auto l = static_cast<std::int64_t>(c.contour.geometry.length());
        if (l >= length_threshold) m += l;
    }
    return m;
}

std::int64_t large_contour_mass(const std::vector<SignedContour>& contours, int length_threshold) {
    std::int64_t m = 0;
    for (const auto& c : contours) {
        const auto l = static_cast<std::int64_t>(c.geometry.length());
        if (l >= length_threshold) m += l;
    }
    return m;
}

int bulk_height(Site site, const std::vector<CoarseCylinder>& coarse, const CellClassification& cells) {
    if (!cells.is_good(site)) throw InputError("site is not in a good cell");
    const Site z = block_of(site, cells.L);
    int n = 0;
    for (const auto& c : coarse)
        if (c.iota(z) == 1.0) n += c.q;
    return n;
}

}  // namespace sos
