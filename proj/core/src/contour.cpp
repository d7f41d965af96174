#include "sos/contour.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <string>
#include <unordered_map>

#include "sos/error.hpp"

namespace sos {

namespace {

std::uint64_t pack(Site s) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(s.x + (1 << 30)) & 0x7fffffffu) << 32) |
           (static_cast<std::uint64_t>(static_cast<std::uint32_t>(s.y + (1 << 30)) & 0x7fffffffu) << 1);
}

std::uint64_t key(const DualEdge& e) { return pack(e.lower) | static_cast<std::uint64_t>(e.axis); }

int arm_at(const DualEdge& e, Site v) {
    const auto [a, b] = e.endpoints();
    if (e.axis == Axis::y) return v == a ? arm_e : arm_w;
    return v == a ? arm_n : arm_s;
}

int partner(std::uint8_t mask, int arm) {
    if (std::popcount(mask) == 2) return std::countr_zero(static_cast<unsigned>(mask & ~(1u << arm)));
    switch (arm) {
        case arm_e: return arm_s;
        case arm_s: return arm_e;
        case arm_n: return arm_w;
        default: return arm_n;
    }
}

bool intersects(const std::vector<Site>& a, const std::vector<Site>& b) {
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j)
            ++i;
        else if (*j < *i)
            ++j;
        else
            return true;
    }
    return false;
}

bool includes(const std::vector<Site>& outer, const std::vector<Site>& inner) {
    return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

struct ContourInfo {
    const SignedContour* contour;
    Neighborhoods nb;
};

bool far_apart(const GeometricContour& a, const GeometricContour& b) {
    const auto [alo, ahi] = a.bounds();
    const auto [blo, bhi] = b.bounds();
    return alo.x - 1 > bhi.x || blo.x - 1 > ahi.x || alo.y - 1 > bhi.y || blo.y - 1 > ahi.y;
}

bool compatible(const ContourInfo& a, const ContourInfo& b) {
    const GeometricContour& ga = a.contour->geometry;
    const GeometricContour& gb = b.contour->geometry;
    if (ga == gb) return false;
    if (far_apart(ga, gb)) return true;
    const bool same_sign = a.contour->sign == b.contour->sign;
    const auto& ia = ga.interior();
    const auto& ib = gb.interior();
    if (!intersects(ia, ib)) {
        if (!same_sign) return true;
        return !intersects(ib, a.nb.external) && !intersects(ia, b.nb.external);
    }
    const ContourInfo* outer;
    const ContourInfo* inner;
    if (includes(ia, ib)) {
        outer = &a;
        inner = &b;
    } else if (includes(ib, ia)) {
        outer = &b;
        inner = &a;
    } else {
        return false;
    }
    if (same_sign) return true;
    return !intersects(inner->contour->geometry.interior(), outer->nb.internal);
}

std::vector<ContourInfo> infos(const std::vector<Cylinder>& cs) {
    std::vector<ContourInfo> out;
    out.reserve(cs.size());
    for (const auto& c : cs) out.push_back({&c.contour, neighborhoods(c.contour)});
    return out;
}

std::vector<Site> corner_sites(Site v) {
    return {{v.x - 1, v.y - 1}, {v.x, v.y - 1}, {v.x - 1, v.y}, {v.x, v.y}};
}

std::string describe(const GeometricContour& c) {
    const auto [lo, hi] = c.bounds();
    return "contour of length " + std::to_string(c.length()) + " in [" + std::to_string(lo.x) + "," +
           std::to_string(hi.x) + "]x[" + std::to_string(lo.y) + "," + std::to_string(hi.y) + "]";
}

}  // namespace

std::pair<Site, Site> DualEdge::endpoints() const {
    if (axis == Axis::y) return {{lower.x, lower.y + 1}, {lower.x + 1, lower.y + 1}};
    return {{lower.x + 1, lower.y}, {lower.x + 1, lower.y + 1}};
}

DualEdge arm_edge(Site v, int arm) {
    switch (arm) {
        case arm_e: return {{v.x, v.y - 1}, Axis::y};
        case arm_w: return {{v.x - 1, v.y - 1}, Axis::y};
        case arm_n: return {{v.x - 1, v.y}, Axis::x};
        default: return {{v.x - 1, v.y - 1}, Axis::x};
    }
}

std::vector<std::vector<DualEdge>> trace_loops(const std::vector<DualEdge>& edges) {
    std::unordered_map<std::uint64_t, std::uint8_t> arms;
    std::unordered_map<std::uint64_t, std::size_t> index;
    arms.reserve(edges.size() * 2);
    index.reserve(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (!index.emplace(key(edges[i]), i).second) throw ValidationError("repeated dual edge");
        const auto [a, b] = edges[i].endpoints();
        arms[pack(a)] |= static_cast<std::uint8_t>(1u << arm_at(edges[i], a));
        arms[pack(b)] |= static_cast<std::uint8_t>(1u << arm_at(edges[i], b));
    }
    for (const auto& [v, m] : arms)
        if (std::popcount(m) % 2) throw ValidationError("dual vertex of odd degree");

    std::vector<char> seen(edges.size(), 0);
    std::vector<std::vector<DualEdge>> loops;
    for (std::size_t start = 0; start < edges.size(); ++start) {
        if (seen[start]) continue;
        std::vector<DualEdge> loop;
        std::size_t cur = start;
        Site at = edges[start].endpoints().second;
        while (true) {
            seen[cur] = 1;
            loop.push_back(edges[cur]);
            const int out = partner(arms[pack(at)], arm_at(edges[cur], at));
            const DualEdge next = arm_edge(at, out);
            const std::size_t ni = index.at(key(next));
            if (ni == start) break;
            const auto [a, b] = next.endpoints();
            at = (a == at) ? b : a;
            cur = ni;
        }
        loops.push_back(std::move(loop));
    }
    return loops;
}

GeometricContour GeometricContour::from_loop(std::vector<DualEdge> edges) {
    std::sort(edges.begin(), edges.end());
    GeometricContour c;
    c.edges_ = std::move(edges);
    std::map<int, std::vector<int>> rows;
    for (const auto& e : c.edges_)
        if (e.axis == Axis::x) rows[e.lower.y].push_back(e.lower.x);
    c.lo_ = {1 << 30, 1 << 30};
    c.hi_ = {-(1 << 30), -(1 << 30)};
    for (auto& [y, xs] : rows) {
        std::sort(xs.begin(), xs.end());
        for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
            for (int x = xs[k] + 1; x <= xs[k + 1]; ++x) c.interior_.push_back({x, y});
            c.lo_ = {std::min(c.lo_.x, xs[k] + 1), std::min(c.lo_.y, y)};
            c.hi_ = {std::max(c.hi_.x, xs[k + 1]), std::max(c.hi_.y, y)};
        }
    }
    return c;
}

GeometricContour GeometricContour::from_edges(std::vector<DualEdge> edges) {
    if (edges.size() < 4) throw ValidationError("a contour has at least four edges");
    const auto loops = trace_loops(edges);
    if (loops.size() != 1) throw ValidationError("edges form " + std::to_string(loops.size()) + " loops");
    return from_loop(std::move(edges));
}

GeometricContour GeometricContour::from_interior(std::vector<Site> interior) {
    std::sort(interior.begin(), interior.end());
    interior.erase(std::unique(interior.begin(), interior.end()), interior.end());
    if (interior.empty()) throw ValidationError("empty interior");
    auto in = [&](Site s) { return std::binary_search(interior.begin(), interior.end(), s); };
    std::vector<DualEdge> edges;
    for (Site s : interior) {
        if (!in({s.x + 1, s.y})) edges.push_back({s, Axis::x});
        if (!in({s.x - 1, s.y})) edges.push_back({{s.x - 1, s.y}, Axis::x});
        if (!in({s.x, s.y + 1})) edges.push_back({s, Axis::y});
        if (!in({s.x, s.y - 1})) edges.push_back({{s.x, s.y - 1}, Axis::y});
    }
    return from_edges(std::move(edges));
}

bool GeometricContour::encloses(Site s) const {
    return std::binary_search(interior_.begin(), interior_.end(), s);
}

CylinderCollection::CylinderCollection(std::vector<Cylinder> cylinders) : cylinders_(std::move(cylinders)) {
    std::sort(cylinders_.begin(), cylinders_.end(),
              [](const Cylinder& a, const Cylinder& b) { return a.contour < b.contour; });
    for (std::size_t i = 0; i < cylinders_.size(); ++i) {
        if (cylinders_[i].intensity < 1) throw ValidationError("cylinder intensity must be positive");
        if (cylinders_[i].contour.sign != 1 && cylinders_[i].contour.sign != -1)
            throw ValidationError("contour sign must be +1 or -1");
        if (i > 0 && cylinders_[i - 1].contour == cylinders_[i].contour)
            throw ValidationError("repeated signed contour in collection");
    }
}

void CylinderCollection::validate() const {
    const auto info = infos(cylinders_);
    for (std::size_t i = 0; i < info.size(); ++i)
        for (std::size_t j = i + 1; j < info.size(); ++j)
            if (!compatible(info[i], info[j]))
                throw ValidationError("incompatible cylinders: " + describe(info[i].contour->geometry) +
                                      " and " + describe(info[j].contour->geometry));
}

CylinderCollection extract_cylinders(const HeightField& field) {
    const Box& b = field.box();
    const int n = field.bc();
    int lo = n, hi = n;
    for (int v : field.heights()) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    std::map<SignedContour, int> count;
    std::vector<DualEdge> edges;
    for (int level = lo + 1; level <= hi; ++level) {
        edges.clear();
        auto consider = [&](Site p, Axis axis) {
            const DualEdge e{p, axis};
            if ((field.at(p) >= level) != (field.at(e.upper()) >= level)) edges.push_back(e);
        };
        for (int y = b.origin.y; y < b.origin.y + b.height; ++y) {
            for (int x = b.origin.x; x < b.origin.x + b.width; ++x) {
                consider({x, y}, Axis::x);
                consider({x, y}, Axis::y);
                if (x == b.origin.x) consider({x - 1, y}, Axis::x);
                if (y == b.origin.y) consider({x, y - 1}, Axis::y);
            }
        }
        if (edges.empty()) continue;
        for (auto& loop : trace_loops(edges)) {
            const DualEdge first = loop.front();
            GeometricContour g = GeometricContour::from_loop(std::move(loop));
            const Site inside = g.encloses(first.lower) ? first.lower : first.upper();
            const int sign = field.at(inside) >= level ? 1 : -1;
            ++count[SignedContour{std::move(g), sign}];
        }
    }
    std::vector<Cylinder> out;
    out.reserve(count.size());
    for (auto& [c, k] : count) out.push_back({c, k});
    return CylinderCollection(std::move(out));
}

HeightField reconstruct_field(const CylinderCollection& collection, const Box& box, int bc) {
    HeightField f(box, bc);
    for (const auto& c : collection) {
        for (Site s : c.contour.geometry.interior())
            if (!box.contains(s)) throw ValidationError("contour interior leaves the box");
    }
    collection.validate();
    for (const auto& c : collection)
        for (Site s : c.contour.geometry.interior()) f[s] += c.contour.sign * c.intensity;
    return f;
}

std::int64_t contour_energy(const CylinderCollection& collection) {
    std::int64_t e = 0;
    for (const auto& c : collection) e += static_cast<std::int64_t>(c.intensity) * c.contour.geometry.length();
    return e;
}

Neighborhoods neighborhoods(const GeometricContour& c) {
    std::vector<Site> delta;
    std::unordered_map<std::uint64_t, std::pair<Site, std::uint8_t>> arms;
    for (const auto& e : c.edges()) {
        delta.push_back(e.lower);
        delta.push_back(e.upper());
        const auto [a, b] = e.endpoints();
        auto& ra = arms[pack(a)];
        ra.first = a;
        ra.second |= static_cast<std::uint8_t>(1u << arm_at(e, a));
        auto& rb = arms[pack(b)];
        rb.first = b;
        rb.second |= static_cast<std::uint8_t>(1u << arm_at(e, b));
    }
    for (const auto& [k, vm] : arms) {
        const auto [v, m] = vm;
        if (std::popcount(m) != 2) continue;
        const int a = std::countr_zero(static_cast<unsigned>(m));
        const int b = 31 - std::countl_zero(static_cast<unsigned>(m));
        if (linked(a, b)) continue;
        for (Site s : corner_sites(v)) delta.push_back(s);
    }
    std::sort(delta.begin(), delta.end());
    delta.erase(std::unique(delta.begin(), delta.end()), delta.end());
    Neighborhoods nb;
    for (Site s : delta) (c.encloses(s) ? nb.internal : nb.external).push_back(s);
    return nb;
}

bool are_compatible(const SignedContour& a, const SignedContour& b) {
    return compatible({&a, neighborhoods(a)}, {&b, neighborhoods(b)});
}

std::vector<std::vector<std::size_t>> incompatibility_graph(const std::vector<SignedContour>& contours) {
    std::vector<ContourInfo> info;
    info.reserve(contours.size());
    for (const auto& c : contours) info.push_back({&c, neighborhoods(c)});
    std::vector<std::vector<std::size_t>> adj(contours.size());
    for (std::size_t i = 0; i < info.size(); ++i)
        for (std::size_t j = i + 1; j < info.size(); ++j)
            if (!compatible(info[i], info[j])) {
                adj[i].push_back(j);
                adj[j].push_back(i);
            }
    return adj;
}

std::vector<SignedContour> external_contours(const CylinderCollection& collection) {
    std::vector<SignedContour> out;
    const auto& cs = collection.cylinders();
    for (std::size_t i = 0; i < cs.size(); ++i) {
        const auto& gi = cs[i].contour.geometry;
        bool maximal = true;
        for (std::size_t j = 0; j < cs.size() && maximal; ++j) {
            if (i == j) continue;
            const auto& gj = cs[j].contour.geometry;
            if (gj.interior().size() > gi.interior().size() && includes(gj.interior(), gi.interior()))
                maximal = false;
        }
        if (maximal) out.push_back(cs[i].contour);
    }
    return out;
}

int max_contour_length(const Box& box) {
    return box.width * (box.height + 1) + (box.width + 1) * box.height;
}

double estimated_contour_count(const Box& box, int max_length) {
    // Self-avoiding polygons per translation class, lengths 4, 6, ..., 24.
    static const double polygons[] = {1, 2, 7, 28, 124, 588, 2938, 15268, 81826, 449572, 2521270};
    double per_site = 0;
    double last = 0;
    for (int m = 4; m <= max_length; m += 2) {
        const int k = (m - 4) / 2;
        last = k < 11 ? polygons[k] : last * 2.638 * 2.638;
        per_site += last;
    }
    const double area = static_cast<double>(box.size());
    const double subsets = area < 60 ? std::ldexp(1.0, static_cast<int>(area)) : 1e300;
    return std::min(area * per_site, subsets);
}

namespace {

class ContourWalker {
public:
    ContourWalker(const Box& box, int max_length)
        : box_(box), max_length_(max_length), vw_(box.width + 1), vh_(box.height + 1),
          used_(2 * vw_ * vh_, 0), visits_(vw_ * vh_, 0), first_pair_(vw_ * vh_, 0) {}

    std::vector<GeometricContour> run() {
        for (int j = 0; j < vh_; ++j) {
            for (int i = 0; i + 1 < vw_; ++i) {
                start_ = {i, j};
                used_[edge_id({i, j}, arm_e)] = 1;
                path_.push_back(arm_edge(global({i, j}), arm_e));
                visits_[vid({i, j})] = 1;
                walk({i + 1, j}, arm_w, 1);
                visits_[vid({i, j})] = 0;
                path_.pop_back();
                used_[edge_id({i, j}, arm_e)] = 0;
            }
        }
        std::sort(out_.begin(), out_.end(), [](const GeometricContour& a, const GeometricContour& b) {
            if (a.length() != b.length()) return a.length() < b.length();
            return a < b;
        });
        return std::move(out_);
    }

private:
    // Local vertex coordinates: (0, 0) is the dual vertex at the box's lower-left corner.
    Site global(Site v) const { return {v.x + box_.origin.x, v.y + box_.origin.y}; }
    int vid(Site v) const { return v.y * vw_ + v.x; }
    bool in_range(Site v) const { return v.x >= 0 && v.x < vw_ && v.y >= 0 && v.y < vh_; }

    static Site step(Site v, int arm) {
        switch (arm) {
            case arm_e: return {v.x + 1, v.y};
            case arm_w: return {v.x - 1, v.y};
            case arm_n: return {v.x, v.y + 1};
            default: return {v.x, v.y - 1};
        }
    }

    // Horizontal edges keyed by their west vertex, vertical ones by their south vertex.
    int edge_id(Site v, int arm) const {
        switch (arm) {
            case arm_e: return 2 * vid(v);
            case arm_w: return 2 * vid({v.x - 1, v.y});
            case arm_n: return 2 * vid(v) + 1;
            default: return 2 * vid({v.x, v.y - 1}) + 1;
        }
    }

    bool allowed(Site v, int arm) const {
        const Site u = step(v, arm);
        if (!in_range(u)) return false;
        if (arm == arm_e || arm == arm_w) {
            const Site west = arm == arm_e ? v : u;
            return west.y > start_.y || (west.y == start_.y && west.x > start_.x);
        }
        return std::min(v.y, u.y) >= start_.y;
    }

    void walk(Site v, int in_arm, int len) {
        const int id = vid(v);
        int choices[3];
        int nc = 0;
        if (visits_[id] == 0) {
            for (int b = 0; b < 4; ++b)
                if (b != in_arm) choices[nc++] = b;
        } else {
            const int a0 = first_pair_[id] & 3, b0 = first_pair_[id] >> 2;
            if (!linked(a0, b0)) return;
            const int rest = 0xf & ~((1 << a0) | (1 << b0));
            if (!(rest & (1 << in_arm))) return;
            choices[nc++] = std::countr_zero(static_cast<unsigned>(rest & ~(1 << in_arm)));
        }
        const Site close_at{start_.x, start_.y + 1};
        for (int k = 0; k < nc; ++k) {
            const int b = choices[k];
            if (v == close_at && b == arm_s) {
                if (len + 1 > max_length_) continue;
                path_.push_back(arm_edge(global(v), arm_s));
                out_.push_back(GeometricContour::from_loop(path_));
                path_.pop_back();
                continue;
            }
            if (!allowed(v, b)) continue;
            const int e = edge_id(v, b);
            if (used_[e]) continue;
            const Site u = step(v, b);
            if (u == start_) continue;
            const int d = std::abs(u.x - close_at.x) + std::abs(u.y - close_at.y);
            if (len + 1 + d + 1 > max_length_) continue;
            const std::uint8_t saved = first_pair_[id];
            if (visits_[id] == 0) first_pair_[id] = static_cast<std::uint8_t>(in_arm | (b << 2));
            ++visits_[id];
            used_[e] = 1;
            path_.push_back(arm_edge(global(v), b));
            walk(u, (b + 2) % 4, len + 1);
            path_.pop_back();
            used_[e] = 0;
            --visits_[id];
            first_pair_[id] = saved;
        }
    }

    Box box_;
    int max_length_;
    int vw_, vh_;
    Site start_;
    std::vector<char> used_;
    std::vector<int> visits_;
    std::vector<std::uint8_t> first_pair_;
    std::vector<DualEdge> path_;
    std::vector<GeometricContour> out_;
};

}  // namespace

std::vector<GeometricContour> enumerate_contours(const Box& box, int max_length) {
    const double est = estimated_contour_count(box, max_length);
    if (est > kContourEnumerationLimit)
        throw CapacityError("contour enumeration guard: about " + std::to_string(static_cast<long long>(est)) +
                            " contours for a " + std::to_string(box.width) + "x" +
                            std::to_string(box.height) + " box at length " + std::to_string(max_length));
    if (max_length < 4) return {};
    return ContourWalker(box, max_length).run();
}

}  // namespace sos
