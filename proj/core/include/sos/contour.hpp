#pragma once

#include <compare>
#include <cstdint>
#include <utility>
#include <vector>

#include "sos/lattice.hpp"

namespace sos {

enum class Axis : std::uint8_t { x = 0, y = 1 };

// A dual edge, named by the primal edge {lower, lower + e_axis} it crosses.
struct DualEdge {
    Site lower;
    Axis axis = Axis::x;

    Site upper() const { return axis == Axis::x ? Site{lower.x + 1, lower.y} : Site{lower.x, lower.y + 1}; }

    // Endpoints as dual vertex labels: label (i, j) is the point (i - 1/2, j - 1/2).
    std::pair<Site, Site> endpoints() const;

    friend bool operator==(const DualEdge&, const DualEdge&) = default;
    friend auto operator<=>(const DualEdge& a, const DualEdge& b) {
        if (auto c = a.lower <=> b.lower; c != 0) return c;
        return a.axis <=> b.axis;
    }
};

// Arms of a dual vertex, counter-clockwise from east.
enum Arm : int { arm_e = 0, arm_n = 1, arm_w = 2, arm_s = 3 };

DualEdge arm_edge(Site vertex, int arm);
// Arms {e, s} and {n, w} lie on the same side of the diagonal through the vertex.
inline bool linked(int a, int b) {
    const int m = (1 << a) | (1 << b);
    return m == ((1 << arm_e) | (1 << arm_s)) || m == ((1 << arm_n) | (1 << arm_w));
}

// Splits an edge set with even degree at every vertex into closed loops, pairing arms
// at four-valent vertices by the linked rule. Throws ValidationError on odd degree.
std::vector<std::vector<DualEdge>> trace_loops(const std::vector<DualEdge>& edges);

class GeometricContour {
public:
    GeometricContour() = default;

    // Throws ValidationError unless the edges form exactly one contour.
    static GeometricContour from_edges(std::vector<DualEdge> edges);
    // The contour whose interior is the given site set, if its boundary is one loop.
    static GeometricContour from_interior(std::vector<Site> interior);
    // Skips the single-loop check; edges must already be one traced loop.
    static GeometricContour from_loop(std::vector<DualEdge> edges);

    const std::vector<DualEdge>& edges() const { return edges_; }
    std::size_t length() const { return edges_.size(); }
    // Sorted row-major.
    const std::vector<Site>& interior() const { return interior_; }
    bool encloses(Site s) const;
    // Bounding rectangle of the interior: {min corner, max corner}.
    std::pair<Site, Site> bounds() const { return {lo_, hi_}; }

    friend bool operator==(const GeometricContour& a, const GeometricContour& b) { return a.edges_ == b.edges_; }
    friend auto operator<=>(const GeometricContour& a, const GeometricContour& b) { return a.edges_ <=> b.edges_; }

private:
    std::vector<DualEdge> edges_;
    std::vector<Site> interior_;
    Site lo_, hi_;
};

struct SignedContour {
    GeometricContour geometry;
    int sign = 1;

    friend bool operator==(const SignedContour&, const SignedContour&) = default;
    friend auto operator<=>(const SignedContour& a, const SignedContour& b) {
        if (auto c = a.geometry <=> b.geometry; c != 0) return c;
        return a.sign <=> b.sign;
    }
};

struct Cylinder {
    SignedContour contour;
    int intensity = 1;

    friend bool operator==(const Cylinder&, const Cylinder&) = default;
};

class CylinderCollection {
public:
    CylinderCollection() = default;
    // Sorts; throws ValidationError on duplicate signed geometries or intensity < 1.
    // Pairwise compatibility is checked by validate().
    explicit CylinderCollection(std::vector<Cylinder> cylinders);

    const std::vector<Cylinder>& cylinders() const { return cylinders_; }
    std::size_t size() const { return cylinders_.size(); }
    bool empty() const { return cylinders_.empty(); }
    auto begin() const { return cylinders_.begin(); }
    auto end() const { return cylinders_.end(); }

    // Throws ValidationError naming the first incompatible pair.
    void validate() const;

    friend bool operator==(const CylinderCollection&, const CylinderCollection&) = default;

private:
    std::vector<Cylinder> cylinders_;
};

struct Neighborhoods {
    std::vector<Site> internal;  // sorted
    std::vector<Site> external;  // sorted
};

CylinderCollection extract_cylinders(const HeightField& field);

// Throws ValidationError if an interior leaves the box or the collection is incompatible.
HeightField reconstruct_field(const CylinderCollection& collection, const Box& box, int bc);

std::int64_t contour_energy(const CylinderCollection& collection);

Neighborhoods neighborhoods(const GeometricContour& c);
inline Neighborhoods neighborhoods(const SignedContour& c) { return neighborhoods(c.geometry); }

bool are_compatible(const SignedContour& a, const SignedContour& b);

// Adjacency lists of the incompatibility graph (neighbourhoods computed once).
std::vector<std::vector<std::size_t>> incompatibility_graph(const std::vector<SignedContour>& contours);

std::vector<SignedContour> external_contours(const CylinderCollection& collection);

// Conservative count estimate used by the enumeration guard.
double estimated_contour_count(const Box& box, int max_length);
constexpr double kContourEnumerationLimit = 5e6;

// Every contour with interior inside the box and length <= max_length, each once,
// ordered by (length, edges). Throws CapacityError beyond the guard.
std::vector<GeometricContour> enumerate_contours(const Box& box, int max_length);

// Longest possible contour in the box (every dual edge used).
int max_contour_length(const Box& box);

}  // namespace sos
