#pragma once

#include <cstdint>
#include <vector>

#include "sos/contour.hpp"
#include "sos/lattice.hpp"

namespace sos {

// Block index of a site for blocks [0, L)^2 + L z.
Site block_of(Site s, int L);

// Blocks met by the contour's edge segments, sorted.
std::vector<Site> coarse_trace(const GeometricContour& c, int L);

// Interior function: 1/2 on the trace, 1 on `inside`, 0 elsewhere.
struct CoarseInterior {
    std::vector<Site> trace;   // sorted
    std::vector<Site> inside;  // sorted, disjoint from trace

    double operator()(Site cell) const;
    friend bool operator==(const CoarseInterior&, const CoarseInterior&) = default;
    friend auto operator<=>(const CoarseInterior& a, const CoarseInterior& b) {
        if (auto c = a.trace <=> b.trace; c != 0) return c;
        return a.inside <=> b.inside;
    }
};

CoarseInterior interior_function(const GeometricContour& c, int L);

struct CoarseCylinder {
    CoarseInterior iota;
    int q = 0;  // sum of sign * intensity over the grouped cylinders

    const std::vector<Site>& trace() const { return iota.trace; }
    friend bool operator==(const CoarseCylinder&, const CoarseCylinder&) = default;
};

// Groups cylinders of length >= length_threshold by interior function; groups with
// q = 0 are kept.
std::vector<CoarseCylinder> coarse_cylinders(const CylinderCollection& collection, int L, int length_threshold);

// Trace 4-connected and interior constant on every complement component.
bool is_connected(const std::vector<Site>& cells);
bool interior_is_consistent(const CoarseInterior& iota);

struct CellClassification {
    int L = 0;
    int M = 0;
    Box box;
    std::vector<Site> good_cells;  // cell indices y
    std::vector<char> good_site;   // row-major over the box
    std::size_t bad_count = 0;
    std::size_t trace_mass = 0;    // sum of |chi|
    bool low_density = false;

    std::vector<Site> bad_sites() const;
    std::vector<Site> good_sites() const;
    bool is_good(Site s) const { return box.contains(s) && good_site[box.index(s)]; }
};

// Cells y: inner square off + yM + [2L+1, M-2L]^2, enlarged cell off + yM + [0, M)^2,
// off = origin - (1, 1). A cell is good when no trace block lies in its enlarged cell.
CellClassification classify_cells(const std::vector<CoarseCylinder>& coarse, const Box& box, int L, int M,
                                  double h);

std::int64_t large_contour_mass(const CylinderCollection& collection, int length_threshold);
std::int64_t large_contour_mass(const std::vector<SignedContour>& contours, int length_threshold);

// Sum of q over coarse cylinders whose interior function is 1 on the site's block.
int bulk_height(Site site, const std::vector<CoarseCylinder>& coarse, const CellClassification& cells);

}  // namespace sos
