#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace sos {

struct Site {
    int x = 0;
    int y = 0;

    friend bool operator==(const Site&, const Site&) = default;
    // Row-major: y first, then x.
    friend auto operator<=>(const Site& a, const Site& b) {
        if (auto c = a.y <=> b.y; c != 0) return c;
        return a.x <=> b.x;
    }
};

struct Box {
    int width = 1;
    int height = 1;
    Site origin{1, 1};

    Box() = default;
    Box(int w, int h, Site o = {1, 1});

    std::size_t size() const { return static_cast<std::size_t>(width) * height; }
    bool contains(Site s) const {
        return s.x >= origin.x && s.x < origin.x + width && s.y >= origin.y &&
               s.y < origin.y + height;
    }
    // Row-major index of a site inside the box.
    std::size_t index(Site s) const {
        return static_cast<std::size_t>(s.y - origin.y) * width + (s.x - origin.x);
    }
    Site site(std::size_t i) const {
        return {origin.x + static_cast<int>(i % width), origin.y + static_cast<int>(i / width)};
    }
    Site center() const { return {origin.x + (width - 1) / 2, origin.y + (height - 1) / 2}; }
    // Sites outside the box adjacent to it, in row-major order.
    std::vector<Site> external_boundary() const;

    friend bool operator==(const Box&, const Box&) = default;
};

class HeightField {
public:
    HeightField() = default;
    HeightField(Box box, int bc);
    HeightField(Box box, int bc, std::vector<int> heights);

    const Box& box() const { return box_; }
    int bc() const { return bc_; }
    const std::vector<int>& heights() const { return heights_; }
    std::vector<int>& heights() { return heights_; }

    int operator[](Site s) const { return heights_[box_.index(s)]; }
    int& operator[](Site s) { return heights_[box_.index(s)]; }
    // Height at any site of Z^2, with the boundary condition outside the box.
    int at(Site s) const { return box_.contains(s) ? (*this)[s] : bc_; }
    bool contact(Site s) const { return (*this)[s] == 0; }
    int contact_count() const;

    friend bool operator==(const HeightField&, const HeightField&) = default;

private:
    Box box_;
    int bc_ = 0;
    std::vector<int> heights_;
};

struct HeightWindow {
    int lo = -6;
    int hi = 6;

    int size() const { return hi - lo + 1; }
    bool contains(int k) const { return k >= lo && k <= hi; }
    friend bool operator==(const HeightWindow&, const HeightWindow&) = default;
};

struct ModelParams {
    double beta = 1.0;
    double alpha = 0.0;
    double h = 0.0;
    int bc = 0;
    HeightWindow height_window{-6, 6};
    std::optional<int> contour_length_cap;

    // Throws InputError when an invariant is violated.
    void validate() const;
};

// Smallest window [bc - w, bc + w] joined with [-2, 2].
HeightWindow default_window(int bc, int w = 6);

class DisorderField;

// Integer energy; the weight is -beta times this.
std::int64_t hamiltonian(const HeightField& field);

double boltzmann_log_weight(const HeightField& field, const ModelParams& params);

double pinning_log_weight(const HeightField& field, const ModelParams& params,
                          const DisorderField& disorder);

}  // namespace sos
