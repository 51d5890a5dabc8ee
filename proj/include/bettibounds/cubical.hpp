#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "bettibounds/formula.hpp"
#include "bettibounds/nat.hpp"

namespace bettibounds {

/// Coefficient field for the homology oracle.
struct CoefficientField {
    std::uint32_t p;

    static CoefficientField gf2() { return {2}; }
    static CoefficientField gfp(std::uint32_t p);
};

struct BettiVector {
    std::vector<Nat> ranks;  // b_0 .. b_n

    Nat sum() const;
    bool operator==(const BettiVector& other) const { return ranks == other.ranks; }
    std::string str() const;
};

/// Rasterized set on a grid over [-R, R]^n, n <= 3.  Occupancy is over
/// top-dimensional cells, row-major with the x axis fastest.
class CubicalSet {
public:
    CubicalSet(std::size_t dim, Rat radius, std::vector<std::size_t> resolution);

    std::size_t dim() const { return dim_; }
    const Rat& radius() const { return radius_; }
    const std::vector<std::size_t>& resolution() const { return resolution_; }

    std::size_t cell_count() const { return occupancy_.size(); }
    std::size_t occupied_count() const;

    std::size_t index(const std::vector<std::size_t>& coords) const;
    bool occupied(std::size_t idx) const { return occupancy_[idx]; }
    void set(std::size_t idx, bool value) { occupancy_[idx] = value; }

    /// Centre of the cell with the given per-axis indices.
    std::vector<Rat> cell_center(const std::vector<std::size_t>& coords) const;

    bool operator==(const CubicalSet& other) const;

    /// Versioned binary format: "CBS1", dim, box radius as a rational,
    /// per-axis resolutions, then the occupancy bitset.
    void serialize(std::ostream& out) const;
    static CubicalSet deserialize(std::istream& in);

private:
    std::size_t dim_;
    Rat radius_;
    std::vector<std::size_t> resolution_;
    std::vector<bool> occupancy_;
};

/// Cell occupied iff its centre satisfies the formula under exact rational
/// evaluation.  Every descriptor must be concrete; n is the formula's
/// variable count (1..3).  Honors BETTI_BOUNDS_THREADS.
CubicalSet rasterize(const Formula& f, const Rat& radius, std::size_t resolution);

/// Betti numbers of the cubical complex spanned by the occupied top cells and
/// all their faces, over the given field; unreduced, so b_0 counts connected
/// components.
BettiVector betti(const CubicalSet& cs, const CoefficientField& field);

/// Cellwise subset test at matched geometry.
bool cubical_subset(const CubicalSet& inner, const CubicalSet& outer);

}  // namespace bettibounds
