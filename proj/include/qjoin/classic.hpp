#pragma once

#include "qjoin/group.hpp"
#include "qjoin/rational.hpp"

namespace qjoin {

/// Finite right G-space: points 0..size-1 acted on by a finite group table.
struct FiniteGSpace {
    GroupTable group;
    std::vector<std::vector<int>> action;  // action[p][g]

    int size() const { return static_cast<int>(action.size()); }
    int act(int p, int g) const { return action.at(p).at(g); }
    /// Identity and compatibility axioms, exhaustively; throws on defect.
    void validate() const;
    /// True when no element other than the identity fixes a point.
    bool is_free() const;

    static FiniteGSpace regular(const GroupTable& g);
    static FiniteGSpace trivial(const GroupTable& g, int npoints);
};

/// Quotient of grid x X x Y under a join relation, with the induced group
/// action on the classes. Relations never cross grid layers, so every class
/// keeps a layer index.
struct JoinModel {
    std::vector<BigRational> grid;  // strictly increasing, 0 first, 1 last
    GroupTable group;
    int x_size = 0, y_size = 0;
    std::vector<int> class_of;  // raw (layer, x, y) index -> class id
    int classes = 0;
    std::vector<std::vector<int>> action;  // action[class][g]
    std::vector<int> layer_of;             // class -> layer index

    int layers() const { return static_cast<int>(grid.size()); }
    size_t raw(int layer, int x, int y) const {
        return (static_cast<size_t>(layer) * x_size + x) * y_size + y;
    }
    std::vector<int> layer_counts() const;
    /// The classes as a G-space of their own (for iterating joins).
    FiniteGSpace as_gspace() const;
};

/// Comma-separated nonnegative decimals or fractions to exact rationals
/// ("0,0.5,1" or "0,1/3,1").
std::vector<BigRational> parse_grid(const std::string& csv);

/// The join X * Y over the grid: at t = 0 the first coordinate is forgotten,
/// at t = 1 the second, interior layers stay products. Classes carry the
/// diagonal action; its well-definedness on classes is verified exhaustively.
JoinModel build_join(const FiniteGSpace& x, const FiniteGSpace& y,
                     const std::vector<BigRational>& grid);

/// The primed quotient on X x G: t = 0 forgets x at fixed h, while t = 1
/// identifies (1,x,h) with (1,x',h') exactly when xh = x'h'. Classes carry
/// the action on the last factor only.
JoinModel build_join_prime(const FiniteGSpace& x, const std::vector<BigRational>& grid);

/// True when no class is fixed by a nontrivial group element.
bool check_free(const JoinModel& j);

struct Eq6Report {
    bool well_defined = false;
    bool bijective = false;
    bool equivariant = false;
    bool layers_match = false;
    int classes_join = 0;
    int classes_prime = 0;
    bool ok() const { return well_defined && bijective && equivariant && layers_match; }
};

/// The layerwise comparison map [(t,x,h)] -> [(t, x h^{-1}, h)] from the
/// diagonal-action join X * G to the primed model with its last-factor
/// action. Requires a free X; checked on every grid layer.
Eq6Report check_map_eq6(const FiniteGSpace& x, const std::vector<BigRational>& grid);

struct CensusStage {
    int stage = 0;                  // number of join operations applied
    std::vector<int> layer_counts;  // empty at stage 0 (no grid direction yet)
    int total = 0;
    bool free = false;
};
struct CensusReport {
    std::vector<CensusStage> stages;
    bool all_free = false;
};

/// Iterated self-join of the free two-point space: stage k holds the
/// (k+1)-fold join, its class count per layer, and the freeness of the
/// diagonal action. n is capped at 4 (desk scale).
CensusReport iterated_join_sphere_census(int n, const std::vector<BigRational>& grid);

}  // namespace qjoin
