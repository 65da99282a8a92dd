#pragma once

#include "qjoin/algebra.hpp"

namespace qjoin {

struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BoundaryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Interval a path lives on: [0,1/2], [1/2,1], or all of [0,1].
enum class Side { Left, Right, Full };

/// Endpoint membership a path has been validated against (advisory; the
/// make_* constructors in join.hpp do the actual checking).
enum class Boundary { None, Scalar, ScalarFirstLeg, CoactionImage };

struct BoundaryProfile {
    Boundary at0 = Boundary::None;
    Boundary at1 = Boundary::None;
    bool operator==(const BoundaryProfile&) const = default;
};

/// Monomial t^i c^j s^e in the interval coordinate t and the formal circle
/// pair (c, s) = (cos(pi t/2), sin(pi t/2)). Stored keys keep e <= 1 because
/// s^2 rewrites to 1 - c^2.
struct PathKey {
    int t_exp = 0;
    int c_exp = 0;
    int s_exp = 0;
    auto operator<=>(const PathKey&) const = default;
};

/// Polynomial path with tensor coefficients sharing one leg shape. Values at
/// rational times are exact; the trig pair evaluates only at the endpoints,
/// where (c, s) = (1, 0) resp. (0, 1).
class PathElement {
public:
    PathElement() = default;
    static PathElement zero(std::vector<AlgebraPtr> legs, Side side = Side::Full);
    static PathElement constant(Tensor value, Side side = Side::Full);
    static PathElement monomial(PathKey k, Tensor value, Side side = Side::Full);
    /// The scalar coordinate path t (times the unit tensor).
    static PathElement coordinate(std::vector<AlgebraPtr> legs, Side side = Side::Full);

    size_t arity() const { return legs_.size(); }
    const std::vector<AlgebraPtr>& leg_algebras() const { return legs_; }
    const std::map<PathKey, Tensor>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool uses_trig() const;

    Side side() const { return side_; }
    const BoundaryProfile& boundary() const { return boundary_; }
    PathElement with_boundary(BoundaryProfile b) const;
    PathElement with_side(Side s) const;

    PathElement operator+(const PathElement& o) const;
    PathElement operator-(const PathElement& o) const;
    PathElement operator-() const;
    PathElement operator*(const PathElement& o) const;
    PathElement scaled(const ScalarQ& c) const;
    PathElement pow(int n) const;
    PathElement star() const;

    Tensor eval(const BigRational& t) const;
    Tensor eval_half() const { return eval(BigRational(1, 2)); }
    Tensor eval0() const { return eval(BigRational(0)); }
    Tensor eval1() const { return eval(BigRational(1)); }

    PathElement apply_delta(size_t leg) const;
    PathElement apply_counit(size_t leg) const;
    PathElement apply_antipode(size_t leg) const;
    PathElement multiply_legs(size_t leg) const;
    PathElement insert_leg(size_t pos, const Element& e) const;

    /// Decompose over the normal-form words of the last leg: list of (word,
    /// cofactor path with that leg dropped).
    std::vector<std::pair<Word, PathElement>> expand_last_leg() const;

    bool operator==(const PathElement& o) const;
    std::string str() const;

private:
    std::vector<AlgebraPtr> legs_;
    std::map<PathKey, Tensor> terms_;
    Side side_ = Side::Full;
    BoundaryProfile boundary_;

    void add_term(const PathKey& k, const Tensor& t);
    /// Reduce s^e with e >= 2 via s^2 = 1 - c^2 into a list of (key, +-1).
    static void normalize_key(PathKey k, int sign, std::vector<std::pair<PathKey, int>>& out);
    static Side merge_sides(Side a, Side b);
    static BoundaryProfile merge_boundaries(const BoundaryProfile& a, const BoundaryProfile& b);
    template <typename F>
    PathElement mapped(F&& f) const;
    void require_same_legs(const PathElement& o) const;
};

inline PathElement operator*(const ScalarQ& c, const PathElement& p) { return p.scaled(c); }

}  // namespace qjoin
