#include "qjoin/index.hpp"

#include "qjoin/suq2.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>

namespace qjoin {

namespace {

using Quad = boost::multiprecision::cpp_bin_float_quad;

constexpr uint8_t GEN_A = 0, GEN_AS = 1, GEN_B = 2, GEN_BS = 3;

template <typename Real>
constexpr const char* real_name();
template <>
constexpr const char* real_name<double>() { return "double"; }
template <>
constexpr const char* real_name<long double>() { return "longdouble"; }
template <>
constexpr const char* real_name<Quad>() { return "quad"; }

template <typename Real>
Real real_pow(const Real& base, int e) {
    Real acc(1);
    for (int i = 0; i < e; ++i) acc = acc * base;
    return acc;
}

// One generator applied to a lattice basis vector: the target point and the
// shift weight. Empty when the weight vanishes (lowering at n = 0).
template <typename Real>
std::optional<std::pair<LatticePoint, Real>> letter_step(uint8_t g, LatticePoint p, const Real& q) {
    using std::sqrt;
    switch (g) {
        case GEN_A: {
            if (p.n == 0) return std::nullopt;
            Real w = sqrt(Real(1) - real_pow(q, 2 * p.n));
            return std::pair{LatticePoint{p.n - 1, p.k, p.comp}, w};
        }
        case GEN_AS: {
            Real w = sqrt(Real(1) - real_pow(q, 2 * p.n + 2));
            return std::pair{LatticePoint{p.n + 1, p.k, p.comp}, w};
        }
        case GEN_B:
            return std::pair{LatticePoint{p.n, p.k + 1, p.comp}, real_pow(q, p.n)};
        case GEN_BS:
            return std::pair{LatticePoint{p.n, p.k - 1, p.comp}, real_pow(q, p.n)};
        default:
            throw std::logic_error("unknown generator letter");
    }
}

struct SquareWindow {
    int N = 0, K = 0;
    bool contains(const LatticePoint& p) const {
        return p.n >= 0 && p.n <= N && p.k >= -K && p.k <= K;
    }
};

// Word applied rightmost letter first. When `clip` is set the walk is cut the
// moment an intermediate point leaves the window (truncated operator
// composition); otherwise only lattice positivity constrains it.
template <typename Real>
std::optional<std::pair<LatticePoint, Real>> walk_word(const Word& w, LatticePoint p, const Real& q,
                                                       const SquareWindow* clip) {
    Real weight(1);
    for (size_t i = w.letters.size(); i-- > 0;) {
        auto step = letter_step(w.letters[i], p, q);
        if (!step) return std::nullopt;
        p = step->first;
        weight = weight * step->second;
        if (clip && !clip->contains(p)) return std::nullopt;
    }
    return std::pair{p, weight};
}

void check_lattice_args(const AlgebraPtr& alg, double q0, int N, int K) {
    if (alg != suq2_algebra())
        throw std::invalid_argument("the lattice representation is defined for the quantum SU(2) algebra");
    if (!(q0 > 0.0 && q0 < 1.0)) throw std::invalid_argument("q0 must lie strictly between 0 and 1");
    if (N < 1 || K < 1) throw std::invalid_argument("truncation bounds must be at least 1");
}

// Window enumerations. Column/row order is point-major, component-minor, with
// points ordered n ascending then k ascending, so every build is
// deterministic.
struct WindowIndex {
    int n_lo, n_hi, k_lo, k_hi;
    size_t comps;
    size_t points() const {
        return static_cast<size_t>(n_hi - n_lo + 1) * static_cast<size_t>(k_hi - k_lo + 1);
    }
    size_t size() const { return points() * comps; }
    bool contains(const LatticePoint& p) const {
        return p.n >= n_lo && p.n <= n_hi && p.k >= k_lo && p.k <= k_hi;
    }
    size_t at(const LatticePoint& p) const {
        size_t pt = static_cast<size_t>(p.n - n_lo) * static_cast<size_t>(k_hi - k_lo + 1) +
                    static_cast<size_t>(p.k - k_lo);
        return pt * comps + static_cast<size_t>(p.comp);
    }
    std::vector<LatticePoint> labels() const {
        std::vector<LatticePoint> out;
        out.reserve(size());
        for (int n = n_lo; n <= n_hi; ++n)
            for (int k = k_lo; k <= k_hi; ++k)
                for (size_t c = 0; c < comps; ++c) out.push_back({n, k, static_cast<int>(c)});
        return out;
    }
};

// Accumulates duplicate targets before emitting a column.
template <typename Real>
void emit_column(SparseRect<Real>& m, size_t c, const std::map<size_t, Real>& acc) {
    for (const auto& [r, v] : acc)
        if (v != Real(0)) m.add(r, c, v);
}

template <typename Real>
SparseRect<Real> window_matrix(const Element& x, const Real& q, const WindowIndex& dom,
                               const WindowIndex& cod, const SquareWindow* clip) {
    SparseRect<Real> m(cod.size(), dom.size());
    auto labels = dom.labels();
    for (size_t c = 0; c < labels.size(); ++c) {
        std::map<size_t, Real> acc;
        for (const auto& [w, coef] : x.terms()) {
            auto hit = walk_word(w, labels[c], q, clip);
            if (!hit || !cod.contains(hit->first)) continue;
            acc[cod.at(hit->first)] += coef.template eval_real<Real>(q) * hit->second;
        }
        emit_column(m, c, acc);
    }
    return m;
}

size_t max_word_horizon(const MatrixCorep& u) {
    size_t h = 0;
    for (size_t i = 0; i < u.dim(); ++i)
        for (size_t j = 0; j < u.dim(); ++j)
            for (const auto& [w, coef] : u.at(i, j).terms()) h = std::max(h, w.letters.size());
    return h;
}

// P pi(u) P with P the projection onto torus modes k <= -1: domain = the
// square window cut to the range of P, codomain padded by the word horizon so
// only P itself clips.
template <typename Real>
void compression_matrix(const MatrixCorep& u, const Real& q, const WindowIndex& dom,
                        const WindowIndex& cod, SparseRect<Real>& out) {
    out = SparseRect<Real>(cod.size(), dom.size());
    size_t m = u.dim();
    auto pts = dom.labels();
    for (size_t c = 0; c < pts.size(); ++c) {
        LatticePoint p = pts[c];
        size_t j = static_cast<size_t>(p.comp);
        std::map<size_t, Real> acc;
        for (size_t i = 0; i < m; ++i) {
            for (const auto& [w, coef] : u.at(i, j).terms()) {
                auto hit = walk_word(w, LatticePoint{p.n, p.k, static_cast<int>(i)}, q, nullptr);
                if (!hit || !cod.contains(hit->first)) continue;
                acc[cod.at(hit->first)] += coef.template eval_real<Real>(q) * hit->second;
            }
        }
        emit_column(out, c, acc);
    }
}

template <typename Real>
Real col_dot(const std::vector<Real>& a, const std::vector<Real>& b) {
    Real acc(0);
    for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

// One-sided Jacobi: rotate column pairs until mutually orthogonal; singular
// values are then the column norms. The blocks handed in are tiny chains, so
// a handful of sweeps suffices; the cap is only a safety net.
template <typename Real>
void jacobi_block(std::vector<std::vector<Real>>& cols, std::vector<Real>& out) {
    using std::abs;
    using std::sqrt;
    const Real tol = std::numeric_limits<Real>::epsilon() * Real(64);
    const size_t nc = cols.size();
    bool rotated = true;
    for (int sweep = 0; sweep < 60 && rotated; ++sweep) {
        rotated = false;
        for (size_t i = 0; i + 1 < nc; ++i) {
            for (size_t j = i + 1; j < nc; ++j) {
                Real aii = col_dot(cols[i], cols[i]);
                Real ajj = col_dot(cols[j], cols[j]);
                Real aij = col_dot(cols[i], cols[j]);
                if (aii == Real(0) || ajj == Real(0)) continue;
                if (abs(aij) <= tol * sqrt(aii) * sqrt(ajj)) continue;
                rotated = true;
                Real tau = (ajj - aii) / (Real(2) * aij);
                Real t = (tau >= Real(0) ? Real(1) : Real(-1)) / (abs(tau) + sqrt(Real(1) + tau * tau));
                Real cs = Real(1) / sqrt(Real(1) + t * t);
                Real sn = t * cs;
                for (size_t r = 0; r < cols[i].size(); ++r) {
                    Real x = cols[i][r], y = cols[j][r];
                    cols[i][r] = cs * x - sn * y;
                    cols[j][r] = sn * x + cs * y;
                }
            }
        }
    }
    for (size_t i = 0; i < nc; ++i) {
        Real s = col_dot(cols[i], cols[i]);
        out.push_back(sqrt(s));
    }
}

struct UnionFind {
    std::vector<size_t> parent;
    explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), size_t{0}); }
    size_t find(size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(size_t a, size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

template <typename Real>
SparseRect<Real> SparseRect<Real>::multiply(const SparseRect<Real>& o) const {
    if (cols != o.rows) throw std::invalid_argument("sparse shape mismatch");
    SparseRect<Real> out(rows, o.cols);
    for (size_t c = 0; c < o.cols; ++c) {
        std::map<size_t, Real> acc;
        for (const auto& [mid, v] : o.col[c])
            for (const auto& [r, w] : col[mid]) acc[r] += v * w;
        emit_column(out, c, acc);
    }
    return out;
}

template <typename Real>
std::vector<Real> singular_values(const SparseRect<Real>& m) {
    // connected components of the column graph (columns sharing a row)
    UnionFind uf(m.cols);
    {
        std::vector<size_t> first_col(m.rows, SIZE_MAX);
        for (size_t c = 0; c < m.cols; ++c)
            for (const auto& [r, v] : m.col[c]) {
                if (first_col[r] == SIZE_MAX)
                    first_col[r] = c;
                else
                    uf.unite(first_col[r], c);
            }
    }
    std::map<size_t, std::vector<size_t>> groups;
    for (size_t c = 0; c < m.cols; ++c) groups[uf.find(c)].push_back(c);

    std::vector<Real> sigma;
    sigma.reserve(m.cols);
    for (auto& [root, members] : groups) {
        // local dense block: rows remapped in ascending order
        std::map<size_t, size_t> row_of;
        for (size_t c : members)
            for (const auto& [r, v] : m.col[c]) row_of.emplace(r, 0);
        size_t nr = 0;
        for (auto& [r, loc] : row_of) loc = nr++;
        std::vector<std::vector<Real>> dense(members.size(), std::vector<Real>(std::max(nr, size_t{1}), Real(0)));
        for (size_t ci = 0; ci < members.size(); ++ci)
            for (const auto& [r, v] : m.col[members[ci]]) dense[ci][row_of[r]] += v;
        jacobi_block(dense, sigma);
    }
    return sigma;
}

template <typename Real>
TruncatedOperator<Real> represent(const Element& x, double q0, int N, int K) {
    check_lattice_args(x.algebra(), q0, N, K);
    const Real q(q0);
    WindowIndex win{0, N, -K, K, 1};
    SquareWindow clip{N, K};
    TruncatedOperator<Real> t;
    t.n_bound = N;
    t.k_bound = K;
    t.q0 = q0;
    t.comps = 1;
    t.forward = window_matrix(x, q, win, win, &clip);
    t.adjoint_side = window_matrix(x.star(), q, win, win, &clip);
    t.domain = t.codomain = win.labels();
    t.adjoint_domain = t.adjoint_codomain = t.domain;
    return t;
}

template <typename Real>
TruncatedOperator<Real> fredholm_compression(const MatrixCorep& u, double q0, int N, int K) {
    check_lattice_args(u.algebra(), q0, N, K);
    const Real q(q0);
    const int L = static_cast<int>(std::max<size_t>(max_word_horizon(u), 1));
    const size_t m = u.dim();
    WindowIndex dom{0, N, -K, -1, m};
    WindowIndex cod{0, N + L, -K - L, -1, m};
    TruncatedOperator<Real> t;
    t.n_bound = N;
    t.k_bound = K;
    t.q0 = q0;
    t.comps = m;
    compression_matrix(u, q, dom, cod, t.forward);
    compression_matrix(u.adjoint(), q, dom, cod, t.adjoint_side);
    t.domain = t.adjoint_domain = dom.labels();
    t.codomain = t.adjoint_codomain = cod.labels();
    return t;
}

namespace {

struct SideGap {
    double kept = 0;
    double dropped = 0;
    bool any_dropped = false;
    int below = 0;
    double ratio() const {
        if (!any_dropped) return std::numeric_limits<double>::infinity();
        if (dropped == 0.0) return std::numeric_limits<double>::infinity();
        return kept / dropped;
    }
};

template <typename Real>
SideGap side_gap(const std::vector<Real>& sigma, double threshold) {
    SideGap g;
    bool any_kept = false;
    for (const Real& s : sigma) {
        double v = static_cast<double>(s);
        if (v < threshold) {
            ++g.below;
            if (!g.any_dropped || v > g.dropped) g.dropped = v;
            g.any_dropped = true;
        } else if (!any_kept || v < g.kept) {
            g.kept = v;
            any_kept = true;
        }
    }
    if (!any_kept) g.kept = 0;  // degenerate: everything thresholded away
    return g;
}

}  // namespace

template <typename Real>
IndexResult numerical_index(const TruncatedOperator<Real>& t, double threshold) {
    if (!(threshold > 0)) throw std::invalid_argument("threshold must be positive");
    auto sf = singular_values(t.forward);
    auto sa = singular_values(t.adjoint_side);
    SideGap f = side_gap(sf, threshold);
    SideGap a = side_gap(sa, threshold);
    IndexResult r;
    r.kernel = f.below;
    r.cokernel = a.below;
    r.index = f.below - a.below;
    r.kept_forward = f.kept;
    r.dropped_forward = f.dropped;
    r.any_dropped_forward = f.any_dropped;
    r.kept_adjoint = a.kept;
    r.dropped_adjoint = a.dropped;
    r.any_dropped_adjoint = a.any_dropped;
    r.gap_ratio = std::min(f.ratio(), a.ratio());
    r.certified = r.gap_ratio >= 1e3;
    r.n_bound = t.n_bound;
    r.k_bound = t.k_bound;
    r.q0 = t.q0;
    r.threshold = threshold;
    r.precision = real_name<Real>();
    return r;
}

namespace {

template <typename Real>
IndexResult run_index(const MatrixCorep& u, double q0, int N, int K, double threshold) {
    auto t = fredholm_compression<Real>(u, q0, N, K);
    return numerical_index(t, threshold);
}

void require_unitary(const MatrixCorep& u) {
    if (!u.multiply(u.adjoint()).is_identity() || !u.adjoint().multiply(u).is_identity())
        throw std::invalid_argument("the index is defined for unitary matrices");
}

}  // namespace

IndexResult compute_unitary_index(const MatrixCorep& u, double q0, int N, int K, double threshold,
                                  Precision prec) {
    require_unitary(u);
    IndexResult r;
    switch (prec) {
        case Precision::Double: r = run_index<double>(u, q0, N, K, threshold); break;
        case Precision::LongDouble: r = run_index<long double>(u, q0, N, K, threshold); break;
        case Precision::Quad: r = run_index<Quad>(u, q0, N, K, threshold); break;
    }
    if (!r.certified && prec != Precision::Quad && r.gap_ratio >= 1e2) {
        // retry band: the separation is real but too tight for the working
        // precision, so redo the run with quad floats
        r = run_index<Quad>(u, q0, N, K, threshold);
    }
    if (!r.certified)
        throw GapError("singular-value gap ratio below 1e3; enlarge the truncation bounds N and K");
    return r;
}

SweepReport convergence_sweep(const MatrixCorep& u, double q0, const std::vector<int>& sizes,
                              double threshold, Precision prec) {
    if (sizes.size() < 3) throw std::invalid_argument("a convergence sweep needs at least three sizes");
    if (!std::is_sorted(sizes.begin(), sizes.end()))
        throw std::invalid_argument("sweep sizes must be nondecreasing");
    SweepReport rep;
    for (int s : sizes) {
        try {
            rep.entries.push_back({s, compute_unitary_index(u, q0, s, s, threshold, prec)});
        } catch (const GapError& e) {
            rep.stable = false;
            rep.note = "gap certificate failed at size " + std::to_string(s) + ": " + e.what();
            return rep;
        }
    }
    rep.index = rep.entries.front().result.index;
    rep.stable = true;
    for (const auto& e : rep.entries) {
        if (e.result.index != rep.index) {
            rep.stable = false;
            rep.note = "index changed across sizes: " + std::to_string(rep.index) + " vs " +
                       std::to_string(e.result.index) + " at size " + std::to_string(e.size);
            return rep;
        }
    }
    return rep;
}

ResidualReport representation_residuals(double q0, int N, int K) {
    check_lattice_args(suq2_algebra(), q0, N, K);
    const double q = q0;
    WindowIndex win{0, N, -K, K, 1};
    SquareWindow clip{N, K};
    auto labels = win.labels();
    auto interior = [&](const LatticePoint& p) {
        return p.n >= 1 && p.n <= N - 1 && std::abs(p.k) <= K - 1;
    };

    ResidualReport rep;
    auto record = [&](const SparseRect<double>& diff, const std::vector<LatticePoint>& pts) {
        for (size_t c = 0; c < diff.cols; ++c) {
            double norm2 = 0;
            for (const auto& [r, v] : diff.col[c]) norm2 += v * v;
            double norm = std::sqrt(norm2);
            if (interior(pts[c])) {
                rep.max_interior = std::max(rep.max_interior, norm);
                ++rep.interior_checked;
            } else {
                rep.max_boundary = std::max(rep.max_boundary, norm);
                ++rep.boundary_flagged;
            }
        }
    };
    auto raw_word = [&](const Word& w) {
        SparseRect<double> m(win.size(), win.size());
        for (size_t c = 0; c < labels.size(); ++c) {
            auto hit = walk_word(w, labels[c], q, &clip);
            if (hit && win.contains(hit->first)) m.add(win.at(hit->first), c, hit->second);
        }
        return m;
    };
    auto subtract = [](const SparseRect<double>& a, const SparseRect<double>& b) {
        SparseRect<double> out(a.rows, a.cols);
        for (size_t c = 0; c < a.cols; ++c) {
            std::map<size_t, double> acc;
            for (const auto& [r, v] : a.col[c]) acc[r] += v;
            for (const auto& [r, v] : b.col[c]) acc[r] -= v;
            emit_column(out, c, acc);
        }
        return out;
    };

    // defining relations, represented as truncated letter products
    for (const auto& rule : suq2_algebra()->rules()) {
        SparseRect<double> rhs(win.size(), win.size());
        for (const auto& [w, coef] : rule.rhs) {
            auto part = raw_word(w);
            for (size_t c = 0; c < part.cols; ++c)
                for (const auto& [r, v] : part.col[c]) rhs.add(r, c, coef.eval_real<double>(q) * v);
        }
        record(subtract(raw_word(rule.lhs), rhs), labels);
    }

    // unitarity of the represented fundamental matrix
    MatrixCorep u = fundamental_corep();
    WindowIndex blocks{0, N, -K, K, 2};
    auto block_pts = blocks.labels();
    SparseRect<double> B(blocks.size(), blocks.size());
    for (size_t c = 0; c < blocks.size(); ++c) {
        LatticePoint p = block_pts[c];
        std::map<size_t, double> acc;
        for (size_t i = 0; i < 2; ++i)
            for (const auto& [w, coef] : u.at(i, static_cast<size_t>(p.comp)).terms()) {
                auto hit = walk_word(w, LatticePoint{p.n, p.k, static_cast<int>(i)}, q, &clip);
                if (hit && blocks.contains(hit->first))
                    acc[blocks.at(hit->first)] += coef.eval_real<double>(q) * hit->second;
            }
        emit_column(B, c, acc);
    }
    auto eye = [&](size_t n) {
        SparseRect<double> out(n, n);
        for (size_t i = 0; i < n; ++i) out.add(i, i, 1.0);
        return out;
    };
    record(subtract(B.transposed().multiply(B), eye(blocks.size())), block_pts);
    record(subtract(B.multiply(B.transposed()), eye(blocks.size())), block_pts);
    return rep;
}

const char* precision_name(Precision p) {
    switch (p) {
        case Precision::Double: return "double";
        case Precision::LongDouble: return "longdouble";
        case Precision::Quad: return "quad";
    }
    return "double";
}

Precision parse_precision(const std::string& name) {
    if (name == "double") return Precision::Double;
    if (name == "longdouble") return Precision::LongDouble;
    if (name == "quad") return Precision::Quad;
    throw std::invalid_argument("unknown precision '" + name + "' (expected double, longdouble, or quad)");
}

Precision precision_from_env() {
    const char* v = std::getenv("QJOIN_PRECISION");
    if (v == nullptr || *v == '\0') return Precision::Double;
    return parse_precision(v);
}

template struct SparseRect<double>;
template struct SparseRect<long double>;
template struct SparseRect<Quad>;
template std::vector<double> singular_values(const SparseRect<double>&);
template std::vector<long double> singular_values(const SparseRect<long double>&);
template std::vector<Quad> singular_values(const SparseRect<Quad>&);
template TruncatedOperator<double> represent(const Element&, double, int, int);
template TruncatedOperator<long double> represent(const Element&, double, int, int);
template TruncatedOperator<Quad> represent(const Element&, double, int, int);
template TruncatedOperator<double> fredholm_compression(const MatrixCorep&, double, int, int);
template TruncatedOperator<long double> fredholm_compression(const MatrixCorep&, double, int, int);
template TruncatedOperator<Quad> fredholm_compression(const MatrixCorep&, double, int, int);
template IndexResult numerical_index(const TruncatedOperator<double>&, double);
template IndexResult numerical_index(const TruncatedOperator<long double>&, double);
template IndexResult numerical_index(const TruncatedOperator<Quad>&, double);

}  // namespace qjoin
