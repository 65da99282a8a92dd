#pragma once

#include "qjoin/corep.hpp"

#include <limits>

namespace qjoin {

/// Raised when the singular-value spectrum near the threshold is too poorly
/// separated to certify integer kernel/cokernel counts.
struct GapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Precision { Double, LongDouble, Quad };
const char* precision_name(Precision p);
Precision parse_precision(const std::string& name);  // throws std::invalid_argument
/// Reads QJOIN_PRECISION (double | longdouble | quad); unset means double.
Precision precision_from_env();

/// Basis label: radial index n >= 0, torus index k, and the C^m component for
/// block operators (0 for plain algebra elements).
struct LatticePoint {
    int n = 0;
    int k = 0;
    int comp = 0;
};

/// Column-major sparse rectangular matrix. The representation weights are
/// real, so the adjoint is the plain transpose.
template <typename Real>
struct SparseRect {
    size_t rows = 0, cols = 0;
    std::vector<std::vector<std::pair<size_t, Real>>> col;

    SparseRect() = default;
    SparseRect(size_t r, size_t c) : rows(r), cols(c), col(c) {}
    void add(size_t r, size_t c, Real v) {
        if (r >= rows || c >= cols) throw std::invalid_argument("sparse entry out of range");
        col[c].emplace_back(r, v);
    }
    SparseRect transposed() const {
        SparseRect t(cols, rows);
        for (size_t c = 0; c < cols; ++c)
            for (const auto& [r, v] : col[c]) t.col[r].emplace_back(c, v);
        return t;
    }
    /// this * o (composition: o maps into the column space of this).
    SparseRect multiply(const SparseRect& o) const;
};

/// Singular values of every column block, zero columns included; the result
/// has exactly one entry per column.
template <typename Real>
std::vector<Real> singular_values(const SparseRect<Real>& m);

/// A represented operator together with the basis labels of both sides.
/// `forward` holds the compression itself, `adjoint_side` the independently
/// built compression of the starred input on its own window (kernel counts of
/// the two give kernel and cokernel).
template <typename Real>
struct TruncatedOperator {
    int n_bound = 0;
    int k_bound = 0;
    double q0 = 0;
    size_t comps = 1;
    SparseRect<Real> forward;
    SparseRect<Real> adjoint_side;
    std::vector<LatticePoint> domain, codomain;
    std::vector<LatticePoint> adjoint_domain, adjoint_codomain;
};

/// Weighted-shift representation on the n >= 0, k in Z lattice, cut to the
/// square window n in [0, N], |k| <= K. Words act letter by letter with
/// clipping after every step, so relation residuals survive only at the
/// window boundary.
template <typename Real>
TruncatedOperator<Real> represent(const Element& x, double q0, int N, int K);

/// Compression P pi(u) P of a block matrix over the representation, where P
/// keeps the torus modes k <= -1. The domain is the square window inside the
/// range of P; the codomain is padded by the word-length horizon so that no
/// image of a domain vector is clipped except by P itself.
template <typename Real>
TruncatedOperator<Real> fredholm_compression(const MatrixCorep& u, double q0, int N, int K);

struct IndexResult {
    int kernel = 0;
    int cokernel = 0;
    int index = 0;
    // gap certificate, per side: smallest retained and largest discarded
    // singular value (0 when nothing was discarded on that side)
    double kept_forward = 0;
    double dropped_forward = 0;
    bool any_dropped_forward = false;
    double kept_adjoint = 0;
    double dropped_adjoint = 0;
    bool any_dropped_adjoint = false;
    double gap_ratio = std::numeric_limits<double>::infinity();
    bool certified = false;
    int n_bound = 0;
    int k_bound = 0;
    double q0 = 0;
    double threshold = 0;
    std::string precision = "double";
};

/// Kernel/cokernel counts by singular-value thresholding of the two stored
/// compressions, plus the spectral-gap certificate. Does not throw on a weak
/// gap; `certified` reports it.
template <typename Real>
IndexResult numerical_index(const TruncatedOperator<Real>& t, double threshold);

/// Full pipeline for a unitary block matrix: build the compression at the
/// requested precision, compute the index, and if the gap ratio lands in the
/// retry band [1e2, 1e3) redo the run in quad precision. Throws GapError when
/// the final gap ratio stays below 1e3.
IndexResult compute_unitary_index(const MatrixCorep& u, double q0, int N, int K,
                                  double threshold, Precision prec);

struct SweepEntry {
    int size = 0;
    IndexResult result;
};
struct SweepReport {
    std::vector<SweepEntry> entries;
    bool stable = false;
    int index = 0;
    std::string note;
    bool ok() const { return stable; }
};
/// Index at every size N = K in `sizes` (>= 3 nondecreasing entries); stable
/// only if every size certifies and yields the same integer.
SweepReport convergence_sweep(const MatrixCorep& u, double q0, const std::vector<int>& sizes,
                              double threshold, Precision prec);

struct ResidualReport {
    double max_interior = 0;
    double max_boundary = 0;
    int interior_checked = 0;
    int boundary_flagged = 0;
    bool ok(double tol = 1e-12) const { return interior_checked > 0 && max_interior <= tol; }
};
/// Residuals of the defining relations and of the unitarity of the
/// fundamental matrix under the square-window representation: interior basis
/// vectors must satisfy them to near machine accuracy, boundary rows are
/// only flagged.
ResidualReport representation_residuals(double q0, int N, int K);

}  // namespace qjoin
