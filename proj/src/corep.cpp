#include "qjoin/corep.hpp"

#include "qjoin/suq2.hpp"

namespace qjoin {

MatrixCorep::MatrixCorep(AlgebraPtr alg, std::vector<std::vector<Element>> entries)
    : alg_(std::move(alg)), entries_(std::move(entries)) {
    if (!alg_) throw std::invalid_argument("MatrixCorep: null algebra");
    if (!alg_->has_hopf()) throw std::invalid_argument("MatrixCorep: algebra has no costructure");
    const size_t n = entries_.size();
    if (n == 0) throw std::invalid_argument("MatrixCorep: empty matrix");
    for (const auto& row : entries_) {
        if (row.size() != n) throw std::invalid_argument("MatrixCorep: matrix is not square");
        for (const auto& e : row)
            if (e.algebra() && e.algebra() != alg_)
                throw std::invalid_argument("MatrixCorep: entry from a different algebra");
    }
    // Normalize null (default-constructed) entries to honest zeros.
    for (auto& row : entries_)
        for (auto& e : row)
            if (!e.algebra()) e = alg_->zero();
}

MatrixCorep MatrixCorep::adjoint() const {
    const size_t n = dim();
    std::vector<std::vector<Element>> out(n, std::vector<Element>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) out[i][j] = entries_[j][i].star();
    return MatrixCorep(alg_, std::move(out));
}

MatrixCorep MatrixCorep::multiply(const MatrixCorep& o) const {
    if (o.alg_ != alg_ || o.dim() != dim())
        throw std::invalid_argument("MatrixCorep: shape or algebra mismatch");
    const size_t n = dim();
    std::vector<std::vector<Element>> out(n, std::vector<Element>(n, alg_->zero()));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k)
                out[i][j] = out[i][j] + entries_[i][k] * o.entries_[k][j];
    return MatrixCorep(alg_, std::move(out));
}

bool MatrixCorep::is_identity() const {
    for (size_t i = 0; i < dim(); ++i)
        for (size_t j = 0; j < dim(); ++j) {
            const Element expected = i == j ? alg_->one() : alg_->zero();
            if (entries_[i][j] != expected) return false;
        }
    return true;
}

MatrixCorep fundamental_corep() {
    auto alg = suq2_algebra();
    const ScalarQ q = ScalarQ::q_power(1);
    std::vector<std::vector<Element>> u = {
        {suq2_a(), suq2_b_star().scaled(-q)},
        {suq2_b(), suq2_a_star()},
    };
    return MatrixCorep(alg, std::move(u));
}

CorepReport verify_corep(const MatrixCorep& u) {
    CorepReport report;
    const size_t n = u.dim();
    const auto& alg = u.algebra();
    auto note = [&](std::string what, size_t i, size_t j) {
        if (report.first_failure.empty())
            report.first_failure =
                what + " fails at entry (" + std::to_string(i) + "," + std::to_string(j) + ")";
    };
    for (size_t i = 0; i < n && report.comultiplication_ok; ++i)
        for (size_t j = 0; j < n; ++j) {
            Tensor lhs = u.at(i, j).comultiply();
            Tensor rhs = Tensor::zero({alg, alg});
            for (size_t k = 0; k < n; ++k) rhs = rhs + make_tensor(u.at(i, k), u.at(k, j));
            if (lhs != rhs) {
                report.comultiplication_ok = false;
                note("comultiplication", i, j);
                break;
            }
        }
    for (size_t i = 0; i < n && report.counit_ok; ++i)
        for (size_t j = 0; j < n; ++j)
            if (u.at(i, j).counit() != ScalarQ(i == j ? 1 : 0)) {
                report.counit_ok = false;
                note("counit", i, j);
                break;
            }
    MatrixCorep ustar = u.adjoint();
    if (!u.multiply(ustar).is_identity() || !ustar.multiply(u).is_identity()) {
        report.unitary_ok = false;
        note("unitarity", 0, 0);
    }
    return report;
}

ModuleMatrix::ModuleMatrix(AlgebraPtr alg, std::vector<std::vector<Element>> entries)
    : alg_(std::move(alg)), entries_(std::move(entries)) {
    const size_t n = entries_.size();
    for (const auto& row : entries_)
        if (row.size() != n) throw std::invalid_argument("ModuleMatrix: matrix is not square");
}

std::vector<Element> ModuleMatrix::apply(const std::vector<Element>& x) const {
    const size_t n = dim();
    if (x.size() != n) throw std::invalid_argument("ModuleMatrix: vector length mismatch");
    std::vector<Element> y(n, alg_->zero());
    for (size_t j = 0; j < n; ++j)
        for (size_t i = 0; i < n; ++i) y[j] = y[j] + x[i] * entries_[i][j];
    return y;
}

ModuleMatrix ModuleMatrix::compose(const ModuleMatrix& then) const {
    const size_t n = dim();
    if (then.dim() != n) throw std::invalid_argument("ModuleMatrix: compose shape mismatch");
    std::vector<std::vector<Element>> out(n, std::vector<Element>(n, alg_->zero()));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k)
                out[i][j] = out[i][j] + entries_[i][k] * then.entries_[k][j];
    return ModuleMatrix(alg_, std::move(out));
}

ModuleMatrix clutching_map(const MatrixCorep& u) {
    const size_t n = u.dim();
    std::vector<std::vector<Element>> t(n, std::vector<Element>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) t[i][j] = u.at(i, j).antipode();
    return ModuleMatrix(u.algebra(), std::move(t));
}

ModuleMatrix clutching_inverse(const MatrixCorep& u) {
    const size_t n = u.dim();
    std::vector<std::vector<Element>> t(n, std::vector<Element>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) t[i][j] = u.at(i, j);
    return ModuleMatrix(u.algebra(), std::move(t));
}

InverseCheckReport clutching_inverse_check(const MatrixCorep& u, Rng& rng, int samples) {
    InverseCheckReport report;
    const size_t n = u.dim();
    const auto& alg = u.algebra();
    // Matrix identities sum_k S(u[i][k]) u[k][j] = eps(u[i][j]) 1, both sides.
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            Element left = alg->zero();
            Element right = alg->zero();
            for (size_t k = 0; k < n; ++k) {
                left = left + u.at(i, k).antipode() * u.at(k, j);
                right = right + u.at(i, k) * u.at(k, j).antipode();
            }
            Element expected = alg->one().scaled(u.at(i, j).counit());
            if (left != expected || right != expected) report.matrix_identities_ok = false;
        }
    ModuleMatrix chi = clutching_map(u);
    ModuleMatrix chi_inv = clutching_inverse(u);
    for (int s = 0; s < samples; ++s) {
        ++report.samples;
        std::vector<Element> x;
        for (size_t i = 0; i < n; ++i) x.push_back(random_element(alg, 2, 4, rng));
        if (chi_inv.apply(chi.apply(x)) != x || chi.apply(chi_inv.apply(x)) != x)
            ++report.failures;
    }
    return report;
}

bool cotensor_membership(const std::vector<Element>& x, const MatrixCorep& u) {
    const size_t n = u.dim();
    if (x.size() != n) throw std::invalid_argument("cotensor_membership: vector length mismatch");
    const auto& alg = u.algebra();
    // Comparing (delta (x) id)(x) with (id (x) rho)(x) componentwise over the
    // module basis: for every k, Delta(x_k) = sum_i x_i (x) u[i][k].
    for (size_t k = 0; k < n; ++k) {
        Tensor lhs = x[k].algebra() ? x[k].comultiply() : Tensor::zero({alg, alg});
        Tensor rhs = Tensor::zero({alg, alg});
        for (size_t i = 0; i < n; ++i) rhs = rhs + make_tensor(x[i], u.at(i, k));
        if (lhs != rhs) return false;
    }
    return true;
}

}  // namespace qjoin
