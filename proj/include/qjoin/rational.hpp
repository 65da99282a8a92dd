#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace qjoin {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

struct PoleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Integer-coefficient polynomial in the deformation parameter q.
/// Coefficients are stored in ascending degree with no trailing zeros,
/// so equal polynomials have equal representations.
class QPoly {
public:
    QPoly() = default;
    QPoly(long v);
    explicit QPoly(BigInt v);

    static QPoly q(int power = 1);
    static QPoly monomial(BigInt coeff, int degree);

    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    BigInt coeff(int k) const;
    const BigInt& leading() const;

    QPoly operator-() const;
    QPoly operator+(const QPoly& o) const;
    QPoly operator-(const QPoly& o) const;
    QPoly operator*(const QPoly& o) const;
    bool operator==(const QPoly& o) const = default;

    /// gcd of all coefficients, carrying the sign of the leading one.
    BigInt content() const;
    static QPoly gcd(QPoly a, QPoly b);
    /// Quotient a/b; throws std::invalid_argument when division is not exact.
    static QPoly div_exact(const QPoly& a, const QPoly& b);

    BigRational eval(const BigRational& x) const;
    template <class Real>
    Real eval_real(const Real& x) const {
        Real acc(0);
        for (size_t i = c_.size(); i-- > 0;) {
            acc = acc * x + static_cast<Real>(c_[i]);
        }
        return acc;
    }

    std::string str() const;
    static QPoly parse(const std::string& text);

private:
    std::vector<BigInt> c_;
    void trim();
    friend class ScalarQ;
};

/// Element of the field Q(q): a reduced fraction of integer polynomials.
/// Canonical form (coprime parts, positive leading denominator coefficient)
/// makes equality a plain comparison.
class ScalarQ {
public:
    ScalarQ() = default;
    ScalarQ(long v) : num_(v), den_(1) {}
    ScalarQ(QPoly num) : num_(std::move(num)), den_(1) {}
    ScalarQ(QPoly num, QPoly den);

    static ScalarQ q_power(int k);
    static ScalarQ from_rational(const BigRational& r);

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    const QPoly& num() const { return num_; }
    const QPoly& den() const { return den_; }

    ScalarQ operator-() const;
    ScalarQ operator+(const ScalarQ& o) const;
    ScalarQ operator-(const ScalarQ& o) const;
    ScalarQ operator*(const ScalarQ& o) const;
    ScalarQ operator/(const ScalarQ& o) const;
    ScalarQ& operator+=(const ScalarQ& o) { return *this = *this + o; }
    ScalarQ& operator*=(const ScalarQ& o) { return *this = *this * o; }
    ScalarQ inverse() const;
    ScalarQ pow(int e) const;
    bool operator==(const ScalarQ& o) const = default;

    /// Exact evaluation at a rational point; throws PoleError when the
    /// reduced denominator vanishes there.
    BigRational eval(const BigRational& q0) const;
    template <class Real>
    Real eval_real(const Real& q0) const {
        Real d = den_.eval_real(q0);
        if (d == Real(0)) throw PoleError("pole of scalar at numeric q0");
        return num_.eval_real(q0) / d;
    }

    std::string str() const;
    static ScalarQ parse(const std::string& text);

private:
    QPoly num_;
    QPoly den_{1};
    void reduce();
};

inline ScalarQ operator*(long a, const ScalarQ& b) { return ScalarQ(a) * b; }

}  // namespace qjoin
