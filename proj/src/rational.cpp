#include "qjoin/rational.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <sstream>

namespace qjoin {

namespace {

BigInt int_gcd(BigInt a, BigInt b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        BigInt r = a % b;
        a = b;
        b = r;
    }
    return a;
}

}  // namespace

QPoly::QPoly(long v) {
    if (v != 0) c_.push_back(BigInt(v));
}

QPoly::QPoly(BigInt v) {
    if (v != 0) c_.push_back(std::move(v));
}

QPoly QPoly::q(int power) {
    return monomial(1, power);
}

QPoly QPoly::monomial(BigInt coeff, int degree) {
    QPoly p;
    if (coeff == 0) return p;
    if (degree < 0) throw std::invalid_argument("QPoly: negative degree");
    p.c_.assign(static_cast<size_t>(degree) + 1, BigInt(0));
    p.c_.back() = std::move(coeff);
    return p;
}

BigInt QPoly::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return BigInt(0);
    return c_[static_cast<size_t>(k)];
}

const BigInt& QPoly::leading() const {
    if (c_.empty()) throw std::logic_error("QPoly: leading coefficient of zero");
    return c_.back();
}

void QPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

QPoly QPoly::operator-() const {
    QPoly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

QPoly QPoly::operator+(const QPoly& o) const {
    QPoly r;
    r.c_.resize(std::max(c_.size(), o.c_.size()), BigInt(0));
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r.c_[i] += o.c_[i];
    r.trim();
    return r;
}

QPoly QPoly::operator-(const QPoly& o) const {
    return *this + (-o);
}

QPoly QPoly::operator*(const QPoly& o) const {
    QPoly r;
    if (is_zero() || o.is_zero()) return r;
    r.c_.assign(c_.size() + o.c_.size() - 1, BigInt(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
    }
    r.trim();
    return r;
}

BigInt QPoly::content() const {
    BigInt g = 0;
    for (const auto& x : c_) g = int_gcd(g, x);
    if (!c_.empty() && c_.back() < 0) g = -g;
    return g;
}

QPoly QPoly::div_exact(const QPoly& a, const QPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("QPoly: division by zero");
    QPoly rem = a;
    QPoly quot;
    if (a.is_zero()) return quot;
    if (rem.degree() >= b.degree())
        quot.c_.assign(static_cast<size_t>(rem.degree() - b.degree()) + 1, BigInt(0));
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
        if (rem.leading() % b.leading() != 0)
            throw std::invalid_argument("QPoly: inexact division");
        BigInt f = rem.leading() / b.leading();
        int shift = rem.degree() - b.degree();
        quot.c_[static_cast<size_t>(shift)] = f;
        rem = rem - QPoly::monomial(f, shift) * b;
    }
    if (!rem.is_zero()) throw std::invalid_argument("QPoly: inexact division");
    quot.trim();
    return quot;
}

QPoly QPoly::gcd(QPoly a, QPoly b) {
    if (a.is_zero() && b.is_zero()) return QPoly();
    BigInt ca = a.is_zero() ? BigInt(0) : a.content();
    BigInt cb = b.is_zero() ? BigInt(0) : b.content();
    BigInt cg = int_gcd(ca, cb);
    if (ca != 0) a = div_exact(a, QPoly(ca));
    if (cb != 0) b = div_exact(b, QPoly(cb));
    // Primitive Euclidean loop via pseudo-remainders; coefficient growth is
    // kept down by stripping the content after every step.
    while (!b.is_zero()) {
        if (a.degree() < b.degree()) std::swap(a, b);
        if (b.is_zero()) break;
        // prem(a, b): scale a so every division step is exact over Z.
        QPoly r = a;
        int steps = a.degree() - b.degree() + 1;
        QPoly lead(b.leading());
        for (int s = 0; s < steps && !r.is_zero() && r.degree() >= b.degree(); ++s) {
            r = r * lead;
            BigInt f = r.leading() / b.leading();
            r = r - QPoly::monomial(f, r.degree() - b.degree()) * b;
        }
        if (!r.is_zero()) {
            BigInt cr = r.content();
            r = div_exact(r, QPoly(cr));
        }
        a = b;
        b = r;
    }
    if (!a.is_zero() && a.leading() < 0) a = -a;
    return QPoly(cg) * a;
}

BigRational QPoly::eval(const BigRational& x) const {
    BigRational acc(0);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + BigRational(c_[i]);
    return acc;
}

std::string QPoly::str() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        BigInt c = coeff(k);
        if (c == 0) continue;
        if (c > 0 && !first) out << "+";
        if (c < 0) {
            out << "-";
            c = -c;
        }
        if (c != 1 || k == 0) out << c.str();
        if (k >= 1) {
            out << "q";
            if (k >= 2) out << "^" << k;
        }
        first = false;
    }
    return out.str();
}

QPoly QPoly::parse(const std::string& text) {
    QPoly result;
    size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    if (i == text.size()) throw std::invalid_argument("QPoly: empty string");
    bool any = false;
    while (true) {
        skip_ws();
        if (i == text.size()) break;
        int sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            if (text[i] == '-') sign = -1;
            ++i;
            skip_ws();
        } else if (any) {
            throw std::invalid_argument("QPoly: expected sign between terms");
        }
        BigInt coeff = 1;
        bool saw_digits = false;
        if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            coeff = BigInt(text.substr(i, j - i));
            i = j;
            saw_digits = true;
        }
        int deg = 0;
        if (i < text.size() && text[i] == 'q') {
            ++i;
            deg = 1;
            if (i < text.size() && text[i] == '^') {
                ++i;
                size_t j = i;
                while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
                if (j == i) throw std::invalid_argument("QPoly: missing exponent");
                deg = std::stoi(text.substr(i, j - i));
                i = j;
            }
        } else if (!saw_digits) {
            throw std::invalid_argument("QPoly: expected coefficient or q");
        }
        result = result + QPoly::monomial(sign * coeff, deg);
        any = true;
    }
    if (!any) throw std::invalid_argument("QPoly: no terms");
    return result;
}

ScalarQ::ScalarQ(QPoly num, QPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::invalid_argument("ScalarQ: zero denominator");
    reduce();
}

void ScalarQ::reduce() {
    if (num_.is_zero()) {
        den_ = QPoly(1);
        return;
    }
    QPoly g = QPoly::gcd(num_, den_);
    num_ = QPoly::div_exact(num_, g);
    den_ = QPoly::div_exact(den_, g);
    if (den_.leading() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
}

ScalarQ ScalarQ::q_power(int k) {
    if (k >= 0) return ScalarQ(QPoly::q(k));
    return ScalarQ(QPoly(1), QPoly::q(-k));
}

ScalarQ ScalarQ::from_rational(const BigRational& r) {
    return ScalarQ(QPoly(BigInt(boost::multiprecision::numerator(r))),
                   QPoly(BigInt(boost::multiprecision::denominator(r))));
}

ScalarQ ScalarQ::operator-() const {
    ScalarQ r = *this;
    r.num_ = -r.num_;
    return r;
}

ScalarQ ScalarQ::operator+(const ScalarQ& o) const {
    return ScalarQ(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

ScalarQ ScalarQ::operator-(const ScalarQ& o) const {
    return *this + (-o);
}

ScalarQ ScalarQ::operator*(const ScalarQ& o) const {
    return ScalarQ(num_ * o.num_, den_ * o.den_);
}

ScalarQ ScalarQ::operator/(const ScalarQ& o) const {
    return *this * o.inverse();
}

ScalarQ ScalarQ::inverse() const {
    if (is_zero()) throw std::invalid_argument("ScalarQ: inverse of zero");
    return ScalarQ(den_, num_);
}

ScalarQ ScalarQ::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    ScalarQ acc(1);
    ScalarQ base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

BigRational ScalarQ::eval(const BigRational& q0) const {
    BigRational d = den_.eval(q0);
    if (d == 0) throw PoleError("pole of scalar at q0 = " + q0.str());
    return num_.eval(q0) / d;
}

std::string ScalarQ::str() const {
    if (den_.is_one()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

ScalarQ ScalarQ::parse(const std::string& text) {
    auto slash = text.find(")/(");
    if (slash == std::string::npos) return ScalarQ(QPoly::parse(text));
    if (text.empty() || text.front() != '(' || text.back() != ')')
        throw std::invalid_argument("ScalarQ: malformed fraction");
    std::string num = text.substr(1, slash - 1);
    std::string den = text.substr(slash + 3, text.size() - slash - 4);
    return ScalarQ(QPoly::parse(num), QPoly::parse(den));
}

}  // namespace qjoin
