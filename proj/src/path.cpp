#include "qjoin/path.hpp"

#include <sstream>

namespace qjoin {

PathElement PathElement::zero(std::vector<AlgebraPtr> legs, Side side) {
    PathElement p;
    p.legs_ = std::move(legs);
    p.side_ = side;
    return p;
}

PathElement PathElement::constant(Tensor value, Side side) {
    return monomial(PathKey{}, std::move(value), side);
}

PathElement PathElement::monomial(PathKey k, Tensor value, Side side) {
    if (k.t_exp < 0 || k.c_exp < 0 || k.s_exp < 0)
        throw std::invalid_argument("path monomial: negative exponent");
    PathElement p = zero(value.leg_algebras(), side);
    std::vector<std::pair<PathKey, int>> parts;
    normalize_key(k, 1, parts);
    for (const auto& [nk, sign] : parts)
        p.add_term(nk, sign < 0 ? -value : value);
    return p;
}

PathElement PathElement::coordinate(std::vector<AlgebraPtr> legs, Side side) {
    return monomial(PathKey{1, 0, 0}, Tensor::unit(std::move(legs)), side);
}

bool PathElement::uses_trig() const {
    for (const auto& [k, v] : terms_)
        if (k.c_exp > 0 || k.s_exp > 0) return true;
    return false;
}

PathElement PathElement::with_boundary(BoundaryProfile b) const {
    PathElement p = *this;
    p.boundary_ = b;
    return p;
}

PathElement PathElement::with_side(Side s) const {
    PathElement p = *this;
    p.side_ = s;
    return p;
}

void PathElement::normalize_key(PathKey k, int sign, std::vector<std::pair<PathKey, int>>& out) {
    if (k.s_exp <= 1) {
        out.emplace_back(k, sign);
        return;
    }
    // s^2 = 1 - c^2, peeled off one factor at a time
    PathKey lower{k.t_exp, k.c_exp, k.s_exp - 2};
    PathKey raised{k.t_exp, k.c_exp + 2, k.s_exp - 2};
    normalize_key(lower, sign, out);
    normalize_key(raised, -sign, out);
}

void PathElement::add_term(const PathKey& k, const Tensor& t) {
    if (t.is_zero()) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, t);
        return;
    }
    it->second = it->second + t;
    if (it->second.is_zero()) terms_.erase(it);
}

Side PathElement::merge_sides(Side a, Side b) {
    if (a == b) return a;
    if (a == Side::Full) return b;
    if (b == Side::Full) return a;
    throw std::invalid_argument("path domains [0,1/2] and [1/2,1] do not match");
}

BoundaryProfile PathElement::merge_boundaries(const BoundaryProfile& a, const BoundaryProfile& b) {
    BoundaryProfile r;
    r.at0 = (a.at0 == b.at0) ? a.at0 : Boundary::None;
    r.at1 = (a.at1 == b.at1) ? a.at1 : Boundary::None;
    return r;
}

void PathElement::require_same_legs(const PathElement& o) const {
    if (legs_.size() != o.legs_.size())
        throw std::invalid_argument("path arity mismatch");
    for (size_t i = 0; i < legs_.size(); ++i)
        if (legs_[i] != o.legs_[i]) throw std::invalid_argument("path leg algebra mismatch");
}

PathElement PathElement::operator+(const PathElement& o) const {
    if (legs_.empty()) return o;
    if (o.legs_.empty()) return *this;
    require_same_legs(o);
    PathElement r = zero(legs_, merge_sides(side_, o.side_));
    r.boundary_ = merge_boundaries(boundary_, o.boundary_);
    r.terms_ = terms_;
    for (const auto& [k, t] : o.terms_) r.add_term(k, t);
    return r;
}

PathElement PathElement::operator-(const PathElement& o) const { return *this + (-o); }

PathElement PathElement::operator-() const {
    PathElement r = *this;
    for (auto& [k, t] : r.terms_) t = -t;
    return r;
}

PathElement PathElement::operator*(const PathElement& o) const {
    require_same_legs(o);
    PathElement r = zero(legs_, merge_sides(side_, o.side_));
    r.boundary_ = merge_boundaries(boundary_, o.boundary_);
    for (const auto& [ka, ta] : terms_)
        for (const auto& [kb, tb] : o.terms_) {
            Tensor prod = ta * tb;
            if (prod.is_zero()) continue;
            PathKey raw{ka.t_exp + kb.t_exp, ka.c_exp + kb.c_exp, ka.s_exp + kb.s_exp};
            std::vector<std::pair<PathKey, int>> parts;
            normalize_key(raw, 1, parts);
            for (const auto& [nk, sign] : parts)
                r.add_term(nk, sign < 0 ? -prod : prod);
        }
    return r;
}

PathElement PathElement::scaled(const ScalarQ& c) const {
    PathElement r = zero(legs_, side_);
    r.boundary_ = boundary_;
    for (const auto& [k, t] : terms_) r.add_term(k, t.scaled(c));
    return r;
}

PathElement PathElement::pow(int n) const {
    if (n < 0) throw std::invalid_argument("path pow: negative power");
    PathElement r = constant(Tensor::unit(legs_), side_);
    for (int i = 0; i < n; ++i) r = r * *this;
    return r;
}

PathElement PathElement::star() const {
    // t, c, s are real coordinates, so only the coefficients conjugate
    PathElement r = zero(legs_, side_);
    r.boundary_ = boundary_;
    for (const auto& [k, t] : terms_) r.add_term(k, t.star());
    return r;
}

Tensor PathElement::eval(const BigRational& t) const {
    Tensor acc = Tensor::zero(legs_);
    bool at0 = (t == 0), at1 = (t == 1);
    for (const auto& [k, coef] : terms_) {
        if (k.c_exp > 0 || k.s_exp > 0) {
            if (!at0 && !at1)
                throw EvalError("trig coordinates evaluate only at the endpoints");
            if (at0 && k.s_exp > 0) continue;  // s(0) = 0
            if (at1 && k.c_exp > 0) continue;  // c(1) = 0
        }
        BigRational tp = 1;
        for (int i = 0; i < k.t_exp; ++i) tp *= t;
        if (tp == 0) continue;
        acc = acc + coef.scaled(ScalarQ::from_rational(tp));
    }
    return acc;
}

template <typename F>
PathElement PathElement::mapped(F&& f) const {
    PathElement r;
    r.legs_ = f(Tensor::zero(legs_)).leg_algebras();
    r.side_ = side_;
    for (const auto& [k, t] : terms_) r.add_term(k, f(t));
    return r;
}

PathElement PathElement::apply_delta(size_t leg) const {
    return mapped([&](const Tensor& t) { return t.apply_delta(leg); });
}

PathElement PathElement::apply_counit(size_t leg) const {
    return mapped([&](const Tensor& t) { return t.apply_counit(leg); });
}

PathElement PathElement::apply_antipode(size_t leg) const {
    return mapped([&](const Tensor& t) { return t.apply_antipode(leg); });
}

PathElement PathElement::multiply_legs(size_t leg) const {
    return mapped([&](const Tensor& t) { return t.multiply_legs(leg); });
}

PathElement PathElement::insert_leg(size_t pos, const Element& e) const {
    return mapped([&](const Tensor& t) { return t.insert_leg(pos, e); });
}

std::vector<std::pair<Word, PathElement>> PathElement::expand_last_leg() const {
    if (legs_.empty()) throw std::invalid_argument("expand_last_leg: empty path");
    size_t last = legs_.size() - 1;
    std::map<Word, PathElement> parts;
    for (const auto& [k, t] : terms_)
        for (const auto& [w, cof] : t.expand_leg(last)) {
            auto it = parts.find(w);
            if (it == parts.end()) {
                std::vector<AlgebraPtr> rest(legs_.begin(), legs_.end() - 1);
                it = parts.emplace(w, zero(rest, side_)).first;
            }
            it->second.add_term(k, cof);
        }
    std::vector<std::pair<Word, PathElement>> out;
    for (auto& [w, p] : parts)
        if (!p.is_zero()) out.emplace_back(w, std::move(p));
    return out;
}

bool PathElement::operator==(const PathElement& o) const {
    if (legs_.size() != o.legs_.size()) return false;
    for (size_t i = 0; i < legs_.size(); ++i)
        if (legs_[i] != o.legs_[i]) return false;
    return terms_ == o.terms_;
}

std::string PathElement::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, t] : terms_) {
        if (!first) os << " + ";
        first = false;
        std::string head;
        if (k.t_exp == 1) head += "t";
        else if (k.t_exp > 1) head += "t^" + std::to_string(k.t_exp);
        if (k.c_exp == 1) head += (head.empty() ? "c" : ".c");
        else if (k.c_exp > 1) head += (head.empty() ? "c^" : ".c^") + std::to_string(k.c_exp);
        if (k.s_exp == 1) head += (head.empty() ? "s" : ".s");
        if (head.empty()) head = "1";
        os << head << "*[" << t.str() << "]";
    }
    return os.str();
}

}  // namespace qjoin
