#include "qjoin/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace qjoin {

namespace {

constexpr size_t kMaxWordLen = 512;
constexpr uint64_t kMaxReductionSteps = 4'000'000;

void add_term(std::map<Word, ScalarQ>& m, const Word& w, const ScalarQ& c) {
    if (c.is_zero()) return;
    auto it = m.find(w);
    if (it == m.end()) {
        m.emplace(w, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) m.erase(it);
}

void add_term(std::map<Tensor::Key, ScalarQ>& m, const Tensor::Key& k, const ScalarQ& c) {
    if (c.is_zero()) return;
    auto it = m.find(k);
    if (it == m.end()) {
        m.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) m.erase(it);
}

}  // namespace

AlgebraPtr Algebra::make(AlgebraDef def) {
    const size_t n = def.generators.size();
    if (n == 0) throw std::invalid_argument("Algebra: no generators");
    if (n > 200) throw std::invalid_argument("Algebra: too many generators");
    if (def.star.size() != n) throw std::invalid_argument("Algebra: star table size mismatch");
    for (size_t g = 0; g < n; ++g) {
        uint8_t s = def.star[g];
        if (s >= n || def.star[s] != g)
            throw std::invalid_argument("Algebra: star pairing is not an involution");
    }
    auto check_word = [&](const Word& w) {
        for (uint8_t l : w.letters)
            if (l >= n) throw std::invalid_argument("Algebra: word uses unknown generator");
    };
    for (const auto& rule : def.rules) {
        if (rule.lhs.empty()) throw std::invalid_argument("Algebra: empty rule left-hand side");
        check_word(rule.lhs);
        for (const auto& [w, c] : rule.rhs) {
            check_word(w);
            (void)c;
        }
    }
    if (def.hopf) {
        if (def.hopf->size() != n)
            throw std::invalid_argument("Algebra: Hopf data size mismatch");
        for (const auto& gm : *def.hopf) {
            for (const auto& [w1, w2, c] : gm.delta) {
                check_word(w1);
                check_word(w2);
                (void)c;
            }
            for (const auto& [w, c] : gm.antipode) {
                check_word(w);
                (void)c;
            }
        }
    }
    return AlgebraPtr(new Algebra(std::move(def)));
}

const GeneratorMaps& Algebra::maps(size_t g) const {
    if (!def_.hopf) throw std::logic_error("Algebra '" + def_.id + "' has no Hopf structure");
    return def_.hopf->at(g);
}

int Algebra::generator_index(const std::string& name) const {
    for (size_t g = 0; g < def_.generators.size(); ++g)
        if (def_.generators[g] == name) return static_cast<int>(g);
    return -1;
}

Element Algebra::zero() const {
    return Element(shared_from_this(), {});
}

Element Algebra::one() const {
    return element(Word{}, ScalarQ(1));
}

Element Algebra::gen(size_t g) const {
    if (g >= generator_count()) throw std::invalid_argument("Algebra: generator out of range");
    return element(Word{static_cast<uint8_t>(g)}, ScalarQ(1));
}

Element Algebra::gen(const std::string& name) const {
    int g = generator_index(name);
    if (g < 0) throw std::invalid_argument("Algebra '" + def_.id + "': no generator " + name);
    return gen(static_cast<size_t>(g));
}

Element Algebra::element(const Word& w, const ScalarQ& c) const {
    return Element(shared_from_this(), reduce_word(w, c));
}

std::map<Word, ScalarQ> Algebra::reduce_word(const Word& w, const ScalarQ& c, Reduction strategy,
                                             Rng* rng) const {
    std::map<Word, ScalarQ> done;
    if (c.is_zero()) return done;
    std::vector<std::pair<Word, ScalarQ>> pending;
    pending.emplace_back(w, c);
    uint64_t steps = 0;
    while (!pending.empty()) {
        auto [word, coeff] = std::move(pending.back());
        pending.pop_back();
        if (++steps > kMaxReductionSteps)
            throw ReductionOverflow("reduction step budget exhausted in algebra '" + def_.id +
                                    "'");
        if (word.size() > kMaxWordLen)
            throw ReductionOverflow("reduction produced an oversized word in algebra '" +
                                    def_.id + "'");
        // Collect matches as (position, rule) pairs, then pick per strategy.
        size_t chosen_pos = 0, chosen_rule = 0;
        bool found = false;
        if (strategy == Reduction::Random && rng != nullptr) {
            std::vector<std::pair<size_t, size_t>> matches;
            for (size_t pos = 0; pos < word.size(); ++pos)
                for (size_t r = 0; r < def_.rules.size(); ++r)
                    if (word.matches_at(def_.rules[r].lhs, pos)) matches.emplace_back(pos, r);
            if (!matches.empty()) {
                auto [p, r] = matches[rng->below(matches.size())];
                chosen_pos = p;
                chosen_rule = r;
                found = true;
            }
        } else if (strategy == Reduction::Rightmost) {
            for (size_t pos = word.size(); pos-- > 0 && !found;)
                for (size_t r = 0; r < def_.rules.size(); ++r)
                    if (word.matches_at(def_.rules[r].lhs, pos)) {
                        chosen_pos = pos;
                        chosen_rule = r;
                        found = true;
                        break;
                    }
        } else {
            for (size_t pos = 0; pos < word.size() && !found; ++pos)
                for (size_t r = 0; r < def_.rules.size(); ++r)
                    if (word.matches_at(def_.rules[r].lhs, pos)) {
                        chosen_pos = pos;
                        chosen_rule = r;
                        found = true;
                        break;
                    }
        }
        if (!found) {
            add_term(done, word, coeff);
            continue;
        }
        const RewriteRule& rule = def_.rules[chosen_rule];
        for (const auto& [rw, rc] : rule.rhs) {
            pending.emplace_back(word.replaced(chosen_pos, rule.lhs.size(), rw), coeff * rc);
        }
    }
    return done;
}

std::string Algebra::word_str(const Word& w) const {
    if (w.empty()) return "1";
    std::string out;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) out += ".";
        out += generator_name(w.letters[i]);
    }
    return out;
}

Word Algebra::parse_word(const std::string& text) const {
    if (text == "1") return Word{};
    Word w;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t dot = text.find('.', pos);
        std::string name =
            dot == std::string::npos ? text.substr(pos) : text.substr(pos, dot - pos);
        int g = generator_index(name);
        if (g < 0) throw std::invalid_argument("unknown generator '" + name + "' in word");
        w.letters.push_back(static_cast<uint8_t>(g));
        if (dot == std::string::npos) break;
        pos = dot + 1;
    }
    return w;
}

// ---------------------------------------------------------------------------
// Element

void Element::require_same_algebra(const Element& o) const {
    if (alg_ != o.alg_) {
        std::string a = alg_ ? alg_->id() : "<none>";
        std::string b = o.alg_ ? o.alg_->id() : "<none>";
        throw std::invalid_argument("algebra mismatch: '" + a + "' vs '" + b + "'");
    }
}

bool Element::is_scalar(ScalarQ* out) const {
    if (terms_.empty()) {
        if (out) *out = ScalarQ();
        return true;
    }
    if (terms_.size() == 1 && terms_.begin()->first.empty()) {
        if (out) *out = terms_.begin()->second;
        return true;
    }
    return false;
}

ScalarQ Element::coeff(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? ScalarQ() : it->second;
}

Element Element::operator+(const Element& o) const {
    if (!alg_) return o;
    if (!o.alg_) return *this;
    require_same_algebra(o);
    std::map<Word, ScalarQ> r = terms_;
    for (const auto& [w, c] : o.terms_) add_term(r, w, c);
    return Element(alg_, std::move(r));
}

Element Element::operator-(const Element& o) const {
    return *this + (-o);
}

Element Element::operator-() const {
    std::map<Word, ScalarQ> r;
    for (const auto& [w, c] : terms_) r.emplace(w, -c);
    return Element(alg_, std::move(r));
}

Element Element::operator*(const Element& o) const {
    require_same_algebra(o);
    std::map<Word, ScalarQ> r;
    for (const auto& [w1, c1] : terms_)
        for (const auto& [w2, c2] : o.terms_) {
            auto reduced = alg_->reduce_word(w1.concat(w2), c1 * c2);
            for (const auto& [w, c] : reduced) add_term(r, w, c);
        }
    return Element(alg_, std::move(r));
}

Element Element::scaled(const ScalarQ& c) const {
    if (c.is_zero()) return Element(alg_, {});
    std::map<Word, ScalarQ> r;
    for (const auto& [w, x] : terms_) r.emplace(w, x * c);
    return Element(alg_, std::move(r));
}

Element Element::star() const {
    // The involution reverses words, stars every letter, and fixes scalars
    // (q is formally real, and all coefficients live in Q(q)).
    std::map<Word, ScalarQ> r;
    for (const auto& [w, c] : terms_) {
        Word sw;
        sw.letters.reserve(w.size());
        for (size_t i = w.size(); i-- > 0;) sw.letters.push_back(alg_->star_of(w.letters[i]));
        for (const auto& [nw, nc] : alg_->reduce_word(sw, c)) add_term(r, nw, nc);
    }
    return Element(alg_, std::move(r));
}

Tensor Element::comultiply() const {
    if (!alg_) throw std::logic_error("comultiply on null element");
    Tensor result = Tensor::zero({alg_, alg_});
    for (const auto& [w, c] : terms_) {
        Tensor t = Tensor::unit({alg_, alg_}).scaled(c);
        for (uint8_t g : w.letters) {
            Tensor dg = Tensor::zero({alg_, alg_});
            for (const auto& [w1, w2, dc] : alg_->maps(g).delta)
                dg = dg + Tensor::simple({alg_->element(w1, ScalarQ(1)),
                                          alg_->element(w2, ScalarQ(1))},
                                         dc);
            t = t * dg;
        }
        result = result + t;
    }
    return result;
}

ScalarQ Element::counit() const {
    ScalarQ acc;
    for (const auto& [w, c] : terms_) {
        ScalarQ v = c;
        for (uint8_t g : w.letters) v *= alg_->maps(g).counit;
        acc += v;
    }
    return acc;
}

Element Element::antipode() const {
    // Anti-homomorphism: images of the letters multiply in reverse order.
    Element acc = alg_->zero();
    for (const auto& [w, c] : terms_) {
        Element prod = alg_->one().scaled(c);
        for (size_t i = w.size(); i-- > 0;) {
            const auto& img = alg_->maps(w.letters[i]).antipode;
            Element factor = alg_->zero();
            for (const auto& [iw, ic] : img) factor = factor + alg_->element(iw, ic);
            prod = prod * factor;
        }
        acc = acc + prod;
    }
    return acc;
}

bool Element::operator==(const Element& o) const {
    if (alg_ != o.alg_) return false;
    return terms_ == o.terms_;
}

std::string Element::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        if (!first) out << " + ";
        out << "(" << c.str() << ")*" << alg_->word_str(w);
        first = false;
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Tensor

Tensor Tensor::zero(std::vector<AlgebraPtr> legs) {
    if (legs.empty() || legs.size() > 4) throw std::invalid_argument("Tensor: arity must be 1..4");
    Tensor t;
    t.legs_ = std::move(legs);
    return t;
}

Tensor Tensor::unit(std::vector<AlgebraPtr> legs) {
    Tensor t = zero(std::move(legs));
    t.terms_.emplace(Key(t.legs_.size(), Word{}), ScalarQ(1));
    return t;
}

Tensor Tensor::simple(const std::vector<Element>& legs, const ScalarQ& c) {
    if (legs.empty() || legs.size() > 4) throw std::invalid_argument("Tensor: arity must be 1..4");
    std::vector<AlgebraPtr> algs;
    for (const auto& e : legs) {
        if (!e.algebra()) throw std::invalid_argument("Tensor: leg without algebra");
        algs.push_back(e.algebra());
    }
    Tensor t = zero(std::move(algs));
    // Cartesian expansion of the leg terms.
    std::vector<std::pair<Key, ScalarQ>> acc{{Key{}, c}};
    for (const auto& e : legs) {
        std::vector<std::pair<Key, ScalarQ>> next;
        for (const auto& [k, kc] : acc)
            for (const auto& [w, wc] : e.terms()) {
                Key nk = k;
                nk.push_back(w);
                next.emplace_back(std::move(nk), kc * wc);
            }
        acc = std::move(next);
    }
    for (auto& [k, kc] : acc) add_term(t.terms_, k, kc);
    return t;
}

void Tensor::require_same_shape(const Tensor& o) const {
    if (legs_ != o.legs_) throw std::invalid_argument("tensor legs mismatch");
}

Tensor Tensor::operator+(const Tensor& o) const {
    if (legs_.empty()) return o;
    if (o.legs_.empty()) return *this;
    require_same_shape(o);
    Tensor r = *this;
    for (const auto& [k, c] : o.terms_) add_term(r.terms_, k, c);
    return r;
}

Tensor Tensor::operator-(const Tensor& o) const {
    return *this + (-o);
}

Tensor Tensor::operator-() const {
    Tensor r = *this;
    for (auto& [k, c] : r.terms_) c = -c;
    return r;
}

Tensor Tensor::operator*(const Tensor& o) const {
    require_same_shape(o);
    Tensor r = zero(legs_);
    const size_t n = legs_.size();
    for (const auto& [k1, c1] : terms_)
        for (const auto& [k2, c2] : o.terms_) {
            // Componentwise products, each expanded back to normal form.
            std::vector<std::pair<Key, ScalarQ>> acc{{Key{}, c1 * c2}};
            for (size_t leg = 0; leg < n; ++leg) {
                auto reduced = legs_[leg]->reduce_word(k1[leg].concat(k2[leg]), ScalarQ(1));
                std::vector<std::pair<Key, ScalarQ>> next;
                for (const auto& [k, kc] : acc)
                    for (const auto& [w, wc] : reduced) {
                        Key nk = k;
                        nk.push_back(w);
                        next.emplace_back(std::move(nk), kc * wc);
                    }
                acc = std::move(next);
            }
            for (auto& [k, kc] : acc) add_term(r.terms_, k, kc);
        }
    return r;
}

Tensor Tensor::scaled(const ScalarQ& c) const {
    Tensor r = zero(legs_);
    if (c.is_zero()) return r;
    for (const auto& [k, x] : terms_) r.terms_.emplace(k, x * c);
    return r;
}

Tensor Tensor::star() const {
    Tensor r = zero(legs_);
    for (const auto& [k, c] : terms_) {
        std::vector<Element> legs;
        for (size_t leg = 0; leg < legs_.size(); ++leg)
            legs.push_back(legs_[leg]->element(k[leg], ScalarQ(1)).star());
        r = r + simple(legs, c);
    }
    return r;
}

Tensor Tensor::apply_delta(size_t leg) const {
    if (leg >= legs_.size()) throw std::invalid_argument("apply_delta: no such leg");
    if (legs_.size() >= 4) throw std::invalid_argument("apply_delta: arity limit");
    std::vector<AlgebraPtr> new_legs = legs_;
    new_legs.insert(new_legs.begin() + leg + 1, legs_[leg]);
    Tensor r = zero(new_legs);
    for (const auto& [k, c] : terms_) {
        Tensor dw = zero({legs_[leg], legs_[leg]});
        {
            Tensor t = unit({legs_[leg], legs_[leg]});
            for (uint8_t g : k[leg].letters) {
                Tensor dg = zero({legs_[leg], legs_[leg]});
                for (const auto& [w1, w2, dc] : legs_[leg]->maps(g).delta)
                    dg = dg + simple({legs_[leg]->element(w1, ScalarQ(1)),
                                      legs_[leg]->element(w2, ScalarQ(1))},
                                     dc);
                t = t * dg;
            }
            dw = t;
        }
        for (const auto& [dk, dc] : dw.terms()) {
            Key nk = k;
            nk[leg] = dk[0];
            nk.insert(nk.begin() + leg + 1, dk[1]);
            add_term(r.terms_, nk, c * dc);
        }
    }
    return r;
}

Tensor Tensor::apply_counit(size_t leg) const {
    if (leg >= legs_.size()) throw std::invalid_argument("apply_counit: no such leg");
    if (legs_.size() == 1) throw std::invalid_argument("apply_counit: would drop the last leg");
    std::vector<AlgebraPtr> new_legs = legs_;
    new_legs.erase(new_legs.begin() + leg);
    Tensor r = zero(new_legs);
    for (const auto& [k, c] : terms_) {
        ScalarQ v = c;
        for (uint8_t g : k[leg].letters) v *= legs_[leg]->maps(g).counit;
        Key nk = k;
        nk.erase(nk.begin() + leg);
        add_term(r.terms_, nk, v);
    }
    return r;
}

Tensor Tensor::apply_antipode(size_t leg) const {
    if (leg >= legs_.size()) throw std::invalid_argument("apply_antipode: no such leg");
    Tensor r = zero(legs_);
    for (const auto& [k, c] : terms_) {
        Element img = legs_[leg]->element(k[leg], ScalarQ(1)).antipode();
        for (const auto& [w, wc] : img.terms()) {
            Key nk = k;
            nk[leg] = w;
            add_term(r.terms_, nk, c * wc);
        }
    }
    return r;
}

Tensor Tensor::multiply_legs(size_t leg) const {
    if (leg + 1 >= legs_.size()) throw std::invalid_argument("multiply_legs: no adjacent leg");
    if (legs_[leg] != legs_[leg + 1])
        throw std::invalid_argument("multiply_legs: adjacent legs in different algebras");
    std::vector<AlgebraPtr> new_legs = legs_;
    new_legs.erase(new_legs.begin() + leg + 1);
    Tensor r = zero(new_legs);
    for (const auto& [k, c] : terms_) {
        auto reduced = legs_[leg]->reduce_word(k[leg].concat(k[leg + 1]), c);
        for (const auto& [w, wc] : reduced) {
            Key nk = k;
            nk[leg] = w;
            nk.erase(nk.begin() + leg + 1);
            add_term(r.terms_, nk, wc);
        }
    }
    return r;
}

Tensor Tensor::insert_leg(size_t pos, const Element& e) const {
    if (pos > legs_.size()) throw std::invalid_argument("insert_leg: position out of range");
    if (!e.algebra()) throw std::invalid_argument("insert_leg: element without algebra");
    std::vector<AlgebraPtr> new_legs = legs_;
    new_legs.insert(new_legs.begin() + pos, e.algebra());
    Tensor r = zero(new_legs);
    for (const auto& [k, c] : terms_)
        for (const auto& [w, wc] : e.terms()) {
            Key nk = k;
            nk.insert(nk.begin() + pos, w);
            add_term(r.terms_, nk, c * wc);
        }
    return r;
}

Element Tensor::to_element() const {
    if (legs_.size() != 1) throw std::invalid_argument("to_element: arity is not 1");
    std::map<Word, ScalarQ> terms;
    for (const auto& [k, c] : terms_) terms.emplace(k[0], c);
    return Element(legs_[0], std::move(terms));
}

std::vector<std::pair<Word, Tensor>> Tensor::expand_leg(size_t leg) const {
    if (leg >= legs_.size()) throw std::invalid_argument("expand_leg: no such leg");
    if (legs_.size() == 1) throw std::invalid_argument("expand_leg: arity is not >= 2");
    std::vector<AlgebraPtr> rest_legs = legs_;
    rest_legs.erase(rest_legs.begin() + leg);
    std::map<Word, Tensor> groups;
    for (const auto& [k, c] : terms_) {
        Key nk = k;
        Word w = nk[leg];
        nk.erase(nk.begin() + leg);
        auto it = groups.find(w);
        if (it == groups.end()) it = groups.emplace(w, zero(rest_legs)).first;
        add_term(it->second.terms_, nk, c);
    }
    std::vector<std::pair<Word, Tensor>> out;
    for (auto& [w, t] : groups) out.emplace_back(w, std::move(t));
    return out;
}

bool Tensor::operator==(const Tensor& o) const {
    if (legs_.empty() && o.legs_.empty()) return true;
    if (legs_.empty()) return o.terms_.empty();
    if (o.legs_.empty()) return terms_.empty();
    return legs_ == o.legs_ && terms_ == o.terms_;
}

std::string Tensor::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) out << " + ";
        out << "(" << c.str() << ")*";
        for (size_t leg = 0; leg < k.size(); ++leg) {
            if (leg) out << "(x)";
            out << legs_[leg]->word_str(k[leg]);
        }
        first = false;
    }
    return out.str();
}

Tensor make_tensor(const Element& a, const Element& b) {
    return Tensor::simple({a, b});
}

Tensor make_tensor(const Element& a, const Element& b, const Element& c) {
    return Tensor::simple({a, b, c});
}

// ---------------------------------------------------------------------------
// Confluence checks

namespace {

std::map<Word, ScalarQ> normalize_terms(const Algebra& alg,
                                        const std::vector<std::pair<Word, ScalarQ>>& raw) {
    std::map<Word, ScalarQ> out;
    for (const auto& [w, c] : raw)
        for (const auto& [nw, nc] : alg.reduce_word(w, c)) add_term(out, nw, nc);
    return out;
}

}  // namespace

ConfluenceReport normal_form_confluence_check(const AlgebraPtr& alg, int trials, int max_len,
                                              Rng& rng) {
    ConfluenceReport report;
    report.trials = trials;
    for (int trial = 0; trial < trials; ++trial) {
        Word w = random_word(*alg, max_len, rng);
        std::vector<std::map<Word, ScalarQ>> results;
        bool diverged = false;
        std::string note;
        try {
            results.push_back(alg->reduce_word(w, ScalarQ(1), Reduction::Leftmost));
            results.push_back(alg->reduce_word(w, ScalarQ(1), Reduction::Rightmost));
            results.push_back(alg->reduce_word(w, ScalarQ(1), Reduction::Random, &rng));
            // Random split: reduce the two halves first, then remultiply.
            size_t cut = w.empty() ? 0 : rng.below(w.size() + 1);
            Element left(alg, alg->reduce_word(w.subword(0, cut), ScalarQ(1)));
            Element right(alg, alg->reduce_word(w.subword(cut, w.size() - cut), ScalarQ(1)));
            results.push_back((left * right).terms());
        } catch (const ReductionOverflow& e) {
            diverged = true;
            note = std::string("non-termination: ") + e.what();
        }
        if (!diverged) {
            for (size_t i = 1; i < results.size(); ++i)
                if (results[i] != results[0]) {
                    diverged = true;
                    note = "strategies disagree on word " + alg->word_str(w);
                    break;
                }
        }
        if (diverged) {
            ++report.divergences;
            if (report.notes.size() < 8) report.notes.push_back(note);
        }
    }
    return report;
}

ConfluenceReport local_confluence_check(const AlgebraPtr& alg) {
    ConfluenceReport report;
    const auto& rules = alg->rules();
    for (size_t r1 = 0; r1 < rules.size(); ++r1) {
        for (size_t r2 = 0; r2 < rules.size(); ++r2) {
            const Word& l1 = rules[r1].lhs;
            const Word& l2 = rules[r2].lhs;
            // Overlap words: l1 and l2 share a nonempty boundary, or l2 sits
            // inside l1. Each overlap is resolved both ways.
            std::vector<std::pair<Word, size_t>> overlaps;  // word, offset of l2
            for (size_t k = 1; k < std::min(l1.size(), l2.size()); ++k) {
                bool match = true;
                for (size_t i = 0; i < k; ++i)
                    if (l1.letters[l1.size() - k + i] != l2.letters[i]) {
                        match = false;
                        break;
                    }
                if (match) {
                    Word w = l1;
                    for (size_t i = k; i < l2.size(); ++i) w.letters.push_back(l2.letters[i]);
                    overlaps.emplace_back(w, l1.size() - k);
                }
            }
            if (r1 != r2 && l2.size() < l1.size()) {
                for (size_t pos = 0; pos + l2.size() <= l1.size(); ++pos)
                    if (l1.matches_at(l2, pos)) overlaps.emplace_back(l1, pos);
            }
            for (auto& [w, off] : overlaps) {
                ++report.trials;
                std::vector<std::pair<Word, ScalarQ>> branch1, branch2;
                for (const auto& [rw, rc] : rules[r1].rhs)
                    branch1.emplace_back(w.replaced(0, l1.size(), rw), rc);
                for (const auto& [rw, rc] : rules[r2].rhs)
                    branch2.emplace_back(w.replaced(off, l2.size(), rw), rc);
                try {
                    if (normalize_terms(*alg, branch1) != normalize_terms(*alg, branch2)) {
                        ++report.divergences;
                        if (report.notes.size() < 8)
                            report.notes.push_back("critical pair fails on " + alg->word_str(w));
                    }
                } catch (const ReductionOverflow& e) {
                    ++report.divergences;
                    if (report.notes.size() < 8) report.notes.push_back(e.what());
                }
            }
        }
    }
    return report;
}

Word random_word(const Algebra& alg, int max_len, Rng& rng) {
    int len = rng.range(1, std::max(1, max_len));
    Word w;
    w.letters.reserve(static_cast<size_t>(len));
    for (int i = 0; i < len; ++i)
        w.letters.push_back(static_cast<uint8_t>(rng.below(alg.generator_count())));
    return w;
}

Element random_element(const AlgebraPtr& alg, int max_terms, int max_len, Rng& rng) {
    // Coefficients come from a fixed pool of simple scalars; products and
    // sums during the checks grow them into generic fractions quickly.
    static const auto pool = [] {
        std::vector<ScalarQ> p;
        p.push_back(ScalarQ(1));
        p.push_back(ScalarQ(-1));
        p.push_back(ScalarQ(2));
        p.push_back(ScalarQ::q_power(1));
        p.push_back(ScalarQ::q_power(-1));
        p.push_back(ScalarQ(1) - ScalarQ::q_power(1));
        p.push_back(ScalarQ::q_power(2));
        return p;
    }();
    Element acc = alg->zero();
    int nterms = rng.range(1, std::max(1, max_terms));
    for (int i = 0; i < nterms; ++i) {
        Word w;
        int len = rng.range(0, std::max(0, max_len));
        for (int j = 0; j < len; ++j)
            w.letters.push_back(static_cast<uint8_t>(rng.below(alg->generator_count())));
        acc = acc + alg->element(w, pool[rng.below(pool.size())]);
    }
    return acc;
}

}  // namespace qjoin
