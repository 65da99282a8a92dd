#pragma once

#include "qjoin/rational.hpp"
#include "qjoin/rng.hpp"
#include "qjoin/word.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace qjoin {

class Algebra;
class Element;
class Tensor;
using AlgebraPtr = std::shared_ptr<const Algebra>;

struct ReductionOverflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One rewrite rule: a forbidden subword and its normal replacement.
struct RewriteRule {
    Word lhs;
    std::vector<std::pair<Word, ScalarQ>> rhs;
};

/// Costructure data attached to a single generator g: comultiplication as a
/// sum of word pairs, the counit value, and the antipode image.
struct GeneratorMaps {
    std::vector<std::tuple<Word, Word, ScalarQ>> delta;
    ScalarQ counit;
    std::vector<std::pair<Word, ScalarQ>> antipode;
};

struct AlgebraDef {
    std::string id;
    std::vector<std::string> generators;
    std::vector<uint8_t> star;  // involutive pairing g <-> g*
    std::vector<RewriteRule> rules;
    std::optional<std::vector<GeneratorMaps>> hopf;
};

enum class Reduction { Leftmost, Rightmost, Random };

/// Finitely presented *-algebra over Q(q) with a confluent rewriting system
/// selecting normal forms, and (optionally) Hopf structure maps given on the
/// generators. Instances are immutable; elements keep a shared handle to
/// their algebra, and mixing elements of different instances is an error.
class Algebra : public std::enable_shared_from_this<Algebra> {
public:
    static AlgebraPtr make(AlgebraDef def);

    const std::string& id() const { return def_.id; }
    size_t generator_count() const { return def_.generators.size(); }
    const std::string& generator_name(size_t g) const { return def_.generators.at(g); }
    uint8_t star_of(size_t g) const { return def_.star.at(g); }
    const std::vector<RewriteRule>& rules() const { return def_.rules; }
    bool has_hopf() const { return def_.hopf.has_value(); }
    const GeneratorMaps& maps(size_t g) const;
    int generator_index(const std::string& name) const;

    Element zero() const;
    Element one() const;
    Element gen(size_t g) const;
    Element gen(const std::string& name) const;
    Element element(const Word& w, const ScalarQ& c) const;

    /// Rewrite a single scaled word to normal form under the given strategy.
    /// All strategies agree exactly when the rule set is confluent; the
    /// strategy knob exists so that the confluence checks can compare them.
    std::map<Word, ScalarQ> reduce_word(const Word& w, const ScalarQ& c,
                                        Reduction strategy = Reduction::Leftmost,
                                        Rng* rng = nullptr) const;

    std::string word_str(const Word& w) const;
    Word parse_word(const std::string& text) const;

private:
    explicit Algebra(AlgebraDef def) : def_(std::move(def)) {}
    AlgebraDef def_;
};

/// Finite Q(q)-combination of normal-form words. Zero coefficients are never
/// stored, so equality is term-by-term comparison.
class Element {
public:
    Element() = default;
    Element(AlgebraPtr alg, std::map<Word, ScalarQ> terms)
        : alg_(std::move(alg)), terms_(std::move(terms)) {}

    const AlgebraPtr& algebra() const { return alg_; }
    const std::map<Word, ScalarQ>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    /// True when the element is c*1; stores c through `out` if given.
    bool is_scalar(ScalarQ* out = nullptr) const;
    ScalarQ coeff(const Word& w) const;

    Element operator+(const Element& o) const;
    Element operator-(const Element& o) const;
    Element operator-() const;
    Element operator*(const Element& o) const;
    Element scaled(const ScalarQ& c) const;

    Element star() const;
    Tensor comultiply() const;
    ScalarQ counit() const;
    Element antipode() const;

    bool operator==(const Element& o) const;
    std::string str() const;

private:
    AlgebraPtr alg_;
    std::map<Word, ScalarQ> terms_;
    void require_same_algebra(const Element& o) const;
};

inline Element operator*(const ScalarQ& c, const Element& e) { return e.scaled(c); }

/// Element of a tensor product of one, two, or three presented algebras,
/// expanded over pairs/triples of normal-form words. Legs may belong to
/// different algebras; componentwise operations check leg compatibility.
class Tensor {
public:
    using Key = std::vector<Word>;

    Tensor() = default;
    static Tensor zero(std::vector<AlgebraPtr> legs);
    static Tensor unit(std::vector<AlgebraPtr> legs);
    static Tensor simple(const std::vector<Element>& legs, const ScalarQ& c = ScalarQ(1));

    size_t arity() const { return legs_.size(); }
    const std::vector<AlgebraPtr>& leg_algebras() const { return legs_; }
    const std::map<Key, ScalarQ>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Tensor operator+(const Tensor& o) const;
    Tensor operator-(const Tensor& o) const;
    Tensor operator-() const;
    Tensor operator*(const Tensor& o) const;
    Tensor scaled(const ScalarQ& c) const;
    Tensor star() const;

    /// Comultiply leg `leg`, splicing the two output legs in its place.
    Tensor apply_delta(size_t leg) const;
    /// Apply the counit to leg `leg` and drop it (arity must stay >= 1).
    Tensor apply_counit(size_t leg) const;
    Tensor apply_antipode(size_t leg) const;
    /// Multiply legs `leg` and `leg+1` (same algebra) into one leg.
    Tensor multiply_legs(size_t leg) const;
    /// Tensor an extra constant leg at position `pos`.
    Tensor insert_leg(size_t pos, const Element& e) const;

    Element to_element() const;  // arity-1 only
    /// Decompose over the normal-form words of leg `leg`: returns the list of
    /// (word, cofactor tensor) with that leg removed.
    std::vector<std::pair<Word, Tensor>> expand_leg(size_t leg) const;

    bool operator==(const Tensor& o) const;
    std::string str() const;

private:
    std::vector<AlgebraPtr> legs_;
    std::map<Key, ScalarQ> terms_;
    void require_same_shape(const Tensor& o) const;
};

inline Tensor operator*(const ScalarQ& c, const Tensor& t) { return t.scaled(c); }

Tensor make_tensor(const Element& a, const Element& b);
Tensor make_tensor(const Element& a, const Element& b, const Element& c);

struct ConfluenceReport {
    int trials = 0;
    int divergences = 0;
    std::vector<std::string> notes;
    bool ok() const { return divergences == 0; }
};

/// Randomized confluence check: every trial reduces one random word under
/// leftmost, rightmost and randomized redex selection plus a random split
/// of the word into two factors multiplied back together, and all results
/// must coincide. Non-terminating rule sets surface as ReductionOverflow
/// and are reported as divergences, not crashes.
ConfluenceReport normal_form_confluence_check(const AlgebraPtr& alg, int trials, int max_len,
                                              Rng& rng);

/// Deterministic companion check: resolve every overlap of two rule
/// left-hand sides both ways and compare normal forms.
ConfluenceReport local_confluence_check(const AlgebraPtr& alg);

Word random_word(const Algebra& alg, int max_len, Rng& rng);
Element random_element(const AlgebraPtr& alg, int max_terms, int max_len, Rng& rng);

}  // namespace qjoin
