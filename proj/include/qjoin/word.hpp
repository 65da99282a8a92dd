#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace qjoin {

/// Monomial in the generators of a presented algebra: a finite sequence of
/// generator indices. The empty word is the unit. Ordering is degree-first,
/// then lexicographic, which gives every element a canonical term order.
struct Word {
    std::vector<uint8_t> letters;

    Word() = default;
    Word(std::initializer_list<uint8_t> ls) : letters(ls) {}
    explicit Word(std::vector<uint8_t> ls) : letters(std::move(ls)) {}

    size_t size() const { return letters.size(); }
    bool empty() const { return letters.empty(); }

    Word concat(const Word& o) const {
        Word r = *this;
        r.letters.insert(r.letters.end(), o.letters.begin(), o.letters.end());
        return r;
    }

    Word subword(size_t pos, size_t len) const {
        return Word(std::vector<uint8_t>(letters.begin() + pos, letters.begin() + pos + len));
    }

    bool matches_at(const Word& pattern, size_t pos) const {
        if (pos + pattern.size() > size()) return false;
        for (size_t i = 0; i < pattern.size(); ++i)
            if (letters[pos + i] != pattern.letters[i]) return false;
        return true;
    }

    /// Splice `replacement` over the `len` letters at `pos`.
    Word replaced(size_t pos, size_t len, const Word& replacement) const {
        Word r;
        r.letters.reserve(size() - len + replacement.size());
        r.letters.insert(r.letters.end(), letters.begin(), letters.begin() + pos);
        r.letters.insert(r.letters.end(), replacement.letters.begin(), replacement.letters.end());
        r.letters.insert(r.letters.end(), letters.begin() + pos + len, letters.end());
        return r;
    }

    bool operator==(const Word& o) const = default;
    std::strong_ordering operator<=>(const Word& o) const {
        if (auto c = letters.size() <=> o.letters.size(); c != 0) return c;
        for (size_t i = 0; i < letters.size(); ++i)
            if (auto c = letters[i] <=> o.letters[i]; c != 0) return c;
        return std::strong_ordering::equal;
    }
};

}  // namespace qjoin
