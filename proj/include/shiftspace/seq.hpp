#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "shiftspace/errors.hpp"

namespace shiftspace {

/// A symbol a_k of the countable alphabet, identified by its 1-based index.
struct Symbol {
    std::uint32_t index{1};

    friend constexpr auto operator<=>(Symbol, Symbol) = default;
};

constexpr Symbol sym(std::uint32_t k) { return Symbol{k}; }

/// A finite word over the alphabet. The empty word is the empty sequence.
using Word = std::vector<Symbol>;

inline Word word(std::initializer_list<std::uint32_t> indices) {
    Word w;
    w.reserve(indices.size());
    for (auto k : indices) w.push_back(Symbol{k});
    return w;
}

inline bool is_prefix(const Word& p, const Word& w) {
    if (p.size() > w.size()) return false;
    return std::equal(p.begin(), p.end(), w.begin());
}

inline Word concat(const Word& a, const Word& b) {
    Word r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

inline std::uint32_t max_symbol_index(const Word& w) {
    std::uint32_t m = 0;
    for (Symbol s : w) m = std::max(m, s.index);
    return m;
}

/// A computable point of the full shift: a finite word or an eventually
/// periodic infinite word pre.per.per..., stored in canonical form so that
/// structural equality coincides with equality of the denoted sequences.
class Seq {
public:
    Seq() = default;

    static Seq finite(Word w) {
        Seq s;
        s.pre_ = std::move(w);
        return s;
    }

    static Seq empty() { return Seq{}; }

    /// pre.per.per... with per nonempty; canonicalizes on construction.
    static Seq eventually_periodic(Word pre, Word per) {
        if (per.empty()) throw error("eventually periodic sequence needs a nonempty period");
        Seq s;
        s.pre_ = std::move(pre);
        s.per_ = std::move(per);
        s.canonicalize();
        return s;
    }

    static Seq periodic(Word per) { return eventually_periodic({}, std::move(per)); }

    bool is_finite() const { return per_.empty(); }
    bool is_infinite() const { return !per_.empty(); }
    bool is_empty() const { return pre_.empty() && per_.empty(); }

    /// l(x); nullopt means infinite.
    std::optional<std::size_t> length() const {
        if (is_infinite()) return std::nullopt;
        return pre_.size();
    }

    /// 1-based entry access; i must satisfy i <= l(x).
    Symbol at(std::size_t i) const {
        if (i == 0) throw out_of_range_error("sequence positions are 1-based");
        if (i <= pre_.size()) return pre_[i - 1];
        if (per_.empty()) throw out_of_range_error("position exceeds sequence length");
        return per_[(i - pre_.size() - 1) % per_.size()];
    }

    const Word& preperiod() const { return pre_; }
    const Word& period() const { return per_; }

    /// First n entries as a word; n must not exceed l(x).
    Word prefix(std::size_t n) const {
        Word w;
        w.reserve(n);
        for (std::size_t i = 1; i <= n; ++i) w.push_back(at(i));
        return w;
    }

    std::uint32_t max_index() const {
        return std::max(max_symbol_index(pre_), max_symbol_index(per_));
    }

    friend bool operator==(const Seq&, const Seq&) = default;
    friend auto operator<=>(const Seq&, const Seq&) = default;

private:
    Word pre_;
    Word per_;  // empty iff the sequence is finite

    void canonicalize() {
        // Reduce the period to its primitive root.
        for (std::size_t d = 1; d <= per_.size() / 2; ++d) {
            if (per_.size() % d != 0) continue;
            bool repeats = true;
            for (std::size_t i = d; i < per_.size() && repeats; ++i)
                repeats = (per_[i] == per_[i - d]);
            if (repeats) {
                per_.resize(d);
                break;
            }
        }
        // Absorb the preperiod tail into the cycle: y.a.(u.a)^w = y.(a.u)^w.
        while (!pre_.empty() && pre_.back() == per_.back()) {
            pre_.pop_back();
            std::rotate(per_.begin(), per_.end() - 1, per_.end());
        }
    }
};

/// The shift map: drops the first entry; sequences of length <= 1 go to the
/// empty sequence.
inline Seq shift(const Seq& x) {
    if (x.is_finite()) {
        const Word& w = x.preperiod();
        if (w.size() <= 1) return Seq::empty();
        return Seq::finite(Word(w.begin() + 1, w.end()));
    }
    Word pre = x.preperiod();
    Word per = x.period();
    if (!pre.empty()) {
        pre.erase(pre.begin());
    } else {
        std::rotate(per.begin(), per.begin() + 1, per.end());
    }
    return Seq::eventually_periodic(std::move(pre), std::move(per));
}

inline Seq shift_n(Seq x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x = shift(x);
    return x;
}

/// Concatenation of a finite word with a sequence; l(xy) = l(x) + l(y).
inline Seq concat(const Word& x, const Seq& y) {
    if (y.is_finite()) return Seq::finite(concat(x, y.preperiod()));
    return Seq::eventually_periodic(concat(x, y.preperiod()), y.period());
}

/// Subblock x_start ... x_{start+len-1}; len = 0 yields the empty word.
inline Word subblock(const Seq& x, std::size_t start, std::size_t len) {
    if (start == 0) throw out_of_range_error("subblock positions are 1-based");
    if (len == 0) return {};
    if (auto l = x.length(); l && start + len - 1 > *l)
        throw out_of_range_error("subblock window exceeds sequence length");
    Word w;
    w.reserve(len);
    for (std::size_t i = start; i < start + len; ++i) w.push_back(x.at(i));
    return w;
}

/// True iff the word is an initial segment of the sequence.
inline bool has_prefix(const Seq& x, const Word& y) {
    if (auto l = x.length(); l && y.size() > *l) return false;
    for (std::size_t i = 0; i < y.size(); ++i)
        if (x.at(i + 1) != y[i]) return false;
    return true;
}

/// A truncated observation of a point of the compactified product space:
/// finitely many entries, each a symbol or the infinity marker, plus a tag
/// saying whether everything beyond the observed entries is the infinity
/// point or simply unobserved.
struct CompactifiedWord {
    enum class Tail { AllInfinity, Truncated };

    std::vector<std::optional<Symbol>> entries;  // nullopt is the infinity marker
    Tail tail{Tail::Truncated};
};

/// The collapse onto sequences: everything before the first infinity marker.
/// Returns nullopt when no marker was observed and the tail is truncated,
/// since the infinite case cannot be decided from a finite observation.
inline std::optional<Seq> quotient_map(const CompactifiedWord& x) {
    Word prefix;
    for (const auto& entry : x.entries) {
        if (!entry) return Seq::finite(std::move(prefix));
        prefix.push_back(*entry);
    }
    if (x.tail == CompactifiedWord::Tail::AllInfinity) return Seq::finite(std::move(prefix));
    return std::nullopt;
}

}  // namespace shiftspace
