#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "shiftspace/errors.hpp"
#include "shiftspace/seq.hpp"

namespace shiftspace {

/// A generalized cylinder: sequences extending `base` whose next entry, when
/// present, avoids `excluded`.
struct CylinderSpec {
    Word base;
    std::set<Symbol> excluded;
};

inline bool cylinder_contains(const CylinderSpec& c, const Seq& x) {
    if (!has_prefix(x, c.base)) return false;
    auto l = x.length();
    if (l && *l == c.base.size()) return true;  // exclusion is vacuous at the endpoint
    return !c.excluded.contains(x.at(c.base.size() + 1));
}

/// Z(x) and Z(y) intersect in the cylinder of whichever word extends the
/// other; nullopt means the intersection is empty.
inline std::optional<Word> cylinder_intersection(const Word& x, const Word& y) {
    if (is_prefix(x, y)) return y;
    if (is_prefix(y, x)) return x;
    return std::nullopt;
}

/// Coordinate of the subset embedding: 1 iff y is an initial segment of x.
inline bool alpha_coordinate(const Seq& x, const Word& y) { return has_prefix(x, y); }

/// Membership in the basic open set carved out by requiring every word of
/// `require` to be a prefix and every word of `forbid` not to be.
inline bool in_basic_open(const Seq& x, const std::set<Word>& require,
                          const std::set<Word>& forbid) {
    for (const Word& w : require)
        if (forbid.contains(w)) throw disjointness_violation("prefix constraint sets overlap");
    for (const Word& w : require)
        if (!has_prefix(x, w)) return false;
    for (const Word& w : forbid)
        if (has_prefix(x, w)) return false;
    return true;
}

/// The canonical enumeration of all finite words, fixed once so that the
/// metric below is well defined. A word lives in shell
/// max(length, largest symbol index); shells are listed in increasing order,
/// and within a shell words are ordered by length, then lexicographically.
/// This starts: (empty), a1, a2, a1.a1, a1.a2, a2.a1, a2.a2, a3, ...
struct WordEnumeration {
    static std::uint32_t shell(const Word& w) {
        return std::max<std::uint32_t>(static_cast<std::uint32_t>(w.size()),
                                       max_symbol_index(w));
    }

    /// Number of words in shells up to and including s. Overflows past
    /// shell 15; indices that large are rejected.
    static std::uint64_t shell_cumulative(std::uint32_t s) {
        if (s > 15) throw error("word enumeration index exceeds the representable range");
        std::uint64_t total = 0;
        std::uint64_t pw = 1;
        for (std::uint32_t k = 0; k <= s; ++k) {
            total += pw;
            pw *= s;
        }
        return total;
    }

    static std::uint64_t index(const Word& w) {
        const std::uint32_t s = shell(w);
        if (s == 0) return 1;
        std::uint64_t idx = shell_cumulative(s - 1);
        const std::size_t k = w.size();
        for (std::size_t j = 1; j < k; ++j) idx += shell_count(s, j);
        // Lexicographic rank among the length-k words of this shell.
        const bool must_contain_s = (k < s);
        bool prefix_has_s = false;
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t rest = k - i - 1;
            for (std::uint32_t d = 1; d < w[i].index; ++d) {
                const bool has_s = prefix_has_s || d == s;
                idx += free_count(s, rest, must_contain_s && !has_s);
            }
            prefix_has_s = prefix_has_s || w[i].index == s;
        }
        return idx + 1;
    }

    static Word word_at(std::uint64_t i) {
        if (i == 0) throw error("word enumeration is 1-based");
        if (i == 1) return {};
        std::uint32_t s = 1;
        while (shell_cumulative(s) < i) ++s;
        std::uint64_t r = i - shell_cumulative(s - 1);  // 1-based rank within shell s
        std::size_t k = 1;
        while (r > shell_count(s, k)) {
            r -= shell_count(s, k);
            ++k;
        }
        Word w;
        bool prefix_has_s = false;
        const bool must_contain_s = (k < s);
        for (std::size_t i_pos = 0; i_pos < k; ++i_pos) {
            const std::size_t rest = k - i_pos - 1;
            for (std::uint32_t d = 1; d <= s; ++d) {
                const bool has_s = prefix_has_s || d == s;
                const std::uint64_t below = free_count(s, rest, must_contain_s && !has_s);
                if (r > below) {
                    r -= below;
                    continue;
                }
                w.push_back(Symbol{d});
                prefix_has_s = has_s;
                break;
            }
        }
        return w;
    }

private:
    // Words of length k belonging to shell s (for 1 <= k <= s).
    static std::uint64_t shell_count(std::uint32_t s, std::size_t k) {
        if (k == s) return ipow(s, k);
        return ipow(s, k) - ipow(s - 1, k);
    }

    // Words of length k over symbols <= s, required to contain s when `need`.
    static std::uint64_t free_count(std::uint32_t s, std::size_t k, bool need) {
        if (!need) return ipow(s, k);
        return ipow(s, k) - ipow(s - 1, k);
    }

    static std::uint64_t ipow(std::uint64_t b, std::size_t e) {
        std::uint64_t r = 1;
        for (std::size_t i = 0; i < e; ++i) r *= b;
        return r;
    }
};

/// A distance value of the form 0 or 1/2^e, kept exact in the exponent.
class Dyadic {
public:
    static Dyadic zero() { return Dyadic{}; }
    static Dyadic half_pow(std::uint64_t e) {
        Dyadic d;
        d.zero_ = false;
        d.exp_ = e;
        return d;
    }

    bool is_zero() const { return zero_; }
    std::uint64_t exponent() const {
        if (zero_) throw error("the zero distance has no exponent");
        return exp_;
    }

    friend bool operator==(const Dyadic&, const Dyadic&) = default;
    friend bool operator<(const Dyadic& a, const Dyadic& b) {
        if (a.zero_) return !b.zero_;
        if (b.zero_) return false;
        return a.exp_ > b.exp_;
    }
    friend bool operator<=(const Dyadic& a, const Dyadic& b) { return a == b || a < b; }
    friend bool operator>(const Dyadic& a, const Dyadic& b) { return b < a; }
    friend bool operator>=(const Dyadic& a, const Dyadic& b) { return b <= a; }

    std::string to_string() const {
        if (zero_) return "0";
        return "1/2^" + std::to_string(exp_);
    }

private:
    bool zero_{true};
    std::uint64_t exp_{0};
};

/// Exact test of a <= b + c for distances of the above shape.
inline bool dyadic_leq_sum(const Dyadic& a, const Dyadic& b, const Dyadic& c) {
    if (a.is_zero()) return true;
    if (b.is_zero() && c.is_zero()) return false;
    if (b.is_zero()) return a <= c;
    if (c.is_zero()) return a <= b;
    const std::uint64_t m = std::min(b.exponent(), c.exponent());
    if (b.exponent() == c.exponent()) return m == 0 || a.exponent() >= m - 1;
    return a.exponent() >= m;
}

inline bool dyadic_ultrametric_ok(const Dyadic& a, const Dyadic& b, const Dyadic& c) {
    return a <= std::max(b, c);
}

namespace detail {

// First position at which the two sequences disagree, counting position
// l+1 when one is a proper initial segment of the other. Requires x != y.
inline std::size_t first_disagreement(const Seq& x, const Seq& y) {
    const auto lx = x.length();
    const auto ly = y.length();
    std::size_t bound;
    if (lx && ly) {
        bound = std::max(*lx, *ly) + 1;
    } else if (lx || ly) {
        bound = (lx ? *lx : *ly) + 1;
    } else {
        const std::size_t px = x.preperiod().size(), py = y.preperiod().size();
        bound = std::max(px, py) + std::lcm(x.period().size(), y.period().size());
    }
    for (std::size_t i = 1; i <= bound; ++i) {
        const bool in_x = !lx || i <= *lx;
        const bool in_y = !ly || i <= *ly;
        if (in_x != in_y) return i;
        if (in_x && in_y && x.at(i) != y.at(i)) return i;
    }
    throw error("sequences compare equal but were expected to differ");
}

}  // namespace detail

/// The cylinder metric pulled back through the canonical word enumeration:
/// 1/2^i where p_i is the first enumerated word prefixing exactly one of the
/// two sequences.
inline Dyadic cylinder_metric(const Seq& x, const Seq& y) {
    if (x == y) return Dyadic::zero();
    const std::size_t k = detail::first_disagreement(x, y);
    const auto lx = x.length();
    const auto ly = y.length();

    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    // Every distinguishing word is a prefix of x or of y of length >= k, and
    // a candidate of length j has index above shell_cumulative(j-1), so the
    // scan over lengths stops quickly.
    for (std::size_t j = k;; ++j) {
        if (j - 1 > 15 || WordEnumeration::shell_cumulative(static_cast<std::uint32_t>(j - 1)) >=
                              best)
            break;
        if (!lx || j <= *lx) best = std::min(best, WordEnumeration::index(x.prefix(j)));
        if (!ly || j <= *ly) best = std::min(best, WordEnumeration::index(y.prefix(j)));
    }
    if (best == std::numeric_limits<std::uint64_t>::max())
        throw error("word enumeration index exceeds the representable range");
    return Dyadic::half_pow(best);
}

/// 1/2^n at the first entry where two infinite sequences disagree.
inline Dyadic boundedness_metric(const Seq& x, const Seq& y) {
    if (!x.is_infinite() || !y.is_infinite())
        throw not_infinite_error("the boundedness metric is defined on infinite sequences only");
    if (x == y) return Dyadic::zero();
    return Dyadic::half_pow(detail::first_disagreement(x, y));
}

/// Bounded verification of sequential convergence toward x: checks that the
/// appropriate convergence condition holds on a final segment of the family.
/// For an infinite limit the condition is agreement on entries 1..depth_m;
/// for a finite limit it is the extension condition with next symbol outside
/// test_f (vacuous when lengths match). This is a verifier over the given
/// finite family, not a limit decision procedure.
inline bool check_convergence(const std::vector<Seq>& family, const Seq& x,
                              std::size_t depth_m, const std::set<Symbol>& test_f) {
    if (family.empty()) throw error("convergence check needs a nonempty family");
    auto ok = [&](const Seq& xn) {
        if (x.is_infinite()) {
            if (auto l = xn.length(); l && *l < depth_m) return false;
            for (std::size_t i = 1; i <= depth_m; ++i)
                if (xn.at(i) != x.at(i)) return false;
            return true;
        }
        const std::size_t lx = *x.length();
        const auto ln = xn.length();
        if (ln && *ln < lx) return false;
        for (std::size_t i = 1; i <= lx; ++i)
            if (xn.at(i) != x.at(i)) return false;
        if (ln && *ln == lx) return true;
        return !test_f.contains(xn.at(lx + 1));
    };
    std::size_t last_failure = 0;
    for (std::size_t n = 1; n <= family.size(); ++n)
        if (!ok(family[n - 1])) last_failure = n;
    return last_failure < family.size();
}

}  // namespace shiftspace
