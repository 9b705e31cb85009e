#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "shiftspace/errors.hpp"
#include "shiftspace/seq.hpp"
#include "shiftspace/spaces.hpp"
#include "shiftspace/topology.hpp"

namespace shiftspace {

/// A window map: words of one fixed length to symbols. Windows outside the
/// table are rejected.
struct BlockMap {
    std::uint32_t window{1};
    std::map<Word, Symbol> table;
};

inline void validate_block_map(const BlockMap& m) {
    for (const auto& [w, s] : m.table) {
        (void)s;
        if (w.size() != m.window)
            throw error("block map key does not match the declared window length");
    }
}

/// A sliding block code: one window map applied at every position (bounded),
/// or a per-symbol family where the window length may depend on the first
/// symbol of the window (unbounded).
class SlidingBlockCode {
public:
    static SlidingBlockCode bounded(BlockMap m) {
        validate_block_map(m);
        SlidingBlockCode c;
        c.impl_ = std::move(m);
        return c;
    }

    static SlidingBlockCode unbounded(std::map<Symbol, BlockMap> family) {
        for (const auto& [a, m] : family) {
            validate_block_map(m);
            for (const auto& [w, s] : m.table) {
                (void)s;
                if (w.empty() || w.front() != a)
                    throw error("family window maps must key on their own leading symbol");
            }
        }
        SlidingBlockCode c;
        c.impl_ = std::move(family);
        return c;
    }

    static SlidingBlockCode identity(std::uint32_t alphabet) {
        BlockMap m;
        m.window = 1;
        for (std::uint32_t a = 1; a <= alphabet; ++a) m.table[word({a})] = Symbol{a};
        return bounded(std::move(m));
    }

    bool is_bounded() const { return std::holds_alternative<BlockMap>(impl_); }

    const BlockMap& block_map() const {
        if (!is_bounded()) throw error("an unbounded code has no single block map");
        return std::get<BlockMap>(impl_);
    }

    const std::map<Symbol, BlockMap>& family() const {
        return std::get<std::map<Symbol, BlockMap>>(impl_);
    }

    /// n(a): the window length used when the window starts with `a`.
    std::uint32_t window_at(Symbol a, std::size_t position) const {
        if (is_bounded()) return std::get<BlockMap>(impl_).window;
        auto it = family().find(a);
        if (it == family().end()) throw window_not_in_domain_error(position);
        return it->second.window;
    }

    std::uint32_t max_window() const {
        if (is_bounded()) return std::get<BlockMap>(impl_).window;
        std::uint32_t m = 0;
        for (const auto& [a, bm] : family()) {
            (void)a;
            m = std::max(m, bm.window);
        }
        return m;
    }

    Symbol map_window(const Word& w, std::size_t position) const {
        const std::map<Word, Symbol>* table;
        if (is_bounded()) {
            table = &std::get<BlockMap>(impl_).table;
        } else {
            auto it = family().find(w.front());
            if (it == family().end()) throw window_not_in_domain_error(position);
            table = &it->second.table;
        }
        auto it = table->find(w);
        if (it == table->end()) throw window_not_in_domain_error(position);
        return it->second;
    }

private:
    std::variant<BlockMap, std::map<Symbol, BlockMap>> impl_;
};

/// Applies the code to a computable sequence. The empty sequence maps to
/// itself; nonzero finite sequences are rejected, as the window action is
/// not defined past the end of a sequence.
inline Seq apply(const SlidingBlockCode& c, const Seq& x) {
    if (x.is_empty()) return Seq::empty();
    if (x.is_finite())
        throw finite_input_unsupported_error(
            "sliding block codes act on infinite sequences and the empty sequence");
    const std::size_t p = x.preperiod().size();
    const std::size_t q = x.period().size();
    Word out_pre, out_per;
    for (std::size_t i = 1; i <= p + q; ++i) {
        const std::uint32_t n = c.window_at(x.at(i), i);
        const Word w = subblock(x, i, n);
        (i <= p ? out_pre : out_per).push_back(c.map_window(w, i));
    }
    return Seq::eventually_periodic(std::move(out_pre), std::move(out_per));
}

/// Window action on a finite word, defined only when every window fits
/// inside the word. This is the action used on finite boundary paths.
inline Word apply_to_finite(const SlidingBlockCode& c, const Word& x) {
    Word out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const std::uint32_t n = c.window_at(x[i], i + 1);
        if (i + n > x.size())
            throw finite_input_unsupported_error(
                "a window extends past the end of the finite input");
        out.push_back(c.map_window(Word(x.begin() + static_cast<std::ptrdiff_t>(i),
                                        x.begin() + static_cast<std::ptrdiff_t>(i + n)),
                                   i + 1));
    }
    return out;
}

/// The image of a block under the code: window values at every position
/// where the window still fits. Returns the (possibly empty) image word.
inline Word map_block(const SlidingBlockCode& c, const Word& u) {
    Word out;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const std::uint32_t n = c.window_at(u[i], i + 1);
        if (i + n > u.size()) break;
        out.push_back(c.map_window(Word(u.begin() + static_cast<std::ptrdiff_t>(i),
                                        u.begin() + static_cast<std::ptrdiff_t>(i + n)),
                                   i + 1));
    }
    return out;
}

/// Composition psi after phi of bounded codes: an (M+N-1)-block code whose
/// window value is psi applied to the word of phi-values across the window.
/// The composite acts on length M+N-1 blocks of the source space; pass that
/// block set as `domain` when it is narrower than the combinatorial closure
/// of phi's keys.
inline SlidingBlockCode compose(const SlidingBlockCode& phi, const SlidingBlockCode& psi,
                                const std::optional<std::set<Word>>& domain = std::nullopt) {
    if (!phi.is_bounded() || !psi.is_bounded())
        throw error("composition is provided for bounded codes");
    const std::uint32_t m = phi.block_map().window;
    const std::uint32_t n = psi.block_map().window;
    BlockMap delta;
    delta.window = m + n - 1;
    std::vector<Word> candidates;
    if (domain) {
        for (const Word& w : *domain) {
            if (w.size() != delta.window)
                throw error("domain words must have length M+N-1");
            candidates.push_back(w);
        }
    } else {
        // Chain keys of phi into all words whose every M-window is in phi's
        // domain.
        std::set<Symbol> alphabet;
        for (const auto& [w, s] : phi.block_map().table) {
            (void)s;
            for (Symbol a : w) alphabet.insert(a);
        }
        std::vector<Word> frontier;
        for (const auto& [w, s] : phi.block_map().table) {
            (void)s;
            frontier.push_back(w);
        }
        for (std::uint32_t step = 1; step < n; ++step) {
            std::vector<Word> next;
            for (const Word& w : frontier)
                for (Symbol a : alphabet) {
                    Word ext = w;
                    ext.push_back(a);
                    Word window(ext.end() - m, ext.end());
                    if (phi.block_map().table.contains(window)) next.push_back(std::move(ext));
                }
            frontier = std::move(next);
        }
        candidates = std::move(frontier);
    }
    for (const Word& w : candidates) {
        Word image;
        for (std::uint32_t i = 0; i < n; ++i)
            image.push_back(phi.map_window(Word(w.begin() + i, w.begin() + i + m), i + 1));
        auto it = psi.block_map().table.find(image);
        if (it == psi.block_map().table.end())
            throw image_not_in_domain_error("a composed window image lies outside the domain");
        delta.table[w] = it->second;
    }
    return SlidingBlockCode::bounded(std::move(delta));
}

/// The recoding package for the N-block presentation: the N-block code into
/// the block alphabet, its 1-block inverse, the block alphabet itself
/// (symbol k of the new alphabet is blocks[k-1]), and the presentation of
/// the image as a 1-step space over that alphabet.
struct HigherBlockCoding {
    SlidingBlockCode phi;
    SlidingBlockCode pi;
    std::vector<Word> blocks;
    ShiftPresentation image;
    bool partial{false};
};

inline HigherBlockCoding higher_block_code(const ShiftPresentation& x, std::uint32_t n,
                                           std::uint64_t horizon = 8) {
    if (classify(x, horizon) == SpaceClass::NotRowFinite)
        throw not_row_finite_error("higher block codes are defined on row-finite spaces");
    if (n == 0) throw error("higher block codes need N >= 1");
    const BlockLanguage lang = block_language(x, n, horizon);
    const BlockLanguage lang_next = block_language(x, n + 1, horizon);
    std::vector<Word> blocks(lang.words.begin(), lang.words.end());

    BlockMap phi_map;
    phi_map.window = n;
    std::map<Word, Symbol> rank;
    for (std::uint32_t k = 0; k < blocks.size(); ++k) {
        rank[blocks[k]] = Symbol{k + 1};
        phi_map.table[blocks[k]] = Symbol{k + 1};
    }

    BlockMap pi_map;
    pi_map.window = 1;
    for (std::uint32_t k = 0; k < blocks.size(); ++k)
        pi_map.table[word({k + 1})] = blocks[k].front();

    // The image is 1-step: a pair of block symbols is allowed exactly when
    // the blocks overlap progressively and their join is itself a block.
    std::set<Word> forbidden_pairs;
    for (std::uint32_t i = 0; i < blocks.size(); ++i)
        for (std::uint32_t j = 0; j < blocks.size(); ++j) {
            bool progressive =
                std::equal(blocks[i].begin() + 1, blocks[i].end(), blocks[j].begin());
            bool joined_ok = false;
            if (progressive) {
                Word join = blocks[i];
                join.push_back(blocks[j].back());
                joined_ok = lang_next.words.contains(join);
            }
            if (!progressive || !joined_ok) forbidden_pairs.insert(word({i + 1, j + 1}));
        }
    auto image = ShiftPresentation::forbidden_blocks(
        std::move(forbidden_pairs), static_cast<std::uint32_t>(blocks.size()));

    HigherBlockCoding out{SlidingBlockCode::bounded(std::move(phi_map)),
                          SlidingBlockCode::bounded(std::move(pi_map)), std::move(blocks),
                          std::move(image), lang.partial || lang_next.partial};
    return out;
}

/// Rewrites an M-block code as a 1-block code over the M-block alphabet, so
/// that the rewritten code after the M-block recoding agrees with the
/// original.
struct Recoded {
    SlidingBlockCode one_block;
    HigherBlockCoding coding;
};

inline Recoded recode_to_1block(const SlidingBlockCode& psi, const ShiftPresentation& x,
                                std::uint64_t horizon = 8) {
    if (!psi.is_bounded()) throw error("recoding is provided for bounded codes");
    const std::uint32_t m = psi.block_map().window;
    HigherBlockCoding coding = higher_block_code(x, m, horizon);
    BlockMap one;
    one.window = 1;
    for (std::uint32_t k = 0; k < coding.blocks.size(); ++k) {
        auto it = psi.block_map().table.find(coding.blocks[k]);
        if (it != psi.block_map().table.end()) one.table[word({k + 1})] = it->second;
    }
    return Recoded{SlidingBlockCode::bounded(std::move(one)), std::move(coding)};
}

/// A claimed conjugacy between two presented spaces, as a pair of codes.
struct ConjugacyWitness {
    SlidingBlockCode forward;
    SlidingBlockCode backward;
    ShiftPresentation source;
    ShiftPresentation target;
};

struct ConjugacyVerification {
    bool verified{false};
    std::size_t depth{0};
    std::string counterexample;  // empty when verified
};

namespace detail {

inline std::string describe_word(const Word& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += '.';
        s += 'a' + std::to_string(w[i].index);
    }
    return s.empty() ? "~" : s;
}

}  // namespace detail

/// Bounded verification that the witness is a conjugacy: block images land
/// in the right languages up to depth_l, round trips fix every sample, the
/// composed block maps project onto the first coordinate (bounded case),
/// and both codes commute with the shift on the samples.
inline ConjugacyVerification verify_conjugacy(const ConjugacyWitness& w, std::size_t depth_l,
                                              const std::vector<Seq>& samples,
                                              std::uint64_t horizon = 8) {
    auto refute = [&](std::string why) { return ConjugacyVerification{false, depth_l, why}; };

    auto check_blocks = [&](const SlidingBlockCode& code, const ShiftPresentation& from,
                            const ShiftPresentation& to) -> std::optional<std::string> {
        for (std::size_t k = 1; k <= depth_l; ++k) {
            for (const Word& u : block_language(from, k, horizon).words) {
                Word image;
                try {
                    image = map_block(code, u);
                } catch (const window_not_in_domain_error&) {
                    return "block " + detail::describe_word(u) +
                           " has a window outside the code domain";
                }
                if (image.empty()) continue;
                if (!block_language(to, image.size(), horizon).words.contains(image))
                    return "image of block " + detail::describe_word(u) +
                           " is not a block of the target";
            }
        }
        return std::nullopt;
    };
    if (auto bad = check_blocks(w.forward, w.source, w.target)) return refute(*bad);
    if (auto bad = check_blocks(w.backward, w.target, w.source)) return refute(*bad);

    for (const Seq& x : samples) {
        if (x.is_finite() && !x.is_empty()) continue;
        Seq there, back;
        try {
            there = apply(w.forward, x);
            back = apply(w.backward, there);
        } catch (const error&) {
            return refute("the code pair is not defined on a sample");
        }
        if (back != x) return refute("round trip moved a sample");
        if (apply(w.forward, shift(x)) != shift(there))
            return refute("forward code does not commute with the shift on a sample");
        if (apply(w.backward, shift(there)) != shift(x))
            return refute("backward code does not commute with the shift on a sample");
        if (apply(w.forward, back) != there) return refute("second round trip moved a sample");
    }

    if (w.forward.is_bounded() && w.backward.is_bounded()) {
        struct Leg {
            const SlidingBlockCode* first;
            const SlidingBlockCode* second;
            const ShiftPresentation* from;
        };
        try {
            for (const Leg& leg : {Leg{&w.forward, &w.backward, &w.source},
                                   Leg{&w.backward, &w.forward, &w.target}}) {
                const std::uint32_t width = leg.first->block_map().window +
                                            leg.second->block_map().window - 1;
                const auto domain = block_language(*leg.from, width, horizon).words;
                SlidingBlockCode composed = compose(*leg.first, *leg.second, domain);
                for (const auto& [u, s] : composed.block_map().table)
                    if (s != u.front())
                        return refute("composed block map is not the first-coordinate "
                                      "projection at " +
                                      detail::describe_word(u));
            }
        } catch (const error&) {
            return refute("the codes do not compose over their domains");
        }
    }
    return ConjugacyVerification{true, depth_l, {}};
}

struct BoundednessProbe {
    bool uniformly_continuous_at_scale{true};
    std::optional<std::pair<Seq, Seq>> violation;
};

/// For a bounded code, confirms the explicit modulus: window length M plus
/// target scale N gives the distance bound 1/2^(M+N) under which images stay
/// 1/2^N-close. For an unbounded family, searches the pool for pairs
/// violating that bound at every candidate window length; finding them at
/// every scale is the boundedness refutation.
inline BoundednessProbe probe_boundedness(const SlidingBlockCode& c, const ShiftPresentation& x,
                                          std::uint64_t eps_exponent,
                                          const std::vector<Seq>& pool,
                                          std::uint64_t horizon = 8,
                                          std::optional<std::uint64_t> probe_depth = {}) {
    for (const Seq& s : pool) {
        if (!s.is_infinite() || contains(x, s, horizon) != Membership::Yes)
            throw error("boundedness probes need infinite members of the space");
    }
    auto d_small = [](const Dyadic& d, std::uint64_t e) {
        return d.is_zero() || d.exponent() > e;
    };
    if (c.is_bounded()) {
        const std::uint64_t m = c.block_map().window;
        BoundednessProbe probe;
        for (std::size_t i = 0; i < pool.size(); ++i)
            for (std::size_t j = i + 1; j < pool.size(); ++j) {
                const Dyadic d = boundedness_metric(pool[i], pool[j]);
                if (!d_small(d, m + eps_exponent)) continue;
                const Dyadic image_d =
                    boundedness_metric(apply(c, pool[i]), apply(c, pool[j]));
                if (!d_small(image_d, eps_exponent)) {
                    probe.uniformly_continuous_at_scale = false;
                    probe.violation = {pool[i], pool[j]};
                    return probe;
                }
            }
        return probe;
    }
    const std::uint64_t deepest =
        probe_depth.value_or(c.max_window() > 1 ? c.max_window() - 1 : 1);
    BoundednessProbe probe;
    std::optional<std::pair<Seq, Seq>> witness;
    for (std::uint64_t k = 1; k <= deepest; ++k) {
        bool found = false;
        for (std::size_t i = 0; i < pool.size() && !found; ++i)
            for (std::size_t j = i + 1; j < pool.size() && !found; ++j) {
                Dyadic d = boundedness_metric(pool[i], pool[j]);
                if (!d_small(d, k)) continue;
                Seq a, b;
                try {
                    a = apply(c, pool[i]);
                    b = apply(c, pool[j]);
                } catch (const error&) {
                    continue;
                }
                if (!d_small(boundedness_metric(a, b), eps_exponent)) {
                    found = true;
                    witness = {pool[i], pool[j]};
                }
            }
        if (!found) return probe;  // no violation at this scale
    }
    probe.uniformly_continuous_at_scale = false;
    probe.violation = witness;
    return probe;
}

}  // namespace shiftspace
