#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "shiftspace/errors.hpp"
#include "shiftspace/graph.hpp"
#include "shiftspace/seq.hpp"

namespace shiftspace {

enum class Membership { Yes, No, PartialYes };

enum class SpaceClass { FiniteSymbol, RowFiniteInfinite, NotRowFinite, Unknown };

struct BlockLanguage {
    std::size_t n{0};
    std::set<Word> words;
    bool partial{false};  // computed under a symbol or graph horizon
};

struct ExtensionCheck {
    enum class Status { Holds, PartialHolds, Fails };
    Status status{Status::Holds};
    std::set<Symbol> witness;  // the exact extension-symbol set when Fails
};

/// A description of a shift space: forbidden blocks over a finite or
/// countably infinite alphabet, a built-in forbidden-pair predicate, or the
/// edge shift of a graph without sinks.
class ShiftPresentation {
public:
    enum class Kind { ForbiddenBlocks, PairPredicate, EdgeShift };

    // The built-in pair predicate: a_i may be followed by a_j only when
    // i = 1 or i = j. Its forbidden set is infinite but decidable.
    enum class Pairs { RepeatOrFirst };

    static ShiftPresentation full_shift(std::optional<std::uint32_t> alphabet = std::nullopt) {
        return forbidden_blocks({}, alphabet);
    }

    static ShiftPresentation forbidden_blocks(std::set<Word> f,
                                              std::optional<std::uint32_t> alphabet) {
        for (const Word& w : f)
            if (w.empty())
                throw error("forbidding the empty block would make the space empty");
        if (alphabet && *alphabet == 0) throw error("alphabet must have at least one symbol");
        ShiftPresentation p;
        p.kind_ = Kind::ForbiddenBlocks;
        p.forbidden_ = std::move(f);
        p.alphabet_ = alphabet;
        return p;
    }

    static ShiftPresentation pair_predicate(Pairs which) {
        ShiftPresentation p;
        p.kind_ = Kind::PairPredicate;
        p.pairs_ = which;
        return p;
    }

    static ShiftPresentation edge_shift(std::shared_ptr<const Graph> g) {
        if (auto sink = g->find_sink()) throw has_sink_error(g->vertex_id(*sink));
        ShiftPresentation p;
        p.kind_ = Kind::EdgeShift;
        p.graph_ = std::move(g);
        return p;
    }

    static ShiftPresentation edge_shift(Graph g) {
        return edge_shift(std::make_shared<const Graph>(std::move(g)));
    }

    /// Named presentations usable from files and the command line.
    static ShiftPresentation builtin(const std::string& name) {
        if (name == "full") return full_shift();
        if (name == "ex5_18_pairs") return pair_predicate(Pairs::RepeatOrFirst);
        if (name == "ex5_17_ray") {
            Graph g("ray");
            g.add_vertex("v0");
            g.add_ray("v0", "e", "v");
            return edge_shift(std::move(g));
        }
        throw error("unknown builtin shift '" + name + "'");
    }

    Kind kind() const { return kind_; }
    const std::set<Word>& forbidden() const { return forbidden_; }
    std::optional<std::uint32_t> alphabet_size() const { return alphabet_; }
    Pairs pairs() const { return pairs_; }
    const std::shared_ptr<const Graph>& graph_ptr() const { return graph_; }
    const Graph& graph() const { return *graph_; }

    bool pair_allowed(std::uint32_t i, std::uint32_t j) const {
        switch (pairs_) {
            case Pairs::RepeatOrFirst:
                return i == 1 || i == j;
        }
        return false;
    }

private:
    Kind kind_{Kind::ForbiddenBlocks};
    std::set<Word> forbidden_;
    std::optional<std::uint32_t> alphabet_{};  // nullopt: countably infinite
    Pairs pairs_{Pairs::RepeatOrFirst};
    std::shared_ptr<const Graph> graph_;
};

namespace detail {

inline std::size_t max_forbidden_length(const std::set<Word>& f) {
    std::size_t m = 0;
    for (const Word& w : f) m = std::max(m, w.size());
    return m;
}

inline bool word_avoids(const Word& w, const std::set<Word>& f) {
    const std::size_t maxlen = max_forbidden_length(f);
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t l = 1; l <= std::min(maxlen, w.size() - i); ++l)
            if (f.contains(Word(w.begin() + i, w.begin() + i + l))) return false;
    return true;
}

// Every subblock of an eventually periodic sequence already occurs with its
// start inside the first |pre| + |per| positions.
inline bool infinite_avoids(const Seq& x, const std::set<Word>& f) {
    const std::size_t maxlen = max_forbidden_length(f);
    const std::size_t starts = x.preperiod().size() + x.period().size();
    for (std::size_t i = 1; i <= starts; ++i)
        for (std::size_t l = 1; l <= maxlen; ++l)
            if (f.contains(subblock(x, i, l))) return false;
    return true;
}

inline bool infinite_pairs_allowed(const ShiftPresentation& p, const Seq& x) {
    const std::size_t starts = x.preperiod().size() + x.period().size();
    for (std::size_t i = 1; i <= starts; ++i)
        if (!p.pair_allowed(x.at(i).index, x.at(i + 1).index)) return false;
    return true;
}

inline bool within_alphabet(const Word& w, std::optional<std::uint32_t> alphabet) {
    return !alphabet || max_symbol_index(w) <= *alphabet;
}

// Suffix states of length L-1 over `alphabet` symbols that admit an infinite
// forward continuation avoiding f. Used for exact block languages over
// finite alphabets, where dead ends are possible.
class LiveStates {
public:
    LiveStates(const std::set<Word>& f, std::uint32_t alphabet)
        : f_(f),
          alphabet_(alphabet),
          state_len_(std::max<std::size_t>(2, max_forbidden_length(f)) - 1) {
        std::vector<Word> states;
        collect_states({}, states);
        std::set<Word> live(states.begin(), states.end());
        for (bool changed = true; changed;) {
            changed = false;
            for (auto it = live.begin(); it != live.end();) {
                if (has_live_successor(*it, live)) {
                    ++it;
                } else {
                    it = live.erase(it);
                    changed = true;
                }
            }
        }
        live_ = std::move(live);
    }

    std::size_t state_length() const { return state_len_; }

    bool extendable(const Word& w) const {
        if (w.size() >= state_len_)
            return live_.contains(Word(w.end() - static_cast<std::ptrdiff_t>(state_len_),
                                       w.end()));
        // Short words: reachable into some live state going forward.
        return can_reach_live(w);
    }

private:
    const std::set<Word>& f_;
    std::uint32_t alphabet_;
    std::size_t state_len_;
    std::set<Word> live_;

    void collect_states(Word partial, std::vector<Word>& out) const {
        if (partial.size() == state_len_) {
            out.push_back(partial);
            return;
        }
        for (std::uint32_t a = 1; a <= alphabet_; ++a) {
            partial.push_back(Symbol{a});
            if (word_avoids(partial, f_)) collect_states(partial, out);
            partial.pop_back();
        }
    }

    bool has_live_successor(const Word& s, const std::set<Word>& live) const {
        for (std::uint32_t a = 1; a <= alphabet_; ++a) {
            Word w = s;
            w.push_back(Symbol{a});
            if (!word_avoids(w, f_)) continue;
            Word next(w.begin() + 1, w.end());
            if (live.contains(next)) return true;
        }
        return false;
    }

    bool can_reach_live(const Word& w) const {
        if (w.size() == state_len_) return live_.contains(w);
        for (std::uint32_t a = 1; a <= alphabet_; ++a) {
            Word ext = w;
            ext.push_back(Symbol{a});
            if (word_avoids(ext, f_) && can_reach_live(ext)) return true;
        }
        return false;
    }
};

}  // namespace detail

/// Membership of a computable sequence in the presented space. Exact for
/// every presentation kind shipped here; PartialYes is reserved for
/// predicate families that are only decidable up to the horizon.
inline Membership contains(const ShiftPresentation& p, const Seq& x, std::uint64_t horizon = 8) {
    (void)horizon;
    using Kind = ShiftPresentation::Kind;
    if (x.is_infinite()) {
        switch (p.kind()) {
            case Kind::ForbiddenBlocks: {
                Word window = x.prefix(x.preperiod().size() + x.period().size());
                if (!detail::within_alphabet(window, p.alphabet_size())) return Membership::No;
                return detail::infinite_avoids(x, p.forbidden()) ? Membership::Yes
                                                                 : Membership::No;
            }
            case Kind::PairPredicate:
                return detail::infinite_pairs_allowed(p, x) ? Membership::Yes : Membership::No;
            case Kind::EdgeShift:
                return is_infinite_edge_path(p.graph(), x) ? Membership::Yes : Membership::No;
        }
    }
    if (x.is_empty()) {
        switch (p.kind()) {
            case Kind::ForbiddenBlocks:
                return p.alphabet_size() ? Membership::No : Membership::Yes;
            case Kind::PairPredicate:
                return Membership::Yes;
            case Kind::EdgeShift:
                return p.graph().has_generators() ? Membership::Yes : Membership::No;
        }
    }
    const Word w = x.preperiod();
    switch (p.kind()) {
        case Kind::ForbiddenBlocks:
            // Over a finite alphabet no nonempty finite sequence is a member;
            // over an infinite one, any symbol absent from the forbidden set
            // provides infinitely many extensions.
            if (p.alphabet_size()) return Membership::No;
            return detail::word_avoids(w, p.forbidden()) ? Membership::Yes : Membership::No;
        case Kind::PairPredicate: {
            for (std::size_t i = 0; i + 1 < w.size(); ++i)
                if (!p.pair_allowed(w[i].index, w[i + 1].index)) return Membership::No;
            // Finite members need infinitely many next symbols; only the
            // unconstrained first symbol provides that.
            return w.back().index == 1 ? Membership::Yes : Membership::No;
        }
        case Kind::EdgeShift: {
            auto path = word_path(p.graph(), w);
            if (!path) return Membership::No;
            auto cls = p.graph().classify_vertex(path_range(p.graph(), *path));
            return cls.kind == VertexClass::InfiniteEmitter ? Membership::Yes : Membership::No;
        }
    }
    return Membership::No;
}

/// The length-n blocks of the space, restricted to symbols and graph parts
/// visible within the horizon; `partial` reports whether the restriction
/// can have cut anything off.
inline BlockLanguage block_language(const ShiftPresentation& p, std::size_t n,
                                    std::uint64_t horizon = 8) {
    using Kind = ShiftPresentation::Kind;
    BlockLanguage lang;
    lang.n = n;
    if (n == 0) {
        lang.words.insert(Word{});
        return lang;
    }
    switch (p.kind()) {
        case Kind::ForbiddenBlocks: {
            const auto alphabet = p.alphabet_size();
            const std::uint32_t cap = alphabet
                                          ? std::min<std::uint64_t>(*alphabet, horizon)
                                          : horizon;
            lang.partial = !alphabet || *alphabet > horizon;
            if (!alphabet) {
                // A fresh symbol always continues a block, so avoidance is
                // the whole condition.
                Word w;
                auto rec = [&](auto&& self, std::size_t depth) -> void {
                    if (depth == n) {
                        lang.words.insert(w);
                        return;
                    }
                    for (std::uint32_t a = 1; a <= cap; ++a) {
                        w.push_back(Symbol{a});
                        if (detail::word_avoids(w, p.forbidden())) self(self, depth + 1);
                        w.pop_back();
                    }
                };
                rec(rec, 0);
            } else {
                detail::LiveStates live(p.forbidden(), cap);
                Word w;
                auto rec = [&](auto&& self, std::size_t depth) -> void {
                    if (depth == n) {
                        if (live.extendable(w)) lang.words.insert(w);
                        return;
                    }
                    for (std::uint32_t a = 1; a <= cap; ++a) {
                        w.push_back(Symbol{a});
                        if (detail::word_avoids(w, p.forbidden())) self(self, depth + 1);
                        w.pop_back();
                    }
                };
                rec(rec, 0);
            }
            break;
        }
        case Kind::PairPredicate: {
            lang.partial = true;
            Word w;
            auto rec = [&](auto&& self, std::size_t depth) -> void {
                if (depth == n) {
                    lang.words.insert(w);
                    return;
                }
                for (std::uint32_t a = 1; a <= horizon; ++a) {
                    if (!w.empty() && !p.pair_allowed(w.back().index, a)) continue;
                    w.push_back(Symbol{a});
                    self(self, depth + 1);
                    w.pop_back();
                }
            };
            rec(rec, 0);
            break;
        }
        case Kind::EdgeShift: {
            const Graph& g = p.graph();
            lang.partial = g.has_generators();
            for (const VertexRef& v : g.vertices(horizon)) {
                auto paths = enumerate_paths(g, v, n, horizon);
                if (paths.partial) lang.partial = true;
                for (const Path& q : paths.paths) lang.words.insert(path_word(g, q));
            }
            break;
        }
    }
    return lang;
}

/// Number of symbols the presentation can exhibit within the horizon.
inline std::uint32_t symbol_cap(const ShiftPresentation& p, std::uint64_t horizon = 8) {
    switch (p.kind()) {
        case ShiftPresentation::Kind::ForbiddenBlocks:
            return p.alphabet_size() ? std::min<std::uint64_t>(*p.alphabet_size(), horizon)
                                     : static_cast<std::uint32_t>(horizon);
        case ShiftPresentation::Kind::PairPredicate:
            return static_cast<std::uint32_t>(horizon);
        case ShiftPresentation::Kind::EdgeShift:
            if (auto count = p.graph().edge_count())
                return static_cast<std::uint32_t>(std::min<std::uint64_t>(*count, horizon));
            return static_cast<std::uint32_t>(horizon);
    }
    return static_cast<std::uint32_t>(horizon);
}

/// Checks the extension condition at a finite member: whether at least
/// `demand` distinct next symbols admit an infinite continuation inside the
/// space. Exact for all shipped presentation kinds.
inline ExtensionCheck check_infinite_extension(const ShiftPresentation& p, const Word& x,
                                               std::uint64_t demand, std::uint64_t horizon = 8) {
    if (contains(p, Seq::finite(x), horizon) == Membership::No)
        throw not_a_member_error("the word is not a finite member of the space");
    using Kind = ShiftPresentation::Kind;
    switch (p.kind()) {
        case Kind::ForbiddenBlocks:
        case Kind::PairPredicate:
            // Membership already certifies infinitely many extensions.
            return {ExtensionCheck::Status::Holds, {}};
        case Kind::EdgeShift: {
            const Graph& g = p.graph();
            if (x.empty()) {
                if (g.has_generators()) return {ExtensionCheck::Status::Holds, {}};
                std::set<Symbol> witness;
                for (std::uint64_t i = 0; i < g.explicit_edge_count(); ++i)
                    witness.insert(Symbol{static_cast<std::uint32_t>(i + 1)});
                if (witness.size() >= demand) return {ExtensionCheck::Status::Holds, {}};
                return {ExtensionCheck::Status::Fails, std::move(witness)};
            }
            auto path = word_path(g, x);
            auto cls = g.classify_vertex(path_range(g, *path));
            if (cls.kind == VertexClass::InfiniteEmitter)
                return {ExtensionCheck::Status::Holds, {}};
            auto out = g.out_edges(path_range(g, *path), horizon);
            std::set<Symbol> witness;
            for (const EdgeRef& e : out.edges) witness.insert(g.edge_symbol(e));
            if (witness.size() >= demand) return {ExtensionCheck::Status::Holds, {}};
            return {ExtensionCheck::Status::Fails, std::move(witness)};
        }
    }
    return {ExtensionCheck::Status::PartialHolds, {}};
}

inline SpaceClass classify(const ShiftPresentation& p, std::uint64_t horizon = 8) {
    (void)horizon;
    using Kind = ShiftPresentation::Kind;
    switch (p.kind()) {
        case Kind::EdgeShift:
            if (!p.graph().has_generators()) return SpaceClass::FiniteSymbol;
            return p.graph().is_row_finite() ? SpaceClass::RowFiniteInfinite
                                             : SpaceClass::NotRowFinite;
        case Kind::ForbiddenBlocks:
            // A finite forbidden set over an infinite alphabet always leaves
            // some symbol with infinitely many followers.
            return p.alphabet_size() ? SpaceClass::FiniteSymbol : SpaceClass::NotRowFinite;
        case Kind::PairPredicate:
            return SpaceClass::NotRowFinite;
    }
    return SpaceClass::Unknown;
}

/// All words of length <= max_len over the horizon alphabet that are not
/// blocks of the space. Rebuilding a presentation from this set reproduces
/// the block languages up to max_len.
inline std::set<Word> canonical_forbidden_set(const ShiftPresentation& p, std::size_t max_len,
                                              std::uint64_t horizon = 8) {
    const std::uint32_t cap = symbol_cap(p, horizon);
    std::set<Word> out;
    for (std::size_t len = 1; len <= max_len; ++len) {
        const auto lang = block_language(p, len, horizon);
        Word w;
        auto rec = [&](auto&& self, std::size_t depth) -> void {
            if (depth == len) {
                if (!lang.words.contains(w)) out.insert(w);
                return;
            }
            for (std::uint32_t a = 1; a <= cap; ++a) {
                w.push_back(Symbol{a});
                self(self, depth + 1);
                w.pop_back();
            }
        };
        rec(rec, 0);
    }
    return out;
}

/// Pads every forbidden block to length exactly M+1 by appending all
/// possible suffixes over the horizon alphabet.
inline std::set<Word> pad_to_m_step(const std::set<Word>& f, std::size_t m,
                                    std::uint64_t horizon = 8) {
    for (const Word& w : f)
        if (w.size() > m + 1)
            throw block_too_long_error("a forbidden block exceeds length M+1");
    std::set<Word> out;
    for (const Word& u : f) {
        const std::size_t need = m + 1 - u.size();
        Word w = u;
        auto rec = [&](auto&& self, std::size_t depth) -> void {
            if (depth == need) {
                out.insert(w);
                return;
            }
            for (std::uint32_t a = 1; a <= horizon; ++a) {
                w.push_back(Symbol{a});
                self(self, depth + 1);
                w.pop_back();
            }
        };
        rec(rec, 0);
    }
    return out;
}

/// Eventually periodic members with |pre| + |per| bounded, over symbols up
/// to the cap. Handy as a deterministic sample pool.
inline std::vector<Seq> ev_periodic_members(const ShiftPresentation& p, std::size_t max_total,
                                            std::uint32_t cap, std::uint64_t horizon = 8) {
    std::set<Seq> members;
    std::vector<Word> words_by_len[1 + 16];
    const std::size_t limit = std::min<std::size_t>(max_total, 16);
    for (std::size_t len = 0; len <= limit; ++len) {
        Word w;
        auto rec = [&](auto&& self, std::size_t depth) -> void {
            if (depth == len) {
                words_by_len[len].push_back(w);
                return;
            }
            for (std::uint32_t a = 1; a <= cap; ++a) {
                w.push_back(Symbol{a});
                self(self, depth + 1);
                w.pop_back();
            }
        };
        rec(rec, 0);
    }
    for (std::size_t pre = 0; pre <= limit; ++pre)
        for (std::size_t per = 1; pre + per <= limit; ++per)
            for (const Word& u : words_by_len[pre])
                for (const Word& v : words_by_len[per]) {
                    Seq x = Seq::eventually_periodic(u, v);
                    if (contains(p, x, horizon) == Membership::Yes) members.insert(x);
                }
    return {members.begin(), members.end()};
}

}  // namespace shiftspace
