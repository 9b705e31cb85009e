#pragma once

#include <charconv>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "shiftspace/codes.hpp"
#include "shiftspace/errors.hpp"
#include "shiftspace/graph.hpp"
#include "shiftspace/path_algebra.hpp"
#include "shiftspace/seq.hpp"
#include "shiftspace/spaces.hpp"

namespace shiftspace {

/// Two-way naming of symbols. The canonical alphabet prints a1, a2, ...;
/// graph alphabets print edge ids.
struct SymbolTable {
    std::function<std::string(Symbol)> name;
    std::function<std::optional<Symbol>(std::string_view)> parse;

    static SymbolTable canonical() {
        SymbolTable t;
        t.name = [](Symbol s) { return "a" + std::to_string(s.index); };
        t.parse = [](std::string_view tok) -> std::optional<Symbol> {
            if (tok.size() < 2 || tok[0] != 'a') return std::nullopt;
            std::uint32_t k = 0;
            auto [p, ec] = std::from_chars(tok.data() + 1, tok.data() + tok.size(), k);
            if (ec != std::errc() || p != tok.data() + tok.size() || k == 0) return std::nullopt;
            return Symbol{k};
        };
        return t;
    }

    static SymbolTable for_graph(std::shared_ptr<const Graph> g) {
        SymbolTable t;
        t.name = [g](Symbol s) {
            auto e = g->edge_ref(s);
            if (!e) throw error("symbol is not an edge of the graph");
            return g->edge_id(*e);
        };
        t.parse = [g](std::string_view tok) -> std::optional<Symbol> {
            auto e = g->find_edge(std::string(tok));
            if (!e) return std::nullopt;
            return g->edge_symbol(*e);
        };
        return t;
    }
};

namespace text {

inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.emplace_back(s.substr(start));
            return out;
        }
        out.emplace_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

inline std::vector<std::string> tokens(std::string_view line) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        if (i > start) out.emplace_back(line.substr(start, i - start));
    }
    return out;
}

inline std::string print_word(const Word& w, const SymbolTable& table) {
    if (w.empty()) return "~";
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += '.';
        s += table.name(w[i]);
    }
    return s;
}

inline Word parse_word(std::string_view s, const SymbolTable& table, std::size_t line = 0) {
    if (s == "~") return {};
    Word w;
    for (const std::string& tok : split(s, '.')) {
        auto sym = table.parse(tok);
        if (!sym) throw parse_error(line, "unknown symbol '" + tok + "'");
        w.push_back(*sym);
    }
    return w;
}

/// Sequence grammar: "~" for the empty sequence, "a1.a2" for finite words,
/// and "a1.a2|(a3.a1)" for the eventually periodic sequence with the given
/// preperiod and period. The preperiod part may be empty: "|(a1)".
inline std::string print_seq(const Seq& x, const SymbolTable& table) {
    if (x.is_finite()) return print_word(x.preperiod(), table);
    std::string s;
    if (!x.preperiod().empty()) s = print_word(x.preperiod(), table);
    s += "|(" + print_word(x.period(), table) + ")";
    return s;
}

inline Seq parse_seq(std::string_view s, const SymbolTable& table, std::size_t line = 0) {
    const std::size_t bar = s.find('|');
    if (bar == std::string_view::npos) return Seq::finite(parse_word(s, table, line));
    std::string_view pre = s.substr(0, bar);
    std::string_view rest = s.substr(bar + 1);
    if (rest.size() < 3 || rest.front() != '(' || rest.back() != ')')
        throw parse_error(line, "expected (period) after '|'");
    Word pre_word = pre.empty() ? Word{} : parse_word(pre, table, line);
    Word per_word = parse_word(rest.substr(1, rest.size() - 2), table, line);
    if (per_word.empty()) throw parse_error(line, "period must be nonempty");
    return Seq::eventually_periodic(std::move(pre_word), std::move(per_word));
}

// ---- graph files ----------------------------------------------------------
//
//   graph <name>
//   vertex <id>
//   edge <id> <src> <dst>
//   emitter-infinite <vertex-id> <ray|fan> [<edge-prefix> <vertex-prefix>]
//
// The optional prefixes pin the ids of generated edges and vertices; when
// omitted they derive from the root vertex id.

inline Graph parse_graph(std::string_view body) {
    std::optional<Graph> g;
    std::istringstream in{std::string(body)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto toks = tokens(line);
        if (toks.empty() || toks[0].starts_with('#')) continue;
        try {
            if (toks[0] == "graph") {
                if (toks.size() != 2) throw parse_error(lineno, "usage: graph <name>");
                if (g) throw parse_error(lineno, "duplicate graph header");
                g.emplace(toks[1]);
            } else if (!g) {
                throw parse_error(lineno, "file must start with a 'graph' line");
            } else if (toks[0] == "vertex") {
                if (toks.size() != 2) throw parse_error(lineno, "usage: vertex <id>");
                g->add_vertex(toks[1]);
            } else if (toks[0] == "edge") {
                if (toks.size() != 4) throw parse_error(lineno, "usage: edge <id> <src> <dst>");
                g->add_edge(toks[1], toks[2], toks[3]);
            } else if (toks[0] == "emitter-infinite") {
                if (toks.size() != 3 && toks.size() != 5)
                    throw parse_error(lineno,
                                      "usage: emitter-infinite <vertex> <ray|fan> "
                                      "[<edge-prefix> <vertex-prefix>]");
                std::string ep = toks.size() == 5 ? toks[3] : std::string{};
                std::string vp = toks.size() == 5 ? toks[4] : std::string{};
                if (toks[2] == "ray")
                    g->add_ray(toks[1], ep, vp);
                else if (toks[2] == "fan")
                    g->add_fan(toks[1], ep, vp);
                else
                    throw parse_error(lineno, "unknown generator '" + toks[2] + "'");
            } else {
                throw parse_error(lineno, "unknown directive '" + toks[0] + "'");
            }
        } catch (const parse_error&) {
            throw;
        } catch (const error& e) {
            throw parse_error(lineno, e.what());
        }
    }
    if (!g) throw parse_error(lineno, "empty graph file");
    return *std::move(g);
}

inline std::string print_graph(const Graph& g) {
    std::string out = "graph " + g.name() + "\n";
    for (std::uint64_t i = 0; i < g.explicit_vertex_count(); ++i)
        out += "vertex " + g.vertex_id(VertexRef{VertexRef::Kind::Explicit, 0, i}) + "\n";
    for (std::uint64_t i = 0; i < g.explicit_edge_count(); ++i) {
        EdgeRef e{EdgeRef::Kind::Explicit, 0, i};
        out += "edge " + g.edge_id(e) + " " + g.vertex_id(g.source(e)) + " " +
               g.vertex_id(g.range(e)) + "\n";
    }
    for (const auto& gen : g.generators()) {
        out += "emitter-infinite " +
               g.vertex_id(VertexRef{VertexRef::Kind::Explicit, 0, gen.root}) + " " +
               (gen.kind == Graph::Generator::Kind::Ray ? "ray" : "fan") + " " +
               gen.edge_prefix + " " + gen.vertex_prefix + "\n";
    }
    return out;
}

// ---- shift presentation files ----------------------------------------------
//
//   shift forbidden <finite:N | infinite>
//   block <word>
//   ...
// or
//   shift edges <graph-file>
// or
//   shift builtin <name>

inline ShiftPresentation parse_presentation(
    std::string_view body,
    const std::function<std::string(const std::string&)>& load_file = {}) {
    std::istringstream in{std::string(body)};
    std::string line;
    std::size_t lineno = 0;
    std::optional<std::uint32_t> alphabet;
    bool header_seen = false;
    std::set<Word> blocks;
    const SymbolTable table = SymbolTable::canonical();
    while (std::getline(in, line)) {
        ++lineno;
        auto toks = tokens(line);
        if (toks.empty() || toks[0].starts_with('#')) continue;
        if (!header_seen) {
            if (toks[0] != "shift" || toks.size() < 2)
                throw parse_error(lineno, "file must start with a 'shift' line");
            if (toks[1] == "builtin") {
                if (toks.size() != 3) throw parse_error(lineno, "usage: shift builtin <name>");
                try {
                    return ShiftPresentation::builtin(toks[2]);
                } catch (const error& e) {
                    throw parse_error(lineno, e.what());
                }
            }
            if (toks[1] == "edges") {
                if (toks.size() != 3)
                    throw parse_error(lineno, "usage: shift edges <graph-file>");
                if (!load_file) throw parse_error(lineno, "no file loader available");
                try {
                    return ShiftPresentation::edge_shift(parse_graph(load_file(toks[2])));
                } catch (const error& e) {
                    throw parse_error(lineno, e.what());
                }
            }
            if (toks[1] == "forbidden") {
                if (toks.size() != 3)
                    throw parse_error(lineno, "usage: shift forbidden <finite:N | infinite>");
                if (toks[2] == "infinite") {
                    alphabet = std::nullopt;
                } else if (toks[2].starts_with("finite:")) {
                    std::uint32_t n = 0;
                    const std::string num = toks[2].substr(7);
                    auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), n);
                    if (ec != std::errc() || p != num.data() + num.size() || n == 0)
                        throw parse_error(lineno, "bad alphabet size '" + num + "'");
                    alphabet = n;
                } else {
                    throw parse_error(lineno, "alphabet must be finite:N or infinite");
                }
                header_seen = true;
                continue;
            }
            throw parse_error(lineno, "unknown shift kind '" + toks[1] + "'");
        }
        if (toks[0] == "block") {
            if (toks.size() != 2) throw parse_error(lineno, "usage: block <word>");
            Word w = parse_word(toks[1], table, lineno);
            if (w.empty()) throw parse_error(lineno, "the empty block cannot be forbidden");
            blocks.insert(std::move(w));
        } else {
            throw parse_error(lineno, "unknown directive '" + toks[0] + "'");
        }
    }
    if (!header_seen) throw parse_error(lineno, "empty presentation file");
    return ShiftPresentation::forbidden_blocks(std::move(blocks), alphabet);
}

// ---- block map files --------------------------------------------------------
//
//   blockmap <name> window <M>
//   map <word> <symbol>
// or, for per-symbol families:
//   blockmap <name> unbounded
//   family <symbol> window <n>
//   map <word> <symbol>

inline SlidingBlockCode parse_block_code(std::string_view body, const SymbolTable& domain,
                                         const SymbolTable& image) {
    std::istringstream in{std::string(body)};
    std::string line;
    std::size_t lineno = 0;
    bool header_seen = false;
    bool unbounded = false;
    BlockMap bounded;
    std::map<Symbol, BlockMap> family;
    Symbol current{};
    auto parse_window = [&](const std::string& tok) {
        std::uint32_t m = 0;
        auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), m);
        if (ec != std::errc() || p != tok.data() + tok.size() || m == 0)
            throw parse_error(lineno, "bad window '" + tok + "'");
        return m;
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto toks = tokens(line);
        if (toks.empty() || toks[0].starts_with('#')) continue;
        if (!header_seen) {
            if (toks[0] != "blockmap" || toks.size() < 3)
                throw parse_error(lineno, "file must start with a 'blockmap' line");
            if (toks[2] == "unbounded" && toks.size() == 3) {
                unbounded = true;
            } else if (toks[2] == "window" && toks.size() == 4) {
                bounded.window = parse_window(toks[3]);
            } else {
                throw parse_error(lineno, "usage: blockmap <name> window <M> | unbounded");
            }
            header_seen = true;
            continue;
        }
        if (toks[0] == "family") {
            if (!unbounded) throw parse_error(lineno, "family sections need an unbounded map");
            if (toks.size() != 4 || toks[2] != "window")
                throw parse_error(lineno, "usage: family <symbol> window <n>");
            auto sym = domain.parse(toks[1]);
            if (!sym) throw parse_error(lineno, "unknown symbol '" + toks[1] + "'");
            current = *sym;
            family[current].window = parse_window(toks[3]);
        } else if (toks[0] == "map") {
            if (toks.size() != 3) throw parse_error(lineno, "usage: map <word> <symbol>");
            Word w = parse_word(toks[1], domain, lineno);
            auto value = image.parse(toks[2]);
            if (!value) throw parse_error(lineno, "unknown symbol '" + toks[2] + "'");
            if (unbounded) {
                if (family.empty())
                    throw parse_error(lineno, "map line before any family section");
                family[current].table[w] = *value;
            } else {
                bounded.table[w] = *value;
            }
        } else {
            throw parse_error(lineno, "unknown directive '" + toks[0] + "'");
        }
    }
    if (!header_seen) throw parse_error(lineno, "empty block map file");
    try {
        return unbounded ? SlidingBlockCode::unbounded(std::move(family))
                         : SlidingBlockCode::bounded(std::move(bounded));
    } catch (const error& e) {
        throw parse_error(lineno, e.what());
    }
}

inline std::string print_block_code(const SlidingBlockCode& c, const std::string& name,
                                    const SymbolTable& domain, const SymbolTable& image) {
    std::string out;
    if (c.is_bounded()) {
        out = "blockmap " + name + " window " + std::to_string(c.block_map().window) + "\n";
        for (const auto& [w, s] : c.block_map().table)
            out += "map " + print_word(w, domain) + " " + image.name(s) + "\n";
        return out;
    }
    out = "blockmap " + name + " unbounded\n";
    for (const auto& [a, m] : c.family()) {
        out += "family " + domain.name(a) + " window " + std::to_string(m.window) + "\n";
        for (const auto& [w, s] : m.table)
            out += "map " + print_word(w, domain) + " " + image.name(s) + "\n";
    }
    return out;
}

// ---- algebra elements --------------------------------------------------------
//
// One term per line: <coef> * <alpha> ; <beta>, paths as dot-joined edge
// ids, the length-0 path at v as @<vertex>.

inline std::string print_path_or_vertex(const Graph& g, const Path& p) {
    if (p.edges.empty()) return "@" + g.vertex_id(p.base);
    std::string s;
    for (std::size_t i = 0; i < p.edges.size(); ++i) {
        if (i) s += '.';
        s += g.edge_id(p.edges[i]);
    }
    return s;
}

inline Path parse_path_or_vertex(const Graph& g, std::string_view s, std::size_t line = 0) {
    if (s.starts_with('@')) {
        auto v = g.find_vertex(std::string(s.substr(1)));
        if (!v) throw parse_error(line, "unknown vertex '" + std::string(s.substr(1)) + "'");
        return trivial_path(g, *v);
    }
    std::vector<EdgeRef> edges;
    for (const std::string& tok : split(s, '.')) {
        auto e = g.find_edge(tok);
        if (!e) throw parse_error(line, "unknown edge '" + tok + "'");
        edges.push_back(*e);
    }
    try {
        return make_path(g, std::move(edges));
    } catch (const error& e) {
        throw parse_error(line, e.what());
    }
}

inline std::string print_coeff(const Coeff& c) {
    std::string s = std::to_string(c.numerator());
    if (c.denominator() != 1) s += "/" + std::to_string(c.denominator());
    return s;
}

inline std::string print_element(const AlgebraElement& a) {
    if (a.is_zero()) return "0\n";
    std::vector<std::string> lines;
    for (const auto& [t, c] : a.terms())
        lines.push_back(print_coeff(c) + " * " + print_path_or_vertex(a.graph(), t.alpha) +
                        " ; " + print_path_or_vertex(a.graph(), t.beta));
    std::sort(lines.begin(), lines.end());
    std::string out;
    for (const std::string& l : lines) out += l + "\n";
    return out;
}

inline Coeff parse_coeff(std::string_view s, std::size_t line = 0) {
    auto parse_ll = [&](std::string_view t) {
        long long v = 0;
        auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (ec != std::errc() || p != t.data() + t.size())
            throw parse_error(line, "bad coefficient '" + std::string(s) + "'");
        return v;
    };
    const std::size_t slash = s.find('/');
    if (slash == std::string_view::npos) return Coeff(parse_ll(s));
    return Coeff(parse_ll(s.substr(0, slash)), parse_ll(s.substr(slash + 1)));
}

inline AlgebraElement parse_element(std::string_view body, std::shared_ptr<const Graph> g) {
    AlgebraElement out(g);
    std::istringstream in{std::string(body)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto toks = tokens(line);
        if (toks.empty() || toks[0].starts_with('#')) continue;
        if (toks.size() == 1 && toks[0] == "0") continue;
        if (toks.size() != 5 || toks[1] != "*" || toks[3] != ";")
            throw parse_error(lineno, "expected '<coef> * <alpha> ; <beta>'");
        out.add_term(parse_path_or_vertex(*g, toks[2], lineno),
                     parse_path_or_vertex(*g, toks[4], lineno), parse_coeff(toks[0], lineno));
    }
    return out;
}

}  // namespace text
}  // namespace shiftspace
