#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "shiftspace/errors.hpp"
#include "shiftspace/seq.hpp"

namespace shiftspace {

/// Reference to a vertex: either an explicitly declared one or a vertex
/// produced by a generator family (ray chain vertices, fan targets).
struct VertexRef {
    enum class Kind : std::uint8_t { Explicit, RayChain, FanTarget };
    Kind kind{Kind::Explicit};
    std::uint32_t gen{0};
    std::uint64_t n{0};  // explicit slot, or 1-based ordinal along the family

    friend constexpr auto operator<=>(const VertexRef&, const VertexRef&) = default;
};

struct EdgeRef {
    enum class Kind : std::uint8_t { Explicit, Ray, Fan, FanLoop };
    Kind kind{Kind::Explicit};
    std::uint32_t gen{0};
    std::uint64_t n{0};

    friend constexpr auto operator<=>(const EdgeRef&, const EdgeRef&) = default;
};

enum class VertexClass { Sink, FiniteEmitter, InfiniteEmitter };

struct VertexClassification {
    VertexClass kind;
    std::uint64_t out_degree{0};  // meaningful for FiniteEmitter
};

struct OutEdgeList {
    std::vector<EdgeRef> edges;
    bool truncated{false};
};

/// A countable directed graph. Finitely many vertices and edges are declared
/// explicitly; countably infinite parts are attached through generators:
///
///   ray at v:  v --r1--> c1 --r2--> c2 --r3--> ...   (row-finite, infinite)
///   fan at v:  edges f_n : v -> t_n for all n >= 1, each target carrying a
///              self-loop so the graph stays sink-free; v becomes an
///              infinite emitter.
///
/// Generator streams are pure functions of the ordinal, so concurrent
/// readers agree. Edges carry a stable global enumeration: explicit edges in
/// declaration order, then generated edges round-robin across generators.
class Graph {
public:
    struct Generator {
        enum class Kind { Ray, Fan };
        Kind kind;
        std::uint32_t root;         // explicit vertex slot
        std::string edge_prefix;    // edge ids are <prefix><n>, loops <prefix><n>l
        std::string vertex_prefix;  // generated vertex ids are <prefix><n>
    };

    explicit Graph(std::string name = "g") : name_(std::move(name)) {}

    const std::string& name() const { return name_; }

    VertexRef add_vertex(const std::string& id) {
        if (vertex_index_.contains(id)) throw error("duplicate vertex id '" + id + "'");
        vertex_ids_.push_back(id);
        vertex_index_[id] = static_cast<std::uint32_t>(vertex_ids_.size() - 1);
        return VertexRef{VertexRef::Kind::Explicit, 0, vertex_ids_.size() - 1};
    }

    EdgeRef add_edge(const std::string& id, const std::string& src, const std::string& dst) {
        if (edge_index_.contains(id)) throw error("duplicate edge id '" + id + "'");
        auto s = vertex_index_.find(src);
        auto d = vertex_index_.find(dst);
        if (s == vertex_index_.end()) throw unknown_vertex_error("unknown vertex '" + src + "'");
        if (d == vertex_index_.end()) throw unknown_vertex_error("unknown vertex '" + dst + "'");
        edges_.push_back({id, s->second, d->second});
        edge_index_[id] = static_cast<std::uint32_t>(edges_.size() - 1);
        return EdgeRef{EdgeRef::Kind::Explicit, 0, edges_.size() - 1};
    }

    void add_ray(const std::string& root, std::string edge_prefix = {},
                 std::string vertex_prefix = {}) {
        add_generator(Generator::Kind::Ray, root, std::move(edge_prefix),
                      std::move(vertex_prefix));
    }

    void add_fan(const std::string& root, std::string edge_prefix = {},
                 std::string vertex_prefix = {}) {
        add_generator(Generator::Kind::Fan, root, std::move(edge_prefix),
                      std::move(vertex_prefix));
    }

    void mark_horizon_truncated() { horizon_truncated_ = true; }
    bool horizon_truncated() const { return horizon_truncated_; }

    bool has_generators() const { return !generators_.empty(); }
    bool is_row_finite() const {
        return std::none_of(generators_.begin(), generators_.end(),
                            [](const Generator& g) { return g.kind == Generator::Kind::Fan; });
    }

    std::optional<std::uint64_t> edge_count() const {
        if (has_generators()) return std::nullopt;
        return edges_.size();
    }

    std::size_t explicit_vertex_count() const { return vertex_ids_.size(); }
    std::size_t explicit_edge_count() const { return edges_.size(); }
    const std::vector<Generator>& generators() const { return generators_; }

    // ---- identity and lookup ---------------------------------------------

    std::string vertex_id(const VertexRef& v) const {
        switch (v.kind) {
            case VertexRef::Kind::Explicit:
                check_explicit_vertex(v.n);
                return vertex_ids_[v.n];
            case VertexRef::Kind::RayChain:
            case VertexRef::Kind::FanTarget:
                return generator(v.gen).vertex_prefix + std::to_string(v.n);
        }
        throw error("corrupt vertex reference");
    }

    std::string edge_id(const EdgeRef& e) const {
        switch (e.kind) {
            case EdgeRef::Kind::Explicit:
                check_explicit_edge(e.n);
                return edges_[e.n].id;
            case EdgeRef::Kind::Ray:
            case EdgeRef::Kind::Fan:
                return generator(e.gen).edge_prefix + std::to_string(e.n);
            case EdgeRef::Kind::FanLoop:
                return generator(e.gen).edge_prefix + std::to_string(e.n) + "l";
        }
        throw error("corrupt edge reference");
    }

    std::optional<VertexRef> find_vertex(const std::string& id) const {
        if (auto it = vertex_index_.find(id); it != vertex_index_.end())
            return VertexRef{VertexRef::Kind::Explicit, 0, it->second};
        for (std::uint32_t g = 0; g < generators_.size(); ++g) {
            if (auto n = trailing_ordinal(id, generators_[g].vertex_prefix)) {
                auto kind = generators_[g].kind == Generator::Kind::Ray
                                ? VertexRef::Kind::RayChain
                                : VertexRef::Kind::FanTarget;
                return VertexRef{kind, g, *n};
            }
        }
        return std::nullopt;
    }

    std::optional<EdgeRef> find_edge(const std::string& id) const {
        if (auto it = edge_index_.find(id); it != edge_index_.end())
            return EdgeRef{EdgeRef::Kind::Explicit, 0, it->second};
        for (std::uint32_t g = 0; g < generators_.size(); ++g) {
            const Generator& gen = generators_[g];
            if (auto n = trailing_ordinal(id, gen.edge_prefix)) {
                auto kind = gen.kind == Generator::Kind::Ray ? EdgeRef::Kind::Ray
                                                             : EdgeRef::Kind::Fan;
                return EdgeRef{kind, g, *n};
            }
            if (gen.kind == Generator::Kind::Fan && id.size() > 1 && id.back() == 'l') {
                if (auto n = trailing_ordinal(id.substr(0, id.size() - 1), gen.edge_prefix))
                    return EdgeRef{EdgeRef::Kind::FanLoop, g, *n};
            }
        }
        return std::nullopt;
    }

    // ---- incidence --------------------------------------------------------

    VertexRef source(const EdgeRef& e) const {
        switch (e.kind) {
            case EdgeRef::Kind::Explicit:
                check_explicit_edge(e.n);
                return VertexRef{VertexRef::Kind::Explicit, 0, edges_[e.n].src};
            case EdgeRef::Kind::Ray:
                if (e.n == 1)
                    return VertexRef{VertexRef::Kind::Explicit, 0, generator(e.gen).root};
                return VertexRef{VertexRef::Kind::RayChain, e.gen, e.n - 1};
            case EdgeRef::Kind::Fan:
                return VertexRef{VertexRef::Kind::Explicit, 0, generator(e.gen).root};
            case EdgeRef::Kind::FanLoop:
                return VertexRef{VertexRef::Kind::FanTarget, e.gen, e.n};
        }
        throw error("corrupt edge reference");
    }

    VertexRef range(const EdgeRef& e) const {
        switch (e.kind) {
            case EdgeRef::Kind::Explicit:
                check_explicit_edge(e.n);
                return VertexRef{VertexRef::Kind::Explicit, 0, edges_[e.n].dst};
            case EdgeRef::Kind::Ray:
                return VertexRef{VertexRef::Kind::RayChain, e.gen, e.n};
            case EdgeRef::Kind::Fan:
            case EdgeRef::Kind::FanLoop:
                return VertexRef{VertexRef::Kind::FanTarget, e.gen, e.n};
        }
        throw error("corrupt edge reference");
    }

    bool valid_vertex(const VertexRef& v) const {
        switch (v.kind) {
            case VertexRef::Kind::Explicit:
                return v.n < vertex_ids_.size();
            case VertexRef::Kind::RayChain:
                return v.gen < generators_.size() &&
                       generators_[v.gen].kind == Generator::Kind::Ray && v.n >= 1;
            case VertexRef::Kind::FanTarget:
                return v.gen < generators_.size() &&
                       generators_[v.gen].kind == Generator::Kind::Fan && v.n >= 1;
        }
        return false;
    }

    OutEdgeList out_edges(const VertexRef& v, std::uint64_t cap) const {
        require_vertex(v);
        OutEdgeList out;
        switch (v.kind) {
            case VertexRef::Kind::Explicit: {
                for (std::uint32_t i = 0; i < edges_.size(); ++i)
                    if (edges_[i].src == v.n)
                        out.edges.push_back(EdgeRef{EdgeRef::Kind::Explicit, 0, i});
                for (std::uint32_t g = 0; g < generators_.size(); ++g) {
                    if (generators_[g].root != v.n) continue;
                    if (generators_[g].kind == Generator::Kind::Ray) {
                        out.edges.push_back(EdgeRef{EdgeRef::Kind::Ray, g, 1});
                    } else {
                        for (std::uint64_t n = 1; n <= cap; ++n)
                            out.edges.push_back(EdgeRef{EdgeRef::Kind::Fan, g, n});
                        out.truncated = true;
                    }
                }
                break;
            }
            case VertexRef::Kind::RayChain:
                out.edges.push_back(EdgeRef{EdgeRef::Kind::Ray, v.gen, v.n + 1});
                break;
            case VertexRef::Kind::FanTarget:
                out.edges.push_back(EdgeRef{EdgeRef::Kind::FanLoop, v.gen, v.n});
                break;
        }
        return out;
    }

    /// Incoming edges; exact for every vertex of this representation.
    std::vector<EdgeRef> in_edges(const VertexRef& v) const {
        require_vertex(v);
        std::vector<EdgeRef> in;
        switch (v.kind) {
            case VertexRef::Kind::Explicit:
                for (std::uint32_t i = 0; i < edges_.size(); ++i)
                    if (edges_[i].dst == v.n)
                        in.push_back(EdgeRef{EdgeRef::Kind::Explicit, 0, i});
                break;
            case VertexRef::Kind::RayChain:
                in.push_back(EdgeRef{EdgeRef::Kind::Ray, v.gen, v.n});
                break;
            case VertexRef::Kind::FanTarget:
                in.push_back(EdgeRef{EdgeRef::Kind::Fan, v.gen, v.n});
                in.push_back(EdgeRef{EdgeRef::Kind::FanLoop, v.gen, v.n});
                break;
        }
        return in;
    }

    VertexClassification classify_vertex(const VertexRef& v, std::uint64_t probe_bound = 8) const {
        require_vertex(v);
        if (v.kind != VertexRef::Kind::Explicit) return {VertexClass::FiniteEmitter, 1};
        for (const Generator& g : generators_)
            if (g.root == v.n && g.kind == Generator::Kind::Fan)
                return {VertexClass::InfiniteEmitter, 0};
        auto out = out_edges(v, probe_bound);
        if (out.edges.empty()) return {VertexClass::Sink, 0};
        return {VertexClass::FiniteEmitter, out.edges.size()};
    }

    /// A witness sink if one exists. Generated vertices are never sinks.
    std::optional<VertexRef> find_sink() const {
        for (std::uint64_t i = 0; i < vertex_ids_.size(); ++i) {
            VertexRef v{VertexRef::Kind::Explicit, 0, i};
            if (classify_vertex(v).kind == VertexClass::Sink) return v;
        }
        return std::nullopt;
    }

    /// Vertices visible within the horizon: all explicit ones plus the first
    /// `horizon` generated vertices of each family.
    std::vector<VertexRef> vertices(std::uint64_t horizon) const {
        std::vector<VertexRef> vs;
        for (std::uint64_t i = 0; i < vertex_ids_.size(); ++i)
            vs.push_back(VertexRef{VertexRef::Kind::Explicit, 0, i});
        for (std::uint32_t g = 0; g < generators_.size(); ++g) {
            auto kind = generators_[g].kind == Generator::Kind::Ray
                            ? VertexRef::Kind::RayChain
                            : VertexRef::Kind::FanTarget;
            for (std::uint64_t n = 1; n <= horizon; ++n) vs.push_back(VertexRef{kind, g, n});
        }
        return vs;
    }

    // ---- the edge alphabet -------------------------------------------------

    Symbol edge_symbol(const EdgeRef& e) const {
        if (e.kind == EdgeRef::Kind::Explicit) {
            check_explicit_edge(e.n);
            return Symbol{static_cast<std::uint32_t>(e.n + 1)};
        }
        const std::uint64_t w = round_weight();
        std::uint64_t offset = 0;
        for (std::uint32_t g = 0; g < e.gen; ++g)
            offset += generators_[g].kind == Generator::Kind::Ray ? 1 : 2;
        const std::uint64_t which = e.kind == EdgeRef::Kind::FanLoop ? 1 : 0;
        return Symbol{static_cast<std::uint32_t>(edges_.size() + (e.n - 1) * w + offset + which +
                                                 1)};
    }

    std::optional<EdgeRef> edge_ref(Symbol s) const {
        if (s.index == 0) return std::nullopt;
        if (s.index <= edges_.size())
            return EdgeRef{EdgeRef::Kind::Explicit, 0, s.index - 1};
        if (generators_.empty()) return std::nullopt;
        const std::uint64_t w = round_weight();
        const std::uint64_t t = s.index - edges_.size() - 1;
        const std::uint64_t n = t / w + 1;
        std::uint64_t pos = t % w;
        for (std::uint32_t g = 0; g < generators_.size(); ++g) {
            const std::uint64_t weight =
                generators_[g].kind == Generator::Kind::Ray ? 1 : 2;
            if (pos < weight) {
                if (generators_[g].kind == Generator::Kind::Ray)
                    return EdgeRef{EdgeRef::Kind::Ray, g, n};
                return EdgeRef{pos == 0 ? EdgeRef::Kind::Fan : EdgeRef::Kind::FanLoop, g, n};
            }
            pos -= weight;
        }
        return std::nullopt;
    }

private:
    struct ExplicitEdge {
        std::string id;
        std::uint32_t src;
        std::uint32_t dst;
    };

    std::string name_;
    std::vector<std::string> vertex_ids_;
    std::vector<ExplicitEdge> edges_;
    std::map<std::string, std::uint32_t> vertex_index_;
    std::map<std::string, std::uint32_t> edge_index_;
    std::vector<Generator> generators_;
    bool horizon_truncated_{false};

    const Generator& generator(std::uint32_t g) const {
        if (g >= generators_.size()) throw error("corrupt generator reference");
        return generators_[g];
    }

    std::uint64_t round_weight() const {
        std::uint64_t w = 0;
        for (const Generator& g : generators_) w += g.kind == Generator::Kind::Ray ? 1 : 2;
        return w;
    }

    void add_generator(Generator::Kind kind, const std::string& root, std::string edge_prefix,
                       std::string vertex_prefix) {
        auto it = vertex_index_.find(root);
        if (it == vertex_index_.end()) throw unknown_vertex_error("unknown vertex '" + root + "'");
        for (const Generator& g : generators_)
            if (g.root == it->second) throw error("vertex '" + root + "' already has a generator");
        const char* tag = kind == Generator::Kind::Ray ? "_ray" : "_fan";
        if (edge_prefix.empty()) edge_prefix = root + tag;
        if (vertex_prefix.empty()) vertex_prefix = root + tag + "v";
        generators_.push_back(Generator{kind, it->second, std::move(edge_prefix),
                                        std::move(vertex_prefix)});
    }

    void check_explicit_vertex(std::uint64_t n) const {
        if (n >= vertex_ids_.size()) throw unknown_vertex_error("vertex slot out of range");
    }
    void check_explicit_edge(std::uint64_t n) const {
        if (n >= edges_.size()) throw error("edge slot out of range");
    }
    void require_vertex(const VertexRef& v) const {
        if (!valid_vertex(v)) throw unknown_vertex_error("vertex not in this graph");
    }

    static std::optional<std::uint64_t> trailing_ordinal(const std::string& id,
                                                         const std::string& prefix) {
        if (id.size() <= prefix.size() || id.compare(0, prefix.size(), prefix) != 0)
            return std::nullopt;
        std::uint64_t n = 0;
        for (std::size_t i = prefix.size(); i < id.size(); ++i) {
            if (id[i] < '0' || id[i] > '9') return std::nullopt;
            n = n * 10 + static_cast<std::uint64_t>(id[i] - '0');
        }
        return n >= 1 ? std::optional<std::uint64_t>(n) : std::nullopt;
    }
};

/// A finite path: a composable list of edges, or the length-0 path sitting
/// at `base`. For nonempty paths `base` is the source of the first edge.
struct Path {
    VertexRef base;
    std::vector<EdgeRef> edges;

    std::size_t length() const { return edges.size(); }

    friend auto operator<=>(const Path&, const Path&) = default;
};

inline Path trivial_path(const Graph& g, const VertexRef& v) {
    if (!g.valid_vertex(v)) throw unknown_vertex_error("vertex not in this graph");
    return Path{v, {}};
}

inline Path make_path(const Graph& g, std::vector<EdgeRef> edges) {
    if (edges.empty()) throw error("a path of edges must be nonempty; use trivial_path");
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        if (g.range(edges[i]) != g.source(edges[i + 1]))
            throw error("edges do not compose into a path");
    VertexRef base = g.source(edges.front());
    return Path{base, std::move(edges)};
}

inline VertexRef path_source(const Graph&, const Path& p) { return p.base; }

inline VertexRef path_range(const Graph& g, const Path& p) {
    if (p.edges.empty()) return p.base;
    return g.range(p.edges.back());
}

inline Path path_concat(const Graph& g, const Path& a, const Path& b) {
    if (path_range(g, a) != path_source(g, b)) throw error("paths do not compose");
    if (a.edges.empty()) return b;
    Path r = a;
    r.edges.insert(r.edges.end(), b.edges.begin(), b.edges.end());
    return r;
}

inline Word path_word(const Graph& g, const Path& p) {
    Word w;
    w.reserve(p.edges.size());
    for (const EdgeRef& e : p.edges) w.push_back(g.edge_symbol(e));
    return w;
}

/// Reads a word of edge symbols back as a path; nullopt when some symbol is
/// not an edge or adjacent edges do not compose. Empty words are rejected
/// (they carry no base vertex).
inline std::optional<Path> word_path(const Graph& g, const Word& w) {
    if (w.empty()) return std::nullopt;
    std::vector<EdgeRef> edges;
    edges.reserve(w.size());
    for (Symbol s : w) {
        auto e = g.edge_ref(s);
        if (!e) return std::nullopt;
        edges.push_back(*e);
    }
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        if (g.range(edges[i]) != g.source(edges[i + 1])) return std::nullopt;
    return Path{g.source(edges.front()), std::move(edges)};
}

/// True iff the infinite sequence of edge symbols is a path of g.
inline bool is_infinite_edge_path(const Graph& g, const Seq& x) {
    if (!x.is_infinite()) return false;
    const std::size_t window = x.preperiod().size() + x.period().size();
    for (std::size_t i = 1; i <= window; ++i) {
        auto e = g.edge_ref(x.at(i));
        auto f = g.edge_ref(x.at(i + 1));
        if (!e || !f) return false;
        if (g.range(*e) != g.source(*f)) return false;
    }
    return true;
}

struct PathEnumeration {
    std::set<Path> paths;
    bool partial{false};
};

/// All length-n paths from v, inspecting at most `horizon` edges of any
/// infinite out-edge stream; `partial` reports whether such truncation
/// occurred along the way.
inline PathEnumeration enumerate_paths(const Graph& g, const VertexRef& v, std::size_t n,
                                       std::uint64_t horizon) {
    if (!g.valid_vertex(v)) throw unknown_vertex_error("vertex not in this graph");
    PathEnumeration result;
    if (n == 0) {
        result.paths.insert(trivial_path(g, v));
        return result;
    }
    struct Frame {
        Path p;
        VertexRef tip;
    };
    std::vector<Frame> frontier{{trivial_path(g, v), v}};
    for (std::size_t depth = 0; depth < n; ++depth) {
        std::vector<Frame> next;
        for (const Frame& fr : frontier) {
            auto out = g.out_edges(fr.tip, horizon);
            if (out.truncated) result.partial = true;
            for (const EdgeRef& e : out.edges) {
                Frame nf{fr.p, g.range(e)};
                nf.p.edges.push_back(e);
                if (nf.p.edges.size() == 1) nf.p.base = g.source(e);
                next.push_back(std::move(nf));
            }
        }
        frontier = std::move(next);
    }
    for (Frame& fr : frontier) result.paths.insert(std::move(fr.p));
    return result;
}

inline PathEnumeration enumerate_paths(const Graph& g, const std::string& vertex, std::size_t n,
                                       std::uint64_t horizon) {
    auto v = g.find_vertex(vertex);
    if (!v) throw unknown_vertex_error("unknown vertex '" + vertex + "'");
    return enumerate_paths(g, *v, n, horizon);
}

/// Composite id for a path, used by the higher block constructions.
inline std::string path_block_id(const Graph& g, const Path& p) {
    std::string id;
    for (std::size_t i = 0; i < p.edges.size(); ++i) {
        if (i) id += '-';
        id += g.edge_id(p.edges[i]);
    }
    return id;
}

/// The graph whose vertices are the length N-1 paths and whose edges are the
/// length N paths, with source the leading and range the trailing subpath.
/// Only fully materializable graphs are accepted: an infinite edge family
/// would make the path enumeration partial.
inline Graph higher_block_graph(const Graph& g, std::size_t n) {
    if (n < 2) throw error("higher block graphs need N >= 2");
    if (g.has_generators())
        throw not_row_finite_error(
            "higher block graph requires a fully enumerable (finite) graph");
    Graph h(g.name() + "_hb" + std::to_string(n));
    std::set<Path> vertices;
    std::set<Path> edges;
    for (std::uint64_t i = 0; i < g.explicit_vertex_count(); ++i) {
        VertexRef v{VertexRef::Kind::Explicit, 0, i};
        for (const Path& p : enumerate_paths(g, v, n - 1, 1).paths) vertices.insert(p);
        for (const Path& p : enumerate_paths(g, v, n, 1).paths) edges.insert(p);
    }
    for (const Path& p : vertices) h.add_vertex(path_block_id(g, p));
    for (const Path& p : edges) {
        Path head{p.base, {p.edges.begin(), p.edges.end() - 1}};
        Path tail{g.source(p.edges[1]), {p.edges.begin() + 1, p.edges.end()}};
        h.add_edge(path_block_id(g, p), path_block_id(g, head), path_block_id(g, tail));
    }
    return h;
}

/// Graph presentation of a 1-step shift: one vertex per symbol up to the
/// horizon, an edge a -> b whenever the pair ab is not forbidden. When the
/// alphabet extends past the horizon the result is marked truncated.
inline Graph one_step_to_graph(std::uint32_t alphabet_horizon, const std::set<Word>& forbidden,
                               std::optional<std::uint32_t> alphabet_size = std::nullopt) {
    for (const Word& w : forbidden)
        if (w.size() != 2) throw error("one-step construction expects length-2 blocks");
    const std::uint32_t count =
        alphabet_size ? std::min(*alphabet_size, alphabet_horizon) : alphabet_horizon;
    Graph g("onestep");
    for (std::uint32_t i = 1; i <= count; ++i) g.add_vertex("a" + std::to_string(i));
    for (std::uint32_t i = 1; i <= count; ++i)
        for (std::uint32_t j = 1; j <= count; ++j) {
            if (forbidden.contains(word({i, j}))) continue;
            g.add_edge("a" + std::to_string(i) + "-a" + std::to_string(j),
                       "a" + std::to_string(i), "a" + std::to_string(j));
        }
    if (!alphabet_size || *alphabet_size > alphabet_horizon) g.mark_horizon_truncated();
    return g;
}

/// A point of the boundary path space: an infinite path, or a finite path
/// (possibly of length zero) whose range is an infinite emitter.
struct BoundaryPathElement {
    std::variant<Seq, Path> value;

    static BoundaryPathElement infinite(Seq s) {
        if (!s.is_infinite()) throw error("boundary element tagged infinite must be infinite");
        return BoundaryPathElement{std::move(s)};
    }
    static BoundaryPathElement finite(Path p) { return BoundaryPathElement{std::move(p)}; }

    bool is_infinite() const { return std::holds_alternative<Seq>(value); }
    const Seq& seq() const { return std::get<Seq>(value); }
    const Path& path() const { return std::get<Path>(value); }

    friend bool operator==(const BoundaryPathElement&, const BoundaryPathElement&) = default;
};

inline VertexRef boundary_source(const Graph& g, const BoundaryPathElement& x) {
    if (x.is_infinite()) {
        auto e = g.edge_ref(x.seq().at(1));
        if (!e) throw error("boundary element uses a symbol that is not an edge");
        return g.source(*e);
    }
    return path_source(g, x.path());
}

inline bool boundary_contains(const Graph& g, const BoundaryPathElement& x) {
    if (x.is_infinite()) return is_infinite_edge_path(g, x.seq());
    const Path& p = x.path();
    if (!g.valid_vertex(p.base)) return false;
    for (std::size_t i = 0; i + 1 < p.edges.size(); ++i)
        if (g.range(p.edges[i]) != g.source(p.edges[i + 1])) return false;
    if (!p.edges.empty() && g.source(p.edges.front()) != p.base) return false;
    return g.classify_vertex(path_range(g, p)).kind == VertexClass::InfiniteEmitter;
}

}  // namespace shiftspace
