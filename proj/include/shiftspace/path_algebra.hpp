#pragma once

#include <boost/rational.hpp>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "shiftspace/codes.hpp"
#include "shiftspace/errors.hpp"
#include "shiftspace/graph.hpp"

namespace shiftspace {

using Coeff = boost::rational<long long>;

/// A basis word alpha beta* of the path algebra: the pair of a path and a
/// ghost path with matching ranges.
struct AlgebraTerm {
    Path alpha;
    Path beta;

    friend auto operator<=>(const AlgebraTerm&, const AlgebraTerm&) = default;
};

/// A rational linear combination of alpha beta* words over a fixed ambient
/// graph. Terms whose path ranges disagree are identically zero and are
/// never stored; zero coefficients are dropped eagerly.
class AlgebraElement {
public:
    explicit AlgebraElement(std::shared_ptr<const Graph> g) : graph_(std::move(g)) {}

    static AlgebraElement zero(std::shared_ptr<const Graph> g) { return AlgebraElement(std::move(g)); }

    static AlgebraElement vertex(std::shared_ptr<const Graph> g, const VertexRef& v) {
        Path at = trivial_path(*g, v);
        return term(std::move(g), at, at);
    }

    /// s_e: the edge path against the ghost of the trivial path at r(e).
    static AlgebraElement edge(std::shared_ptr<const Graph> g, const EdgeRef& e) {
        Path alpha = make_path(*g, {e});
        Path beta = trivial_path(*g, g->range(e));
        return term(std::move(g), std::move(alpha), std::move(beta));
    }

    static AlgebraElement edge_adjoint(std::shared_ptr<const Graph> g, const EdgeRef& e) {
        Path beta = make_path(*g, {e});
        Path alpha = trivial_path(*g, g->range(e));
        return term(std::move(g), std::move(alpha), std::move(beta));
    }

    static AlgebraElement term(std::shared_ptr<const Graph> g, Path alpha, Path beta,
                               Coeff c = Coeff(1)) {
        AlgebraElement a(std::move(g));
        a.add_term(std::move(alpha), std::move(beta), c);
        return a;
    }

    const std::shared_ptr<const Graph>& graph_ptr() const { return graph_; }
    const Graph& graph() const { return *graph_; }
    const std::map<AlgebraTerm, Coeff>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(Path alpha, Path beta, Coeff c) {
        if (c == Coeff(0)) return;
        if (path_range(*graph_, alpha) != path_range(*graph_, beta)) return;
        AlgebraTerm t{std::move(alpha), std::move(beta)};
        auto [it, inserted] = terms_.try_emplace(std::move(t), c);
        if (!inserted) {
            it->second += c;
            if (it->second == Coeff(0)) terms_.erase(it);
        }
    }

    AlgebraElement& operator+=(const AlgebraElement& other) {
        require_same_graph(other);
        for (const auto& [t, c] : other.terms_) add_term(t.alpha, t.beta, c);
        return *this;
    }

    AlgebraElement& operator-=(const AlgebraElement& other) {
        require_same_graph(other);
        for (const auto& [t, c] : other.terms_) add_term(t.alpha, t.beta, -c);
        return *this;
    }

    friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
    friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }

    AlgebraElement scaled(Coeff c) const {
        AlgebraElement r(graph_);
        if (c == Coeff(0)) return r;
        for (const auto& [t, k] : terms_) r.terms_[t] = k * c;
        return r;
    }

    /// deg(alpha beta*) = l(alpha) - l(beta); the set of degrees present.
    std::set<long long> degrees() const {
        std::set<long long> d;
        for (const auto& [t, c] : terms_) {
            (void)c;
            d.insert(static_cast<long long>(t.alpha.length()) -
                     static_cast<long long>(t.beta.length()));
        }
        return d;
    }

    bool homogeneous() const { return degrees().size() <= 1; }

    void require_same_graph(const AlgebraElement& other) const {
        if (graph_ != other.graph_)
            throw graph_mismatch_error("elements live over different ambient graphs");
    }

private:
    std::shared_ptr<const Graph> graph_;
    std::map<AlgebraTerm, Coeff> terms_;
};

namespace detail {

inline bool path_is_prefix(const Path& a, const Path& b) {
    if (a.edges.size() > b.edges.size()) return false;
    if (a.edges.empty()) return a.base == b.base;
    return std::equal(a.edges.begin(), a.edges.end(), b.edges.begin());
}

inline Path path_suffix(const Graph& g, const Path& whole, std::size_t after) {
    if (after == whole.edges.size()) return trivial_path(g, path_range(g, whole));
    Path p;
    p.edges.assign(whole.edges.begin() + static_cast<std::ptrdiff_t>(after), whole.edges.end());
    p.base = g.source(p.edges.front());
    return p;
}

}  // namespace detail

/// Bilinear product driven by the ghost-edge cancellation rule: the ghost
/// part of the left factor must be an initial segment of the path part of
/// the right factor, or the other way around; everything else multiplies to
/// zero.
inline AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) {
    a.require_same_graph(b);
    const Graph& g = a.graph();
    AlgebraElement out(a.graph_ptr());
    for (const auto& [ta, ca] : a.terms())
        for (const auto& [tb, cb] : b.terms()) {
            const Path& beta = ta.beta;
            const Path& gamma = tb.alpha;
            if (detail::path_is_prefix(beta, gamma)) {
                Path rest = detail::path_suffix(g, gamma, beta.edges.size());
                out.add_term(path_concat(g, ta.alpha, rest), tb.beta, ca * cb);
            } else if (detail::path_is_prefix(gamma, beta)) {
                Path rest = detail::path_suffix(g, beta, gamma.edges.size());
                out.add_term(ta.alpha, path_concat(g, tb.beta, rest), ca * cb);
            }
        }
    return out;
}

/// The involution: swaps each path with its ghost; rational coefficients
/// are their own conjugates.
inline AlgebraElement adjoint(const AlgebraElement& a) {
    AlgebraElement out(a.graph_ptr());
    for (const auto& [t, c] : a.terms()) out.add_term(t.beta, t.alpha, c);
    return out;
}

namespace detail {

inline void require_expandable(const Graph& g) {
    if (g.has_generators())
        throw unsupported_graph_error("equality needs a finite row-finite graph");
    if (g.find_sink())
        throw unsupported_graph_error("equality needs a graph without sinks");
}

// Rewrites every term until min(l(alpha), l(beta)) is exactly `depth`,
// using the vertex resolution alpha beta* = sum over e at r(alpha) of
// (alpha e)(beta e)*. Distinct terms at a common depth have disjoint
// supports, so equality of the rewritten coefficient maps decides equality.
inline std::map<AlgebraTerm, Coeff> expand_to_depth(const AlgebraElement& a, std::size_t depth) {
    const Graph& g = a.graph();
    std::map<AlgebraTerm, Coeff> out;
    for (const auto& [t, c] : a.terms()) {
        const std::size_t have = std::min(t.alpha.length(), t.beta.length());
        if (have >= depth) {
            out[t] += c;
            continue;
        }
        const std::size_t grow = depth - have;
        auto tails = enumerate_paths(g, path_range(g, t.alpha), grow, 1);
        for (const Path& tail : tails.paths) {
            AlgebraTerm nt{path_concat(g, t.alpha, tail), path_concat(g, t.beta, tail)};
            out[nt] += c;
        }
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second == Coeff(0) ? out.erase(it) : std::next(it);
    return out;
}

}  // namespace detail

/// Equality modulo the vertex resolution relation, decided by expanding both
/// sides to a common depth. Requires a finite graph without sinks.
inline bool equal(const AlgebraElement& a, const AlgebraElement& b) {
    a.require_same_graph(b);
    detail::require_expandable(a.graph());
    std::size_t depth = 0;
    for (const auto* e : {&a, &b})
        for (const auto& [t, c] : e->terms()) {
            (void)c;
            depth = std::max(depth, std::min(t.alpha.length(), t.beta.length()));
        }
    return detail::expand_to_depth(a, depth) == detail::expand_to_depth(b, depth);
}

/// The images of one graph's generating family inside the path algebra of
/// another, induced by a window map from length-n blocks of the first edge
/// shift onto the second graph's edges.
struct CkGeneratorImages {
    std::shared_ptr<const Graph> domain;    // generators come from here
    std::shared_ptr<const Graph> codomain;  // images live here
    std::uint32_t window{1};
    std::map<EdgeRef, AlgebraElement> edge_images;
    std::map<VertexRef, AlgebraElement> vertex_images;
};

inline CkGeneratorImages ck_family_along_code(std::shared_ptr<const Graph> e_graph,
                                              std::shared_ptr<const Graph> f_graph,
                                              const BlockMap& phi) {
    for (const auto* g : {e_graph.get(), f_graph.get()}) {
        if (g->has_generators())
            throw unsupported_graph_error("the family transport needs finite graphs");
        if (g->find_sink())
            throw unsupported_graph_error("the family transport needs graphs without sinks");
    }
    const std::uint32_t n = phi.window;
    const Graph& eg = *e_graph;
    const Graph& fg = *f_graph;

    auto phi_of = [&](const Path& p) -> EdgeRef {
        auto it = phi.table.find(path_word(eg, p));
        if (it == phi.table.end())
            throw window_mismatch_error("the window map does not cover every length-n path");
        auto edge = fg.edge_ref(it->second);
        if (!edge) throw window_mismatch_error("a window image is not an edge of the codomain");
        return *edge;
    };

    CkGeneratorImages images;
    images.domain = e_graph;
    images.codomain = f_graph;
    images.window = n;

    for (std::uint64_t i = 0; i < eg.explicit_vertex_count(); ++i) {
        VertexRef v{VertexRef::Kind::Explicit, 0, i};
        std::set<EdgeRef> hit;
        for (const Path& beta : enumerate_paths(eg, v, n, 1).paths) hit.insert(phi_of(beta));
        AlgebraElement image = AlgebraElement::zero(f_graph);
        for (const EdgeRef& gedge : hit) {
            Path gp = make_path(fg, {gedge});
            image.add_term(gp, gp, Coeff(1));
        }
        images.vertex_images.emplace(v, std::move(image));
    }

    for (std::uint64_t i = 0; i < eg.explicit_edge_count(); ++i) {
        EdgeRef e{EdgeRef::Kind::Explicit, 0, i};
        std::set<EdgeRef> hit;
        for (const Path& tail : enumerate_paths(eg, eg.range(e), n - 1, 1).paths) {
            Path whole = path_concat(eg, make_path(eg, {e}), tail);
            hit.insert(phi_of(whole));
        }
        AlgebraElement image = AlgebraElement::zero(f_graph);
        for (const EdgeRef& gedge : hit)
            image += AlgebraElement::edge(f_graph, gedge);
        images.edge_images.emplace(e, std::move(image));
    }
    return images;
}

/// Pushes an element of the domain algebra through the generator images:
/// alpha beta* goes to the product of the edge images along alpha, the
/// vertex image at the shared range, and the adjoints back along beta.
inline AlgebraElement apply_ck_images(const CkGeneratorImages& images, const AlgebraElement& a) {
    if (a.graph_ptr() != images.domain)
        throw graph_mismatch_error("element does not live over the domain graph");
    const Graph& eg = *images.domain;
    AlgebraElement out = AlgebraElement::zero(images.codomain);
    for (const auto& [t, c] : a.terms()) {
        AlgebraElement acc = images.vertex_images.at(path_range(eg, t.alpha));
        for (auto it = t.alpha.edges.rbegin(); it != t.alpha.edges.rend(); ++it)
            acc = multiply(images.edge_images.at(*it), acc);
        // beta* reverses the ghost edges: (f1...fl)* = fl* ... f1*.
        for (auto it = t.beta.edges.rbegin(); it != t.beta.edges.rend(); ++it)
            acc = multiply(acc, adjoint(images.edge_images.at(*it)));
        out += acc.scaled(c);
    }
    return out;
}

struct CkFamilyCheck {
    bool valid{true};
    std::string relation;  // "orthogonality", "CK1", "CK2" when failed
    std::string witness;
};

/// Verifies that the transported family satisfies the defining relations:
/// the vertex images are mutually orthogonal idempotents, ghost-then-edge
/// products collapse onto range vertices, and every vertex resolves into
/// its outgoing edges.
inline CkFamilyCheck verify_ck_family(const CkGeneratorImages& images) {
    const Graph& eg = *images.domain;
    auto fail = [&](std::string rel, std::string wit) {
        return CkFamilyCheck{false, std::move(rel), std::move(wit)};
    };

    std::vector<VertexRef> vertices;
    for (std::uint64_t i = 0; i < eg.explicit_vertex_count(); ++i)
        vertices.push_back(VertexRef{VertexRef::Kind::Explicit, 0, i});

    for (const VertexRef& v : vertices)
        for (const VertexRef& w : vertices) {
            const AlgebraElement prod =
                multiply(images.vertex_images.at(v), images.vertex_images.at(w));
            const AlgebraElement expect = v == w ? images.vertex_images.at(v)
                                                 : AlgebraElement::zero(images.codomain);
            if (!equal(prod, expect))
                return fail("orthogonality", eg.vertex_id(v) + "," + eg.vertex_id(w));
        }

    for (std::uint64_t i = 0; i < eg.explicit_edge_count(); ++i) {
        EdgeRef e{EdgeRef::Kind::Explicit, 0, i};
        const AlgebraElement& se = images.edge_images.at(e);
        if (!equal(multiply(adjoint(se), se), images.vertex_images.at(eg.range(e))))
            return fail("CK1", eg.edge_id(e));
    }

    for (const VertexRef& v : vertices) {
        AlgebraElement sum = AlgebraElement::zero(images.codomain);
        for (const EdgeRef& e : eg.out_edges(v, 1).edges) {
            const AlgebraElement& se = images.edge_images.at(e);
            sum += multiply(se, adjoint(se));
        }
        if (!equal(images.vertex_images.at(v), sum)) return fail("CK2", eg.vertex_id(v));
    }
    return {};
}

/// The preimage expression certifying that the edge generator t_a of the
/// codomain lies in the image: s_e times the sum of s_f s_f* over the
/// second edges of windows mapping to a, where e is the forced first edge
/// of every window mapping to a.
inline AlgebraElement generator_preimage(const CkGeneratorImages& images, const EdgeRef& a,
                                         const BlockMap& phi) {
    const Graph& eg = *images.domain;
    const Graph& fg = *images.codomain;
    const std::uint32_t n = phi.window;

    std::vector<Path> preimages;
    for (std::uint64_t i = 0; i < eg.explicit_vertex_count(); ++i) {
        VertexRef v{VertexRef::Kind::Explicit, 0, i};
        for (const Path& beta : enumerate_paths(eg, v, n, 1).paths) {
            auto it = phi.table.find(path_word(eg, beta));
            if (it != phi.table.end() && fg.edge_ref(it->second) == std::optional<EdgeRef>(a))
                preimages.push_back(beta);
        }
    }
    if (preimages.empty())
        throw no_preimage_error("edge '" + fg.edge_id(a) + "' has no window preimage");
    const EdgeRef first = preimages.front().edges.front();
    for (const Path& p : preimages)
        if (p.edges.front() != first)
            throw error("window preimages disagree on their first edge");

    AlgebraElement se = AlgebraElement::edge(images.domain, first);
    if (n == 1) return se;

    std::set<EdgeRef> seconds;
    for (const Path& p : preimages) seconds.insert(p.edges[1]);
    AlgebraElement sum = AlgebraElement::zero(images.domain);
    for (const EdgeRef& f : seconds) {
        AlgebraElement sf = AlgebraElement::edge(images.domain, f);
        sum += multiply(sf, adjoint(sf));
    }
    return multiply(se, sum);
}

}  // namespace shiftspace
