#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>

#include "shiftspace/codes.hpp"
#include "shiftspace/errors.hpp"
#include "shiftspace/graph.hpp"
#include "shiftspace/spaces.hpp"

namespace shiftspace {

/// A germ of shift equivalence on the boundary path space: two boundary
/// paths with a common tail together with the lag between them.
struct GroupoidElement {
    BoundaryPathElement x;  // alpha gamma
    long long k{0};         // l(alpha) - l(beta)
    BoundaryPathElement y;  // beta gamma

    friend bool operator==(const GroupoidElement&, const GroupoidElement&) = default;
};

inline BoundaryPathElement boundary_concat(const Graph& g, const Path& head,
                                           const BoundaryPathElement& tail) {
    if (tail.is_infinite()) {
        if (!head.edges.empty()) {
            auto first = g.edge_ref(tail.seq().at(1));
            if (!first || path_range(g, head) != g.source(*first))
                throw error("path does not compose with the boundary tail");
        }
        return BoundaryPathElement::infinite(concat(path_word(g, head), tail.seq()));
    }
    return BoundaryPathElement::finite(path_concat(g, head, tail.path()));
}

inline GroupoidElement make_groupoid_element(const Graph& g, const Path& alpha, const Path& beta,
                                             const BoundaryPathElement& gamma) {
    if (!boundary_contains(g, gamma))
        throw error("the tail is not a boundary path of the graph");
    const VertexRef tail_source = boundary_source(g, gamma);
    if (path_range(g, alpha) != tail_source || path_range(g, beta) != tail_source)
        throw error("both paths must end where the tail starts");
    return GroupoidElement{boundary_concat(g, alpha, gamma),
                           static_cast<long long>(alpha.length()) -
                               static_cast<long long>(beta.length()),
                           boundary_concat(g, beta, gamma)};
}

inline BoundaryPathElement groupoid_source(const GroupoidElement& e) { return e.x; }
inline BoundaryPathElement groupoid_range(const GroupoidElement& e) { return e.y; }

inline GroupoidElement groupoid_compose(const GroupoidElement& a, const GroupoidElement& b) {
    if (!(a.y == b.x)) throw not_composable_error("middle entries do not match");
    return GroupoidElement{a.x, a.k + b.k, b.y};
}

inline GroupoidElement groupoid_inverse(const GroupoidElement& a) {
    return GroupoidElement{a.y, -a.k, a.x};
}

inline GroupoidElement groupoid_unit(const BoundaryPathElement& x) {
    return GroupoidElement{x, 0, x};
}

namespace detail {

// The tail of a boundary path after stripping a finite prefix, when the
// prefix matches.
inline std::optional<BoundaryPathElement> boundary_strip(const Graph& g,
                                                         const BoundaryPathElement& x,
                                                         const Path& prefix) {
    if (x.is_infinite()) {
        const Word pw = path_word(g, prefix);
        if (!has_prefix(x.seq(), pw)) return std::nullopt;
        return BoundaryPathElement::infinite(shift_n(x.seq(), pw.size()));
    }
    const Path& p = x.path();
    if (prefix.edges.size() > p.edges.size()) return std::nullopt;
    if (!std::equal(prefix.edges.begin(), prefix.edges.end(), p.edges.begin()))
        return std::nullopt;
    if (prefix.edges.empty() && prefix.base != p.base) return std::nullopt;
    Path tail;
    if (prefix.edges.size() == p.edges.size()) {
        tail = trivial_path(g, path_range(g, p));
    } else {
        tail.edges.assign(p.edges.begin() + static_cast<std::ptrdiff_t>(prefix.edges.size()),
                          p.edges.end());
        tail.base = g.source(tail.edges.front());
    }
    return BoundaryPathElement::finite(std::move(tail));
}

}  // namespace detail

/// Membership in the basic groupoid cylinder indexed by a pair of paths with
/// a common range and a finite set of excluded first tail edges.
inline bool groupoid_cylinder_contains(const Graph& g, const Path& alpha, const Path& beta,
                                       const std::set<EdgeRef>& excluded,
                                       const GroupoidElement& e) {
    if (e.k != static_cast<long long>(alpha.length()) - static_cast<long long>(beta.length()))
        return false;
    auto tail_x = detail::boundary_strip(g, e.x, alpha);
    auto tail_y = detail::boundary_strip(g, e.y, beta);
    if (!tail_x || !tail_y || !(*tail_x == *tail_y)) return false;
    const BoundaryPathElement& gamma = *tail_x;
    if (boundary_source(g, gamma) != path_range(g, alpha)) return false;
    if (gamma.is_infinite()) {
        auto first = g.edge_ref(gamma.seq().at(1));
        return first && !excluded.contains(*first);
    }
    if (gamma.path().edges.empty()) return true;
    return !excluded.contains(gamma.path().edges.front());
}

namespace detail {

inline const Graph& edge_shift_graph(const ShiftPresentation& p, const char* which) {
    if (p.kind() != ShiftPresentation::Kind::EdgeShift)
        throw error(std::string("the ") + which + " of the witness must be an edge shift");
    return p.graph();
}

}  // namespace detail

/// The boundary-space transport of a conjugacy witness between edge shifts.
/// On paths of positive length it is the code itself; an infinite emitter
/// goes to the common range of the images of its incoming edges, probing up
/// to `horizon` of them and reporting any disagreement, which convicts the
/// witness of not being a conjugacy.
inline BoundaryPathElement induced_boundary_map(const ConjugacyWitness& w,
                                                const BoundaryPathElement& x,
                                                std::uint64_t horizon = 8) {
    const Graph& eg = detail::edge_shift_graph(w.source, "source");
    const Graph& fg = detail::edge_shift_graph(w.target, "target");
    if (!boundary_contains(eg, x)) throw error("not a boundary path of the source graph");

    if (x.is_infinite()) return BoundaryPathElement::infinite(apply(w.forward, x.seq()));

    const Path& p = x.path();
    if (p.length() >= 1) {
        const Word image = apply_to_finite(w.forward, path_word(eg, p));
        auto path = word_path(fg, image);
        if (!path || !boundary_contains(fg, BoundaryPathElement::finite(*path)))
            throw error("the image of a finite boundary path is not a boundary path");
        return BoundaryPathElement::finite(*path);
    }

    const VertexRef v = p.base;
    auto incoming = eg.in_edges(v);
    if (incoming.empty())
        throw no_incoming_edge_error("vertex '" + eg.vertex_id(v) +
                                     "' has no incoming edge to probe");
    if (incoming.size() > horizon) incoming.resize(horizon);
    std::optional<VertexRef> image_vertex;
    std::optional<EdgeRef> first_probe;
    for (const EdgeRef& e : incoming) {
        const Word image = apply_to_finite(w.forward, path_word(eg, make_path(eg, {e})));
        auto fe = fg.edge_ref(image.front());
        if (!fe) throw error("the image of an incoming probe is not an edge");
        const VertexRef r = fg.range(*fe);
        if (!image_vertex) {
            image_vertex = r;
            first_probe = e;
        } else if (*image_vertex != r) {
            throw well_definedness_violation(eg.edge_id(*first_probe), eg.edge_id(e));
        }
    }
    BoundaryPathElement out = BoundaryPathElement::finite(trivial_path(fg, *image_vertex));
    if (!boundary_contains(fg, out))
        throw error("the image vertex is not an infinite emitter of the target");
    return out;
}

/// The groupoid transport: apply the boundary map to both outer entries and
/// keep the lag.
inline GroupoidElement induced_groupoid_map(const ConjugacyWitness& w, const GroupoidElement& e,
                                            std::uint64_t horizon = 8) {
    return GroupoidElement{induced_boundary_map(w, e.x, horizon), e.k,
                           induced_boundary_map(w, e.y, horizon)};
}

}  // namespace shiftspace
