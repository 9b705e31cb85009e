#include <catch2/catch_amalgamated.hpp>

#include "shiftspace/graph.hpp"

using namespace shiftspace;

namespace {

// Two explicit vertices u, v with e: u->v, f: v->u and a loop g at v.
Graph make_g1() {
    Graph g("g1");
    g.add_vertex("u");
    g.add_vertex("v");
    g.add_edge("e", "u", "v");
    g.add_edge("f", "v", "u");
    g.add_edge("g", "v", "v");
    return g;
}

Graph make_ray() {
    Graph g("ray");
    g.add_vertex("v0");
    g.add_ray("v0", "e", "v");
    return g;
}

// u --m--> w, with infinitely many edges h_n out of w.
Graph make_h() {
    Graph g("H");
    g.add_vertex("u");
    g.add_vertex("w");
    g.add_edge("m", "u", "w");
    g.add_fan("w", "h", "w");
    return g;
}

// Brute-force oracle: all composable edge tuples of a fixed length starting
// at a vertex, on fully explicit graphs.
std::set<std::vector<std::string>> brute_paths(const Graph& g, const std::string& from,
                                               std::size_t n) {
    std::vector<EdgeRef> all;
    for (std::uint64_t i = 0; i < g.explicit_edge_count(); ++i)
        all.push_back(EdgeRef{EdgeRef::Kind::Explicit, 0, i});
    std::set<std::vector<std::string>> out;
    std::vector<EdgeRef> tuple(n);
    auto rec = [&](auto&& self, std::size_t depth) -> void {
        if (depth == n) {
            if (!tuple.empty() && g.vertex_id(g.source(tuple[0])) != from) return;
            for (std::size_t i = 0; i + 1 < tuple.size(); ++i)
                if (g.range(tuple[i]) != g.source(tuple[i + 1])) return;
            std::vector<std::string> ids;
            for (const EdgeRef& e : tuple) ids.push_back(g.edge_id(e));
            out.insert(ids);
            return;
        }
        for (const EdgeRef& e : all) {
            tuple[depth] = e;
            self(self, depth + 1);
        }
    };
    rec(rec, 0);
    return out;
}

std::set<std::vector<std::string>> id_paths(const Graph& g, const PathEnumeration& pe) {
    std::set<std::vector<std::string>> out;
    for (const Path& p : pe.paths) {
        std::vector<std::string> ids;
        for (const EdgeRef& e : p.edges) ids.push_back(g.edge_id(e));
        out.insert(ids);
    }
    return out;
}

}  // namespace

TEST_CASE("vertex classification") {
    Graph ray = make_ray();
    auto chain3 = ray.find_vertex("v3");
    REQUIRE(chain3);
    auto cls = ray.classify_vertex(*chain3);
    CHECK(cls.kind == VertexClass::FiniteEmitter);
    CHECK(cls.out_degree == 1);

    Graph sinky("s");
    sinky.add_vertex("a");
    CHECK(sinky.classify_vertex(*sinky.find_vertex("a")).kind == VertexClass::Sink);
    CHECK(sinky.find_sink().has_value());

    Graph h = make_h();
    CHECK(h.classify_vertex(*h.find_vertex("w")).kind == VertexClass::InfiniteEmitter);
    CHECK(h.classify_vertex(*h.find_vertex("u")).kind == VertexClass::FiniteEmitter);
    CHECK_FALSE(h.find_sink().has_value());

    CHECK_THROWS_AS(h.classify_vertex(VertexRef{VertexRef::Kind::Explicit, 0, 9}),
                    unknown_vertex_error);
}

TEST_CASE("path enumeration on an explicit graph") {
    Graph g1 = make_g1();
    auto from_u = enumerate_paths(g1, "u", 2, 8);
    CHECK_FALSE(from_u.partial);
    CHECK(id_paths(g1, from_u) ==
          std::set<std::vector<std::string>>{{"e", "f"}, {"e", "g"}});

    auto trivial = enumerate_paths(g1, "v", 0, 8);
    REQUIRE(trivial.paths.size() == 1);
    CHECK(trivial.paths.begin()->length() == 0);

    auto from_v = enumerate_paths(g1, "v", 2, 8);
    CHECK(id_paths(g1, from_v) ==
          std::set<std::vector<std::string>>{{"f", "e"}, {"g", "f"}, {"g", "g"}});

    CHECK_THROWS_AS(enumerate_paths(g1, "nope", 1, 8), unknown_vertex_error);
}

TEST_CASE("path enumeration matches the brute-force oracle") {
    Graph g1 = make_g1();
    for (const std::string& v : {"u", "v"})
        for (std::size_t n = 1; n <= 4; ++n)
            CHECK(id_paths(g1, enumerate_paths(g1, v, n, 8)) == brute_paths(g1, v, n));
}

TEST_CASE("enumerated paths compose") {
    for (const Graph& g : {make_g1(), make_h(), make_ray()})
        for (const VertexRef& v : g.vertices(3))
            for (const Path& p : enumerate_paths(g, v, 3, 3).paths)
                for (std::size_t i = 0; i + 1 < p.edges.size(); ++i)
                    CHECK(g.range(p.edges[i]) == g.source(p.edges[i + 1]));
}

TEST_CASE("path counts compose") {
    Graph g1 = make_g1();
    for (const std::string& u : {"u", "v"})
        for (std::size_t m = 1; m <= 3; ++m)
            for (std::size_t n = 1; n <= 3; ++n) {
                const std::size_t total = enumerate_paths(g1, u, m + n, 8).paths.size();
                std::size_t by_split = 0;
                for (const std::string& w : {"u", "v"}) {
                    std::size_t left = 0;
                    for (const Path& p : enumerate_paths(g1, u, m, 8).paths)
                        if (g1.vertex_id(path_range(g1, p)) == w) ++left;
                    by_split += left * enumerate_paths(g1, w, n, 8).paths.size();
                }
                CHECK(total == by_split);
            }
}

TEST_CASE("generated families enumerate stably") {
    Graph ray = make_ray();
    CHECK(ray.edge_id(*ray.edge_ref(Symbol{1})) == "e1");
    CHECK(ray.edge_id(*ray.edge_ref(Symbol{5})) == "e5");
    CHECK(ray.vertex_id(ray.range(*ray.edge_ref(Symbol{2}))) == "v2");
    CHECK(ray.vertex_id(ray.source(*ray.edge_ref(Symbol{1}))) == "v0");
    CHECK_FALSE(ray.edge_count().has_value());
    CHECK(ray.is_row_finite());

    Graph h = make_h();
    // Explicit edge m is symbol 1, then fan edges and their loops alternate.
    CHECK(h.edge_id(*h.edge_ref(Symbol{1})) == "m");
    CHECK(h.edge_id(*h.edge_ref(Symbol{2})) == "h1");
    CHECK(h.edge_id(*h.edge_ref(Symbol{3})) == "h1l");
    CHECK(h.edge_id(*h.edge_ref(Symbol{4})) == "h2");
    CHECK_FALSE(h.is_row_finite());
    for (std::uint32_t k = 1; k <= 40; ++k) {
        auto e = h.edge_ref(Symbol{k});
        REQUIRE(e);
        CHECK(h.edge_symbol(*e) == Symbol{k});
        CHECK(h.find_edge(h.edge_id(*e)) == e);
    }

    auto out = h.out_edges(*h.find_vertex("w"), 5);
    CHECK(out.truncated);
    CHECK(out.edges.size() == 5);
    auto in = h.in_edges(*h.find_vertex("w"));
    REQUIRE(in.size() == 1);
    CHECK(h.edge_id(in[0]) == "m");
    auto target_in = h.in_edges(*h.find_vertex("w2"));
    CHECK(target_in.size() == 2);
}

TEST_CASE("higher block graph") {
    Graph g1 = make_g1();
    Graph hb2 = higher_block_graph(g1, 2);
    CHECK(hb2.explicit_vertex_count() == 3);
    CHECK(hb2.explicit_edge_count() == 5);
    for (const std::string& id : {"e-f", "e-g", "f-e", "g-f", "g-g"})
        CHECK(hb2.find_edge(id).has_value());
    CHECK(hb2.vertex_id(hb2.range(*hb2.find_edge("e-f"))) == "f");
    CHECK(hb2.vertex_id(hb2.source(*hb2.find_edge("e-f"))) == "e");

    Graph loop("loop");
    loop.add_vertex("x");
    loop.add_edge("l", "x", "x");
    Graph lb = higher_block_graph(loop, 2);
    CHECK(lb.explicit_vertex_count() == 1);
    CHECK(lb.explicit_edge_count() == 1);
    CHECK(lb.find_edge("l-l").has_value());

    // Edge count of the N-block graph equals the number of length-N paths.
    for (std::size_t n = 2; n <= 4; ++n) {
        std::size_t path_count = 0;
        for (const std::string& v : {"u", "v"})
            path_count += brute_paths(g1, v, n).size();
        CHECK(higher_block_graph(g1, n).explicit_edge_count() == path_count);
    }
    CHECK(higher_block_graph(g1, 3).explicit_edge_count() == 8);

    CHECK_THROWS_AS(higher_block_graph(make_ray(), 2), not_row_finite_error);
    CHECK_THROWS_AS(higher_block_graph(g1, 1), error);
}

TEST_CASE("one step graph from forbidden pairs") {
    Graph a = one_step_to_graph(2, {word({1, 2})}, 2);
    CHECK_FALSE(a.horizon_truncated());
    CHECK(a.explicit_edge_count() == 3);
    for (const std::string& id : {"a1-a1", "a2-a1", "a2-a2"})
        CHECK(a.find_edge(id).has_value());
    CHECK_FALSE(a.find_edge("a1-a2").has_value());

    Graph b = one_step_to_graph(1, {}, 1);
    CHECK(b.explicit_vertex_count() == 1);
    CHECK(b.explicit_edge_count() == 1);

    // Pairs allowed only when the first index is 1 or the indices repeat.
    std::set<Word> forbidden;
    for (std::uint32_t i = 1; i <= 3; ++i)
        for (std::uint32_t j = 1; j <= 3; ++j)
            if (i != 1 && i != j) forbidden.insert(word({i, j}));
    Graph c = one_step_to_graph(3, forbidden);
    CHECK(c.horizon_truncated());
    CHECK(c.explicit_edge_count() == 5);
    for (const std::string& id : {"a1-a1", "a1-a2", "a1-a3", "a2-a2", "a3-a3"})
        CHECK(c.find_edge(id).has_value());

    CHECK_THROWS_AS(one_step_to_graph(2, {word({1, 1, 1})}), error);
}

TEST_CASE("boundary path membership") {
    Graph g1 = make_g1();
    // Over g1 the edge alphabet is e=1, f=2, g=3.
    CHECK(boundary_contains(g1, BoundaryPathElement::infinite(Seq::periodic(word({1, 2})))));
    CHECK_FALSE(boundary_contains(g1, BoundaryPathElement::infinite(Seq::periodic(word({1, 1})))));
    CHECK_FALSE(
        boundary_contains(g1, BoundaryPathElement::finite(trivial_path(g1, *g1.find_vertex("u")))));

    Graph h = make_h();
    CHECK(boundary_contains(h, BoundaryPathElement::finite(trivial_path(h, *h.find_vertex("w")))));
    auto m = *h.find_edge("m");
    CHECK(boundary_contains(h, BoundaryPathElement::finite(make_path(h, {m}))));
    // A path ending at a fan target is not a boundary path: the target only
    // carries its own loop.
    auto h1 = *h.find_edge("h1");
    auto h1l = *h.find_edge("h1l");
    CHECK_FALSE(boundary_contains(h, BoundaryPathElement::finite(make_path(h, {h1, h1l}))));
}

TEST_CASE("word and path conversions") {
    Graph g1 = make_g1();
    auto p = word_path(g1, word({1, 2, 1}));  // e f e
    REQUIRE(p);
    CHECK(path_word(g1, *p) == word({1, 2, 1}));
    CHECK_FALSE(word_path(g1, word({1, 1})).has_value());  // e does not follow e
    CHECK_FALSE(word_path(g1, word({9})).has_value());
    CHECK(is_infinite_edge_path(g1, Seq::periodic(word({1, 2}))));
    CHECK(is_infinite_edge_path(g1, Seq::periodic(word({3}))));
    CHECK(is_infinite_edge_path(g1, Seq::eventually_periodic(word({1}), word({2, 1}))));
    CHECK_FALSE(is_infinite_edge_path(g1, Seq::eventually_periodic(word({2}), word({2, 1}))));
}
