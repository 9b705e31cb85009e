#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "shiftspace/path_algebra.hpp"

using namespace shiftspace;

namespace {

std::shared_ptr<const Graph> shared_g1() {
    Graph g("g1");
    g.add_vertex("u");
    g.add_vertex("v");
    g.add_edge("e", "u", "v");
    g.add_edge("f", "v", "u");
    g.add_edge("g", "v", "v");
    return std::make_shared<const Graph>(std::move(g));
}

BlockMap pack_map(const Graph& e, const Graph& f, std::size_t n) {
    BlockMap phi;
    phi.window = static_cast<std::uint32_t>(n);
    for (std::uint64_t i = 0; i < e.explicit_vertex_count(); ++i) {
        VertexRef v{VertexRef::Kind::Explicit, 0, i};
        for (const Path& p : enumerate_paths(e, v, n, 1).paths)
            phi.table[path_word(e, p)] = f.edge_symbol(*f.find_edge(path_block_id(e, p)));
    }
    return phi;
}

BlockMap identity_map(const Graph& g) {
    BlockMap phi;
    phi.window = 1;
    for (std::uint64_t i = 0; i < g.explicit_edge_count(); ++i) {
        EdgeRef e{EdgeRef::Kind::Explicit, 0, i};
        phi.table[Word{g.edge_symbol(e)}] = g.edge_symbol(e);
    }
    return phi;
}

// All single terms (alpha, beta) with matching ranges and path length <= 2.
std::vector<AlgebraElement> small_terms(const std::shared_ptr<const Graph>& g) {
    std::vector<Path> paths;
    for (std::uint64_t i = 0; i < g->explicit_vertex_count(); ++i) {
        VertexRef v{VertexRef::Kind::Explicit, 0, i};
        for (std::size_t n = 0; n <= 2; ++n)
            for (const Path& p : enumerate_paths(*g, v, n, 1).paths) paths.push_back(p);
    }
    std::vector<AlgebraElement> out;
    for (const Path& a : paths)
        for (const Path& b : paths)
            if (path_range(*g, a) == path_range(*g, b))
                out.push_back(AlgebraElement::term(g, a, b));
    return out;
}

}  // namespace

TEST_CASE("products follow the ghost cancellation rule") {
    auto g = shared_g1();
    auto e = *g->find_edge("e");
    auto f = *g->find_edge("f");
    auto u = *g->find_vertex("u");
    auto v = *g->find_vertex("v");

    // Ghost then edge collapses onto the range vertex.
    auto se = AlgebraElement::edge(g, e);
    CHECK(equal(multiply(adjoint(se), se), AlgebraElement::vertex(g, v)));

    // Distinct edges annihilate.
    auto sf = AlgebraElement::edge(g, f);
    CHECK(multiply(adjoint(se), sf).is_zero());

    // Vertex idempotents act as identities on matching sources.
    CHECK(multiply(AlgebraElement::vertex(g, u), se).terms() == se.terms());
    CHECK(multiply(AlgebraElement::vertex(g, v), se).is_zero());
    CHECK(multiply(se, AlgebraElement::vertex(g, v)).terms() == se.terms());
}

TEST_CASE("terms with mismatched ranges vanish") {
    auto g1 = shared_g1();
    auto hb = std::make_shared<const Graph>(higher_block_graph(*g1, 2));
    Path ef = make_path(*hb, {*hb->find_edge("e-f")});
    Path gg = make_path(*hb, {*hb->find_edge("g-g")});
    CHECK(AlgebraElement::term(hb, ef, gg).is_zero());
    CHECK(adjoint(AlgebraElement::term(hb, ef, gg)).is_zero());
}

TEST_CASE("adjoint is an involutive antihomomorphism") {
    auto g = shared_g1();
    auto terms = small_terms(g);
    std::mt19937 rng(7);
    auto random_element = [&]() {
        AlgebraElement a = AlgebraElement::zero(g);
        for (int t = 0; t < 3; ++t) {
            const auto& pick = terms[rng() % terms.size()];
            long long num = static_cast<long long>(rng() % 7) - 3;
            a += pick.scaled(Coeff(num, 1 + static_cast<long long>(rng() % 3)));
        }
        return a;
    };
    for (int trial = 0; trial < 100; ++trial) {
        AlgebraElement a = random_element(), b = random_element();
        CHECK(adjoint(adjoint(a)).terms() == a.terms());
        CHECK(adjoint(multiply(a, b)).terms() == multiply(adjoint(b), adjoint(a)).terms());
    }
}

TEST_CASE("multiplication is associative on small terms") {
    auto g = shared_g1();
    auto terms = small_terms(g);
    for (const auto& a : terms)
        for (const auto& b : terms)
            for (const auto& c : terms)
                CHECK(multiply(multiply(a, b), c).terms() ==
                      multiply(a, multiply(b, c)).terms());
}

TEST_CASE("degrees add under multiplication") {
    auto g = shared_g1();
    for (const auto& a : small_terms(g))
        for (const auto& b : small_terms(g)) {
            auto prod = multiply(a, b);
            if (prod.is_zero() || a.is_zero() || b.is_zero()) continue;
            REQUIRE(prod.homogeneous());
            CHECK(*prod.degrees().begin() == *a.degrees().begin() + *b.degrees().begin());
        }
}

TEST_CASE("equality by depth expansion") {
    auto g = shared_g1();
    auto e = *g->find_edge("e");
    auto f = *g->find_edge("f");
    auto loop = *g->find_edge("g");
    auto u = *g->find_vertex("u");
    auto v = *g->find_vertex("v");

    auto se = AlgebraElement::edge(g, e);
    auto sf = AlgebraElement::edge(g, f);
    auto sg = AlgebraElement::edge(g, loop);

    // u emits only e, so its idempotent resolves through that edge alone.
    CHECK(equal(AlgebraElement::vertex(g, u), multiply(se, adjoint(se))));
    // v needs both of its outgoing edges.
    CHECK_FALSE(equal(AlgebraElement::vertex(g, v), multiply(sf, adjoint(sf))));
    CHECK(equal(AlgebraElement::vertex(g, v),
                multiply(sf, adjoint(sf)) + multiply(sg, adjoint(sg))));
    CHECK(equal(se, se));
    CHECK_FALSE(equal(se, sf));
    CHECK(equal(AlgebraElement::zero(g),
                AlgebraElement::vertex(g, u) - multiply(se, adjoint(se))));
}

TEST_CASE("depth expansion is confluent") {
    auto g = shared_g1();
    for (const auto& a : small_terms(g))
        for (std::size_t d = 0; d <= 2; ++d) {
            AlgebraElement once(g);
            for (const auto& [t, c] : detail::expand_to_depth(a, d)) once.add_term(t.alpha, t.beta, c);
            CHECK(detail::expand_to_depth(once, d + 1) == detail::expand_to_depth(a, d + 1));
        }
}

TEST_CASE("equality is a congruence on sampled elements") {
    auto g = shared_g1();
    auto u = *g->find_vertex("u");
    auto e = *g->find_edge("e");
    auto se = AlgebraElement::edge(g, e);
    auto pu = AlgebraElement::vertex(g, u);
    auto resolved = multiply(se, adjoint(se));
    REQUIRE(equal(pu, resolved));
    for (const auto& x : small_terms(g)) {
        CHECK(equal(multiply(pu, x), multiply(resolved, x)));
        CHECK(equal(multiply(x, pu), multiply(x, resolved)));
    }
}

TEST_CASE("equality needs finite sink-free graphs") {
    Graph fan("fan");
    fan.add_vertex("w");
    fan.add_fan("w");
    auto shared_fan = std::make_shared<const Graph>(std::move(fan));
    auto pw = AlgebraElement::vertex(shared_fan, *shared_fan->find_vertex("w"));
    CHECK_THROWS_AS(equal(pw, pw), unsupported_graph_error);

    Graph sinky("s");
    sinky.add_vertex("a");
    sinky.add_vertex("b");
    sinky.add_edge("x", "a", "b");
    auto shared_sinky = std::make_shared<const Graph>(std::move(sinky));
    auto pa = AlgebraElement::vertex(shared_sinky, *shared_sinky->find_vertex("a"));
    CHECK_THROWS_AS(equal(pa, pa), unsupported_graph_error);

    auto g = shared_g1();
    auto other = shared_g1();
    CHECK_THROWS_AS(multiply(AlgebraElement::vertex(g, *g->find_vertex("u")),
                             AlgebraElement::vertex(other, *other->find_vertex("u"))),
                    graph_mismatch_error);
}

TEST_CASE("family transport along the identity") {
    auto g = shared_g1();
    auto images = ck_family_along_code(g, g, identity_map(*g));
    auto e = *g->find_edge("e");
    auto v = *g->find_vertex("v");
    CHECK(images.edge_images.at(e).terms() == AlgebraElement::edge(g, e).terms());
    auto f = *g->find_edge("f");
    auto loop = *g->find_edge("g");
    auto expect = multiply(AlgebraElement::edge(g, f), adjoint(AlgebraElement::edge(g, f))) +
                  multiply(AlgebraElement::edge(g, loop), adjoint(AlgebraElement::edge(g, loop)));
    CHECK(equal(images.vertex_images.at(v), expect));
    CHECK(verify_ck_family(images).valid);
}

TEST_CASE("family transport along the 2-block recoding") {
    auto e_graph = shared_g1();
    auto f_graph = std::make_shared<const Graph>(higher_block_graph(*e_graph, 2));
    BlockMap phi = pack_map(*e_graph, *f_graph, 2);
    auto images = ck_family_along_code(e_graph, f_graph, phi);

    auto tef = AlgebraElement::edge(f_graph, *f_graph->find_edge("e-f"));
    auto teg = AlgebraElement::edge(f_graph, *f_graph->find_edge("e-g"));
    CHECK(images.edge_images.at(*e_graph->find_edge("e")).terms() == (tef + teg).terms());

    auto pu = images.vertex_images.at(*e_graph->find_vertex("u"));
    CHECK(equal(pu, multiply(tef, adjoint(tef)) + multiply(teg, adjoint(teg))));

    auto check = verify_ck_family(images);
    CAPTURE(check.relation, check.witness);
    CHECK(check.valid);

    // Deliberately zeroing an edge image breaks the first relation.
    auto broken = images;
    broken.edge_images.at(*e_graph->find_edge("e")) = AlgebraElement::zero(f_graph);
    auto failed = verify_ck_family(broken);
    CHECK_FALSE(failed.valid);
    CHECK(failed.relation == "CK1");
    CHECK(failed.witness == "e");
}

TEST_CASE("pushing elements through the transported family is multiplicative") {
    auto e_graph = shared_g1();
    auto f_graph = std::make_shared<const Graph>(higher_block_graph(*e_graph, 2));
    auto images = ck_family_along_code(e_graph, f_graph, pack_map(*e_graph, *f_graph, 2));
    auto terms = small_terms(e_graph);
    std::mt19937 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const auto& a = terms[rng() % terms.size()];
        const auto& b = terms[rng() % terms.size()];
        CHECK(equal(apply_ck_images(images, multiply(a, b)),
                    multiply(apply_ck_images(images, a), apply_ck_images(images, b))));
    }
}

TEST_CASE("every codomain edge generator has a certified preimage") {
    auto e_graph = shared_g1();
    auto f_graph = std::make_shared<const Graph>(higher_block_graph(*e_graph, 2));
    BlockMap phi = pack_map(*e_graph, *f_graph, 2);
    auto images = ck_family_along_code(e_graph, f_graph, phi);

    // The documented shape at e-f: s_e (s_f s_f*).
    auto expr = generator_preimage(images, *f_graph->find_edge("e-f"), phi);
    auto se = AlgebraElement::edge(e_graph, *e_graph->find_edge("e"));
    auto sf = AlgebraElement::edge(e_graph, *e_graph->find_edge("f"));
    CHECK(expr.terms() == multiply(se, multiply(sf, adjoint(sf))).terms());

    for (std::uint64_t i = 0; i < f_graph->explicit_edge_count(); ++i) {
        EdgeRef a{EdgeRef::Kind::Explicit, 0, i};
        auto pre = generator_preimage(images, a, phi);
        CHECK(equal(apply_ck_images(images, pre), AlgebraElement::edge(f_graph, a)));
    }

    // Identity transport: the preimage of an edge is that edge.
    auto g = shared_g1();
    auto id_images = ck_family_along_code(g, g, identity_map(*g));
    auto pre_e = generator_preimage(id_images, *g->find_edge("e"), identity_map(*g));
    CHECK(pre_e.terms() == AlgebraElement::edge(g, *g->find_edge("e")).terms());
}

TEST_CASE("unreached codomain edges have no preimage") {
    auto e_graph = shared_g1();
    Graph wide = higher_block_graph(*e_graph, 2);
    wide.add_edge("x", "e", "f");  // a parallel edge the window map never hits
    auto f_graph = std::make_shared<const Graph>(std::move(wide));
    BlockMap phi = pack_map(*e_graph, *f_graph, 2);
    auto images = ck_family_along_code(e_graph, f_graph, phi);
    CHECK_THROWS_AS(generator_preimage(images, *f_graph->find_edge("x"), phi),
                    no_preimage_error);
}

TEST_CASE("transported images preserve the grading") {
    auto e_graph = shared_g1();
    auto f_graph = std::make_shared<const Graph>(higher_block_graph(*e_graph, 2));
    auto images = ck_family_along_code(e_graph, f_graph, pack_map(*e_graph, *f_graph, 2));
    for (const auto& [e, img] : images.edge_images) {
        (void)e;
        REQUIRE(img.homogeneous());
        CHECK(*img.degrees().begin() == 1);
    }
    for (const auto& [v, img] : images.vertex_images) {
        (void)v;
        REQUIRE(img.homogeneous());
        CHECK(*img.degrees().begin() == 0);
    }
}
