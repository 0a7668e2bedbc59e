#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <set>

#include "mge/oracle.hpp"

using namespace mge;

namespace {

std::map<int, BigNat> slow_census(const Graph& g) {
    std::map<int, BigNat> hist;
    auto stream = enumerate_embeddings(g);
    while (auto e = stream.next()) ++hist[count_faces(*e)];
    return hist;
}

}  // namespace

TEST_CASE("rotation counts", "[oracle]") {
    CHECK(rotation_count(build_complete_bipartite(2, 3)) == 4);
    CHECK(rotation_count(build_complete_bipartite(3, 3)) == 64);
    CHECK(rotation_count(build_complete_bipartite(2, 5)) == 576);
    CHECK(rotation_count(build_complete_bipartite(3, 5)) == 442368);
    CHECK(rotation_count(build_complete_bipartite(2, 7)) == 518400);
    CHECK(rotation_count(build_complete_bipartite(5, 5)) == BigNat("63403380965376"));
    CHECK(rotation_count(build_complete_bipartite(1, 1)) == 1);
}

TEST_CASE("enumeration is exact and duplicate-free", "[oracle]") {
    for (auto [p, q, expect] : {std::tuple{2, 3, 4}, {3, 3, 64}, {2, 5, 576}}) {
        auto stream = enumerate_embeddings(build_complete_bipartite(p, q));
        std::set<std::string> seen;
        std::size_t count = 0;
        while (auto e = stream.next()) {
            ++count;
            CHECK(seen.insert(serialize(*e)).second);
        }
        CHECK(count == static_cast<std::size_t>(expect));
    }
}

TEST_CASE("enumeration order is deterministic and lexicographic-first", "[oracle]") {
    Graph g = build_complete_bipartite(3, 3);
    {
        auto head = enumerate_embeddings(g);
        auto first = head.next();
        REQUIRE(first.has_value());
        // the first system carries every rotation in sorted neighbor order
        for (int i = 1; i <= 3; ++i) {
            CHECK(first->rotation_neighbors(vx(i)) == std::vector<int>{1, 2, 3});
            CHECK(first->rotation_neighbors(vy(i)) == std::vector<int>{1, 2, 3});
        }
    }
    auto a = enumerate_embeddings(g);
    auto b = enumerate_embeddings(g);
    while (true) {
        auto ea = a.next(), eb = b.next();
        CHECK(ea.has_value() == eb.has_value());
        if (!ea) break;
        CHECK(*ea == *eb);
    }
}

TEST_CASE("partition blocks cover the stream exactly once", "[oracle]") {
    Graph g = build_complete_bipartite(3, 3);
    REQUIRE(EmbeddingStream::partition_block_count(g) == 2);
    std::set<std::string> whole;
    {
        auto stream = enumerate_embeddings(g);
        while (auto e = stream.next()) whole.insert(serialize(*e));
    }
    std::set<std::string> merged;
    std::size_t total = 0;
    for (std::uint64_t b = 0; b < 2; ++b) {
        auto stream = enumerate_embeddings(g, default_enumeration_budget(), b);
        while (auto e = stream.next()) {
            ++total;
            CHECK(merged.insert(serialize(*e)).second);  // blocks are disjoint
        }
    }
    CHECK(total == 64);
    CHECK(merged == whole);
    CHECK_THROWS_AS(enumerate_embeddings(g, default_enumeration_budget(), 2),
                    InvalidArgument);
}

TEST_CASE("budget refusal names the required count", "[oracle]") {
    Graph k55 = build_complete_bipartite(5, 5);
    CHECK_THROWS_AS(enumerate_embeddings(k55), BudgetExceeded);
    try {
        face_census(k55);
        FAIL("census of K_{5,5} must be refused by the default budget");
    } catch (const BudgetExceeded& e) {
        CHECK(e.required() == "63403380965376");
        CHECK(std::string(e.what()).find("63403380965376") != std::string::npos);
    }
    // a raised budget changes the verdict for a small graph with a tiny cap
    CHECK_THROWS_AS(face_census(build_complete_bipartite(3, 3), {BigNat(63), 1}),
                    BudgetExceeded);
    CHECK(face_census(build_complete_bipartite(3, 3), {BigNat(64), 1}).total_systems == 64);
}

TEST_CASE("census of K_{2,3}", "[oracle]") {
    auto r = face_census(build_complete_bipartite(2, 3));
    CHECK(r.total_systems == 4);
    CHECK(r.by_face_count == std::map<int, BigNat>{{1, 2}, {3, 2}});
    CHECK(r.one_face == 2);
    CHECK(r.max_genus_count == 2);
    CHECK(r.min_face_count == 1);
    CHECK(r.max_genus == 1);
}

TEST_CASE("census of K_{2,5} and K_{3,3}", "[oracle]") {
    auto r25 = face_census(build_complete_bipartite(2, 5));
    CHECK(r25.total_systems == 576);
    CHECK(r25.by_face_count == std::map<int, BigNat>{{1, 192}, {3, 360}, {5, 24}});
    CHECK(r25.one_face == 192);

    auto r33 = face_census(build_complete_bipartite(3, 3));
    CHECK(r33.total_systems == 64);
    CHECK(r33.by_face_count == std::map<int, BigNat>{{1, 24}, {3, 40}});
    CHECK(r33.one_face == 24);
    CHECK(r33.max_genus == 2);
}

TEST_CASE("census of K_{4,4}", "[oracle]") {
    auto r = face_census(build_complete_bipartite(4, 4), {default_enumeration_budget(), 2});
    CHECK(r.total_systems == 1679616);
    CHECK(r.by_face_count ==
          std::map<int, BigNat>{{2, 1089504}, {4, 565020}, {6, 24984}, {8, 108}});
    CHECK(r.one_face == 0);  // beta is odd, so two faces is the best possible
    CHECK(r.min_face_count == 2);
    CHECK(r.max_genus == 4);
}

TEST_CASE("face-count parity matches n - m", "[oracle]") {
    for (auto [p, q] : {std::pair{2, 3}, {3, 3}, {2, 5}, {4, 4}}) {
        Graph g = build_complete_bipartite(p, q);
        auto r = face_census(g);
        int parity = ((g.vertex_count() - g.edge_count()) % 2 + 2) % 2;
        for (const auto& [faces, count] : r.by_face_count) {
            CHECK(faces % 2 == parity);
            int genus = genus_for_face_count(g, faces);  // integral and >= 0, or throws
            CHECK(genus <= betti(g) / 2);
        }
    }
}

TEST_CASE("census merging is independent of the worker count", "[oracle]") {
    for (auto [p, q] : {std::pair{2, 5}, {3, 3}}) {
        Graph g = build_complete_bipartite(p, q);
        auto r1 = face_census(g, {default_enumeration_budget(), 1});
        auto r3 = face_census(g, {default_enumeration_budget(), 3});
        auto r8 = face_census(g, {default_enumeration_budget(), 8});
        CHECK(r1.by_face_count == r3.by_face_count);
        CHECK(r1.by_face_count == r8.by_face_count);
        CHECK(r1.total_systems == r8.total_systems);
    }
}

TEST_CASE("the parallel census agrees with the one-by-one trace", "[oracle]") {
    for (auto [p, q] : {std::pair{2, 3}, {3, 3}, {2, 5}}) {
        Graph g = build_complete_bipartite(p, q);
        CHECK(face_census(g, {default_enumeration_budget(), 4}).by_face_count == slow_census(g));
    }
}

TEST_CASE("count_max_genus", "[oracle]") {
    CHECK(count_max_genus(build_complete_bipartite(2, 3)) == 2);
    CHECK(count_max_genus(build_complete_bipartite(1, 1)) == 1);
    // beta even and one-face systems exist: the two quantities coincide
    auto r = face_census(build_complete_bipartite(3, 3));
    CHECK(count_max_genus(build_complete_bipartite(3, 3)) == r.one_face);
}

TEST_CASE("random systems are valid and seed-reproducible", "[oracle]") {
    auto gp = std::make_shared<const Graph>(build_complete_bipartite(4, 4));
    std::mt19937_64 a(42), b(42), c(43);
    bool all_same_c = true;
    for (int t = 0; t < 30; ++t) {
        Embedding ea = random_embedding(gp, a);
        Embedding eb = random_embedding(gp, b);
        Embedding ec = random_embedding(gp, c);
        CHECK(ea == eb);
        all_same_c = all_same_c && ea == ec;
        // rotations really are permutations of the incidence lists
        CHECK_NOTHROW(Embedding(gp, ea.rotations()));
        genus_for_face_count(*gp, count_faces(ea));
    }
    CHECK_FALSE(all_same_c);
}

TEST_CASE("census rendering", "[oracle]") {
    auto r = face_census(build_complete_bipartite(2, 3));
    auto table = render_census_table(r, false);
    CHECK(table.find("rotation systems: 4") != std::string::npos);
    CHECK(table.find("one-face systems: 2") != std::string::npos);
    CHECK(table.find("elapsed") == std::string::npos);
    CHECK(render_census_table(r, true).find("elapsed") != std::string::npos);
    auto records = render_census_records(r);
    CHECK(records.find("faces=1 count=2\n") != std::string::npos);
    CHECK(records.find("faces=3 count=2\n") != std::string::npos);
}
