#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "mge/bounds.hpp"
#include "mge/construct.hpp"
#include "mge/oracle.hpp"

using namespace mge;

namespace {

std::set<std::string> serialized_set(const std::vector<GeneratedItem>& items) {
    std::set<std::string> out;
    for (const auto& item : items) out.insert(serialize(item.embedding));
    return out;
}

std::set<std::string> one_face_set(const Graph& g) {
    std::set<std::string> out;
    auto stream = enumerate_embeddings(g);
    while (auto e = stream.next())
        if (is_one_face(*e)) out.insert(serialize(*e));
    return out;
}

}  // namespace

TEST_CASE("the two base one-face systems of K_{2,3}", "[construct]") {
    auto bases = base_embeddings_k23();
    REQUIRE(bases.size() == 2);
    for (const auto& b : bases) {
        CHECK(is_one_face(b));
        CHECK(genus_of(b) == 1);
    }
    // both hubs share the same rotation in each of them, and the two
    // systems are mirror images of each other
    CHECK(bases[0].rotation_neighbors(vx(1)) == std::vector<int>{1, 2, 3});
    CHECK(bases[0].rotation_neighbors(vx(2)) == std::vector<int>{1, 2, 3});
    CHECK(bases[1].rotation_neighbors(vx(1)) == std::vector<int>{1, 3, 2});
    CHECK(bases[1].rotation_neighbors(vx(2)) == std::vector<int>{1, 3, 2});
    CHECK(mirror(bases[0]) == bases[1]);
}

TEST_CASE("inserting into the single corner of K_{1,1}", "[construct]") {
    Embedding e = k11_embedding();
    VTypeEdge vt{1, {2, 3}, {true, true}};
    for (int variant : {0, 1}) {
        InsertionChoice c{{Corner{vx(1), 0}}, variant};
        Embedding out = insert_vtype(e, vt, c);
        CHECK(out.graph().q() == 3);
        CHECK(out.graph().edge_count() == 3);
        // a tree has a single face; never more than the host's face count
        CHECK(count_faces(out) == 1);
        CHECK(count_faces(out) <= count_faces(e));
    }
    // the two variants give the two distinct cyclic orders at the midpoint
    InsertionChoice c0{{Corner{vx(1), 0}}, 0}, c1{{Corner{vx(1), 0}}, 1};
    CHECK(insert_vtype(e, vt, c0) != insert_vtype(e, vt, c1));
}

TEST_CASE("insert_vtype rejects inconsistent descriptions", "[construct]") {
    auto bases = base_embeddings_k23();
    const Embedding& e = bases[0];
    // stale corner
    CHECK_THROWS_AS(insert_vtype(e, VTypeEdge{1, {4, 5}, {true, true}},
                                 InsertionChoice{{Corner{vx(1), 7}}, 0}),
                    InsertionError);
    // endpoint flagged new but already present
    CHECK_THROWS_AS(insert_vtype(e, VTypeEdge{1, {2, 4}, {true, true}},
                                 InsertionChoice{{Corner{vx(1), 0}}, 0}),
                    InsertionError);
    // endpoint flagged existing but absent
    CHECK_THROWS_AS(insert_vtype(e, VTypeEdge{1, {4, 5}, {false, false}},
                                 InsertionChoice{{Corner{vx(1), 0}, Corner{vy(4), 0},
                                                  Corner{vy(5), 0}},
                                                 0}),
                    InsertionError);
    // new endpoint would leave a gap
    CHECK_THROWS_AS(insert_vtype(e, VTypeEdge{1, {5, 6}, {true, true}},
                                 InsertionChoice{{Corner{vx(1), 0}}, 0}),
                    InsertionError);
    // corner for the wrong vertex
    CHECK_THROWS_AS(insert_vtype(e, VTypeEdge{1, {4, 5}, {true, true}},
                                 InsertionChoice{{Corner{vx(2), 0}}, 0}),
                    InsertionError);
    // duplicate edge (midpoint already adjacent to an existing endpoint)
    CHECK_THROWS_AS(insert_vtype(e, VTypeEdge{1, {2, 3}, {false, false}},
                                 InsertionChoice{{Corner{vx(1), 0}, Corner{vy(2), 0},
                                                  Corner{vy(3), 0}},
                                                 0}),
                    InvalidArgument);
}

TEST_CASE("valid_completions at the first doubling stage", "[construct]") {
    auto bases = base_embeddings_k23();
    InsertionBatch batch = claim1_pair_batch(2);
    CHECK(min_completions(batch) == 18);
    for (const auto& b : bases) {
        CHECK(choice_space_size(b, batch) == 36);
        auto survivors = valid_completions(b, batch);
        CHECK(survivors.size() == 18);

        // survivors group into 9 corner pairs, each keeping exactly 2 of
        // the 4 splicing orders
        std::map<std::pair<int, int>, int> per_corner;
        std::set<std::pair<std::vector<int>, int>> survivor_keys;
        for (const auto& c : survivors) {
            REQUIRE(c.corners.size() == 4);
            ++per_corner[{c.corners[0].position, c.corners[1].position}];
            std::vector<int> pos;
            for (const auto& cr : c.corners) pos.push_back(cr.position);
            survivor_keys.insert({pos, c.variant});
        }
        CHECK(per_corner.size() == 9);
        for (const auto& [corner, hits] : per_corner) CHECK(hits == 2);

        // every survivor really is one-face; every complementary variant at
        // the same corners is not
        for (const auto& c : survivors) {
            CHECK(is_one_face(apply_batch(b, batch, c)));
            for (int v = 0; v < 4; ++v) {
                std::vector<int> pos;
                for (const auto& cr : c.corners) pos.push_back(cr.position);
                if (survivor_keys.count({pos, v})) continue;
                InsertionChoice other{c.corners, v};
                CHECK(count_faces(apply_batch(b, batch, other)) > 1);
            }
        }
    }
    // precondition: completions are defined over one-face hosts
    auto stream = enumerate_embeddings(build_complete_bipartite(2, 3));
    while (auto e = stream.next())
        if (!is_one_face(*e)) CHECK_THROWS_AS(valid_completions(*e, batch), InvalidArgument);
}

TEST_CASE("claim1_stage counts and composition", "[construct]") {
    auto bases = base_embeddings_k23();
    std::vector<Embedding> k25;
    for (const auto& b : bases) {
        auto stage = claim1_stage(b, 2);
        CHECK(stage.observed == 18);
        for (const auto& out : stage.outputs) {
            CHECK(out.embedding.graph().q() == 5);
            CHECK(is_one_face(out.embedding));
            k25.push_back(out.embedding);
        }
    }
    CHECK(k25.size() == 36);
    // the next doubling multiplies by 5*5*2
    auto stage3 = claim1_stage(k25.front(), 3);
    CHECK(stage3.observed == 50);
}

TEST_CASE("attach_x_stage on the base", "[construct]") {
    for (const auto& b : base_embeddings_k23()) {
        auto w = attach_x_stage(b, 3);
        CHECK(w.sub0_observed == 8);
        CHECK(w.outputs.size() == 8);
        CHECK(w.substep_observed.empty());  // s = 1: no further substeps
        CHECK(w.stage_floor == 8);
        for (const auto& [choices, emb] : w.outputs) {
            CHECK(emb.graph().p() == 3);
            CHECK(emb.graph().edge_count() == 9);
            CHECK(is_one_face(emb));
        }
    }
}

TEST_CASE("attach_x_stage substeps at n=5", "[construct]") {
    auto g25 = generate_claim1(5);
    REQUIRE(g25.size() == 36);
    std::uint64_t total = 0;
    for (const auto& item : g25) {
        auto w = attach_x_stage(item.embedding, 3);
        CHECK(w.sub0_observed == 8);
        REQUIRE(w.substep_observed.count(2));
        CHECK(w.substep_observed.at(2).first == 12);
        CHECK(w.substep_observed.at(2).second == 12);
        CHECK(w.outputs.size() == 96);
        CHECK(w.stage_floor == 96);
        total += w.outputs.size();
    }
    CHECK(total == 3456);
}

TEST_CASE("generated K_{2,m} families", "[construct]") {
    auto g25 = generate_claim1(5);
    CHECK(g25.size() == 36);
    CHECK(claim1_predicted_count(5) == 36);
    auto rep = verify_distinct(g25);
    CHECK(rep.unique_embeddings == 36);
    CHECK(rep.collisions.empty());
    for (const auto& item : g25) {
        CHECK(is_one_face(item.embedding));
        CHECK(replay(item.seq) == item.embedding);
    }
    // the generated family sits inside the oracle's one-face census
    auto oracle_set = one_face_set(build_complete_bipartite(2, 5));
    CHECK(oracle_set.size() == 192);
    for (const auto& text : serialized_set(g25)) CHECK(oracle_set.count(text) == 1);

    CHECK(claim1_predicted_count(7) == 1800);
    CHECK_THROWS_AS(generate_claim1(4), InvalidArgument);
    CHECK_THROWS_AS(generate_claim1(9, BigNat(100)), BudgetExceeded);
}

TEST_CASE("generate_all at n=3 matches the oracle", "[construct]") {
    auto items = generate_all(3);
    REQUIRE(items.size() == 16);
    auto rep = verify_distinct(items);
    CHECK(rep.unique_embeddings == 16);
    CHECK(rep.collisions.empty());
    CHECK(rep.self_mirror == 0);
    CHECK(rep.mirror_pairs == 8);  // the set is closed under reflection

    auto oracle_set = one_face_set(build_complete_bipartite(3, 3));
    CHECK(oracle_set.size() == 24);
    for (const auto& item : items) {
        CHECK(is_one_face(item.embedding));
        CHECK(genus_of(item.embedding) == 2);
        CHECK(oracle_set.count(serialize(item.embedding)) == 1);
        CHECK(replay(item.seq) == item.embedding);
    }
}

TEST_CASE("generation preconditions and budgets", "[construct]") {
    CHECK_THROWS_AS(generate_all(4), InvalidArgument);
    CHECK_THROWS_AS(generate_all(0), InvalidArgument);
    try {
        generate_all(5);  // exhaustive by default; predicted 7739670528
        FAIL("n=5 exhaustive must be refused by the default budget");
    } catch (const BudgetExceeded& e) {
        CHECK(e.required() == "7739670528");
    }
    auto k11 = generate_all(1);
    REQUIRE(k11.size() == 1);
    CHECK(k11[0].embedding == k11_embedding());
    CHECK(k11[0].seq.base_index == -1);
}

TEST_CASE("sampled generation is reproducible and job-independent", "[construct]") {
    GenerateOptions a;
    a.exhaustive = false;
    a.samples = 40;
    a.seed = 2024;
    auto ia = generate_all(5, a);
    REQUIRE(ia.size() == 40);
    auto b = a;
    b.jobs = 4;
    auto ib = generate_all(5, b);
    auto c = a;
    c.seed = 2025;
    auto ic = generate_all(5, c);
    bool same_b = true, same_c = true;
    for (std::size_t t = 0; t < ia.size(); ++t) {
        same_b = same_b && ia[t].seq == ib[t].seq && ia[t].embedding == ib[t].embedding;
        same_c = same_c && ia[t].seq == ic[t].seq;
    }
    CHECK(same_b);
    CHECK_FALSE(same_c);
    for (const auto& item : ia) {
        CHECK(item.embedding.graph().p() == 5);
        CHECK(is_one_face(item.embedding));
        CHECK(genus_of(item.embedding) == 8);
        CHECK(replay(item.seq) == item.embedding);
    }
}

TEST_CASE("verify_distinct reports planted duplicates and collisions", "[construct]") {
    auto items = generate_all(3);
    auto clean = verify_distinct(items);
    CHECK(clean.total == 16);
    CHECK(clean.duplicate_sequences == 0);
    CHECK(clean.injective());

    // same embedding, same provenance: a benign duplicate
    auto dup = items;
    dup.push_back(items[5]);
    auto rep = verify_distinct(dup);
    CHECK(rep.total == 17);
    CHECK(rep.unique_embeddings == 16);
    CHECK(rep.duplicate_sequences == 1);
    CHECK(rep.injective());

    // same embedding, different provenance: a collision with both trails
    auto bad = items;
    GeneratedItem forged = items[5];
    forged.seq.base_index = 1 - forged.seq.base_index;
    bad.push_back(forged);
    auto rep2 = verify_distinct(bad);
    CHECK_FALSE(rep2.injective());
    REQUIRE(rep2.collisions.size() == 1);
    CHECK(rep2.collisions[0].sequence_a == format_choice_sequence(items[5].seq));
    CHECK(rep2.collisions[0].sequence_b == format_choice_sequence(forged.seq));
}

TEST_CASE("predicted_count equals the closed form", "[construct]") {
    for (int n : {1, 3, 5, 7, 9, 11}) {
        INFO("n=" << n);
        CHECK(predicted_count(n) == f1(n));
    }
    CHECK_THROWS_AS(predicted_count(6), InvalidArgument);
}

TEST_CASE("verify_claims exhaustively at n=3", "[construct]") {
    auto rep = verify_claims(3, 0, 0);
    CHECK(rep.exhaustive);
    CHECK(rep.all_pass);
    CHECK(rep.base_mirror_pair);
    CHECK(rep.total_generated == 16);
    CHECK(rep.predicted == 16);
    bool saw_base = false, saw_sub0 = false, saw_overall = false;
    for (const auto& row : rep.rows) {
        if (row.stage == "base K_{2,3}") {
            saw_base = true;
            CHECK(row.floor == 2);
            CHECK(row.observed_min == 2);
        }
        if (row.stage == "attach k=3 sub 0") {
            saw_sub0 = true;
            CHECK(row.floor == 8);
            CHECK(row.observed_min == 8);
            CHECK(row.checked == 2);
        }
        if (row.stage == "overall") {
            saw_overall = true;
            CHECK(row.observed_min == 16);
        }
    }
    CHECK(saw_base);
    CHECK(saw_sub0);
    CHECK(saw_overall);
    auto table = render_claims_table(rep);
    CHECK(table.find("verdict: PASS") != std::string::npos);
    CHECK(table.find("mirror-related: yes") != std::string::npos);
}

TEST_CASE("verify_claims on sampled paths at n=5", "[construct]") {
    auto rep = verify_claims(5, 4, 7);
    CHECK_FALSE(rep.exhaustive);
    CHECK(rep.all_pass);
    std::map<std::string, std::uint64_t> floors;
    for (const auto& row : rep.rows) floors[row.stage] = row.floor;
    CHECK(floors.at("claim1 k=2") == 18);
    CHECK(floors.at("attach k=3 sub 0") == 8);
    CHECK(floors.at("attach k=3 sub 2") == 12);
    CHECK(floors.at("attach k=4 sub 0") == 27);
    CHECK(floors.at("attach k=4 sub 2") == 27);
    CHECK(floors.at("attach k=5 sub 0") == 64);
    CHECK(floors.at("attach k=5 sub 2") == 48);
}
