#include <doctest.h>

#include <string>
#include <vector>

#include "fielde/errors.hpp"
#include "fielde/evaluator.hpp"
#include "fielde/field.hpp"
#include "fielde/kg.hpp"
#include "fielde/model.hpp"
#include "fielde/rng.hpp"
#include "oracles.hpp"

using namespace fielde;

namespace {

void set_row(ModelState& state, int id, const Vec& values) {
    auto row = state.entity(id);
    REQUIRE(row.size() == values.size());
    for (std::size_t i = 0; i < values.size(); ++i) row[i] = values[i];
}

KnowledgeGraph named_graph(int num_entities, std::vector<Triple> train, std::vector<Triple> test) {
    KnowledgeGraph kg;
    for (int i = 0; i < num_entities; ++i) kg.vocab.entity_id("e" + std::to_string(i));
    kg.vocab.relation_id("r");
    kg.train = std::move(train);
    kg.test = std::move(test);
    kg.build_filter_index();
    return kg;
}

}  // namespace

TEST_CASE("an exact trajectory hit ranks first on both sides") {
    ModelState state = make_uniform_field_model(3, make_constant_field({1.0, 0.0}), 1,
                                                Variant::distance, StepCoefficients{1.0, 1.0});
    set_row(state, 0, {0.0, 0.0});
    set_row(state, 1, {1.0, 0.0});
    set_row(state, 2, {5.0, 5.0});
    KnowledgeGraph kg = named_graph(3, {}, {Triple{0, 0, 1}});

    CHECK(score(state, Triple{0, 0, 1}) == 0.0);
    CHECK(rank_triple(state, Triple{0, 0, 1}, Side::tail, kg) == 1.0);
    CHECK(rank_triple(state, Triple{0, 0, 1}, Side::head, kg) == 1.0);

    const RankingReport report = evaluate(state, kg, Split::test);
    CHECK(report.n_t == 1);
    CHECK(report.mrr == 1.0);
    CHECK(report.hits1 == 1.0);
    CHECK(report.hits10 == 1.0);
}

TEST_CASE("duplicate entities share their rank as a tie") {
    ModelState state = make_uniform_field_model(4, make_constant_field({1.0, 0.0}), 1,
                                                Variant::distance, StepCoefficients{1.0, 1.0});
    set_row(state, 0, {0.0, 0.0});
    set_row(state, 1, {1.0, 0.0});
    set_row(state, 2, {5.0, 5.0});
    set_row(state, 3, {1.0, 0.0});  // scores exactly like entity 1 everywhere

    SUBCASE("the duplicate splits first place") {
        KnowledgeGraph kg = named_graph(4, {}, {Triple{0, 0, 1}});
        CHECK(rank_triple(state, Triple{0, 0, 1}, Side::tail, kg) == 1.5);
    }
    SUBCASE("a known-true duplicate is filtered out of the candidates") {
        KnowledgeGraph kg = named_graph(4, {Triple{0, 0, 3}}, {Triple{0, 0, 1}});
        CHECK(rank_triple(state, Triple{0, 0, 1}, Side::tail, kg) == 1.0);
    }
}

TEST_CASE("a hand-built semantic model reproduces exact report numbers") {
    // step (eta 1, lambda 0) makes the score the plain inner product, which is
    // symmetric, so head and tail ranks coincide triple by triple.
    ModelState state = make_uniform_field_model(4, make_constant_field({0.0, 0.0, 0.0, 0.0}), 1,
                                                Variant::semantic, StepCoefficients{1.0, 0.0});
    set_row(state, 0, {2.0, 0.0, 0.0, 0.0});
    set_row(state, 1, {1.5, 0.5, 0.0, 0.0});
    set_row(state, 2, {1.0, 0.0, 0.5, 0.0});
    set_row(state, 3, {1.0, 0.0, 1.0, 3.0});
    KnowledgeGraph kg =
        named_graph(4, {}, {Triple{0, 0, 0}, Triple{1, 0, 1}, Triple{2, 0, 2}});

    const RankingReport report = evaluate(state, kg, Split::test);
    CHECK(report.n_t == 3);
    CHECK(report.head_ranks == std::vector<double>{1.0, 2.0, 4.0});
    CHECK(report.tail_ranks == std::vector<double>{1.0, 2.0, 4.0});
    CHECK(report.mrr == 7.0 / 12.0);
    CHECK(report.hits1 == 2.0 / 6.0);
    CHECK(report.hits3 == 4.0 / 6.0);
    CHECK(report.hits10 == 1.0);
}

TEST_CASE("evaluating an empty split is an error") {
    ModelState state = make_uniform_field_model(2, make_constant_field({0.0}), 1,
                                                Variant::distance, StepCoefficients{1.0, 1.0});
    KnowledgeGraph kg = named_graph(2, {Triple{0, 0, 1}}, {Triple{0, 0, 1}});
    CHECK_THROWS_AS(evaluate(state, kg, Split::valid), LookupError);
}

TEST_CASE("ranks are invariant under doubling every entity") {
    // Linear and rotation fields are homogeneous and doubling is exact in
    // floating point, so every score doubles exactly and comparisons agree.
    Rng rng(57);
    auto doubled = [](const ModelState& state) {
        ModelState out = state;
        for (double& x : out.entities) x *= 2.0;
        return out;
    };
    auto check_invariance = [&](const ModelState& state, const KnowledgeGraph& kg) {
        const RankingReport a = evaluate(state, kg, Split::test);
        const RankingReport b = evaluate(doubled(state), kg, Split::test);
        CHECK(a.head_ranks == b.head_ranks);
        CHECK(a.tail_ranks == b.tail_ranks);
        CHECK(a.mrr == b.mrr);
        CHECK(a.hits1 == b.hits1);
        CHECK(a.hits3 == b.hits3);
        CHECK(a.hits10 == b.hits10);
    };

    SUBCASE("linear field, distance variant") {
        KnowledgeGraph kg = oracle::random_graph(12, 30, rng);
        Mat a(3, 3);
        for (double& x : a.data) x = rng.uniform(-1.0, 1.0);
        ModelState state = make_uniform_field_model(kg.vocab.num_entities(), make_linear_field(a),
                                                    kg.vocab.num_relations(), Variant::distance,
                                                    StepCoefficients{0.9, 0.7});
        for (double& x : state.entities) x = rng.uniform(-1.0, 1.0);
        check_invariance(state, kg);
    }
    SUBCASE("rotation field, semantic variant") {
        KnowledgeGraph kg = oracle::random_graph(12, 30, rng);
        ModelState state = make_uniform_field_model(
            kg.vocab.num_entities(), make_rotation_field(4, {0.3, -1.1}),
            kg.vocab.num_relations(), Variant::semantic, StepCoefficients{0.0, 1.0});
        for (double& x : state.entities) x = rng.uniform(-1.0, 1.0);
        check_invariance(state, kg);
    }
}

TEST_CASE("filtering never hurts the rank") {
    Rng rng(91);
    for (int round = 0; round < 6; ++round) {
        KnowledgeGraph kg = oracle::random_graph(15, 40, rng);
        ModelState state =
            oracle::random_model(kg.vocab.num_entities(), kg.vocab.num_relations(), rng);

        // Same splits, but a filter built from the test split alone, so train
        // and valid candidates are no longer excluded.
        KnowledgeGraph sparse = kg;
        sparse.train.clear();
        sparse.valid.clear();
        sparse.filter = FilterIndex{};
        sparse.build_filter_index();
        sparse.train = kg.train;
        sparse.valid = kg.valid;

        for (const Triple& t : kg.test) {
            for (Side side : {Side::head, Side::tail}) {
                CHECK(rank_triple(state, t, side, kg) <= rank_triple(state, t, side, sparse));
            }
        }
    }
}

TEST_CASE("evaluation matches a brute-force oracle on random graphs") {
    Rng rng(2024);
    for (int round = 0; round < 8; ++round) {
        KnowledgeGraph kg = oracle::random_graph(20, 50, rng);
        ModelState state =
            oracle::random_model(kg.vocab.num_entities(), kg.vocab.num_relations(), rng);

        const RankingReport got = evaluate(state, kg, Split::test);
        const RankingReport want = oracle::brute_evaluate(state, kg, Split::test);
        CHECK(got.n_t == want.n_t);
        CHECK(got.head_ranks == want.head_ranks);
        CHECK(got.tail_ranks == want.tail_ranks);
        CHECK(got.mrr == want.mrr);
        CHECK(got.hits1 == want.hits1);
        CHECK(got.hits3 == want.hits3);
        CHECK(got.hits10 == want.hits10);

        if (!kg.valid.empty()) {
            const RankingReport gv = evaluate(state, kg, Split::valid);
            const RankingReport wv = oracle::brute_evaluate(state, kg, Split::valid);
            CHECK(gv.mrr == wv.mrr);
            CHECK(gv.head_ranks == wv.head_ranks);
            CHECK(gv.tail_ranks == wv.tail_ranks);
        }
    }
}
