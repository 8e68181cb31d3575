#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hexeval/core.hpp"

using namespace hexeval;

namespace {

LabelSpace abc() { return LabelSpace({"a", "b", "c"}); }

PredictionRecord with_probs(std::string id, int truth, std::initializer_list<double> probs) {
    PredictionRecord r;
    r.item_id = std::move(id);
    r.true_label = truth;
    Eigen::VectorXd v(static_cast<Eigen::Index>(probs.size()));
    Eigen::Index i = 0;
    for (double p : probs) v[i++] = p;
    r.probs = std::move(v);
    return r;
}

PredictionRecord with_label(std::string id, int truth, int predicted) {
    PredictionRecord r;
    r.item_id = std::move(id);
    r.true_label = truth;
    r.predicted_label = predicted;
    return r;
}

} // namespace

TEST_CASE("label space validates and indexes names") {
    const LabelSpace space = abc();
    CHECK(space.size() == 3);
    CHECK(space.name(1) == "b");
    CHECK(space.index_of("c") == 2);
    CHECK(space.find("d") == std::nullopt);
    CHECK_THROWS_AS(space.index_of("d"), ValidationError);
    CHECK_THROWS_AS(LabelSpace({"solo"}), ValidationError);
    CHECK_THROWS_AS(LabelSpace({"a", "a"}), ValidationError);
    CHECK_THROWS_AS(LabelSpace({"a", ""}), ValidationError);
    CHECK(space == abc());
    CHECK(space != LabelSpace({"a", "b"}));
}

TEST_CASE("argmax breaks ties toward the lowest index") {
    Eigen::VectorXd v(4);
    v << 0.2, 0.4, 0.4, 0.1;
    CHECK(argmax(v) == 1);
    v << 0.25, 0.25, 0.25, 0.25;
    CHECK(argmax(v) == 0);
}

TEST_CASE("resolved_label prefers the explicit label and reports the item") {
    PredictionRecord r = with_probs("x", 0, {0.2, 0.8});
    CHECK(resolved_label(r) == 1);
    r.predicted_label = 1;
    CHECK(resolved_label(r) == 1);

    PredictionRecord empty;
    empty.item_id = "ghost";
    empty.true_label = 0;
    try {
        resolved_label(empty);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("ghost") != std::string::npos);
    }
}

TEST_CASE("prediction set validation") {
    SUBCASE("accepts consistent records") {
        const PredictionSet set(abc(), {with_probs("1", 0, {0.5, 0.3, 0.2}),
                                        with_label("2", 1, 1)});
        CHECK(set.size() == 2);
    }
    SUBCASE("rejects duplicate ids") {
        CHECK_THROWS_AS(PredictionSet(abc(), {with_label("1", 0, 0), with_label("1", 1, 1)}),
                        ValidationError);
    }
    SUBCASE("rejects out-of-range labels") {
        CHECK_THROWS_AS(PredictionSet(abc(), {with_label("1", 3, 0)}), ValidationError);
        CHECK_THROWS_AS(PredictionSet(abc(), {with_label("1", 0, -1)}), ValidationError);
    }
    SUBCASE("rejects wrong-length probability vectors") {
        CHECK_THROWS_AS(PredictionSet(abc(), {with_probs("1", 0, {0.5, 0.5})}),
                        ValidationError);
    }
    SUBCASE("rejects entries outside [0,1]") {
        CHECK_THROWS_AS(PredictionSet(abc(), {with_probs("1", 0, {1.2, -0.1, -0.1})}),
                        ValidationError);
    }
    SUBCASE("enforces the 1e-6 sum tolerance") {
        CHECK_NOTHROW(PredictionSet(abc(), {with_probs("1", 0, {0.5, 0.3, 0.2 + 5e-7})}));
        CHECK_THROWS_AS(PredictionSet(abc(), {with_probs("1", 0, {0.5, 0.3, 0.2 + 5e-6})}),
                        ValidationError);
    }
    SUBCASE("rejects an explicit label disagreeing with argmax") {
        PredictionRecord r = with_probs("1", 0, {0.7, 0.2, 0.1});
        r.predicted_label = 1;
        CHECK_THROWS_AS(PredictionSet(abc(), {r}), ValidationError);
        r.predicted_label = 0;
        CHECK_NOTHROW(PredictionSet(abc(), {r}));
    }
    SUBCASE("rejects records with no model output") {
        PredictionRecord r;
        r.item_id = "1";
        r.true_label = 0;
        CHECK_THROWS_AS(PredictionSet(abc(), {r}), ValidationError);
    }
}

TEST_CASE("build_cm counts actual rows against predicted columns") {
    const PredictionSet set(abc(), {
                                       with_probs("1", 0, {0.7, 0.2, 0.1}), // a -> a
                                       with_probs("2", 0, {0.1, 0.8, 0.1}), // a -> b
                                       with_label("3", 1, 1),               // b -> b
                                       with_label("4", 2, 0),               // c -> a
                                       with_label("5", 2, 2),               // c -> c
                                   });
    const ConfusionMatrix cm = build_cm(set);
    CHECK(cm.total() == 5);
    CHECK(cm.trace() == 3);
    CHECK(cm.counts()(0, 0) == 1);
    CHECK(cm.counts()(0, 1) == 1);
    CHECK(cm.counts()(2, 0) == 1);
    CHECK(cm.counts()(2, 2) == 1);
    CHECK(cm.row_sums()(0) == 2);
    CHECK(cm.col_sums()(0) == 2);
}

TEST_CASE("confusion matrix shape and count validation") {
    CountMatrix bad(2, 3);
    bad.setZero();
    CHECK_THROWS_AS(ConfusionMatrix(abc(), bad), ValidationError);
    CountMatrix negative = CountMatrix::Zero(3, 3);
    negative(0, 1) = -1;
    CHECK_THROWS_AS(ConfusionMatrix(abc(), negative), ValidationError);
}

TEST_CASE("class map construction") {
    const LabelSpace coarse({"x", "y"});
    SUBCASE("requires surjectivity") {
        try {
            ClassMap(abc(), coarse, {0, 0, 0});
            FAIL("expected ValidationError");
        } catch (const ValidationError& e) {
            CHECK(std::string(e.what()).find("'y'") != std::string::npos);
        }
    }
    SUBCASE("requires in-range targets and full assignment") {
        CHECK_THROWS_AS(ClassMap(abc(), coarse, {0, 1, 2}), ValidationError);
        CHECK_THROWS_AS(ClassMap(abc(), coarse, {0, 1}), ValidationError);
    }
    SUBCASE("identity maps every class to itself") {
        const ClassMap id = ClassMap::identity(abc());
        CHECK(id.target() == abc());
        for (int s = 0; s < 3; ++s) CHECK(id.target_of(s) == s);
    }
    SUBCASE("vs_rest keeps the positive name and pools the rest") {
        const ClassMap map = ClassMap::vs_rest(abc(), "b");
        CHECK(map.target().names() == std::vector<std::string>{"b", "non-b"});
        CHECK(map.target_of(1) == 0);
        CHECK(map.target_of(0) == 1);
        CHECK(map.target_of(2) == 1);
        CHECK_THROWS_AS(ClassMap::vs_rest(abc(), "zzz"), ValidationError);
    }
}

TEST_CASE("collapse sums counts and preserves totals") {
    CountMatrix counts(3, 3);
    counts << 5, 1, 2, //
        0, 7, 1,       //
        3, 0, 4;
    const ConfusionMatrix cm(abc(), counts);
    const ClassMap map(abc(), LabelSpace({"b", "non-b"}), {1, 0, 1});
    const ConfusionMatrix out = collapse(cm, map);
    CHECK(out.total() == cm.total());
    // actual b stays row 0 of the target: predicted b = 7, predicted rest = 1.
    CHECK(out.counts()(0, 0) == 7);
    CHECK(out.counts()(0, 1) == 1);
    CHECK(out.counts()(1, 0) == 1);
    CHECK(out.counts()(1, 1) == 14);

    const ClassMap wrong(LabelSpace({"p", "q"}), LabelSpace({"p", "q"}), {0, 1});
    CHECK_THROWS_AS(collapse(cm, wrong), ValidationError);
}

TEST_CASE("collapse preserves totals on random matrices") {
    std::mt19937 rng(7);
    for (int round = 0; round < 200; ++round) {
        const int k = 2 + static_cast<int>(rng() % 5);
        std::vector<std::string> names;
        for (int i = 0; i < k; ++i) names.push_back("c" + std::to_string(i));
        CountMatrix counts(k, k);
        for (int a = 0; a < k; ++a) {
            for (int p = 0; p < k; ++p) counts(a, p) = static_cast<std::int64_t>(rng() % 20);
        }
        const ConfusionMatrix cm(LabelSpace(names), counts);
        const int positive = static_cast<int>(rng() % static_cast<unsigned>(k));
        const ConfusionMatrix out =
            collapse(cm, ClassMap::vs_rest(cm.space(), names[static_cast<std::size_t>(positive)]));
        REQUIRE(out.total() == cm.total());
        REQUIRE(out.counts()(0, 0) == counts(positive, positive));
    }
}

TEST_CASE("collapse_preds sums probability mass") {
    const PredictionSet set(abc(), {with_probs("1", 0, {0.5, 0.3, 0.2}),
                                    with_probs("2", 2, {0.1, 0.2, 0.7})});
    const ClassMap map = ClassMap::vs_rest(abc(), "a");
    const PredictionSet out = collapse_preds(set, map);
    CHECK(out.space().names() == std::vector<std::string>{"a", "non-a"});
    CHECK((*out.records()[0].probs)[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK((*out.records()[0].probs)[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(out.records()[1].true_label == 1);
    CHECK((*out.records()[1].probs)[1] == doctest::Approx(0.9).epsilon(1e-12));

    const PredictionSet hard(abc(), {with_label("1", 0, 0)});
    CHECK_THROWS_AS(collapse_preds(hard, map), ValidationError);
}

TEST_CASE("dataset_summary counts positives through the map") {
    const PredictionSet set(abc(), {with_label("1", 0, 0), with_label("2", 0, 1),
                                    with_label("3", 1, 1), with_label("4", 2, 2)});
    const ClassMap map = ClassMap::vs_rest(abc(), "a");
    const PrevalenceReport report = dataset_summary(set, 0, map);
    CHECK(report.positives == 2);
    CHECK(report.negatives == 2);
    CHECK(report.prevalence == doctest::Approx(0.5).epsilon(1e-12));

    CHECK_THROWS_AS(dataset_summary(set, 5, map), ValidationError);
    const ClassMap other(LabelSpace({"p", "q"}), LabelSpace({"p", "q"}), {0, 1});
    CHECK_THROWS_AS(dataset_summary(set, 0, other), ValidationError);
}
