#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lexicluster/evaluation.hpp"
#include "metric_oracle.hpp"
#include "test_support.hpp"

#include <cmath>

using namespace lexicluster;

namespace {

using Assignment = std::vector<std::pair<DocId, std::uint32_t>>;
using Labels = std::unordered_map<DocId, std::string>;

struct Case {
    Assignment assignment;
    Labels labels;
    std::vector<std::pair<int, int>> pairs;
};

Case build(const std::vector<std::pair<int, int>>& pairs) {
    Case c{{}, {}, pairs};
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        auto id = static_cast<DocId>(i + 1);
        c.labels[id] = "class" + std::to_string(pairs[i].first);
        c.assignment.emplace_back(id, static_cast<std::uint32_t>(pairs[i].second));
    }
    return c;
}

Case random_case(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> n_dist(1, 50), k_dist(1, 6), c_dist(1, 6);
    int n = n_dist(rng), k = k_dist(rng), c = c_dist(rng);
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i) pairs.emplace_back(static_cast<int>(rng() % c), static_cast<int>(rng() % k));
    return build(pairs);
}

// C1{A:3,B:1}, C2{A:1,B:2}
ContingencyTable purity_example() { return ContingencyTable({{3, 1}, {1, 2}}); }
// C1{A:2}, C2{A:1,B:1}
ContingencyTable split_example() { return ContingencyTable({{2, 1}, {0, 1}}); }

}  // namespace

TEST_CASE("contingency") {
    auto c = build({{0, 0}, {0, 0}});
    auto ct = contingency(c.assignment, c.labels);
    CHECK(ct.classes() == 1);
    CHECK(ct.clusters() == 1);
    CHECK(ct.count(0, 0) == 2);
    CHECK(ct.total() == 2);

    auto empty = contingency(Assignment{}, Labels{});
    CHECK(empty.total() == 0);

    auto m = build({{1, 5}, {0, 2}, {1, 2}});
    auto mt = contingency(m.assignment, m.labels);
    CHECK(mt.class_names == std::vector<std::string>{"class1", "class0"});
    CHECK(mt.cluster_ids == std::vector<std::uint32_t>{5, 2});
    CHECK(mt.class_total(0) == 2);
    CHECK(mt.cluster_total(1) == 2);

    m.labels.erase(2);
    try {
        contingency(m.assignment, m.labels);
        FAIL("expected unlabeled_document");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::unlabeled_document);
        CHECK(std::string(e.what()).find("document 2") != std::string::npos);
    }
}

TEST_CASE("worked examples") {
    CHECK(std::abs(purity(purity_example()) - 5.0 / 7.0) <= 1e-12);
    CHECK(std::abs(purity(purity_example()) - 0.7142857142857143) <= 1e-12);
    CHECK(std::abs(entropy(split_example()).total - 0.5) <= 1e-12);
    CHECK(entropy(split_example()).per_cluster == std::vector<double>{0.0, 1.0});
    auto f = f_measure(split_example());
    CHECK(std::abs(f.total - 0.7666666666666667) <= 1e-12);
    CHECK(std::abs(f.best_per_class[0] - 0.8) <= 1e-12);
    CHECK(std::abs(f.best_per_class[1] - 2.0 / 3.0) <= 1e-12);

    ContingencyTable diag({{4, 0}, {0, 3}});
    CHECK(purity(diag) == 1.0);
    CHECK(entropy(diag).total == 0.0);
    CHECK(f_measure(diag).total == 1.0);
    CHECK(purity(ContingencyTable(std::vector<std::vector<std::uint64_t>>{{2}, {2}})) == 0.5);
    CHECK(f_measure(ContingencyTable(std::vector<std::vector<std::uint64_t>>{{5}})).total == 1.0);

    ContingencyTable zero;
    CHECK_ERRC(purity(zero), Errc::empty_input);
    CHECK_ERRC(entropy(zero), Errc::empty_input);
    CHECK_ERRC(f_measure(zero), Errc::empty_input);
}

TEST_CASE("metrics match a brute-force oracle") {
    std::mt19937_64 rng(123);
    for (int round = 0; round < 300; ++round) {
        auto c = random_case(rng);
        auto ct = contingency(c.assignment, c.labels);
        auto o = testing::oracle_metrics(c.pairs);
        CHECK(std::abs(purity(ct) - o.purity) <= 1e-12);
        CHECK(std::abs(entropy(ct).total - o.entropy) <= 1e-12);
        CHECK(std::abs(f_measure(ct).total - o.f_measure) <= 1e-12);
    }
}

TEST_CASE("relabeling invariance") {
    std::mt19937_64 rng(77);
    for (int round = 0; round < 100; ++round) {
        auto c = random_case(rng);
        std::vector<int> class_perm{0, 1, 2, 3, 4, 5}, cluster_perm{0, 1, 2, 3, 4, 5};
        std::shuffle(class_perm.begin(), class_perm.end(), rng);
        std::shuffle(cluster_perm.begin(), cluster_perm.end(), rng);
        auto pairs = c.pairs;
        for (auto& [cls, k] : pairs) {
            cls = class_perm[cls];
            k = cluster_perm[k];
        }
        std::shuffle(pairs.begin(), pairs.end(), rng);
        auto p = build(pairs);
        auto a = contingency(c.assignment, c.labels), b = contingency(p.assignment, p.labels);
        CHECK(purity(a) == doctest::Approx(purity(b)).epsilon(1e-12));
        CHECK(f_measure(a).total == doctest::Approx(f_measure(b).total).epsilon(1e-12));
        CHECK(entropy(a).total == doctest::Approx(entropy(b).total).epsilon(1e-12));
    }
}

TEST_CASE("splitting a cluster never lowers purity") {
    std::mt19937_64 rng(31);
    for (int round = 0; round < 200; ++round) {
        auto c = random_case(rng);
        auto before = purity(contingency(c.assignment, c.labels));
        auto pairs = c.pairs;
        int target = pairs[rng() % pairs.size()].second;
        for (auto& [cls, k] : pairs) {
            if (k == target && (rng() & 1)) k = 100;
        }
        auto s = build(pairs);
        CHECK(purity(contingency(s.assignment, s.labels)) >= before - 1e-15);
    }
}

TEST_CASE("internal evaluation") {
    FeatureMatrix m{3, 2, {{{1, 1.0}}, {{2, 1.0}}, {}}};
    Assignment a{{1, 0}, {2, 0}};
    std::vector<Centroid> c{Centroid(0, {{1, 0.5}, {2, 0.5}})};
    CHECK(internal_eval(m, a, c) == doctest::Approx(0.7071067811865476).epsilon(1e-12));

    Assignment with_zero{{1, 0}, {2, 0}, {3, 0}};
    CHECK(internal_eval(m, with_zero, c) == doctest::Approx(2 * 0.7071067811865476 / 3).epsilon(1e-12));

    std::vector<Centroid> own{Centroid(0, {{1, 2.0}}), Centroid(1, {{2, 0.1}})};
    CHECK(internal_eval(m, Assignment{{1, 0}, {2, 1}}, own) == doctest::Approx(1.0));

    CHECK_ERRC(internal_eval(m, Assignment{{1, 3}}, c), Errc::mismatch);
    CHECK_ERRC(internal_eval(m, Assignment{{9, 0}}, c), Errc::mismatch);
}

TEST_CASE("report formatting") {
    MetricsReport r;
    r.representation = "stemmed";
    r.K = 3;
    r.seed = 7;
    r.internal = 0.5;
    CHECK(report_csv_header() == "representation,K,seed,purity,entropy,f_measure,internal\n");
    auto row = report_csv_row(r);
    CHECK(row.starts_with("stemmed,3,7,"));
    CHECK(row.find("0.500000") != std::string::npos);
    CHECK_FALSE(report_table(r).empty());
}
