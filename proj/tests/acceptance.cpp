// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "lexicluster/clustering.hpp"
#include "lexicluster/corpus.hpp"
#include "lexicluster/evaluation.hpp"
#include "lexicluster/ontology.hpp"
#include "lexicluster/pipeline.hpp"
#include "metric_oracle.hpp"
#include "test_support.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>

using namespace lexicluster;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool ok = false;
    std::string detail;
};

int failures = 0;
std::string comparison_report;

void criterion(int number, const char* title, double budget_seconds, const std::function<Outcome()>& body) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (budget_seconds > 0 && secs >= budget_seconds) {
        o.ok = false;
        o.detail += " (over the " + std::to_string(static_cast<int>(budget_seconds)) + " s budget)";
    }
    if (!o.ok) ++failures;
    std::printf("%s %d %s: %s [%.2f s]\n", o.ok ? "PASS" : "FAIL", number, title, o.detail.c_str(), secs);
    std::fflush(stdout);
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

ClusteringResult run_bisecting(std::span<const DocVector> docs, std::size_t K, std::uint64_t seed, std::size_t workers,
                               const fs::path& root) {
    PathStore store(root);
    BisectConfig cfg;
    cfg.K = K;
    cfg.seed = seed;
    return bisecting(docs, cfg, Engine(workers), store);
}

Outcome metric_oracle() {
    std::mt19937_64 rng(20240601);
    double worst = 0;
    const int tables = 250;
    for (int t = 0; t < tables; ++t) {
        int n = 1 + static_cast<int>(rng() % 50), k = 1 + static_cast<int>(rng() % 6), c = 1 + static_cast<int>(rng() % 6);
        std::vector<std::pair<int, int>> pairs;
        std::vector<std::pair<DocId, std::uint32_t>> assignment;
        std::unordered_map<DocId, std::string> labels;
        for (int i = 0; i < n; ++i) {
            int cls = static_cast<int>(rng() % c), cl = static_cast<int>(rng() % k);
            pairs.emplace_back(cls, cl);
            assignment.emplace_back(static_cast<DocId>(i + 1), static_cast<std::uint32_t>(cl));
            labels[static_cast<DocId>(i + 1)] = "c" + std::to_string(cls);
        }
        auto ct = contingency(assignment, labels);
        auto o = testing::oracle_metrics(pairs);
        worst = std::max({worst, std::abs(purity(ct) - o.purity), std::abs(entropy(ct).total - o.entropy),
                          std::abs(f_measure(ct).total - o.f_measure)});
    }
    return {worst <= 1e-12, std::to_string(tables) + " tables, max deviation " + fmt("%.3g", worst)};
}

Outcome worked_metrics() {
    ContingencyTable p({{3, 1}, {1, 2}});
    ContingencyTable s({{2, 1}, {0, 1}});
    double pu = purity(p), en = entropy(s).total, f = f_measure(s).total;
    bool ok = std::abs(pu - 5.0 / 7.0) <= 1e-12 && std::abs(en - 0.5) <= 1e-12 &&
              std::abs(f - (0.75 * 0.8 + 0.25 * 2.0 / 3.0)) <= 1e-12;
    return {ok, "purity " + fmt("%.17g", pu) + ", entropy " + fmt("%.17g", en) + ", F " + fmt("%.17g", f)};
}

Outcome engine_equivalence() {
    std::mt19937_64 rng(303);
    auto planted = testing::planted_docs(rng, 300, 4, 4);
    testing::TempDir dir("accept_engine");
    FeatureMatrix m{300, 0, {}};
    for (const auto& d : planted.docs) {
        m.rows.push_back(d.components);
        if (!d.components.empty()) m.dimension = std::max(m.dimension, d.components.back().feature);
    }
    write_file(dir.path() / "matrix.txt", write_matrix(m));
    std::string reference;
    std::vector<std::size_t> layouts{1, 2, 4, 8};
    for (auto w : layouts) {
        RunConfig cfg;
        cfg.matrix = dir.path() / "matrix.txt";
        cfg.out = dir.path() / ("w" + std::to_string(w));
        cfg.K = 4;
        cfg.seed = 42;
        cfg.workers = w;
        cmd_cluster(cfg);
        auto bytes = read_file(cfg.out / "assignment.txt") + "\n--\n" + read_file(cfg.out / "centroids.txt");
        if (reference.empty()) reference = bytes;
        if (bytes != reference) return {false, "files differ at " + std::to_string(w) + " workers"};
    }
    return {true, "assignment.txt and centroids.txt identical for 1, 2, 4, 8 partitions/workers"};
}

struct PlantedRuns {
    std::vector<double> purities;
    std::size_t fixed_point_violations = 0;
    std::size_t bisections = 0;
};

PlantedRuns planted_runs() {
    PlantedRuns out;
    std::mt19937_64 rng(2718);
    auto planted = testing::planted_docs(rng, 300, 3, 4);
    std::unordered_map<DocId, std::string> labels;
    for (const auto& d : planted.docs) labels[d.doc_id] = "p" + std::to_string(planted.truth[d.doc_id - 1]);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        testing::TempDir dir("accept_planted");
        PathStore store(dir.path());
        BisectConfig cfg;
        cfg.K = 3;
        cfg.seed = seed;
        auto r = bisecting(planted.docs, cfg, Engine(4), store);
        out.purities.push_back(purity(contingency(r.assignment, labels)));
        out.fixed_point_violations += testing::fixed_point_violations(planted.docs, r, store);
        out.bisections += r.trace.size();
    }
    return out;
}

Outcome planted_recovery(const PlantedRuns& runs) {
    std::size_t good = 0;
    std::string list;
    for (double p : runs.purities) {
        good += p >= 0.95;
        list += (list.empty() ? "" : " ") + fmt("%.3f", p);
    }
    return {good >= 9, std::to_string(good) + "/10 seeds with purity >= 0.95 (" + list + ")"};
}

Outcome dimensionality() {
    auto lexicon = load_lexicon(read_file(testing::bundled_lexicon()));
    auto stoplist = parse_stoplist(default_stoplist_text());
    std::vector<std::vector<RawDocument>> corpora{read_corpus_directory(testing::sample_corpus())};
    // Random corpora mixing lexicon words, unknown strings and stopwords.
    std::mt19937_64 rng(55);
    const std::vector<std::string> words{"cheese", "bread", "market", "quickly", "run", "green", "the",
                                         "qzxv", "bank", "team", "scored", "beef", "xyzzy", "price"};
    for (int c = 0; c < 20; ++c) {
        std::vector<RawDocument> corpus;
        auto n = 1 + rng() % 30;
        for (DocId d = 1; d <= n; ++d) {
            std::string text;
            for (auto k = rng() % 12; k > 0; --k) text += words[rng() % words.size()] + " ";
            corpus.push_back({d, std::nullopt, text});
        }
        corpora.push_back(std::move(corpus));
    }
    std::set<FeatureId> nouns_seen, cats_seen;
    for (const auto& corpus : corpora) {
        auto data = ingest(corpus, stoplist, false);
        auto nouns = featurize(data, &lexicon, Representation::lexical_nouns);
        auto cats = featurize(data, &lexicon, Representation::lexical_categories);
        if (nouns.dimension != 27 || cats.dimension != 46) return {false, "dimension header not 27/46"};
        for (const auto& row : nouns.rows)
            for (const auto& e : row) nouns_seen.insert(e.feature);
        for (const auto& row : cats.rows)
            for (const auto& e : row) cats_seen.insert(e.feature);
    }
    bool ok = !nouns_seen.empty() && *nouns_seen.begin() >= 1 && *nouns_seen.rbegin() <= 27 &&
              !cats_seen.empty() && *cats_seen.begin() >= 1 && *cats_seen.rbegin() <= 46 &&
              category_feature_count(CategoryMode::nouns_only) == 27 &&
              category_feature_count(CategoryMode::all_categories) == 46;
    return {ok, std::to_string(corpora.size()) + " corpora: nouns ids within 1..27 (" +
                    std::to_string(nouns_seen.size()) + " used), categories within 1..46 (" +
                    std::to_string(cats_seen.size()) + " used; 45 lexicographer files + Uncategorized)"};
}

Outcome bisect_control_flow() {
    std::mt19937_64 rng(6);
    auto planted = testing::planted_docs(rng, 100, 6);
    testing::TempDir a("accept_k5"), b("accept_k2");
    auto k5 = run_bisecting(planted.docs, 5, 1, 2, a.path());
    auto k2 = run_bisecting(planted.docs, 2, 1, 2, b.path());
    std::vector<std::string> labels;
    for (const auto& t : k5.trace) labels.push_back(t.centroid_label);
    bool ok = k5.trace.size() == 4 && labels == std::vector<std::string>{"cc", "cc1", "cc11", "cc111"} &&
              k5.cluster_count() == 5 && k2.trace.size() == 1 && k2.trace[0].centroid_label == "cc" &&
              k2.cluster_count() == 2;
    std::string joined;
    for (const auto& l : labels) joined += (joined.empty() ? "" : ",") + l;
    return {ok, "K=5: " + std::to_string(k5.trace.size()) + " two-means runs (" + joined + "); K=2: " +
                    std::to_string(k2.trace.size()) + " run"};
}

Outcome format_fidelity() {
    std::mt19937_64 rng(77);
    for (int i = 0; i < 100; ++i) {
        auto bag = testing::random_bag(rng, 20, 30, 0.25);
        if (parse_uci(write_uci(bag)) != bag) return {false, "UCI round trip failed on bag " + std::to_string(i)};
        if (parse_optimized(to_optimized(bag), bag.D, bag.W) != bag) {
            return {false, "optimized round trip failed on bag " + std::to_string(i)};
        }
    }
    auto data = ingest(read_corpus_directory(testing::sample_corpus()), parse_stoplist(default_stoplist_text()), false);
    auto opt = to_optimized(data.words.bag).size(), uci = write_uci(data.words.bag).size();
    return {opt < uci, "100 random bags round-trip; sample optimized " + std::to_string(opt) + " bytes < UCI " +
                           std::to_string(uci) + " bytes"};
}

Outcome compare_on_sample() {
    testing::TempDir dir("accept_compare");
    RunConfig cfg;
    cfg.corpus = testing::sample_corpus();
    cfg.lexicon = testing::bundled_lexicon();
    cfg.out = dir.path();
    cfg.K = 3;
    cfg.seeds = {1, 2, 3};
    auto rows = cmd_compare(cfg);
    std::set<std::string> reps;
    bool in_range = true;
    for (const auto& r : rows) {
        reps.insert(r.representation);
        in_range = in_range && r.metrics.internal && *r.metrics.internal >= 0.0 && *r.metrics.internal <= 1.0;
    }
    auto table = read_file(dir.path() / "comparison.txt");
    bool shaped = table.starts_with("Type") && table.find("Features") != std::string::npos &&
                  table.find("Internal") != std::string::npos;
    comparison_report = table;
    return {rows.size() == 12 && reps.size() == 4 && in_range && shaped,
            std::to_string(rows.size()) + " rows over " + std::to_string(reps.size()) +
                " representations, internal eval within [0,1]"};
}

Outcome fixed_point(const PlantedRuns& runs) {
    return {runs.bisections == 20 && runs.fixed_point_violations == 0,
            std::to_string(runs.bisections) + " bisections checked, " + std::to_string(runs.fixed_point_violations) +
                " improving single-document moves"};
}

}  // namespace

int main() {
    criterion(1, "metric oracle equivalence", 5, metric_oracle);
    criterion(2, "worked metric examples", 0, worked_metrics);
    criterion(3, "engine equivalence", 10, engine_equivalence);
    PlantedRuns runs;
    criterion(4, "planted partition recovery", 10, [&] {
        runs = planted_runs();
        return planted_recovery(runs);
    });
    criterion(5, "dimensionality bound", 0, dimensionality);
    criterion(6, "bisecting control flow", 0, bisect_control_flow);
    criterion(7, "format fidelity", 0, format_fidelity);
    criterion(8, "compare on the sample corpus", 0, compare_on_sample);
    criterion(9, "2-means fixed point", 0, [&] { return fixed_point(runs); });
    std::printf("%d of 9 criteria failed\n", failures);
    if (!comparison_report.empty()) std::printf("\ncomparison report (sample corpus, K=3):\n%s", comparison_report.c_str());
    return failures == 0 ? 0 : 1;
}
