#pragma once

#include "lexicluster/clustering.hpp"
#include "lexicluster/corpus.hpp"
#include "lexicluster/error.hpp"

#include <filesystem>
#include <map>
#include <random>
#include <string>

namespace lexicluster::testing {

inline std::filesystem::path source_dir() { return LEXICLUSTER_SOURCE_DIR; }
inline std::filesystem::path sample_corpus() { return source_dir() / "data" / "sample"; }
inline std::filesystem::path bundled_lexicon() { return source_dir() / "data" / "lexicon.tsv"; }

class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() /
                ("lexicluster_" + tag + "_" + std::to_string(rd()) + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

/// A valid random bag: each (doc, word) cell is present with probability `density`.
inline SparseBag random_bag(std::mt19937_64& rng, std::uint32_t max_docs = 12, std::uint32_t max_words = 15,
                            double density = 0.3) {
    std::uniform_int_distribution<std::uint32_t> docs(0, max_docs);
    std::uniform_int_distribution<std::uint32_t> words(1, max_words);
    std::uniform_int_distribution<std::uint64_t> count(1, 50);
    std::bernoulli_distribution present(density);
    SparseBag bag;
    bag.D = docs(rng);
    bag.W = words(rng);
    for (DocId d = 1; d <= bag.D; ++d) {
        for (WordId w = 1; w <= bag.W; ++w) {
            if (present(rng)) bag.triples.push_back({d, w, count(rng)});
        }
    }
    return bag;
}

struct PlantedDocs {
    std::vector<DocVector> docs;
    std::vector<std::uint32_t> truth;  // prototype index per doc
};

/// Documents drawn around `k` prototypes with disjoint 12-feature supports;
/// each doc takes 8 prototype features plus `noise` random features from the
/// whole space at low weight.
inline PlantedDocs planted_docs(std::mt19937_64& rng, std::size_t n, std::uint32_t k, int noise = 2) {
    constexpr FeatureId kSupport = 12;
    const FeatureId dim = kSupport * k + 20;
    std::uniform_int_distribution<FeatureId> any(1, dim);
    std::uniform_int_distribution<FeatureId> local(0, kSupport - 1);
    std::uniform_real_distribution<double> strong(1.0, 3.0), weak(0.0, 0.3);
    PlantedDocs out;
    for (std::size_t i = 0; i < n; ++i) {
        auto proto = static_cast<std::uint32_t>(i % k);
        std::map<FeatureId, double> w;
        for (int j = 0; j < 8; ++j) w[proto * kSupport + 1 + local(rng)] += strong(rng);
        for (int j = 0; j < noise; ++j) w[any(rng)] += weak(rng);
        SparseVector v;
        for (auto [f, x] : w) v.push_back({f, x});
        out.docs.emplace_back(static_cast<DocId>(i + 1), std::move(v));
        out.truth.push_back(proto);
    }
    return out;
}

/// For every bisection in `result`, reads that split's final centroids and
/// assignment back from the store and counts documents whose cosine to the
/// other centroid beats the one they were assigned to.
inline std::size_t fixed_point_violations(std::span<const DocVector> docs, const ClusteringResult& result,
                                          const PathStore& store) {
    std::map<DocId, const DocVector*> by_id;
    for (const auto& d : docs) by_id[d.doc_id] = &d;
    std::size_t violations = 0;
    for (const auto& step : result.trace) {
        auto centers = parse_centroids(store.read(PathLabel(step.centroid_label)));
        auto assignment = parse_assignment(store.read(sub_label(PathLabel(step.output_label), "assignment")));
        if (centers.size() != 2 || assignment.size() != step.sizes[0] + step.sizes[1]) return docs.size() + 1;
        for (auto [doc, j] : assignment) {
            const auto& d = *by_id.at(doc);
            double own = cosine(d.components, d.norm, centers[j].mean, centers[j].norm);
            double other = cosine(d.components, d.norm, centers[1 - j].mean, centers[1 - j].norm);
            if (other > own) ++violations;
        }
    }
    return violations;
}

}  // namespace lexicluster::testing

// Requires doctest. Checks that `expr` throws lexicluster::Error with `errc`.
#define CHECK_ERRC(expr, errc)                                  \
    do {                                                        \
        try {                                                   \
            (void)(expr);                                       \
            FAIL_CHECK("expected error " << to_string(errc));   \
        } catch (const ::lexicluster::Error& e) {               \
            CHECK_MESSAGE(e.code() == (errc), e.what());        \
        }                                                       \
    } while (0)
