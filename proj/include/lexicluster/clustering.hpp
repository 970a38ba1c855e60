#pragma once

#include "lexicluster/corpus.hpp"
#include "lexicluster/engine.hpp"
#include "lexicluster/error.hpp"
#include "lexicluster/feature_matrix.hpp"
#include "lexicluster/path_store.hpp"
#include "lexicluster/sparse.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace lexicluster {

struct DocVector {
    DocId doc_id = 0;
    SparseVector components;
    double norm = 0.0;

    DocVector() = default;
    DocVector(DocId id, SparseVector v);

    friend bool operator==(const DocVector&, const DocVector&) = default;
};

struct Centroid {
    std::uint32_t index = 0;
    SparseVector mean;
    double norm = 0.0;

    Centroid() = default;
    Centroid(std::uint32_t idx, SparseVector v);

    friend bool operator==(const Centroid&, const Centroid&) = default;
};

/// One DocVector per document 1..D, zero rows included.
std::vector<DocVector> to_doc_vectors(const FeatureMatrix& m);

enum class SplitPolicy { largest, least_overall_similarity };
enum class InitMethod { seeded_random_pair, farthest_pair };

struct BisectConfig {
    std::size_t K = 1;
    std::uint64_t seed = 0;
    int max_iterations = 50;
    double tolerance = 1e-6;
    SplitPolicy split_policy = SplitPolicy::largest;
    InitMethod init_method = InitMethod::seeded_random_pair;
    /// Map-input partitions per job; 0 means one per engine worker.
    std::size_t partitions = 0;
};

/// Two vectors point the same way: both zero, or cosine within 1e-12 of 1.
bool same_direction(const DocVector& a, const DocVector& b);
/// At least two nonzero documents point in different directions.
bool splittable(std::span<const DocVector> docs);

/// Map step: the center with the larger cosine, index 0 on ties.
KeyValue<std::uint32_t, DocVector> assign_map(const DocVector& doc, const std::array<Centroid, 2>& centers);
/// Reduce step: componentwise mean accumulated in list order.
Centroid centroid_reduce(std::uint32_t cluster_index, const std::vector<DocVector>& docs);

/// Index of the nonzero document with the smallest cosine to `docs[anchor]`
/// among those not pointing the same way; lowest index on ties.
std::size_t farthest_partner(std::span<const DocVector> docs, std::size_t anchor);
std::array<Centroid, 2> init_centers(std::span<const DocVector> docs, std::uint64_t seed, InitMethod method);

struct KmeansPaths {
    PathLabel dataset;
    PathLabel centroids;
    PathLabel output;
};

struct TwoMeansResult {
    std::array<std::vector<DocVector>, 2> clusters;
    std::array<Centroid, 2> centroids;
    int iterations = 0;
};

/// Cosine 2-means as a sequence of map/reduce jobs. Centroids are written
/// under paths.centroids after each update; the final assignment and each
/// cluster's documents go under paths.output.
TwoMeansResult basic_kmeans2(std::span<const DocVector> docs, const BisectConfig& cfg, std::uint64_t seed,
                             const Engine& engine, PathStore& store, const KmeansPaths& paths);

/// Mean cosine of the documents to the centroid.
double overall_similarity(std::span<const DocVector> docs, const Centroid& centroid);

struct ClusterSummary {
    std::size_t size = 0;
    double overall_similarity = 1.0;
    bool splittable = false;
};

std::size_t select_split(std::span<const ClusterSummary> clusters, SplitPolicy policy);

struct BisectionStep {
    std::string dataset_label;
    std::string centroid_label;
    std::string output_label;
    std::size_t split_cluster = 0;
    int iterations = 0;
    std::array<std::size_t, 2> sizes{};
};

struct ClusteringResult {
    /// (doc id, cluster index) sorted by doc id.
    std::vector<std::pair<DocId, std::uint32_t>> assignment;
    std::vector<Centroid> centroids;
    std::vector<double> overall_similarity;
    std::vector<BisectionStep> trace;

    std::size_t cluster_count() const { return centroids.size(); }
};

/// Raised when no cluster can be split before K is reached; carries the
/// clusters found so far.
class ExhaustedError : public Error {
public:
    ExhaustedError(const std::string& what, ClusteringResult partial)
        : Error(Errc::exhausted, what), partial_(std::move(partial)) {}

    const ClusteringResult& partial() const { return partial_; }

private:
    ClusteringResult partial_;
};

ClusteringResult bisecting(std::span<const DocVector> docs, const BisectConfig& cfg, const Engine& engine,
                           PathStore& store);

// Centroid file: "index feature:weight ..." per centroid.
std::string write_centroids(std::span<const Centroid> centroids);
std::vector<Centroid> parse_centroids(std::string_view text);
// Assignment file: "docID clusterIndex" per document.
std::string write_assignment(std::span<const std::pair<DocId, std::uint32_t>> assignment);
std::vector<std::pair<DocId, std::uint32_t>> parse_assignment(std::string_view text);
std::string write_trace(std::span<const BisectionStep> trace);

}  // namespace lexicluster
