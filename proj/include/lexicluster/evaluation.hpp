#pragma once

#include "lexicluster/clustering.hpp"
#include "lexicluster/corpus.hpp"
#include "lexicluster/feature_matrix.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace lexicluster {

/// Class x cluster counts. Classes and clusters are numbered densely in the
/// order they first appear.
class ContingencyTable {
public:
    ContingencyTable() = default;
    /// counts[i][j] = documents of class i in cluster j; rows must be equal length.
    explicit ContingencyTable(std::vector<std::vector<std::uint64_t>> counts);

    std::size_t classes() const { return class_totals_.size(); }
    std::size_t clusters() const { return cluster_totals_.size(); }
    std::uint64_t count(std::size_t cls, std::size_t cluster) const { return counts_[cls][cluster]; }
    std::uint64_t class_total(std::size_t cls) const { return class_totals_[cls]; }
    std::uint64_t cluster_total(std::size_t cluster) const { return cluster_totals_[cluster]; }
    std::uint64_t total() const { return total_; }

    std::vector<std::string> class_names;
    std::vector<std::uint32_t> cluster_ids;

private:
    std::vector<std::vector<std::uint64_t>> counts_;
    std::vector<std::uint64_t> class_totals_;
    std::vector<std::uint64_t> cluster_totals_;
    std::uint64_t total_ = 0;
};

ContingencyTable contingency(std::span<const std::pair<DocId, std::uint32_t>> assignment,
                             const std::unordered_map<DocId, std::string>& labels);

double purity(const ContingencyTable& ct);

struct EntropyResult {
    double total = 0.0;
    std::vector<double> per_cluster;
};
/// Base-2 entropy of class proportions per cluster, weighted by cluster size.
EntropyResult entropy(const ContingencyTable& ct);

struct FMeasureResult {
    double total = 0.0;
    std::vector<double> best_per_class;
};
FMeasureResult f_measure(const ContingencyTable& ct);

/// Mean cosine of each document to its cluster's centroid.
double internal_eval(const FeatureMatrix& data, std::span<const std::pair<DocId, std::uint32_t>> assignment,
                     std::span<const Centroid> centroids);

struct MetricsReport {
    std::string representation;
    std::size_t K = 0;
    std::uint64_t seed = 0;
    std::optional<double> purity;
    std::optional<double> entropy;
    std::optional<double> f_measure;
    std::optional<double> internal;
    std::vector<double> cluster_entropies;
    std::vector<double> class_best_f;
};

std::string report_csv_header();
std::string report_csv_row(const MetricsReport& r);
std::string report_table(const MetricsReport& r);

}  // namespace lexicluster
