#pragma once

// End-to-end commands behind the lexicluster CLI.

#include "lexicluster/clustering.hpp"
#include "lexicluster/corpus.hpp"
#include "lexicluster/evaluation.hpp"
#include "lexicluster/feature_matrix.hpp"
#include "lexicluster/ontology.hpp"

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace lexicluster {

enum class Representation { stemmed, hotho, lexical_categories, lexical_nouns };

inline constexpr std::array<Representation, 4> kAllRepresentations{
    Representation::stemmed, Representation::hotho, Representation::lexical_categories,
    Representation::lexical_nouns};

std::string_view to_string(Representation r);
Representation parse_representation(std::string_view name);
SplitPolicy parse_split_policy(std::string_view name);
InitMethod parse_init_method(std::string_view name);

/// The stopword list compiled into the binary.
std::string_view default_stoplist_text();

struct RunConfig {
    std::filesystem::path corpus;
    std::filesystem::path lexicon;
    std::filesystem::path stoplist;  // empty: built-in list
    std::filesystem::path in;        // output directory of the previous stage
    std::filesystem::path matrix;    // feature matrix file (evaluate; cluster override)
    std::filesystem::path labels;    // labels file (evaluate)
    std::filesystem::path out;
    Representation representation = Representation::lexical_categories;
    bool stem = false;
    std::size_t K = 0;
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> seeds;
    SplitPolicy split_policy = SplitPolicy::largest;
    InitMethod init_method = InitMethod::seeded_random_pair;
    double tolerance = 1e-6;
    int max_iterations = 50;
    std::size_t workers = 0;  // 0: default_worker_count()
    int hotho_levels = 5;
};

/// `key = value` lines; blank lines and lines starting with '#' ignored.
std::vector<std::pair<std::string, std::string>> parse_config_file(std::string_view text);

struct Ingested {
    Extracted words;
    std::unordered_map<DocId, std::string> labels;
    bool stemmed = false;
};

Ingested ingest(const std::vector<RawDocument>& corpus, const Stoplist& stoplist, bool stem);
/// Weighted, unit-normalized matrix for one representation. `lexicon` may be
/// null only for the stemmed representation.
FeatureMatrix featurize(const Ingested& data, const Lexicon* lexicon, Representation rep, int hotho_levels = 5);
/// Feature names, index f - 1 naming feature f.
std::vector<std::string> feature_names(const Ingested& data, const Lexicon* lexicon, Representation rep,
                                       int hotho_levels = 5);
MetricsReport evaluate(const FeatureMatrix& matrix, const ClusteringResult& result,
                       const std::unordered_map<DocId, std::string>& labels, std::string representation,
                       std::size_t K, std::uint64_t seed);

// Each command reads its inputs from disk and writes its outputs under cfg.out.
struct IngestSummary {
    std::uint32_t documents = 0;
    std::uint32_t vocabulary = 0;
    std::size_t nnz = 0;
};
IngestSummary cmd_ingest(const RunConfig& cfg);
FeatureMatrix cmd_featurize(const RunConfig& cfg);
ClusteringResult cmd_cluster(const RunConfig& cfg);
MetricsReport cmd_evaluate(const RunConfig& cfg);

struct ComparisonRow {
    std::string representation;
    std::uint64_t seed = 0;
    std::size_t clusters = 0;
    std::uint32_t features = 0;
    MetricsReport metrics;
};
std::vector<ComparisonRow> cmd_compare(const RunConfig& cfg);
std::string comparison_csv(const std::vector<ComparisonRow>& rows);
std::string comparison_table(const std::vector<ComparisonRow>& rows);

}  // namespace lexicluster
