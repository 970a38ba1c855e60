#include "lexicluster/pipeline.hpp"

#include "lexicluster/error.hpp"
#include "lexicluster/path_store.hpp"
#include "lexicluster/text_io.hpp"

#include <cstdio>

namespace lexicluster {

namespace fs = std::filesystem;

std::string_view to_string(Representation r) {
    switch (r) {
        case Representation::stemmed: return "stemmed";
        case Representation::hotho: return "hotho";
        case Representation::lexical_categories: return "lexical_categories";
        case Representation::lexical_nouns: return "lexical_nouns";
    }
    return "unknown";
}

Representation parse_representation(std::string_view name) {
    for (auto r : kAllRepresentations) {
        if (to_string(r) == name) return r;
    }
    throw Error(Errc::invalid_argument, "unknown representation '" + std::string(name) +
                                            "' (stemmed, hotho, lexical_categories, lexical_nouns)");
}

SplitPolicy parse_split_policy(std::string_view name) {
    if (name == "largest") return SplitPolicy::largest;
    if (name == "least_overall_similarity") return SplitPolicy::least_overall_similarity;
    throw Error(Errc::invalid_argument, "unknown split policy '" + std::string(name) + "'");
}

InitMethod parse_init_method(std::string_view name) {
    if (name == "seeded_random_pair") return InitMethod::seeded_random_pair;
    if (name == "farthest_pair") return InitMethod::farthest_pair;
    throw Error(Errc::invalid_argument, "unknown init method '" + std::string(name) + "'");
}

std::vector<std::pair<std::string, std::string>> parse_config_file(std::string_view text) {
    std::vector<std::pair<std::string, std::string>> out;
    LineReader lines(text);
    while (auto line = lines.next()) {
        auto body = trim(*line);
        if (body.empty() || body.front() == '#') continue;
        auto eq = body.find('=');
        if (eq == std::string_view::npos) {
            throw Error(Errc::malformed_line, "config line " + std::to_string(lines.line_number()) + ": expected key = value");
        }
        auto key = trim(body.substr(0, eq));
        auto value = trim(body.substr(eq + 1));
        if (key.empty()) {
            throw Error(Errc::malformed_line, "config line " + std::to_string(lines.line_number()) + ": empty key");
        }
        out.emplace_back(std::string(key), std::string(value));
    }
    return out;
}

Ingested ingest(const std::vector<RawDocument>& corpus, const Stoplist& stoplist, bool stem) {
    Ingested out;
    out.words = extract_words(corpus, stoplist, stem);
    out.stemmed = stem;
    for (const auto& d : corpus) {
        if (d.label) out.labels.emplace(d.doc_id, *d.label);
    }
    return out;
}

namespace {

void require_lexicon(const Lexicon* lexicon, Representation rep) {
    if (lexicon == nullptr) {
        throw Error(Errc::invalid_argument, "representation " + std::string(to_string(rep)) + " needs --lexicon");
    }
}

void require_stemming(const Ingested& data, Representation rep) {
    bool want = rep == Representation::stemmed;
    if (data.stemmed != want) {
        throw Error(Errc::invalid_argument, std::string(to_string(rep)) + (want ? " needs a stemmed ingest (--stem)"
                                                                                : " needs an unstemmed ingest"));
    }
}

CategoryMode mode_of(Representation rep) {
    return rep == Representation::lexical_nouns ? CategoryMode::nouns_only : CategoryMode::all_categories;
}

}  // namespace

FeatureMatrix featurize(const Ingested& data, const Lexicon* lexicon, Representation rep, int hotho_levels) {
    require_stemming(data, rep);
    const auto& bag = data.words.bag;
    switch (rep) {
        case Representation::stemmed:
            return normalize(weight_tfidf(bag));
        case Representation::hotho: {
            require_lexicon(lexicon, rep);
            auto expanded = hotho_expand(bag, data.words.vocab, *lexicon, hotho_levels);
            return normalize(weight_tfidf(expanded.bag));
        }
        case Representation::lexical_categories:
        case Representation::lexical_nouns:
            require_lexicon(lexicon, rep);
            return normalize(weight_lfidf(bag_to_categories(bag, data.words.vocab, *lexicon, mode_of(rep))));
    }
    throw Error(Errc::invalid_argument, "unhandled representation");
}

std::vector<std::string> feature_names(const Ingested& data, const Lexicon* lexicon, Representation rep,
                                       int hotho_levels) {
    switch (rep) {
        case Representation::stemmed:
            return data.words.vocab.terms();
        case Representation::hotho:
            require_lexicon(lexicon, rep);
            return hotho_expand(data.words.bag, data.words.vocab, *lexicon, hotho_levels).vocab.terms();
        case Representation::lexical_categories:
        case Representation::lexical_nouns: {
            std::vector<std::string> names;
            auto mode = mode_of(rep);
            for (FeatureId f = 1; f <= category_feature_count(mode); ++f) {
                names.emplace_back(category_feature_name(f, mode));
            }
            return names;
        }
    }
    return {};
}

MetricsReport evaluate(const FeatureMatrix& matrix, const ClusteringResult& result,
                       const std::unordered_map<DocId, std::string>& labels, std::string representation,
                       std::size_t K, std::uint64_t seed) {
    MetricsReport r;
    r.representation = std::move(representation);
    r.K = K;
    r.seed = seed;
    r.internal = internal_eval(matrix, result.assignment, result.centroids);
    if (!labels.empty()) {
        auto ct = contingency(result.assignment, labels);
        r.purity = purity(ct);
        auto e = entropy(ct);
        r.entropy = e.total;
        r.cluster_entropies = std::move(e.per_cluster);
        auto f = f_measure(ct);
        r.f_measure = f.total;
        r.class_best_f = std::move(f.best_per_class);
    }
    return r;
}

namespace {

Stoplist load_stoplist(const RunConfig& cfg) {
    if (cfg.stoplist.empty()) return parse_stoplist(default_stoplist_text());
    return parse_stoplist(read_file(cfg.stoplist));
}

std::optional<Lexicon> load_optional_lexicon(const RunConfig& cfg) {
    if (cfg.lexicon.empty()) return std::nullopt;
    return load_lexicon(read_file(cfg.lexicon));
}

void require(const fs::path& p, const char* flag) {
    if (p.empty()) throw Error(Errc::invalid_argument, std::string("missing required ") + flag);
}

Ingested read_ingested(const fs::path& dir) {
    Ingested data;
    auto meta = parse_config_file(read_file(dir / "ingest.meta"));
    for (const auto& [k, v] : meta) {
        if (k == "stemmed") data.stemmed = v == "true";
    }
    data.words.vocab = parse_vocabulary(read_file(dir / "vocab.txt"));
    data.words.bag = parse_uci(read_file(dir / "docword.txt"));
    if (data.words.bag.W != data.words.vocab.size()) {
        throw Error(Errc::mismatch, "docword.txt W does not match vocab.txt in " + dir.string());
    }
    if (fs::exists(dir / "labels.txt")) data.labels = parse_labels(read_file(dir / "labels.txt"));
    return data;
}

std::size_t workers_for(const RunConfig& cfg) { return cfg.workers == 0 ? default_worker_count() : cfg.workers; }

BisectConfig bisect_config(const RunConfig& cfg, std::uint64_t seed) {
    BisectConfig b;
    b.K = cfg.K;
    b.seed = seed;
    b.max_iterations = cfg.max_iterations;
    b.tolerance = cfg.tolerance;
    b.split_policy = cfg.split_policy;
    b.init_method = cfg.init_method;
    return b;
}

// key = value settings left next to a stage's outputs; empty if absent.
std::unordered_map<std::string, std::string> read_meta(const fs::path& file) {
    std::unordered_map<std::string, std::string> out;
    if (!fs::exists(file)) return out;
    for (auto& [k, v] : parse_config_file(read_file(file))) out[k] = v;
    return out;
}

void write_cluster_outputs(const fs::path& out, const ClusteringResult& r) {
    write_file(out / "assignment.txt", write_assignment(r.assignment));
    write_file(out / "centroids.txt", write_centroids(r.centroids));
    write_file(out / "trace.txt", write_trace(r.trace));
}

}  // namespace

IngestSummary cmd_ingest(const RunConfig& cfg) {
    require(cfg.corpus, "--corpus");
    require(cfg.out, "--out");
    auto corpus = read_corpus(cfg.corpus);
    auto data = ingest(corpus, load_stoplist(cfg), cfg.stem);
    write_file(cfg.out / "vocab.txt", write_vocabulary(data.words.vocab));
    write_file(cfg.out / "docword.txt", write_uci(data.words.bag));
    write_file(cfg.out / "docword.opt", to_optimized(data.words.bag));
    write_file(cfg.out / "labels.txt", write_labels(corpus));
    write_file(cfg.out / "ingest.meta", std::string("stemmed = ") + (cfg.stem ? "true" : "false") + "\n");
    return {data.words.bag.D, data.words.bag.W, data.words.bag.nnz()};
}

FeatureMatrix cmd_featurize(const RunConfig& cfg) {
    require(cfg.in, "--in");
    require(cfg.out, "--out");
    auto data = read_ingested(cfg.in);
    auto lexicon = load_optional_lexicon(cfg);
    const Lexicon* lex = lexicon ? &*lexicon : nullptr;
    auto matrix = featurize(data, lex, cfg.representation, cfg.hotho_levels);
    write_file(cfg.out / "matrix.txt", write_matrix(matrix));
    std::string names;
    for (const auto& n : feature_names(data, lex, cfg.representation, cfg.hotho_levels)) names += n + '\n';
    write_file(cfg.out / "features.txt", names);
    write_file(cfg.out / "featurize.meta",
               "representation = " + std::string(to_string(cfg.representation)) + "\n");
    return matrix;
}

ClusteringResult cmd_cluster(const RunConfig& cfg) {
    require(cfg.out, "--out");
    if (cfg.K < 1) throw Error(Errc::invalid_argument, "--k must be >= 1");
    fs::path matrix_path = cfg.matrix.empty() ? cfg.in / "matrix.txt" : cfg.matrix;
    if (cfg.matrix.empty()) require(cfg.in, "--in or --matrix");
    auto matrix = parse_matrix(read_file(matrix_path));
    auto docs = to_doc_vectors(matrix);
    std::string representation = "unknown";
    if (!cfg.in.empty()) {
        auto meta = read_meta(cfg.in / "featurize.meta");
        if (meta.contains("representation")) representation = meta["representation"];
    }
    write_file(cfg.out / "cluster.meta", "representation = " + representation + "\nk = " + std::to_string(cfg.K) +
                                             "\nseed = " + std::to_string(cfg.seed) + "\n");
    Engine engine(workers_for(cfg));
    PathStore store(cfg.out / "store");
    try {
        auto result = bisecting(docs, bisect_config(cfg, cfg.seed), engine, store);
        write_cluster_outputs(cfg.out, result);
        return result;
    } catch (const ExhaustedError& e) {
        write_cluster_outputs(cfg.out, e.partial());
        throw;
    }
}

MetricsReport cmd_evaluate(const RunConfig& cfg) {
    require(cfg.in, "--in");
    require(cfg.matrix, "--matrix");
    require(cfg.out, "--out");
    auto matrix = parse_matrix(read_file(cfg.matrix));
    ClusteringResult result;
    result.assignment = parse_assignment(read_file(cfg.in / "assignment.txt"));
    result.centroids = parse_centroids(read_file(cfg.in / "centroids.txt"));
    std::unordered_map<DocId, std::string> labels;
    if (!cfg.labels.empty()) labels = parse_labels(read_file(cfg.labels));
    // Settings recorded by cluster take precedence.
    std::string representation(to_string(cfg.representation));
    std::size_t K = cfg.K;
    std::uint64_t seed = cfg.seed;
    auto meta = read_meta(cfg.in / "cluster.meta");
    if (meta.contains("representation")) representation = meta["representation"];
    if (meta.contains("k")) K = static_cast<std::size_t>(parse_count(meta["k"], 0, true));
    if (meta.contains("seed")) seed = parse_count(meta["seed"], 0, true);
    auto report = evaluate(matrix, result, labels, representation, K, seed);
    write_file(cfg.out / "metrics.csv", report_csv_header() + report_csv_row(report));
    write_file(cfg.out / "metrics.txt", report_table(report));
    return report;
}

std::vector<ComparisonRow> cmd_compare(const RunConfig& cfg) {
    require(cfg.corpus, "--corpus");
    require(cfg.lexicon, "--lexicon");
    require(cfg.out, "--out");
    if (cfg.K < 1) throw Error(Errc::invalid_argument, "--k must be >= 1");
    auto corpus = read_corpus(cfg.corpus);
    auto stoplist = load_stoplist(cfg);
    auto lexicon = load_lexicon(read_file(cfg.lexicon));
    const Ingested stemmed = ingest(corpus, stoplist, true);
    const Ingested words = ingest(corpus, stoplist, false);
    std::vector<std::uint64_t> seeds = cfg.seeds.empty() ? std::vector<std::uint64_t>{cfg.seed} : cfg.seeds;
    Engine engine(workers_for(cfg));

    std::vector<ComparisonRow> rows;
    for (auto seed : seeds) {
        for (auto rep : kAllRepresentations) {
            const Ingested& data = rep == Representation::stemmed ? stemmed : words;
            auto matrix = featurize(data, &lexicon, rep, cfg.hotho_levels);
            auto docs = to_doc_vectors(matrix);
            auto run_dir = cfg.out / "runs" / std::string(to_string(rep)) / ("seed" + std::to_string(seed));
            PathStore store(run_dir / "store");
            ClusteringResult result;
            try {
                result = bisecting(docs, bisect_config(cfg, seed), engine, store);
            } catch (const ExhaustedError& e) {
                result = e.partial();
            }
            write_cluster_outputs(run_dir, result);
            ComparisonRow row;
            row.representation = std::string(to_string(rep));
            row.seed = seed;
            row.clusters = result.cluster_count();
            row.features = matrix.dimension;
            row.metrics = evaluate(matrix, result, data.labels, row.representation, cfg.K, seed);
            rows.push_back(std::move(row));
        }
    }
    write_file(cfg.out / "comparison.csv", comparison_csv(rows));
    write_file(cfg.out / "comparison.txt", comparison_table(rows));
    return rows;
}

namespace {

std::string fmt5(const std::optional<double>& v) {
    if (!v) return "NA";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.5f", *v);
    return buf;
}

}  // namespace

std::string comparison_csv(const std::vector<ComparisonRow>& rows) {
    std::string out = "representation,seed,K,clusters,features,internal,purity,entropy,f_measure\n";
    for (const auto& r : rows) {
        out += r.representation + ',' + std::to_string(r.seed) + ',' + std::to_string(r.metrics.K) + ',' +
               std::to_string(r.clusters) + ',' + std::to_string(r.features) + ',' + fmt5(r.metrics.internal) + ',' +
               fmt5(r.metrics.purity) + ',' + fmt5(r.metrics.entropy) + ',' + fmt5(r.metrics.f_measure) + '\n';
    }
    return out;
}

std::string comparison_table(const std::vector<ComparisonRow>& rows) {
    std::string out;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-20s %6s %9s %10s %9s %9s %9s\n", "Type", "Seed", "Features", "Internal",
                  "Purity", "Entropy", "F");
    out += buf;
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%-20s %6llu %9u %10s %9s %9s %9s\n", r.representation.c_str(),
                      static_cast<unsigned long long>(r.seed), r.features, fmt5(r.metrics.internal).c_str(),
                      fmt5(r.metrics.purity).c_str(), fmt5(r.metrics.entropy).c_str(),
                      fmt5(r.metrics.f_measure).c_str());
        out += buf;
    }
    return out;
}

}  // namespace lexicluster
