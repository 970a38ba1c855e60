// lexicluster: ingest -> featurize -> cluster -> evaluate, plus compare.

#include "lexicluster/error.hpp"
#include "lexicluster/pipeline.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

namespace lc = lexicluster;

namespace {

struct Flags {
    std::string corpus, lexicon, stoplist, in, matrix, labels, out;
    std::string rep = "lexical_categories";
    std::string split_policy = "largest";
    std::string init = "seeded_random_pair";
    bool stem = false;
    std::size_t k = 0;
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> seeds;
    double tol = 1e-6;
    int max_iter = 50;
    std::size_t workers = 0;
    int levels = 5;

    lc::RunConfig to_config() const {
        lc::RunConfig c;
        c.corpus = corpus;
        c.lexicon = lexicon;
        c.stoplist = stoplist;
        c.in = in;
        c.matrix = matrix;
        c.labels = labels;
        c.out = out;
        c.representation = lc::parse_representation(rep);
        c.split_policy = lc::parse_split_policy(split_policy);
        c.init_method = lc::parse_init_method(init);
        c.stem = stem;
        c.K = k;
        c.seed = seed;
        c.seeds = seeds;
        c.tolerance = tol;
        c.max_iterations = max_iter;
        c.workers = workers;
        c.hotho_levels = levels;
        return c;
    }
};

void add_shared(CLI::App* cmd, Flags& f) {
    cmd->add_option("--corpus", f.corpus, "Corpus directory or .jsonl file");
    cmd->add_option("--lexicon", f.lexicon, "Lexicon TSV");
    cmd->add_option("--stoplist", f.stoplist, "Stopword file (default: built-in list)");
    cmd->add_option("--rep", f.rep, "stemmed | hotho | lexical_categories | lexical_nouns");
    cmd->add_option("--k", f.k, "Number of clusters");
    cmd->add_option("--seed", f.seed, "Random seed");
    cmd->add_option("--split-policy", f.split_policy, "largest | least_overall_similarity");
    cmd->add_option("--tol", f.tol, "2-means convergence threshold on 1 - cos(old, new)");
    cmd->add_option("--max-iter", f.max_iter, "Iteration cap per 2-means");
    cmd->add_option("--out", f.out, "Output directory");
    cmd->add_option("--workers", f.workers, "Map workers (default: LEXICLUSTER_WORKERS or all cores)");
}

const std::vector<std::string> kCommands{"ingest", "featurize", "cluster", "evaluate", "compare"};

// Pulls --config FILE out of argv and splices its key = value pairs in right
// after the subcommand name, so anything given on the command line wins.
std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    std::string config_path;
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            config_path = args[i + 1];
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i + 2));
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            config_path = args[i].substr(9);
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
            break;
        }
    }
    if (config_path.empty()) return args;

    std::vector<std::string> injected;
    for (const auto& [key, value] : lc::parse_config_file(lc::read_file(config_path))) {
        injected.push_back("--" + key + "=" + value);
    }
    auto sub = std::find_first_of(args.begin() + 1, args.end(), kCommands.begin(), kCommands.end());
    if (sub == args.end()) throw lc::Error(lc::Errc::invalid_argument, "--config needs a subcommand");
    args.insert(sub + 1, injected.begin(), injected.end());
    return args;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Document clustering over WordNet lexical categories with bisecting k-means"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    Flags f;
    auto* ingest = app.add_subcommand("ingest", "Tokenize a corpus into vocabulary and bag-of-words files");
    add_shared(ingest, f);
    ingest->add_flag("--stem", f.stem, "Porter-stem tokens");

    auto* featurize = app.add_subcommand("featurize", "Build a weighted feature matrix for one representation");
    add_shared(featurize, f);
    featurize->add_option("--in", f.in, "Directory written by ingest");
    featurize->add_option("--levels", f.levels, "Hypernym levels for hotho");

    auto* cluster = app.add_subcommand("cluster", "Bisecting k-means over a feature matrix");
    add_shared(cluster, f);
    cluster->add_option("--in", f.in, "Directory written by featurize");
    cluster->add_option("--matrix", f.matrix, "Feature matrix file (instead of --in)");
    cluster->add_option("--init", f.init, "seeded_random_pair | farthest_pair");

    auto* evaluate = app.add_subcommand("evaluate", "Score a clustering");
    add_shared(evaluate, f);
    evaluate->add_option("--in", f.in, "Directory written by cluster");
    evaluate->add_option("--matrix", f.matrix, "Feature matrix the clustering used");
    evaluate->add_option("--labels", f.labels, "Labels file; external metrics are skipped without it");

    auto* compare = app.add_subcommand("compare", "Run all four representations and tabulate the results");
    add_shared(compare, f);
    compare->add_option("--seeds", f.seeds, "Seeds to run (default: --seed)")->delimiter(',');
    compare->add_option("--levels", f.levels, "Hypernym levels for hotho");
    compare->add_option("--init", f.init, "seeded_random_pair | farthest_pair");

    std::vector<std::string> args;
    try {
        args = expand_config(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "lexicluster: error: " << e.what() << '\n';
        return 1;
    }
    std::vector<const char*> cargs;
    for (const auto& a : args) cargs.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        auto cfg = f.to_config();
        if (ingest->parsed()) {
            auto s = lc::cmd_ingest(cfg);
            std::printf("documents %u\nvocabulary %u\nnnz %zu\n", s.documents, s.vocabulary, s.nnz);
        } else if (featurize->parsed()) {
            auto m = lc::cmd_featurize(cfg);
            std::printf("documents %u\ndimension %u\n", m.D, m.dimension);
        } else if (cluster->parsed()) {
            auto r = lc::cmd_cluster(cfg);
            std::printf("clusters %zu\nsplits %zu\n", r.cluster_count(), r.trace.size());
        } else if (evaluate->parsed()) {
            std::cout << lc::report_table(lc::cmd_evaluate(cfg));
        } else if (compare->parsed()) {
            std::cout << lc::comparison_table(lc::cmd_compare(cfg));
        }
    } catch (const lc::ExhaustedError& e) {
        std::cerr << "lexicluster: error: " << e.what() << " (partial result with " << e.partial().cluster_count()
                  << " clusters written)\n";
        return 3;
    } catch (const lc::Error& e) {
        std::cerr << "lexicluster: error [" << lc::to_string(e.code()) << "]: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "lexicluster: error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
