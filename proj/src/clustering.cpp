#include "lexicluster/clustering.hpp"

#include "lexicluster/text_io.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>

namespace lexicluster {
namespace {

constexpr double kSameDirectionSlack = 1e-12;

std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
    // Rejection sampling over raw 64-bit draws.
    const std::uint64_t range = n;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x = rng();
    while (x >= limit) x = rng();
    return static_cast<std::size_t>(x % range);
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

double cos_to(const DocVector& d, const Centroid& c) { return cosine(d.components, d.norm, c.mean, c.norm); }

std::vector<std::size_t> nonzero_indices(std::span<const DocVector> docs) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        if (docs[i].norm > 0.0) out.push_back(i);
    }
    return out;
}

std::string write_rows(std::span<const DocVector> docs) {
    std::string out;
    for (const auto& d : docs) {
        out += std::to_string(d.doc_id);
        for (const auto& e : d.components) {
            out += ' ';
            out += std::to_string(e.feature);
            out += ':';
            out += format_real(e.weight);
        }
        out += '\n';
    }
    return out;
}

struct ReducedCluster {
    Centroid centroid;
    std::vector<DocVector> members;
};

using KmeansJob = JobSpec<DocId, DocVector, std::uint32_t, DocVector, std::uint32_t, ReducedCluster>;

// One assign/recompute round. A missing slot means that cluster came out empty.
std::array<std::optional<ReducedCluster>, 2> run_pass(const Engine& engine,
                                                      const std::vector<std::vector<KeyValue<DocId, DocVector>>>& parts,
                                                      const std::array<Centroid, 2>& centers) {
    KmeansJob job;
    job.map = [&centers](const DocId&, const DocVector& doc) {
        return std::vector<KeyValue<std::uint32_t, DocVector>>{assign_map(doc, centers)};
    };
    job.reduce = [](const std::uint32_t& index, const std::vector<DocVector>& docs) {
        return std::vector<KeyValue<std::uint32_t, ReducedCluster>>{{index, {centroid_reduce(index, docs), docs}}};
    };
    std::array<std::optional<ReducedCluster>, 2> out;
    for (auto& kv : engine.run_job(job, parts)) out.at(kv.key) = std::move(kv.value);
    return out;
}

// Reseed the empty slot with the nonzero document least similar to the survivor.
Centroid repair_center(std::span<const DocVector> docs, const Centroid& survivor, std::uint32_t empty_index) {
    std::optional<std::size_t> best;
    double best_cos = 2.0;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        if (docs[i].norm == 0.0) continue;
        double c = cos_to(docs[i], survivor);
        if (c < best_cos) {
            best_cos = c;
            best = i;
        }
    }
    if (!best || best_cos >= 1.0 - kSameDirectionSlack) {
        throw Error(Errc::unsplittable, "cannot reseed an empty cluster: all documents point the same way");
    }
    return Centroid(empty_index, docs[*best].components);
}

}  // namespace

DocVector::DocVector(DocId id, SparseVector v) : doc_id(id), components(std::move(v)), norm(lexicluster::norm(components)) {}

Centroid::Centroid(std::uint32_t idx, SparseVector v) : index(idx), mean(std::move(v)), norm(lexicluster::norm(mean)) {}

std::vector<DocVector> to_doc_vectors(const FeatureMatrix& m) {
    std::vector<DocVector> out;
    out.reserve(m.rows.size());
    for (std::size_t d = 0; d < m.rows.size(); ++d) out.emplace_back(static_cast<DocId>(d + 1), m.rows[d]);
    return out;
}

bool same_direction(const DocVector& a, const DocVector& b) {
    if (a.norm == 0.0 || b.norm == 0.0) return a.norm == 0.0 && b.norm == 0.0;
    return cosine(a.components, a.norm, b.components, b.norm) >= 1.0 - kSameDirectionSlack;
}

bool splittable(std::span<const DocVector> docs) {
    const DocVector* first = nullptr;
    for (const auto& d : docs) {
        if (d.norm == 0.0) continue;
        if (first == nullptr) {
            first = &d;
        } else if (!same_direction(*first, d)) {
            return true;
        }
    }
    return false;
}

KeyValue<std::uint32_t, DocVector> assign_map(const DocVector& doc, const std::array<Centroid, 2>& centers) {
    double c0 = cos_to(doc, centers[0]);
    double c1 = cos_to(doc, centers[1]);
    return {c1 > c0 ? 1u : 0u, doc};
}

Centroid centroid_reduce(std::uint32_t cluster_index, const std::vector<DocVector>& docs) {
    if (docs.empty()) throw Error(Errc::empty_input, "centroid of an empty cluster");
    FeatureId max_feature = 0;
    for (const auto& d : docs) {
        if (!d.components.empty()) max_feature = std::max(max_feature, d.components.back().feature);
    }
    std::vector<double> sum(static_cast<std::size_t>(max_feature) + 1, 0.0);
    for (const auto& d : docs) {
        for (const auto& e : d.components) sum[e.feature] += e.weight;
    }
    const double n = static_cast<double>(docs.size());
    for (auto& s : sum) s /= n;
    return Centroid(cluster_index, from_dense(sum));
}

std::size_t farthest_partner(std::span<const DocVector> docs, std::size_t anchor) {
    std::optional<std::size_t> best;
    double best_cos = 2.0;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        if (i == anchor || docs[i].norm == 0.0 || same_direction(docs[i], docs[anchor])) continue;
        double c = cosine(docs[i].components, docs[i].norm, docs[anchor].components, docs[anchor].norm);
        if (c < best_cos) {
            best_cos = c;
            best = i;
        }
    }
    if (!best) throw Error(Errc::unsplittable, "no document points away from the anchor");
    return *best;
}

std::array<Centroid, 2> init_centers(std::span<const DocVector> docs, std::uint64_t seed, InitMethod method) {
    if (!splittable(docs)) {
        throw Error(Errc::unsplittable, "need two nonzero documents pointing in different directions");
    }
    std::mt19937_64 rng(seed);
    auto candidates = nonzero_indices(docs);
    std::size_t a = candidates[uniform_index(rng, candidates.size())];
    std::size_t b = 0;
    if (method == InitMethod::farthest_pair) {
        b = farthest_partner(docs, a);
    } else {
        std::erase_if(candidates, [&](std::size_t i) { return same_direction(docs[i], docs[a]); });
        b = candidates[uniform_index(rng, candidates.size())];
    }
    return {Centroid(0, docs[a].components), Centroid(1, docs[b].components)};
}

TwoMeansResult basic_kmeans2(std::span<const DocVector> docs, const BisectConfig& cfg, std::uint64_t seed,
                             const Engine& engine, PathStore& store, const KmeansPaths& paths) {
    auto centers = init_centers(docs, seed, cfg.init_method);

    std::vector<KeyValue<DocId, DocVector>> records;
    records.reserve(docs.size());
    for (const auto& d : docs) records.push_back({d.doc_id, d});
    const std::size_t n_parts = cfg.partitions == 0 ? engine.workers() : cfg.partitions;
    const auto parts = partition(records, n_parts);

    TwoMeansResult result;
    bool converged = false;
    int repairs_in_a_row = 0;
    while (true) {
        auto pass = run_pass(engine, parts, centers);
        if (!pass[0] || !pass[1]) {
            // After reseeding, the reseeded document is strictly closer to its
            // own center, so a second consecutive repair means a logic error.
            if (++repairs_in_a_row > 1) throw Error(Errc::unsplittable, "empty cluster persisted after reseeding");
            std::uint32_t empty = pass[0] ? 1u : 0u;
            centers[empty] = repair_center(docs, centers[1 - empty], empty);
            store.write(paths.centroids, write_centroids(centers));
            continue;
        }
        repairs_in_a_row = 0;
        result.clusters = {std::move(pass[0]->members), std::move(pass[1]->members)};
        if (converged || result.iterations >= cfg.max_iterations) break;

        std::array<Centroid, 2> updated{std::move(pass[0]->centroid), std::move(pass[1]->centroid)};
        double movement = 0.0;
        for (int j = 0; j < 2; ++j) {
            movement = std::max(movement, 1.0 - cosine(centers[j].mean, centers[j].norm, updated[j].mean, updated[j].norm));
        }
        centers = std::move(updated);
        ++result.iterations;
        store.write(paths.centroids, write_centroids(centers));
        converged = movement <= cfg.tolerance;
    }
    result.centroids = centers;
    store.write(paths.centroids, write_centroids(centers));

    std::vector<std::pair<DocId, std::uint32_t>> assignment;
    for (std::uint32_t j = 0; j < 2; ++j) {
        for (const auto& d : result.clusters[j]) assignment.emplace_back(d.doc_id, j);
        store.write(sub_label(paths.output, "cluster" + std::to_string(j)), write_rows(result.clusters[j]));
    }
    std::sort(assignment.begin(), assignment.end());
    store.write(sub_label(paths.output, "assignment"), write_assignment(assignment));
    return result;
}

double overall_similarity(std::span<const DocVector> docs, const Centroid& centroid) {
    if (docs.empty()) throw Error(Errc::empty_input, "overall similarity of an empty cluster");
    double sum = 0.0;
    for (const auto& d : docs) sum += cos_to(d, centroid);
    return sum / static_cast<double>(docs.size());
}

std::size_t select_split(std::span<const ClusterSummary> clusters, SplitPolicy policy) {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        const auto& c = clusters[i];
        if (!c.splittable || c.size < 2) continue;
        if (!best) {
            best = i;
            continue;
        }
        const auto& b = clusters[*best];
        bool better = policy == SplitPolicy::largest ? c.size > b.size : c.overall_similarity < b.overall_similarity;
        if (better) best = i;
    }
    if (!best) throw Error(Errc::exhausted, "no splittable cluster remains");
    return *best;
}

namespace {

struct Leaf {
    std::vector<DocVector> docs;
    Centroid centroid;
    PathLabel dataset;
};

ClusteringResult summarize(const std::vector<Leaf>& leaves, std::vector<BisectionStep> trace) {
    ClusteringResult r;
    for (std::uint32_t j = 0; j < leaves.size(); ++j) {
        for (const auto& d : leaves[j].docs) r.assignment.emplace_back(d.doc_id, j);
        Centroid c = leaves[j].centroid;
        c.index = j;
        r.centroids.push_back(std::move(c));
        r.overall_similarity.push_back(overall_similarity(leaves[j].docs, leaves[j].centroid));
    }
    std::sort(r.assignment.begin(), r.assignment.end());
    r.trace = std::move(trace);
    return r;
}

}  // namespace

ClusteringResult bisecting(std::span<const DocVector> docs, const BisectConfig& cfg, const Engine& engine,
                           PathStore& store) {
    if (cfg.K < 1) throw Error(Errc::invalid_argument, "K must be >= 1");
    if (!(cfg.tolerance > 0.0)) throw Error(Errc::invalid_argument, "tolerance must be > 0");
    if (cfg.max_iterations < 0) throw Error(Errc::invalid_argument, "max_iterations must be >= 0");
    if (docs.empty()) throw Error(Errc::empty_input, "no documents to cluster");

    PathLabel dataset("input");
    PathLabel centroids("cc");
    PathLabel output("out");
    store.write(dataset, write_rows(docs));

    std::vector<DocVector> all(docs.begin(), docs.end());
    Centroid mean = centroid_reduce(0, all);
    std::vector<Leaf> leaves;
    leaves.push_back({std::move(all), std::move(mean), dataset});
    std::vector<BisectionStep> trace;

    std::size_t obtained = 0;
    bool first_time = true;
    std::uint64_t split_no = 0;
    while (obtained < cfg.K && cfg.K > 1) {
        std::vector<ClusterSummary> summaries;
        for (const auto& leaf : leaves) {
            summaries.push_back({leaf.docs.size(), overall_similarity(leaf.docs, leaf.centroid), splittable(leaf.docs)});
        }
        std::size_t s = 0;
        try {
            s = select_split(summaries, cfg.split_policy);
        } catch (const Error&) {
            throw ExhaustedError("no splittable cluster left after " + std::to_string(leaves.size()) +
                                     " clusters (K=" + std::to_string(cfg.K) + ")",
                                 summarize(leaves, trace));
        }

        auto two = basic_kmeans2(leaves[s].docs, cfg, splitmix64(cfg.seed + split_no), engine, store,
                                 {leaves[s].dataset, centroids, output});
        ++split_no;
        trace.push_back({leaves[s].dataset.str(), centroids.str(), output.str(), s, two.iterations,
                         {two.clusters[0].size(), two.clusters[1].size()}});

        Leaf second{std::move(two.clusters[1]), two.centroids[1], sub_label(output, "cluster1")};
        leaves[s] = Leaf{std::move(two.clusters[0]), two.centroids[0], sub_label(output, "cluster0")};
        leaves.push_back(std::move(second));

        obtained += first_time ? 2 : 1;
        first_time = false;
        centroids = derive_child(centroids);
        output = derive_child(output);
    }
    return summarize(leaves, std::move(trace));
}

std::string write_centroids(std::span<const Centroid> centroids) {
    std::string out;
    for (const auto& c : centroids) {
        out += std::to_string(c.index);
        for (const auto& e : c.mean) {
            out += ' ';
            out += std::to_string(e.feature);
            out += ':';
            out += format_real(e.weight);
        }
        out += '\n';
    }
    return out;
}

std::vector<Centroid> parse_centroids(std::string_view text) {
    std::vector<Centroid> out;
    LineReader lines(text);
    while (auto line = lines.next()) {
        if (line->empty()) continue;
        auto n = lines.line_number();
        auto fields = split_fields(*line);
        auto index = static_cast<std::uint32_t>(parse_count(fields[0], n, true));
        SparseVector v;
        for (std::size_t f = 1; f < fields.size(); ++f) {
            auto [id, w] = split_pair(fields[f], ':', n);
            v.push_back({static_cast<FeatureId>(parse_count(id, n, false)), parse_real(w, n)});
        }
        std::sort(v.begin(), v.end(), [](const SparseEntry& a, const SparseEntry& b) { return a.feature < b.feature; });
        out.emplace_back(index, std::move(v));
    }
    return out;
}

std::string write_assignment(std::span<const std::pair<DocId, std::uint32_t>> assignment) {
    std::string out;
    for (auto [doc, cluster] : assignment) out += std::to_string(doc) + ' ' + std::to_string(cluster) + '\n';
    return out;
}

std::vector<std::pair<DocId, std::uint32_t>> parse_assignment(std::string_view text) {
    std::vector<std::pair<DocId, std::uint32_t>> out;
    LineReader lines(text);
    while (auto line = lines.next()) {
        if (line->empty()) continue;
        auto n = lines.line_number();
        auto fields = split_fields(*line);
        if (fields.size() != 2) throw Error(Errc::malformed_line, "assignment line " + std::to_string(n));
        out.emplace_back(static_cast<DocId>(parse_count(fields[0], n, false)),
                         static_cast<std::uint32_t>(parse_count(fields[1], n, true)));
    }
    return out;
}

std::string write_trace(std::span<const BisectionStep> trace) {
    std::string out = "step dataset centroids output split_cluster iterations size0 size1\n";
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const auto& t = trace[i];
        out += std::to_string(i + 1) + ' ' + t.dataset_label + ' ' + t.centroid_label + ' ' + t.output_label + ' ' +
               std::to_string(t.split_cluster) + ' ' + std::to_string(t.iterations) + ' ' +
               std::to_string(t.sizes[0]) + ' ' + std::to_string(t.sizes[1]) + '\n';
    }
    return out;
}

}  // namespace lexicluster
