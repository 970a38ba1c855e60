#include "lexicluster/evaluation.hpp"

#include "lexicluster/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

namespace lexicluster {

ContingencyTable::ContingencyTable(std::vector<std::vector<std::uint64_t>> counts) : counts_(std::move(counts)) {
    const std::size_t k = counts_.empty() ? 0 : counts_.front().size();
    class_totals_.assign(counts_.size(), 0);
    cluster_totals_.assign(k, 0);
    for (std::size_t i = 0; i < counts_.size(); ++i) {
        if (counts_[i].size() != k) throw Error(Errc::invalid_argument, "ragged contingency table");
        for (std::size_t j = 0; j < k; ++j) {
            class_totals_[i] += counts_[i][j];
            cluster_totals_[j] += counts_[i][j];
            total_ += counts_[i][j];
        }
    }
}

ContingencyTable contingency(std::span<const std::pair<DocId, std::uint32_t>> assignment,
                             const std::unordered_map<DocId, std::string>& labels) {
    std::map<std::string, std::size_t> class_index;
    std::map<std::uint32_t, std::size_t> cluster_index;
    std::vector<std::string> class_names;
    std::vector<std::uint32_t> cluster_ids;
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (auto [doc, cluster] : assignment) {
        auto it = labels.find(doc);
        if (it == labels.end()) throw Error(Errc::unlabeled_document, "document " + std::to_string(doc) + " has no label");
        auto [ci, new_class] = class_index.try_emplace(it->second, class_names.size());
        if (new_class) class_names.push_back(it->second);
        auto [kj, new_cluster] = cluster_index.try_emplace(cluster, cluster_ids.size());
        if (new_cluster) cluster_ids.push_back(cluster);
        cells.emplace_back(ci->second, kj->second);
    }
    std::vector<std::vector<std::uint64_t>> counts(class_names.size(), std::vector<std::uint64_t>(cluster_ids.size(), 0));
    for (auto [i, j] : cells) ++counts[i][j];
    ContingencyTable ct(std::move(counts));
    ct.class_names = std::move(class_names);
    ct.cluster_ids = std::move(cluster_ids);
    return ct;
}

namespace {

void require_nonempty(const ContingencyTable& ct, const char* metric) {
    if (ct.total() == 0) throw Error(Errc::empty_input, std::string(metric) + " of an empty contingency table");
}

}  // namespace

double purity(const ContingencyTable& ct) {
    require_nonempty(ct, "purity");
    std::uint64_t sum = 0;
    for (std::size_t j = 0; j < ct.clusters(); ++j) {
        std::uint64_t best = 0;
        for (std::size_t i = 0; i < ct.classes(); ++i) best = std::max(best, ct.count(i, j));
        sum += best;
    }
    return static_cast<double>(sum) / static_cast<double>(ct.total());
}

EntropyResult entropy(const ContingencyTable& ct) {
    require_nonempty(ct, "entropy");
    EntropyResult r;
    r.per_cluster.assign(ct.clusters(), 0.0);
    const double n = static_cast<double>(ct.total());
    for (std::size_t j = 0; j < ct.clusters(); ++j) {
        const auto nj = ct.cluster_total(j);
        if (nj == 0) continue;
        double e = 0.0;
        for (std::size_t i = 0; i < ct.classes(); ++i) {
            const auto nij = ct.count(i, j);
            if (nij == 0) continue;
            double p = static_cast<double>(nij) / static_cast<double>(nj);
            e += p * std::log2(1.0 / p);
        }
        r.per_cluster[j] = e;
        r.total += static_cast<double>(nj) * e / n;
    }
    return r;
}

FMeasureResult f_measure(const ContingencyTable& ct) {
    require_nonempty(ct, "f_measure");
    FMeasureResult r;
    r.best_per_class.assign(ct.classes(), 0.0);
    const double n = static_cast<double>(ct.total());
    for (std::size_t i = 0; i < ct.classes(); ++i) {
        const auto ni = ct.class_total(i);
        double best = 0.0;
        for (std::size_t j = 0; j < ct.clusters(); ++j) {
            const auto nij = ct.count(i, j);
            if (nij == 0) continue;
            double recall = static_cast<double>(nij) / static_cast<double>(ni);
            double precision = static_cast<double>(nij) / static_cast<double>(ct.cluster_total(j));
            best = std::max(best, 2.0 * recall * precision / (recall + precision));
        }
        r.best_per_class[i] = best;
        r.total += static_cast<double>(ni) / n * best;
    }
    return r;
}

double internal_eval(const FeatureMatrix& data, std::span<const std::pair<DocId, std::uint32_t>> assignment,
                     std::span<const Centroid> centroids) {
    if (assignment.empty()) throw Error(Errc::empty_input, "internal evaluation of an empty assignment");
    std::map<std::uint32_t, const Centroid*> by_index;
    for (const auto& c : centroids) by_index[c.index] = &c;
    double sum = 0.0;
    for (auto [doc, cluster] : assignment) {
        if (doc == 0 || doc > data.D) {
            throw Error(Errc::mismatch, "assigned document " + std::to_string(doc) + " is not in the matrix");
        }
        auto it = by_index.find(cluster);
        if (it == by_index.end()) throw Error(Errc::mismatch, "cluster " + std::to_string(cluster) + " has no centroid");
        sum += cosine(data.row(doc), it->second->mean);
    }
    return sum / static_cast<double>(assignment.size());
}

namespace {

std::string fixed(const std::optional<double>& v) {
    if (!v) return "";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", *v);
    return buf;
}

}  // namespace

std::string report_csv_header() { return "representation,K,seed,purity,entropy,f_measure,internal\n"; }

std::string report_csv_row(const MetricsReport& r) {
    return r.representation + ',' + std::to_string(r.K) + ',' + std::to_string(r.seed) + ',' + fixed(r.purity) + ',' +
           fixed(r.entropy) + ',' + fixed(r.f_measure) + ',' + fixed(r.internal) + '\n';
}

std::string report_table(const MetricsReport& r) {
    auto show = [](const std::optional<double>& v) { return v ? fixed(v) : std::string("n/a"); };
    std::string out;
    out += "representation  " + r.representation + '\n';
    out += "K               " + std::to_string(r.K) + '\n';
    out += "seed            " + std::to_string(r.seed) + '\n';
    out += "purity          " + show(r.purity) + '\n';
    out += "entropy         " + show(r.entropy) + '\n';
    out += "f_measure       " + show(r.f_measure) + '\n';
    out += "internal        " + show(r.internal) + '\n';
    for (std::size_t j = 0; j < r.cluster_entropies.size(); ++j) {
        out += "  cluster " + std::to_string(j) + " entropy " + fixed(r.cluster_entropies[j]) + '\n';
    }
    for (std::size_t i = 0; i < r.class_best_f.size(); ++i) {
        out += "  class " + std::to_string(i) + " best F " + fixed(r.class_best_f[i]) + '\n';
    }
    return out;
}

}  // namespace lexicluster
