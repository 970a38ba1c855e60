#include "lexicluster/sparse.hpp"
#include "lexicluster/error.hpp"

#include <algorithm>
#include <cmath>

namespace lexicluster {

std::string_view to_string(Errc code) noexcept {
    switch (code) {
        case Errc::duplicate_doc_id: return "duplicate_doc_id";
        case Errc::header_count_mismatch: return "header_count_mismatch";
        case Errc::non_positive_integer: return "non_positive_integer";
        case Errc::malformed_line: return "malformed_line";
        case Errc::duplicate_feature: return "duplicate_feature";
        case Errc::feature_out_of_range: return "feature_out_of_range";
        case Errc::unknown_category: return "unknown_category";
        case Errc::duplicate_sense_rank: return "duplicate_sense_rank";
        case Errc::unknown_word_id: return "unknown_word_id";
        case Errc::invalid_argument: return "invalid_argument";
        case Errc::invalid_label: return "invalid_label";
        case Errc::absent_label: return "absent_label";
        case Errc::io_failure: return "io_failure";
        case Errc::job_failed: return "job_failed";
        case Errc::unsplittable: return "unsplittable";
        case Errc::exhausted: return "exhausted";
        case Errc::unlabeled_document: return "unlabeled_document";
        case Errc::empty_input: return "empty_input";
        case Errc::mismatch: return "mismatch";
    }
    return "unknown";
}

double dot(std::span<const SparseEntry> a, std::span<const SparseEntry> b) {
    double sum = 0.0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (ia->feature < ib->feature) {
            ++ia;
        } else if (ib->feature < ia->feature) {
            ++ib;
        } else {
            sum += ia->weight * ib->weight;
            ++ia;
            ++ib;
        }
    }
    return sum;
}

double norm(std::span<const SparseEntry> v) {
    double sq = 0.0;
    for (const auto& e : v) sq += e.weight * e.weight;
    return std::sqrt(sq);
}

double cosine(std::span<const SparseEntry> a, double norm_a,
              std::span<const SparseEntry> b, double norm_b) {
    if (norm_a == 0.0 || norm_b == 0.0) return 0.0;
    double c = dot(a, b) / (norm_a * norm_b);
    return std::clamp(c, 0.0, 1.0);
}

double cosine(std::span<const SparseEntry> a, std::span<const SparseEntry> b) {
    return cosine(a, norm(a), b, norm(b));
}

SparseVector from_dense(std::span<const double> dense) {
    SparseVector out;
    for (std::size_t i = 0; i < dense.size(); ++i) {
        if (dense[i] != 0.0) out.push_back({static_cast<FeatureId>(i), dense[i]});
    }
    return out;
}

}  // namespace lexicluster
