#pragma once

#include "lexicluster/corpus.hpp"
#include "lexicluster/sparse.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lexicluster {

/// Weighted document vectors. rows[d - 1] holds document d; feature ids
/// are 1-based and never exceed `dimension`.
struct FeatureMatrix {
    std::uint32_t D = 0;
    std::uint32_t dimension = 0;
    std::vector<SparseVector> rows;

    const SparseVector& row(DocId doc) const { return rows.at(doc - 1); }

    friend bool operator==(const FeatureMatrix&, const FeatureMatrix&) = default;
};

/// count(d, f) * ln(D / df(f)). Features present in every document weigh 0
/// and are omitted from the sparse rows.
FeatureMatrix weight_idf(const SparseBag& bag);
/// lfi-idf over a bag of lexical categories.
inline FeatureMatrix weight_lfidf(const CategoryBag& cbag) { return weight_idf(cbag); }
inline FeatureMatrix weight_tfidf(const SparseBag& bag) { return weight_idf(bag); }

/// Scales every nonzero row to unit Euclidean norm.
FeatureMatrix normalize(FeatureMatrix m);

// Header "D dimension", then "doc id:weight ..." for each non-empty row.
std::string write_matrix(const FeatureMatrix& m);
FeatureMatrix parse_matrix(std::string_view text);

}  // namespace lexicluster
