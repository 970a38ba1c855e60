#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace lexicluster {

using FeatureId = std::uint32_t;

struct SparseEntry {
    FeatureId feature;
    double weight;

    friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

// Entries sorted by feature id, no duplicates.
using SparseVector = std::vector<SparseEntry>;

double dot(std::span<const SparseEntry> a, std::span<const SparseEntry> b);
double norm(std::span<const SparseEntry> v);

/// Cosine similarity; 0 when either vector has zero norm.
double cosine(std::span<const SparseEntry> a, std::span<const SparseEntry> b);
double cosine(std::span<const SparseEntry> a, double norm_a,
              std::span<const SparseEntry> b, double norm_b);

/// Builds a sorted sparse vector from a dense one, skipping zeros.
/// Dense index i maps to feature id i.
SparseVector from_dense(std::span<const double> dense);

}  // namespace lexicluster
