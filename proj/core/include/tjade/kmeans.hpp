#pragma once

#include <span>
#include <vector>

#include "tjade/rng.hpp"
#include "tjade/tensor.hpp"

namespace tjade {

struct KMeansResult {
    std::vector<int> labels;
    Matrix centroids;  // k x d
    double inertia = 0.0;
};

/// Lloyd k-means with k-means++ seeding and n_init restarts (best inertia kept).
/// points: one observation per row. Deterministic for a given rng state.
KMeansResult kmeans(const Matrix& points, int k, Rng& rng, int n_init = 10, int max_iter = 100);

/// Fraction of points whose cluster matches the true label under the best
/// cluster-to-label assignment.
double cluster_agreement(std::span<const int> pred, std::span<const int> truth);

}  // namespace tjade
