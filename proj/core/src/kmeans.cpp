#include "tjade/kmeans.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "tjade/mdi.hpp"

namespace tjade {

namespace {

KMeansResult lloyd_once(const Matrix& pts, int k, Rng& rng, int max_iter) {
    const Eigen::Index n = pts.rows();
    const Eigen::Index d = pts.cols();
    Matrix centroids(k, d);

    // k-means++ seeding
    std::vector<double> dist2(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
    const Eigen::Index first = static_cast<Eigen::Index>(rng.engine()() % static_cast<std::uint64_t>(n));
    centroids.row(0) = pts.row(first);
    for (int c = 1; c < k; ++c) {
        double total = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double d2 = (pts.row(i) - centroids.row(c - 1)).squaredNorm();
            dist2[static_cast<std::size_t>(i)] = std::min(dist2[static_cast<std::size_t>(i)], d2);
            total += dist2[static_cast<std::size_t>(i)];
        }
        double target = rng.uniform01() * total;
        Eigen::Index pick = n - 1;
        for (Eigen::Index i = 0; i < n; ++i) {
            target -= dist2[static_cast<std::size_t>(i)];
            if (target <= 0.0) {
                pick = i;
                break;
            }
        }
        centroids.row(c) = pts.row(pick);
    }

    KMeansResult res;
    res.labels.assign(static_cast<std::size_t>(n), 0);
    for (int iter = 0; iter < max_iter; ++iter) {
        bool changed = false;
        for (Eigen::Index i = 0; i < n; ++i) {
            int best = 0;
            double best_d = std::numeric_limits<double>::infinity();
            for (int c = 0; c < k; ++c) {
                const double d2 = (pts.row(i) - centroids.row(c)).squaredNorm();
                if (d2 < best_d) {
                    best_d = d2;
                    best = c;
                }
            }
            if (res.labels[static_cast<std::size_t>(i)] != best) {
                res.labels[static_cast<std::size_t>(i)] = best;
                changed = true;
            }
        }
        Matrix sums = Matrix::Zero(k, d);
        std::vector<std::int64_t> counts(static_cast<std::size_t>(k), 0);
        for (Eigen::Index i = 0; i < n; ++i) {
            sums.row(res.labels[static_cast<std::size_t>(i)]) += pts.row(i);
            counts[static_cast<std::size_t>(res.labels[static_cast<std::size_t>(i)])]++;
        }
        for (int c = 0; c < k; ++c)
            if (counts[static_cast<std::size_t>(c)] > 0)
                centroids.row(c) = sums.row(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);
        if (!changed && iter > 0) break;
    }
    res.centroids = centroids;
    res.inertia = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
        res.inertia += (pts.row(i) - centroids.row(res.labels[static_cast<std::size_t>(i)])).squaredNorm();
    return res;
}

}  // namespace

KMeansResult kmeans(const Matrix& points, int k, Rng& rng, int n_init, int max_iter) {
    if (k < 1 || points.rows() < k) throw ArgumentError("kmeans: need at least k points");
    KMeansResult best;
    best.inertia = std::numeric_limits<double>::infinity();
    for (int run = 0; run < n_init; ++run) {
        KMeansResult r = lloyd_once(points, k, rng, max_iter);
        if (r.inertia < best.inertia) best = std::move(r);
    }
    return best;
}

double cluster_agreement(std::span<const int> pred, std::span<const int> truth) {
    if (pred.size() != truth.size() || pred.empty())
        throw ArgumentError("cluster_agreement: label vectors must match in size");
    std::map<int, int> pmap, tmap;
    for (int v : pred) pmap.emplace(v, static_cast<int>(pmap.size()));
    for (int v : truth) tmap.emplace(v, static_cast<int>(tmap.size()));
    const int k = static_cast<int>(std::max(pmap.size(), tmap.size()));
    Matrix confusion = Matrix::Zero(k, k);
    for (std::size_t i = 0; i < pred.size(); ++i)
        confusion(pmap[pred[i]], tmap[truth[i]]) += 1.0;
    const std::vector<int> sol = max_assignment(confusion);
    double hits = 0.0;
    for (int r = 0; r < k; ++r) hits += confusion(r, sol[static_cast<std::size_t>(r)]);
    return hits / static_cast<double>(pred.size());
}

}  // namespace tjade
