#include "tjade/mdi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tjade {

Matrix kron_chain(std::span<const Matrix> mats) {
    if (mats.empty()) throw ArgumentError("kron_chain: empty list");
    Matrix out = mats[mats.size() - 1];
    for (std::size_t k = mats.size() - 1; k-- > 0;) out = kronecker(out, mats[k]);
    return out;
}

Matrix kronecker_gain(const UnmixingModel& model, std::span<const Matrix> mixers) {
    return kronecker_gain(model.phis, mixers);
}

Matrix kronecker_gain(std::span<const Matrix> phis, std::span<const Matrix> mixers) {
    if (phis.size() != mixers.size()) throw ShapeError("kronecker_gain: mode count mismatch");
    for (std::size_t m = 0; m < phis.size(); ++m)
        if (phis[m].cols() != mixers[m].rows())
            throw ShapeError("kronecker_gain: nonconformable mode " + std::to_string(m + 1));
    return kron_chain(phis) * kron_chain(mixers);
}

std::vector<int> max_assignment(const Matrix& score) {
    const int n = static_cast<int>(score.rows());
    if (score.cols() != n || n < 1) throw ShapeError("max_assignment: square matrix required");
    // potentials method on cost = -score (minimization)
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(static_cast<std::size_t>(n) + 1, 0.0), v(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<int> p(static_cast<std::size_t>(n) + 1, 0), way(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(static_cast<std::size_t>(n) + 1, inf);
        std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
        do {
            used[static_cast<std::size_t>(j0)] = 1;
            const int i0 = p[static_cast<std::size_t>(j0)];
            int j1 = 0;
            double delta = inf;
            for (int j = 1; j <= n; ++j) {
                if (used[static_cast<std::size_t>(j)]) continue;
                const double cur = -score(i0 - 1, j - 1) - u[static_cast<std::size_t>(i0)] -
                                   v[static_cast<std::size_t>(j)];
                if (cur < minv[static_cast<std::size_t>(j)]) {
                    minv[static_cast<std::size_t>(j)] = cur;
                    way[static_cast<std::size_t>(j)] = j0;
                }
                if (minv[static_cast<std::size_t>(j)] < delta) {
                    delta = minv[static_cast<std::size_t>(j)];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[static_cast<std::size_t>(j)]) {
                    u[static_cast<std::size_t>(p[static_cast<std::size_t>(j)])] += delta;
                    v[static_cast<std::size_t>(j)] -= delta;
                } else {
                    minv[static_cast<std::size_t>(j)] -= delta;
                }
            }
            j0 = j1;
        } while (p[static_cast<std::size_t>(j0)] != 0);
        do {
            const int j1 = way[static_cast<std::size_t>(j0)];
            p[static_cast<std::size_t>(j0)] = p[static_cast<std::size_t>(j1)];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<int> col_of_row(static_cast<std::size_t>(n), -1);
    for (int j = 1; j <= n; ++j)
        if (p[static_cast<std::size_t>(j)] != 0) col_of_row[static_cast<std::size_t>(p[static_cast<std::size_t>(j)] - 1)] = j - 1;
    return col_of_row;
}

double mdi(const Matrix& gain) {
    const int p = static_cast<int>(gain.rows());
    if (gain.cols() != p) throw ShapeError("mdi: gain matrix must be square");
    if (p < 2) throw ArgumentError("mdi: requires p >= 2");
    if (!gain.allFinite()) throw NumericError("mdi: non-finite gain entries");
    Matrix n(p, p);
    for (int k = 0; k < p; ++k) {
        const double r2 = gain.row(k).squaredNorm();
        if (r2 <= 0.0)
            throw ArgumentError("mdi: undefined for a gain matrix with an all-zero row");
        n.row(k) = gain.row(k).array().square() / r2;
    }
    const std::vector<int> sol = max_assignment(n);
    double best = 0.0;
    for (int k = 0; k < p; ++k) best += n(k, sol[static_cast<std::size_t>(k)]);
    const double d2 = (static_cast<double>(p) - best) / (p - 1.0);
    return std::sqrt(std::clamp(d2, 0.0, 1.0));
}

double transformed_mdi(double d, std::int64_t n, int p) {
    if (!(d >= 0.0 && d <= 1.0)) throw ArgumentError("transformed_mdi: d must be in [0,1]");
    if (n < 1 || p < 2) throw ArgumentError("transformed_mdi: need n >= 1, p >= 2");
    return static_cast<double>(n) * (p - 1.0) * d * d;
}

}  // namespace tjade
