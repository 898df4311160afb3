#include "tjade/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace tjade {

namespace {

void fix_sign(Matrix& vectors) {
    for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
        Eigen::Index imax = 0;
        vectors.col(c).cwiseAbs().maxCoeff(&imax);
        if (vectors(imax, c) < 0) vectors.col(c) = -vectors.col(c);
    }
}

}  // namespace

SymEigen sym_eigen(const Matrix& s) {
    if (s.rows() != s.cols()) throw ShapeError("sym_eigen: matrix must be square");
    if (!s.allFinite()) throw NumericError("sym_eigen: non-finite entries");
    const Matrix sym = 0.5 * (s + s.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
    if (es.info() != Eigen::Success) throw NumericError("sym_eigen: eigensolver failed");
    // stable descending order so tied eigenvalues keep the solver's basis order
    const Eigen::Index p = sym.rows();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(p));
    for (Eigen::Index i = 0; i < p; ++i) order[static_cast<std::size_t>(i)] = i;
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        return es.eigenvalues()(a) > es.eigenvalues()(b);
    });
    SymEigen out;
    out.values.resize(p);
    out.vectors.resize(p, p);
    for (Eigen::Index k = 0; k < p; ++k) {
        out.values(k) = es.eigenvalues()(order[static_cast<std::size_t>(k)]);
        out.vectors.col(k) = es.eigenvectors().col(order[static_cast<std::size_t>(k)]);
    }
    fix_sign(out.vectors);
    return out;
}

Matrix inv_sqrt_sym(const Matrix& s, int mode) {
    SymEigen es = sym_eigen(s);
    const double largest = es.values(0);
    const double smallest = es.values(es.values.size() - 1);
    if (!(largest > 0.0) || smallest <= 1e-12 * largest) {
        std::string where = mode > 0 ? " (mode " + std::to_string(mode) + ")" : "";
        throw SingularityError("inv_sqrt_sym: matrix is numerically singular" + where, mode);
    }
    return es.vectors * es.values.cwiseSqrt().cwiseInverse().asDiagonal() * es.vectors.transpose();
}

JointDiagResult joint_diagonalize(std::span<const Matrix> mats, JointDiagOptions opt) {
    if (mats.empty()) throw ArgumentError("joint_diagonalize: empty matrix list");
    const Eigen::Index p = mats[0].rows();
    if (p < 1) throw ArgumentError("joint_diagonalize: p must be >= 1");
    for (const Matrix& m : mats)
        if (m.rows() != p || m.cols() != p)
            throw ShapeError("joint_diagonalize: matrices must share the same square shape");

    const std::size_t k = mats.size();
    JointDiagResult res;
    res.rotation = Matrix::Identity(p, p);
    if (p == 1) {
        res.converged = true;
        return res;
    }

    std::vector<Matrix> d(mats.begin(), mats.end());
    Matrix& w = res.rotation;

    auto off_mass = [&]() {
        double tot = 0.0;
        for (const Matrix& m : d) tot += m.squaredNorm() - m.diagonal().squaredNorm();
        return tot;
    };

    for (int sweep = 0; sweep < opt.max_sweeps; ++sweep) {
        bool rotated = false;
        for (Eigen::Index i = 0; i < p - 1; ++i) {
            for (Eigen::Index j = i + 1; j < p; ++j) {
                double g11 = 0.0, g22 = 0.0, g12 = 0.0;
                for (const Matrix& m : d) {
                    const double a = m(i, i) - m(j, j);
                    const double b = m(i, j) + m(j, i);
                    g11 += a * a;
                    g22 += b * b;
                    g12 += a * b;
                }
                const double ton = g11 - g22;
                const double toff = 2.0 * g12;
                const double theta = 0.5 * std::atan2(toff, ton + std::hypot(ton, toff));
                const double c = std::cos(theta);
                const double s = std::sin(theta);
                if (std::abs(s) <= opt.tol) continue;
                rotated = true;
                for (Matrix& m : d) {
                    const Vector ri = m.row(i), rj = m.row(j);
                    m.row(i) = c * ri.transpose() + s * rj.transpose();
                    m.row(j) = -s * ri.transpose() + c * rj.transpose();
                    const Vector ci = m.col(i), cj = m.col(j);
                    m.col(i) = c * ci + s * cj;
                    m.col(j) = -s * ci + c * cj;
                }
                const Vector wi = w.row(i), wj = w.row(j);
                w.row(i) = c * wi.transpose() + s * wj.transpose();
                w.row(j) = -s * wi.transpose() + c * wj.transpose();
            }
        }
        res.sweeps = sweep + 1;
        res.off_history.push_back(off_mass());
        if (!rotated) {
            res.converged = true;
            break;
        }
    }
    res.final_off = res.off_history.empty() ? off_mass() : res.off_history.back();
    return res;
}

double off_diag_mass(std::span<const Matrix> mats, const Matrix& w) {
    if (mats.empty()) return 0.0;
    double tot = 0.0;
    for (const Matrix& m : mats) {
        if (m.rows() != w.cols() || m.cols() != w.cols())
            throw ShapeError("off_diag_mass: shape mismatch");
        const Matrix t = w * m * w.transpose();
        tot += t.squaredNorm() - t.diagonal().squaredNorm();
    }
    return tot;
}

}  // namespace tjade
