#include <doctest.h>

#include "test_util.hpp"
#include "tjade/linalg.hpp"

using namespace tjade;
using namespace tjade::testing;

namespace {

Matrix random_symmetric(int p, Rng& rng) {
    const Matrix a = random_matrix(p, p, rng);
    return 0.5 * (a + a.transpose());
}

Matrix random_spd(int p, Rng& rng) {
    const Matrix a = random_matrix(p, p, rng);
    return a * a.transpose() + Matrix::Identity(p, p);
}

// |W| should be a permutation matrix when W is a signed permutation
bool is_signed_permutation(const Matrix& w, double tol) {
    const int p = static_cast<int>(w.rows());
    for (int i = 0; i < p; ++i) {
        int big = 0;
        for (int j = 0; j < p; ++j)
            if (std::abs(std::abs(w(i, j)) - 1.0) < tol) ++big;
        double off = 0.0;
        for (int j = 0; j < p; ++j)
            if (std::abs(w(i, j)) < 0.5) off += std::abs(w(i, j));
        if (big != 1 || off > tol) return false;
    }
    return true;
}

}  // namespace

TEST_SUITE_BEGIN("linalg");

TEST_CASE("sym_eigen on identity and diagonal matrices") {
    const SymEigen id = sym_eigen(Matrix::Identity(3, 3));
    CHECK((id.values.array() - 1.0).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((id.vectors - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-14);

    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 3.0;
    d(1, 1) = 1.0;
    const SymEigen es = sym_eigen(d);
    CHECK(es.values(0) == doctest::Approx(3.0));
    CHECK(es.values(1) == doctest::Approx(1.0));
    CHECK((es.vectors - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("sym_eigen reconstructs and satisfies the eigen equations") {
    Rng rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix s = random_symmetric(4, rng);
        const SymEigen es = sym_eigen(s);
        const Matrix rebuilt = es.vectors * es.values.asDiagonal() * es.vectors.transpose();
        CHECK((rebuilt - s).cwiseAbs().maxCoeff() < 1e-9);
        CHECK((es.vectors.transpose() * es.vectors - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-10);
        const double scale = s.cwiseAbs().maxCoeff();
        for (int k = 0; k < 4; ++k)
            CHECK((s * es.vectors.col(k) - es.values(k) * es.vectors.col(k)).cwiseAbs().maxCoeff() <
                  1e-8 * scale);
        for (int k = 1; k < 4; ++k) CHECK(es.values(k - 1) >= es.values(k));
    }
}

TEST_CASE("sym_eigen rejects non-finite input") {
    Matrix bad = Matrix::Identity(2, 2);
    bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(sym_eigen(bad), NumericError);
}

TEST_CASE("inv_sqrt_sym identity and diagonal cases") {
    CHECK((inv_sqrt_sym(Matrix::Identity(3, 3)) - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-14);
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 4.0;
    d(1, 1) = 9.0;
    const Matrix r = inv_sqrt_sym(d);
    CHECK(r(0, 0) == doctest::Approx(0.5));
    CHECK(r(1, 1) == doctest::Approx(1.0 / 3.0));
    CHECK(std::abs(r(0, 1)) < 1e-15);
}

TEST_CASE("inv_sqrt_sym is a symmetric inverse square root") {
    Rng rng(22);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix s = random_spd(3, rng);
        const Matrix r = inv_sqrt_sym(s);
        CHECK((r - r.transpose()).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((r * s * r - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("inv_sqrt_sym names the offending mode on singular input") {
    Matrix s = Matrix::Zero(2, 2);
    s(0, 0) = 1.0;
    try {
        inv_sqrt_sym(s, 2);
        FAIL("expected SingularityError");
    } catch (const SingularityError& e) {
        CHECK(e.mode == 2);
        CHECK(std::string(e.what()).find("mode 2") != std::string::npos);
    }
}

TEST_CASE("joint_diagonalize on already-diagonal matrices returns a signed permutation") {
    std::vector<Matrix> mats;
    Matrix d1 = Matrix::Zero(3, 3), d2 = Matrix::Zero(3, 3);
    d1.diagonal() << 3.0, -1.0, 0.5;
    d2.diagonal() << -2.0, 4.0, 1.5;
    mats = {d1, d2};
    const JointDiagResult res = joint_diagonalize(mats);
    CHECK(res.converged);
    CHECK(res.final_off < 1e-12);
    CHECK(is_signed_permutation(res.rotation, 1e-10));
}

TEST_CASE("joint_diagonalize recovers a shared diagonalizer exactly") {
    Rng rng(23);
    for (int trial = 0; trial < 5; ++trial) {
        const int p = 4;
        const Matrix v = haar_orthogonal(p, rng);
        std::vector<Matrix> mats;
        for (int k = 0; k < 3; ++k) {
            Vector d(p);
            for (int i = 0; i < p; ++i) d(i) = rng.normal() * (1.0 + i);
            mats.push_back(v * d.asDiagonal() * v.transpose());
        }
        const JointDiagResult res = joint_diagonalize(mats);
        CHECK(res.converged);
        CHECK(off_diag_mass(mats, res.rotation) < 1e-9);
        CHECK((res.rotation.transpose() * res.rotation - Matrix::Identity(p, p)).norm() < 1e-9);
    }
}

TEST_CASE("single matrix: rotation matches its eigenvector basis") {
    Rng rng(24);
    const Matrix s = random_symmetric(3, rng);
    const std::vector<Matrix> mats{s};
    const JointDiagResult res = joint_diagonalize(mats);
    // W s W^T diagonal means |W V| is a permutation for the eigenbasis V
    const SymEigen es = sym_eigen(s);
    CHECK(is_signed_permutation(res.rotation * es.vectors, 1e-7));

    // p=2 closed form cross-check
    const Matrix s2 = random_symmetric(2, rng);
    const JointDiagResult r2 = joint_diagonalize(std::vector<Matrix>{s2});
    const Matrix d2 = r2.rotation * s2 * r2.rotation.transpose();
    CHECK(std::abs(d2(0, 1)) < 1e-10);
}

TEST_CASE("joint_diagonalize argument errors and degenerate size") {
    CHECK_THROWS_AS(joint_diagonalize({}), ArgumentError);
    const std::vector<Matrix> one{Matrix::Identity(1, 1)};
    const JointDiagResult res = joint_diagonalize(one);
    CHECK(res.converged);
    CHECK(res.rotation(0, 0) == 1.0);
    std::vector<Matrix> ragged{Matrix::Identity(2, 2), Matrix::Identity(3, 3)};
    CHECK_THROWS_AS(joint_diagonalize(ragged), ShapeError);
}

TEST_CASE("max_sweeps exhaustion is reported, orthogonality kept, objective monotone") {
    Rng rng(25);
    std::vector<Matrix> mats;
    for (int k = 0; k < 4; ++k) mats.push_back(random_symmetric(5, rng));
    JointDiagOptions opt;
    opt.max_sweeps = 1;
    const JointDiagResult stunted = joint_diagonalize(mats, opt);
    CHECK_FALSE(stunted.converged);
    CHECK(stunted.sweeps == 1);
    CHECK((stunted.rotation.transpose() * stunted.rotation - Matrix::Identity(5, 5)).norm() < 1e-9);

    const JointDiagResult full = joint_diagonalize(mats);
    CHECK(full.converged);
    for (std::size_t s = 1; s < full.off_history.size(); ++s)
        CHECK(full.off_history[s] <= full.off_history[s - 1] + 1e-9);
    CHECK(full.off_history.front() <= off_diag_mass(mats, Matrix::Identity(5, 5)) + 1e-9);
}

TEST_CASE("joint_diagonalize is deterministic") {
    Rng rng(26);
    std::vector<Matrix> mats;
    for (int k = 0; k < 3; ++k) mats.push_back(random_symmetric(4, rng));
    const JointDiagResult a = joint_diagonalize(mats);
    const JointDiagResult b = joint_diagonalize(mats);
    CHECK((a.rotation - b.rotation).cwiseAbs().maxCoeff() == 0.0);
    CHECK(a.sweeps == b.sweeps);
}

TEST_CASE("off_diag_mass basics") {
    Matrix d = Matrix::Zero(2, 2);
    d.diagonal() << 1.0, 2.0;
    const std::vector<Matrix> mats{d};
    CHECK(off_diag_mass(mats, Matrix::Identity(2, 2)) == 0.0);

    Rng rng(27);
    std::vector<Matrix> rnd;
    for (int k = 0; k < 3; ++k) rnd.push_back(random_symmetric(3, rng));
    CHECK(off_diag_mass(rnd, haar_orthogonal(3, rng)) >= 0.0);
    CHECK_THROWS_AS(off_diag_mass(rnd, Matrix::Identity(2, 2)), ShapeError);
}

TEST_SUITE_END();
