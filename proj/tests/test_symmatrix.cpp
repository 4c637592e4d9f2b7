#include "linlasso/error.hpp"
#include "linlasso/symmatrix.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace linlasso;

namespace {

Eigen::Matrix2d simple_C() {
    Eigen::Matrix2d C;
    C << 1.0, 0.714356, 0.714356, 1.0;
    return C;
}

}  // namespace

TEST_CASE("factor_psd ranks") {
    CHECK(SymFactorization::factor(Eigen::Matrix3d::Identity()).rank() == 3);
    CHECK(SymFactorization::factor(simple_C()).rank() == 2);
    const Eigen::Vector4d v(1, -2, 0.5, 3);
    const auto f = SymFactorization::factor(v * v.transpose());
    CHECK(f.rank() == 1);
    CHECK(f.pivots().front() == 3);  // largest diagonal first
    CHECK((f.reconstruct() - v * v.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(SymFactorization::factor(Eigen::MatrixXd::Zero(2, 2)).rank() == 0);
}

TEST_CASE("factor_psd rejects indefinite and asymmetric input") {
    Eigen::Matrix2d A;
    A << 1, 2, 2, 1;
    CHECK_THROWS_AS(SymFactorization::factor(A), NotPsdError);
    A << 0, 1, 1, 0;
    CHECK_THROWS_AS(SymFactorization::factor(A), NotPsdError);
    A << 1, 0.5, 0.4, 1;
    CHECK_THROWS_AS(SymFactorization::factor(A), NumericError);
}

TEST_CASE("reconstruction error on well-conditioned input") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 50; ++t) {
        const Eigen::MatrixXd M = oracle::random_psd(rng, 6, 6) + Eigen::MatrixXd::Identity(6, 6);
        const auto f = SymFactorization::factor(M);
        CHECK(f.rank() == 6);
        CHECK((f.reconstruct() - M).cwiseAbs().maxCoeff() <= 1e-8);
    }
}

TEST_CASE("solve_min_norm basic cases") {
    const Eigen::Vector3d b(0.3, -1.0, 2.0);
    CHECK(SymFactorization::factor(Eigen::Matrix3d::Identity()).solve_min_norm(b) == b);

    const auto x = SymFactorization::factor(simple_C()).solve_min_norm(Eigen::Vector2d(0.9, 0.6));
    CHECK(std::abs(x(0) - 0.963) < 1e-3);
    CHECK(std::abs(x(1) + 0.088) < 1e-3);
}

TEST_CASE("duplicated predictor splits the coefficient equally") {
    Eigen::Matrix3d C;
    C << 1.0, 0.3, 0.3,  //
        0.3, 1.0, 1.0,   //
        0.3, 1.0, 1.0;
    const Eigen::Vector3d c(0.5, 0.4, 0.4);
    const auto f = SymFactorization::factor(C);
    CHECK(f.rank() == 2);
    const Eigen::VectorXd x = f.solve_min_norm(c);
    const Eigen::VectorXd ref = oracle::gauss_jordan_pinv(C) * c;
    CHECK((x - ref).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(std::abs(x(1) - x(2)) < 1e-12);
    CHECK((C * x - c).norm() < 1e-12);
}

TEST_CASE("inconsistent singular system is reported") {
    Eigen::Matrix2d C = Eigen::Matrix2d::Ones();
    const auto f = SymFactorization::factor(C);
    CHECK_THROWS_AS(f.solve_min_norm(Eigen::Vector2d(1.0, -1.0)), InconsistentSystemError);
    CHECK_THROWS_AS(f.quad_form(Eigen::Vector2d(0.5, 0.2)), InconsistentSystemError);
    CHECK_THROWS_AS(f.solve_min_norm(Eigen::Vector3d::Ones()), UsageError);
}

TEST_CASE("quad_form basic cases") {
    const Eigen::Vector3d c(0.2, 0.5, 0.1);
    CHECK(SymFactorization::factor(Eigen::Matrix3d::Identity()).quad_form(c) ==
          doctest::Approx(c.squaredNorm()).epsilon(1e-15));
    const double q = SymFactorization::factor(simple_C()).quad_form(Eigen::Vector2d(0.9, 0.6));
    CHECK(std::abs(q - 0.902 * 0.902) < 1e-3);
}

TEST_CASE("quad_form and solves agree with the Gauss-Jordan pseudo-inverse") {
    std::mt19937_64 rng(23);
    std::normal_distribution<double> normal;
    for (int t = 0; t < 300; ++t) {
        const Eigen::Index dim = 1 + static_cast<Eigen::Index>(rng() % 7);
        const Eigen::Index rank = 1 + static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(dim));
        const Eigen::MatrixXd M = oracle::random_psd(rng, dim, rank);
        // b in range(M) so the singular system is consistent.
        Eigen::VectorXd w(dim);
        for (auto& v : w) v = normal(rng);
        const Eigen::VectorXd b = M * w;
        const auto f = SymFactorization::factor(M);
        CHECK(f.rank() == rank);
        const Eigen::MatrixXd pinv = oracle::gauss_jordan_pinv(M);
        const double ref = b.dot(pinv * b);
        const double scale = std::max(1.0, std::abs(ref));
        CHECK(std::abs(f.quad_form(b) - ref) <= 1e-10 * scale);
        CHECK(std::abs(f.quad_form(b) - b.dot(f.solve_min_norm(b))) <= 1e-10 * scale);
        const Eigen::VectorXd x = f.solve_min_norm(b);
        CHECK((x - pinv * b).cwiseAbs().maxCoeff() <= 1e-8 * std::max(1.0, x.cwiseAbs().maxCoeff()));
        const Eigen::VectorXd dref = pinv.diagonal();
        CHECK((f.pinv_diagonal() - dref).cwiseAbs().maxCoeff() <= 1e-8 * std::max(1.0, dref.maxCoeff()));
    }
}

TEST_CASE("quad_form is invariant under symmetric permutation") {
    std::mt19937_64 rng(29);
    std::normal_distribution<double> normal;
    for (int t = 0; t < 100; ++t) {
        const Eigen::Index dim = 2 + static_cast<Eigen::Index>(rng() % 6);
        const Eigen::MatrixXd M = oracle::random_psd(rng, dim, dim) + 0.1 * Eigen::MatrixXd::Identity(dim, dim);
        Eigen::VectorXd b(dim);
        for (auto& v : b) v = normal(rng);
        std::vector<int> perm(static_cast<std::size_t>(dim));
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        Eigen::PermutationMatrix<Eigen::Dynamic> P(dim);
        for (Eigen::Index i = 0; i < dim; ++i) P.indices()(i) = perm[static_cast<std::size_t>(i)];
        const Eigen::MatrixXd Mp = P * M * P.transpose();
        const Eigen::VectorXd bp = P * b;
        const double q = SymFactorization::factor(M).quad_form(b);
        CHECK(std::abs(SymFactorization::factor(Mp).quad_form(bp) - q) <= 1e-10 * std::max(1.0, q));
    }
}

TEST_CASE("appending a coordinate never decreases the quadratic form") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 200; ++t) {
        const auto corr = oracle::random_summary(rng, 8);
        const auto r = static_cast<Eigen::Index>(corr.r());
        for (Eigen::Index k = 1; k < r; ++k) {
            const double small = SymFactorization::factor(corr.C.topLeftCorner(k, k)).quad_form(corr.c.head(k));
            const double big =
                SymFactorization::factor(corr.C.topLeftCorner(k + 1, k + 1)).quad_form(corr.c.head(k + 1));
            CHECK(big >= small - 1e-10);
        }
    }
}
