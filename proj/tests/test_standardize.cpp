#include "linlasso/error.hpp"
#include "linlasso/standardize.hpp"
#include "linlasso/symmatrix.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace linlasso;

namespace {

NumericDataset make(const Eigen::VectorXd& y, const Eigen::MatrixXd& X) {
    NumericDataset d;
    d.y = y;
    d.X = X;
    d.names.push_back("y");
    for (Eigen::Index j = 0; j < X.cols(); ++j) d.names.push_back("x" + std::to_string(j + 1));
    return d;
}

NumericDataset load(const char* file) {
    return binarize_nominals(load_table(std::string(LINLASSO_DATA_DIR) + "/" + file, ResponseSpec{}));
}

}  // namespace

TEST_CASE("standardize_columns uses denominator n") {
    const auto d = make(Eigen::Vector3d(1, 2, 3), Eigen::Vector3d(3, 1, 2));
    const auto s = standardize_columns(d);
    const double a = std::sqrt(1.5);
    CHECK(s.y(0) == doctest::Approx(-a).epsilon(1e-14));
    CHECK(std::abs(s.y(1)) < 1e-15);
    CHECK(s.y(2) == doctest::Approx(a).epsilon(1e-14));
    CHECK(s.y.squaredNorm() / 3.0 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(s.transform.y_location == 2.0);
}

TEST_CASE("standardize_columns is idempotent and records the transform") {
    std::mt19937_64 rng(3);
    const auto d = oracle::random_dataset(rng, 40, 4);
    const auto once = standardize_columns(d);
    const auto twice = standardize_columns(make(once.y, once.X));
    CHECK((twice.X - once.X).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((twice.y - once.y).cwiseAbs().maxCoeff() < 1e-12);
    for (Eigen::Index j = 0; j < once.X.cols(); ++j) {
        CHECK(std::abs(once.X.col(j).mean()) < 1e-12);
        CHECK(std::abs(once.X.col(j).squaredNorm() - 40.0) < 1e-10 * 40.0);
    }
    // Applying the recorded transform to the training rows reproduces them.
    CHECK((once.transform.apply_x(d.X) - once.X).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("constant columns are rejected unless explicitly allowed") {
    Eigen::MatrixXd X(3, 2);
    X << 1, 5, 2, 5, 3, 5;
    const auto d = make(Eigen::Vector3d(1, 0, 2), X);
    CHECK_THROWS_AS(standardize_columns(d), DataError);
    const auto s = standardize_columns(d, {Centering::kMean, true});
    CHECK_FALSE(s.transform.active(1));
    CHECK(s.X.col(1).isZero());
    const auto corr = correlation_summary(s);
    CHECK(corr.c(1) == 0.0);
    CHECK(corr.C(1, 1) == 1.0);
    CHECK(corr.C(0, 1) == 0.0);
}

TEST_CASE("sign_standardize flips negatively correlated predictors") {
    Eigen::MatrixXd X(4, 3);
    X << 1, -1, 1,   //
        2, -2, -1,   //
        3, -3, -1,   //
        4, -4, 1;
    const auto d = make(Eigen::Vector4d(1, 2, 3, 4), X);
    auto [s, flips] = sign_standardize(standardize_columns(d));
    CHECK(flips(0) == 1);
    CHECK(flips(1) == -1);
    CHECK(flips(2) == 1);  // zero correlation keeps +1
    const auto corr = correlation_summary(s);
    CHECK(corr.c.minCoeff() >= 0.0);
    CHECK(corr.flips == flips);
}

TEST_CASE("all-positive correlations leave data unchanged") {
    Eigen::MatrixXd X(4, 2);
    X << 1, 2, 2, 1, 3, 4, 4, 4;
    const auto std_data = standardize_columns(make(Eigen::Vector4d(1, 2, 3, 4), X));
    const auto [flipped, flips] = sign_standardize(std_data);
    CHECK(flips == Eigen::VectorXi::Ones(2));
    CHECK(flipped.X == std_data.X);
}

TEST_CASE("simple array correlations, uncentered") {
    const auto [s, corr] = prepare(load("simple.csv"), {Centering::kNone});
    CHECK(corr.c(0) == doctest::Approx(0.9).epsilon(1e-6));
    CHECK(corr.c(1) == doctest::Approx(0.6).epsilon(1e-6));
    CHECK(std::abs(corr.C(0, 1) - 0.714356) < 1e-6);
    CHECK(corr.n == 3);
}

TEST_CASE("orthonormal predictors uncorrelated with y") {
    // Centered, mutually orthogonal columns.
    Eigen::MatrixXd X(4, 2);
    X << 1, 1, -1, 1, 1, -1, -1, -1;
    const Eigen::Vector4d y(1, -1, -1, 1);
    const auto corr = prepare(make(y, X)).second;
    CHECK(corr.c.cwiseAbs().maxCoeff() < 1e-15);
    CHECK((corr.C - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("crime fixture correlations and flips") {
    const auto corr = prepare(load("crime.csv")).second;
    const double expected[] = {0.533, 0.135, 0.323, 0.175, 0.026};
    for (int j = 0; j < 5; ++j) CHECK(std::abs(corr.c(j) - expected[j]) <= 5e-4);
    CHECK(corr.flips == (Eigen::VectorXi(5) << 1, -1, 1, -1, -1).finished());
}

TEST_CASE("properties over random datasets") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t r = 1 + rng() % 6;
        const std::size_t n = 3 + rng() % 30;
        const auto d = oracle::random_dataset(rng, n, r);
        const auto unflipped = correlation_summary(standardize_columns(d));
        const auto corr = prepare(d).second;
        CHECK(corr.c.minCoeff() >= 0.0);
        CHECK((corr.c - unflipped.c.cwiseAbs()).cwiseAbs().maxCoeff() < 1e-14);
        const Eigen::MatrixXd D = corr.flips.cast<double>().asDiagonal();
        CHECK((corr.C - D * unflipped.C * D).cwiseAbs().maxCoeff() < 1e-14);
        CHECK((corr.C - corr.C.transpose()).cwiseAbs().maxCoeff() == 0.0);
        CHECK(corr.C.diagonal().isOnes());
        // The full matrix must factor as PSD.
        CHECK_NOTHROW(SymFactorization::factor(corr.full_matrix(), 1e-10));
    }
}

TEST_CASE("correlation summary JSON round trip") {
    const auto corr = prepare(load("crime.csv")).second;
    const nlohmann::json j = corr;
    const auto back = j.get<CorrelationSummary>();
    CHECK(back.c == corr.c);
    CHECK(back.C == corr.C);
    CHECK(back.flips == corr.flips);
    CHECK(back.n == 50);
    CHECK(j.at("C").size() == 25);
}
