#pragma once

#include "linlasso/standardize.hpp"

#include <json.hpp>

#include <Eigen/Dense>

#include <vector>

namespace linlasso {

struct LassoOptions {
    double tol = 1e-8;  // max coordinate change per sweep
    std::size_t max_iter = 100000;
    double support_threshold = 0.01;  // for s_thresholded only
    bool track_objective = false;
};

struct LassoFit {
    Eigen::VectorXd beta;
    double gamma = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    std::vector<std::size_t> support;  // 0-based indices with beta_j != 0
    std::size_t s_thresholded = 0;     // count of |beta_j| >= support_threshold
    double objective = 0.0;
    std::vector<double> objective_trace;  // per sweep, when tracked
};

double soft_threshold(double z, double t);

/// sum_i (y_i - X_i b)^2 / 2n + gamma * |b|_1
double lasso_objective(const StandardizedDataset& data, const Eigen::VectorXd& beta, double gamma);

/// Cyclic coordinate descent with no intercept. Starts from `warm_start` when
/// given, else from zero. Not converging within max_iter is reported, not thrown.
LassoFit lasso_fit(const StandardizedDataset& data, double gamma, const LassoOptions& options = {},
                   const Eigen::VectorXd* warm_start = nullptr);

/// Warm-started fits along a descending gamma grid.
std::vector<LassoFit> lasso_path(const StandardizedDataset& data, const std::vector<double>& gammas,
                                 const LassoOptions& options = {});

/// Largest violation of the subgradient optimality conditions.
double kkt_residual(const StandardizedDataset& data, const LassoFit& fit);

void to_json(nlohmann::json& j, const LassoFit& fit);
void from_json(const nlohmann::json& j, LassoFit& fit);

}  // namespace linlasso
