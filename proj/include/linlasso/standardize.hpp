#pragma once

#include "linlasso/ingest.hpp"

#include <json.hpp>

#include <Eigen/Dense>

#include <string>
#include <utility>
#include <vector>

namespace linlasso {

enum class Centering {
    kMean,  // subtract the column mean, then scale to sd 1 (denominator n)
    kNone,  // scale only, so each column has length sqrt(n)
};

/// Location/scale/sign record for applying a fitted standardization to new rows.
struct ColumnTransform {
    Centering centering = Centering::kMean;
    double y_location = 0.0;
    double y_scale = 1.0;
    Eigen::VectorXd x_location;
    Eigen::VectorXd x_scale;  // 0 marks a constant (inactive) column
    Eigen::VectorXi flips;    // +1 / -1

    bool active(Eigen::Index j) const { return x_scale(j) > 0.0; }

    Eigen::VectorXd apply_y(const Eigen::VectorXd& y) const;
    Eigen::MatrixXd apply_x(const Eigen::MatrixXd& X) const;
};

struct StandardizedDataset {
    Eigen::VectorXd y;
    Eigen::MatrixXd X;
    std::vector<std::string> names;
    ColumnTransform transform;

    std::size_t n() const { return static_cast<std::size_t>(y.size()); }
    std::size_t r() const { return static_cast<std::size_t>(X.cols()); }
};

struct StandardizeOptions {
    Centering centering = Centering::kMean;
    /// When set, constant predictors are zeroed and marked inactive instead of rejected.
    bool allow_constant_predictors = false;
};

/// Intrinsic data of the problem: response/predictor correlations after sign flips.
struct CorrelationSummary {
    Eigen::VectorXd c;
    Eigen::MatrixXd C;
    Eigen::VectorXi flips;
    std::size_t n = 0;
    std::vector<std::string> names;  // predictor labels, size r

    std::size_t r() const { return static_cast<std::size_t>(c.size()); }
    /// [[1, c'], [c, C]]
    Eigen::MatrixXd full_matrix() const;
};

StandardizedDataset standardize_columns(const NumericDataset& data,
                                        const StandardizeOptions& options = {});

/// Reverses predictors negatively correlated with y. Zero correlation keeps +1.
std::pair<StandardizedDataset, Eigen::VectorXi> sign_standardize(StandardizedDataset data);

/// Normalized inner products; inactive columns get c_i = 0 and an identity row in C.
CorrelationSummary correlation_summary(const StandardizedDataset& data);

/// standardize_columns -> sign_standardize -> correlation_summary.
std::pair<StandardizedDataset, CorrelationSummary> prepare(const NumericDataset& data,
                                                           const StandardizeOptions& options = {});

void to_json(nlohmann::json& j, const CorrelationSummary& s);
void from_json(const nlohmann::json& j, CorrelationSummary& s);

}  // namespace linlasso
