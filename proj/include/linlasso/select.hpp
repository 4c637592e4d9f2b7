#pragma once

#include "linlasso/standardize.hpp"
#include "linlasso/ycontent.hpp"

#include <json.hpp>

#include <optional>
#include <vector>

namespace linlasso {

struct Elimination {
    std::size_t index = 0;     // 0-based original subscript
    double sigma2_drop = 0.0;  // sigma^2(before) - sigma^2(after), >= 0
};

struct Removal {
    std::size_t index = 0;
    double sigma2_drop = 0.0;
    bool batch = false;  // removed by the small-c threshold rather than greedily
};

struct PathStep {
    Selection selection;
    double sigma = 0.0;
    Eigen::VectorXd beta;  // C_s^+ c_s against the sign-flipped predictors
};

/// Nested models J_r > J_{r-1} > ... > J_1. `steps` is ordered by descending s.
struct SelectionPath {
    std::size_t m = 0;
    std::optional<double> gamma;
    std::vector<PathStep> steps;
    std::vector<Removal> removals;  // r entries; the last removal empties the model

    const PathStep& at_size(std::size_t s) const;
};

/// Predictors in batch-removal order: ascending c, ties larger index first.
std::vector<std::size_t> batch_order(const CorrelationSummary& corr);

/// Drops the m predictors with smallest c.
Selection batch_reduce(const CorrelationSummary& corr, std::size_t m);
/// Drops every predictor with c_i <= gamma.
Selection batch_reduce_gamma(const CorrelationSummary& corr, double gamma);
std::size_t batch_count(const CorrelationSummary& corr, double gamma);

/// Removes the member whose deletion least decreases sigma^2 (ties: smallest index).
Elimination eliminate_one(const Selection& sel, const CorrelationSummary& corr);

SelectionPath elimination_path(const CorrelationSummary& corr, std::size_t m);
SelectionPath elimination_path_gamma(const CorrelationSummary& corr, double gamma);

struct OracleResult {
    Selection selection;
    double sigma = 0.0;
};

inline constexpr std::size_t kBestSubsetMaxR = 20;

/// Exhaustive maximization of sigma over subsets of size s. Exponential; r <= 20.
OracleResult best_subset_oracle(const CorrelationSummary& corr, std::size_t s);

/// max |phi(z) exp(gamma z) / exp(gamma^2 / 2) - phi(z - gamma)| over the grid.
double tilt_shift_check(double gamma, const std::vector<double>& grid);
std::vector<double> uniform_grid(double lo, double hi, double step);

void to_json(nlohmann::json& j, const SelectionPath& path);
void from_json(const nlohmann::json& j, SelectionPath& path);

}  // namespace linlasso
