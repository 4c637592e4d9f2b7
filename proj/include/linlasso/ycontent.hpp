#pragma once

#include "linlasso/standardize.hpp"
#include "linlasso/symmatrix.hpp"

#include <json.hpp>

#include <Eigen/Dense>

#include <cstddef>
#include <string>
#include <vector>

namespace linlasso {

/// Indicator over r predictors, stored as ascending 0-based indices.
class Selection {
public:
    Selection() = default;
    explicit Selection(std::size_t r) : r_(r) {}

    static Selection full(std::size_t r);
    /// Throws UsageError on out-of-range indices; duplicates are collapsed.
    static Selection from_indices(std::size_t r, std::vector<std::size_t> indices);
    static Selection from_mask(const std::vector<bool>& mask);
    /// Parses "1,3,4" (1-based). An empty string is the empty selection.
    static Selection parse(std::size_t r, const std::string& text);

    std::size_t r() const { return r_; }
    std::size_t size() const { return indices_.size(); }
    bool empty() const { return indices_.empty(); }
    bool contains(std::size_t i) const;
    const std::vector<std::size_t>& indices() const { return indices_; }
    std::vector<bool> mask() const;

    Selection without(std::size_t i) const;
    Selection with(std::size_t i) const;

    /// 1-based set notation, e.g. "{1,2,5}".
    std::string to_string() const;
    std::vector<std::size_t> one_based() const;

    bool operator==(const Selection&) const = default;

private:
    std::size_t r_ = 0;
    std::vector<std::size_t> indices_;
};

struct PredictiveDistribution {
    Eigen::VectorXd coefficients;  // multipliers of the selected sign-flipped predictors
    double variance = 1.0;
};

struct LsFit {
    Selection selection;
    Eigen::VectorXd beta_hat;
    Eigen::VectorXd se;
    double sigma2_resid = 0.0;
    double sigma = 0.0;
    std::size_t s = 0;
    std::size_t n = 0;
};

/// C_s restricted to the selection and factored.
SymFactorization factor_selection(const Selection& sel, const CorrelationSummary& corr,
                                  double tol = kDefaultPivotTolerance);
Eigen::VectorXd restrict(const Eigen::VectorXd& v, const Selection& sel);

/// c_s' C_s^+ c_s, clipped to [0, 1].
double sigma_squared(const Selection& sel, const CorrelationSummary& corr);
double sigma_delta(const Selection& sel, const CorrelationSummary& corr);

PredictiveDistribution predictive_distribution(const Selection& sel, const CorrelationSummary& corr);

double normal_pdf(double y);
/// sigma * phi(y): the fraction of the response density carried by a selection.
double marginal_fraction(double sigma, double y);
double marginal_fraction(const Selection& sel, const CorrelationSummary& corr, double y);

/// Least-squares refit on the selected standardized predictors with
/// SE_j = sqrt(sigma2_resid * [C_s^+]_jj / n).
LsFit ls_fit(const Selection& sel, const StandardizedDataset& data, const CorrelationSummary& corr);

void to_json(nlohmann::json& j, const Selection& sel);
void to_json(nlohmann::json& j, const LsFit& fit);
void from_json(const nlohmann::json& j, LsFit& fit);

}  // namespace linlasso
