#pragma once

#include "linlasso/ingest.hpp"
#include "linlasso/standardize.hpp"
#include "linlasso/ycontent.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

namespace linlasso {

inline constexpr std::uint64_t kDefaultSeed = 20240917;

/// Independent, reproducible random stream for one repeat of a CV run.
class RepeatStream {
public:
    RepeatStream(std::uint64_t master_seed, std::uint64_t repeat);

    /// Uniform integer in [0, bound), bound > 0, by rejection (no modulo bias).
    std::uint64_t below(std::uint64_t bound);

private:
    std::mt19937_64 engine_;
};

using Partition = std::vector<std::vector<std::size_t>>;

/// Random partition of 0..n-1 into k folds whose sizes differ by at most one.
Partition make_folds(std::size_t n, std::size_t k, RepeatStream& rng);

/// Linear Lasso path; `gamma` replaces `m` with a per-fold c_i <= gamma threshold.
struct LinearLassoMethod {
    std::size_t m = 0;
    std::optional<double> gamma;
};

/// Standard Lasso over a descending grid of penalties.
struct LassoMethod {
    std::vector<double> gammas;
};

/// Predicts 0 in standardized units; a reference point for the MSE scale.
struct NullMethod {};

using CvMethod = std::variant<LinearLassoMethod, LassoMethod, NullMethod>;

struct CvPlan {
    std::size_t k = 10;
    std::size_t repeats = 50;
    std::uint64_t seed = kDefaultSeed;
    CvMethod method = LinearLassoMethod{};
    std::size_t threads = 1;
    Centering centering = Centering::kMean;
    bool keep_fold_records = false;
};

struct CvModel {
    std::string label;
    std::size_t s = 0;
    std::optional<Selection> selection;  // full-data model at this size / penalty
    std::optional<double> gamma;
    std::optional<double> pct_y_content;  // of `selection` on the full data
    double mean_mse = 0.0;
    double sd_mse = 0.0;  // sample standard deviation over repeats
    std::vector<double> repeat_mse;
};

struct FoldRecord {
    std::size_t repeat = 0;
    std::size_t fold = 0;
    std::vector<std::size_t> train_rows;
    std::vector<std::size_t> test_rows;
    ColumnTransform transform;
};

struct CvReport {
    std::string method;
    std::size_t k = 0;
    std::size_t repeats = 0;
    std::uint64_t seed = 0;
    std::vector<CvModel> models;
    std::size_t best = 0;
    std::vector<std::string> notes;  // flip changes, constant training columns
    std::vector<FoldRecord> folds;   // only when requested
};

/// Repeated k-fold CV. Standardization and sign flips are fitted on the training
/// rows of each fold and applied to the held-out rows. The result depends only
/// on (data, plan), not on `threads`.
CvReport cv_evaluate(const NumericDataset& data, const CvPlan& plan);

void to_json(nlohmann::json& j, const CvReport& report);
void from_json(const nlohmann::json& j, CvReport& report);

}  // namespace linlasso
