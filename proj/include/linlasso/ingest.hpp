#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace linlasso {

/// A column of a raw table: numeric if every cell parsed as a real, else nominal.
struct RawColumn {
    std::string name;
    std::variant<std::vector<double>, std::vector<std::string>> cells;

    bool is_numeric() const { return std::holds_alternative<std::vector<double>>(cells); }
    const std::vector<double>& numeric() const { return std::get<std::vector<double>>(cells); }
    const std::vector<std::string>& nominal() const {
        return std::get<std::vector<std::string>>(cells);
    }
};

struct RawDataset {
    std::vector<RawColumn> columns;
    std::size_t n_rows = 0;
    std::size_t response = 0;  // index into columns
};

/// Selects the response column either by header name or by 1-based position.
struct ResponseSpec {
    std::variant<std::string, std::size_t> key = std::size_t{1};

    static ResponseSpec parse(const std::string& text);
};

struct LoadOptions {
    char delimiter = ',';
};

/// Source of a binary indicator column produced from a nominal column.
struct LevelSource {
    std::string column;
    std::string level;
};

/// Response in `y`, predictors in the columns of `X`. `names[0]` labels the response.
struct NumericDataset {
    Eigen::VectorXd y;
    Eigen::MatrixXd X;
    std::vector<std::string> names;
    std::map<std::string, LevelSource> provenance;

    std::size_t n() const { return static_cast<std::size_t>(y.size()); }
    std::size_t r() const { return static_cast<std::size_t>(X.cols()); }

    /// Rows `rows` of this dataset, in the given order.
    NumericDataset subset_rows(const std::vector<std::size_t>& rows) const;
    /// Removes the named predictors; throws UsageError for unknown names.
    NumericDataset drop_predictors(const std::vector<std::string>& drop) const;
};

RawDataset parse_table(std::istream& in, const ResponseSpec& response,
                       const LoadOptions& options = {});
RawDataset load_table(const std::filesystem::path& path, const ResponseSpec& response,
                      const LoadOptions& options = {});

/// Expands nominal columns into L-1 indicators (first level in lexicographic
/// order is the dropped reference) and validates the numeric result.
NumericDataset binarize_nominals(const RawDataset& raw);

}  // namespace linlasso
