#pragma once

#include "linlasso/crossval.hpp"
#include "linlasso/figure.hpp"
#include "linlasso/lasso.hpp"
#include "linlasso/select.hpp"
#include "linlasso/standardize.hpp"
#include "linlasso/ycontent.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace linlasso {

/// Left-aligned columns separated by two spaces, trailing blanks trimmed.
std::string render_table(const std::vector<std::vector<std::string>>& rows);
std::string fixed(double v, int precision);

/// Least-squares refits along a path, laid out one column pair per model.
struct FitTable {
    std::vector<std::string> names;  // predictor labels
    Eigen::VectorXi flips;
    std::vector<LsFit> fits;
};

struct LassoReport {
    std::vector<LassoFit> fits;
    std::vector<double> pct_y_content;  // sigma of each support on the full data, in %
};

struct FigureReport {
    std::vector<LabeledFraction> fractions;
    std::string svg_path;
};

std::string render_text(const CorrelationSummary& summary);
std::string render_text(const SelectionPath& path);
std::string render_text(const FitTable& table);
std::string render_text(const LassoReport& report);
std::string render_text(const CvReport& report);
std::string render_text(const FigureReport& report);

void to_json(nlohmann::json& j, const FitTable& table);
void from_json(const nlohmann::json& j, FitTable& table);
void to_json(nlohmann::json& j, const LassoReport& report);
void from_json(const nlohmann::json& j, LassoReport& report);
void to_json(nlohmann::json& j, const FigureReport& report);
void from_json(const nlohmann::json& j, FigureReport& report);

/// {"command": name, "report": ...}
template <typename Report>
nlohmann::json make_document(const std::string& command, const Report& report) {
    return nlohmann::json{{"command", command}, {"report", report}};
}

/// Text rendering of a document produced by make_document.
std::string render_document(const nlohmann::json& document);

}  // namespace linlasso
