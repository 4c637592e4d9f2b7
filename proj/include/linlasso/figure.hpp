#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace linlasso {

struct LabeledFraction {
    std::string label;
    double sigma = 0.0;  // height fraction of the standard normal, in [0, 1]
};

inline constexpr int kFigureWidth = 800;
inline constexpr int kFigureHeight = 400;

/// Standalone SVG with one scaled standard-normal curve per entry plus the
/// unscaled reference curve. Throws UsageError for sigma outside [0, 1].
void emit_density_figure(const std::vector<LabeledFraction>& fractions, std::ostream& out);
void emit_density_figure(const std::vector<LabeledFraction>& fractions, const std::filesystem::path& out);

/// Peak height in SVG user units of a curve scaled by sigma (y grows downward).
double figure_peak_y(double sigma);

}  // namespace linlasso
