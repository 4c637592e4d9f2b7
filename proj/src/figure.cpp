#include "linlasso/figure.hpp"

#include "linlasso/error.hpp"
#include "linlasso/ycontent.hpp"

#include <array>
#include <cstdio>
#include <fstream>

namespace linlasso {

namespace {

constexpr double kLeft = 60.0;
constexpr double kRight = 560.0;  // legend sits to the right of the plot
constexpr double kTop = 30.0;
constexpr double kBottom = 360.0;
constexpr double kZMin = -4.0;
constexpr double kZMax = 4.0;
constexpr int kSamples = 161;

constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                                 "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

double x_of(double z) { return kLeft + (z - kZMin) / (kZMax - kZMin) * (kRight - kLeft); }

double y_of(double density) {
    const double top = normal_pdf(0.0) * 1.1;
    return kBottom - density / top * (kBottom - kTop);
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

void curve(std::ostream& out, double sigma, const char* colour, const char* dash) {
    out << "  <polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"2\"";
    if (dash) out << " stroke-dasharray=\"" << dash << "\"";
    out << " points=\"";
    for (int k = 0; k < kSamples; ++k) {
        const double z = kZMin + (kZMax - kZMin) * k / (kSamples - 1);
        if (k) out << ' ';
        out << num(x_of(z)) << ',' << num(y_of(sigma * normal_pdf(z)));
    }
    out << "\"/>\n";
}

}  // namespace

double figure_peak_y(double sigma) { return y_of(sigma * normal_pdf(0.0)); }

void emit_density_figure(const std::vector<LabeledFraction>& fractions, std::ostream& out) {
    for (const auto& f : fractions) {
        if (!(f.sigma >= 0.0 && f.sigma <= 1.0)) {
            throw UsageError("fraction for '" + f.label + "' is outside [0, 1]");
        }
    }
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kFigureWidth << "\" height=\""
        << kFigureHeight << "\" viewBox=\"0 0 " << kFigureWidth << ' ' << kFigureHeight << "\">\n"
        << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "  <line x1=\"" << kLeft << "\" y1=\"" << kBottom << "\" x2=\"" << kRight << "\" y2=\"" << kBottom
        << "\" stroke=\"black\"/>\n"
        << "  <line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << kBottom
        << "\" stroke=\"black\"/>\n";
    for (int z = -4; z <= 4; z += 2) {
        out << "  <text x=\"" << num(x_of(z)) << "\" y=\"" << kBottom + 18
            << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" << z << "</text>\n";
    }
    out << "  <text x=\"" << num((kLeft + kRight) / 2) << "\" y=\"" << kBottom + 34
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">y</text>\n";

    curve(out, 1.0, "black", "6,4");
    out << "  <text x=\"580\" y=\"50\" font-family=\"sans-serif\" font-size=\"13\" fill=\"black\">"
        << "y (reference): 1.000</text>\n";
    for (std::size_t k = 0; k < fractions.size(); ++k) {
        const auto& f = fractions[k];
        const char* colour = kPalette[k % kPalette.size()];
        curve(out, f.sigma, colour, nullptr);
        char legend[96];
        std::snprintf(legend, sizeof legend, ": sigma=%.3f, sigma^2=%.3f", f.sigma, f.sigma * f.sigma);
        out << "  <text x=\"580\" y=\"" << 72 + 22 * static_cast<int>(k)
            << "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"" << colour << "\">" << escape(f.label)
            << legend << "</text>\n";
    }
    out << "</svg>\n";
}

void emit_density_figure(const std::vector<LabeledFraction>& fractions, const std::filesystem::path& out) {
    std::ofstream file(out);
    if (!file) throw DataError("cannot write '" + out.string() + "'");
    emit_density_figure(fractions, file);
}

}  // namespace linlasso
