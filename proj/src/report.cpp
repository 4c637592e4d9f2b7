#include "linlasso/report.hpp"

#include "linlasso/error.hpp"

#include <algorithm>
#include <cstdio>

namespace linlasso {

std::string fixed(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", precision, v);
    std::string s(buf);
    // Avoid printing "-0.000".
    if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
    return s;
}

std::string render_table(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width;
    for (const auto& row : rows) {
        if (row.size() > width.size()) width.resize(row.size(), 0);
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    }
    std::string out;
    for (const auto& row : rows) {
        std::string line;
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) line += "  ";
            line += row[c];
            if (c + 1 < row.size()) line.append(width[c] - row[c].size(), ' ');
        }
        line.erase(line.find_last_not_of(' ') + 1);
        out += line;
        out += '\n';
    }
    return out;
}

std::string render_text(const CorrelationSummary& summary) {
    const auto r = summary.r();
    std::string out = "n = " + std::to_string(summary.n) + ", r = " + std::to_string(r) + "\n\n";
    std::vector<std::vector<std::string>> rows{{"j", "predictor", "flip", "c"}};
    for (std::size_t j = 0; j < r; ++j) {
        const auto jj = static_cast<Eigen::Index>(j);
        rows.push_back({std::to_string(j + 1), summary.names.at(j), summary.flips(jj) < 0 ? "-" : "+",
                        fixed(summary.c(jj), 6)});
    }
    out += render_table(rows);
    out += "\nC\n";
    rows.clear();
    for (Eigen::Index a = 0; a < summary.C.rows(); ++a) {
        std::vector<std::string> row;
        for (Eigen::Index b = 0; b < summary.C.cols(); ++b) row.push_back(fixed(summary.C(a, b), 6));
        rows.push_back(std::move(row));
    }
    return out + render_table(rows);
}

namespace {

std::string path_title(std::size_t m, const std::optional<double>& gamma) {
    std::string title = "Linear Lasso path, ";
    if (gamma) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "gamma = %g (m = %zu)", *gamma, m);
        return title + buf;
    }
    return title + "m = " + std::to_string(m);
}

}  // namespace

std::string render_text(const SelectionPath& path) {
    std::vector<std::vector<std::string>> rows{{"s"}, {"J_s"}, {"% y-cont."}};
    for (const auto& step : path.steps) {
        rows[0].push_back(std::to_string(step.selection.size()));
        rows[1].push_back(step.selection.to_string());
        rows[2].push_back(fixed(100.0 * step.sigma, 3));
    }
    std::string out = path_title(path.m, path.gamma) + "\n" + render_table(rows);
    out += "removal order:";
    for (const auto& rm : path.removals) out += " " + std::to_string(rm.index + 1) + (rm.batch ? "b" : "");
    return out + "\n";
}

std::string render_text(const FitTable& table) {
    std::vector<std::vector<std::string>> rows{{""}, {""}};
    for (const auto& fit : table.fits) {
        rows[0].insert(rows[0].end(), {"s=" + std::to_string(fit.s), ""});
        rows[1].insert(rows[1].end(), {"beta", "SE"});
    }
    const std::size_t r = table.names.size();
    for (int pass = 0; pass < 2; ++pass) {
        if (pass == 1) rows.push_back({"original signs"});
        for (std::size_t j = 0; j < r; ++j) {
            const int flip = table.flips(static_cast<Eigen::Index>(j));
            std::string label = "x" + std::to_string(j + 1);
            if (pass == 0) label += "*";
            label += " " + table.names[j];
            std::vector<std::string> row{label};
            for (const auto& fit : table.fits) {
                const auto& idx = fit.selection.indices();
                const auto it = std::find(idx.begin(), idx.end(), j);
                if (it == idx.end()) {
                    row.insert(row.end(), {"--", "--"});
                    continue;
                }
                const auto k = static_cast<Eigen::Index>(it - idx.begin());
                const double b = pass == 0 ? fit.beta_hat(k) : flip * fit.beta_hat(k);
                row.insert(row.end(), {fixed(b, 4), fixed(fit.se(k), 4)});
            }
            rows.push_back(std::move(row));
        }
    }
    std::vector<std::string> sigma_row{"% y-cont."};
    std::vector<std::string> resid_row{"resid var"};
    for (const auto& fit : table.fits) {
        sigma_row.insert(sigma_row.end(), {fixed(100.0 * fit.sigma, 3), ""});
        resid_row.insert(resid_row.end(), {fixed(fit.sigma2_resid, 4), ""});
    }
    rows.push_back(std::move(sigma_row));
    rows.push_back(std::move(resid_row));
    return "Least squares estimates (standardized, sign-flipped predictors)\n" + render_table(rows);
}

std::string render_text(const LassoReport& report) {
    std::vector<std::vector<std::string>> rows{{"gamma"}, {"s"}, {"J_s"}, {"% y-cont."}, {"s(|b|>=0.01)"}};
    for (std::size_t k = 0; k < report.fits.size(); ++k) {
        const auto& fit = report.fits[k];
        std::vector<std::size_t> idx(fit.support);
        const auto sel = Selection::from_indices(static_cast<std::size_t>(fit.beta.size()), idx);
        rows[0].push_back(fixed(fit.gamma, 2));
        rows[1].push_back(std::to_string(fit.support.size()));
        rows[2].push_back(sel.to_string());
        rows[3].push_back(fixed(report.pct_y_content.at(k), 3));
        rows[4].push_back(std::to_string(fit.s_thresholded));
    }
    std::string out = "Lasso path (coordinate descent)\n" + render_table(rows);
    for (const auto& fit : report.fits) {
        if (!fit.converged) out += "warning: gamma = " + fixed(fit.gamma, 4) + " did not converge\n";
    }
    return out;
}

std::string render_text(const CvReport& report) {
    const bool lasso = report.method == "lasso";
    std::vector<std::vector<std::string>> rows;
    if (lasso) rows.push_back({"gamma"});
    rows.push_back({"s"});
    rows.push_back({"J_s"});
    rows.push_back({"% y-cont."});
    rows.push_back({"cv-mse"});
    rows.push_back({"sd"});
    for (std::size_t k = 0; k < report.models.size(); ++k) {
        const auto& m = report.models[k];
        std::size_t row = 0;
        if (lasso) rows[row++].push_back(m.gamma ? fixed(*m.gamma, 2) : "");
        rows[row++].push_back(std::to_string(m.s));
        rows[row++].push_back(m.selection ? m.selection->to_string() : "--");
        rows[row++].push_back(m.pct_y_content ? fixed(*m.pct_y_content, 3) : "--");
        rows[row++].push_back(fixed(m.mean_mse, 4) + (k == report.best ? "*" : ""));
        rows[row++].push_back(fixed(m.sd_mse, 4));
    }
    std::string out = "Cross-validation: " + report.method + ", " + std::to_string(report.repeats) +
                      " x " + std::to_string(report.k) + "-fold, seed " + std::to_string(report.seed) + "\n";
    out += render_table(rows);
    if (!report.notes.empty()) out += std::to_string(report.notes.size()) + " fold note(s); see JSON output\n";
    return out;
}

std::string render_text(const FigureReport& report) {
    std::vector<std::vector<std::string>> rows{{"source", "sigma", "sigma^2"}};
    rows.push_back({"y (reference)", fixed(1.0, 3), fixed(1.0, 3)});
    for (const auto& f : report.fractions) {
        rows.push_back({f.label, fixed(f.sigma, 3), fixed(f.sigma * f.sigma, 3)});
    }
    std::string out = render_table(rows);
    if (!report.svg_path.empty()) out += "svg: " + report.svg_path + "\n";
    return out;
}

void to_json(nlohmann::json& j, const FitTable& table) {
    j = nlohmann::json{{"names", table.names},
                       {"flips", std::vector<int>(table.flips.data(), table.flips.data() + table.flips.size())},
                       {"fits", table.fits}};
}

void from_json(const nlohmann::json& j, FitTable& table) {
    table.names = j.at("names").get<std::vector<std::string>>();
    const auto flips = j.at("flips").get<std::vector<int>>();
    table.flips = Eigen::Map<const Eigen::VectorXi>(flips.data(), static_cast<Eigen::Index>(flips.size()));
    table.fits = j.at("fits").get<std::vector<LsFit>>();
}

void to_json(nlohmann::json& j, const LassoReport& report) {
    nlohmann::json fits = nlohmann::json::array();
    for (std::size_t k = 0; k < report.fits.size(); ++k) {
        nlohmann::json e = report.fits[k];
        e["sigma"] = report.pct_y_content.at(k) / 100.0;
        e["pct_y_content"] = report.pct_y_content[k];
        fits.push_back(std::move(e));
    }
    j = nlohmann::json{{"fits", fits}};
}

void from_json(const nlohmann::json& j, LassoReport& report) {
    report = LassoReport{};
    for (const auto& e : j.at("fits")) {
        report.fits.push_back(e.get<LassoFit>());
        report.pct_y_content.push_back(e.at("pct_y_content").get<double>());
    }
}

void to_json(nlohmann::json& j, const FigureReport& report) {
    nlohmann::json fr = nlohmann::json::array();
    for (const auto& f : report.fractions) {
        fr.push_back({{"label", f.label}, {"sigma", f.sigma}, {"sigma2", f.sigma * f.sigma}});
    }
    j = nlohmann::json{{"fractions", fr}, {"svg", report.svg_path}};
}

void from_json(const nlohmann::json& j, FigureReport& report) {
    report = FigureReport{};
    for (const auto& f : j.at("fractions")) {
        report.fractions.push_back({f.at("label").get<std::string>(), f.at("sigma").get<double>()});
    }
    report.svg_path = j.at("svg").get<std::string>();
}

std::string render_document(const nlohmann::json& document) {
    const auto command = document.at("command").get<std::string>();
    const auto& report = document.at("report");
    if (command == "correlate") return render_text(report.get<CorrelationSummary>());
    if (command == "select") return render_text(report.get<SelectionPath>());
    if (command == "fit") return render_text(report.get<FitTable>());
    if (command == "lasso") return render_text(report.get<LassoReport>());
    if (command == "cv") return render_text(report.get<CvReport>());
    if (command == "plot") return render_text(report.get<FigureReport>());
    throw UsageError("unknown report command '" + command + "'");
}

}  // namespace linlasso
