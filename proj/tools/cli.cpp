#include "cli.hpp"

#include "linlasso/crossval.hpp"
#include "linlasso/error.hpp"
#include "linlasso/figure.hpp"
#include "linlasso/ingest.hpp"
#include "linlasso/lasso.hpp"
#include "linlasso/report.hpp"
#include "linlasso/select.hpp"
#include "linlasso/standardize.hpp"
#include "linlasso/ycontent.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

namespace linlasso::cli {

namespace {

// Grid used when --gamma-grid is not given.
const std::vector<double> kDefaultGammaGrid = {0.30, 0.25, 0.22, 0.18, 0.14, 0.10, 0.06, 0.03, 0.00};

struct RunConfig {
    std::string command;
    std::string input;
    std::string response = "1";
    std::optional<std::size_t> m;
    std::optional<double> gamma;
    std::string gamma_grid;
    std::size_t folds = 10;
    std::size_t repeats = 50;
    std::uint64_t seed = kDefaultSeed;
    std::string format = "text";
    std::string out;
    std::string subsets;
    std::string method = "linear";
    std::size_t threads = 1;
    bool no_center = false;
    std::string delimiter = ",";
};

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> grid;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.find_first_not_of(' ') == std::string::npos) continue;
        std::size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        while (pos < item.size() && item[pos] == ' ') ++pos;
        if (pos != item.size() || !(v >= 0.0)) throw UsageError("bad gamma value '" + item + "'");
        grid.push_back(v);
    }
    if (grid.empty()) throw UsageError("empty gamma grid");
    std::sort(grid.begin(), grid.end(), std::greater<>());
    return grid;
}

std::vector<Selection> parse_subsets(std::size_t r, const std::string& text) {
    std::vector<Selection> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        auto sel = Selection::parse(r, item);
        if (sel.empty()) throw UsageError("empty subset in --subsets");
        out.push_back(std::move(sel));
    }
    return out;
}

NumericDataset load(const RunConfig& cfg) {
    if (cfg.input.empty()) throw UsageError("--input is required");
    if (cfg.delimiter.size() != 1) throw UsageError("--delimiter must be a single character");
    const auto raw = load_table(cfg.input, ResponseSpec::parse(cfg.response), {cfg.delimiter[0]});
    return binarize_nominals(raw);
}

StandardizeOptions standardize_options(const RunConfig& cfg) {
    StandardizeOptions opts;
    opts.centering = cfg.no_center ? Centering::kNone : Centering::kMean;
    return opts;
}

SelectionPath path_for(const RunConfig& cfg, const CorrelationSummary& corr) {
    if (cfg.m) {
        if (*cfg.m > corr.r()) throw UsageError("--m exceeds the number of predictors");
        return elimination_path(corr, *cfg.m);
    }
    if (cfg.gamma) return elimination_path_gamma(corr, *cfg.gamma);
    return elimination_path(corr, 0);
}

template <typename Report>
void emit(const RunConfig& cfg, const Report& report, std::ostream& out) {
    std::string text;
    if (cfg.format == "json") {
        text = make_document(cfg.command, report).dump(2) + "\n";
    } else {
        text = render_text(report);
    }
    if (!cfg.out.empty() && cfg.command != "plot") {
        std::ofstream file(cfg.out);
        if (!file) throw DataError("cannot write '" + cfg.out + "'");
        file << text;
    } else {
        out << text;
    }
}

void cmd_correlate(const RunConfig& cfg, std::ostream& out) {
    const auto [data, corr] = prepare(load(cfg), standardize_options(cfg));
    emit(cfg, corr, out);
}

void cmd_select(const RunConfig& cfg, std::ostream& out) {
    const auto [data, corr] = prepare(load(cfg), standardize_options(cfg));
    emit(cfg, path_for(cfg, corr), out);
}

void cmd_fit(const RunConfig& cfg, std::ostream& out) {
    const auto [data, corr] = prepare(load(cfg), standardize_options(cfg));
    FitTable table;
    table.names = corr.names;
    table.flips = corr.flips;
    if (!cfg.subsets.empty()) {
        for (const auto& sel : parse_subsets(corr.r(), cfg.subsets)) table.fits.push_back(ls_fit(sel, data, corr));
    } else {
        for (const auto& step : path_for(cfg, corr).steps) {
            if (step.selection.size() < data.n()) table.fits.push_back(ls_fit(step.selection, data, corr));
        }
    }
    emit(cfg, table, out);
}

void cmd_lasso(const RunConfig& cfg, std::ostream& out) {
    const auto [data, corr] = prepare(load(cfg), standardize_options(cfg));
    std::vector<double> grid = kDefaultGammaGrid;
    if (!cfg.gamma_grid.empty()) {
        grid = parse_grid(cfg.gamma_grid);
    } else if (cfg.gamma) {
        grid = {*cfg.gamma};
    }
    LassoReport report;
    report.fits = lasso_path(data, grid);
    for (const auto& fit : report.fits) {
        report.pct_y_content.push_back(100.0 * sigma_delta(Selection::from_indices(corr.r(), fit.support), corr));
    }
    emit(cfg, report, out);
}

void cmd_cv(const RunConfig& cfg, std::ostream& out) {
    const auto data = load(cfg);
    CvPlan plan;
    plan.k = cfg.folds;
    plan.repeats = cfg.repeats;
    plan.seed = cfg.seed;
    plan.threads = cfg.threads;
    plan.centering = standardize_options(cfg).centering;
    if (cfg.method == "lasso") {
        LassoMethod method;
        method.gammas = kDefaultGammaGrid;
        if (!cfg.gamma_grid.empty()) {
            method.gammas = parse_grid(cfg.gamma_grid);
        } else if (cfg.gamma) {
            method.gammas = {*cfg.gamma};
        }
        plan.method = method;
    } else if (cfg.method == "linear") {
        LinearLassoMethod method;
        if (cfg.m) {
            if (*cfg.m > data.r()) throw UsageError("--m exceeds the number of predictors");
            method.m = *cfg.m;
        } else if (cfg.gamma) {
            method.gamma = cfg.gamma;
        }
        plan.method = method;
    } else if (cfg.method == "null") {
        plan.method = NullMethod{};
    } else {
        throw UsageError("unknown --method '" + cfg.method + "'");
    }
    emit(cfg, cv_evaluate(data, plan), out);
}

void cmd_plot(const RunConfig& cfg, std::ostream& out) {
    const auto [data, corr] = prepare(load(cfg), standardize_options(cfg));
    FigureReport report;
    std::vector<Selection> subsets;
    if (cfg.subsets.empty()) {
        for (std::size_t i = 0; i < corr.r(); ++i) subsets.push_back(Selection::from_indices(corr.r(), {i}));
    } else {
        subsets = parse_subsets(corr.r(), cfg.subsets);
    }
    for (const auto& sel : subsets) report.fractions.push_back({sel.to_string(), sigma_delta(sel, corr)});
    report.svg_path = cfg.out.empty() ? "density.svg" : cfg.out;
    emit_density_figure(report.fractions, std::filesystem::path(report.svg_path));
    emit(cfg, report, out);
}

void cmd_render(const RunConfig& cfg, std::ostream& out) {
    if (cfg.input.empty()) throw UsageError("--input is required");
    std::ifstream in(cfg.input);
    if (!in) throw DataError("cannot open '" + cfg.input + "'");
    nlohmann::json doc;
    try {
        in >> doc;
        out << render_document(doc);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("bad report JSON: ") + e.what());
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Linear Lasso variable selection", "linlasso"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* sub, bool data_input) {
        sub->add_option("--input", cfg.input, data_input ? "CSV file with a header row" : "report JSON file");
        sub->add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--out", cfg.out, "output path");
        if (!data_input) return;
        sub->add_option("--response", cfg.response, "response column: name or 1-based index");
        sub->add_option("--delimiter", cfg.delimiter, "field delimiter");
        sub->add_flag("--no-center", cfg.no_center, "scale columns to length sqrt(n) without centering");
    };
    auto add_selection = [&](CLI::App* sub) {
        sub->add_option("--m", cfg.m, "number of small-c predictors removed in batch");
        sub->add_option("--gamma", cfg.gamma, "penalty / threshold");
    };

    auto* correlate = app.add_subcommand("correlate", "print c, C and sign flips");
    add_common(correlate, true);
    auto* select = app.add_subcommand("select", "Linear Lasso elimination path");
    add_common(select, true);
    add_selection(select);
    auto* fit = app.add_subcommand("fit", "least-squares refits with standard errors");
    add_common(fit, true);
    add_selection(fit);
    fit->add_option("--subsets", cfg.subsets, "subsets such as \"1;1,3\" (1-based)");
    auto* lasso = app.add_subcommand("lasso", "coordinate-descent Lasso path");
    add_common(lasso, true);
    lasso->add_option("--gamma", cfg.gamma, "single penalty");
    lasso->add_option("--gamma-grid", cfg.gamma_grid, "comma-separated penalties");
    auto* cv = app.add_subcommand("cv", "repeated k-fold cross-validation");
    add_common(cv, true);
    add_selection(cv);
    cv->add_option("--method", cfg.method, "linear, lasso or null");
    cv->add_option("--gamma-grid", cfg.gamma_grid, "comma-separated penalties (lasso)");
    cv->add_option("--folds", cfg.folds, "number of folds k");
    cv->add_option("--repeats", cfg.repeats, "number of repeated partitions");
    cv->add_option("--seed", cfg.seed, "master seed");
    cv->add_option("--threads", cfg.threads, "worker threads");
    auto* plot = app.add_subcommand("plot", "SVG of density fractions");
    add_common(plot, true);
    plot->add_option("--subsets", cfg.subsets, "subsets such as \"1;1,2\" (1-based)");
    auto* render = app.add_subcommand("render", "re-render a JSON report as text");
    add_common(render, false);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kExitUsage;
    }

    const std::vector<std::pair<CLI::App*, std::function<void(const RunConfig&, std::ostream&)>>> commands = {
        {correlate, cmd_correlate}, {select, cmd_select}, {fit, cmd_fit}, {lasso, cmd_lasso},
        {cv, cmd_cv},               {plot, cmd_plot},     {render, cmd_render}};
    try {
        for (const auto& [sub, handler] : commands) {
            if (sub->parsed()) {
                cfg.command = sub->get_name();
                handler(cfg, out);
            }
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitDataError;
    }
    return kExitOk;
}

}  // namespace linlasso::cli
