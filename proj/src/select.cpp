#include "linlasso/select.hpp"

#include "linlasso/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace linlasso {

std::vector<std::size_t> batch_order(const CorrelationSummary& corr) {
    std::vector<std::size_t> order(corr.r());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double ca = corr.c(static_cast<Eigen::Index>(a));
        const double cb = corr.c(static_cast<Eigen::Index>(b));
        if (ca != cb) return ca < cb;
        return a > b;
    });
    return order;
}

Selection batch_reduce(const CorrelationSummary& corr, std::size_t m) {
    if (m > corr.r()) throw UsageError("batch size m exceeds r");
    auto mask = std::vector<bool>(corr.r(), true);
    const auto order = batch_order(corr);
    for (std::size_t k = 0; k < m; ++k) mask[order[k]] = false;
    return Selection::from_mask(mask);
}

std::size_t batch_count(const CorrelationSummary& corr, double gamma) {
    return static_cast<std::size_t>((corr.c.array() <= gamma).count());
}

Selection batch_reduce_gamma(const CorrelationSummary& corr, double gamma) {
    std::vector<bool> mask(corr.r());
    for (std::size_t i = 0; i < corr.r(); ++i) mask[i] = corr.c(static_cast<Eigen::Index>(i)) > gamma;
    return Selection::from_mask(mask);
}

Elimination eliminate_one(const Selection& sel, const CorrelationSummary& corr) {
    if (sel.empty()) throw UsageError("cannot eliminate from an empty selection");
    const auto f = factor_selection(sel, corr);
    const Eigen::VectorXd cs = restrict(corr.c, sel);
    const std::size_t s = sel.size();

    std::vector<double> drops(s);
    if (f.rank() == static_cast<Eigen::Index>(s)) {
        // Full rank: sigma^2(J) - sigma^2(J \ i) = beta_i^2 / [C_J^-1]_ii.
        const Eigen::VectorXd beta = f.solve_min_norm(cs);
        const Eigen::VectorXd diag = f.pinv_diagonal();
        for (std::size_t k = 0; k < s; ++k) {
            const auto kk = static_cast<Eigen::Index>(k);
            drops[k] = beta(kk) * beta(kk) / diag(kk);
        }
    } else {
        const double whole = std::clamp(f.quad_form(cs), 0.0, 1.0);
        for (std::size_t k = 0; k < s; ++k) {
            drops[k] = std::max(whole - sigma_squared(sel.without(sel.indices()[k]), corr), 0.0);
        }
    }

    std::size_t best = 0;
    for (std::size_t k = 1; k < s; ++k)
        if (drops[k] < drops[best]) best = k;
    return {sel.indices()[best], std::max(drops[best], 0.0)};
}

namespace {

PathStep make_step(const Selection& sel, const CorrelationSummary& corr) {
    PathStep step;
    step.selection = sel;
    const auto f = factor_selection(sel, corr);
    const Eigen::VectorXd cs = restrict(corr.c, sel);
    step.beta = f.solve_min_norm(cs);
    step.sigma = std::sqrt(std::clamp(f.quad_form(cs), 0.0, 1.0));
    return step;
}

}  // namespace

SelectionPath elimination_path(const CorrelationSummary& corr, std::size_t m) {
    const std::size_t r = corr.r();
    if (m > r) throw UsageError("batch size m exceeds r");

    SelectionPath path;
    path.m = m;
    Selection current = Selection::full(r);
    if (r == 0) return path;
    path.steps.push_back(make_step(current, corr));

    auto record = [&](std::size_t index, double drop, bool batch) {
        path.removals.push_back({index, drop, batch});
        current = current.without(index);
        if (!current.empty()) path.steps.push_back(make_step(current, corr));
    };

    const auto order = batch_order(corr);
    for (std::size_t k = 0; k < m; ++k) {
        const double before = path.steps.back().sigma;
        const double after = current.size() > 1 ? sigma_delta(current.without(order[k]), corr) : 0.0;
        record(order[k], std::max(before * before - after * after, 0.0), true);
    }
    while (!current.empty()) {
        const auto e = eliminate_one(current, corr);
        record(e.index, e.sigma2_drop, false);
    }
    return path;
}

SelectionPath elimination_path_gamma(const CorrelationSummary& corr, double gamma) {
    auto path = elimination_path(corr, batch_count(corr, gamma));
    path.gamma = gamma;
    return path;
}

const PathStep& SelectionPath::at_size(std::size_t s) const {
    for (const auto& step : steps)
        if (step.selection.size() == s) return step;
    throw UsageError("path has no model of size " + std::to_string(s));
}

OracleResult best_subset_oracle(const CorrelationSummary& corr, std::size_t s) {
    const std::size_t r = corr.r();
    if (r > kBestSubsetMaxR) {
        throw UsageError("best-subset search limited to r <= " + std::to_string(kBestSubsetMaxR));
    }
    if (s > r) throw UsageError("subset size exceeds r");

    OracleResult best{Selection(r), -1.0};
    // Enumerate s-subsets in lexicographic order of their index vectors.
    std::vector<std::size_t> idx(s);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    while (true) {
        const auto sel = Selection::from_indices(r, idx);
        const double sigma = sigma_delta(sel, corr);
        if (sigma > best.sigma) best = {sel, sigma};
        std::size_t k = s;
        while (k > 0 && idx[k - 1] == r - s + k - 1) --k;
        if (k == 0) break;
        ++idx[k - 1];
        for (std::size_t t = k; t < s; ++t) idx[t] = idx[t - 1] + 1;
    }
    return best;
}

double tilt_shift_check(double gamma, const std::vector<double>& grid) {
    double worst = 0.0;
    for (double z : grid) {
        const double tilted = normal_pdf(z) * std::exp(gamma * z) / std::exp(gamma * gamma / 2.0);
        worst = std::max(worst, std::abs(tilted - normal_pdf(z - gamma)));
    }
    return worst;
}

std::vector<double> uniform_grid(double lo, double hi, double step) {
    if (!(step > 0.0) || hi < lo) throw UsageError("bad grid specification");
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> grid(count);
    for (std::size_t k = 0; k < count; ++k) grid[k] = lo + static_cast<double>(k) * step;
    return grid;
}

void to_json(nlohmann::json& j, const SelectionPath& path) {
    nlohmann::json models = nlohmann::json::array();
    for (const auto& step : path.steps) {
        models.push_back({{"s", step.selection.size()},
                          {"J_s", step.selection.one_based()},
                          {"sigma", step.sigma},
                          {"pct_y_content", 100.0 * step.sigma},
                          {"beta", std::vector<double>(step.beta.data(), step.beta.data() + step.beta.size())}});
    }
    nlohmann::json removals = nlohmann::json::array();
    for (const auto& rm : path.removals) {
        removals.push_back({{"index", rm.index + 1}, {"sigma2_drop", rm.sigma2_drop}, {"batch", rm.batch}});
    }
    j = nlohmann::json{{"m", path.m}, {"models", models}, {"removals", removals}};
    j["r"] = path.steps.empty() ? 0 : path.steps.front().selection.r();
    if (path.gamma) j["gamma"] = *path.gamma;
}

void from_json(const nlohmann::json& j, SelectionPath& path) {
    const auto r = j.at("r").get<std::size_t>();
    path = SelectionPath{};
    path.m = j.at("m").get<std::size_t>();
    if (j.contains("gamma")) path.gamma = j.at("gamma").get<double>();
    for (const auto& model : j.at("models")) {
        PathStep step;
        auto idx = model.at("J_s").get<std::vector<std::size_t>>();
        for (auto& i : idx) --i;
        step.selection = Selection::from_indices(r, std::move(idx));
        step.sigma = model.at("sigma").get<double>();
        const auto beta = model.at("beta").get<std::vector<double>>();
        step.beta = Eigen::Map<const Eigen::VectorXd>(beta.data(), static_cast<Eigen::Index>(beta.size()));
        path.steps.push_back(std::move(step));
    }
    for (const auto& rm : j.at("removals")) {
        path.removals.push_back({rm.at("index").get<std::size_t>() - 1, rm.at("sigma2_drop").get<double>(),
                                 rm.at("batch").get<bool>()});
    }
}

}  // namespace linlasso
