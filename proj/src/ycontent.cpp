#include "linlasso/ycontent.hpp"

#include "linlasso/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace linlasso {

Selection Selection::full(std::size_t r) {
    Selection s(r);
    s.indices_.resize(r);
    for (std::size_t i = 0; i < r; ++i) s.indices_[i] = i;
    return s;
}

Selection Selection::from_indices(std::size_t r, std::vector<std::size_t> indices) {
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    if (!indices.empty() && indices.back() >= r) {
        throw UsageError("selection index " + std::to_string(indices.back() + 1) +
                         " exceeds r = " + std::to_string(r));
    }
    Selection s(r);
    s.indices_ = std::move(indices);
    return s;
}

Selection Selection::from_mask(const std::vector<bool>& mask) {
    Selection s(mask.size());
    for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask[i]) s.indices_.push_back(i);
    return s;
}

Selection Selection::parse(std::size_t r, const std::string& text) {
    std::vector<std::size_t> idx;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), [](char ch) {
                       return ch == ' ' || ch == '{' || ch == '}';
                   }),
                   item.end());
        if (item.empty()) continue;
        std::size_t pos = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(item, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != item.size() || v == 0) throw UsageError("bad selection index '" + item + "'");
        idx.push_back(v - 1);
    }
    return from_indices(r, std::move(idx));
}

bool Selection::contains(std::size_t i) const {
    return std::binary_search(indices_.begin(), indices_.end(), i);
}

std::vector<bool> Selection::mask() const {
    std::vector<bool> m(r_, false);
    for (auto i : indices_) m[i] = true;
    return m;
}

Selection Selection::without(std::size_t i) const {
    Selection s = *this;
    s.indices_.erase(std::remove(s.indices_.begin(), s.indices_.end(), i), s.indices_.end());
    return s;
}

Selection Selection::with(std::size_t i) const {
    auto idx = indices_;
    idx.push_back(i);
    return from_indices(r_, std::move(idx));
}

std::string Selection::to_string() const {
    std::string out = "{";
    for (std::size_t k = 0; k < indices_.size(); ++k) {
        if (k) out += ',';
        out += std::to_string(indices_[k] + 1);
    }
    return out + "}";
}

std::vector<std::size_t> Selection::one_based() const {
    std::vector<std::size_t> out(indices_);
    for (auto& i : out) ++i;
    return out;
}

Eigen::VectorXd restrict(const Eigen::VectorXd& v, const Selection& sel) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(sel.size()));
    for (std::size_t k = 0; k < sel.size(); ++k)
        out(static_cast<Eigen::Index>(k)) = v(static_cast<Eigen::Index>(sel.indices()[k]));
    return out;
}

SymFactorization factor_selection(const Selection& sel, const CorrelationSummary& corr, double tol) {
    if (sel.r() != corr.r()) throw UsageError("selection size does not match correlation summary");
    std::vector<Eigen::Index> idx(sel.indices().begin(), sel.indices().end());
    return SymFactorization::factor(corr.C(idx, idx), tol);
}

double sigma_squared(const Selection& sel, const CorrelationSummary& corr) {
    if (sel.empty()) return 0.0;
    const auto f = factor_selection(sel, corr);
    return std::clamp(f.quad_form(restrict(corr.c, sel)), 0.0, 1.0);
}

double sigma_delta(const Selection& sel, const CorrelationSummary& corr) {
    return std::sqrt(sigma_squared(sel, corr));
}

PredictiveDistribution predictive_distribution(const Selection& sel, const CorrelationSummary& corr) {
    if (sel.empty()) throw UsageError("predictive distribution needs a nonempty selection");
    const auto f = factor_selection(sel, corr);
    const Eigen::VectorXd cs = restrict(corr.c, sel);
    PredictiveDistribution out;
    out.coefficients = f.solve_min_norm(cs);
    out.variance = 1.0 - std::clamp(f.quad_form(cs), 0.0, 1.0);
    return out;
}

double normal_pdf(double y) {
    return std::exp(-0.5 * y * y) / std::sqrt(2.0 * std::numbers::pi);
}

double marginal_fraction(double sigma, double y) { return sigma * normal_pdf(y); }

double marginal_fraction(const Selection& sel, const CorrelationSummary& corr, double y) {
    return marginal_fraction(sigma_delta(sel, corr), y);
}

LsFit ls_fit(const Selection& sel, const StandardizedDataset& data, const CorrelationSummary& corr) {
    const std::size_t n = data.n();
    const std::size_t s = sel.size();
    if (s == 0) throw UsageError("least-squares fit needs a nonempty selection");
    if (n <= s) {
        throw DataError("least-squares fit needs n > s (n = " + std::to_string(n) +
                        ", s = " + std::to_string(s) + ")");
    }
    const auto f = factor_selection(sel, corr);
    const Eigen::VectorXd cs = restrict(corr.c, sel);

    LsFit fit;
    fit.selection = sel;
    fit.s = s;
    fit.n = n;
    fit.beta_hat = f.solve_min_norm(cs);
    fit.sigma = std::sqrt(std::clamp(f.quad_form(cs), 0.0, 1.0));

    std::vector<Eigen::Index> cols(sel.indices().begin(), sel.indices().end());
    const Eigen::VectorXd resid = data.y - data.X(Eigen::all, cols) * fit.beta_hat;
    fit.sigma2_resid = resid.squaredNorm() / static_cast<double>(n - s);
    fit.se = (fit.sigma2_resid * f.pinv_diagonal().array() / static_cast<double>(n)).sqrt();
    return fit;
}

void to_json(nlohmann::json& j, const Selection& sel) { j = sel.one_based(); }

namespace {
std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }
}  // namespace

void to_json(nlohmann::json& j, const LsFit& fit) {
    j = nlohmann::json{{"J_s", fit.selection.one_based()},
                       {"r", fit.selection.r()},
                       {"s", fit.s},
                       {"n", fit.n},
                       {"sigma", fit.sigma},
                       {"pct_y_content", 100.0 * fit.sigma},
                       {"beta", to_std(fit.beta_hat)},
                       {"se", to_std(fit.se)},
                       {"sigma2_resid", fit.sigma2_resid}};
}

void from_json(const nlohmann::json& j, LsFit& fit) {
    auto idx = j.at("J_s").get<std::vector<std::size_t>>();
    for (auto& i : idx) --i;
    fit.selection = Selection::from_indices(j.at("r").get<std::size_t>(), std::move(idx));
    fit.s = j.at("s").get<std::size_t>();
    fit.n = j.at("n").get<std::size_t>();
    fit.sigma = j.at("sigma").get<double>();
    const auto beta = j.at("beta").get<std::vector<double>>();
    const auto se = j.at("se").get<std::vector<double>>();
    fit.beta_hat = Eigen::Map<const Eigen::VectorXd>(beta.data(), static_cast<Eigen::Index>(beta.size()));
    fit.se = Eigen::Map<const Eigen::VectorXd>(se.data(), static_cast<Eigen::Index>(se.size()));
    fit.sigma2_resid = j.at("sigma2_resid").get<double>();
}

}  // namespace linlasso
