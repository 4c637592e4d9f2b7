#include "linlasso/lasso.hpp"

#include "linlasso/error.hpp"

#include <cmath>

namespace linlasso {

double soft_threshold(double z, double t) {
    if (z > t) return z - t;
    if (z < -t) return z + t;
    return 0.0;
}

double lasso_objective(const StandardizedDataset& data, const Eigen::VectorXd& beta, double gamma) {
    const double n = static_cast<double>(data.n());
    return (data.y - data.X * beta).squaredNorm() / (2.0 * n) + gamma * beta.lpNorm<1>();
}

LassoFit lasso_fit(const StandardizedDataset& data, double gamma, const LassoOptions& options,
                   const Eigen::VectorXd* warm_start) {
    if (!(gamma >= 0.0)) throw UsageError("lasso penalty gamma must be >= 0");
    const auto r = data.X.cols();
    const double n = static_cast<double>(data.n());

    LassoFit fit;
    fit.gamma = gamma;
    fit.beta = warm_start ? *warm_start : Eigen::VectorXd::Zero(r);
    if (fit.beta.size() != r) throw UsageError("warm start has wrong dimension");

    const Eigen::VectorXd col_ss = data.X.colwise().squaredNorm().transpose() / n;
    Eigen::VectorXd resid = data.y - data.X * fit.beta;

    for (fit.iterations = 0; fit.iterations < options.max_iter;) {
        ++fit.iterations;
        double max_change = 0.0;
        for (Eigen::Index j = 0; j < r; ++j) {
            if (col_ss(j) == 0.0) {
                fit.beta(j) = 0.0;
                continue;
            }
            const double old = fit.beta(j);
            const double z = data.X.col(j).dot(resid) / n + col_ss(j) * old;
            const double updated = soft_threshold(z, gamma) / col_ss(j);
            if (updated != old) {
                resid.noalias() -= (updated - old) * data.X.col(j);
                fit.beta(j) = updated;
                max_change = std::max(max_change, std::abs(updated - old));
            }
        }
        if (options.track_objective) fit.objective_trace.push_back(lasso_objective(data, fit.beta, gamma));
        if (max_change <= options.tol) {
            fit.converged = true;
            break;
        }
    }

    for (Eigen::Index j = 0; j < r; ++j) {
        if (fit.beta(j) != 0.0) fit.support.push_back(static_cast<std::size_t>(j));
        if (std::abs(fit.beta(j)) >= options.support_threshold) ++fit.s_thresholded;
    }
    fit.objective = lasso_objective(data, fit.beta, gamma);
    return fit;
}

std::vector<LassoFit> lasso_path(const StandardizedDataset& data, const std::vector<double>& gammas,
                                 const LassoOptions& options) {
    for (std::size_t k = 1; k < gammas.size(); ++k) {
        if (gammas[k] > gammas[k - 1]) throw UsageError("lasso path gammas must be sorted descending");
    }
    std::vector<LassoFit> fits;
    fits.reserve(gammas.size());
    for (double gamma : gammas) {
        const Eigen::VectorXd* warm = fits.empty() ? nullptr : &fits.back().beta;
        fits.push_back(lasso_fit(data, gamma, options, warm));
    }
    return fits;
}

double kkt_residual(const StandardizedDataset& data, const LassoFit& fit) {
    const double n = static_cast<double>(data.n());
    const Eigen::VectorXd grad = data.X.transpose() * (data.y - data.X * fit.beta) / n;
    double worst = 0.0;
    for (Eigen::Index j = 0; j < grad.size(); ++j) {
        const double b = fit.beta(j);
        const double v = b == 0.0 ? std::max(std::abs(grad(j)) - fit.gamma, 0.0)
                                  : std::abs(grad(j) - fit.gamma * (b > 0.0 ? 1.0 : -1.0));
        worst = std::max(worst, v);
    }
    return worst;
}

void to_json(nlohmann::json& j, const LassoFit& fit) {
    std::vector<std::size_t> support(fit.support);
    for (auto& i : support) ++i;
    j = nlohmann::json{{"gamma", fit.gamma},
                       {"J_s", support},
                       {"s", support.size()},
                       {"s_thresholded", fit.s_thresholded},
                       {"beta", std::vector<double>(fit.beta.data(), fit.beta.data() + fit.beta.size())},
                       {"iterations", fit.iterations},
                       {"converged", fit.converged},
                       {"objective", fit.objective}};
}

void from_json(const nlohmann::json& j, LassoFit& fit) {
    fit = LassoFit{};
    fit.gamma = j.at("gamma").get<double>();
    fit.support = j.at("J_s").get<std::vector<std::size_t>>();
    for (auto& i : fit.support) --i;
    fit.s_thresholded = j.at("s_thresholded").get<std::size_t>();
    const auto beta = j.at("beta").get<std::vector<double>>();
    fit.beta = Eigen::Map<const Eigen::VectorXd>(beta.data(), static_cast<Eigen::Index>(beta.size()));
    fit.iterations = j.at("iterations").get<std::size_t>();
    fit.converged = j.at("converged").get<bool>();
    fit.objective = j.at("objective").get<double>();
}

}  // namespace linlasso
