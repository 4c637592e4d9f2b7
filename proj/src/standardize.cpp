#include "linlasso/standardize.hpp"

#include "linlasso/error.hpp"

#include <algorithm>
#include <cmath>

namespace linlasso {

namespace {

std::pair<double, double> location_scale(const Eigen::VectorXd& v, Centering centering) {
    const double n = static_cast<double>(v.size());
    const double loc = centering == Centering::kMean ? v.mean() : 0.0;
    const double scale = std::sqrt((v.array() - loc).square().sum() / n);
    return {loc, scale};
}

}  // namespace

Eigen::VectorXd ColumnTransform::apply_y(const Eigen::VectorXd& y) const {
    return (y.array() - y_location) / y_scale;
}

Eigen::MatrixXd ColumnTransform::apply_x(const Eigen::MatrixXd& X) const {
    Eigen::MatrixXd out(X.rows(), X.cols());
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
        if (!active(j)) {
            out.col(j).setZero();
            continue;
        }
        out.col(j) = (X.col(j).array() - x_location(j)) * (flips(j) / x_scale(j));
    }
    return out;
}

StandardizedDataset standardize_columns(const NumericDataset& data, const StandardizeOptions& options) {
    StandardizedDataset out;
    out.names = data.names;
    auto& t = out.transform;
    t.centering = options.centering;

    const auto [yl, ys] = location_scale(data.y, options.centering);
    if (!(ys > 0.0)) throw DataError("response column is constant");
    t.y_location = yl;
    t.y_scale = ys;

    const auto r = data.X.cols();
    t.x_location.resize(r);
    t.x_scale.resize(r);
    t.flips = Eigen::VectorXi::Ones(r);
    for (Eigen::Index j = 0; j < r; ++j) {
        const auto [loc, scale] = location_scale(data.X.col(j), options.centering);
        // Relative check: a column equal to its mean up to rounding is constant.
        const double magnitude = data.X.col(j).cwiseAbs().maxCoeff();
        const bool constant = !(scale > 1e-13 * std::max(1.0, magnitude));
        if (constant && !options.allow_constant_predictors) {
            throw DataError("predictor column '" + data.names.at(static_cast<std::size_t>(j) + 1) +
                            "' is constant");
        }
        t.x_location(j) = loc;
        t.x_scale(j) = constant ? 0.0 : scale;
    }
    out.y = t.apply_y(data.y);
    out.X = t.apply_x(data.X);
    return out;
}

std::pair<StandardizedDataset, Eigen::VectorXi> sign_standardize(StandardizedDataset data) {
    const auto r = data.X.cols();
    Eigen::VectorXi flips = Eigen::VectorXi::Ones(r);
    for (Eigen::Index j = 0; j < r; ++j) {
        if (data.y.dot(data.X.col(j)) < 0.0) {
            flips(j) = -1;
            data.X.col(j) = -data.X.col(j);
        }
    }
    data.transform.flips = data.transform.flips.cwiseProduct(flips);
    Eigen::VectorXi combined = data.transform.flips;
    return {std::move(data), std::move(combined)};
}

CorrelationSummary correlation_summary(const StandardizedDataset& data) {
    const auto r = data.X.cols();
    CorrelationSummary s;
    s.n = data.n();
    s.flips = data.transform.flips.size() == r ? data.transform.flips : Eigen::VectorXi::Ones(r);
    s.names.assign(data.names.begin() + (data.names.empty() ? 0 : 1), data.names.end());
    s.names.resize(static_cast<std::size_t>(r));

    const double ynorm = data.y.norm();
    Eigen::VectorXd norms = data.X.colwise().norm().transpose();
    s.c.resize(r);
    s.C = Eigen::MatrixXd::Identity(r, r);
    for (Eigen::Index j = 0; j < r; ++j) {
        if (norms(j) == 0.0) {
            s.c(j) = 0.0;
            continue;
        }
        s.c(j) = std::clamp(data.y.dot(data.X.col(j)) / (ynorm * norms(j)), -1.0, 1.0);
        for (Eigen::Index k = 0; k < j; ++k) {
            if (norms(k) == 0.0) continue;
            const double v =
                std::clamp(data.X.col(j).dot(data.X.col(k)) / (norms(j) * norms(k)), -1.0, 1.0);
            s.C(j, k) = v;
            s.C(k, j) = v;
        }
    }
    return s;
}

std::pair<StandardizedDataset, CorrelationSummary> prepare(const NumericDataset& data,
                                                           const StandardizeOptions& options) {
    auto [flipped, flips] = sign_standardize(standardize_columns(data, options));
    auto summary = correlation_summary(flipped);
    return {std::move(flipped), std::move(summary)};
}

Eigen::MatrixXd CorrelationSummary::full_matrix() const {
    const auto r = c.size();
    Eigen::MatrixXd full(r + 1, r + 1);
    full(0, 0) = 1.0;
    full.block(0, 1, 1, r) = c.transpose();
    full.block(1, 0, r, 1) = c;
    full.block(1, 1, r, r) = C;
    return full;
}

void to_json(nlohmann::json& j, const CorrelationSummary& s) {
    const auto r = s.c.size();
    std::vector<double> c(s.c.data(), s.c.data() + r);
    std::vector<double> C;
    C.reserve(static_cast<std::size_t>(r * r));
    for (Eigen::Index a = 0; a < r; ++a)
        for (Eigen::Index b = 0; b < r; ++b) C.push_back(s.C(a, b));
    std::vector<int> flips(s.flips.data(), s.flips.data() + s.flips.size());
    j = nlohmann::json{{"n", s.n}, {"names", s.names}, {"c", c}, {"C", C}, {"flips", flips}};
}

void from_json(const nlohmann::json& j, CorrelationSummary& s) {
    const auto c = j.at("c").get<std::vector<double>>();
    const auto C = j.at("C").get<std::vector<double>>();
    const auto flips = j.at("flips").get<std::vector<int>>();
    const auto r = static_cast<Eigen::Index>(c.size());
    if (static_cast<Eigen::Index>(C.size()) != r * r || static_cast<Eigen::Index>(flips.size()) != r) {
        throw DataError("correlation summary JSON has inconsistent dimensions");
    }
    s.n = j.at("n").get<std::size_t>();
    s.names = j.value("names", std::vector<std::string>(static_cast<std::size_t>(r)));
    s.c = Eigen::Map<const Eigen::VectorXd>(c.data(), r);
    s.C.resize(r, r);
    for (Eigen::Index a = 0; a < r; ++a)
        for (Eigen::Index b = 0; b < r; ++b) s.C(a, b) = C[static_cast<std::size_t>(a * r + b)];
    s.flips = Eigen::Map<const Eigen::VectorXi>(flips.data(), r);
}

}  // namespace linlasso
