#include "linlasso/crossval.hpp"

#include "linlasso/error.hpp"
#include "linlasso/lasso.hpp"
#include "linlasso/select.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <sstream>
#include <thread>

namespace linlasso {

RepeatStream::RepeatStream(std::uint64_t master_seed, std::uint64_t repeat) {
    std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                      static_cast<std::uint32_t>(repeat), static_cast<std::uint32_t>(repeat >> 32)};
    engine_.seed(seq);
}

std::uint64_t RepeatStream::below(std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % bound;
}

Partition make_folds(std::size_t n, std::size_t k, RepeatStream& rng) {
    if (k < 2 || k > n) {
        throw UsageError("fold count k = " + std::to_string(k) + " must satisfy 2 <= k <= n = " +
                         std::to_string(n));
    }
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);

    Partition folds(k);
    const std::size_t base = n / k;
    const std::size_t extra = n % k;
    std::size_t pos = 0;
    for (std::size_t f = 0; f < k; ++f) {
        const std::size_t size = base + (f < extra ? 1 : 0);
        folds[f].assign(perm.begin() + static_cast<std::ptrdiff_t>(pos),
                        perm.begin() + static_cast<std::ptrdiff_t>(pos + size));
        std::sort(folds[f].begin(), folds[f].end());
        pos += size;
    }
    return folds;
}

namespace {

struct ModelSpec {
    std::vector<CvModel> models;
    std::string method;
};

ModelSpec describe_models(const NumericDataset& data, const CvPlan& plan) {
    ModelSpec spec;
    const auto [full, corr] = prepare(data, {plan.centering, true});
    const std::size_t r = data.r();
    if (const auto* ll = std::get_if<LinearLassoMethod>(&plan.method)) {
        const auto path = ll->gamma ? elimination_path_gamma(corr, *ll->gamma)
                                    : elimination_path(corr, std::min(ll->m, r));
        std::ostringstream os;
        os << "linear-lasso ";
        if (ll->gamma) {
            os << "gamma=" << *ll->gamma;
        } else {
            os << "m=" << ll->m;
        }
        spec.method = os.str();
        for (const auto& step : path.steps) {
            CvModel model;
            model.s = step.selection.size();
            model.label = "s=" + std::to_string(model.s);
            model.selection = step.selection;
            model.pct_y_content = 100.0 * step.sigma;
            spec.models.push_back(std::move(model));
        }
    } else if (const auto* la = std::get_if<LassoMethod>(&plan.method)) {
        spec.method = "lasso";
        const auto fits = lasso_path(full, la->gammas);
        for (const auto& fit : fits) {
            CvModel model;
            std::ostringstream os;
            os << "gamma=" << fit.gamma;
            model.label = os.str();
            model.gamma = fit.gamma;
            model.s = fit.support.size();
            model.selection = Selection::from_indices(r, fit.support);
            model.pct_y_content = 100.0 * sigma_delta(*model.selection, corr);
            spec.models.push_back(std::move(model));
        }
    } else {
        spec.method = "null";
        CvModel model;
        model.label = "null";
        spec.models.push_back(std::move(model));
    }
    return spec;
}

struct FoldOutcome {
    std::vector<double> mse;  // one per model
    std::vector<std::string> notes;
    FoldRecord record;
};

FoldOutcome run_fold(const NumericDataset& data, const CvPlan& plan, const Eigen::VectorXi& full_flips,
                     std::size_t n_models, const std::vector<std::size_t>& train_rows,
                     const std::vector<std::size_t>& test_rows) {
    FoldOutcome out;
    const auto train = data.subset_rows(train_rows);
    const auto test = data.subset_rows(test_rows);
    const auto [std_train, corr] = prepare(train, {plan.centering, true});
    const auto& t = std_train.transform;

    for (Eigen::Index j = 0; j < t.x_scale.size(); ++j) {
        const auto& name = data.names[static_cast<std::size_t>(j) + 1];
        if (!t.active(j)) {
            out.notes.push_back("constant training column '" + name + "' skipped");
        } else if (t.flips(j) != full_flips(j)) {
            out.notes.push_back("sign flip of '" + name + "' differs from full data");
        }
    }

    const Eigen::VectorXd y_test = t.apply_y(test.y);
    const Eigen::MatrixXd X_test = t.apply_x(test.X);
    const double n_test = static_cast<double>(test_rows.size());
    auto mse = [&](const Eigen::VectorXd& pred) { return (y_test - pred).squaredNorm() / n_test; };

    out.mse.assign(n_models, 0.0);
    const std::size_t r = data.r();
    if (const auto* ll = std::get_if<LinearLassoMethod>(&plan.method)) {
        const auto path = ll->gamma ? elimination_path_gamma(corr, *ll->gamma)
                                    : elimination_path(corr, std::min(ll->m, r));
        // Models are listed by descending s, matching path.steps.
        for (std::size_t k = 0; k < path.steps.size() && k < n_models; ++k) {
            const auto& step = path.steps[k];
            std::vector<Eigen::Index> cols(step.selection.indices().begin(), step.selection.indices().end());
            out.mse[k] = mse(X_test(Eigen::all, cols) * step.beta);
        }
    } else if (const auto* la = std::get_if<LassoMethod>(&plan.method)) {
        const auto fits = lasso_path(std_train, la->gammas);
        for (std::size_t k = 0; k < fits.size(); ++k) out.mse[k] = mse(X_test * fits[k].beta);
    } else {
        out.mse[0] = mse(Eigen::VectorXd::Zero(y_test.size()));
    }

    if (plan.keep_fold_records) {
        out.record.train_rows = train_rows;
        out.record.test_rows = test_rows;
        out.record.transform = t;
    }
    return out;
}

struct RepeatOutcome {
    std::vector<double> mse;
    std::vector<std::string> notes;
    std::vector<FoldRecord> folds;
};

RepeatOutcome run_repeat(const NumericDataset& data, const CvPlan& plan, const Eigen::VectorXi& full_flips,
                         std::size_t n_models, std::size_t repeat) {
    RepeatStream rng(plan.seed, repeat);
    const auto folds = make_folds(data.n(), plan.k, rng);
    RepeatOutcome out;
    out.mse.assign(n_models, 0.0);
    for (std::size_t f = 0; f < folds.size(); ++f) {
        std::vector<std::size_t> train;
        train.reserve(data.n() - folds[f].size());
        for (std::size_t g = 0; g < folds.size(); ++g)
            if (g != f) train.insert(train.end(), folds[g].begin(), folds[g].end());
        std::sort(train.begin(), train.end());

        auto fold = run_fold(data, plan, full_flips, n_models, train, folds[f]);
        for (std::size_t k = 0; k < n_models; ++k) out.mse[k] += fold.mse[k] / static_cast<double>(folds.size());
        for (auto& note : fold.notes) out.notes.push_back("repeat " + std::to_string(repeat) + " fold " +
                                                           std::to_string(f) + ": " + note);
        if (plan.keep_fold_records) {
            fold.record.repeat = repeat;
            fold.record.fold = f;
            out.folds.push_back(std::move(fold.record));
        }
    }
    return out;
}

}  // namespace

CvReport cv_evaluate(const NumericDataset& data, const CvPlan& plan) {
    if (plan.repeats == 0) throw UsageError("repeats must be >= 1");
    if (plan.k < 2 || plan.k > data.n()) throw UsageError("fold count out of range");
    if (const auto* la = std::get_if<LassoMethod>(&plan.method); la && la->gammas.empty()) {
        throw UsageError("lasso CV needs at least one gamma");
    }

    auto spec = describe_models(data, plan);
    const std::size_t n_models = spec.models.size();
    const auto full_flips = prepare(data, {plan.centering, true}).second.flips;

    std::vector<RepeatOutcome> outcomes(plan.repeats);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t rep = next++; rep < plan.repeats; rep = next++) {
            outcomes[rep] = run_repeat(data, plan, full_flips, n_models, rep);
        }
    };
    const std::size_t threads = std::max<std::size_t>(1, std::min(plan.threads, plan.repeats));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    CvReport report;
    report.method = spec.method;
    report.k = plan.k;
    report.repeats = plan.repeats;
    report.seed = plan.seed;
    report.models = std::move(spec.models);
    for (std::size_t k = 0; k < n_models; ++k) {
        auto& model = report.models[k];
        model.repeat_mse.resize(plan.repeats);
        for (std::size_t rep = 0; rep < plan.repeats; ++rep) model.repeat_mse[rep] = outcomes[rep].mse[k];
        const double count = static_cast<double>(plan.repeats);
        model.mean_mse = std::accumulate(model.repeat_mse.begin(), model.repeat_mse.end(), 0.0) / count;
        double ss = 0.0;
        for (double v : model.repeat_mse) ss += (v - model.mean_mse) * (v - model.mean_mse);
        model.sd_mse = plan.repeats > 1 ? std::sqrt(ss / (count - 1.0)) : 0.0;
    }
    for (std::size_t k = 1; k < n_models; ++k)
        if (report.models[k].mean_mse < report.models[report.best].mean_mse) report.best = k;
    for (auto& outcome : outcomes) {
        report.notes.insert(report.notes.end(), outcome.notes.begin(), outcome.notes.end());
        for (auto& fold : outcome.folds) report.folds.push_back(std::move(fold));
    }
    return report;
}

void to_json(nlohmann::json& j, const CvReport& report) {
    nlohmann::json models = nlohmann::json::array();
    for (const auto& m : report.models) {
        nlohmann::json e{{"label", m.label},  {"s", m.s},           {"mean_mse", m.mean_mse},
                         {"sd_mse", m.sd_mse}, {"repeat_mse", m.repeat_mse}};
        if (m.selection) {
            e["J_s"] = m.selection->one_based();
            e["r"] = m.selection->r();
        }
        if (m.gamma) e["gamma"] = *m.gamma;
        if (m.pct_y_content) e["pct_y_content"] = *m.pct_y_content;
        models.push_back(std::move(e));
    }
    j = nlohmann::json{{"method", report.method}, {"k", report.k},         {"repeats", report.repeats},
                       {"seed", report.seed},     {"best", report.best},   {"models", models},
                       {"notes", report.notes}};
}

void from_json(const nlohmann::json& j, CvReport& report) {
    report = CvReport{};
    report.method = j.at("method").get<std::string>();
    report.k = j.at("k").get<std::size_t>();
    report.repeats = j.at("repeats").get<std::size_t>();
    report.seed = j.at("seed").get<std::uint64_t>();
    report.best = j.at("best").get<std::size_t>();
    report.notes = j.at("notes").get<std::vector<std::string>>();
    for (const auto& e : j.at("models")) {
        CvModel m;
        m.label = e.at("label").get<std::string>();
        m.s = e.at("s").get<std::size_t>();
        m.mean_mse = e.at("mean_mse").get<double>();
        m.sd_mse = e.at("sd_mse").get<double>();
        m.repeat_mse = e.at("repeat_mse").get<std::vector<double>>();
        if (e.contains("J_s")) {
            auto idx = e.at("J_s").get<std::vector<std::size_t>>();
            for (auto& i : idx) --i;
            m.selection = Selection::from_indices(e.at("r").get<std::size_t>(), std::move(idx));
        }
        if (e.contains("gamma")) m.gamma = e.at("gamma").get<double>();
        if (e.contains("pct_y_content")) m.pct_y_content = e.at("pct_y_content").get<double>();
        report.models.push_back(std::move(m));
    }
}

}  // namespace linlasso
