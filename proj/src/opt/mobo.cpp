#include "skilltune/opt/mobo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "skilltune/opt/quasi_random.hpp"

namespace skilltune::opt {

MoBo::MoBo(ParamSpace space, std::vector<Sense> senses, BoSettings settings)
    : space_(std::move(space)), senses_(std::move(senses)), settings_(settings)
{
    if (senses_.empty()) throw ConfigError("optimizer needs at least one objective");
    if (settings_.warmup < 0 || settings_.candidates < 1) throw ConfigError("invalid optimizer settings");
}

int MoBo::refit_kind(std::size_t n) const
{
    const std::size_t first = std::max<std::size_t>(2, static_cast<std::size_t>(settings_.warmup));
    if (n < first) return 2;
    for (std::size_t k = first; k <= n;) {
        if (k == n) return 2;
        k = std::max(k + 1, static_cast<std::size_t>(std::ceil(static_cast<double>(k) * settings_.refit_growth)));
    }
    if (settings_.refit_every > 0 && (n - first) % static_cast<std::size_t>(settings_.refit_every) == 0) return 1;
    return 0;
}

Suggestion MoBo::suggest(const std::vector<Configuration>& configs, const std::vector<std::vector<double>>& values,
                         std::mt19937_64& rng)
{
    if (space_.empty()) throw ConfigError("cannot suggest from an empty parameter space");
    if (configs.size() != values.size()) throw Error("history configurations and values differ in length");
    Suggestion out;
    const auto n = configs.size();
    if (n < static_cast<std::size_t>(settings_.warmup) || n < 2) {
        out.config = space_.sample_uniform(rng);
        return out;
    }
    out.warmup = false;

    const auto p = static_cast<Eigen::Index>(senses_.size());
    const auto D = static_cast<Eigen::Index>(space_.encoded_size());
    Eigen::MatrixXd X(static_cast<Eigen::Index>(n), D);
    Eigen::MatrixXd Y(static_cast<Eigen::Index>(n), p);
    for (std::size_t i = 0; i < n; ++i) {
        X.row(static_cast<Eigen::Index>(i)) = space_.encode(configs[i]).transpose();
        if (values[i].size() != senses_.size()) throw Error("objective vector has the wrong dimension");
        for (Eigen::Index j = 0; j < p; ++j) {
            Y(static_cast<Eigen::Index>(i), j) = sign(senses_[static_cast<std::size_t>(j)]) *
                                                 values[i][static_cast<std::size_t>(j)];
        }
    }

    out.weights = p == 1 ? Eigen::VectorXd::Ones(1) : sample_simplex(p, rng);
    Eigen::VectorXd g = p == 1 ? Eigen::VectorXd(Y.col(0)) : scalarize(Y, out.weights, settings_.scalarization);
    const double mean = g.mean();
    const double sd = std::sqrt((g.array() - mean).square().mean());
    g = (g.array() - mean) / (sd > 1e-12 ? sd : 1.0);

    GaussianProcess gp;
    const int kind = hyper_ ? refit_kind(n) : 2;
    if (kind == 0) {
        gp.set(X, g, *hyper_);
    } else {
        GpFitOptions fo;
        fo.restarts = kind == 2 ? settings_.restarts : 1;
        fo.iterations = settings_.fit_iterations;
        gp.fit(X, g, rng, fo, hyper_ ? &*hyper_ : nullptr);
    }
    hyper_ = gp.hyper();
    out.hyper = hyper_;
    const double best = g.maxCoeff();

    // Candidate set: shifted Halton points snapped onto valid configurations.
    Eigen::VectorXd shift(D);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (Eigen::Index j = 0; j < D; ++j) shift[j] = u01(rng);
    Eigen::MatrixXd C = halton(settings_.candidates, D, shift);
    for (Eigen::Index i = 0; i < C.rows(); ++i) {
        C.row(i) = space_.encode(space_.decode(C.row(i).transpose())).transpose();
    }
    Eigen::VectorXd mu, var;
    gp.predict(C, mu, var);
    std::vector<double> ei(static_cast<std::size_t>(C.rows()));
    for (Eigen::Index i = 0; i < C.rows(); ++i) {
        ei[static_cast<std::size_t>(i)] = expected_improvement(mu[i], std::sqrt(var[i]), best);
    }
    std::vector<std::size_t> order(ei.size());
    std::iota(order.begin(), order.end(), 0);
    const auto starts = std::min<std::size_t>(order.size(), static_cast<std::size_t>(settings_.refine_starts));
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(starts), order.end(),
                      [&](std::size_t a, std::size_t b) { return ei[a] > ei[b] || (ei[a] == ei[b] && a < b); });

    Eigen::VectorXd best_x = C.row(static_cast<Eigen::Index>(order[0])).transpose();
    double best_ei = ei[order[0]];
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (std::size_t s = 0; s < starts; ++s) {
        Eigen::VectorXd x = C.row(static_cast<Eigen::Index>(order[s])).transpose();
        double fx = ei[order[s]];
        double step = 0.05;
        for (int k = 0; k < settings_.refine_steps; ++k) {
            Eigen::VectorXd y = x;
            for (Eigen::Index j = 0; j < D; ++j) y[j] = std::clamp(y[j] + step * gauss(rng), 0.0, 1.0);
            y = space_.encode(space_.decode(y));
            const auto [m, v] = gp.predict(y);
            const double fy = expected_improvement(m, std::sqrt(v), best);
            if (fy > fx) {
                x = y;
                fx = fy;
            } else {
                step *= 0.7;
            }
        }
        if (fx > best_ei) {
            best_ei = fx;
            best_x = x;
        }
    }
    out.config = space_.decode(best_x);
    out.acquisition = best_ei;
    return out;
}

} // namespace skilltune::opt
