#ifndef SKILLTUNE_OPT_MOBO_HPP
#define SKILLTUNE_OPT_MOBO_HPP

#include <optional>
#include <random>
#include <vector>

#include "skilltune/common/sense.hpp"
#include "skilltune/opt/acquisition.hpp"
#include "skilltune/opt/gp.hpp"
#include "skilltune/opt/param_space.hpp"

namespace skilltune::opt {

struct BoSettings {
    int warmup = 20;
    int candidates = 5000;
    int refine_starts = 10;
    int refine_steps = 20;
    Scalarization scalarization = Scalarization::tchebyshev;
    int restarts = 5;         // restarts of a full hyperparameter search
    int fit_iterations = 40;
    double refit_growth = 1.25; // full search whenever the data grew by this factor
    int refit_every = 5;        // warm-started single search in between
};

struct Suggestion {
    Configuration config;
    bool warmup = true;
    Eigen::VectorXd weights;
    std::optional<GpHyper> hyper;
    double acquisition = 0.0;
};

/// Random-scalarization multi-objective Bayesian optimization.
class MoBo {
public:
    MoBo(ParamSpace space, std::vector<Sense> senses, BoSettings settings = {});

    /// Next configuration given the evaluated history (raw objective values).
    Suggestion suggest(const std::vector<Configuration>& configs, const std::vector<std::vector<double>>& values,
                       std::mt19937_64& rng);

    /// Restores the surrogate hyperparameters of an interrupted run.
    void restore(const GpHyper& h) { hyper_ = h; }
    const std::optional<GpHyper>& hyper() const { return hyper_; }

    const ParamSpace& space() const { return space_; }
    const BoSettings& settings() const { return settings_; }

    /// Kind of hyperparameter update done at history size n: 2 full, 1 warm, 0 reuse.
    int refit_kind(std::size_t n) const;

private:
    ParamSpace space_;
    std::vector<Sense> senses_;
    BoSettings settings_;
    std::optional<GpHyper> hyper_;
};

} // namespace skilltune::opt

#endif
