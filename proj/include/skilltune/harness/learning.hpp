#ifndef SKILLTUNE_HARNESS_LEARNING_HPP
#define SKILLTUNE_HARNESS_LEARNING_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <vector>

#include "skilltune/harness/episode.hpp"
#include "skilltune/harness/results_io.hpp"
#include "skilltune/harness/scenario.hpp"
#include "skilltune/pddl/planner.hpp"

namespace skilltune::harness {

/// The goal cannot be reached with the available skills.
class UnsolvableError : public Error {
public:
    using Error::Error;
};

/// Plan, skill instances and search space of a scenario.
struct PreparedTask {
    pddl::Domain domain;
    pddl::Problem problem;
    pddl::PlanResult result;
    std::vector<wm::SkillInstance> plan;
    opt::ParamSpace space;
};

/// Generates and solves the planning task; throws UnsolvableError when no plan exists.
PreparedTask prepare(const ScenarioConfig& cfg);

struct Evaluation {
    std::vector<double> values; // mean over worlds
    std::vector<std::vector<double>> world_values;
    std::vector<std::uint64_t> world_seeds;
    std::vector<bool> world_success;
    double success_rate = 0.0;
    double effort = 0.0;
    double impulse = 0.0;
    bool all_aborted = false;
};

/// Seed of world k for an evaluation seeded with `seed`.
std::uint64_t world_seed(std::uint64_t seed, std::size_t k);

/// Runs the configuration in the scenario's randomized worlds (up to `jobs`
/// at a time) and averages the objective vectors.
Evaluation evaluate_configuration(const ScenarioConfig& cfg, const PreparedTask& task, const opt::Configuration& config,
                                  std::uint64_t seed, int jobs = 1);

/// Episodes of one configuration in the given worlds, in order.
std::vector<EpisodeResult> run_worlds(const ScenarioConfig& cfg, const PreparedTask& task,
                                      const opt::Configuration& config, const std::vector<World>& worlds, int jobs = 1,
                                      bool keep_traces = false);

struct LearnOptions {
    std::optional<int> iterations;
    std::optional<int> repeats;
    std::optional<std::uint64_t> seed;
    int jobs = 1;
    std::filesystem::path out_dir = "results";
    std::function<void(const RunHeader&, const Trial&)> on_trial;
};

/// Path of the results file of one repeat.
std::filesystem::path results_path(const std::filesystem::path& dir, const ScenarioConfig& cfg, int repeat);

/// One optimization run. Trials already present in `path` (same scenario hash)
/// are kept and the run continues after them.
RunResult run_repeat(const ScenarioConfig& cfg, const PreparedTask& task, int repeat, int iterations,
                     std::uint64_t seed, const std::filesystem::path& path, int jobs = 1,
                     const std::function<void(const RunHeader&, const Trial&)>& on_trial = {});

std::vector<RunResult> run_learning(const ScenarioConfig& cfg, const LearnOptions& options = {});

struct ReplayResult {
    std::vector<World> worlds;
    std::vector<EpisodeResult> episodes;
    double success_rate = 0.0;
};

/// Re-executes a recorded trial, in its own worlds when `seeds` is empty or
/// else in one world per seed.
ReplayResult replay(const ScenarioConfig& cfg, const PreparedTask& task, const RunResult& run, int trial_id,
                    const std::vector<std::uint64_t>& seeds = {}, int jobs = 1, bool keep_traces = false);

} // namespace skilltune::harness

#endif
