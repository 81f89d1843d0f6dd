#ifndef SKILLTUNE_HARNESS_RESULTS_IO_HPP
#define SKILLTUNE_HARNESS_RESULTS_IO_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "skilltune/opt/gp.hpp"
#include "skilltune/opt/param_space.hpp"
#include "skilltune/rewards/rewards.hpp"

namespace skilltune::harness {

struct Trial {
    int id = 0; // iteration index
    std::uint64_t seed = 0;
    opt::Configuration config;
    std::vector<double> values; // mean over worlds, one per objective
    std::vector<std::vector<double>> world_values;
    std::vector<std::uint64_t> world_seeds;
    std::vector<bool> world_success;
    double success_rate = 0.0;
    double effort = 0.0;  // mean accumulated |x_ee - x_d| (m s)
    double impulse = 0.0; // mean accumulated contact force (N s)
    bool all_aborted = false;
    bool warmup = true;
    std::optional<opt::GpHyper> hyper;
};

struct RunHeader {
    std::string scenario;
    std::string hash;
    int repeat = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> parameters;
    std::vector<rewards::Objective> objectives;
    nlohmann::json document; // scenario that produced the run
};

struct RunResult {
    RunHeader header;
    std::vector<Trial> trials;
    std::vector<int> front; // trial ids, ordered by objective values
    bool complete = false;
    double wall_seconds = 0.0;

    const Trial& trial(int id) const;
};

nlohmann::json to_json(const RunHeader& h);
nlohmann::json to_json(const Trial& t);
RunHeader header_from_json(const nlohmann::json& j);
Trial trial_from_json(const nlohmann::json& j);

// Results files hold one JSON record per line: a header, one record per trial
// and a closing pareto record. A truncated last line is ignored on reading.
void write_header(std::ostream& out, const RunHeader& h);
void write_trial(std::ostream& out, const Trial& t);
void write_front(std::ostream& out, const std::vector<int>& front, double wall_seconds);

RunResult read_results(const std::filesystem::path& path);

/// Pareto-optimal trials (by objective senses), ordered by their values.
std::vector<int> compute_front(const std::vector<Trial>& trials, const std::vector<rewards::Objective>& objectives);

} // namespace skilltune::harness

#endif
