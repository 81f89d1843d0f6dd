#ifndef SKILLTUNE_HARNESS_SCENARIO_HPP
#define SKILLTUNE_HARNESS_SCENARIO_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "skilltune/opt/mobo.hpp"
#include "skilltune/rewards/rewards.hpp"
#include "skilltune/sim/simulator.hpp"
#include "skilltune/world_model/world_model.hpp"

namespace skilltune::harness {

enum class TaskKind { free, peg, push };

std::string to_string(TaskKind k);
TaskKind task_kind_from_string(const std::string& s);

/// Which scene objects the simulator environment is built from.
struct TaskSetup {
    TaskKind kind = TaskKind::free;
    std::string arm = "Arm-1";
    std::string peg;    // peg: object carried by the arm
    std::string box;    // peg: box with the hole
    std::string object; // push: object to be pushed
    std::string goal;   // push: goal pose of the object

    double arm_tolerance = 0.01;       // m, (at arm pose)
    double position_tolerance = 0.01;  // m, (at object goal)
    double rotation_tolerance = 5.0;   // deg
    double insertion_depth = 0.01;     // m, (at peg box)
};

struct Randomization {
    double sigma = 0.007; // std of the x/y perturbation
    int worlds = 7;
    std::vector<Pose> start_poses;
    std::vector<std::string> perturbed; // objects displaced in every world
    std::vector<std::string> hidden;    // displaced objects whose true pose skills do not see
};

struct LearningSettings {
    int iterations = 400;
    int repeats = 1;
    std::uint64_t seed = 1;
    opt::BoSettings bo;
};

struct ScenarioConfig {
    std::string name;
    std::filesystem::path source;
    nlohmann::json document; // as loaded, for the config hash

    wm::WorldModel model;
    std::vector<rewards::Objective> objectives;
    std::vector<rewards::RewardSpec> rewards;
    LearningSettings learning;
    Randomization randomization;
    double horizon = 30.0; // seconds
    sim::SimConfig sim;
    TaskSetup task;

    /// Hex digest of the canonical JSON document.
    std::string hash() const;
    std::vector<Sense> senses() const;
    void validate() const;
};

/// Builds a scenario from its JSON document. A "scene" entry may be an inline
/// scene object or a path relative to `base_dir`.
ScenarioConfig scenario_from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});
ScenarioConfig load_scenario(const std::filesystem::path& path);

} // namespace skilltune::harness

#endif
