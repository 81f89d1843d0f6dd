#ifndef SKILLTUNE_WORLD_MODEL_SCENE_IO_HPP
#define SKILLTUNE_WORLD_MODEL_SCENE_IO_HPP

#include <filesystem>

#include <json.hpp>

#include "skilltune/world_model/world_model.hpp"

namespace skilltune::wm {

// Scene section layout (JSON):
//   objects:   [{id, kind, pose: [x,y,z,qx,qy,qz,qw], properties: {key: number}}]
//   relations: [{subject, predicate, object}]
//   skills:    [{name, arguments: [{name, type}],
//                parameters: [{name, semantic_type, default, learnable, type, bounds: [lo, hi], values}],
//                preconditions: [{predicate, subject, object, negated}], postconditions: [...]}]
//   goal:      [{subject, predicate, object}]
// Other top-level keys are ignored here.

WorldModel world_model_from_json(const nlohmann::json& scene);
nlohmann::json to_json(const WorldModel& model);

Pose pose_from_json(const nlohmann::json& j);
nlohmann::json pose_to_json(const Pose& p);

nlohmann::json read_json_file(const std::filesystem::path& path);
WorldModel load_scene_file(const std::filesystem::path& path);
void save_scene_file(const WorldModel& model, const std::filesystem::path& path);

} // namespace skilltune::wm

#endif
