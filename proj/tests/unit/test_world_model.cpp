#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "skilltune/world_model/scene_io.hpp"
#include "skilltune/world_model/world_model.hpp"

using namespace skilltune;
using namespace skilltune::wm;

namespace {

SkillTemplate move_skill()
{
    SkillTemplate t;
    t.name = "Move";
    t.arguments = {{"?arm", "arm"}, {"?from", "pose"}, {"?to", "pose"}};
    SkillParameter speed;
    speed.name = "speed";
    speed.semantic_type = "velocity";
    speed.default_value = 0.1;
    speed.learnable = true;
    speed.lower = 0.01;
    speed.upper = 0.5;
    SkillParameter mode;
    mode.name = "mode";
    mode.learnable = true;
    mode.type = opt::ParamType::categorical;
    mode.values = {0.0, 2.0, 5.0};
    SkillParameter fixed;
    fixed.name = "tolerance";
    fixed.default_value = 0.005;
    t.parameters = {speed, mode, fixed};
    t.preconditions = {{"at", "?arm", "?from", false}};
    t.postconditions = {{"at", "?arm", "?to", false}, {"at", "?arm", "?from", true}};
    return t;
}

WorldModel small_model()
{
    WorldModel m;
    m.add_object({"Arm-1", "arm", Pose{}, {}});
    m.add_object({"A", "pose", Pose{Vec3(0.1, 0.2, 0.3), yaw_quaternion(0.4)}, {{"size_x", 0.1}}});
    m.add_object({"B", "pose", Pose{Vec3(-0.1, 0.0, 0.5), Quat::Identity()}, {}});
    m.add_relation({"Arm-1", "at", "A"});
    m.add_skill(move_skill());
    m.set_goal({{"Arm-1", "at", "B"}});
    return m;
}

WorldModel random_model(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> count(1, 6);
    WorldModel m;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
        WmObject o;
        o.id = "obj-" + std::to_string(i);
        o.kind = i % 2 ? "pose" : "thing";
        o.pose.position = Vec3(u(rng), u(rng), u(rng));
        o.pose.orientation = Quat(Eigen::Vector4d(u(rng), u(rng), u(rng), u(rng) + 2.0).normalized());
        if (i % 3 == 0) o.properties["mass"] = 1.0 + u(rng) * 0.5;
        m.add_object(o);
    }
    for (int i = 0; i + 1 < n; ++i) m.add_relation({"obj-" + std::to_string(i), "near", "obj-" + std::to_string(i + 1)});
    m.add_skill(move_skill());
    m.set_goal({{"obj-0", "near", "obj-0"}});
    return m;
}

} // namespace

TEST(WorldModel, RejectsDuplicateAndUnknownIds)
{
    auto m = small_model();
    EXPECT_THROW(m.add_object({"A", "pose", Pose{}, {}}), DuplicateIdError);
    EXPECT_THROW(m.add_relation({"A", "near", "nowhere"}), UnknownIdError);
    EXPECT_THROW(m.object("nowhere"), UnknownIdError);
    EXPECT_THROW(m.add_skill(move_skill()), DuplicateIdError);
    EXPECT_EQ(m.find_object("nowhere"), nullptr);
    EXPECT_TRUE(m.has_relation({"Arm-1", "at", "A"}));
    EXPECT_FALSE(m.has_relation({"Arm-1", "at", "B"}));
}

TEST(WorldModel, RejectsBadObjects)
{
    WorldModel m;
    Pose bad;
    bad.orientation = Quat(0.5, 0.5, 0.5, 0.6);
    EXPECT_THROW(m.add_object({"x", "pose", bad, {}}), ConfigError);
    EXPECT_THROW(m.add_object({"", "pose", Pose{}, {}}), ConfigError);
    EXPECT_THROW(m.add_object({"y", "box", Pose{}, {{"size_x", -1.0}}}), ConfigError);
}

TEST(WorldModel, RejectsLearnableWithoutBounds)
{
    WorldModel m;
    auto t = move_skill();
    t.parameters[0].upper.reset();
    EXPECT_THROW(m.add_skill(t), ConfigError);
}

TEST(WorldModel, RejectsUndeclaredConditionArgument)
{
    WorldModel m;
    auto t = move_skill();
    t.preconditions.push_back({"at", "?ghost", "?to", false});
    EXPECT_THROW(m.add_skill(t), ConfigError);
}

TEST(WorldModel, CollectLearnables)
{
    const auto m = small_model();
    const std::vector<SkillInstance> plan = {{"Move", {"Arm-1", "A", "B"}, {}}, {"Move", {"Arm-1", "B", "A"}, {}}};
    const auto space = collect_learnables(m, plan);
    ASSERT_EQ(space.size(), 4u);
    EXPECT_EQ(space[0].name, "Move.speed");
    EXPECT_EQ(space[1].name, "Move.mode");
    EXPECT_EQ(space[2].name, "Move.speed#2");
    EXPECT_EQ(space[3].name, "Move.mode#2");
    EXPECT_DOUBLE_EQ(space[0].lower, 0.01);
    EXPECT_DOUBLE_EQ(space[0].upper, 0.5);
    EXPECT_EQ(space[1].type, opt::ParamType::categorical);
    EXPECT_EQ(collect_learnables(m, plan), space);
    EXPECT_EQ(collect_learnables(m, plan), collect_learnables(m, plan));
}

TEST(WorldModel, BindParameters)
{
    const auto m = small_model();
    const std::vector<SkillInstance> plan = {{"Move", {"Arm-1", "A", "B"}, {}}};
    const auto space = collect_learnables(m, plan);
    const auto bound = bind_parameters(m, plan, space, std::vector<double>{0.2, 2.0});
    ASSERT_EQ(bound.size(), 1u);
    EXPECT_DOUBLE_EQ(bound[0].parameters.at("speed"), 0.2);
    EXPECT_DOUBLE_EQ(bound[0].parameters.at("mode"), 5.0); // categorical index 2
    EXPECT_DOUBLE_EQ(bound[0].parameters.at("tolerance"), 0.005);
    EXPECT_THROW(bind_parameters(m, plan, space, std::vector<double>{0.2}), Error);
}

TEST(WorldModel, JsonRoundTrip)
{
    const auto m = small_model();
    EXPECT_EQ(world_model_from_json(to_json(m)), m);
}

TEST(WorldModel, RandomRoundTripThroughFile)
{
    std::mt19937_64 rng(5);
    const auto dir = std::filesystem::temp_directory_path() / "skilltune_wm_roundtrip";
    std::filesystem::create_directories(dir);
    for (int i = 0; i < 50; ++i) {
        const auto m = random_model(rng);
        const auto path = dir / ("scene" + std::to_string(i) + ".json");
        save_scene_file(m, path);
        const auto back = load_scene_file(path);
        EXPECT_EQ(back, m) << i;
        for (std::size_t k = 0; k < m.objects().size(); ++k) {
            EXPECT_EQ(back.objects()[k].pose.position, m.objects()[k].pose.position);
            EXPECT_EQ(back.objects()[k].properties, m.objects()[k].properties);
        }
    }
    std::filesystem::remove_all(dir);
}

TEST(WorldModel, PoseParsing)
{
    EXPECT_THROW(pose_from_json(nlohmann::json::array({1, 2, 3})), ConfigError);
    EXPECT_THROW(pose_from_json(nlohmann::json::array({0, 0, 0, 0, 0, 0, 2})), ConfigError);
    const auto p = pose_from_json(nlohmann::json::array({1, 2, 3, 0, 0, 0, 1}));
    EXPECT_EQ(p.position, Vec3(1, 2, 3));
    EXPECT_EQ(pose_from_json(pose_to_json(p)), p);
}

TEST(WorldModel, MissingFileIsConfigError)
{
    EXPECT_THROW(load_scene_file("/nonexistent/scene.json"), ConfigError);
}
