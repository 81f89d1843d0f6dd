#include <gtest/gtest.h>

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "skilltune/pddl/generate.hpp"
#include "skilltune/pddl/parser.hpp"
#include "skilltune/pddl/planner.hpp"

using namespace skilltune;
using namespace skilltune::pddl;

namespace {

std::string read_file(const std::string& name)
{
    std::ifstream in(std::string(SKILLTUNE_TEST_DATA) + "/" + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* kBlocks = R"(
(define (domain blocks)
  (:requirements :strips)
  (:predicates (on ?x ?y) (ontable ?x) (clear ?x) (handempty) (holding ?x))
  (:action pick-up
    :parameters (?x)
    :precondition (and (clear ?x) (ontable ?x) (handempty))
    :effect (and (not (ontable ?x)) (not (clear ?x)) (not (handempty)) (holding ?x)))
  (:action put-down
    :parameters (?x)
    :precondition (holding ?x)
    :effect (and (not (holding ?x)) (clear ?x) (handempty) (ontable ?x)))
  (:action stack
    :parameters (?x ?y)
    :precondition (and (holding ?x) (clear ?y))
    :effect (and (not (holding ?x)) (not (clear ?y)) (clear ?x) (handempty) (on ?x ?y)))
  (:action unstack
    :parameters (?x ?y)
    :precondition (and (on ?x ?y) (clear ?x) (handempty))
    :effect (and (holding ?x) (clear ?y) (not (clear ?x)) (not (handempty)) (not (on ?x ?y)))))
)";

// Towers as bottom-to-top lists -> on/ontable/clear atoms.
std::vector<Atom> tower_atoms(const std::vector<std::vector<std::string>>& towers)
{
    std::vector<Atom> out;
    for (const auto& t : towers) {
        out.push_back({"ontable", {t.front()}});
        for (std::size_t i = 1; i < t.size(); ++i) out.push_back({"on", {t[i], t[i - 1]}});
        out.push_back({"clear", {t.back()}});
    }
    return out;
}

std::vector<std::vector<std::string>> random_towers(std::vector<std::string> blocks, std::mt19937_64& rng)
{
    std::shuffle(blocks.begin(), blocks.end(), rng);
    std::vector<std::vector<std::string>> towers;
    std::bernoulli_distribution new_tower(0.4);
    for (const auto& b : blocks) {
        if (towers.empty() || new_tower(rng)) towers.emplace_back();
        towers.back().push_back(b);
    }
    return towers;
}

// Breadth-first oracle with its own naive grounding (untyped domains).
int bfs_plan_length(const Domain& d, const Problem& p)
{
    using State = std::set<Atom>;
    std::vector<std::string> objects;
    for (const auto& o : p.objects) objects.push_back(o.name);

    struct Ground {
        std::vector<Atom> pre, add, del;
    };
    std::vector<Ground> actions;
    for (const auto& a : d.actions) {
        const std::size_t k = a.params.size();
        std::vector<std::size_t> idx(k, 0);
        while (true) {
            std::map<std::string, std::string> sub;
            for (std::size_t i = 0; i < k; ++i) sub[a.params[i].name] = objects[idx[i]];
            auto inst = [&](const std::vector<Atom>& atoms) {
                std::vector<Atom> out;
                for (auto at : atoms) {
                    for (auto& x : at.args) {
                        if (sub.count(x)) x = sub[x];
                    }
                    out.push_back(at);
                }
                return out;
            };
            actions.push_back({inst(a.precondition), inst(a.add_effects), inst(a.del_effects)});
            std::size_t i = 0;
            while (i < k && ++idx[i] == objects.size()) idx[i++] = 0;
            if (i == k) break;
        }
    }
    auto satisfied = [](const State& s, const std::vector<Atom>& atoms) {
        return std::all_of(atoms.begin(), atoms.end(), [&](const Atom& a) { return s.count(a) != 0; });
    };
    State init(p.init.begin(), p.init.end());
    std::map<State, int> dist{{init, 0}};
    std::deque<State> queue{init};
    while (!queue.empty()) {
        State s = queue.front();
        queue.pop_front();
        if (satisfied(s, p.goal)) return dist[s];
        for (const auto& a : actions) {
            if (!satisfied(s, a.pre)) continue;
            State n = s;
            for (const auto& x : a.del) n.erase(x);
            for (const auto& x : a.add) n.insert(x);
            if (dist.emplace(n, dist[s] + 1).second) queue.push_back(n);
        }
    }
    return -1;
}

Problem random_blocks_problem(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> count(2, 6);
    const int n = count(rng);
    std::vector<std::string> blocks;
    for (int i = 0; i < n; ++i) blocks.push_back("b" + std::to_string(i));
    Problem p;
    p.name = "random";
    p.domain = "blocks";
    for (const auto& b : blocks) p.objects.push_back({b, "object"});
    p.init = tower_atoms(random_towers(blocks, rng));
    p.init.push_back({"handempty", {}});
    auto goal = tower_atoms(random_towers(blocks, rng));
    std::shuffle(goal.begin(), goal.end(), rng);
    std::uniform_int_distribution<std::size_t> keep(1, goal.size());
    goal.resize(keep(rng));
    p.goal = goal;
    return p;
}

} // namespace

TEST(Pddl, ParsesGripper)
{
    const auto d = parse_domain(read_file("gripper-domain.pddl"));
    const auto p = parse_problem(read_file("gripper-problem.pddl"));
    EXPECT_EQ(d.name, "gripper");
    EXPECT_EQ(d.actions.size(), 3u);
    EXPECT_EQ(p.objects.size(), 6u);
    validate_domain(d);
    validate_problem(d, p);
    const auto r = plan(d, p);
    ASSERT_TRUE(r.solvable);
    EXPECT_EQ(r.plan.size(), 5u);
    EXPECT_TRUE(validate_plan(d, p, r.plan).valid);
    EXPECT_EQ(static_cast<int>(r.plan.size()), bfs_plan_length(d, p));
}

TEST(Pddl, PrintParseRoundTrip)
{
    const auto d = parse_domain(read_file("gripper-domain.pddl"));
    const auto p = parse_problem(read_file("gripper-problem.pddl"));
    EXPECT_EQ(parse_domain(print_domain(d)), d);
    EXPECT_EQ(parse_problem(print_problem(p)), p);
}

TEST(Pddl, KeywordsAreCaseInsensitive)
{
    const auto d = parse_domain("(DEFINE (DOMAIN x) (:REQUIREMENTS :STRIPS) (:PREDICATES (p ?a))"
                                " (:ACTION A :PARAMETERS (?a) :PRECONDITION (p ?a) :EFFECT (NOT (p ?a))))");
    ASSERT_EQ(d.actions.size(), 1u);
    EXPECT_EQ(d.actions[0].del_effects.size(), 1u);
}

TEST(Pddl, SyntaxErrorsCarryLocation)
{
    try {
        parse_domain("(define (domain x)\n  (:predicates (p ?a)\n");
        FAIL() << "expected PddlError";
    } catch (const PddlError& e) {
        EXPECT_GT(e.line(), 0);
    }
    try {
        parse_domain("(define (domain x))\n)");
        FAIL() << "expected PddlError";
    } catch (const PddlError& e) {
        EXPECT_EQ(e.line(), 2);
    }
}

TEST(Pddl, ValidationRejectsUnknownNames)
{
    const auto d = parse_domain(read_file("gripper-domain.pddl"));
    auto p = parse_problem(read_file("gripper-problem.pddl"));
    p.init.push_back({"levitating", {"ball1"}});
    EXPECT_THROW(validate_problem(d, p), PddlError);

    auto q = parse_problem(read_file("gripper-problem.pddl"));
    q.goal.push_back({"at", {"ball9", "roomb"}});
    EXPECT_THROW(validate_problem(d, q), PddlError);

    EXPECT_THROW(parse_domain("(define (domain x) (:predicates (p ?a))"
                              " (:action A :parameters (?a) :precondition (q ?a) :effect (p ?a)))"),
                 PddlError);
}

TEST(Pddl, PlanValidatorDetectsBadPlans)
{
    const auto d = parse_domain(read_file("gripper-domain.pddl"));
    const auto p = parse_problem(read_file("gripper-problem.pddl"));
    EXPECT_FALSE(validate_plan(d, p, {{"move", {"rooma", "roomb"}}}).valid);
    EXPECT_FALSE(validate_plan(d, p, {{"drop", {"ball1", "rooma", "left"}}}).valid);
}

TEST(Pddl, RandomBlocksAgreeWithBfs)
{
    const auto d = parse_domain(kBlocks);
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 100; ++i) {
        const auto p = random_blocks_problem(rng);
        const auto r = plan(d, p);
        const int oracle = bfs_plan_length(d, p);
        ASSERT_GE(oracle, 0);
        ASSERT_TRUE(r.solvable) << i;
        EXPECT_EQ(static_cast<int>(r.plan.size()), oracle) << i;
        EXPECT_TRUE(validate_plan(d, p, r.plan).valid) << i;
    }
}

TEST(Pddl, DeletingRequiredInitLiteralMakesUnsolvable)
{
    const auto d = parse_domain(kBlocks);
    std::mt19937_64 rng(7);
    int checked = 0;
    for (int i = 0; i < 100 && checked < 20; ++i) {
        auto p = random_blocks_problem(rng);
        if (plan(d, p).plan.empty()) continue;
        std::erase(p.init, Atom{"handempty", {}});
        EXPECT_FALSE(plan(d, p).solvable);
        EXPECT_EQ(bfs_plan_length(d, p), -1);
        ++checked;
    }
    EXPECT_EQ(checked, 20);
}

TEST(Pddl, PlannerIsDeterministic)
{
    const auto d = parse_domain(kBlocks);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 10; ++i) {
        const auto p = random_blocks_problem(rng);
        EXPECT_EQ(plan(d, p).plan, plan(d, p).plan);
    }
}

TEST(Pddl, GroundingRespectsTypes)
{
    const auto d = parse_domain(read_file("gripper-domain.pddl"));
    const auto p = parse_problem(read_file("gripper-problem.pddl"));
    const auto g = ground(d, p);
    // move: 2x2 rooms, pick/drop: 2 balls x 2 rooms x 2 grippers each
    EXPECT_EQ(g.actions.size(), 4u + 8u + 8u);
    EXPECT_TRUE(std::is_sorted(g.actions.begin(), g.actions.end(),
                               [](const auto& a, const auto& b) { return a.label < b.label; }));
}

TEST(Pddl, ActionNames)
{
    EXPECT_EQ(action_name_for("GoToLinear"), "go-to-linear");
    EXPECT_EQ(action_name_for("PegInsertion"), "peg-insertion");
    EXPECT_EQ(action_name_for("Push"), "push");
}
