#ifndef SKILLTUNE_PDDL_PLANNER_HPP
#define SKILLTUNE_PDDL_PLANNER_HPP

#include <cstddef>
#include <vector>

#include "skilltune/pddl/pddl.hpp"

namespace skilltune::pddl {

/// A fully instantiated STRIPS task over interned atoms.
struct GroundTask {
    std::vector<Atom> atoms;
    struct Action {
        GroundAction label;
        std::vector<int> pre;
        std::vector<int> add;
        std::vector<int> del;
    };
    std::vector<Action> actions; // sorted by (name, args)
    std::vector<int> init;
    std::vector<int> goal;
};

/// Eager grounding over all type-consistent argument tuples.
GroundTask ground(const Domain& d, const Problem& p);

struct PlanResult {
    bool solvable = false;
    Plan plan;
    std::size_t expanded = 0;
};

/// A* over grounded states. Returns an unsolvable result instead of throwing
/// when the goal cannot be reached.
PlanResult plan(const Domain& d, const Problem& p);

} // namespace skilltune::pddl

#endif
