#ifndef SKILLTUNE_PDDL_PARSER_HPP
#define SKILLTUNE_PDDL_PARSER_HPP

#include <string_view>

#include "skilltune/pddl/pddl.hpp"

namespace skilltune::pddl {

// Supported subset: (:requirements :strips :typing), typed or untyped
// parameters, conjunctive preconditions and goals, add/delete effects.
// Keywords are case-insensitive; names keep their case.

Domain parse_domain(std::string_view text);
Problem parse_problem(std::string_view text);

} // namespace skilltune::pddl

#endif
