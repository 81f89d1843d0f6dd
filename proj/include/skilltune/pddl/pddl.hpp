#ifndef SKILLTUNE_PDDL_PDDL_HPP
#define SKILLTUNE_PDDL_PDDL_HPP

#include <string>
#include <vector>

#include "skilltune/common/error.hpp"

namespace skilltune::pddl {

/// Syntax or validation error. Line and column are 1-based; 0 when unknown.
class PddlError : public Error {
public:
    PddlError(const std::string& message, int line = 0, int column = 0);
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

struct TypedName {
    std::string name;
    std::string type = "object";
    bool operator==(const TypedName&) const = default;
};

struct Atom {
    std::string predicate;
    std::vector<std::string> args;
    auto operator<=>(const Atom&) const = default;
};

struct PredicateDecl {
    std::string name;
    std::vector<TypedName> params;
    bool operator==(const PredicateDecl&) const = default;
};

struct ActionSchema {
    std::string name;
    std::vector<TypedName> params;
    std::vector<Atom> precondition;
    std::vector<Atom> add_effects;
    std::vector<Atom> del_effects;
    bool operator==(const ActionSchema&) const = default;
};

struct Domain {
    std::string name;
    std::vector<std::string> requirements;
    std::vector<TypedName> types; // name + parent type
    std::vector<PredicateDecl> predicates;
    std::vector<ActionSchema> actions;

    const PredicateDecl* find_predicate(const std::string& name) const;
    const ActionSchema* find_action(const std::string& name) const;
    bool has_type(const std::string& type) const;
    /// True when `type` equals `ancestor` or derives from it.
    bool is_subtype(const std::string& type, const std::string& ancestor) const;
    bool operator==(const Domain&) const = default;
};

struct Problem {
    std::string name;
    std::string domain;
    std::vector<TypedName> objects;
    std::vector<Atom> init;
    std::vector<Atom> goal;
    bool operator==(const Problem&) const = default;
};

struct GroundAction {
    std::string name;
    std::vector<std::string> args;
    auto operator<=>(const GroundAction&) const = default;
};

using Plan = std::vector<GroundAction>;

std::string to_string(const Atom& a);
std::string to_string(const GroundAction& a);

std::string print_domain(const Domain& d);
std::string print_problem(const Problem& p);

/// Checks declared-before-use rules inside the domain.
void validate_domain(const Domain& d);
/// Checks the problem against its domain.
void validate_problem(const Domain& d, const Problem& p);

struct ValidationResult {
    bool valid = false;
    std::string reason;
};

/// Replays add/delete effects from the initial state and checks the goal.
ValidationResult validate_plan(const Domain& d, const Problem& p, const Plan& plan);

} // namespace skilltune::pddl

#endif
