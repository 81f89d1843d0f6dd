#include "skilltune/pddl/pddl.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace skilltune::pddl {

PddlError::PddlError(const std::string& message, int line, int column)
    : Error(line > 0 ? message + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"
                     : message),
      line_(line), column_(column)
{
}

const PredicateDecl* Domain::find_predicate(const std::string& n) const
{
    for (const auto& p : predicates) {
        if (p.name == n) return &p;
    }
    return nullptr;
}

const ActionSchema* Domain::find_action(const std::string& n) const
{
    for (const auto& a : actions) {
        if (a.name == n) return &a;
    }
    return nullptr;
}

bool Domain::has_type(const std::string& type) const
{
    if (type == "object") return true;
    return std::any_of(types.begin(), types.end(), [&](const TypedName& t) { return t.name == type; });
}

bool Domain::is_subtype(const std::string& type, const std::string& ancestor) const
{
    if (ancestor == "object" || type == ancestor) return true;
    std::string current = type;
    for (std::size_t guard = 0; guard <= types.size(); ++guard) {
        auto it = std::find_if(types.begin(), types.end(), [&](const TypedName& t) { return t.name == current; });
        if (it == types.end() || it->type == current) return false;
        current = it->type;
        if (current == ancestor) return true;
    }
    return false;
}

std::string to_string(const Atom& a)
{
    std::string s = "(" + a.predicate;
    for (const auto& arg : a.args) {
        s += " " + arg;
    }
    return s + ")";
}

std::string to_string(const GroundAction& a)
{
    std::string s = "(" + a.name;
    for (const auto& arg : a.args) {
        s += " " + arg;
    }
    return s + ")";
}

namespace {

void print_typed_list(std::ostringstream& out, const std::vector<TypedName>& names)
{
    bool first = true;
    for (const auto& n : names) {
        if (!first) out << ' ';
        first = false;
        out << n.name << " - " << n.type;
    }
}

void print_conjunction(std::ostringstream& out, const std::vector<Atom>& pos, const std::vector<Atom>& neg,
                       const std::string& indent)
{
    out << "(and";
    for (const auto& a : pos) {
        out << '\n' << indent << "  " << to_string(a);
    }
    for (const auto& a : neg) {
        out << '\n' << indent << "  (not " << to_string(a) << ')';
    }
    out << ')';
}

} // namespace

std::string print_domain(const Domain& d)
{
    std::ostringstream out;
    out << "(define (domain " << d.name << ")\n";
    out << "  (:requirements";
    for (const auto& r : d.requirements) {
        out << ' ' << r;
    }
    out << ")\n";
    if (!d.types.empty()) {
        out << "  (:types";
        for (const auto& t : d.types) {
            out << "\n    " << t.name << " - " << t.type;
        }
        out << ")\n";
    }
    out << "  (:predicates";
    for (const auto& p : d.predicates) {
        out << "\n    (" << p.name;
        if (!p.params.empty()) {
            out << ' ';
            print_typed_list(out, p.params);
        }
        out << ')';
    }
    out << ")\n";
    for (const auto& a : d.actions) {
        out << "  (:action " << a.name << "\n    :parameters (";
        print_typed_list(out, a.params);
        out << ")\n    :precondition ";
        print_conjunction(out, a.precondition, {}, "    ");
        out << "\n    :effect ";
        print_conjunction(out, a.add_effects, a.del_effects, "    ");
        out << ")\n";
    }
    out << ")\n";
    return out.str();
}

std::string print_problem(const Problem& p)
{
    std::ostringstream out;
    out << "(define (problem " << p.name << ")\n";
    out << "  (:domain " << p.domain << ")\n";
    out << "  (:objects";
    for (const auto& o : p.objects) {
        out << "\n    " << o.name << " - " << o.type;
    }
    out << ")\n  (:init";
    for (const auto& a : p.init) {
        out << "\n    " << to_string(a);
    }
    out << ")\n  (:goal ";
    print_conjunction(out, p.goal, {}, "  ");
    out << "))\n";
    return out.str();
}

void validate_domain(const Domain& d)
{
    for (const auto& t : d.types) {
        if (!d.has_type(t.type)) {
            throw PddlError("type '" + t.name + "' derives from undeclared type '" + t.type + "'");
        }
    }
    for (const auto& p : d.predicates) {
        for (const auto& param : p.params) {
            if (!d.has_type(param.type)) {
                throw PddlError("predicate '" + p.name + "' uses undeclared type '" + param.type + "'");
            }
        }
    }
    for (const auto& a : d.actions) {
        std::set<std::string> vars;
        for (const auto& param : a.params) {
            if (!d.has_type(param.type)) {
                throw PddlError("action '" + a.name + "' parameter " + param.name + " has undeclared type '" +
                                param.type + "'");
            }
            vars.insert(param.name);
        }
        auto check = [&](const Atom& atom) {
            const auto* decl = d.find_predicate(atom.predicate);
            if (!decl) {
                throw PddlError("action '" + a.name + "' uses undeclared predicate '" + atom.predicate + "'");
            }
            if (decl->params.size() != atom.args.size()) {
                throw PddlError("action '" + a.name + "' uses predicate '" + atom.predicate + "' with wrong arity");
            }
            for (const auto& arg : atom.args) {
                if (!vars.contains(arg)) {
                    throw PddlError("action '" + a.name + "' uses unbound term '" + arg + "'");
                }
            }
        };
        std::for_each(a.precondition.begin(), a.precondition.end(), check);
        std::for_each(a.add_effects.begin(), a.add_effects.end(), check);
        std::for_each(a.del_effects.begin(), a.del_effects.end(), check);
    }
}

void validate_problem(const Domain& d, const Problem& p)
{
    if (p.domain != d.name) {
        throw PddlError("problem targets domain '" + p.domain + "' but domain is '" + d.name + "'");
    }
    std::map<std::string, std::string> objects;
    for (const auto& o : p.objects) {
        if (!d.has_type(o.type)) {
            throw PddlError("object '" + o.name + "' has undeclared type '" + o.type + "'");
        }
        if (!objects.emplace(o.name, o.type).second) {
            throw PddlError("object '" + o.name + "' declared twice");
        }
    }
    auto check = [&](const Atom& atom, const char* where) {
        const auto* decl = d.find_predicate(atom.predicate);
        if (!decl) {
            throw PddlError(std::string(where) + " uses undeclared predicate '" + atom.predicate + "'");
        }
        if (decl->params.size() != atom.args.size()) {
            throw PddlError(std::string(where) + " uses predicate '" + atom.predicate + "' with wrong arity");
        }
        for (std::size_t i = 0; i < atom.args.size(); ++i) {
            auto it = objects.find(atom.args[i]);
            if (it == objects.end()) {
                throw PddlError(std::string(where) + " references undeclared object '" + atom.args[i] + "'");
            }
            if (!d.is_subtype(it->second, decl->params[i].type)) {
                throw PddlError(std::string(where) + " literal " + to_string(atom) + " violates argument types");
            }
        }
    };
    for (const auto& a : p.init) check(a, "init");
    for (const auto& a : p.goal) check(a, "goal");
}

ValidationResult validate_plan(const Domain& d, const Problem& p, const Plan& plan)
{
    std::set<Atom> state(p.init.begin(), p.init.end());
    std::map<std::string, std::string> object_types;
    for (const auto& o : p.objects) {
        object_types[o.name] = o.type;
    }
    for (std::size_t step = 0; step < plan.size(); ++step) {
        const auto& ga = plan[step];
        const auto* schema = d.find_action(ga.name);
        const std::string where = "step " + std::to_string(step + 1) + " " + to_string(ga);
        if (!schema) {
            return {false, where + ": unknown action"};
        }
        if (schema->params.size() != ga.args.size()) {
            return {false, where + ": wrong number of arguments"};
        }
        std::map<std::string, std::string> binding;
        for (std::size_t i = 0; i < ga.args.size(); ++i) {
            auto it = object_types.find(ga.args[i]);
            if (it == object_types.end() || !d.is_subtype(it->second, schema->params[i].type)) {
                return {false, where + ": argument '" + ga.args[i] + "' has the wrong type"};
            }
            binding[schema->params[i].name] = ga.args[i];
        }
        auto ground = [&](const Atom& a) {
            Atom g{a.predicate, {}};
            for (const auto& arg : a.args) {
                g.args.push_back(binding.at(arg));
            }
            return g;
        };
        for (const auto& pre : schema->precondition) {
            if (!state.contains(ground(pre))) {
                return {false, where + ": precondition " + to_string(ground(pre)) + " does not hold"};
            }
        }
        for (const auto& del : schema->del_effects) {
            state.erase(ground(del));
        }
        for (const auto& add : schema->add_effects) {
            state.insert(ground(add));
        }
    }
    for (const auto& g : p.goal) {
        if (!state.contains(g)) {
            return {false, "goal " + to_string(g) + " does not hold at the end"};
        }
    }
    return {true, {}};
}

} // namespace skilltune::pddl
