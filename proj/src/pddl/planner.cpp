#include "skilltune/pddl/planner.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <queue>
#include <unordered_map>

namespace skilltune::pddl {

namespace {

using Bits = std::vector<std::uint64_t>;

struct BitsHash {
    std::size_t operator()(const Bits& b) const noexcept
    {
        std::uint64_t h = 1469598103934665603ULL;
        for (auto w : b) {
            h ^= w + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

bool test(const Bits& b, int i)
{
    return (b[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1U;
}

void set(Bits& b, int i, bool v)
{
    auto& w = b[static_cast<std::size_t>(i) >> 6];
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    w = v ? (w | mask) : (w & ~mask);
}

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Heuristic {
    double hmax;
    double hadd;
};

/// Max and additive relaxed-plan costs from one fixpoint sweep.
Heuristic relaxed_costs(const GroundTask& task, const Bits& state)
{
    const auto n = task.atoms.size();
    std::vector<double> cmax(n, kInf), cadd(n, kInf);
    for (std::size_t i = 0; i < n; ++i) {
        if (test(state, static_cast<int>(i))) {
            cmax[i] = 0.0;
            cadd[i] = 0.0;
        }
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& a : task.actions) {
            double m = 0.0, s = 0.0;
            bool reachable = true;
            for (int p : a.pre) {
                if (cmax[p] == kInf) {
                    reachable = false;
                    break;
                }
                m = std::max(m, cmax[p]);
                s += cadd[p];
            }
            if (!reachable) continue;
            for (int q : a.add) {
                if (1.0 + m < cmax[q]) {
                    cmax[q] = 1.0 + m;
                    changed = true;
                }
                if (1.0 + s < cadd[q]) {
                    cadd[q] = 1.0 + s;
                    changed = true;
                }
            }
        }
    }
    Heuristic h{0.0, 0.0};
    for (int g : task.goal) {
        if (cmax[g] == kInf) return {kInf, kInf};
        h.hmax = std::max(h.hmax, cmax[g]);
        h.hadd += cadd[g];
    }
    return h;
}

} // namespace

GroundTask ground(const Domain& d, const Problem& p)
{
    validate_domain(d);
    validate_problem(d, p);

    GroundTask task;
    std::map<Atom, int> index;
    auto intern = [&](const Atom& a) {
        auto [it, inserted] = index.emplace(a, static_cast<int>(task.atoms.size()));
        if (inserted) task.atoms.push_back(a);
        return it->second;
    };
    for (const auto& a : p.init) task.init.push_back(intern(a));
    for (const auto& a : p.goal) task.goal.push_back(intern(a));

    std::vector<TypedName> objects = p.objects;
    std::sort(objects.begin(), objects.end(), [](const TypedName& a, const TypedName& b) { return a.name < b.name; });

    std::vector<const ActionSchema*> schemas;
    for (const auto& a : d.actions) schemas.push_back(&a);
    std::sort(schemas.begin(), schemas.end(), [](auto* a, auto* b) { return a->name < b->name; });

    for (const auto* schema : schemas) {
        std::vector<std::vector<std::string>> candidates;
        for (const auto& param : schema->params) {
            std::vector<std::string> fits;
            for (const auto& o : objects) {
                if (d.is_subtype(o.type, param.type)) fits.push_back(o.name);
            }
            candidates.push_back(std::move(fits));
        }
        if (std::any_of(candidates.begin(), candidates.end(), [](const auto& c) { return c.empty(); })) {
            continue;
        }
        std::vector<std::size_t> choice(candidates.size(), 0);
        for (;;) {
            std::map<std::string, std::string> binding;
            GroundTask::Action ga;
            ga.label.name = schema->name;
            for (std::size_t i = 0; i < choice.size(); ++i) {
                const auto& obj = candidates[i][choice[i]];
                binding[schema->params[i].name] = obj;
                ga.label.args.push_back(obj);
            }
            auto bind = [&](const Atom& a) {
                Atom g{a.predicate, {}};
                for (const auto& arg : a.args) g.args.push_back(binding.at(arg));
                return intern(g);
            };
            for (const auto& a : schema->precondition) ga.pre.push_back(bind(a));
            for (const auto& a : schema->add_effects) ga.add.push_back(bind(a));
            for (const auto& a : schema->del_effects) ga.del.push_back(bind(a));
            task.actions.push_back(std::move(ga));

            std::size_t k = choice.size();
            while (k > 0) {
                --k;
                if (++choice[k] < candidates[k].size()) break;
                choice[k] = 0;
                if (k == 0) {
                    k = choice.size() + 1;
                    break;
                }
            }
            if (choice.empty() || k == choice.size() + 1) break;
        }
    }
    return task;
}

PlanResult plan(const Domain& d, const Problem& p)
{
    const GroundTask task = ground(d, p);
    const std::size_t words = (task.atoms.size() + 63) / 64;

    Bits init(words, 0);
    for (int a : task.init) set(init, a, true);

    auto satisfied = [&](const Bits& s, const std::vector<int>& atoms) {
        return std::all_of(atoms.begin(), atoms.end(), [&](int a) { return test(s, a); });
    };

    struct Node {
        Bits state;
        std::ptrdiff_t parent;
        std::ptrdiff_t action;
        int g;
    };
    struct Entry {
        double f;
        double hadd;
        std::size_t order;
        std::size_t node;
        bool operator>(const Entry& o) const
        {
            if (f != o.f) return f > o.f;
            if (hadd != o.hadd) return hadd > o.hadd;
            return order > o.order;
        }
    };

    PlanResult result;
    std::vector<Node> nodes;
    std::unordered_map<Bits, int, BitsHash> best_g;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
    std::size_t counter = 0;

    const auto h0 = relaxed_costs(task, init);
    if (h0.hmax == kInf) return result;
    nodes.push_back({init, -1, -1, 0});
    best_g[init] = 0;
    open.push({h0.hmax, h0.hadd, counter++, 0});

    while (!open.empty()) {
        const Entry e = open.top();
        open.pop();
        const Node node = nodes[e.node];
        if (best_g[node.state] < node.g) continue;
        ++result.expanded;
        if (satisfied(node.state, task.goal)) {
            result.solvable = true;
            for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(e.node); nodes[i].parent >= 0; i = nodes[i].parent) {
                result.plan.push_back(task.actions[static_cast<std::size_t>(nodes[i].action)].label);
            }
            std::reverse(result.plan.begin(), result.plan.end());
            return result;
        }
        for (std::size_t ai = 0; ai < task.actions.size(); ++ai) {
            const auto& a = task.actions[ai];
            if (!satisfied(node.state, a.pre)) continue;
            Bits next = node.state;
            for (int q : a.del) set(next, q, false);
            for (int q : a.add) set(next, q, true);
            const int g = node.g + 1;
            auto it = best_g.find(next);
            if (it != best_g.end() && it->second <= g) continue;
            const auto h = relaxed_costs(task, next);
            if (h.hmax == kInf) continue;
            best_g[next] = g;
            nodes.push_back({std::move(next), static_cast<std::ptrdiff_t>(e.node), static_cast<std::ptrdiff_t>(ai), g});
            open.push({g + h.hmax, h.hadd, counter++, nodes.size() - 1});
        }
    }
    return result;
}

} // namespace skilltune::pddl
