// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any failure.
// Usage: acceptance [--out DIR] [--only N[,N...]]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <deque>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "skilltune/bt/behavior_tree.hpp"
#include "skilltune/common/seeding.hpp"
#include "skilltune/harness/episode.hpp"
#include "skilltune/harness/learning.hpp"
#include "skilltune/harness/scenario.hpp"
#include "skilltune/opt/acquisition.hpp"
#include "skilltune/opt/gp.hpp"
#include "skilltune/opt/mobo.hpp"
#include "skilltune/opt/pareto.hpp"
#include "skilltune/pddl/parser.hpp"
#include "skilltune/pddl/planner.hpp"
#include "skilltune/rewards/rewards.hpp"
#include "skilltune/sim/impedance.hpp"
#include "skilltune/sim/kinematics.hpp"
#include "skilltune/sim/simulator.hpp"

using namespace skilltune;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

// Collects failed sub-checks of one criterion.
struct Checker {
    int failures = 0;
    std::ostringstream notes;

    void expect(bool ok, const std::string& what)
    {
        if (!ok && failures++ < 5) notes << "[" << what << "] ";
    }
};

std::string fmt(double v, int prec = 4)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------- 1: BT

using bt::Status;

bt::NodePtr scripted(std::vector<Status> script, int& ticks)
{
    auto step = std::make_shared<std::size_t>(0);
    return std::make_unique<bt::ActionLeaf>("leaf", [script, step, &ticks](bt::Blackboard&) {
        ++ticks;
        const Status s = script[std::min(*step, script.size() - 1)];
        ++*step;
        return s;
    });
}

Outcome criterion_bt()
{
    const Status all[] = {Status::success, Status::failure, Status::running};
    auto seq = [](Status a, Status b) { return a != Status::success ? a : b; };
    auto sel = [](Status a, Status b) { return a != Status::failure ? a : b; };
    auto par = [](Status a, Status b) {
        if (a == Status::failure || b == Status::failure) return Status::failure;
        return a == Status::success && b == Status::success ? Status::success : Status::running;
    };
    Checker c;
    int rows = 0;
    for (Status a : all) {
        for (Status b : all) {
            for (int kind = 0; kind < 3; ++kind) {
                int ta = 0, tb = 0;
                std::vector<bt::NodePtr> kids;
                kids.push_back(scripted({a}, ta));
                kids.push_back(scripted({b}, tb));
                bt::NodePtr n;
                Status expected;
                int expected_b;
                if (kind == 0) {
                    n = std::make_unique<bt::Sequence>("n", std::move(kids));
                    expected = seq(a, b);
                    expected_b = a == Status::success;
                } else if (kind == 1) {
                    n = std::make_unique<bt::Selector>("n", std::move(kids));
                    expected = sel(a, b);
                    expected_b = a == Status::failure;
                } else {
                    n = std::make_unique<bt::Parallel>("n", std::move(kids));
                    expected = par(a, b);
                    expected_b = 1;
                }
                bt::Blackboard bb;
                const Status got = n->tick(bb);
                const std::string row = std::to_string(kind) + ":" + to_string(a) + "," + to_string(b);
                c.expect(got == expected, row);
                c.expect(ta == 1 && tb == expected_b, row + " ticks");
                ++rows;
            }
        }
    }

    int t1 = 0, t2 = 0, t3 = 0;
    std::vector<bt::NodePtr> kids;
    kids.push_back(scripted({Status::success}, t1));
    kids.push_back(scripted({Status::running, Status::success}, t2));
    kids.push_back(scripted({Status::running, Status::running, Status::success}, t3));
    bt::SequenceStar root("root", std::move(kids));
    bt::Blackboard bb;
    const std::vector<std::array<int, 4>> expected = {
        {int(Status::running), 1, 1, 0}, {int(Status::running), 1, 2, 1}, {int(Status::running), 1, 2, 2},
        {int(Status::success), 1, 2, 3}};
    for (std::size_t k = 0; k < expected.size(); ++k) {
        const Status s = root.tick(bb);
        const std::array<int, 4> got = {int(s), t1, t2, t3};
        c.expect(got == expected[k], "sequence-star tick " + std::to_string(k + 1));
    }
    return {c.failures == 0, std::to_string(rows) + " truth-table rows, 4 sequence-star ticks " + c.notes.str()};
}

// ---------------------------------------------------------------- 2: planner

const char* kBlocks = R"(
(define (domain blocks)
  (:requirements :strips)
  (:predicates (on ?x ?y) (ontable ?x) (clear ?x) (handempty) (holding ?x))
  (:action pick-up :parameters (?x)
    :precondition (and (clear ?x) (ontable ?x) (handempty))
    :effect (and (not (ontable ?x)) (not (clear ?x)) (not (handempty)) (holding ?x)))
  (:action put-down :parameters (?x)
    :precondition (holding ?x)
    :effect (and (not (holding ?x)) (clear ?x) (handempty) (ontable ?x)))
  (:action stack :parameters (?x ?y)
    :precondition (and (holding ?x) (clear ?y))
    :effect (and (not (holding ?x)) (not (clear ?y)) (clear ?x) (handempty) (on ?x ?y)))
  (:action unstack :parameters (?x ?y)
    :precondition (and (on ?x ?y) (clear ?x) (handempty))
    :effect (and (holding ?x) (clear ?y) (not (clear ?x)) (not (handempty)) (not (on ?x ?y)))))
)";

std::vector<pddl::Atom> tower_atoms(const std::vector<std::vector<std::string>>& towers)
{
    std::vector<pddl::Atom> out;
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
    std::bernoulli_distribution fresh(0.4);
    for (const auto& b : blocks) {
        if (towers.empty() || fresh(rng)) towers.emplace_back();
        towers.back().push_back(b);
    }
    return towers;
}

// Breadth-first search over naively grounded actions.
int bfs_plan_length(const pddl::Domain& d, const pddl::Problem& p)
{
    using State = std::set<pddl::Atom>;
    struct Ground {
        std::vector<pddl::Atom> pre, add, del;
    };
    std::vector<Ground> actions;
    for (const auto& a : d.actions) {
        const std::size_t k = a.params.size();
        std::vector<std::size_t> idx(k, 0);
        while (true) {
            std::map<std::string, std::string> sub;
            for (std::size_t i = 0; i < k; ++i) sub[a.params[i].name] = p.objects[idx[i]].name;
            auto inst = [&](std::vector<pddl::Atom> atoms) {
                for (auto& at : atoms) {
                    for (auto& x : at.args) {
                        if (sub.count(x)) x = sub[x];
                    }
                }
                return atoms;
            };
            actions.push_back({inst(a.precondition), inst(a.add_effects), inst(a.del_effects)});
            std::size_t i = 0;
            while (i < k && ++idx[i] == p.objects.size()) idx[i++] = 0;
            if (i == k) break;
        }
    }
    auto holds = [](const State& s, const std::vector<pddl::Atom>& atoms) {
        return std::all_of(atoms.begin(), atoms.end(), [&](const pddl::Atom& a) { return s.count(a) != 0; });
    };
    const State init(p.init.begin(), p.init.end());
    std::map<State, int> dist{{init, 0}};
    std::deque<State> queue{init};
    while (!queue.empty()) {
        const State s = queue.front();
        queue.pop_front();
        if (holds(s, p.goal)) return dist[s];
        for (const auto& a : actions) {
            if (!holds(s, a.pre)) continue;
            State n = s;
            for (const auto& x : a.del) n.erase(x);
            for (const auto& x : a.add) n.insert(x);
            if (dist.emplace(n, dist[s] + 1).second) queue.push_back(n);
        }
    }
    return -1;
}

Outcome criterion_planner()
{
    Checker c;
    const std::map<std::string, std::vector<std::string>> expected = {{"peg", {"GoToLinear", "PegInsertion"}},
                                                                      {"push", {"GoToLinear", "Push"}}};
    std::string plans;
    for (const auto& [name, skills] : expected) {
        const auto cfg = harness::load_scenario(fs::path(SKILLTUNE_SCENARIOS) / (name + ".json"));
        const auto task = harness::prepare(cfg);
        std::vector<std::string> got;
        for (const auto& inst : task.plan) got.push_back(inst.skill);
        c.expect(got == skills, name + " plan");
        plans += name + "=" + std::to_string(got.size()) + " skills ";
    }

    const auto domain = pddl::parse_domain(kBlocks);
    std::mt19937_64 rng(2024);
    int agree = 0;
    for (int i = 0; i < 100; ++i) {
        const int n = std::uniform_int_distribution<int>(2, 6)(rng);
        std::vector<std::string> blocks;
        for (int b = 0; b < n; ++b) blocks.push_back("b" + std::to_string(b));
        pddl::Problem p;
        p.name = "random";
        p.domain = "blocks";
        for (const auto& b : blocks) p.objects.push_back({b, "object"});
        p.init = tower_atoms(random_towers(blocks, rng));
        p.init.push_back({"handempty", {}});
        auto goal = tower_atoms(random_towers(blocks, rng));
        std::shuffle(goal.begin(), goal.end(), rng);
        goal.resize(std::uniform_int_distribution<std::size_t>(1, goal.size())(rng));
        p.goal = goal;

        const auto r = pddl::plan(domain, p);
        const int oracle = bfs_plan_length(domain, p);
        const bool ok = r.solvable && static_cast<int>(r.plan.size()) == oracle &&
                        pddl::validate_plan(domain, p, r.plan).valid;
        c.expect(ok, "instance " + std::to_string(i));
        agree += ok;
    }
    return {c.failures == 0, plans + std::to_string(agree) + "/100 STRIPS instances match BFS " + c.notes.str()};
}

// ---------------------------------------------------------------- 3: controller

Eigen::MatrixXd random_matrix(int r, int cols, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::MatrixXd m(r, cols);
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < cols; ++j) m(i, j) = u(rng);
    }
    return m;
}

Outcome criterion_controller()
{
    Checker c;
    std::mt19937_64 rng(11);
    double torque_err = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 7;
        const Eigen::MatrixXd J = random_matrix(6, n, rng);
        const Eigen::MatrixXd A = random_matrix(6, 6, rng), B = random_matrix(6, 6, rng);
        const Mat6 K = A * A.transpose() + Mat6::Identity();
        const Mat6 D = B * B.transpose() + Mat6::Identity();
        const Vec6 xe = random_matrix(6, 1, rng);
        const Eigen::VectorXd qd = random_matrix(n, 1, rng);
        const Vec6 F = random_matrix(6, 1, rng);
        double v[6], w[6];
        for (int i = 0; i < 6; ++i) {
            v[i] = 0.0;
            for (int j = 0; j < n; ++j) v[i] += J(i, j) * qd[j];
        }
        for (int i = 0; i < 6; ++i) {
            w[i] = 0.0;
            for (int j = 0; j < 6; ++j) w[i] += -K(i, j) * xe[j] - D(i, j) * v[j];
        }
        const auto tau = sim::impedance_torque(qd, xe, K, D, J);
        const auto tau_ext = sim::external_wrench_torque(F, J);
        for (int k = 0; k < n; ++k) {
            double t = 0.0, te = 0.0;
            for (int i = 0; i < 6; ++i) {
                t += J(i, k) * w[i];
                te += J(i, k) * F[i];
            }
            torque_err = std::max({torque_err, std::abs(tau[k] - t), std::abs(tau_ext[k] - te)});
        }
    }
    c.expect(torque_err <= 1e-9, "torque error " + fmt(torque_err));

    sim::PlanarChain chain({0.4, 0.3, 0.2});
    double jac_err = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const Eigen::VectorXd q = random_matrix(3, 1, rng) * kPi;
        const auto J = chain.jacobian(q);
        const double h = 1e-6;
        for (int j = 0; j < 3; ++j) {
            Eigen::VectorXd qp = q, qm = q;
            qp[j] += h;
            qm[j] -= h;
            const Vec3 d = (chain.forward(qp) - chain.forward(qm)) / (2.0 * h);
            const Vec3 analytic(J(0, j), J(1, j), J(5, j));
            jac_err = std::max(jac_err, (analytic - d).norm() / std::max(1.0, analytic.norm()));
        }
    }
    c.expect(jac_err <= 1e-6, "jacobian error " + fmt(jac_err));

    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> k(100.0, 2000.0);
    int passive = 0;
    for (int trial = 0; trial < 100; ++trial) {
        sim::SimConfig cfg;
        cfg.fidelity = trial % 4 == 0 ? sim::Fidelity::arm : sim::Fidelity::cartesian;
        const sim::Simulator sim(cfg);
        Pose start{Vec3(0.5, 0.0, 0.4), Quat::Identity()};
        if (cfg.fidelity == sim::Fidelity::arm) {
            Eigen::VectorXd q(7);
            q << 0.0, 0.6, 0.0, -1.2, 0.0, 0.8, 0.0;
            start = sim.arm().forward(q + 0.2 * random_matrix(7, 1, rng));
        }
        sim::Action a;
        a.reference = start;
        a.reference.position += 0.03 * Vec3(u(rng), u(rng), u(rng));
        a.reference.orientation =
            (start.orientation * Quat(Eigen::AngleAxisd(0.1 * u(rng), Vec3::UnitZ()))).normalized();
        a.stiffness << k(rng), k(rng), k(rng), 0.05 * k(rng), 0.05 * k(rng), 0.05 * k(rng);
        auto s = sim.initial_state(start);
        s.stiffness = a.stiffness;
        s.twist = 0.05 * Vec6(random_matrix(6, 1, rng));
        if (cfg.fidelity == sim::Fidelity::arm) s.qd = 0.05 * random_matrix(7, 1, rng);
        double e = sim.energy(s, a.reference);
        const double e0 = e;
        bool ok = true;
        for (int i = 0; i < 50; ++i) {
            s = sim.step(s, a);
            const double next = sim.energy(s, a.reference);
            ok = ok && next <= e * (1.0 + 1e-3) + 1e-9;
            e = next;
        }
        ok = ok && e < e0;
        passive += ok;
    }
    c.expect(passive == 100, "passive " + std::to_string(passive) + "/100");
    return {c.failures == 0, "max torque err " + fmt(torque_err) + ", max jacobian rel err " + fmt(jac_err) + ", " +
                                 std::to_string(passive) + "/100 passive episodes " + c.notes.str()};
}

// ---------------------------------------------------------------- 4: rewards

Outcome criterion_rewards()
{
    Checker c;
    const double r1 = rewards::reward_ee_box(0.5, 0.0);
    const double r2 = rewards::reward_exp(2.0, 1.0, 0.0);
    c.expect(std::abs(r1 - 1.0) <= 1e-12, "ee-box");
    c.expect(std::abs(r2 - std::exp(-1.0)) <= 1e-12, "exp");

    const double dt = 0.02, T = 3.0;
    std::vector<double> f;
    for (int i = 0; i <= 150; ++i) f.push_back(3.0 + 2.0 * i * dt);
    const double e_lin = std::abs(rewards::reward_applied_wrench(f, dt) - (3.0 * T + T * T));

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 50.0);
    std::vector<double> g(321);
    for (auto& x : g) x = u(rng);
    double oracle = 0.0;
    for (std::size_t i = 0; i + 1 < g.size(); ++i) oracle += (g[i] + g[i + 1]) / 2.0 * 0.002;
    const double e_trap = std::abs(rewards::reward_applied_wrench(g, 0.002) - oracle);
    c.expect(e_lin <= 1e-9, "linear quadrature");
    c.expect(e_trap <= 1e-9, "trapezoid quadrature");
    return {c.failures == 0, "r_box(0.5,0)=" + fmt(r1, 15) + " r_exp(2,1,0)=" + fmt(r2, 15) + " quadrature err " +
                                 fmt(std::max(e_lin, e_trap)) + " " + c.notes.str()};
}

// ---------------------------------------------------------------- 5: GP / EI / BO

double matern(double r, double ell, double sf2)
{
    const double s = std::sqrt(5.0) * r / ell;
    return sf2 * (1.0 + s + s * s / 3.0) * std::exp(-s);
}

Outcome criterion_gp()
{
    Checker c;
    Eigen::MatrixXd X(2, 1);
    X << 0.2, 0.7;
    Eigen::VectorXd y(2);
    y << 1.0, -0.5;
    opt::GpHyper h;
    h.log_lengths = Eigen::VectorXd::Constant(1, std::log(0.4));
    h.log_signal = std::log(1.5);
    h.log_noise = std::log(1e-3);
    opt::GaussianProcess gp;
    gp.set(X, y, h);
    const double k11 = 1.5 + 1e-3, k12 = matern(0.5, 0.4, 1.5), det = k11 * k11 - k12 * k12;
    double gp_err = 0.0;
    for (double xq : {0.0, 0.2, 0.45, 0.9, 1.3}) {
        const double a = matern(std::abs(xq - 0.2), 0.4, 1.5), b = matern(std::abs(xq - 0.7), 0.4, 1.5);
        const double w0 = (k11 * 1.0 - k12 * -0.5) / det, w1 = (-k12 * 1.0 + k11 * -0.5) / det;
        const double mean = a * w0 + b * w1;
        const double var = 1.5 - (k11 * (a * a + b * b) - 2.0 * k12 * a * b) / det;
        const auto [m, v] = gp.predict(Eigen::VectorXd::Constant(1, xq));
        gp_err = std::max({gp_err, std::abs(m - mean), std::abs(v - var)});
    }
    c.expect(gp_err <= 1e-9, "gp");

    std::mt19937_64 rng(13);
    std::normal_distribution<double> z(0.0, 1.0);
    double ei_err = 0.0;
    for (const auto& [mu, sigma, best] : std::vector<std::array<double, 3>>{
             {0.0, 1.0, 0.0}, {0.5, 0.3, 0.7}, {-1.0, 2.0, 0.5}, {1.2, 0.5, 0.2}}) {
        const int n = 4'000'000;
        double sum = 0.0;
        for (int i = 0; i < n; ++i) sum += std::max(mu + sigma * z(rng) - best, 0.0);
        ei_err = std::max(ei_err, std::abs(opt::expected_improvement(mu, sigma, best) - sum / n));
    }
    c.expect(ei_err <= 1e-3, "ei");

    opt::ParamSpace space;
    space.add({"x", opt::ParamType::real, -1.0, 1.0, {}});
    opt::BoSettings settings;
    settings.warmup = 5;
    settings.candidates = 500;
    int found = 0;
    for (int seed = 0; seed < 10; ++seed) {
        opt::MoBo bo(space, {Sense::minimize}, settings);
        std::mt19937_64 r(100 + seed);
        std::vector<opt::Configuration> configs;
        std::vector<std::vector<double>> values;
        double best = 1e9, best_x = 0.0;
        for (int it = 0; it < 40; ++it) {
            const auto s = bo.suggest(configs, values, r);
            const double x = s.config[0], f = (x - 0.37) * (x - 0.37);
            configs.push_back(s.config);
            values.push_back({f});
            if (f < best) {
                best = f;
                best_x = x;
            }
        }
        found += std::abs(best_x - 0.37) <= 0.05;
    }
    c.expect(found >= 9, "bo");
    return {c.failures == 0, "gp err " + fmt(gp_err) + ", EI MC err " + fmt(ei_err) + ", BO within 0.05 in " +
                                 std::to_string(found) + "/10 seeds " + c.notes.str()};
}

// ---------------------------------------------------------------- 6: Pareto

Outcome criterion_pareto()
{
    Checker c;
    std::mt19937_64 rng(15);
    std::uniform_int_distribution<int> grid(0, 20);
    const std::vector<Sense> senses = {Sense::maximize, Sense::minimize, Sense::maximize};
    auto dominated_by = [&](const std::vector<double>& a, const std::vector<double>& b) {
        bool strict = false;
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double x = sign(senses[i]) * a[i], yv = sign(senses[i]) * b[i];
            if (x < yv) return false;
            strict = strict || x > yv;
        }
        return strict;
    };
    int equal = 0;
    for (int rep = 0; rep < 100; ++rep) {
        std::vector<std::vector<double>> pts(500);
        for (auto& p : pts) p = {double(grid(rng)), double(grid(rng)), double(grid(rng))};
        auto front = opt::pareto_front(pts, senses);
        std::sort(front.begin(), front.end());
        std::vector<std::size_t> oracle;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            bool dom = false;
            for (std::size_t j = 0; j < pts.size() && !dom; ++j) dom = dominated_by(pts[j], pts[i]);
            if (!dom) oracle.push_back(i);
        }
        equal += front == oracle;
    }
    c.expect(equal == 100, "front");

    std::uniform_real_distribution<double> u(0.0, 1.0);
    const std::vector<Sense> s2 = {Sense::maximize, Sense::minimize};
    double worst = 0.0;
    for (int rep = 0; rep < 5; ++rep) {
        std::vector<std::vector<double>> pts(30);
        for (auto& p : pts) p = {u(rng), u(rng)};
        const double hv = opt::hypervolume_2d(pts, std::vector<double>{0.0, 1.0}, s2);
        const int n = 400'000;
        int hit = 0;
        for (int i = 0; i < n; ++i) {
            const double a = u(rng), b = u(rng);
            hit += std::any_of(pts.begin(), pts.end(), [&](const auto& p) { return p[0] >= a && p[1] <= b; });
        }
        worst = std::max(worst, std::abs(hv - double(hit) / n) / hv);
    }
    c.expect(worst <= 0.01, "hypervolume");
    return {c.failures == 0, std::to_string(equal) + "/100 fronts match brute force, hypervolume rel err " +
                                 fmt(worst) + " " + c.notes.str()};
}

// ---------------------------------------------------------------- 7: MO-BO quality

Outcome criterion_mobo()
{
    // Analytic front s = t(1,1): f1 = 2t^2, f2 = 2(1-t)^2; area up to (2,2) by Simpson's rule.
    auto front_f2 = [](double f1) {
        const double t = std::sqrt(f1 / 2.0);
        return 2.0 * (1.0 - t) * (1.0 - t);
    };
    const int m = 200000;
    double analytic = 0.0;
    for (int i = 0; i <= m; ++i) {
        const double a = 2.0 * i / m;
        const double w = i == 0 || i == m ? 1.0 : (i % 2 ? 4.0 : 2.0);
        analytic += w * (2.0 - front_f2(a));
    }
    analytic *= (2.0 / m) / 3.0;

    opt::ParamSpace space;
    space.add({"s1", opt::ParamType::real, -0.5, 1.5, {}});
    space.add({"s2", opt::ParamType::real, -0.5, 1.5, {}});
    const std::vector<Sense> senses = {Sense::minimize, Sense::minimize};
    opt::BoSettings settings;
    settings.warmup = 10;
    std::vector<double> ratios;
    for (int seed = 0; seed < 10; ++seed) {
        opt::MoBo bo(space, senses, settings);
        std::mt19937_64 rng(derive_seed(7, {static_cast<std::uint64_t>(seed)}));
        std::vector<opt::Configuration> configs;
        std::vector<std::vector<double>> values;
        for (int it = 0; it < 60; ++it) {
            const auto s = bo.suggest(configs, values, rng);
            const double a = s.config[0], b = s.config[1];
            configs.push_back(s.config);
            values.push_back({a * a + b * b, (a - 1) * (a - 1) + (b - 1) * (b - 1)});
        }
        ratios.push_back(opt::hypervolume_2d(values, std::vector<double>{2.0, 2.0}, senses) / analytic);
    }
    std::sort(ratios.begin(), ratios.end());
    const double median = 0.5 * (ratios[4] + ratios[5]);
    return {median >= 0.9, "median hypervolume ratio " + fmt(median) + " (analytic " + fmt(analytic, 8) +
                               ", min " + fmt(ratios.front()) + ", max " + fmt(ratios.back()) + ")"};
}

// ---------------------------------------------------------------- 8-10: end to end

struct ScenarioRuns {
    harness::ScenarioConfig cfg;
    harness::PreparedTask task;
    std::vector<harness::RunResult> runs;
    double seconds = 0.0;
};

ScenarioRuns learn(const std::string& name, const fs::path& out)
{
    ScenarioRuns s;
    s.cfg = harness::load_scenario(fs::path(SKILLTUNE_SCENARIOS) / (name + ".json"));
    s.task = harness::prepare(s.cfg);
    harness::LearnOptions o;
    o.out_dir = out / name;
    const auto t0 = std::chrono::steady_clock::now();
    s.runs = harness::run_learning(s.cfg, o);
    s.seconds = seconds_since(t0);
    return s;
}

// Worlds never used during learning.
std::vector<harness::World> held_out_worlds(const harness::ScenarioConfig& cfg, int n)
{
    std::vector<harness::World> w;
    for (int k = 0; k < n; ++k) {
        w.push_back(harness::sample_world(cfg, derive_seed(0x5eed0f7e57ull, {static_cast<std::uint64_t>(k)})));
    }
    return w;
}

double success_rate(const ScenarioRuns& s, const opt::Configuration& config, const std::vector<harness::World>& worlds)
{
    const auto eps = harness::run_worlds(s.cfg, s.task, config, worlds);
    double ok = 0.0;
    for (const auto& e : eps) ok += e.success;
    return ok / static_cast<double>(eps.size());
}

// Front trial with the highest training success rate (first in front order on ties).
const harness::Trial& best_front_trial(const harness::RunResult& run)
{
    const harness::Trial* best = nullptr;
    for (int id : run.front) {
        const auto& t = run.trial(id);
        if (!best || t.success_rate > best->success_rate) best = &t;
    }
    return *best;
}

// Default values of the learnable parameters, as the planner would run them.
opt::Configuration default_configuration(const ScenarioRuns& s)
{
    opt::Configuration config;
    for (const auto& p : s.task.space.parameters()) {
        const auto dot = p.name.find('.');
        const auto skill = p.name.substr(0, dot);
        const auto param = p.name.substr(dot + 1, p.name.find('#') - dot - 1);
        const auto* t = s.cfg.model.find_skill(skill);
        double v = 0.0;
        for (const auto& sp : t->parameters) {
            if (sp.name == param) v = sp.default_value;
        }
        config.push_back(v);
    }
    return config;
}

Outcome criterion_peg(const ScenarioRuns& s)
{
    const auto worlds = held_out_worlds(s.cfg, 20);
    std::vector<double> learned;
    for (const auto& run : s.runs) learned.push_back(success_rate(s, best_front_trial(run).config, worlds));
    const double mean_learned = std::accumulate(learned.begin(), learned.end(), 0.0) / learned.size();

    std::mt19937_64 rng(derive_seed(0x7a4d0ull, {}));
    double random = 0.0;
    for (int i = 0; i < 10; ++i) random += success_rate(s, s.task.space.sample_uniform(rng), worlds) / 10.0;
    const double worst = *std::min_element(learned.begin(), learned.end());
    return {mean_learned >= 0.9 && random <= 0.6,
            "best front policy insertion on 20 held-out worlds: mean " + fmt(mean_learned) + " over " +
                std::to_string(learned.size()) + " repeats (min " + fmt(worst) + "); 10 random configs " +
                fmt(random) + "; learning " + fmt(s.seconds / 60.0, 3) + " min"};
}

Outcome criterion_push(const ScenarioRuns& s)
{
    const auto worlds = held_out_worlds(s.cfg, 20);
    std::vector<double> learned;
    for (const auto& run : s.runs) learned.push_back(success_rate(s, best_front_trial(run).config, worlds));
    const double mean_learned = std::accumulate(learned.begin(), learned.end(), 0.0) / learned.size();
    const double plain = success_rate(s, default_configuration(s), worlds);
    return {mean_learned >= 0.8 && plain < 0.5,
            "learned policy success on 20 held-out worlds: mean " + fmt(mean_learned) + " over " +
                std::to_string(learned.size()) + " repeats (min " +
                fmt(*std::min_element(learned.begin(), learned.end())) + "); zero-offset policy " + fmt(plain) +
                "; learning " + fmt(s.seconds / 60.0, 3) + " min"};
}

Outcome criterion_front(const ScenarioRuns& peg, const ScenarioRuns& push)
{
    auto mean_size = [](const ScenarioRuns& s) {
        double n = 0.0;
        for (const auto& r : s.runs) n += static_cast<double>(r.front.size());
        return n / static_cast<double>(s.runs.size());
    };
    const double peg_size = mean_size(peg), push_size = mean_size(push);

    // Highest- vs lowest-success point of each push front.
    int trade = 0, spread = 0;
    for (const auto& r : push.runs) {
        const harness::Trial* hi = nullptr;
        const harness::Trial* lo = nullptr;
        for (int id : r.front) {
            const auto& t = r.trial(id);
            if (!hi || t.success_rate > hi->success_rate) hi = &t;
            if (!lo || t.success_rate < lo->success_rate) lo = &t;
        }
        if (!hi || hi->success_rate == lo->success_rate) continue;
        ++spread;
        trade += hi->effort > lo->effort;
    }
    const bool sizes = peg_size >= 3.0 && peg_size <= 20.0 && push_size >= 3.0 && push_size <= 20.0;
    const bool tradeoff = spread > 0 && 2 * trade > spread;
    return {sizes && tradeoff, "mean front size peg " + fmt(peg_size) + ", push " + fmt(push_size) +
                                   "; push fronts with higher effort at the highest-success point: " +
                                   std::to_string(trade) + "/" + std::to_string(spread)};
}

} // namespace

int main(int argc, char** argv)
{
    fs::path out = "acceptance_results";
    std::set<int> only;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--out" && i + 1 < argc) {
            out = argv[++i];
        } else if (a == "--only" && i + 1 < argc) {
            std::stringstream ss(argv[++i]);
            std::string tok;
            while (std::getline(ss, tok, ',')) only.insert(std::stoi(tok));
        } else {
            std::cerr << "usage: acceptance [--out DIR] [--only N[,N...]]\n";
            return 2;
        }
    }
    auto wanted = [&](int id) { return only.empty() || only.count(id) != 0; };

    bool all = true;
    auto run = [&](int id, const std::string& title, double limit, const std::function<Outcome()>& f) {
        if (!wanted(id)) return;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = f();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = seconds_since(t0);
        if (limit > 0.0 && secs > limit) {
            o.pass = false;
            o.detail += " [over the " + fmt(limit) + " s limit]";
        }
        all = all && o.pass;
        std::printf("criterion %2d %-28s %s  %s (%.1f s)\n", id, title.c_str(), o.pass ? "PASS" : "FAIL",
                    o.detail.c_str(), secs);
        std::fflush(stdout);
    };

    run(1, "behavior-tree semantics", 1.0, criterion_bt);
    run(2, "planner", 30.0, criterion_planner);
    run(3, "controller math", 0.0, criterion_controller);
    run(4, "rewards", 0.0, criterion_rewards);
    run(5, "gp / ei / bo", 120.0, criterion_gp);
    run(6, "pareto", 0.0, criterion_pareto);
    run(7, "mo-bo quality", 300.0, criterion_mobo);

    if (wanted(8) || wanted(9) || wanted(10)) {
        std::optional<ScenarioRuns> peg, push;
        auto get = [&](std::optional<ScenarioRuns>& s, const std::string& name) -> const ScenarioRuns& {
            if (!s) s = learn(name, out);
            return *s;
        };
        run(8, "peg end to end", 0.0, [&] { return criterion_peg(get(peg, "peg")); });
        run(9, "push end to end", 0.0, [&] { return criterion_push(get(push, "push")); });
        run(10, "pareto-front shape", 0.0, [&] { return criterion_front(get(peg, "peg"), get(push, "push")); });
    }
    return all ? 0 : 1;
}
