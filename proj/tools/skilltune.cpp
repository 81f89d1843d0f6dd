#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "skilltune/bt/assemble.hpp"
#include "skilltune/harness/learning.hpp"
#include "skilltune/pddl/generate.hpp"

using namespace skilltune;

namespace {

enum Exit { kOk = 0, kFailure = 1, kUnsolvable = 2, kConfig = 3 };

int cmd_plan(const std::string& scenario, const std::string& domain_out, const std::string& problem_out)
{
    const auto cfg = harness::load_scenario(scenario);
    const auto domain = pddl::generate_domain(cfg.model);
    const auto problem = pddl::generate_problem(cfg.model);
    if (!domain_out.empty()) std::ofstream(domain_out) << pddl::print_domain(domain);
    if (!problem_out.empty()) std::ofstream(problem_out) << pddl::print_problem(problem);
    const auto task = harness::prepare(cfg);
    std::cout << "plan (" << task.plan.size() << " steps, " << task.result.expanded << " expanded):\n";
    for (const auto& a : task.result.plan) std::cout << "  " << pddl::to_string(a) << '\n';
    const auto tree = bt::assemble_bt(task.plan, cfg.model);
    std::cout << "\nbehavior tree:\n" << bt::dump(*tree);
    std::cout << "\nlearnable parameters:\n";
    if (task.space.empty()) std::cout << "  (none)\n";
    for (const auto& p : task.space.parameters()) {
        std::cout << "  " << p.name << " " << opt::to_string(p.type);
        if (p.type == opt::ParamType::real || p.type == opt::ParamType::integer) {
            std::cout << " [" << p.lower << ", " << p.upper << "]";
        } else {
            std::cout << " {";
            for (std::size_t i = 0; i < p.values.size(); ++i) std::cout << (i ? ", " : "") << p.values[i];
            std::cout << "}";
        }
        std::cout << '\n';
    }
    return kOk;
}

void print_trial(const harness::Trial& t, const harness::RunHeader& h)
{
    std::printf("%5d", t.id);
    for (double v : t.values) std::printf(" %12.4f", v);
    std::printf("  success %5.1f%%  |", 100.0 * t.success_rate);
    for (std::size_t i = 0; i < t.config.size(); ++i) {
        std::printf(" %s=%.5g", i < h.parameters.size() ? h.parameters[i].c_str() : "?", t.config[i]);
    }
    std::printf("\n");
}

int cmd_learn(const std::string& scenario, harness::LearnOptions opts, bool quiet)
{
    const auto cfg = harness::load_scenario(scenario);
    if (!quiet) {
        opts.on_trial = [](const harness::RunHeader& h, const harness::Trial& t) {
            std::printf("[r%d] ", h.repeat);
            print_trial(t, h);
            std::fflush(stdout);
        };
    }
    const auto runs = harness::run_learning(cfg, opts);
    for (const auto& r : runs) {
        std::printf("repeat %d: %zu trials, front of %zu, %.1f s -> %s\n", r.header.repeat, r.trials.size(),
                    r.front.size(), r.wall_seconds,
                    harness::results_path(opts.out_dir, cfg, r.header.repeat).string().c_str());
    }
    return kOk;
}

int cmd_pareto(const std::string& results, bool list, bool do_export)
{
    const auto run = harness::read_results(results);
    auto front = run.front;
    if (!run.complete) front = harness::compute_front(run.trials, run.header.objectives);
    if (do_export) {
        for (int id : front) std::cout << harness::to_json(run.trial(id)).dump() << '\n';
        return kOk;
    }
    std::printf("%s repeat %d: %zu trials, %zu on the front%s\n", run.header.scenario.c_str(), run.header.repeat,
                run.trials.size(), front.size(), run.complete ? "" : " (incomplete run)");
    if (list) {
        std::printf("   id");
        for (const auto& o : run.header.objectives) std::printf(" %12.12s", o.name.c_str());
        std::printf("\n");
        for (int id : front) print_trial(run.trial(id), run.header);
    }
    return kOk;
}

int cmd_replay(const std::string& results, int trial, const std::vector<std::uint64_t>& seeds,
               const std::string& record, int jobs)
{
    const auto run = harness::read_results(results);
    const auto cfg = harness::scenario_from_json(run.header.document);
    if (cfg.hash() != run.header.hash) throw ConfigError("results header does not match its scenario document");
    const auto task = harness::prepare(cfg);
    const auto r = harness::replay(cfg, task, run, trial, seeds, jobs, !record.empty());
    for (std::size_t k = 0; k < r.episodes.size(); ++k) {
        const auto& e = r.episodes[k];
        std::printf("world %zu seed %llu start %zu: %s at %.2f s", k, static_cast<unsigned long long>(r.worlds[k].seed),
                    r.worlds[k].start_index, e.success ? "success" : (e.aborted ? "aborted" : "failure"), e.end_time);
        for (double v : e.objectives) std::printf(" %.4f", v);
        std::printf("\n");
        if (!record.empty()) {
            std::filesystem::path p(record);
            if (r.episodes.size() > 1) {
                p = p.parent_path() / (p.stem().string() + "-" + std::to_string(k) + p.extension().string());
            }
            std::ofstream out(p);
            if (!out) throw Error("cannot write '" + p.string() + "'");
            harness::write_trace(e.trace, out);
        }
    }
    std::printf("success rate %.1f%% over %zu worlds\n", 100.0 * r.success_rate, r.episodes.size());
    return kOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Plan, learn and select skill parameters for contact-rich manipulation"};
    app.require_subcommand(1);

    std::string scenario, results, domain_out, problem_out, record;
    harness::LearnOptions learn;
    int iterations = -1, repeats = -1, trial = -1;
    std::uint64_t seed = 0;
    bool quiet = false, list = false, do_export = false;
    int jobs = 1;
    std::vector<std::uint64_t> seeds;
    std::string out_dir = "results";

    auto* plan = app.add_subcommand("plan", "Plan the scenario goal and show the behavior tree");
    plan->add_option("scenario", scenario, "Scenario file")->required()->check(CLI::ExistingFile);
    plan->add_option("--domain", domain_out, "Write the generated PDDL domain");
    plan->add_option("--problem", problem_out, "Write the generated PDDL problem");

    auto* lrn = app.add_subcommand("learn", "Optimize the learnable skill parameters");
    lrn->add_option("scenario", scenario, "Scenario file")->required()->check(CLI::ExistingFile);
    auto* it_opt = lrn->add_option("--iterations", iterations, "Evaluations per run");
    auto* rep_opt = lrn->add_option("--repeats", repeats, "Independent runs");
    auto* seed_opt = lrn->add_option("--seed", seed, "Master seed");
    lrn->add_option("--jobs", jobs, "Worlds evaluated concurrently")->check(CLI::PositiveNumber);
    lrn->add_option("--out", out_dir, "Directory for results files");
    lrn->add_flag("--quiet", quiet, "Only print the run summaries");

    auto* par = app.add_subcommand("pareto", "Show the Pareto front of a results file");
    par->add_option("results", results, "Results file")->required()->check(CLI::ExistingFile);
    par->add_flag("--list", list, "List the front trials");
    par->add_flag("--export", do_export, "Print the front trials as JSON lines");

    auto* rpl = app.add_subcommand("replay", "Re-run a recorded trial");
    rpl->add_option("results", results, "Results file")->required()->check(CLI::ExistingFile);
    rpl->add_option("--trial", trial, "Trial id")->required();
    rpl->add_option("--seeds", seeds, "World seeds (default: the recorded worlds)");
    rpl->add_option("--record", record, "Write the episode trace(s) here");
    rpl->add_option("--jobs", jobs, "Worlds evaluated concurrently")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try {
        if (*plan) return cmd_plan(scenario, domain_out, problem_out);
        if (*lrn) {
            if (*it_opt) learn.iterations = iterations;
            if (*rep_opt) learn.repeats = repeats;
            if (*seed_opt) learn.seed = seed;
            learn.jobs = jobs;
            learn.out_dir = out_dir;
            return cmd_learn(scenario, learn, quiet);
        }
        if (*par) return cmd_pareto(results, list, do_export);
        if (*rpl) return cmd_replay(results, trial, seeds, record, jobs);
    } catch (const harness::UnsolvableError& e) {
        std::cerr << "unsolvable: " << e.what() << '\n';
        return kUnsolvable;
    } catch (const pddl::PddlError& e) {
        std::cerr << "planning error: " << e.what() << '\n';
        return kConfig;
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailure;
    }
    return kOk;
}
