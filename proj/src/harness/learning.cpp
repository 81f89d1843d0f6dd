#include "skilltune/harness/learning.hpp"

#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <thread>

#include "skilltune/common/seeding.hpp"
#include "skilltune/opt/mobo.hpp"
#include "skilltune/pddl/generate.hpp"

namespace skilltune::harness {

PreparedTask prepare(const ScenarioConfig& cfg)
{
    PreparedTask t;
    t.domain = pddl::generate_domain(cfg.model);
    t.problem = pddl::generate_problem(cfg.model);
    pddl::validate_problem(t.domain, t.problem);
    t.result = pddl::plan(t.domain, t.problem);
    if (!t.result.solvable) throw UnsolvableError("goal of scenario '" + cfg.name + "' is not reachable");
    t.plan = pddl::to_skill_instances(t.result.plan, cfg.model);
    for (const auto& inst : t.plan) skills::SkillRegistry::builtin().check(cfg.model.skill(inst.skill));
    t.space = wm::collect_learnables(cfg.model, t.plan);
    return t;
}

std::uint64_t world_seed(std::uint64_t seed, std::size_t k)
{
    return derive_seed(seed, {static_cast<std::uint64_t>(k)});
}

std::vector<EpisodeResult> run_worlds(const ScenarioConfig& cfg, const PreparedTask& task,
                                      const opt::Configuration& config, const std::vector<World>& worlds, int jobs,
                                      bool keep_traces)
{
    if (!task.space.contains(config)) throw ConfigError("configuration is outside the parameter space");
    const auto plan = wm::bind_parameters(cfg.model, task.plan, task.space, config);
    std::vector<EpisodeResult> out(worlds.size());
    std::vector<std::exception_ptr> errors(worlds.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t k; (k = next.fetch_add(1)) < worlds.size();) {
            try {
                out[k] = run_episode(cfg, plan, worlds[k], keep_traces);
            } catch (...) {
                errors[k] = std::current_exception();
            }
        }
    };
    const auto n = std::min<std::size_t>(worlds.size(), static_cast<std::size_t>(std::max(jobs, 1)));
    if (n <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t i = 0; i < n; ++i) pool.emplace_back(work);
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

Evaluation evaluate_configuration(const ScenarioConfig& cfg, const PreparedTask& task, const opt::Configuration& config,
                                  std::uint64_t seed, int jobs)
{
    std::vector<World> worlds;
    Evaluation ev;
    for (int k = 0; k < cfg.randomization.worlds; ++k) {
        ev.world_seeds.push_back(world_seed(seed, static_cast<std::size_t>(k)));
        worlds.push_back(sample_world(cfg, ev.world_seeds.back()));
    }
    const auto episodes = run_worlds(cfg, task, config, worlds, jobs);
    const double n = static_cast<double>(episodes.size());
    ev.values.assign(cfg.objectives.size(), 0.0);
    ev.all_aborted = true;
    for (const auto& e : episodes) {
        ev.world_values.push_back(e.objectives);
        ev.world_success.push_back(e.success);
        for (std::size_t i = 0; i < ev.values.size(); ++i) ev.values[i] += e.objectives[i] / n;
        ev.success_rate += (e.success ? 1.0 : 0.0) / n;
        ev.effort += e.effort / n;
        ev.impulse += e.impulse / n;
        ev.all_aborted = ev.all_aborted && e.aborted;
    }
    return ev;
}

std::filesystem::path results_path(const std::filesystem::path& dir, const ScenarioConfig& cfg, int repeat)
{
    return dir / (cfg.name + "-r" + std::to_string(repeat) + ".jsonl");
}

RunResult run_repeat(const ScenarioConfig& cfg, const PreparedTask& task, int repeat, int iterations,
                     std::uint64_t seed, const std::filesystem::path& path, int jobs,
                     const std::function<void(const RunHeader&, const Trial&)>& on_trial)
{
    const auto started = std::chrono::steady_clock::now();
    RunResult res;
    res.header.scenario = cfg.name;
    res.header.hash = cfg.hash();
    res.header.repeat = repeat;
    res.header.seed = seed;
    for (const auto& p : task.space.parameters()) res.header.parameters.push_back(p.name);
    res.header.objectives = cfg.objectives;
    res.header.document = cfg.document;

    if (std::filesystem::exists(path)) {
        auto prev = read_results(path);
        if (prev.header.hash != res.header.hash || prev.header.repeat != repeat || prev.header.seed != seed) {
            throw ConfigError("results file '" + path.string() + "' belongs to a different run");
        }
        if (prev.complete && static_cast<int>(prev.trials.size()) >= iterations) return prev;
        res.trials = std::move(prev.trials);
    }
    {
        std::ofstream out(path, std::ios::trunc);
        if (!out) throw Error("cannot write '" + path.string() + "'");
        write_header(out, res.header);
        for (const auto& t : res.trials) write_trial(out, t);
    }
    std::ofstream out(path, std::ios::app);

    opt::MoBo optimizer(task.space, cfg.senses(), cfg.learning.bo);
    std::vector<opt::Configuration> configs;
    std::vector<std::vector<double>> values;
    for (const auto& t : res.trials) {
        configs.push_back(t.config);
        values.push_back(t.values);
        if (t.hyper) optimizer.restore(*t.hyper);
    }

    for (int it = static_cast<int>(res.trials.size()); it < iterations; ++it) {
        Trial t;
        t.id = it;
        t.seed = derive_seed(seed, {0, static_cast<std::uint64_t>(it)});
        if (!task.space.empty()) {
            std::mt19937_64 rng(derive_seed(seed, {1, static_cast<std::uint64_t>(it)}));
            auto s = optimizer.suggest(configs, values, rng);
            t.config = std::move(s.config);
            t.warmup = s.warmup;
            t.hyper = s.hyper;
        }
        auto ev = evaluate_configuration(cfg, task, t.config, t.seed, jobs);
        t.values = std::move(ev.values);
        t.world_values = std::move(ev.world_values);
        t.world_seeds = std::move(ev.world_seeds);
        t.world_success = std::move(ev.world_success);
        t.success_rate = ev.success_rate;
        t.effort = ev.effort;
        t.impulse = ev.impulse;
        t.all_aborted = ev.all_aborted;
        write_trial(out, t);
        out.flush();
        configs.push_back(t.config);
        values.push_back(t.values);
        res.trials.push_back(std::move(t));
        if (on_trial) on_trial(res.header, res.trials.back());
    }

    res.front = compute_front(res.trials, cfg.objectives);
    res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    write_front(out, res.front, res.wall_seconds);
    res.complete = true;
    return res;
}

std::vector<RunResult> run_learning(const ScenarioConfig& cfg, const LearnOptions& options)
{
    const int iterations = options.iterations.value_or(cfg.learning.iterations);
    const int repeats = options.repeats.value_or(cfg.learning.repeats);
    const std::uint64_t seed = options.seed.value_or(cfg.learning.seed);
    if (iterations < 0 || repeats < 1) throw ConfigError("invalid iteration or repeat count");
    if (iterations > 0 && iterations < cfg.learning.bo.warmup) throw ConfigError("iterations must be >= warm-up samples");

    const auto task = prepare(cfg);
    std::filesystem::create_directories(options.out_dir);
    std::vector<RunResult> out;
    for (int r = 0; r < repeats; ++r) {
        out.push_back(run_repeat(cfg, task, r, iterations, derive_seed(seed, {static_cast<std::uint64_t>(r)}),
                                 results_path(options.out_dir, cfg, r), options.jobs, options.on_trial));
    }
    return out;
}

ReplayResult replay(const ScenarioConfig& cfg, const PreparedTask& task, const RunResult& run, int trial_id,
                    const std::vector<std::uint64_t>& seeds, int jobs, bool keep_traces)
{
    std::vector<std::string> names;
    for (const auto& p : task.space.parameters()) names.push_back(p.name);
    if (names != run.header.parameters) throw ConfigError("results were produced for different learnable parameters");
    const Trial& t = run.trial(trial_id);
    ReplayResult out;
    for (auto s : seeds.empty() ? t.world_seeds : seeds) out.worlds.push_back(sample_world(cfg, s));
    out.episodes = run_worlds(cfg, task, t.config, out.worlds, jobs, keep_traces);
    for (const auto& e : out.episodes) {
        out.success_rate += (e.success ? 1.0 : 0.0) / static_cast<double>(out.episodes.size());
    }
    return out;
}

} // namespace skilltune::harness
