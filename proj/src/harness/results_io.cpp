#include "skilltune/harness/results_io.hpp"

#include <fstream>
#include <ostream>

#include "skilltune/opt/pareto.hpp"

namespace skilltune::harness {

using nlohmann::json;

const Trial& RunResult::trial(int id) const
{
    for (const auto& t : trials) {
        if (t.id == id) return t;
    }
    throw Error("no trial with id " + std::to_string(id));
}

json to_json(const RunHeader& h)
{
    json objectives = json::array();
    for (const auto& o : h.objectives) objectives.push_back({{"name", o.name}, {"sense", to_string(o.sense)}});
    return {{"type", "header"},
            {"scenario", h.scenario},
            {"hash", h.hash},
            {"repeat", h.repeat},
            {"seed", h.seed},
            {"parameters", h.parameters},
            {"objectives", objectives},
            {"document", h.document}};
}

json to_json(const Trial& t)
{
    json j{{"type", "trial"},
           {"id", t.id},
           {"seed", t.seed},
           {"config", t.config},
           {"values", t.values},
           {"world_values", t.world_values},
           {"world_seeds", t.world_seeds},
           {"world_success", t.world_success},
           {"success_rate", t.success_rate},
           {"effort", t.effort},
           {"impulse", t.impulse},
           {"all_aborted", t.all_aborted},
           {"warmup", t.warmup}};
    if (t.hyper) {
        const auto& h = *t.hyper;
        j["hyper"] = {{"log_lengths", std::vector<double>(h.log_lengths.data(), h.log_lengths.data() + h.log_lengths.size())},
                      {"log_signal", h.log_signal},
                      {"log_noise", h.log_noise}};
    }
    return j;
}

RunHeader header_from_json(const json& j)
{
    RunHeader h;
    h.scenario = j.at("scenario").get<std::string>();
    h.hash = j.at("hash").get<std::string>();
    h.repeat = j.at("repeat").get<int>();
    h.seed = j.at("seed").get<std::uint64_t>();
    h.parameters = j.at("parameters").get<std::vector<std::string>>();
    for (const auto& o : j.at("objectives")) {
        h.objectives.push_back({o.at("name").get<std::string>(), sense_from_string(o.at("sense").get<std::string>())});
    }
    h.document = j.value("document", json::object());
    return h;
}

Trial trial_from_json(const json& j)
{
    Trial t;
    t.id = j.at("id").get<int>();
    t.seed = j.at("seed").get<std::uint64_t>();
    t.config = j.at("config").get<opt::Configuration>();
    t.values = j.at("values").get<std::vector<double>>();
    t.world_values = j.at("world_values").get<std::vector<std::vector<double>>>();
    t.world_seeds = j.at("world_seeds").get<std::vector<std::uint64_t>>();
    t.world_success = j.at("world_success").get<std::vector<bool>>();
    t.success_rate = j.at("success_rate").get<double>();
    t.effort = j.at("effort").get<double>();
    t.impulse = j.at("impulse").get<double>();
    t.all_aborted = j.at("all_aborted").get<bool>();
    t.warmup = j.at("warmup").get<bool>();
    if (j.contains("hyper")) {
        const auto& h = j["hyper"];
        opt::GpHyper g;
        const auto l = h.at("log_lengths").get<std::vector<double>>();
        g.log_lengths = Eigen::Map<const Eigen::VectorXd>(l.data(), static_cast<Eigen::Index>(l.size()));
        g.log_signal = h.at("log_signal").get<double>();
        g.log_noise = h.at("log_noise").get<double>();
        t.hyper = g;
    }
    return t;
}

void write_header(std::ostream& out, const RunHeader& h)
{
    out << to_json(h).dump() << '\n';
}

void write_trial(std::ostream& out, const Trial& t)
{
    out << to_json(t).dump() << '\n';
}

void write_front(std::ostream& out, const std::vector<int>& front, double wall_seconds)
{
    out << json{{"type", "pareto"}, {"trials", front}, {"wall_seconds", wall_seconds}}.dump() << '\n';
}

RunResult read_results(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open results file '" + path.string() + "'");
    RunResult r;
    bool have_header = false;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const bool last = in.peek() == std::char_traits<char>::eof();
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error&) {
            if (last) break; // interrupted write
            throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": malformed record");
        }
        try {
            const auto type = j.at("type").get<std::string>();
            if (type == "header") {
                r.header = header_from_json(j);
                have_header = true;
            } else if (type == "trial") {
                r.trials.push_back(trial_from_json(j));
            } else if (type == "pareto") {
                r.front = j.at("trials").get<std::vector<int>>();
                r.wall_seconds = j.value("wall_seconds", 0.0);
                r.complete = true;
            } else {
                throw ConfigError("unknown record type '" + type + "'");
            }
        } catch (const json::exception& e) {
            throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (!have_header) throw ConfigError("results file '" + path.string() + "' has no header");
    return r;
}

std::vector<int> compute_front(const std::vector<Trial>& trials, const std::vector<rewards::Objective>& objectives)
{
    std::vector<Sense> senses;
    for (const auto& o : objectives) senses.push_back(o.sense);
    std::vector<std::vector<double>> points;
    for (const auto& t : trials) points.push_back(t.values);
    std::vector<int> out;
    for (auto i : opt::pareto_front(points, senses)) out.push_back(trials[i].id);
    return out;
}

} // namespace skilltune::harness
