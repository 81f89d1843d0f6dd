#include "skilltune/opt/param_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "skilltune/common/error.hpp"

namespace skilltune::opt {

std::string to_string(ParamType t)
{
    switch (t) {
    case ParamType::real:
        return "real";
    case ParamType::integer:
        return "integer";
    case ParamType::ordinal:
        return "ordinal";
    case ParamType::categorical:
        return "categorical";
    }
    return "real";
}

ParamType param_type_from_string(const std::string& s)
{
    if (s == "real") return ParamType::real;
    if (s == "integer") return ParamType::integer;
    if (s == "ordinal") return ParamType::ordinal;
    if (s == "categorical") return ParamType::categorical;
    throw ConfigError("unknown parameter type '" + s + "'");
}

void Parameter::validate() const
{
    switch (type) {
    case ParamType::real:
    case ParamType::integer:
        if (!std::isfinite(lower) || !std::isfinite(upper) || !(lower < upper)) {
            throw ConfigError("parameter '" + name + "' needs finite bounds with lower < upper");
        }
        break;
    case ParamType::ordinal:
        if (values.empty() || !std::is_sorted(values.begin(), values.end())) {
            throw ConfigError("ordinal parameter '" + name + "' needs a non-empty sorted value list");
        }
        break;
    case ParamType::categorical:
        if (values.empty()) {
            throw ConfigError("categorical parameter '" + name + "' needs a non-empty value list");
        }
        break;
    }
}

ParamSpace::ParamSpace(std::vector<Parameter> params)
{
    for (auto& p : params) {
        add(std::move(p));
    }
}

void ParamSpace::add(Parameter p)
{
    p.validate();
    if (index_of(p.name) >= 0) {
        throw ConfigError("duplicate parameter '" + p.name + "'");
    }
    params_.push_back(std::move(p));
}

std::ptrdiff_t ParamSpace::index_of(const std::string& name) const
{
    for (std::size_t i = 0; i < params_.size(); ++i) {
        if (params_[i].name == name) {
            return static_cast<std::ptrdiff_t>(i);
        }
    }
    return -1;
}

std::size_t ParamSpace::encoded_size() const
{
    std::size_t n = 0;
    for (const auto& p : params_) {
        n += p.type == ParamType::categorical ? p.values.size() : 1;
    }
    return n;
}

namespace {

std::size_t nearest_index(const std::vector<double>& values, double v)
{
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double d = std::abs(values[i] - v);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

} // namespace

Eigen::VectorXd ParamSpace::encode(std::span<const double> config) const
{
    if (config.size() != params_.size()) {
        throw Error("configuration size does not match parameter space");
    }
    Eigen::VectorXd u(encoded_size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < params_.size(); ++i) {
        const auto& p = params_[i];
        switch (p.type) {
        case ParamType::real:
        case ParamType::integer:
            u[k++] = (config[i] - p.lower) / (p.upper - p.lower);
            break;
        case ParamType::ordinal: {
            const auto n = p.values.size();
            const auto idx = nearest_index(p.values, config[i]);
            u[k++] = n == 1 ? 0.5 : static_cast<double>(idx) / static_cast<double>(n - 1);
            break;
        }
        case ParamType::categorical: {
            const auto idx = static_cast<std::size_t>(std::lround(config[i]));
            for (std::size_t c = 0; c < p.values.size(); ++c) {
                u[k++] = c == idx ? 1.0 : 0.0;
            }
            break;
        }
        }
    }
    return u;
}

Configuration ParamSpace::decode(const Eigen::VectorXd& u) const
{
    Configuration config(params_.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < params_.size(); ++i) {
        const auto& p = params_[i];
        switch (p.type) {
        case ParamType::real: {
            const double x = std::clamp(u[k++], 0.0, 1.0);
            config[i] = std::clamp(p.lower + x * (p.upper - p.lower), p.lower, p.upper);
            break;
        }
        case ParamType::integer: {
            const double x = std::clamp(u[k++], 0.0, 1.0);
            const double lo = std::ceil(p.lower);
            const double hi = std::floor(p.upper);
            config[i] = std::clamp(std::round(p.lower + x * (p.upper - p.lower)), lo, hi);
            break;
        }
        case ParamType::ordinal: {
            const double x = std::clamp(u[k++], 0.0, 1.0);
            const auto n = p.values.size();
            const auto idx = static_cast<std::size_t>(std::lround(x * static_cast<double>(n - 1)));
            config[i] = p.values[std::min(idx, n - 1)];
            break;
        }
        case ParamType::categorical: {
            std::size_t best = 0;
            for (std::size_t c = 0; c < p.values.size(); ++c) {
                if (u[k + c] > u[k + best]) {
                    best = c;
                }
            }
            k += p.values.size();
            config[i] = static_cast<double>(best);
            break;
        }
        }
    }
    return config;
}

Configuration ParamSpace::sample_uniform(std::mt19937_64& rng) const
{
    if (params_.empty()) {
        throw Error("cannot sample from an empty parameter space");
    }
    Configuration config(params_.size());
    for (std::size_t i = 0; i < params_.size(); ++i) {
        const auto& p = params_[i];
        switch (p.type) {
        case ParamType::real:
            config[i] = std::uniform_real_distribution<double>(p.lower, p.upper)(rng);
            break;
        case ParamType::integer: {
            const auto lo = static_cast<long long>(std::ceil(p.lower));
            const auto hi = static_cast<long long>(std::floor(p.upper));
            config[i] = static_cast<double>(std::uniform_int_distribution<long long>(lo, hi)(rng));
            break;
        }
        case ParamType::ordinal: {
            std::uniform_int_distribution<std::size_t> d(0, p.values.size() - 1);
            config[i] = p.values[d(rng)];
            break;
        }
        case ParamType::categorical: {
            std::uniform_int_distribution<std::size_t> d(0, p.values.size() - 1);
            config[i] = static_cast<double>(d(rng));
            break;
        }
        }
    }
    return config;
}

bool ParamSpace::contains(std::span<const double> config) const
{
    if (config.size() != params_.size()) {
        return false;
    }
    for (std::size_t i = 0; i < params_.size(); ++i) {
        const auto& p = params_[i];
        const double v = config[i];
        if (!std::isfinite(v)) {
            return false;
        }
        switch (p.type) {
        case ParamType::real:
            if (v < p.lower || v > p.upper) return false;
            break;
        case ParamType::integer:
            if (v < p.lower || v > p.upper || v != std::round(v)) return false;
            break;
        case ParamType::ordinal:
            if (std::find(p.values.begin(), p.values.end(), v) == p.values.end()) return false;
            break;
        case ParamType::categorical:
            if (v != std::round(v) || v < 0 || v >= static_cast<double>(p.values.size())) return false;
            break;
        }
    }
    return true;
}

} // namespace skilltune::opt
