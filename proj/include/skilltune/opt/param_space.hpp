#ifndef SKILLTUNE_OPT_PARAM_SPACE_HPP
#define SKILLTUNE_OPT_PARAM_SPACE_HPP

#include <cstddef>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace skilltune::opt {

enum class ParamType { real, integer, ordinal, categorical };

std::string to_string(ParamType t);
ParamType param_type_from_string(const std::string& s);

/// One searchable dimension. Real and integer parameters use [lower, upper];
/// ordinal parameters use the ordered `values`; categorical parameters use
/// `values` as the list of choices and are stored by index.
struct Parameter {
    std::string name;
    ParamType type = ParamType::real;
    double lower = 0.0;
    double upper = 1.0;
    std::vector<double> values;

    void validate() const;
    bool operator==(const Parameter&) const = default;
};

/// Configuration values in parameter order. Categorical entries hold the choice index.
using Configuration = std::vector<double>;

class ParamSpace {
public:
    ParamSpace() = default;
    explicit ParamSpace(std::vector<Parameter> params);

    void add(Parameter p);

    std::size_t size() const { return params_.size(); }
    bool empty() const { return params_.empty(); }
    const std::vector<Parameter>& parameters() const { return params_; }
    const Parameter& operator[](std::size_t i) const { return params_[i]; }
    std::ptrdiff_t index_of(const std::string& name) const;

    /// Width of the unit-cube encoding (categorical parameters are one-hot).
    std::size_t encoded_size() const;

    Eigen::VectorXd encode(std::span<const double> config) const;
    /// Maps any point of the unit cube (clamped) to a valid configuration.
    Configuration decode(const Eigen::VectorXd& u) const;

    Configuration sample_uniform(std::mt19937_64& rng) const;
    bool contains(std::span<const double> config) const;

    bool operator==(const ParamSpace&) const = default;

private:
    std::vector<Parameter> params_;
};

} // namespace skilltune::opt

#endif
