#include "skilltune/opt/pareto.hpp"

#include <algorithm>

#include "skilltune/common/error.hpp"

namespace skilltune::opt {

bool dominates(std::span<const double> a, std::span<const double> b, std::span<const Sense> senses)
{
    if (a.size() != b.size() || a.size() != senses.size()) throw Error("dominance on mismatched dimensions");
    bool strictly = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double x = sign(senses[i]) * a[i];
        const double y = sign(senses[i]) * b[i];
        if (x < y) return false;
        if (x > y) strictly = true;
    }
    return strictly;
}

std::vector<std::size_t> pareto_front(const std::vector<std::vector<double>>& points, std::span<const Sense> senses)
{
    std::vector<std::size_t> front;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].size() != senses.size()) throw Error("point has the wrong number of objectives");
        bool dominated = false;
        for (std::size_t j = 0; j < points.size() && !dominated; ++j) {
            if (j != i && dominates(points[j], points[i], senses)) dominated = true;
        }
        if (!dominated) front.push_back(i);
    }
    std::sort(front.begin(), front.end(), [&](std::size_t a, std::size_t b) {
        if (points[a] != points[b]) return points[a] < points[b];
        return a < b;
    });
    return front;
}

double hypervolume_2d(const std::vector<std::vector<double>>& points, std::span<const double> reference,
                      std::span<const Sense> senses)
{
    if (senses.size() != 2 || reference.size() != 2) throw Error("hypervolume is implemented for two objectives");
    const double r0 = sign(senses[0]) * reference[0];
    const double r1 = sign(senses[1]) * reference[1];
    std::vector<std::pair<double, double>> v;
    for (const auto& p : points) {
        if (p.size() != 2) throw Error("hypervolume point must have two objectives");
        const double a = sign(senses[0]) * p[0];
        const double b = sign(senses[1]) * p[1];
        if (a > r0 && b > r1) v.emplace_back(a, b);
    }
    std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
    double area = 0.0;
    double best = r1;
    for (const auto& [a, b] : v) {
        if (b > best) {
            area += (a - r0) * (b - best);
            best = b;
        }
    }
    return area;
}

} // namespace skilltune::opt
