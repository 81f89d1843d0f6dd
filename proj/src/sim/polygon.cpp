#include "skilltune/sim/polygon.hpp"

#include <cmath>
#include <limits>

namespace skilltune::sim {

namespace {

double cross(const Vec2& a, const Vec2& b)
{
    return a.x() * b.y() - a.y() * b.x();
}

} // namespace

Polygon transformed(const Polygon& local, const Vec2& position, double yaw)
{
    const Eigen::Rotation2Dd R(yaw);
    Polygon out;
    out.reserve(local.size());
    for (const auto& v : local) out.push_back(position + R * v);
    return out;
}

Polygon square(double side)
{
    const double h = side / 2.0;
    return {{-h, -h}, {h, -h}, {h, h}, {-h, h}};
}

double area(const Polygon& p)
{
    double a = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) a += cross(p[i], p[(i + 1) % p.size()]);
    return a / 2.0;
}

Vec2 centroid(const Polygon& p)
{
    Vec2 c = Vec2::Zero();
    double a = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const auto& u = p[i];
        const auto& v = p[(i + 1) % p.size()];
        const double w = cross(u, v);
        a += w;
        c += (u + v) * w;
    }
    return c / (3.0 * a);
}

double radius_of_gyration_sq(const Polygon& p)
{
    double j = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const auto& u = p[i];
        const auto& v = p[(i + 1) % p.size()];
        j += cross(u, v) * (u.squaredNorm() + u.dot(v) + v.squaredNorm());
    }
    j /= 12.0;
    return j / area(p) - centroid(p).squaredNorm();
}

bool contains(const Polygon& p, const Vec2& point)
{
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Vec2 e = p[(i + 1) % p.size()] - p[i];
        if (cross(e, point - p[i]) < 0.0) return false;
    }
    return true;
}

EdgeExit nearest_exit(const Polygon& p, const Vec2& point)
{
    EdgeExit best;
    best.depth = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Vec2 e = p[(i + 1) % p.size()] - p[i];
        const Vec2 n = Vec2(e.y(), -e.x()).normalized();
        const double d = -(point - p[i]).dot(n);
        if (d < best.depth) {
            best.depth = d;
            best.normal = n;
        }
    }
    return best;
}

std::vector<Penetration> penetrations(const Polygon& a, const Polygon& b)
{
    std::vector<Penetration> out;
    for (const auto& v : a) {
        if (contains(b, v)) {
            const auto exit = nearest_exit(b, v);
            out.push_back({v, -exit.normal, exit.depth});
        }
    }
    for (const auto& v : b) {
        if (contains(a, v)) {
            const auto exit = nearest_exit(a, v);
            out.push_back({v, exit.normal, exit.depth});
        }
    }
    return out;
}

bool overlap(const Polygon& a, const Polygon& b)
{
    for (const Polygon* poly : {&a, &b}) {
        for (std::size_t i = 0; i < poly->size(); ++i) {
            const Vec2 e = (*poly)[(i + 1) % poly->size()] - (*poly)[i];
            const Vec2 n(e.y(), -e.x());
            double amin = std::numeric_limits<double>::infinity(), amax = -amin;
            double bmin = amin, bmax = -amin;
            for (const auto& v : a) {
                amin = std::min(amin, v.dot(n));
                amax = std::max(amax, v.dot(n));
            }
            for (const auto& v : b) {
                bmin = std::min(bmin, v.dot(n));
                bmax = std::max(bmax, v.dot(n));
            }
            if (amax < bmin || bmax < amin) return false;
        }
    }
    return true;
}

Vec3 barycentric(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& p)
{
    const double d = cross(b - a, c - a);
    const double wb = cross(p - a, c - a) / d;
    const double wc = cross(b - a, p - a) / d;
    return {1.0 - wb - wc, wb, wc};
}

} // namespace skilltune::sim
