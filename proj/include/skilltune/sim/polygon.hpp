#ifndef SKILLTUNE_SIM_POLYGON_HPP
#define SKILLTUNE_SIM_POLYGON_HPP

#include <vector>

#include "skilltune/common/geometry.hpp"

namespace skilltune::sim {

/// Convex polygon, counter-clockwise vertices.
using Polygon = std::vector<Vec2>;

Polygon transformed(const Polygon& local, const Vec2& position, double yaw);
Polygon square(double side);

double area(const Polygon& p);
Vec2 centroid(const Polygon& p);
/// Polar moment of area about the centroid (uniform density, per unit mass).
double radius_of_gyration_sq(const Polygon& p);

bool contains(const Polygon& p, const Vec2& point);

/// Deepest-exit data for a point inside a polygon: distance to the nearest
/// edge and that edge's outward normal.
struct EdgeExit {
    double depth = 0.0;
    Vec2 normal = Vec2::Zero();
};
EdgeExit nearest_exit(const Polygon& p, const Vec2& point);

/// Penetration of body A's vertices into B and B's into A. `direction` is the
/// unit direction in which the force on B acts.
struct Penetration {
    Vec2 point;
    Vec2 direction;
    double depth = 0.0;
};
std::vector<Penetration> penetrations(const Polygon& a, const Polygon& b);

/// Separating-axis overlap test.
bool overlap(const Polygon& a, const Polygon& b);

/// Barycentric coordinates of `p` in triangle (a, b, c).
Vec3 barycentric(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& p);

} // namespace skilltune::sim

#endif
