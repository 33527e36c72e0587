#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "ctl/zonotope.hpp"

namespace ctl {

/// Convex polygon, counterclockwise vertices, implicitly closed.
struct Polygon2D {
    std::vector<Eigen::Vector2d> vertices;
};

/// Boundary of the symmetric-convention zonotope in the plane. Generators are
/// folded into the upper half-plane, merged by direction, sorted by angle and
/// walked edge by edge; the lower half is the mirror image. Vertex count is
/// twice the number of distinct directions.
inline Polygon2D boundary_polygon(const Zonotope& z)
{
    if (z.dim() != 2)
        fail(errc::dimension_unsupported, "boundary polygon is only available in dimension 2");

    struct Dir {
        double angle;
        Eigen::Vector2d g;
    };
    std::vector<Dir> dirs;
    for (int k = 0; k < z.count(); ++k) {
        Eigen::Vector2d g = z.generators.col(k);
        if (g.norm() == 0.0)
            continue;
        if (g.y() < 0.0 || (g.y() == 0.0 && g.x() < 0.0))
            g = -g;
        dirs.push_back({std::atan2(g.y(), g.x()), g});
    }
    std::sort(dirs.begin(), dirs.end(), [](const Dir& a, const Dir& b) { return a.angle < b.angle; });

    // Merge parallel generators into one segment per direction.
    std::vector<Eigen::Vector2d> merged;
    double last_angle = -1.0;
    for (const auto& d : dirs) {
        if (!merged.empty() && std::abs(d.angle - last_angle) <= 1e-12) {
            merged.back() += d.g;
        } else {
            merged.push_back(d.g);
            last_angle = d.angle;
        }
    }
    if (merged.size() < 2)
        fail(errc::degenerate, "all generators are parallel");

    Eigen::Vector2d v = Eigen::Vector2d::Zero();
    for (const auto& g : merged)
        v -= g;

    Polygon2D poly;
    poly.vertices.reserve(2 * merged.size());
    for (size_t i = 0; i < merged.size(); ++i) {
        poly.vertices.push_back(v);
        v += 2.0 * merged[i];
    }
    for (size_t i = 0; i < merged.size(); ++i)
        poly.vertices.push_back(-poly.vertices[i]);
    return poly;
}

/// Shoelace area, always nonnegative.
inline double polygon_area(const Polygon2D& p)
{
    double twice = 0.0;
    const size_t n = p.vertices.size();
    for (size_t i = 0; i < n; ++i) {
        const auto& a = p.vertices[i];
        const auto& b = p.vertices[(i + 1) % n];
        twice += a.x() * b.y() - a.y() * b.x();
    }
    return std::abs(twice) / 2.0;
}

} // namespace ctl
