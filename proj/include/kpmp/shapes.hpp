#ifndef KPMP_SHAPES_HPP
#define KPMP_SHAPES_HPP

#include <optional>
#include <variant>

#include "kpmp/geometry.hpp"

namespace kpmp
{

struct Disk
{
    double radius = 0.0;
};

/// Axis-aligned box in its own frame, given by half extents.
struct Box
{
    double half_width = 0.0;  // along local x
    double half_depth = 0.0;  // along local y
};

/// A single link of a planar kinematic chain, modeled as a thin box whose
/// local frame sits at the proximal joint with +x pointing down the link.
struct ChainLink
{
    double length = 0.0;
    double thickness = 0.0;
};

using Shape = std::variant<Disk, Box, ChainLink>;

bool shapeValid(const Shape &s);
double largestHalfExtent(const Shape &s);

/// World-frame convex polygon of a box-like shape (disks have none).
Polygon shapePolygon(const Shape &s, const Pose2 &pose);

/// Closed-region intersection test; symmetric in its arguments.
bool overlap(const Shape &a, const Pose2 &pa, const Shape &b, const Pose2 &pb);

/// Exact separation distance between shape boundaries (0 when overlapping).
double shapeDistance(const Shape &a, const Pose2 &pa, const Shape &b, const Pose2 &pb);

/// Closest point on shape boundary (or interior projection) to a world point.
Vec2 closestPointOnShape(const Shape &s, const Pose2 &pose, const Vec2 &p);

bool pointInShape(const Shape &s, const Pose2 &pose, const Vec2 &p);
bool pointInPolygon(const Polygon &poly, const Vec2 &p, double tol = 0.0);

/// Contact manifold between two shapes, produced only when they penetrate
/// (or touch within `tol`). Normal points from shape A to shape B.
struct ContactManifold
{
    Vec2 normal;
    std::array<Vec2, 2> points;
    std::array<double, 2> depths;
    int count = 0;
};

std::optional<ContactManifold> collide(const Shape &a, const Pose2 &pa, const Shape &b,
                                       const Pose2 &pb, double tol = 0.0);

}  // namespace kpmp

#endif
