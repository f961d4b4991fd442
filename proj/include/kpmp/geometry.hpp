#ifndef KPMP_GEOMETRY_HPP
#define KPMP_GEOMETRY_HPP

#include <cmath>
#include <array>
#include <vector>

namespace kpmp
{

struct Vec2
{
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2 &o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2 &o) const { return {x - o.x, y - o.y}; }
    Vec2 operator-() const { return {-x, -y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2 &operator+=(const Vec2 &o) { x += o.x; y += o.y; return *this; }
    Vec2 &operator-=(const Vec2 &o) { x -= o.x; y -= o.y; return *this; }
    Vec2 &operator*=(double s) { x *= s; y *= s; return *this; }

    double dot(const Vec2 &o) const { return x * o.x + y * o.y; }
    double cross(const Vec2 &o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
    double squaredNorm() const { return x * x + y * y; }
    Vec2 perp() const { return {-y, x}; }

    Vec2 normalized() const
    {
        double n = norm();
        return n > 0.0 ? Vec2{x / n, y / n} : Vec2{0.0, 0.0};
    }
};

inline Vec2 operator*(double s, const Vec2 &v) { return {v.x * s, v.y * s}; }

/// Wrap an angle to (-pi, pi].
inline double normalizeAngle(double a)
{
    a = std::fmod(a, 2.0 * M_PI);
    if (a <= -M_PI)
        a += 2.0 * M_PI;
    else if (a > M_PI)
        a -= 2.0 * M_PI;
    return a;
}

/// Signed angular difference a-b wrapped to (-pi, pi].
inline double angleDiff(double a, double b) { return normalizeAngle(a - b); }

/// Planar rigid transform: rotation by `heading` followed by translation.
struct Pose2
{
    Vec2 position;
    double heading = 0.0;  // radians in (-pi, pi]

    Pose2() = default;
    Pose2(Vec2 p, double h) : position(p), heading(normalizeAngle(h)) {}
    Pose2(double x, double y, double h) : position(x, y), heading(normalizeAngle(h)) {}

    Vec2 rotate(const Vec2 &v) const
    {
        double c = std::cos(heading), s = std::sin(heading);
        return {c * v.x - s * v.y, s * v.x + c * v.y};
    }
    Vec2 rotateBack(const Vec2 &v) const
    {
        double c = std::cos(heading), s = std::sin(heading);
        return {c * v.x + s * v.y, -s * v.x + c * v.y};
    }
    Vec2 apply(const Vec2 &p) const { return rotate(p) + position; }
    Vec2 applyInverse(const Vec2 &p) const { return rotateBack(p - position); }

    /// this ∘ other: apply `other` first, then this.
    Pose2 compose(const Pose2 &other) const
    {
        return Pose2(apply(other.position), heading + other.heading);
    }
    Pose2 inverse() const
    {
        return Pose2(rotateBack(-position.x, -position.y), -heading);
    }

private:
    Vec2 rotateBack(double px, double py) const { return rotateBack(Vec2{px, py}); }
};

using Polygon = std::vector<Vec2>;  // convex, CCW

}  // namespace kpmp

#endif
