#include "kpmp/shapes.hpp"

#include <algorithm>
#include <limits>

namespace kpmp
{

namespace
{

struct DiskWorld
{
    Vec2 center;
    double radius;
};

bool isDisk(const Shape &s) { return std::holds_alternative<Disk>(s); }

DiskWorld diskWorld(const Shape &s, const Pose2 &pose)
{
    return {pose.position, std::get<Disk>(s).radius};
}

Vec2 faceNormal(const Polygon &poly, size_t i)
{
    const Vec2 &a = poly[i];
    const Vec2 &b = poly[(i + 1) % poly.size()];
    Vec2 e = b - a;
    return Vec2{e.y, -e.x}.normalized();  // outward for CCW winding
}

double pointSegmentDistance(const Vec2 &p, const Vec2 &a, const Vec2 &b, Vec2 *closest)
{
    Vec2 ab = b - a;
    double t = ab.squaredNorm() > 0.0 ? (p - a).dot(ab) / ab.squaredNorm() : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    Vec2 c = a + ab * t;
    if (closest)
        *closest = c;
    return (p - c).norm();
}

double pointPolygonDistance(const Vec2 &p, const Polygon &poly, Vec2 *closest)
{
    if (pointInPolygon(poly, p))
    {
        if (closest)
            *closest = p;
        return 0.0;
    }
    double best = std::numeric_limits<double>::max();
    Vec2 bestPoint;
    for (size_t i = 0; i < poly.size(); ++i)
    {
        Vec2 c;
        double d = pointSegmentDistance(p, poly[i], poly[(i + 1) % poly.size()], &c);
        if (d < best)
        {
            best = d;
            bestPoint = c;
        }
    }
    if (closest)
        *closest = bestPoint;
    return best;
}

double polygonPolygonDistance(const Polygon &a, const Polygon &b)
{
    double best = std::numeric_limits<double>::max();
    for (const Vec2 &v : a)
        best = std::min(best, pointPolygonDistance(v, b, nullptr));
    for (const Vec2 &v : b)
        best = std::min(best, pointPolygonDistance(v, a, nullptr));
    return best;
}

/// Largest signed separation of polygon `b` from the faces of `a`;
/// negative values mean penetration along every face normal.
double maxFaceSeparation(const Polygon &a, const Polygon &b, size_t &bestFace)
{
    double best = -std::numeric_limits<double>::max();
    bestFace = 0;
    for (size_t i = 0; i < a.size(); ++i)
    {
        Vec2 n = faceNormal(a, i);
        double minProj = std::numeric_limits<double>::max();
        for (const Vec2 &v : b)
            minProj = std::min(minProj, n.dot(v - a[i]));
        if (minProj > best)
        {
            best = minProj;
            bestFace = i;
        }
    }
    return best;
}

bool polygonsOverlap(const Polygon &a, const Polygon &b)
{
    size_t f;
    if (maxFaceSeparation(a, b, f) > 0.0)
        return false;
    if (maxFaceSeparation(b, a, f) > 0.0)
        return false;
    return true;
}

// Sutherland-Hodgman style clip of a segment against a half plane n.x <= offset.
int clipSegment(std::array<Vec2, 2> &points, const Vec2 &n, double offset)
{
    std::array<Vec2, 2> out;
    int count = 0;
    double d0 = n.dot(points[0]) - offset;
    double d1 = n.dot(points[1]) - offset;
    if (d0 <= 0.0)
        out[count++] = points[0];
    if (d1 <= 0.0)
        out[count++] = points[1];
    if (d0 * d1 < 0.0 && count < 2)
    {
        double t = d0 / (d0 - d1);
        out[count++] = points[0] + (points[1] - points[0]) * t;
    }
    points = out;
    return count;
}

std::optional<ContactManifold> collidePolygons(const Polygon &a, const Polygon &b, double tol)
{
    size_t faceA, faceB;
    double sepA = maxFaceSeparation(a, b, faceA);
    if (sepA > tol)
        return std::nullopt;
    double sepB = maxFaceSeparation(b, a, faceB);
    if (sepB > tol)
        return std::nullopt;

    // Reference polygon owns the face of least penetration; small bias keeps
    // the choice stable when the separations tie.
    const Polygon *ref = &a;
    const Polygon *inc = &b;
    size_t refFace = faceA;
    bool flipped = false;
    if (sepB > sepA + 1e-10)
    {
        ref = &b;
        inc = &a;
        refFace = faceB;
        flipped = true;
    }

    Vec2 refNormal = faceNormal(*ref, refFace);
    Vec2 refV1 = (*ref)[refFace];
    Vec2 refV2 = (*ref)[(refFace + 1) % ref->size()];

    // Incident face: the face of `inc` most anti-parallel to the reference normal.
    size_t incFace = 0;
    double minDot = std::numeric_limits<double>::max();
    for (size_t i = 0; i < inc->size(); ++i)
    {
        double d = refNormal.dot(faceNormal(*inc, i));
        if (d < minDot)
        {
            minDot = d;
            incFace = i;
        }
    }
    std::array<Vec2, 2> pts = {(*inc)[incFace], (*inc)[(incFace + 1) % inc->size()]};

    Vec2 tangent = (refV2 - refV1).normalized();
    if (clipSegment(pts, -tangent, -tangent.dot(refV1)) < 2)
        return std::nullopt;
    if (clipSegment(pts, tangent, tangent.dot(refV2)) < 2)
        return std::nullopt;

    ContactManifold m;
    m.normal = flipped ? -refNormal : refNormal;  // from A to B
    for (const Vec2 &p : pts)
    {
        double separation = refNormal.dot(p - refV1);
        if (separation <= tol)
        {
            m.points[m.count] = p;
            m.depths[m.count] = -separation;
            ++m.count;
        }
    }
    if (m.count == 0)
        return std::nullopt;
    return m;
}

std::optional<ContactManifold> collideDiskPolygon(const DiskWorld &d, const Polygon &poly,
                                                  double tol, bool diskIsA)
{
    Vec2 closest;
    double dist = pointPolygonDistance(d.center, poly, &closest);
    Vec2 normalPolyToDisk;
    double depth;
    if (dist > 0.0)
    {
        if (dist > d.radius + tol)
            return std::nullopt;
        normalPolyToDisk = (d.center - closest).normalized();
        depth = d.radius - dist;
    }
    else
    {
        // Deep case: center inside the polygon; push out along least-penetrated face.
        double best = -std::numeric_limits<double>::max();
        size_t bestFace = 0;
        for (size_t i = 0; i < poly.size(); ++i)
        {
            double s = faceNormal(poly, i).dot(d.center - poly[i]);
            if (s > best)
            {
                best = s;
                bestFace = i;
            }
        }
        normalPolyToDisk = faceNormal(poly, bestFace);
        closest = d.center - normalPolyToDisk * best;
        depth = d.radius - best;
    }
    ContactManifold m;
    m.count = 1;
    m.points[0] = closest;
    m.depths[0] = depth;
    m.normal = diskIsA ? -normalPolyToDisk : normalPolyToDisk;
    return m;
}

}  // namespace

bool shapeValid(const Shape &s)
{
    if (const auto *d = std::get_if<Disk>(&s))
        return d->radius > 0.0;
    if (const auto *b = std::get_if<Box>(&s))
        return b->half_width > 0.0 && b->half_depth > 0.0;
    const auto &c = std::get<ChainLink>(s);
    return c.length > 0.0 && c.thickness > 0.0;
}

double largestHalfExtent(const Shape &s)
{
    if (const auto *d = std::get_if<Disk>(&s))
        return d->radius;
    if (const auto *b = std::get_if<Box>(&s))
        return std::max(b->half_width, b->half_depth);
    const auto &c = std::get<ChainLink>(s);
    return std::max(c.length * 0.5, c.thickness * 0.5);
}

Polygon shapePolygon(const Shape &s, const Pose2 &pose)
{
    Polygon local;
    if (const auto *b = std::get_if<Box>(&s))
    {
        double w = b->half_width, d = b->half_depth;
        local = {{-w, -d}, {w, -d}, {w, d}, {-w, d}};
    }
    else if (const auto *c = std::get_if<ChainLink>(&s))
    {
        double t = c->thickness * 0.5;
        local = {{0.0, -t}, {c->length, -t}, {c->length, t}, {0.0, t}};
    }
    else
    {
        return {};
    }
    for (Vec2 &v : local)
        v = pose.apply(v);
    return local;
}

bool pointInPolygon(const Polygon &poly, const Vec2 &p, double tol)
{
    for (size_t i = 0; i < poly.size(); ++i)
        if (faceNormal(poly, i).dot(p - poly[i]) > tol)
            return false;
    return true;
}

bool pointInShape(const Shape &s, const Pose2 &pose, const Vec2 &p)
{
    if (isDisk(s))
        return (p - pose.position).norm() <= std::get<Disk>(s).radius;
    return pointInPolygon(shapePolygon(s, pose), p);
}

Vec2 closestPointOnShape(const Shape &s, const Pose2 &pose, const Vec2 &p)
{
    if (isDisk(s))
    {
        DiskWorld d = diskWorld(s, pose);
        Vec2 delta = p - d.center;
        double n = delta.norm();
        if (n <= d.radius || n == 0.0)
            return p;
        return d.center + delta * (d.radius / n);
    }
    Vec2 c;
    pointPolygonDistance(p, shapePolygon(s, pose), &c);
    return c;
}

bool overlap(const Shape &a, const Pose2 &pa, const Shape &b, const Pose2 &pb)
{
    if (isDisk(a) && isDisk(b))
    {
        DiskWorld da = diskWorld(a, pa), db = diskWorld(b, pb);
        return (da.center - db.center).norm() <= da.radius + db.radius;
    }
    if (isDisk(a))
        return pointPolygonDistance(pa.position, shapePolygon(b, pb), nullptr) <=
               std::get<Disk>(a).radius;
    if (isDisk(b))
        return pointPolygonDistance(pb.position, shapePolygon(a, pa), nullptr) <=
               std::get<Disk>(b).radius;
    return polygonsOverlap(shapePolygon(a, pa), shapePolygon(b, pb));
}

double shapeDistance(const Shape &a, const Pose2 &pa, const Shape &b, const Pose2 &pb)
{
    if (isDisk(a) && isDisk(b))
    {
        DiskWorld da = diskWorld(a, pa), db = diskWorld(b, pb);
        return std::max(0.0, (da.center - db.center).norm() - da.radius - db.radius);
    }
    if (isDisk(a))
        return std::max(0.0, pointPolygonDistance(pa.position, shapePolygon(b, pb), nullptr) -
                                 std::get<Disk>(a).radius);
    if (isDisk(b))
        return std::max(0.0, pointPolygonDistance(pb.position, shapePolygon(a, pa), nullptr) -
                                 std::get<Disk>(b).radius);
    Polygon polyA = shapePolygon(a, pa), polyB = shapePolygon(b, pb);
    if (polygonsOverlap(polyA, polyB))
        return 0.0;
    return polygonPolygonDistance(polyA, polyB);
}

std::optional<ContactManifold> collide(const Shape &a, const Pose2 &pa, const Shape &b,
                                       const Pose2 &pb, double tol)
{
    if (isDisk(a) && isDisk(b))
    {
        DiskWorld da = diskWorld(a, pa), db = diskWorld(b, pb);
        Vec2 delta = db.center - da.center;
        double d = delta.norm();
        if (d > da.radius + db.radius + tol)
            return std::nullopt;
        ContactManifold m;
        m.count = 1;
        m.normal = d > 0.0 ? delta / d : Vec2{1.0, 0.0};
        m.points[0] = da.center + m.normal * da.radius;
        m.depths[0] = da.radius + db.radius - d;
        return m;
    }
    if (isDisk(a))
        return collideDiskPolygon(diskWorld(a, pa), shapePolygon(b, pb), tol, true);
    if (isDisk(b))
        return collideDiskPolygon(diskWorld(b, pb), shapePolygon(a, pa), tol, false);
    return collidePolygons(shapePolygon(a, pa), shapePolygon(b, pb), tol);
}

}  // namespace kpmp
