#include "kpmp/knowledge.hpp"

#include <algorithm>

#include <json.hpp>

namespace kpmp
{

using nlohmann::json;

SemanticKnowledge buildSemanticKnowledge(const Scene &scene)
{
    SemanticKnowledge ks;
    for (const auto &spec : scene.objects)
    {
        ObjectFacts f;
        f.id = spec.id;
        f.declared_class = spec.object_class;
        f.shape = spec.shape;
        f.mass = spec.mass;
        f.mu_ground = spec.mu_ground;
        f.gravity_affected = spec.gravity_affected;
        f.motion_axis = spec.motion_constraint;
        f.declared_regions = spec.regions;
        ks.objects.push_back(std::move(f));
    }
    ks.robot.bounds = scene.robot.bounds;
    if (scene.robot.isArm())
        ks.robot.joint_limits = scene.robot.arm().joint_limits;
    else if (scene.robot.isCar())
        ks.robot.joint_limits = {{-scene.robot.car().max_steer, scene.robot.car().max_steer}};
    return ks;
}

ObjectClass objectClassification(const ObjectFacts &obj, const DynamicBounds &robot_bounds,
                                 double gravity)
{
    if (obj.declared_class == ObjectClass::Fixed)
        return ObjectClass::Fixed;
    double required = obj.mu_ground * obj.mass * gravity;
    if (required > robot_bounds.f_max)
        return ObjectClass::Fixed;  // too heavy for this robot to push
    return obj.declared_class;
}

namespace
{

struct FaceTemplate
{
    const char *name;
    Vec2 outward;
    const char *opposite;
};

constexpr FaceTemplate kFaces[] = {
    {"+x", {1.0, 0.0}, "-x"},
    {"-x", {-1.0, 0.0}, "+x"},
    {"+y", {0.0, 1.0}, "-y"},
    {"-y", {0.0, -1.0}, "+y"},
};

std::vector<ManipulationRegion> generateFaceRegions(const ObjectFacts &obj)
{
    double hw, hd;
    if (const auto *b = std::get_if<Box>(&obj.shape))
    {
        hw = b->half_width;
        hd = b->half_depth;
    }
    else if (const auto *d = std::get_if<Disk>(&obj.shape))
    {
        hw = hd = d->radius;
    }
    else
    {
        throw KnowledgeError("object '" + obj.id +
                             "': cannot generate regions for a chain_link shape");
    }
    double depth = 0.25 * std::max(hw, hd);
    std::vector<ManipulationRegion> out;
    for (const auto &f : kFaces)
    {
        ManipulationRegion r;
        r.id = obj.id + "/" + f.name;
        r.owner_object_id = obj.id;
        r.push_direction = -f.outward;  // robot in the region pushes inward
        double along = (f.outward.x != 0.0) ? hw : hd;
        double across = (f.outward.x != 0.0) ? hd : hw;
        r.local_pose = Pose2(f.outward * (along + depth * 0.5), 0.0);
        // extent is expressed in the region frame: x spans the face, y the depth
        r.extent = (f.outward.x != 0.0) ? Box{depth * 0.5, across} : Box{across, depth * 0.5};
        r.opposite_region_id = obj.id + "/" + f.opposite;
        out.push_back(std::move(r));
    }
    return out;
}

bool alignedWithAxis(const Vec2 &dir, const Vec2 &axis)
{
    return std::abs(std::abs(dir.dot(axis)) - 1.0) < 1e-6;
}

}  // namespace

std::vector<ManipulationRegion> manipulatableRegion(const ObjectFacts &obj)
{
    if (obj.declared_class == ObjectClass::Fixed)
        throw KnowledgeError("manipulatable_region called on fixed object '" + obj.id + "'");

    std::vector<ManipulationRegion> regions =
        obj.declared_regions.empty() ? generateFaceRegions(obj) : obj.declared_regions;

    if (obj.declared_class == ObjectClass::ConstraintOrientedManipulatable)
    {
        if (!obj.motion_axis)
            throw KnowledgeError("object '" + obj.id + "': constraint-oriented without axis");
        std::vector<ManipulationRegion> kept;
        for (auto &r : regions)
            if (alignedWithAxis(r.push_direction, *obj.motion_axis))
                kept.push_back(r);
        // Pair up front/rear regions along the axis.
        for (auto &r : kept)
        {
            for (auto &other : kept)
                if (&other != &r && std::abs(other.push_direction.dot(r.push_direction) + 1.0) < 1e-6)
                    r.opposite_region_id = other.id;
        }
        if (kept.size() % 2 != 0)
            throw KnowledgeError("object '" + obj.id +
                                 "': constraint-oriented regions must come in opposite pairs");
        return kept;
    }
    return regions;
}

ObjectPhysicalProperties objectProperties(const ObjectFacts &obj)
{
    return {obj.mass, obj.mu_ground, obj.gravity_affected, obj.shape};
}

RobotProperties robotProperties(const RobotModel &model)
{
    RobotProperties p;
    p.dynamic_bounds = model.bounds;
    if (model.isArm())
        p.kinematic_limits = model.arm().joint_limits;
    else if (model.isCar())
    {
        const auto &car = model.car();
        p.kinematic_limits = {{-car.max_steer, car.max_steer}};
        p.drive_torque_range = {model.bounds.f_min * car.wheel_radius,
                                model.bounds.f_max * car.wheel_radius};
    }
    return p;
}

ManipulationKnowledge inferManipulationKnowledge(const SemanticKnowledge &ks,
                                                 const RobotModel &robot, double gravity)
{
    std::set<std::string> seen;
    for (const auto &o : ks.objects)
        if (!seen.insert(o.id).second)
            throw KnowledgeError("inconsistent semantic knowledge: object '" + o.id +
                                 "' asserted more than once");

    ManipulationKnowledge km;
    km.gravity = gravity;
    km.robot = ks.robot;
    for (const auto &obj : ks.objects)
    {
        ObjectKnowledge k;
        k.id = obj.id;
        k.resolved_class = objectClassification(obj, ks.robot.bounds, gravity);
        k.properties = objectProperties(obj);
        k.push_force_threshold = obj.mu_ground * obj.mass * gravity;
        if (k.resolved_class != ObjectClass::Fixed)
        {
            k.motion_axis = obj.motion_axis;
            k.regions = manipulatableRegion(obj);
        }
        km.objects.push_back(std::move(k));
    }
    return km;
}

const ObjectKnowledge *ManipulationKnowledge::find(const std::string &id) const
{
    for (const auto &o : objects)
        if (o.id == id)
            return &o;
    return nullptr;
}

const ManipulationRegion *ManipulationKnowledge::findRegion(const std::string &region_id) const
{
    for (const auto &o : objects)
        for (const auto &r : o.regions)
            if (r.id == region_id)
                return &r;
    return nullptr;
}

std::set<std::string> ManipulationKnowledge::allRegionIds() const
{
    std::set<std::string> ids;
    for (const auto &o : objects)
        for (const auto &r : o.regions)
            ids.insert(r.id);
    return ids;
}

std::string manipulationKnowledgeToJson(const ManipulationKnowledge &km)
{
    json j;
    j["gravity"] = km.gravity;
    j["robot"] = {{"f_min", km.robot.bounds.f_min},
                  {"f_max", km.robot.bounds.f_max},
                  {"v_max", km.robot.bounds.v_max}};
    if (!km.robot.joint_limits.empty())
    {
        json limits = json::array();
        for (const auto &l : km.robot.joint_limits)
            limits.push_back({l.first, l.second});
        j["robot"]["kinematic_limits"] = limits;
    }
    json objs = json::array();
    for (const auto &o : km.objects)
    {
        json jo;
        jo["id"] = o.id;
        jo["class"] = toString(o.resolved_class);
        jo["mass"] = o.properties.mass;
        jo["mu_ground"] = o.properties.mu_ground;
        jo["gravity_affected"] = o.properties.gravity_affected;
        jo["push_force_threshold"] = o.push_force_threshold;
        if (o.motion_axis)
            jo["motion_axis"] = {o.motion_axis->x, o.motion_axis->y};
        json regions = json::array();
        for (const auto &r : o.regions)
        {
            json jr;
            jr["id"] = r.id;
            jr["push_direction"] = {r.push_direction.x, r.push_direction.y};
            if (r.opposite_region_id)
                jr["opposite"] = *r.opposite_region_id;
            regions.push_back(jr);
        }
        jo["regions"] = regions;
        objs.push_back(jo);
    }
    j["objects"] = objs;
    return j.dump(2) + "\n";
}

}  // namespace kpmp
