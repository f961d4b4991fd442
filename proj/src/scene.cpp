#include "kpmp/scene.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace kpmp
{

using nlohmann::json;

std::string toString(ObjectClass c)
{
    switch (c)
    {
        case ObjectClass::Fixed:
            return "fixed";
        case ObjectClass::FreeManipulatable:
            return "free_manipulatable";
        default:
            return "constraint_oriented";
    }
}

ObjectClass objectClassFromString(const std::string &s)
{
    if (s == "fixed")
        return ObjectClass::Fixed;
    if (s == "free_manipulatable")
        return ObjectClass::FreeManipulatable;
    if (s == "constraint_oriented")
        return ObjectClass::ConstraintOrientedManipulatable;
    throw SceneError("unknown object class '" + s + "'");
}

namespace
{

void checkKeys(const json &j, std::initializer_list<const char *> allowed,
               const std::string &context)
{
    for (auto it = j.begin(); it != j.end(); ++it)
    {
        bool ok = false;
        for (const char *k : allowed)
            if (it.key() == k)
            {
                ok = true;
                break;
            }
        if (!ok)
            throw SceneError("unknown key '" + it.key() + "' in " + context);
    }
}

const json &require(const json &j, const char *key, const std::string &context)
{
    auto it = j.find(key);
    if (it == j.end())
        throw SceneError("missing key '" + std::string(key) + "' in " + context);
    return *it;
}

Vec2 parseVec2(const json &j, const std::string &context)
{
    if (!j.is_array() || j.size() != 2)
        throw SceneError(context + " must be a [x, y] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

Pose2 parsePose(const json &j, const std::string &context)
{
    checkKeys(j, {"position", "heading"}, context);
    Pose2 p;
    p.position = parseVec2(require(j, "position", context), context + ".position");
    if (j.contains("heading"))
        p.heading = normalizeAngle(j["heading"].get<double>());
    return p;
}

Shape parseShape(const json &j, const std::string &context)
{
    checkKeys(j, {"disk", "box", "chain_link"}, context);
    if (j.contains("disk"))
    {
        const json &d = j["disk"];
        checkKeys(d, {"radius"}, context + ".disk");
        Disk disk{require(d, "radius", context).get<double>()};
        if (disk.radius <= 0.0)
            throw SceneError(context + ": disk radius must be positive");
        return disk;
    }
    if (j.contains("box"))
    {
        const json &b = j["box"];
        checkKeys(b, {"half_width", "half_depth"}, context + ".box");
        Box box{require(b, "half_width", context).get<double>(),
                require(b, "half_depth", context).get<double>()};
        if (box.half_width <= 0.0 || box.half_depth <= 0.0)
            throw SceneError(context + ": box half extents must be positive");
        return box;
    }
    if (j.contains("chain_link"))
    {
        const json &c = j["chain_link"];
        checkKeys(c, {"length", "thickness"}, context + ".chain_link");
        ChainLink link{require(c, "length", context).get<double>(),
                       require(c, "thickness", context).get<double>()};
        if (link.length <= 0.0 || link.thickness <= 0.0)
            throw SceneError(context + ": chain link dimensions must be positive");
        return link;
    }
    throw SceneError(context + ": shape must declare disk, box, or chain_link");
}

json shapeToJson(const Shape &s)
{
    json j;
    if (const auto *d = std::get_if<Disk>(&s))
        j["disk"] = {{"radius", d->radius}};
    else if (const auto *b = std::get_if<Box>(&s))
        j["box"] = {{"half_width", b->half_width}, {"half_depth", b->half_depth}};
    else
    {
        const auto &c = std::get<ChainLink>(s);
        j["chain_link"] = {{"length", c.length}, {"thickness", c.thickness}};
    }
    return j;
}

json poseToJson(const Pose2 &p)
{
    return {{"position", {p.position.x, p.position.y}}, {"heading", p.heading}};
}

ManipulationRegion parseRegion(const json &j, const std::string &owner,
                               const std::string &context)
{
    checkKeys(j, {"id", "pose", "extent", "push_direction", "opposite"}, context);
    ManipulationRegion r;
    r.id = require(j, "id", context).get<std::string>();
    r.owner_object_id = owner;
    r.local_pose = parsePose(require(j, "pose", context), context + ".pose");
    const json &e = require(j, "extent", context);
    checkKeys(e, {"half_width", "half_depth"}, context + ".extent");
    r.extent = {require(e, "half_width", context).get<double>(),
                require(e, "half_depth", context).get<double>()};
    if (r.extent.half_width <= 0.0 || r.extent.half_depth <= 0.0)
        throw SceneError(context + ": region extent must be positive");
    Vec2 dir = parseVec2(require(j, "push_direction", context), context + ".push_direction");
    if (dir.norm() < 1e-12)
        throw SceneError(context + ": push_direction must be non-zero");
    r.push_direction = dir.normalized();
    if (j.contains("opposite"))
        r.opposite_region_id = j["opposite"].get<std::string>();
    return r;
}

DynamicBounds parseBounds(const json &j, const std::string &context)
{
    checkKeys(j, {"f_min", "f_max", "v_max"}, context);
    DynamicBounds b;
    b.f_min = require(j, "f_min", context).get<double>();
    b.f_max = require(j, "f_max", context).get<double>();
    b.v_max = require(j, "v_max", context).get<double>();
    if (b.f_min < 0.0 || b.f_min >= b.f_max)
        throw SceneError(context + ": bounds require 0 <= f_min < f_max");
    if (b.v_max <= 0.0)
        throw SceneError(context + ": v_max must be positive");
    return b;
}

RobotState parseRobotState(const json &j, const RobotModel &model, const std::string &context)
{
    if (model.isArm())
    {
        checkKeys(j, {"joints"}, context);
        ArmState s;
        for (const auto &v : require(j, "joints", context))
            s.joints.push_back(v.get<double>());
        const auto &arm = model.arm();
        if (s.joints.size() != arm.link_lengths.size())
            throw SceneError(context + ": joint count does not match arm");
        for (size_t i = 0; i < s.joints.size(); ++i)
            if (s.joints[i] < arm.joint_limits[i].first || s.joints[i] > arm.joint_limits[i].second)
                throw SceneError(context + ": joint " + std::to_string(i) + " outside limits");
        s.joint_velocities.assign(s.joints.size(), 0.0);
        return s;
    }
    if (model.isCar())
    {
        checkKeys(j, {"position", "heading", "speed", "steer"}, context);
        CarState s;
        s.pose.position = parseVec2(require(j, "position", context), context);
        if (j.contains("heading"))
            s.pose.heading = normalizeAngle(j["heading"].get<double>());
        if (j.contains("speed"))
            s.speed = j["speed"].get<double>();
        if (j.contains("steer"))
            s.steer = j["steer"].get<double>();
        return s;
    }
    checkKeys(j, {"position", "heading"}, context);
    DiskState s;
    s.pose.position = parseVec2(require(j, "position", context), context);
    if (j.contains("heading"))
        s.pose.heading = normalizeAngle(j["heading"].get<double>());
    return s;
}

json robotStateToJson(const RobotState &state)
{
    json j;
    if (const auto *d = std::get_if<DiskState>(&state))
    {
        j["position"] = {d->pose.position.x, d->pose.position.y};
        j["heading"] = d->pose.heading;
    }
    else if (const auto *c = std::get_if<CarState>(&state))
    {
        j["position"] = {c->pose.position.x, c->pose.position.y};
        j["heading"] = c->pose.heading;
        j["speed"] = c->speed;
        j["steer"] = c->steer;
    }
    else
    {
        j["joints"] = std::get<ArmState>(state).joints;
    }
    return j;
}

RobotModel parseRobot(const json &j)
{
    const std::string context = "robot";
    RobotModel model;
    std::string type = require(j, "type", context).get<std::string>();
    if (type == "holonomic_disk")
    {
        checkKeys(j, {"type", "radius", "mass", "mu_ground", "bounds", "start"}, context);
        HolonomicDisk d;
        d.radius = require(j, "radius", context).get<double>();
        d.mass = require(j, "mass", context).get<double>();
        d.mu_ground = require(j, "mu_ground", context).get<double>();
        if (d.radius <= 0.0 || d.mass <= 0.0 || d.mu_ground < 0.0)
            throw SceneError("robot: invalid disk parameters");
        model.body = d;
    }
    else if (type == "car")
    {
        checkKeys(j,
                  {"type", "chassis", "wheel_radius", "mass", "mu_wheel", "max_steer",
                   "max_steer_torque", "bounds", "start"},
                  context);
        CarLike c;
        const json &ch = require(j, "chassis", context);
        checkKeys(ch, {"half_width", "half_depth"}, "robot.chassis");
        c.chassis = {require(ch, "half_width", context).get<double>(),
                     require(ch, "half_depth", context).get<double>()};
        c.wheel_radius = require(j, "wheel_radius", context).get<double>();
        c.mass = require(j, "mass", context).get<double>();
        c.mu_wheel = require(j, "mu_wheel", context).get<double>();
        c.max_steer = require(j, "max_steer", context).get<double>();
        c.max_steer_torque = require(j, "max_steer_torque", context).get<double>();
        if (c.chassis.half_width <= 0.0 || c.chassis.half_depth <= 0.0 || c.wheel_radius <= 0.0 ||
            c.mass <= 0.0 || c.mu_wheel < 0.0 || c.max_steer <= 0.0 || c.max_steer_torque <= 0.0)
            throw SceneError("robot: invalid car parameters");
        model.body = c;
    }
    else if (type == "planar_arm")
    {
        checkKeys(j,
                  {"type", "base", "link_lengths", "link_masses", "joint_limits",
                   "link_thickness", "bounds", "start"},
                  context);
        PlanarArm a;
        a.base = parsePose(require(j, "base", context), "robot.base");
        for (const auto &v : require(j, "link_lengths", context))
            a.link_lengths.push_back(v.get<double>());
        for (const auto &v : require(j, "link_masses", context))
            a.link_masses.push_back(v.get<double>());
        for (const auto &v : require(j, "joint_limits", context))
        {
            if (!v.is_array() || v.size() != 2)
                throw SceneError("robot.joint_limits entries must be [lo, hi]");
            a.joint_limits.emplace_back(v[0].get<double>(), v[1].get<double>());
        }
        if (j.contains("link_thickness"))
            a.link_thickness = j["link_thickness"].get<double>();
        if (a.link_lengths.empty() || a.link_lengths.size() != a.link_masses.size() ||
            a.link_lengths.size() != a.joint_limits.size())
            throw SceneError("robot: link_lengths, link_masses, joint_limits sizes must match");
        for (size_t i = 0; i < a.link_lengths.size(); ++i)
        {
            if (a.link_lengths[i] <= 0.0 || a.link_masses[i] <= 0.0)
                throw SceneError("robot: link dimensions and masses must be positive");
            if (a.joint_limits[i].first >= a.joint_limits[i].second)
                throw SceneError("robot: joint " + std::to_string(i) + " limits require lo < hi");
        }
        if (a.link_thickness <= 0.0)
            throw SceneError("robot: link_thickness must be positive");
        model.body = a;
    }
    else
    {
        throw SceneError("robot: unknown type '" + type + "'");
    }
    model.bounds = parseBounds(require(j, "bounds", context), "robot.bounds");
    return model;
}

json robotToJson(const RobotModel &model, const RobotState &start)
{
    json j;
    if (model.isDisk())
    {
        const auto &d = model.disk();
        j["type"] = "holonomic_disk";
        j["radius"] = d.radius;
        j["mass"] = d.mass;
        j["mu_ground"] = d.mu_ground;
    }
    else if (model.isCar())
    {
        const auto &c = model.car();
        j["type"] = "car";
        j["chassis"] = {{"half_width", c.chassis.half_width}, {"half_depth", c.chassis.half_depth}};
        j["wheel_radius"] = c.wheel_radius;
        j["mass"] = c.mass;
        j["mu_wheel"] = c.mu_wheel;
        j["max_steer"] = c.max_steer;
        j["max_steer_torque"] = c.max_steer_torque;
    }
    else
    {
        const auto &a = model.arm();
        j["type"] = "planar_arm";
        j["base"] = poseToJson(a.base);
        j["link_lengths"] = a.link_lengths;
        j["link_masses"] = a.link_masses;
        json limits = json::array();
        for (const auto &l : a.joint_limits)
            limits.push_back({l.first, l.second});
        j["joint_limits"] = limits;
        j["link_thickness"] = a.link_thickness;
    }
    j["bounds"] = {{"f_min", model.bounds.f_min},
                   {"f_max", model.bounds.f_max},
                   {"v_max", model.bounds.v_max}};
    j["start"] = robotStateToJson(start);
    return j;
}

Shape shrink(const Shape &s, double eps)
{
    if (const auto *d = std::get_if<Disk>(&s))
        return Disk{std::max(1e-9, d->radius - eps)};
    if (const auto *b = std::get_if<Box>(&s))
        return Box{std::max(1e-9, b->half_width - eps), std::max(1e-9, b->half_depth - eps)};
    const auto &c = std::get<ChainLink>(s);
    return ChainLink{std::max(1e-9, c.length - eps), std::max(1e-9, c.thickness - eps)};
}

void validateScene(const Scene &scene)
{
    std::map<std::string, int> seen;
    for (const auto &obj : scene.objects)
    {
        if (obj.id.empty())
            throw SceneError("object with empty id");
        if (seen.count(obj.id))
            throw SceneError("duplicate object id '" + obj.id + "'");
        seen[obj.id] = 1;
        if (!shapeValid(obj.shape))
            throw SceneError("object '" + obj.id + "': invalid shape dimensions");
        if (obj.mass <= 0.0)
            throw SceneError("object '" + obj.id + "': mass must be positive");
        if (obj.mu_ground < 0.0)
            throw SceneError("object '" + obj.id + "': mu_ground must be non-negative");
        if (obj.object_class == ObjectClass::Fixed && !obj.regions.empty())
            throw SceneError("object '" + obj.id +
                             "': fixed objects cannot own manipulation regions");
        if (obj.object_class == ObjectClass::ConstraintOrientedManipulatable &&
            !obj.motion_constraint)
            throw SceneError("object '" + obj.id +
                             "': constraint_oriented objects require constraint_axis");
        if (obj.object_class != ObjectClass::ConstraintOrientedManipulatable &&
            obj.motion_constraint)
            throw SceneError("object '" + obj.id +
                             "': constraint_axis only applies to constraint_oriented objects");
        for (const auto &r : obj.regions)
        {
            if (std::abs(r.push_direction.norm() - 1.0) > 1e-9)
                throw SceneError("region '" + r.id + "' of '" + obj.id +
                                 "': push_direction must be unit length");
            // Regions may abut the owner surface but not reach into it.
            if (overlap(Shape{r.extent}, r.local_pose, shrink(obj.shape, 1e-6), Pose2{}))
                throw SceneError("region '" + r.id + "' of '" + obj.id +
                                 "': extent overlaps the owner body");
        }
    }
    auto footprint = robotFootprint(scene.robot, scene.initial_state.robot);
    for (const auto &obj : scene.objects)
    {
        if (obj.object_class != ObjectClass::Fixed)
            continue;
        for (const auto &[shape, pose] : footprint)
            if (overlap(shape, pose, obj.shape, obj.initial_pose))
                throw SceneError("fixed object '" + obj.id +
                                 "' overlaps the robot's initial placement");
    }
    if (scene.goal.radius <= 0.0)
        throw SceneError("goal radius must be positive");
    if (scene.goal.configuration.index() != scene.initial_state.robot.index())
        throw SceneError("goal configuration type does not match the robot model");
    if (scene.arena_min.x >= scene.arena_max.x || scene.arena_min.y >= scene.arena_max.y)
        throw SceneError("arena min must be strictly below arena max");
}

}  // namespace

int Scene::objectIndex(const std::string &id) const
{
    for (size_t i = 0; i < objects.size(); ++i)
        if (objects[i].id == id)
            return static_cast<int>(i);
    return -1;
}

const ObjectSpec &Scene::objectById(const std::string &id) const
{
    int i = objectIndex(id);
    if (i < 0)
        throw SceneError("unknown object id '" + id + "'");
    return objects[i];
}

Scene parseSceneText(const std::string &text, const std::string &name)
{
    json j;
    try
    {
        j = json::parse(text);
    }
    catch (const json::exception &e)
    {
        throw SceneError(name + ": parse failure: " + e.what());
    }

    checkKeys(j, {"arena", "robot", "objects", "goal"}, name);
    Scene scene;
    scene.source_path = name;
    scene.content_hash = fnv1a(text.data(), text.size());

    if (j.contains("arena"))
    {
        const json &a = j["arena"];
        checkKeys(a, {"min", "max"}, "arena");
        scene.arena_min = parseVec2(require(a, "min", "arena"), "arena.min");
        scene.arena_max = parseVec2(require(a, "max", "arena"), "arena.max");
    }

    const json &jr = require(j, "robot", name);
    scene.robot = parseRobot(jr);
    scene.initial_state.robot = parseRobotState(require(jr, "start", "robot"), scene.robot,
                                                "robot.start");

    if (j.contains("objects"))
    {
        for (size_t i = 0; i < j["objects"].size(); ++i)
        {
            const json &jo = j["objects"][i];
            std::string context = "objects[" + std::to_string(i) + "]";
            checkKeys(jo,
                      {"id", "class", "shape", "mass", "mu_ground", "gravity_affected", "pose",
                       "constraint_axis", "regions"},
                      context);
            ObjectSpec spec;
            spec.id = require(jo, "id", context).get<std::string>();
            context = "object '" + spec.id + "'";
            spec.object_class =
                objectClassFromString(require(jo, "class", context).get<std::string>());
            spec.shape = parseShape(require(jo, "shape", context), context);
            spec.mass = require(jo, "mass", context).get<double>();
            spec.mu_ground = require(jo, "mu_ground", context).get<double>();
            if (jo.contains("gravity_affected"))
                spec.gravity_affected = jo["gravity_affected"].get<bool>();
            spec.initial_pose = parsePose(require(jo, "pose", context), context + ".pose");
            if (jo.contains("constraint_axis"))
                spec.motion_constraint =
                    parseVec2(jo["constraint_axis"], context + ".constraint_axis").normalized();
            if (jo.contains("regions"))
                for (size_t k = 0; k < jo["regions"].size(); ++k)
                    spec.regions.push_back(parseRegion(
                        jo["regions"][k], spec.id,
                        context + ".regions[" + std::to_string(k) + "]"));
            scene.objects.push_back(std::move(spec));
        }
    }

    for (const auto &spec : scene.objects)
    {
        ObjectState st;
        st.pose = spec.initial_pose;
        st.constraint_tag = spec.motion_constraint;
        scene.initial_state.objects.push_back(st);
    }

    const json &jg = require(j, "goal", name);
    checkKeys(jg, {"configuration", "radius"}, "goal");
    scene.goal.configuration =
        parseRobotState(require(jg, "configuration", "goal"), scene.robot, "goal.configuration");
    scene.goal.radius = require(jg, "radius", "goal").get<double>();

    validateScene(scene);
    return scene;
}

Scene loadScene(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw SceneError("cannot open scene file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parseSceneText(ss.str(), path);
}

std::string serializeScene(const Scene &scene)
{
    json j;
    j["arena"] = {{"min", {scene.arena_min.x, scene.arena_min.y}},
                  {"max", {scene.arena_max.x, scene.arena_max.y}}};
    j["robot"] = robotToJson(scene.robot, scene.initial_state.robot);
    json objs = json::array();
    for (const auto &o : scene.objects)
    {
        json jo;
        jo["id"] = o.id;
        jo["class"] = toString(o.object_class);
        jo["shape"] = shapeToJson(o.shape);
        jo["mass"] = o.mass;
        jo["mu_ground"] = o.mu_ground;
        jo["gravity_affected"] = o.gravity_affected;
        jo["pose"] = poseToJson(o.initial_pose);
        if (o.motion_constraint)
            jo["constraint_axis"] = {o.motion_constraint->x, o.motion_constraint->y};
        if (!o.regions.empty())
        {
            json regions = json::array();
            for (const auto &r : o.regions)
            {
                json jr;
                jr["id"] = r.id;
                jr["pose"] = poseToJson(r.local_pose);
                jr["extent"] = {{"half_width", r.extent.half_width},
                                {"half_depth", r.extent.half_depth}};
                jr["push_direction"] = {r.push_direction.x, r.push_direction.y};
                if (r.opposite_region_id)
                    jr["opposite"] = *r.opposite_region_id;
                regions.push_back(jr);
            }
            jo["regions"] = regions;
        }
        objs.push_back(jo);
    }
    j["objects"] = objs;
    j["goal"] = {{"configuration", robotStateToJson(scene.goal.configuration)},
                 {"radius", scene.goal.radius}};
    return j.dump(2) + "\n";
}

Vec2 robotProjection(const RobotModel &model, const RobotState &state)
{
    if (const auto *d = std::get_if<DiskState>(&state))
        return d->pose.position;
    if (const auto *c = std::get_if<CarState>(&state))
        return c->pose.position;
    return armToolPoint(model.arm(), std::get<ArmState>(state).joints);
}

std::vector<Pose2> armLinkFrames(const PlanarArm &arm, const std::vector<double> &joints)
{
    std::vector<Pose2> frames;
    frames.reserve(arm.link_lengths.size());
    Vec2 p = arm.base.position;
    double angle = arm.base.heading;
    for (size_t i = 0; i < arm.link_lengths.size(); ++i)
    {
        angle += joints[i];
        frames.emplace_back(p, angle);
        p = p + frames.back().rotate({arm.link_lengths[i], 0.0});
    }
    return frames;
}

Vec2 armToolPoint(const PlanarArm &arm, const std::vector<double> &joints)
{
    auto frames = armLinkFrames(arm, joints);
    const Pose2 &last = frames.back();
    return last.apply({arm.link_lengths.back(), 0.0});
}

std::vector<std::pair<Shape, Pose2>> robotFootprint(const RobotModel &model,
                                                    const RobotState &state)
{
    std::vector<std::pair<Shape, Pose2>> out;
    if (const auto *d = std::get_if<DiskState>(&state))
    {
        out.emplace_back(Disk{model.disk().radius}, d->pose);
    }
    else if (const auto *c = std::get_if<CarState>(&state))
    {
        out.emplace_back(model.car().chassis, c->pose);
    }
    else
    {
        const auto &arm = model.arm();
        const auto &s = std::get<ArmState>(state);
        for (size_t i = 0; i < s.joints.size(); ++i)
            if (s.joints[i] < arm.joint_limits[i].first - 1e-9 ||
                s.joints[i] > arm.joint_limits[i].second + 1e-9)
                throw SceneError("joint " + std::to_string(i) + " outside limits");
        auto frames = armLinkFrames(arm, s.joints);
        for (size_t i = 0; i < frames.size(); ++i)
            out.emplace_back(ChainLink{arm.link_lengths[i], arm.link_thickness}, frames[i]);
    }
    return out;
}

Polygon regionWorldPolygon(const ManipulationRegion &region, const ObjectState &owner_state)
{
    Pose2 world = owner_state.pose.compose(region.local_pose);
    return shapePolygon(Shape{region.extent}, world);
}

std::uint64_t fnv1a(const void *data, std::size_t size, std::uint64_t seed)
{
    const auto *bytes = static_cast<const unsigned char *>(data);
    std::uint64_t h = seed;
    for (std::size_t i = 0; i < size; ++i)
    {
        h ^= bytes[i];
        h *= 1099511628211ULL;
    }
    return h;
}

namespace
{

void hashDouble(std::uint64_t &h, double v)
{
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof(bits));
    h = fnv1a(&bits, sizeof(bits), h);
}

}  // namespace

std::uint64_t stateDigest(const WorkspaceState &state)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (const auto &o : state.objects)
    {
        hashDouble(h, o.pose.position.x);
        hashDouble(h, o.pose.position.y);
        hashDouble(h, o.pose.heading);
        hashDouble(h, o.linear_velocity.x);
        hashDouble(h, o.linear_velocity.y);
        hashDouble(h, o.angular_velocity);
    }
    if (const auto *d = std::get_if<DiskState>(&state.robot))
    {
        hashDouble(h, d->pose.position.x);
        hashDouble(h, d->pose.position.y);
        hashDouble(h, d->pose.heading);
        hashDouble(h, d->velocity.x);
        hashDouble(h, d->velocity.y);
    }
    else if (const auto *c = std::get_if<CarState>(&state.robot))
    {
        hashDouble(h, c->pose.position.x);
        hashDouble(h, c->pose.position.y);
        hashDouble(h, c->pose.heading);
        hashDouble(h, c->speed);
        hashDouble(h, c->steer);
    }
    else
    {
        const auto &a = std::get<ArmState>(state.robot);
        for (double q : a.joints)
            hashDouble(h, q);
        for (double qd : a.joint_velocities)
            hashDouble(h, qd);
    }
    hashDouble(h, state.time);
    return h;
}

bool statesIdentical(const WorkspaceState &a, const WorkspaceState &b)
{
    return stateDigest(a) == stateDigest(b) && a.objects.size() == b.objects.size();
}

}  // namespace kpmp
