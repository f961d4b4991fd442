#ifndef KPMP_SCENE_HPP
#define KPMP_SCENE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "kpmp/shapes.hpp"

namespace kpmp
{

class SceneError : public std::runtime_error
{
public:
    explicit SceneError(const std::string &what) : std::runtime_error(what) {}
};

enum class ObjectClass
{
    Fixed,
    FreeManipulatable,
    ConstraintOrientedManipulatable
};

std::string toString(ObjectClass c);
ObjectClass objectClassFromString(const std::string &s);

/// Object-attached zone through which the robot may contact and push the owner.
struct ManipulationRegion
{
    std::string id;
    std::string owner_object_id;
    Pose2 local_pose;               // region frame in the owner's frame
    Box extent;
    Vec2 push_direction;            // unit vector, owner frame
    std::optional<std::string> opposite_region_id;
    bool active = true;
};

struct ObjectSpec
{
    std::string id;
    ObjectClass object_class = ObjectClass::Fixed;
    Shape shape;
    double mass = 1.0;
    double mu_ground = 0.0;
    bool gravity_affected = true;
    std::vector<ManipulationRegion> regions;         // declared; may be empty
    std::optional<Vec2> motion_constraint;           // unit axis, object frame
    Pose2 initial_pose;
};

struct ObjectState
{
    Pose2 pose;
    Vec2 linear_velocity;
    double angular_velocity = 0.0;
    std::optional<Vec2> constraint_tag;  // currently applicable motion axis, object frame
};

struct DynamicBounds
{
    double f_min = 0.0;  // N; sampling floor of the actuation force magnitude
    double f_max = 0.0;  // N
    double v_max = 0.0;  // m/s (mobile bases) or rad/s (arm joints)
};

struct HolonomicDisk
{
    double radius = 0.0;
    double mass = 0.0;
    double mu_ground = 0.0;
};

struct CarLike
{
    Box chassis;
    double wheel_radius = 0.0;
    double mass = 0.0;
    double mu_wheel = 0.0;        // tire traction coefficient
    double max_steer = 0.0;       // rad
    double max_steer_torque = 0.0;
};

struct PlanarArm
{
    std::vector<double> link_lengths;
    std::vector<double> link_masses;
    std::vector<std::pair<double, double>> joint_limits;
    Pose2 base;
    double link_thickness = 0.08;
};

struct RobotModel
{
    std::variant<HolonomicDisk, CarLike, PlanarArm> body;
    DynamicBounds bounds;

    bool isDisk() const { return std::holds_alternative<HolonomicDisk>(body); }
    bool isCar() const { return std::holds_alternative<CarLike>(body); }
    bool isArm() const { return std::holds_alternative<PlanarArm>(body); }
    const HolonomicDisk &disk() const { return std::get<HolonomicDisk>(body); }
    const CarLike &car() const { return std::get<CarLike>(body); }
    const PlanarArm &arm() const { return std::get<PlanarArm>(body); }
};

struct DiskState
{
    Pose2 pose;
    Vec2 velocity;
};

struct CarState
{
    Pose2 pose;
    double speed = 0.0;  // longitudinal, signed
    double steer = 0.0;  // front wheel angle, rad
};

struct ArmState
{
    std::vector<double> joints;
    std::vector<double> joint_velocities;
};

using RobotState = std::variant<DiskState, CarState, ArmState>;

/// Full world snapshot: the planner's state type.
struct WorkspaceState
{
    std::vector<ObjectState> objects;  // aligned with Scene::objects
    RobotState robot;
    double time = 0.0;
};

/// Ball in the robot-configuration projection (position, or arm tool point).
struct GoalRegion
{
    RobotState configuration;
    double radius = 0.0;
};

struct Scene
{
    std::vector<ObjectSpec> objects;
    RobotModel robot;
    WorkspaceState initial_state;
    GoalRegion goal;
    Vec2 arena_min{-10.0, -10.0};
    Vec2 arena_max{10.0, 10.0};
    std::string source_path;
    std::uint64_t content_hash = 0;

    int objectIndex(const std::string &id) const;
    const ObjectSpec &objectById(const std::string &id) const;
};

Scene loadScene(const std::string &path);
Scene parseSceneText(const std::string &text, const std::string &name = "<inline>");
std::string serializeScene(const Scene &scene);

/// Projection of the robot configuration used for goal tests and KPIECE grids:
/// base position for mobile robots, tool position for the arm.
Vec2 robotProjection(const RobotModel &model, const RobotState &state);

/// World placements of every robot body (arm: one entry per link).
std::vector<std::pair<Shape, Pose2>> robotFootprint(const RobotModel &model,
                                                    const RobotState &state);

/// Arm forward kinematics: world pose of the frame at the proximal joint of
/// each link, plus the tool point appended as the final entry's tip.
std::vector<Pose2> armLinkFrames(const PlanarArm &arm, const std::vector<double> &joints);
Vec2 armToolPoint(const PlanarArm &arm, const std::vector<double> &joints);

/// Region extent transformed into the world by owner pose ∘ local pose.
Polygon regionWorldPolygon(const ManipulationRegion &region, const ObjectState &owner_state);

std::uint64_t fnv1a(const void *data, std::size_t size, std::uint64_t seed = 1469598103934665603ULL);
std::uint64_t stateDigest(const WorkspaceState &state);
bool statesIdentical(const WorkspaceState &a, const WorkspaceState &b);

}  // namespace kpmp

#endif
