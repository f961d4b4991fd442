#ifndef KPMP_KNOWLEDGE_HPP
#define KPMP_KNOWLEDGE_HPP

#include <map>
#include <set>
#include <string>

#include "kpmp/scene.hpp"

namespace kpmp
{

class KnowledgeError : public std::runtime_error
{
public:
    explicit KnowledgeError(const std::string &what) : std::runtime_error(what) {}
};

/// High-level facts about one workspace object: its class assertion plus the
/// data and object properties the inference predicates consume.
struct ObjectFacts
{
    std::string id;
    ObjectClass declared_class = ObjectClass::Fixed;
    Shape shape;
    double mass = 1.0;
    double mu_ground = 0.0;
    bool gravity_affected = true;
    std::optional<Vec2> motion_axis;                  // object frame
    std::vector<ManipulationRegion> declared_regions;
};

struct RobotFacts
{
    DynamicBounds bounds;
    std::vector<std::pair<double, double>> joint_limits;  // arm joints, or car steer
};

struct SemanticKnowledge
{
    std::vector<ObjectFacts> objects;
    RobotFacts robot;
};

SemanticKnowledge buildSemanticKnowledge(const Scene &scene);

struct ObjectPhysicalProperties
{
    double mass = 0.0;
    double mu_ground = 0.0;
    bool gravity_affected = true;
    Shape dimensions;
};

/// Planner-facing knowledge about one object, fixed for the whole query.
struct ObjectKnowledge
{
    std::string id;
    ObjectClass resolved_class = ObjectClass::Fixed;
    ObjectPhysicalProperties properties;
    std::optional<Vec2> motion_axis;
    std::vector<ManipulationRegion> regions;
    double push_force_threshold = 0.0;  // mu * m * g
};

struct ManipulationKnowledge
{
    std::vector<ObjectKnowledge> objects;
    RobotFacts robot;
    double gravity = 9.8;

    const ObjectKnowledge *find(const std::string &id) const;
    const ManipulationRegion *findRegion(const std::string &region_id) const;
    std::set<std::string> allRegionIds() const;
};

/// Classification predicate: declared class, except that manipulatable
/// objects whose sustained push force mu*m*g exceeds the robot capacity
/// are reported as fixed.
ObjectClass objectClassification(const ObjectFacts &obj, const DynamicBounds &robot_bounds,
                                 double gravity = 9.8);

/// Region predicate: resolves the full region set for a manipulatable object,
/// generating per-face regions when none are declared and restricting
/// constraint-oriented objects to regions aligned with their motion axis.
std::vector<ManipulationRegion> manipulatableRegion(const ObjectFacts &obj);

ObjectPhysicalProperties objectProperties(const ObjectFacts &obj);

struct RobotProperties
{
    DynamicBounds dynamic_bounds;
    std::vector<std::pair<double, double>> kinematic_limits;
    std::optional<std::pair<double, double>> drive_torque_range;  // car: f bounds at the wheel
};

RobotProperties robotProperties(const RobotModel &model);

/// Offline inference of the manipulation knowledge; runs once before planning.
ManipulationKnowledge inferManipulationKnowledge(const SemanticKnowledge &ks,
                                                 const RobotModel &robot, double gravity = 9.8);

std::string manipulationKnowledgeToJson(const ManipulationKnowledge &km);

enum class LocationKind
{
    Move,
    Interaction,
    Contact
};

struct RobotLocation
{
    LocationKind kind = LocationKind::Move;
    std::string object_id;   // Contact only
    std::string region_id;   // Contact only
};

struct ControlRange
{
    double lo = 0.0;
    double hi = 0.0;
};

/// Per-step knowledge snapshot: active regions, the control sampling range,
/// and the constraint tags the physics must honor for this step.
struct InstantiatedKnowledge
{
    std::set<std::string> active_region_ids;
    ControlRange control_range;                            // force magnitude, N
    std::vector<double> joint_torque_lo, joint_torque_hi;  // arm mapping
    std::optional<std::pair<double, double>> drive_torque_range;  // car mapping
    RobotLocation location;
    std::map<std::string, std::optional<Vec2>> constraint_tags;
    std::map<std::string, ObjectPhysicalProperties> object_properties;
    Vec2 push_direction_world;  // unit; meaningful when location is Contact
    bool jacobian_fallback = false;
};

}  // namespace kpmp

#endif
