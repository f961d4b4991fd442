#ifndef KPMP_PHYSICS_HPP
#define KPMP_PHYSICS_HPP

#include "kpmp/scene.hpp"

namespace kpmp
{

struct PlanarForce
{
    Vec2 force;  // N, world frame
};

struct CarControl
{
    double drive_torque = 0.0;  // N*m at the wheel
    double steer_torque = 0.0;  // N*m at the steering column
};

struct JointTorques
{
    std::vector<double> torques;  // N*m per joint
};

using ControlInput = std::variant<PlanarForce, CarControl, JointTorques>;

struct SimConfig
{
    double dt = 1e-3;               // integration substep, s
    double control_duration = 0.05; // one propagation step, s
    double gravity = 9.8;           // m/s^2
    int contact_solver_iterations = 10;
    double static_friction_epsilon = 1e-3;  // m/s

    // contact and integration constants
    double contact_mu = 0.5;        // body-body tangential friction
    double baumgarte = 0.2;
    double penetration_slop = 5e-4; // m
    double contact_tolerance = 1e-3;// m; gap below this counts as touching
    double joint_damping = 0.01;    // N*m*s/rad, arm joints
    double steer_damping = 0.5;     // N*m*s/rad; steer rate = torque / damping
    double velocity_blowup = 1e3;   // m/s; instability guard

    int substepsPerStep() const
    {
        return std::max(1, static_cast<int>(std::lround(control_duration / dt)));
    }
};

class SolverInstabilityError : public std::runtime_error
{
public:
    explicit SolverInstabilityError(const std::string &what) : std::runtime_error(what) {}
};

enum class ContactKind
{
    RobotFixed,
    RobotManipulatable,
    ObjectObject
};

struct ContactEvent
{
    int substep = 0;
    ContactKind kind = ContactKind::ObjectObject;
    std::string object_a;  // "robot" for robot contacts
    std::string object_b;
    Vec2 point;            // world frame, on the contacted surface
    Vec2 normal;           // from a to b
    Pose2 object_pose;     // pose of object_b at the event
};

struct SubstepRecord
{
    Vec2 applied_force;                  // holonomic actuation
    double drive_torque = 0.0;
    double steer_torque = 0.0;
    std::vector<double> joint_torques;
    Vec2 robot_displacement;
    double wheel_omega = 0.0;            // rad/s after the substep
    double steer_rate = 0.0;
    std::vector<double> joint_velocities;
};

struct PropagationLog
{
    double dt = 0.0;
    std::vector<SubstepRecord> substeps;
    std::vector<ContactEvent> contacts;

    bool hasRobotContact() const
    {
        for (const auto &c : contacts)
            if (c.kind != ContactKind::ObjectObject)
                return true;
        return false;
    }
};

std::string propagationLogToJson(const PropagationLog &log);

/// Coulomb ground friction on a body under `applied` force: holds the body
/// static when it is slow and the load is below mu*m*g, otherwise opposes
/// the sliding direction with kinetic magnitude mu*m*g.
Vec2 groundFrictionForce(double body_mass, double mu, const Vec2 &velocity, const Vec2 &applied,
                         const SimConfig &cfg);

/// Planar rigid-body state propagator. Deterministic: identical inputs give
/// bit-identical outputs. Stateless across calls; safe to share between
/// threads operating on distinct WorkspaceState values.
class Propagator
{
public:
    Propagator(const Scene &scene, SimConfig cfg);

    /// Applies `u` for steps * control_duration, integrating at cfg.dt.
    WorkspaceState propagate(const WorkspaceState &q, const ControlInput &u, int steps,
                             PropagationLog *log = nullptr) const;

    const SimConfig &config() const { return cfg_; }
    const Scene &scene() const { return *scene_; }

private:
    void substep(WorkspaceState &q, const ControlInput &u, int substep_index,
                 PropagationLog *log) const;

    const Scene *scene_;
    SimConfig cfg_;
    std::vector<double> object_inertia_;
    std::vector<double> joint_inertia_;  // arm diagonal model
};

}  // namespace kpmp

#endif
