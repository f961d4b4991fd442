#include "kpmp/physics.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

namespace kpmp
{

using nlohmann::json;

Vec2 groundFrictionForce(double body_mass, double mu, const Vec2 &velocity, const Vec2 &applied,
                         const SimConfig &cfg)
{
    double limit = mu * body_mass * cfg.gravity;
    if (velocity.norm() < cfg.static_friction_epsilon && applied.norm() <= limit)
        return -applied;
    Vec2 dir = velocity.norm() > 0.0 ? velocity.normalized() : applied.normalized();
    return dir * -limit;
}

namespace
{

struct Mat2
{
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0;  // row major

    Vec2 operator*(const Vec2 &v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
    Mat2 operator+(const Mat2 &o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
    Mat2 operator*(double s) const { return {a * s, b * s, c * s, d * s}; }
};

Mat2 outer(const Vec2 &u, const Vec2 &v)
{
    return {u.x * v.x, u.x * v.y, u.y * v.x, u.y * v.y};
}

Mat2 scaledIdentity(double s) { return {s, 0.0, 0.0, s}; }

double quadraticForm(const Mat2 &m, const Vec2 &v) { return v.dot(m * v); }

enum class ProxyKind
{
    Object,
    RobotDisk,
    RobotCar,
    RobotArmLink
};

struct Proxy
{
    ProxyKind kind = ProxyKind::Object;
    int object_index = -1;
    int link_index = -1;
    Shape shape;
    Pose2 pose;
};

double shapeInertia(const Shape &s, double mass)
{
    if (const auto *d = std::get_if<Disk>(&s))
        return 0.5 * mass * d->radius * d->radius;
    if (const auto *b = std::get_if<Box>(&s))
        return mass * (b->half_width * b->half_width + b->half_depth * b->half_depth) / 3.0;
    const auto &c = std::get<ChainLink>(s);
    return mass * (c.length * c.length + c.thickness * c.thickness) / 12.0;
}

double torsionRadius(const Shape &s)
{
    if (const auto *d = std::get_if<Disk>(&s))
        return 0.5 * d->radius;
    if (const auto *b = std::get_if<Box>(&s))
        return 0.5 * (b->half_width + b->half_depth);
    const auto &c = std::get<ChainLink>(s);
    return 0.25 * (c.length + c.thickness);
}

/// Working view of the dynamic world during one substep.
struct Engine
{
    const Scene &scene;
    const SimConfig &cfg;
    const std::vector<double> &object_inertia;
    const std::vector<double> &joint_inertia;
    WorkspaceState &q;

    // accumulated contact impulses for the friction pass
    std::vector<Vec2> object_impulse;
    std::vector<double> object_angular_impulse;
    Vec2 robot_impulse;

    // arm scratch: world joint positions for the current configuration
    std::vector<Vec2> joint_positions;

    Engine(const Scene &s, const SimConfig &c, const std::vector<double> &oi,
           const std::vector<double> &ji, WorkspaceState &state)
        : scene(s), cfg(c), object_inertia(oi), joint_inertia(ji), q(state)
    {
        object_impulse.assign(scene.objects.size(), Vec2{});
        object_angular_impulse.assign(scene.objects.size(), 0.0);
        if (scene.robot.isArm())
        {
            const auto &arm = scene.robot.arm();
            auto frames = armLinkFrames(arm, std::get<ArmState>(q.robot).joints);
            for (const auto &f : frames)
                joint_positions.push_back(f.position);
        }
    }

    bool objectMovable(int i) const
    {
        return scene.objects[i].object_class != ObjectClass::Fixed;
    }

    std::optional<Vec2> worldConstraintAxis(int i) const
    {
        const auto &tag = q.objects[i].constraint_tag;
        if (!tag)
            return std::nullopt;
        return Pose2(Vec2{}, q.objects[i].pose.heading).rotate(*tag);
    }

    Vec2 carForward() const
    {
        const auto &c = std::get<CarState>(q.robot);
        return {std::cos(c.pose.heading), std::sin(c.pose.heading)};
    }

    Vec2 velocityAt(const Proxy &p, const Vec2 &point) const
    {
        switch (p.kind)
        {
            case ProxyKind::Object:
            {
                const auto &st = q.objects[p.object_index];
                Vec2 r = point - st.pose.position;
                return st.linear_velocity + r.perp() * st.angular_velocity;
            }
            case ProxyKind::RobotDisk:
                return std::get<DiskState>(q.robot).velocity;
            case ProxyKind::RobotCar:
                return carForward() * std::get<CarState>(q.robot).speed;
            case ProxyKind::RobotArmLink:
            {
                const auto &st = std::get<ArmState>(q.robot);
                Vec2 v{};
                for (int k = 0; k <= p.link_index; ++k)
                    v += (point - joint_positions[k]).perp() * st.joint_velocities[k];
                return v;
            }
        }
        return {};
    }

    Mat2 invMassAt(const Proxy &p, const Vec2 &point) const
    {
        switch (p.kind)
        {
            case ProxyKind::Object:
            {
                int i = p.object_index;
                if (!objectMovable(i))
                    return {};
                const auto &spec = scene.objects[i];
                if (auto axis = worldConstraintAxis(i))
                    return outer(*axis, *axis) * (1.0 / spec.mass);
                Vec2 r = (point - q.objects[i].pose.position).perp();
                return scaledIdentity(1.0 / spec.mass) + outer(r, r) * (1.0 / object_inertia[i]);
            }
            case ProxyKind::RobotDisk:
                return scaledIdentity(1.0 / scene.robot.disk().mass);
            case ProxyKind::RobotCar:
            {
                Vec2 u = carForward();
                return outer(u, u) * (1.0 / scene.robot.car().mass);
            }
            case ProxyKind::RobotArmLink:
            {
                Mat2 w{};
                for (int k = 0; k <= p.link_index; ++k)
                {
                    Vec2 col = (point - joint_positions[k]).perp();
                    w = w + outer(col, col) * (1.0 / joint_inertia[k]);
                }
                return w;
            }
        }
        return {};
    }

    void applyImpulse(const Proxy &p, const Vec2 &point, const Vec2 &j)
    {
        switch (p.kind)
        {
            case ProxyKind::Object:
            {
                int i = p.object_index;
                if (!objectMovable(i))
                    return;
                auto &st = q.objects[i];
                const auto &spec = scene.objects[i];
                if (auto axis = worldConstraintAxis(i))
                {
                    st.linear_velocity += *axis * (j.dot(*axis) / spec.mass);
                }
                else
                {
                    st.linear_velocity += j / spec.mass;
                    Vec2 r = point - st.pose.position;
                    st.angular_velocity += r.cross(j) / object_inertia[i];
                }
                object_impulse[i] += j;
                object_angular_impulse[i] += (point - st.pose.position).cross(j);
                break;
            }
            case ProxyKind::RobotDisk:
                std::get<DiskState>(q.robot).velocity += j / scene.robot.disk().mass;
                robot_impulse += j;
                break;
            case ProxyKind::RobotCar:
            {
                Vec2 u = carForward();
                std::get<CarState>(q.robot).speed += j.dot(u) / scene.robot.car().mass;
                break;
            }
            case ProxyKind::RobotArmLink:
            {
                auto &st = std::get<ArmState>(q.robot);
                for (int k = 0; k <= p.link_index; ++k)
                {
                    Vec2 col = (point - joint_positions[k]).perp();
                    st.joint_velocities[k] += col.dot(j) / joint_inertia[k];
                }
                break;
            }
        }
    }
};

struct Contact
{
    Proxy a, b;
    Vec2 point, normal;  // normal from a to b
    double depth = 0.0;
    double jn = 0.0, jt = 0.0;
};

}  // namespace

Propagator::Propagator(const Scene &scene, SimConfig cfg) : scene_(&scene), cfg_(cfg)
{
    for (const auto &o : scene.objects)
        object_inertia_.push_back(shapeInertia(o.shape, o.mass));
    if (scene.robot.isArm())
    {
        const auto &arm = scene.robot.arm();
        size_t n = arm.link_lengths.size();
        joint_inertia_.assign(n, 0.0);
        // Point mass at each link midpoint, aggregated over the distal chain
        // at the straight configuration.
        for (size_t k = 0; k < n; ++k)
        {
            double inertia = 0.0;
            for (size_t j = k; j < n; ++j)
            {
                double d = 0.0;
                for (size_t l = k; l < j; ++l)
                    d += arm.link_lengths[l];
                d += 0.5 * arm.link_lengths[j];
                inertia += arm.link_masses[j] * d * d;
            }
            joint_inertia_[k] = inertia;
        }
    }
}

WorkspaceState Propagator::propagate(const WorkspaceState &q, const ControlInput &u, int steps,
                                     PropagationLog *log) const
{
    if (steps < 1)
        throw std::invalid_argument("propagate requires steps >= 1");
    if (log)
        log->dt = cfg_.dt;
    WorkspaceState out = q;
    int substeps = cfg_.substepsPerStep();
    for (int s = 0; s < steps; ++s)
        for (int i = 0; i < substeps; ++i)
            substep(out, u, s * substeps + i, log);
    out.time = q.time + steps * cfg_.control_duration;
    return out;
}

void Propagator::substep(WorkspaceState &q, const ControlInput &u, int substep_index,
                         PropagationLog *log) const
{
    const double dt = cfg_.dt;
    Engine eng(*scene_, cfg_, object_inertia_, joint_inertia_, q);

    SubstepRecord rec;
    Vec2 robot_ref_before;

    // Velocities at substep start, for the friction regime decision.
    std::vector<Vec2> object_vel_before;
    std::vector<double> object_omega_before;
    for (const auto &st : q.objects)
    {
        object_vel_before.push_back(st.linear_velocity);
        object_omega_before.push_back(st.angular_velocity);
    }

    // 1. Robot actuation.
    Vec2 robot_applied_force;
    if (scene_->robot.isDisk())
    {
        auto &st = std::get<DiskState>(q.robot);
        robot_ref_before = st.pose.position;
        const auto &f = std::get<PlanarForce>(u);
        robot_applied_force = f.force;
        rec.applied_force = f.force;
        st.velocity += f.force * (dt / scene_->robot.disk().mass);
    }
    else if (scene_->robot.isCar())
    {
        auto &st = std::get<CarState>(q.robot);
        robot_ref_before = st.pose.position;
        const auto &car = scene_->robot.car();
        const auto &c = std::get<CarControl>(u);
        rec.drive_torque = c.drive_torque;
        rec.steer_torque = c.steer_torque;
        double traction = c.drive_torque / car.wheel_radius;
        double limit = car.mu_wheel * car.mass * cfg_.gravity;
        traction = std::clamp(traction, -limit, limit);
        st.speed += traction * (dt / car.mass);
        double steer_before = st.steer;
        st.steer = std::clamp(st.steer + dt * c.steer_torque / cfg_.steer_damping,
                              -car.max_steer, car.max_steer);
        rec.steer_rate = (st.steer - steer_before) / dt;
    }
    else
    {
        auto &st = std::get<ArmState>(q.robot);
        const auto &arm = scene_->robot.arm();
        const auto &c = std::get<JointTorques>(u);
        if (c.torques.size() != st.joints.size())
            throw std::invalid_argument("joint torque dimension does not match arm");
        rec.joint_torques = c.torques;
        robot_ref_before = armToolPoint(arm, st.joints);
        for (size_t k = 0; k < st.joints.size(); ++k)
        {
            double qdd = (c.torques[k] - cfg_.joint_damping * st.joint_velocities[k]) /
                         joint_inertia_[k];
            st.joint_velocities[k] += dt * qdd;
        }
    }

    // 2. Contact detection at the current poses.
    std::vector<Proxy> robot_proxies;
    {
        auto fp = robotFootprint(scene_->robot, q.robot);
        for (size_t i = 0; i < fp.size(); ++i)
        {
            Proxy p;
            p.kind = scene_->robot.isDisk() ? ProxyKind::RobotDisk
                     : scene_->robot.isCar() ? ProxyKind::RobotCar
                                             : ProxyKind::RobotArmLink;
            p.link_index = static_cast<int>(i);
            p.shape = fp[i].first;
            p.pose = fp[i].second;
            robot_proxies.push_back(std::move(p));
        }
    }
    auto objectProxy = [&](int i) {
        Proxy p;
        p.kind = ProxyKind::Object;
        p.object_index = i;
        p.shape = scene_->objects[i].shape;
        p.pose = q.objects[i].pose;
        return p;
    };

    std::vector<Contact> contacts;
    auto addManifold = [&](const Proxy &a, const Proxy &b) {
        auto m = collide(a.shape, a.pose, b.shape, b.pose, cfg_.contact_tolerance);
        if (!m)
            return;
        for (int i = 0; i < m->count; ++i)
        {
            Contact c;
            c.a = a;
            c.b = b;
            c.point = m->points[i];
            c.normal = m->normal;
            c.depth = m->depths[i];
            contacts.push_back(c);
            if (log)
            {
                ContactEvent ev;
                ev.substep = substep_index;
                bool robot_a = a.kind != ProxyKind::Object;
                int obj = robot_a ? b.object_index : a.object_index;
                ev.object_a = robot_a ? "robot" : scene_->objects[a.object_index].id;
                ev.object_b = scene_->objects[obj].id;
                if (robot_a)
                    ev.kind = scene_->objects[obj].object_class == ObjectClass::Fixed
                                  ? ContactKind::RobotFixed
                                  : ContactKind::RobotManipulatable;
                else
                    ev.kind = ContactKind::ObjectObject;
                ev.point = m->points[i];
                ev.normal = m->normal;
                ev.object_pose = q.objects[obj].pose;
                log->contacts.push_back(ev);
            }
        }
    };
    for (const auto &rp : robot_proxies)
        for (size_t i = 0; i < scene_->objects.size(); ++i)
            addManifold(rp, objectProxy(static_cast<int>(i)));
    for (size_t i = 0; i + 1 < scene_->objects.size(); ++i)
        for (size_t j = i + 1; j < scene_->objects.size(); ++j)
        {
            if (scene_->objects[i].object_class == ObjectClass::Fixed &&
                scene_->objects[j].object_class == ObjectClass::Fixed)
                continue;
            addManifold(objectProxy(static_cast<int>(i)), objectProxy(static_cast<int>(j)));
        }

    // 3. Sequential impulses, restitution 0.
    for (int it = 0; it < cfg_.contact_solver_iterations; ++it)
    {
        for (auto &c : contacts)
        {
            Mat2 w = eng.invMassAt(c.a, c.point) + eng.invMassAt(c.b, c.point);
            double kn = quadraticForm(w, c.normal);
            if (kn < 1e-12)
                continue;
            Vec2 v_rel = eng.velocityAt(c.b, c.point) - eng.velocityAt(c.a, c.point);
            double bias = (cfg_.baumgarte / dt) * std::max(0.0, c.depth - cfg_.penetration_slop);
            double dj = (bias - v_rel.dot(c.normal)) / kn;
            double jn_new = std::max(0.0, c.jn + dj);
            Vec2 impulse = c.normal * (jn_new - c.jn);
            c.jn = jn_new;
            eng.applyImpulse(c.b, c.point, impulse);
            eng.applyImpulse(c.a, c.point, -impulse);

            Vec2 t = c.normal.perp();
            double kt = quadraticForm(w, t);
            if (kt < 1e-12)
                continue;
            v_rel = eng.velocityAt(c.b, c.point) - eng.velocityAt(c.a, c.point);
            double djt = -v_rel.dot(t) / kt;
            double max_t = cfg_.contact_mu * c.jn;
            double jt_new = std::clamp(c.jt + djt, -max_t, max_t);
            Vec2 t_impulse = t * (jt_new - c.jt);
            c.jt = jt_new;
            eng.applyImpulse(c.b, c.point, t_impulse);
            eng.applyImpulse(c.a, c.point, -t_impulse);
        }
    }

    // 4. Ground friction against the floor load mu*m*g.
    if (scene_->robot.isDisk())
    {
        const auto &d = scene_->robot.disk();
        auto &st = std::get<DiskState>(q.robot);
        Vec2 fric = groundFrictionForce(d.mass, d.mu_ground, st.velocity, robot_applied_force, cfg_);
        Vec2 dv = fric * (dt / d.mass);
        if (st.velocity.norm() >= cfg_.static_friction_epsilon && dv.norm() >= st.velocity.norm() &&
            fric.dot(st.velocity) < 0.0)
            st.velocity = {0.0, 0.0};  // kinetic friction may stop, never reverse
        else
            st.velocity += dv;
    }
    for (size_t i = 0; i < scene_->objects.size(); ++i)
    {
        const auto &spec = scene_->objects[i];
        if (spec.object_class == ObjectClass::Fixed || !spec.gravity_affected)
            continue;
        auto &st = q.objects[i];
        Vec2 contact_force = eng.object_impulse[i] / dt;
        Vec2 fric =
            groundFrictionForce(spec.mass, spec.mu_ground, object_vel_before[i], contact_force, cfg_);
        if (object_vel_before[i].norm() < cfg_.static_friction_epsilon &&
            contact_force.norm() <= spec.mu_ground * spec.mass * cfg_.gravity)
        {
            // static regime: cancel this substep's contact impulses exactly
            st.linear_velocity = object_vel_before[i];
        }
        else
        {
            Vec2 dv = fric * (dt / spec.mass);
            if (dv.norm() >= st.linear_velocity.norm() && fric.dot(st.linear_velocity) < 0.0)
                st.linear_velocity = {0.0, 0.0};
            else
                st.linear_velocity += dv;
        }

        // torsional friction about the support patch
        double r_eff = torsionRadius(spec.shape);
        double torque_limit = spec.mu_ground * spec.mass * cfg_.gravity * r_eff;
        double applied_torque = eng.object_angular_impulse[i] / dt;
        if (std::abs(object_omega_before[i]) * r_eff < cfg_.static_friction_epsilon &&
            std::abs(applied_torque) <= torque_limit)
        {
            st.angular_velocity = object_omega_before[i];
        }
        else
        {
            double dw = torque_limit * dt / object_inertia_[i];
            if (st.angular_velocity > 0.0)
                st.angular_velocity = std::max(0.0, st.angular_velocity - dw);
            else
                st.angular_velocity = std::min(0.0, st.angular_velocity + dw);
        }
    }

    // 5. Motion-constraint projection for eta-tagged objects.
    for (size_t i = 0; i < scene_->objects.size(); ++i)
    {
        if (scene_->objects[i].object_class == ObjectClass::Fixed)
            continue;
        auto &st = q.objects[i];
        if (auto axis = eng.worldConstraintAxis(static_cast<int>(i)))
        {
            st.linear_velocity = *axis * st.linear_velocity.dot(*axis);
            st.angular_velocity = 0.0;
        }
    }

    // 6. Integrate poses.
    for (size_t i = 0; i < scene_->objects.size(); ++i)
    {
        if (scene_->objects[i].object_class == ObjectClass::Fixed)
        {
            q.objects[i].linear_velocity = {0.0, 0.0};
            q.objects[i].angular_velocity = 0.0;
            continue;
        }
        auto &st = q.objects[i];
        st.pose.position += st.linear_velocity * dt;
        if (st.angular_velocity != 0.0)
            st.pose.heading = normalizeAngle(st.pose.heading + st.angular_velocity * dt);
    }
    if (scene_->robot.isDisk())
    {
        auto &st = std::get<DiskState>(q.robot);
        st.pose.position += st.velocity * dt;
        rec.robot_displacement = st.pose.position - robot_ref_before;
    }
    else if (scene_->robot.isCar())
    {
        auto &st = std::get<CarState>(q.robot);
        const auto &car = scene_->robot.car();
        double wheelbase = 2.0 * car.chassis.half_width;
        if (st.speed != 0.0 || st.steer != 0.0)
            st.pose.heading =
                normalizeAngle(st.pose.heading + dt * st.speed * std::tan(st.steer) / wheelbase);
        Vec2 forward{std::cos(st.pose.heading), std::sin(st.pose.heading)};
        st.pose.position += forward * (st.speed * dt);
        rec.robot_displacement = st.pose.position - robot_ref_before;
        rec.wheel_omega = st.speed / car.wheel_radius;
    }
    else
    {
        auto &st = std::get<ArmState>(q.robot);
        const auto &arm = scene_->robot.arm();
        for (size_t k = 0; k < st.joints.size(); ++k)
        {
            st.joints[k] += dt * st.joint_velocities[k];
            if (st.joints[k] <= arm.joint_limits[k].first)
            {
                st.joints[k] = arm.joint_limits[k].first;
                st.joint_velocities[k] = 0.0;
            }
            else if (st.joints[k] >= arm.joint_limits[k].second)
            {
                st.joints[k] = arm.joint_limits[k].second;
                st.joint_velocities[k] = 0.0;
            }
        }
        rec.joint_velocities = st.joint_velocities;
        rec.robot_displacement = armToolPoint(arm, st.joints) - robot_ref_before;
    }

    // 7. Instability guard.
    double vmax = 0.0;
    for (const auto &st : q.objects)
        vmax = std::max(vmax, st.linear_velocity.norm());
    if (scene_->robot.isDisk())
        vmax = std::max(vmax, std::get<DiskState>(q.robot).velocity.norm());
    else if (scene_->robot.isCar())
        vmax = std::max(vmax, std::abs(std::get<CarState>(q.robot).speed));
    else
        for (double qd : std::get<ArmState>(q.robot).joint_velocities)
            vmax = std::max(vmax, std::abs(qd));
    if (vmax > cfg_.velocity_blowup)
        throw SolverInstabilityError("velocity exceeded " +
                                     std::to_string(cfg_.velocity_blowup) + " during propagation");

    if (log)
        log->substeps.push_back(std::move(rec));
}

std::string propagationLogToJson(const PropagationLog &log)
{
    json j;
    j["dt"] = log.dt;
    json steps = json::array();
    for (const auto &s : log.substeps)
    {
        json js;
        js["applied_force"] = {s.applied_force.x, s.applied_force.y};
        js["drive_torque"] = s.drive_torque;
        js["steer_torque"] = s.steer_torque;
        js["joint_torques"] = s.joint_torques;
        js["robot_displacement"] = {s.robot_displacement.x, s.robot_displacement.y};
        js["wheel_omega"] = s.wheel_omega;
        js["steer_rate"] = s.steer_rate;
        js["joint_velocities"] = s.joint_velocities;
        steps.push_back(js);
    }
    j["substeps"] = steps;
    json contacts = json::array();
    for (const auto &c : log.contacts)
    {
        json jc;
        jc["substep"] = c.substep;
        jc["kind"] = c.kind == ContactKind::RobotFixed          ? "robot_fixed"
                     : c.kind == ContactKind::RobotManipulatable ? "robot_manipulatable"
                                                                 : "object_object";
        jc["a"] = c.object_a;
        jc["b"] = c.object_b;
        jc["point"] = {c.point.x, c.point.y};
        jc["normal"] = {c.normal.x, c.normal.y};
        contacts.push_back(jc);
    }
    j["contacts"] = contacts;
    return j.dump();
}

}  // namespace kpmp
