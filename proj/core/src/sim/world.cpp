#include "dualdrive/sim/world.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace dualdrive::sim {

namespace {

double polyline_distance(const Vec2& p, const std::vector<Vec2>& line) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < line.size(); ++i)
        best = std::min(best, point_segment_distance(p, line[i - 1], line[i]));
    return best;
}

struct ScriptPose {
    Vec2 position;
    double heading;
    double speed;
    Vec2 velocity;
};

ScriptPose eval_script(const Actor& a, double t) {
    if (a.script.empty()) {
        // Unscripted actors move at their declared constant velocity.
        Vec2 dir{std::cos(a.heading), std::sin(a.heading)};
        if (t < 0.0) t = 0.0;
        return {a.position + dir * (a.speed * t), a.heading, a.speed, dir * a.speed};
    }
    const auto& sc = a.script;
    if (t <= sc.front().t)
        return {sc.front().position, sc.front().heading, sc.front().speed, {0.0, 0.0}};
    if (t >= sc.back().t)
        return {sc.back().position, sc.back().heading, sc.back().speed, {0.0, 0.0}};
    std::size_t i = 1;
    while (sc[i].t < t) ++i;
    const auto& k0 = sc[i - 1];
    const auto& k1 = sc[i];
    double span = k1.t - k0.t;
    double f = (t - k0.t) / span;
    Vec2 vel = (k1.position - k0.position) * (1.0 / span);
    double speed = k0.speed + (k1.speed - k0.speed) * f;
    double heading = k0.heading + wrap_angle(k1.heading - k0.heading) * f;
    return {k0.position + (k1.position - k0.position) * f, heading, speed, vel};
}

}  // namespace

World::World(Scenario scenario, std::uint32_t seed, SimConfig cfg)
    : scenario_(std::move(scenario)), cfg_(cfg) {
    route_ = make_route(scenario_.route_waypoints);
    ego_ = scenario_.ego;
    actors_ = scenario_.actors;

    // Seed-derived per-actor script delays; raw mt19937 draws keep this
    // bit-reproducible across platforms.
    std::mt19937 rng(seed);
    actor_delays_.reserve(actors_.size());
    for (const auto& a : actors_) {
        double u = static_cast<double>(rng()) / 4294967296.0;
        actor_delays_.push_back(a.jitter > 0.0 ? u * a.jitter : 0.0);
    }

    for (const auto& light : scenario_.map.lights) light_line_.push_back(nearest_path_index(light.position));
    for (const auto& sign : scenario_.map.signs) sign_line_.push_back(nearest_path_index(sign.position));
    sign_satisfied_.assign(scenario_.map.signs.size(), 0);
    sign_crossed_.assign(scenario_.map.signs.size(), 0);
    light_crossed_.assign(scenario_.map.lights.size(), 0);

    refresh_actor_poses();
    advance_route_tracking();
}

std::size_t World::nearest_path_index(const Vec2& p) const {
    std::size_t best = 0;
    double bestd = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < route_.path.size(); ++i) {
        double d = distance(p, route_.path[i]);
        if (d < bestd) {
            bestd = d;
            best = i;
        }
    }
    return best;
}

double World::collision_radius(ActorKind k) const {
    switch (k) {
        case ActorKind::vehicle: return cfg_.vehicle_radius;
        case ActorKind::cyclist: return cfg_.cyclist_radius;
        case ActorKind::pedestrian: return cfg_.pedestrian_radius;
    }
    return cfg_.vehicle_radius;
}

void World::refresh_actor_poses() {
    for (std::size_t i = 0; i < actors_.size(); ++i) {
        Actor& a = actors_[i];
        ScriptPose pose = eval_script(scenario_.actors[i], time_ - actor_delays_[i]);
        a.position = pose.position;
        a.heading = pose.heading;
        a.speed = pose.speed;
        a.lane_id = match_lane(a.position, a.lane_id);
    }
}

Vec2 World::actor_velocity(const Actor& a) const {
    auto idx = static_cast<std::size_t>(&a - actors_.data());
    if (idx >= actors_.size()) return {};
    return eval_script(scenario_.actors[idx], time_ - actor_delays_[idx]).velocity;
}

std::optional<int> World::match_lane(const Vec2& pos, std::optional<int> current) const {
    const Lane* best = nullptr;
    double bestd = std::numeric_limits<double>::infinity();
    for (const auto& lane : scenario_.map.lanes) {
        double d = polyline_distance(pos, lane.centerline);
        if (d < bestd) {
            bestd = d;
            best = &lane;
        }
    }
    if (best && bestd <= best->width / 2.0 + cfg_.lane_match_margin) return best->id;
    return current;
}

void World::advance_route_tracking() {
    const auto& path = route_.path;
    while (furthest_ + 1 < path.size()) {
        const Vec2& cur = path[furthest_];
        const Vec2& nxt = path[furthest_ + 1];
        Vec2 dir = nxt - cur;
        bool passed = (ego_.position - nxt).dot(dir) >= 0.0;
        bool within = distance(ego_.position, nxt) <= cfg_.deviation_threshold;
        if (passed && within) {
            ++furthest_;
        } else {
            break;
        }
    }
}

double World::route_progress() const {
    return static_cast<double>(furthest_ + 1) / static_cast<double>(route_.path.size());
}

bool World::sign_pending(const StopSign& sign) const {
    auto idx = static_cast<std::size_t>(&sign - scenario_.map.signs.data());
    if (idx >= scenario_.map.signs.size()) return false;
    return !sign_satisfied_[idx] && !sign_crossed_[idx];
}

std::vector<InfractionEvent> World::step(const control::ControlSignal& control, double dt) {
    if (halted_) return {};
    dt = std::clamp(dt, 1e-6, 0.1);

    int prev_lane = ego_.lane_id;
    std::size_t prev_furthest = furthest_;

    // Kinematic bicycle update; heading first, then position with the new
    // heading, then speed from the saturating accel limits.
    double steer_angle = std::clamp(control.steer, -1.0, 1.0) * cfg_.max_steer_rad;
    ego_.heading = wrap_angle(ego_.heading + ego_.speed / ego_.wheelbase * std::tan(steer_angle) * dt);
    ego_.position = ego_.position + Vec2{std::cos(ego_.heading), std::sin(ego_.heading)} * (ego_.speed * dt);
    double accel = std::clamp(control.throttle, 0.0, 1.0) * cfg_.max_throttle_accel -
                   std::clamp(control.brake, 0.0, 1.0) * cfg_.max_brake_decel;
    ego_.speed = std::max(0.0, ego_.speed + accel * dt);

    time_ += dt;
    refresh_actor_poses();
    if (auto lane = match_lane(ego_.position, ego_.lane_id)) ego_.lane_id = *lane;

    advance_route_tracking();

    // Stop-sign satisfaction: fully stopping near the sign clears it.
    for (std::size_t i = 0; i < scenario_.map.signs.size(); ++i) {
        if (!sign_crossed_[i] && !sign_satisfied_[i] &&
            distance(ego_.position, scenario_.map.signs[i].position) <= cfg_.stop_sign_radius &&
            ego_.speed < cfg_.stop_speed) {
            sign_satisfied_[i] = 1;
        }
    }

    std::vector<InfractionEvent> events;
    check_signals(prev_furthest, prev_lane, events);
    check_collisions(events);
    check_deviation(events);

    for (const auto& e : events) {
        log_.push_back(e);
        bool collision = e.kind == InfractionKind::collision_pedestrian ||
                         e.kind == InfractionKind::collision_vehicle ||
                         e.kind == InfractionKind::collision_static;
        if ((collision && cfg_.terminal_collisions) || e.kind == InfractionKind::route_deviation)
            halted_ = true;
    }
    return events;
}

void World::check_signals(std::size_t prev_furthest, int prev_lane, std::vector<InfractionEvent>& out) {
    const auto& map = scenario_.map;
    // The approach lane counts too: the ego may already match the successor
    // lane on the tick it crosses the line.
    auto controls_ego = [&](const std::vector<int>& lanes) {
        return std::find(lanes.begin(), lanes.end(), ego_.lane_id) != lanes.end() ||
               std::find(lanes.begin(), lanes.end(), prev_lane) != lanes.end();
    };

    for (std::size_t i = 0; i < map.lights.size(); ++i) {
        if (light_crossed_[i]) continue;
        std::size_t line = light_line_[i];
        if (prev_furthest < line && furthest_ >= line) {
            light_crossed_[i] = 1;
            if (controls_ego(map.lights[i].lanes) && map.lights[i].phase_at(time_) == LightPhase::red)
                out.push_back({InfractionKind::red_light, time_, map.lights[i].id});
        }
    }
    for (std::size_t i = 0; i < map.signs.size(); ++i) {
        if (sign_crossed_[i]) continue;
        std::size_t line = sign_line_[i];
        if (prev_furthest < line && furthest_ >= line) {
            sign_crossed_[i] = 1;
            if ((map.signs[i].lane == ego_.lane_id || map.signs[i].lane == prev_lane) && !sign_satisfied_[i])
                out.push_back({InfractionKind::stop_sign, time_, map.signs[i].id});
        }
    }
}

void World::check_collisions(std::vector<InfractionEvent>& out) {
    double ego_r = cfg_.vehicle_radius;
    for (const auto& a : actors_) {
        double d = distance(ego_.position, a.position);
        bool overlap = d < ego_r + collision_radius(a.kind);
        bool was = in_contact_.count(a.id) > 0;
        if (overlap && !was) {
            in_contact_.insert(a.id);
            InfractionKind kind = a.kind == ActorKind::pedestrian
                                      ? InfractionKind::collision_pedestrian
                                      : InfractionKind::collision_vehicle;
            out.push_back({kind, time_, a.id});
        } else if (!overlap && was) {
            in_contact_.erase(a.id);
        }
    }
    for (const auto& ob : scenario_.map.obstacles) {
        double d = distance(ego_.position, ob.position);
        bool overlap = d < ego_r + ob.radius;
        bool was = in_contact_.count(ob.id) > 0;
        if (overlap && !was) {
            in_contact_.insert(ob.id);
            out.push_back({InfractionKind::collision_static, time_, ob.id});
        } else if (!overlap && was) {
            in_contact_.erase(ob.id);
        }
    }
}

void World::check_deviation(std::vector<InfractionEvent>& out) {
    const auto& path = route_.path;
    std::size_t lo = furthest_ >= 5 ? furthest_ - 5 : 0;
    std::size_t hi = std::min(path.size() - 1, furthest_ + 25);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = lo; i <= hi; ++i) best = std::min(best, distance(ego_.position, path[i]));
    if (best > cfg_.deviation_threshold)
        out.push_back({InfractionKind::route_deviation, time_, ""});
}

}  // namespace dualdrive::sim
