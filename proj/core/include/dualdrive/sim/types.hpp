#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dualdrive/geometry.hpp"

namespace dualdrive::sim {

enum class ActorKind { vehicle, cyclist, pedestrian };

std::string to_string(ActorKind k);
std::optional<ActorKind> actor_kind_from(const std::string& s);

// Timed pose sample; actor state is interpolated between consecutive keyframes
// and held after the last one.
struct ScriptKeyframe {
    double t = 0.0;
    Vec2 position;
    double heading = 0.0;
    double speed = 0.0;
};

struct Actor {
    std::string id;
    ActorKind kind = ActorKind::vehicle;
    Vec2 position;
    double heading = 0.0;
    double speed = 0.0;
    std::optional<int> lane_id;            // maintained by the simulator
    std::vector<ScriptKeyframe> script;    // empty => actor stays put
    double jitter = 0.0;                   // max seed-derived script start delay (s)
};

struct Lane {
    int id = 0;
    std::vector<Vec2> centerline;  // >= 2 points, consecutive points distinct
    double width = 3.5;
    std::vector<int> successors;
    std::optional<int> left;
    std::optional<int> right;
    bool junction = false;
};

enum class LightPhase { red, yellow, green };

std::string to_string(LightPhase p);
std::optional<LightPhase> light_phase_from(const std::string& s);

struct PhaseInterval {
    LightPhase phase = LightPhase::green;
    double duration = 0.0;  // seconds
};

struct TrafficLight {
    std::string id;
    Vec2 position;
    std::vector<int> lanes;               // lanes this light controls
    std::vector<PhaseInterval> schedule;  // cycled forever
    double offset = 0.0;                  // phase-clock shift at t = 0

    LightPhase phase_at(double t) const;
};

struct StopSign {
    std::string id;
    Vec2 position;
    int lane = 0;
};

// Static prop; colliding with one is a collision_static infraction.
struct Obstacle {
    std::string id;
    Vec2 position;
    double radius = 0.5;
};

struct LaneGraph {
    std::vector<Lane> lanes;
    std::vector<TrafficLight> lights;
    std::vector<StopSign> signs;
    std::vector<Obstacle> obstacles;

    const Lane* find_lane(int id) const;
};

struct EgoState {
    Vec2 position;
    double heading = 0.0;
    double speed = 0.0;          // m/s, >= 0
    int lane_id = 0;
    double wheelbase = 2.5;      // m
    double target_speed = 0.0;   // m/s, in [0, v_max]
};

struct RouteSpec {
    std::vector<Vec2> sparse;  // ordered route waypoints
    std::vector<Vec2> path;    // densified path-points at 1 m arc spacing
    double length = 0.0;       // total arc length (m)
};

enum class InfractionKind {
    collision_pedestrian,
    collision_vehicle,
    collision_static,
    red_light,
    stop_sign,
    route_deviation,
};

std::string to_string(InfractionKind k);

struct InfractionEvent {
    InfractionKind kind;
    double t = 0.0;        // sim time (s)
    std::string actor_id;  // involved actor/signal/obstacle, empty if n/a
};

}  // namespace dualdrive::sim
