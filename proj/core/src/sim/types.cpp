#include "dualdrive/sim/types.hpp"

#include <cmath>

namespace dualdrive::sim {

std::string to_string(ActorKind k) {
    switch (k) {
        case ActorKind::vehicle: return "vehicle";
        case ActorKind::cyclist: return "cyclist";
        case ActorKind::pedestrian: return "pedestrian";
    }
    return "vehicle";
}

std::optional<ActorKind> actor_kind_from(const std::string& s) {
    if (s == "vehicle") return ActorKind::vehicle;
    if (s == "cyclist") return ActorKind::cyclist;
    if (s == "pedestrian") return ActorKind::pedestrian;
    return std::nullopt;
}

std::string to_string(LightPhase p) {
    switch (p) {
        case LightPhase::red: return "red";
        case LightPhase::yellow: return "yellow";
        case LightPhase::green: return "green";
    }
    return "red";
}

std::optional<LightPhase> light_phase_from(const std::string& s) {
    if (s == "red") return LightPhase::red;
    if (s == "yellow") return LightPhase::yellow;
    if (s == "green") return LightPhase::green;
    return std::nullopt;
}

LightPhase TrafficLight::phase_at(double t) const {
    if (schedule.empty()) return LightPhase::green;
    double cycle = 0.0;
    for (const auto& p : schedule) cycle += p.duration;
    if (cycle <= 0.0) return schedule.front().phase;
    double local = std::fmod(offset + t, cycle);
    if (local < 0.0) local += cycle;
    for (const auto& p : schedule) {
        if (local < p.duration) return p.phase;
        local -= p.duration;
    }
    return schedule.back().phase;
}

const Lane* LaneGraph::find_lane(int id) const {
    for (const auto& l : lanes) {
        if (l.id == id) return &l;
    }
    return nullptr;
}

std::string to_string(InfractionKind k) {
    switch (k) {
        case InfractionKind::collision_pedestrian: return "collision_pedestrian";
        case InfractionKind::collision_vehicle: return "collision_vehicle";
        case InfractionKind::collision_static: return "collision_static";
        case InfractionKind::red_light: return "red_light";
        case InfractionKind::stop_sign: return "stop_sign";
        case InfractionKind::route_deviation: return "route_deviation";
    }
    return "collision_static";
}

}  // namespace dualdrive::sim
