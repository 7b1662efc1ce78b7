#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "dualdrive/control/control_signal.hpp"
#include "dualdrive/sim/scenario.hpp"
#include "dualdrive/sim/types.hpp"

namespace dualdrive::sim {

struct SimConfig {
    double max_throttle_accel = 3.0;  // m/s^2 at throttle = 1
    double max_brake_decel = 8.0;     // m/s^2 at brake = 1
    double max_steer_rad = 0.5;       // steering angle at steer = +/-1
    double vehicle_radius = 1.0;      // collision discs
    double cyclist_radius = 0.5;
    double pedestrian_radius = 0.3;
    double deviation_threshold = 3.0;     // m lateral offset ending the route
    double stop_sign_radius = 5.0;        // m; stop inside this to satisfy a sign
    double stop_speed = 0.1;              // m/s counted as stopped
    double lane_match_margin = 0.75;      // extra half-width tolerance for lane matching
    bool terminal_collisions = true;      // halt the route on any collision
};

// Deterministic 2D world: kinematic-bicycle ego, scripted actors, phase-driven
// signals, route tracking and infraction detection. Never step one instance
// from two threads.
class World {
public:
    explicit World(Scenario scenario, std::uint32_t seed = 0, SimConfig cfg = {});

    // Advances one physics tick (0 < dt <= 0.1). Returns the infractions
    // detected during this tick. Dynamics saturate instead of erroring.
    std::vector<InfractionEvent> step(const control::ControlSignal& control, double dt);

    // Fraction of densified path-points passed, in [0, 1]; non-decreasing.
    double route_progress() const;

    const EgoState& ego() const { return ego_; }
    EgoState& ego() { return ego_; }
    const std::vector<Actor>& actors() const { return actors_; }
    const LaneGraph& map() const { return scenario_.map; }
    const RouteSpec& route() const { return route_; }
    const Scenario& scenario() const { return scenario_; }
    const SimConfig& config() const { return cfg_; }

    double time() const { return time_; }
    std::size_t furthest_index() const { return furthest_; }
    bool route_complete() const { return furthest_ + 1 >= route_.path.size(); }
    bool halted() const { return halted_; }

    LightPhase phase_of(const TrafficLight& light) const { return light.phase_at(time_); }
    // True while the sign controls the ego and has not been satisfied or crossed.
    bool sign_pending(const StopSign& sign) const;
    // World-frame velocity of an actor at the current sim time.
    Vec2 actor_velocity(const Actor& a) const;

    const std::vector<InfractionEvent>& event_log() const { return log_; }

    double collision_radius(ActorKind k) const;

private:
    void refresh_actor_poses();
    std::optional<int> match_lane(const Vec2& pos, std::optional<int> current) const;
    void advance_route_tracking();
    void check_signals(std::size_t prev_furthest, int prev_lane, std::vector<InfractionEvent>& out);
    void check_collisions(std::vector<InfractionEvent>& out);
    void check_deviation(std::vector<InfractionEvent>& out);
    std::size_t nearest_path_index(const Vec2& p) const;

    Scenario scenario_;
    SimConfig cfg_;
    RouteSpec route_;
    EgoState ego_;
    std::vector<Actor> actors_;
    std::vector<double> actor_delays_;  // seed-derived script start delays
    double time_ = 0.0;
    std::size_t furthest_ = 0;
    bool halted_ = false;

    std::vector<std::size_t> light_line_;         // path index per light
    std::vector<std::size_t> sign_line_;          // path index per sign
    std::vector<char> sign_satisfied_;
    std::vector<char> sign_crossed_;
    std::vector<char> light_crossed_;
    std::unordered_set<std::string> in_contact_;  // actor/obstacle ids overlapping now
    std::vector<InfractionEvent> log_;
};

}  // namespace dualdrive::sim
