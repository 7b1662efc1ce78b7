#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "dualdrive/sim/types.hpp"

namespace dualdrive::sim {

// Parsed scenario file: the static world plus the ego start and the route.
struct Scenario {
    int format_version = 1;
    std::string name;
    LaneGraph map;
    EgoState ego;
    std::vector<Actor> actors;
    std::vector<Vec2> route_waypoints;
};

// Parses and validates a scenario. Throws ScenarioParseError with the
// offending line or ScenarioValidationError naming the violated invariant.
Scenario load_scenario(const std::filesystem::path& path);
Scenario parse_scenario(std::istream& in, const std::string& origin = "<stream>");

// Validates invariants (polyline sizes, symmetric neighbors, referenced
// lane ids, route length). Throws ScenarioValidationError.
void validate_scenario(const Scenario& s);

// Densifies sparse waypoints into path-points at 1 m arc-length spacing.
// Both endpoints are always included; every consecutive gap is exactly 1 m
// except the final one, which is <= 1 m. Throws Error on < 2 waypoints.
std::vector<Vec2> densify_route(const std::vector<Vec2>& sparse, double spacing = 1.0);

// Arc length of a piecewise-linear polyline.
double polyline_length(const std::vector<Vec2>& pts);

RouteSpec make_route(const std::vector<Vec2>& sparse);

}  // namespace dualdrive::sim
