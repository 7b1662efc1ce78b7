#include "dualdrive/perception/scene.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace dualdrive::perception {

namespace {

constexpr const char* kEmptySceneText = "There are no critical objects around the ego car.";

CameraView view_from_bearing(double bearing) {
    double deg = rad_to_deg(bearing);
    if (deg > 45.0) return CameraView::left;
    if (deg < -45.0) return CameraView::right;
    return CameraView::front;
}

BoundingBox placeholder_box(double bearing, double dist, double fov_rad) {
    double cx = 0.5 - bearing / (2.0 * fov_rad);
    double h = std::clamp(1.0 / std::max(dist, 1.0), 0.02, 0.5);
    auto clamp01 = [](double v) { return std::clamp(v, 0.0, 1.0); };
    return {clamp01(cx - h / 2.0), clamp01(0.5 - h / 2.0), clamp01(cx + h / 2.0),
            clamp01(0.5 + h / 2.0)};
}

LaneRelation relation_for(const sim::World& world, std::optional<int> actor_lane) {
    if (!actor_lane) return LaneRelation::roadside;
    int ego_lane = world.ego().lane_id;
    if (*actor_lane == ego_lane) return LaneRelation::ego_lane;
    const sim::Lane* lane = world.map().find_lane(*actor_lane);
    if (lane && lane->junction) return LaneRelation::junction;
    const sim::Lane* ego = world.map().find_lane(ego_lane);
    if (ego) {
        if (ego->left && *ego->left == *actor_lane) return LaneRelation::left_lane;
        if (ego->right && *ego->right == *actor_lane) return LaneRelation::right_lane;
    }
    return LaneRelation::roadside;
}

MotionDirection motion_for(const sim::World& world, const sim::Actor& a) {
    Vec2 ego_vel = Vec2{std::cos(world.ego().heading), std::sin(world.ego().heading)} *
                   world.ego().speed;
    Vec2 rel = world.actor_velocity(a) - ego_vel;
    if (rel.norm() < 0.2) return MotionDirection::static_;
    Vec2 los = (a.position - world.ego().position).normalized();
    double closing = -rel.dot(los);               // > 0: approaching the ego
    double lateral = los.cross(rel);              // > 0: drifting to the ego's left
    if (closing >= std::abs(lateral)) return MotionDirection::toward;
    if (-closing >= std::abs(lateral)) return MotionDirection::away;
    return lateral > 0.0 ? MotionDirection::crossing_left : MotionDirection::crossing_right;
}

std::string reason_text(const std::string& category, LaneRelation lane, MotionDirection motion) {
    if (category == "red_traffic_light")
        return "the red light controls the ego direction and requires stopping at the intersection";
    if (category == "yellow_traffic_light")
        return "the yellow light signals an imminent red phase; prepare to stop";
    if (category == "green_traffic_light")
        return "the green light permits proceeding but may change";
    if (category == "stop_sign")
        return "the stop sign requires a full stop before entering the intersection";
    if (category == "pedestrian") {
        if (motion == MotionDirection::crossing_left || motion == MotionDirection::crossing_right)
            return "the pedestrian is crossing and may enter the ego path";
        return "the pedestrian near the road requires caution";
    }
    switch (lane) {
        case LaneRelation::ego_lane:
            if (motion == MotionDirection::toward)
                return "the " + category + " ahead in the ego lane is closing and limits the safe following distance";
            return "the " + category + " in the ego lane constrains the following distance";
        case LaneRelation::left_lane:
            return "the " + category + " in the left lane may merge and should be monitored";
        case LaneRelation::right_lane:
            return "the " + category + " in the right lane may merge and should be monitored";
        case LaneRelation::junction:
            return "the " + category + " in the junction may conflict with the ego path";
        case LaneRelation::roadside:
            return "the " + category + " at the roadside may enter the road";
    }
    return "the " + category + " is relevant to the driving decision";
}

std::string fmt(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

}  // namespace

std::string to_string(LaneRelation r) {
    switch (r) {
        case LaneRelation::ego_lane: return "ego_lane";
        case LaneRelation::left_lane: return "left_lane";
        case LaneRelation::right_lane: return "right_lane";
        case LaneRelation::junction: return "junction";
        case LaneRelation::roadside: return "roadside";
    }
    return "roadside";
}

std::string to_string(MotionDirection m) {
    switch (m) {
        case MotionDirection::toward: return "toward";
        case MotionDirection::away: return "away";
        case MotionDirection::crossing_left: return "crossing_left";
        case MotionDirection::crossing_right: return "crossing_right";
        case MotionDirection::static_: return "static";
    }
    return "static";
}

std::string to_string(CameraView v) {
    switch (v) {
        case CameraView::front: return "front";
        case CameraView::left: return "left";
        case CameraView::right: return "right";
    }
    return "front";
}

SceneDescription describe_scene(const sim::World& world, const PerceptionConfig& cfg) {
    const sim::EgoState& ego = world.ego();
    double fov = deg_to_rad(cfg.fov_half_angle_deg);

    SceneDescription out;
    out.frame_time = world.time();
    out.ego_speed = ego.speed;

    auto bearing_to = [&](const Vec2& p) {
        return wrap_angle(std::atan2(p.y - ego.position.y, p.x - ego.position.x) - ego.heading);
    };
    auto in_fov = [&](double bearing) { return std::abs(bearing) <= fov; };

    for (const auto& a : world.actors()) {
        double dist = distance(ego.position, a.position);
        double bearing = bearing_to(a.position);
        if (!in_fov(bearing)) continue;

        bool selected = false;
        if (a.kind == sim::ActorKind::pedestrian) {
            selected = dist <= cfg.pedestrian_range;
        } else {
            bool in_ego_lane = a.lane_id && *a.lane_id == ego.lane_id;
            selected = dist <= cfg.nearby_range || (in_ego_lane && dist <= cfg.ego_lane_range);
        }
        if (!selected) continue;

        CriticalObject obj;
        obj.category = sim::to_string(a.kind);
        obj.view = view_from_bearing(bearing);
        obj.box = placeholder_box(bearing, dist, fov);
        obj.lane = relation_for(world, a.lane_id);
        obj.distance = dist;
        obj.motion = motion_for(world, a);
        obj.reasoning = reason_text(obj.category, obj.lane, obj.motion);
        out.objects.push_back(std::move(obj));
    }

    for (const auto& light : world.map().lights) {
        bool controls = std::find(light.lanes.begin(), light.lanes.end(), ego.lane_id) !=
                        light.lanes.end();
        if (!controls) continue;
        double bearing = bearing_to(light.position);
        if (!in_fov(bearing)) continue;
        CriticalObject obj;
        obj.category = sim::to_string(world.phase_of(light)) + "_traffic_light";
        obj.view = view_from_bearing(bearing);
        obj.distance = distance(ego.position, light.position);
        obj.box = placeholder_box(bearing, obj.distance, fov);
        obj.lane = LaneRelation::ego_lane;
        obj.motion = MotionDirection::static_;
        obj.reasoning = reason_text(obj.category, obj.lane, obj.motion);
        out.objects.push_back(std::move(obj));
    }

    for (const auto& sign : world.map().signs) {
        if (sign.lane != ego.lane_id || !world.sign_pending(sign)) continue;
        double bearing = bearing_to(sign.position);
        if (!in_fov(bearing)) continue;
        CriticalObject obj;
        obj.category = "stop_sign";
        obj.view = view_from_bearing(bearing);
        obj.distance = distance(ego.position, sign.position);
        obj.box = placeholder_box(bearing, obj.distance, fov);
        obj.lane = LaneRelation::ego_lane;
        obj.motion = MotionDirection::static_;
        obj.reasoning = reason_text(obj.category, obj.lane, obj.motion);
        out.objects.push_back(std::move(obj));
    }

    std::stable_sort(out.objects.begin(), out.objects.end(),
                     [](const CriticalObject& a, const CriticalObject& b) {
                         return a.distance < b.distance;
                     });
    return out;
}

std::string render_description_text(const SceneDescription& d) {
    if (d.objects.empty()) return kEmptySceneText;
    std::ostringstream ss;
    for (std::size_t i = 0; i < d.objects.size(); ++i) {
        const auto& o = d.objects[i];
        if (i) ss << '\n';
        ss << "<ref>In " << to_string(o.view) << " view, " << o.category << ", "
           << to_string(o.lane) << ", " << fmt(o.distance, 1) << " m, " << to_string(o.motion)
           << ": " << o.reasoning << "</ref><box>" << fmt(o.box.x1, 3) << "," << fmt(o.box.y1, 3)
           << "," << fmt(o.box.x2, 3) << "," << fmt(o.box.y2, 3) << "</box>";
    }
    return ss.str();
}

namespace {

std::string take_until(const std::string& s, std::size_t& pos, const std::string& delim,
                       int line, const std::string& what) {
    auto end = s.find(delim, pos);
    if (end == std::string::npos)
        throw DescriptionParseError(line, "missing '" + delim + "' while reading " + what);
    std::string out = s.substr(pos, end - pos);
    pos = end + delim.size();
    return out;
}

std::string trimmed(std::string s) {
    auto issp = [](unsigned char c) { return std::isspace(c); };
    while (!s.empty() && issp(s.front())) s.erase(s.begin());
    while (!s.empty() && issp(s.back())) s.pop_back();
    return s;
}

}  // namespace

SceneDescription parse_description_text(const std::string& text, double frame_time,
                                        double ego_speed) {
    SceneDescription d;
    d.frame_time = frame_time;
    d.ego_speed = ego_speed;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trimmed(line);
        if (t.empty()) continue;
        if (t == kEmptySceneText) continue;

        std::size_t pos = 0;
        if (t.rfind("<ref>In ", 0) != 0)
            throw DescriptionParseError(lineno, "expected '<ref>In ...' prefix");
        pos = std::string("<ref>In ").size();

        CriticalObject o;
        std::string view = take_until(t, pos, " view, ", lineno, "camera view");
        if (view == "front") o.view = CameraView::front;
        else if (view == "left") o.view = CameraView::left;
        else if (view == "right") o.view = CameraView::right;
        else throw DescriptionParseError(lineno, "unknown camera view '" + view + "'");

        o.category = take_until(t, pos, ", ", lineno, "category");
        std::string lane = take_until(t, pos, ", ", lineno, "lane relation");
        if (lane == "ego_lane") o.lane = LaneRelation::ego_lane;
        else if (lane == "left_lane") o.lane = LaneRelation::left_lane;
        else if (lane == "right_lane") o.lane = LaneRelation::right_lane;
        else if (lane == "junction") o.lane = LaneRelation::junction;
        else if (lane == "roadside") o.lane = LaneRelation::roadside;
        else throw DescriptionParseError(lineno, "unknown lane relation '" + lane + "'");

        std::string dist = take_until(t, pos, " m, ", lineno, "distance");
        try {
            o.distance = std::stod(dist);
        } catch (const std::exception&) {
            throw DescriptionParseError(lineno, "bad distance '" + dist + "'");
        }
        if (o.distance < 0.0) throw DescriptionParseError(lineno, "negative distance");

        std::string motion = take_until(t, pos, ": ", lineno, "motion");
        if (motion == "toward") o.motion = MotionDirection::toward;
        else if (motion == "away") o.motion = MotionDirection::away;
        else if (motion == "crossing_left") o.motion = MotionDirection::crossing_left;
        else if (motion == "crossing_right") o.motion = MotionDirection::crossing_right;
        else if (motion == "static") o.motion = MotionDirection::static_;
        else throw DescriptionParseError(lineno, "unknown motion '" + motion + "'");

        o.reasoning = take_until(t, pos, "</ref>", lineno, "reasoning");
        if (o.reasoning.empty()) throw DescriptionParseError(lineno, "empty reasoning");

        if (t.compare(pos, 5, "<box>") != 0)
            throw DescriptionParseError(lineno, "expected '<box>'");
        pos += 5;
        std::string box = take_until(t, pos, "</box>", lineno, "box");
        double v[4];
        if (std::sscanf(box.c_str(), "%lf,%lf,%lf,%lf", &v[0], &v[1], &v[2], &v[3]) != 4)
            throw DescriptionParseError(lineno, "bad box '" + box + "'");
        o.box = {v[0], v[1], v[2], v[3]};

        d.objects.push_back(std::move(o));
    }
    return d;
}

}  // namespace dualdrive::perception
