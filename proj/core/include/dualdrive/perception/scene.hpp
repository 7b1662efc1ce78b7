#pragma once

#include <string>
#include <vector>

#include "dualdrive/errors.hpp"
#include "dualdrive/sim/world.hpp"

namespace dualdrive::perception {

enum class LaneRelation { ego_lane, left_lane, right_lane, junction, roadside };
enum class MotionDirection { toward, away, crossing_left, crossing_right, static_ };
enum class CameraView { front, left, right };

std::string to_string(LaneRelation r);
std::string to_string(MotionDirection m);
std::string to_string(CameraView v);

// Normalized placeholder box projected from world geometry; a real VLM
// adapter supplies camera-space boxes through the same field.
struct BoundingBox {
    double x1 = 0.0, y1 = 0.0, x2 = 0.0, y2 = 0.0;
};

struct CriticalObject {
    std::string category;           // semantic attribute
    CameraView view = CameraView::front;
    BoundingBox box;
    LaneRelation lane = LaneRelation::roadside;
    double distance = 0.0;          // m from the ego car
    MotionDirection motion = MotionDirection::static_;
    std::string reasoning;          // behavioral reasoning, never empty
};

struct SceneDescription {
    std::vector<CriticalObject> objects;  // sorted by ascending distance
    double frame_time = 0.0;
    double ego_speed = 0.0;
};

struct PerceptionConfig {
    double nearby_range = 20.0;     // vehicles/cyclists anywhere
    double ego_lane_range = 60.0;   // vehicles/cyclists in the ego lane
    double pedestrian_range = 40.0;
    double fov_half_angle_deg = 135.0;  // front/left/right fields of view
};

// Oracle describer: applies the selection rules to ground-truth world state.
// Inclusive bounds; objects exactly at a threshold distance are included.
SceneDescription describe_scene(const sim::World& world, const PerceptionConfig& cfg = {});

// One "<ref>...</ref><box>...</box>" line per object, ascending distance;
// an empty scene renders a fixed no-critical-objects sentence.
std::string render_description_text(const SceneDescription& d);

class DescriptionParseError : public Error {
public:
    DescriptionParseError(int line, const std::string& msg)
        : Error("description parse error at line " + std::to_string(line) + ": " + msg),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// Inverse of render_description_text for VLM adapter replies.
SceneDescription parse_description_text(const std::string& text, double frame_time,
                                        double ego_speed);

// Contract a real VLM client satisfies: image reference + prompt in,
// SceneDescription-parseable text out.
struct VlmRequest {
    std::string image_ref;
    std::string prompt;
};

class VlmAdapter {
public:
    virtual ~VlmAdapter() = default;
    virtual std::string describe(const VlmRequest& req) = 0;
};

}  // namespace dualdrive::perception
