#include "dualdrive/sim/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "dualdrive/errors.hpp"

namespace dualdrive::sim {

namespace {

struct Tok {
    std::vector<std::string> words;
    int line = 0;
};

std::vector<Tok> tokenize(std::istream& in) {
    std::vector<Tok> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        Tok t;
        t.line = lineno;
        std::string w;
        while (ls >> w) t.words.push_back(w);
        if (!t.words.empty()) out.push_back(std::move(t));
    }
    return out;
}

double parse_num(const std::string& w, int line) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(w, &pos);
    } catch (const std::exception&) {
        throw ScenarioParseError(line, "expected number, got '" + w + "'");
    }
    if (pos != w.size()) throw ScenarioParseError(line, "expected number, got '" + w + "'");
    return v;
}

int parse_int(const std::string& w, int line) {
    double v = parse_num(w, line);
    if (v != std::floor(v)) throw ScenarioParseError(line, "expected integer, got '" + w + "'");
    return static_cast<int>(v);
}

// Point tokens are written as (x,y) with no interior spaces.
Vec2 parse_point(const std::string& w, int line) {
    if (w.size() < 5 || w.front() != '(' || w.back() != ')')
        throw ScenarioParseError(line, "expected point (x,y), got '" + w + "'");
    auto comma = w.find(',');
    if (comma == std::string::npos)
        throw ScenarioParseError(line, "expected point (x,y), got '" + w + "'");
    return {parse_num(w.substr(1, comma - 1), line),
            parse_num(w.substr(comma + 1, w.size() - comma - 2), line)};
}

class BlockReader {
public:
    BlockReader(const std::vector<Tok>& toks, std::size_t& i) : toks_(toks), i_(i) {}

    // Calls fn(key, args, line) for each line until the matching 'end'.
    template <typename Fn>
    void each(Fn&& fn) {
        int open_line = toks_[i_].line;
        ++i_;
        while (i_ < toks_.size()) {
            const Tok& t = toks_[i_];
            if (t.words[0] == "end") {
                ++i_;
                return;
            }
            std::vector<std::string> args(t.words.begin() + 1, t.words.end());
            fn(t.words[0], args, t.line);
            ++i_;
        }
        throw ScenarioParseError(open_line, "block is missing its 'end'");
    }

private:
    const std::vector<Tok>& toks_;
    std::size_t& i_;
};

void need_args(const std::vector<std::string>& args, std::size_t n, const std::string& key, int line) {
    if (args.size() < n)
        throw ScenarioParseError(line, "'" + key + "' needs " + std::to_string(n) + " argument(s)");
}

std::vector<PhaseInterval> parse_phases(const std::vector<std::string>& args, int line) {
    std::vector<PhaseInterval> out;
    for (const auto& a : args) {
        auto colon = a.find(':');
        if (colon == std::string::npos)
            throw ScenarioParseError(line, "phase must be name:duration, got '" + a + "'");
        auto phase = light_phase_from(a.substr(0, colon));
        if (!phase)
            throw ScenarioParseError(line, "unknown phase '" + a.substr(0, colon) + "'");
        out.push_back({*phase, parse_num(a.substr(colon + 1), line)});
    }
    return out;
}

}  // namespace

Scenario parse_scenario(std::istream& in, const std::string& origin) {
    auto toks = tokenize(in);
    Scenario s;
    bool saw_version = false, saw_ego = false, saw_route = false;

    std::size_t i = 0;
    while (i < toks.size()) {
        const Tok& t = toks[i];
        const std::string& head = t.words[0];
        std::vector<std::string> args(t.words.begin() + 1, t.words.end());

        if (head == "format_version") {
            need_args(args, 1, head, t.line);
            s.format_version = parse_int(args[0], t.line);
            saw_version = true;
            ++i;
        } else if (head == "name") {
            need_args(args, 1, head, t.line);
            s.name = args[0];
            ++i;
        } else if (head == "lane") {
            need_args(args, 1, head, t.line);
            Lane lane;
            lane.id = parse_int(args[0], t.line);
            BlockReader(toks, i).each([&](const std::string& key, const std::vector<std::string>& a, int ln) {
                if (key == "width") {
                    need_args(a, 1, key, ln);
                    lane.width = parse_num(a[0], ln);
                } else if (key == "points") {
                    for (const auto& w : a) lane.centerline.push_back(parse_point(w, ln));
                } else if (key == "successors") {
                    for (const auto& w : a) lane.successors.push_back(parse_int(w, ln));
                } else if (key == "left") {
                    need_args(a, 1, key, ln);
                    lane.left = parse_int(a[0], ln);
                } else if (key == "right") {
                    need_args(a, 1, key, ln);
                    lane.right = parse_int(a[0], ln);
                } else if (key == "junction") {
                    lane.junction = true;
                } else {
                    throw ScenarioParseError(ln, "unknown lane field '" + key + "'");
                }
            });
            s.map.lanes.push_back(std::move(lane));
        } else if (head == "light") {
            need_args(args, 1, head, t.line);
            TrafficLight light;
            light.id = args[0];
            BlockReader(toks, i).each([&](const std::string& key, const std::vector<std::string>& a, int ln) {
                if (key == "position") {
                    need_args(a, 1, key, ln);
                    light.position = parse_point(a[0], ln);
                } else if (key == "lanes") {
                    for (const auto& w : a) light.lanes.push_back(parse_int(w, ln));
                } else if (key == "phases") {
                    light.schedule = parse_phases(a, ln);
                } else if (key == "offset") {
                    need_args(a, 1, key, ln);
                    light.offset = parse_num(a[0], ln);
                } else {
                    throw ScenarioParseError(ln, "unknown light field '" + key + "'");
                }
            });
            s.map.lights.push_back(std::move(light));
        } else if (head == "stop_sign") {
            need_args(args, 1, head, t.line);
            StopSign sign;
            sign.id = args[0];
            BlockReader(toks, i).each([&](const std::string& key, const std::vector<std::string>& a, int ln) {
                if (key == "position") {
                    need_args(a, 1, key, ln);
                    sign.position = parse_point(a[0], ln);
                } else if (key == "lane") {
                    need_args(a, 1, key, ln);
                    sign.lane = parse_int(a[0], ln);
                } else {
                    throw ScenarioParseError(ln, "unknown stop_sign field '" + key + "'");
                }
            });
            s.map.signs.push_back(std::move(sign));
        } else if (head == "obstacle") {
            need_args(args, 1, head, t.line);
            Obstacle ob;
            ob.id = args[0];
            BlockReader(toks, i).each([&](const std::string& key, const std::vector<std::string>& a, int ln) {
                if (key == "position") {
                    need_args(a, 1, key, ln);
                    ob.position = parse_point(a[0], ln);
                } else if (key == "radius") {
                    need_args(a, 1, key, ln);
                    ob.radius = parse_num(a[0], ln);
                } else {
                    throw ScenarioParseError(ln, "unknown obstacle field '" + key + "'");
                }
            });
            s.map.obstacles.push_back(std::move(ob));
        } else if (head == "ego") {
            if (saw_ego) throw ScenarioParseError(t.line, "duplicate ego block");
            saw_ego = true;
            BlockReader(toks, i).each([&](const std::string& key, const std::vector<std::string>& a, int ln) {
                if (key == "lane") {
                    need_args(a, 1, key, ln);
                    s.ego.lane_id = parse_int(a[0], ln);
                } else if (key == "position") {
                    need_args(a, 1, key, ln);
                    s.ego.position = parse_point(a[0], ln);
                } else if (key == "heading") {
                    need_args(a, 1, key, ln);
                    s.ego.heading = parse_num(a[0], ln);
                } else if (key == "speed") {
                    need_args(a, 1, key, ln);
                    s.ego.speed = parse_num(a[0], ln);
                } else if (key == "target_speed") {
                    need_args(a, 1, key, ln);
                    s.ego.target_speed = parse_num(a[0], ln);
                } else if (key == "wheelbase") {
                    need_args(a, 1, key, ln);
                    s.ego.wheelbase = parse_num(a[0], ln);
                } else {
                    throw ScenarioParseError(ln, "unknown ego field '" + key + "'");
                }
            });
        } else if (head == "actor") {
            need_args(args, 1, head, t.line);
            Actor actor;
            actor.id = args[0];
            BlockReader(toks, i).each([&](const std::string& key, const std::vector<std::string>& a, int ln) {
                if (key == "kind") {
                    need_args(a, 1, key, ln);
                    auto k = actor_kind_from(a[0]);
                    if (!k) throw ScenarioParseError(ln, "unknown actor kind '" + a[0] + "'");
                    actor.kind = *k;
                } else if (key == "lane") {
                    need_args(a, 1, key, ln);
                    if (a[0] != "none") actor.lane_id = parse_int(a[0], ln);
                } else if (key == "position") {
                    need_args(a, 1, key, ln);
                    actor.position = parse_point(a[0], ln);
                } else if (key == "heading") {
                    need_args(a, 1, key, ln);
                    actor.heading = parse_num(a[0], ln);
                } else if (key == "speed") {
                    need_args(a, 1, key, ln);
                    actor.speed = parse_num(a[0], ln);
                } else if (key == "keyframe") {
                    // keyframe <t> (x,y) <heading> <speed>
                    need_args(a, 4, key, ln);
                    ScriptKeyframe kf;
                    kf.t = parse_num(a[0], ln);
                    kf.position = parse_point(a[1], ln);
                    kf.heading = parse_num(a[2], ln);
                    kf.speed = parse_num(a[3], ln);
                    actor.script.push_back(kf);
                } else if (key == "jitter") {
                    need_args(a, 1, key, ln);
                    actor.jitter = parse_num(a[0], ln);
                } else {
                    throw ScenarioParseError(ln, "unknown actor field '" + key + "'");
                }
            });
            s.actors.push_back(std::move(actor));
        } else if (head == "route") {
            if (saw_route) throw ScenarioParseError(t.line, "duplicate route");
            saw_route = true;
            for (const auto& w : args) s.route_waypoints.push_back(parse_point(w, t.line));
            ++i;
        } else {
            throw ScenarioParseError(t.line, "unknown directive '" + head + "' in " + origin);
        }
    }

    if (!saw_version) throw ScenarioParseError(0, "missing format_version");
    if (!saw_ego) throw ScenarioParseError(0, "missing ego block");
    if (!saw_route) throw ScenarioParseError(0, "missing route");
    validate_scenario(s);
    return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open scenario file: " + path.string());
    Scenario s = parse_scenario(in, path.string());
    if (s.name.empty()) s.name = path.stem().string();
    return s;
}

void validate_scenario(const Scenario& s) {
    if (s.format_version != 1)
        throw ScenarioValidationError("format_version must be 1, got " +
                                      std::to_string(s.format_version));

    std::set<int> ids;
    for (const auto& lane : s.map.lanes) {
        if (!ids.insert(lane.id).second)
            throw ScenarioValidationError("duplicate lane id " + std::to_string(lane.id));
        if (lane.centerline.size() < 2)
            throw ScenarioValidationError("lane " + std::to_string(lane.id) +
                                          " centerline must have at least 2 points");
        for (std::size_t i = 1; i < lane.centerline.size(); ++i) {
            if (distance(lane.centerline[i - 1], lane.centerline[i]) <= 0.0)
                throw ScenarioValidationError("lane " + std::to_string(lane.id) +
                                              " has duplicate consecutive centerline points");
        }
        if (lane.width <= 0.0)
            throw ScenarioValidationError("lane " + std::to_string(lane.id) + " width must be positive");
    }
    auto need_lane = [&](int id, const std::string& who) {
        if (!s.map.find_lane(id))
            throw ScenarioValidationError(who + " references missing lane " + std::to_string(id));
    };
    for (const auto& lane : s.map.lanes) {
        for (int suc : lane.successors) need_lane(suc, "lane " + std::to_string(lane.id) + " successor");
        if (lane.left) {
            need_lane(*lane.left, "lane " + std::to_string(lane.id) + " left neighbor");
            const Lane* l = s.map.find_lane(*lane.left);
            if (!l->right || *l->right != lane.id)
                throw ScenarioValidationError("lane neighbor references must be symmetric (lanes " +
                                              std::to_string(lane.id) + "/" + std::to_string(*lane.left) + ")");
        }
        if (lane.right) {
            need_lane(*lane.right, "lane " + std::to_string(lane.id) + " right neighbor");
            const Lane* r = s.map.find_lane(*lane.right);
            if (!r->left || *r->left != lane.id)
                throw ScenarioValidationError("lane neighbor references must be symmetric (lanes " +
                                              std::to_string(lane.id) + "/" + std::to_string(*lane.right) + ")");
        }
    }
    for (const auto& light : s.map.lights) {
        if (light.schedule.empty())
            throw ScenarioValidationError("light " + light.id + " needs a phase schedule");
        for (const auto& p : light.schedule)
            if (p.duration <= 0.0)
                throw ScenarioValidationError("light " + light.id + " phase durations must be positive");
        for (int id : light.lanes) need_lane(id, "light " + light.id);
        if (light.lanes.empty())
            throw ScenarioValidationError("light " + light.id + " must control at least one lane");
    }
    for (const auto& sign : s.map.signs) need_lane(sign.lane, "stop_sign " + sign.id);
    for (const auto& a : s.actors) {
        if (a.lane_id) need_lane(*a.lane_id, "actor " + a.id);
        for (std::size_t i = 1; i < a.script.size(); ++i)
            if (a.script[i].t <= a.script[i - 1].t)
                throw ScenarioValidationError("actor " + a.id + " keyframe times must be strictly increasing");
        if (a.jitter < 0.0)
            throw ScenarioValidationError("actor " + a.id + " jitter must be non-negative");
    }
    need_lane(s.ego.lane_id, "ego");
    if (s.ego.wheelbase <= 0.0) throw ScenarioValidationError("ego wheelbase must be positive");
    if (s.ego.speed < 0.0) throw ScenarioValidationError("ego speed must be non-negative");
    if (s.route_waypoints.size() < 2)
        throw ScenarioValidationError("route must have at least 2 waypoints");
}

double polyline_length(const std::vector<Vec2>& pts) {
    double total = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) total += distance(pts[i - 1], pts[i]);
    return total;
}

std::vector<Vec2> densify_route(const std::vector<Vec2>& sparse, double spacing) {
    if (sparse.size() < 2) throw Error("densify_route requires at least 2 waypoints");
    double total = polyline_length(sparse);
    if (total < 1e-12) return {sparse.front(), sparse.back()};

    std::vector<Vec2> out;
    std::size_t seg = 0;
    double seg_start = 0.0;  // arc length at sparse[seg]
    double seg_len = distance(sparse[0], sparse[1]);

    // Emit at exact multiples of the spacing to avoid accumulation drift.
    for (std::size_t k = 0;; ++k) {
        double s = static_cast<double>(k) * spacing;
        if (s >= total - 1e-9) break;
        while (seg + 2 < sparse.size() && s > seg_start + seg_len) {
            seg_start += seg_len;
            ++seg;
            seg_len = distance(sparse[seg], sparse[seg + 1]);
        }
        double frac = seg_len > 0.0 ? (s - seg_start) / seg_len : 0.0;
        out.push_back(sparse[seg] + (sparse[seg + 1] - sparse[seg]) * frac);
    }
    out.push_back(sparse.back());
    return out;
}

RouteSpec make_route(const std::vector<Vec2>& sparse) {
    RouteSpec r;
    r.sparse = sparse;
    r.path = densify_route(sparse);
    r.length = polyline_length(sparse);
    return r;
}

}  // namespace dualdrive::sim
