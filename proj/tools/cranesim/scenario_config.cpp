#include "scenario_config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>

namespace cranesim::scenario {
namespace {

using nlohmann::json;

// Reads fields of one JSON object and remembers which keys were consumed so
// leftovers can be reported as unknown.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(display(), "expected an object");
  }

  bool has(const std::string& key) const { return j_.contains(key) && !j_.at(key).is_null(); }

  const json& raw(const std::string& key) {
    seen_.insert(key);
    if (!j_.contains(key)) throw ConfigError(child(key), "missing required field");
    return j_.at(key);
  }

  double number(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_number()) throw ConfigError(child(key), "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(child(key), "must be finite");
    return x;
  }

  double positive(const std::string& key) {
    const double x = number(key);
    if (!(x > 0.0)) throw ConfigError(child(key), "must be positive");
    return x;
  }

  double number_or(const std::string& key, double fallback) {
    if (!j_.contains(key)) return fallback;
    return number(key);
  }

  std::string string_or(const std::string& key, const std::string& fallback) {
    if (!j_.contains(key)) return fallback;
    const json& v = raw(key);
    if (!v.is_string()) throw ConfigError(child(key), "expected a string");
    return v.get<std::string>();
  }

  template <int N>
  Eigen::Matrix<double, N, 1> vector(const std::string& key, bool require_positive) {
    const json& v = raw(key);
    if (!v.is_array() || v.size() != N) {
      throw ConfigError(child(key), "expected an array of " + std::to_string(N) + " numbers");
    }
    Eigen::Matrix<double, N, 1> out;
    for (int i = 0; i < N; ++i) {
      const std::string elem = child(key) + "[" + std::to_string(i) + "]";
      if (!v[i].is_number()) throw ConfigError(elem, "expected a number");
      out[i] = v[i].get<double>();
      if (!std::isfinite(out[i])) throw ConfigError(elem, "must be finite");
      if (require_positive && !(out[i] > 0.0)) throw ConfigError(elem, "must be positive");
    }
    return out;
  }

  ObjectReader object(const std::string& key) { return ObjectReader(raw(key), child(key)); }

  void mark(const std::string& key) { seen_.insert(key); }

  void finish() const {
    for (const auto& item : j_.items()) {
      if (!seen_.count(item.key())) throw ConfigError(child(item.key()), "unknown key");
    }
  }

  std::string child(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }
  std::string display() const { return path_.empty() ? "<root>" : path_; }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

CraneParameters read_crane(ObjectReader r) {
  CraneParameters p;
  p.tower_inertia = r.positive("tower_inertia");
  p.boom_inertia = r.positive("boom_inertia");
  p.boom_length = r.positive("boom_length");
  p.boom_mass = r.positive("boom_mass");
  p.payload_mass = r.positive("payload_mass");
  p.gravity = r.positive("gravity");
  r.finish();
  return p;
}

control::ControllerGains read_gains(ObjectReader r) {
  control::ControllerGains g;
  g.k_ad = r.vector<3>("k_ad", true);
  g.k_ap = r.vector<3>("k_ap", true);
  g.k_ud = r.vector<2>("k_ud", true);
  g.k_up = r.vector<2>("k_up", true);
  g.alpha1 = r.number("alpha1");
  const json& a2 = r.raw("alpha2");
  if (a2.is_string()) {
    if (a2.get<std::string>() != "sign_beta") {
      throw ConfigError(r.child("alpha2"), "expected a number or \"sign_beta\"");
    }
    g.alpha2_rule = control::Alpha2Rule::kSignOfBeta;
  } else if (a2.is_number()) {
    g.alpha2_rule = control::Alpha2Rule::kFixed;
    g.alpha2 = a2.get<double>();
  } else {
    throw ConfigError(r.child("alpha2"), "expected a number or \"sign_beta\"");
  }
  r.finish();
  return g;
}

control::Reference read_reference(ObjectReader r) {
  control::Reference ref;
  ref.q1d[kSlew] = r.number("alpha");
  ref.q1d[kLuff] = r.number("beta");
  ref.q1d[kRope] = r.positive("d");
  r.finish();
  return ref;
}

GeneralizedState read_state(ObjectReader r) {
  GeneralizedState s;
  s.q = r.vector<5>("q", false);
  s.qdot = r.has("qdot") ? r.vector<5>("qdot", false) : Vec5::Zero();
  r.mark("qdot");
  r.finish();
  if (!(s.rope() > 0.0)) throw ConfigError(r.child("q") + "[2]", "rope length must be positive");
  if (!s.is_valid()) throw ConfigError(r.child("q"), "swing angles must satisfy |theta| < pi/2");
  return s;
}

wind::GustProfile read_gust(ObjectReader r) {
  wind::GustProfile g;
  g.start_time = r.number("start_time");
  g.ramp_up = r.number("ramp_up");
  g.plateau = r.number("plateau");
  g.ramp_down = r.number("ramp_down");
  g.peak_speed = r.number("peak_speed");
  for (const char* key : {"ramp_up", "plateau", "ramp_down", "peak_speed"}) {
    if (r.number(key) < 0.0) throw ConfigError(r.child(key), "must be non-negative");
  }
  const json& dir = r.raw("direction");
  if (dir.is_string()) {
    const auto tag = dir.get<std::string>();
    if (tag == "tangential") {
      g.mode = wind::DirectionMode::kTangential;
    } else if (tag == "radial") {
      g.mode = wind::DirectionMode::kRadial;
    } else {
      throw ConfigError(r.child("direction"), "expected \"tangential\", \"radial\" or [x,y,z]");
    }
  } else {
    g.mode = wind::DirectionMode::kWorld;
    g.direction = r.vector<3>("direction", false);
    const double n = g.direction.norm();
    if (!(n > 0.0)) throw ConfigError(r.child("direction"), "must be non-zero");
    g.direction /= n;
  }
  r.finish();
  return g;
}

wind::DragConfig read_drag(ObjectReader r) {
  wind::DragConfig d;
  d.rho = r.positive("rho");
  d.area = r.positive("area");
  d.drag_coefficient = r.positive("drag_coefficient");
  r.finish();
  return d;
}

sim::SimulationConfig read_simulation(ObjectReader r) {
  sim::SimulationConfig s;
  s.dt = r.positive("dt");
  s.duration = r.positive("duration");
  if (s.duration < s.dt) throw ConfigError(r.child("duration"), "must be at least dt");
  const double stride = r.number_or("record_stride", 10);
  if (stride < 1 || stride != std::floor(stride)) {
    throw ConfigError(r.child("record_stride"), "must be a positive integer");
  }
  s.record_stride = static_cast<int>(stride);
  s.initial_state = read_state(r.object("initial_state"));
  if (r.has("saturation")) {
    const json& sat = r.raw("saturation");
    if (!sat.is_array() || sat.size() != 3) {
      throw ConfigError(r.child("saturation"), "expected an array of 3 bounds (null = unbounded)");
    }
    Vec3 bounds;
    for (int i = 0; i < 3; ++i) {
      const std::string elem = r.child("saturation") + "[" + std::to_string(i) + "]";
      if (sat[i].is_null()) {
        bounds[i] = std::numeric_limits<double>::infinity();
      } else if (sat[i].is_number() && sat[i].get<double>() > 0.0) {
        bounds[i] = sat[i].get<double>();
      } else {
        throw ConfigError(elem, "must be a positive number or null");
      }
    }
    s.saturation = bounds;
  }
  r.mark("saturation");
  r.finish();
  return s;
}

}  // namespace

ScenarioConfig parse_scenario(const nlohmann::json& doc) {
  ObjectReader root(doc, "");
  const double version = root.number("schema_version");
  if (version != kSchemaVersion) {
    throw ConfigError("schema_version", "unsupported version (expected " +
                                            std::to_string(kSchemaVersion) + ")");
  }

  ScenarioConfig cfg;
  if (root.has("metadata")) {
    ObjectReader meta = root.object("metadata");
    cfg.name = meta.string_or("name", "");
    cfg.notes = meta.string_or("notes", "");
    cfg.paper_fidelity = meta.string_or("paper_fidelity", "partial");
    if (cfg.paper_fidelity != "full" && cfg.paper_fidelity != "partial") {
      throw ConfigError("metadata.paper_fidelity", "expected \"full\" or \"partial\"");
    }
    meta.finish();
  }
  root.mark("metadata");

  cfg.crane = read_crane(root.object("crane"));
  cfg.gains = read_gains(root.object("controller"));
  cfg.reference = read_reference(root.object("reference"));
  cfg.simulation = read_simulation(root.object("simulation"));

  if (root.has("disturbance")) {
    ObjectReader dist = root.object("disturbance");
    wind::WindDisturbance w;
    w.gust = read_gust(dist.object("gust"));
    w.drag = dist.has("drag") ? read_drag(dist.object("drag")) : wind::DragConfig{};
    dist.mark("drag");
    dist.finish();
    cfg.warnings = w.gust.envelope_warnings();
    cfg.simulation.disturbance = w;
  }
  root.mark("disturbance");
  root.finish();
  return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot open " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("<file>", std::string("invalid JSON: ") + e.what());
  }
  return parse_scenario(doc);
}

nlohmann::json to_json(const ScenarioConfig& cfg) {
  auto arr = [](const auto& v) {
    json a = json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
  };
  json j;
  j["schema_version"] = kSchemaVersion;
  j["metadata"] = {{"name", cfg.name}, {"notes", cfg.notes}, {"paper_fidelity", cfg.paper_fidelity}};
  j["crane"] = {{"tower_inertia", cfg.crane.tower_inertia},
                {"boom_inertia", cfg.crane.boom_inertia},
                {"boom_length", cfg.crane.boom_length},
                {"boom_mass", cfg.crane.boom_mass},
                {"payload_mass", cfg.crane.payload_mass},
                {"gravity", cfg.crane.gravity}};
  j["controller"] = {{"k_ad", arr(cfg.gains.k_ad)}, {"k_ap", arr(cfg.gains.k_ap)},
                     {"k_ud", arr(cfg.gains.k_ud)}, {"k_up", arr(cfg.gains.k_up)},
                     {"alpha1", cfg.gains.alpha1}};
  if (cfg.gains.alpha2_rule == control::Alpha2Rule::kSignOfBeta) {
    j["controller"]["alpha2"] = "sign_beta";
  } else {
    j["controller"]["alpha2"] = cfg.gains.alpha2;
  }
  j["reference"] = {{"alpha", cfg.reference.q1d[kSlew]},
                    {"beta", cfg.reference.q1d[kLuff]},
                    {"d", cfg.reference.q1d[kRope]}};
  const auto& s = cfg.simulation;
  j["simulation"] = {{"dt", s.dt},
                     {"duration", s.duration},
                     {"record_stride", s.record_stride},
                     {"initial_state", {{"q", arr(s.initial_state.q)}, {"qdot", arr(s.initial_state.qdot)}}}};
  if (s.saturation) {
    json sat = json::array();
    for (int i = 0; i < 3; ++i) {
      if (std::isinf((*s.saturation)[i])) {
        sat.push_back(nullptr);
      } else {
        sat.push_back((*s.saturation)[i]);
      }
    }
    j["simulation"]["saturation"] = sat;
  }
  if (s.disturbance) {
    const auto& g = s.disturbance->gust;
    json dir;
    switch (g.mode) {
      case wind::DirectionMode::kTangential:
        dir = "tangential";
        break;
      case wind::DirectionMode::kRadial:
        dir = "radial";
        break;
      case wind::DirectionMode::kWorld:
        dir = arr(g.direction);
        break;
    }
    j["disturbance"] = {
        {"gust",
         {{"start_time", g.start_time}, {"ramp_up", g.ramp_up}, {"plateau", g.plateau},
          {"ramp_down", g.ramp_down}, {"peak_speed", g.peak_speed}, {"direction", dir}}},
        {"drag",
         {{"rho", s.disturbance->drag.rho}, {"area", s.disturbance->drag.area},
          {"drag_coefficient", s.disturbance->drag.drag_coefficient}}}};
  }
  return j;
}

}  // namespace cranesim::scenario
