#include "ddcsim/config.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace ddcsim {

using nlohmann::json;

int ScenarioConfig::step_count() const {
  return static_cast<int>(std::llround(t_total / dt));
}

namespace {

void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

void require(bool ok, const std::string& path, const std::string& what) {
  if (!ok) fail(path, what);
}

}  // namespace

void ScenarioConfig::normalize_and_validate() {
  require(fleet.count >= 1, "fleet.N", "must be >= 1");
  require(fleet.count <= 65535, "fleet.N", "must be <= 65535");
  require(fleet.rate_on > 0.0, "fleet.p", "must be > 0");
  require(fleet.rate_off > 0.0, "fleet.q", "must be > 0");
  require(fleet.rated_power > 0.0, "fleet.P0", "must be > 0");

  require(dt > 0.0, "dt", "must be > 0");
  require(t_total > 0.0, "t_total", "must be > 0");
  require(t_transient >= 0.0, "t_transient", "must be >= 0");
  require(t_transient < t_total, "t_transient", "must be < t_total");
  require(fleet.rate_on * dt < 0.1, "fleet.p",
          "p*dt must be < 0.1 for first-order event sampling");
  require(fleet.rate_off * dt < 0.1, "fleet.q",
          "q*dt must be < 0.1 for first-order event sampling");

  require(plant.omega_ref > 0.0, "plant.omega_ref", "must be > 0");
  require(plant.inertia > 0.0, "plant.H", "must be > 0");
  require(plant.governor_tau > 0.0, "plant.tau_g", "must be > 0");
  require(plant.droop > 0.0, "plant.R_droop", "must be > 0");
  require(plant.secondary_gain > 0.0, "plant.K", "must be > 0");
  require(plant.capacity > 0.0, "plant.P_G", "must be > 0");
  require(plant.freq_sensitivity >= 0.0, "plant.D", "must be >= 0");

  require(ddc.epsilon > 0.0, "ddc.epsilon", "must be > 0");
  require(ddc.epsilon1 > ddc.epsilon, "ddc.epsilon1",
          "must be > ddc.epsilon");
  require(ddc.gamma >= 0.0, "ddc.gamma", "must be >= 0");

  // An unspecified policy mix means the whole fleet is uncontrolled.
  if (policy.total() == 0) policy.uncontrolled = fleet.count;
  require(policy.uncontrolled >= 0 && policy.ddc >= 0 && policy.ceddc >= 0,
          "policy_assignment", "counts must be >= 0");
  require(policy.total() == fleet.count, "policy_assignment",
          "counts must sum to fleet.N");

  require(comm.window >= 0.0, "comm.window_T", "must be >= 0");
  if (policy.ceddc > 0) {
    comm.enabled = true;
    if (comm.cluster_sizes.empty())
      comm.cluster_sizes = {policy.ceddc};  // all-to-all within the subfleet
    int sum = 0;
    for (std::size_t i = 0; i < comm.cluster_sizes.size(); ++i) {
      require(comm.cluster_sizes[i] >= 1, "comm.cluster_sizes",
              "every cluster size must be >= 1");
      sum += comm.cluster_sizes[i];
    }
    require(sum == policy.ceddc, "comm.cluster_sizes",
            "must sum to the number of CeDDC devices");
  } else {
    require(comm.cluster_sizes.empty(), "comm.cluster_sizes",
            "given but there are no CeDDC devices");
    comm.enabled = false;
  }
}

ScenarioConfig ScenarioConfig::defaults() { return {}; }

ScenarioConfig ScenarioConfig::no_ddc() {
  ScenarioConfig c;
  c.policy = {c.fleet.count, 0, 0};
  return c;
}

ScenarioConfig ScenarioConfig::all_ddc() {
  ScenarioConfig c;
  c.policy = {0, c.fleet.count, 0};
  return c;
}

ScenarioConfig ScenarioConfig::all_ceddc(const std::vector<int>& cluster_sizes,
                                         double window) {
  ScenarioConfig c;
  c.policy = {0, 0, c.fleet.count};
  c.comm.enabled = true;
  c.comm.window = window;
  c.comm.cluster_sizes = cluster_sizes;
  return c;
}

ScenarioConfig ScenarioConfig::mixed(int n_ddc, int n_ceddc, double window) {
  ScenarioConfig c;
  c.policy = {c.fleet.count - n_ddc - n_ceddc, n_ddc, n_ceddc};
  c.comm.enabled = n_ceddc > 0;
  c.comm.window = window;
  if (n_ceddc > 0) c.comm.cluster_sizes = {n_ceddc};
  return c;
}

namespace {

// Pulls `key` out of `obj` if present, enforcing the JSON type; `seen` tracks
// handled keys so unknown ones can be reported afterwards.
class Reader {
 public:
  Reader(const json& obj, std::string path)
      : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) fail(path_.empty() ? "config" : path_, "must be an object");
  }

  template <typename T>
  void get(const char* key, T& out) {
    auto it = obj_.find(key);
    if (it == obj_.end()) return;
    seen_.push_back(key);
    try {
      out = it->get<T>();
    } catch (const json::exception&) {
      fail(join(key), "has the wrong type");
    }
  }

  const json* child(const char* key) {
    auto it = obj_.find(key);
    if (it == obj_.end()) return nullptr;
    seen_.push_back(key);
    return &*it;
  }

  void finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      bool known = false;
      for (const std::string& s : seen_)
        if (s == it.key()) known = true;
      if (!known) fail(join(it.key().c_str()), "unknown field");
    }
  }

  std::string join(const char* key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

 private:
  const json& obj_;
  std::string path_;
  std::vector<std::string> seen_;
};

void read_plant(const json& j, PlantParams& p) {
  Reader r(j, "plant");
  r.get("omega_ref", p.omega_ref);
  r.get("H", p.inertia);
  r.get("tau_g", p.governor_tau);
  r.get("R_droop", p.droop);
  r.get("K", p.secondary_gain);
  r.get("P_G", p.capacity);
  r.get("D", p.freq_sensitivity);
  r.finish();
}

void read_fleet(const json& j, FleetParams& f) {
  Reader r(j, "fleet");
  r.get("N", f.count);
  r.get("p", f.rate_on);
  r.get("q", f.rate_off);
  r.get("P0", f.rated_power);
  r.finish();
}

void read_ddc(const json& j, DdcParams& d) {
  Reader r(j, "ddc");
  r.get("epsilon", d.epsilon);
  r.get("epsilon1", d.epsilon1);
  r.get("gamma", d.gamma);
  r.finish();
}

void read_comm(const json& j, CommConfig& c) {
  Reader r(j, "comm");
  r.get("enabled", c.enabled);
  r.get("window_T", c.window);
  r.get("cluster_sizes", c.cluster_sizes);
  r.finish();
}

void read_policy(const json& j, PolicyMix& p) {
  Reader r(j, "policy_assignment");
  r.get("uncontrolled", p.uncontrolled);
  r.get("ddc", p.ddc);
  r.get("ceddc", p.ceddc);
  r.finish();
}

}  // namespace

ScenarioConfig parse_config_text(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }

  ScenarioConfig c;
  Reader r(j, "");
  r.get("seed", c.seed);
  r.get("dt", c.dt);
  r.get("t_total", c.t_total);
  r.get("t_transient", c.t_transient);
  if (const json* p = r.child("plant")) read_plant(*p, c.plant);
  if (const json* f = r.child("fleet")) read_fleet(*f, c.fleet);
  if (const json* d = r.child("ddc")) read_ddc(*d, c.ddc);
  if (const json* m = r.child("comm")) read_comm(*m, c.comm);
  if (const json* a = r.child("policy_assignment")) read_policy(*a, c.policy);
  r.finish();

  c.normalize_and_validate();
  return c;
}

ScenarioConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string config_to_json(const ScenarioConfig& config, int indent) {
  json j;
  j["seed"] = config.seed;
  j["dt"] = config.dt;
  j["t_total"] = config.t_total;
  j["t_transient"] = config.t_transient;
  j["plant"] = {{"omega_ref", config.plant.omega_ref},
                {"H", config.plant.inertia},
                {"tau_g", config.plant.governor_tau},
                {"R_droop", config.plant.droop},
                {"K", config.plant.secondary_gain},
                {"P_G", config.plant.capacity},
                {"D", config.plant.freq_sensitivity}};
  j["fleet"] = {{"N", config.fleet.count},
                {"p", config.fleet.rate_on},
                {"q", config.fleet.rate_off},
                {"P0", config.fleet.rated_power}};
  j["ddc"] = {{"epsilon", config.ddc.epsilon},
              {"epsilon1", config.ddc.epsilon1},
              {"gamma", config.ddc.gamma}};
  j["comm"] = {{"enabled", config.comm.enabled},
               {"window_T", config.comm.window},
               {"cluster_sizes", config.comm.cluster_sizes}};
  j["policy_assignment"] = {{"uncontrolled", config.policy.uncontrolled},
                            {"ddc", config.policy.ddc},
                            {"ceddc", config.policy.ceddc}};
  return j.dump(indent);
}

}  // namespace ddcsim
