#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ddcsim/fleet.hpp"
#include "ddcsim/plant.hpp"

namespace ddcsim {

// Raised for any configuration problem; the message carries the offending
// field path (e.g. "comm.cluster_sizes").
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommConfig {
  bool enabled = false;
  double window = 30.0;           // register lifetime T [s]
  std::vector<int> cluster_sizes;  // consecutive blocks of the CeDDC devices
};

// How many devices follow each policy. Devices are assigned in id order:
// uncontrolled first, then basic DDC, then CeDDC.
struct PolicyMix {
  int uncontrolled = 0;
  int ddc = 0;
  int ceddc = 0;
  int total() const { return uncontrolled + ddc + ceddc; }
};

struct ScenarioConfig {
  std::uint64_t seed = 1;
  double dt = 0.01;           // integration step [s]
  double t_total = 20000.0;   // run length [s]
  double t_transient = 200.0; // samples before this are excluded from stats
  PlantParams plant;
  FleetParams fleet;
  DdcParams ddc;
  CommConfig comm;
  PolicyMix policy;

  int step_count() const;

  // Fills derived defaults (policy mix, cluster partition, comm enable) and
  // checks every invariant; throws ConfigError with the field path.
  void normalize_and_validate();

  // Paper-baseline defaults with every device uncontrolled.
  static ScenarioConfig defaults();

  // Convenience constructors for the standard scenarios.
  static ScenarioConfig no_ddc();
  static ScenarioConfig all_ddc();
  static ScenarioConfig all_ceddc(const std::vector<int>& cluster_sizes,
                                  double window = 30.0);
  static ScenarioConfig mixed(int n_ddc, int n_ceddc, double window = 30.0);
};

// JSON <-> config. Parsing rejects unknown keys and reports problems with a
// field path; missing fields take the defaults above.
ScenarioConfig parse_config_text(const std::string& json_text);
ScenarioConfig load_config_file(const std::string& path);
std::string config_to_json(const ScenarioConfig& config, int indent = 2);

}  // namespace ddcsim
