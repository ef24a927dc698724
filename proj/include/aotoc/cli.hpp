#pragma once

// Command-line front end. Exit codes: 0 success, 1 runtime error, 2 usage or
// configuration error.

#include "aotoc/io.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace aotoc {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

struct CommandConfig {
  std::string subcommand;  // algebra | otoc | rate | rate-sweep | minimize | mincut | experiment
  std::string spec_path, algebra_path, unitary_path, hamiltonian_path, family_path, graph_path, config_path;
  std::string out_path, svg_path;
  std::string svg_field = "mean_S_size";
  std::string form;
  int samples = 10000;
  std::optional<int> constrain_size;
  bool brute_force = false;
  bool report = true;
  Seed seed = 0;
  std::optional<double> tolerance;
  int threads = 1;

  Tolerances tolerances() const;
};

enum class ConfigKind { algebra, hamiltonian, unitary, family, graph, sweep };

/// Loads and schema-checks a file of the given kind; throws ConfigError with
/// line:column positions.
void validate_config(const std::string& path, ConfigKind kind, const CommandConfig& ctx = {});

SweepConfig load_sweep_config(const std::string& path);
InteractionGraph load_graph(const std::string& path);

/// Runs one command line. argv[0] is the program name.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace aotoc
