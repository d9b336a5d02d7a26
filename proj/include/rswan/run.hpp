#pragma once

#include <cstdint>
#include <optional>

#include <json.hpp>

namespace rswan {

using Json = nlohmann::ordered_json;

struct RunOptions {
  std::optional<std::uint64_t> seed;
  /// Overrides the precision of every tower in the config.
  std::optional<int> precision;
};

/// Validates the config (ConfigError on any problem), then runs the tasks in
/// declared order. Task failures become records with status FAIL and an
/// `error` object; they never stop later tasks. Wall times go to the
/// top-level "timing" object, outside the deterministic report body.
Json run_config(const Json& config, const RunOptions& options = {});

/// Report without the "timing" member.
Json report_body(const Json& report);

/// True when some task record has status FAIL.
bool report_has_failures(const Json& report);

/// The canned acceptance catalog for one prime, as a config.
Json catalog_config(int p);

/// run_config(catalog_config(p), options).
Json check_all(int p, const RunOptions& options = {});

}  // namespace rswan
