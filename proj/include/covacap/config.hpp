#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "covacap/capacity.hpp"
#include "covacap/channel.hpp"
#include "covacap/representation.hpp"

namespace covacap {

using ordered_json = nlohmann::ordered_json;

struct ChannelOptions {
  double log_base{2.0};
  std::uint64_t seed{1729};
  int restarts{32};
  int samples{1000};
  int tensor_level{1};
};

// Parsed channel description: a builtin family (or explicit custom tables)
// plus an exact distribution on the product group S x T, element coordinates
// [h, k] mapping to index h * |T| + k.
struct ChannelConfig {
  std::string family;
  int parameter{0};

  // custom family payload
  std::vector<std::vector<int>> s_cayley;
  std::vector<std::vector<int>> t_cayley;
  std::vector<std::vector<cplx>> characters;  // characters[j][t]
  std::vector<std::vector<int>> action;       // action[s][j]

  enum class DistKind { kUniform, kPointMass, kExplicit };
  DistKind dist_kind{DistKind::kUniform};
  std::pair<int, int> point{0, 0};
  std::vector<std::pair<std::pair<int, int>, Rational>> entries;

  ChannelOptions options;
};

ChannelConfig parse_config(const std::string& path);
ChannelConfig parse_config_json(const ordered_json& j);
ordered_json serialize_config(const ChannelConfig& cfg);

struct BuiltChannel {
  GroupChannelSetup setup;
  MixedUnitaryChannel channel;
};

BuiltChannel build_channel(const ChannelConfig& cfg);

struct RunResult {
  ordered_json report;
  int exit_code{0};
};

RunResult run_describe(const ChannelConfig& cfg);
RunResult run_capacity(const ChannelConfig& cfg);
RunResult run_verify(const ChannelConfig& cfg, int level);

// Human-readable rendering; wall time appears here and never in the JSON.
std::string render_text(const ordered_json& report, double seconds);

}  // namespace covacap
