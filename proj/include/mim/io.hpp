#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mim/mckp.hpp"
#include "mim/multiplex.hpp"

namespace mim {

/// One `[layer]` stanza of a manifest. Paths are relative to the manifest.
struct ManifestLayer {
  std::filesystem::path edges;
  ModelKind model = ModelKind::ic;
  double weight_default = 1.0;
  bool undirected = false;
  /// Adds users node_base .. node_base + node_count - 1 to the layer.
  std::optional<std::size_t> node_count;
  UserId node_base = 0;
  /// File of extra member ids (whitespace separated), e.g. isolated users.
  std::optional<std::filesystem::path> nodes;
  double threshold_default = 1.0;
  std::optional<std::filesystem::path> thresholds;
};

struct MultiplexManifest {
  int version = 1;
  std::string name;
  std::vector<ManifestLayer> layers;
};

inline constexpr int kManifestVersion = 1;

MultiplexManifest parse_manifest(std::istream& in, const std::string& origin);

/// Parses "src dst [weight]" lines; '#' starts a comment. Errors name
/// `origin` and the 1-based line number.
std::vector<Edge> parse_edge_list(std::istream& in, const std::string& origin,
                                  double weight_default);

/// Parses "user threshold" lines.
std::map<UserId, double> parse_thresholds(std::istream& in, const std::string& origin);

std::vector<UserId> parse_node_list(std::istream& in, const std::string& origin);

Multiplex load_multiplex(const std::filesystem::path& manifest);

/// Writes `<dir>/<stem>.manifest` plus one edge file (and, for FixedThreshold
/// layers, one threshold file) per layer. Returns the manifest path.
std::filesystem::path save_multiplex(const Multiplex& m, const std::filesystem::path& dir,
                                     const std::string& stem);

/// MCKP text format: first non-comment line is the budget, then one line
/// per class of whitespace-separated "cost:profit" items.
MckpInstance parse_mckp_instance(std::istream& in, const std::string& origin);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

}  // namespace mim
