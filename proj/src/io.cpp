#include "mim/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string_view>

#include "mim/error.hpp"

namespace mim {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string_view strip_comment(std::string_view s) {
  const auto hash = s.find('#');
  return trim(hash == std::string_view::npos ? s : s.substr(0, hash));
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

[[noreturn]] void fail(const std::string& origin, std::size_t line, const std::string& what) {
  throw ParseError(origin + ":" + std::to_string(line) + ": " + what);
}

UserId parse_id(std::string_view tok, const std::string& origin, std::size_t line) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size() || v > std::numeric_limits<UserId>::max()) {
    fail(origin, line, "invalid user id '" + std::string(tok) + "'");
  }
  return static_cast<UserId>(v);
}

double parse_real(std::string_view tok, const std::string& origin, std::size_t line) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size()) {
    fail(origin, line, "invalid number '" + std::string(tok) + "'");
  }
  return v;
}

std::size_t parse_size(std::string_view tok, const std::string& origin, std::size_t line) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size()) {
    fail(origin, line, "invalid count '" + std::string(tok) + "'");
  }
  return v;
}

bool parse_bool(std::string_view tok, const std::string& origin, std::size_t line) {
  if (tok == "true" || tok == "1" || tok == "yes") return true;
  if (tok == "false" || tok == "0" || tok == "no") return false;
  fail(origin, line, "invalid boolean '" + std::string(tok) + "'");
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return in;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

MultiplexManifest parse_manifest(std::istream& in, const std::string& origin) {
  MultiplexManifest manifest;
  manifest.version = 0;
  std::string raw;
  std::size_t line = 0;
  std::vector<bool> has_edges;
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view text = strip_comment(raw);
    if (text.empty()) continue;
    if (text == "[layer]") {
      manifest.layers.emplace_back();
      has_edges.push_back(false);
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) fail(origin, line, "expected key=value or [layer]");
    const std::string_view key = trim(text.substr(0, eq));
    const std::string_view value = trim(text.substr(eq + 1));

    if (manifest.layers.empty()) {
      if (key == "version") {
        manifest.version = static_cast<int>(parse_size(value, origin, line));
      } else if (key == "name") {
        manifest.name = std::string(value);
      } else {
        fail(origin, line, "unknown header key '" + std::string(key) + "'");
      }
      continue;
    }

    ManifestLayer& layer = manifest.layers.back();
    if (key == "edges") {
      layer.edges = std::string(value);
      has_edges.back() = true;
    } else if (key == "model") {
      try {
        layer.model = parse_model_kind(value);
      } catch (const InvalidInput& e) {
        fail(origin, line, e.what());
      }
    } else if (key == "weight_default") {
      layer.weight_default = parse_real(value, origin, line);
    } else if (key == "undirected") {
      layer.undirected = parse_bool(value, origin, line);
    } else if (key == "node_count") {
      layer.node_count = parse_size(value, origin, line);
    } else if (key == "node_base") {
      layer.node_base = parse_id(value, origin, line);
    } else if (key == "threshold_default") {
      layer.threshold_default = parse_real(value, origin, line);
    } else if (key == "nodes") {
      layer.nodes = std::string(value);
    } else if (key == "thresholds") {
      layer.thresholds = std::string(value);
    } else {
      fail(origin, line, "unknown layer key '" + std::string(key) + "'");
    }
  }
  if (manifest.version != kManifestVersion) {
    throw ParseError(origin + ": missing or unsupported version (expected version=" +
                     std::to_string(kManifestVersion) + ")");
  }
  if (manifest.layers.empty()) throw ParseError(origin + ": no [layer] stanza");
  for (std::size_t i = 0; i < has_edges.size(); ++i) {
    if (!has_edges[i]) throw ParseError(origin + ": layer " + std::to_string(i) + " has no edges=");
  }
  return manifest;
}

std::vector<Edge> parse_edge_list(std::istream& in, const std::string& origin,
                                  double weight_default) {
  std::vector<Edge> edges;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto tokens = split_ws(strip_comment(raw));
    if (tokens.empty()) continue;
    if (tokens.size() < 2 || tokens.size() > 3) {
      fail(origin, line, "expected 'src dst [weight]'");
    }
    Edge e;
    e.source = parse_id(tokens[0], origin, line);
    e.target = parse_id(tokens[1], origin, line);
    e.weight = tokens.size() == 3 ? parse_real(tokens[2], origin, line) : weight_default;
    if (!(e.weight >= 0.0 && e.weight <= 1.0)) {
      fail(origin, line, "weight " + format_double(e.weight) + " outside [0,1]");
    }
    if (e.source == e.target) fail(origin, line, "self-loop");
    edges.push_back(e);
  }
  return edges;
}

std::map<UserId, double> parse_thresholds(std::istream& in, const std::string& origin) {
  std::map<UserId, double> out;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto tokens = split_ws(strip_comment(raw));
    if (tokens.empty()) continue;
    if (tokens.size() != 2) fail(origin, line, "expected 'user threshold'");
    const double theta = parse_real(tokens[1], origin, line);
    if (!(theta >= 0.0)) fail(origin, line, "negative threshold");
    out[parse_id(tokens[0], origin, line)] = theta;
  }
  return out;
}

std::vector<UserId> parse_node_list(std::istream& in, const std::string& origin) {
  std::vector<UserId> out;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto tokens = split_ws(strip_comment(raw));
    for (std::string_view tok : tokens) out.push_back(parse_id(tok, origin, line));
  }
  return out;
}

Multiplex load_multiplex(const std::filesystem::path& manifest_path) {
  auto in = open_in(manifest_path);
  const MultiplexManifest manifest = parse_manifest(in, manifest_path.string());
  const auto dir = manifest_path.parent_path();
  std::vector<Layer> layers;
  for (std::size_t i = 0; i < manifest.layers.size(); ++i) {
    const ManifestLayer& entry = manifest.layers[i];
    Layer layer;
    layer.index = i;
    layer.model.kind = entry.model;
    layer.model.default_threshold = entry.threshold_default;
    const auto edge_path = dir / entry.edges;
    auto edge_in = open_in(edge_path);
    layer.edges = parse_edge_list(edge_in, edge_path.string(), entry.weight_default);
    if (entry.undirected) {
      const std::size_t n = layer.edges.size();
      for (std::size_t e = 0; e < n; ++e) {
        const Edge& fwd = layer.edges[e];
        layer.edges.push_back({fwd.target, fwd.source, fwd.weight});
      }
    }
    if (entry.node_count) {
      for (std::size_t v = 0; v < *entry.node_count; ++v) {
        layer.nodes.push_back(static_cast<UserId>(entry.node_base + v));
      }
    }
    if (entry.nodes) {
      const auto nodes_path = dir / *entry.nodes;
      auto nodes_in = open_in(nodes_path);
      const auto extra = parse_node_list(nodes_in, nodes_path.string());
      layer.nodes.insert(layer.nodes.end(), extra.begin(), extra.end());
    }
    if (entry.thresholds) {
      const auto thr_path = dir / *entry.thresholds;
      auto thr_in = open_in(thr_path);
      layer.model.thresholds = parse_thresholds(thr_in, thr_path.string());
    }
    layers.push_back(std::move(layer));
  }
  return build_multiplex(std::move(layers));
}

std::filesystem::path save_multiplex(const Multiplex& m, const std::filesystem::path& dir,
                                     const std::string& stem) {
  std::filesystem::create_directories(dir);
  const auto manifest_path = dir / (stem + ".manifest");
  std::ofstream manifest(manifest_path);
  manifest << "# multiplex manifest\nversion=" << kManifestVersion << "\nname=" << stem << "\n";
  for (std::size_t i = 0; i < m.layer_count(); ++i) {
    const Layer& layer = m.layer(i);
    const std::string edge_name = stem + ".layer" + std::to_string(i) + ".edges";
    std::ofstream edges(dir / edge_name);
    for (const Edge& e : layer.edges) {
      edges << e.source << ' ' << e.target << ' ' << format_double(e.weight) << '\n';
    }
    manifest << "\n[layer]\nedges=" << edge_name << "\nmodel=" << to_string(layer.model.kind)
             << "\n";
    std::vector<UserId> isolated;
    const CompiledLayer& c = m.compiled(i);
    for (std::uint32_t d : c.nodes) {
      if (c.in_degree(d) + c.out_degree(d) == 0) isolated.push_back(m.user_at(d));
    }
    if (!isolated.empty()) {
      const std::string nodes_name = stem + ".layer" + std::to_string(i) + ".nodes";
      std::ofstream nodes(dir / nodes_name);
      for (UserId u : isolated) nodes << u << '\n';
      manifest << "nodes=" << nodes_name << "\n";
    }
    if (layer.model.kind == ModelKind::fixed_threshold) {
      const std::string thr_name = stem + ".layer" + std::to_string(i) + ".thresholds";
      std::ofstream thr(dir / thr_name);
      for (UserId u : layer.nodes) thr << u << ' ' << format_double(layer.model.threshold_of(u)) << '\n';
      manifest << "thresholds=" << thr_name << "\nthreshold_default="
               << format_double(layer.model.default_threshold) << "\n";
    }
  }
  return manifest_path;
}

MckpInstance parse_mckp_instance(std::istream& in, const std::string& origin) {
  MckpInstance inst;
  bool have_budget = false;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto tokens = split_ws(strip_comment(raw));
    if (tokens.empty()) continue;
    if (!have_budget) {
      if (tokens.size() != 1) fail(origin, line, "expected the budget on its own line");
      inst.budget = parse_size(tokens[0], origin, line);
      have_budget = true;
      continue;
    }
    std::vector<MckpItem> cls;
    for (std::string_view tok : tokens) {
      const auto colon = tok.find(':');
      if (colon == std::string_view::npos) fail(origin, line, "expected cost:profit");
      MckpItem item;
      item.cost = parse_size(tok.substr(0, colon), origin, line);
      item.profit = parse_real(tok.substr(colon + 1), origin, line);
      item.payload = cls.size();
      cls.push_back(item);
    }
    inst.classes.push_back(std::move(cls));
  }
  if (!have_budget) throw ParseError(origin + ": empty MCKP instance");
  return inst;
}

}  // namespace mim
