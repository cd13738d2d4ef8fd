#include "mim/types.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "mim/error.hpp"

namespace mim {

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::ic: return "IC";
    case ModelKind::lt: return "LT";
    case ModelKind::mlt: return "MLT";
    case ModelKind::fixed_threshold: return "FixedThreshold";
  }
  return "?";
}

ModelKind parse_model_kind(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "ic") return ModelKind::ic;
  if (lower == "lt") return ModelKind::lt;
  if (lower == "mlt") return ModelKind::mlt;
  if (lower == "fixedthreshold" || lower == "fixed" || lower == "fixed_threshold") {
    return ModelKind::fixed_threshold;
  }
  throw InvalidInput("unknown model kind '" + std::string(text) + "'");
}

void normalize(SeedSet& seeds) {
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
}

}  // namespace mim
