#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mim {

/// Global user id, shared by every layer a user belongs to.
using UserId = std::uint32_t;

/// Sorted, duplicate-free list of users.
using SeedSet = std::vector<UserId>;

enum class ModelKind { ic, lt, mlt, fixed_threshold };

std::string_view to_string(ModelKind kind);

/// Accepts "IC", "LT", "MLT", "FixedThreshold" (case-insensitive, also "fixed").
ModelKind parse_model_kind(std::string_view text);

/// Sorts and deduplicates in place.
void normalize(SeedSet& seeds);

}  // namespace mim
