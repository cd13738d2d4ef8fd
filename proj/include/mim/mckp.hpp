#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace mim {

struct MckpItem {
  std::size_t cost = 0;
  double profit = 0.0;
  /// Caller-defined tag carried through unchanged (KSN stores the budget j).
  std::size_t payload = 0;
};

/// Pick one item per class with total cost <= budget, maximizing profit.
struct MckpInstance {
  std::vector<std::vector<MckpItem>> classes;
  std::size_t budget = 0;
};

struct MckpSolution {
  std::vector<std::size_t> picks;  // item index per class
  std::size_t total_cost = 0;
  double total_profit = 0.0;
};

enum class MckpSolver { exact_dp, greedy_half };

std::string_view to_string(MckpSolver solver);
MckpSolver parse_mckp_solver(std::string_view text);

inline constexpr double kMaxDpCells = 1e6;

/// Optimal solution by dynamic programming over (class, remaining budget).
/// Among optimal solutions returns the lexicographically smallest pick vector.
/// Throws TooLarge above kMaxDpCells table cells, InvalidInput if infeasible.
MckpSolution mckp_exact_dp(const MckpInstance& inst);

/// Greedy 1/2-approximation: per-class upper convex hulls, increments applied
/// in decreasing profit/cost order, then the better of that solution and the
/// best single-class upgrade. Requires a zero-cost item in every class.
MckpSolution mckp_greedy_half(const MckpInstance& inst);

MckpSolution solve_mckp(const MckpInstance& inst, MckpSolver solver);

}  // namespace mim
