#include "mim/mckp.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <string>

#include "mim/error.hpp"

namespace mim {

std::string_view to_string(MckpSolver solver) {
  return solver == MckpSolver::exact_dp ? "exact-dp" : "greedy-half";
}

MckpSolver parse_mckp_solver(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "exact-dp" || lower == "exact_dp" || lower == "dp" || lower == "exact") {
    return MckpSolver::exact_dp;
  }
  if (lower == "greedy-half" || lower == "greedy_half" || lower == "greedy" || lower == "half") {
    return MckpSolver::greedy_half;
  }
  throw InvalidInput("unknown MCKP solver '" + std::string(text) + "'");
}

namespace {

void validate(const MckpInstance& inst) {
  for (std::size_t i = 0; i < inst.classes.size(); ++i) {
    if (inst.classes[i].empty()) throw InvalidInput("MCKP class " + std::to_string(i) + " is empty");
    for (const MckpItem& item : inst.classes[i]) {
      if (!(item.profit >= 0.0)) {
        throw InvalidInput("MCKP class " + std::to_string(i) + " has a negative profit");
      }
    }
  }
}

MckpSolution finish(const MckpInstance& inst, std::vector<std::size_t> picks) {
  MckpSolution sol;
  sol.picks = std::move(picks);
  for (std::size_t i = 0; i < inst.classes.size(); ++i) {
    sol.total_cost += inst.classes[i][sol.picks[i]].cost;
    sol.total_profit += inst.classes[i][sol.picks[i]].profit;
  }
  return sol;
}

}  // namespace

MckpSolution mckp_exact_dp(const MckpInstance& inst) {
  validate(inst);
  const std::size_t k = inst.classes.size();
  const std::size_t width = inst.budget + 1;
  if (static_cast<double>(k + 1) * static_cast<double>(width) > kMaxDpCells) {
    throw TooLarge("MCKP DP refused: " + std::to_string(k + 1) + " x " + std::to_string(width) +
                   " cells exceeds the guard");
  }
  constexpr double kNeg = -std::numeric_limits<double>::infinity();
  // best[i][b]: max profit of classes i..k-1 with budget b.
  std::vector<std::vector<double>> best(k + 1, std::vector<double>(width, kNeg));
  std::fill(best[k].begin(), best[k].end(), 0.0);
  for (std::size_t i = k; i-- > 0;) {
    for (std::size_t b = 0; b < width; ++b) {
      double v = kNeg;
      for (const MckpItem& item : inst.classes[i]) {
        if (item.cost > b || best[i + 1][b - item.cost] == kNeg) continue;
        v = std::max(v, item.profit + best[i + 1][b - item.cost]);
      }
      best[i][b] = v;
    }
  }
  if (best[0][inst.budget] == kNeg) throw InvalidInput("MCKP instance has no feasible solution");

  std::vector<std::size_t> picks(k, 0);
  std::size_t b = inst.budget;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t x = 0; x < inst.classes[i].size(); ++x) {
      const MckpItem& item = inst.classes[i][x];
      if (item.cost > b || best[i + 1][b - item.cost] == kNeg) continue;
      if (item.profit + best[i + 1][b - item.cost] == best[i][b]) {
        picks[i] = x;
        b -= item.cost;
        break;
      }
    }
  }
  return finish(inst, std::move(picks));
}

MckpSolution mckp_greedy_half(const MckpInstance& inst) {
  validate(inst);
  const std::size_t k = inst.classes.size();

  struct Increment {
    std::size_t cls;
    std::size_t step;  // hull index reached
    std::size_t cost;
    double profit;
    double efficiency;
  };

  std::vector<std::vector<std::size_t>> hulls(k);
  std::vector<std::size_t> base(k);
  std::vector<Increment> increments;
  for (std::size_t i = 0; i < k; ++i) {
    const auto& items = inst.classes[i];
    std::vector<std::size_t> order;
    for (std::size_t x = 0; x < items.size(); ++x) {
      if (items[x].cost <= inst.budget) order.push_back(x);
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (items[a].cost != items[b].cost) return items[a].cost < items[b].cost;
      if (items[a].profit != items[b].profit) return items[a].profit > items[b].profit;
      return a < b;
    });
    if (order.empty() || items[order.front()].cost != 0) {
      throw InvalidInput("greedy MCKP needs a zero-cost item in class " + std::to_string(i));
    }
    base[i] = order.front();

    // Drop dominated items, then keep the upper convex hull.
    auto& hull = hulls[i];
    for (std::size_t x : order) {
      if (!hull.empty() && items[x].profit <= items[hull.back()].profit) continue;
      while (hull.size() >= 2) {
        const MckpItem& a = items[hull[hull.size() - 2]];
        const MckpItem& b = items[hull.back()];
        const MckpItem& c = items[x];
        // slope(a,b) <= slope(b,c)  <=>  b lies on or below segment a-c
        const double lhs = (b.profit - a.profit) * static_cast<double>(c.cost - b.cost);
        const double rhs = (c.profit - b.profit) * static_cast<double>(b.cost - a.cost);
        if (lhs <= rhs) {
          hull.pop_back();
        } else {
          break;
        }
      }
      hull.push_back(x);
    }
    for (std::size_t t = 1; t < hull.size(); ++t) {
      const MckpItem& from = items[hull[t - 1]];
      const MckpItem& to = items[hull[t]];
      const std::size_t dc = to.cost - from.cost;
      const double dp = to.profit - from.profit;
      increments.push_back({i, t, dc, dp, dp / static_cast<double>(dc)});
    }
  }

  std::stable_sort(increments.begin(), increments.end(), [](const Increment& a, const Increment& b) {
    if (a.efficiency != b.efficiency) return a.efficiency > b.efficiency;
    if (a.cls != b.cls) return a.cls < b.cls;
    return a.step < b.step;
  });

  std::vector<std::size_t> level(k, 0);
  std::vector<std::uint8_t> blocked(k, 0);
  std::size_t remaining = inst.budget;
  for (const Increment& inc : increments) {
    if (blocked[inc.cls] || level[inc.cls] + 1 != inc.step) continue;
    if (inc.cost <= remaining) {
      remaining -= inc.cost;
      level[inc.cls] = inc.step;
    } else {
      blocked[inc.cls] = 1;
    }
  }
  std::vector<std::size_t> greedy_picks(k);
  for (std::size_t i = 0; i < k; ++i) greedy_picks[i] = hulls[i][level[i]];
  MckpSolution greedy = finish(inst, greedy_picks);

  double base_total = 0.0;
  for (std::size_t i = 0; i < k; ++i) base_total += inst.classes[i][base[i]].profit;
  std::vector<std::size_t> single_picks = base;
  double single_best = base_total;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t x = 0; x < inst.classes[i].size(); ++x) {
      const MckpItem& item = inst.classes[i][x];
      if (item.cost > inst.budget) continue;
      const double v = base_total - inst.classes[i][base[i]].profit + item.profit;
      if (v > single_best) {
        single_best = v;
        single_picks = base;
        single_picks[i] = x;
      }
    }
  }
  if (single_best > greedy.total_profit) return finish(inst, single_picks);
  return greedy;
}

MckpSolution solve_mckp(const MckpInstance& inst, MckpSolver solver) {
  return solver == MckpSolver::exact_dp ? mckp_exact_dp(inst) : mckp_greedy_half(inst);
}

}  // namespace mim
