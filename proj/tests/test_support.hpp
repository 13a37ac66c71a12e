#pragma once

#include <cstdint>
#include <vector>

#include "sumfree/group.hpp"

namespace test_support {

/// Every factor list (each factor >= 2, at most `max_factors` factors, in
/// any order) whose product is at most max_order.
inline std::vector<sumfree::GroupSpec> factor_lists(std::size_t max_order,
                                                    std::size_t max_factors = 3) {
  std::vector<sumfree::GroupSpec> out;
  std::vector<std::uint32_t> cur;
  auto rec = [&](auto&& self, std::size_t order) -> void {
    if (!cur.empty()) out.emplace_back(cur);
    if (cur.size() == max_factors) return;
    for (std::uint32_t f = 2; order * f <= max_order; ++f) {
      cur.push_back(f);
      self(self, order * f);
      cur.pop_back();
    }
  };
  rec(rec, 1);
  return out;
}

inline std::vector<sumfree::GroupSpec> type_one_groups(std::size_t max_order,
                                                       std::size_t max_factors = 3) {
  std::vector<sumfree::GroupSpec> out;
  for (auto& g : factor_lists(max_order, max_factors))
    if (sumfree::smallest_typeI_prime(g)) out.push_back(g);
  return out;
}

}  // namespace test_support
