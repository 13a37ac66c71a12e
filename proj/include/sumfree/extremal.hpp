#pragma once

#include <boost/rational.hpp>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "sumfree/group.hpp"
#include "sumfree/schur.hpp"
#include "sumfree/vertex_set.hpp"

namespace sumfree {

using Rational = boost::rational<std::int64_t>;

/// Maximum-size sum-free sets of a Type I(q) group, as homomorphism
/// preimages of the middle third {k+1,...,2k+1} of Z_q (q = 3k+2).
/// Members are distinct and kept in lexicographic order of their sorted
/// element lists; that order is the family order used for tie-breaks.
struct MaxSumFreeFamily {
  GroupSpec group;
  std::uint32_t q = 0;
  std::vector<VertexSet> sets;

  std::size_t member_size() const { return sets.empty() ? 0 : sets.front().count(); }
};

/// (q+1)/(3q) for Type I(q); throws NotTypeIError otherwise.
Rational mu(const GroupSpec& g);

MaxSumFreeFamily enumerate_SF0(const GroupSpec& g);

struct CardinalityReport {
  std::uint32_t q = 0;
  std::size_t family_size = 0;
  std::size_t order_q_count = 0;
  std::size_t expected = 0;  // #order-q / 2 for odd q, #order-2 for q = 2
  bool count_law = false;
  bool at_most_order = false;
  bool ok() const { return count_law && at_most_order; }
};
CardinalityReport sf0_cardinality_check(const GroupSpec& g);

struct IntersectionReport {
  std::size_t pairs = 0;
  std::size_t max_intersection = 0;
  std::size_t min_intersection = 0;
  double ceiling = 0.0;  // (1 - 1/q) mu(G) |G|
  bool within_ceiling = true;
  /// q = 2 only: every pair meets in exactly |G|/4 elements.
  std::optional<bool> exact_quarter;
  bool ok() const { return within_ceiling && exact_quarter.value_or(true); }
};
IntersectionReport pairwise_intersection_check(const MaxSumFreeFamily& f);

/// min over v ∉ B of #{edges e ∋ v with |e ∩ B| = 2}. Rejects B = V.
std::size_t delta_H_B(const SchurHypergraph& h, const VertexSet& b);
/// Minimum of delta_H_B over the family members.
std::size_t delta_H_family(const SchurHypergraph& h, const MaxSumFreeFamily& f);

/// min over members B of |A \ B|.
std::size_t distance_to_family(const MaxSumFreeFamily& f, const VertexSet& a);

struct ProfileRow {
  std::size_t size = 0;
  std::size_t schur_count = 0;
  std::size_t min_distance = 0;
};

struct FrontierPoint {
  double schur_density = 0.0;  // e(H[A]) / |G|^2
  double distance = 0.0;       // min_B |A \ B| / |G|
};

struct StabilityProfile {
  std::vector<ProfileRow> rows;
  /// Points not dominated (in both coordinates, smaller is "worse") by any
  /// other scanned set, sorted by distance.
  std::vector<FrontierPoint> frontier;

  void write_csv(std::ostream& os) const;
};

struct ProfileMode {
  enum class Kind { exhaustive, sample } kind = Kind::exhaustive;
  std::size_t count = 0;
  std::uint64_t seed = 0;

  static ProfileMode exhaustive() { return {}; }
  static ProfileMode sample(std::size_t count, std::uint64_t seed) {
    return {Kind::sample, count, seed};
  }
};

inline constexpr std::size_t kExhaustiveProfileLimit = 16;

/// Rows for scanned A with |A| >= min_size_fraction * |G|. Exhaustive mode
/// requires |G| <= 16.
StabilityProfile stability_profile(const GroupSpec& g, const SchurHypergraph& h,
                                   const MaxSumFreeFamily& family, double min_size_fraction,
                                   ProfileMode mode);

/// Largest beta on the grid {step, 2 step, ...} <= alpha such that every
/// profiled A with |A| >= (alpha - beta)|G| has e(H[A]) >= beta e(H) or
/// distance <= gamma |G|. Absent when no grid value works.
std::optional<double> stability_witness(const StabilityProfile& profile, std::size_t group_order,
                                        std::size_t total_edges, double alpha, double gamma,
                                        double step = 0.005);

}  // namespace sumfree
