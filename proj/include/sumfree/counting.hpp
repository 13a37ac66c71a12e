#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "sumfree/graph.hpp"
#include "sumfree/group.hpp"
#include "sumfree/vertex_set.hpp"

namespace sumfree {

using ExactCount = boost::multiprecision::cpp_int;
using ExactProbability = boost::rational<ExactCount>;

/// binom(a, b); 0 when b > a.
ExactCount binom_exact(std::uint64_t a, std::uint64_t b);
/// log binom(a, b) for real a >= 0 via the falling factorial a(a-1)...(a-b+1)/b!.
/// -infinity when some factor is nonpositive (in particular for integer a < b).
double binom_log(double a, std::uint64_t b);

/// Limits for the exact searches. budget_nodes = 0 means unlimited; the
/// search throws BudgetExhausted (carrying the partial count) once the
/// number of visited nodes exceeds the budget.
struct SearchOptions {
  std::uint64_t budget_nodes = 0;
  unsigned workers = 1;
  /// Extension order for the sum-free search (a permutation of the
  /// elements); empty means index order. The count does not depend on it.
  std::vector<std::uint32_t> order;
};

/// Number of independent m-sets of the graph (backtracking in degeneracy
/// order with remaining-capacity pruning).
ExactCount count_independent_sets(const DenseGraph& graph, std::size_t m,
                                  const SearchOptions& options = {});
/// Independent-set counts for every size 0..|V| in one search.
std::vector<ExactCount> independent_set_counts(const DenseGraph& graph,
                                               const SearchOptions& options = {});

enum class SumFreeMode {
  group_sense,      // no x + y = z with x = y allowed (classical sum-free)
  hypergraph_sense  // independent in the Schur hypergraph (distinct triples)
};

ExactCount count_sum_free(const GroupSpec& g, std::size_t m,
                          SumFreeMode mode = SumFreeMode::group_sense,
                          const SearchOptions& options = {});
/// Counts for every size 0..|G| in one search.
std::vector<ExactCount> sum_free_counts(const GroupSpec& g,
                                        SumFreeMode mode = SumFreeMode::group_sense,
                                        const SearchOptions& options = {});

/// Exact independence number; requires at most 64 vertices.
std::size_t independence_number(const DenseGraph& graph);

struct JansonStats {
  double mu = 0.0;
  double delta_sum = 0.0;  // over ordered pairs i != j with U_i ∩ U_j ≠ ∅
  std::size_t family_size = 0;
  std::size_t m = 0;
  std::size_t n = 0;
};

/// Throws DomainError on an empty U_i, a universe mismatch, or m > n.
JansonStats janson_stats(const std::vector<VertexSet>& family, std::size_t m, std::size_t n);
/// mu as an exact rational.
ExactProbability janson_mu_exact(const std::vector<VertexSet>& family, std::size_t m,
                                 std::size_t n);

/// The hypergeometric transfer factor: max(1, 3 sqrt(m)), or a supplied
/// constant that is for exploration only.
struct PittelConstant {
  enum class Kind { sqrt_m, abstract } kind = Kind::sqrt_m;
  double value = 0.0;

  static PittelConstant sqrt_m() { return {}; }
  static PittelConstant abstract_C(double c) { return {Kind::abstract, c}; }
};

struct JansonBounds {
  double product = 1.0;          // e^{-mu + delta/2}
  double max_form = 1.0;         // max{e^{-mu/2}, e^{-mu^2/(2 delta)}}
  bool delta_zero_guard = false; // delta = 0: max_form is e^{-mu/2}
  double transfer_factor = 1.0;
  /// transfer_factor * product: the bound for a uniform random m-subset.
  double transferred() const { return transfer_factor * product; }
};

JansonBounds janson_bounds(const JansonStats& stats,
                           PittelConstant constant = PittelConstant::sqrt_m());

inline constexpr std::uint64_t kExactProbabilityBudget = 10'000'000;

/// Fraction of m-subsets of an n-set (n <= 64) that contain no U_i.
/// Throws DomainError when binom(n, m) exceeds the budget.
ExactProbability exact_no_Ui_probability(const std::vector<VertexSet>& family, std::size_t m,
                                         std::size_t n,
                                         std::uint64_t budget = kExactProbabilityBudget);

/// A bound in log space. Non-integer binomial tops are floored where the
/// bound needs an integer; `argument` and `floored` record that decision.
struct LogBound {
  bool applicable = true;
  double log_value = 0.0;  // -infinity encodes a bound of 0
  double argument = 0.0;
  std::optional<std::uint64_t> floored;
};

/// log binom(floor((lambda/(d+lambda) + eps) n), m).
LogBound thm_graphs_bound(double n, double d, double lambda, double eps, std::size_t m);
/// log of (e m d^2 / (4 lambda n ln n))^{2 (n/d) ln n} binom(2 lambda n / d, m);
/// not applicable unless m >= 2 (n/d) ln n.
LogBound alon_rodl_bound(double n, double d, double lambda, std::size_t m);

struct SfPrediction {
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint32_t q = 0;
  std::size_t family_size = 0;
  std::size_t order_q_count = 0;
  double lambda_q = 0.0;                // 1 for q = 2, 1/2 otherwise
  bool lambda_law_matches = false;      // lambda_q * #order-q = |SF0|
  std::size_t member_size = 0;          // mu(G) n
  ExactCount leading;                   // |SF0| binom(mu n, m)
  ExactCount lower_bonf;                // S1 - S2
  ExactCount upper_bonf;                // S1
  /// (n/2)(mu n - 3m)^{m-1}/(m-1)!, a formula evaluation only; 0 when not
  /// defined (m = 0 or mu n <= 3m).
  double near_extremal_estimate = 0.0;
};

/// Inclusion-exclusion prediction from the enumerated extremal family.
SfPrediction sf_count_prediction(const GroupSpec& g, std::size_t m);

struct CountRow {
  std::size_t n = 0;
  std::size_t m = 0;
  std::optional<ExactCount> exact;  // absent when the budget ran out
  SfPrediction prediction;
  /// exact / leading; absent when either is unavailable or leading = 0.
  std::optional<double> ratio() const;
};

/// CSV with header `n,m,exact,leading,lower_bonf,upper_bonf,ratio`.
void write_count_csv(std::ostream& os, const std::vector<CountRow>& rows);

}  // namespace sumfree
