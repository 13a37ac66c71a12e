#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "sumfree/graph.hpp"
#include "sumfree/group.hpp"
#include "sumfree/vertex_set.hpp"

namespace sumfree {

struct Spectrum {
  enum class Source { character_analytic, dense_solver };

  std::vector<double> eigenvalues;  // descending
  Source source = Source::dense_solver;

  /// CSV with header `index,eigenvalue`.
  void write_csv(std::ostream& os) const;
};

const char* to_string(Spectrum::Source s);

/// min over characters of Re Σ_{s∈S} χ(s). Rejects 0 ∈ S.
double lambda_S(const GroupSpec& g, const VertexSet& s);
/// Re Σ_{x∈I} χ_a(x).
double lambda_I_chi(const GroupSpec& g, const VertexSet& i, Element a);

/// Eigenvalues Σ_{s∈S'} χ(s), one per character, with S' = S ∪ (−S) when
/// symmetrized; for a directed S the real parts are reported.
Spectrum cayley_spectrum_analytic(const GroupSpec& g, const VertexSet& s, bool symmetrized);

inline constexpr std::size_t kDenseSolverLimit = 512;

/// Cyclic Jacobi diagonalization of a symmetric row-major matrix, run until
/// the off-diagonal Frobenius norm is below 1e-12. Returns the eigenvalues in
/// descending order.
std::vector<double> symmetric_eigenvalues(std::vector<double> matrix, std::size_t n);
/// Adjacency spectrum; rejects non-symmetric graphs and more than 512 vertices.
Spectrum dense_symmetric_spectrum(const DenseGraph& graph);

/// 2e(A) − [(d/n)|A|² + (λ/n)|A|(n−|A|)] with λ the smallest adjacency
/// eigenvalue. Rejects non-regular graphs.
double alon_chung_slack(const DenseGraph& graph, const VertexSet& a);
/// Same with a precomputed smallest eigenvalue.
double alon_chung_slack(const DenseGraph& graph, const VertexSet& a, double lambda_min);

/// Blow-up of K_{t+1}: parts of part_size vertices (part p holds vertices
/// p*part_size .. (p+1)*part_size − 1), each pair of parts joined by a random
/// (d/t)-regular bipartite graph. Needs t >= 1, t | d, 1 <= d/t <= part_size.
DenseGraph blowup_graph(std::size_t t, std::size_t part_size, std::size_t d, std::uint64_t seed);

struct ArcReport {
  double best_center = 0.0;  // angle in [0, 2π)
  std::size_t mass = 0;      // max over centres of |K_ζ ∩ I|
  std::size_t k = 0;         // |range(χ)|
};

/// Largest number of x ∈ I with χ_a(x) in one open arc of length π/3.
/// Rejects the trivial character.
ArcReport arc_concentration(const GroupSpec& g, const VertexSet& i, Element a);

struct Case2Report {
  double c = 0.0;
  bool precondition = false;  // every arc holds at most (1 − c)|I|
  double abs_lambda = 0.0;    // |λ(I, χ)|
  double bound = 0.0;         // (1 − c + c cos(π/6))|I|
  bool holds = false;
};

Case2Report eq_case2_bound(const GroupSpec& g, const VertexSet& i, Element a, double c);

struct SampleReport {
  std::optional<VertexSet> set;  // first success in trial order
  std::size_t size = 0;          // ceil(eps |I|)
  std::size_t trials = 0;
  std::size_t successes = 0;
  double success_rate() const {
    return trials == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(trials);
  }
};

/// Samples `trials` uniform ceil(eps|I|)-subsets of I (trial t uses a seed
/// derived from (seed, t)) and reports the first S with λ(S) >= (δ/2 − 1)|S|.
SampleReport sample_S_for_lambda(const GroupSpec& g, const VertexSet& i, double eps, double delta,
                                 std::size_t trials, std::uint64_t seed, unsigned workers = 1);

struct SuSReport {
  bool precondition = false;  // λ(S) >= (δ − 1)|S|
  double lambda_s = 0.0;
  double lambda_rest = 0.0;   // λ((−S) \ S)
  double lambda_sym = 0.0;    // λ(S ∪ (−S))
  std::size_t sym_size = 0;
  double bound = 0.0;         // (δ/2 − 1)|S ∪ (−S)|
  bool conclusion = false;    // λ_sym >= bound − 1e-9
  /// λ(S ∪ −S) − (λ(S) + λ((−S) \ S)); never negative.
  double residual = 0.0;
};

SuSReport lemma_SuS_check(const GroupSpec& g, const VertexSet& s, double delta);

enum class SFClass { below, above };
const char* to_string(SFClass c);

/// `below` when some index-2 subgroup H has |I ∩ H| <= δ|I|.
SFClass classify_SF(const GroupSpec& g, const VertexSet& i, double delta);

}  // namespace sumfree
