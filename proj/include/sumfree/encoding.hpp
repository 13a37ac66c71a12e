#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sumfree/extremal.hpp"
#include "sumfree/graph.hpp"
#include "sumfree/schur.hpp"
#include "sumfree/vertex_set.hpp"

namespace sumfree {

// Encoders map an independent set I to a certificate S ⊆ I plus an available
// set A ⊇ I \ S that S alone determines. Every tie is broken by vertex index
// (the mixed-radix element order for group hypergraphs); certificates are
// only meaningful with that order.

/// Constants of both encoders. The basic encoder only uses stop_fraction;
/// the hypergraph encoder uses the rest, with d = round(C n / m).
struct EncodingParams {
  double stop_fraction = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double capital_C = 0.0;
  std::size_t d = 0;

  /// Computes d from (C, n, m) and validates; throws DomainError.
  static EncodingParams make(double alpha, double beta, double gamma, double capital_C,
                             std::size_t n, std::size_t m);
  /// 0 < beta <= alpha, gamma > 0, C >= 1, 1 <= d <= m.
  void validate(std::size_t m) const;

  /// |A| <= ceil((alpha - beta) n) stops the run.
  std::size_t size_threshold(std::size_t n) const;
  /// |A \ B| <= ceil(gamma n) for some B stops the run.
  std::size_t near_threshold(std::size_t n) const;
  /// floor(stop_fraction n); throws unless 0 < stop_fraction < 1.
  std::size_t basic_stop_size(std::size_t n) const;
  /// C >= 3 / beta^7.
  bool claims_hypothesis() const;
};

enum class StepCase { init, basic, case1, case2a, case2b };
enum class Termination { size_threshold, near_B, I_exhausted, stalled };

const char* to_string(StepCase c);
const char* to_string(Termination t);

struct StepRecord {
  StepCase kind = StepCase::basic;
  std::vector<std::uint32_t> to_selected;  // selection order
  std::vector<std::uint32_t> to_excluded;  // index order
  std::size_t available_before = 0;
  std::size_t available_after = 0;
  std::size_t useful = 0;                  // |Z|, Case 2 only
  std::vector<std::uint32_t> new_T;        // init and Case 2(b)
};

struct EncodingResult {
  std::vector<std::uint32_t> selected;  // S in selection order
  VertexSet available;                  // A
  VertexSet excluded;                   // X
  std::vector<StepRecord> trace;
  Termination termination = Termination::size_threshold;
  /// Family member (by family order) that triggered near_B.
  std::optional<std::size_t> near_member;

  VertexSet selected_set() const;
  std::size_t count(StepCase c) const;
};

/// Max-degree order of graph[A]: repeatedly take the vertex of largest
/// degree in what remains, lowest index first on ties.
std::vector<std::uint32_t> max_degree_order(const DenseGraph& graph, const VertexSet& a);

/// Kleitman-Winston style encoding on a graph: while |A| > stop_size, select
/// the first member of I in the max-degree order of graph[A], excluding the
/// vertices before it and its neighbours.
EncodingResult basic_encode(const DenseGraph& graph, const VertexSet& independent,
                            std::size_t stop_size);
/// Rebuilds A from S alone. Throws DecodeError if S does not replay.
VertexSet basic_decode(const DenseGraph& graph, const std::vector<std::uint32_t>& selected,
                       std::size_t stop_size);
/// The decoder's full run (trace included); basic_decode returns its `available`.
EncodingResult basic_decode_run(const DenseGraph& graph, const std::vector<std::uint32_t>& selected,
                                std::size_t stop_size);

/// Hypergraph encoding driven by the link graphs G_T and the family B.
EncodingResult main_encode(const SchurHypergraph& h, const MaxSumFreeFamily& family,
                           const VertexSet& independent, const EncodingParams& params);
VertexSet main_decode(const SchurHypergraph& h, const MaxSumFreeFamily& family,
                      const std::vector<std::uint32_t>& selected, const EncodingParams& params);
/// The decoder's full run (trace included); main_decode returns its `available`.
EncodingResult main_decode_run(const SchurHypergraph& h, const MaxSumFreeFamily& family,
                               const std::vector<std::uint32_t>& selected,
                               const EncodingParams& params);

/// Applies the recorded moves to S = X = ∅, A = V and returns the result.
/// Throws DecodeError when a step moves a vertex that is not available.
EncodingResult replay_trace(std::size_t vertex_count, const std::vector<StepRecord>& trace);

struct ClaimCheck {
  double actual = 0.0;
  double bound = 0.0;
  bool holds = false;
};

struct ClaimReport {
  ClaimCheck case1;     // Case-1 passes <= 2n / (beta^4 d)
  ClaimCheck case2;     // Case-2 passes <= 1 / beta^5
  ClaimCheck selected;  // |S| <= beta^2 m
  bool hypothesis = false;  // C >= 3 / beta^7; |S| is only asserted under it
  /// Consecutive Case-1 steps: the first removes >= beta^4 d vertices.
  bool case1_progress = true;
  bool ok() const {
    return case1.holds && case2.holds && (!hypothesis || selected.holds) && case1_progress;
  }
};

ClaimReport verify_claims(const EncodingResult& result, const EncodingParams& params,
                          std::size_t n, std::size_t m);

/// Three-line certificate: kind, `key=value` parameters, S in selection order.
struct Certificate {
  std::string kind;  // "basic" or "main"
  std::map<std::string, std::string> params;
  std::vector<std::uint32_t> selected;

  void write(std::ostream& os) const;
  /// Throws ParseError on malformed input.
  static Certificate read(std::istream& is);

  const std::string& param(const std::string& key) const;
  double param_double(const std::string& key) const;
  std::size_t param_size(const std::string& key) const;
};

}  // namespace sumfree
