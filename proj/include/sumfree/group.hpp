#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sumfree/vertex_set.hpp"

namespace sumfree {

/// Linear index of a group element (mixed-radix, first factor most significant).
using Element = std::uint32_t;

/// A finite Abelian group Z_{n_1} x ... x Z_{n_k}, taken exactly as given.
///
/// Elements are identified by their linear index in 0..order()-1. The index
/// of (x_1,...,x_k) is x_1*(n_2*...*n_k) + ... + x_k, so for a cyclic group
/// the index is the residue itself. This index order is the fixed vertex
/// ordering used for every tie-break in the encoding algorithms.
class GroupSpec {
 public:
  explicit GroupSpec(std::vector<std::uint32_t> factors);

  const std::vector<std::uint32_t>& factors() const noexcept { return factors_; }
  std::size_t rank() const noexcept { return factors_.size(); }
  std::size_t order() const noexcept { return order_; }

  Element add(Element a, Element b) const;
  Element neg(Element a) const { return neg_[a]; }
  Element sub(Element a, Element b) const { return add(a, neg_[b]); }
  Element zero() const noexcept { return 0; }
  /// t * a for t >= 0.
  Element scale(std::uint64_t t, Element a) const;

  std::vector<std::uint32_t> residues(Element a) const;
  /// Residues are reduced modulo their factor.
  Element from_residues(std::span<const std::int64_t> residues) const;

  /// "Z4xZ2"
  std::string to_string() const;
  /// "(1,0)"
  std::string format_element(Element a) const;

  friend bool operator==(const GroupSpec& a, const GroupSpec& b) {
    return a.factors_ == b.factors_;
  }

 private:
  std::vector<std::uint32_t> factors_;
  std::vector<std::uint32_t> strides_;
  std::size_t order_ = 1;
  std::vector<Element> neg_;
  // Full Cayley table for small groups; empty above the cutoff.
  std::vector<Element> add_table_;
};

/// Parses `Z<int>(xZ<int>)*`, case-insensitive. Throws ParseError on
/// malformed text and DomainError on a factor below 2.
GroupSpec parse_group(std::string_view text);

/// Parses a comma/space separated list of linear indices ("1,3,5").
VertexSet parse_element_set(const GroupSpec& g, std::string_view text);

std::uint64_t element_order(const GroupSpec& g, Element a);
std::size_t count_elements_of_order(const GroupSpec& g, std::uint64_t q);

bool is_prime(std::uint64_t p);

/// Smallest prime q | |G| with q = 2 (mod 3); absent when G is not Type I.
std::optional<std::uint32_t> smallest_typeI_prime(const GroupSpec& g);

/// phi(x) = sum_i coeffs[i] * x_i (mod q), with coeffs[i] != 0 only where q | n_i.
struct Homomorphism {
  std::uint32_t q = 0;
  std::vector<std::uint32_t> coeffs;

  std::uint32_t apply(const GroupSpec& g, Element x) const;
};

/// All surjective homomorphisms G -> Z_q (q prime), coefficient tuples in
/// lexicographic order. There are q^c - 1 of them, c = #{i : q | n_i}.
std::vector<Homomorphism> surjective_homs_to_Zq(const GroupSpec& g, std::uint32_t q);

/// Numerator k of the phase of chi_a(x) = exp(2 pi i k / |G|), exactly.
std::uint64_t character_phase(const GroupSpec& g, Element a, Element x);
std::complex<double> character_value(const GroupSpec& g, Element a, Element x);

/// Size of range(chi_a); 1 exactly for the trivial character.
std::size_t character_range_size(const GroupSpec& g, Element a);

/// Kernels of the surjections G -> Z_2, one per subgroup of index 2.
std::vector<VertexSet> index_two_subgroups(const GroupSpec& g);

}  // namespace sumfree
