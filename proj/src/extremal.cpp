#include "sumfree/extremal.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <ostream>

#include "sumfree/errors.hpp"
#include "sumfree/random.hpp"

namespace sumfree {

Rational mu(const GroupSpec& g) {
  auto q = smallest_typeI_prime(g);
  if (!q) throw NotTypeIError(g.to_string() + " is not Type I");
  return Rational(static_cast<std::int64_t>(*q) + 1, 3 * static_cast<std::int64_t>(*q));
}

MaxSumFreeFamily enumerate_SF0(const GroupSpec& g) {
  auto q = smallest_typeI_prime(g);
  if (!q) throw NotTypeIError(g.to_string() + " is not Type I");
  const std::uint32_t k = (*q - 2) / 3;
  MaxSumFreeFamily fam{g, *q, {}};
  for (const auto& phi : surjective_homs_to_Zq(g, *q)) {
    VertexSet b(g.order());
    for (Element x = 0; x < g.order(); ++x) {
      const std::uint32_t v = phi.apply(g, x);
      if (v >= k + 1 && v <= 2 * k + 1) b.insert(x);
    }
    fam.sets.push_back(std::move(b));
  }
  std::sort(fam.sets.begin(), fam.sets.end());
  fam.sets.erase(std::unique(fam.sets.begin(), fam.sets.end()), fam.sets.end());

  const Rational size = mu(g) * static_cast<std::int64_t>(g.order());
  for (const auto& b : fam.sets) {
    if (size.denominator() != 1 || b.count() != static_cast<std::size_t>(size.numerator()) ||
        !is_sum_free(g, b))
      throw AssertionFailure("preimage family member of " + g.to_string() +
                             " is not a maximum-size sum-free set");
  }
  return fam;
}

CardinalityReport sf0_cardinality_check(const GroupSpec& g) {
  const auto fam = enumerate_SF0(g);
  CardinalityReport r;
  r.q = fam.q;
  r.family_size = fam.sets.size();
  r.order_q_count = count_elements_of_order(g, fam.q);
  r.expected = fam.q == 2 ? r.order_q_count : r.order_q_count / 2;
  r.count_law = r.family_size == r.expected;
  r.at_most_order = r.family_size <= g.order();
  return r;
}

IntersectionReport pairwise_intersection_check(const MaxSumFreeFamily& f) {
  IntersectionReport r;
  const double n = static_cast<double>(f.group.order());
  const Rational m = mu(f.group);
  r.ceiling = (1.0 - 1.0 / f.q) * boost::rational_cast<double>(m) * n;
  if (f.sets.size() < 2) return r;
  r.min_intersection = f.group.order();
  bool quarter = true;
  for (std::size_t i = 0; i < f.sets.size(); ++i)
    for (std::size_t j = i + 1; j < f.sets.size(); ++j) {
      const std::size_t c = f.sets[i].intersection_count(f.sets[j]);
      ++r.pairs;
      r.max_intersection = std::max(r.max_intersection, c);
      r.min_intersection = std::min(r.min_intersection, c);
      if (4 * c != f.group.order()) quarter = false;
    }
  r.within_ceiling = static_cast<double>(r.max_intersection) <= r.ceiling + 1e-9;
  if (f.q == 2) r.exact_quarter = quarter;
  return r;
}

std::size_t delta_H_B(const SchurHypergraph& h, const VertexSet& b) {
  const GroupSpec& g = h.group();
  if (b.universe() != g.order()) throw DomainError("set universe does not match group");
  if (b.count() == g.order()) throw DomainError("delta(H,B) needs B to be a proper subset");
  std::size_t best = SIZE_MAX;
  const auto members = b.to_vector();
  for (Element v = 0; v < g.order(); ++v) {
    if (b.contains(v)) continue;
    // edges {v,y,z} with y,z ∈ B: counted over unordered pairs {y,z}
    std::size_t ordered = 0;
    for (auto yi : members) {
      const auto y = static_cast<Element>(yi);
      for (Element z : h.completions(v, y))
        if (b.contains(z)) ++ordered;
    }
    best = std::min(best, ordered / 2);
  }
  return best;
}

std::size_t delta_H_family(const SchurHypergraph& h, const MaxSumFreeFamily& f) {
  std::size_t best = SIZE_MAX;
  for (const auto& b : f.sets) best = std::min(best, delta_H_B(h, b));
  return best;
}

std::size_t distance_to_family(const MaxSumFreeFamily& f, const VertexSet& a) {
  std::size_t best = a.count();
  for (const auto& b : f.sets) best = std::min(best, a.count() - a.intersection_count(b));
  return best;
}

void StabilityProfile::write_csv(std::ostream& os) const {
  os << "size,schur_count,min_distance\n";
  for (const auto& r : rows) os << r.size << ',' << r.schur_count << ',' << r.min_distance << '\n';
}

namespace {

std::vector<FrontierPoint> pareto_frontier(const std::vector<ProfileRow>& rows, double n) {
  std::vector<FrontierPoint> pts;
  pts.reserve(rows.size());
  for (const auto& r : rows)
    pts.push_back({static_cast<double>(r.schur_count) / (n * n),
                   static_cast<double>(r.min_distance) / n});
  std::sort(pts.begin(), pts.end(), [](const FrontierPoint& a, const FrontierPoint& b) {
    return a.distance != b.distance ? a.distance < b.distance : a.schur_density < b.schur_density;
  });
  std::vector<FrontierPoint> out;
  double best = INFINITY;
  for (const auto& p : pts) {
    if (p.schur_density < best) {
      out.push_back(p);
      best = p.schur_density;
    }
  }
  return out;
}

}  // namespace

StabilityProfile stability_profile(const GroupSpec& g, const SchurHypergraph& h,
                                   const MaxSumFreeFamily& family, double min_size_fraction,
                                   ProfileMode mode) {
  const std::size_t n = g.order();
  const auto min_size = static_cast<std::size_t>(std::ceil(min_size_fraction * static_cast<double>(n) - 1e-12));
  StabilityProfile prof;
  auto add_row = [&](const VertexSet& a) {
    prof.rows.push_back({a.count(), schur_triple_count(h, a), distance_to_family(family, a)});
  };
  if (mode.kind == ProfileMode::Kind::exhaustive) {
    if (n > kExhaustiveProfileLimit)
      throw DomainError("exhaustive stability profile needs |G| <= 16, got " + std::to_string(n));
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) < min_size) continue;
      VertexSet a(n);
      for (std::size_t v = 0; v < n; ++v)
        if ((mask >> v) & 1U) a.insert(v);
      add_row(a);
    }
  } else {
    Rng rng(mode.seed);
    std::vector<std::size_t> perm(n);
    for (std::size_t t = 0; t < mode.count; ++t) {
      const std::size_t lo = std::min(min_size, n);
      const std::size_t size = lo + static_cast<std::size_t>(rng.below(n - lo + 1));
      for (std::size_t i = 0; i < n; ++i) perm[i] = i;
      partial_shuffle(perm, size, rng);
      VertexSet a(n);
      for (std::size_t i = 0; i < size; ++i) a.insert(perm[i]);
      add_row(a);
    }
  }
  prof.frontier = pareto_frontier(prof.rows, static_cast<double>(n));
  return prof;
}

std::optional<double> stability_witness(const StabilityProfile& profile, std::size_t group_order,
                                        std::size_t total_edges, double alpha, double gamma,
                                        double step) {
  const double n = static_cast<double>(group_order);
  std::optional<double> best;
  for (int i = 1; i * step <= alpha + 1e-12; ++i) {
    const double beta = i * step;
    bool ok = true;
    for (const auto& r : profile.rows) {
      if (static_cast<double>(r.size) < (alpha - beta) * n) continue;
      const bool dense = static_cast<double>(r.schur_count) >= beta * static_cast<double>(total_edges);
      const bool close = static_cast<double>(r.min_distance) <= gamma * n;
      if (!dense && !close) {
        ok = false;
        break;
      }
    }
    if (ok) best = beta;
  }
  return best;
}

}  // namespace sumfree
