#include "sumfree/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <thread>

#include "sumfree/errors.hpp"
#include "sumfree/random.hpp"

namespace sumfree {

namespace {

void check_universe(const GroupSpec& g, const VertexSet& s) {
  if (s.universe() != g.order())
    throw DomainError("element set universe does not match group " + g.to_string());
}

void reject_zero(const GroupSpec& g, const VertexSet& s) {
  check_universe(g, s);
  if (s.contains(0)) throw DomainError("connection set must not contain 0");
}

// cos(2πk/n) for k = 0..n-1; exact 1 at k = 0.
std::vector<double> cos_table(std::size_t n) {
  std::vector<double> t(n);
  for (std::size_t k = 0; k < n; ++k)
    t[k] = k == 0 ? 1.0
                  : std::cos(2.0 * std::numbers::pi * static_cast<double>(k) /
                             static_cast<double>(n));
  return t;
}

// Re Σ_{x∈S} χ_a(x) for every character a.
std::vector<double> character_sums(const GroupSpec& g, const VertexSet& s) {
  const std::size_t n = g.order();
  const auto table = cos_table(n);
  const auto members = s.to_vector();
  std::vector<double> out(n, 0.0);
  for (Element a = 0; a < n; ++a) {
    double sum = 0.0;
    for (auto x : members) sum += table[character_phase(g, a, static_cast<Element>(x))];
    out[a] = sum;
  }
  return out;
}

VertexSet negate(const GroupSpec& g, const VertexSet& s) {
  VertexSet out(g.order());
  s.for_each([&](std::size_t x) { out.insert(g.neg(static_cast<Element>(x))); });
  return out;
}

}  // namespace

const char* to_string(Spectrum::Source s) {
  return s == Spectrum::Source::character_analytic ? "character_analytic" : "dense_solver";
}

void Spectrum::write_csv(std::ostream& os) const {
  os << "index,eigenvalue\n";
  const auto old = os.precision(15);
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    // print -0 as 0 so outputs stay byte-stable
    const double v = eigenvalues[i] == 0.0 ? 0.0 : eigenvalues[i];
    os << i << ',' << v << '\n';
  }
  os.precision(old);
}

double lambda_S(const GroupSpec& g, const VertexSet& s) {
  reject_zero(g, s);
  const auto sums = character_sums(g, s);
  return *std::min_element(sums.begin(), sums.end());
}

double lambda_I_chi(const GroupSpec& g, const VertexSet& i, Element a) {
  check_universe(g, i);
  if (a >= g.order()) throw DomainError("character index out of range");
  const auto table = cos_table(g.order());
  double sum = 0.0;
  i.for_each([&](std::size_t x) { sum += table[character_phase(g, a, static_cast<Element>(x))]; });
  return sum;
}

Spectrum cayley_spectrum_analytic(const GroupSpec& g, const VertexSet& s, bool symmetrized) {
  reject_zero(g, s);
  const VertexSet conn = symmetrized ? (s | negate(g, s)) : s;
  Spectrum sp;
  sp.source = Spectrum::Source::character_analytic;
  sp.eigenvalues = character_sums(g, conn);
  std::sort(sp.eigenvalues.begin(), sp.eigenvalues.end(), std::greater<>());
  return sp;
}

std::vector<double> symmetric_eigenvalues(std::vector<double> a, std::size_t n) {
  if (a.size() != n * n) throw DomainError("matrix size does not match n");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (a[i * n + j] != a[j * n + i]) throw DomainError("matrix is not symmetric");

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a[i * n + j] * a[i * n + j];
    return std::sqrt(s);
  };
  constexpr int kMaxSweeps = 100;
  int sweep = 0;
  while (off_norm() >= 1e-12) {
    if (++sweep > kMaxSweeps) throw AssertionFailure("Jacobi iteration did not converge");
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double app = a[p * n + p];
        const double aqq = a[q * n + q];
        // Entries negligible against both diagonal entries are set to zero.
        if (sweep > 4 && std::abs(app) + 100.0 * std::abs(apq) == std::abs(app) &&
            std::abs(aqq) + 100.0 * std::abs(apq) == std::abs(aqq)) {
          a[p * n + q] = a[q * n + p] = 0.0;
          continue;
        }
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k * n + p];
          const double akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p * n + k];
          const double aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
        a[p * n + q] = a[q * n + p] = 0.0;
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a[i * n + i];
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

Spectrum dense_symmetric_spectrum(const DenseGraph& graph) {
  const std::size_t n = graph.size();
  if (n > kDenseSolverLimit)
    throw DomainError("dense solver is limited to 512 vertices, got " + std::to_string(n));
  if (!graph.is_symmetric()) throw DomainError("dense solver needs a symmetric adjacency matrix");
  std::vector<double> m(n * n, 0.0);
  for (std::size_t u = 0; u < n; ++u)
    graph.neighbors(u).for_each([&](std::size_t v) { m[u * n + v] = 1.0; });
  Spectrum sp;
  sp.source = Spectrum::Source::dense_solver;
  sp.eigenvalues = symmetric_eigenvalues(std::move(m), n);
  return sp;
}

double alon_chung_slack(const DenseGraph& graph, const VertexSet& a, double lambda_min) {
  const auto d = graph.regular_degree();
  if (!d) throw DomainError("Alon-Chung slack needs a regular graph");
  if (a.universe() != graph.size()) throw DomainError("vertex set universe does not match graph");
  const double n = static_cast<double>(graph.size());
  const double k = static_cast<double>(a.count());
  const double twice_e = 2.0 * static_cast<double>(graph.edge_count(a));
  return twice_e - (static_cast<double>(*d) / n * k * k + lambda_min / n * k * (n - k));
}

double alon_chung_slack(const DenseGraph& graph, const VertexSet& a) {
  if (!graph.regular_degree()) throw DomainError("Alon-Chung slack needs a regular graph");
  const auto sp = dense_symmetric_spectrum(graph);
  return alon_chung_slack(graph, a, sp.eigenvalues.empty() ? 0.0 : sp.eigenvalues.back());
}

namespace {

// One random r-regular bipartite graph between two sides of size p, as r
// edge-disjoint random perfect matchings: perm[j][x] is the partner of x in
// matching j. A matching that keeps colliding with earlier ones (1000
// rejections) restarts the whole pair.
std::vector<std::vector<std::size_t>> random_regular_bipartite(std::size_t p, std::size_t r,
                                                               Rng& rng) {
  constexpr int kRejectionCap = 1000;
  while (true) {
    std::vector<std::vector<std::size_t>> matchings;
    std::vector<std::vector<bool>> used(p, std::vector<bool>(p, false));
    bool restart = false;
    while (matchings.size() < r && !restart) {
      std::vector<std::size_t> perm(p);
      bool placed = false;
      for (int attempt = 0; attempt < kRejectionCap; ++attempt) {
        for (std::size_t i = 0; i < p; ++i) perm[i] = i;
        shuffle(perm, rng);
        bool clash = false;
        for (std::size_t x = 0; x < p && !clash; ++x) clash = used[x][perm[x]];
        if (!clash) {
          placed = true;
          break;
        }
      }
      if (!placed) {
        restart = true;
        break;
      }
      for (std::size_t x = 0; x < p; ++x) used[x][perm[x]] = true;
      matchings.push_back(perm);
    }
    if (!restart) return matchings;
  }
}

}  // namespace

DenseGraph blowup_graph(std::size_t t, std::size_t part_size, std::size_t d, std::uint64_t seed) {
  if (t < 1) throw DomainError("blow-up needs t >= 1");
  if (d % t != 0) throw DomainError("blow-up needs t | d");
  const std::size_t r = d / t;
  if (r < 1 || r > part_size) throw DomainError("blow-up needs 1 <= d/t <= part_size");
  const std::size_t parts = t + 1;
  DenseGraph g(parts * part_size);
  Rng rng(seed);
  // Dense pairs are built as complements of sparse ones so that rejection
  // sampling stays fast; the complement of a random (p−r)-regular bipartite
  // graph is a random r-regular one.
  const bool complement = 2 * r > part_size;
  const std::size_t sample_r = complement ? part_size - r : r;
  for (std::size_t a = 0; a < parts; ++a) {
    for (std::size_t b = a + 1; b < parts; ++b) {
      const auto matchings = random_regular_bipartite(part_size, sample_r, rng);
      std::vector<std::vector<bool>> adj(part_size, std::vector<bool>(part_size, false));
      for (const auto& m : matchings)
        for (std::size_t x = 0; x < part_size; ++x) adj[x][m[x]] = true;
      for (std::size_t x = 0; x < part_size; ++x)
        for (std::size_t y = 0; y < part_size; ++y)
          if (adj[x][y] != complement) g.add_edge(a * part_size + x, b * part_size + y);
    }
  }
  if (g.regular_degree() != d) throw AssertionFailure("blow-up graph is not d-regular");
  return g;
}

ArcReport arc_concentration(const GroupSpec& g, const VertexSet& i, Element a) {
  check_universe(g, i);
  if (a >= g.order()) throw DomainError("character index out of range");
  const std::size_t k = character_range_size(g, a);
  if (k == 1) throw DomainError("arc concentration needs a nontrivial character");
  const std::uint64_t n = g.order();
  // χ_a(x) = ω_k^j with j = phase·k/n; count multiplicities per root.
  std::vector<std::size_t> at(k, 0);
  i.for_each([&](std::size_t x) { ++at[character_phase(g, a, static_cast<Element>(x)) * k / n]; });

  ArcReport rep;
  rep.k = k;
  // An open arc of length π/3 starting just before root j holds the roots
  // j' with 6·((j' − j) mod k) < k; every maximal arc has this form.
  const std::size_t width = (k + 5) / 6;  // #{s : 6s < k}
  for (std::size_t j = 0; j < k; ++j) {
    std::size_t mass = 0, last = 0;
    for (std::size_t s = 0; s < width; ++s) {
      mass += at[(j + s) % k];
      if (at[(j + s) % k]) last = s;
    }
    if (mass > rep.mass || (j == 0 && rep.mass == 0)) {
      rep.mass = mass;
      const double center = 2.0 * std::numbers::pi *
                            (static_cast<double>(j) + static_cast<double>(last) / 2.0) /
                            static_cast<double>(k);
      rep.best_center = std::fmod(center, 2.0 * std::numbers::pi);
    }
  }
  return rep;
}

Case2Report eq_case2_bound(const GroupSpec& g, const VertexSet& i, Element a, double c) {
  Case2Report r;
  r.c = c;
  const double m = static_cast<double>(i.count());
  const ArcReport arc = arc_concentration(g, i, a);
  r.precondition = static_cast<double>(arc.mass) <= (1.0 - c) * m + 1e-9;
  r.abs_lambda = std::abs(lambda_I_chi(g, i, a));
  r.bound = (1.0 - c + c * std::cos(std::numbers::pi / 6.0)) * m;
  r.holds = r.abs_lambda <= r.bound + 1e-9;
  return r;
}

SampleReport sample_S_for_lambda(const GroupSpec& g, const VertexSet& i, double eps, double delta,
                                 std::size_t trials, std::uint64_t seed, unsigned workers) {
  check_universe(g, i);
  if (i.contains(0)) throw DomainError("sampling needs 0 ∉ I");
  SampleReport rep;
  rep.trials = trials;
  const auto members = i.to_vector();
  rep.size = static_cast<std::size_t>(std::ceil(eps * static_cast<double>(members.size()) - 1e-12));
  if (rep.size < 1 || rep.size > members.size())
    throw DomainError("ceil(eps |I|) must lie in [1, |I|]");

  std::vector<char> ok(trials, 0);
  std::vector<VertexSet> picked(trials);
  auto run_trial = [&](std::size_t t) {
    Rng rng(Rng::derive(seed, t));
    std::vector<std::size_t> pool = members;
    partial_shuffle(pool, rep.size, rng);
    VertexSet s(g.order());
    for (std::size_t k = 0; k < rep.size; ++k) s.insert(pool[k]);
    ok[t] = lambda_S(g, s) >= (delta / 2.0 - 1.0) * static_cast<double>(rep.size) - 1e-9;
    picked[t] = std::move(s);
  };
  const unsigned w = std::max(1U, workers);
  if (w == 1) {
    for (std::size_t t = 0; t < trials; ++t) run_trial(t);
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < w; ++k)
      pool.emplace_back([&, k] {
        for (std::size_t t = k; t < trials; t += w) run_trial(t);
      });
    for (auto& th : pool) th.join();
  }
  for (std::size_t t = 0; t < trials; ++t) {
    if (!ok[t]) continue;
    ++rep.successes;
    if (!rep.set) rep.set = picked[t];
  }
  return rep;
}

SuSReport lemma_SuS_check(const GroupSpec& g, const VertexSet& s, double delta) {
  reject_zero(g, s);
  SuSReport r;
  const VertexSet neg = negate(g, s);
  const VertexSet sym = s | neg;
  const VertexSet rest = neg - s;
  r.lambda_s = lambda_S(g, s);
  r.lambda_rest = lambda_S(g, rest);
  r.lambda_sym = lambda_S(g, sym);
  r.sym_size = sym.count();
  r.precondition = r.lambda_s >= (delta - 1.0) * static_cast<double>(s.count()) - 1e-9;
  r.bound = (delta / 2.0 - 1.0) * static_cast<double>(r.sym_size);
  r.conclusion = r.lambda_sym >= r.bound - 1e-9;
  r.residual = r.lambda_sym - (r.lambda_s + r.lambda_rest);
  return r;
}

const char* to_string(SFClass c) { return c == SFClass::below ? "below" : "above"; }

SFClass classify_SF(const GroupSpec& g, const VertexSet& i, double delta) {
  check_universe(g, i);
  const double limit = delta * static_cast<double>(i.count());
  for (const auto& h : index_two_subgroups(g))
    if (static_cast<double>(i.intersection_count(h)) <= limit + 1e-12) return SFClass::below;
  return SFClass::above;
}

}  // namespace sumfree
