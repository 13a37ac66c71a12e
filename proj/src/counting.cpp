#include "sumfree/counting.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <iomanip>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

#include "sumfree/errors.hpp"
#include "sumfree/extremal.hpp"

namespace sumfree {

ExactCount binom_exact(std::uint64_t a, std::uint64_t b) {
  if (b > a) return 0;
  b = std::min(b, a - b);
  ExactCount r = 1;
  for (std::uint64_t i = 1; i <= b; ++i) {
    r *= a - b + i;
    r /= i;
  }
  return r;
}

double binom_log(double a, std::uint64_t b) {
  double s = 0.0;
  for (std::uint64_t i = 0; i < b; ++i) {
    const double f = a - static_cast<double>(i);
    if (f <= 0.0) return -std::numeric_limits<double>::infinity();
    s += std::log(f) - std::log(static_cast<double>(i + 1));
  }
  return s;
}

namespace {

// ---- mask adapters: uint64_t for n <= 64, VertexSet otherwise -------------

inline bool mask_test(std::uint64_t m, std::size_t v) { return (m >> v) & 1U; }
inline void mask_set(std::uint64_t& m, std::size_t v) { m |= std::uint64_t{1} << v; }
inline std::size_t mask_available(std::uint64_t forbidden, std::uint64_t suffix) {
  return static_cast<std::size_t>(std::popcount(suffix & ~forbidden));
}
inline std::uint64_t mask_empty(std::uint64_t*, std::size_t) { return 0; }
inline std::uint64_t mask_from(std::uint64_t*, const VertexSet& s) { return s.low_word(); }

inline bool mask_test(const VertexSet& m, std::size_t v) { return m.contains(v); }
inline void mask_set(VertexSet& m, std::size_t v) { m.insert(v); }
inline std::size_t mask_available(const VertexSet& forbidden, const VertexSet& suffix) {
  return suffix.count() - suffix.intersection_count(forbidden);
}
inline VertexSet mask_empty(VertexSet*, std::size_t n) { return VertexSet(n); }
inline VertexSet mask_from(VertexSet*, const VertexSet& s) { return s; }

// ---- generic subset search -------------------------------------------------
//
// Enumerates the sets that are built by adding elements in a fixed order and
// never adding a forbidden element. `Extend(forbidden, chosen, x)` returns the
// forbidden set after x joins `chosen`. With a target size only sets of that
// size are counted (and subtrees that cannot reach it are pruned); without
// one every size is tallied.

template <class Mask>
struct Node {
  Mask forbidden;
  std::vector<std::uint32_t> chosen;
  std::size_t pos = 0;
};

template <class Mask, class Extend>
class SubsetSearch {
 public:
  SubsetSearch(std::size_t n, std::vector<std::uint32_t> order, Mask initial, Extend extend,
               std::optional<std::size_t> target, const SearchOptions& opt)
      : n_(n), order_(std::move(order)), initial_(std::move(initial)), extend_(std::move(extend)),
        target_(target), opt_(opt) {
    Mask* tag = nullptr;
    suffix_.assign(n_ + 1, mask_empty(tag, n_));
    for (std::size_t i = n_; i-- > 0;) {
      suffix_[i] = suffix_[i + 1];
      mask_set(suffix_[i], order_[i]);
    }
  }

  std::vector<std::uint64_t> run() {
    std::vector<std::uint64_t> hist(n_ + 1, 0);
    // Expand the first two levels here; their subtrees are the work items.
    std::vector<Node<Mask>> tasks;
    Node<Mask> root{initial_, {}, 0};
    std::vector<Node<Mask>> level{root};
    for (int depth = 0; depth < 2; ++depth) {
      std::vector<Node<Mask>> next;
      for (auto& node : level) {
        if (!visit(node, hist)) continue;
        for (std::size_t i = node.pos; i < n_; ++i) {
          const std::uint32_t x = order_[i];
          if (mask_test(node.forbidden, x)) continue;
          Node<Mask> child{extend_(node.forbidden, node.chosen, x), node.chosen, i + 1};
          child.chosen.push_back(x);
          next.push_back(std::move(child));
        }
      }
      level = std::move(next);
    }
    tasks = std::move(level);

    const unsigned workers = std::max(1U, opt_.workers);
    std::vector<std::vector<std::uint64_t>> results(tasks.size());
    std::atomic<std::size_t> next_task{0};
    std::exception_ptr failure;
    std::atomic<bool> budget_hit{false};
    std::mutex failure_mutex;
    auto work = [&] {
      try {
        while (!stop_.load()) {
          const std::size_t t = next_task.fetch_add(1);
          if (t >= tasks.size()) break;
          results[t].assign(n_ + 1, 0);
          dfs(tasks[t], results[t]);
        }
      } catch (const BudgetExhausted&) {
        budget_hit.store(true);
        stop_.store(true);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        stop_.store(true);
      }
    };
    if (workers == 1 || tasks.size() < 2) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
      for (auto& th : pool) th.join();
    }
    for (const auto& r : results)
      for (std::size_t k = 0; k < r.size(); ++k) hist[k] += r[k];
    if (failure) std::rethrow_exception(failure);
    if (budget_hit.load()) {
      const std::size_t key = target_.value_or(n_);
      std::string partial;
      if (target_) {
        partial = std::to_string(hist[key]);
      } else {
        std::uint64_t total = 0;
        for (auto h : hist) total += h;
        partial = std::to_string(total) + " sets over all sizes";
      }
      throw BudgetExhausted(nodes_.load(), partial);
    }
    return hist;
  }

 private:
  // Tallies the node; returns whether its children are worth visiting.
  bool visit(const Node<Mask>& node, std::vector<std::uint64_t>& hist) {
    charge(1);
    const std::size_t size = node.chosen.size();
    if (target_) {
      if (size == *target_) {
        ++hist[size];
        return false;
      }
      return mask_available(node.forbidden, suffix_[node.pos]) >= *target_ - size;
    }
    ++hist[size];
    return true;
  }

  void dfs(Node<Mask>& node, std::vector<std::uint64_t>& hist) {
    if (!visit(node, hist)) return;
    for (std::size_t i = node.pos; i < n_; ++i) {
      const std::uint32_t x = order_[i];
      if (mask_test(node.forbidden, x)) continue;
      Node<Mask> child{extend_(node.forbidden, node.chosen, x), node.chosen, i + 1};
      child.chosen.push_back(x);
      dfs(child, hist);
    }
  }

  void charge(std::uint64_t k) {
    const std::uint64_t used = nodes_.fetch_add(k) + k;
    if (opt_.budget_nodes != 0 && used > opt_.budget_nodes) throw BudgetExhausted(used, "");
    if (stop_.load()) throw BudgetExhausted(used, "");
  }

  std::size_t n_;
  std::vector<std::uint32_t> order_;
  Mask initial_;
  Extend extend_;
  std::optional<std::size_t> target_;
  const SearchOptions& opt_;
  std::vector<Mask> suffix_;
  std::atomic<std::uint64_t> nodes_{0};
  std::atomic<bool> stop_{false};
};

template <class Mask, class Extend>
std::vector<std::uint64_t> run_search(std::size_t n, std::vector<std::uint32_t> order,
                                      Mask initial, Extend extend,
                                      std::optional<std::size_t> target,
                                      const SearchOptions& opt) {
  SubsetSearch<Mask, Extend> s(n, std::move(order), std::move(initial), std::move(extend), target,
                               opt);
  // The budget check inside the first two levels runs on this thread.
  try {
    return s.run();
  } catch (const BudgetExhausted& e) {
    if (!e.partial_count().empty()) throw;
    throw BudgetExhausted(e.nodes(), "unavailable (budget ran out while partitioning)");
  }
}

std::vector<std::uint32_t> degeneracy_order(const DenseGraph& g) {
  const std::size_t n = g.size();
  std::vector<std::size_t> deg(n);
  std::vector<bool> gone(n, false);
  for (std::size_t v = 0; v < n; ++v) deg[v] = g.degree(v);
  std::vector<std::uint32_t> order;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t best = n;
    for (std::size_t v = 0; v < n; ++v)
      if (!gone[v] && (best == n || deg[v] < deg[best])) best = v;
    gone[best] = true;
    order.push_back(static_cast<std::uint32_t>(best));
    g.neighbors(best).for_each([&](std::size_t u) {
      if (!gone[u]) --deg[u];
    });
  }
  return order;
}

template <class Mask>
std::vector<std::uint64_t> independent_search(const DenseGraph& g, std::optional<std::size_t> m,
                                              const SearchOptions& opt) {
  Mask* tag = nullptr;
  std::vector<Mask> adj;
  adj.reserve(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) adj.push_back(mask_from(tag, g.neighbors(v)));
  auto extend = [adj = std::move(adj)](const Mask& f, const std::vector<std::uint32_t>&,
                                       std::uint32_t x) {
    Mask out = f;
    out |= adj[x];
    return out;
  };
  return run_search<Mask>(g.size(), degeneracy_order(g), mask_empty(tag, g.size()), extend, m,
                          opt);
}

std::vector<std::uint64_t> independent_hist(const DenseGraph& g, std::optional<std::size_t> m,
                                            const SearchOptions& opt) {
  if (g.size() <= 64) return independent_search<std::uint64_t>(g, m, opt);
  return independent_search<VertexSet>(g, m, opt);
}

std::vector<std::uint32_t> checked_order(const GroupSpec& g, const SearchOptions& opt) {
  const std::size_t n = g.order();
  if (opt.order.empty()) {
    std::vector<std::uint32_t> o(n);
    for (std::size_t i = 0; i < n; ++i) o[i] = static_cast<std::uint32_t>(i);
    return o;
  }
  std::vector<std::uint32_t> sorted = opt.order;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != i || sorted.size() != n)
      throw DomainError("search order must be a permutation of the group elements");
  return opt.order;
}

template <class Mask>
std::vector<std::uint64_t> sum_free_search(const GroupSpec& g, SumFreeMode mode,
                                           std::optional<std::size_t> m,
                                           const SearchOptions& opt) {
  const std::size_t n = g.order();
  Mask* tag = nullptr;
  Mask initial = mask_empty(tag, n);
  // halves[x] = {y : 2y = x}
  std::vector<std::vector<Element>> halves(n);
  for (Element y = 0; y < n; ++y) halves[g.add(y, y)].push_back(y);

  if (mode == SumFreeMode::group_sense) {
    mask_set(initial, 0);  // 0 + 0 = 0
    auto extend = [&g, halves = std::move(halves)](const Mask& f,
                                                  const std::vector<std::uint32_t>& chosen,
                                                  std::uint32_t x) {
      Mask out = f;
      mask_set(out, x);
      mask_set(out, g.add(x, x));
      for (Element y : halves[x]) mask_set(out, y);
      for (auto a : chosen) {
        mask_set(out, g.add(x, a));
        mask_set(out, g.sub(x, a));
        mask_set(out, g.sub(a, x));
      }
      return out;
    };
    return run_search<Mask>(n, checked_order(g, opt), initial, extend, m, opt);
  }
  auto extend = [&g](const Mask& f, const std::vector<std::uint32_t>& chosen, std::uint32_t x) {
    Mask out = f;
    mask_set(out, x);
    for (auto a : chosen) {
      const Element c[3] = {g.add(x, a), g.sub(x, a), g.sub(a, x)};
      for (Element y : c)
        if (y != x && y != a) mask_set(out, y);
    }
    return out;
  };
  return run_search<Mask>(n, checked_order(g, opt), initial, extend, m, opt);
}

std::vector<std::uint64_t> sum_free_hist(const GroupSpec& g, SumFreeMode mode,
                                         std::optional<std::size_t> m, const SearchOptions& opt) {
  if (g.order() <= 64) return sum_free_search<std::uint64_t>(g, mode, m, opt);
  return sum_free_search<VertexSet>(g, mode, m, opt);
}

std::vector<ExactCount> to_exact(const std::vector<std::uint64_t>& h) {
  return {h.begin(), h.end()};
}

}  // namespace

ExactCount count_independent_sets(const DenseGraph& graph, std::size_t m,
                                  const SearchOptions& options) {
  if (m > graph.size()) return 0;
  return independent_hist(graph, m, options)[m];
}

std::vector<ExactCount> independent_set_counts(const DenseGraph& graph,
                                               const SearchOptions& options) {
  return to_exact(independent_hist(graph, std::nullopt, options));
}

ExactCount count_sum_free(const GroupSpec& g, std::size_t m, SumFreeMode mode,
                          const SearchOptions& options) {
  if (m > g.order()) return 0;
  return sum_free_hist(g, mode, m, options)[m];
}

std::vector<ExactCount> sum_free_counts(const GroupSpec& g, SumFreeMode mode,
                                        const SearchOptions& options) {
  return to_exact(sum_free_hist(g, mode, std::nullopt, options));
}

namespace {

void max_independent(const std::vector<std::uint64_t>& adj, std::uint64_t candidates,
                     std::size_t size, std::size_t& best) {
  if (candidates == 0) {
    best = std::max(best, size);
    return;
  }
  if (size + static_cast<std::size_t>(std::popcount(candidates)) <= best) return;
  // A vertex with at most one candidate neighbour is always safe to take.
  std::size_t pick = 64, pick_deg = 0;
  for (std::uint64_t c = candidates; c; c &= c - 1) {
    const auto v = static_cast<std::size_t>(std::countr_zero(c));
    const auto d = static_cast<std::size_t>(std::popcount(adj[v] & candidates));
    if (d <= 1) {
      max_independent(adj, candidates & ~adj[v] & ~(std::uint64_t{1} << v), size + 1, best);
      return;
    }
    if (pick == 64 || d > pick_deg) {
      pick = v;
      pick_deg = d;
    }
  }
  const std::uint64_t bit = std::uint64_t{1} << pick;
  max_independent(adj, candidates & ~adj[pick] & ~bit, size + 1, best);
  max_independent(adj, candidates & ~bit, size, best);
}

}  // namespace

std::size_t independence_number(const DenseGraph& graph) {
  const std::size_t n = graph.size();
  if (n > 64) throw DomainError("independence_number needs at most 64 vertices");
  std::vector<std::uint64_t> adj(n);
  for (std::size_t v = 0; v < n; ++v) adj[v] = graph.neighbors(v).low_word();
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  std::size_t best = 0;
  max_independent(adj, all, 0, best);
  return best;
}

namespace {

void check_family(const std::vector<VertexSet>& family, std::size_t m, std::size_t n) {
  if (n == 0) throw DomainError("Janson statistics need n >= 1");
  if (m > n) throw DomainError("Janson statistics need m <= n");
  for (const auto& u : family) {
    if (u.universe() != n) throw DomainError("family member universe differs from n");
    if (u.empty()) throw DomainError("family members must be nonempty");
  }
}

}  // namespace

JansonStats janson_stats(const std::vector<VertexSet>& family, std::size_t m, std::size_t n) {
  check_family(family, m, n);
  JansonStats st;
  st.family_size = family.size();
  st.m = m;
  st.n = n;
  const double p = static_cast<double>(m) / static_cast<double>(n);
  for (std::size_t i = 0; i < family.size(); ++i) {
    st.mu += std::pow(p, static_cast<double>(family[i].count()));
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      if (!family[i].intersects(family[j])) continue;
      const std::size_t uni =
          family[i].count() + family[j].count() - family[i].intersection_count(family[j]);
      st.delta_sum += 2.0 * std::pow(p, static_cast<double>(uni));
    }
  }
  return st;
}

ExactProbability janson_mu_exact(const std::vector<VertexSet>& family, std::size_t m,
                                 std::size_t n) {
  check_family(family, m, n);
  ExactProbability mu(0);
  for (const auto& u : family) {
    const auto k = static_cast<unsigned>(u.count());
    mu += ExactProbability(boost::multiprecision::pow(ExactCount(m), k),
                           boost::multiprecision::pow(ExactCount(n), k));
  }
  return mu;
}

JansonBounds janson_bounds(const JansonStats& stats, PittelConstant constant) {
  JansonBounds b;
  b.product = std::exp(-stats.mu + stats.delta_sum / 2.0);
  if (stats.delta_sum == 0.0) {
    b.delta_zero_guard = true;
    b.max_form = std::exp(-stats.mu / 2.0);
  } else {
    b.max_form = std::max(std::exp(-stats.mu / 2.0),
                          std::exp(-stats.mu * stats.mu / (2.0 * stats.delta_sum)));
  }
  b.transfer_factor = constant.kind == PittelConstant::Kind::sqrt_m
                          ? std::max(1.0, 3.0 * std::sqrt(static_cast<double>(stats.m)))
                          : constant.value;
  return b;
}

ExactProbability exact_no_Ui_probability(const std::vector<VertexSet>& family, std::size_t m,
                                         std::size_t n, std::uint64_t budget) {
  check_family(family, m, n);
  if (n > 63) throw DomainError("exact_no_Ui_probability needs n <= 63");
  const ExactCount total = binom_exact(n, m);
  if (total > budget)
    throw DomainError("binom(n, m) = " + total.str() + " exceeds the enumeration budget");
  std::vector<std::uint64_t> masks;
  for (const auto& u : family) masks.push_back(u.low_word());

  std::uint64_t good = 0;
  auto check = [&](std::uint64_t r) {
    for (auto u : masks)
      if ((u & r) == u) return;
    ++good;
  };
  if (m == 0) {
    check(0);
  } else {
    // Gosper's hack over all m-subsets of {0..n-1}
    const std::uint64_t limit = std::uint64_t{1} << n;
    for (std::uint64_t r = (std::uint64_t{1} << m) - 1; r < limit;) {
      check(r);
      const std::uint64_t c = r & (~r + 1);
      const std::uint64_t s = r + c;
      if (s == 0) break;
      r = (((r ^ s) >> 2) / c) | s;
    }
  }
  return ExactProbability(ExactCount(good), total);
}

LogBound thm_graphs_bound(double n, double d, double lambda, double eps, std::size_t m) {
  if (!(d > 0.0) || !(lambda > 0.0) || !(eps >= 0.0) || !(n > 0.0))
    throw DomainError("thm_graphs_bound needs n, d, lambda > 0 and eps >= 0");
  LogBound b;
  b.argument = (lambda / (d + lambda) + eps) * n;
  const auto top = static_cast<std::uint64_t>(std::floor(b.argument + 1e-9));
  b.floored = top;
  b.log_value = top < m ? -std::numeric_limits<double>::infinity()
                        : binom_log(static_cast<double>(top), m);
  return b;
}

LogBound alon_rodl_bound(double n, double d, double lambda, std::size_t m) {
  if (!(d > 0.0) || !(lambda > 0.0) || !(n > 1.0))
    throw DomainError("alon_rodl_bound needs n > 1 and d, lambda > 0");
  LogBound b;
  const double ln_n = std::log(n);
  const double exponent = 2.0 * (n / d) * ln_n;
  b.argument = 2.0 * lambda * n / d;
  if (static_cast<double>(m) < exponent) {
    b.applicable = false;
    b.log_value = std::numeric_limits<double>::quiet_NaN();
    return b;
  }
  const double base = std::exp(1.0) * static_cast<double>(m) * d * d / (4.0 * lambda * n * ln_n);
  b.log_value = exponent * std::log(base) + binom_log(b.argument, m);
  return b;
}

SfPrediction sf_count_prediction(const GroupSpec& g, std::size_t m) {
  const MaxSumFreeFamily fam = enumerate_SF0(g);
  SfPrediction p;
  p.n = g.order();
  p.m = m;
  p.q = fam.q;
  p.family_size = fam.sets.size();
  p.order_q_count = count_elements_of_order(g, fam.q);
  p.lambda_q = fam.q == 2 ? 1.0 : 0.5;
  p.lambda_law_matches = fam.q == 2 ? p.order_q_count == p.family_size
                                    : p.order_q_count == 2 * p.family_size;
  p.member_size = fam.member_size();
  p.leading = ExactCount(p.family_size) * binom_exact(p.member_size, m);

  ExactCount s1 = 0, s2 = 0;
  for (std::size_t i = 0; i < fam.sets.size(); ++i) {
    s1 += binom_exact(fam.sets[i].count(), m);
    for (std::size_t j = i + 1; j < fam.sets.size(); ++j)
      s2 += binom_exact(fam.sets[i].intersection_count(fam.sets[j]), m);
  }
  p.upper_bonf = s1;
  p.lower_bonf = s1 - s2;

  const double slack = static_cast<double>(p.member_size) - 3.0 * static_cast<double>(m);
  if (m >= 1 && slack > 0.0) {
    const double log_v = std::log(static_cast<double>(p.n) / 2.0) +
                         static_cast<double>(m - 1) * std::log(slack) -
                         std::lgamma(static_cast<double>(m));
    p.near_extremal_estimate = std::exp(log_v);
  }
  return p;
}

std::optional<double> CountRow::ratio() const {
  if (!exact || prediction.leading == 0) return std::nullopt;
  const ExactProbability r(*exact, prediction.leading);
  return r.numerator().convert_to<double>() / r.denominator().convert_to<double>();
}

void write_count_csv(std::ostream& os, const std::vector<CountRow>& rows) {
  os << "n,m,exact,leading,lower_bonf,upper_bonf,ratio\n";
  for (const auto& r : rows) {
    os << r.n << ',' << r.m << ',';
    if (r.exact) os << *r.exact;
    os << ',' << r.prediction.leading << ',' << r.prediction.lower_bonf << ','
       << r.prediction.upper_bonf << ',';
    if (auto q = r.ratio()) os << std::setprecision(10) << *q;
    os << '\n';
  }
}

}  // namespace sumfree
