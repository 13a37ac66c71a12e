#include "sumfree/encoding.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "sumfree/errors.hpp"

namespace sumfree {

namespace {

std::size_t ceil_threshold(double x) {
  if (x <= 0.0) return 0;
  return static_cast<std::size_t>(std::ceil(x - 1e-9));
}

double pow_int(double b, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

using ExactRational = boost::multiprecision::cpp_rational;

std::size_t exact_ceil(const ExactRational& x) {
  if (x <= 0) return 0;
  boost::multiprecision::cpp_int q = numerator(x) / denominator(x);
  if (q * denominator(x) != numerator(x)) ++q;
  return q.convert_to<std::size_t>();
}

using Membership = std::function<bool(std::uint32_t)>;

// Shared state of both algorithms. The only information about I an encoder
// run consults is the membership oracle, so running it with "v ∈ S" in place
// of "v ∈ I" is the decoder.
struct Partition {
  std::vector<std::uint32_t> selected;
  VertexSet available;
  VertexSet excluded;
  std::vector<StepRecord> trace;

  explicit Partition(std::size_t n) : available(VertexSet::full(n)), excluded(n) {}

  void select(std::uint32_t v, StepRecord& step) {
    available.erase(v);
    selected.push_back(v);
    step.to_selected.push_back(v);
  }
  void exclude(std::uint32_t v, StepRecord& step) {
    available.erase(v);
    excluded.insert(v);
    step.to_excluded.push_back(v);
  }
};

// One greedy step on graph[A]: walk the max-degree order until the first
// member; move the prefix and the member's remaining neighbours to X.
// Returns false (and changes nothing) when A holds no member.
bool greedy_step(const DenseGraph& graph, Partition& p, const Membership& member,
                 StepRecord& step) {
  const std::size_t n = graph.size();
  VertexSet remaining = p.available;
  bool any = false;
  remaining.for_each([&](std::size_t v) { any = any || member(static_cast<std::uint32_t>(v)); });
  if (!any) return false;

  std::vector<std::size_t> deg(n, 0);
  remaining.for_each([&](std::size_t v) { deg[v] = graph.neighbors(v).intersection_count(remaining); });
  std::vector<std::uint32_t> prefix;
  while (true) {
    std::size_t best = n;
    remaining.for_each([&](std::size_t v) {
      if (best == n || deg[v] > deg[best]) best = v;
    });
    const auto v = static_cast<std::uint32_t>(best);
    if (member(v)) {
      for (auto u : prefix) p.exclude(u, step);
      p.select(v, step);
      remaining.erase(v);
      VertexSet nb = graph.neighbors(v) & remaining;
      nb.for_each([&](std::size_t u) { p.exclude(static_cast<std::uint32_t>(u), step); });
      std::sort(step.to_excluded.begin(), step.to_excluded.end());
      return true;
    }
    prefix.push_back(v);
    remaining.erase(v);
    graph.neighbors(v).for_each([&](std::size_t u) {
      if (remaining.contains(u)) --deg[u];
    });
  }
}

struct BasicRun {
  Partition part;
  Termination termination;
};

BasicRun run_basic(const DenseGraph& graph, const Membership& member, std::size_t stop_size,
                   const VertexSet* check_independent) {
  BasicRun run{Partition(graph.size()), Termination::size_threshold};
  Partition& p = run.part;
  while (p.available.count() > stop_size) {
    StepRecord step;
    step.kind = StepCase::basic;
    step.available_before = p.available.count();
    if (!greedy_step(graph, p, member, step)) {
      run.termination = Termination::I_exhausted;
      return run;
    }
    step.available_after = p.available.count();
    p.trace.push_back(std::move(step));
    if (check_independent) {
      // S ⊆ I and I \ S ⊆ A after every step
      const VertexSet& i_set = *check_independent;
      VertexSet s = VertexSet::from_indices(graph.size(), {});
      for (auto v : p.selected) s.insert(v);
      if (!s.is_subset_of(i_set) || !(i_set - s).is_subset_of(p.available) ||
          p.available.intersects(p.excluded) || s.intersects(p.available) ||
          s.count() + p.available.count() + p.excluded.count() != graph.size())
        throw AssertionFailure("basic encoder broke the S/X/A partition invariant");
    }
  }
  return run;
}

struct MainRun {
  Partition part;
  Termination termination;
  std::optional<std::size_t> near_member;
};

MainRun run_main(const SchurHypergraph& h, const MaxSumFreeFamily& family,
                 const Membership& member, const std::vector<std::uint32_t>& initial_T,
                 const EncodingParams& params, const VertexSet* check_independent) {
  const std::size_t n = h.vertex_count();
  MainRun run{Partition(n), Termination::size_threshold, std::nullopt};
  Partition& p = run.part;

  StepRecord init;
  init.kind = StepCase::init;
  init.available_before = n;
  for (auto v : initial_T) p.select(v, init);
  init.available_after = p.available.count();
  init.new_T = initial_T;
  p.trace.push_back(init);

  VertexSet t_set(n);
  for (auto v : initial_T) t_set.insert(v);
  DenseGraph link = link_graph_full(h, t_set);

  const std::size_t size_thr = params.size_threshold(n);
  const std::size_t near_thr = params.near_threshold(n);
  // Exact thresholds: a double converts to cpp_rational without rounding.
  const ExactRational beta(params.beta);
  const ExactRational case1_degree = beta * beta * beta * beta * static_cast<long long>(params.d);
  const std::size_t useful_edges = exact_ceil(beta * beta * static_cast<long long>(n));

  while (true) {
    const std::size_t a_size = p.available.count();
    if (a_size <= size_thr) {
      run.termination = Termination::size_threshold;
      break;
    }
    for (std::size_t i = 0; i < family.sets.size(); ++i) {
      if ((p.available - family.sets[i]).count() <= near_thr) {
        run.near_member = i;
        break;
      }
    }
    if (run.near_member) {
      run.termination = Termination::near_B;
      break;
    }

    StepRecord step;
    step.available_before = a_size;
    const std::size_t e = link.edge_count(p.available);
    // average degree 2e/|A| >= beta^4 d
    if (ExactRational(static_cast<long long>(2 * e)) >=
        case1_degree * static_cast<long long>(a_size)) {
      step.kind = StepCase::case1;
      if (!greedy_step(link, p, member, step)) {
        run.termination = Termination::I_exhausted;
        break;
      }
    } else {
      std::vector<std::uint32_t> useful;
      p.available.for_each([&](std::size_t z) {
        if (link_edge_count(h, static_cast<Element>(z), p.available) >= useful_edges)
          useful.push_back(static_cast<std::uint32_t>(z));
      });
      if (useful.empty()) {
        run.termination = Termination::stalled;
        break;
      }
      step.useful = useful.size();
      std::vector<std::uint32_t> useful_members;
      for (auto z : useful)
        if (member(z)) useful_members.push_back(z);
      if (useful_members.size() < params.d) {
        step.kind = StepCase::case2a;
        for (auto z : useful_members) p.select(z, step);
        for (auto z : useful)
          if (!member(z)) p.exclude(z, step);
      } else {
        step.kind = StepCase::case2b;
        useful_members.resize(params.d);
        for (auto z : useful_members) p.select(z, step);
        step.new_T = useful_members;
        VertexSet nt(n);
        for (auto z : useful_members) nt.insert(z);
        link = link_graph_full(h, nt);
      }
    }
    step.available_after = p.available.count();
    p.trace.push_back(std::move(step));

    if (check_independent) {
      const VertexSet& i_set = *check_independent;
      VertexSet s(n);
      for (auto v : p.selected) s.insert(v);
      if (!s.is_subset_of(i_set) || !(i_set - s).is_subset_of(p.available) ||
          p.available.intersects(p.excluded) || s.intersects(p.available) ||
          s.count() + p.available.count() + p.excluded.count() != n)
        throw AssertionFailure("main encoder broke the S/X/A partition invariant");
    }
  }
  return run;
}

EncodingResult to_result(Partition&& p, Termination t, std::optional<std::size_t> near) {
  EncodingResult r;
  r.selected = std::move(p.selected);
  r.available = std::move(p.available);
  r.excluded = std::move(p.excluded);
  r.trace = std::move(p.trace);
  r.termination = t;
  r.near_member = near;
  return r;
}

VertexSet set_of(std::size_t n, const std::vector<std::uint32_t>& v) {
  VertexSet s(n);
  for (auto x : v) {
    if (x >= n) throw DecodeError("selected vertex " + std::to_string(x) + " out of range");
    s.insert(x);
  }
  return s;
}

void check_decoded(const std::vector<std::uint32_t>& decoded,
                   const std::vector<std::uint32_t>& claimed) {
  std::vector<std::uint32_t> a = decoded, b = claimed;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b)
    throw DecodeError("certificate is inconsistent: replay selects " + std::to_string(a.size()) +
                      " vertices, certificate lists " + std::to_string(b.size()) +
                      " (or different ones)");
  if (decoded != claimed)
    throw DecodeError("certificate lists the selected vertices out of selection order");
}

}  // namespace

const char* to_string(StepCase c) {
  switch (c) {
    case StepCase::init: return "init";
    case StepCase::basic: return "basic";
    case StepCase::case1: return "case1";
    case StepCase::case2a: return "case2a";
    case StepCase::case2b: return "case2b";
  }
  return "?";
}

const char* to_string(Termination t) {
  switch (t) {
    case Termination::size_threshold: return "size_threshold";
    case Termination::near_B: return "near_B";
    case Termination::I_exhausted: return "I_exhausted";
    case Termination::stalled: return "stalled";
  }
  return "?";
}

EncodingParams EncodingParams::make(double alpha, double beta, double gamma, double capital_C,
                                    std::size_t n, std::size_t m) {
  if (m == 0) throw DomainError("encoding needs m >= 1");
  EncodingParams p;
  p.alpha = alpha;
  p.beta = beta;
  p.gamma = gamma;
  p.capital_C = capital_C;
  const double d = capital_C * static_cast<double>(n) / static_cast<double>(m);
  p.d = d < 0.5 ? 0 : static_cast<std::size_t>(std::llround(d));
  p.validate(m);
  return p;
}

void EncodingParams::validate(std::size_t m) const {
  if (!(beta > 0.0) || !(beta <= alpha))
    throw DomainError("encoding params need 0 < beta <= alpha");
  if (!(gamma > 0.0)) throw DomainError("encoding params need gamma > 0");
  if (!(capital_C >= 1.0)) throw DomainError("encoding params need C >= 1");
  if (d < 1) throw DomainError("encoding params need d >= 1");
  if (d > m)
    throw DomainError("encoding params need d <= m (d = " + std::to_string(d) +
                      ", m = " + std::to_string(m) + ")");
}

std::size_t EncodingParams::size_threshold(std::size_t n) const {
  return ceil_threshold((alpha - beta) * static_cast<double>(n));
}

std::size_t EncodingParams::near_threshold(std::size_t n) const {
  return ceil_threshold(gamma * static_cast<double>(n));
}

std::size_t EncodingParams::basic_stop_size(std::size_t n) const {
  if (!(stop_fraction > 0.0 && stop_fraction < 1.0))
    throw DomainError("stop_fraction must lie in (0, 1)");
  return static_cast<std::size_t>(std::floor(stop_fraction * static_cast<double>(n) + 1e-9));
}

bool EncodingParams::claims_hypothesis() const { return capital_C >= 3.0 / pow_int(beta, 7); }

VertexSet EncodingResult::selected_set() const {
  VertexSet s(available.universe());
  for (auto v : selected) s.insert(v);
  return s;
}

std::size_t EncodingResult::count(StepCase c) const {
  return static_cast<std::size_t>(
      std::count_if(trace.begin(), trace.end(), [c](const StepRecord& s) { return s.kind == c; }));
}

std::vector<std::uint32_t> max_degree_order(const DenseGraph& graph, const VertexSet& a) {
  const std::size_t n = graph.size();
  VertexSet remaining = a;
  std::vector<std::size_t> deg(n, 0);
  remaining.for_each([&](std::size_t v) { deg[v] = graph.neighbors(v).intersection_count(remaining); });
  std::vector<std::uint32_t> order;
  order.reserve(a.count());
  while (!remaining.empty()) {
    std::size_t best = n;
    remaining.for_each([&](std::size_t v) {
      if (best == n || deg[v] > deg[best]) best = v;
    });
    order.push_back(static_cast<std::uint32_t>(best));
    remaining.erase(best);
    graph.neighbors(best).for_each([&](std::size_t u) {
      if (remaining.contains(u)) --deg[u];
    });
  }
  return order;
}

EncodingResult basic_encode(const DenseGraph& graph, const VertexSet& independent,
                            std::size_t stop_size) {
  if (independent.universe() != graph.size())
    throw DomainError("independent set universe does not match the graph");
  if (!graph.is_independent(independent)) throw DomainError("I is not independent in the graph");
  auto member = [&](std::uint32_t v) { return independent.contains(v); };
  BasicRun run = run_basic(graph, member, stop_size, &independent);
  return to_result(std::move(run.part), run.termination, std::nullopt);
}

EncodingResult basic_decode_run(const DenseGraph& graph, const std::vector<std::uint32_t>& selected,
                                std::size_t stop_size) {
  const VertexSet s = set_of(graph.size(), selected);
  auto member = [&](std::uint32_t v) { return s.contains(v); };
  BasicRun run = run_basic(graph, member, stop_size, nullptr);
  check_decoded(run.part.selected, selected);
  return to_result(std::move(run.part), run.termination, std::nullopt);
}

VertexSet basic_decode(const DenseGraph& graph, const std::vector<std::uint32_t>& selected,
                       std::size_t stop_size) {
  return basic_decode_run(graph, selected, stop_size).available;
}

EncodingResult main_encode(const SchurHypergraph& h, const MaxSumFreeFamily& family,
                           const VertexSet& independent, const EncodingParams& params) {
  const std::size_t n = h.vertex_count();
  if (independent.universe() != n) throw DomainError("independent set universe does not match H");
  if (!(family.group == h.group())) throw DomainError("family and hypergraph groups differ");
  params.validate(independent.count());
  if (!is_independent(h, independent)) throw DomainError("I is not independent in H");

  std::vector<std::uint32_t> initial;
  independent.for_each([&](std::size_t v) {
    if (initial.size() < params.d) initial.push_back(static_cast<std::uint32_t>(v));
  });
  auto member = [&](std::uint32_t v) { return independent.contains(v); };
  MainRun run = run_main(h, family, member, initial, params, &independent);
  return to_result(std::move(run.part), run.termination, run.near_member);
}

EncodingResult main_decode_run(const SchurHypergraph& h, const MaxSumFreeFamily& family,
                               const std::vector<std::uint32_t>& selected,
                               const EncodingParams& params) {
  const std::size_t n = h.vertex_count();
  const VertexSet s = set_of(n, selected);
  if (s.count() < params.d)
    throw DecodeError("certificate selects fewer than d = " + std::to_string(params.d) +
                      " vertices");
  // T starts as the first d members of I in index order; S contains them and
  // nothing of I that precedes them.
  std::vector<std::uint32_t> initial;
  s.for_each([&](std::size_t v) {
    if (initial.size() < params.d) initial.push_back(static_cast<std::uint32_t>(v));
  });
  auto member = [&](std::uint32_t v) { return s.contains(v); };
  MainRun run = run_main(h, family, member, initial, params, nullptr);
  check_decoded(run.part.selected, selected);
  return to_result(std::move(run.part), run.termination, run.near_member);
}

VertexSet main_decode(const SchurHypergraph& h, const MaxSumFreeFamily& family,
                      const std::vector<std::uint32_t>& selected, const EncodingParams& params) {
  return main_decode_run(h, family, selected, params).available;
}

EncodingResult replay_trace(std::size_t vertex_count, const std::vector<StepRecord>& trace) {
  Partition p(vertex_count);
  for (const auto& step : trace) {
    StepRecord sink;
    for (auto v : step.to_selected) {
      if (!p.available.contains(v)) throw DecodeError("trace selects an unavailable vertex");
      p.select(v, sink);
    }
    for (auto v : step.to_excluded) {
      if (!p.available.contains(v)) throw DecodeError("trace excludes an unavailable vertex");
      p.exclude(v, sink);
    }
    p.trace.push_back(step);
  }
  return to_result(std::move(p), Termination::size_threshold, std::nullopt);
}

ClaimReport verify_claims(const EncodingResult& result, const EncodingParams& params,
                          std::size_t n, std::size_t m) {
  ClaimReport r;
  const double b4d = pow_int(params.beta, 4) * static_cast<double>(params.d);
  r.case1.actual = static_cast<double>(result.count(StepCase::case1));
  r.case1.bound = 2.0 * static_cast<double>(n) / b4d;
  r.case1.holds = r.case1.actual <= r.case1.bound;
  r.case2.actual =
      static_cast<double>(result.count(StepCase::case2a) + result.count(StepCase::case2b));
  r.case2.bound = 1.0 / pow_int(params.beta, 5);
  r.case2.holds = r.case2.actual <= r.case2.bound;
  r.selected.actual = static_cast<double>(result.selected.size());
  r.selected.bound = pow_int(params.beta, 2) * static_cast<double>(m);
  r.selected.holds = r.selected.actual <= r.selected.bound;
  r.hypothesis = params.claims_hypothesis();
  for (std::size_t i = 0; i + 1 < result.trace.size(); ++i) {
    const auto& a = result.trace[i];
    const auto& b = result.trace[i + 1];
    if (a.kind == StepCase::case1 && b.kind == StepCase::case1 &&
        static_cast<double>(a.available_before - a.available_after) < b4d)
      r.case1_progress = false;
  }
  return r;
}

void Certificate::write(std::ostream& os) const {
  os << kind << '\n';
  bool first = true;
  for (const auto& [k, v] : params) {
    if (!first) os << ' ';
    os << k << '=' << v;
    first = false;
  }
  os << '\n';
  for (std::size_t i = 0; i < selected.size(); ++i) {
    if (i) os << ' ';
    os << selected[i];
  }
  os << '\n';
}

Certificate Certificate::read(std::istream& is) {
  Certificate c;
  std::string line;
  if (!std::getline(is, line)) throw ParseError("certificate: missing kind line");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "basic" && line != "main")
    throw ParseError("certificate: first line must be 'basic' or 'main', got '" + line + "'");
  c.kind = line;

  if (!std::getline(is, line)) throw ParseError("certificate: missing parameter line");
  std::istringstream ps(line);
  std::string tok;
  while (ps >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ParseError("certificate: parameter '" + tok + "' is not key=value");
    c.params[tok.substr(0, eq)] = tok.substr(eq + 1);
  }

  if (!std::getline(is, line)) line.clear();
  std::istringstream ss(line);
  while (ss >> tok) {
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
      throw ParseError("certificate: bad vertex '" + tok + "' on line 3");
    c.selected.push_back(v);
  }
  return c;
}

const std::string& Certificate::param(const std::string& key) const {
  auto it = params.find(key);
  if (it == params.end()) throw ParseError("certificate: missing parameter '" + key + "'");
  return it->second;
}

double Certificate::param_double(const std::string& key) const {
  const std::string& s = param(key);
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw ParseError("");
    return v;
  } catch (const std::exception&) {
    throw ParseError("certificate: parameter '" + key + "' is not a number");
  }
}

std::size_t Certificate::param_size(const std::string& key) const {
  const std::string& s = param(key);
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ParseError("certificate: parameter '" + key + "' is not a nonnegative integer");
  return v;
}

}  // namespace sumfree
