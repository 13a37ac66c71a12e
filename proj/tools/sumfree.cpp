// Command-line front end: one subcommand per experiment, CSV or JSON output
// tagged schema=1, structured errors on stderr and fixed exit codes.

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sumfree/counting.hpp"
#include "sumfree/encoding.hpp"
#include "sumfree/errors.hpp"
#include "sumfree/extremal.hpp"
#include "sumfree/group.hpp"
#include "sumfree/random.hpp"
#include "sumfree/schur.hpp"
#include "sumfree/spectral.hpp"

using namespace sumfree;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAssertion = 2;
constexpr int kExitBudget = 3;
constexpr int kExitInput = 4;

struct Globals {
  std::optional<std::uint64_t> seed;
  unsigned workers = 1;
  std::string out;
  std::string format = "csv";
  std::uint64_t budget_nodes = 0;
};

/// Scalar fields plus at most one table. CSV: `# schema=1`, one `# key=value`
/// line per field, then the table (or `key,value` rows when there is none).
/// JSON: one object with `schema`, the fields and `rows`.
struct Report {
  explicit Report(std::string name) : command(std::move(name)) {}

  std::string command;
  json fields = json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;

  void field(const std::string& k, json v) { fields[k] = std::move(v); }
};

std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_array()) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : " ") + csv_cell(x);
    return s;
  }
  if (v.is_number_float()) {
    std::ostringstream os;
    os << std::setprecision(15) << v.get<double>();
    return os.str();
  }
  return v.dump();
}

void emit(const Report& r, const Globals& g) {
  std::ofstream file;
  if (!g.out.empty()) {
    file.open(g.out);
    if (!file) throw ParseError("cannot open output file " + g.out);
  }
  std::ostream& os = g.out.empty() ? std::cout : file;
  if (g.format == "json") {
    json j;
    j["schema"] = 1;
    j["command"] = r.command;
    for (const auto& [k, v] : r.fields.items()) j[k] = v;
    if (!r.columns.empty()) {
      json rows = json::array();
      for (const auto& row : r.rows) {
        json o = json::object();
        for (std::size_t c = 0; c < r.columns.size(); ++c) o[r.columns[c]] = row[c];
        rows.push_back(std::move(o));
      }
      j["rows"] = std::move(rows);
    }
    os << j.dump(2) << '\n';
    return;
  }
  os << "# schema=1\n# command=" << r.command << '\n';
  if (r.columns.empty()) {
    os << "key,value\n";
    for (const auto& [k, v] : r.fields.items()) os << k << ',' << csv_cell(v) << '\n';
    return;
  }
  for (const auto& [k, v] : r.fields.items()) os << "# " << k << '=' << csv_cell(v) << '\n';
  for (std::size_t c = 0; c < r.columns.size(); ++c) os << (c ? "," : "") << r.columns[c];
  os << '\n';
  for (const auto& row : r.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << csv_cell(row[c]);
    os << '\n';
  }
}

std::string rational_text(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

json element_list(const VertexSet& s) {
  json a = json::array();
  s.for_each([&](std::size_t x) { a.push_back(x); });
  return a;
}

json vertex_list(const std::vector<std::uint32_t>& v) {
  json a = json::array();
  for (auto x : v) a.push_back(x);
  return a;
}

double to_double(const ExactProbability& p) {
  return p.numerator().convert_to<double>() / p.denominator().convert_to<double>();
}

std::uint64_t require_seed(const Globals& g, const char* what) {
  if (!g.seed) throw ParseError(std::string(what) + " is randomized and needs --seed");
  return *g.seed;
}

/// `a..b`, `a`, or the empty string (empty range).
std::pair<std::size_t, std::size_t> parse_range(const std::string& text, bool& empty) {
  empty = text.empty();
  if (empty) return {1, 0};
  auto to_num = [&](const std::string& s) -> std::size_t {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("malformed range '" + text + "'");
    return std::stoull(s);
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const auto v = to_num(text);
    return {v, v};
  }
  const auto lo = to_num(text.substr(0, dots)), hi = to_num(text.substr(dots + 2));
  if (lo > hi) empty = true;
  return {lo, hi};
}

/// Named graphs Cn, Pn, Kn, Ka,b; anything else is an edge-list file whose
/// first token is the vertex count followed by `u v` pairs.
DenseGraph load_graph(const std::string& spec) {
  auto num = [&](const std::string& s) -> std::size_t {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("malformed graph spec '" + spec + "'");
    return std::stoull(s);
  };
  if (!spec.empty() && (spec[0] == 'C' || spec[0] == 'P' || spec[0] == 'K') &&
      spec.find_first_not_of("0123456789,", 1) == std::string::npos) {
    const std::string rest = spec.substr(1);
    const auto comma = rest.find(',');
    if (spec[0] == 'K' && comma != std::string::npos)
      return complete_bipartite(num(rest.substr(0, comma)), num(rest.substr(comma + 1)));
    const auto n = num(rest);
    if (spec[0] == 'C') {
      if (n < 3) throw DomainError("cycle needs at least 3 vertices");
      return cycle_graph(n);
    }
    return spec[0] == 'P' ? path_graph(n) : complete_graph(n);
  }
  std::ifstream in(spec);
  if (!in) throw ParseError("unknown graph '" + spec + "' (not a named graph or a readable file)");
  std::size_t n = 0;
  if (!(in >> n)) throw ParseError("edge-list file must start with the vertex count");
  DenseGraph g(n);
  std::size_t u = 0, v = 0;
  while (in >> u >> v) {
    if (u >= n || v >= n) throw DomainError("edge endpoint out of range in " + spec);
    g.add_edge(u, v);
  }
  if (!in.eof()) throw ParseError("malformed edge line in " + spec);
  return g;
}

VertexSet parse_vertex_set(std::size_t n, const std::string& text) {
  VertexSet s(n);
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("malformed vertex '" + tok + "'");
    const auto v = std::stoull(tok);
    if (v >= n) throw DomainError("vertex " + tok + " out of range");
    s.insert(v);
  }
  return s;
}

void add_trace(Report& r, const EncodingResult& res) {
  r.columns = {"step", "case", "selected", "excluded", "available_before", "available_after"};
  for (std::size_t k = 0; k < res.trace.size(); ++k) {
    const auto& s = res.trace[k];
    r.rows.push_back({k, to_string(s.kind), vertex_list(s.to_selected), vertex_list(s.to_excluded),
                      s.available_before, s.available_after});
  }
}

void add_encoding_fields(Report& r, const EncodingResult& res) {
  r.field("termination", to_string(res.termination));
  r.field("selected", vertex_list(res.selected));
  r.field("selected_size", res.selected.size());
  r.field("available", element_list(res.available));
  r.field("available_size", res.available.count());
  if (res.near_member) r.field("near_member", *res.near_member);
}

/// Adds the claim fields; returns whether they all hold.
bool add_claims(Report& r, const EncodingResult& res, const EncodingParams& p, std::size_t n,
                std::size_t m) {
  const auto c = verify_claims(res, p, n, m);
  auto put = [&](const char* name, const ClaimCheck& k) {
    r.field(std::string(name) + "_actual", k.actual);
    r.field(std::string(name) + "_bound", k.bound);
    r.field(std::string(name) + "_holds", k.holds);
  };
  put("claim_case1", c.case1);
  put("claim_case2", c.case2);
  put("claim_selected", c.selected);
  r.field("claim_hypothesis", c.hypothesis);
  r.field("claim_case1_progress", c.case1_progress);
  r.field("claims_ok", c.ok());
  return c.ok();
}

struct EncodeArgs {
  std::string mode, target, independent, cert;
  std::optional<std::size_t> stop;
  double stop_fraction = 0.5;
  double alpha = 0.5, beta = 0.05, gamma = 0.01, capital_c = 10.0;
  std::optional<std::size_t> d;
  bool verify = false;
};

EncodingParams main_params(double alpha, double beta, double gamma, double capital_c,
                           std::optional<std::size_t> d, std::size_t n, std::size_t m) {
  auto p = EncodingParams::make(alpha, beta, gamma, capital_c, n, m);
  if (d) {
    p.d = *d;
    p.validate(m);
  }
  return p;
}

/// Shortest text that reads back to the same double.
std::string num_text(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

/// Eigenvalues within 1e-12 of zero are printed as 0 (solver round-off).
double clean(double x) { return std::abs(x) < 1e-12 ? 0.0 : x; }

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Sum-free sets, Schur hypergraphs and their spectral and counting tools"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "64-bit seed for randomized commands");
  app.add_option("--workers", g.workers, "worker threads (results do not depend on it)")
      ->check(CLI::Range(1u, 256u));
  app.add_option("--out", g.out, "output file (default: stdout)");
  app.add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--budget-nodes", g.budget_nodes, "search node budget, 0 = unlimited");

  // group-info
  std::string group_text;
  auto* info = app.add_subcommand("group-info", "order, Type I prime, mu, order-q elements");
  info->add_option("group", group_text, "group such as Z10 or Z4xZ2")->required();
  info->callback([&] {
    const auto grp = parse_group(group_text);
    const auto q = smallest_typeI_prime(grp);
    if (!q) throw NotTypeIError(grp.to_string() + " is not Type I");
    Report r{"group-info"};
    r.field("group", grp.to_string());
    r.field("order", grp.order());
    r.field("q", *q);
    r.field("mu", rational_text(mu(grp)));
    r.field("order_q_count", count_elements_of_order(grp, *q));
    std::vector<std::string> order2;
    for (Element x = 1; x < grp.order(); ++x)
      if (element_order(grp, x) == 2) order2.push_back(grp.format_element(x));
    const auto subs = index_two_subgroups(grp).size();
    // elements of order 2 and index-2 subgroups are equinumerous
    if (subs != order2.size()) throw AssertionFailure("order-2 count differs from index-2 subgroup count");
    r.field("order_2_elements", order2);
    r.field("order_2_count", order2.size());
    r.field("index_2_subgroups", subs);
    emit(r, g);
  });

  // sf0
  auto* sf0 = app.add_subcommand("sf0", "maximum sum-free sets with cardinality checks");
  sf0->add_option("group", group_text)->required();
  sf0->callback([&] {
    const auto grp = parse_group(group_text);
    const auto fam = enumerate_SF0(grp);
    const auto card = sf0_cardinality_check(grp);
    const auto inter = pairwise_intersection_check(fam);
    Report r{"sf0"};
    r.field("group", grp.to_string());
    r.field("q", fam.q);
    r.field("member_size", fam.member_size());
    r.field("family_size", fam.sets.size());
    r.field("expected_family_size", card.expected);
    r.field("count_law", card.count_law);
    r.field("at_most_order", card.at_most_order);
    r.field("pairs", inter.pairs);
    r.field("min_intersection", inter.min_intersection);
    r.field("max_intersection", inter.max_intersection);
    r.field("intersection_ceiling", inter.ceiling);
    r.field("within_ceiling", inter.within_ceiling);
    if (inter.exact_quarter) r.field("exact_quarter", *inter.exact_quarter);
    r.columns = {"index", "elements"};
    for (std::size_t k = 0; k < fam.sets.size(); ++k) r.rows.push_back({k, element_list(fam.sets[k])});
    emit(r, g);
    if (!card.ok() || !inter.ok()) throw AssertionFailure("extremal family checks failed");
  });

  // count
  std::string m_range = "", mode_text = "group";
  auto* count = app.add_subcommand("count", "exact sum-free counts against the prediction");
  count->add_option("group", group_text)->required();
  count->add_option("--m", m_range, "size range a..b or a single size")->required();
  count->add_option("--mode", mode_text, "group or hypergraph")
      ->check(CLI::IsMember({"group", "hypergraph"}));
  count->callback([&] {
    const auto grp = parse_group(group_text);
    bool empty = false;
    const auto [lo, hi] = parse_range(m_range, empty);
    const auto mode = mode_text == "group" ? SumFreeMode::group_sense : SumFreeMode::hypergraph_sense;
    SearchOptions opt;
    opt.workers = g.workers;
    opt.budget_nodes = g.budget_nodes;
    Report r{"count"};
    r.field("group", grp.to_string());
    r.field("mode", mode_text);
    r.columns = {"n", "m", "exact", "leading", "lower_bonf", "upper_bonf", "ratio", "status"};
    std::optional<BudgetExhausted> exhausted;
    for (std::size_t m = lo; !empty && m <= hi; ++m) {
      CountRow row;
      row.n = grp.order();
      row.m = m;
      row.prediction = sf_count_prediction(grp, m);
      std::string status = "exact";
      try {
        row.exact = count_sum_free(grp, m, mode, opt);
      } catch (const BudgetExhausted& e) {
        status = "budget_exhausted";
        if (!exhausted) exhausted = e;
      }
      const auto ratio = row.ratio();
      r.rows.push_back({row.n, row.m, row.exact ? json(row.exact->str()) : json(nullptr),
                        row.prediction.leading.str(), row.prediction.lower_bonf.str(),
                        row.prediction.upper_bonf.str(), ratio ? json(*ratio) : json(nullptr),
                        status});
    }
    emit(r, g);
    if (exhausted) throw *exhausted;
  });

  // encode
  EncodeArgs ea;
  auto* encode = app.add_subcommand("encode", "encode an independent set into a certificate");
  encode->add_option("mode", ea.mode, "basic (graph) or main (group)")
      ->required()
      ->check(CLI::IsMember({"basic", "main"}));
  encode->add_option("target", ea.target, "graph (basic) or group (main)")->required();
  encode->add_option("--I", ea.independent, "independent set, comma separated")->required();
  encode->add_option("--cert", ea.cert, "certificate output file")->required();
  encode->add_option("--stop", ea.stop, "basic: stop size");
  encode->add_option("--stop-fraction", ea.stop_fraction, "basic: stop size as a fraction of n");
  encode->add_option("--alpha", ea.alpha, "main: alpha");
  encode->add_option("--beta", ea.beta, "main: beta");
  encode->add_option("--gamma", ea.gamma, "main: gamma");
  encode->add_option("--C", ea.capital_c, "main: C");
  encode->add_option("--d", ea.d, "main: override d = round(Cn/m)");
  encode->add_flag("--verify", ea.verify, "main: check the run against the claimed bounds");
  encode->callback([&] {
    Certificate cert;
    cert.kind = ea.mode;
    Report r{"encode"};
    bool claims_ok = true;
    if (ea.mode == "basic") {
      const auto graph = load_graph(ea.target);
      const auto i = parse_vertex_set(graph.size(), ea.independent);
      EncodingParams p;
      p.stop_fraction = ea.stop_fraction;
      const std::size_t stop = ea.stop ? *ea.stop : p.basic_stop_size(graph.size());
      const auto res = basic_encode(graph, i, stop);
      cert.params = {{"graph", ea.target}, {"n", std::to_string(graph.size())},
                     {"stop_size", std::to_string(stop)}};
      cert.selected = res.selected;
      r.field("kind", "basic");
      r.field("stop_size", stop);
      add_encoding_fields(r, res);
      add_trace(r, res);
    } else {
      const auto grp = parse_group(ea.target);
      SchurHypergraph h(grp);
      const auto fam = enumerate_SF0(grp);
      const auto i = parse_element_set(grp, ea.independent);
      const auto p = main_params(ea.alpha, ea.beta, ea.gamma, ea.capital_c, ea.d, grp.order(), i.count());
      const auto res = main_encode(h, fam, i, p);
      cert.params = {{"group", grp.to_string()}, {"alpha", num_text(p.alpha)},
                     {"beta", num_text(p.beta)},  {"gamma", num_text(p.gamma)},
                     {"C", num_text(p.capital_C)}, {"d", std::to_string(p.d)},
                     {"m", std::to_string(i.count())}};
      cert.selected = res.selected;
      r.field("kind", "main");
      r.field("d", p.d);
      add_encoding_fields(r, res);
      if (ea.verify) claims_ok = add_claims(r, res, p, grp.order(), i.count());
      add_trace(r, res);
    }
    std::ofstream out(ea.cert);
    if (!out) throw ParseError("cannot open certificate file " + ea.cert);
    cert.write(out);
    emit(r, g);
    if (!claims_ok) throw AssertionFailure("claimed bounds violated");
  });

  // decode
  std::string cert_path;
  bool decode_verify = false;
  auto* decode = app.add_subcommand("decode", "rebuild A from a certificate");
  decode->add_option("certificate", cert_path)->required();
  decode->add_flag("--verify", decode_verify, "main: check the run against the claimed bounds");
  decode->callback([&] {
    std::ifstream in(cert_path);
    if (!in) throw ParseError("cannot open certificate file " + cert_path);
    Certificate cert;
    try {
      cert = Certificate::read(in);
    } catch (const ParseError& e) {
      throw DecodeError(e.what());
    }
    Report r{"decode"};
    r.field("kind", cert.kind);
    bool claims_ok = true;
    if (cert.kind == "basic") {
      const auto graph = load_graph(cert.param("graph"));
      if (cert.param_size("n") != graph.size()) throw DecodeError("certificate n does not match graph");
      const auto res = basic_decode_run(graph, cert.selected, cert.param_size("stop_size"));
      add_encoding_fields(r, res);
      add_trace(r, res);
    } else {
      const auto grp = parse_group(cert.param("group"));
      SchurHypergraph h(grp);
      const auto fam = enumerate_SF0(grp);
      const std::size_t m = cert.param_size("m");
      const auto p = main_params(cert.param_double("alpha"), cert.param_double("beta"),
                                 cert.param_double("gamma"), cert.param_double("C"),
                                 cert.param_size("d"), grp.order(), m);
      const auto res = main_decode_run(h, fam, cert.selected, p);
      add_encoding_fields(r, res);
      if (decode_verify) claims_ok = add_claims(r, res, p, grp.order(), m);
      add_trace(r, res);
    }
    emit(r, g);
    if (!claims_ok) throw AssertionFailure("claimed bounds violated");
  });

  // spectra
  std::string set_text, graph_text, classify_text, sample_text;
  bool directed = false, dense_check = false;
  double delta = 0.1, eps = 0.5;
  std::optional<std::size_t> arc_char;
  std::size_t trials = 100;
  auto* spectra = app.add_subcommand("spectra", "Cayley or graph spectra and character checks");
  spectra->add_option("group", group_text, "group (omit with --graph)");
  spectra->add_option("--set", set_text, "connection set S");
  spectra->add_option("--graph", graph_text, "named graph or edge-list file (dense solver)");
  spectra->add_flag("--directed", directed, "real parts of the directed Cayley spectrum");
  spectra->add_flag("--dense", dense_check, "cross-check against the dense solver");
  spectra->add_option("--delta", delta, "delta for the S u -S lemma and classification");
  spectra->add_option("--classify", classify_text, "independent set I to classify by index-2 subgroups");
  spectra->add_option("--arc", arc_char, "character index for arc concentration of S");
  spectra->add_option("--sample", sample_text, "set I to sample S from (needs --seed)");
  spectra->add_option("--eps", eps, "sample size fraction");
  spectra->add_option("--trials", trials, "sampling trials");
  spectra->callback([&] {
    Report r{"spectra"};
    r.columns = {"index", "eigenvalue"};
    Spectrum sp;
    if (!graph_text.empty()) {
      const auto graph = load_graph(graph_text);
      sp = dense_symmetric_spectrum(graph);
      r.field("graph", graph_text);
    } else {
      if (group_text.empty()) throw ParseError("spectra needs a group or --graph");
      const auto grp = parse_group(group_text);
      const auto s = parse_element_set(grp, set_text);
      r.field("group", grp.to_string());
      r.field("set", element_list(s));
      sp = cayley_spectrum_analytic(grp, s, !directed);
      if (!s.empty()) {
        r.field("lambda_S", lambda_S(grp, s));
        const auto sus = lemma_SuS_check(grp, s, delta);
        r.field("delta", delta);
        r.field("sus_precondition", sus.precondition);
        r.field("sus_lambda_sym", sus.lambda_sym);
        r.field("sus_bound", sus.bound);
        r.field("sus_conclusion", sus.conclusion);
      }
      if (dense_check && !directed) {
        auto dense = dense_symmetric_spectrum(cayley_graph_star(grp, s, CayleyVertexMode::full)).eigenvalues;
        double dev = 0.0;
        for (std::size_t k = 0; k < dense.size(); ++k) dev = std::max(dev, std::abs(dense[k] - sp.eigenvalues[k]));
        r.field("dense_max_deviation", dev);
      }
      if (arc_char) {
        const auto arc = arc_concentration(grp, s, static_cast<Element>(*arc_char));
        r.field("arc_mass", arc.mass);
        r.field("arc_center", arc.best_center);
        r.field("arc_k", arc.k);
      }
      if (!classify_text.empty())
        r.field("classification", to_string(classify_SF(grp, parse_element_set(grp, classify_text), delta)));
      if (!sample_text.empty()) {
        const auto rep = sample_S_for_lambda(grp, parse_element_set(grp, sample_text), eps, delta, trials,
                                             require_seed(g, "--sample"), g.workers);
        r.field("sample_size", rep.size);
        r.field("sample_successes", rep.successes);
        r.field("sample_trials", rep.trials);
        r.field("sample_set", rep.set ? element_list(*rep.set) : json(nullptr));
      }
    }
    r.field("source", to_string(sp.source));
    for (std::size_t k = 0; k < sp.eigenvalues.size(); ++k)
      r.rows.push_back({k, clean(sp.eigenvalues[k])});
    emit(r, g);
  });

  // janson
  std::string janson_graph, janson_group, pittel_text;
  std::string janson_m;
  auto* janson = app.add_subcommand("janson", "Janson bounds against the exact probability");
  janson->add_option("--graph", janson_graph, "events = edges of this graph");
  janson->add_option("--group", janson_group, "events = Schur triples of this group");
  janson->add_option("--m", janson_m, "subset size range a..b")->required();
  janson->add_option("--pittel-C", pittel_text, "exploratory transfer constant instead of 3 sqrt(m)");
  janson->callback([&] {
    if (janson_graph.empty() == janson_group.empty())
      throw ParseError("janson needs exactly one of --graph and --group");
    std::vector<VertexSet> family;
    std::size_t n = 0;
    Report r{"janson"};
    if (!janson_graph.empty()) {
      const auto graph = load_graph(janson_graph);
      n = graph.size();
      for (std::size_t u = 0; u < n; ++u)
        graph.neighbors(u).for_each([&](std::size_t v) {
          if (u < v) family.push_back(VertexSet(n, {u, v}));
        });
      r.field("graph", janson_graph);
    } else {
      const auto grp = parse_group(janson_group);
      SchurHypergraph h(grp);
      n = grp.order();
      for (Element u = 0; u < n; ++u)
        for (Element v = u + 1; v < n; ++v)
          for (Element w : h.completions(u, v))
            if (w > v) family.push_back(VertexSet(n, {u, v, w}));
      r.field("group", grp.to_string());
    }
    if (family.empty()) throw DomainError("the event family is empty");
    PittelConstant pc = PittelConstant::sqrt_m();
    if (!pittel_text.empty()) pc = PittelConstant::abstract_C(std::stod(pittel_text));
    r.field("n", n);
    r.field("events", family.size());
    r.field("transfer", pittel_text.empty() ? "max(1,3sqrt(m))" : "abstract:" + pittel_text);
    bool empty = false;
    const auto [lo, hi] = parse_range(janson_m, empty);
    r.columns = {"m", "mu", "delta", "product", "max_form", "transfer_factor", "transferred", "exact"};
    for (std::size_t m = lo; !empty && m <= hi; ++m) {
      const auto st = janson_stats(family, m, n);
      const auto b = janson_bounds(st, pc);
      json exact = nullptr;
      if (n <= 64 && binom_exact(n, m) <= kExactProbabilityBudget)
        exact = to_double(exact_no_Ui_probability(family, m, n));
      r.rows.push_back({m, st.mu, st.delta_sum, b.product, b.max_form, b.transfer_factor,
                        b.transferred(), exact});
    }
    emit(r, g);
  });

  // blowup
  std::size_t bt = 0, bpart = 0, bd = 0;
  std::string edges_path;
  auto* blowup = app.add_subcommand("blowup", "random blow-up of K_{t+1} with its spectrum");
  blowup->add_option("--t", bt)->required();
  blowup->add_option("--part", bpart)->required();
  blowup->add_option("--d", bd)->required();
  blowup->add_option("--edges", edges_path, "also write the edge list to this file");
  blowup->callback([&] {
    const auto graph = blowup_graph(bt, bpart, bd, require_seed(g, "blowup"));
    const auto sp = dense_symmetric_spectrum(graph);
    const double target = -static_cast<double>(bd) / static_cast<double>(bt);
    bool has_target = false;
    for (double l : sp.eigenvalues) has_target = has_target || std::abs(l - target) <= 1e-8;
    Report r{"blowup"};
    r.field("t", bt);
    r.field("part_size", bpart);
    r.field("d", bd);
    r.field("seed", *g.seed);
    r.field("vertices", graph.size());
    r.field("edges", graph.edge_count());
    r.field("regular", graph.regular_degree() == bd);
    r.field("lambda_min", sp.eigenvalues.back());
    r.field("minus_d_over_t", target);
    r.field("minus_d_over_t_present", has_target);
    if (graph.size() <= 64) {
      const auto alpha = independence_number(graph);
      r.field("independence_number", alpha);
      r.field("independence_equals_part", alpha == bpart);
    }
    std::ostringstream el;
    graph.write_edge_list(el);
    if (!edges_path.empty()) {
      std::ofstream f(edges_path);
      if (!f) throw ParseError("cannot open " + edges_path);
      f << graph.size() << '\n' << el.str();
    }
    r.columns = {"index", "eigenvalue"};
    for (std::size_t k = 0; k < sp.eigenvalues.size(); ++k)
      r.rows.push_back({k, clean(sp.eigenvalues[k])});
    emit(r, g);
  });

  // stability
  double fraction = 0.4, st_alpha = 0.5, st_gamma = 0.01, step = 0.005;
  std::optional<std::size_t> sample_count;
  bool sweep = false;
  auto* stability = app.add_subcommand("stability", "Schur-count vs distance profile and witness beta");
  stability->add_option("group", group_text)->required();
  stability->add_option("--fraction", fraction, "smallest |A| / |G| scanned");
  stability->add_option("--sample", sample_count, "random sets per size instead of all subsets (needs --seed)");
  stability->add_option("--alpha", st_alpha);
  stability->add_option("--gamma", st_gamma);
  stability->add_option("--step", step, "beta grid step");
  stability->add_flag("--sweep", sweep, "witness beta over an (alpha, gamma) grid");
  stability->callback([&] {
    const auto grp = parse_group(group_text);
    SchurHypergraph h(grp);
    const auto fam = enumerate_SF0(grp);
    const auto mode = sample_count ? ProfileMode::sample(*sample_count, require_seed(g, "--sample"))
                                   : ProfileMode::exhaustive();
    const auto prof = stability_profile(grp, h, fam, fraction, mode);
    const auto edges = hypergraph_stats(h).edge_count;
    Report r{"stability"};
    r.field("group", grp.to_string());
    r.field("fraction", fraction);
    r.field("profiled_sets", prof.rows.size());
    r.field("hyperedges", edges);
    if (sweep) {
      r.columns = {"alpha", "gamma", "witness_beta"};
      const double mu_d = boost::rational_cast<double>(mu(grp));
      for (int k = 1; 0.05 * k <= mu_d + 1e-9; ++k)
        for (double gm : {0.0, 0.05, 0.1, 0.2}) {
          const double a = 0.05 * k;
          const auto w = stability_witness(prof, grp.order(), edges, a, gm, step);
          r.rows.push_back({a, gm, w ? json(*w) : json(nullptr)});
        }
    } else {
      const auto w = stability_witness(prof, grp.order(), edges, st_alpha, st_gamma, step);
      r.field("alpha", st_alpha);
      r.field("gamma", st_gamma);
      r.field("witness_beta", w ? json(*w) : json(nullptr));
      r.columns = {"schur_density", "distance"};
      for (const auto& f : prof.frontier) r.rows.push_back({f.schur_density, f.distance});
    }
    emit(r, g);
  });

  // report
  std::size_t max_order = 30;
  auto* report = app.add_subcommand("report", "battery over all Type I groups up to an order");
  report->add_option("--max-order", max_order, "largest group order")->check(CLI::Range(2, 64));
  report->callback([&] {
    Report r{"report"};
    r.field("max_order", max_order);
    r.columns = {"group", "q", "mu", "family_size", "cardinality_law", "intersections_ok",
                 "delta_H_B", "delta_claim", "count_at_mu_n", "count_matches"};
    SearchOptions opt;
    opt.workers = g.workers;
    opt.budget_nodes = g.budget_nodes;
    bool all_ok = true;
    // cyclic groups and two- and three-factor products, factors in non-increasing order
    std::vector<std::vector<std::uint32_t>> lists;
    for (std::uint32_t a = 2; a <= max_order; ++a) {
      lists.push_back({a});
      for (std::uint32_t b = 2; b <= a && a * b <= max_order; ++b) {
        lists.push_back({a, b});
        for (std::uint32_t c = 2; c <= b && a * b * c <= max_order; ++c) lists.push_back({a, b, c});
      }
    }
    for (const auto& f : lists) {
      const GroupSpec grp(f);
      if (!smallest_typeI_prime(grp)) continue;
      const auto fam = enumerate_SF0(grp);
      const auto card = sf0_cardinality_check(grp);
      const auto inter = pairwise_intersection_check(fam);
      SchurHypergraph h(grp);
      const auto dh = delta_H_family(h, fam);
      const bool dclaim = fam.q == 2 || static_cast<double>(dh) >= grp.order() / (2.0 * fam.q) - 0.5;
      json cnt = nullptr;
      json match = nullptr;
      try {
        const auto c = count_sum_free(grp, fam.member_size(), SumFreeMode::group_sense, opt);
        cnt = c.str();
        match = c == fam.sets.size();
        all_ok = all_ok && c == fam.sets.size();
      } catch (const BudgetExhausted&) {
      }
      all_ok = all_ok && card.ok() && inter.ok() && dclaim;
      r.rows.push_back({grp.to_string(), fam.q, rational_text(mu(grp)), fam.sets.size(), card.ok(),
                        inter.ok(), dh, dclaim, cnt, match});
    }
    r.field("all_ok", all_ok);
    emit(r, g);
    if (!all_ok) throw AssertionFailure("report found a failed check");
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    json err{{"schema", 1}, {"error", "usage"}, {"message", e.what()}};
    std::cerr << err.dump() << '\n';
    return kExitInput;
  }
  return kExitOk;
}

int main(int argc, char** argv) {
  auto fail = [](const char* kind, const std::string& msg, int code) {
    json err{{"schema", 1}, {"error", kind}, {"message", msg}};
    std::cerr << err.dump() << '\n';
    return code;
  };
  try {
    return run(argc, argv);
  } catch (const AssertionFailure& e) {
    return fail("assertion_failure", e.what(), kExitAssertion);
  } catch (const BudgetExhausted& e) {
    return fail("budget_exhausted", e.what(), kExitBudget);
  } catch (const DecodeError& e) {
    return fail("decode_error", e.what(), kExitInput);
  } catch (const NotTypeIError& e) {
    return fail("not_type_one", e.what(), kExitInput);
  } catch (const ParseError& e) {
    return fail("parse_error", e.what(), kExitInput);
  } catch (const DomainError& e) {
    return fail("domain_error", e.what(), kExitInput);
  } catch (const std::exception& e) {
    return fail("input_error", e.what(), kExitInput);
  }
}
