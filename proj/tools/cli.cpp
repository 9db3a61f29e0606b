#include "nlsg/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <thread>

#include "nlsg/basegraph.hpp"
#include "nlsg/construction.hpp"
#include "nlsg/cotype.hpp"
#include "nlsg/errors.hpp"
#include "nlsg/formats.hpp"
#include "nlsg/graph_ops.hpp"
#include "nlsg/poincare.hpp"
#include "nlsg/random.hpp"
#include "nlsg/spectral.hpp"
#include "nlsg/verify.hpp"

namespace nlsg {

namespace {

std::size_t parse_size(const std::string& text, const std::string& what) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != text.size()) throw UsageError("bad " + what + " '" + text + "'");
  return static_cast<std::size_t>(v);
}

std::vector<std::string> split_on(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, sep);) out.push_back(item);
  return out;
}

std::vector<std::size_t> size_list(const std::string& text) {
  std::vector<std::size_t> out;
  for (double x : parse_list(text)) {
    if (x < 0 || x != std::floor(x)) throw UsageError("expected non-negative integers in '" + text + "'");
    out.push_back(static_cast<std::size_t>(x));
  }
  return out;
}

std::uint64_t env_seed() {
  const char* s = std::getenv("NLSG_SEED");
  if (s == nullptr || *s == '\0') return 1;
  return parse_size(s, "NLSG_SEED");
}

std::string error_name(const std::exception& e) {
#define NLSG_NAME(T) \
  if (dynamic_cast<const T*>(&e)) return #T;
  NLSG_NAME(NonRegular)
  NLSG_NAME(InvalidGraph)
  NLSG_NAME(IncompatibleSizes)
  NLSG_NAME(DegreeCapExceeded)
  NLSG_NAME(DegreeTooSmall)
  NLSG_NAME(Disconnected)
  NLSG_NAME(EnumerationTooLarge)
  NLSG_NAME(ConvergenceFailure)
  NLSG_NAME(ArithmeticOverflow)
  NLSG_NAME(NoCodeFound)
  NLSG_NAME(TooLarge)
  NLSG_NAME(NotCayley)
  NLSG_NAME(PlanInfeasible)
  NLSG_NAME(EmptyTruncation)
  NLSG_NAME(TriangleViolation)
  NLSG_NAME(ParseError)
#undef NLSG_NAME
  return "Error";
}

std::string hex64(std::uint64_t x) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, x >>= 4) s[i] = digits[x & 15];
  return s;
}

std::string witness_hash(const PoincareEstimate& e) {
  if (!e.witness) return "";
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](const std::vector<std::uint32_t>& v) {
    for (auto x : v)
      for (int b = 0; b < 4; ++b) {
        h ^= (x >> (8 * b)) & 0xff;
        h *= 1099511628211ull;
      }
  };
  mix(e.witness->f);
  mix(e.witness->g);
  return hex64(h);
}

const char* kind_name(EstimateKind k) { return k == EstimateKind::Exact ? "exact" : "lower_bound"; }

// Output goes to --out when given, otherwise to the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw UsageError("cannot write " + path);
    }
    out_ = file_ ? file_.get() : &fallback;
  }
  std::ostream& operator*() { return *out_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* out_;
};

struct Common {
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::string out;
};

struct ProductArgs {
  std::string op;
  std::vector<std::string> graphs;
  std::size_t t = 2;
  std::size_t degree = 0;
  std::size_t cap = kDefaultPortCap;
  bool edge_list = false;
};

int cmd_product(const ProductArgs& a, const Common& c, std::ostream& out) {
  auto need = [&](std::size_t k) {
    if (a.graphs.size() != k) throw UsageError(a.op + " takes " + std::to_string(k) + " graph(s)");
  };
  std::vector<Multigraph> g;
  for (const auto& s : a.graphs) g.push_back(resolve_graph(s, c.seed));
  Multigraph r;
  if (a.op == "zigzag") {
    need(2);
    r = zigzag(g[0], g[1]);
  } else if (a.op == "replacement") {
    need(2);
    r = replacement(g[0], g[1]);
  } else if (a.op == "tensor") {
    need(2);
    r = tensor(g[0], g[1]);
  } else if (a.op == "power") {
    need(1);
    r = power(g[0], a.t, a.cap);
  } else if (a.op == "cesaro") {
    need(1);
    r = cesaro(g[0], a.t, a.cap);
  } else if (a.op == "complete") {
    need(1);
    r = edge_complete(g[0], a.degree);
  } else if (a.op == "finish9") {
    need(1);
    r = finish_degree9(g[0]).graph;
  } else if (a.op == "finish3") {
    need(1);
    r = finish_degree3(g[0]);
  } else {
    throw UsageError("unknown product '" + a.op + "'");
  }
  Sink sink(c.out, out);
  a.edge_list ? write_edge_list(*sink, r) : write_graph(*sink, r);
  return 0;
}

int cmd_spectrum(const std::vector<std::string>& graphs, std::size_t dense_limit, const Common& c, std::ostream& out) {
  Sink sink(c.out, out);
  CsvWriter csv(*sink, {"graph", "n", "d", "lambda2", "lambda", "gamma", "gamma_plus"});
  for (const auto& s : graphs) {
    Multigraph g = resolve_graph(s, c.seed);
    SpectralReport r = spectrum(g, dense_limit);
    csv << s << g.vertices() << g.degree() << r.lambda2 << r.lambda << r.gamma << r.gamma_plus;
    csv.end_row();
  }
  return 0;
}

struct GammaArgs {
  std::string graph;
  std::string kernel = "two-point";
  double p = 2.0;
  bool exact = false;
  bool search = false;
  bool plain = false;
  bool timing = false;
  std::size_t restarts = 16;
  std::uint64_t cap = std::uint64_t{1} << 34;
};

KernelSpace parse_kernel(const std::string& spec, double p) {
  auto parts = split_on(spec, ':');
  if (spec == "two-point") return two_point_kernel();
  if (parts.size() == 2 && parts[0] == "uniform") return uniform_kernel(parse_size(parts[1], "point count"));
  if (parts.size() == 2 && parts[0] == "line") {
    std::size_t k = parse_size(parts[1], "point count");
    std::vector<std::vector<double>> pts;
    for (std::size_t i = 0; i < k; ++i) pts.push_back({static_cast<double>(i)});
    KernelSpace ks = metric_power_kernel(pts, p);
    ks.label = "line:" + parts[1] + "^" + format_number(p);
    return ks;
  }
  if (parts.size() == 2 && parts[0] == "cube") {
    // {0,1}^k under the Hamming metric.
    std::size_t k = parse_size(parts[1], "dimension");
    if (k > 4) throw UsageError("cube kernels stop at dimension 4");
    std::vector<std::vector<double>> pts;
    for (std::size_t x = 0; x < (std::size_t{1} << k); ++x) {
      std::vector<double> v;
      for (std::size_t b = 0; b < k; ++b) v.push_back(static_cast<double>((x >> b) & 1));
      pts.push_back(v);
    }
    KernelSpace ks = metric_power_kernel(pts, p, 1.0);
    ks.label = "cube:" + parts[1] + "^" + format_number(p);
    return ks;
  }
  throw UsageError("unknown kernel '" + spec + "' (two-point, uniform:K, line:K, cube:K, log-linf)");
}

int cmd_gamma(const GammaArgs& a, const Common& c, std::ostream& out) {
  if (a.exact && a.search) throw UsageError("--exact and --search are exclusive");
  Multigraph g = resolve_graph(a.graph, c.seed);
  auto start = std::chrono::steady_clock::now();
  PoincareEstimate e;
  std::string label;
  if (a.kernel == "log-linf") {
    if (a.exact || a.plain) throw UsageError("the log-linf kernel only supports the embedding lower bound");
    e = frechet_lower_bound(g, a.p);
    label = "log-linf^" + format_number(a.p);
  } else {
    KernelSpace k = parse_kernel(a.kernel, a.p);
    label = k.label;
    StochasticMatrix m = normalized_adjacency(g);
    if (a.search) {
      SearchOptions so;
      so.restarts = a.restarts;
      so.seed = c.seed;
      e = a.plain ? gamma_search(m, k, so) : gamma_plus_search(m, k, so);
    } else {
      ExactOptions ex;
      ex.cap = a.cap;
      ex.workers = c.workers;
      e = a.plain ? gamma_exact(m, k, ex) : gamma_plus_exact(m, k, ex);
    }
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Sink sink(c.out, out);
  CsvWriter csv(*sink, {"graph", "kernel", "kind", "value", "seconds", "witness_hash"});
  csv << a.graph << label << kind_name(e.kind) << e.value << (a.timing ? format_number(secs) : std::string())
      << witness_hash(e);
  csv.end_row();
  return 0;
}

struct CotypeArgs {
  std::size_t count = 1000;
  SweepLimits limits;
  bool decay = false;
};

int cmd_cotype(const CotypeArgs& a, const Common& c, std::ostream& out) {
  Sink sink(c.out, out);
  std::vector<std::string> header{"seed",      "n",          "degree",     "m",
                                  "k",         "family",     "minimal_c2", "binding",
                                  "degenerate", "displacement_holds"};
  if (a.decay) header.insert(header.end(), {"gamma", "gamma_cesaro", "decay_bound", "decay_holds"});
  CsvWriter csv(*sink, header);
  bool ok = true;
  for (std::size_t i = 0; i < a.count; ++i) {
    std::uint64_t seed = derive_seed(c.seed, i);
    Rng rng(seed);
    CotypeSample s = random_cotype_sample(rng, a.limits);
    ok = ok && s.report.displacement_holds;
    csv << std::to_string(seed) << s.n << s.degree << s.report.m << s.dim << s.family << s.report.minimal_c2
        << s.report.binding << s.report.degenerate << s.report.displacement_holds;
    if (a.decay) {
      DecayReport d = decay_check(normalized_adjacency(s.graph), s.report.m, kFrozenC2);
      ok = ok && d.holds;
      csv << d.gamma_a << d.gamma_cesaro << d.bound << d.holds;
    }
    csv.end_row();
  }
  return ok ? 0 : 1;
}

struct BaseArgs {
  std::size_t n = 10;
  double t = 0.1;
  std::size_t pairs = 100;
  std::string graph_out;
  std::string code_out;
  std::string report;
};

int cmd_basegraph(const BaseArgs& a, const Common& c, std::ostream& out) {
  BaseGraphReport r = build_base(a.n, a.t, c.seed, a.pairs);
  if (!a.graph_out.empty()) save_graph(a.graph_out, r.base);
  if (!a.code_out.empty()) save_code(a.code_out, r.code.code);
  Sink sink(c.out, out);
  std::vector<std::string> header{"n",      "code_dim", "dual_dim",  "m",        "t",
                                  "tau",    "vertices", "degree",    "lambda",   "gamma_plus_spectral",
                                  "gamma_plus_bound"};
  for (const auto& [name, e] : r.search_bounds) header.push_back("gamma_plus " + name);
  header.insert(header.end(), {"sandwich_min", "sandwich_max", "fourier_tail", "degree_preserved", "feasible"});
  CsvWriter csv(*sink, header);
  csv << r.n << r.code.code.dimension() << r.dual_code.dimension() << r.code.distance << r.t << r.truncation.tau
      << r.base.vertices() << r.base.degree() << r.spectral.lambda << r.spectral.gamma_plus
      << r.norm.gamma_plus_bound;
  for (const auto& [name, e] : r.search_bounds) csv << e.value;
  csv << r.sandwich_min << r.sandwich_max << r.fourier_tail << r.degree_preserved << r.truncation.feasible;
  csv.end_row();
  if (!a.report.empty()) {
    std::ofstream rep(a.report);
    if (!rep) throw UsageError("cannot write " + a.report);
    rep << "base graph on F_2^" << r.n << " / C_perp, t = " << format_number(r.t) << ", seed " << r.seed << "\n"
        << "code: dimension " << r.code.code.dimension() << ", distance " << r.code.distance << ", "
        << r.code.attempts << " attempts\n"
        << "truncation: weights <= " << r.truncation.max_weight << " (cutoff " << format_number(r.truncation.cutoff)
        << "), degree " << r.truncation.degree << ", analytic bound " << format_number(r.truncation.degree_bound)
        << "\n"
        << "quotient: " << r.base.vertices() << " vertices, degree " << r.base.degree() << "\n"
        << "lambda " << format_number(r.spectral.lambda) << ", spectral gamma_plus "
        << format_number(r.spectral.gamma_plus) << ", bound 8^p (1 - lambda)^-p = "
        << format_number(r.norm.gamma_plus_bound) << "\n"
        << "sandwich ratios in [" << format_number(r.sandwich_min) << ", " << format_number(r.sandwich_max)
        << "] over " << r.sandwich_ratios.size() << " pairs\n"
        << "largest low-weight Fourier coefficient " << format_number(r.fourier_tail) << "\n";
    for (const auto& w : r.truncation.warnings) rep << "warning: " << w << "\n";
  }
  bool ok = r.degree_preserved && r.sandwich_min >= 1.0 / 3.0 && r.sandwich_max <= 3.0 && r.fourier_tail < 1e-12;
  return ok ? 0 : 1;
}

std::string plan_get(const KeyValues& kv, const std::string& key, const std::string& fallback) {
  auto it = kv.find(key);
  return it == kv.end() ? fallback : it->second;
}

int cmd_construct(const std::string& plan_path, const Common& c, std::ostream& out) {
  std::ifstream in(plan_path);
  if (!in) throw UsageError("cannot open " + plan_path);
  KeyValues kv = read_key_values(in);
  static const std::vector<std::string> known{"mode", "base", "t0", "depth", "cap", "seed", "search_max_vertices",
                                              "restarts", "export", "export_format", "families", "c", "eps",
                                              "build"};
  for (const auto& [k, v] : kv)
    if (std::find(known.begin(), known.end(), k) == known.end()) throw UsageError("unknown plan key '" + k + "'");
  std::string mode = plan_get(kv, "mode", "");
  std::uint64_t seed = kv.count("seed") ? parse_size(kv["seed"], "seed") : c.seed;
  std::size_t t0 = parse_size(plan_get(kv, "t0", "2"), "t0");
  std::size_t depth = parse_size(plan_get(kv, "depth", "2"), "depth");
  std::size_t cap = parse_size(plan_get(kv, "cap", std::to_string(1u << 24)), "cap");
  // Graph files in a plan are looked up next to the plan first.
  auto plan_dir = std::filesystem::path(plan_path).parent_path();
  auto graph_source = [&](const std::string& s) {
    std::filesystem::path rel(s);
    if (s.find(':') == std::string::npos && rel.is_relative() && std::filesystem::exists(plan_dir / rel))
      return (plan_dir / rel).string();
    return s;
  };
  auto base = [&]() {
    if (!kv.count("base")) throw UsageError("plan needs 'base'");
    return resolve_graph(graph_source(kv["base"]), seed);
  };
  Sink sink(c.out, out);
  std::optional<Multigraph> result;
  bool ok = true;
  if (mode == "classical") {
    RvwReport r = rvw_iterate(base(), t0, depth, cap);
    CsvWriter csv(*sink, {"level", "vertices", "degree", "lambda", "predicted", "within_bound", "gamma_plus",
                          "method", "base_lambda", "threshold"});
    for (const auto& l : r.levels) {
      ok = ok && l.within_bound && (!r.base_meets_threshold || l.lambda <= 0.5);
      csv << l.level << l.vertices << l.degree << l.lambda << l.predicted << l.within_bound << l.gamma_plus << l.method
          << r.base_lambda << r.threshold;
      csv.end_row();
    }
    if (kv.count("export")) {
      Multigraph g = power(base(), 2, cap);
      Multigraph h = base();
      for (std::size_t i = 1; i < depth; ++i) g = zigzag(power(g, t0, cap), h);
      result = g;
    }
  } else if (mode == "cesaro") {
    SuperOptions so;
    so.t0 = t0;
    so.depth = depth;
    so.cap = cap;
    so.seed = seed;
    so.search_max_vertices = parse_size(plan_get(kv, "search_max_vertices", "1024"), "search_max_vertices");
    so.restarts = parse_size(plan_get(kv, "restarts", "4"), "restarts");
    Multigraph b = base();
    auto levels = super_iterate(b, so);
    CsvWriter csv(*sink, {"level", "vertices", "degree", "gamma_plus", "gamma_plus_cesaro", "gamma_plus_completed",
                          "recursive_bound", "within_bound", "search_two_point", "search_three_point"});
    for (const auto& l : levels) {
      ok = ok && l.within_bound;
      csv << l.level << l.vertices << l.degree << l.gamma_plus << l.gamma_plus_cesaro << l.gamma_plus_completed
          << l.recursive_bound << l.within_bound;
      for (std::size_t i = 0; i < 2; ++i) csv << (i < l.search.size() ? format_number(l.search[i].second.value) : "");
      csv.end_row();
    }
    if (kv.count("export")) result = super_family(b, t0, depth, cap).back();
  } else if (mode == "diagonal") {
    auto sources = split_on(plan_get(kv, "families", ""), ';');
    std::vector<double> cs = parse_list(plan_get(kv, "c", "")), eps = parse_list(plan_get(kv, "eps", ""));
    std::vector<std::vector<Multigraph>> fams;
    FamilyTable table;
    for (const auto& s : sources) {
      fams.push_back(super_family(resolve_graph(graph_source(s), seed), t0, depth, cap));
      std::vector<std::size_t> sizes;
      for (const auto& g : fams.back()) sizes.push_back(g.vertices());
      table.sizes.push_back(sizes);
      table.degrees.push_back(fams.back().back().degree());
      // Levels 1.. share the degree d0^2; level 0 is the base itself.
      fams.back().erase(fams.back().begin());
      table.sizes.back().erase(table.sizes.back().begin());
    }
    DiagonalPlan plan = plan_diagonalization(table, cs, eps);
    CsvWriter csv(*sink, {"k", "m_k", "j_k", "i", "h", "completion_degree", "vertices", "degree"});
    for (const auto& e : plan.entries)
      for (const auto& st : e.steps) {
        csv << e.k << plan.m[e.k - 1] << plan.j[e.k - 1] << st.i << st.h << st.completion_degree << st.vertices
            << st.degree;
        csv.end_row();
      }
    if (plan_get(kv, "build", "false") == "true") {
      auto built = diagonalize(fams, cs, eps, cap);
      if (kv.count("export")) result = built.back();
    }
  } else if (mode == "finish9") {
    FinishReport r = finish_degree9(base());
    CsvWriter csv(*sink, {"vertices", "degree", "gamma_plus_h", "gamma_plus_cycle", "cycle_bound", "gamma_plus_out",
                          "bound", "holds"});
    csv << r.graph.vertices() << r.graph.degree() << r.gamma_plus_h << r.gamma_plus_cycle << r.cycle_bound
        << r.gamma_plus_out << r.bound << r.holds;
    csv.end_row();
    ok = r.holds;
    result = r.graph;
  } else if (mode == "finish3") {
    Multigraph g = finish_degree3(base());
    CsvWriter csv(*sink, {"vertices", "degree"});
    csv << g.vertices() << g.degree();
    csv.end_row();
    result = g;
  } else {
    throw UsageError("plan mode must be classical, cesaro, diagonal, finish9 or finish3");
  }
  if (kv.count("export") && result) save_graph(kv["export"], *result, plan_get(kv, "export_format", "graph") == "edges");
  return ok ? 0 : 1;
}

struct CounterArgs {
  std::string sizes = "6..12";
  std::string t = "1,2,4,8";
  std::size_t degree = 4;
  std::size_t samples = 3;
  double p = 2.0;
  std::string fits;
};

int cmd_counterexample(const CounterArgs& a, const Common& c, std::ostream& out) {
  std::vector<std::size_t> sizes;
  for (std::size_t e : size_list(a.sizes)) {
    if (e >= 24) throw UsageError("size exponents stop at 23");
    sizes.push_back(std::size_t{1} << e);
  }
  CounterexampleReport r = counterexample_experiment(sizes, size_list(a.t), a.degree, a.samples, c.seed, a.p);
  Sink sink(c.out, out);
  CsvWriter csv(*sink, {"n", "t", "frechet_bound", "graph_frechet_bound", "log_n", "spectral_gamma_plus"});
  for (const auto& row : r.rows) {
    csv << row.n << row.t << row.frechet_bound << row.graph_frechet_bound << row.log_n << row.spectral_gamma_plus;
    csv.end_row();
  }
  bool ok = true;
  for (const auto& f : r.fits) ok = ok && f.monotone;
  if (!a.fits.empty()) {
    std::ofstream fo(a.fits);
    if (!fo) throw UsageError("cannot write " + a.fits);
    CsvWriter fc(fo, {"t", "slope", "intercept", "r2", "monotone"});
    for (const auto& f : r.fits) {
      fc << f.t << f.slope << f.intercept << f.r2 << f.monotone;
      fc.end_row();
    }
  }
  return ok ? 0 : 1;
}

std::vector<NamedGraph> load_corpus(const std::string& dir) {
  if (dir.empty()) return default_corpus();
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file()) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<NamedGraph> out;
  for (const auto& f : files) out.emplace_back(f.stem().string(), load_graph(f.string()));
  if (out.empty()) throw UsageError("corpus directory " + dir + " holds no graphs");
  return out;
}

int cmd_verify(const std::string& suite, const std::string& corpus_dir, std::size_t instances, const Common& c,
               std::ostream& out) {
  VerifyOptions vo;
  vo.instances = instances;
  vo.seed = c.seed;
  vo.workers = c.workers;
  auto results = run_suite(suite, load_corpus(corpus_dir), vo);
  Sink sink(c.out, out);
  CsvWriter csv(*sink, {"suite", "check", "instances", "failures", "worst_margin", "status", "note"});
  bool ok = true;
  for (const auto& r : results) {
    ok = ok && r.pass();
    csv << r.suite << r.check << r.instances << r.failures << r.worst_margin << (r.pass() ? "PASS" : "FAIL") << r.note;
    csv.end_row();
  }
  return ok ? 0 : 1;
}

}  // namespace

Multigraph resolve_graph(const std::string& source, unsigned long long default_seed) {
  auto parts = split_on(source, ':');
  if (parts.size() >= 2) {
    const std::string& kind = parts[0];
    if (kind == "random" && (parts.size() == 3 || parts.size() == 4)) {
      std::uint64_t seed = parts.size() == 4 ? parse_size(parts[3], "seed") : default_seed;
      Rng rng(seed);
      return random_regular(parse_size(parts[1], "vertex count"), parse_size(parts[2], "degree"), rng);
    }
    if (parts.size() == 2) {
      if (kind == "cycle") return cycle(parse_size(parts[1], "cycle length"));
      if (kind == "cycle-loops") return cycle_with_loops(parse_size(parts[1], "cycle length"));
      if (kind == "complete-loops") return complete_with_loops(parse_size(parts[1], "vertex count"));
      if (kind == "corpus") {
        for (auto& [name, g] : default_corpus())
          if (name == parts[1]) return g;
        throw UsageError("no corpus graph named '" + parts[1] + "'");
      }
    }
  }
  if (!std::filesystem::exists(source)) throw UsageError("no graph file or generator '" + source + "'");
  return load_graph(source);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Expander and Poincare-constant toolkit"};
  app.require_subcommand(1);
  Common common;
  common.workers = std::max(1u, std::thread::hardware_concurrency());
  std::string seed_text;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", seed_text, "Root seed (default: $NLSG_SEED or 1)");
    sub->add_option("--workers", common.workers, "Worker threads for exhaustive searches")->check(CLI::PositiveNumber);
    sub->add_option("--out", common.out, "Write the output here instead of stdout");
  };

  ProductArgs pa;
  auto* product = app.add_subcommand("product", "Graph products and operations; writes nlsg-graph v1");
  product->add_option("op", pa.op, "zigzag, replacement, tensor, power, cesaro, complete, finish9, finish3")
      ->required();
  product->add_option("graphs", pa.graphs, "Graph files or generators")->required();
  product->add_option("--t", pa.t, "Walk length for power, Cesaro parameter for cesaro");
  product->add_option("--degree", pa.degree, "Target degree for complete");
  product->add_option("--cap", pa.cap, "Largest number of ports allowed");
  product->add_flag("--edge-list", pa.edge_list, "Write an edge list instead");
  add_common(product);

  std::vector<std::string> spec_graphs;
  std::size_t dense_limit = kDenseLimit;
  auto* spec = app.add_subcommand("spectrum", "Eigenvalue report, one CSV row per graph");
  spec->add_option("graphs", spec_graphs, "Graph files or generators")->required();
  spec->add_option("--dense-limit", dense_limit, "Largest size for the dense eigensolver");
  add_common(spec);

  GammaArgs ga;
  auto* gamma = app.add_subcommand("gamma", "Poincare constants against a finite kernel");
  gamma->add_option("graph", ga.graph, "Graph file or generator")->required();
  gamma->add_option("--kernel", ga.kernel, "two-point, uniform:K, line:K, cube:K or log-linf");
  gamma->add_option("--p", ga.p, "Kernel exponent")->check(CLI::PositiveNumber);
  gamma->add_flag("--exact", ga.exact, "Exhaustive enumeration (default)");
  gamma->add_flag("--search", ga.search, "Local-search lower bound");
  gamma->add_flag("--plain", ga.plain, "gamma instead of gamma_plus");
  gamma->add_flag("--timing", ga.timing, "Fill the seconds column");
  gamma->add_option("--restarts", ga.restarts, "Search restarts");
  gamma->add_option("--cap", ga.cap, "Enumeration cap");
  add_common(gamma);

  CotypeArgs ca;
  auto* cot = app.add_subcommand("cotype", "Randomised metric Markov cotype sweep");
  cot->add_option("--count", ca.count, "Instances");
  cot->add_option("--max-n", ca.limits.max_n, "Largest graph")->check(CLI::Range(2, 4096));
  cot->add_option("--max-m", ca.limits.max_m, "Largest Cesaro parameter")->check(CLI::Range(2, 4096));
  cot->add_option("--max-k", ca.limits.max_k, "Largest point dimension")->check(CLI::Range(1, 64));
  cot->add_option("--max-degree", ca.limits.max_degree, "Largest degree")->check(CLI::Range(1, 64));
  cot->add_flag("--decay", ca.decay, "Also check the Cesaro decay bound with the frozen constant");
  add_common(cot);

  BaseArgs ba;
  auto* base = app.add_subcommand("basegraph", "Base graph from a good code and the truncated heat kernel");
  base->add_option("--n", ba.n, "Cube dimension")->check(CLI::Range(1, 14));
  base->add_option("--t", ba.t, "Heat time")->check(CLI::PositiveNumber);
  base->add_option("--pairs", ba.pairs, "Random pairs for the noise sandwich");
  base->add_option("--graph-out", ba.graph_out, "Write the base graph");
  base->add_option("--code-out", ba.code_out, "Write the code");
  base->add_option("--report", ba.report, "Write a text certification report");
  add_common(base);

  std::string plan_path;
  auto* cons = app.add_subcommand("construct", "Run a construction plan (key = value file)");
  cons->add_option("plan", plan_path, "Plan file")->required();
  add_common(cons);

  CounterArgs xa;
  auto* cex = app.add_subcommand("counterexample", "Frechet bounds for Cesaro graphs of random expanders");
  cex->add_option("--sizes", xa.sizes, "Exponents of two, e.g. 6..12");
  cex->add_option("--t", xa.t, "Walk lengths, e.g. 1,2,4,8");
  cex->add_option("--degree", xa.degree, "Degree of the random graphs");
  cex->add_option("--samples", xa.samples, "Graphs averaged per size")->check(CLI::PositiveNumber);
  cex->add_option("--p", xa.p, "Kernel exponent")->check(CLI::PositiveNumber);
  cex->add_option("--fits", xa.fits, "Write the growth fits as CSV");
  add_common(cex);

  std::string suite = "all", corpus_dir;
  std::size_t instances = 50;
  auto* ver = app.add_subcommand("verify", "Inequality suites with a pass/fail table");
  ver->add_option("--suite", suite, "all, zigzag, sandwich, cotype, basegraph, linear, finisher, rvw, counterexample");
  ver->add_option("--corpus", corpus_dir, "Directory of graph files (default: built-in corpus)");
  ver->add_option("--instances", instances, "Random instances per check")->check(CLI::PositiveNumber);
  add_common(ver);

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  try {
    common.seed = seed_text.empty() ? env_seed() : parse_size(seed_text, "seed");
    if (product->parsed()) return cmd_product(pa, common, out);
    if (spec->parsed()) return cmd_spectrum(spec_graphs, dense_limit, common, out);
    if (gamma->parsed()) return cmd_gamma(ga, common, out);
    if (cot->parsed()) return cmd_cotype(ca, common, out);
    if (base->parsed()) return cmd_basegraph(ba, common, out);
    if (cons->parsed()) return cmd_construct(plan_path, common, out);
    if (cex->parsed()) return cmd_counterexample(xa, common, out);
    if (ver->parsed()) return cmd_verify(suite, corpus_dir, instances, common, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << error_name(e) << ": " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace nlsg
