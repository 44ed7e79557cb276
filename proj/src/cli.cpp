#include "syncnet/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fmt/format.h>
#include <fmt/ranges.h>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "syncnet/coupling_design.hpp"
#include "syncnet/error.hpp"
#include "syncnet/graph.hpp"
#include "syncnet/io.hpp"
#include "syncnet/netsim.hpp"
#include "syncnet/numerics.hpp"
#include "syncnet/spectrum.hpp"
#include "syncnet/sync_region.hpp"

namespace syncnet::cli {

namespace fs = std::filesystem;

namespace {

std::string num(double x) { return fmt::format("{:.12g}", x); }

std::string join_nums(std::span<const double> v, std::string_view sep = " ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += num(v[i]);
  }
  return s;
}

class CsvWriter {
 public:
  explicit CsvWriter(std::string header) { buf_ << header << '\n'; }
  template <class... Ts>
  void row(const Ts&... cols) {
    std::size_t i = 0;
    ((buf_ << (i++ ? "," : "") << cols), ...);
    buf_ << '\n';
  }
  void raw(const std::string& line) { buf_ << line << '\n'; }
  void save(const fs::path& path) const { io::write_text(path, buf_.str()); }

 private:
  std::ostringstream buf_;
};

void require(bool cond, const std::string& what) {
  if (!cond) throw Error(Errc::InvalidArgument, what);
}

fs::path out_dir(const RunConfig& cfg) {
  fs::path dir(cfg.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(Errc::Parse, "cannot create output directory " + dir.string());
  return dir;
}

Graph load_graph(const RunConfig& cfg) {
  require(!cfg.graph.empty(), "--graph is required");
  return io::read_graph_file(cfg.graph);
}

Matrix load_square(const std::string& path, const char* flag) {
  require(!path.empty(), std::string(flag) + " is required");
  Matrix m = io::read_matrix_file(path);
  if (!m.square()) throw Error(Errc::DimensionMismatch, std::string(flag) + " must be square");
  return m;
}

// Complement facts about G: λ_N = N iff Gᶜ disconnected, multiplicity of N is q - 1.
struct ComplementFacts {
  std::size_t q = 0;
  bool lambda_n_is_n = false;
  int multiplicity_n = 0;
};

ComplementFacts complement_facts(const Graph& g, const LaplacianSpectrum& s) {
  ComplementFacts f;
  f.q = connected_components(complement(g)).size();
  const double n = g.node_count();
  f.multiplicity_n = s.multiplicity(n);
  f.lambda_n_is_n = f.multiplicity_n > 0;
  return f;
}

// ---------------------------------------------------------------- analyze

int cmd_analyze(const RunConfig& cfg, std::ostream& out) {
  const Graph g = load_graph(cfg);
  const fs::path dir = out_dir(cfg);
  const auto s = spectrum(g);
  const bool connected = is_connected(g);
  const auto degrees = degree_sequence(g);
  const auto clus = clustering(g);
  const auto facts = complement_facts(g, s);

  CsvWriter summary("quantity,value");
  CsvWriter nodes("node,degree,clustering,betweenness");
  CsvWriter spec_csv("index,lambda");

  out << fmt::format("graph: n={} edges={} connected={}\n", g.node_count(), g.edge_count(), connected ? "yes" : "no");
  out << fmt::format("degree sequence: {}\n", fmt::join(degrees, " "));
  summary.row("n", g.node_count());
  summary.row("edges", g.edge_count());
  summary.row("connected", connected ? 1 : 0);

  std::vector<double> bc;
  if (connected) {
    const Rational ad = average_distance(g);
    bc = betweenness(g);
    out << fmt::format("average distance: {}/{} ({})\n", ad.num, ad.den, num(ad.value()));
    out << fmt::format("betweenness (ordered pairs): {}\n", join_nums(bc));
    summary.row("average_distance_num", ad.num);
    summary.row("average_distance_den", ad.den);
    summary.row("average_distance", num(ad.value()));
    summary.row("max_betweenness", num(*std::max_element(bc.begin(), bc.end())));
  } else {
    out << "average distance: n/a (disconnected)\nbetweenness: n/a (disconnected)\n";
  }
  out << fmt::format("mean clustering: {}\n", num(clus.mean));
  out << fmt::format("spectrum: {}\n", join_nums(s.values));
  out << fmt::format("lambda_2 = {}, lambda_N = {}, r = {}\n", num(s.lambda2), num(s.lambdaN), num(s.ratio));
  out << fmt::format("complement: q = {} component(s)\n", facts.q);
  out << fmt::format("lambda_N = N: {} (complement disconnected: {})\n", facts.lambda_n_is_n ? "yes" : "no",
                     facts.q > 1 ? "yes" : "no");
  out << fmt::format("multiplicity of N: {} (predicted q - 1 = {})\n", facts.multiplicity_n, facts.q - 1);

  summary.row("mean_clustering", num(clus.mean));
  summary.row("lambda2", num(s.lambda2));
  summary.row("lambdaN", num(s.lambdaN));
  summary.row("ratio", num(s.ratio));
  summary.row("complement_components", facts.q);
  summary.row("lambdaN_equals_N", facts.lambda_n_is_n ? 1 : 0);
  summary.row("multiplicity_N", facts.multiplicity_n);
  summary.row("predicted_multiplicity_N", facts.q - 1);
  for (int v = 0; v < g.node_count(); ++v) {
    nodes.row(v + 1, degrees[v], num(clus.per_node[v]), connected ? num(bc[v]) : std::string("nan"));
  }
  for (std::size_t i = 0; i < s.values.size(); ++i) spec_csv.row(i + 1, num(s.values[i]));

  summary.save(dir / "analyze.csv");
  nodes.save(dir / "analyze_nodes.csv");
  spec_csv.save(dir / "analyze_spectrum.csv");
  return kOk;
}

// ---------------------------------------------------------------- complement

int cmd_complement(const RunConfig& cfg, std::ostream& out) {
  const Graph g = load_graph(cfg);
  const fs::path dir = out_dir(cfg);
  const Graph gc = complement(g);
  const auto s = spectrum(g);
  const auto sc = spectrum(gc);
  const auto facts = complement_facts(g, s);
  const auto n = static_cast<std::size_t>(g.node_count());

  // λ_i(Gᶜ) = N - λ_{N-i+2}(G) for 2 ≤ i ≤ N (1-indexed).
  double residual = 0.0;
  CsvWriter csv("index,lambda_G,lambda_complement,dual_prediction");
  for (std::size_t i = 1; i <= n; ++i) {
    std::string pred = "nan";
    if (i >= 2) {
      const double p = static_cast<double>(n) - s.values[n - i + 1];
      residual = std::max(residual, std::abs(sc.values[i - 1] - p));
      pred = num(p);
    }
    csv.row(i, num(s.values[i - 1]), num(sc.values[i - 1]), pred);
  }
  csv.raw(fmt::format("# components={},duality_residual={}", facts.q, num(residual)));

  std::string edges;
  for (auto [i, j] : gc.edges()) edges += fmt::format(" {}-{}", i, j);
  out << fmt::format("complement edges ({}):{}\n", gc.edge_count(), edges);
  out << fmt::format("complement components: q = {}\n", facts.q);
  out << fmt::format("spectrum G:  {}\n", join_nums(s.values));
  out << fmt::format("spectrum Gc: {}\n", join_nums(sc.values));
  out << fmt::format("duality residual max_i |lambda_i(Gc) - (N - lambda_(N-i+2)(G))| = {}\n", num(residual));
  out << fmt::format("lambda_N = N: {}, multiplicity {} (predicted q - 1 = {})\n", facts.lambda_n_is_n ? "yes" : "no",
                     facts.multiplicity_n, facts.q - 1);

  io::write_text(dir / "complement_graph.json", io::graph_to_json_text(gc));
  csv.save(dir / "complement.csv");
  return kOk;
}

// ---------------------------------------------------------------- edge-sweep

int cmd_edge_sweep(const RunConfig& cfg, std::ostream& out) {
  Graph g = load_graph(cfg);
  require(!cfg.add.empty(), "--add is required (one or more i,j pairs)");
  const fs::path dir = out_dir(cfg);
  const auto n = static_cast<std::size_t>(g.node_count());

  std::string header = "step,edge";
  for (std::size_t i = 1; i <= n; ++i) header += fmt::format(",lambda_{}", i);
  header += ",lambda2,lambdaN,ratio,monotone";
  CsvWriter csv(header);

  auto emit = [&](std::size_t step, const std::string& edge, const LaplacianSpectrum& s, const std::string& mono) {
    std::string line = fmt::format("{},{}", step, edge);
    for (double v : s.values) line += "," + num(v);
    line += fmt::format(",{},{},{},{}", num(s.lambda2), num(s.lambdaN), num(s.ratio), mono);
    csv.raw(line);
    out << fmt::format("{:>3} {:<8} r = {:<14} lambda_2 = {:<14} lambda_N = {:<14} {}\n", step, edge, num(s.ratio),
                       num(s.lambda2), num(s.lambdaN), mono);
  };

  LaplacianSpectrum prev = spectrum(g);
  emit(0, "-", prev, "-");
  for (std::size_t k = 0; k < cfg.add.size(); ++k) {
    const auto [i, j] = cfg.add[k];
    g = add_edge(g, i, j);
    const LaplacianSpectrum cur = spectrum(g);
    bool monotone = true;
    for (std::size_t m = 0; m < n; ++m) monotone = monotone && cur.values[m] >= prev.values[m] - 1e-9;
    emit(k + 1, fmt::format("{}-{}", i, j), cur, monotone ? "yes" : "no");
    prev = cur;
  }
  csv.save(dir / "edge_sweep.csv");
  return kOk;
}

// ---------------------------------------------------------------- region / check

RegionSet scan_and_save(const RunConfig& cfg, const Matrix& f, const Matrix& h, double sigma_max,
                        const fs::path& dir) {
  const RegionSet region = region_scan(f, h, RegionScanOptions{sigma_max, cfg.grid_step, cfg.boundary_tol, true});
  CsvWriter grid("sigma,hurwitz,abscissa");
  for (const auto& s : region.samples) grid.row(num(s.sigma), s.hurwitz ? 1 : 0, num(s.abscissa));
  grid.save(dir / "region_scan.csv");
  CsvWriter iv("lo,hi");
  for (const auto& i : region.intervals) iv.row(num(i.lo), num(i.hi));
  iv.raw(fmt::format("# classification={},stable_at_max={},sigma_max={}", to_string(region.classification),
                     region.stable_at_max ? 1 : 0, num(region.sigma_max)));
  iv.save(dir / "region_intervals.csv");
  return region;
}

void print_region(const RegionSet& region, std::ostream& out) {
  out << fmt::format("synchronized region on [0, {}] (sigma = c*lambda, test F - sigma*H):\n", num(region.sigma_max));
  if (region.intervals.empty()) out << "  (empty)\n";
  for (const auto& i : region.intervals) out << fmt::format("  [{}, {}]\n", num(i.lo), num(i.hi));
  out << fmt::format("classification: {}\n", to_string(region.classification));
  if (region.stable_at_max) {
    out << fmt::format("stable at sigma_max; spot checks at 10x and 100x sigma_max: {}\n",
                       region.tail_spot_checks ? "stable" : "UNSTABLE");
  }
}

int cmd_region(const RunConfig& cfg, std::ostream& out) {
  const Matrix f = load_square(cfg.F, "--F");
  const Matrix h = load_square(cfg.H, "--H");
  double sigma_max = cfg.sigma_max;
  if (sigma_max <= 0.0) {
    sigma_max = 10.0;
    if (!cfg.graph.empty() && cfg.c > 0.0) sigma_max = 3.0 * cfg.c * spectrum(load_graph(cfg)).lambdaN;
  }
  const RegionSet region = scan_and_save(cfg, f, h, sigma_max, out_dir(cfg));
  print_region(region, out);
  return region.intervals.empty() ? kVerdictFalse : kOk;
}

int cmd_check(const RunConfig& cfg, std::ostream& out) {
  const Graph g = load_graph(cfg);
  const Matrix f = load_square(cfg.F, "--F");
  const Matrix h = load_square(cfg.H, "--H");
  require(cfg.c > 0.0, "--c must be positive");
  const fs::path dir = out_dir(cfg);
  const auto s = spectrum(g);
  const double sigma_max = cfg.sigma_max > 0.0 ? cfg.sigma_max : std::max(3.0 * cfg.c * s.lambdaN, 1e-9);

  const RegionSet region = scan_and_save(cfg, f, h, sigma_max, dir);
  const CriterionReport rep = check_criterion(s, cfg.c, region);
  print_region(region, out);
  out << fmt::format("coupling c = {}\n", num(cfg.c));
  CsvWriter csv("k,lambda,sigma,in_region");
  for (std::size_t k = 0; k < rep.placements.size(); ++k) {
    const auto& p = rep.placements[k];
    out << fmt::format("  k={} lambda={} sigma={} {}\n", k + 2, num(p.lambda), num(p.sigma),
                       p.in_region ? "in S" : "NOT in S");
    csv.row(k + 2, num(p.lambda), num(p.sigma), p.in_region ? 1 : 0);
  }
  csv.raw(fmt::format("# verdict={}", rep.verdict ? 1 : 0));
  csv.save(dir / "check.csv");

  if (s.lambda2 > multiplicity_tolerance(s)) {
    const CouplingSet cs = admissible_couplings(s, region);
    out << "admissible couplings within the scan:";
    if (cs.intervals.empty()) out << " none";
    for (const auto& i : cs.intervals) out << fmt::format(" {}{}, {}]", i.lo == 0.0 ? "(" : "[", num(i.lo), num(i.hi));
    out << fmt::format("{}\n", cs.may_extend ? " (may extend beyond scan)" : "");
  }
  out << fmt::format("verdict: {}\n", rep.verdict ? "synchronized solution locally stable"
                                                  : "criterion violated (no local synchronization)");
  return rep.verdict ? kOk : kVerdictFalse;
}

// ---------------------------------------------------------------- design

int cmd_design(const RunConfig& cfg, std::ostream& out) {
  const Matrix f = load_square(cfg.F, "--F");
  const fs::path dir = out_dir(cfg);
  std::vector<double> b;
  if (!cfg.b.empty()) {
    b = io::read_vector_file(cfg.b);
    if (b.size() != f.rows()) throw Error(Errc::DimensionMismatch, "b must match F");
  } else {
    b = choose_b(f, cfg.seed);
  }

  const DesignResult d = design_rank1(f, b, cfg.q_scale);
  const std::vector<double> samples{1.0, 2.0, 10.0, 1e3, 1e6};
  const VerifyReport v = verify_design(f, d.H, samples, CertificateInput{d.b, d.P});

  out << fmt::format("b = ({})\n", join_nums(d.b, ", "));
  out << fmt::format("k = ({})\n", join_nums(d.k, ", "));
  out << fmt::format("beta = {}\n", num(d.beta));
  out << fmt::format("certificate: lambda_max(FP + PF' - 2bb') = {}\n", num(d.certificate_eig));
  out << fmt::format("rank(H) = {}\n", rank_tol(d.H));
  for (const auto& s : v.samples) {
    out << fmt::format("  sigma={:<8} hurwitz={} abscissa={}\n", num(s.sigma), s.hurwitz ? "yes" : "no",
                       num(s.abscissa));
  }
  out << fmt::format("verification: {}\n", v.passed ? "passed" : "FAILED");

  CsvWriter csv("quantity,value");
  for (std::size_t i = 0; i < d.b.size(); ++i) csv.row(fmt::format("b_{}", i + 1), num(d.b[i]));
  for (std::size_t i = 0; i < d.k.size(); ++i) csv.row(fmt::format("k_{}", i + 1), num(d.k[i]));
  csv.row("beta", num(d.beta));
  csv.row("certificate_eig", num(d.certificate_eig));
  csv.row("rank_H", rank_tol(d.H));
  csv.row("verified", v.passed ? 1 : 0);
  csv.save(dir / "design.csv");

  CsvWriter vcsv("sigma,hurwitz,abscissa");
  for (const auto& s : v.samples) vcsv.row(num(s.sigma), s.hurwitz ? 1 : 0, num(s.abscissa));
  vcsv.save(dir / "design_verify.csv");
  io::write_matrix_file(dir / "design_H.json", d.H);
  io::write_matrix_file(dir / "design_P.json", d.P);
  return v.passed ? kOk : kVerdictFalse;
}

// ---------------------------------------------------------------- simulate

NodeDynamics build_dynamics(const RunConfig& cfg) {
  if (cfg.dynamics == "chua") {
    ChuaParams p;
    if (!cfg.chua.empty()) {
      require(cfg.chua.size() == 6, "--chua takes six values: kappa,alpha,beta,gamma,a,b");
      p = {cfg.chua[0], cfg.chua[1], cfg.chua[2], cfg.chua[3], cfg.chua[4], cfg.chua[5]};
    }
    return make_chua(p);
  }
  if (cfg.dynamics == "linear") return make_linear(load_square(cfg.F, "--F"));
  throw Error(Errc::InvalidArgument, "unknown dynamics '" + cfg.dynamics + "' (chua | linear)");
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
  NetworkSystem sys{load_graph(cfg), cfg.c, load_square(cfg.H, "--H"), build_dynamics(cfg)};
  require(cfg.c > 0.0, "--c must be positive");
  const fs::path dir = out_dir(cfg);
  if (!is_connected(sys.graph)) out << "warning: graph is disconnected\n";

  const auto nodes = static_cast<std::size_t>(sys.graph.node_count());
  const auto x0 = random_initial_states(nodes, sys.node_dim(), cfg.seed);
  const Trajectory traj = simulate(sys, x0, SimOptions{cfg.step, cfg.horizon, cfg.stride, 1e6});
  const bool synced = is_synchronized(traj, cfg.eps, cfg.window);

  std::string header = "t";
  for (std::size_t i = 1; i <= nodes; ++i)
    for (std::size_t d = 1; d <= sys.node_dim(); ++d) header += fmt::format(",x_{}_{}", i, d);
  header += ",sync_error";
  CsvWriter csv(header);
  for (std::size_t r = 0; r < traj.times.size(); ++r) {
    std::string line = num(traj.times[r]);
    for (double v : traj.states[r]) line += "," + num(v);
    line += "," + num(traj.sync_error[r]);
    csv.raw(line);
  }
  csv.raw(fmt::format("# seed={},synchronized={},blowup={},blowup_time={}", cfg.seed, synced ? 1 : 0,
                      traj.blowup ? 1 : 0, traj.blowup_time ? num(*traj.blowup_time) : std::string("nan")));
  csv.save(dir / "trajectory.csv");

  out << fmt::format("simulated N={} n={} c={} step={} horizon={} seed={}\n", nodes, sys.node_dim(), num(cfg.c),
                     num(cfg.step), num(cfg.horizon), cfg.seed);
  out << fmt::format("final sync error e({}) = {}\n", num(traj.times.back()), num(traj.sync_error.back()));
  if (traj.blowup) out << fmt::format("blow-up at t = {}\n", num(*traj.blowup_time));
  out << fmt::format("synchronized (eps={}, window={}): {}\n", num(cfg.eps), num(cfg.window), synced ? "yes" : "no");
  return synced ? kOk : kVerdictFalse;
}

std::pair<int, int> parse_pair(const std::string& s) {
  int i = 0, j = 0;
  char sep = 0;
  std::istringstream in(s);
  if (!(in >> i >> sep >> j) || (sep != ',' && sep != '-')) {
    throw Error(Errc::Parse, "edge '" + s + "' must look like i,j");
  }
  return {i, j};
}

}  // namespace

void apply_config_json(RunConfig& cfg, const std::string& text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::Parse, std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw Error(Errc::Parse, "config must be a JSON object");
  try {
    auto get = [&](const char* key, auto& dst) {
      if (j.contains(key)) dst = j.at(key).get<std::decay_t<decltype(dst)>>();
    };
    get("command", cfg.command);
    get("graph", cfg.graph);
    get("F", cfg.F);
    get("H", cfg.H);
    get("b", cfg.b);
    get("out", cfg.out);
    get("dynamics", cfg.dynamics);
    get("chua", cfg.chua);
    get("c", cfg.c);
    get("sigma_max", cfg.sigma_max);
    get("grid_step", cfg.grid_step);
    get("boundary_tol", cfg.boundary_tol);
    get("step", cfg.step);
    get("horizon", cfg.horizon);
    get("seed", cfg.seed);
    get("eps", cfg.eps);
    get("window", cfg.window);
    get("stride", cfg.stride);
    get("q_scale", cfg.q_scale);
    if (j.contains("add")) {
      cfg.add.clear();
      for (const auto& e : j.at("add")) cfg.add.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    }
  } catch (const json::exception& e) {
    throw Error(Errc::Parse, std::string("config: ") + e.what());
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  // The config file seeds defaults; explicit flags parsed below override it.
  for (std::size_t i = 0; i + 1 < args.size(); ++i) {
    if (args[i] == "--config") {
      try {
        RunConfig loaded;
        apply_config_json(loaded, io::read_text(args[i + 1]));
        // Relative file paths in a config are taken relative to the config itself.
        const std::filesystem::path base = std::filesystem::path(args[i + 1]).parent_path();
        for (auto* p : {&loaded.graph, &loaded.F, &loaded.H, &loaded.b}) {
          if (!p->empty() && std::filesystem::path(*p).is_relative()) *p = (base / *p).string();
        }
        cfg = loaded;
      } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidInput;
      }
    }
  }

  CLI::App app{"Synchronizability workbench for diffusively coupled networks", "syncnet"};
  app.require_subcommand(1);
  std::string config_path;
  std::vector<std::string> add_pairs;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file (keys mirror option names)");
    sub->add_option("--out", cfg.out, "Output directory for CSV/JSON artifacts");
  };
  auto region_opts = [&](CLI::App* sub) {
    sub->add_option("--F", cfg.F, "Matrix file with the linearized node dynamics F");
    sub->add_option("--H", cfg.H, "Matrix file with the inner coupling H");
    sub->add_option("--sigma-max", cfg.sigma_max, "Scan ceiling for sigma");
    sub->add_option("--grid-step", cfg.grid_step, "Scan grid step (default 1e-3*sigma_max)");
    sub->add_option("--boundary-tol", cfg.boundary_tol, "Boundary bisection tolerance");
  };

  auto* analyze = app.add_subcommand("analyze", "Structural metrics, spectrum and complement facts of a graph");
  common(analyze);
  analyze->add_option("--graph", cfg.graph, "Graph file");

  auto* compl_cmd = app.add_subcommand("complement", "Complement graph, components and spectral duality");
  common(compl_cmd);
  compl_cmd->add_option("--graph", cfg.graph, "Graph file");

  auto* sweep = app.add_subcommand("edge-sweep", "Spectrum after each added edge");
  common(sweep);
  sweep->add_option("--graph", cfg.graph, "Graph file");
  sweep->add_option("--add", add_pairs, "Edge to add as i,j (repeatable, applied in order)");

  auto* region = app.add_subcommand("region", "Synchronized region of (F, H)");
  common(region);
  region_opts(region);
  region->add_option("--graph", cfg.graph, "Graph file (with --c, sets the default sigma_max)");
  region->add_option("--c", cfg.c, "Coupling strength");

  auto* check = app.add_subcommand("check", "Check c*lambda_k in S for k = 2..N");
  common(check);
  region_opts(check);
  check->add_option("--graph", cfg.graph, "Graph file");
  check->add_option("--c", cfg.c, "Coupling strength");

  auto* design = app.add_subcommand("design", "Rank-1 inner coupling with an unbounded synchronized region");
  common(design);
  design->add_option("--F", cfg.F, "Matrix file with F");
  design->add_option("--b", cfg.b, "Vector file with b (default: automatic choice)");
  design->add_option("--q-scale", cfg.q_scale, "Scale of the identity term in the Lyapunov right-hand side");
  design->add_option("--seed", cfg.seed, "Seed for the random b search");

  auto* sim = app.add_subcommand("simulate", "RK4 simulation of the coupled network");
  common(sim);
  sim->add_option("--graph", cfg.graph, "Graph file");
  sim->add_option("--H", cfg.H, "Matrix file with the inner coupling H");
  sim->add_option("--F", cfg.F, "Matrix file with F (linear dynamics only)");
  sim->add_option("--c", cfg.c, "Coupling strength");
  sim->add_option("--dynamics", cfg.dynamics, "Node dynamics: chua | linear");
  sim->add_option("--chua", cfg.chua, "Chua parameters kappa alpha beta gamma a b")->expected(6);
  sim->add_option("--step", cfg.step, "RK4 step");
  sim->add_option("--horizon", cfg.horizon, "Integration horizon");
  sim->add_option("--seed", cfg.seed, "Initial-condition seed");
  sim->add_option("--eps", cfg.eps, "Synchronization threshold");
  sim->add_option("--window", cfg.window, "Final time window checked against eps");
  sim->add_option("--stride", cfg.stride, "Record every stride-th step");

  std::vector<std::string> full = args;
  const auto subs = app.get_subcommands({});
  const bool has_subcommand = std::any_of(full.begin(), full.end(), [&](const std::string& a) {
    return std::any_of(subs.begin(), subs.end(), [&](const CLI::App* s) { return s->get_name() == a; });
  });
  if (!has_subcommand && !cfg.command.empty()) full.insert(full.begin(), cfg.command);
  std::vector<std::string> argv_rev(full.rbegin(), full.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }

  try {
    for (const auto& p : add_pairs) cfg.add.push_back(parse_pair(p));
    if (analyze->parsed()) return cmd_analyze(cfg, out);
    if (compl_cmd->parsed()) return cmd_complement(cfg, out);
    if (sweep->parsed()) return cmd_edge_sweep(cfg, out);
    if (region->parsed()) return cmd_region(cfg, out);
    if (check->parsed()) return cmd_check(cfg, out);
    if (design->parsed()) {
      try {
        return cmd_design(cfg, out);
      } catch (const Error& e) {
        if (e.code() == Errc::NotStabilizable || e.code() == Errc::NotControllable ||
            e.code() == Errc::SearchExhausted) {
          out << "design infeasible: " << e.what() << "\n";
          return kVerdictFalse;
        }
        throw;
      }
    }
    if (sim->parsed()) return cmd_simulate(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
  return kInvalidInput;
}

}  // namespace syncnet::cli
