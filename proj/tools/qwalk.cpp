#include "qwalk/qwalk.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using namespace qwalk;
using json = nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

const auto g_started = std::chrono::steady_clock::now();

struct GraphSource {
  int tube = 0;
  bool c60 = false;
  std::string path;
};

struct Common {
  GraphSource source;
  std::string output;
  std::string format = "json";
  double degeneracy_tol = kDefaultDegeneracyTol;
  bool reproducible = false;
};

struct Options {
  Common common;
  int start = 1;
  int end = 0;
  std::string observable;
  double epsilon = 1.0;
  int n_eps = 0;
  double tau_min = 0.1, tau_max = 1e3;
  int tau_count = 60;
  double beta_min = 0, beta_max = 200;
  int beta_count = 401;
  std::string family = "30..130";
  std::uint64_t seed = 1;
  int samples = 1000;
  std::string basis = "plain";
  bool triples = false;
  bool sweep = false;
  bool vectors = false;
};

void add_source(CLI::App* sub, GraphSource& src) {
  auto* tube = sub->add_option("--tube", src.tube, "tube fullerene with N vertices (N = 30, 40, ..., 130)");
  auto* c60 = sub->add_flag("--c60", src.c60, "blocked centrosymmetric C60");
  auto* file = sub->add_option("--graph", src.path, "edge-list file");
  tube->excludes(c60)->excludes(file);
  c60->excludes(file);
}

void add_common(CLI::App* sub, Common& c, bool with_source = true) {
  if (with_source) add_source(sub, c.source);
  sub->add_option("-o,--output", c.output, "output file (default stdout)");
  sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  sub->add_option("--degeneracy-tol", c.degeneracy_tol, "eigenvalue clustering tolerance")->capture_default_str();
  sub->add_flag("--reproducible", c.reproducible, "omit wall-clock timing so repeated runs are byte-identical");
}

Graph load_source(const GraphSource& s) {
  if (s.tube) return build_tube_fullerene(s.tube);
  if (s.c60) return build_c60_blocked();
  if (!s.path.empty()) return load_graph(s.path);
  throw ValidationError("no graph given: use --tube N, --c60 or --graph PATH");
}

SpectrumD spectrum_for(const Graph& g, const Options& o) {
  if (o.basis == "adapted") {
    if (!(g == build_c60_blocked())) throw ValidationError("--basis adapted is only defined for the blocked C60");
    return symmetry_adapted_c60_basis(o.common.degeneracy_tol);
  }
  return eigendecompose(adjacency(g), o.common.degeneracy_tol);
}

Eigen::MatrixXd parse_observable(const std::string& spec, int n, int fallback_node) {
  if (spec.empty()) return node_projector(n, fallback_node);
  if (spec == "position") return position_observable(n);
  if (spec.rfind("node:", 0) == 0) {
    try {
      std::size_t used = 0;
      const int k = std::stoi(spec.substr(5), &used);
      if (used == spec.size() - 5) return node_projector(n, k);
    } catch (const std::logic_error&) {
    }
  }
  throw ValidationError("observable must be node:K or position, got '" + spec + "'");
}

std::vector<int> parse_family(const std::string& spec) {
  std::vector<int> out;
  try {
    const auto dots = spec.find("..");
    if (dots != std::string::npos) {
      const int lo = std::stoi(spec.substr(0, dots));
      const int hi = std::stoi(spec.substr(dots + 2));
      if (lo > hi) throw ValidationError("empty family range " + spec);
      for (int n = lo; n <= hi; n += 10) out.push_back(n);
    } else {
      std::size_t pos = 0;
      while (pos <= spec.size()) {
        const auto comma = spec.find(',', pos);
        out.push_back(std::stoi(spec.substr(pos, comma - pos)));
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
    }
  } catch (const std::logic_error&) {
    throw ValidationError("family must look like 30..130 or 30,40,50; got '" + spec + "'");
  }
  return out;
}

std::vector<double> beta_grid(const Options& o) {
  if (!std::isfinite(o.beta_min) || !std::isfinite(o.beta_max) || o.beta_min < 0 || !(o.beta_max > o.beta_min) ||
      o.beta_count < 2) {
    throw ValidationError("beta grid needs 0 <= beta-min < beta-max and beta-count >= 2");
  }
  std::vector<double> g(o.beta_count);
  for (int i = 0; i < o.beta_count; ++i)
    g[i] = o.beta_min + (o.beta_max - o.beta_min) * i / (o.beta_count - 1);
  g.back() = o.beta_max;
  return g;
}

json config_echo(const CLI::App* sub) {
  json opts = json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    std::string name = opt->get_name(false, true);
    if (name == "--help" || name == "-h") continue;
    while (!name.empty() && name.front() == '-') name.erase(0, 1);
    const auto pos = name.find(',');
    if (pos != std::string::npos) name = name.substr(pos + 1);
    while (!name.empty() && name.front() == '-') name.erase(0, 1);
    if (opt->count() > 0) {
      const auto& r = opt->results();
      opts[name] = r.size() == 1 ? json(r.front()) : json(r);
    } else if (!opt->get_default_str().empty()) {
      opts[name] = opt->get_default_str();
    }
  }
  return {{"command", sub->get_name()}, {"options", opts}};
}

class Runner {
 public:
  Runner(const CLI::App* sub, const Common& c) : sub_(sub), common_(c) {}

  json header(const std::optional<Graph>& g) const {
    json h;
    h["tool"] = "qwalk";
    h["version"] = kVersion;
    h["config"] = config_echo(sub_);
    h["graph_checksum"] = g ? json(graph_checksum(*g)) : json(nullptr);
    if (common_.reproducible) {
      h["timing"] = nullptr;
    } else {
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - g_started).count();
      h["timing"] = {{"elapsed_seconds", secs}};
    }
    return h;
  }

  void emit_json(const std::optional<Graph>& g, json body) const {
    body["header"] = header(g);
    write(body.dump(2) + "\n");
  }

  void write(const std::string& text) const {
    if (common_.output.empty()) {
      std::cout << text;
      std::cout.flush();
      return;
    }
    std::ofstream f(common_.output, std::ios::binary);
    if (!f) throw ValidationError("cannot open " + common_.output + " for writing");
    f << text;
    if (!f) throw ValidationError("failed writing " + common_.output);
  }

  bool csv() const { return common_.format == "csv"; }

 private:
  const CLI::App* sub_;
  Common common_;
};

void run_gen(const CLI::App* sub, const Options& o) {
  const Graph g = load_source(o.common.source);
  Runner r(sub, o.common);
  if (o.common.format == "json" && sub->count("--format")) {
    json body;
    body["n_nodes"] = g.n_nodes();
    auto edges = json::array();
    for (const Edge& e : g.edges()) edges.push_back({e.a, e.b});
    body["edges"] = edges;
    r.emit_json(g, body);
    return;
  }
  r.write(format_graph(g));
}

void run_spectrum(const CLI::App* sub, const Options& o) {
  const Graph g = load_source(o.common.source);
  const SpectrumD s = spectrum_for(g, o);
  Runner r(sub, o.common);
  if (r.csv()) {
    if (o.vectors) {
      r.write(matrix_csv(s.vectors));
      return;
    }
    std::string out = "k,eigenvalue,cluster\n";
    for (std::size_t c = 0; c < s.clusters.size(); ++c)
      for (Eigen::Index k = s.clusters[c].begin; k < s.clusters[c].end(); ++k)
        out += std::to_string(k + 1) + ',' + format_number(s.values(k)) + ',' + std::to_string(c) + '\n';
    r.write(out);
    return;
  }
  json body = spectrum_json(s);
  if (o.vectors) body["eigenvectors"] = matrix_json(s.vectors);
  r.emit_json(g, body);
}

void run_limiting(const CLI::App* sub, const Options& o) {
  const Graph g = load_source(o.common.source);
  const SpectrumD s = spectrum_for(g, o);
  Runner r(sub, o.common);

  if (sub->count("--end")) {
    // Running average of one transition probability over the tau grid.
    const auto taus = log_grid(o.tau_min, o.tau_max, o.tau_count);
    const auto avg = cumulative_time_average(s, o.start, o.end, taus);
    const double limit = limiting_distribution(s)(o.start - 1, o.end - 1);
    if (r.csv()) {
      std::string out = "tau,average\n";
      for (std::size_t i = 0; i < taus.size(); ++i) out += format_number(taus[i]) + ',' + format_number(avg[i]) + '\n';
      r.write(out);
      return;
    }
    json body;
    body["start"] = o.start;
    body["end"] = o.end;
    body["limit"] = limit;
    body["tau"] = taus;
    body["average"] = avg;
    r.emit_json(g, body);
    return;
  }

  const auto u = limiting_distribution(s);
  if (r.csv()) {
    r.write(o.triples ? triples_csv(u) : matrix_csv(u));
    return;
  }
  json body;
  body["u"] = matrix_json(u);
  body["footer"] = {{"max_row_sum_error", (u.rowwise().sum().array() - 1.0).abs().maxCoeff()},
                    {"mirror_residual", mirror_residual(u)},
                    {"basis", to_string(s.basis)}};
  r.emit_json(g, body);
}

void run_bound(const CLI::App* sub, const Options& o) {
  const Graph g = load_source(o.common.source);
  const SpectrumD s = spectrum_for(g, o);
  const Eigen::MatrixXd obs = parse_observable(o.observable, g.n_nodes(), o.start);
  EquilibrationOptions opts;
  opts.degeneracy_tol = o.common.degeneracy_tol;
  if (sub->count("--n-eps")) opts.n_eps_override = o.n_eps;
  if (!(o.epsilon > 0) || !std::isfinite(o.epsilon)) throw ValidationError("epsilon must be positive");
  const auto taus = log_grid(o.tau_min, o.tau_max, o.tau_count);
  const auto rep = equilibration_report(s, o.start, obs, taus, o.epsilon, opts);
  Runner r(sub, o.common);
  if (r.csv()) {
    r.write(report_csv(rep));
    return;
  }
  r.emit_json(g, report_json(rep));
}

void run_gibbs(const CLI::App* sub, const Options& o) {
  const auto betas = beta_grid(o);
  Runner r(sub, o.common);
  if (o.sweep) {
    if (r.csv()) {
      r.write(beta_sweep_csv(betas));
      return;
    }
    auto rows = json::array();
    for (double b : betas) {
      const auto gs = pentagon_gibbs(b);
      rows.push_back({{"beta", b}, {"Z", gs.z}, {"p_j", gs.node_probs[1]}, {"p_0", gs.node_probs[0]}});
    }
    r.emit_json(std::nullopt, {{"sweep", rows}});
    return;
  }
  const auto sizes = parse_family(o.family);
  const auto rows = gibbs_vs_limiting(sizes, betas);
  if (r.csv()) {
    r.write(gibbs_comparison_csv(rows));
    return;
  }
  bool any = false;
  for (const auto& row : rows) any = any || row.gibbs_matchable;
  r.emit_json(std::nullopt, {{"comparison", gibbs_comparison_json(rows)},
                             {"match_tolerance", kGibbsMatchTol},
                             {"any_gibbs_matchable", any}});
}

void run_eth(const CLI::App* sub, const Options& o) {
  const Graph g = load_source(o.common.source);
  const SpectrumD s = spectrum_for(g, o);
  const Eigen::MatrixXd obs = parse_observable(o.observable.empty() ? "position" : o.observable, g.n_nodes(), 1);
  Runner r(sub, o.common);
  if (r.csv()) {
    r.write(matrix_csv(observable_in_energy_basis(s, obs).o_mn));
    return;
  }
  json body = eth_json(eth_report(s, obs));
  auto nodes = json::array();
  for (int x = 1; x <= g.n_nodes(); ++x) {
    const auto st = projector_eth_stats(s, x);
    nodes.push_back({{"node", x}, {"diag_mean", st.mean}, {"diag_std", st.std}, {"entropy", measurement_entropy(s, x)}});
  }
  body["nodes"] = nodes;
  const auto ent = node_entropies(s);
  body["node_entropy"] = {{"mean", ent.mean}, {"std", ent.std}};
  const auto haar = haar_entropy_baseline(g.n_nodes(), o.samples, o.seed);
  body["haar_entropy"] = {{"mean", haar.mean}, {"std", haar.std}, {"samples", o.samples}, {"seed", o.seed}};
  r.emit_json(g, body);
}

void run_symmetry(const CLI::App* sub, const Options& o) {
  const Graph g = load_source(o.common.source);
  const SpectrumD s = spectrum_for(g, o);
  const auto c = eth_symmetry_check(s);
  const double u_res = mirror_residual(limiting_distribution(s));
  Runner r(sub, o.common);
  if (r.csv()) {
    r.write("basis,amplitude_residual,position_residual,u_mirror_residual,ok\n" + std::string(to_string(s.basis)) +
            ',' + format_number(c.amplitude_residual) + ',' + format_number(c.position_residual) + ',' +
            format_number(u_res) + ',' + (c.ok && u_res < 1e-9 ? "true" : "false") + '\n');
    return;
  }
  r.emit_json(g, {{"basis", to_string(s.basis)},
                  {"amplitude_residual", c.amplitude_residual},
                  {"position_residual", c.position_residual},
                  {"u_mirror_residual", u_res},
                  {"ok", c.ok && u_res < 1e-9}});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continuous-time quantum walks on fullerene graphs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Options o;
  auto* gen = app.add_subcommand("gen", "write a graph as an edge-list file");
  add_common(gen, o.common);

  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues and degeneracy clusters");
  add_common(spectrum, o.common);
  spectrum->add_option("--basis", o.basis, "plain or adapted")->check(CLI::IsMember({"plain", "adapted"}));
  spectrum->add_flag("--vectors", o.vectors, "include eigenvectors");

  auto* limiting = app.add_subcommand("limiting", "limiting distribution u(x, y)");
  add_common(limiting, o.common);
  limiting->add_flag("--triples", o.triples, "CSV as x,y,u triples");
  limiting->add_option("--basis", o.basis, "plain or adapted")->check(CLI::IsMember({"plain", "adapted"}));
  limiting->add_option("--start", o.start, "start node for a running average")->capture_default_str();
  limiting->add_option("--end", o.end, "end node; switches to the running average over the tau grid");

  auto* bound = app.add_subcommand("bound", "finite-time equilibration bound");
  add_common(bound, o.common);
  bound->add_option("--start", o.start, "start node")->capture_default_str();
  bound->add_option("--observable", o.observable, "node:K or position (default node:<start>)");
  bound->add_option("--epsilon", o.epsilon, "gap window width")->capture_default_str();
  bound->add_option("--n-eps", o.n_eps, "override N(eps) in the bound")->check(CLI::PositiveNumber);
  bound->add_option("--basis", o.basis, "plain or adapted")->check(CLI::IsMember({"plain", "adapted"}));

  for (CLI::App* sub : {limiting, bound}) {
    sub->add_option("--tau-min", o.tau_min, "smallest tau")->capture_default_str();
    sub->add_option("--tau-max", o.tau_max, "largest tau")->capture_default_str();
    sub->add_option("--tau-count", o.tau_count, "log-spaced tau points")->capture_default_str();
  }

  auto* gibbs = app.add_subcommand("gibbs", "pentagon Gibbs probabilities against u(N, N)");
  add_common(gibbs, o.common, false);
  gibbs->add_option("--family", o.family, "tube sizes, e.g. 30..130 or 30,60")->capture_default_str();
  gibbs->add_option("--beta-min", o.beta_min, "smallest beta")->capture_default_str();
  gibbs->add_option("--beta-max", o.beta_max, "largest beta")->capture_default_str();
  gibbs->add_option("--beta-count", o.beta_count, "linearly spaced beta points")->capture_default_str();
  gibbs->add_flag("--sweep", o.sweep, "emit the beta sweep (beta, Z, p_j, p_0) instead");

  auto* eth = app.add_subcommand("eth", "observables in the energy eigenbasis");
  add_common(eth, o.common);
  eth->add_option("--observable", o.observable, "node:K or position (default position)");
  eth->add_option("--basis", o.basis, "plain or adapted")->check(CLI::IsMember({"plain", "adapted"}));
  eth->add_option("--seed", o.seed, "seed for the Haar-orthogonal baseline")->capture_default_str();
  eth->add_option("--samples", o.samples, "Haar-orthogonal samples")->capture_default_str();

  auto* symmetry = app.add_subcommand("symmetry", "mirror-symmetry residuals x <-> N+1-x");
  add_common(symmetry, o.common);
  symmetry->add_option("--basis", o.basis, "plain or adapted")->check(CLI::IsMember({"plain", "adapted"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*gen) run_gen(gen, o);
    else if (*spectrum) run_spectrum(spectrum, o);
    else if (*limiting) run_limiting(limiting, o);
    else if (*bound) run_bound(bound, o);
    else if (*gibbs) run_gibbs(gibbs, o);
    else if (*eth) run_eth(eth, o);
    else if (*symmetry) run_symmetry(symmetry, o);
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const ConvergenceError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
