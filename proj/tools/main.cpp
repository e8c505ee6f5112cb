#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "digraphon/digraphon.hpp"
#include "digraphon/dirm.hpp"
#include "digraphon/estimators.hpp"
#include "digraphon/inference.hpp"
#include "digraphon/io.hpp"
#include "digraphon/irm.hpp"
#include "digraphon/pgm.hpp"
#include "digraphon/sampling.hpp"
#include "digraphon/structure.hpp"

namespace fs = std::filesystem;
using namespace digraphon;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;
constexpr int kExitUsage = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_tuple(const std::string& text, std::size_t arity, const char* flag) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      vals.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw UsageError(std::string(flag) + ": expected comma-separated numbers");
    }
  }
  if (vals.size() != arity)
    throw UsageError(std::string(flag) + ": expected " + std::to_string(arity) + " values");
  return vals;
}

// Builtin digraphons exposed by `sample`. `resolution` controls the class
// count of the block approximations of the ordering families.
StepDigraphon builtin_digraphon(const std::string& name, int resolution, bool poset_loops) {
  if (name == "er") return erdos_renyi_digraphon(0.5);
  if (name == "tournament") return tournament_from_kernel({{0.5}}, {});
  if (name == "linear-order") return linear_order_digraphon(resolution);
  if (name == "dag") return generic_dag_digraphon(resolution);
  if (name == "poset") return poset_block_digraphon(poset_loops);
  if (name == "half") return half_digraphon();
  throw UsageError("unknown builtin '" + name +
                   "' (choose er, tournament, linear-order, dag, poset, half)");
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir);
}

std::string join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

std::vector<int> latent_classes(const StepDigraphon& d, const std::vector<double>& u) {
  std::vector<int> z(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) z[i] = d.class_of(u[i]);
  return z;
}

// Vertices grouped by label (stable within groups): reorders a sample so the
// inferred or true blocks are contiguous.
std::vector<int> order_by_labels(const std::vector<int>& z) {
  std::vector<int> order(z.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&z](int a, int b) { return z[a] < z[b]; });
  return order;
}

struct CommonOpts {
  std::uint64_t seed = 0;
  std::string out;
};

struct FitOpts {
  std::string graph_path;
  std::string model = "dirm";
  std::string hyper_path;
  double alpha = 1.0;
  std::string beta = "1,1,1,1";
  std::string beta_diag;
  std::string irm_beta = "1,1";
  int truncation = 50;
  int iters = 200;
  std::string init = "random";
  std::string init_labels;
  std::string truth_path;
  bool strip = false;
};

DirmHyperParams dirm_params(const FitOpts& o) {
  DirmHyperParams h;
  if (!o.hyper_path.empty()) {
    h = load_hyperparams(o.hyper_path);
    return h;
  }
  h.alpha = o.alpha;
  auto b = parse_tuple(o.beta, 4, "--beta");
  std::copy(b.begin(), b.end(), h.beta.begin());
  if (!o.beta_diag.empty()) {
    auto d = parse_tuple(o.beta_diag, 3, "--beta-diag");
    h.beta_diag = std::array<double, 3>{d[0], d[1], d[2]};
  }
  h.truncation = o.truncation;
  return h;
}

ChainResult fit_graph(const Digraph& g, const FitOpts& o, std::uint64_t seed) {
  ChainInit init;
  if (o.init == "random")
    init = ChainInit::kRandom;
  else if (o.init == "singleton")
    init = ChainInit::kSingleton;
  else if (o.init == "given")
    init = ChainInit::kGiven;
  else
    throw UsageError("--init must be random, singleton, or given");
  std::vector<int> given;
  const std::vector<int>* given_ptr = nullptr;
  if (init == ChainInit::kGiven) {
    if (o.init_labels.empty()) throw UsageError("--init given requires --init-labels");
    given = load_labels(o.init_labels);
    given_ptr = &given;
  }
  if (o.model == "dirm") return run_chain(g, dirm_params(o), o.iters, seed, init, given_ptr);
  if (o.model == "irm") {
    auto b = parse_tuple(o.irm_beta, 2, "--irm-beta");
    IrmHyperParams h;
    h.alpha = o.alpha;
    h.beta_edge = b[0];
    h.beta_nonedge = b[1];
    return run_chain_irm(g, h, o.iters, seed, init, given_ptr);
  }
  throw UsageError("--model must be dirm or irm");
}

void write_fit_outputs(const ChainResult& res, const std::string& dir, const std::string& prefix) {
  save_trace(res.trace, join(dir, prefix + "trace.txt"));
  save_labels(res.final_z.z, join(dir, prefix + "labels.txt"));
  save_digraphon(digraphon_from_blocks(res.weights, res.class_masses),
                 join(dir, prefix + "digraphon.json"));
}

int cmd_sample(const std::string& spec_path, const std::string& builtin, int n,
               const CommonOpts& c, int resolution, bool poset_loops, bool sort_by_latents) {
  StepDigraphon d =
      spec_path.empty() ? builtin_digraphon(builtin, resolution, poset_loops) : load_digraphon(spec_path);
  LatentSample s = sample_digraph(d, n, c.seed);
  ensure_dir(c.out);
  save_digraph(s.graph, join(c.out, "graph.txt"));
  save_latents(s.u, join(c.out, "latents.txt"));
  save_labels(latent_classes(d, s.u), join(c.out, "labels.txt"));
  if (sort_by_latents) save_digraph(resort_by_latents(s), join(c.out, "graph_sorted.txt"));
  return kExitOk;
}

int cmd_validate(const std::string& spec_path) {
  StepDigraphon d;
  try {
    d = load_digraphon(spec_path);
  } catch (const FormatError& e) {
    std::cout << "invalid\n";
    std::cerr << e.what() << "\n";
    return kExitValidation;
  }
  std::cout << "ok (" << d.num_classes() << " classes)\n";
  return kExitOk;
}

int cmd_check(const std::string& graph_path, const std::string& predicate) {
  Digraph g = load_digraph(graph_path);
  const bool und = is_undirected(g);
  const bool tour = is_tournament(g);
  const bool dag = is_dag(g);
  const bool closed = is_transitively_closed(g);
  if (predicate == "all") {
    std::cout << "undirected " << (und ? "yes" : "no") << "\n"
              << "tournament " << (tour ? "yes" : "no") << "\n"
              << "dag " << (dag ? "yes" : "no") << "\n"
              << "transitively-closed " << (closed ? "yes" : "no") << "\n";
    return kExitOk;
  }
  bool val;
  if (predicate == "undirected")
    val = und;
  else if (predicate == "tournament")
    val = tour;
  else if (predicate == "dag")
    val = dag;
  else if (predicate == "closed")
    val = closed;
  else
    throw UsageError("--predicate must be undirected, tournament, dag, closed, or all");
  std::cout << predicate << " " << (val ? "yes" : "no") << "\n";
  return val ? kExitOk : kExitValidation;
}

int cmd_prior(const FitOpts& fit, const CommonOpts& c) {
  DirmHyperParams h = dirm_params(fit);
  StepDigraphon d = sample_dirm_digraphon(h, c.seed);
  save_digraphon(d, c.out);
  return kExitOk;
}

int cmd_fit(const FitOpts& o, const CommonOpts& c) {
  Digraph g = load_digraph(o.graph_path);
  bool had_loops = false;
  for (int i = 0; i < g.n; ++i) had_loops |= g(i, i) != 0;
  if (had_loops) {
    if (!o.strip) {
      std::cerr << "error: graph has self-loops; rerun with --strip-loops to drop them\n";
      return kExitValidation;
    }
    std::cerr << "warning: stripping self-loops before inference\n";
    g = strip_loops(g);
  }
  ChainResult res = fit_graph(g, o, c.seed);
  ensure_dir(c.out);
  write_fit_outputs(res, c.out, "");
  std::cout << "final clusters " << res.final_z.num_clusters() << "\n"
            << "final log joint " << format_double(res.final_log_joint) << "\n";
  if (!o.truth_path.empty()) {
    auto truth = load_labels(o.truth_path);
    std::cout << "ari " << format_double(adjusted_rand_index(res.final_z.z, truth)) << "\n";
  }
  return kExitOk;
}

int cmd_estimate(const std::string& graph_path, const std::string& method,
                 const std::string& labels_path, int k, const std::string& out,
                 const std::string& labels_out) {
  Digraph g = load_digraph(graph_path);
  HistogramEstimate est;
  ClusterAssignment groups;
  if (method == "histogram") {
    if (labels_path.empty()) throw UsageError("--method histogram requires --labels");
    auto labels = load_labels(labels_path);
    if (static_cast<int>(labels.size()) != g.n)
      throw UsageError("--labels must list one label per vertex");
    groups = ClusterAssignment::from_labels(labels);
    est = histogram_densities(g, groups);
  } else if (method == "degree-sort") {
    DegreeSortEstimate ds = degree_sort_estimate(g, k);
    groups = ds.groups;
    est = ds.estimate;
  } else {
    throw UsageError("--method must be histogram or degree-sort");
  }
  std::vector<double> masses(groups.num_clusters());
  for (int r = 0; r < groups.num_clusters(); ++r)
    masses[r] = static_cast<double>(groups.sizes[r]) / g.n;
  save_digraphon(digraphon_from_blocks(est.weights, masses), out);
  if (!labels_out.empty()) save_labels(groups.z, labels_out);
  for (int r = 0; r < est.weights.k; ++r)
    for (int s = r; s < est.weights.k; ++s)
      if (est.cell_empty(r, s))
        std::cerr << "warning: cell (" << r << "," << s
                  << ") has no vertex pairs; uniform placeholder written\n";
  return kExitOk;
}

int cmd_render(const std::string& input, const std::string& out, int resolution, int scale) {
  std::ifstream f(input, std::ios::binary);
  if (!f) throw IoError("cannot open " + input);
  std::ostringstream buf;
  buf << f.rdbuf();
  const std::string text = buf.str();

  // JSON spec files start with '{'; everything else is a matrix-like file
  // (leading dimension, then n*n values in [0,1]).
  std::size_t start = text.find_first_not_of(" \t\r\n");
  GrayImage img;
  if (start != std::string::npos && text[start] == '{') {
    img = render_digraphon_channels(digraphon_from_json(text), resolution, scale);
  } else {
    std::istringstream in(text);
    int n;
    if (!(in >> n) || n < 0) throw FormatError(input + ": expected a leading dimension");
    std::vector<double> vals;
    vals.reserve(static_cast<std::size_t>(n) * n);
    double v;
    while (in >> v) vals.push_back(v);
    if (vals.size() != static_cast<std::size_t>(n) * n)
      throw FormatError(input + ": expected " + std::to_string(n) + "x" + std::to_string(n) +
                        " values");
    img = render_matrix(vals, n, n, scale);
  }
  save_pgm(img, out);
  return kExitOk;
}

int experiment_uniform(const CommonOpts& c, double alpha, int truncation, int iters) {
  ensure_dir(c.out);
  DirmHyperParams h;
  h.alpha = alpha;
  h.beta = {1.0, 1.0, 1.0, 1.0};
  h.truncation = truncation;

  StepDigraphon truth = sample_dirm_digraphon(h, c.seed);
  save_digraphon(truth, join(c.out, "true_digraphon.json"));
  save_pgm(render_digraphon_channels(truth, 200), join(c.out, "true_digraphon.pgm"));

  LatentSample s = sample_digraph(truth, 100, c.seed + 1);
  save_digraph(s.graph, join(c.out, "graph.txt"));
  save_latents(s.u, join(c.out, "latents.txt"));
  std::vector<int> true_labels = latent_classes(truth, s.u);
  save_labels(true_labels, join(c.out, "true_labels.txt"));
  save_pgm(render_digraph(s.graph, 4), join(c.out, "sample.pgm"));
  save_pgm(render_digraph(resort_by_latents(s), 4), join(c.out, "sample_by_latents.pgm"));

  FitOpts fo;
  fo.alpha = alpha;
  fo.truncation = truncation;
  fo.iters = iters;
  ChainResult res = fit_graph(s.graph, fo, c.seed + 2);
  write_fit_outputs(res, c.out, "inferred_");
  save_pgm(render_digraphon_channels(digraphon_from_blocks(res.weights, res.class_masses), 200),
           join(c.out, "inferred_digraphon.pgm"));
  save_pgm(render_digraph(permute_vertices(s.graph, order_by_labels(res.final_z.z)), 4),
           join(c.out, "sample_by_inferred.pgm"));

  double ari = adjusted_rand_index(res.final_z.z, true_labels);
  std::ostringstream summary;
  summary << "experiment uniform\n"
          << "seed " << c.seed << "\n"
          << "true clusters " << ClusterAssignment::from_labels(true_labels).num_clusters() << "\n"
          << "inferred clusters " << res.final_z.num_clusters() << "\n"
          << "final log joint " << format_double(res.final_log_joint) << "\n"
          << "ari " << format_double(ari) << "\n";
  std::ofstream(join(c.out, "summary.txt")) << summary.str();
  std::cout << summary.str();
  return kExitOk;
}

int experiment_half(const CommonOpts& c, double alpha, int iters) {
  ensure_dir(c.out);
  StepDigraphon truth = half_digraphon();
  save_digraphon(truth, join(c.out, "true_digraphon.json"));
  save_pgm(render_digraphon_channels(truth, 200), join(c.out, "true_digraphon.pgm"));

  LatentSample s = sample_digraph(truth, 100, c.seed);
  save_digraph(s.graph, join(c.out, "graph.txt"));
  save_latents(s.u, join(c.out, "latents.txt"));
  std::vector<int> true_labels = latent_classes(truth, s.u);
  save_labels(true_labels, join(c.out, "true_labels.txt"));
  save_pgm(render_digraph(s.graph, 4), join(c.out, "sample.pgm"));
  save_pgm(render_digraph(permute_vertices(s.graph, order_by_labels(true_labels)), 4),
           join(c.out, "sample_by_true.pgm"));

  FitOpts dirm_o;
  dirm_o.alpha = alpha;
  dirm_o.iters = iters;
  ChainResult dirm_res = fit_graph(s.graph, dirm_o, c.seed + 1);
  write_fit_outputs(dirm_res, c.out, "dirm_");
  save_pgm(render_digraph(permute_vertices(s.graph, order_by_labels(dirm_res.final_z.z)), 4),
           join(c.out, "sample_by_dirm.pgm"));

  FitOpts irm_o = dirm_o;
  irm_o.model = "irm";
  ChainResult irm_res = fit_graph(s.graph, irm_o, c.seed + 2);
  write_fit_outputs(irm_res, c.out, "irm_");
  save_pgm(render_digraph(permute_vertices(s.graph, order_by_labels(irm_res.final_z.z)), 4),
           join(c.out, "sample_by_irm.pgm"));

  double dirm_ari = adjusted_rand_index(dirm_res.final_z.z, true_labels);
  double irm_ari = adjusted_rand_index(irm_res.final_z.z, true_labels);
  std::ostringstream summary;
  summary << "experiment half\n"
          << "seed " << c.seed << "\n"
          << "model clusters ari\n"
          << "dirm " << dirm_res.final_z.num_clusters() << " " << format_double(dirm_ari) << "\n"
          << "irm " << irm_res.final_z.num_clusters() << " " << format_double(irm_ari) << "\n";
  std::ofstream(join(c.out, "summary.txt")) << summary.str();
  std::cout << summary.str();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exchangeable directed graphs via block digraphons: sampling, "
               "structure checks, nonparametric block-model inference, estimation"};
  app.require_subcommand(1);

  // sample
  auto* sample = app.add_subcommand("sample", "Sample a digraph from a digraphon");
  std::string sample_spec, sample_builtin = "er";
  int sample_n = 20, sample_resolution = 16;
  bool sample_poset_loops = false, sample_sorted = false;
  CommonOpts sample_c;
  sample->add_option("--spec", sample_spec, "Digraphon spec file (overrides --builtin)");
  sample->add_option("--builtin", sample_builtin,
                     "Builtin digraphon: er, tournament, linear-order, dag, poset, half");
  sample->add_option("--n", sample_n, "Vertex count")->check(CLI::NonNegativeNumber);
  sample->add_option("--seed", sample_c.seed, "RNG seed");
  sample->add_option("--resolution", sample_resolution, "Class count for linear-order/dag builtins")
      ->check(CLI::PositiveNumber);
  sample->add_flag("--poset-loops", sample_poset_loops, "Poset builtin keeps reflexive loops");
  sample->add_flag("--sort-by-latents", sample_sorted, "Also write graph_sorted.txt");
  sample->add_option("--out", sample_c.out, "Output directory")->required();

  // validate
  auto* val = app.add_subcommand("validate", "Validate a digraphon spec file");
  std::string val_spec;
  val->add_option("spec", val_spec, "Digraphon spec file")->required();

  // check
  auto* check = app.add_subcommand("check", "Evaluate structural predicates of a digraph");
  std::string check_graph, check_pred = "all";
  check->add_option("graph", check_graph, "Digraph file")->required();
  check->add_option("--predicate", check_pred, "undirected, tournament, dag, closed, or all");

  // prior
  auto* prior = app.add_subcommand("prior", "Draw a digraphon from the block prior");
  FitOpts prior_o;
  CommonOpts prior_c;
  prior->add_option("--alpha", prior_o.alpha, "Concentration");
  prior->add_option("--beta", prior_o.beta, "Dirichlet 4-tuple a,b,c,d");
  prior->add_option("--beta-diag", prior_o.beta_diag, "Diagonal override a,b,c");
  prior->add_option("--truncation", prior_o.truncation, "Stick-breaking truncation")
      ->check(CLI::PositiveNumber);
  prior->add_option("--hyper", prior_o.hyper_path, "Hyperparameter JSON file (overrides flags)");
  prior->add_option("--seed", prior_c.seed, "RNG seed");
  prior->add_option("--out", prior_c.out, "Output digraphon spec file")->required();

  // fit
  auto* fit = app.add_subcommand("fit", "Collapsed Gibbs inference on a digraph");
  FitOpts fit_o;
  CommonOpts fit_c;
  fit->add_option("--graph", fit_o.graph_path, "Digraph file")->required();
  fit->add_option("--model", fit_o.model, "dirm or irm");
  fit->add_option("--hyper", fit_o.hyper_path, "Hyperparameter JSON file (overrides flags)");
  fit->add_option("--alpha", fit_o.alpha, "Concentration");
  fit->add_option("--beta", fit_o.beta, "Dirichlet 4-tuple a,b,c,d");
  fit->add_option("--beta-diag", fit_o.beta_diag, "Diagonal override a,b,c");
  fit->add_option("--irm-beta", fit_o.irm_beta, "Edge/non-edge Beta pair for --model irm");
  fit->add_option("--truncation", fit_o.truncation, "Stick-breaking truncation (reporting only)");
  fit->add_option("--iters", fit_o.iters, "Gibbs sweeps")->check(CLI::NonNegativeNumber);
  fit->add_option("--init", fit_o.init, "random, singleton, or given");
  fit->add_option("--init-labels", fit_o.init_labels, "Labels file for --init given");
  fit->add_option("--truth", fit_o.truth_path, "Ground-truth labels; prints ARI");
  fit->add_flag("--strip-loops", fit_o.strip, "Drop self-loops instead of rejecting");
  fit->add_option("--seed", fit_c.seed, "RNG seed");
  fit->add_option("--out", fit_c.out, "Output directory")->required();

  // estimate
  auto* est = app.add_subcommand("estimate", "Histogram or degree-sorting digraphon estimate");
  std::string est_graph, est_method = "degree-sort", est_labels, est_out, est_labels_out;
  int est_k = 2;
  est->add_option("--graph", est_graph, "Digraph file")->required();
  est->add_option("--method", est_method, "histogram or degree-sort");
  est->add_option("--labels", est_labels, "Partition labels (histogram method)");
  est->add_option("--k", est_k, "Group count (degree-sort method)")->check(CLI::PositiveNumber);
  est->add_option("--out", est_out, "Output digraphon spec file")->required();
  est->add_option("--labels-out", est_labels_out, "Write the induced partition here");

  // render
  auto* render = app.add_subcommand("render", "Render a matrix or digraphon as a PGM image");
  std::string render_in, render_out;
  int render_resolution = 200, render_scale = 1;
  render->add_option("input", render_in, "Digraph/matrix file or digraphon spec JSON")->required();
  render->add_option("--out", render_out, "Output PGM file")->required();
  render->add_option("--resolution", render_resolution, "Grid size for digraphon input")
      ->check(CLI::PositiveNumber);
  render->add_option("--scale", render_scale, "Integer pixel upscale")->check(CLI::PositiveNumber);

  // experiment
  auto* exp = app.add_subcommand("experiment", "One-command synthetic studies");
  std::string exp_name;
  CommonOpts exp_c;
  double exp_alpha = 1.0;
  int exp_truncation = 50, exp_iters = -1;
  exp->add_option("name", exp_name, "uniform or half")->required();
  exp->add_option("--seed", exp_c.seed, "RNG seed");
  exp->add_option("--alpha", exp_alpha, "Concentration");
  exp->add_option("--truncation", exp_truncation, "Stick-breaking truncation (uniform)");
  exp->add_option("--iters", exp_iters, "Gibbs sweeps (default 200 uniform, 500 half)");
  exp->add_option("--out", exp_c.out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (sample->parsed())
      return cmd_sample(sample_spec, sample_builtin, sample_n, sample_c, sample_resolution,
                        sample_poset_loops, sample_sorted);
    if (val->parsed()) return cmd_validate(val_spec);
    if (check->parsed()) return cmd_check(check_graph, check_pred);
    if (prior->parsed()) return cmd_prior(prior_o, prior_c);
    if (fit->parsed()) return cmd_fit(fit_o, fit_c);
    if (est->parsed())
      return cmd_estimate(est_graph, est_method, est_labels, est_k, est_out, est_labels_out);
    if (render->parsed()) return cmd_render(render_in, render_out, render_resolution, render_scale);
    if (exp->parsed()) {
      if (exp_name == "uniform")
        return experiment_uniform(exp_c, exp_alpha, exp_truncation, exp_iters < 0 ? 200 : exp_iters);
      if (exp_name == "half") return experiment_half(exp_c, exp_alpha, exp_iters < 0 ? 500 : exp_iters);
      throw UsageError("unknown experiment '" + exp_name + "' (choose uniform or half)");
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
