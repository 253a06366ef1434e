#include "cli.hpp"

#include "manifest.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include "manigraph/manigraph.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace manigraph::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path.string());
  f << text;
  if (!f) throw InputError("failed writing " + path.string());
}

std::string embedding_text(const Eigen::MatrixXd& coords) {
  std::ostringstream s;
  write_embedding_csv(s, coords);
  return s.str();
}

std::string labels_text(const ClusterLabels& labels) {
  std::ostringstream s;
  write_labels_csv(s, labels);
  return s.str();
}

std::string edges_text(const Graph& g) {
  std::ostringstream s;
  write_edge_list(s, g);
  return s.str();
}

int resolve_threads(int flag) {
  if (flag > 0) return flag;
  const char* env = std::getenv("MANIGRAPH_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  const std::string_view text(env);
  int v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || v < 1) {
    throw InputError("MANIGRAPH_THREADS must be a positive integer");
  }
  return v;
}

NmiNorm parse_nmi_norm(const std::string& name) {
  if (name == "arithmetic") return NmiNorm::arithmetic;
  if (name == "geometric") return NmiNorm::geometric;
  throw InputError("unknown NMI normalization `" + name + "` (expected arithmetic|geometric)");
}

json optional_json(const std::optional<std::size_t>& v) { return v ? json(*v) : json(nullptr); }

json operator_json(const EmbeddingDiagnostics& d) {
  return {
      {"mu", *d.mu},
      {"epsilon", *d.epsilon},
      {"min_disc_left_end", *d.min_disc_left_end},
      {"q_nnz", *d.q_nnz},
      {"binding_row", optional_json(d.binding_row)},
  };
}

json diagnostics_json(const Embedding& e) {
  const auto& d = e.diagnostics;
  json j;
  j["method"] = to_string(e.method);
  if (d.mu) j["operator"] = operator_json(d);
  j["solver"] = {
      {"iterations", d.iterations},
      {"residuals", d.residual_norms},
      {"converged", d.converged},
  };
  j["eigenvalues"] = std::vector<double>(d.eigenvalues.data(), d.eigenvalues.data() + d.eigenvalues.size());
  j["constant_deflated"] = d.constant_deflated;
  j["wall_ms"] = {{"solve", d.solve_ms}, {"total", d.total_ms}};
  return j;
}

json metrics_json(const MetricsReport& m) {
  return {
      {"rand_index", m.rand_index},
      {"precision", m.precision},
      {"purity", m.purity},
      {"nmi", m.nmi},
  };
}

json vbc_json(const CentralityReport& r) {
  return {{"vbc", r.vbc}, {"min", r.min}, {"max", r.max}, {"mean", r.mean}};
}

// ---- shared option groups ---------------------------------------------------

struct SolverArgs {
  std::string method = "proposed";
  double tol = 1e-8;
  std::size_t max_iter = 500;
  std::uint64_t seed = 42;
  std::string preconditioner = "ldlt";
  bool theta_literal = false;

  void attach(CLI::App* sub) {
    sub->add_option("--method", method, "proposed | le")->capture_default_str();
    sub->add_option("--tol", tol, "Relative residual tolerance")->capture_default_str();
    sub->add_option("--max-iter", max_iter, "LOBPCG iteration budget")->capture_default_str();
    sub->add_option("--seed", seed, "Seed for the initial block and k-means")->capture_default_str();
    sub->add_option("--preconditioner", preconditioner, "none | jacobi | ldlt")->capture_default_str();
    sub->add_flag("--theta-literal", theta_literal,
                  "Debug: keep 1/T_i on the hub diagonal of each two-hop block");
  }

  void record(json& flags) const {
    flags["method"] = method;
    flags["tol"] = tol;
    flags["max_iter"] = max_iter;
    flags["seed"] = seed;
    flags["preconditioner"] = preconditioner;
    flags["theta_literal"] = theta_literal;
  }

  Embedding run(const Graph& g, std::size_t dim) const {
    if (!(tol > 0.0)) throw InputError("--tol must be positive");
    SolverConfig cfg;
    cfg.tol = tol;
    cfg.max_iter = max_iter;
    cfg.seed = seed;
    cfg.preconditioner = parse_preconditioner(preconditioner);
    EmbedOptions opts;
    opts.operators.theta = theta_literal ? ThetaMode::literal : ThetaMode::laplacian;
    switch (parse_embedding_method(method)) {
      case EmbeddingMethod::proposed:
        return embed(g, dim, cfg, opts);
      case EmbeddingMethod::le:
        return embed_le(g, dim, cfg, opts);
    }
    throw InputError("unknown method");
  }
};

struct Session {
  std::vector<std::string> argv;
  std::ostream& out;
  std::ostream& err;
  int threads = 1;
  Clock::time_point start = Clock::now();

  RunManifest manifest(const std::string& command) const {
    RunManifest m;
    m.command = command;
    m.argv = argv;
    m.threads = threads;
    return m;
  }

  void finish(RunManifest& m, const std::optional<fs::path>& path) const {
    if (!path) return;
    m.wall_ms = ms_since(start);
    write_json_file(*path, m.to_json());
  }
};

std::optional<fs::path> manifest_target(const std::string& explicit_path, const std::string& output) {
  if (!explicit_path.empty()) return fs::path(explicit_path);
  if (!output.empty()) return manifest_path_for(output);
  return std::nullopt;
}

// ---- commands ---------------------------------------------------------------

struct KnnCmd {
  std::string input;
  std::size_t k = 0;
  bool weighted = true;
  bool header = false;
  std::string output;
  std::string manifest;

  void attach(CLI::App* sub) {
    sub->add_option("--input", input, "Feature CSV, one sample per row")->required();
    sub->add_option("--k", k, "Neighbours per node before union symmetrization")->required();
    sub->add_flag("--weighted,!--unweighted", weighted,
                  "Gaussian weights exp(-d^2/sigma^2), sigma^2 = mean squared kept distance (default)");
    sub->add_flag("--header", header, "Skip the first CSV line");
    sub->add_option("--output", output, "Edge-list TSV")->required();
    sub->add_option("--manifest", manifest, "Manifest path (default <output>.manifest.json)");
  }

  int run(const Session& s) const {
    const FeatureMatrix x = load_feature_csv(input, header);
    const Graph g = knn_graph(x, k, weighted);
    write_file(output, edges_text(g));
    RunManifest m = s.manifest("knn");
    m.flags = {{"input", input}, {"k", k}, {"weighted", weighted}, {"header", header}, {"output", output}};
    m.add_input("input", input);
    s.finish(m, manifest_target(manifest, output));
    return kOk;
  }
};

struct EmbedCmd {
  std::string graph;
  std::size_t dim = 2;
  SolverArgs solver;
  std::string output;
  std::string diagnostics;
  std::string manifest;

  void attach(CLI::App* sub) {
    sub->add_option("--graph", graph, "Edge-list TSV")->required();
    sub->add_option("--dim", dim, "Embedding dimension K")->capture_default_str();
    solver.attach(sub);
    sub->add_option("--output", output, "Embedding CSV")->required();
    sub->add_option("--diagnostics", diagnostics, "Diagnostics JSON");
    sub->add_option("--manifest", manifest, "Manifest path (default <output>.manifest.json)");
  }

  int run(const Session& s) const {
    const Graph g = load_edge_list(graph);
    const Embedding e = solver.run(g, dim);
    write_file(output, embedding_text(e.coords));
    if (!diagnostics.empty()) write_json_file(diagnostics, diagnostics_json(e));
    RunManifest m = s.manifest("embed");
    m.flags = {{"graph", graph}, {"dim", dim}, {"output", output}, {"diagnostics", diagnostics}};
    solver.record(m.flags);
    m.seed = solver.seed;
    m.add_input("graph", graph);
    s.finish(m, manifest_target(manifest, output));
    return kOk;
  }
};

struct VbcCmd {
  std::string graph;
  bool ordered = false;
  std::optional<double> threshold;
  std::string output;
  std::string manifest;

  void attach(CLI::App* sub) {
    sub->add_option("--graph", graph, "Edge-list TSV")->required();
    sub->add_flag("--ordered", ordered, "Count (s,t) and (t,s) separately");
    sub->add_option("--threshold", threshold, "Exit 1 unless vbc <= threshold");
    sub->add_option("--output", output, "Also write the report here");
    sub->add_option("--manifest", manifest, "Manifest path (default <output>.manifest.json)");
  }

  int run(const Session& s) const {
    const Graph g = load_edge_list(graph);
    const CentralityReport r = betweenness(g, ordered ? PairConvention::ordered : PairConvention::unordered);
    const json report = vbc_json(r);
    s.out << report.dump(2) << '\n';
    if (!output.empty()) write_json_file(output, report);
    RunManifest m = s.manifest("vbc");
    m.flags = {{"graph", graph}, {"ordered", ordered}, {"output", output}};
    m.flags["threshold"] = threshold ? json(*threshold) : json(nullptr);
    m.add_input("graph", graph);
    s.finish(m, manifest_target(manifest, output));
    if (threshold && !(r.vbc <= *threshold)) {
      s.err << "vbc " << format_double(r.vbc) << " exceeds threshold " << format_double(*threshold) << '\n';
      return kThresholdFailed;
    }
    return kOk;
  }
};

struct ClusterCmd {
  std::string embedding;
  std::size_t clusters = 0;
  std::size_t restarts = 20;
  std::uint64_t seed = 42;
  std::string output;
  std::string manifest;

  void attach(CLI::App* sub) {
    sub->add_option("--embedding", embedding, "Embedding CSV")->required();
    sub->add_option("--clusters", clusters, "Number of clusters C")->required();
    sub->add_option("--restarts", restarts, "k-means++ restarts")->capture_default_str();
    sub->add_option("--seed", seed, "RNG seed")->capture_default_str();
    sub->add_option("--output", output, "Labels CSV")->required();
    sub->add_option("--manifest", manifest, "Manifest path (default <output>.manifest.json)");
  }

  int run(const Session& s) const {
    const Eigen::MatrixXd points = load_embedding_csv(embedding);
    KMeansOptions opts;
    opts.restarts = restarts;
    opts.seed = seed;
    const KMeansResult r = kmeans(points, clusters, opts);
    write_file(output, labels_text(r.labels));
    RunManifest m = s.manifest("cluster");
    m.flags = {{"embedding", embedding}, {"clusters", clusters}, {"restarts", restarts},
               {"seed", seed}, {"output", output}};
    m.seed = seed;
    m.add_input("embedding", embedding);
    s.finish(m, manifest_target(manifest, output));
    return kOk;
  }
};

struct EvalCmd {
  std::string pred;
  std::string truth;
  std::string nmi_norm = "arithmetic";
  std::string output;
  std::string manifest;

  void attach(CLI::App* sub) {
    sub->add_option("--pred", pred, "Predicted labels CSV")->required();
    sub->add_option("--truth", truth, "Ground-truth labels CSV")->required();
    sub->add_option("--nmi-norm", nmi_norm, "arithmetic | geometric")->capture_default_str();
    sub->add_option("--output", output, "Also write the metrics here");
    sub->add_option("--manifest", manifest, "Manifest path (default <output>.manifest.json)");
  }

  int run(const Session& s) const {
    const NmiNorm norm = parse_nmi_norm(nmi_norm);
    const ClusterLabels p = load_labels_csv(pred);
    const ClusterLabels t = load_labels_csv(truth);
    const json report = metrics_json(evaluate(p, t, norm));
    s.out << report.dump(2) << '\n';
    if (!output.empty()) write_json_file(output, report);
    RunManifest m = s.manifest("eval");
    m.flags = {{"pred", pred}, {"truth", truth}, {"nmi_norm", nmi_norm}, {"output", output}};
    m.add_input("pred", pred);
    m.add_input("truth", truth);
    s.finish(m, manifest_target(manifest, output));
    return kOk;
  }
};

struct PipelineCmd {
  std::string graph;
  std::string truth;
  std::size_t dim = 2;
  std::size_t clusters = 0;
  std::size_t restarts = 20;
  SolverArgs solver;
  std::string nmi_norm = "arithmetic";
  bool ordered = false;
  std::optional<double> vbc_threshold;
  std::string out_dir;
  std::string manifest;

  void attach(CLI::App* sub) {
    sub->add_option("--graph", graph, "Edge-list TSV")->required();
    sub->add_option("--truth", truth, "Ground-truth labels CSV")->required();
    sub->add_option("--dim", dim, "Embedding dimension K")->capture_default_str();
    sub->add_option("--clusters", clusters, "Number of clusters C")->required();
    sub->add_option("--restarts", restarts, "k-means++ restarts")->capture_default_str();
    solver.attach(sub);
    sub->add_option("--nmi-norm", nmi_norm, "arithmetic | geometric")->capture_default_str();
    sub->add_flag("--ordered", ordered, "Ordered-pair betweenness for the VBC report");
    sub->add_option("--vbc-threshold", vbc_threshold, "Stop with exit 1 when vbc exceeds this");
    sub->add_option("--out-dir", out_dir,
                    "Write embedding.csv, labels.csv, report.json and manifest.json here");
    sub->add_option("--manifest", manifest, "Manifest path (default <out-dir>/manifest.json)");
  }

  int run(const Session& s) const {
    const NmiNorm norm = parse_nmi_norm(nmi_norm);
    const Graph g = load_edge_list(graph);
    const ClusterLabels t = load_labels_csv(truth);
    if (t.size() != g.num_nodes()) {
      throw InputError("truth has " + std::to_string(t.size()) + " labels but the graph has " +
                       std::to_string(g.num_nodes()) + " nodes");
    }

    RunManifest m = s.manifest("pipeline");
    m.flags = {{"graph", graph}, {"truth", truth}, {"dim", dim}, {"clusters", clusters},
               {"restarts", restarts}, {"nmi_norm", nmi_norm}, {"ordered", ordered}, {"out_dir", out_dir}};
    m.flags["vbc_threshold"] = vbc_threshold ? json(*vbc_threshold) : json(nullptr);
    solver.record(m.flags);
    m.seed = solver.seed;
    m.add_input("graph", graph);
    m.add_input("truth", truth);
    std::optional<fs::path> manifest_file;
    if (!manifest.empty()) manifest_file = fs::path(manifest);
    else if (!out_dir.empty()) manifest_file = fs::path(out_dir) / "manifest.json";

    const CentralityReport centrality = betweenness(g, ordered ? PairConvention::ordered : PairConvention::unordered);
    if (vbc_threshold && !(centrality.vbc <= *vbc_threshold)) {
      s.err << "vbc " << format_double(centrality.vbc) << " exceeds threshold "
            << format_double(*vbc_threshold) << "; graph not qualified\n";
      s.finish(m, manifest_file);
      return kThresholdFailed;
    }

    const Embedding e = solver.run(g, dim);
    KMeansOptions kopts;
    kopts.restarts = restarts;
    kopts.seed = solver.seed;
    const KMeansResult km = kmeans(e.coords, clusters, kopts);
    const MetricsReport metrics = evaluate(km.labels, t, norm);

    json report;
    report["metrics"] = metrics_json(metrics);
    report["vbc"] = vbc_json(centrality);
    report["diagnostics"] = diagnostics_json(e);
    report["kmeans"] = {{"wcss", km.wcss}, {"best_restart", km.best_restart}};
    s.out << report.dump(2) << '\n';

    if (!out_dir.empty()) {
      const fs::path dir(out_dir);
      std::error_code ec;
      fs::create_directories(dir, ec);
      if (ec) throw InputError("cannot create " + dir.string() + ": " + ec.message());
      write_file(dir / "embedding.csv", embedding_text(e.coords));
      write_file(dir / "labels.csv", labels_text(km.labels));
      write_json_file(dir / "report.json", report);
    }
    s.finish(m, manifest_file);
    return kOk;
  }
};

struct GenerateCmd {
  std::string kind;
  std::size_t size = 0;
  std::size_t cols = 0;
  std::string output;
  std::string manifest;

  void attach(CLI::App* sub) {
    sub->add_option("--kind", kind, "path | ring | star | grid | trimesh")->required();
    sub->add_option("--size", size, "Node count, or rows for grid/trimesh")->required();
    sub->add_option("--cols", cols, "Columns for grid/trimesh lattices");
    sub->add_option("--output", output, "Edge-list TSV")->required();
    sub->add_option("--manifest", manifest, "Manifest path (default <output>.manifest.json)");
  }

  int run(const Session& s) const {
    const Graph g = generate(parse_graph_kind(kind), size, cols);
    write_file(output, edges_text(g));
    RunManifest m = s.manifest("generate");
    m.flags = {{"kind", kind}, {"size", size}, {"cols", cols}, {"output", output}};
    s.finish(m, manifest_target(manifest, output));
    return kOk;
  }
};

struct ReplayCmd {
  std::string manifest;

  void attach(CLI::App* sub) {
    sub->add_option("manifest", manifest, "Manifest JSON written by a previous run")->required();
  }

  int run(const Session& s) const {
    const RunManifest m = RunManifest::from_json(read_json_file(manifest));
    if (m.command == "replay" || m.argv.empty()) throw InputError("manifest cannot be replayed");
    for (const auto& [role, entry] : m.inputs.items()) {
      const std::string path = entry.at("path").get<std::string>();
      const std::string expected = entry.at("fnv1a64").get<std::string>();
      if (hex_digest(file_digest(path)) != expected) {
        throw InputError("input `" + role + "` (" + path + ") no longer matches digest " + expected);
      }
    }
    return cli::run(m.argv, s.out, s.err);
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral embedding of manifold graphs", "manigraph"};
  app.require_subcommand(1);
  app.set_version_flag("--version", MANIGRAPH_VERSION);
  int threads_flag = 0;
  app.add_option("--threads", threads_flag,
                 "Worker threads (default: MANIGRAPH_THREADS or hardware count; results do not depend on it)");

  KnnCmd knn;
  EmbedCmd emb;
  VbcCmd vbc_cmd;
  ClusterCmd cluster;
  EvalCmd eval;
  PipelineCmd pipeline;
  GenerateCmd gen;
  ReplayCmd replay;

  auto* knn_sub = app.add_subcommand("knn", "Build a union-symmetrized kNN graph from features");
  knn.attach(knn_sub);
  auto* embed_sub = app.add_subcommand("embed", "Embed a graph");
  emb.attach(embed_sub);
  auto* vbc_sub = app.add_subcommand("vbc", "Betweenness-centrality variance of a graph");
  vbc_cmd.attach(vbc_sub);
  auto* cluster_sub = app.add_subcommand("cluster", "k-means++ on an embedding");
  cluster.attach(cluster_sub);
  auto* eval_sub = app.add_subcommand("eval", "Compare two labelings");
  eval.attach(eval_sub);
  auto* pipeline_sub = app.add_subcommand("pipeline", "vbc, embed, cluster and eval in one run");
  pipeline.attach(pipeline_sub);
  auto* gen_sub = app.add_subcommand("generate", "Write a synthetic graph");
  gen.attach(gen_sub);
  auto* replay_sub = app.add_subcommand("replay", "Rerun the command recorded in a manifest");
  replay.attach(replay_sub);

  std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kInputError;
  }

  try {
    Session session{args, out, err};
    const int resolved = resolve_threads(threads_flag);
    set_num_threads(resolved);
    session.threads = num_threads();

    if (knn_sub->parsed()) return knn.run(session);
    if (embed_sub->parsed()) return emb.run(session);
    if (vbc_sub->parsed()) return vbc_cmd.run(session);
    if (cluster_sub->parsed()) return cluster.run(session);
    if (eval_sub->parsed()) return eval.run(session);
    if (pipeline_sub->parsed()) return pipeline.run(session);
    if (gen_sub->parsed()) return gen.run(session);
    if (replay_sub->parsed()) return replay.run(session);
    err << "error: no command\n";
    return kInputError;
  } catch (const GraphPreconditionError& e) {
    err << "error: " << e.what() << " (components: " << e.components()
        << "); extract the largest connected component first\n";
    return kGraphPrecondition;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << "; no output written\n";
    return kSolverFailure;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace manigraph::cli
