// densewalk: random-walk toolkit CLI.
//
// Verbs: preprocess, density, walks, fit, generate, evaluate, benchmark,
// entropy. Global flags (usable before or after the verb): --seed, --threads,
// --out-dir, --invert-ranking, --assemble-mode, --config.
// Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "densewalk/bench.hpp"
#include "densewalk/density.hpp"
#include "densewalk/edge_split.hpp"
#include "densewalk/error.hpp"
#include "densewalk/generator.hpp"
#include "densewalk/graph.hpp"
#include "densewalk/metrics.hpp"
#include "densewalk/parallel.hpp"
#include "densewalk/pipeline.hpp"
#include "densewalk/proximity.hpp"
#include "densewalk/rng.hpp"
#include "densewalk/scores.hpp"
#include "densewalk/walks.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace densewalk;

namespace {

struct GlobalOpts {
  std::uint64_t seed = 1;
  unsigned threads = 0;  // 0 = all hardware threads
  std::string out_dir = "out";
  bool invert_ranking = false;
  std::string assemble_mode = "top_k";
};

AssembleMode parse_assemble_mode(const std::string& name) {
  if (name == "top_k") return AssembleMode::top_k;
  if (name == "sample") return AssembleMode::sample;
  throw DataError("unknown assemble mode '" + name +
                  "' (expected top_k or sample)");
}

StartStrategy parse_start_strategy(const std::string& name) {
  if (name == "uniform_random") return StartStrategy::uniform_random;
  if (name == "dense_top_k") return StartStrategy::dense_top_k;
  if (name == "density_weighted") return StartStrategy::density_weighted;
  throw DataError("unknown start strategy '" + name + "'");
}

std::string fmt(const char* format, double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, value);
  return buf;
}

// Persisted parameter echo: every command records its resolved inputs so any
// output directory is reproducible from the files alone.
void write_echo(const std::string& out_dir, json params) {
  fs::create_directories(out_dir);
  const auto path = (fs::path(out_dir) / "command.json").string();
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  out << params.dump(2) << '\n';
}

// --ranking accepts either a directory holding ranking.csv/ranking.json or
// the CSV path itself (sidecar = same name with .json).
std::pair<std::string, std::string> ranking_paths(const std::string& arg) {
  fs::path p(arg);
  if (fs::is_directory(p))
    return {(p / "ranking.csv").string(), (p / "ranking.json").string()};
  fs::path sidecar = p;
  sidecar.replace_extension(".json");
  return {p.string(), sidecar.string()};
}

struct DensityOpts {
  std::string mode = "monte_carlo";
  int l = 8;
  std::size_t walks_per_vertex = 100;
  double c = 0.15;
  double sigma = 1.0;
  bool sigma_auto = false;
};

void add_density_flags(CLI::App* cmd, DensityOpts& d) {
  cmd->add_option("--density-mode", d.mode,
                  "Proximity estimator: monte_carlo or exact")
      ->check(CLI::IsMember({"monte_carlo", "mc", "exact"}))
      ->capture_default_str();
  cmd->add_option("--l-density", d.l, "Proximity horizon (steps)")
      ->capture_default_str();
  cmd->add_option("--density-walks-per-vertex", d.walks_per_vertex,
                  "Monte-Carlo walks per vertex")
      ->capture_default_str();
  cmd->add_option("--c", d.c, "Restart weight in (0,1)")
      ->capture_default_str();
  cmd->add_option("--sigma", d.sigma, "Influence kernel width")
      ->capture_default_str();
  cmd->add_flag("--sigma-auto", d.sigma_auto,
                "Set sigma to the mean positive off-diagonal proximity");
}

DensityRanking make_ranking(const Graph& g, const DensityOpts& d,
                            bool descending, std::uint64_t seed) {
  const TransitionMatrix P = transition_matrix(g);
  ProximityParams params;
  params.l = d.l;
  params.c = d.c;
  if (d.mode == "exact") {
    if (g.num_vertices() > params.max_materialize_n) {
      if (d.sigma_auto)
        throw DataError(
            "--sigma-auto requires materializing the proximity matrix; not "
            "supported above " +
            std::to_string(params.max_materialize_n) + " vertices");
      return density_scores_streaming(P, params, d.sigma, descending);
    }
    const ProximityMatrix R = proximity_exact(P, params);
    return density_scores(R, d.sigma_auto ? auto_sigma(R) : d.sigma,
                          descending);
  }
  const ProximityMatrix R = proximity_monte_carlo(
      P, params, d.walks_per_vertex, derive_seed(seed, "density"));
  return density_scores(R, d.sigma_auto ? auto_sigma(R) : d.sigma, descending);
}

json density_echo(const DensityOpts& d) {
  return {{"mode", d.mode == "mc" ? "monte_carlo" : d.mode},
          {"l_density", d.l},
          {"walks_per_vertex", d.walks_per_vertex},
          {"c", d.c},
          {"sigma", d.sigma},
          {"sigma_auto", d.sigma_auto}};
}

json summary_json(const MetricSummary& s) {
  return {{"mean", s.mean},
          {"stddev", s.stddev},
          {"min", s.min},
          {"max", s.max},
          {"n", s.n}};
}

struct WalkOpts {
  std::string strategy = "uniform_random";
  int walk_length = 2;
  std::size_t batch_size = 13;
  std::size_t num_batches = 100;
  std::size_t k = 0;
  double random_mix_frac = 0.0;
  double temperature = 1.0;
};

void add_walk_flags(CLI::App* cmd, WalkOpts& w) {
  cmd->add_option("--strategy", w.strategy,
                  "Start strategy: uniform_random, dense_top_k, or "
                  "density_weighted")
      ->check(CLI::IsMember(
          {"uniform_random", "dense_top_k", "density_weighted"}))
      ->capture_default_str();
  cmd->add_option("--walk-length", w.walk_length,
                  "Steps per walk (a walk visits walk-length + 1 vertices)")
      ->capture_default_str();
  cmd->add_option("--batch-size", w.batch_size, "Walks per batch")
      ->capture_default_str();
  cmd->add_option("--num-batches", w.num_batches, "Number of batches")
      ->capture_default_str();
  cmd->add_option("--k", w.k,
                  "dense_top_k set size (0 = max(10, ceil(0.1 n)))")
      ->capture_default_str();
  cmd->add_option("--random-mix-frac", w.random_mix_frac,
                  "Fraction of the dense start set replaced by uniform picks")
      ->capture_default_str();
  cmd->add_option("--temperature", w.temperature,
                  "density_weighted softmax temperature")
      ->capture_default_str();
}

WalkConfig to_walk_config(const WalkOpts& w, std::uint64_t seed) {
  WalkConfig cfg;
  cfg.walk_length = w.walk_length;
  cfg.batch_size = w.batch_size;
  cfg.num_batches = w.num_batches;
  cfg.strategy.kind = parse_start_strategy(w.strategy);
  cfg.strategy.k = w.k;
  cfg.strategy.random_mix_frac = w.random_mix_frac;
  cfg.strategy.temperature = w.temperature;
  cfg.seed = seed;
  return cfg;
}

json walk_echo(const WalkOpts& w) {
  return {{"strategy", w.strategy},
          {"walk_length", w.walk_length},
          {"batch_size", w.batch_size},
          {"num_batches", w.num_batches},
          {"k", w.k},
          {"random_mix_frac", w.random_mix_frac},
          {"temperature", w.temperature}};
}

int run_cli(int argc, char** argv) {
  CLI::App app{
      "densewalk: density-guided random-walk sampling, surrogate walk "
      "generators, and link-prediction benchmarks on undirected graphs"};
  app.require_subcommand(1);
  GlobalOpts g;
  app.add_option("--seed", g.seed, "Master seed; all randomness derives here")
      ->capture_default_str();
  app.add_option("--threads", g.threads,
                 "Worker thread cap (0 = hardware); never changes results")
      ->capture_default_str();
  app.add_option("--out-dir", g.out_dir, "Output directory")
      ->capture_default_str();
  app.add_flag("--invert-ranking", g.invert_ranking,
               "Rank ascending: treat low-score vertices as walk starts");
  app.add_option("--assemble-mode", g.assemble_mode,
                 "Graph assembly from scores: top_k or sample")
      ->check(CLI::IsMember({"top_k", "sample"}))
      ->capture_default_str();
  app.set_config("--config", "",
                 "Read key=value defaults from an INI/TOML file "
                 "([verb] sections); explicit flags win");

  // ---- preprocess ----------------------------------------------------
  auto* cmd_pre = app.add_subcommand(
      "preprocess",
      "Load an edge list, keep the largest connected component, hold out "
      "validation/test edges, and persist the split directory");
  cmd_pre->fallthrough();
  struct {
    std::string input;
    double val_frac = 0.05;
    double test_frac = 0.10;
  } pre;
  cmd_pre->add_option("--input", pre.input, "Edge-list file (u v [w] lines)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd_pre->add_option("--val-frac", pre.val_frac,
                      "Fraction of edges held out for validation")
      ->capture_default_str();
  cmd_pre->add_option("--test-frac", pre.test_frac,
                      "Fraction of edges held out for testing")
      ->capture_default_str();
  cmd_pre->callback([&]() {
    set_max_threads(g.threads);
    const LoadedGraph loaded = load_edge_list(pre.input);
    Graph work = loaded.graph;
    std::vector<std::int64_t> original_ids = loaded.original_ids;
    bool component_selected = false;
    if (!work.connected()) {
      ComponentResult comp = largest_connected_component(work);
      std::vector<std::int64_t> ids;
      ids.reserve(comp.original_ids.size());
      for (VertexId v : comp.original_ids)
        ids.push_back(loaded.original_ids[v]);
      std::cout << "input is disconnected: keeping largest component ("
                << comp.graph.num_vertices() << " of " << work.num_vertices()
                << " vertices)\n";
      work = std::move(comp.graph);
      original_ids = std::move(ids);
      component_selected = true;
    }
    const EdgeSplit split =
        split_edges(work, pre.val_frac, pre.test_frac, g.seed);
    save_split(split, g.out_dir, original_ids);
    write_echo(g.out_dir, {{"command", "preprocess"},
                           {"input", pre.input},
                           {"val_frac", pre.val_frac},
                           {"test_frac", pre.test_frac},
                           {"seed", g.seed},
                           {"component_selected", component_selected}});
    std::cout << "split written to " << g.out_dir << ": train "
              << split.train.num_edges() << " edges, val "
              << split.val_edges.size() << ", test "
              << split.test_edges.size() << " (" << work.num_vertices()
              << " vertices)\n";
    if (split.val_shortfall + split.test_shortfall > 0)
      std::cout << "holdout shortfall: val " << split.val_shortfall
                << ", test " << split.test_shortfall
                << " (not enough removable non-tree edges)\n";
  });

  // ---- density --------------------------------------------------------
  auto* cmd_density = app.add_subcommand(
      "density",
      "Score every vertex by aggregate proximity influence and write "
      "ranking.csv / ranking.json");
  cmd_density->fallthrough();
  struct {
    std::string split_dir;
    DensityOpts d;
  } den;
  cmd_density->add_option("--split", den.split_dir, "Split directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  add_density_flags(cmd_density, den.d);
  cmd_density->callback([&]() {
    set_max_threads(g.threads);
    const EdgeSplit split = load_split(den.split_dir);
    const DensityRanking ranking =
        make_ranking(split.train, den.d, !g.invert_ranking, g.seed);
    fs::create_directories(g.out_dir);
    const auto csv = (fs::path(g.out_dir) / "ranking.csv").string();
    const auto js = (fs::path(g.out_dir) / "ranking.json").string();
    save_ranking(ranking, csv, js);
    json echo = {{"command", "density"},
                 {"split", den.split_dir},
                 {"seed", g.seed},
                 {"invert_ranking", g.invert_ranking}};
    echo["density"] = density_echo(den.d);
    write_echo(g.out_dir, echo);
    std::cout << "ranking written to " << csv << "; top vertex "
              << ranking.order.front() << " (score "
              << fmt("%.6f", ranking.scores[ranking.order.front()]) << ")\n";
  });

  // ---- walks ----------------------------------------------------------
  auto* cmd_walks = app.add_subcommand(
      "walks", "Sample fixed-length random walks from the train graph");
  cmd_walks->fallthrough();
  struct {
    std::string split_dir;
    std::string ranking;
    WalkOpts w;
  } wk;
  cmd_walks->add_option("--split", wk.split_dir, "Split directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  cmd_walks->add_option("--ranking", wk.ranking,
                        "Ranking CSV (or its directory); required by dense "
                        "strategies");
  add_walk_flags(cmd_walks, wk.w);
  cmd_walks->callback([&]() {
    set_max_threads(g.threads);
    const EdgeSplit split = load_split(wk.split_dir);
    DensityRanking ranking;
    const DensityRanking* ranking_ptr = nullptr;
    if (!wk.ranking.empty()) {
      const auto [csv, js] = ranking_paths(wk.ranking);
      ranking = load_ranking(csv, js);
      ranking_ptr = &ranking;
    }
    const WalkSet walks =
        sample_walks(split.train, to_walk_config(wk.w, g.seed), ranking_ptr);
    fs::create_directories(g.out_dir);
    const auto path = (fs::path(g.out_dir) / "walks.txt").string();
    export_walks(walks, path);
    json echo = {{"command", "walks"},
                 {"split", wk.split_dir},
                 {"ranking", wk.ranking},
                 {"seed", g.seed}};
    echo["walks"] = walk_echo(wk.w);
    write_echo(g.out_dir, echo);
    std::cout << walks.size() << " walks of " << wk.w.walk_length
              << " steps written to " << path << '\n';
  });

  // ---- fit ------------------------------------------------------------
  auto* cmd_fit = app.add_subcommand(
      "fit", "Fit a surrogate walk generator on a walk file and save the "
             "bundle");
  cmd_fit->fallthrough();
  struct {
    std::string split_dir;
    std::string walks_file;
    std::string generator = "markov";
    double alpha = 0.01;
  } ft;
  cmd_fit->add_option("--split", ft.split_dir, "Split directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  cmd_fit->add_option("--walks", ft.walks_file, "Training walk file")
      ->required()
      ->check(CLI::ExistingFile);
  cmd_fit->add_option("--generator", ft.generator, "markov or replay")
      ->check(CLI::IsMember({"markov", "replay"}))
      ->capture_default_str();
  cmd_fit->add_option("--alpha", ft.alpha, "Markov smoothing weight")
      ->capture_default_str();
  cmd_fit->callback([&]() {
    set_max_threads(g.threads);
    const EdgeSplit split = load_split(ft.split_dir);
    const WalkSet train = import_walks(ft.walks_file, split.train);
    auto gen = generator_factory(ft.generator, ft.alpha)();
    gen->fit(train, split.train);
    gen->save(g.out_dir);
    write_echo(g.out_dir, {{"command", "fit"},
                           {"split", ft.split_dir},
                           {"walks", ft.walks_file},
                           {"generator", ft.generator},
                           {"alpha", ft.alpha},
                           {"training_walks", train.size()}});
    std::cout << ft.generator << " generator fitted on " << train.size()
              << " walks; bundle written to " << g.out_dir << '\n';
  });

  // ---- generate -------------------------------------------------------
  auto* cmd_gen = app.add_subcommand(
      "generate", "Generate surrogate walks from a fitted bundle");
  cmd_gen->fallthrough();
  struct {
    std::string bundle;
    std::size_t count = 0;
    int walk_length = 0;  // 0 = the bundle's fitted length
  } gn;
  cmd_gen->add_option("--bundle", gn.bundle, "Generator bundle directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  cmd_gen->add_option("--count", gn.count, "Number of walks")->required();
  cmd_gen->add_option("--walk-length", gn.walk_length,
                      "Steps per walk (0 = fitted length)")
      ->capture_default_str();
  cmd_gen->callback([&]() {
    set_max_threads(g.threads);
    auto gen = load_generator(gn.bundle);
    int l = gn.walk_length;
    if (l == 0) {
      std::ifstream in(
          (fs::path(gn.bundle) / "generator.json").string());
      json meta;
      in >> meta;
      l = meta.value("fitted_walk_length", 0);
      if (l == 0)
        throw DataError("bundle does not record a walk length; pass "
                        "--walk-length");
    }
    const WalkSet walks = gen->generate(gn.count, l, g.seed);
    fs::create_directories(g.out_dir);
    const auto path = (fs::path(g.out_dir) / "generated.walks").string();
    export_walks(walks, path);
    write_echo(g.out_dir, {{"command", "generate"},
                           {"bundle", gn.bundle},
                           {"count", gn.count},
                           {"walk_length", l},
                           {"seed", g.seed},
                           {"generator", gen->id()}});
    std::cout << walks.size() << " generated walks written to " << path
              << '\n';
  });

  // ---- evaluate -------------------------------------------------------
  auto* cmd_eval = app.add_subcommand(
      "evaluate",
      "Run the walk -> fit -> generate -> score pipeline and report ROC-AUC, "
      "average precision, and edge overlap against the held-out test set");
  cmd_eval->fallthrough();
  struct {
    std::string split_dir;
    std::string ranking;
    WalkOpts w;
    DensityOpts d;
    std::string generator = "markov";
    double alpha = 0.01;
    std::size_t generated_factor = 10;
    std::size_t repetitions = 10;
  } ev;
  cmd_eval->add_option("--split", ev.split_dir, "Split directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  cmd_eval->add_option("--ranking", ev.ranking,
                       "Ranking CSV or directory (computed on the fly when "
                       "omitted and a dense strategy is chosen)");
  add_walk_flags(cmd_eval, ev.w);
  add_density_flags(cmd_eval, ev.d);
  cmd_eval->add_option("--generator", ev.generator, "markov or replay")
      ->check(CLI::IsMember({"markov", "replay"}))
      ->capture_default_str();
  cmd_eval->add_option("--alpha", ev.alpha, "Markov smoothing weight")
      ->capture_default_str();
  cmd_eval->add_option("--generated-factor", ev.generated_factor,
                       "Generated walks per training walk")
      ->capture_default_str();
  cmd_eval->add_option("--repetitions", ev.repetitions,
                       "Independent pipeline repetitions")
      ->capture_default_str();
  cmd_eval->callback([&]() {
    set_max_threads(g.threads);
    const EdgeSplit split = load_split(ev.split_dir);
    DensityRanking ranking;
    const DensityRanking* ranking_ptr = nullptr;
    const bool needs_ranking = ev.w.strategy != "uniform_random";
    if (!ev.ranking.empty()) {
      const auto [csv, js] = ranking_paths(ev.ranking);
      ranking = load_ranking(csv, js);
      ranking_ptr = &ranking;
    } else if (needs_ranking) {
      ranking = make_ranking(split.train, ev.d, !g.invert_ranking, g.seed);
      ranking_ptr = &ranking;
    }
    PipelineConfig cfg;
    cfg.walk = to_walk_config(ev.w, 0);
    cfg.alpha = ev.alpha;
    cfg.generated_factor = ev.generated_factor;
    cfg.assemble_mode = parse_assemble_mode(g.assemble_mode);
    const EvalAggregate agg = evaluate_pipeline(
        split, cfg, generator_factory(ev.generator, ev.alpha), ranking_ptr,
        ev.repetitions, g.seed);

    json out;
    out["aggregate"] = {
        {"roc_auc", summary_json(agg.roc_auc)},
        {"average_precision", summary_json(agg.average_precision)},
        {"edge_overlap", summary_json(agg.edge_overlap)}};
    out["reports"] = json::array();
    for (const auto& r : agg.reports) {
      json rep;
      rep["rep_index"] = r.rep_index;
      rep["rep_seed"] = r.rep_seed;
      rep["roc_auc"] = r.roc_auc;
      rep["average_precision"] = r.average_precision;
      rep["edge_overlap"] = r.edge_overlap;
      rep["training_accuracy"] = nullptr;  // surrogate exposes no loss
      rep["training_walks"] = r.training_walks;
      rep["generated_walks"] = r.generated_walks;
      out["reports"].push_back(rep);
    }
    out["parameters"] = {{"split", ev.split_dir},
                         {"ranking", ev.ranking},
                         {"generator", ev.generator},
                         {"alpha", ev.alpha},
                         {"generated_factor", ev.generated_factor},
                         {"repetitions", ev.repetitions},
                         {"assemble_mode", g.assemble_mode},
                         {"invert_ranking", g.invert_ranking},
                         {"seed", g.seed}};
    out["parameters"]["walks"] = walk_echo(ev.w);
    if (ev.ranking.empty() && needs_ranking)
      out["parameters"]["density"] = density_echo(ev.d);
    fs::create_directories(g.out_dir);
    const auto path = (fs::path(g.out_dir) / "evaluation.json").string();
    {
      std::ofstream f(path);
      if (!f) throw DataError("cannot write " + path);
      f << out.dump(2) << '\n';
    }
    json echo = out["parameters"];
    echo["command"] = "evaluate";
    write_echo(g.out_dir, echo);
    std::cout << "roc_auc            mean " << fmt("%.4f", agg.roc_auc.mean)
              << "  stddev " << fmt("%.4f", agg.roc_auc.stddev) << '\n'
              << "average_precision  mean "
              << fmt("%.4f", agg.average_precision.mean) << "  stddev "
              << fmt("%.4f", agg.average_precision.stddev) << '\n'
              << "edge_overlap       mean "
              << fmt("%.4f", agg.edge_overlap.mean) << "  stddev "
              << fmt("%.4f", agg.edge_overlap.stddev) << '\n'
              << "report written to " << path << '\n';
  });

  // ---- benchmark ------------------------------------------------------
  auto* cmd_bench = app.add_subcommand(
      "benchmark",
      "Run the full (batch size, walk length) x strategy grid and write "
      "per-cell JSON, aggregate.csv, and summary.md");
  cmd_bench->fallthrough();
  struct {
    std::string split_dir;
    std::string cells = "13x2,19x3,25x4,40x5";
    std::string strategies = "uniform_random,dense_top_k";
    std::size_t repetitions = 10;
    std::size_t num_batches = 100;
    DensityOpts d;
    std::size_t k = 0;
    double random_mix_frac = 0.0;
    std::string generator = "markov";
    double alpha = 0.01;
    std::size_t generated_factor = 10;
  } bm;
  cmd_bench->add_option("--split", bm.split_dir, "Split directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  cmd_bench->add_option("--cells", bm.cells,
                        "Comma-separated batchxlength cells")
      ->capture_default_str();
  cmd_bench->add_option("--strategies", bm.strategies,
                        "Comma-separated start strategies")
      ->capture_default_str();
  cmd_bench->add_option("--repetitions", bm.repetitions,
                        "Repetitions per cell")
      ->capture_default_str();
  cmd_bench->add_option("--num-batches", bm.num_batches, "Batches per run")
      ->capture_default_str();
  add_density_flags(cmd_bench, bm.d);
  cmd_bench->add_option("--k", bm.k,
                        "dense_top_k set size (0 = max(10, ceil(0.1 n)))")
      ->capture_default_str();
  cmd_bench->add_option("--random-mix-frac", bm.random_mix_frac,
                        "Fraction of the dense set replaced by uniform picks")
      ->capture_default_str();
  cmd_bench->add_option("--generator", bm.generator, "markov or replay")
      ->check(CLI::IsMember({"markov", "replay"}))
      ->capture_default_str();
  cmd_bench->add_option("--alpha", bm.alpha, "Markov smoothing weight")
      ->capture_default_str();
  cmd_bench->add_option("--generated-factor", bm.generated_factor,
                        "Generated walks per training walk")
      ->capture_default_str();
  cmd_bench->callback([&]() {
    set_max_threads(g.threads);
    const EdgeSplit split = load_split(bm.split_dir);
    BenchmarkSpec spec;
    spec.cells.clear();
    for (const auto& token : CLI::detail::split(bm.cells, ',')) {
      const auto x = token.find('x');
      if (x == std::string::npos || x == 0 || x + 1 >= token.size())
        throw DataError("bad cell '" + token + "' (expected BATCHxLENGTH)");
      spec.cells.push_back(
          {static_cast<std::size_t>(std::stoull(token.substr(0, x))),
           std::stoi(token.substr(x + 1))});
    }
    spec.strategies = CLI::detail::split(bm.strategies, ',');
    spec.repetitions = bm.repetitions;
    spec.num_batches = bm.num_batches;
    spec.density_mode = bm.d.mode == "mc" ? "monte_carlo" : bm.d.mode;
    spec.l_density = bm.d.l;
    spec.density_walks_per_vertex = bm.d.walks_per_vertex;
    spec.c = bm.d.c;
    spec.sigma = bm.d.sigma;
    spec.sigma_auto = bm.d.sigma_auto;
    spec.invert_ranking = g.invert_ranking;
    spec.k = bm.k;
    spec.random_mix_frac = bm.random_mix_frac;
    spec.generator_id = bm.generator;
    spec.alpha = bm.alpha;
    spec.generated_factor = bm.generated_factor;
    spec.assemble_mode = parse_assemble_mode(g.assemble_mode);
    spec.seed = g.seed;
    const BenchmarkResult result = run_benchmark(split, spec, g.out_dir);
    json echo = {{"command", "benchmark"},
                 {"split", bm.split_dir},
                 {"cells", bm.cells},
                 {"strategies", bm.strategies},
                 {"repetitions", bm.repetitions},
                 {"num_batches", bm.num_batches},
                 {"k", bm.k},
                 {"random_mix_frac", bm.random_mix_frac},
                 {"generator", bm.generator},
                 {"alpha", bm.alpha},
                 {"generated_factor", bm.generated_factor},
                 {"assemble_mode", g.assemble_mode},
                 {"invert_ranking", g.invert_ranking},
                 {"seed", g.seed}};
    echo["density"] = density_echo(bm.d);
    write_echo(g.out_dir, echo);
    std::cout << result.rows.size() << " result rows written to "
              << result.aggregate_csv_path << '\n'
              << "summary table: " << result.summary_md_path << '\n';
  });

  // ---- entropy --------------------------------------------------------
  auto* cmd_entropy = app.add_subcommand(
      "entropy",
      "Compare empirical walk entropy of top-decile vs bottom-decile density "
      "vertices (mean over per-vertex entropies, repeated)");
  cmd_entropy->fallthrough();
  struct {
    std::string split_dir;
    std::string ranking;
    DensityOpts d{.mode = "exact"};
    int walk_length = 2;
    std::size_t walks = 1000;
    std::size_t repetitions = 50;
  } en;
  cmd_entropy->add_option("--split", en.split_dir, "Split directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  cmd_entropy->add_option("--ranking", en.ranking,
                          "Ranking CSV or directory (computed with the "
                          "density defaults when omitted)");
  add_density_flags(cmd_entropy, en.d);
  cmd_entropy->add_option("--walk-length", en.walk_length, "Steps per walk")
      ->capture_default_str();
  cmd_entropy->add_option("--walks", en.walks, "Walks per vertex")
      ->capture_default_str();
  cmd_entropy->add_option("--repetitions", en.repetitions,
                          "Independent repetitions")
      ->capture_default_str();
  cmd_entropy->callback([&]() {
    set_max_threads(g.threads);
    const EdgeSplit split = load_split(en.split_dir);
    const Graph& train = split.train;
    DensityRanking ranking;
    if (!en.ranking.empty()) {
      const auto [csv, js] = ranking_paths(en.ranking);
      ranking = load_ranking(csv, js);
      if (ranking.scores.size() != train.num_vertices())
        throw DataError("ranking size does not match the train graph");
    } else {
      ranking = make_ranking(train, en.d, !g.invert_ranking, g.seed);
    }
    const std::size_t n = train.num_vertices();
    const std::size_t decile = (n + 9) / 10;
    const std::vector<VertexId> top(ranking.order.begin(),
                                    ranking.order.begin() + decile);
    const std::vector<VertexId> bottom(ranking.order.end() - decile,
                                       ranking.order.end());
    const auto decile_mean = [&](const std::vector<VertexId>& verts,
                                 std::uint64_t rep_seed) {
      double total = 0.0;
      for (VertexId v : verts) {
        const WalkSet walks =
            sample_walks_from(train, v, en.walks, en.walk_length,
                              derive_seed(rep_seed, "vertex", v));
        total += walk_entropy(walks);
      }
      return total / static_cast<double>(verts.size());
    };
    std::vector<double> top_means, bottom_means;
    std::size_t top_lower = 0;
    for (std::size_t rep = 0; rep < en.repetitions; ++rep) {
      const std::uint64_t rep_seed = derive_seed(g.seed, "entropy-rep", rep);
      top_means.push_back(decile_mean(top, derive_seed(rep_seed, "top")));
      bottom_means.push_back(
          decile_mean(bottom, derive_seed(rep_seed, "bottom")));
      if (top_means.back() < bottom_means.back()) ++top_lower;
    }
    const MetricSummary top_summary = summarize(top_means);
    const MetricSummary bottom_summary = summarize(bottom_means);

    json out;
    out["top_decile"] = summary_json(top_summary);
    out["bottom_decile"] = summary_json(bottom_summary);
    out["difference_mean"] = top_summary.mean - bottom_summary.mean;
    out["top_lower_count"] = top_lower;
    out["repetitions"] = en.repetitions;
    out["decile_size"] = decile;
    out["walk_length"] = en.walk_length;
    out["walks_per_vertex"] = en.walks;
    out["seed"] = g.seed;
    out["ranking_source"] = en.ranking.empty() ? "computed" : en.ranking;
    if (en.ranking.empty()) out["density"] = density_echo(en.d);
    fs::create_directories(g.out_dir);
    const auto path = (fs::path(g.out_dir) / "entropy.json").string();
    {
      std::ofstream f(path);
      if (!f) throw DataError("cannot write " + path);
      f << out.dump(2) << '\n';
    }
    json echo = {{"command", "entropy"},
                 {"split", en.split_dir},
                 {"ranking", en.ranking},
                 {"walk_length", en.walk_length},
                 {"walks", en.walks},
                 {"repetitions", en.repetitions},
                 {"seed", g.seed},
                 {"invert_ranking", g.invert_ranking}};
    write_echo(g.out_dir, echo);
    std::cout << "top-decile mean entropy    "
              << fmt("%.6f", top_summary.mean) << " (stddev "
              << fmt("%.6f", top_summary.stddev) << ")\n"
              << "bottom-decile mean entropy "
              << fmt("%.6f", bottom_summary.mean) << " (stddev "
              << fmt("%.6f", bottom_summary.stddev) << ")\n"
              << "top lower in " << top_lower << "/" << en.repetitions
              << " repetitions; report written to " << path << '\n';
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 2;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
}
