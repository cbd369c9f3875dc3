#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "densewalk/pipeline.hpp"

namespace densewalk {

struct BenchmarkCell {
  std::size_t batch_size = 13;
  int walk_length = 2;
};

struct BenchmarkSpec {
  std::vector<BenchmarkCell> cells = {{13, 2}, {19, 3}, {25, 4}, {40, 5}};
  std::vector<std::string> strategies = {"uniform_random", "dense_top_k"};
  std::size_t repetitions = 10;
  std::size_t num_batches = 100;

  // Density ranking computed once on the train graph.
  std::string density_mode = "monte_carlo";  // or "exact"
  int l_density = 8;
  std::size_t density_walks_per_vertex = 100;
  double c = 0.15;
  double sigma = 1.0;
  bool sigma_auto = false;
  bool invert_ranking = false;
  std::size_t k = 0;  // 0 -> max(10, ceil(0.1 n))
  double random_mix_frac = 0.0;

  std::string generator_id = "markov";
  double alpha = 0.01;
  std::size_t generated_factor = 10;
  AssembleMode assemble_mode = AssembleMode::top_k;
  std::uint64_t seed = 1;
};

struct BenchmarkRow {
  std::string strategy;
  std::size_t batch_size = 0;
  int walk_length = 0;
  std::string metric;
  MetricSummary summary;
};

struct BenchmarkResult {
  std::vector<BenchmarkRow> rows;
  std::string aggregate_csv_path;
  std::string summary_md_path;
};

// Runs the full grid and writes, under out_dir: cells/<cell>.json (per-run
// reports + aggregates), aggregate.csv (one row per strategy x cell x
// metric), summary.md (result table), benchmark_meta.json (resolved spec).
BenchmarkResult run_benchmark(const EdgeSplit& split, const BenchmarkSpec& spec,
                              const std::string& out_dir);

}  // namespace densewalk
