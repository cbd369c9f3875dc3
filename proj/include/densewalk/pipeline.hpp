#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "densewalk/edge_split.hpp"
#include "densewalk/generator.hpp"
#include "densewalk/scores.hpp"
#include "densewalk/walks.hpp"

namespace densewalk {

struct PipelineConfig {
  WalkConfig walk;  // per-repetition seeds are derived; walk.seed is ignored
  double alpha = 0.01;
  // Generated walk count = generated_factor * training walk count.
  std::size_t generated_factor = 10;
  AssembleMode assemble_mode = AssembleMode::top_k;
};

struct EvalReport {
  double roc_auc = 0.0;
  double average_precision = 0.0;
  double edge_overlap = 0.0;
  // The surrogate generators expose no training loss, so a training accuracy
  // cannot be measured; it stays unset and serializes as null.
  std::optional<double> training_accuracy;
  std::size_t rep_index = 0;
  std::uint64_t rep_seed = 0;
  std::size_t training_walks = 0;
  std::size_t generated_walks = 0;
};

struct MetricSummary {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation; 0 for a single value
  double min = 0.0;
  double max = 0.0;
  std::size_t n = 0;
};

MetricSummary summarize(std::span<const double> values);

struct EvalAggregate {
  std::vector<EvalReport> reports;  // ordered by rep_index
  MetricSummary roc_auc;
  MetricSummary average_precision;
  MetricSummary edge_overlap;
};

EvalAggregate aggregate_reports(std::vector<EvalReport> reports);

using GeneratorFactory = std::function<std::unique_ptr<WalkGenerator>()>;

// One repetition: derive seeds -> sample training walks on split.train ->
// fit generator -> generate -> assemble scores -> ROC-AUC / AP against the
// test edges and nonedges -> assemble a graph at |E(train)| edges -> overlap
// against train. Repetition r uses streams derived from (seed, "rep", r).
EvalAggregate evaluate_pipeline(const EdgeSplit& split,
                                const PipelineConfig& cfg,
                                const GeneratorFactory& make_generator,
                                const DensityRanking* ranking,
                                std::size_t repetitions, std::uint64_t seed);

GeneratorFactory generator_factory(const std::string& id, double alpha);

}  // namespace densewalk
