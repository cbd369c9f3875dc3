#include "densewalk/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "densewalk/error.hpp"
#include "densewalk/metrics.hpp"
#include "densewalk/rng.hpp"

namespace densewalk {

MetricSummary summarize(std::span<const double> values) {
  if (values.empty()) throw DataError("summarize: no values");
  MetricSummary s;
  s.n = values.size();
  s.min = values[0];
  s.max = values[0];
  double total = 0.0;
  for (double v : values) {
    total += v;
    s.min = std::min(s.min, v);
    s.max = std::max(s.max, v);
  }
  s.mean = total / static_cast<double>(s.n);
  if (s.n > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(s.n - 1));
  }
  return s;
}

EvalAggregate aggregate_reports(std::vector<EvalReport> reports) {
  if (reports.empty()) throw DataError("aggregate_reports: no reports");
  std::sort(reports.begin(), reports.end(),
            [](const EvalReport& a, const EvalReport& b) {
              return a.rep_index < b.rep_index;
            });
  std::vector<double> auc, ap, overlap;
  for (const auto& r : reports) {
    auc.push_back(r.roc_auc);
    ap.push_back(r.average_precision);
    overlap.push_back(r.edge_overlap);
  }
  EvalAggregate agg;
  agg.roc_auc = summarize(auc);
  agg.average_precision = summarize(ap);
  agg.edge_overlap = summarize(overlap);
  agg.reports = std::move(reports);
  return agg;
}

EvalAggregate evaluate_pipeline(const EdgeSplit& split,
                                const PipelineConfig& cfg,
                                const GeneratorFactory& make_generator,
                                const DensityRanking* ranking,
                                std::size_t repetitions, std::uint64_t seed) {
  if (repetitions == 0)
    throw DataError("evaluate_pipeline: repetitions must be >= 1");
  if (cfg.generated_factor == 0)
    throw DataError("evaluate_pipeline: generated_factor must be >= 1");
  if (split.test_edges.empty() || split.test_nonedges.empty())
    throw DataError(
        "evaluate_pipeline: split has no test edges; re-split with a positive "
        "test fraction");

  std::vector<EvalReport> reports;
  reports.reserve(repetitions);
  for (std::size_t rep = 0; rep < repetitions; ++rep) {
    const std::uint64_t rep_seed = derive_seed(seed, "rep", rep);

    WalkConfig walk_cfg = cfg.walk;
    walk_cfg.seed = derive_seed(rep_seed, "train-walks");
    const WalkSet train = sample_walks(split.train, walk_cfg, ranking);

    auto generator = make_generator();
    generator->fit(train, split.train);
    const std::size_t generated_count = cfg.generated_factor * train.size();
    const WalkSet generated = generator->generate(
        generated_count, walk_cfg.walk_length, derive_seed(rep_seed, "gen"));

    const ScoreMatrix scores =
        assemble_scores(generated, split.train.num_vertices());

    EvalReport report;
    report.rep_index = rep;
    report.rep_seed = rep_seed;
    report.training_walks = train.size();
    report.generated_walks = generated.size();
    std::vector<VertexPair> test_pairs;
    test_pairs.reserve(split.test_edges.size());
    for (const auto& e : split.test_edges) test_pairs.push_back({e.u, e.v});
    report.roc_auc = roc_auc(scores, test_pairs, split.test_nonedges);
    report.average_precision =
        average_precision(scores, test_pairs, split.test_nonedges);

    const AssembledGraph assembled =
        assemble_graph(scores, split.train.num_edges(), cfg.assemble_mode,
                       derive_seed(rep_seed, "assemble"));
    report.edge_overlap = edge_overlap(assembled.graph, split.train);
    reports.push_back(std::move(report));
  }
  return aggregate_reports(std::move(reports));
}

GeneratorFactory generator_factory(const std::string& id, double alpha) {
  if (id == "markov")
    return [alpha]() -> std::unique_ptr<WalkGenerator> {
      return std::make_unique<MarkovGenerator>(alpha);
    };
  if (id == "replay")
    return []() -> std::unique_ptr<WalkGenerator> {
      return std::make_unique<ReplayGenerator>();
    };
  throw DataError("unknown generator '" + id + "' (expected markov or replay)");
}

}  // namespace densewalk
