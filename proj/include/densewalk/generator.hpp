#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "densewalk/graph.hpp"
#include "densewalk/walks.hpp"

namespace densewalk {

// Surrogate for a learned walk model (the seam where a neural generator such
// as a GAN would plug in). Generated walks may propose vertex pairs that are
// not edges of the training graph; that is what makes link prediction work.
class WalkGenerator {
 public:
  virtual ~WalkGenerator() = default;
  virtual void fit(const WalkSet& train, const Graph& g) = 0;
  virtual WalkSet generate(std::size_t count, int walk_length,
                           std::uint64_t seed) const = 0;
  virtual std::string id() const = 0;
  // Persists a bundle directory reloadable via load_generator.
  virtual void save(const std::string& dir) const = 0;
};

// First-order Markov chain over observed walk transitions. Start vertices
// follow the empirical start histogram. From vertex u the successor support
// is (observed successors of u) ∪ (graph neighbors of u); each support entry
// has weight count + alpha. With alpha = 0 and no observations the row falls
// back to uniform over graph neighbors; a vertex with neither observations
// nor neighbors repeats itself (such self-steps are discarded downstream).
class MarkovGenerator final : public WalkGenerator {
 public:
  explicit MarkovGenerator(double alpha = 0.01);

  void fit(const WalkSet& train, const Graph& g) override;
  WalkSet generate(std::size_t count, int walk_length,
                   std::uint64_t seed) const override;
  std::string id() const override { return "markov"; }

  double alpha() const { return alpha_; }
  VertexId n() const { return n_; }
  int fitted_walk_length() const { return fitted_l_; }
  double transition_count(VertexId u, VertexId v) const;
  double start_count(VertexId v) const;

  void save(const std::string& dir) const;
  static std::unique_ptr<MarkovGenerator> load(const std::string& dir);

 private:
  double alpha_;
  VertexId n_ = 0;
  int fitted_l_ = 0;
  std::uint64_t graph_fingerprint_ = 0;
  std::vector<double> start_counts_;
  std::vector<double> start_cum_;  // cumulative over vertices with count > 0
  std::vector<VertexId> start_support_;
  // Per-source support: successor ids ascending with cumulative smoothed
  // weights, precomputed at fit/load time so generate() is pure sampling.
  std::vector<std::vector<VertexId>> support_;
  std::vector<std::vector<double>> support_cum_;

  friend std::unique_ptr<WalkGenerator> load_generator(const std::string&);
};

// Emits the fitted corpus back: a seeded shuffle when count equals the corpus
// size, otherwise uniform draws with replacement. Requested walk_length must
// match the corpus length.
class ReplayGenerator final : public WalkGenerator {
 public:
  void fit(const WalkSet& train, const Graph& g) override;
  WalkSet generate(std::size_t count, int walk_length,
                   std::uint64_t seed) const override;
  std::string id() const override { return "replay"; }

  void save(const std::string& dir) const;
  static std::unique_ptr<ReplayGenerator> load(const std::string& dir);

 private:
  WalkSet corpus_;
};

std::unique_ptr<MarkovGenerator> fit_markov(const WalkSet& train,
                                            const Graph& g,
                                            double alpha = 0.01);
std::unique_ptr<ReplayGenerator> replay_generator(const WalkSet& train);

// Reads a bundle directory written by MarkovGenerator::save or
// ReplayGenerator::save (generator.json + payload).
std::unique_ptr<WalkGenerator> load_generator(const std::string& dir);

}  // namespace densewalk
