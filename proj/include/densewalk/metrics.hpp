#pragma once

#include <span>

#include "densewalk/edge_split.hpp"
#include "densewalk/scores.hpp"

namespace densewalk {

// Mann-Whitney ROC-AUC of score(pair) separating positives from negatives.
// Pairs absent from the score matrix score 0; ties count 1/2. Equals the
// brute-force pairwise comparison exactly. Both lists must be non-empty.
double roc_auc(const ScoreMatrix& scores, std::span<const VertexPair> positives,
               std::span<const VertexPair> negatives);

// Step-wise average precision over the ranking of all supplied pairs by
// descending score, ties broken by (u, v) ascending.
double average_precision(const ScoreMatrix& scores,
                         std::span<const VertexPair> positives,
                         std::span<const VertexPair> negatives);

// |E(assembled) ∩ E(reference)| / |E(reference)|. Vertex counts must match
// and the reference must have at least one edge.
double edge_overlap(const Graph& assembled, const Graph& reference);

}  // namespace densewalk
