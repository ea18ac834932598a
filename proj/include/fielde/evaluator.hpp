#pragma once
// Filtered ranked link prediction. For each test triple both sides are
// corrupted; candidates forming other known-true triples are removed, the
// target always kept. Ties share the average rank:
//   rank = 1 + #{strictly greater} + #{equal, excluding the target}/2.

#include <vector>

#include "fielde/kg.hpp"
#include "fielde/model.hpp"

namespace fielde {

enum class Side { head, tail };
enum class Split { valid, test };

struct RankingReport {
    std::vector<double> head_ranks;  // split order
    std::vector<double> tail_ranks;
    double mrr = 0.0;
    double hits1 = 0.0;
    double hits3 = 0.0;
    double hits10 = 0.0;
    std::size_t n_t = 0;  // number of evaluated triples
};

// Filtered tie-averaged rank of the triple's target on the given side.
double rank_triple(const ModelState& state, const Triple& triple, Side side, const KnowledgeGraph& kg);

// Both-side evaluation over the split. MRR averages 1/rank over all 2*n_t
// ranks in split order (head then tail per triple). Throws on an empty split.
RankingReport evaluate(const ModelState& state, const KnowledgeGraph& kg, Split split);

}  // namespace fielde
