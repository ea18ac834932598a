#include "fielde/evaluator.hpp"

#include <algorithm>

#include "fielde/errors.hpp"

namespace fielde {

namespace {

// Rank among candidate scores, filtering ids listed in `known_true` (sorted)
// except the target itself.
double rank_from_scores(const Vec& scores, int target, const std::vector<int>& known_true) {
    const double target_score = scores[static_cast<std::size_t>(target)];
    std::size_t greater = 0;
    std::size_t ties = 0;
    for (int id = 0; id < static_cast<int>(scores.size()); ++id) {
        if (id == target) continue;
        if (std::binary_search(known_true.begin(), known_true.end(), id)) continue;
        const double s = scores[static_cast<std::size_t>(id)];
        if (s > target_score)
            ++greater;
        else if (s == target_score)
            ++ties;
    }
    return 1.0 + static_cast<double>(greater) + static_cast<double>(ties) / 2.0;
}

}  // namespace

double rank_triple(const ModelState& state, const Triple& triple, Side side, const KnowledgeGraph& kg) {
    const int num_entities = state.num_entities();
    if (triple.head >= num_entities || triple.tail >= num_entities || triple.head < 0 || triple.tail < 0)
        throw LookupError("entity id out of range");
    Vec scores(static_cast<std::size_t>(num_entities));

    if (side == Side::tail) {
        // One step image serves every candidate tail.
        const Vec img = step_image(state, triple.rel, state.entity(triple.head));
        for (int id = 0; id < num_entities; ++id)
            scores[static_cast<std::size_t>(id)] = score_to_image(state.variant, state.entity(id), img);
        return rank_from_scores(scores, triple.tail, kg.filter.tails(triple.head, triple.rel));
    }

    Vec img(static_cast<std::size_t>(state.dim));
    for (int id = 0; id < num_entities; ++id) {
        step_image(state, triple.rel, state.entity(id), img);
        scores[static_cast<std::size_t>(id)] = score_to_image(state.variant, state.entity(triple.tail), img);
    }
    return rank_from_scores(scores, triple.head, kg.filter.heads(triple.rel, triple.tail));
}

RankingReport evaluate(const ModelState& state, const KnowledgeGraph& kg, Split split) {
    const std::vector<Triple>& triples = split == Split::valid ? kg.valid : kg.test;
    if (triples.empty()) throw LookupError("cannot evaluate an empty split");

    RankingReport report;
    report.n_t = triples.size();
    report.head_ranks.reserve(triples.size());
    report.tail_ranks.reserve(triples.size());

    double sum_rr = 0.0;
    std::size_t h1 = 0, h3 = 0, h10 = 0;
    auto tally = [&](double rank) {
        sum_rr += 1.0 / rank;
        if (rank <= 1.0) ++h1;
        if (rank <= 3.0) ++h3;
        if (rank <= 10.0) ++h10;
    };

    for (const Triple& t : triples) {
        const double hr = rank_triple(state, t, Side::head, kg);
        const double tr = rank_triple(state, t, Side::tail, kg);
        report.head_ranks.push_back(hr);
        report.tail_ranks.push_back(tr);
        tally(hr);
        tally(tr);
    }

    const double denom = 2.0 * static_cast<double>(report.n_t);
    report.mrr = sum_rr / denom;
    report.hits1 = static_cast<double>(h1) / denom;
    report.hits3 = static_cast<double>(h3) / denom;
    report.hits10 = static_cast<double>(h10) / denom;
    return report;
}

}  // namespace fielde
