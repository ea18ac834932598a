#pragma once
// Training loop: corrupt-one-side negative sampling, self-adversarial
// logistic loss with margin, and sparse Adam steps. Single-threaded, fully
// deterministic given (seed, config, dataset).
//
// Loss per positive with negatives s'_1..s'_k and weights w:
//   L = -log sigmoid(gamma + s_pos) - sum_i w_i * log sigmoid(-gamma - s'_i)
// where w = softmax(alpha * s') is treated as constant in the gradient.

#include <functional>
#include <vector>

#include "fielde/adam.hpp"
#include "fielde/kg.hpp"
#include "fielde/model.hpp"
#include "fielde/rng.hpp"

namespace fielde {

struct TrainConfig {
    double learning_rate = 0.001;
    int batch_size = 128;
    int num_negatives = 8;       // k
    double adversarial_alpha = 1.0;
    double margin = 9.0;         // gamma
    int epochs = 100;
    std::uint64_t seed = 1;
    StepCoefficients step;

    void validate() const;
};

struct Negative {
    Triple triple;
    bool known_true = false;  // retries exhausted: candidate exists in the filter index
};

// Each negative corrupts head or tail (fair coin, drawn once) with a uniform
// entity; known-true candidates are resampled up to 10 times, then kept
// flagged.
std::vector<Negative> sample_negatives(const Triple& triple, int k, const KnowledgeGraph& kg, Rng& rng);

// softmax(alpha * scores); non-negative, sums to 1.
Vec adversarial_weights(const Vec& neg_scores, double alpha);

// The self-adversarial logistic loss above; weights must sum to 1.
double sa_loss(double pos_score, const Vec& neg_scores, const Vec& weights, double gamma);

// d(loss)/d(pos_score) and d(loss)/d(neg_score_i), weights constant.
double sa_loss_pos_grad(double pos_score, double gamma);
Vec sa_loss_neg_grads(const Vec& neg_scores, const Vec& weights, double gamma);

// One pass over shuffled train triples in batches; one Adam step per batch.
// Returns the mean per-batch loss. Throws TrainingDiverged (with the batch's
// triple ids) on a non-finite loss.
double train_epoch(ModelState& state, const KnowledgeGraph& kg, const TrainConfig& cfg,
                   AdamState& adam, Rng& rng);

// Epoch driver; on_epoch(epoch_index, mean_loss) runs after each epoch when
// provided (loss logging, checkpointing).
using EpochHook = std::function<void(int, double)>;
void train(ModelState& state, const KnowledgeGraph& kg, const TrainConfig& cfg,
           const EpochHook& on_epoch = nullptr);

}  // namespace fielde
