#include "fielde/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "fielde/errors.hpp"
#include "fielde/grad.hpp"

namespace fielde {

void TrainConfig::validate() const {
    if (learning_rate <= 0.0) throw DimensionError("learning_rate must be > 0");
    if (batch_size < 1) throw DimensionError("batch_size must be >= 1");
    if (num_negatives < 1) throw DimensionError("num_negatives must be >= 1");
    if (adversarial_alpha < 0.0) throw DimensionError("adversarial_alpha must be >= 0");
    if (epochs < 0) throw DimensionError("epochs must be >= 0");
}

std::vector<Negative> sample_negatives(const Triple& triple, int k, const KnowledgeGraph& kg, Rng& rng) {
    const int num_entities = kg.vocab.num_entities();
    std::vector<Negative> out;
    out.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        const bool corrupt_tail = rng.coin();
        Negative neg;
        neg.triple = triple;
        for (int attempt = 0; attempt <= 10; ++attempt) {
            const int candidate = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(num_entities)));
            if (corrupt_tail)
                neg.triple.tail = candidate;
            else
                neg.triple.head = candidate;
            neg.known_true = kg.filter.contains(neg.triple);
            if (!neg.known_true) break;
        }
        out.push_back(neg);
    }
    return out;
}

namespace {

// log(sigmoid(x)) without overflow for large |x|.
inline double log_sigmoid(double x) {
    return x >= 0.0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

inline double sigmoid(double x) {
    return x >= 0.0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x));
}

}  // namespace

Vec adversarial_weights(const Vec& neg_scores, double alpha) {
    Vec w(neg_scores.size());
    double maxv = -HUGE_VAL;
    for (double s : neg_scores) maxv = std::max(maxv, alpha * s);
    double sum = 0.0;
    for (std::size_t i = 0; i < neg_scores.size(); ++i) {
        w[i] = std::exp(alpha * neg_scores[i] - maxv);
        sum += w[i];
    }
    for (double& x : w) x /= sum;
    return w;
}

double sa_loss(double pos_score, const Vec& neg_scores, const Vec& weights, double gamma) {
    double loss = -log_sigmoid(gamma + pos_score);
    for (std::size_t i = 0; i < neg_scores.size(); ++i)
        loss -= weights[i] * log_sigmoid(-gamma - neg_scores[i]);
    return loss;
}

double sa_loss_pos_grad(double pos_score, double gamma) {
    return -sigmoid(-(gamma + pos_score));
}

Vec sa_loss_neg_grads(const Vec& neg_scores, const Vec& weights, double gamma) {
    Vec g(neg_scores.size());
    for (std::size_t i = 0; i < neg_scores.size(); ++i)
        g[i] = weights[i] * sigmoid(gamma + neg_scores[i]);
    return g;
}

double train_epoch(ModelState& state, const KnowledgeGraph& kg, const TrainConfig& cfg,
                   AdamState& adam, Rng& rng) {
    std::vector<std::size_t> order(kg.train.size());
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);

    GradientBuffer buf;
    double epoch_loss = 0.0;
    std::size_t num_batches = 0;

    for (std::size_t start = 0; start < order.size(); start += static_cast<std::size_t>(cfg.batch_size)) {
        const std::size_t end = std::min(order.size(), start + static_cast<std::size_t>(cfg.batch_size));
        const double inv_batch = 1.0 / static_cast<double>(end - start);
        buf.clear();
        double batch_loss = 0.0;

        for (std::size_t idx = start; idx < end; ++idx) {
            const Triple& pos = kg.train[order[idx]];
            const auto negatives = sample_negatives(pos, cfg.num_negatives, kg, rng);

            const double pos_score = score(state, pos);
            Vec neg_scores(negatives.size());
            for (std::size_t i = 0; i < negatives.size(); ++i)
                neg_scores[i] = score(state, negatives[i].triple);

            const Vec weights = adversarial_weights(neg_scores, cfg.adversarial_alpha);
            batch_loss += sa_loss(pos_score, neg_scores, weights, cfg.margin);

            grad_score(state, pos, inv_batch * sa_loss_pos_grad(pos_score, cfg.margin), buf);
            const Vec neg_grads = sa_loss_neg_grads(neg_scores, weights, cfg.margin);
            for (std::size_t i = 0; i < negatives.size(); ++i)
                grad_score(state, negatives[i].triple, inv_batch * neg_grads[i], buf);
        }

        batch_loss *= inv_batch;
        if (!std::isfinite(batch_loss)) {
            std::ostringstream msg;
            msg << "non-finite loss in batch [" << start << ", " << end << "); triple ids:";
            for (std::size_t idx = start; idx < end; ++idx) msg << ' ' << order[idx];
            throw TrainingDiverged(msg.str());
        }

        adam_step(state, buf, adam, cfg.learning_rate);
        epoch_loss += batch_loss;
        num_batches += 1;
    }

    return num_batches == 0 ? 0.0 : epoch_loss / static_cast<double>(num_batches);
}

void train(ModelState& state, const KnowledgeGraph& kg, const TrainConfig& cfg, const EpochHook& on_epoch) {
    cfg.validate();
    AdamState adam;
    Rng rng(cfg.seed);
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        const double loss = train_epoch(state, kg, cfg, adam, rng);
        if (on_epoch) on_epoch(epoch, loss);
    }
}

}  // namespace fielde
