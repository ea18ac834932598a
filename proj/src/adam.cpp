#include "fielde/adam.hpp"

#include <cmath>

#include "fielde/errors.hpp"

namespace fielde {

namespace {

struct AdamScale {
    double beta1, beta2, eps, step_size;

    void update(std::span<double> params, std::span<const double> grads, Vec& m, Vec& v) const {
        if (params.size() != grads.size() || m.size() != params.size())
            throw DimensionError("adam update shape mismatch");
        for (std::size_t i = 0; i < params.size(); ++i) {
            m[i] = beta1 * m[i] + (1.0 - beta1) * grads[i];
            v[i] = beta2 * v[i] + (1.0 - beta2) * grads[i] * grads[i];
            params[i] -= step_size * m[i] / (std::sqrt(v[i]) + eps);
        }
    }
};

}  // namespace

void adam_step(ModelState& state, const GradientBuffer& grads, AdamState& adam, double lr) {
    adam.step_count += 1;
    const double t = static_cast<double>(adam.step_count);
    // Fold both bias corrections into the step size (the standard rewrite).
    const double step_size =
        lr * std::sqrt(1.0 - std::pow(adam.beta2, t)) / (1.0 - std::pow(adam.beta1, t));
    const AdamScale scale{adam.beta1, adam.beta2, adam.eps, step_size};

    for (const auto& [id, g] : grads.d_entity) {
        auto mit = adam.m_entity.find(id);
        if (mit == adam.m_entity.end()) {
            mit = adam.m_entity.emplace(id, Vec(g.size(), 0.0)).first;
            adam.v_entity.emplace(id, Vec(g.size(), 0.0));
        }
        scale.update(state.entity(id), g, mit->second, adam.v_entity.at(id));
    }

    for (const auto& [rel, g] : grads.d_field) {
        RelationField& f = state.fields.at(static_cast<std::size_t>(rel));
        auto mit = adam.m_field.find(rel);
        if (mit == adam.m_field.end()) {
            mit = adam.m_field.emplace(rel, FieldGrad::zeros_like(f)).first;
            adam.v_field.emplace(rel, FieldGrad::zeros_like(f));
        }
        FieldGrad& m = mit->second;
        FieldGrad& v = adam.v_field.at(rel);
        switch (f.kind) {
            case FieldKind::constant:
                scale.update(f.r_vec, g.d_r_vec, m.d_r_vec, v.d_r_vec);
                break;
            case FieldKind::linear:
                scale.update(f.lin.data, g.d_lin.data, m.d_lin.data, v.d_lin.data);
                break;
            case FieldKind::rotation:
                scale.update(f.phases, g.d_phases, m.d_phases, v.d_phases);
                break;
            case FieldKind::neural:
                for (std::size_t l = 0; l < f.net.weights.size(); ++l) {
                    scale.update(f.net.weights[l].data, g.d_weights[l].data, m.d_weights[l].data,
                                 v.d_weights[l].data);
                    scale.update(f.net.biases[l], g.d_biases[l], m.d_biases[l], v.d_biases[l]);
                }
                scale.update(f.net.output.data, g.d_output.data, m.d_output.data, v.d_output.data);
                break;
        }
    }
}

}  // namespace fielde
