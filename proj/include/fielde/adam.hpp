#pragma once
// Adam with bias correction over the model's parameters. Updates are applied
// sparsely: one adam_step consumes a GradientBuffer and touches only the
// entity rows and relation fields present in it, using the global step count
// for bias correction (lazy/sparse Adam).

#include <unordered_map>

#include "fielde/grad.hpp"
#include "fielde/model.hpp"

namespace fielde {

struct AdamState {
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    long step_count = 0;

    std::unordered_map<int, Vec> m_entity;
    std::unordered_map<int, Vec> v_entity;
    std::unordered_map<int, FieldGrad> m_field;  // FieldGrad reused as a moment container
    std::unordered_map<int, FieldGrad> v_field;
};

// One optimizer step at learning rate lr. Gradient ascent is not assumed:
// parameters move against the gradient, so callers accumulate d(loss)/d(theta).
void adam_step(ModelState& state, const GradientBuffer& grads, AdamState& adam, double lr);

}  // namespace fielde
