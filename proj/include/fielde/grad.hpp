#pragma once
// Exact analytic gradients of both score functions with respect to the head
// and tail embeddings and the relation field parameters. Accumulators are
// sparse: only touched entities and relations carry entries.
//
// Distance variant: score = -||t - (eta h + lambda f(h))||_2. At the singular
// point (zero residual) the gradient is taken to be 0 everywhere.

#include <unordered_map>

#include "fielde/model.hpp"

namespace fielde {

struct GradientBuffer {
    std::unordered_map<int, Vec> d_entity;       // entity id -> d-vector
    std::unordered_map<int, FieldGrad> d_field;  // relation id -> parameter grads

    void clear() {
        d_entity.clear();
        d_field.clear();
    }
    bool empty() const { return d_entity.empty() && d_field.empty(); }

    Vec& entity_grad(int id, int dim);
    FieldGrad& field_grad(int rel, const RelationField& f);
};

// Accumulates upstream * d(score)/d(theta) into buf for theta in {e_head,
// e_tail, field params of triple.rel}.
void grad_score(const ModelState& state, const Triple& triple, double upstream, GradientBuffer& buf);

// Central-difference verification: perturbs every scalar parameter of the
// state by +-epsilon and returns max over parameters of
// |analytic - numeric| / max(1, |numeric|).
double finite_diff_check(const ModelState& state, const Triple& triple, double epsilon);

}  // namespace fielde
