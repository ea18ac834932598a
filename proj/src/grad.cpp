#include "fielde/grad.hpp"

#include <cmath>

#include "fielde/errors.hpp"

namespace fielde {

Vec& GradientBuffer::entity_grad(int id, int dim) {
    auto it = d_entity.find(id);
    if (it == d_entity.end()) it = d_entity.emplace(id, Vec(static_cast<std::size_t>(dim), 0.0)).first;
    return it->second;
}

FieldGrad& GradientBuffer::field_grad(int rel, const RelationField& f) {
    auto it = d_field.find(rel);
    if (it == d_field.end()) it = d_field.emplace(rel, FieldGrad::zeros_like(f)).first;
    return it->second;
}

void grad_score(const ModelState& state, const Triple& triple, double upstream, GradientBuffer& buf) {
    const auto head = state.entity(triple.head);
    const auto tail = state.entity(triple.tail);
    const RelationField& field = state.fields.at(static_cast<std::size_t>(triple.rel));
    const double eta = state.step.eta;
    const double lambda = state.step.lambda;

    const Vec img = step_image(state, triple.rel, head);

    // u = upstream * d(score)/d(image); d(score)/d(tail) fills directly.
    Vec u(static_cast<std::size_t>(state.dim));
    Vec& d_tail = buf.entity_grad(triple.tail, state.dim);
    if (state.variant == Variant::distance) {
        Vec residual(static_cast<std::size_t>(state.dim));
        for (int i = 0; i < state.dim; ++i) residual[i] = tail[i] - img[i];
        const double n = norm2(residual);
        if (n == 0.0) return;  // singular point: gradient 0 by convention
        for (int i = 0; i < state.dim; ++i) {
            const double g = residual[i] / n;  // d(-n)/d(img_i) = +g, d/d(tail_i) = -g
            u[i] = upstream * g;
            d_tail[i] += -upstream * g;
        }
    } else {
        for (int i = 0; i < state.dim; ++i) {
            u[i] = upstream * tail[i];
            d_tail[i] += upstream * img[i];
        }
    }

    // image = eta h + lambda f(h): the eta part goes straight to the head, the
    // lambda part backpropagates through the field.
    Vec& d_head = buf.entity_grad(triple.head, state.dim);
    for (int i = 0; i < state.dim; ++i) d_head[i] += eta * u[i];

    if (lambda != 0.0) {
        Vec u_field(static_cast<std::size_t>(state.dim));
        for (int i = 0; i < state.dim; ++i) u_field[i] = lambda * u[i];
        field_vjp(field, head, u_field, buf.field_grad(triple.rel, field), d_head);
    }
}

namespace {

// Visits every scalar parameter of the state as (mutable ref, analytic grad).
template <typename F>
void for_each_param(ModelState& state, const GradientBuffer& buf, F&& visit) {
    for (int e = 0; e < state.num_entities(); ++e) {
        auto it = buf.d_entity.find(e);
        auto row = state.entity(e);
        for (int i = 0; i < state.dim; ++i)
            visit(row[i], it == buf.d_entity.end() ? 0.0 : it->second[static_cast<std::size_t>(i)]);
    }
    for (int r = 0; r < state.num_relations(); ++r) {
        RelationField& f = state.fields[static_cast<std::size_t>(r)];
        auto it = buf.d_field.find(r);
        const FieldGrad zero = it == buf.d_field.end() ? FieldGrad::zeros_like(f) : FieldGrad{};
        const FieldGrad& g = it == buf.d_field.end() ? zero : it->second;
        auto walk = [&](Vec& params, const Vec& grads) {
            for (std::size_t i = 0; i < params.size(); ++i) visit(params[i], grads[i]);
        };
        switch (f.kind) {
            case FieldKind::constant: walk(f.r_vec, g.d_r_vec); break;
            case FieldKind::linear: walk(f.lin.data, g.d_lin.data); break;
            case FieldKind::rotation: walk(f.phases, g.d_phases); break;
            case FieldKind::neural: {
                for (std::size_t l = 0; l < f.net.weights.size(); ++l) {
                    walk(f.net.weights[l].data, g.d_weights[l].data);
                    walk(f.net.biases[l], g.d_biases[l]);
                }
                walk(f.net.output.data, g.d_output.data);
                break;
            }
        }
    }
}

}  // namespace

double finite_diff_check(const ModelState& state, const Triple& triple, double epsilon) {
    if (epsilon <= 0.0) throw DimensionError("epsilon must be positive");
    if (!all_finite(state.entities)) throw DimensionError("non-finite entity parameters");
    for (const RelationField& f : state.fields)
        if (!f.finite()) throw DimensionError("non-finite field parameters");

    GradientBuffer buf;
    grad_score(state, triple, 1.0, buf);

    ModelState work = state;
    double max_err = 0.0;
    for_each_param(work, buf, [&](double& param, double analytic) {
        const double saved = param;
        param = saved + epsilon;
        const double up = score(work, triple);
        param = saved - epsilon;
        const double down = score(work, triple);
        param = saved;
        const double numeric = (up - down) / (2.0 * epsilon);
        const double err = std::abs(analytic - numeric) / std::max(1.0, std::abs(numeric));
        if (err > max_err) max_err = err;
    });
    return max_err;
}

}  // namespace fielde
