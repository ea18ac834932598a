#include "fielde/model.hpp"

#include <cmath>

#include "fielde/errors.hpp"

namespace fielde {

const char* to_string(Variant v) {
    return v == Variant::distance ? "distance" : "semantic";
}

Variant variant_from_string(const std::string& s) {
    if (s == "distance") return Variant::distance;
    if (s == "semantic") return Variant::semantic;
    throw ParseError("unknown variant: " + s);
}

void step_image(const ModelState& state, int rel, std::span<const double> e, std::span<double> out) {
    if (rel < 0 || rel >= state.num_relations()) throw LookupError("relation id out of range");
    field_eval(state.fields[static_cast<std::size_t>(rel)], e, out);
    for (std::size_t i = 0; i < e.size(); ++i)
        out[i] = state.step.eta * e[i] + state.step.lambda * out[i];
}

Vec step_image(const ModelState& state, int rel, std::span<const double> e) {
    Vec out(e.size());
    step_image(state, rel, e, out);
    return out;
}

double score_distance_to_image(std::span<const double> tail, std::span<const double> image) {
    double s = 0.0;
    for (std::size_t i = 0; i < tail.size(); ++i) {
        const double r = tail[i] - image[i];
        s += r * r;
    }
    return -std::sqrt(s);
}

double score_semantic_to_image(std::span<const double> tail, std::span<const double> image) {
    return dot(tail, image);
}

double score_to_image(Variant v, std::span<const double> tail, std::span<const double> image) {
    return v == Variant::distance ? score_distance_to_image(tail, image)
                                  : score_semantic_to_image(tail, image);
}

namespace {
void check_triple(const ModelState& state, const Triple& t) {
    if (t.head < 0 || t.head >= state.num_entities() || t.tail < 0 || t.tail >= state.num_entities())
        throw LookupError("entity id out of range");
    if (t.rel < 0 || t.rel >= state.num_relations()) throw LookupError("relation id out of range");
}
}  // namespace

double score_distance(const ModelState& state, const Triple& t) {
    check_triple(state, t);
    const Vec img = step_image(state, t.rel, state.entity(t.head));
    return score_distance_to_image(state.entity(t.tail), img);
}

double score_semantic(const ModelState& state, const Triple& t) {
    check_triple(state, t);
    const Vec img = step_image(state, t.rel, state.entity(t.head));
    return score_semantic_to_image(state.entity(t.tail), img);
}

double score(const ModelState& state, const Triple& t) {
    return state.variant == Variant::distance ? score_distance(state, t) : score_semantic(state, t);
}

ModelState init_model(int num_entities, int num_relations, const ModelConfig& cfg, Rng& rng) {
    ModelState state;
    state.dim = cfg.dim;
    state.variant = cfg.variant;
    state.step = cfg.step;
    state.entities.resize(static_cast<std::size_t>(num_entities) * cfg.dim);
    const double bound = 1.0 / std::sqrt(static_cast<double>(cfg.dim));
    for (double& x : state.entities) x = rng.uniform(-bound, bound);

    state.fields.reserve(static_cast<std::size_t>(num_relations));
    for (int r = 0; r < num_relations; ++r) {
        RelationField f;
        switch (cfg.field_kind) {
            case FieldKind::constant: f = make_constant_field(Vec(cfg.dim, 0.0)); break;
            case FieldKind::linear: f = make_linear_field(Mat(cfg.dim, cfg.dim)); break;
            case FieldKind::rotation: f = make_rotation_field(cfg.dim, Vec(cfg.dim / 2, 0.0)); break;
            case FieldKind::neural: f = make_neural_field(cfg.dim, cfg.hidden, cfg.activation); break;
        }
        init_field(f, rng);
        state.fields.push_back(std::move(f));
    }
    return state;
}

ModelState make_uniform_field_model(int num_entities, const RelationField& field, int num_relations,
                                    Variant variant, StepCoefficients step) {
    ModelState state;
    state.dim = field.dim;
    state.variant = variant;
    state.step = step;
    state.entities.assign(static_cast<std::size_t>(num_entities) * field.dim, 0.0);
    state.fields.assign(static_cast<std::size_t>(num_relations), field);
    return state;
}

}  // namespace fielde
