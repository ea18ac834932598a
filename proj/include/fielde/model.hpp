#pragma once
// Full model state: entity embedding matrix, one vector field per relation,
// step coefficients, and the score variant. The discretized trajectory step is
//
//   step(e) = eta * e + lambda * f_r(e)
//
// scored either by negative distance to the tail (distance variant) or by the
// inner product with the tail (semantic variant). Read-shareable; the trainer
// is the single writer.

#include <span>
#include <string>
#include <vector>

#include "fielde/field.hpp"
#include "fielde/kg.hpp"

namespace fielde {

enum class Variant { distance, semantic };

const char* to_string(Variant v);
Variant variant_from_string(const std::string& s);

struct ModelState {
    int dim = 0;
    Variant variant = Variant::distance;
    StepCoefficients step;
    Vec entities;  // num_entities x dim, row-major
    std::vector<RelationField> fields;

    int num_entities() const {
        return dim == 0 ? 0 : static_cast<int>(entities.size()) / dim;
    }
    int num_relations() const { return static_cast<int>(fields.size()); }

    std::span<const double> entity(int id) const {
        return {entities.data() + static_cast<std::size_t>(id) * dim, static_cast<std::size_t>(dim)};
    }
    std::span<double> entity(int id) {
        return {entities.data() + static_cast<std::size_t>(id) * dim, static_cast<std::size_t>(dim)};
    }
};

// step(e) for the given relation; out may alias nothing.
void step_image(const ModelState& state, int rel, std::span<const double> e, std::span<double> out);
Vec step_image(const ModelState& state, int rel, std::span<const double> e);

// -||e_tail - step(e_head)||_2; <= 0, equal to 0 only on exact trajectory hits.
double score_distance(const ModelState& state, const Triple& t);
// <e_tail, step(e_head)>.
double score_semantic(const ModelState& state, const Triple& t);
// Dispatch on state.variant.
double score(const ModelState& state, const Triple& t);

// Scores against a precomputed step image (candidate tails share one image).
double score_distance_to_image(std::span<const double> tail, std::span<const double> image);
double score_semantic_to_image(std::span<const double> tail, std::span<const double> image);
double score_to_image(Variant v, std::span<const double> tail, std::span<const double> image);

struct ModelConfig {
    int dim = 16;
    Variant variant = Variant::distance;
    FieldKind field_kind = FieldKind::neural;
    std::vector<int> hidden = {32, 16};
    Activation activation = Activation::tanh;
    StepCoefficients step;
};

// Fresh model: entities uniform in [-1/sqrt(d), 1/sqrt(d)], field parameters
// per init_field.
ModelState init_model(int num_entities, int num_relations, const ModelConfig& cfg, Rng& rng);

// Same field everywhere, e.g. a reduction field installed for every relation.
ModelState make_uniform_field_model(int num_entities, const RelationField& field, int num_relations,
                                    Variant variant, StepCoefficients step);

}  // namespace fielde
