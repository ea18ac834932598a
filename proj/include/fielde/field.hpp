#pragma once
// Per-relation vector fields. A field maps a point e in R^d to a velocity
// v = f(e); the trajectory step and both score functions live in model.hpp.
//
// Kinds:
//   constant  v = r_vec                       (TransE reduction)
//   linear    v = A e                         (linear ODE)
//   rotation  v = R e, 2x2 blocks on (2i,2i+1) pairs (RotatE reduction)
//   neural    v = Wo g(... g(W1 e + b1) ...)  (MLP, linear output, no output bias)

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fielde/linalg.hpp"
#include "fielde/rng.hpp"

namespace fielde {

enum class FieldKind { constant, linear, rotation, neural };
enum class Activation { tanh, sigmoid, identity };

const char* to_string(FieldKind k);
const char* to_string(Activation a);
FieldKind field_kind_from_string(const std::string& s);
Activation activation_from_string(const std::string& s);

struct NeuralNet {
    std::vector<Mat> weights;  // weights[l] : (n_l x n_{l-1}), layer 0 input is e
    std::vector<Vec> biases;   // biases[l]  : n_l
    Mat output;                // (d x n_L), no bias
    Activation act = Activation::tanh;
};

struct RelationField {
    FieldKind kind = FieldKind::constant;
    int dim = 0;

    Vec r_vec;      // constant
    Mat lin;        // linear, d x d
    Vec phases;     // rotation, d/2 angles in radians
    NeuralNet net;  // neural

    // Number of scalar parameters of this field.
    std::size_t param_count() const;
    bool finite() const;
};

// Constructors validate shapes (rotation needs even d; neural layer dims must
// chain from d back to d).
RelationField make_constant_field(Vec r_vec);
RelationField make_linear_field(Mat a);
RelationField make_rotation_field(int dim, Vec phases);
RelationField make_neural_field(int dim, const std::vector<int>& hidden, Activation act);

// v = f(e). Throws DimensionError on shape mismatch or non-finite input.
Vec field_eval(const RelationField& field, std::span<const double> e);
void field_eval(const RelationField& field, std::span<const double> e, std::span<double> v);

// Gradient mirror of one field's parameters; shapes follow the field.
struct FieldGrad {
    Vec d_r_vec;
    Mat d_lin;
    Vec d_phases;
    std::vector<Mat> d_weights;
    std::vector<Vec> d_biases;
    Mat d_output;

    static FieldGrad zeros_like(const RelationField& f);
    void add_scaled(const FieldGrad& other, double scale);
    double max_abs() const;
};

// Vector-Jacobian product: accumulates upstream^T * dv/dparams into grad and
// adds J^T upstream into d_e. Recomputes the forward pass internally.
void field_vjp(const RelationField& field, std::span<const double> e, std::span<const double> upstream,
               FieldGrad& grad, std::span<double> d_e);

// Reduction fields realizing the classical models inside FieldE. The step
// coefficients each proof assumes are returned by reduction_step():
//   transe  -> constant field,        eta=1, lambda=1, distance variant
//   rotate  -> rotation field,        eta=0, lambda=1, distance variant
//   complex -> scaled-rotation field, eta=0, lambda=1, semantic variant
struct StepCoefficients {
    double eta = 1.0;     // weight on the current point
    double lambda = 1.0;  // weight on the field velocity
};

enum class ReductionKind { transe, rotate, complex_ };

RelationField make_reduction_field(ReductionKind kind, const Vec& params_a, const Vec& params_b = {});
StepCoefficients reduction_step(ReductionKind kind);

// Glorot-style uniform init for the neural kind; identity-plus-noise for
// linear; uniform phases for rotation; uniform vector for constant.
void init_field(RelationField& field, Rng& rng);

}  // namespace fielde
