#include "fielde/field.hpp"

#include <cmath>

#include "fielde/errors.hpp"

namespace fielde {

const char* to_string(FieldKind k) {
    switch (k) {
        case FieldKind::constant: return "constant";
        case FieldKind::linear: return "linear";
        case FieldKind::rotation: return "rotation";
        case FieldKind::neural: return "neural";
    }
    return "?";
}

const char* to_string(Activation a) {
    switch (a) {
        case Activation::tanh: return "tanh";
        case Activation::sigmoid: return "sigmoid";
        case Activation::identity: return "identity";
    }
    return "?";
}

FieldKind field_kind_from_string(const std::string& s) {
    if (s == "constant") return FieldKind::constant;
    if (s == "linear") return FieldKind::linear;
    if (s == "rotation") return FieldKind::rotation;
    if (s == "neural") return FieldKind::neural;
    throw ParseError("unknown field kind: " + s);
}

Activation activation_from_string(const std::string& s) {
    if (s == "tanh") return Activation::tanh;
    if (s == "sigmoid") return Activation::sigmoid;
    if (s == "identity") return Activation::identity;
    throw ParseError("unknown activation: " + s);
}

std::size_t RelationField::param_count() const {
    switch (kind) {
        case FieldKind::constant: return r_vec.size();
        case FieldKind::linear: return lin.data.size();
        case FieldKind::rotation: return phases.size();
        case FieldKind::neural: {
            std::size_t n = net.output.data.size();
            for (const Mat& w : net.weights) n += w.data.size();
            for (const Vec& b : net.biases) n += b.size();
            return n;
        }
    }
    return 0;
}

bool RelationField::finite() const {
    switch (kind) {
        case FieldKind::constant: return all_finite(r_vec);
        case FieldKind::linear: return all_finite(lin.data);
        case FieldKind::rotation: return all_finite(phases);
        case FieldKind::neural: {
            if (!all_finite(net.output.data)) return false;
            for (const Mat& w : net.weights)
                if (!all_finite(w.data)) return false;
            for (const Vec& b : net.biases)
                if (!all_finite(b)) return false;
            return true;
        }
    }
    return false;
}

RelationField make_constant_field(Vec r_vec) {
    RelationField f;
    f.kind = FieldKind::constant;
    f.dim = static_cast<int>(r_vec.size());
    f.r_vec = std::move(r_vec);
    return f;
}

RelationField make_linear_field(Mat a) {
    if (a.rows != a.cols) throw DimensionError("linear field matrix must be square");
    RelationField f;
    f.kind = FieldKind::linear;
    f.dim = static_cast<int>(a.rows);
    f.lin = std::move(a);
    return f;
}

RelationField make_rotation_field(int dim, Vec phases) {
    if (dim % 2 != 0) throw DimensionError("rotation field requires even dimension");
    if (phases.size() != static_cast<std::size_t>(dim / 2))
        throw DimensionError("rotation field needs d/2 phases");
    RelationField f;
    f.kind = FieldKind::rotation;
    f.dim = dim;
    f.phases = std::move(phases);
    return f;
}

RelationField make_neural_field(int dim, const std::vector<int>& hidden, Activation act) {
    if (hidden.empty()) throw DimensionError("neural field needs at least one hidden layer");
    RelationField f;
    f.kind = FieldKind::neural;
    f.dim = dim;
    f.net.act = act;
    int in = dim;
    for (int n : hidden) {
        if (n < 1) throw DimensionError("hidden layer size must be >= 1");
        f.net.weights.emplace_back(static_cast<std::size_t>(n), static_cast<std::size_t>(in));
        f.net.biases.emplace_back(static_cast<std::size_t>(n), 0.0);
        in = n;
    }
    f.net.output = Mat(static_cast<std::size_t>(dim), static_cast<std::size_t>(in));
    return f;
}

namespace {

inline double activate(Activation a, double z) {
    switch (a) {
        case Activation::tanh: return std::tanh(z);
        case Activation::sigmoid: return 1.0 / (1.0 + std::exp(-z));
        case Activation::identity: return z;
    }
    return z;
}

// Derivative expressed through the activation value.
inline double activate_deriv(Activation a, double value) {
    switch (a) {
        case Activation::tanh: return 1.0 - value * value;
        case Activation::sigmoid: return value * (1.0 - value);
        case Activation::identity: return 1.0;
    }
    return 1.0;
}

void check_input(const RelationField& field, std::span<const double> e) {
    if (e.size() != static_cast<std::size_t>(field.dim))
        throw DimensionError("field input has wrong dimension");
    if (!all_finite(e)) throw DimensionError("field input is not finite");
}

// Forward pass keeping every layer's activations; activations[0] is the input.
std::vector<Vec> neural_forward(const NeuralNet& net, std::span<const double> e) {
    std::vector<Vec> activations;
    activations.reserve(net.weights.size() + 1);
    activations.emplace_back(e.begin(), e.end());
    for (std::size_t l = 0; l < net.weights.size(); ++l) {
        const Mat& w = net.weights[l];
        Vec a(w.rows);
        matvec(w, activations.back(), a);
        for (std::size_t i = 0; i < a.size(); ++i) a[i] = activate(net.act, a[i] + net.biases[l][i]);
        activations.push_back(std::move(a));
    }
    return activations;
}

}  // namespace

void field_eval(const RelationField& field, std::span<const double> e, std::span<double> v) {
    check_input(field, e);
    if (v.size() != static_cast<std::size_t>(field.dim))
        throw DimensionError("field output has wrong dimension");
    switch (field.kind) {
        case FieldKind::constant:
            for (int i = 0; i < field.dim; ++i) v[i] = field.r_vec[i];
            return;
        case FieldKind::linear:
            matvec(field.lin, e, v);
            return;
        case FieldKind::rotation:
            for (std::size_t p = 0; p < field.phases.size(); ++p) {
                const double c = std::cos(field.phases[p]);
                const double s = std::sin(field.phases[p]);
                const double x = e[2 * p], y = e[2 * p + 1];
                v[2 * p] = c * x - s * y;
                v[2 * p + 1] = s * x + c * y;
            }
            return;
        case FieldKind::neural: {
            const auto activations = neural_forward(field.net, e);
            matvec(field.net.output, activations.back(), v);
            return;
        }
    }
}

Vec field_eval(const RelationField& field, std::span<const double> e) {
    Vec v(static_cast<std::size_t>(field.dim));
    field_eval(field, e, v);
    return v;
}

FieldGrad FieldGrad::zeros_like(const RelationField& f) {
    FieldGrad g;
    switch (f.kind) {
        case FieldKind::constant:
            g.d_r_vec.assign(f.r_vec.size(), 0.0);
            break;
        case FieldKind::linear:
            g.d_lin = Mat(f.lin.rows, f.lin.cols);
            break;
        case FieldKind::rotation:
            g.d_phases.assign(f.phases.size(), 0.0);
            break;
        case FieldKind::neural:
            for (const Mat& w : f.net.weights) g.d_weights.emplace_back(w.rows, w.cols);
            for (const Vec& b : f.net.biases) g.d_biases.emplace_back(b.size(), 0.0);
            g.d_output = Mat(f.net.output.rows, f.net.output.cols);
            break;
    }
    return g;
}

void FieldGrad::add_scaled(const FieldGrad& other, double scale) {
    auto axpy = [scale](Vec& dst, const Vec& src) {
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += scale * src[i];
    };
    axpy(d_r_vec, other.d_r_vec);
    axpy(d_lin.data, other.d_lin.data);
    axpy(d_phases, other.d_phases);
    for (std::size_t l = 0; l < d_weights.size(); ++l) axpy(d_weights[l].data, other.d_weights[l].data);
    for (std::size_t l = 0; l < d_biases.size(); ++l) axpy(d_biases[l], other.d_biases[l]);
    axpy(d_output.data, other.d_output.data);
}

double FieldGrad::max_abs() const {
    double m = 0.0;
    auto scan = [&m](const Vec& v) {
        for (double x : v) m = std::max(m, std::abs(x));
    };
    scan(d_r_vec);
    scan(d_lin.data);
    scan(d_phases);
    for (const Mat& w : d_weights) scan(w.data);
    for (const Vec& b : d_biases) scan(b);
    scan(d_output.data);
    return m;
}

void field_vjp(const RelationField& field, std::span<const double> e, std::span<const double> upstream,
               FieldGrad& grad, std::span<double> d_e) {
    check_input(field, e);
    if (upstream.size() != static_cast<std::size_t>(field.dim) || d_e.size() != e.size())
        throw DimensionError("vjp upstream/d_e has wrong dimension");

    switch (field.kind) {
        case FieldKind::constant:
            // dv/de = 0, dv/dr = I
            for (int i = 0; i < field.dim; ++i) grad.d_r_vec[i] += upstream[i];
            return;

        case FieldKind::linear:
            // dv/de = A, dv/dA_ij = u_i e_j
            matvec_transpose_add(field.lin, upstream, d_e);
            for (std::size_t i = 0; i < field.lin.rows; ++i)
                for (std::size_t j = 0; j < field.lin.cols; ++j)
                    grad.d_lin(i, j) += upstream[i] * e[j];
            return;

        case FieldKind::rotation:
            // Pair (x,y) maps to (cx - sy, sx + cy); the phase derivative is
            // the 90-degree-advanced image (-v_y, v_x).
            for (std::size_t p = 0; p < field.phases.size(); ++p) {
                const double c = std::cos(field.phases[p]);
                const double s = std::sin(field.phases[p]);
                const double x = e[2 * p], y = e[2 * p + 1];
                const double vx = c * x - s * y;
                const double vy = s * x + c * y;
                const double ux = upstream[2 * p], uy = upstream[2 * p + 1];
                d_e[2 * p] += c * ux + s * uy;
                d_e[2 * p + 1] += -s * ux + c * uy;
                grad.d_phases[p] += ux * (-vy) + uy * vx;
            }
            return;

        case FieldKind::neural: {
            const NeuralNet& net = field.net;
            const auto activations = neural_forward(net, e);
            const Vec& last = activations.back();

            // Output layer: v = Wo a^L.
            for (std::size_t i = 0; i < net.output.rows; ++i)
                for (std::size_t j = 0; j < net.output.cols; ++j)
                    grad.d_output(i, j) += upstream[i] * last[j];

            Vec delta(last.size(), 0.0);
            matvec_transpose_add(net.output, upstream, delta);
            for (std::size_t l = net.weights.size(); l-- > 0;) {
                const Vec& a_out = activations[l + 1];
                const Vec& a_in = activations[l];
                for (std::size_t i = 0; i < delta.size(); ++i)
                    delta[i] *= activate_deriv(net.act, a_out[i]);
                for (std::size_t i = 0; i < net.weights[l].rows; ++i) {
                    grad.d_biases[l][i] += delta[i];
                    for (std::size_t j = 0; j < net.weights[l].cols; ++j)
                        grad.d_weights[l](i, j) += delta[i] * a_in[j];
                }
                if (l == 0) {
                    matvec_transpose_add(net.weights[l], delta, d_e);
                } else {
                    Vec prev(net.weights[l].cols, 0.0);
                    matvec_transpose_add(net.weights[l], delta, prev);
                    delta = std::move(prev);
                }
            }
            return;
        }
    }
}

RelationField make_reduction_field(ReductionKind kind, const Vec& params_a, const Vec& params_b) {
    switch (kind) {
        case ReductionKind::transe:
            return make_constant_field(params_a);
        case ReductionKind::rotate:
            return make_rotation_field(static_cast<int>(params_a.size()) * 2, params_a);
        case ReductionKind::complex_: {
            // Per complex coordinate i: relation a_i * exp(i theta_i), realized
            // as scaled 2x2 rotation blocks in the vectorized representation.
            if (params_a.size() != params_b.size())
                throw DimensionError("complex reduction needs matching scales and phases");
            const std::size_t pairs = params_a.size();
            Mat a(2 * pairs, 2 * pairs);
            for (std::size_t p = 0; p < pairs; ++p) {
                const double scale = params_a[p];
                const double c = scale * std::cos(params_b[p]);
                const double s = scale * std::sin(params_b[p]);
                a(2 * p, 2 * p) = c;
                a(2 * p, 2 * p + 1) = -s;
                a(2 * p + 1, 2 * p) = s;
                a(2 * p + 1, 2 * p + 1) = c;
            }
            return make_linear_field(std::move(a));
        }
    }
    throw DimensionError("unknown reduction kind");
}

StepCoefficients reduction_step(ReductionKind kind) {
    switch (kind) {
        case ReductionKind::transe: return {1.0, 1.0};
        case ReductionKind::rotate: return {0.0, 1.0};
        case ReductionKind::complex_: return {0.0, 1.0};
    }
    return {};
}

void init_field(RelationField& field, Rng& rng) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(field.dim));
    switch (field.kind) {
        case FieldKind::constant:
            for (double& x : field.r_vec) x = rng.uniform(-bound, bound);
            return;
        case FieldKind::linear:
            field.lin = Mat::identity(field.lin.rows);
            for (double& x : field.lin.data) x += rng.uniform(-0.01, 0.01);
            return;
        case FieldKind::rotation: {
            const double pi = std::acos(-1.0);
            for (double& x : field.phases) x = rng.uniform(-pi, pi);
            return;
        }
        case FieldKind::neural: {
            for (std::size_t l = 0; l < field.net.weights.size(); ++l) {
                Mat& w = field.net.weights[l];
                const double g = std::sqrt(6.0 / static_cast<double>(w.rows + w.cols));
                for (double& x : w.data) x = rng.uniform(-g, g);
                for (double& x : field.net.biases[l]) x = 0.0;
            }
            Mat& o = field.net.output;
            const double g = std::sqrt(6.0 / static_cast<double>(o.rows + o.cols));
            for (double& x : o.data) x = rng.uniform(-g, g);
            return;
        }
    }
}

}  // namespace fielde
