#include <doctest.h>

#include <cmath>
#include <limits>

#include "fielde/errors.hpp"
#include "fielde/field.hpp"
#include "fielde/rng.hpp"

using namespace fielde;

namespace {
const double kPi = std::acos(-1.0);
}

TEST_CASE("constant field returns its vector everywhere") {
    const RelationField f = make_constant_field({0.3, -0.1});
    const Vec v = field_eval(f, Vec{7.0, 9.0});
    CHECK(v[0] == 0.3);
    CHECK(v[1] == -0.1);
    const Vec w = field_eval(f, Vec{-2.0, 0.5});
    CHECK(w == v);
}

TEST_CASE("linear field applies the matrix") {
    Mat a(2, 2);
    a(0, 1) = -1.0;
    a(1, 0) = 1.0;
    const RelationField f = make_linear_field(a);
    const Vec v = field_eval(f, Vec{1.0, 0.0});
    CHECK(v[0] == 0.0);
    CHECK(v[1] == 1.0);
}

TEST_CASE("freshly built neural field is the zero field") {
    const RelationField f = make_neural_field(3, {5, 4}, Activation::tanh);
    const Vec v = field_eval(f, Vec{0.2, -0.7, 1.5});
    CHECK(v[0] == 0.0);
    CHECK(v[1] == 0.0);
    CHECK(v[2] == 0.0);
}

TEST_CASE("field evaluation validates dimensions and finiteness") {
    const RelationField f = make_constant_field({1.0, 2.0});
    CHECK_THROWS_AS(field_eval(f, Vec{1.0, 2.0, 3.0}), DimensionError);
    Vec out(3);
    CHECK_THROWS_AS(field_eval(f, Vec{1.0, 2.0}, out), DimensionError);
    CHECK_THROWS_AS(field_eval(f, Vec{std::numeric_limits<double>::quiet_NaN(), 0.0}),
                    DimensionError);
    CHECK_THROWS_AS(field_eval(f, Vec{std::numeric_limits<double>::infinity(), 0.0}),
                    DimensionError);
}

TEST_CASE("rotation field preserves the norm") {
    const RelationField f = make_rotation_field(6, {0.3, -1.2, 2.5});
    const Vec e{0.5, -1.0, 2.0, 0.25, -3.0, 1.0};
    const Vec v = field_eval(f, e);
    CHECK(std::abs(norm2(v) - norm2(e)) <= 1e-12);
}

TEST_CASE("linear and rotation fields are linear maps") {
    Mat a(3, 3);
    double fill = -1.0;
    for (double& x : a.data) x = (fill += 0.4);
    const RelationField lin = make_linear_field(a);
    const RelationField rot = make_rotation_field(4, {0.7, -2.1});

    auto check_linearity = [](const RelationField& f, const Vec& x, const Vec& y) {
        Vec combo(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) combo[i] = 2.0 * x[i] + 3.0 * y[i];
        const Vec lhs = field_eval(f, combo);
        const Vec fx = field_eval(f, x);
        const Vec fy = field_eval(f, y);
        for (std::size_t i = 0; i < x.size(); ++i)
            CHECK(std::abs(lhs[i] - (2.0 * fx[i] + 3.0 * fy[i])) <= 1e-12);
    };
    check_linearity(lin, Vec{1.0, -0.5, 0.25}, Vec{0.5, 2.0, -1.5});
    check_linearity(rot, Vec{1.0, -0.5, 0.25, 2.0}, Vec{0.5, 2.0, -1.5, -0.25});
}

TEST_CASE("field factories validate their shapes") {
    CHECK_THROWS_AS(make_linear_field(Mat(2, 3)), DimensionError);
    CHECK_THROWS_AS(make_rotation_field(5, {0.1, 0.2}), DimensionError);
    CHECK_THROWS_AS(make_rotation_field(4, {0.1}), DimensionError);
    CHECK_THROWS_AS(make_neural_field(4, {}, Activation::tanh), DimensionError);
    CHECK_THROWS_AS(make_neural_field(4, {3, 0}, Activation::tanh), DimensionError);
}

TEST_CASE("reduction fields reproduce the classical relation operators") {
    SUBCASE("translation") {
        const RelationField f = make_reduction_field(ReductionKind::transe, {0.2, 0.2});
        CHECK(f.kind == FieldKind::constant);
        const Vec v = field_eval(f, Vec{5.0, -5.0});
        CHECK(v[0] == 0.2);
        CHECK(v[1] == 0.2);
    }
    SUBCASE("rotation by pi/2 sends (1,0) to (0,1)") {
        const RelationField f = make_reduction_field(ReductionKind::rotate, {kPi / 2.0});
        CHECK(f.kind == FieldKind::rotation);
        CHECK(f.dim == 2);
        const Vec v = field_eval(f, Vec{1.0, 0.0});
        CHECK(std::abs(v[0] - 0.0) <= 1e-12);
        CHECK(std::abs(v[1] - 1.0) <= 1e-12);
    }
    SUBCASE("complex scale 2 with phase pi negates and doubles") {
        const RelationField f = make_reduction_field(ReductionKind::complex_, {2.0}, {kPi});
        CHECK(f.kind == FieldKind::linear);
        const Vec v = field_eval(f, Vec{0.7, -0.3});
        CHECK(std::abs(v[0] - (-1.4)) <= 1e-12);
        CHECK(std::abs(v[1] - 0.6) <= 1e-12);
    }
    SUBCASE("complex reduction needs matching scale and phase counts") {
        CHECK_THROWS_AS(make_reduction_field(ReductionKind::complex_, {1.0, 2.0}, {0.5}),
                        DimensionError);
    }
}

TEST_CASE("reduction step coefficients") {
    const StepCoefficients transe = reduction_step(ReductionKind::transe);
    CHECK(transe.eta == 1.0);
    CHECK(transe.lambda == 1.0);
    const StepCoefficients rotate = reduction_step(ReductionKind::rotate);
    CHECK(rotate.eta == 0.0);
    CHECK(rotate.lambda == 1.0);
    const StepCoefficients complex_ = reduction_step(ReductionKind::complex_);
    CHECK(complex_.eta == 0.0);
    CHECK(complex_.lambda == 1.0);
}

TEST_CASE("parameter counts per field kind") {
    CHECK(make_constant_field({1.0, 2.0, 3.0}).param_count() == 3);
    CHECK(make_linear_field(Mat(3, 3)).param_count() == 9);
    CHECK(make_rotation_field(6, {0.1, 0.2, 0.3}).param_count() == 3);
    // 5x3 + 5 + 4x5 + 4 + 3x4 = 56; the output layer has no bias.
    CHECK(make_neural_field(3, {5, 4}, Activation::tanh).param_count() == 56);
}

TEST_CASE("finite() spots a non-finite parameter") {
    RelationField f = make_constant_field({1.0, 2.0});
    CHECK(f.finite());
    f.r_vec[1] = std::numeric_limits<double>::infinity();
    CHECK(!f.finite());

    RelationField nn = make_neural_field(2, {3}, Activation::sigmoid);
    CHECK(nn.finite());
    nn.net.biases[0][1] = std::numeric_limits<double>::quiet_NaN();
    CHECK(!nn.finite());
}

TEST_CASE("kind and activation names round-trip and reject unknowns") {
    for (FieldKind k :
         {FieldKind::constant, FieldKind::linear, FieldKind::rotation, FieldKind::neural})
        CHECK(field_kind_from_string(to_string(k)) == k);
    for (Activation a : {Activation::tanh, Activation::sigmoid, Activation::identity})
        CHECK(activation_from_string(to_string(a)) == a);
    CHECK_THROWS_AS(field_kind_from_string("bogus"), ParseError);
    CHECK_THROWS_AS(activation_from_string("bogus"), ParseError);
}

TEST_CASE("field initialization stays inside its documented ranges") {
    Rng rng(17);

    RelationField c = make_constant_field(Vec(4, 0.0));
    init_field(c, rng);
    for (double x : c.r_vec) CHECK(std::abs(x) <= 0.5);

    RelationField l = make_linear_field(Mat(4, 4));
    init_field(l, rng);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            if (i == j)
                CHECK(std::abs(l.lin(i, j) - 1.0) <= 0.01);
            else
                CHECK(std::abs(l.lin(i, j)) <= 0.01);
        }

    RelationField r = make_rotation_field(6, Vec(3, 0.0));
    init_field(r, rng);
    for (double x : r.phases) CHECK(std::abs(x) <= kPi);

    RelationField n = make_neural_field(4, {5, 3}, Activation::tanh);
    init_field(n, rng);
    for (const Vec& b : n.net.biases)
        for (double x : b) CHECK(x == 0.0);
    for (std::size_t layer = 0; layer < n.net.weights.size(); ++layer) {
        const Mat& w = n.net.weights[layer];
        const double bound = std::sqrt(6.0 / static_cast<double>(w.rows + w.cols));
        for (double x : w.data) CHECK(std::abs(x) <= bound);
    }
    const double out_bound =
        std::sqrt(6.0 / static_cast<double>(n.net.output.rows + n.net.output.cols));
    for (double x : n.net.output.data) CHECK(std::abs(x) <= out_bound);
}
