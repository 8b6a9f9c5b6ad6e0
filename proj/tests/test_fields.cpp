#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fields.hpp"

using namespace mqm;

namespace {
const double kH = 1e-4;
}

TEST_CASE("tensor construction invariants") {
    QuadrupoleTensor T = QuadrupoleTensor::planar(1.5);
    CHECK(T(0, 0) == 1.5);
    CHECK(T(1, 1) == 1.5);
    CHECK(T(2, 2) == -3.0);
    CHECK_THROWS_AS(QuadrupoleTensor({{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(QuadrupoleTensor({{{1, 2, 0}, {0, 1, 0}, {0, 0, -2}}}),
                    std::invalid_argument);
}

TEST_CASE("electric field") {
    CHECK(electric_field({0, 0, 7.0, 0}, 1.0).norm() == 0.0);
    CHECK(electric_field({1, 0, 0, 0}, 2.0).z == doctest::Approx(1.0));
    CHECK(electric_field({3, 4, 0, 0}, 1.0).z == doctest::Approx(12.5));
}

TEST_CASE("induced magnetic field") {
    CHECK(induced_magnetic_field({2, 3, 0, 0}, 1.0).norm() == 0.0);
    Vec3 b1 = induced_magnetic_field({1, 0, 0, 1}, 1.0);
    CHECK(b1.x == doctest::Approx(0.0));
    CHECK(b1.y == doctest::Approx(1.0));
    Vec3 b2 = induced_magnetic_field({0, 2, 0, 3}, 1.0);
    CHECK(b2.x == doctest::Approx(-6.0));
    CHECK(b2.y == doctest::Approx(0.0));
}

TEST_CASE("moment cross field reproduces the effective vector potential") {
    QuadrupoleTensor T = QuadrupoleTensor::planar(1.0);
    VectorField e = [](const CartPoint& p) { return electric_field(p, 1.0); };

    Vec3 a = moment_cross_field({1, 0, 0, 0}, T, e, kH);
    CHECK(a.x == doctest::Approx(0.0).epsilon(0).scale(1).epsilon(1e-8));
    CHECK(a.y == doctest::Approx(-1.0).epsilon(1e-8));

    CHECK(moment_cross_field({0, 0, 0, 0}, T, e, kH).norm() < 1e-10);

    Vec3 a2 = moment_cross_field({0, 2, 0, 0}, T, e, kH);
    CHECK(a2.x == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(a2.y == doctest::Approx(0.0).scale(1).epsilon(1e-8));
}

TEST_CASE("moment cross field agrees with the closed form Mb(y,-x,0) everywhere") {
    QuadrupoleTensor T = QuadrupoleTensor::planar(0.7);
    VectorField e = [](const CartPoint& p) { return electric_field(p, 1.3); };
    for (double x : {-2.0, 0.5, 1.7})
        for (double y : {-1.1, 0.0, 2.4}) {
            Vec3 a = moment_cross_field({x, y, 0.3, 0}, T, e, kH);
            Vec3 expect{0.7 * 1.3 * y, -0.7 * 1.3 * x, 0.0};
            CHECK((a - expect).norm() < 1e-8);
        }
}

TEST_CASE("effective magnetic field is uniform, (0,0,-2Mb)") {
    QuadrupoleTensor T = QuadrupoleTensor::planar(1.0);
    Vec3 b1 = effective_magnetic_field({1, 1, 0, 0}, T, 1.0, kH);
    CHECK(b1.z == doctest::Approx(-2.0).epsilon(1e-7));
    Vec3 b2 = effective_magnetic_field({5, -3, 2, 0}, T, 1.0, kH);
    CHECK(b2.z == doctest::Approx(-2.0).epsilon(1e-7));
    CHECK((b1 - b2).norm() < 1e-7);
    CHECK(effective_magnetic_field({1, 2, 0, 0}, T, 0.0, kH).norm() == 0.0);
}

TEST_CASE("faraday residual vanishes for the model field pair") {
    CHECK(faraday_residual({1, 0, 0, 0.7}, 1.0, kH).norm() < 1e-6);
    CHECK(faraday_residual({0, 0, 0, 1.0}, 1.0, kH).norm() < 1e-12);
    CHECK(faraday_residual({1.2, -0.4, 0, 2.0}, 0.0, kH).norm() == 0.0);
}

TEST_CASE("moment dot field vanishes for the model tensor") {
    QuadrupoleTensor T = QuadrupoleTensor::planar(1.0);
    CHECK(std::abs(moment_dot_field({1, 2, 0, 5}, T, 1.0, 1e-3)) < 1e-8);
    CHECK(std::abs(moment_dot_field({1, 2, 0, 0}, T, 1.0, 1e-3)) < 1e-12);
    CHECK(std::abs(moment_dot_field({0, 0, 1.5, 3}, T, 1.0, 1e-3)) < 1e-10);
}

TEST_CASE("sampled residuals stay at roundoff level") {
    QuadrupoleTensor T = QuadrupoleTensor::planar(1.0);
    FieldResiduals r = sample_field_residuals(T, 1.0, 1e-3);
    CHECK(r.max_faraday < 1e-8);
    CHECK(r.max_moment_dot_b < 1e-8);
    CHECK(r.uniformity_spread < 1e-8);
}

TEST_CASE("probe order of the residual operators is two") {
    QuadrupoleTensor T = QuadrupoleTensor::planar(1.0);
    double pf = faraday_probe_order(1e-3);
    double pm = moment_dot_probe_order(T, 1e-3);
    CHECK(pf > 1.8);
    CHECK(pf < 2.2);
    CHECK(pm > 1.8);
    CHECK(pm < 2.2);
}

TEST_CASE("non-finite samples are rejected") {
    QuadrupoleTensor T = QuadrupoleTensor::planar(1.0);
    VectorField bad = [](const CartPoint& p) {
        return Vec3{1.0 / (p.x - 1.0), 0.0, 0.0};
    };
    CHECK_THROWS_AS(moment_cross_field({1.0 - kH, 0, 0, 0}, T, bad, kH),
                    std::runtime_error);
}
