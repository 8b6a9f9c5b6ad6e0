#ifndef MQM_FIELDS_HPP
#define MQM_FIELDS_HPP

#include <array>
#include <functional>

namespace mqm {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    double norm() const;
    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

struct CartPoint {
    double x = 0.0, y = 0.0, z = 0.0;
    double t = 0.0;
};

// Constant symmetric traceless 3x3 tensor. The model's planar-isotropic
// cylindrical components diag(M, M, -2M) are rotation-invariant in the
// plane, so the Cartesian representation is the same diagonal matrix.
class QuadrupoleTensor {
  public:
    explicit QuadrupoleTensor(const std::array<std::array<double, 3>, 3>& t);
    static QuadrupoleTensor planar(double M);

    double operator()(int i, int j) const { return t_[i][j]; }

  private:
    std::array<std::array<double, 3>, 3> t_;
};

using VectorField = std::function<Vec3(const CartPoint&)>;

// E = (0, 0, b*rho^2/2), rho^2 = x^2 + y^2.
Vec3 electric_field(const CartPoint& p, double b);

// B = b*rho*t phi_hat, i.e. b*t*(-y, x, 0) in Cartesian components.
Vec3 induced_magnetic_field(const CartPoint& p, double b);

// (M x E)_i = eps_ijk T_jl d_l E_k with central differences of step h.
Vec3 moment_cross_field(const CartPoint& p, const QuadrupoleTensor& T,
                        const VectorField& field, double h);

// Finite-difference curl of moment_cross_field; (0, 0, -2*M*b) everywhere
// for the model configuration.
Vec3 effective_magnetic_field(const CartPoint& p, const QuadrupoleTensor& T,
                              double b, double h);

// curl(E) + dB/dt, both by central differences.
Vec3 faraday_residual(const CartPoint& p, double b, double h);

// sum_ij T_ij d_j B_i at (p, t); vanishes analytically for the model field pair.
double moment_dot_field(const CartPoint& p, const QuadrupoleTensor& T,
                        double b, double h);

struct FieldResiduals {
    double max_faraday = 0.0;
    double max_moment_dot_b = 0.0;
    double uniformity_spread = 0.0;  // max-min of |B_eff| over the grid
};

// Samples the three identity checks on an nx x nx x nz grid over
// [-extent, extent]^2 x {-1, 0, 1} at times {0, 1, 2.5}.
FieldResiduals sample_field_residuals(const QuadrupoleTensor& T, double b,
                                      double h, int nx = 10, int nz = 3,
                                      double extent = 3.0);

// Measured convergence order of the residual operators between h and h/2.
// The model fields are low-degree polynomials on which central differences
// are exact, so the order is measured on a smooth transcendental field pair
// with known analytic derivatives, run through the same operators.
double faraday_probe_order(double h);
double moment_dot_probe_order(const QuadrupoleTensor& T, double h);

}  // namespace mqm

#endif
