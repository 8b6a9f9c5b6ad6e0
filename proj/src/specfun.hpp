#ifndef MQM_SPECFUN_HPP
#define MQM_SPECFUN_HPP

#include <vector>

#include "core.hpp"

namespace mqm {

struct SeriesEval {
    double value = 0.0;
    int terms_used = 0;
    bool converged = false;
    double tail_estimate = 0.0;
};

// Kummer confluent hypergeometric function 1F1(a, c, x) by direct power
// series. Terminates exactly when a is a non-positive integer. Throws
// std::domain_error when c is zero or a negative integer, std::range_error
// on overflow of the partial sum.
SeriesEval kummer_1f1(double a, double c, double x, double tol = 1e-15);

// 1F1 with a cancellation-safe path for large negative a: the series is used
// for a fractional seed near zero and the value is carried down by the
// three-term recurrence in a, which is stable in the oscillatory regime.
double kummer_value(double a, double c, double x);

// Leading large-x asymptotic Gamma(c)/Gamma(a) * e^x * x^(a-c). Throws
// std::domain_error when a is a non-positive integer (Gamma pole; the series
// is a polynomial there).
double kummer_asymptotic(double a, double c, double x);

// Large negative first-parameter approximation of 1F1(A, B, x0), evaluated
// exactly as printed:
//   Gamma(B)/sqrt(pi) * e^{x0/2} * [B*x0/2 - A*x0]^{(1-B)/2}
//     * cos(sqrt(2*B*x0 - 4*A*x0) - B*pi/2 + pi/4)
// Requires 2*B*x0 - 4*A*x0 > 0 and x0 > 0 (std::domain_error otherwise).
double kummer_large_a(double A, double B, double x0);

enum class HeunVariant { Coulomb, Linear };

// Power-series coefficients a_0..a_N of the biconfluent Heun solution,
// a_0 = 1. Coulomb variant: parameter nu; Linear variant: parameter theta.
struct HeunCoefficients {
    HeunVariant variant = HeunVariant::Coulomb;
    double nu_or_theta = 0.0;
    double beta = 0.0;
    int l = 0;
    std::vector<double> a;
};

HeunCoefficients heun_coefficients(HeunVariant variant, double nu_or_theta,
                                   double beta, int l, int n_terms);

// Partial sum of sum_k a_k r^k with a last-term tail estimate.
SeriesEval heun_eval(const HeunCoefficients& coeffs, double r);

// Residual a_{n+1} (normalized by max_{k<=n}|a_k|) of the polynomial
// truncation pair at trial angular frequency varpi: the degree condition is
// imposed first to fix beta, then the remaining coefficient is returned.
// A root in varpi is an allowed frequency. Throws std::domain_error for
// varpi <= 0.
double truncation_residual(HeunVariant variant, int n, int l, double varpi,
                           const PhysicalParams& params);

}  // namespace mqm

#endif
