#ifndef MQM_SPECTRA_HPP
#define MQM_SPECTRA_HPP

#include <vector>

#include "core.hpp"
#include "specfun.hpp"

namespace mqm {

enum class Method { ClosedForm, ExactRoot, Approximation };

struct EnergyLevel {
    double energy = 0.0;
    QuantumNumbers qn;
    double frequency = 0.0;  // omega or varpi used
    Scenario scenario;
    Method method = Method::ClosedForm;
};

struct RadialWavefunction {
    std::vector<double> rho;
    std::vector<double> R;  // normalized: integral |R|^2 rho drho = 1
    QuantumNumbers qn;
    Scenario scenario;
    double norm_constant = 1.0;
};

// E = omega * (n + |l|/2 - l/2 + 1/2), omega = 2*M*b/m.
EnergyLevel landau_energy(const PhysicalParams& params, const QuantumNumbers& qn);

// E ~ [n*pi + |l|*pi/2 + 3*pi/4]^2 / (2*m*rho0^2) - omega*l/2.
EnergyLevel hardwall_energy_approx(const PhysicalParams& params, double rho0,
                                   const QuantumNumbers& qn);

// (n+1)-th root in E of 1F1(|l|/2 + 1/2 - mu(E), |l|+1, Mb*rho0^2) = 0,
// found by ascending sign-change scan plus bisection. Throws
// std::runtime_error if the scan exceeds its energy ceiling.
EnergyLevel hardwall_energy_exact(const PhysicalParams& params, double rho0,
                                  const QuantumNumbers& qn, double tol = 1e-12);

// All positive roots varpi of the truncation residual at (n, l), by
// sign-change scan on a logarithmic grid plus bisection. May be empty.
std::vector<double> allowed_frequency(HeunVariant variant, int n, int l,
                                      const PhysicalParams& params,
                                      double tol = 1e-13);

// Closed-form n=1 allowed frequency, used as scan anchor and cross-check.
double allowed_frequency_n1(HeunVariant variant, int l, const PhysicalParams& params);

// Coulomb: E = varpi*(n + |l| - l + 1);
// Linear:  E = varpi*(n + |l| - l + 1) - eta^2/(2*m*varpi^2).
EnergyLevel potential_energy_level(HeunVariant variant, int n, int l,
                                   double varpi, const PhysicalParams& params);

// Samples the analytic radial solution (envelope times series) on the given
// rho grid and normalizes by the trapezoid rule. For potential scenarios
// varpi must be an allowed frequency (the series must truncate); throws
// std::invalid_argument otherwise, unless require_truncation is false, in
// which case the degree-n truncated polynomial is used as-is (off-root
// trial state for deliberate-mismatch checks).
RadialWavefunction analytic_wavefunction(const Scenario& scenario,
                                         const PhysicalParams& params,
                                         const QuantumNumbers& qn, double varpi,
                                         const std::vector<double>& rho_grid,
                                         bool require_truncation = true);

}  // namespace mqm

#endif
