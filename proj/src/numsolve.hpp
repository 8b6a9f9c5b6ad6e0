#ifndef MQM_NUMSOLVE_HPP
#define MQM_NUMSOLVE_HPP

#include <vector>

#include "core.hpp"
#include "spectra.hpp"

// Independent finite-difference oracle for the analytic spectra: a
// rho-weighted finite-volume discretization of the radial equation,
// symmetrized to a real tridiagonal eigenproblem in w_i = R_i*sqrt(rho_i*h).

namespace mqm {

struct RadialGrid {
    double rho_min = 0.0;
    double rho_max = 0.0;
    int n_cells = 0;

    double h() const { return (rho_max - rho_min) / n_cells; }
    double center(int i) const { return rho_min + (i + 0.5) * h(); }
    std::vector<double> centers() const;
};

enum class BoundaryCondition { DirichletDecay, HardWall };

struct TridiagOperator {
    std::vector<double> diag;
    std::vector<double> off;
    RadialGrid grid;
    double mass = 1.0;  // eigenvalues of the operator are 2*m*E
};

struct EigenResult {
    std::vector<double> two_m_e;             // raw eigenvalues, ascending
    std::vector<double> energies;            // two_m_e / (2m)
    std::vector<std::vector<double>> states; // R samples, trapezoid-normalized
    RadialGrid grid;
};

struct PhaseCheck {
    double survival = 0.0;
    double phase_error = 0.0;
};

struct ConvergeResult {
    double extrapolated = 0.0;
    double observed_order = 0.0;
    bool flagged = false;
};

using RadialSolution = RadialWavefunction;

// Suggests rho_max such that the Gaussian envelope is below 1e-16, with a
// 1.25 safety factor; the wall radius exactly for the hard-wall scenario.
RadialGrid default_grid(const Scenario& scenario, const PhysicalParams& params,
                        double frequency_override = 0.0, int n_cells = 4000);

TridiagOperator build_hamiltonian(const Scenario& scenario,
                                  const PhysicalParams& params, int l,
                                  const RadialGrid& grid, BoundaryCondition bc);

// `count` smallest eigenpairs via Sturm-sequence bisection plus inverse
// iteration (LAPACK dstebz/dstein); deterministic for fixed input.
EigenResult solve_lowest(const TridiagOperator& op, int count);

// Trapezoid integral of f*g*rho drho; throws on grid mismatch.
double overlap(const RadialSolution& f, const RadialSolution& g);

// Crank-Nicolson propagation of psi0 under op/(2m); returns the survival
// amplitude |<psi0|psi(t)>| and the deviation of its phase from
// -E_expected*t (mod 2pi).
PhaseCheck evolve_phase_check(const TridiagOperator& op, const RadialSolution& psi0,
                              double e_expected, double t_final, int steps);

// Richardson extrapolation over >= 3 grid refinements with halved h,
// assuming O(h^2); flags refinements whose observed order is off.
ConvergeResult converge(const Scenario& scenario, const PhysicalParams& params,
                        int l, int level_index,
                        const std::vector<RadialGrid>& refinements,
                        BoundaryCondition bc);

}  // namespace mqm

#endif
