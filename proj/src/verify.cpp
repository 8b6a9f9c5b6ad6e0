#include "verify.hpp"

#include <cmath>
#include <stdexcept>

namespace mqm {

LevelComparison verify_level(const Scenario& scenario, const PhysicalParams& params,
                             const QuantumNumbers& qn, double varpi, int grid_cells) {
    LevelComparison out;

    EnergyLevel analytic;
    HeunVariant variant = HeunVariant::Coulomb;
    switch (scenario.kind) {
        case ScenarioKind::Landau:
            analytic = landau_energy(params, qn);
            break;
        case ScenarioKind::HardWall:
            analytic = hardwall_energy_exact(params, scenario.rho0, qn);
            break;
        case ScenarioKind::InverseRadial:
        case ScenarioKind::Linear: {
            variant = scenario.kind == ScenarioKind::InverseRadial ? HeunVariant::Coulomb
                                                                   : HeunVariant::Linear;
            if (varpi <= 0.0) {
                auto roots = allowed_frequency(variant, qn.n_radial, qn.l, params);
                if (roots.empty())
                    throw std::runtime_error("verify_level: no allowed frequency found");
                varpi = roots.front();
            }
            analytic = potential_energy_level(variant, qn.n_radial, qn.l, varpi, params);
            break;
        }
    }
    out.energy_analytic = analytic.energy;
    out.frequency = analytic.frequency;
    out.method = analytic.method;

    int cells = grid_cells > 0 ? grid_cells : 4000;
    RadialGrid grid = default_grid(scenario, params,
                                   scenario.is_potential() ? varpi : 0.0, cells);
    BoundaryCondition bc = scenario.kind == ScenarioKind::HardWall
                               ? BoundaryCondition::HardWall
                               : BoundaryCondition::DirichletDecay;
    // the quantization condition pins the effective field at Mb = m*varpi;
    // the Hamiltonian must be built at that field, not at the handle's Mq*b
    PhysicalParams solver_params = params;
    if (scenario.is_potential()) {
        solver_params.Mq = params.m * varpi;
        solver_params.b = 1.0;
    }
    TridiagOperator op = build_hamiltonian(scenario, solver_params, qn.l, grid, bc);
    int count = qn.n_radial + std::abs(qn.l) + 6;
    EigenResult eig = solve_lowest(op, count);

    int best = 0;
    for (int k = 1; k < count; ++k)
        if (std::abs(eig.energies[k] - analytic.energy) <
            std::abs(eig.energies[best] - analytic.energy))
            best = k;
    out.matched_index = best;
    out.energy_numeric = eig.energies[best];
    out.abs_diff = std::abs(out.energy_analytic - out.energy_numeric);
    out.rel_diff = out.abs_diff / std::max(std::abs(out.energy_analytic), 1e-300);

    // off-root varpi is a deliberate mismatch: keep the truncated trial
    // state so the row reports a degraded overlap instead of aborting
    RadialWavefunction ana =
        analytic_wavefunction(scenario, params, qn, varpi, grid.centers(), false);
    RadialSolution num;
    num.rho = grid.centers();
    num.R = eig.states[best];
    num.qn = qn;
    num.scenario = scenario;
    out.overlap = std::abs(overlap(ana, num));
    return out;
}

}  // namespace mqm
