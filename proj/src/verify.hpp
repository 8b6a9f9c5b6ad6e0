#ifndef MQM_VERIFY_HPP
#define MQM_VERIFY_HPP

#include "numsolve.hpp"
#include "spectra.hpp"

namespace mqm {

// One row of the analytic-vs-numerical comparison. The numerical level is
// matched by nearest eigenvalue plus wavefunction overlap, never by index.
struct LevelComparison {
    double energy_analytic = 0.0;
    double energy_numeric = 0.0;
    double frequency = 0.0;
    double overlap = 0.0;
    double abs_diff = 0.0;
    double rel_diff = 0.0;
    int matched_index = -1;
    Method method = Method::ClosedForm;
};

// varpi = 0 resolves the first allowed frequency for potential scenarios
// (ignored otherwise). grid_cells = 0 uses the default grid.
LevelComparison verify_level(const Scenario& scenario, const PhysicalParams& params,
                             const QuantumNumbers& qn, double varpi = 0.0,
                             int grid_cells = 0);

}  // namespace mqm

#endif
