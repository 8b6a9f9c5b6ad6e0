#include "core.hpp"

#include <cmath>

namespace mqm {

ValidationReport validate(const PhysicalParams& params, const QuantumNumbers& qn,
                          const Scenario& scenario) {
    ValidationReport report;

    if (!(params.m > 0.0) || !std::isfinite(params.m))
        report.push_back("m must be > 0");
    if (!(params.Mq > 0.0) || !std::isfinite(params.Mq))
        report.push_back("Mq must be > 0");
    if (!(params.b > 0.0) || !std::isfinite(params.b))
        report.push_back("b must be > 0");
    if (params.alpha && !std::isfinite(*params.alpha))
        report.push_back("alpha must be finite");
    if (params.eta && !std::isfinite(*params.eta))
        report.push_back("eta must be finite");
    if (params.alpha && params.eta)
        report.push_back("alpha and eta cannot both be active");

    if (qn.k != 0)
        report.push_back("k must be 0");

    switch (scenario.kind) {
        case ScenarioKind::Landau:
            if (qn.n_radial < 0) report.push_back("n_radial >= 0 for the Landau scenario");
            break;
        case ScenarioKind::HardWall:
            if (qn.n_radial < 0) report.push_back("n_radial >= 0 for the hard-wall scenario");
            if (!(scenario.rho0 > 0.0) || !std::isfinite(scenario.rho0))
                report.push_back("rho0 must satisfy 0 < rho0 < infinity");
            break;
        case ScenarioKind::InverseRadial:
            if (qn.n_radial < 1) report.push_back("n_radial >= 1 for potential scenarios");
            if (!params.alpha || *params.alpha == 0.0)
                report.push_back("alpha required for the inverse-radial scenario");
            break;
        case ScenarioKind::Linear:
            if (qn.n_radial < 1) report.push_back("n_radial >= 1 for potential scenarios");
            if (!params.eta || *params.eta == 0.0)
                report.push_back("eta required for the linear scenario");
            break;
    }
    return report;
}

const char* scenario_name(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::Landau: return "landau";
        case ScenarioKind::HardWall: return "hardwall";
        case ScenarioKind::InverseRadial: return "coulomb";
        case ScenarioKind::Linear: return "linear";
    }
    return "unknown";
}

}  // namespace mqm
