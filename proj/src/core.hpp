#ifndef MQM_CORE_HPP
#define MQM_CORE_HPP

#include <optional>
#include <string>
#include <vector>

// Shared parameter and quantum-number types. Natural units, hbar = c = 1.

namespace mqm {

struct PhysicalParams {
    double m = 1.0;   // mass
    double Mq = 1.0;  // quadrupole magnitude M (> 0)
    double b = 1.0;   // electric-field gradient constant
    std::optional<double> alpha;  // inverse-radial potential strength
    std::optional<double> eta;    // linear potential strength

    double Mb() const { return Mq * b; }
};

// n_radial starts at 0 for the Landau and hard-wall scenarios and at 1 for
// the scalar-potential scenarios. k is carried but frozen at zero: the
// system is reduced to the plane.
struct QuantumNumbers {
    int n_radial = 0;
    int l = 0;
    int k = 0;
};

enum class ScenarioKind { Landau, HardWall, InverseRadial, Linear };

struct Scenario {
    ScenarioKind kind = ScenarioKind::Landau;
    double rho0 = 0.0;  // wall radius, HardWall only

    static Scenario landau() { return {ScenarioKind::Landau, 0.0}; }
    static Scenario hard_wall(double rho0) { return {ScenarioKind::HardWall, rho0}; }
    static Scenario inverse_radial() { return {ScenarioKind::InverseRadial, 0.0}; }
    static Scenario linear() { return {ScenarioKind::Linear, 0.0}; }

    bool is_potential() const {
        return kind == ScenarioKind::InverseRadial || kind == ScenarioKind::Linear;
    }
};

using ValidationReport = std::vector<std::string>;

// Pure check of every admissibility invariant; an empty report means the
// configuration is accepted by all downstream operations.
ValidationReport validate(const PhysicalParams& params, const QuantumNumbers& qn,
                          const Scenario& scenario);

const char* scenario_name(ScenarioKind kind);

}  // namespace mqm

#endif
