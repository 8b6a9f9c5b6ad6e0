#include "spectra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mqm {

namespace {

double wall_f1_value(const PhysicalParams& params, double rho0, int l, double E) {
    const double Mb = params.Mb();
    const double xi0 = Mb * rho0 * rho0;
    const double mu = params.m * E / (2.0 * Mb) + l / 2.0;
    return kummer_value(std::abs(l) / 2.0 + 0.5 - mu, std::abs(l) + 1.0, xi0);
}

}  // namespace

EnergyLevel landau_energy(const PhysicalParams& params, const QuantumNumbers& qn) {
    const double omega = 2.0 * params.Mb() / params.m;
    EnergyLevel out;
    out.qn = qn;
    out.scenario = Scenario::landau();
    out.frequency = omega;
    out.energy = omega * (qn.n_radial + std::abs(qn.l) / 2.0 - qn.l / 2.0 + 0.5);
    out.method = Method::ClosedForm;
    return out;
}

EnergyLevel hardwall_energy_approx(const PhysicalParams& params, double rho0,
                                   const QuantumNumbers& qn) {
    const double omega = 2.0 * params.Mb() / params.m;
    const double s = qn.n_radial * M_PI + std::abs(qn.l) * M_PI / 2.0 + 3.0 * M_PI / 4.0;
    EnergyLevel out;
    out.qn = qn;
    out.scenario = Scenario::hard_wall(rho0);
    out.frequency = omega;
    out.energy = s * s / (2.0 * params.m * rho0 * rho0) - omega * qn.l / 2.0;
    out.method = Method::Approximation;
    return out;
}

EnergyLevel hardwall_energy_exact(const PhysicalParams& params, double rho0,
                                  const QuantumNumbers& qn, double tol) {
    if (!(rho0 > 0.0)) throw std::invalid_argument("hardwall_energy_exact: rho0 must be > 0");
    if (!(tol > 0.0)) throw std::invalid_argument("hardwall_energy_exact: tol must be > 0");
    const double omega = 2.0 * params.Mb() / params.m;
    const double wall_scale = 1.0 / (2.0 * params.m * rho0 * rho0);
    // root spacing is bounded below by the disk-mode spacing ~ pi^2 *
    // wall_scale in every regime (the confining term only spreads levels),
    // so the scan step must not shrink with omega as b -> 0
    const double step = 0.2 * M_PI * M_PI * wall_scale;
    const double ceiling =
        4.0 * (hardwall_energy_approx(params, rho0, qn).energy +
               omega * (std::abs(qn.l) + 2.0) + 10.0 * M_PI * M_PI * wall_scale);

    auto f = [&](double E) { return wall_f1_value(params, rho0, qn.l, E); };

    int found = 0;
    double E = step * 1e-9;
    double prev = f(E);
    double root = 0.0;
    while (found <= qn.n_radial) {
        double E2 = E + step;
        if (E2 > ceiling)
            throw std::runtime_error("hardwall_energy_exact: scan exceeded energy ceiling");
        double cur = f(E2);
        if (prev == 0.0) {
            root = E;
            ++found;
        } else if (prev * cur < 0.0) {
            double lo = E, hi = E2, flo = prev;
            for (int it = 0; it < 200; ++it) {
                double mid = 0.5 * (lo + hi);
                double fm = f(mid);
                if (flo * fm <= 0.0) {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
                if (hi - lo <= tol * std::max(1.0, std::abs(hi))) break;
            }
            root = 0.5 * (lo + hi);
            ++found;
        }
        E = E2;
        prev = cur;
    }

    EnergyLevel out;
    out.qn = qn;
    out.scenario = Scenario::hard_wall(rho0);
    out.frequency = omega;
    out.energy = root;
    out.method = Method::ExactRoot;
    return out;
}

double allowed_frequency_n1(HeunVariant variant, int l, const PhysicalParams& params) {
    const double al = std::abs(l);
    if (variant == HeunVariant::Coulomb) {
        if (!params.alpha) throw std::invalid_argument("allowed_frequency_n1: alpha not set");
        const double a = *params.alpha;
        return 2.0 * params.m * a * a / (1.0 + 2.0 * al);
    }
    if (!params.eta) throw std::invalid_argument("allowed_frequency_n1: eta not set");
    const double e = *params.eta;
    return std::cbrt(e * e * (2.0 * al + 3.0) / (2.0 * params.m));
}

std::vector<double> allowed_frequency(HeunVariant variant, int n, int l,
                                      const PhysicalParams& params, double tol) {
    if (n < 1) throw std::invalid_argument("allowed_frequency: n must be >= 1");
    const double anchor = allowed_frequency_n1(variant, l, params);
    const int panels = 400;
    const double lo_bound = 1e-4 * anchor;
    const double hi_bound = 1e4 * anchor;
    const double ratio = std::pow(hi_bound / lo_bound, 1.0 / panels);

    auto res = [&](double w) { return truncation_residual(variant, n, l, w, params); };

    std::vector<double> roots;
    double w = lo_bound;
    double prev = res(w);
    for (int i = 0; i < panels; ++i) {
        double w2 = w * ratio;
        double cur = res(w2);
        if (prev == 0.0) {
            roots.push_back(w);
        } else if (prev * cur < 0.0) {
            double a = w, b = w2, fa = prev;
            for (int it = 0; it < 200; ++it) {
                double mid = 0.5 * (a + b);
                double fm = res(mid);
                if (fa * fm <= 0.0) {
                    b = mid;
                } else {
                    a = mid;
                    fa = fm;
                }
                if (b - a <= tol * std::abs(b)) break;
            }
            roots.push_back(0.5 * (a + b));
        }
        w = w2;
        prev = cur;
    }
    // dedupe (bisection on adjacent panels can land on the same root)
    std::sort(roots.begin(), roots.end());
    std::vector<double> out;
    for (double r : roots)
        if (out.empty() || r - out.back() > 1e-8 * r) out.push_back(r);
    return out;
}

EnergyLevel potential_energy_level(HeunVariant variant, int n, int l,
                                   double varpi, const PhysicalParams& params) {
    if (!(varpi > 0.0))
        throw std::invalid_argument("potential_energy_level: varpi must be > 0");
    const double al = std::abs(l);
    EnergyLevel out;
    out.qn = {n, l, 0};
    out.frequency = varpi;
    out.method = Method::ClosedForm;
    out.energy = varpi * (n + al - l + 1.0);
    if (variant == HeunVariant::Coulomb) {
        out.scenario = Scenario::inverse_radial();
    } else {
        if (!params.eta) throw std::invalid_argument("potential_energy_level: eta not set");
        const double e = *params.eta;
        out.energy -= e * e / (2.0 * params.m * varpi * varpi);
        out.scenario = Scenario::linear();
    }
    return out;
}

RadialWavefunction analytic_wavefunction(const Scenario& scenario,
                                         const PhysicalParams& params,
                                         const QuantumNumbers& qn, double varpi,
                                         const std::vector<double>& rho_grid,
                                         bool require_truncation) {
    if (rho_grid.size() < 2)
        throw std::invalid_argument("analytic_wavefunction: grid too small");
    const double al = std::abs(qn.l);
    const double Mb_landau = params.Mb();

    RadialWavefunction out;
    out.rho = rho_grid;
    out.R.resize(rho_grid.size());
    out.qn = qn;
    out.scenario = scenario;

    switch (scenario.kind) {
        case ScenarioKind::Landau: {
            for (size_t i = 0; i < rho_grid.size(); ++i) {
                double xi = Mb_landau * rho_grid[i] * rho_grid[i];
                out.R[i] = std::pow(xi, al / 2.0) * std::exp(-xi / 2.0) *
                           kummer_1f1(-static_cast<double>(qn.n_radial), al + 1.0, xi).value;
            }
            break;
        }
        case ScenarioKind::HardWall: {
            EnergyLevel lvl = hardwall_energy_exact(params, scenario.rho0, qn);
            double mu = params.m * lvl.energy / (2.0 * Mb_landau) + qn.l / 2.0;
            double a = al / 2.0 + 0.5 - mu;
            for (size_t i = 0; i < rho_grid.size(); ++i) {
                double xi = Mb_landau * rho_grid[i] * rho_grid[i];
                out.R[i] = std::pow(xi, al / 2.0) * std::exp(-xi / 2.0) *
                           kummer_value(a, al + 1.0, xi);
            }
            break;
        }
        case ScenarioKind::InverseRadial:
        case ScenarioKind::Linear: {
            HeunVariant variant = scenario.kind == ScenarioKind::InverseRadial
                                      ? HeunVariant::Coulomb
                                      : HeunVariant::Linear;
            double residual = truncation_residual(variant, qn.n_radial, qn.l, varpi, params);
            int n_terms = qn.n_radial;
            if (std::abs(residual) > 1e-8) {
                if (require_truncation)
                    throw std::invalid_argument(
                        "analytic_wavefunction: varpi is not an allowed frequency "
                        "(series does not truncate)");
                // off-root the regular solution does not truncate and grows
                // like exp(+r^2/2); carry the series far enough to expose it.
                // the default grid has r_max^2 ~ 115, so the k ~ r^2 term
                // peak is well inside 250 and r^250 still fits in a double
                n_terms = 250;
            }
            const double Mb = params.m * varpi;
            double strength, beta;
            if (variant == HeunVariant::Coulomb) {
                strength = 2.0 * params.m * (*params.alpha) / std::sqrt(Mb);
                beta = 2.0 * qn.n_radial + 2.0 + 2.0 * al;
            } else {
                strength = 2.0 * params.m * (*params.eta) / std::pow(Mb, 1.5);
                beta = 2.0 * qn.n_radial + 2.0 + 2.0 * al - strength * strength / 4.0;
            }
            HeunCoefficients coeffs =
                heun_coefficients(variant, strength, beta, qn.l, n_terms);
            for (size_t i = 0; i < rho_grid.size(); ++i) {
                double r = std::sqrt(Mb) * rho_grid[i];
                double env = std::exp(-r * r / 2.0) * std::pow(r, al);
                if (variant == HeunVariant::Linear) env *= std::exp(-strength * r / 2.0);
                out.R[i] = env * heun_eval(coeffs, r).value;
            }
            break;
        }
    }

    // trapezoid normalization of integral |R|^2 rho drho
    double norm = 0.0;
    for (size_t i = 0; i + 1 < rho_grid.size(); ++i) {
        double f0 = out.R[i] * out.R[i] * rho_grid[i];
        double f1 = out.R[i + 1] * out.R[i + 1] * rho_grid[i + 1];
        norm += 0.5 * (f0 + f1) * (rho_grid[i + 1] - rho_grid[i]);
    }
    if (!(norm > 0.0))
        throw std::runtime_error("analytic_wavefunction: vanishing norm");
    out.norm_constant = 1.0 / std::sqrt(norm);
    for (double& v : out.R) v *= out.norm_constant;
    return out;
}

}  // namespace mqm
