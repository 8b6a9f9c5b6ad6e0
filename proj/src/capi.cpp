#include "mqm/mqm.h"

#include <cstring>
#include <stdexcept>
#include <string>

#include "core.hpp"
#include "fields.hpp"
#include "specfun.hpp"
#include "spectra.hpp"
#include "verify.hpp"

struct mqm_system {
    mqm::PhysicalParams params;
    mqm::Scenario scenario;
    std::string last_error;
};

namespace {

mqm_status to_status(const std::exception& e) {
    if (dynamic_cast<const std::domain_error*>(&e)) return MQM_ERR_DOMAIN;
    if (dynamic_cast<const std::invalid_argument*>(&e)) return MQM_ERR_INVALID;
    if (dynamic_cast<const std::range_error*>(&e)) return MQM_ERR_CONVERGENCE;
    if (dynamic_cast<const std::runtime_error*>(&e)) return MQM_ERR_SEARCH;
    return MQM_ERR_INTERNAL;
}

template <typename Fn>
mqm_status guarded(mqm_system* sys, Fn&& fn) {
    if (!sys) return MQM_ERR_INVALID;
    try {
        fn();
        sys->last_error.clear();
        return MQM_OK;
    } catch (const std::exception& e) {
        sys->last_error = e.what();
        return to_status(e);
    } catch (...) {
        sys->last_error = "unknown error";
        return MQM_ERR_INTERNAL;
    }
}

mqm::HeunVariant variant_of(const mqm::Scenario& s) {
    if (s.kind == mqm::ScenarioKind::InverseRadial) return mqm::HeunVariant::Coulomb;
    if (s.kind == mqm::ScenarioKind::Linear) return mqm::HeunVariant::Linear;
    throw std::invalid_argument("operation requires a scalar-potential scenario");
}

void store(double* dst, double v) {
    if (dst) *dst = v;
}

}  // namespace

extern "C" {

const char* mqm_status_name(mqm_status status) {
    switch (status) {
        case MQM_OK: return "ok";
        case MQM_ERR_INVALID: return "invalid";
        case MQM_ERR_DOMAIN: return "domain";
        case MQM_ERR_CONVERGENCE: return "convergence";
        case MQM_ERR_SEARCH: return "search";
        case MQM_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

mqm_system* mqm_system_create(void) {
    try {
        return new mqm_system();
    } catch (...) {
        return nullptr;
    }
}

void mqm_system_destroy(mqm_system* sys) { delete sys; }

const char* mqm_system_last_error(const mqm_system* sys) {
    return sys ? sys->last_error.c_str() : "null handle";
}

mqm_status mqm_system_configure(mqm_system* sys, mqm_scenario scenario,
                                double m, double Mq, double b) {
    return guarded(sys, [&] {
        switch (scenario) {
            case MQM_SCENARIO_LANDAU:
                sys->scenario = mqm::Scenario::landau();
                break;
            case MQM_SCENARIO_HARDWALL:
                sys->scenario = mqm::Scenario::hard_wall(sys->scenario.rho0);
                break;
            case MQM_SCENARIO_COULOMB:
                sys->scenario = mqm::Scenario::inverse_radial();
                break;
            case MQM_SCENARIO_LINEAR:
                sys->scenario = mqm::Scenario::linear();
                break;
            default:
                throw std::invalid_argument("unknown scenario");
        }
        sys->params.m = m;
        sys->params.Mq = Mq;
        sys->params.b = b;
    });
}

mqm_status mqm_system_set_alpha(mqm_system* sys, double alpha) {
    return guarded(sys, [&] {
        sys->params.alpha = alpha;
        sys->params.eta.reset();
    });
}

mqm_status mqm_system_set_eta(mqm_system* sys, double eta) {
    return guarded(sys, [&] {
        sys->params.eta = eta;
        sys->params.alpha.reset();
    });
}

mqm_status mqm_system_set_rho0(mqm_system* sys, double rho0) {
    return guarded(sys, [&] { sys->scenario.rho0 = rho0; });
}

int mqm_system_validate(mqm_system* sys, int n, int l, char* buf, size_t buflen) {
    if (!sys) return -1;
    mqm::QuantumNumbers qn{n, l, 0};
    mqm::ValidationReport report = mqm::validate(sys->params, qn, sys->scenario);
    if (buf && buflen > 0) {
        std::string joined;
        for (const auto& msg : report) {
            if (!joined.empty()) joined += '\n';
            joined += msg;
        }
        std::strncpy(buf, joined.c_str(), buflen - 1);
        buf[buflen - 1] = '\0';
    }
    return static_cast<int>(report.size());
}

mqm_status mqm_energy(mqm_system* sys, int n, int l, double varpi,
                      double* energy, double* frequency) {
    return guarded(sys, [&] {
        mqm::QuantumNumbers qn{n, l, 0};
        mqm::EnergyLevel lvl;
        switch (sys->scenario.kind) {
            case mqm::ScenarioKind::Landau:
                lvl = mqm::landau_energy(sys->params, qn);
                break;
            case mqm::ScenarioKind::HardWall:
                lvl = mqm::hardwall_energy_exact(sys->params, sys->scenario.rho0, qn);
                break;
            default: {
                mqm::HeunVariant variant = variant_of(sys->scenario);
                double w = varpi;
                if (w <= 0.0) {
                    auto roots = mqm::allowed_frequency(variant, n, l, sys->params);
                    if (roots.empty())
                        throw std::runtime_error("no allowed frequency in scan window");
                    w = roots.front();
                }
                lvl = mqm::potential_energy_level(variant, n, l, w, sys->params);
                break;
            }
        }
        store(energy, lvl.energy);
        store(frequency, lvl.frequency);
    });
}

mqm_status mqm_hardwall_energy_approx(mqm_system* sys, int n, int l, double* energy) {
    return guarded(sys, [&] {
        if (!(sys->scenario.rho0 > 0.0))
            throw std::invalid_argument("rho0 not set");
        mqm::QuantumNumbers qn{n, l, 0};
        store(energy, mqm::hardwall_energy_approx(sys->params, sys->scenario.rho0, qn).energy);
    });
}

mqm_status mqm_allowed_frequencies(mqm_system* sys, int n, int l, double* roots,
                                   int capacity, int* count) {
    return guarded(sys, [&] {
        auto found = mqm::allowed_frequency(variant_of(sys->scenario), n, l, sys->params);
        if (count) *count = static_cast<int>(found.size());
        if (roots)
            for (int i = 0; i < capacity && i < static_cast<int>(found.size()); ++i)
                roots[i] = found[i];
    });
}

mqm_status mqm_allowed_frequency_n1(mqm_system* sys, int l, double* varpi) {
    return guarded(sys, [&] {
        store(varpi, mqm::allowed_frequency_n1(variant_of(sys->scenario), l, sys->params));
    });
}

mqm_status mqm_truncation_residual(mqm_system* sys, int n, int l, double varpi,
                                   double* residual) {
    return guarded(sys, [&] {
        store(residual, mqm::truncation_residual(variant_of(sys->scenario), n, l,
                                                 varpi, sys->params));
    });
}

mqm_status mqm_verify_level(mqm_system* sys, int n, int l, double varpi,
                            int grid_cells, double* energy_analytic,
                            double* energy_numeric, double* frequency,
                            double* overlap_out) {
    return guarded(sys, [&] {
        mqm::QuantumNumbers qn{n, l, 0};
        mqm::LevelComparison cmp =
            mqm::verify_level(sys->scenario, sys->params, qn, varpi,
                              grid_cells > 0 ? grid_cells : 0);
        store(energy_analytic, cmp.energy_analytic);
        store(energy_numeric, cmp.energy_numeric);
        store(frequency, cmp.frequency);
        store(overlap_out, cmp.overlap);
    });
}

mqm_status mqm_fields_residuals(mqm_system* sys, double h, double* max_faraday,
                                double* max_moment_dot_b, double* uniformity_spread) {
    return guarded(sys, [&] {
        auto T = mqm::QuadrupoleTensor::planar(sys->params.Mq);
        mqm::FieldResiduals r = mqm::sample_field_residuals(T, sys->params.b, h);
        store(max_faraday, r.max_faraday);
        store(max_moment_dot_b, r.max_moment_dot_b);
        store(uniformity_spread, r.uniformity_spread);
    });
}

mqm_status mqm_fields_probe_orders(mqm_system* sys, double h,
                                   double* faraday_order, double* moment_dot_b_order) {
    return guarded(sys, [&] {
        auto T = mqm::QuadrupoleTensor::planar(sys->params.Mq);
        store(faraday_order, mqm::faraday_probe_order(h));
        store(moment_dot_b_order, mqm::moment_dot_probe_order(T, h));
    });
}

mqm_status mqm_kummer_1f1(double a, double c, double x, double tol, double* value) {
    try {
        mqm::SeriesEval ev = mqm::kummer_1f1(a, c, x, tol > 0.0 ? tol : 1e-15);
        if (!ev.converged) return MQM_ERR_CONVERGENCE;
        store(value, ev.value);
        return MQM_OK;
    } catch (const std::exception& e) {
        return to_status(e);
    }
}

mqm_status mqm_kummer_large_a(double a_bar, double b_bar, double x0, double* value) {
    try {
        store(value, mqm::kummer_large_a(a_bar, b_bar, x0));
        return MQM_OK;
    } catch (const std::exception& e) {
        return to_status(e);
    }
}

}  // extern "C"
