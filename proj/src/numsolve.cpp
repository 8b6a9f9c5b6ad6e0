#include "numsolve.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include <lapacke.h>

namespace mqm {

std::vector<double> RadialGrid::centers() const {
    std::vector<double> c(n_cells);
    for (int i = 0; i < n_cells; ++i) c[i] = center(i);
    return c;
}

RadialGrid default_grid(const Scenario& scenario, const PhysicalParams& params,
                        double frequency_override, int n_cells) {
    RadialGrid g;
    g.n_cells = n_cells;
    if (scenario.kind == ScenarioKind::HardWall) {
        g.rho_max = scenario.rho0;
        return g;
    }
    double Mb = frequency_override > 0.0 ? params.m * frequency_override : params.Mb();
    if (!(Mb > 0.0)) throw std::invalid_argument("default_grid: Mb must be > 0");
    // envelope exp(-Mb rho^2/2) below 1e-16, times 1.25 safety
    g.rho_max = 1.25 * std::sqrt(2.0 * 36.85 / Mb);
    return g;
}

TridiagOperator build_hamiltonian(const Scenario& scenario,
                                  const PhysicalParams& params, int l,
                                  const RadialGrid& grid, BoundaryCondition bc) {
    const int n = grid.n_cells;
    if (n < 16) throw std::invalid_argument("build_hamiltonian: grid must have >= 16 cells");
    if (!(grid.rho_max > grid.rho_min) || grid.rho_min < 0.0)
        throw std::invalid_argument("build_hamiltonian: invalid grid extents");
    if (scenario.kind == ScenarioKind::HardWall) {
        if (bc != BoundaryCondition::HardWall || grid.rho_max != scenario.rho0)
            throw std::invalid_argument("build_hamiltonian: hard wall requires rho_max == rho0");
    }

    const double h = grid.h();
    const double Mb = params.Mb();
    double alpha = 0.0, eta = 0.0;
    if (scenario.kind == ScenarioKind::InverseRadial) {
        if (!params.alpha) throw std::invalid_argument("build_hamiltonian: alpha not set");
        alpha = *params.alpha;
    } else if (scenario.kind == ScenarioKind::Linear) {
        if (!params.eta) throw std::invalid_argument("build_hamiltonian: eta not set");
        eta = *params.eta;
    }

    TridiagOperator op;
    op.grid = grid;
    op.mass = params.m;
    op.diag.resize(n);
    op.off.resize(n - 1);

    for (int i = 0; i < n; ++i) {
        const double rho = grid.center(i);
        const double f_lo = grid.rho_min + i * h;        // inner face
        const double f_hi = grid.rho_min + (i + 1) * h;  // outer face
        double v = static_cast<double>(l) * l / (rho * rho) + Mb * Mb * rho * rho -
                   2.0 * Mb * l + 2.0 * params.m * alpha / rho +
                   2.0 * params.m * eta * rho;
        if (!std::isfinite(v))
            throw std::invalid_argument("build_hamiltonian: potential singular on grid");
        double flux_lo = f_lo;
        double flux_hi = f_hi;
        if (i == 0 && grid.rho_min > 0.0) flux_lo = 2.0 * f_lo;  // half-cell Dirichlet
        if (i == n - 1 && bc == BoundaryCondition::HardWall) flux_hi = 2.0 * f_hi;
        op.diag[i] = (flux_lo + flux_hi) / (rho * h * h) + v;
        if (i + 1 < n)
            op.off[i] = -f_hi / (h * h * std::sqrt(rho * grid.center(i + 1)));
    }
    return op;
}

EigenResult solve_lowest(const TridiagOperator& op, int count) {
    const int n = static_cast<int>(op.diag.size());
    if (count < 1 || count > n / 4)
        throw std::invalid_argument("solve_lowest: count must be in [1, N/4]");

    std::vector<double> w(n);
    std::vector<lapack_int> iblock(n), isplit(n);
    lapack_int m_found = 0, nsplit = 0;
    lapack_int info = LAPACKE_dstebz('I', 'B', n, 0.0, 0.0, 1, count, 0.0,
                                     op.diag.data(), op.off.data(), &m_found,
                                     &nsplit, w.data(), iblock.data(),
                                     isplit.data());
    if (info != 0 || m_found != count)
        throw std::runtime_error("solve_lowest: dstebz failed, info=" + std::to_string(info));

    std::vector<double> z(static_cast<size_t>(n) * count);
    std::vector<lapack_int> ifailv(count);
    info = LAPACKE_dstein(LAPACK_COL_MAJOR, n, op.diag.data(), op.off.data(),
                          m_found, w.data(), iblock.data(), isplit.data(),
                          z.data(), n, ifailv.data());
    if (info != 0)
        throw std::runtime_error("solve_lowest: dstein failed, info=" + std::to_string(info));

    EigenResult res;
    res.grid = op.grid;
    res.two_m_e.assign(w.begin(), w.begin() + count);
    res.energies.resize(count);
    res.states.resize(count);
    const double h = op.grid.h();
    for (int k = 0; k < count; ++k) {
        res.energies[k] = res.two_m_e[k] / (2.0 * op.mass);
        std::vector<double> R(n);
        for (int i = 0; i < n; ++i)
            R[i] = z[static_cast<size_t>(k) * n + i] / std::sqrt(op.grid.center(i) * h);
        // fix sign: positive near the origin
        if (R[0] < 0.0)
            for (double& v : R) v = -v;
        // trapezoid normalization, consistent with overlap()
        double norm = 0.0;
        for (int i = 0; i + 1 < n; ++i)
            norm += 0.5 * (R[i] * R[i] * op.grid.center(i) +
                           R[i + 1] * R[i + 1] * op.grid.center(i + 1)) * h;
        double s = 1.0 / std::sqrt(norm);
        for (double& v : R) v *= s;
        res.states[k] = std::move(R);
    }
    return res;
}

double overlap(const RadialSolution& f, const RadialSolution& g) {
    if (f.rho.size() != g.rho.size() || f.rho != g.rho)
        throw std::invalid_argument("overlap: grid mismatch");
    double s = 0.0;
    for (size_t i = 0; i + 1 < f.rho.size(); ++i) {
        double a = f.R[i] * g.R[i] * f.rho[i];
        double b = f.R[i + 1] * g.R[i + 1] * f.rho[i + 1];
        s += 0.5 * (a + b) * (f.rho[i + 1] - f.rho[i]);
    }
    return s;
}

PhaseCheck evolve_phase_check(const TridiagOperator& op, const RadialSolution& psi0,
                              double e_expected, double t_final, int steps) {
    const int n = static_cast<int>(op.diag.size());
    if (steps < 10) throw std::invalid_argument("evolve_phase_check: steps must be >= 10");
    if (static_cast<int>(psi0.R.size()) != n)
        throw std::invalid_argument("evolve_phase_check: state/grid size mismatch");

    using cplx = std::complex<double>;
    const double h = op.grid.h();
    const double two_m = 2.0 * op.mass;
    const double dt = t_final / steps;

    std::vector<cplx> w(n);
    double nrm = 0.0;
    for (int i = 0; i < n; ++i) {
        w[i] = psi0.R[i] * std::sqrt(op.grid.center(i) * h);
        nrm += std::norm(w[i]);
    }
    nrm = std::sqrt(nrm);
    for (auto& v : w) v /= nrm;
    std::vector<cplx> w0 = w;

    // Crank-Nicolson: (I + i dt/2 H) w' = (I - i dt/2 H) w, H = op/(2m)
    const cplx half = cplx(0.0, dt / (2.0 * two_m));
    std::vector<cplx> dl(n), du(n), rhs(n), cp(n);
    for (int step = 0; step < steps; ++step) {
        for (int i = 0; i < n; ++i) {
            cplx hd = op.diag[i] * w[i];
            if (i > 0) hd += op.off[i - 1] * w[i - 1];
            if (i + 1 < n) hd += op.off[i] * w[i + 1];
            rhs[i] = w[i] - half * hd;
            dl[i] = 1.0 + half * op.diag[i];
        }
        // Thomas solve with off-diagonals half*op.off
        cp[0] = half * op.off[0] / dl[0];
        rhs[0] /= dl[0];
        for (int i = 1; i < n; ++i) {
            cplx m = dl[i] - half * op.off[i - 1] * cp[i - 1];
            if (i + 1 < n) cp[i] = half * op.off[i] / m;
            rhs[i] = (rhs[i] - half * op.off[i - 1] * rhs[i - 1]) / m;
        }
        w[n - 1] = rhs[n - 1];
        for (int i = n - 2; i >= 0; --i) w[i] = rhs[i] - cp[i] * w[i + 1];
        for (const auto& v : w)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw std::runtime_error("evolve_phase_check: non-finite state");
    }

    cplx corr = 0.0;
    for (int i = 0; i < n; ++i) corr += std::conj(w0[i]) * w[i];
    PhaseCheck out;
    out.survival = std::abs(corr);
    double dphi = std::arg(corr) + e_expected * t_final;
    dphi = std::remainder(dphi, 2.0 * M_PI);
    out.phase_error = std::abs(dphi);
    return out;
}

ConvergeResult converge(const Scenario& scenario, const PhysicalParams& params,
                        int l, int level_index,
                        const std::vector<RadialGrid>& refinements,
                        BoundaryCondition bc) {
    if (refinements.size() < 3)
        throw std::invalid_argument("converge: need >= 3 refinement levels");
    std::vector<double> e;
    for (const RadialGrid& g : refinements) {
        TridiagOperator op = build_hamiltonian(scenario, params, l, g, bc);
        e.push_back(solve_lowest(op, level_index + 1).energies[level_index]);
    }
    size_t k = e.size();
    double d1 = e[k - 3] - e[k - 2];
    double d2 = e[k - 2] - e[k - 1];
    ConvergeResult out;
    if (d2 == 0.0 || d1 / d2 <= 0.0) {
        out.flagged = true;  // degenerate refinement
        out.extrapolated = e[k - 1];
        out.observed_order = 0.0;
        return out;
    }
    out.observed_order = std::log2(d1 / d2);
    out.extrapolated = e[k - 1] - d2 / 3.0;  // O(h^2) assumption
    out.flagged = out.observed_order < 1.7 || out.observed_order > 2.3;
    return out;
}

}  // namespace mqm
