#include "specfun.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace mqm {

namespace {

constexpr int kMaxTerms = 10000;

bool is_nonpositive_integer(double a) {
    return a <= 0.0 && a == std::floor(a);
}

}  // namespace

SeriesEval kummer_1f1(double a, double c, double x, double tol) {
    if (is_nonpositive_integer(c))
        throw std::domain_error("kummer_1f1: c must not be zero or a negative integer");
    if (!(tol > 0.0))
        throw std::domain_error("kummer_1f1: tol must be > 0");

    SeriesEval out;
    // extended-precision accumulation: the alternating sum cancels down to
    // ~eps * max|term|, so the working precision sets the attainable floor
    long double sum = 1.0L;
    long double term = 1.0L;
    int small_streak = 0;
    int k = 0;
    while (k < kMaxTerms) {
        term *= (static_cast<long double>(a) + k) / (static_cast<long double>(c) + k) *
                x / (k + 1);
        sum += term;
        ++k;
        if (!std::isfinite(static_cast<double>(sum)))
            throw std::range_error("kummer_1f1: partial sum overflow");
        // three consecutive small terms, so an interior zero term cannot
        // stop the sum prematurely
        if (std::abs(static_cast<double>(term)) <
            tol * std::abs(static_cast<double>(sum)))
            ++small_streak;
        else
            small_streak = 0;
        if (small_streak >= 3) break;
    }
    out.value = static_cast<double>(sum);
    out.terms_used = k;
    out.tail_estimate = std::abs(static_cast<double>(term));
    out.converged = small_streak >= 3 || (is_nonpositive_integer(a) && k >= -a);
    return out;
}

double kummer_value(double a, double c, double x) {
    // Direct series loses ~2*sqrt(|a|x)/ln(10) digits to cancellation when
    // a << 0 and x > 0; switch to the downward recurrence well before that.
    if (a >= -1.0 || x <= 0.0 || std::abs(a) * x < 40.0)
        return kummer_1f1(a, c, x).value;

    int steps = static_cast<int>(std::ceil(-a)) - 1;
    double a0 = a + steps;  // in (-1, 0]
    double m_hi = kummer_1f1(a0 + 1.0, c, x).value;  // M(a0+1)
    double m_lo = kummer_1f1(a0, c, x).value;        // M(a0)
    double aa = a0;
    for (int i = 0; i < steps; ++i) {
        // (c-a) M(a-1) + (2a-c+x) M(a) - a M(a+1) = 0
        double m_down = (aa * m_hi - (2.0 * aa - c + x) * m_lo) / (c - aa);
        m_hi = m_lo;
        m_lo = m_down;
        aa -= 1.0;
    }
    return m_lo;
}

double kummer_asymptotic(double a, double c, double x) {
    if (is_nonpositive_integer(a))
        throw std::domain_error("kummer_asymptotic: Gamma pole at non-positive integer a "
                                "(series is a polynomial there)");
    // Gamma(c)/Gamma(a) via lgamma with explicit sign tracking.
    auto gamma_sign = [](double v) {
        if (v > 0.0) return 1;
        return static_cast<long long>(std::floor(v)) % 2 == 0 ? 1 : -1;
    };
    int sign = gamma_sign(c) * gamma_sign(a);
    double lg = std::lgamma(c) - std::lgamma(a);
    return sign * std::exp(lg + x + (a - c) * std::log(x));
}

double kummer_large_a(double A, double B, double x0) {
    if (!(x0 > 0.0))
        throw std::domain_error("kummer_large_a: x0 must be > 0");
    double under_root = 2.0 * B * x0 - 4.0 * A * x0;
    if (!(under_root > 0.0))
        throw std::domain_error("kummer_large_a: 2*B*x0 - 4*A*x0 must be > 0");
    double amp = std::tgamma(B) / std::sqrt(M_PI) * std::exp(x0 / 2.0) *
                 std::pow(B * x0 / 2.0 - A * x0, (1.0 - B) / 2.0);
    return amp * std::cos(std::sqrt(under_root) - B * M_PI / 2.0 + M_PI / 4.0);
}

HeunCoefficients heun_coefficients(HeunVariant variant, double nu_or_theta,
                                   double beta, int l, int n_terms) {
    if (n_terms < 1)
        throw std::invalid_argument("heun_coefficients: n_terms must be >= 1");
    HeunCoefficients out;
    out.variant = variant;
    out.nu_or_theta = nu_or_theta;
    out.beta = beta;
    out.l = l;
    out.a.resize(n_terms + 1);

    const double al = std::abs(l);
    out.a[0] = 1.0;
    if (variant == HeunVariant::Coulomb) {
        const double nu = nu_or_theta;
        if (n_terms >= 1) out.a[1] = nu / (1.0 + 2.0 * al);
        for (int k = 0; k + 2 <= n_terms; ++k) {
            double den = (k + 2.0) * (k + 2.0 + 2.0 * al);
            out.a[k + 2] = nu / den * out.a[k + 1] -
                           (beta - 2.0 - 2.0 * al - 2.0 * k) / den * out.a[k];
        }
    } else {
        const double theta = nu_or_theta;
        if (n_terms >= 1) out.a[1] = theta / 2.0;
        for (int k = 0; k + 2 <= n_terms; ++k) {
            double den = (k + 2.0) * (k + 2.0 + 2.0 * al);
            out.a[k + 2] =
                theta * (2.0 * k + 3.0 + 2.0 * al) / (2.0 * den) * out.a[k + 1] -
                (4.0 * beta + theta * theta - 8.0 - 8.0 * al - 8.0 * k) /
                    (4.0 * den) * out.a[k];
        }
    }
    return out;
}

SeriesEval heun_eval(const HeunCoefficients& coeffs, double r) {
    if (r < 0.0)
        throw std::domain_error("heun_eval: r must be >= 0");
    SeriesEval out;
    double sum = 0.0;
    double rk = 1.0;
    double last = 0.0;
    for (double ak : coeffs.a) {
        last = ak * rk;
        sum += last;
        rk *= r;
        ++out.terms_used;
    }
    out.value = sum;
    out.tail_estimate = std::abs(last);
    out.converged = out.tail_estimate <= 1e-14 * std::max(1.0, std::abs(sum));
    return out;
}

double truncation_residual(HeunVariant variant, int n, int l, double varpi,
                           const PhysicalParams& params) {
    if (!(varpi > 0.0))
        throw std::domain_error("truncation_residual: varpi must be > 0");
    if (n < 1)
        throw std::invalid_argument("truncation_residual: n must be >= 1");

    const double al = std::abs(l);
    const double Mb = params.m * varpi;  // varpi = Mb/m
    double beta, strength;
    if (variant == HeunVariant::Coulomb) {
        if (!params.alpha)
            throw std::invalid_argument("truncation_residual: alpha not set");
        strength = 2.0 * params.m * (*params.alpha) / std::sqrt(Mb);  // nu
        beta = 2.0 * n + 2.0 + 2.0 * al;
    } else {
        if (!params.eta)
            throw std::invalid_argument("truncation_residual: eta not set");
        strength = 2.0 * params.m * (*params.eta) / std::pow(Mb, 1.5);  // theta
        beta = 2.0 * n + 2.0 + 2.0 * al - strength * strength / 4.0;
    }
    HeunCoefficients coeffs = heun_coefficients(variant, strength, beta, l, n + 1);
    double scale = 0.0;
    for (int k = 0; k <= n; ++k) scale = std::max(scale, std::abs(coeffs.a[k]));
    return coeffs.a[n + 1] / scale;
}

}  // namespace mqm
