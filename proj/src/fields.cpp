#include "fields.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mqm {

namespace {

constexpr int kEps[3][3][3] = {
    {{0, 0, 0}, {0, 0, 1}, {0, -1, 0}},
    {{0, 0, -1}, {0, 0, 0}, {1, 0, 0}},
    {{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}};

CartPoint shifted(const CartPoint& p, int axis, double d) {
    CartPoint q = p;
    switch (axis) {
        case 0: q.x += d; break;
        case 1: q.y += d; break;
        case 2: q.z += d; break;
        default: q.t += d; break;
    }
    return q;
}

void check_finite(const Vec3& v) {
    if (!std::isfinite(v.x) || !std::isfinite(v.y) || !std::isfinite(v.z))
        throw std::runtime_error("fields: non-finite field sample");
}

// d_axis field, central difference
Vec3 partial(const VectorField& field, const CartPoint& p, int axis, double h) {
    Vec3 fp = field(shifted(p, axis, h));
    Vec3 fm = field(shifted(p, axis, -h));
    check_finite(fp);
    check_finite(fm);
    return (fp - fm) * (0.5 / h);
}

Vec3 fd_curl(const VectorField& field, const CartPoint& p, double h) {
    Vec3 d[3] = {partial(field, p, 0, h), partial(field, p, 1, h),
                 partial(field, p, 2, h)};
    Vec3 out;
    out.x = d[1][2] - d[2][1];
    out.y = d[2][0] - d[0][2];
    out.z = d[0][1] - d[1][0];
    return out;
}

}  // namespace

double Vec3::norm() const { return std::sqrt(x * x + y * y + z * z); }

QuadrupoleTensor::QuadrupoleTensor(const std::array<std::array<double, 3>, 3>& t)
    : t_(t) {
    double trace = t[0][0] + t[1][1] + t[2][2];
    if (std::abs(trace) > 1e-12 * (std::abs(t[0][0]) + std::abs(t[1][1]) +
                                   std::abs(t[2][2]) + 1e-300))
        throw std::invalid_argument("QuadrupoleTensor: trace must be zero");
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (t[i][j] != t[j][i])
                throw std::invalid_argument("QuadrupoleTensor: must be symmetric");
}

QuadrupoleTensor QuadrupoleTensor::planar(double M) {
    return QuadrupoleTensor({{{M, 0.0, 0.0}, {0.0, M, 0.0}, {0.0, 0.0, -2.0 * M}}});
}

Vec3 electric_field(const CartPoint& p, double b) {
    return {0.0, 0.0, b * (p.x * p.x + p.y * p.y) / 2.0};
}

Vec3 induced_magnetic_field(const CartPoint& p, double b) {
    return {-b * p.t * p.y, b * p.t * p.x, 0.0};
}

Vec3 moment_cross_field(const CartPoint& p, const QuadrupoleTensor& T,
                        const VectorField& field, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("moment_cross_field: h must be > 0");
    // D[l][k] = d_l field_k
    Vec3 d[3] = {partial(field, p, 0, h), partial(field, p, 1, h),
                 partial(field, p, 2, h)};
    Vec3 out;
    for (int i = 0; i < 3; ++i) {
        double s = 0.0;
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                if (kEps[i][j][k] == 0) continue;
                for (int l = 0; l < 3; ++l)
                    s += kEps[i][j][k] * T(j, l) * d[l][k];
            }
        if (i == 0) out.x = s;
        else if (i == 1) out.y = s;
        else out.z = s;
    }
    return out;
}

Vec3 effective_magnetic_field(const CartPoint& p, const QuadrupoleTensor& T,
                              double b, double h) {
    VectorField a_eff = [&T, b, h](const CartPoint& q) {
        return moment_cross_field(
            q, T, [b](const CartPoint& r) { return electric_field(r, b); }, h);
    };
    return fd_curl(a_eff, p, h);
}

Vec3 faraday_residual(const CartPoint& p, double b, double h) {
    VectorField e = [b](const CartPoint& q) { return electric_field(q, b); };
    Vec3 curl_e = fd_curl(e, p, h);
    VectorField bfield = [b](const CartPoint& q) {
        return induced_magnetic_field(q, b);
    };
    Vec3 db_dt = partial(bfield, p, 3, h);
    return curl_e + db_dt;
}

double moment_dot_field(const CartPoint& p, const QuadrupoleTensor& T,
                        double b, double h) {
    VectorField bfield = [b](const CartPoint& q) {
        return induced_magnetic_field(q, b);
    };
    Vec3 d[3] = {partial(bfield, p, 0, h), partial(bfield, p, 1, h),
                 partial(bfield, p, 2, h)};
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            s += T(i, j) * d[j][i];
    return s;
}

FieldResiduals sample_field_residuals(const QuadrupoleTensor& T, double b,
                                      double h, int nx, int nz, double extent) {
    FieldResiduals out;
    double beff_min = std::numeric_limits<double>::infinity();
    double beff_max = -beff_min;
    const double times[3] = {0.0, 1.0, 2.5};
    for (int iz = 0; iz < nz; ++iz) {
        double z = nz > 1 ? -1.0 + 2.0 * iz / (nz - 1) : 0.0;
        for (int ix = 0; ix < nx; ++ix)
            for (int iy = 0; iy < nx; ++iy) {
                CartPoint p;
                p.x = -extent + 2.0 * extent * ix / (nx - 1);
                p.y = -extent + 2.0 * extent * iy / (nx - 1);
                p.z = z;
                for (double t : times) {
                    p.t = t;
                    out.max_faraday =
                        std::max(out.max_faraday, faraday_residual(p, b, h).norm());
                    out.max_moment_dot_b = std::max(
                        out.max_moment_dot_b, std::abs(moment_dot_field(p, T, b, h)));
                }
                double beff = effective_magnetic_field(p, T, b, h).z;
                beff_min = std::min(beff_min, beff);
                beff_max = std::max(beff_max, beff);
            }
    }
    out.uniformity_spread = beff_max - beff_min;
    return out;
}

namespace {

// Smooth reference pair consistent with the induction law: the magnetic
// probe is -t * curl(E_probe) with the curl taken analytically, so the
// residual operator sees pure finite-difference truncation error.
Vec3 probe_electric(const CartPoint& p) {
    return {0.0, 0.0, std::sin(p.x) * std::cos(0.7 * p.y)};
}

Vec3 probe_curl_electric(const CartPoint& p) {
    return {-0.7 * std::sin(p.x) * std::sin(0.7 * p.y),
            -std::cos(p.x) * std::cos(0.7 * p.y), 0.0};
}

double probe_faraday_max(double h) {
    double worst = 0.0;
    for (double x : {0.3, 1.1, 2.2})
        for (double y : {-1.7, 0.4, 1.9}) {
            CartPoint p{x, y, 0.0, 1.3};
            Vec3 curl_e = fd_curl(probe_electric, p, h);
            VectorField bf = [](const CartPoint& q) {
                return probe_curl_electric(q) * (-q.t);
            };
            Vec3 r = curl_e + partial(bf, p, 3, h);
            worst = std::max(worst, r.norm());
        }
    return worst;
}

Vec3 probe_magnetic(const CartPoint& p) {
    return {std::sin(p.x + 0.3 * p.y), std::cos(0.5 * p.x - p.y),
            std::sin(0.4 * p.z + 0.2 * p.x)};
}

double probe_moment_dot_exact(const QuadrupoleTensor& T, const CartPoint& p) {
    double d[3][3] = {};  // d[i][j] = d_j B_i
    d[0][0] = std::cos(p.x + 0.3 * p.y);
    d[0][1] = 0.3 * std::cos(p.x + 0.3 * p.y);
    d[1][0] = -0.5 * std::sin(0.5 * p.x - p.y);
    d[1][1] = std::sin(0.5 * p.x - p.y);
    d[2][0] = 0.2 * std::cos(0.4 * p.z + 0.2 * p.x);
    d[2][2] = 0.4 * std::cos(0.4 * p.z + 0.2 * p.x);
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s += T(i, j) * d[i][j];
    return s;
}

double probe_moment_dot_max(const QuadrupoleTensor& T, double h) {
    double worst = 0.0;
    for (double x : {0.5, 1.4})
        for (double y : {-0.8, 1.2})
            for (double z : {-0.6, 0.9}) {
                CartPoint p{x, y, z, 0.0};
                Vec3 d[3] = {partial(probe_magnetic, p, 0, h),
                             partial(probe_magnetic, p, 1, h),
                             partial(probe_magnetic, p, 2, h)};
                double s = 0.0;
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j) s += T(i, j) * d[j][i];
                worst = std::max(worst, std::abs(s - probe_moment_dot_exact(T, p)));
            }
    return worst;
}

}  // namespace

double faraday_probe_order(double h) {
    return std::log2(probe_faraday_max(h) / probe_faraday_max(h / 2.0));
}

double moment_dot_probe_order(const QuadrupoleTensor& T, double h) {
    return std::log2(probe_moment_dot_max(T, h) / probe_moment_dot_max(T, h / 2.0));
}

}  // namespace mqm
