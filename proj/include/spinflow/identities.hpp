#pragma once

#include <string>
#include <vector>

#include "spinflow/products.hpp"

namespace spinflow {

/// Outcome of one executable identity check.
struct IdentityReport {
    std::string name;
    double max_residual = 0.0;  // worst absolute defect over all samples/sites
    double scale = 1.0;         // normalization the tolerance is relative to
    double tolerance = 0.0;
    bool pass = false;

    static IdentityReport make(std::string name, double residual, double scale,
                               double tol) {
        IdentityReport r;
        r.name = std::move(name);
        r.max_residual = residual;
        r.scale = scale > 0.0 ? scale : 1.0;
        r.tolerance = tol;
        r.pass = residual <= tol * r.scale;
        return r;
    }
};

inline constexpr double algebraic_tolerance = 1e-13;
inline constexpr double differential_tolerance = 1e-10;

/// One sample point for the pointwise vector algebra checks.
struct AlgebraicSample {
    Vec3 a, b, c, x, y;
    std::array<Vec3, 3> r;  // rows of a 3x3 matrix
};

namespace detail {

inline double det3(const Vec3& a, const Vec3& b, const Vec3& c) {
    return a[0] * (b[1] * c[2] - b[2] * c[1]) - b[0] * (a[1] * c[2] - a[2] * c[1]) +
           c[0] * (a[1] * b[2] - a[2] * b[1]);
}

inline Vec3 matvec(const std::array<Vec3, 3>& m, const Vec3& v) {
    return {dot3(m[0], v), dot3(m[1], v), dot3(m[2], v)};
}

inline Vec3 matvec_t(const std::array<Vec3, 3>& m, const Vec3& v) {
    return {m[0][0] * v[0] + m[1][0] * v[1] + m[2][0] * v[2],
            m[0][1] * v[0] + m[1][1] * v[1] + m[2][1] * v[2],
            m[0][2] * v[0] + m[1][2] * v[1] + m[2][2] * v[2]};
}

inline double mat_det(const std::array<Vec3, 3>& m) {
    return det3({m[0][0], m[1][0], m[2][0]}, {m[0][1], m[1][1], m[2][1]},
                {m[0][2], m[1][2], m[2][2]});
}

inline double max_abs3(const Vec3& v) {
    return std::max({std::fabs(v[0]), std::fabs(v[1]), std::fabs(v[2])});
}

inline double sample_scale(const AlgebraicSample& s) {
    double m = 1.0;
    for (const Vec3* v : {&s.a, &s.b, &s.c, &s.x, &s.y})
        m = std::max(m, norm3(*v));
    for (const Vec3& row : s.r) m = std::max(m, norm3(row));
    return m * m * m;
}

}  // namespace detail

/// Pointwise cross-product and determinant identities, checked on every sample:
///   <A x B, C> = det(A, B, C)
///   R^T (RA x RB) = det(R) (A x B)
///   det(A x B, X, Y) = <A,X><B,Y> - <B,X><A,Y>
///   (A x B) x C = <C,A> B - <C,B> A
///   (A x B) x C + (B x C) x A + (C x A) x B = 0
inline std::vector<IdentityReport> algebraic_identities(
    const std::vector<AlgebraicSample>& samples) {
    using detail::det3;
    double r_triple = 0.0, r_rot = 0.0, r_expand = 0.0, r_tvp = 0.0, r_jacobi = 0.0;
    double scale = 1.0;
    for (const AlgebraicSample& s : samples) {
        scale = std::max(scale, detail::sample_scale(s));
        const Vec3 ab = cross3(s.a, s.b);
        r_triple = std::max(r_triple, std::fabs(dot3(ab, s.c) - det3(s.a, s.b, s.c)));

        const Vec3 ra = detail::matvec(s.r, s.a);
        const Vec3 rb = detail::matvec(s.r, s.b);
        const Vec3 lhs_rot = detail::matvec_t(s.r, cross3(ra, rb));
        const double dr = detail::mat_det(s.r);
        for (int i = 0; i < 3; ++i)
            r_rot = std::max(r_rot, std::fabs(lhs_rot[i] - dr * ab[i]));

        const double lhs_exp = det3(ab, s.x, s.y);
        const double rhs_exp =
            dot3(s.a, s.x) * dot3(s.b, s.y) - dot3(s.b, s.x) * dot3(s.a, s.y);
        r_expand = std::max(r_expand, std::fabs(lhs_exp - rhs_exp));

        const Vec3 lhs_tvp = cross3(ab, s.c);
        for (int i = 0; i < 3; ++i)
            r_tvp = std::max(r_tvp, std::fabs(lhs_tvp[i] - (dot3(s.c, s.a) * s.b[i] -
                                                            dot3(s.c, s.b) * s.a[i])));

        const Vec3 j1 = cross3(cross3(s.a, s.b), s.c);
        const Vec3 j2 = cross3(cross3(s.b, s.c), s.a);
        const Vec3 j3 = cross3(cross3(s.c, s.a), s.b);
        for (int i = 0; i < 3; ++i)
            r_jacobi = std::max(r_jacobi, std::fabs(j1[i] + j2[i] + j3[i]));
    }
    return {
        IdentityReport::make("triple-scalar", r_triple, scale, algebraic_tolerance),
        IdentityReport::make("rotation-covariance", r_rot, scale, algebraic_tolerance),
        IdentityReport::make("det-expansion", r_expand, scale, algebraic_tolerance),
        IdentityReport::make("triple-cross", r_tvp, scale, algebraic_tolerance),
        IdentityReport::make("jacobi", r_jacobi, scale, algebraic_tolerance),
    };
}

namespace detail {

inline double field_scale(const PhysicalVectorField& u) {
    return std::max(u.max_magnitude(), 1e-30);
}

/// Gradient of a scalar sample array, via the spectral derivative.
inline PhysicalVectorField scalar_gradient(const PhysicalScalarField& f) {
    const std::vector<Complex> fh = forward_transform_scalar(f);
    return inverse_transform(spectral_gradient(f.lattice(), fh));
}

}  // namespace detail

/// Product rules of the curl, each side evaluated through its own spectral
/// route on band-limited inputs:
///   curl(alpha u) = alpha curl u + grad(alpha) x u
///   (u.grad)v + (v.grad)u = grad(u.v) - u x curl v - v x curl u
///   (curl u) x u = (u.grad)u - grad(|u|^2)/2
inline std::vector<IdentityReport> curl_product_rules(const PhysicalScalarField& alpha,
                                                      const PhysicalVectorField& u,
                                                      const PhysicalVectorField& v) {
    const Lattice& lat = u.lattice();
    const auto N = lat.size();
    const SpectralVectorField uh = forward_transform(u);
    const SpectralVectorField vh = forward_transform(v);
    const PhysicalVectorField curl_u = inverse_transform(curl(uh));
    const PhysicalVectorField curl_v = inverse_transform(curl(vh));
    const double scale = detail::field_scale(u) * detail::field_scale(v);

    // curl(alpha u) vs alpha curl u + grad(alpha) x u
    PhysicalVectorField au(lat);
    for (int c = 0; c < 3; ++c)
        for (std::int64_t i = 0; i < N; ++i)
            au.at(c, i) = alpha.data()[i] * u.at(c, i);
    const PhysicalVectorField lhs1 = inverse_transform(curl(forward_transform(au)));
    const PhysicalVectorField grad_alpha = detail::scalar_gradient(alpha);
    PhysicalVectorField rhs1 = cross_product(grad_alpha, u);
    for (int c = 0; c < 3; ++c)
        for (std::int64_t i = 0; i < N; ++i)
            rhs1.at(c, i) += alpha.data()[i] * curl_u.at(c, i);
    double a_scale = 0.0;
    for (double x : alpha.data()) a_scale = std::max(a_scale, std::fabs(x));
    const double r1 = fieldops::max_abs_diff(lhs1, rhs1);
    const double s1 = std::max(a_scale, 1.0) * detail::field_scale(u) *
                      std::max(detail::field_scale(curl_u), 1.0);

    // (u.grad)v + (v.grad)u vs grad(u.v) - u x curl v - v x curl u
    const PhysicalVectorField adv_uv = inverse_transform(advect(uh, vh, false));
    const PhysicalVectorField adv_vu = inverse_transform(advect(vh, uh, false));
    PhysicalScalarField udotv(lat);
    for (std::int64_t i = 0; i < N; ++i)
        udotv.data()[i] = u.at(0, i) * v.at(0, i) + u.at(1, i) * v.at(1, i) +
                          u.at(2, i) * v.at(2, i);
    const PhysicalVectorField grad_uv = detail::scalar_gradient(udotv);
    const PhysicalVectorField uxcv = cross_product(u, curl_v);
    const PhysicalVectorField vxcu = cross_product(v, curl_u);
    double r2 = 0.0;
    for (int c = 0; c < 3; ++c)
        for (std::int64_t i = 0; i < N; ++i) {
            const double lhs = adv_uv.at(c, i) + adv_vu.at(c, i);
            const double rhs = grad_uv.at(c, i) - uxcv.at(c, i) - vxcu.at(c, i);
            r2 = std::max(r2, std::fabs(lhs - rhs));
        }

    // (curl u) x u vs (u.grad)u - grad(|u|^2)/2
    const PhysicalVectorField lhs3 = cross_product(curl_u, u);
    const PhysicalVectorField adv_uu = inverse_transform(advect(uh, uh, false));
    const PhysicalVectorField grad_u2 = detail::scalar_gradient(pointwise_norm_sq(u));
    double r3 = 0.0;
    for (int c = 0; c < 3; ++c)
        for (std::int64_t i = 0; i < N; ++i) {
            const double rhs = adv_uu.at(c, i) - 0.5 * grad_u2.at(c, i);
            r3 = std::max(r3, std::fabs(lhs3.at(c, i) - rhs));
        }

    return {
        IdentityReport::make("curl-scalar-product", r1, s1, differential_tolerance),
        IdentityReport::make("dot-product-rule", r2, scale, differential_tolerance),
        IdentityReport::make("curl-cross-self", r3,
                             detail::field_scale(u) * detail::field_scale(u),
                             differential_tolerance),
    };
}

/// Curl of a general advection term (u need not be divergence-free):
///   curl((u.grad)v) = (u.grad)curl v - (curl v . grad)u
///                     + (div u)(curl v) + sum_j grad(u_j) x grad(v_j)
inline IdentityReport advection_curl_identity(const PhysicalVectorField& u,
                                              const PhysicalVectorField& v) {
    const Lattice& lat = u.lattice();
    const auto N = lat.size();
    const auto& n = lat.n();
    const SpectralVectorField uh = forward_transform(u);
    const SpectralVectorField vh = forward_transform(v);
    const SpectralVectorField curl_vh = curl(vh);

    const PhysicalVectorField lhs = inverse_transform(curl(advect(uh, vh, false)));

    const PhysicalVectorField term1 = inverse_transform(advect(uh, curl_vh, false));
    const PhysicalVectorField term2 = inverse_transform(advect(curl_vh, uh, false));

    // (div u)(curl v)
    const Complex im{0.0, 1.0};
    std::vector<Complex> div_u(lat.size(), Complex{0.0, 0.0});
    for (int mz = 0; mz < n[2]; ++mz)
        for (int my = 0; my < n[1]; ++my)
            for (int mx = 0; mx < n[0]; ++mx) {
                if (lat.is_nyquist(mx, my, mz)) continue;
                const Vec3 xi = lat.wavevector(mx, my, mz);
                const std::int64_t f = lat.flat(mx, my, mz);
                for (int c = 0; c < 3; ++c) div_u[f] += im * xi[c] * uh.at(c, f);
            }
    const PhysicalScalarField div_u_p = inverse_transform_scalar(lat, div_u);
    const PhysicalVectorField curl_v_p = inverse_transform(curl_vh);

    // sum_j grad(u_j) x grad(v_j)
    PhysicalVectorField grad_cross(lat);
    for (int j = 0; j < 3; ++j) {
        PhysicalScalarField ujs(lat), vjs(lat);
        for (std::int64_t i = 0; i < N; ++i) {
            ujs.data()[i] = u.at(j, i);
            vjs.data()[i] = v.at(j, i);
        }
        const PhysicalVectorField gu = detail::scalar_gradient(ujs);
        const PhysicalVectorField gv = detail::scalar_gradient(vjs);
        const PhysicalVectorField gc = cross_product(gu, gv);
        for (std::size_t i = 0; i < grad_cross.data().size(); ++i)
            grad_cross.data()[i] += gc.data()[i];
    }

    double res = 0.0;
    for (int c = 0; c < 3; ++c)
        for (std::int64_t i = 0; i < N; ++i) {
            const double rhs = term1.at(c, i) - term2.at(c, i) +
                               div_u_p.data()[i] * curl_v_p.at(c, i) +
                               grad_cross.at(c, i);
            res = std::max(res, std::fabs(lhs.at(c, i) - rhs));
        }
    const double scale =
        std::max(detail::field_scale(u) * detail::field_scale(curl_v_p), 1e-30);
    return IdentityReport::make("advection-curl", res, scale, differential_tolerance);
}

}  // namespace spinflow
