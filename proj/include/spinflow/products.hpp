#pragma once

#include "spinflow/curl_ops.hpp"
#include "spinflow/fields.hpp"
#include "spinflow/transforms.hpp"

namespace spinflow {

/// Pointwise cross product of two physical fields.
inline PhysicalVectorField cross_product(const PhysicalVectorField& a,
                                         const PhysicalVectorField& b) {
    const auto N = a.lattice().size();
    PhysicalVectorField r(a.lattice());
    for (std::int64_t i = 0; i < N; ++i) {
        const double ax = a.at(0, i), ay = a.at(1, i), az = a.at(2, i);
        const double bx = b.at(0, i), by = b.at(1, i), bz = b.at(2, i);
        r.at(0, i) = ay * bz - az * by;
        r.at(1, i) = az * bx - ax * bz;
        r.at(2, i) = ax * by - ay * bx;
    }
    return r;
}

/// Pointwise 3x3 determinant det(a, b, c) by columns.
inline PhysicalScalarField pointwise_det(const PhysicalVectorField& a,
                                         const PhysicalVectorField& b,
                                         const PhysicalVectorField& c) {
    const auto N = a.lattice().size();
    PhysicalScalarField r(a.lattice());
    for (std::int64_t i = 0; i < N; ++i) {
        const double d = a.at(0, i) * (b.at(1, i) * c.at(2, i) - b.at(2, i) * c.at(1, i)) -
                         b.at(0, i) * (a.at(1, i) * c.at(2, i) - a.at(2, i) * c.at(1, i)) +
                         c.at(0, i) * (a.at(1, i) * b.at(2, i) - a.at(2, i) * b.at(1, i));
        r.data()[i] = d;
    }
    return r;
}

/// Grid quadrature of a scalar field.
inline double grid_integral(const PhysicalScalarField& f) {
    double s = 0.0;
    for (double v : f.data()) s += v;
    return f.lattice().cell_volume() * s;
}

inline double grid_l1(const PhysicalScalarField& f) {
    double s = 0.0;
    for (double v : f.data()) s += std::fabs(v);
    return f.lattice().cell_volume() * s;
}

/// Spectral partial derivative along one axis.
inline SpectralVectorField partial_derivative(const SpectralVectorField& u, int axis) {
    const Lattice& lat = u.lattice();
    const auto& n = lat.n();
    const Complex i{0.0, 1.0};
    SpectralVectorField out(lat);
    for (int mz = 0; mz < n[2]; ++mz)
        for (int my = 0; my < n[1]; ++my)
            for (int mx = 0; mx < n[0]; ++mx) {
                if (lat.is_nyquist(mx, my, mz)) continue;
                const Vec3 xi = lat.wavevector(mx, my, mz);
                const std::int64_t f = lat.flat(mx, my, mz);
                for (int c = 0; c < 3; ++c) out.at(c, f) = i * xi[axis] * u.at(c, f);
            }
    return out;
}

/// Advection (a . grad) b evaluated pseudo-spectrally; the quadratic product
/// is formed on the grid and optionally retruncated by the 2/3 rule.
inline SpectralVectorField advect(const SpectralVectorField& a,
                                  const SpectralVectorField& b, bool dealias_out = true) {
    const Lattice& lat = a.lattice();
    const auto N = lat.size();
    const PhysicalVectorField ap = inverse_transform(a);
    PhysicalVectorField sum(lat);
    for (int axis = 0; axis < 3; ++axis) {
        const PhysicalVectorField db = inverse_transform(partial_derivative(b, axis));
        for (int c = 0; c < 3; ++c)
            for (std::int64_t i = 0; i < N; ++i)
                sum.at(c, i) += ap.at(axis, i) * db.at(c, i);
    }
    SpectralVectorField out = forward_transform(sum);
    if (dealias_out) out = dealias(out);
    zero_nyquist(out);
    return out;
}

/// Tensor-divergence form of self-advection: div(u (x) u), component i equal
/// to sum_j d_j (u_j u_i).  Independent route to (u.grad)u for div-free u.
inline SpectralVectorField tensor_divergence(const SpectralVectorField& u,
                                             bool dealias_out = true) {
    const Lattice& lat = u.lattice();
    const auto N = lat.size();
    const auto& n = lat.n();
    const PhysicalVectorField up = inverse_transform(u);
    const Complex im{0.0, 1.0};
    SpectralVectorField out(lat);
    PhysicalScalarField prod(lat);
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i) {
            for (std::int64_t s = 0; s < N; ++s)
                prod.data()[s] = up.at(j, s) * up.at(i, s);
            const std::vector<Complex> ph = forward_transform_scalar(prod);
            for (int mz = 0; mz < n[2]; ++mz)
                for (int my = 0; my < n[1]; ++my)
                    for (int mx = 0; mx < n[0]; ++mx) {
                        if (lat.is_nyquist(mx, my, mz)) continue;
                        const Vec3 xi = lat.wavevector(mx, my, mz);
                        const std::int64_t f = lat.flat(mx, my, mz);
                        out.at(i, f) += im * xi[j] * ph[f];
                    }
        }
    if (dealias_out) out = dealias(out);
    return out;
}

/// Pointwise scalar product |u|^2 on the grid.
inline PhysicalScalarField pointwise_norm_sq(const PhysicalVectorField& u) {
    const auto N = u.lattice().size();
    PhysicalScalarField r(u.lattice());
    for (std::int64_t i = 0; i < N; ++i)
        r.data()[i] = u.at(0, i) * u.at(0, i) + u.at(1, i) * u.at(1, i) +
                      u.at(2, i) * u.at(2, i);
    return r;
}

/// Pointwise dissipation intensity |grad u|^2 = sum_ij (d_i u_j)^2.
inline PhysicalScalarField dissipation_intensity(const SpectralVectorField& u) {
    const auto N = u.lattice().size();
    PhysicalScalarField r(u.lattice());
    for (int axis = 0; axis < 3; ++axis) {
        const PhysicalVectorField d = inverse_transform(partial_derivative(u, axis));
        for (int c = 0; c < 3; ++c)
            for (std::int64_t i = 0; i < N; ++i) r.data()[i] += d.at(c, i) * d.at(c, i);
    }
    return r;
}

/// Pointwise vorticity magnitude |curl u|.
inline PhysicalScalarField vorticity_intensity(const SpectralVectorField& u) {
    const PhysicalVectorField w = inverse_transform(curl(u));
    PhysicalScalarField r = pointwise_norm_sq(w);
    for (double& v : r.data()) v = std::sqrt(v);
    return r;
}

}  // namespace spinflow
