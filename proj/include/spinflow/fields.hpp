#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "spinflow/lattice.hpp"

namespace spinflow {

using Complex = std::complex<double>;

/// 3-component real field sampled on the lattice.
/// Storage is component-major with x fastest: data[c][iz][iy][ix].
class PhysicalVectorField {
  public:
    explicit PhysicalVectorField(const Lattice& lat)
        : lattice_(lat), data_(3 * lat.size(), 0.0) {}

    const Lattice& lattice() const { return lattice_; }

    double& at(int c, int ix, int iy, int iz) {
        return data_[c * lattice_.size() + lattice_.flat(ix, iy, iz)];
    }
    double at(int c, int ix, int iy, int iz) const {
        return data_[c * lattice_.size() + lattice_.flat(ix, iy, iz)];
    }

    double& at(int c, std::int64_t flat) { return data_[c * lattice_.size() + flat]; }
    double at(int c, std::int64_t flat) const { return data_[c * lattice_.size() + flat]; }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

    const double* component(int c) const { return data_.data() + c * lattice_.size(); }
    double* component(int c) { return data_.data() + c * lattice_.size(); }

    bool all_finite() const {
        for (double v : data_)
            if (!std::isfinite(v)) return false;
        return true;
    }

    /// Largest pointwise Euclidean magnitude |u(x)|.  NaN anywhere poisons
    /// the result, so downstream finiteness checks see it.
    double max_magnitude() const {
        const auto N = lattice_.size();
        double m = 0.0;
        for (std::int64_t i = 0; i < N; ++i) {
            const double s = data_[i] * data_[i] + data_[N + i] * data_[N + i] +
                             data_[2 * N + i] * data_[2 * N + i];
            if (s > m || std::isnan(s)) m = s;
        }
        return std::sqrt(m);
    }

  private:
    Lattice lattice_;
    std::vector<double> data_;
};

/// Real scalar field on the lattice (stream functions, cutoffs, pressure).
class PhysicalScalarField {
  public:
    explicit PhysicalScalarField(const Lattice& lat)
        : lattice_(lat), data_(lat.size(), 0.0) {}

    const Lattice& lattice() const { return lattice_; }

    double& at(int ix, int iy, int iz) { return data_[lattice_.flat(ix, iy, iz)]; }
    double at(int ix, int iy, int iz) const { return data_[lattice_.flat(ix, iy, iz)]; }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

  private:
    Lattice lattice_;
    std::vector<double> data_;
};

/// 3-component complex Fourier coefficients over the full mode box.
/// A field that came from real samples satisfies coeff(-xi) = conj(coeff(xi)).
class SpectralVectorField {
  public:
    explicit SpectralVectorField(const Lattice& lat)
        : lattice_(lat), coeff_(3 * lat.size(), Complex{0.0, 0.0}) {}

    const Lattice& lattice() const { return lattice_; }

    Complex& at(int c, int mx, int my, int mz) {
        return coeff_[c * lattice_.size() + lattice_.flat(mx, my, mz)];
    }
    Complex at(int c, int mx, int my, int mz) const {
        return coeff_[c * lattice_.size() + lattice_.flat(mx, my, mz)];
    }

    Complex& at(int c, std::int64_t flat) { return coeff_[c * lattice_.size() + flat]; }
    Complex at(int c, std::int64_t flat) const { return coeff_[c * lattice_.size() + flat]; }

    std::vector<Complex>& coeff() { return coeff_; }
    const std::vector<Complex>& coeff() const { return coeff_; }

    const Complex* component(int c) const { return coeff_.data() + c * lattice_.size(); }
    Complex* component(int c) { return coeff_.data() + c * lattice_.size(); }

    /// NaN anywhere poisons the result (plain max would skip it).
    double max_abs() const {
        double m = 0.0;
        for (const Complex& z : coeff_) {
            const double a = std::abs(z);
            if (a > m || std::isnan(a)) m = a;
        }
        return m;
    }

    /// L2 norm squared, Parseval form: volume * sum |coeff|^2.
    double l2_norm_sq() const {
        double s = 0.0;
        for (const Complex& z : coeff_) s += std::norm(z);
        return lattice_.volume() * s;
    }

  private:
    Lattice lattice_;
    std::vector<Complex> coeff_;
};

/// Ordered pair of spin-definite components (u+ = Q+u, u- = Q-u).
struct SpinPair {
    SpectralVectorField plus;
    SpectralVectorField minus;
};

/// Helical spectral weights theta_+/theta_- per mode, in the unit basis
/// delta_(+/-)(xi).  theta(0) = 0 by convention (the mean carries no spin).
struct HelicalCoefficients {
    Lattice lattice;
    std::vector<Complex> theta_plus;   // one scalar per mode, x fastest
    std::vector<Complex> theta_minus;

    explicit HelicalCoefficients(const Lattice& lat)
        : lattice(lat), theta_plus(lat.size()), theta_minus(lat.size()) {}
};

namespace fieldops {

inline SpectralVectorField add(const SpectralVectorField& a, const SpectralVectorField& b) {
    SpectralVectorField r = a;
    for (std::size_t i = 0; i < r.coeff().size(); ++i) r.coeff()[i] += b.coeff()[i];
    return r;
}

inline SpectralVectorField sub(const SpectralVectorField& a, const SpectralVectorField& b) {
    SpectralVectorField r = a;
    for (std::size_t i = 0; i < r.coeff().size(); ++i) r.coeff()[i] -= b.coeff()[i];
    return r;
}

inline SpectralVectorField scale(const SpectralVectorField& a, double s) {
    SpectralVectorField r = a;
    for (auto& z : r.coeff()) z *= s;
    return r;
}

inline void axpy(SpectralVectorField& y, double a, const SpectralVectorField& x) {
    for (std::size_t i = 0; i < y.coeff().size(); ++i) y.coeff()[i] += a * x.coeff()[i];
}

inline double max_abs_diff(const SpectralVectorField& a, const SpectralVectorField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.coeff().size(); ++i)
        m = std::max(m, std::abs(a.coeff()[i] - b.coeff()[i]));
    return m;
}

inline double max_abs_diff(const PhysicalVectorField& a, const PhysicalVectorField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i)
        m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

/// Hermitian L2 inner product of two spectral fields, volume-weighted.
inline Complex inner(const SpectralVectorField& a, const SpectralVectorField& b) {
    Complex s{0.0, 0.0};
    for (std::size_t i = 0; i < a.coeff().size(); ++i)
        s += a.coeff()[i] * std::conj(b.coeff()[i]);
    return a.lattice().volume() * s;
}

/// Grid quadrature of the pointwise dot product of two physical fields.
inline double inner(const PhysicalVectorField& a, const PhysicalVectorField& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) s += a.data()[i] * b.data()[i];
    return a.lattice().cell_volume() * s;
}

/// Reflection x3 -> -x3 together with the sign flip of the third component.
/// Exact on the lattice: grid index iz maps to (n3 - iz) mod n3.
inline PhysicalVectorField mirror(const PhysicalVectorField& u) {
    const Lattice& lat = u.lattice();
    const auto& n = lat.n();
    PhysicalVectorField v(lat);
    for (int c = 0; c < 3; ++c) {
        const double sign = c == 2 ? -1.0 : 1.0;
        for (int iz = 0; iz < n[2]; ++iz) {
            const int jz = iz == 0 ? 0 : n[2] - iz;
            for (int iy = 0; iy < n[1]; ++iy)
                for (int ix = 0; ix < n[0]; ++ix)
                    v.at(c, ix, iy, iz) = sign * u.at(c, ix, iy, jz);
        }
    }
    return v;
}

/// Spectral form of the same reflection: coeff index mz maps to (n3 - mz) mod n3.
inline SpectralVectorField mirror(const SpectralVectorField& u) {
    const Lattice& lat = u.lattice();
    const auto& n = lat.n();
    SpectralVectorField v(lat);
    for (int c = 0; c < 3; ++c) {
        const double sign = c == 2 ? -1.0 : 1.0;
        for (int mz = 0; mz < n[2]; ++mz) {
            const int jz = mz == 0 ? 0 : n[2] - mz;
            for (int my = 0; my < n[1]; ++my)
                for (int mx = 0; mx < n[0]; ++mx)
                    v.at(c, mx, my, mz) = sign * u.at(c, mx, my, jz);
        }
    }
    return v;
}

}  // namespace fieldops

}  // namespace spinflow
