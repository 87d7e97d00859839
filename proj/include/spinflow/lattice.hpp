#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

namespace spinflow {

using Vec3 = std::array<double, 3>;
using Int3 = std::array<int, 3>;

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Periodic grid descriptor: points per axis and box side lengths.
///
/// Integer wavenumbers run over k_j in {-n_j/2, ..., n_j/2 - 1}, stored in
/// FFT order (m_j = k_j mod n_j).  Physical wavevectors are xi_j = 2*pi*k_j/l_j.
class Lattice {
  public:
    Lattice(Int3 n, Vec3 l = {two_pi, two_pi, two_pi}) : n_(n), l_(l) {
        for (int a = 0; a < 3; ++a) {
            if (n_[a] < 4 || n_[a] % 2 != 0)
                throw std::invalid_argument("Lattice: each n must be even and >= 4");
            if (!(l_[a] > 0.0))
                throw std::invalid_argument("Lattice: box lengths must be positive");
        }
    }

    const Int3& n() const { return n_; }
    const Vec3& l() const { return l_; }

    std::int64_t size() const {
        return std::int64_t(n_[0]) * n_[1] * n_[2];
    }

    double volume() const { return l_[0] * l_[1] * l_[2]; }
    double cell_volume() const { return volume() / double(size()); }

    /// Grid spacing along axis a.
    double h(int a) const { return l_[a] / double(n_[a]); }

    /// Physical coordinate of grid site (ix, iy, iz).
    Vec3 site(int ix, int iy, int iz) const {
        return {ix * h(0), iy * h(1), iz * h(2)};
    }

    /// Signed integer wavenumber for storage index m along axis a.
    int k_of(int m, int a) const {
        return m < n_[a] / 2 ? m : m - n_[a];
    }

    /// Storage index of signed wavenumber k along axis a.
    int m_of(int k, int a) const {
        return k >= 0 ? k : k + n_[a];
    }

    Int3 kvec(int mx, int my, int mz) const {
        return {k_of(mx, 0), k_of(my, 1), k_of(mz, 2)};
    }

    /// Physical wavevector at storage index (mx, my, mz).
    Vec3 wavevector(int mx, int my, int mz) const {
        return {two_pi * k_of(mx, 0) / l_[0],
                two_pi * k_of(my, 1) / l_[1],
                two_pi * k_of(mz, 2) / l_[2]};
    }

    bool is_nyquist(int mx, int my, int mz) const {
        return k_of(mx, 0) == -n_[0] / 2 || k_of(my, 1) == -n_[1] / 2 ||
               k_of(mz, 2) == -n_[2] / 2;
    }

    /// Largest integer wavenumber kept by the sharp 2/3 dealiasing rule.
    int dealias_limit(int a) const { return n_[a] / 3; }

    /// Flat index of one scalar value; x runs fastest, then y, then z.
    std::int64_t flat(int ix, int iy, int iz) const {
        return (std::int64_t(iz) * n_[1] + iy) * n_[0] + ix;
    }

    /// Storage index triple of the Hermitian partner mode (-k mod n).
    Int3 conj_index(int mx, int my, int mz) const {
        return {mx == 0 ? 0 : n_[0] - mx,
                my == 0 ? 0 : n_[1] - my,
                mz == 0 ? 0 : n_[2] - mz};
    }

    bool operator==(const Lattice& o) const { return n_ == o.n_ && l_ == o.l_; }
    bool operator!=(const Lattice& o) const { return !(*this == o); }

  private:
    Int3 n_;
    Vec3 l_;
};

inline double norm3(const Vec3& v) {
    return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

inline double dot3(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline Vec3 cross3(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

}  // namespace spinflow
