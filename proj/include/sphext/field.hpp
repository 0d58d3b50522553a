#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace sphext {

/// Real spherical-harmonic coefficients of a zero-mean scalar on the unit
/// sphere, triangularly truncated at degree `L`. Index convention:
/// 1 <= l <= L, -l <= m <= l; m > 0 are cos(m*lon) modes, m < 0 sin(|m|*lon)
/// modes, m = 0 zonal. The l = 0 coefficient is structurally absent, so
/// total circulation vanishes by construction.
class SpectralField {
 public:
  SpectralField() = default;

  explicit SpectralField(int truncation)
      : trunc_(truncation), a_(coeff_count(truncation), 0.0) {
    if (truncation < 1) throw std::invalid_argument("SpectralField: truncation must be >= 1");
  }

  int truncation() const { return trunc_; }
  std::size_t size() const { return a_.size(); }

  static std::size_t coeff_count(int truncation) {
    return static_cast<std::size_t>(truncation) * (truncation + 2);
  }

  /// Flat index of (l, m); degrees are packed consecutively.
  static std::size_t index(int l, int m) {
    return static_cast<std::size_t>(l) * l - 1 + (m + l);
  }

  double operator()(int l, int m) const { return a_[check(l, m)]; }
  double& operator()(int l, int m) { return a_[check(l, m)]; }

  std::span<const double> coeffs() const { return a_; }
  std::span<double> coeffs() { return a_; }

  /// Squared L2 norm of the field (Parseval).
  double norm2() const {
    double s = 0.0;
    for (double v : a_) s += v * v;
    return s;
  }

  SpectralField& operator+=(const SpectralField& o) {
    require_same(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  SpectralField& operator-=(const SpectralField& o) {
    require_same(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }
  SpectralField& operator*=(double s) {
    for (double& v : a_) v *= s;
    return *this;
  }

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

  /// this += s * o
  void axpy(double s, const SpectralField& o) {
    require_same(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += s * o.a_[i];
  }

  bool finite() const {
    for (double v : a_) {
      if (!std::isfinite(v)) return false;
    }
    return true;
  }

 private:
  std::size_t check(int l, int m) const {
    if (l < 1 || l > trunc_ || m < -l || m > l)
      throw std::invalid_argument("SpectralField: index (l,m) out of range");
    return index(l, m);
  }
  void require_same(const SpectralField& o) const {
    if (o.trunc_ != trunc_) throw std::invalid_argument("SpectralField: truncation mismatch");
  }

  int trunc_ = 0;
  std::vector<double> a_;
};

inline double dot(const SpectralField& a, const SpectralField& b) {
  if (a.truncation() != b.truncation())
    throw std::invalid_argument("dot: truncation mismatch");
  double s = 0.0;
  auto ca = a.coeffs(), cb = b.coeffs();
  for (std::size_t i = 0; i < ca.size(); ++i) s += ca[i] * cb[i];
  return s;
}

/// Unit coefficient vector e_lm scaled by `amp`.
inline SpectralField basis_vector(int truncation, int l, int m, double amp = 1.0) {
  SpectralField w(truncation);
  w(l, m) = amp;
  return w;
}

/// Copy of `w` re-truncated to `truncation` (coefficients above it dropped,
/// missing ones zero).
inline SpectralField retruncate(const SpectralField& w, int truncation) {
  SpectralField out(truncation);
  const int lmax = std::min(truncation, w.truncation());
  for (int l = 1; l <= lmax; ++l)
    for (int m = -l; m <= l; ++m) out(l, m) = w(l, m);
  return out;
}

/// Values on the quadrature grid, row-major [latitude][longitude].
struct GridField {
  int n_lat = 0;
  int n_lon = 0;
  std::vector<double> values;

  GridField() = default;
  GridField(int nlat, int nlon)
      : n_lat(nlat), n_lon(nlon), values(static_cast<std::size_t>(nlat) * nlon, 0.0) {}

  double at(int j, int k) const { return values[static_cast<std::size_t>(j) * n_lon + k]; }
  double& at(int j, int k) { return values[static_cast<std::size_t>(j) * n_lon + k]; }

  bool same_shape(const GridField& o) const { return n_lat == o.n_lat && n_lon == o.n_lon; }
};

/// alpha_lm -> -l(l+1) alpha_lm  (Laplace-Beltrami, unit sphere).
SpectralField apply_laplacian(const SpectralField& w);

/// alpha_lm -> -alpha_lm / [l(l+1)]  (inverse Laplacian; vorticity to
/// stream function).
SpectralField apply_green(const SpectralField& w);

}  // namespace sphext
