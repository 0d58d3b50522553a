#include "sphext/basis.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "sphext/errors.hpp"

namespace sphext {

namespace {

constexpr double k_pi = std::numbers::pi;
constexpr double k_sqrt2 = std::numbers::sqrt2;

// Gauss-Legendre nodes (ascending in mu) and weights on [-1, 1] by Newton
// iteration on P_n. Converges to machine precision in a handful of steps.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(k_pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    const double wi = 2.0 / ((1.0 - z * z) * pp * pp);
    w[i] = wi;
    w[n - 1 - i] = wi;
  }
}

double eps_lm(int l, int m) {
  return std::sqrt((static_cast<double>(l) * l - static_cast<double>(m) * m) /
                   (4.0 * l * l - 1.0));
}

}  // namespace

BasisTables::BasisTables(int truncation) : trunc_(truncation) {
  if (truncation < 1) throw std::invalid_argument("build_basis: truncation must be >= 1");

  lmax_tab_ = trunc_ + 1;
  n_lat_ = (3 * trunc_ + 1 + 1) / 2;  // ceil((3L+1)/2)
  n_lon_ = 3 * trunc_ + 2;
  if (n_lon_ % 2 != 0) ++n_lon_;
  dlon_ = 2.0 * k_pi / n_lon_;

  gauss_legendre(n_lat_, nodes_, weights_);

  offsets_.assign(lmax_tab_ + 1, 0);
  for (int m = 1; m <= lmax_tab_; ++m)
    offsets_[m] = offsets_[m - 1] + (lmax_tab_ - (m - 1) + 1);
  row_len_ = offsets_[lmax_tab_] + 1;

  plm_.assign(static_cast<std::size_t>(n_lat_) * row_len_, 0.0);
  dplm_.assign(plm_.size(), 0.0);

  // Normalized associated Legendre values P̄_l^m(mu_j) via the stable
  // three-term recurrence, Condon-Shortley phase included. Normalization:
  // the full real harmonic built from P̄ has unit norm on the sphere, i.e.
  // int_{-1}^{1} P̄_l^m(mu)^2 dmu = 1/(2*pi).
  for (int j = 0; j < n_lat_; ++j) {
    const double mu = nodes_[j];
    const double sth = std::sqrt((1.0 - mu) * (1.0 + mu));
    double* p = plm_.data() + row(j);

    p[off(0) + 0] = 1.0 / std::sqrt(4.0 * k_pi);
    for (int m = 1; m <= lmax_tab_; ++m)
      p[off(m)] = -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * sth * p[off(m - 1)];
    for (int m = 0; m < lmax_tab_; ++m)
      p[off(m) + 1] = std::sqrt(2.0 * m + 3.0) * mu * p[off(m)];
    for (int m = 0; m <= lmax_tab_ - 2; ++m) {
      for (int l = m + 2; l <= lmax_tab_; ++l) {
        const double a = std::sqrt((4.0 * l * l - 1.0) /
                                   (static_cast<double>(l) * l - static_cast<double>(m) * m));
        const double b = a * std::sqrt((static_cast<double>(l - 1) * (l - 1) -
                                        static_cast<double>(m) * m) /
                                       (4.0 * (l - 1.0) * (l - 1.0) - 1.0));
        p[off(m) + (l - m)] = a * mu * p[off(m) + (l - 1 - m)] - b * p[off(m) + (l - 2 - m)];
      }
    }

    // (1 - mu^2) dP̄_l^m/dmu = (l+1) eps_l^m P̄_{l-1}^m - l eps_{l+1}^m P̄_{l+1}^m,
    // band-limited, tabulated for l <= L (degree L+1 values feed the second term).
    double* dp = dplm_.data() + row(j);
    for (int m = 0; m <= trunc_; ++m) {
      for (int l = std::max(m, 1); l <= trunc_; ++l) {
        double v = -l * eps_lm(l + 1, m) * p[off(m) + (l + 1 - m)];
        if (l - 1 >= m) v += (l + 1.0) * eps_lm(l, m) * p[off(m) + (l - 1 - m)];
        dp[off(m) + (l - m)] = v;
      }
    }
  }

  cos_.assign(static_cast<std::size_t>(n_lon_) * (trunc_ + 1), 0.0);
  sin_.assign(cos_.size(), 0.0);
  for (int k = 0; k < n_lon_; ++k) {
    const double lon = dlon_ * k;
    for (int m = 0; m <= trunc_; ++m) {
      cos_[static_cast<std::size_t>(k) * (trunc_ + 1) + m] = std::cos(m * lon);
      sin_[static_cast<std::size_t>(k) * (trunc_ + 1) + m] = std::sin(m * lon);
    }
  }
}

BasisTables build_basis(int truncation) { return BasisTables(truncation); }

namespace {

// m-major repack of the coefficients with the sqrt(2) sectoral factor
// folded in: ac[m*(lw+1)+l] multiplies cos(m lon), bc the sin(m lon) part.
void repack_coeffs(const SpectralField& w, std::vector<double>& ac, std::vector<double>& bc) {
  const int lw = w.truncation();
  ac.assign(static_cast<std::size_t>(lw + 1) * (lw + 1), 0.0);
  bc.assign(ac.size(), 0.0);
  for (int l = 1; l <= lw; ++l) {
    ac[0 * (lw + 1) + l] = w(l, 0);
    for (int m = 1; m <= l; ++m) {
      ac[static_cast<std::size_t>(m) * (lw + 1) + l] = k_sqrt2 * w(l, m);
      bc[static_cast<std::size_t>(m) * (lw + 1) + l] = k_sqrt2 * w(l, -m);
    }
  }
}

enum class SynthKind { Value, LonDeriv, MuDeriv };

template <SynthKind kind>
GridField synth_impl(const SpectralField& w, const BasisTables& t, bool parallel) {
  const int lw = w.truncation();
  if (lw > t.truncation())
    throw std::invalid_argument("synthesize: field truncation exceeds the basis tables");

  std::vector<double> ac, bc;
  repack_coeffs(w, ac, bc);

  const int nlat = t.n_lat(), nlon = t.n_lon();
  GridField out(nlat, nlon);
  std::vector<double> fa(static_cast<std::size_t>(nlat) * (lw + 1));
  std::vector<double> fb(fa.size());

#pragma omp parallel for schedule(static) if (parallel)
  for (int j = 0; j < nlat; ++j) {
    const double* tab = (kind == SynthKind::MuDeriv) ? t.dplm_row(j) : t.plm_row(j);
    double* A = fa.data() + static_cast<std::size_t>(j) * (lw + 1);
    double* B = fb.data() + static_cast<std::size_t>(j) * (lw + 1);
    for (int m = 0; m <= lw; ++m) {
      const double* pm = tab + t.off(m) - m;  // indexed by l
      const double* am = ac.data() + static_cast<std::size_t>(m) * (lw + 1);
      const double* bm = bc.data() + static_cast<std::size_t>(m) * (lw + 1);
      double sa = 0.0, sb = 0.0;
      for (int l = std::max(m, 1); l <= lw; ++l) {
        sa += am[l] * pm[l];
        sb += bm[l] * pm[l];
      }
      if (kind == SynthKind::LonDeriv) {
        A[m] = m * sb;
        B[m] = -m * sa;
      } else {
        A[m] = sa;
        B[m] = sb;
      }
    }
    double* rowv = out.values.data() + static_cast<std::size_t>(j) * nlon;
    for (int k = 0; k < nlon; ++k) {
      const double* cr = t.cos_row(k);
      const double* sr = t.sin_row(k);
      double v = 0.0;
      for (int m = 0; m <= lw; ++m) v += A[m] * cr[m] + B[m] * sr[m];
      rowv[k] = v;
    }
  }
  return out;
}

SpectralField analyze_impl(const GridField& f, const BasisTables& t, bool parallel,
                           bool gate_circulation) {
  const int L = t.truncation();
  if (f.n_lat != t.n_lat() || f.n_lon != t.n_lon())
    throw std::invalid_argument("analyze: grid shape does not match the basis tables");

  const int nlat = t.n_lat(), nlon = t.n_lon();
  const double dlon = t.delta_lon();
  const auto wq = t.gauss_weights();

  // Stage 1: per-latitude Fourier sums.
  std::vector<double> fc(static_cast<std::size_t>(nlat) * (L + 1), 0.0);
  std::vector<double> fs(fc.size(), 0.0);
#pragma omp parallel for schedule(static) if (parallel)
  for (int j = 0; j < nlat; ++j) {
    double* C = fc.data() + static_cast<std::size_t>(j) * (L + 1);
    double* S = fs.data() + static_cast<std::size_t>(j) * (L + 1);
    const double* rowv = f.values.data() + static_cast<std::size_t>(j) * nlon;
    for (int k = 0; k < nlon; ++k) {
      const double v = rowv[k];
      const double* cr = t.cos_row(k);
      const double* sr = t.sin_row(k);
      for (int m = 0; m <= L; ++m) {
        C[m] += v * cr[m];
        S[m] += v * sr[m];
      }
    }
    for (int m = 0; m <= L; ++m) {
      C[m] *= dlon;
      S[m] *= dlon;
    }
  }

  if (gate_circulation) {
    // Zero-circulation gate on the l = 0 projection.
    double mean_proj = 0.0;
    for (int j = 0; j < nlat; ++j)
      mean_proj += wq[j] * fc[static_cast<std::size_t>(j) * (L + 1)];
    mean_proj *= 1.0 / std::sqrt(4.0 * k_pi);
    if (std::abs(mean_proj) > 1e-10) {
      std::ostringstream msg;
      msg << "analyze: non-zero total circulation (l=0 projection " << mean_proj << ")";
      throw circulation_error(msg.str());
    }
  }

  // Stage 2: Legendre sums, one order per task.
  SpectralField out(L);
  double* a = out.coeffs().data();
#pragma omp parallel for schedule(static) if (parallel)
  for (int m = 0; m <= L; ++m) {
    const double norm = (m == 0) ? 1.0 : k_sqrt2;
    for (int j = 0; j < nlat; ++j) {
      const double* pm = t.plm_row(j) + t.off(m) - m;
      const double gc = norm * wq[j] * fc[static_cast<std::size_t>(j) * (L + 1) + m];
      const double gs = norm * wq[j] * fs[static_cast<std::size_t>(j) * (L + 1) + m];
      for (int l = std::max(m, 1); l <= L; ++l) {
        a[SpectralField::index(l, m)] += gc * pm[l];
        if (m > 0) a[SpectralField::index(l, -m)] += gs * pm[l];
      }
    }
  }
  return out;
}

}  // namespace

GridField synthesize(const SpectralField& w, const BasisTables& t) {
  return synth_impl<SynthKind::Value>(w, t, true);
}
GridField synthesize_lon_derivative(const SpectralField& w, const BasisTables& t) {
  return synth_impl<SynthKind::LonDeriv>(w, t, true);
}
GridField synthesize_mu_derivative(const SpectralField& w, const BasisTables& t) {
  return synth_impl<SynthKind::MuDeriv>(w, t, true);
}
SpectralField analyze(const GridField& f, const BasisTables& t) {
  return analyze_impl(f, t, true, true);
}
SpectralField project_grid(const GridField& f, const BasisTables& t) {
  return analyze_impl(f, t, true, false);
}

double inner_product(const GridField& f, const GridField& g, const BasisTables& t) {
  if (!f.same_shape(g) || f.n_lat != t.n_lat() || f.n_lon != t.n_lon())
    throw std::invalid_argument("inner_product: grid shapes do not match");
  const auto wq = t.gauss_weights();
  double total = 0.0;
  for (int j = 0; j < f.n_lat; ++j) {
    double row = 0.0;
    for (int k = 0; k < f.n_lon; ++k) row += f.at(j, k) * g.at(j, k);
    total += wq[j] * row;
  }
  return total * t.delta_lon();
}

// Naive reference transforms: direct evaluation of the defining sums, one
// basis function at a time. Used by tests and the benchmark as the
// obviously-correct baseline.
namespace serial {

namespace {

double harmonic_at(const BasisTables& t, int l, int m, int j, int k) {
  if (m == 0) return t.plm(j, l, 0);
  if (m > 0) return k_sqrt2 * t.plm(j, l, m) * t.cos_lon(k, m);
  return k_sqrt2 * t.plm(j, l, -m) * t.sin_lon(k, -m);
}

double harmonic_lon_deriv_at(const BasisTables& t, int l, int m, int j, int k) {
  if (m == 0) return 0.0;
  if (m > 0) return -m * k_sqrt2 * t.plm(j, l, m) * t.sin_lon(k, m);
  return -m * k_sqrt2 * t.plm(j, l, -m) * t.cos_lon(k, -m);
}

double harmonic_mu_deriv_at(const BasisTables& t, int l, int m, int j, int k) {
  if (m == 0) return t.dplm(j, l, 0);
  if (m > 0) return k_sqrt2 * t.dplm(j, l, m) * t.cos_lon(k, m);
  return k_sqrt2 * t.dplm(j, l, -m) * t.sin_lon(k, -m);
}

template <typename BasisFn>
GridField synth_naive(const SpectralField& w, const BasisTables& t, BasisFn basis) {
  if (w.truncation() > t.truncation())
    throw std::invalid_argument("synthesize: field truncation exceeds the basis tables");
  GridField out(t.n_lat(), t.n_lon());
  for (int j = 0; j < t.n_lat(); ++j) {
    for (int k = 0; k < t.n_lon(); ++k) {
      double v = 0.0;
      for (int l = 1; l <= w.truncation(); ++l)
        for (int m = -l; m <= l; ++m) v += w(l, m) * basis(t, l, m, j, k);
      out.at(j, k) = v;
    }
  }
  return out;
}

}  // namespace

GridField synthesize(const SpectralField& w, const BasisTables& t) {
  return synth_naive(w, t, harmonic_at);
}
GridField synthesize_lon_derivative(const SpectralField& w, const BasisTables& t) {
  return synth_naive(w, t, harmonic_lon_deriv_at);
}
GridField synthesize_mu_derivative(const SpectralField& w, const BasisTables& t) {
  return synth_naive(w, t, harmonic_mu_deriv_at);
}

SpectralField analyze(const GridField& f, const BasisTables& t) {
  if (f.n_lat != t.n_lat() || f.n_lon != t.n_lon())
    throw std::invalid_argument("analyze: grid shape does not match the basis tables");
  const int L = t.truncation();
  const auto wq = t.gauss_weights();
  SpectralField out(L);
  double mean_proj = 0.0;
  for (int j = 0; j < t.n_lat(); ++j)
    for (int k = 0; k < t.n_lon(); ++k)
      mean_proj += wq[j] * t.delta_lon() * f.at(j, k) * t.plm(j, 0, 0);
  if (std::abs(mean_proj) > 1e-10)
    throw circulation_error("analyze: non-zero total circulation");
  for (int l = 1; l <= L; ++l) {
    for (int m = -l; m <= l; ++m) {
      double s = 0.0;
      for (int j = 0; j < t.n_lat(); ++j)
        for (int k = 0; k < t.n_lon(); ++k)
          s += wq[j] * t.delta_lon() * f.at(j, k) * harmonic_at(t, l, m, j, k);
      out(l, m) = s;
    }
  }
  return out;
}

}  // namespace serial

}  // namespace sphext
