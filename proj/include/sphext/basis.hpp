#pragma once

#include <span>
#include <vector>

#include "sphext/field.hpp"

namespace sphext {

/// Precomputed spherical-harmonic machinery for one truncation L:
/// Gauss-Legendre nodes/weights in mu = cos(colatitude), equispaced
/// longitudes, and normalized associated-Legendre values at the nodes.
///
/// Grid sizes follow the quadratic-dealiasing rule: n_lat = ceil((3L+1)/2)
/// Gauss nodes and n_lon = 3L+2 rounded up to even, so triad products of
/// degree <= L fields are integrated exactly. Tables are immutable after
/// construction and safe to share across threads.
class BasisTables {
 public:
  explicit BasisTables(int truncation);

  int truncation() const { return trunc_; }
  int n_lat() const { return n_lat_; }
  int n_lon() const { return n_lon_; }
  double delta_lon() const { return dlon_; }

  std::span<const double> gauss_nodes() const { return nodes_; }
  std::span<const double> gauss_weights() const { return weights_; }

  /// P̄_l^m(mu_j), normalized so that the full real harmonic has unit L2
  /// norm on the sphere. Tabulated up to degree L+1 (one extra degree for
  /// the mu-derivative recurrence).
  double plm(int j, int l, int m) const { return plm_[row(j) + off(m) + (l - m)]; }

  /// (1 - mu^2) dP̄_l^m/dmu at mu_j, tabulated for l <= L.
  double dplm(int j, int l, int m) const { return dplm_[row(j) + off(m) + (l - m)]; }

  double cos_lon(int k, int m) const { return cos_[static_cast<std::size_t>(k) * (trunc_ + 1) + m]; }
  double sin_lon(int k, int m) const { return sin_[static_cast<std::size_t>(k) * (trunc_ + 1) + m]; }

  // Packed layout helpers used by the transform kernels: for node j the
  // Legendre row is m-major, degrees contiguous within each order.
  int table_degree() const { return lmax_tab_; }
  std::size_t row(int j) const { return static_cast<std::size_t>(j) * row_len_; }
  std::size_t off(int m) const { return offsets_[m]; }
  const double* plm_row(int j) const { return plm_.data() + row(j); }
  const double* dplm_row(int j) const { return dplm_.data() + row(j); }
  const double* cos_row(int k) const { return cos_.data() + static_cast<std::size_t>(k) * (trunc_ + 1); }
  const double* sin_row(int k) const { return sin_.data() + static_cast<std::size_t>(k) * (trunc_ + 1); }

 private:
  int trunc_;
  int lmax_tab_;
  int n_lat_;
  int n_lon_;
  double dlon_;
  std::size_t row_len_;
  std::vector<std::size_t> offsets_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<double> plm_;
  std::vector<double> dplm_;
  std::vector<double> cos_;
  std::vector<double> sin_;
};

BasisTables build_basis(int truncation);

/// Grid values of the truncated expansion. Requires w.truncation() <=
/// tables.truncation().
GridField synthesize(const SpectralField& w, const BasisTables& t);

/// Orthogonal projection of grid values onto degrees 1..L. Throws
/// circulation_error if the l = 0 projection exceeds 1e-10.
SpectralField analyze(const GridField& f, const BasisTables& t);

/// Same projection without the zero-circulation gate; the l = 0 content is
/// simply dropped. Used where the projection itself is the operation.
SpectralField project_grid(const GridField& f, const BasisTables& t);

/// Gauss-Legendre x trapezoid quadrature of the surface integral of f*g.
double inner_product(const GridField& f, const GridField& g, const BasisTables& t);

/// Grid values of the longitude derivative of the expansion.
GridField synthesize_lon_derivative(const SpectralField& w, const BasisTables& t);

/// Grid values of (1 - mu^2) d/dmu of the expansion.
GridField synthesize_mu_derivative(const SpectralField& w, const BasisTables& t);

/// Plain-loop reference kernels. Bitwise-identical to the parallel versions
/// for any thread count; kept for tests and the benchmark.
namespace serial {
GridField synthesize(const SpectralField& w, const BasisTables& t);
SpectralField analyze(const GridField& f, const BasisTables& t);
GridField synthesize_lon_derivative(const SpectralField& w, const BasisTables& t);
GridField synthesize_mu_derivative(const SpectralField& w, const BasisTables& t);
}  // namespace serial

}  // namespace sphext
