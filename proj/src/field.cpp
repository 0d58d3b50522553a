#include "sphext/field.hpp"

namespace sphext {

SpectralField apply_laplacian(const SpectralField& w) {
  SpectralField out(w.truncation());
  for (int l = 1; l <= w.truncation(); ++l) {
    const double ev = -static_cast<double>(l) * (l + 1);
    for (int m = -l; m <= l; ++m) out(l, m) = ev * w(l, m);
  }
  return out;
}

SpectralField apply_green(const SpectralField& w) {
  SpectralField out(w.truncation());
  for (int l = 1; l <= w.truncation(); ++l) {
    const double ev = -1.0 / (static_cast<double>(l) * (l + 1));
    for (int m = -l; m <= l; ++m) out(l, m) = ev * w(l, m);
  }
  return out;
}

}  // namespace sphext
