#pragma once

#include <vector>

#include "gkdv/core/sampled.hpp"

namespace gkdv {

// Discrete Fourier data on the angular wavenumber lattice xi_j = pi*j/L,
// j = -n/2 .. n/2-1, for a periodic box of half-width L = n*dx/2.
//
// Convention: phi_hat(xi) = (1/2pi) Integral e^{-i x xi} phi(x) dx, so that
// phi(x) = Integral e^{i x xi} phi_hat(xi) dxi. Discretely,
//   coefficients[m] = (dx/2pi) * sum_i e^{-i x_i xi_j} values[i],  j = m - n/2,
//   values[i]      = dxi      * sum_m e^{+i x_i xi_j} coefficients[m].
struct SpectralField {
  Grid1D base_grid;
  std::vector<double> wavenumbers;  // ascending, symmetric about 0
  std::vector<cplx> coefficients;

  int size() const { return static_cast<int>(coefficients.size()); }
  double dxi() const { return wavenumbers.size() > 1 ? wavenumbers[1] - wavenumbers[0] : 0.0; }
};

// Radix-2 FFT workspace: twiddles and bit-reversal table for a fixed size.
// Immutable after construction; share freely across threads.
class FftPlan {
 public:
  explicit FftPlan(int n);
  int size() const { return n_; }

  // In-place DFT of length n_. sign = -1: sum f_i e^{-2pi i ik/n} (forward);
  // sign = +1: sum F_k e^{+2pi i ik/n} (no 1/n factor either way).
  void execute(cplx* data, int sign) const;

  static bool is_pow2(int n) { return n >= 2 && (n & (n - 1)) == 0; }

 private:
  int n_;
  std::vector<int> bitrev_;
  std::vector<cplx> tw_;  // e^{-2pi i k/n}, k = 0..n/2-1
};

SpectralField forward_transform(const SampledFunction& f);
SampledFunction inverse_transform(const SpectralField& s, DomainTag tag = DomainTag::space);

// Same transforms through a caller-held plan (for batched use).
SpectralField forward_transform(const SampledFunction& f, const FftPlan& plan);

// Spectrum of raw sample rows, in wavenumber-ascending order. In-place over
// a row of length plan.size(); used by the field-level batched routines.
void row_to_spectrum(cplx* row, const FftPlan& plan, double dx);
void spectrum_to_row(cplx* row, const FftPlan& plan, double dx);

// Wavenumber lattice for a periodic grid, ascending.
std::vector<double> wavenumber_lattice(const Grid1D& grid);

// Plancherel sums: sum |values|^2 dx and 2pi sum |coeffs|^2 dxi.
double l2_norm_physical(const SampledFunction& f);
double l2_norm_spectral(const SpectralField& s);

namespace reference {
// O(n^2) DFT pair with the same convention, valid for any n >= 2.
// Kept as the slow cross-check for the radix-2 path.
SpectralField dft(const SampledFunction& f);
SampledFunction idft(const SpectralField& s, DomainTag tag = DomainTag::space);
}  // namespace reference

}  // namespace gkdv
