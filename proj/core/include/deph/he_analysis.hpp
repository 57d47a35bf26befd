#pragma once

// Hamiltonian-ensemble analysis of the trapped-ion coherence phi_{01,11}(t).
//
// The coherence decomposes as sum_k w_k e^{-i w_k t} + int chi(w) e^{-i w t} dw
// where the continuous part chi(w) = sqrt(3) / (pi w (w - 2)(w + 2)) carries
// the quasi-probability negativity.

#include <limits>
#include <span>
#include <vector>

#include "deph/qmat.hpp"

namespace deph::he {

struct DeltaTerm {
  double omega = 0.0;
  double weight = 0.0;
};

struct QuasiDistribution {
  std::vector<DeltaTerm> delta_terms;
  double alpha = 1.0;  // scale applied to chi

  double delta_weight_sum() const;
};

struct FitSample {
  double t = 0.0;
  double im_phi = 0.0;
};

struct FitResult {
  double alpha = 0.0;
  double residual_sum_of_squares = 0.0;
  std::size_t samples = 0;
};

struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
};

/// cos^2 t - sin^2 t / 2 + i (sqrt(3)/2) sin^2 t sgn(t).
Complex phi_0111_analytic(double t);

/// Throws PoleAt for omega in {0, 2, -2}.
double chi(double omega);

QuasiDistribution quasi_distribution_components();

/// Weighted least squares of im_phi against (sqrt(3)/2) sin^2 t, no
/// intercept. Throws DegenerateFit when every regressor vanishes.
FitResult fit_alpha(std::span<const FitSample> samples);

/// Open intervals where alpha * chi(omega) < 0, in increasing order.
std::vector<Interval> negativity_regions(double alpha);

/// Fourier-series coefficients c_n, n = -H..H (index n + H), of N uniformly
/// spaced samples f(kT/N), k = 0..N-1, with f(t) = sum_n c_n e^{2 pi i n t / T}.
/// Throws InsufficientSamples when N < 2H + 1.
std::vector<Complex> fourier_coefficients(std::span<const Complex> samples, int n_harmonics);

}  // namespace deph::he
