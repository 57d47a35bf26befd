#include "deph/he_analysis.hpp"

#include <cmath>
#include <numbers>

#include "deph/errors.hpp"

namespace deph::he {

namespace {
constexpr double kSqrt3 = std::numbers::sqrt3;

double regressor(double t) {
  const double s = std::sin(t);
  return 0.5 * kSqrt3 * s * s;
}
}  // namespace

double QuasiDistribution::delta_weight_sum() const {
  double total = 0.0;
  for (const DeltaTerm& d : delta_terms) total += d.weight;
  return total;
}

Complex phi_0111_analytic(double t) {
  const double c = std::cos(t);
  const double s = std::sin(t);
  const double sgn = t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 0.0);
  return {c * c - 0.5 * s * s, 0.5 * kSqrt3 * s * s * sgn};
}

double chi(double omega) {
  if (omega == 0.0 || omega == 2.0 || omega == -2.0) throw PoleAt(omega);
  return kSqrt3 / (std::numbers::pi * omega * (omega - 2.0) * (omega + 2.0));
}

QuasiDistribution quasi_distribution_components() {
  // Re phi = 1/4 + (3/4) cos 2t puts 3/8 on each of w = +-2; chi is odd and
  // contributes only to the imaginary part.
  return {{{0.0, 0.25}, {2.0, 0.375}, {-2.0, 0.375}}, 1.0};
}

FitResult fit_alpha(std::span<const FitSample> samples) {
  double wy = 0.0;
  double ww = 0.0;
  for (const FitSample& s : samples) {
    const double w = regressor(s.t);
    wy += w * s.im_phi;
    ww += w * w;
  }
  if (!(ww > 0.0)) throw DegenerateFit("every sample has sin(t) = 0; alpha is undetermined");
  FitResult out;
  out.alpha = wy / ww;
  out.samples = samples.size();
  for (const FitSample& s : samples) {
    const double r = s.im_phi - out.alpha * regressor(s.t);
    out.residual_sum_of_squares += r * r;
  }
  return out;
}

std::vector<Interval> negativity_regions(double alpha) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (alpha > 0.0) return {{-inf, -2.0}, {0.0, 2.0}};
  if (alpha < 0.0) return {{-2.0, 0.0}, {2.0, inf}};
  return {};
}

std::vector<Complex> fourier_coefficients(std::span<const Complex> samples, int n_harmonics) {
  const std::size_t n = samples.size();
  const std::size_t need = 2 * static_cast<std::size_t>(std::max(n_harmonics, 0)) + 1;
  if (n < need) throw InsufficientSamples(n, need);
  std::vector<Complex> coeffs;
  coeffs.reserve(need);
  for (int h = -n_harmonics; h <= n_harmonics; ++h) {
    Complex acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double angle = -2.0 * std::numbers::pi * h * static_cast<double>(k) / static_cast<double>(n);
      acc += samples[k] * std::polar(1.0, angle);
    }
    coeffs.push_back(acc / static_cast<double>(n));
  }
  return coeffs;
}

}  // namespace deph::he
