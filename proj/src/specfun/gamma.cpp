#include "fracdiff/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fracdiff/error.hpp"

namespace fracdiff::specfun {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfLog2Pi = 0.91893853320467274178032973640562;

// Lanczos approximation, g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

template <typename T>
T lanczos_log_gamma(T z) {
  // valid for Re z >= 1/2
  z -= 1.0;
  T x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    x += kLanczos[i] / (z + static_cast<double>(i));
  }
  const T t = z + kLanczosG + 0.5;
  return kHalfLog2Pi + (z + 0.5) * std::log(t) - t + std::log(x);
}

// log(sin(pi z)) without overflow for large |Im z|. The real part of z is
// reduced by the nearest integer first, which keeps sin exact in phase.
cplx log_sin_pi(cplx z) {
  const double n = std::round(z.real());
  const cplx w(z.real() - n, z.imag());
  const bool odd = std::fmod(std::abs(n), 2.0) == 1.0;
  cplx result;
  if (std::abs(w.imag()) < 1.0) {
    result = std::log(std::sin(kPi * w));
  } else if (w.imag() > 0.0) {
    // sin(pi w) = e^{-i pi w} (e^{2 i pi w} - 1) / (2i)
    const cplx i(0.0, 1.0);
    result = -i * kPi * w + std::log((std::exp(2.0 * i * kPi * w) - 1.0) / (2.0 * i));
  } else {
    result = std::conj(log_sin_pi(std::conj(w)));
  }
  if (odd) result += cplx(0.0, kPi);
  return result;
}

[[noreturn]] void throw_pole(double x) {
  std::ostringstream os;
  os.precision(17);
  os << "gamma: pole at nonpositive integer " << x;
  throw PoleError(os.str());
}

}  // namespace

bool is_gamma_pole(double x, double tol) {
  if (x > 0.5) return false;
  return std::abs(x - std::round(x)) <= tol;
}

cplx log_gamma(cplx z) {
  if (std::abs(z.imag()) <= 1e-14 && is_gamma_pole(z.real())) throw_pole(z.real());
  if (z.real() >= 0.5) return lanczos_log_gamma(z);
  return std::log(kPi) - log_sin_pi(z) - lanczos_log_gamma(1.0 - z);
}

cplx gamma(cplx z) { return std::exp(log_gamma(z)); }

std::pair<double, int> log_abs_gamma(double x) {
  if (is_gamma_pole(x)) throw_pole(x);
  if (x >= 0.5) return {lanczos_log_gamma(x), 1};
  const double n = std::round(x);
  const double s = std::sin(kPi * (x - n));
  const bool odd = std::fmod(std::abs(n), 2.0) == 1.0;
  const double sin_pix = odd ? -s : s;
  const double log_abs = std::log(kPi) - std::log(std::abs(sin_pix)) - lanczos_log_gamma(1.0 - x);
  return {log_abs, sin_pix > 0.0 ? 1 : -1};
}

std::pair<double, int> log_abs_gamma_split(double n, double delta) {
  const double x = n + delta;
  if (x >= 0.5) return {lanczos_log_gamma(x), 1};
  if (delta == 0.0) throw_pole(n);
  const bool odd = std::fmod(std::abs(n), 2.0) == 1.0;
  const double s = std::sin(kPi * delta);
  const double sin_pix = odd ? -s : s;
  const double log_abs =
      std::log(kPi) - std::log(std::abs(sin_pix)) - lanczos_log_gamma((1.0 - n) - delta);
  return {log_abs, sin_pix > 0.0 ? 1 : -1};
}

double rgamma(double x) {
  if (is_gamma_pole(x)) return 0.0;
  const auto [log_abs, sign] = log_abs_gamma(x);
  return sign * std::exp(-log_abs);
}

}  // namespace fracdiff::specfun
