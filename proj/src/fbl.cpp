#include "pld/fbl.hpp"

#include <cmath>
#include <stdexcept>

namespace pld {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }
}  // namespace

ChannelParams::ChannelParams(double gamma_linear) : gamma_(gamma_linear) {
  if (!(gamma_linear > 0.0) || !std::isfinite(gamma_linear)) {
    throw std::invalid_argument("ChannelParams: SNR must be positive and finite");
  }
  capacity_ = std::log2(1.0 + gamma_linear);
  const double g1 = 1.0 + gamma_linear;
  dispersion_ = 1.0 - 1.0 / (g1 * g1);
}

ChannelParams ChannelParams::from_db(double snr_db) {
  return ChannelParams(std::pow(10.0, snr_db / 10.0));
}

double q_function(double x) { return 0.5 * std::erfc(x * kInvSqrt2); }

double q_inverse(double p) {
  if (!(p > 0.0) || !(p < 1.0)) {
    throw std::domain_error("q_inverse: argument must lie in (0,1)");
  }
  if (p == 0.5) return 0.0;
  // Symmetry: solve on p < 0.5 where the root is positive.
  if (p > 0.5) return -q_inverse(1.0 - p);

  // Bracket [lo, hi] with Q(lo) >= p >= Q(hi). Q underflows to 0 well
  // before 45, so the initial bracket always holds for representable p.
  double lo = 0.0;
  double hi = 45.0;
  double x = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double q = q_function(x);
    if (q > p) {
      lo = x;
    } else if (q < p) {
      hi = x;
    } else {
      return x;
    }
    // Newton step; dQ/dx = -pdf(x).
    const double pdf = normal_pdf(x);
    double next = x;
    if (pdf > 0.0) next = x + (q - p) / pdf;
    if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);  // bisect
    if (std::fabs(next - x) <= 1e-15 * (1.0 + std::fabs(x))) {
      return next;
    }
    x = next;
  }
  return x;
}

double packet_error_probability(double blocklength, int payload_bits,
                                const ChannelParams& ch) {
  if (!(blocklength > 0.0)) {
    throw std::invalid_argument("packet_error_probability: blocklength must be positive");
  }
  if (payload_bits <= 0) {
    throw std::invalid_argument("packet_error_probability: payload must be positive");
  }
  const double w = std::sqrt(blocklength / ch.dispersion()) *
                   (ch.capacity() - payload_bits / blocklength) * kLn2;
  return q_function(w);
}

double error_probability(const PacketSpec& spec, const ChannelParams& ch) {
  return packet_error_probability(static_cast<double>(spec.blocklength),
                                  spec.payload_bits, ch);
}

double blocklength_for(double epsilon, int payload_bits,
                       const ChannelParams& ch) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
    throw std::domain_error("blocklength_for: epsilon must lie in (0,1)");
  }
  if (payload_bits <= 0) {
    throw std::invalid_argument("blocklength_for: payload must be positive");
  }
  // Positive root of C*n - log2(e)*Qinv(eps)*sqrt(V*n) - d = 0 in sqrt(n).
  const double a = kLog2E * q_inverse(epsilon);
  const double c2 = 2.0 * ch.capacity();
  const double root = a * std::sqrt(ch.dispersion()) / c2 +
                      std::sqrt(a * a * ch.dispersion() +
                                4.0 * payload_bits * ch.capacity()) /
                          c2;
  return root * root;
}

int ceil_blocklength(double x) {
  const double tol = 1e-9 * (std::fabs(x) > 1.0 ? std::fabs(x) : 1.0);
  return static_cast<int>(std::ceil(x - tol));
}

int floor_blocklength(double x) {
  const double tol = 1e-9 * (std::fabs(x) > 1.0 ? std::fabs(x) : 1.0);
  return static_cast<int>(std::floor(x + tol));
}

}  // namespace pld
