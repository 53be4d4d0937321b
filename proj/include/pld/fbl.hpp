#pragma once

namespace pld {

inline constexpr double kLn2 = 0.69314718055994530942;
inline constexpr double kLog2E = 1.44269504088896340736;

/// Per-receiver channel quantities derived from the linear SNR of an
/// AWGN channel: Shannon capacity C = log2(1 + gamma) in bits per channel
/// use and dispersion V = 1 - (1 + gamma)^-2.
class ChannelParams {
 public:
  explicit ChannelParams(double gamma_linear);

  /// Builds from an SNR given in dB (gamma = 10^(db/10)).
  static ChannelParams from_db(double snr_db);

  double gamma() const { return gamma_; }
  double capacity() const { return capacity_; }
  double dispersion() const { return dispersion_; }

 private:
  double gamma_;
  double capacity_;
  double dispersion_;
};

/// A packet of payload_bits information bits carried in blocklength
/// channel uses.
struct PacketSpec {
  int payload_bits;
  int blocklength;
};

/// Gaussian tail probability Q(x) = P(N(0,1) > x).
double q_function(double x);

/// Inverse of q_function on (0,1). Throws std::domain_error outside.
double q_inverse(double p);

/// Normal-approximation decoding error probability for a packet of
/// payload_bits bits in `blocklength` channel uses (blocklength may be
/// fractional; integer packets go through error_probability).
double packet_error_probability(double blocklength, int payload_bits,
                                const ChannelParams& ch);

double error_probability(const PacketSpec& spec, const ChannelParams& ch);

/// Smallest real blocklength n with error_probability(n) <= epsilon;
/// the exact inverse of packet_error_probability in n. Callers round up
/// with ceil_blocklength to obtain a usable integer blocklength.
double blocklength_for(double epsilon, int payload_bits,
                       const ChannelParams& ch);

/// ceil with a relative guard: values within ~1e-9 of an integer are
/// treated as that integer. Blocklength bounds routinely land exactly on
/// integers (zero-slack constraints), where a bare ceil would flip on
/// floating-point noise.
int ceil_blocklength(double x);

/// floor with the same guard, for upper bounds.
int floor_blocklength(double x);

}  // namespace pld
