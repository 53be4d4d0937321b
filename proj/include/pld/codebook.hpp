#pragma once

#include <stdexcept>

namespace pld {

/// Receiver output when the message packet is erased.
inline constexpr int kNullSymbol = -1;
/// Key index reserved for "no key delivered"; never a valid shift.
inline constexpr int kNullKey = 0;

/// Shared codebook of S codewords with a two-level semantic distortion
/// measure: d(p,p) = 0, d(p, null) = loss_distortion, d(p, q != p) =
/// confusion_distortion.
struct Codebook {
  int cardinality = 2;
  double loss_distortion = 1.0;
  double confusion_distortion = 10.0;

  bool is_valid() const {
    return cardinality >= 2 && loss_distortion >= 0.0 &&
           confusion_distortion >= 0.0;
  }
};

/// Semantic distortion between the transmitted plaintext and the receiver's
/// final estimate (kNullSymbol when the packet was dropped or lost).
inline double distortion_between(int plaintext, int estimate,
                                 const Codebook& cb) {
  if (estimate == kNullSymbol) return cb.loss_distortion;
  if (estimate == plaintext) return 0.0;
  return cb.confusion_distortion;
}

/// Ciphers a plaintext index with an additive key shift. Keys form the set
/// {1, ..., S-1}; the ciphertext is always a valid codeword distinct from
/// the plaintext.
inline int encrypt(int plaintext, int key, const Codebook& cb) {
  const int s = cb.cardinality;
  if (plaintext < 0 || plaintext >= s) {
    throw std::invalid_argument("encrypt: plaintext outside codebook");
  }
  if (key < 1 || key >= s) {
    throw std::invalid_argument("encrypt: key must lie in {1, ..., S-1}");
  }
  return (plaintext + key) % s;
}

/// Inverse shift; decrypt(encrypt(p, k), k) == p.
inline int decrypt(int ciphertext, int key, const Codebook& cb) {
  const int s = cb.cardinality;
  if (ciphertext < 0 || ciphertext >= s) {
    throw std::invalid_argument("decrypt: ciphertext outside codebook");
  }
  if (key < 1 || key >= s) {
    throw std::invalid_argument("decrypt: key must lie in {1, ..., S-1}");
  }
  return (ciphertext - key % s + s) % s;
}

}  // namespace pld
