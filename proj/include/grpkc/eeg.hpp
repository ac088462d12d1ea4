#pragma once

// Elliptic-ElGamal-type group ring cryptosystem.
//
//   public  (P, Q = n1 P, A = u^{n2})      private (n1, u^{-n2})
//   encrypt C1 = n3 P,  C2 = (r (+) n3 Q) * A
//   decrypt (C2 * u^{-n2}) (-) n1 C1
//
// r (+) S adds x_k + y_k, where (x_k, y_k) = k S, to digit k of the block
// (k = 1..t). Coordinates are taken as representatives in [0, p) and the
// sum is reduced in the coefficient ring: mod p when R = F_p, plain integer
// addition when R = Z, and mod q for R = Z/q with q != p.

#include <cstdint>
#include <optional>
#include <vector>

#include "grpkc/curve.hpp"
#include "grpkc/encode.hpp"
#include "grpkc/error.hpp"
#include "grpkc/group_ring.hpp"
#include "grpkc/random.hpp"
#include "grpkc/units.hpp"

namespace grpkc {

/// Minimum-order guard for secret and public units. Orders below
/// `min_unit_order` are rejected; a value <= 1 disables the check.
struct KeygenPolicy {
  std::uint64_t min_unit_order = 100;
};

struct EEGPublicKey {
  CurveParams curve;
  CurvePoint P;
  CurvePoint Q;
  GroupRingElement A;
  std::size_t block_length = 1;

  const Group& group() const { return A.group(); }
  const RingSpec& ring() const { return A.ring(); }
};

struct EEGPrivateKey {
  std::uint64_t n1 = 0;
  GroupRingElement A_inv;
};

struct EEGKeyPair {
  EEGPublicKey pub;
  EEGPrivateKey priv;
};

struct EEGCiphertext {
  CurvePoint C1;
  std::vector<GroupRingElement> C2;
  std::size_t digit_count = 0;
};

namespace detail {

inline void check_block_length(std::size_t t, const Group& group) {
  if (t == 0) throw BlockTooLong("block length must be >= 1");
  if (t > group.order())
    throw BlockTooLong("block length " + std::to_string(t) + " exceeds |G| = " + std::to_string(group.order()));
}

/// Rejects units whose order is below the policy minimum. Units of
/// infinite order (or order beyond the bound) pass.
inline void enforce_unit_order(const GroupRingElement& u, const KeygenPolicy& policy, const char* name) {
  if (policy.min_unit_order <= 1) return;
  if (auto ord = unit_order(u, policy.min_unit_order - 1))
    throw SmallOrderUnit(std::string(name) + " has order " + std::to_string(*ord) + " < " +
                         std::to_string(policy.min_unit_order));
}

inline void check_message_space(const MessageBlocks& m, const Group& group, const RingSpec& ring, std::size_t t) {
  if (m.block_length != t) throw SpecError("message block length does not match the key");
  for (const auto& b : m.blocks) {
    if (!(b.group() == group)) throw SpecError("message group does not match the key");
    if (!(b.ring() == ring)) throw SpecError("message ring does not match the key");
  }
}

}  // namespace detail

/// x_k + y_k for k S, k = 1..t, as non-negative integers.
inline std::vector<Coefficient> mixing_offsets(const EllipticCurve& curve, const CurvePoint& S, std::size_t t) {
  curve.require(S);
  std::vector<Coefficient> out;
  out.reserve(t);
  CurvePoint kS = S;
  for (std::size_t k = 1; k <= t; ++k) {
    if (kS.infinity) throw InfinityEncountered(std::to_string(k) + "*" + S.to_string() + " is the point at infinity");
    Coefficient sum = static_cast<unsigned long>(kS.x);
    sum += static_cast<unsigned long>(kS.y);
    out.push_back(std::move(sum));
    kS = curve.add_unchecked(kS, S);
  }
  return out;
}

inline GroupRingElement apply_offsets(const GroupRingElement& block, const std::vector<Coefficient>& offsets, int sign) {
  if (offsets.size() > block.size()) throw BlockTooLong("block length exceeds |G|");
  std::vector<Coefficient> out = block.coeffs();
  for (std::size_t k = 0; k < offsets.size(); ++k) {
    if (sign > 0)
      out[k] += offsets[k];
    else
      out[k] -= offsets[k];
  }
  return {block.group(), block.ring(), std::move(out)};
}

/// block (+) S over the first t coefficient slots.
inline GroupRingElement oplus(const GroupRingElement& block, const CurvePoint& S, const EllipticCurve& curve,
                              std::size_t t) {
  return apply_offsets(block, mixing_offsets(curve, S, t), +1);
}

/// Inverse of oplus under the same ring.
inline GroupRingElement ominus(const GroupRingElement& block, const CurvePoint& S, const EllipticCurve& curve,
                               std::size_t t) {
  return apply_offsets(block, mixing_offsets(curve, S, t), -1);
}

inline EEGKeyPair eeg_keygen(const CurveParams& params, const CurvePoint& P, const GroupRingElement& u,
                             std::uint64_t n1, std::uint64_t n2, std::size_t t, const KeygenPolicy& policy = {}) {
  const EllipticCurve curve(params);
  curve.require(P);
  detail::check_block_length(t, u.group());
  if (n1 == 0) throw ParameterError("n1 must be positive");
  const GroupRingElement u_inv = gr_inverse(u);
  detail::enforce_unit_order(u, policy, "unit u");
  if (n2 == 0 && policy.min_unit_order > 1) throw SmallOrderUnit("n2 = 0 makes A the identity");

  const CurvePoint Q = curve.mul(n1, P);
  const std::uint64_t q_order = curve.point_order(Q);
  if (q_order <= t)
    throw SmallOrderPoint("ord(Q) = " + std::to_string(q_order) + " must exceed block length " + std::to_string(t));

  EEGKeyPair kp{EEGPublicKey{params, P, Q, gr_pow(u, n2), t}, EEGPrivateKey{n1, gr_pow(u_inv, n2)}};
  return kp;
}

inline EEGCiphertext eeg_encrypt(const EEGPublicKey& pub, const MessageBlocks& m, std::uint64_t n3) {
  if (n3 == 0) throw ParameterError("ephemeral n3 must be positive");
  detail::check_message_space(m, pub.group(), pub.ring(), pub.block_length);
  const EllipticCurve curve(pub.curve);
  const CurvePoint S = curve.mul(n3, pub.Q);
  if (S.infinity) throw InfinityEncountered("n3*Q is the point at infinity");
  const auto offsets = mixing_offsets(curve, S, pub.block_length);

  EEGCiphertext ct;
  ct.C1 = curve.mul(n3, pub.P);
  ct.digit_count = m.digit_count;
  ct.C2.reserve(m.blocks.size());
  for (const auto& block : m.blocks) ct.C2.push_back(gr_mul(apply_offsets(block, offsets, +1), pub.A));
  return ct;
}

inline MessageBlocks eeg_decrypt(const EEGPrivateKey& priv, const EEGPublicKey& pub, const EEGCiphertext& ct) {
  const EllipticCurve curve(pub.curve);
  if (!curve.contains(ct.C1)) throw FormatError("C1 is not on the curve");
  const CurvePoint S = curve.mul(priv.n1, ct.C1);
  if (S.infinity) throw InfinityEncountered("n1*C1 is the point at infinity");
  const auto offsets = mixing_offsets(curve, S, pub.block_length);

  MessageBlocks out;
  out.block_length = pub.block_length;
  out.digit_count = ct.digit_count;
  out.blocks.reserve(ct.C2.size());
  for (const auto& c2 : ct.C2) {
    if (!(c2.group() == pub.group()) || !(c2.ring() == pub.ring()))
      throw FormatError("ciphertext block does not match the key's group ring");
    out.blocks.push_back(apply_offsets(gr_mul(c2, priv.A_inv), offsets, -1));
  }
  (void)decode_digits(out);
  return out;
}

/// Draws n3 in [1, ord(P)) such that n3 Q and its first t multiples avoid
/// the point at infinity.
inline std::uint64_t draw_eeg_ephemeral(const EEGPublicKey& pub, DeterministicRng& rng) {
  const EllipticCurve curve(pub.curve);
  const std::uint64_t order = curve.point_order(pub.P);
  if (order < 2) throw SmallOrderPoint("P has order 1");
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const std::uint64_t n3 = rng.uniform(1, order - 1);
    const CurvePoint S = curve.mul(n3, pub.Q);
    if (S.infinity) continue;
    try {
      (void)mixing_offsets(curve, S, pub.block_length);
      return n3;
    } catch (const InfinityEncountered&) {
    }
  }
  throw InfinityEncountered("no usable ephemeral found");
}

}  // namespace grpkc
