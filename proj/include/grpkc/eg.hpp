#pragma once

// ElGamal-type group ring cryptosystem.
//
//   public  (A1 = u^{n1}, A2 = v^{n2}, v)   private (A1^{-1}, n2)
//   encrypt C1 = v^k,  C2 = (r * A1) * A2^k
//   decrypt (C2 * C1^{-n2}) * A1^{-1}
//
// Both unit factors cancel on the right, so the scheme works in
// non-commutative group rings and the message need not be a unit.

#include <cstdint>
#include <vector>

#include "grpkc/eeg.hpp"
#include "grpkc/encode.hpp"
#include "grpkc/error.hpp"
#include "grpkc/group_ring.hpp"
#include "grpkc/random.hpp"
#include "grpkc/units.hpp"

namespace grpkc {

struct EGPublicKey {
  GroupRingElement A1;
  GroupRingElement A2;
  GroupRingElement v;
  std::size_t block_length = 1;

  const Group& group() const { return A1.group(); }
  const RingSpec& ring() const { return A1.ring(); }
};

struct EGPrivateKey {
  GroupRingElement A1_inv;
  std::uint64_t n2 = 0;
};

struct EGKeyPair {
  EGPublicKey pub;
  EGPrivateKey priv;
};

struct EGCiphertext {
  GroupRingElement C1;
  std::vector<GroupRingElement> C2;
  std::size_t digit_count = 0;
};

inline EGKeyPair eg_keygen(const GroupRingElement& u, const GroupRingElement& v, std::uint64_t n1, std::uint64_t n2,
                           std::size_t t, const KeygenPolicy& policy = {}) {
  detail::check_same_space(u, v);
  detail::check_block_length(t, u.group());
  if (n1 == 0 || n2 == 0) throw ParameterError("n1 and n2 must be positive");
  const GroupRingElement u_inv = gr_inverse(u);
  if (!is_unit(v)) throw NotAUnit("v is not a unit");
  detail::enforce_unit_order(u, policy, "unit u");
  detail::enforce_unit_order(v, policy, "unit v");
  return EGKeyPair{EGPublicKey{gr_pow(u, n1), gr_pow(v, n2), v, t}, EGPrivateKey{gr_pow(u_inv, n1), n2}};
}

inline EGCiphertext eg_encrypt(const EGPublicKey& pub, const MessageBlocks& m, std::uint64_t k) {
  if (k == 0) throw ParameterError("ephemeral k must be positive");
  detail::check_message_space(m, pub.group(), pub.ring(), pub.block_length);
  const GroupRingElement mask = gr_pow(pub.A2, k);
  EGCiphertext ct{gr_pow(pub.v, k), {}, m.digit_count};
  ct.C2.reserve(m.blocks.size());
  for (const auto& block : m.blocks) ct.C2.push_back(gr_mul(gr_mul(block, pub.A1), mask));
  return ct;
}

inline MessageBlocks eg_decrypt(const EGPrivateKey& priv, const EGPublicKey& pub, const EGCiphertext& ct) {
  if (!(ct.C1.group() == pub.group()) || !(ct.C1.ring() == pub.ring()))
    throw FormatError("C1 does not match the key's group ring");
  const GroupRingElement unmask = gr_pow(gr_inverse(ct.C1), priv.n2);
  MessageBlocks out;
  out.block_length = pub.block_length;
  out.digit_count = ct.digit_count;
  out.blocks.reserve(ct.C2.size());
  for (const auto& c2 : ct.C2) {
    if (!(c2.group() == pub.group()) || !(c2.ring() == pub.ring()))
      throw FormatError("ciphertext block does not match the key's group ring");
    out.blocks.push_back(gr_mul(gr_mul(c2, unmask), priv.A1_inv));
  }
  (void)decode_digits(out);
  return out;
}

/// Default upper end K of the ephemeral range [1, K]. Over Z every power
/// grows the coefficients, so the integral default is kept small.
inline std::uint64_t default_ephemeral_bound(const RingSpec& ring) { return ring.is_modular() ? (1ULL << 16U) : 16; }

inline std::uint64_t draw_eg_ephemeral(DeterministicRng& rng, std::uint64_t bound) {
  if (bound == 0) throw ParameterError("ephemeral bound must be positive");
  return rng.uniform(1, bound);
}

}  // namespace grpkc
