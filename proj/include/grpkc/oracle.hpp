#pragma once

// Desk-scale discrete logarithm solvers, used as test oracles and for the
// attack-cost table. Each reports how many group operations it spent.

#include <cmath>
#include <cstdint>
#include <optional>
#include <unordered_map>

#include "grpkc/curve.hpp"
#include "grpkc/error.hpp"
#include "grpkc/group_ring.hpp"

namespace grpkc {

struct DlogResult {
  std::optional<std::uint64_t> exponent;
  std::uint64_t operations = 0;

  bool found() const noexcept { return exponent.has_value(); }
};

/// Least x in [0, bound] with u^x = target. One multiplication per step.
inline DlogResult brute_grdlp(const GroupRingElement& u, const GroupRingElement& target, std::uint64_t bound) {
  detail::check_same_space(u, target);
  if (!is_unit(u)) throw NotAUnit("base is not a unit");
  DlogResult result;
  GroupRingElement power = GroupRingElement::one(u.group(), u.ring());
  for (std::uint64_t x = 0;; ++x) {
    if (power == target) {
      result.exponent = x;
      return result;
    }
    if (x == bound) return result;
    power = gr_mul(power, u);
    ++result.operations;
  }
}

/// Least n in [0, bound] with nP = Q. One addition per step.
inline DlogResult brute_ecdlp(const EllipticCurve& curve, const CurvePoint& P, const CurvePoint& Q,
                              std::uint64_t bound) {
  curve.require(P);
  curve.require(Q);
  DlogResult result;
  CurvePoint nP = CurvePoint::at_infinity();
  for (std::uint64_t n = 0;; ++n) {
    if (nP == Q) {
      result.exponent = n;
      return result;
    }
    if (n == bound) return result;
    nP = curve.add_unchecked(nP, P);
    ++result.operations;
  }
}

/// Baby-step giant-step with m = ceil(sqrt(N)), N = order_hint or #E(F_p)
/// when the hint is 0. Returns the least n with nP = Q provided
/// N >= ord(P); at most 2m - 1 additions.
inline DlogResult bsgs_ecdlp(const EllipticCurve& curve, const CurvePoint& P, const CurvePoint& Q,
                             std::uint64_t order_hint = 0) {
  curve.require(P);
  curve.require(Q);
  const std::uint64_t N = order_hint != 0 ? order_hint : curve.points().size();
  auto m = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(N)));
  while (m * m < N) ++m;
  while (m > 1 && (m - 1) * (m - 1) >= N) --m;
  if (m == 0) m = 1;

  DlogResult result;
  std::unordered_map<CurvePoint, std::uint64_t, CurvePointHash> baby;
  baby.reserve(m);
  CurvePoint jP = CurvePoint::at_infinity();
  for (std::uint64_t j = 0; j < m; ++j) {
    baby.emplace(jP, j);
    if (j + 1 < m) {
      jP = curve.add_unchecked(jP, P);
      ++result.operations;
    }
  }
  const CurvePoint mP = curve.add_unchecked(jP, P);
  ++result.operations;
  const CurvePoint giant = curve.negate(mP);

  CurvePoint gamma = Q;
  for (std::uint64_t i = 0; i < m; ++i) {
    if (auto it = baby.find(gamma); it != baby.end()) {
      result.exponent = i * m + it->second;
      return result;
    }
    if (i + 1 < m) {
      gamma = curve.add_unchecked(gamma, giant);
      ++result.operations;
    }
  }
  return result;
}

}  // namespace grpkc
