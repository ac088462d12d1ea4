#pragma once

// Short Weierstrass curves y^2 = x^3 + Rx + S over F_p, p > 3 prime,
// in affine coordinates with an explicit point at infinity.

#include <charconv>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "grpkc/error.hpp"
#include "grpkc/group.hpp"
#include "grpkc/modarith.hpp"

namespace grpkc {

inline constexpr std::uint64_t kMaxCurvePrime = 1ULL << 62U;
inline constexpr std::uint64_t kMaxEnumerablePrime = 1'000'000;
inline constexpr std::uint64_t kMaxPointOrderWalk = 10'000'000;

struct CurveParams {
  std::uint64_t p = 0;
  std::uint64_t R = 0;
  std::uint64_t S = 0;

  friend bool operator==(const CurveParams&, const CurveParams&) = default;

  /// From possibly negative coefficients; R and S are reduced mod p.
  static CurveParams make(std::uint64_t p, std::int64_t R, std::int64_t S) {
    if (p == 0 || p >= kMaxCurvePrime) throw BadPrime("modulus out of supported range");
    return {p, modarith::reduce(R, p), modarith::reduce(S, p)};
  }

  /// Parses `p,R,S`.
  static CurveParams parse(std::string_view text);

  std::string to_string() const { return std::to_string(p) + "," + std::to_string(R) + "," + std::to_string(S); }
};

struct CurvePoint {
  bool infinity = true;
  std::uint64_t x = 0;
  std::uint64_t y = 0;

  static CurvePoint at_infinity() { return {}; }
  static CurvePoint affine(std::uint64_t x, std::uint64_t y) { return {false, x, y}; }

  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;

  /// Parses `O`, `(x,y)` or `x,y`.
  static CurvePoint parse(std::string_view text);

  std::string to_string() const {
    return infinity ? "O" : "(" + std::to_string(x) + "," + std::to_string(y) + ")";
  }
};

struct CurvePointHash {
  std::size_t operator()(const CurvePoint& pt) const noexcept {
    if (pt.infinity) return 0x9e3779b97f4a7c15ULL;
    return std::hash<std::uint64_t>{}(pt.x * 0x9e3779b97f4a7c15ULL ^ (pt.y + 0x7f4a7c15ULL));
  }
};

namespace detail {

inline std::int64_t parse_i64(std::string_view s, std::string_view what) {
  s = trim(s);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw ParameterError("invalid " + std::string(what) + " '" + std::string(s) + "'");
  return v;
}

}  // namespace detail

inline CurveParams CurveParams::parse(std::string_view text) {
  std::string_view s = detail::trim(text);
  const auto c1 = s.find(',');
  const auto c2 = c1 == std::string_view::npos ? c1 : s.find(',', c1 + 1);
  if (c2 == std::string_view::npos) throw ParameterError("curve must be given as p,R,S");
  const std::int64_t p = detail::parse_i64(s.substr(0, c1), "curve prime");
  if (p <= 0) throw BadPrime("curve prime must be positive");
  return make(static_cast<std::uint64_t>(p), detail::parse_i64(s.substr(c1 + 1, c2 - c1 - 1), "curve R"),
              detail::parse_i64(s.substr(c2 + 1), "curve S"));
}

inline CurvePoint CurvePoint::parse(std::string_view text) {
  std::string_view s = detail::trim(text);
  if (s == "O" || s == "o" || s == "inf") return at_infinity();
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  const auto comma = s.find(',');
  if (comma == std::string_view::npos) throw ParameterError("point must be (x,y) or O");
  const std::int64_t x = detail::parse_i64(s.substr(0, comma), "point x");
  const std::int64_t y = detail::parse_i64(s.substr(comma + 1), "point y");
  if (x < 0 || y < 0) throw ParameterError("point coordinates must be non-negative");
  return affine(static_cast<std::uint64_t>(x), static_cast<std::uint64_t>(y));
}

/// Throws BadPrime unless p is a prime > 3, SingularCurve when
/// 4R^3 + 27S^2 = 0 mod p.
inline void validate_curve(const CurveParams& c) {
  if (c.p <= 3 || c.p >= kMaxCurvePrime || !modarith::is_prime(c.p))
    throw BadPrime(std::to_string(c.p) + " is not a prime > 3");
  using modarith::addmod;
  using modarith::mulmod;
  const std::uint64_t r3 = mulmod(mulmod(c.R, c.R, c.p), c.R, c.p);
  const std::uint64_t s2 = mulmod(c.S, c.S, c.p);
  if (addmod(mulmod(4 % c.p, r3, c.p), mulmod(27 % c.p, s2, c.p), c.p) == 0)
    throw SingularCurve("4R^3 + 27S^2 = 0 mod " + std::to_string(c.p));
}

/// A validated curve.
class EllipticCurve {
 public:
  explicit EllipticCurve(CurveParams params) : params_(params) { validate_curve(params_); }

  const CurveParams& params() const noexcept { return params_; }
  std::uint64_t p() const noexcept { return params_.p; }

  bool contains(const CurvePoint& pt) const {
    if (pt.infinity) return true;
    if (pt.x >= p() || pt.y >= p()) return false;
    return modarith::mulmod(pt.y, pt.y, p()) == rhs(pt.x);
  }

  void require(const CurvePoint& pt) const {
    if (!contains(pt)) throw PointNotOnCurve(pt.to_string() + " is not on y^2 = x^3 + " + std::to_string(params_.R) +
                                             "x + " + std::to_string(params_.S) + " mod " + std::to_string(p()));
  }

  CurvePoint negate(const CurvePoint& pt) const {
    require(pt);
    if (pt.infinity) return pt;
    return CurvePoint::affine(pt.x, pt.y == 0 ? 0 : p() - pt.y);
  }

  CurvePoint add(const CurvePoint& a, const CurvePoint& b) const {
    require(a);
    require(b);
    return add_unchecked(a, b);
  }

  /// Double-and-add; 0*P = O.
  CurvePoint mul(std::uint64_t n, const CurvePoint& pt) const {
    require(pt);
    CurvePoint result = CurvePoint::at_infinity();
    CurvePoint base = pt;
    while (n != 0) {
      if (n & 1U) result = add_unchecked(result, base);
      n >>= 1U;
      if (n != 0) base = add_unchecked(base, base);
    }
    return result;
  }

  /// Every point of E(F_p), O first, then by (x, y). Roots by exhaustive
  /// scan of squares.
  std::vector<CurvePoint> points() const {
    if (p() > kMaxEnumerablePrime) throw TooLarge("enumeration limited to p <= 10^6");
    std::vector<std::vector<std::uint32_t>> roots(p());
    for (std::uint64_t y = 0; y < p(); ++y) roots[modarith::mulmod(y, y, p())].push_back(static_cast<std::uint32_t>(y));
    std::vector<CurvePoint> out{CurvePoint::at_infinity()};
    for (std::uint64_t x = 0; x < p(); ++x)
      for (std::uint32_t y : roots[rhs(x)]) out.push_back(CurvePoint::affine(x, y));
    return out;
  }

  /// Least k >= 1 with kP = O, by repeated addition.
  std::uint64_t point_order(const CurvePoint& pt, std::uint64_t limit = kMaxPointOrderWalk) const {
    require(pt);
    CurvePoint x = pt;
    for (std::uint64_t k = 1; k <= limit; ++k) {
      if (x.infinity) return k;
      x = add_unchecked(x, pt);
    }
    throw TooLarge("point order exceeds " + std::to_string(limit));
  }

  /// The addition law: identity cases, P + (-P) = O, then the chord or
  /// tangent slope. A point with y = 0 doubles to O through the inverse case.
  CurvePoint add_unchecked(const CurvePoint& a, const CurvePoint& b) const {
    using modarith::addmod;
    using modarith::mulmod;
    using modarith::submod;
    if (a.infinity) return b;
    if (b.infinity) return a;
    const std::uint64_t q = p();
    if (a.x == b.x && addmod(a.y, b.y, q) == 0) return CurvePoint::at_infinity();
    std::uint64_t lambda = 0;
    if (a == b) {
      const std::uint64_t num = addmod(mulmod(3, mulmod(a.x, a.x, q), q), params_.R, q);
      lambda = mulmod(num, *modarith::inverse(addmod(a.y, a.y, q), q), q);
    } else {
      lambda = mulmod(submod(b.y, a.y, q), *modarith::inverse(submod(b.x, a.x, q), q), q);
    }
    const std::uint64_t x3 = submod(submod(mulmod(lambda, lambda, q), a.x, q), b.x, q);
    const std::uint64_t y3 = submod(mulmod(lambda, submod(a.x, x3, q), q), a.y, q);
    return CurvePoint::affine(x3, y3);
  }

 private:
  std::uint64_t rhs(std::uint64_t x) const {
    using modarith::addmod;
    using modarith::mulmod;
    const std::uint64_t q = p();
    return addmod(addmod(mulmod(mulmod(x, x, q), x, q), mulmod(params_.R, x, q), q), params_.S, q);
  }

  CurveParams params_;
};

// Free-function forms.

inline bool on_curve(const EllipticCurve& e, const CurvePoint& pt) { return e.contains(pt); }
inline CurvePoint ec_add(const EllipticCurve& e, const CurvePoint& a, const CurvePoint& b) { return e.add(a, b); }
inline CurvePoint ec_scalar_mul(const EllipticCurve& e, std::uint64_t n, const CurvePoint& pt) { return e.mul(n, pt); }
inline std::vector<CurvePoint> enumerate_points(const EllipticCurve& e) { return e.points(); }
inline std::uint64_t ec_point_order(const EllipticCurve& e, const CurvePoint& pt) { return e.point_order(pt); }

}  // namespace grpkc
