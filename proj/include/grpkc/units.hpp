#pragma once

// Unit constructions for key material: trivial units, Bass cyclic units,
// bicyclic units and products of these, plus a bounded order search.

#include <gmpxx.h>

#include <cstdint>
#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "grpkc/error.hpp"
#include "grpkc/group.hpp"
#include "grpkc/group_ring.hpp"
#include "grpkc/modarith.hpp"
#include "grpkc/ring.hpp"

namespace grpkc {

inline constexpr std::uint64_t kDefaultOrderBound = 1ULL << 20U;

/// c*g, with inverse c^{-1} g^{-1}.
inline GroupRingElement trivial_unit(const Group& group, const RingSpec& ring, GroupElement g, const Coefficient& c) {
  const Coefficient reduced = ring.reduce(c);
  if (!ring.is_invertible(reduced)) throw NotAUnit("scalar " + c.get_str() + " is not invertible in " + ring.to_string());
  return GroupRingElement::basis(group, ring, g, reduced);
}

/// (1 + g + ... + g^{i-1})^{phi(n)} + ((1 - i^{phi(n)}) / n) * ghat in ZG,
/// where n = ord(g), 1 < i < n-1 and gcd(i, n) = 1.
inline GroupRingElement bass_cyclic_unit(const Group& group, GroupElement g, std::int64_t i) {
  const std::uint32_t n = group.element_order(g);
  if (!(1 < i && i < static_cast<std::int64_t>(n) - 1))
    throw ParameterError("Bass unit needs 1 < i < ord(g)-1; ord(g)=" + std::to_string(n) + ", i=" + std::to_string(i));
  if (std::gcd(static_cast<std::uint64_t>(i), std::uint64_t{n}) != 1)
    throw ParameterError("Bass unit needs gcd(i, ord(g)) = 1");
  const RingSpec z = RingSpec::integers();
  const std::uint64_t phi = modarith::totient(n);

  GroupRingElement partial(group, z);
  std::vector<Coefficient> coeffs(group.order());
  GroupElement x = group.identity();
  for (std::int64_t k = 0; k < i; ++k) {
    coeffs[x.index] += 1;
    x = group.mul(x, g);
  }
  partial = GroupRingElement(group, z, std::move(coeffs));

  mpz_class ipow;
  mpz_ui_pow_ui(ipow.get_mpz_t(), static_cast<unsigned long>(i), static_cast<unsigned long>(phi));
  mpz_class numerator = 1 - ipow;
  mpz_class scale;
  mpz_divexact_ui(scale.get_mpz_t(), numerator.get_mpz_t(), n);
  return gr_add(gr_pow(partial, phi), gr_scale(GroupRingElement::cyclic_sum(group, z, g), scale));
}

/// 1 + (g - 1) h ghat in ZG. Its inverse is 1 - (g - 1) h ghat.
inline GroupRingElement bicyclic_unit(const Group& group, GroupElement g, GroupElement h) {
  const RingSpec z = RingSpec::integers();
  const auto one = GroupRingElement::one(group, z);
  const auto g_minus_1 = gr_sub(GroupRingElement::basis(group, z, g, 1), one);
  const auto nilpotent = gr_mul(gr_mul(g_minus_1, GroupRingElement::basis(group, z, h, 1)),
                                GroupRingElement::cyclic_sum(group, z, g));
  return gr_add(one, nilpotent);
}

/// Maps an integral element into RG for another coefficient ring.
inline GroupRingElement change_ring(const GroupRingElement& a, const RingSpec& ring) {
  return {a.group(), ring, a.coeffs()};
}

/// Smallest k <= bound with u^k = 1, or nullopt when no such k exists.
///
/// Over Z the order of a torsion unit divides lcm(2, exp(G)) (Cohn and
/// Livingstone), so a unit with u^L != 1 for that L has infinite order and
/// the walk is skipped.
inline std::optional<std::uint64_t> unit_order(const GroupRingElement& u, std::uint64_t bound = kDefaultOrderBound) {
  if (!is_unit(u)) throw NotAUnit("order is only defined for units");
  if (!u.ring().is_modular()) {
    const std::uint64_t torsion_exponent = std::lcm(std::uint64_t{2}, u.group().exponent());
    if (!gr_pow(u, torsion_exponent).is_one()) return std::nullopt;
    bound = std::min(bound, torsion_exponent);
  }
  GroupRingElement x = u;
  for (std::uint64_t k = 1; k <= bound; ++k) {
    if (x.is_one()) return k;
    x = gr_mul(x, u);
  }
  return std::nullopt;
}

// ---- recipes --------------------------------------------------------------

enum class RecipeKind { trivial, bass_cyclic, bicyclic, product, element };

/// Text description of a unit, e.g. `bass(g=(1 4 2 5 3), i=3)`.
struct UnitRecipe {
  RecipeKind kind = RecipeKind::element;
  std::string g;
  std::string h;
  Coefficient scalar = 1;
  std::int64_t i = 0;
  std::vector<UnitRecipe> factors;
  std::string element;
};

namespace detail {

/// Splits on commas that are not nested inside (), [].
inline std::vector<std::string_view> split_top_level(std::string_view s) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    const char c = s[k];
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(trim(s.substr(start, k - start)));
      start = k + 1;
    }
  }
  parts.push_back(trim(s.substr(start)));
  return parts;
}

/// `key=value` -> value when the key matches.
inline std::optional<std::string_view> keyed(std::string_view arg, std::string_view key) {
  const auto eq = arg.find('=');
  if (eq == std::string_view::npos || trim(arg.substr(0, eq)) != key) return std::nullopt;
  return trim(arg.substr(eq + 1));
}

}  // namespace detail

inline UnitRecipe parse_unit_recipe(std::string_view text) {
  const std::string_view s = detail::trim(text);
  const auto open = s.find('(');
  const std::string_view head = open == std::string_view::npos ? std::string_view{} : detail::trim(s.substr(0, open));
  const bool call = open != std::string_view::npos && s.back() == ')' &&
                    (head == "trivial" || head == "bass" || head == "bicyclic" || head == "product");
  if (!call) {
    UnitRecipe r;
    r.kind = RecipeKind::element;
    r.element = std::string(s);
    if (r.element.empty()) throw ParameterError("empty unit recipe");
    return r;
  }
  const auto args = detail::split_top_level(s.substr(open + 1, s.size() - open - 2));
  UnitRecipe r;
  auto bad = [&](const std::string& why) { return ParameterError("recipe '" + std::string(s) + "': " + why); };
  if (head == "trivial") {
    r.kind = RecipeKind::trivial;
    if (args.empty() || args.size() > 2 || args[0].empty()) throw bad("expected trivial(g) or trivial(g, c=k)");
    r.g = std::string(detail::keyed(args[0], "g").value_or(args[0]));
    if (args.size() == 2) {
      auto c = detail::keyed(args[1], "c");
      if (!c || r.scalar.set_str(std::string(*c), 10) != 0) throw bad("bad scalar");
    }
  } else if (head == "bass") {
    r.kind = RecipeKind::bass_cyclic;
    if (args.size() != 2) throw bad("expected bass(g=..., i=...)");
    auto g = detail::keyed(args[0], "g");
    auto i = detail::keyed(args[1], "i");
    if (!g || !i) throw bad("expected bass(g=..., i=...)");
    r.g = std::string(*g);
    try {
      r.i = std::stoll(std::string(*i));
    } catch (const std::exception&) {
      throw bad("bad i");
    }
  } else if (head == "bicyclic") {
    r.kind = RecipeKind::bicyclic;
    if (args.size() != 2) throw bad("expected bicyclic(g=..., h=...)");
    auto g = detail::keyed(args[0], "g");
    auto h = detail::keyed(args[1], "h");
    if (!g || !h) throw bad("expected bicyclic(g=..., h=...)");
    r.g = std::string(*g);
    r.h = std::string(*h);
  } else {
    r.kind = RecipeKind::product;
    for (auto a : args) {
      if (a.empty()) throw bad("empty factor");
      r.factors.push_back(parse_unit_recipe(a));
    }
  }
  return r;
}

/// Evaluates a recipe in RG. Bass and bicyclic units are built in ZG and
/// then mapped into R. Products multiply left to right.
inline GroupRingElement build_unit(const UnitRecipe& recipe, const Group& group, const RingSpec& ring) {
  auto element = [&](const std::string& t) {
    try {
      return group.parse_element(t);
    } catch (const DomainError& e) {
      throw ParameterError(e.what());
    }
  };
  switch (recipe.kind) {
    case RecipeKind::trivial:
      return trivial_unit(group, ring, element(recipe.g), recipe.scalar);
    case RecipeKind::bass_cyclic:
      return change_ring(bass_cyclic_unit(group, element(recipe.g), recipe.i), ring);
    case RecipeKind::bicyclic:
      return change_ring(bicyclic_unit(group, element(recipe.g), element(recipe.h)), ring);
    case RecipeKind::product: {
      GroupRingElement acc = GroupRingElement::one(group, ring);
      for (const auto& f : recipe.factors) acc = gr_mul(acc, build_unit(f, group, ring));
      return acc;
    }
    case RecipeKind::element:
      try {
        return parse_group_ring_element(group, ring, recipe.element);
      } catch (const FormatError& e) {
        throw ParameterError(e.what());
      }
  }
  throw ParameterError("unknown recipe kind");
}

inline GroupRingElement build_unit(std::string_view recipe, const Group& group, const RingSpec& ring) {
  return build_unit(parse_unit_recipe(recipe), group, ring);
}

}  // namespace grpkc
