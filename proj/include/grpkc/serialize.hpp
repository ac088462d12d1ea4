#pragma once

// Key and ciphertext documents. JSON syntax, fixed field order, every
// integer written as a decimal string.

#include <json.hpp>

#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "grpkc/curve.hpp"
#include "grpkc/eeg.hpp"
#include "grpkc/eg.hpp"
#include "grpkc/error.hpp"
#include "grpkc/group.hpp"
#include "grpkc/group_ring.hpp"
#include "grpkc/ring.hpp"

namespace grpkc {

using Json = nlohmann::ordered_json;

inline constexpr const char* kFormatVersion = "grpkc/1";
inline constexpr const char* kPrivateKeyWarning =
    "PRIVATE KEY. Stored unencrypted; anyone holding this file can decrypt.";

/// How the plaintext file looked, so decryption reproduces it byte for byte.
struct MessageLayout {
  std::string encoding = "digits";  // "text" or "digits"
  std::string separator = ",";
  bool trailing_newline = true;

  friend bool operator==(const MessageLayout&, const MessageLayout&) = default;
};

namespace detail {

inline Json coeff_array(const GroupRingElement& a) {
  Json out = Json::array();
  for (const auto& c : a.coeffs()) out.push_back(c.get_str());
  return out;
}

inline const Json& field(const Json& doc, const char* key) {
  if (!doc.is_object()) throw FormatError("expected a JSON object");
  auto it = doc.find(key);
  if (it == doc.end()) throw FormatError(std::string("missing field '") + key + "'");
  return *it;
}

inline std::string string_field(const Json& doc, const char* key) {
  const Json& v = field(doc, key);
  if (!v.is_string()) throw FormatError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

inline std::uint64_t u64_field(const Json& doc, const char* key) {
  const std::string s = string_field(doc, key);
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw FormatError(std::string("field '") + key + "' is not a non-negative integer");
  return out;
}

inline bool bool_field(const Json& doc, const char* key) {
  const Json& v = field(doc, key);
  if (!v.is_boolean()) throw FormatError(std::string("field '") + key + "' must be a boolean");
  return v.get<bool>();
}

inline Coefficient parse_integer(const std::string& s) {
  Coefficient c;
  const char* p = s.c_str();
  if (*p == '-' || *p == '+') ++p;
  if (*p == '\0') throw FormatError("empty integer");
  for (const char* q = p; *q; ++q)
    if (*q < '0' || *q > '9') throw FormatError("bad integer '" + s + "'");
  if (c.set_str(s[0] == '+' ? s.substr(1) : s, 10) != 0) throw FormatError("bad integer '" + s + "'");
  return c;
}

inline GroupRingElement element_field(const Json& doc, const char* key, const Group& group, const RingSpec& ring) {
  const Json& v = field(doc, key);
  if (!v.is_array()) throw FormatError(std::string("field '") + key + "' must be an array");
  if (v.size() != group.order())
    throw FormatError(std::string("field '") + key + "' has " + std::to_string(v.size()) + " coefficients, expected " +
                      std::to_string(group.order()));
  std::vector<Coefficient> coeffs;
  coeffs.reserve(v.size());
  for (const auto& c : v) {
    if (!c.is_string()) throw FormatError(std::string("coefficients of '") + key + "' must be strings");
    Coefficient x = parse_integer(c.get<std::string>());
    if (!ring.contains(x)) throw FormatError(std::string("coefficient of '") + key + "' outside " + ring.to_string());
    coeffs.push_back(std::move(x));
  }
  return {group, ring, std::move(coeffs)};
}

inline CurvePoint point_field(const Json& doc, const char* key) {
  try {
    return CurvePoint::parse(string_field(doc, key));
  } catch (const FormatError&) {
    throw;
  } catch (const Error& e) {
    throw FormatError(std::string("field '") + key + "': " + e.what());
  }
}

// Parse-time failures of embedded specs surface as format errors.
template <class F>
auto as_format_error(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const FormatError&) {
    throw;
  } catch (const Error& e) {
    throw FormatError(std::string(what) + ": " + e.what());
  }
}

struct Header {
  std::string scheme;
  std::string kind;
};

inline Header read_header(const Json& doc) {
  if (string_field(doc, "version") != kFormatVersion) throw FormatError("unsupported version");
  Header h{string_field(doc, "scheme"), string_field(doc, "kind")};
  if (h.scheme != "eeg" && h.scheme != "eg") throw FormatError("unknown scheme '" + h.scheme + "'");
  return h;
}

struct Context {
  Group group;
  RingSpec ring;
  std::size_t block_length;
};

inline Context read_context(const Json& doc) {
  Group group = as_format_error("group", [&] { return Group(GroupSpec::parse(string_field(doc, "group"))); });
  RingSpec ring = as_format_error("ring", [&] { return RingSpec::parse(string_field(doc, "ring")); });
  const std::uint64_t t = u64_field(doc, "block_length");
  if (t == 0 || t > group.order()) throw FormatError("block_length out of range");
  return {std::move(group), std::move(ring), static_cast<std::size_t>(t)};
}

inline void write_context(Json& doc, const Group& group, const RingSpec& ring, std::size_t t) {
  doc["group"] = group.spec().to_string();
  doc["ring"] = ring.to_string();
  doc["block_length"] = std::to_string(t);
}

inline Json start(const char* scheme, const char* kind, bool is_private) {
  Json doc = Json::object();
  if (is_private) doc["warning"] = kPrivateKeyWarning;
  doc["version"] = kFormatVersion;
  doc["scheme"] = scheme;
  doc["kind"] = kind;
  return doc;
}

inline void write_eeg_public(Json& doc, const EEGPublicKey& pub) {
  write_context(doc, pub.group(), pub.ring(), pub.block_length);
  doc["curve"] = pub.curve.to_string();
  doc["P"] = pub.P.to_string();
  doc["Q"] = pub.Q.to_string();
  doc["A"] = coeff_array(pub.A);
}

inline EEGPublicKey read_eeg_public(const Json& doc) {
  Context ctx = read_context(doc);
  EEGPublicKey pub{as_format_error("curve", [&] { return CurveParams::parse(string_field(doc, "curve")); }),
                   point_field(doc, "P"), point_field(doc, "Q"), element_field(doc, "A", ctx.group, ctx.ring),
                   ctx.block_length};
  const EllipticCurve curve = as_format_error("curve", [&] { return EllipticCurve(pub.curve); });
  if (!curve.contains(pub.P) || !curve.contains(pub.Q)) throw FormatError("key point not on the curve");
  return pub;
}

inline void write_eg_public(Json& doc, const EGPublicKey& pub) {
  write_context(doc, pub.group(), pub.ring(), pub.block_length);
  doc["A1"] = coeff_array(pub.A1);
  doc["A2"] = coeff_array(pub.A2);
  doc["v"] = coeff_array(pub.v);
}

inline EGPublicKey read_eg_public(const Json& doc) {
  Context ctx = read_context(doc);
  return {element_field(doc, "A1", ctx.group, ctx.ring), element_field(doc, "A2", ctx.group, ctx.ring),
          element_field(doc, "v", ctx.group, ctx.ring), ctx.block_length};
}

inline void expect_kind(const Header& h, const char* kind) {
  if (h.kind != kind) throw FormatError("expected a " + std::string(kind) + " file, found '" + h.kind + "'");
}

}  // namespace detail

/// Canonical text of a document: two-space indent, trailing newline.
inline std::string dump_document(const Json& doc) { return doc.dump(2) + "\n"; }

inline Json parse_document(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw FormatError(std::string("malformed document: ") + e.what());
  }
}

inline Json to_json(const EEGPublicKey& pub) {
  Json doc = detail::start("eeg", "public-key", false);
  detail::write_eeg_public(doc, pub);
  return doc;
}

inline Json to_json(const EEGKeyPair& kp) {
  Json doc = detail::start("eeg", "private-key", true);
  detail::write_eeg_public(doc, kp.pub);
  doc["n1"] = std::to_string(kp.priv.n1);
  doc["A_inv"] = detail::coeff_array(kp.priv.A_inv);
  return doc;
}

inline Json to_json(const EGPublicKey& pub) {
  Json doc = detail::start("eg", "public-key", false);
  detail::write_eg_public(doc, pub);
  return doc;
}

inline Json to_json(const EGKeyPair& kp) {
  Json doc = detail::start("eg", "private-key", true);
  detail::write_eg_public(doc, kp.pub);
  doc["A1_inv"] = detail::coeff_array(kp.priv.A1_inv);
  doc["n2"] = std::to_string(kp.priv.n2);
  return doc;
}

namespace detail {

inline void write_layout(Json& doc, const MessageLayout& layout) {
  Json m = Json::object();
  m["encoding"] = layout.encoding;
  m["separator"] = layout.separator;
  m["trailing_newline"] = layout.trailing_newline;
  doc["message"] = std::move(m);
}

inline MessageLayout read_layout(const Json& doc) {
  const Json& m = field(doc, "message");
  MessageLayout layout{string_field(m, "encoding"), string_field(m, "separator"), bool_field(m, "trailing_newline")};
  if (layout.encoding != "text" && layout.encoding != "digits") throw FormatError("unknown message encoding");
  return layout;
}

inline Json blocks_array(const std::vector<GroupRingElement>& blocks) {
  Json out = Json::array();
  for (const auto& b : blocks) out.push_back(coeff_array(b));
  return out;
}

inline std::vector<GroupRingElement> read_blocks(const Json& doc, const Context& ctx, std::uint64_t digit_count) {
  const Json& arr = field(doc, "C2");
  if (!arr.is_array() || arr.empty()) throw FormatError("field 'C2' must be a non-empty array");
  const std::uint64_t expected = digit_count == 0 ? 1 : (digit_count + ctx.block_length - 1) / ctx.block_length;
  if (arr.size() != expected) throw FormatError("C2 block count does not match digit_count");
  std::vector<GroupRingElement> out;
  out.reserve(arr.size());
  for (const auto& b : arr) {
    Json holder = Json::object();
    holder["C2"] = b;
    out.push_back(element_field(holder, "C2", ctx.group, ctx.ring));
  }
  return out;
}

}  // namespace detail

inline Json to_json(const EEGCiphertext& ct, const EEGPublicKey& pub, const MessageLayout& layout) {
  Json doc = detail::start("eeg", "ciphertext", false);
  detail::write_context(doc, pub.group(), pub.ring(), pub.block_length);
  doc["curve"] = pub.curve.to_string();
  detail::write_layout(doc, layout);
  doc["digit_count"] = std::to_string(ct.digit_count);
  doc["C1"] = ct.C1.to_string();
  doc["C2"] = detail::blocks_array(ct.C2);
  return doc;
}

inline Json to_json(const EGCiphertext& ct, const EGPublicKey& pub, const MessageLayout& layout) {
  Json doc = detail::start("eg", "ciphertext", false);
  detail::write_context(doc, pub.group(), pub.ring(), pub.block_length);
  detail::write_layout(doc, layout);
  doc["digit_count"] = std::to_string(ct.digit_count);
  doc["C1"] = detail::coeff_array(ct.C1);
  doc["C2"] = detail::blocks_array(ct.C2);
  return doc;
}

/// Any parsed document.
struct EEGPublicFile {
  EEGPublicKey pub;
};
struct EEGPrivateFile {
  EEGKeyPair keys;
};
struct EGPublicFile {
  EGPublicKey pub;
};
struct EGPrivateFile {
  EGKeyPair keys;
};
struct EEGCiphertextFile {
  EEGCiphertext ct;
  CurveParams curve;
  Group group;
  RingSpec ring;
  std::size_t block_length;
  MessageLayout layout;
};
struct EGCiphertextFile {
  EGCiphertext ct;
  std::size_t block_length;
  MessageLayout layout;
};

using Document = std::variant<EEGPublicFile, EEGPrivateFile, EGPublicFile, EGPrivateFile, EEGCiphertextFile,
                              EGCiphertextFile>;

inline Document read_document(const Json& doc) {
  const detail::Header h = detail::read_header(doc);
  if (h.kind == "public-key") {
    if (h.scheme == "eeg") return EEGPublicFile{detail::read_eeg_public(doc)};
    return EGPublicFile{detail::read_eg_public(doc)};
  }
  if (h.kind == "private-key") {
    if (detail::string_field(doc, "warning") != kPrivateKeyWarning) throw FormatError("private key warning altered");
    if (h.scheme == "eeg") {
      EEGPublicKey pub = detail::read_eeg_public(doc);
      const std::uint64_t n1 = detail::u64_field(doc, "n1");
      GroupRingElement a_inv = detail::element_field(doc, "A_inv", pub.group(), pub.ring());
      return EEGPrivateFile{EEGKeyPair{std::move(pub), EEGPrivateKey{n1, std::move(a_inv)}}};
    }
    EGPublicKey pub = detail::read_eg_public(doc);
    GroupRingElement a1_inv = detail::element_field(doc, "A1_inv", pub.group(), pub.ring());
    const std::uint64_t n2 = detail::u64_field(doc, "n2");
    return EGPrivateFile{EGKeyPair{std::move(pub), EGPrivateKey{std::move(a1_inv), n2}}};
  }
  if (h.kind == "ciphertext") {
    detail::Context ctx = detail::read_context(doc);
    CurveParams curve;
    if (h.scheme == "eeg")
      curve = detail::as_format_error("curve", [&] { return CurveParams::parse(detail::string_field(doc, "curve")); });
    MessageLayout layout = detail::read_layout(doc);
    const std::uint64_t digits = detail::u64_field(doc, "digit_count");
    if (h.scheme == "eeg") {
      EEGCiphertext ct;
      ct.C1 = detail::point_field(doc, "C1");
      ct.digit_count = digits;
      ct.C2 = detail::read_blocks(doc, ctx, digits);
      return EEGCiphertextFile{std::move(ct), curve, ctx.group, ctx.ring, ctx.block_length, std::move(layout)};
    }
    GroupRingElement c1 = detail::element_field(doc, "C1", ctx.group, ctx.ring);
    auto blocks = detail::read_blocks(doc, ctx, digits);
    return EGCiphertextFile{EGCiphertext{std::move(c1), std::move(blocks), digits}, ctx.block_length,
                            std::move(layout)};
  }
  throw FormatError("unknown document kind '" + h.kind + "'");
}

inline Document read_document(std::string_view text) { return read_document(parse_document(text)); }
inline Document read_document(const std::string& text) { return read_document(std::string_view(text)); }
inline Document read_document(const char* text) { return read_document(std::string_view(text)); }

/// Re-serializes a parsed document.
inline Json to_json(const Document& d) {
  return std::visit(
      [](const auto& f) -> Json {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, EEGPublicFile> || std::is_same_v<T, EGPublicFile>) {
          return to_json(f.pub);
        } else if constexpr (std::is_same_v<T, EEGPrivateFile> || std::is_same_v<T, EGPrivateFile>) {
          return to_json(f.keys);
        } else if constexpr (std::is_same_v<T, EEGCiphertextFile>) {
          Json doc = detail::start("eeg", "ciphertext", false);
          detail::write_context(doc, f.group, f.ring, f.block_length);
          doc["curve"] = f.curve.to_string();
          detail::write_layout(doc, f.layout);
          doc["digit_count"] = std::to_string(f.ct.digit_count);
          doc["C1"] = f.ct.C1.to_string();
          doc["C2"] = detail::blocks_array(f.ct.C2);
          return doc;
        } else {
          return to_json(f.ct, EGPublicKey{f.ct.C1, f.ct.C1, f.ct.C1, f.block_length}, f.layout);
        }
      },
      d);
}

}  // namespace grpkc
