// grpkc: command-line front end for the group ring cryptosystems.

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "grpkc/grpkc.hpp"

namespace fs = std::filesystem;
using namespace grpkc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitCrypto = 3;
constexpr int kExitFormat = 4;
constexpr int kExitExhausted = 5;

int exit_code(ErrorClass c) {
  switch (c) {
    case ErrorClass::validation:
      return kExitValidation;
    case ErrorClass::crypto:
      return kExitCrypto;
    case ErrorClass::format:
      return kExitFormat;
    case ErrorClass::exhausted:
      return kExitExhausted;
  }
  return kExitValidation;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParameterError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParameterError("cannot write '" + path + "'");
  out << content;
  if (!out) throw ParameterError("failed writing '" + path + "'");
}

void emit(const std::optional<std::string>& path, const std::string& content) {
  if (path) {
    write_file(*path, content);
  } else {
    std::cout << content;
    std::cout.flush();
  }
}

KeygenPolicy policy_from_env() {
  KeygenPolicy policy;
  if (const char* env = std::getenv("GRPKC_MIN_UNIT_ORDER")) {
    const std::string s(env);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
      throw ParameterError("GRPKC_MIN_UNIT_ORDER must be a non-negative integer");
    policy.min_unit_order = v;
  }
  return policy;
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Records (key fingerprint, seed) pairs next to the public key so that the
// same seed never yields the same ephemeral twice for one key.
void claim_seed(const std::string& pubkey_path, const std::string& pubkey_text, std::uint64_t seed, bool allow_reuse) {
  char fp[17];
  std::snprintf(fp, sizeof fp, "%016llx", static_cast<unsigned long long>(fnv1a(pubkey_text)));
  const std::string entry = std::string(fp) + " " + std::to_string(seed);
  const std::string ledger = pubkey_path + ".seeds";
  if (std::ifstream in(ledger); in) {
    for (std::string line; std::getline(in, line);) {
      if (line == entry) {
        if (allow_reuse) return;
        throw ParameterError("seed " + std::to_string(seed) +
                             " was already used with this key (pass --allow-seed-reuse to override)");
      }
    }
  }
  std::ofstream out(ledger, std::ios::app);
  if (!out) throw ParameterError("cannot update seed ledger '" + ledger + "'");
  out << entry << '\n';
}

// ---- keygen ----------------------------------------------------------------

struct KeygenArgs {
  std::string scheme;
  std::string group;
  std::string ring;
  std::optional<std::string> curve;
  std::optional<std::string> point;
  std::optional<std::string> unit;
  std::optional<std::string> v;
  std::optional<std::uint64_t> n1;
  std::optional<std::uint64_t> n2;
  std::size_t t = 0;
  std::optional<std::uint64_t> seed;
  std::string out;
};

int cmd_keygen(const KeygenArgs& a) {
  const KeygenPolicy policy = policy_from_env();
  const Group group(GroupSpec::parse(a.group));
  const RingSpec ring = RingSpec::parse(a.ring);
  if (!a.unit) throw ParameterError("--unit is required");
  const GroupRingElement u = build_unit(*a.unit, group, ring);
  const std::size_t t = a.t == 0 ? group.order() : a.t;
  DeterministicRng rng(a.seed ? *a.seed : std::random_device{}());
  const std::uint64_t exp_bound = default_ephemeral_bound(ring);

  Json pub_doc;
  Json key_doc;
  if (a.scheme == "eeg") {
    if (!a.curve) throw ParameterError("--curve is required for --scheme eeg");
    if (!a.point) throw ParameterError("--point is required for --scheme eeg");
    if (a.v) throw ParameterError("--v applies only to --scheme eg");
    const CurveParams params = CurveParams::parse(*a.curve);
    const EllipticCurve curve(params);
    const CurvePoint P = CurvePoint::parse(*a.point);
    curve.require(P);
    std::uint64_t n1 = 0;
    if (a.n1) {
      n1 = *a.n1;
    } else {
      const std::uint64_t ord = curve.point_order(P);
      if (ord <= t + 1) throw SmallOrderPoint("ord(P) = " + std::to_string(ord) + " is too small for t");
      do n1 = rng.uniform(1, ord - 1);
      while (curve.point_order(curve.mul(n1, P)) <= t);
    }
    const std::uint64_t n2 = a.n2 ? *a.n2 : rng.uniform(1, exp_bound);
    const EEGKeyPair kp = eeg_keygen(params, P, u, n1, n2, t, policy);
    pub_doc = to_json(kp.pub);
    key_doc = to_json(kp);
  } else if (a.scheme == "eg") {
    if (a.curve || a.point) throw ParameterError("--curve and --point apply only to --scheme eeg");
    if (!a.v) throw ParameterError("--v is required for --scheme eg");
    const GroupRingElement v = build_unit(*a.v, group, ring);
    const std::uint64_t n1 = a.n1 ? *a.n1 : rng.uniform(1, exp_bound);
    const std::uint64_t n2 = a.n2 ? *a.n2 : rng.uniform(1, exp_bound);
    const EGKeyPair kp = eg_keygen(u, v, n1, n2, t, policy);
    pub_doc = to_json(kp.pub);
    key_doc = to_json(kp);
  } else {
    throw ParameterError("--scheme must be eeg or eg");
  }
  write_file(a.out + ".pub.json", dump_document(pub_doc));
  write_file(a.out + ".key.json", dump_document(key_doc));
  return kExitOk;
}

// ---- encrypt / decrypt -----------------------------------------------------

struct EncryptArgs {
  std::string pubkey;
  std::string in;
  bool text = false;
  bool digits = false;
  std::optional<std::uint64_t> ephemeral;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> max_ephemeral;
  bool allow_seed_reuse = false;
  std::optional<std::string> out;
};

int cmd_encrypt(const EncryptArgs& a) {
  if (a.text == a.digits) throw ParameterError("pass exactly one of --text or --digits");
  if (a.ephemeral.has_value() == a.seed.has_value()) throw ParameterError("pass exactly one of --ephemeral or --seed");
  const std::string key_text = read_file(a.pubkey);
  const Document doc = read_document(key_text);
  const MessageFile mf = parse_message(read_file(a.in), a.text);

  std::string out;
  if (const auto* f = std::get_if<EEGPublicFile>(&doc)) {
    if (a.max_ephemeral) throw ParameterError("--max-ephemeral applies only to --scheme eg keys");
    const MessageBlocks m = encode_digits(mf.digits, f->pub.block_length, f->pub.group(), f->pub.ring());
    std::uint64_t n3 = 0;
    if (a.ephemeral) {
      n3 = *a.ephemeral;
    } else {
      claim_seed(a.pubkey, key_text, *a.seed, a.allow_seed_reuse);
      DeterministicRng rng(*a.seed);
      n3 = draw_eeg_ephemeral(f->pub, rng);
    }
    out = dump_document(to_json(eeg_encrypt(f->pub, m, n3), f->pub, mf.layout));
  } else if (const auto* f = std::get_if<EGPublicFile>(&doc)) {
    const MessageBlocks m = encode_digits(mf.digits, f->pub.block_length, f->pub.group(), f->pub.ring());
    std::uint64_t k = 0;
    if (a.ephemeral) {
      k = *a.ephemeral;
    } else {
      claim_seed(a.pubkey, key_text, *a.seed, a.allow_seed_reuse);
      DeterministicRng rng(*a.seed);
      k = draw_eg_ephemeral(rng, a.max_ephemeral ? *a.max_ephemeral : default_ephemeral_bound(f->pub.ring()));
    }
    out = dump_document(to_json(eg_encrypt(f->pub, m, k), f->pub, mf.layout));
  } else {
    throw FormatError("'" + a.pubkey + "' is not a public key file");
  }
  emit(a.out, out);
  return kExitOk;
}

int cmd_decrypt(const std::string& privkey, const std::string& in, const std::optional<std::string>& out) {
  const Document key = read_document(read_file(privkey));
  const Document ct = read_document(read_file(in));
  std::string message;
  if (const auto* k = std::get_if<EEGPrivateFile>(&key)) {
    const auto* c = std::get_if<EEGCiphertextFile>(&ct);
    if (!c) throw FormatError("'" + in + "' is not an eeg ciphertext");
    const EEGPublicKey& pub = k->keys.pub;
    if (!(c->curve == pub.curve) || !(c->group == pub.group()) || !(c->ring == pub.ring()) ||
        c->block_length != pub.block_length)
      throw FormatError("ciphertext parameters do not match the key");
    message = render_message(decode_digits(eeg_decrypt(k->keys.priv, pub, c->ct)), c->layout);
  } else if (const auto* k = std::get_if<EGPrivateFile>(&key)) {
    const auto* c = std::get_if<EGCiphertextFile>(&ct);
    if (!c) throw FormatError("'" + in + "' is not an eg ciphertext");
    const EGPublicKey& pub = k->keys.pub;
    if (!(c->ct.C1.group() == pub.group()) || !(c->ct.C1.ring() == pub.ring()) ||
        c->block_length != pub.block_length)
      throw FormatError("ciphertext parameters do not match the key");
    message = render_message(decode_digits(eg_decrypt(k->keys.priv, pub, c->ct)), c->layout);
  } else {
    throw FormatError("'" + privkey + "' is not a private key file");
  }
  emit(out, message);
  return kExitOk;
}

// ---- unit ------------------------------------------------------------------

int cmd_unit(const std::string& group_spec, const std::string& ring_spec, const std::string& recipe,
             std::uint64_t bound) {
  const Group group(GroupSpec::parse(group_spec));
  const RingSpec ring = RingSpec::parse(ring_spec);
  const GroupRingElement u = build_unit(recipe, group, ring);
  const GroupRingElement inv = gr_inverse(u);
  const auto order = unit_order(u, bound);
  std::cout << "element: " << to_term_string(u) << "\n";
  std::cout << "inverse: " << to_term_string(inv) << "\n";
  // over Z a torsion unit has order dividing lcm(2, exp G)
  const bool infinite =
      !ring.is_modular() && !gr_pow(u, std::lcm(std::uint64_t{2}, group.exponent())).is_one();
  if (order)
    std::cout << "order: " << *order << "\n";
  else if (infinite)
    std::cout << "order: infinite\n";
  else
    std::cout << "order: > " << bound << "\n";
  return kExitOk;
}

// ---- attack ----------------------------------------------------------------

struct AttackArgs {
  std::string mode;
  std::uint64_t bound = 0;
  std::optional<std::string> group;
  std::string ring = "int";
  std::optional<std::string> base;
  std::optional<std::string> target;
  std::optional<std::string> curve;
  std::optional<std::string> point;
  std::uint64_t order = 0;
};

int cmd_attack(const AttackArgs& a) {
  if (!a.target) throw ParameterError("--target is required");
  DlogResult result;
  std::string instance;
  const auto start = std::chrono::steady_clock::now();
  if (a.mode == "grdlp") {
    if (!a.group || !a.base) throw ParameterError("grdlp needs --group and --base");
    if (a.bound == 0) throw ParameterError("grdlp needs --bound >= 1");
    const Group group(GroupSpec::parse(*a.group));
    const RingSpec ring = RingSpec::parse(a.ring);
    const GroupRingElement u = build_unit(*a.base, group, ring);
    const GroupRingElement v = build_unit(*a.target, group, ring);
    instance = group.spec().to_string() + "/" + ring.to_string();
    result = brute_grdlp(u, v, a.bound);
  } else if (a.mode == "ecdlp-brute" || a.mode == "ecdlp-bsgs") {
    if (!a.curve || !a.point) throw ParameterError(a.mode + " needs --curve and --point");
    const EllipticCurve curve(CurveParams::parse(*a.curve));
    const CurvePoint P = CurvePoint::parse(*a.point);
    const CurvePoint Q = CurvePoint::parse(*a.target);
    instance = "E(" + curve.params().to_string() + ")";
    if (a.mode == "ecdlp-brute") {
      if (a.bound == 0) throw ParameterError("ecdlp-brute needs --bound >= 1");
      result = brute_ecdlp(curve, P, Q, a.bound);
    } else {
      result = bsgs_ecdlp(curve, P, Q, a.order != 0 ? a.order : a.bound);
    }
  } else {
    throw ParameterError("--mode must be grdlp, ecdlp-brute or ecdlp-bsgs");
  }
  const double millis =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  char ms[32];
  std::snprintf(ms, sizeof ms, "%.3f", millis);
  std::cout << "method,instance,exponent,operations,millis\n";
  std::cout << a.mode << ",\"" << instance << "\"," << (result.exponent ? std::to_string(*result.exponent) : "")
            << "," << result.operations << "," << ms << "\n";
  if (!result.found()) {
    std::cerr << "NotFound: no exponent within the search bound\n";
    return kExitExhausted;
  }
  return kExitOk;
}

// ---- inspect ---------------------------------------------------------------

void show_element(const char* name, const GroupRingElement& e) {
  std::cout << "  " << name << " = " << to_term_string(e) << "\n";
}

void show_context(const char* scheme, const char* kind, const Group& g, const RingSpec& r, std::size_t t) {
  std::cout << scheme << " " << kind << "\n";
  std::cout << "  group = " << g.spec().to_string() << " (order " << g.order() << ")\n";
  std::cout << "  ring = " << r.to_string() << "\n";
  std::cout << "  block length = " << t << "\n";
}

int cmd_inspect(const std::string& path) {
  const Document doc = read_document(read_file(path));
  std::visit(
      [](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, EEGPublicFile> || std::is_same_v<T, EEGPrivateFile>) {
          const EEGPublicKey* pub = nullptr;
          if constexpr (std::is_same_v<T, EEGPublicFile>) {
            pub = &f.pub;
            show_context("eeg", "public key", pub->group(), pub->ring(), pub->block_length);
          } else {
            pub = &f.keys.pub;
            show_context("eeg", "private key", pub->group(), pub->ring(), pub->block_length);
          }
          std::cout << "  curve = y^2 = x^3 + " << pub->curve.R << "x + " << pub->curve.S << " mod " << pub->curve.p
                    << "\n";
          std::cout << "  P = " << pub->P.to_string() << "\n  Q = " << pub->Q.to_string() << "\n";
          show_element("A", pub->A);
          if constexpr (std::is_same_v<T, EEGPrivateFile>) {
            std::cout << "  n1 = " << f.keys.priv.n1 << "\n";
            show_element("A_inv", f.keys.priv.A_inv);
          }
        } else if constexpr (std::is_same_v<T, EGPublicFile> || std::is_same_v<T, EGPrivateFile>) {
          const EGPublicKey* pub = nullptr;
          if constexpr (std::is_same_v<T, EGPublicFile>) {
            pub = &f.pub;
            show_context("eg", "public key", pub->group(), pub->ring(), pub->block_length);
          } else {
            pub = &f.keys.pub;
            show_context("eg", "private key", pub->group(), pub->ring(), pub->block_length);
          }
          show_element("A1", pub->A1);
          show_element("A2", pub->A2);
          show_element("v", pub->v);
          if constexpr (std::is_same_v<T, EGPrivateFile>) {
            show_element("A1_inv", f.keys.priv.A1_inv);
            std::cout << "  n2 = " << f.keys.priv.n2 << "\n";
          }
        } else if constexpr (std::is_same_v<T, EEGCiphertextFile>) {
          show_context("eeg", "ciphertext", f.group, f.ring, f.block_length);
          std::cout << "  curve = " << f.curve.to_string() << "\n";
          std::cout << "  message = " << f.ct.digit_count << " " << f.layout.encoding << " digits\n";
          std::cout << "  C1 = " << f.ct.C1.to_string() << "\n";
          for (std::size_t i = 0; i < f.ct.C2.size(); ++i)
            std::cout << "  C2[" << i << "] = " << to_term_string(f.ct.C2[i]) << "\n";
        } else {
          show_context("eg", "ciphertext", f.ct.C1.group(), f.ct.C1.ring(), f.block_length);
          std::cout << "  message = " << f.ct.digit_count << " " << f.layout.encoding << " digits\n";
          show_element("C1", f.ct.C1);
          for (std::size_t i = 0; i < f.ct.C2.size(); ++i)
            std::cout << "  C2[" << i << "] = " << to_term_string(f.ct.C2[i]) << "\n";
        }
      },
      doc);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Group ring public-key cryptosystems"};
  app.require_subcommand(1);

  KeygenArgs kg;
  auto* keygen = app.add_subcommand("keygen", "Generate a key pair (writes PREFIX.pub.json and PREFIX.key.json)");
  keygen->add_option("--scheme", kg.scheme, "eeg or eg")->required();
  keygen->add_option("--group", kg.group, "c:N, d:2N or s:N")->required();
  keygen->add_option("--ring", kg.ring, "int or mod:M")->required();
  keygen->add_option("--curve", kg.curve, "p,R,S (eeg)");
  keygen->add_option("--point", kg.point, "base point x,y (eeg)");
  keygen->add_option("--unit", kg.unit, "secret unit recipe");
  keygen->add_option("--v", kg.v, "public unit recipe (eg)");
  keygen->add_option("--n1", kg.n1, "secret point exponent (eeg) or exponent of u (eg)");
  keygen->add_option("--n2", kg.n2, "exponent of the unit (eeg) or of v (eg)");
  keygen->add_option("--t", kg.t, "block length (default |G|)");
  keygen->add_option("--seed", kg.seed, "seed for exponents not given explicitly");
  keygen->add_option("--out", kg.out, "output prefix")->required();

  EncryptArgs en;
  auto* encrypt = app.add_subcommand("encrypt", "Encrypt a message file");
  encrypt->add_option("--pubkey", en.pubkey, "public key file")->required();
  encrypt->add_option("--in", en.in, "message file")->required();
  encrypt->add_flag("--text", en.text, "message is A-Z text");
  encrypt->add_flag("--digits", en.digits, "message is a list of integers");
  encrypt->add_option("--ephemeral", en.ephemeral, "explicit ephemeral exponent");
  encrypt->add_option("--seed", en.seed, "derive the ephemeral from a seed");
  encrypt->add_option("--max-ephemeral", en.max_ephemeral, "upper end K of the eg ephemeral range");
  encrypt->add_flag("--allow-seed-reuse", en.allow_seed_reuse, "permit a seed already used with this key");
  encrypt->add_option("--out", en.out, "ciphertext file (default stdout)");

  std::string privkey;
  std::string ct_in;
  std::optional<std::string> msg_out;
  auto* decrypt = app.add_subcommand("decrypt", "Decrypt a ciphertext file");
  decrypt->add_option("--privkey", privkey, "private key file")->required();
  decrypt->add_option("--in", ct_in, "ciphertext file")->required();
  decrypt->add_option("--out", msg_out, "message file (default stdout)");

  std::string ugroup;
  std::string uring = "int";
  std::string urecipe;
  std::uint64_t ubound = kDefaultOrderBound;
  auto* unit = app.add_subcommand("unit", "Build a unit and print it with its inverse and order");
  unit->add_option("--group", ugroup, "c:N, d:2N or s:N")->required();
  unit->add_option("--ring", uring, "int or mod:M")->capture_default_str();
  unit->add_option("--recipe", urecipe, "trivial(..), bass(..), bicyclic(..), product or element")->required();
  unit->add_option("--bound", ubound, "order search bound")->capture_default_str();

  AttackArgs at;
  auto* attack = app.add_subcommand("attack", "Solve a small discrete logarithm and report its cost");
  attack->add_option("--mode", at.mode, "grdlp, ecdlp-brute or ecdlp-bsgs")->required();
  attack->add_option("--bound", at.bound, "largest exponent tried (bsgs: group order N)");
  attack->add_option("--group", at.group, "group for grdlp");
  attack->add_option("--ring", at.ring, "ring for grdlp")->capture_default_str();
  attack->add_option("--base", at.base, "base unit (grdlp)");
  attack->add_option("--target", at.target, "target element or point");
  attack->add_option("--curve", at.curve, "p,R,S (ecdlp)");
  attack->add_option("--point", at.point, "base point x,y (ecdlp)");
  attack->add_option("--order", at.order, "order hint N for bsgs (default #E)");

  std::string inspect_in;
  auto* inspect = app.add_subcommand("inspect", "Pretty-print a key or ciphertext file");
  inspect->add_option("--in,file", inspect_in, "key or ciphertext file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*keygen) return cmd_keygen(kg);
    if (*encrypt) return cmd_encrypt(en);
    if (*decrypt) return cmd_decrypt(privkey, ct_in, msg_out);
    if (*unit) return cmd_unit(ugroup, uring, urecipe, ubound);
    if (*attack) return cmd_attack(at);
    if (*inspect) return cmd_inspect(inspect_in);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code(e.error_class());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}
