#include <gtest/gtest.h>

#include "golden.hpp"
#include "grpkc/serialize.hpp"

using namespace grpkc;

namespace {

void expect_round_trip(const Json& doc) {
  const std::string text = dump_document(doc);
  EXPECT_EQ(dump_document(to_json(read_document(text))), text);
}

}  // namespace

TEST(Serialize, EEGDocumentsRoundTrip) {
  golden::IntegralDihedral z;
  const auto kp = eeg_keygen(z.curve, z.P, z.u(), z.n1, z.n2, z.t);
  expect_round_trip(to_json(kp.pub));
  expect_round_trip(to_json(kp));
  const auto ct = eeg_encrypt(kp.pub, encode_digits(golden::digits(z.message), z.t, z.G, z.R), z.n3);
  expect_round_trip(to_json(ct, kp.pub, MessageLayout{"digits", ", ", false}));

  const auto parsed = read_document(dump_document(to_json(kp)));
  const auto& f = std::get<EEGPrivateFile>(parsed);
  EXPECT_EQ(f.keys.pub.A, z.A());
  EXPECT_EQ(f.keys.priv.A_inv, z.A_inv());
  EXPECT_EQ(f.keys.priv.n1, z.n1);
}

TEST(Serialize, EGDocumentsRoundTrip) {
  golden::Symmetric s;
  const auto kp = eg_keygen(s.u(), s.v(), s.n1, s.n2, s.t);
  expect_round_trip(to_json(kp.pub));
  expect_round_trip(to_json(kp));
  const auto ct = eg_encrypt(kp.pub, MessageBlocks{{s.r()}, 120, 120}, s.k);
  const Json doc = to_json(ct, kp.pub, MessageLayout{});
  expect_round_trip(doc);
  const auto parsed = read_document(dump_document(doc));
  const auto& f = std::get<EGCiphertextFile>(parsed);
  EXPECT_EQ(f.ct.C2[0], s.C2());
  EXPECT_EQ(f.ct.C1, s.C1());
}

TEST(Serialize, LargeIntegersAreStrings) {
  golden::Symmetric s;
  const auto kp = eg_keygen(s.u(), s.v(), s.n1, s.n2, s.t);
  const auto ct = eg_encrypt(kp.pub, MessageBlocks{{s.r()}, 120, 120}, s.k);
  const std::string text = dump_document(to_json(ct, kp.pub, MessageLayout{}));
  EXPECT_NE(text.find("\"317747755613\""), std::string::npos);
  EXPECT_NE(text.find("\"-228001425142\""), std::string::npos);
}

TEST(Serialize, PrivateKeyHasWarningFirst) {
  golden::Army a;
  const auto kp = eeg_keygen(a.curve, a.P, a.u(), a.n1, a.n2, a.t, KeygenPolicy{1});
  const Json doc = to_json(kp);
  EXPECT_EQ(doc.begin().key(), "warning");
  EXPECT_EQ(to_json(kp.pub).begin().key(), "version");
  EXPECT_EQ(to_json(kp.pub)["version"], "grpkc/1");
}

TEST(Serialize, MalformedDocuments) {
  golden::Army a;
  const auto kp = eeg_keygen(a.curve, a.P, a.u(), a.n1, a.n2, a.t, KeygenPolicy{1});
  const auto ct = eeg_encrypt(kp.pub, encode_digits(alphabet_encode("ARMY"), a.t, a.G, a.R), a.n3);
  const std::string text = dump_document(to_json(ct, kp.pub, MessageLayout{"text", ",", true}));

  EXPECT_THROW(read_document(text.substr(0, text.size() / 2)), FormatError);
  EXPECT_THROW(read_document(""), FormatError);
  EXPECT_THROW(read_document("[]"), FormatError);

  auto mutate = [&](auto f) {
    Json doc = parse_document(text);
    f(doc);
    return dump_document(doc);
  };
  EXPECT_THROW(read_document(mutate([](Json& d) { d["version"] = "grpkc/2"; })), FormatError);
  EXPECT_THROW(read_document(mutate([](Json& d) { d.erase("C1"); })), FormatError);
  EXPECT_THROW(read_document(mutate([](Json& d) { d["C1"] = "(16)"; })), FormatError);
  EXPECT_THROW(read_document(mutate([](Json& d) { d["digit_count"] = 4; })), FormatError);
  EXPECT_THROW(read_document(mutate([](Json& d) { d["digit_count"] = "9"; })), FormatError);
  EXPECT_THROW(read_document(mutate([](Json& d) { d["group"] = "c:0"; })), FormatError);
  EXPECT_THROW(read_document(mutate([](Json& d) { d["block_length"] = "30"; })), FormatError);
  EXPECT_THROW(read_document(mutate([](Json& d) { d["C2"][0][0] = "29"; })), FormatError);
  EXPECT_THROW(read_document(mutate([](Json& d) { d["C2"][0][0] = "1e3"; })), FormatError);
  EXPECT_THROW(read_document(mutate([](Json& d) { d["C2"][0].erase(0); })), FormatError);
  EXPECT_THROW(read_document(mutate([](Json& d) { d["scheme"] = "rsa"; })), FormatError);
  EXPECT_THROW(read_document(mutate([](Json& d) { d["message"]["encoding"] = "utf8"; })), FormatError);
}
