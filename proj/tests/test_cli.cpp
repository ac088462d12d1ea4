#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "grpkc/serialize.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary);
  out << s;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("grpkc_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path path(const std::string& name) const { return dir_ / name; }

  Outcome run(const std::string& args, const std::string& env = "") const {
    const auto out = dir_ / "stdout.txt", err = dir_ / "stderr.txt";
    const std::string cmd = "cd '" + dir_.string() + "' && " + env + " '" + GRPKC_CLI_PATH + "' " + args + " > '" +
                            out.string() + "' 2> '" + err.string() + "'";
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
  }

  fs::path dir_;
};

const std::string kArmyKeygen =
    "keygen --scheme eeg --group c:29 --ring mod:29 --curve 29,4,20 --point 8,10 --unit \"trivial(g)\" --n1 4 "
    "--n2 3 --t 4 --out army";
const std::string kLowGuard = "GRPKC_MIN_UNIT_ORDER=1";

}  // namespace

TEST_F(Cli, ArmyEndToEnd) {
  ASSERT_EQ(run(kArmyKeygen, kLowGuard).code, 0);
  spit(path("msg.txt"), "ARMY\n");
  const auto enc = run("encrypt --pubkey army.pub.json --in msg.txt --text --ephemeral 3 --out ct.json");
  ASSERT_EQ(enc.code, 0) << enc.err;
  EXPECT_TRUE(enc.out.empty());
  const auto doc = grpkc::parse_document(slurp(path("ct.json")));
  EXPECT_EQ(doc["C1"], "(16,2)");
  std::vector<std::string> expect(29, "0");
  expect[3] = "2";
  expect[4] = "5";
  expect[5] = "10";
  expect[6] = "22";
  EXPECT_EQ(doc["C2"][0].get<std::vector<std::string>>(), expect);

  const auto dec = run("decrypt --privkey army.key.json --in ct.json");
  ASSERT_EQ(dec.code, 0) << dec.err;
  EXPECT_EQ(dec.out, "ARMY\n");
  ASSERT_EQ(run("decrypt --privkey army.key.json --in ct.json --out back.txt").code, 0);
  EXPECT_EQ(slurp(path("back.txt")), slurp(path("msg.txt")));
}

TEST_F(Cli, DefaultGuardRejectsSmallOrderUnit) {
  const auto r = run(kArmyKeygen);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("SmallOrderUnit"), std::string::npos);
  EXPECT_EQ(run(kArmyKeygen, "GRPKC_MIN_UNIT_ORDER=abc").code, 2);
}

TEST_F(Cli, ElGamalBinaryCyclic) {
  const auto kg = run(
      "keygen --scheme eg --group c:11 --ring mod:2 --unit \"1 + g + g^3\" "
      "--v \"1 + g + g^2 + g^4 + g^5 + g^6 + g^8 + g^9 + g^10\" --n1 400 --n2 33 --t 11 --out bc");
  ASSERT_EQ(kg.code, 0) << kg.err;
  spit(path("m.txt"), "1 1 1 1 0 1 0 0 0 0 1\n");
  ASSERT_EQ(run("encrypt --pubkey bc.pub.json --in m.txt --digits --ephemeral 19 --out ct.json").code, 0);
  const auto doc = grpkc::parse_document(slurp(path("ct.json")));
  EXPECT_EQ(doc["C1"].get<std::vector<std::string>>(),
            (std::vector<std::string>{"0", "0", "0", "0", "0", "1", "0", "1", "0", "1", "0"}));
  EXPECT_EQ(doc["C2"][0].get<std::vector<std::string>>(),
            (std::vector<std::string>{"1", "0", "1", "0", "1", "0", "1", "0", "0", "1", "1"}));
  const auto dec = run("decrypt --privkey bc.key.json --in ct.json");
  EXPECT_EQ(dec.out, "1 1 1 1 0 1 0 0 0 0 1\n");
}

TEST_F(Cli, ValidationErrors) {
  EXPECT_EQ(run("keygen --scheme eeg --group c:29 --ring mod:29 --point 8,10 --unit \"trivial(g)\" --out k").code, 2);
  EXPECT_EQ(run("keygen --scheme eg --group c:29 --ring mod:29 --unit \"trivial(g)\" --out k").code, 2);
  EXPECT_EQ(run("keygen --scheme xx --group c:29 --ring mod:29 --unit \"trivial(g)\" --out k").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST_F(Cli, FormatAndCryptoErrors) {
  ASSERT_EQ(run(kArmyKeygen, kLowGuard).code, 0);
  spit(path("msg.txt"), "ARMY\n");
  ASSERT_EQ(run("encrypt --pubkey army.pub.json --in msg.txt --text --ephemeral 3 --out ct.json").code, 0);
  const std::string ct = slurp(path("ct.json"));
  spit(path("trunc.json"), ct.substr(0, ct.size() / 2));
  EXPECT_EQ(run("decrypt --privkey army.key.json --in trunc.json").code, 4);
  EXPECT_EQ(run("decrypt --privkey army.pub.json --in ct.json").code, 4);
  EXPECT_EQ(run("encrypt --pubkey army.pub.json --in msg.txt --text --ephemeral 37").code, 3);
  spit(path("lower.txt"), "army\n");
  EXPECT_EQ(run("encrypt --pubkey army.pub.json --in lower.txt --text --ephemeral 3").code, 2);
  EXPECT_EQ(run("encrypt --pubkey army.pub.json --in msg.txt --ephemeral 3").code, 2);

  auto doc = grpkc::parse_document(ct);
  doc["C1"] = "O";
  spit(path("inf.json"), grpkc::dump_document(doc));
  EXPECT_EQ(run("decrypt --privkey army.key.json --in inf.json").code, 3);
}

TEST_F(Cli, SeedReuseRefused) {
  ASSERT_EQ(run(kArmyKeygen, kLowGuard).code, 0);
  spit(path("msg.txt"), "ATTACKATDAWN\n");
  ASSERT_EQ(run("encrypt --pubkey army.pub.json --in msg.txt --text --seed 7 --out a.json").code, 0);
  const auto again = run("encrypt --pubkey army.pub.json --in msg.txt --text --seed 7 --out b.json");
  EXPECT_EQ(again.code, 2);
  EXPECT_NE(again.err.find("--allow-seed-reuse"), std::string::npos);
  ASSERT_EQ(run("encrypt --pubkey army.pub.json --in msg.txt --text --seed 7 --allow-seed-reuse --out b.json").code,
            0);
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
  ASSERT_EQ(run("encrypt --pubkey army.pub.json --in msg.txt --text --seed 8 --out c.json").code, 0);
  EXPECT_EQ(run("decrypt --privkey army.key.json --in c.json").out, "ATTACKATDAWN\n");
}

TEST_F(Cli, UnitCommand) {
  const auto bass = run("unit --group s:5 --recipe \"bass(g=(1 4 2 5 3), i=3)\"");
  ASSERT_EQ(bass.code, 0) << bass.err;
  EXPECT_NE(bass.out.find("element: 1 - 2*(1 2 3 4 5) + 3*(1 3 5 2 4) - 2*(1 4 2 5 3) + (1 5 4 3 2)"),
            std::string::npos)
      << bass.out;
  EXPECT_NE(bass.out.find("order: infinite\n"), std::string::npos);
  const auto triv = run("unit --group s:5 --recipe \"trivial(e)\"");
  EXPECT_NE(triv.out.find("element: 1\n"), std::string::npos);
  EXPECT_NE(triv.out.find("order: 1\n"), std::string::npos);
  EXPECT_NE(run("unit --group c:11 --ring mod:2 --recipe \"1 + g + g^3\" --bound 100").out.find("order: > 100\n"),
            std::string::npos);
  const auto bc = run("unit --group c:11 --ring mod:2 --recipe \"1 + g + g^3\"");
  EXPECT_NE(bc.out.find("order: 1023\n"), std::string::npos);
  EXPECT_NE(bc.out.find("inverse: 1 + g + g^3 + g^6 + g^7 + g^8 + g^10\n"), std::string::npos);
  EXPECT_EQ(run("unit --group s:5 --recipe \"bass(g=(1 4 2 5 3))\"").code, 2);
  EXPECT_EQ(run("unit --group c:4 --recipe \"1 + g\"").code, 3);
}

TEST_F(Cli, AttackCommand) {
  const auto bsgs = run("attack --mode ecdlp-bsgs --curve 29,4,20 --point 8,10 --target 6,17");
  ASSERT_EQ(bsgs.code, 0) << bsgs.err;
  EXPECT_EQ(bsgs.out.substr(0, bsgs.out.find('\n')), "method,instance,exponent,operations,millis");
  EXPECT_NE(bsgs.out.find("ecdlp-bsgs,\"E(29,4,20)\",4,"), std::string::npos);
  const std::string grdlp = "attack --mode grdlp --group c:11 --ring mod:2 --base \"1 + g + g^3\" --target \"g^2 + g^4 + g^6 + g^7 + g^10\"";
  const auto found = run(grdlp + " --bound 1023");
  EXPECT_EQ(found.code, 0);
  EXPECT_NE(found.out.find(",400,400,"), std::string::npos);
  const auto miss = run(grdlp + " --bound 1");
  EXPECT_EQ(miss.code, 5);
  EXPECT_NE(miss.err.find("NotFound"), std::string::npos);
  EXPECT_EQ(run("attack --mode ecdlp-brute --curve 29,4,20 --point 8,10 --target 6,17 --bound 100").code, 0);
  EXPECT_EQ(run("attack --mode nope --target 1").code, 2);
}

TEST_F(Cli, InspectCommand) {
  ASSERT_EQ(run(kArmyKeygen, kLowGuard).code, 0);
  const auto r = run("inspect army.key.json");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("eeg private key"), std::string::npos);
  EXPECT_NE(r.out.find("A = g^3"), std::string::npos);
  EXPECT_NE(r.out.find("A_inv = g^26"), std::string::npos);
  spit(path("junk.json"), "{");
  EXPECT_EQ(run("inspect junk.json").code, 4);
}

TEST_F(Cli, DeterministicUnderSeed) {
  const std::string kg =
      "keygen --scheme eg --group s:3 --ring mod:101 --unit \"1 + 2*(1 2)\" --v \"3 + (1 2 3)\" --t 6 --seed 99 "
      "--out k";
  spit(path("m.txt"), "1,2,3,4,5,6,7\n");
  std::string first[3];
  for (int round = 0; round < 2; ++round) {
    fs::remove(path("k.pub.json.seeds"));
    ASSERT_EQ(run(kg, "GRPKC_MIN_UNIT_ORDER=2").code, 0);
    ASSERT_EQ(run("encrypt --pubkey k.pub.json --in m.txt --digits --seed 5 --out ct.json").code, 0);
    const std::string files[3] = {slurp(path("k.pub.json")), slurp(path("k.key.json")), slurp(path("ct.json"))};
    for (int i = 0; i < 3; ++i) {
      if (round == 0)
        first[i] = files[i];
      else
        EXPECT_EQ(first[i], files[i]);
    }
  }
  EXPECT_EQ(run("decrypt --privkey k.key.json --in ct.json").out, "1,2,3,4,5,6,7\n");
}
