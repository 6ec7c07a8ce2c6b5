#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cayley/certificate.hpp"
#include "cayley/cli.hpp"

using namespace cayley;
using nlohmann::json;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli_dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture_path(const std::string& name) { return std::string(CAYLEY_FIXTURE_DIR) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& content) {
  std::string path = std::string("cli_tmp_") + name;
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  f << content;
  return path;
}

}  // namespace

TEST_CASE("hash verb reproduces the worked example") {
  auto res = run({"hash", "--field", "p=7919", "--alpha", "5698", "--beta", "6497", "--msg-file",
                  fixture_path("example1_z.rle")});
  REQUIRE(res.code == 0);
  json j = json::parse(res.out);
  json expect = json::array({json::array({json::array({4812}), json::array({5537})}),
                             json::array({json::array({4987}), json::array({1690})})});
  CHECK(j["matrix"] == expect);
  CHECK(j["pretty"] == "(4812 5537; 4987 1690)");
}

TEST_CASE("hash of the empty message is the identity") {
  auto res = run({"hash", "--field", "p=7919", "--alpha", "5698", "--beta", "6497", "--msg", ""});
  REQUIRE(res.code == 0);
  json j = json::parse(res.out);
  CHECK(j["pretty"] == "(1 0; 0 1)");
}

TEST_CASE("determinism: identical runs produce identical bytes") {
  std::vector<std::string> args{"collide-diag", "--field", "p=7919", "--alpha", "5698", "--beta",
                                "6497",         "--msg-file", fixture_path("example1_z.rle"),
                                "--m1",         "18",     "--n1",  "30",      "--m2", "35",
                                "--n2",         "33"};
  auto r1 = run(args);
  auto r2 = run(args);
  REQUIRE(r1.code == 0);
  CHECK(r1.out == r2.out);
}

TEST_CASE("collide-diag emits a verifiable certificate") {
  auto res = run({"collide-diag", "--field", "p=7919", "--alpha", "5698", "--beta", "6497",
                  "--msg-file", fixture_path("example1_z.rle"), "--m1", "18", "--n1", "30", "--m2",
                  "35", "--n2", "33"});
  REQUIRE(res.code == 0);
  json j = json::parse(res.out);
  CHECK(j["kind"] == "diagonal-pair");
  CHECK(j["verified"] == true);
  CHECK(j["details"]["mt1"] == 6208);
  CHECK(j["details"]["nt1"] == 744);
  CHECK(j["details"]["mt2"] == 6191);
  CHECK(j["details"]["nt2"] == 180);
  CHECK(j["details"]["zero_run"] == 6226);

  std::string path = temp_file("cert.json", res.out);
  auto v = run({"verify", path});
  CHECK(v.code == 0);
  json vj = json::parse(v.out);
  CHECK(vj["verified"] == true);

  SUBCASE("tampering flips the exit code to 3") {
    json tampered = json::parse(res.out);
    std::string z1 = tampered["z1_rle"].get<std::string>();
    // flip one bit: prepend a 1-run to z1
    tampered["z1_rle"] = std::string("1^{1}") + z1;
    std::string bad = temp_file("cert_bad.json", tampered.dump(2));
    auto vb = run({"verify", bad});
    CHECK(vb.code == 3);
    json vbj = json::parse(vb.out);
    CHECK(vbj["verified"] == false);
    std::remove(bad.c_str());
  }
  std::remove(path.c_str());
}

TEST_CASE("usage errors exit 2 with a JSON error object") {
  auto res = run({"hash", "--field", "p=7919"});  // missing alpha/beta message
  CHECK(res.code == 2);
  json j = json::parse(res.out);
  CHECK(j.contains("error"));

  auto unknown = run({"frobnicate"});
  CHECK(unknown.code == 2);
}

TEST_CASE("domain errors exit 1") {
  auto res = run({"hash", "--field", "p=6", "--alpha", "1", "--beta", "1", "--msg", ""});
  CHECK(res.code == 1);
  json j = json::parse(res.out);
  CHECK(j["error"] == "InvalidArgument");
}

TEST_CASE("tz verbs") {
  auto res = run({"tz-period", "--field", "p=3;k=12;mod=[1,1,1,2,2,0,1,0,0,0,2,0,1]"});
  REQUIRE(res.code == 0);
  json j = json::parse(res.out);
  CHECK(j["period"] == 531440);
  CHECK(j["divides_bound"] == true);

  auto col = run({"tz-collide", "--field", "p=3;k=2;mod=[1,0,1]", "--bound", "200"});
  REQUIRE(col.code == 0);
  json cj = json::parse(col.out);
  REQUIRE(cj["pair"].is_object());
  std::string cert_text = cj["certificate"].dump();
  CollisionCertificate cert = certificate_from_json(cert_text);
  CHECK(reverify(cert));
}

TEST_CASE("tz-hash matches the generator matrix") {
  auto res = run({"tz-hash", "--field", "p=7;k=3;mod=[1,2,0,1]", "--msg", "0^{1}"});
  REQUIRE(res.code == 0);
  json j = json::parse(res.out);
  // A_0 = (x 1; 1 0)
  json expect = json::array({json::array({json::array({0, 1, 0}), json::array({1})}),
                             json::array({json::array({1}), json::array({0})})});
  // entries are padded to k coefficients
  CHECK(j["matrix"][0][0] == json::array({0, 1, 0}));
  CHECK(j["matrix"][1][1] == json::array({0, 0, 0}));
}

TEST_CASE("malice verb lists weak fields") {
  auto res = run({"malice", "--p", "3", "--d", "1", "--order-bound", "10", "--scan-limit", "3"});
  REQUIRE(res.code == 0);
  json j = json::parse(res.out);
  REQUIRE(j["weak_fields"].is_array());
  REQUIRE(!j["weak_fields"].empty());
  CHECK(j["weak_fields"][0]["N"] == 2);
}

TEST_CASE("search-delta reports witness or exhaustion") {
  auto res = run({"search-delta", "--field", "p=11", "--alpha", "3", "--beta", "4", "--kind", "diag",
                  "--delta", "11"});
  REQUIRE(res.code == 0);
  json j = json::parse(res.out);
  CHECK(j["exhausted"] == false);
  CHECK(j["witness"].is_object());

  auto ex = run({"search-delta", "--field", "p=7919", "--alpha", "5698", "--beta", "6497", "--kind",
                 "diag", "--delta", "10"});
  REQUIRE(ex.code == 0);
  json je = json::parse(ex.out);
  CHECK(je["exhausted"] == true);
  CHECK(je["witness"].is_null());
}

TEST_CASE("gamma and double-ext verbs on the F_32 example") {
  std::string mf = fixture_path("example3_matrix.json");
  auto res = run({"gamma", "--field", "p=2;k=5;mod=[1,0,1,0,0,1]", "--alpha", "z^3+1", "--beta",
                  "z^3+z^2+1", "--matrix-file", mf});
  REQUIRE(res.code == 0);
  json j = json::parse(res.out);
  CHECK(j["gamma"] == json::array({1, 1, 0, 0, 1}));
  CHECK(j["frobenius_fixed"] == false);

  auto de = run({"double-ext", "--field", "p=2;k=5;mod=[1,0,1,0,0,1]", "--alpha", "z^3+1", "--beta",
                 "z^3+z^2+1", "--matrix-file", mf});
  REQUIRE(de.code == 0);
  json dj = json::parse(de.out);
  CHECK(dj["solution"].is_null());
  CHECK(dj["q"]["q3"] == json::array({0, 1, 1, 0, 0}));
  CHECK(dj["q"]["q0"] == json::array({0, 1, 1, 0, 1}));
}

TEST_CASE("euclid verb") {
  auto res = run({"euclid", "--field", "p=7919", "--msg", "0^{3}"});
  REQUIRE(res.code == 0);
  json j = json::parse(res.out);
  CHECK(j["word_rle"] == "0^{3}");
  CHECK(j["bits"] == 3);
}

TEST_CASE("combine verb") {
  // items whose hashes are upper triangular: plain 0-runs
  std::string items = temp_file("items.json", R"([{"z_rle": "0^{5}"}, {"z_rle": "0^{7}"}])");
  auto res = run({"combine", "--field", "p=239", "--alpha", "7", "--beta", "11", "--items", items});
  REQUIRE(res.code == 0);
  json j = json::parse(res.out);
  CHECK(j["kind"] == "identity-word");
  CHECK(j["verified"] == true);
  std::string path = temp_file("combine_cert.json", res.out);
  auto v = run({"verify", path});
  CHECK(v.code == 0);
  std::remove(path.c_str());
  std::remove(items.c_str());
}
