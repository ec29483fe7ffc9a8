#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "generators.hpp"
#include "qrc/decider.hpp"
#include "qrc/parse.hpp"
#include "qrc/serialize.hpp"

using namespace qrc;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path temp_file(const std::string& name, const std::string& content) {
  fs::path dir = fs::temp_directory_path() / "qrc_test_cli";
  fs::create_directories(dir);
  fs::path p = dir / name;
  std::ofstream(p) << content;
  return p;
}

const char* kCorpus =
    "sig: constants c0 c1; relations S/1 R/2;\n"
    "% mixed verdicts\n"
    "S(c0) & R(c0,c1) |- R(c0,c1)\n"
    "T |- <>T\n"
    "<><>S(c0) |- <>S(c0)\n"
    "A x . <>S(x) |- <>A x . S(x)\n"
    "<>A x . S(x) |- A x . <>S(x)\n"
    "A x . A y . R(x,y) |- A y . A x . R(x,y)\n"
    "S(x) |- S(c0)\n";

}  // namespace

TEST_CASE("decide reports both verdicts with exit 0") {
  auto r = run({"decide", "-e", "S(c) |- S(c)", "-e", "T |- <>T"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("S(c) |- S(c): derivable") != std::string::npos);
  CHECK(r.out.find("T |- <>T: underivable") != std::string::npos);
  CHECK(r.out.find("  Id  S(c) |- S(c)") != std::string::npos);
}

TEST_CASE("parse errors carry file, line and column and exit 1") {
  auto bad = temp_file("bad.txt", "sig: constants c; relations S/1;\n\nS(c) |- S(c\n");
  auto r = run({"decide", bad.string()});
  CHECK(r.code == cli::kUsage);
  CHECK(r.err.find(bad.string() + ":3:12:") != std::string::npos);

  auto arity = temp_file("arity.txt", "sig: relations S/1;\nS(x,y) |- T\n");
  r = run({"decide", arity.string()});
  CHECK(r.code == cli::kUsage);
  CHECK(r.err.find(":2:1: relation 'S' has arity 1") != std::string::npos);

  CHECK(run({"decide"}).code == cli::kUsage);
  CHECK(run({"frobnicate"}).code == cli::kUsage);
  CHECK(run({"--format", "xml", "decide", "-e", "T |- T"}).code == cli::kUsage);
  CHECK(run({"decide", "/nonexistent/file"}).code == cli::kUsage);
}

TEST_CASE("help exits 0") {
  auto r = run({"--help"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("decide") != std::string::npos);
}

TEST_CASE("budget exhaustion is undecided with exit 3") {
  auto r = run({"--budget", "1", "--max-worlds", "1", "--max-domain", "1", "decide", "-e",
                "A x . S(x) & T |- A y . S(y)"});
  CHECK(r.code == cli::kUndecided);
  CHECK(r.out.find("undecided at budget 1") != std::string::npos);
}

TEST_CASE("global options may follow the subcommand") {
  auto a = run({"--format", "json-lines", "decide", "-e", "T |- T"});
  auto b = run({"decide", "-e", "T |- T", "--format", "json-lines"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(Json::parse(a.out)["status"] == "derivable");
}

TEST_CASE("emitted certificates re-validate through check-*") {
  auto corpus = temp_file("corpus.txt", kCorpus);
  auto r = run({"--format", "json-lines", "decide", corpus.string()});
  REQUIRE(r.code == cli::kOk);
  auto certs = temp_file("certs.jsonl", r.out);

  int lines = 0, derivable = 0;
  std::istringstream in(r.out);
  for (std::string line; std::getline(in, line); ++lines) {
    Json j = Json::parse(line);
    CHECK(j["schema_version"] == kSchemaVersion);
    CHECK(j["certificate"].is_object());
    if (j["status"] == "derivable") ++derivable;
  }
  CHECK(lines == 7);
  CHECK(derivable == 4);

  auto d = run({"check-derivation", certs.string()});
  CHECK(d.code == cli::kOk);
  auto m = run({"check-model", certs.string()});
  CHECK(m.code == cli::kOk);
  CHECK(std::count(d.out.begin(), d.out.end(), '\n') == 4);
  CHECK(std::count(m.out.begin(), m.out.end(), '\n') == 3);

  // A bare certificate body is also accepted.
  Json first = Json::parse(r.out.substr(0, r.out.find('\n')));
  auto bare = temp_file("bare.json", first["certificate"]["derivation"].dump(2));
  CHECK(run({"--sig", corpus.string(), "check-derivation", bare.string()}).code == cli::kOk);
}

TEST_CASE("tampered certificates fail with exit 2") {
  auto r = run({"--format", "json-lines", "decide", "-e", "S(c) & R(c,c) |- S(c)", "-e",
                "T |- <>T"});
  REQUIRE(r.code == cli::kOk);
  std::istringstream in(r.out);
  std::string l1, l2;
  std::getline(in, l1);
  std::getline(in, l2);

  Json d = Json::parse(l1);
  d["certificate"]["derivation"]["conclusion"] = "S(c) & R(c,c) |- R(c,c)";
  auto f1 = temp_file("bad_derivation.jsonl", d.dump() + "\n");
  CHECK(run({"check-derivation", f1.string()}).code == cli::kValidation);

  Json m = Json::parse(l2);
  m["certificate"]["countermodel"]["edges"] = Json::array({Json::array({0, 0})});
  auto f2 = temp_file("bad_model.jsonl", m.dump() + "\n");
  auto res = run({"check-model", f2.string()});
  CHECK(res.code == cli::kValidation);
  CHECK(res.out.find("invalid") != std::string::npos);
}

TEST_CASE("output is deterministic and independent of --jobs") {
  auto corpus = temp_file("corpus_det.txt", kCorpus);
  for (const char* fmt : {"text", "json-lines"}) {
    auto a = run({"--format", fmt, "decide", corpus.string()});
    auto b = run({"--format", fmt, "--jobs", "4", "decide", corpus.string()});
    auto c = run({"--format", fmt, "decide", corpus.string()});
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
  }
}

TEST_CASE("prove and refute") {
  auto p = run({"prove", "-e", "<><>S(c) |- <>S(c)", "-e", "T |- <>T"});
  CHECK(p.code == cli::kOk);
  CHECK(p.out.find("<><>S(c) |- <>S(c): derivable") != std::string::npos);
  CHECK(p.out.find("T |- <>T: underivable") != std::string::npos);

  auto r = run({"--format", "json-lines", "refute", "-e", "T |- <>T", "-e", "S(c) |- S(c)"});
  CHECK(r.code == cli::kOk);
  std::istringstream in(r.out);
  std::string l1, l2;
  std::getline(in, l1);
  std::getline(in, l2);
  CHECK(Json::parse(l1)["status"] == "underivable");
  CHECK(Json::parse(l2)["status"] == "unrefuted");
  auto f = temp_file("refute.jsonl", r.out);
  CHECK(run({"check-model", f.string()}).code == cli::kOk);
}

TEST_CASE("closure of A x . S(x) over {c}") {
  auto r = run({"--format", "json-lines", "closure", "-e", "A x . S(x)", "-c", "c"});
  REQUIRE(r.code == cli::kOk);
  Json j = Json::parse(r.out);
  CHECK(j["size"] == 3);
  CHECK(j["mdepth"] == 0);
  CHECK(j["udepth"] == 1);
  CHECK(j["closure"] == Json::array({"T", "S(c)", "A x . S(x)"}));
}

TEST_CASE("termmodel on pair files") {
  auto pairs = temp_file("pairs.txt",
                         "sig: constants c; relations S/1;\n<>S(c) => S(c)\nA x . S(x) ; T => <>T\n");
  auto r = run({"termmodel", pairs.string()});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("2 worlds, adequate") != std::string::npos);
  CHECK(r.out.find("0 violations") != std::string::npos);

  auto bad = temp_file("pairs_bad.txt", "sig: constants c; relations S/1;\nS(c) => S(c)\n");
  CHECK(run({"termmodel", bad.string()}).code == cli::kUsage);
  auto open = temp_file("pairs_open.txt", "sig: relations S/1;\nS(x) => T\n");
  CHECK(run({"termmodel", open.string()}).code == cli::kUsage);
}

TEST_CASE("translate with the opaque and the example realization") {
  auto sig = temp_file("sig.txt", "sig: constants c0; relations S/1;\n");
  auto r = run({"--sig", sig.string(), "translate", "-e", "A x0 . S(x0) |- S(c0)"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("∀θ ∀y₀ ∀z₀ (□_{S*(y₀,u) ∨ τ(u)}θ → □_{∃z₀ (S*(z₀,u) ∨ τ(u))}θ)") !=
        std::string::npos);

  auto real = temp_file("real.txt", "S/1 := E w . w = #1 + u\n");
  auto j = run({"--sig", sig.string(), "--format", "json-lines", "translate", "-r", real.string(),
                "-e", "S(c0)"});
  CHECK(j.code == cli::kOk);
  CHECK(Json::parse(j.out)["tree"].is_object());

  auto broken = temp_file("real_bad.txt", "S/1 = nonsense\n");
  CHECK(run({"translate", "-r", broken.string(), "-e", "S(c)"}).code == cli::kUsage);
}

TEST_CASE("selftest is clean and reproducible") {
  auto a = run({"--seed", "11", "selftest", "--count", "25"});
  auto b = run({"selftest", "--count", "25", "--seed", "11"});
  CHECK(a.code == cli::kOk);
  CHECK(a.out == b.out);
  CHECK(a.out.find("0 failures") != std::string::npos);
}

TEST_CASE("serialization round trips on random certificates") {
  testgen::Gen g(2024);
  Signature sig = g.signature();
  int derivations = 0, models = 0;
  for (int i = 0; i < 60; ++i) {
    Sequent s{g.formula(), g.formula()};
    Verdict v = decide(s, sig);
    Json doc = Json::parse(to_json(v, sig).dump());
    Signature copy = sig;
    if (v.derivation) {
      ++derivations;
      Derivation d = derivation_from_json(doc["certificate"]["derivation"], copy);
      CHECK(to_json(d).dump() == to_json(*v.derivation).dump());
      CHECK(check_derivation(d, sig).ok());
    } else if (v.countermodel) {
      ++models;
      Countermodel cm = countermodel_from_json(doc["certificate"]["countermodel"], copy);
      CHECK(cm.model == v.countermodel->model);
      CHECK(cm.root == v.countermodel->root);
      CHECK(cm.sequent == v.countermodel->sequent);
      CHECK(validate_countermodel(cm).ok());
    }
  }
  CHECK(derivations > 5);
  CHECK(models > 5);

  for (int i = 0; i < 40; ++i) {
    Model m = g.model();
    CHECK(model_from_json(Json::parse(to_json(m).dump())) == m);
  }
}
