#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "hoch/cli.hpp"
#include "hoch/errors.hpp"
#include "hoch/registry.hpp"
#include "hoch/structure_io.hpp"
#include "json.hpp"

using namespace hoch;

namespace {

const std::string kSource = HOCH_SOURCE_DIR;
const std::string kData = kSource + "/tests/data";

CliResult run(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> args;
  for (std::string w; is >> w;) args.push_back(w);
  return run_cli(args);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string error_of(const std::string& text) {
  try {
    parse_structure(text);
  } catch (const InvalidInput& e) {
    return e.what();
  }
  return "";
}

void replace_all(std::string& s, const std::string& from, const std::string& to) {
  for (std::size_t pos = 0; (pos = s.find(from, pos)) != std::string::npos; pos += to.size()) s.replace(pos, from.size(), to);
}

}  // namespace

TEST_CASE("structure files") {
  auto s = parse_structure_file(kData + "/exterior.json");
  REQUIRE(std::holds_alternative<DGAlgebra>(s));
  const auto& a = std::get<DGAlgebra>(s);
  CHECK(a.ring() == CoefficientRing::prime_field(2));
  CHECK(a.dim() == 2);
  CHECK(a.basis().degree(a.basis().index("y")) == 1);
  CHECK(a.name() == "exterior");
  // same structure constants as the registry entry, up to names
  auto reg = exterior_algebra(CoefficientRing::prime_field(2), {1});
  CHECK(a.mult().size() == reg.mult().size());
  auto back = parse_structure(serialize_structure(s));
  CHECK(std::get<DGAlgebra>(back) == a);

  CHECK_THROWS_WITH_AS(parse_structure_file(kData + "/nonprime.json"), doctest::Contains("/ring/p: 4 is not prime"),
                       InvalidInput);
  CHECK_THROWS_WITH_AS(parse_structure_file(kData + "/missing_counit.json"), doctest::Contains("/counit: missing"),
                       InvalidInput);
  CHECK_THROWS_WITH_AS(parse_structure_file(kData + "/broken_coassociativity.json"),
                       doctest::Contains("(x1, x2, x3)"), AxiomFailure);
  auto unchecked = parse_structure_file(kData + "/broken_coassociativity.json", false);
  CHECK(!check_coalgebra_axioms(std::get<DGCoalgebra>(unchecked)).ok());
  CHECK_THROWS_AS(parse_structure_file(kData + "/no_such_file.json"), InvalidInput);
}

TEST_CASE("schema errors name the field") {
  CHECK(error_of("{\"ring\": {\"kind\": \"prime_field\", \"p\": 2},\n \"basis\": [\n}").find("line 3") != std::string::npos);
  const std::string head = R"({"ring": {"kind": "prime_field", "p": 3}, )";
  CHECK(error_of(head + R"("basis": [{"name": "1", "degree": 0}, {"name": "x", "degree": 1.5}], "unit": "1"})")
            .find("/basis/1/degree: expected an integer") != std::string::npos);
  CHECK(error_of(head + R"("basis": [{"name": "1", "degree": 0}], "unit": "1", "mult": [{"a": "1", "b": "1", "out": [["q", 1]]}]})")
            .find("/mult/0/out/0/0: unknown basis element 'q'") != std::string::npos);
  CHECK(error_of(head + R"("basis": [{"name": "1", "degree": 0}], "unit": "1", "colour": 3})").find("/colour: unknown field") !=
        std::string::npos);
  CHECK(error_of(head + R"("basis": [{"name": "1", "degree": 0}], "unit": "1", "counit": {"1": 1}})").find("mixes") !=
        std::string::npos);
  CHECK(error_of(head + R"("basis": [{"name": "1", "degree": 0}, {"name": "1", "degree": 0}], "unit": "1"})")
            .find("/basis/1/name: duplicate") != std::string::npos);
  CHECK(error_of(R"({"ring": {"kind": "reals"}, "basis": [], "unit": "1"})").find("/ring/kind") != std::string::npos);
  CHECK(error_of(head + R"("basis": [{"name": "1", "degree": 0}]})").find("need 'unit'") != std::string::npos);
  CHECK(error_of(head + R"("basis": [{"name": "1", "degree": 0}], "counit": {"1": 0}, "comult": []})")
            .find("/counit: the counit is zero") != std::string::npos);
}

TEST_CASE("serialization round trips registry objects") {
  auto F = [](Scalar p) { return CoefficientRing::prime_field(p); };
  std::vector<Structure> objs{exterior_algebra(F(3), {1, 2}), exterior_coalgebra(F(5), {1, -1}),
                              koszul_model_Fp_over_Z(3), dual_koszul_coalgebra(2),
                              truncated_polynomial_algebra(F(2), 2, 4), ground_coalgebra(CoefficientRing::integers())};
  for (std::uint64_t s = 0; s < 10; ++s) objs.push_back(random_graded_commutative_algebra(F(3), 300 + s));
  for (const auto& o : objs) {
    auto text = serialize_structure(o);
    auto back = parse_structure(text);
    CHECK(serialize_structure(back) == text);
    if (auto* c = std::get_if<DGCoalgebra>(&o)) {
      const auto& d = std::get<DGCoalgebra>(back);
      CHECK(d.counit() == c->counit());
      for (std::size_t i = 0; i < c->dim(); ++i) CHECK(d.coproduct(i) == c->coproduct(i));
    } else {
      const auto& a = std::get<DGAlgebra>(o);
      const auto& b = std::get<DGAlgebra>(back);
      for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t k = 0; k < a.dim(); ++k) CHECK(a.product(i, k) == b.product(i, k));
    }
  }
}

TEST_CASE("exit codes") {
  CHECK(run("hh --example exterior --ring gfp:3 --gen-degree -1 --levels 6 --window -1:0").code == 0);
  CHECK(run("axioms --input " + kData + "/broken_coassociativity.json").code == 2);
  CHECK(run("hh --input " + kData + "/nonprime.json").code == 1);
  CHECK(run("hh --example exterior --gen-degree -1 --levels 3 --certificate-required").code == 3);
  CHECK(run("hh --example exterior --gen-degree 1 --levels 8 --window 0:6 --certificate-required").code == 0);
  CHECK(run("cohh --example exterior").code == 1);  // not a coalgebra
  CHECK(run("hh --example exterior --levels -1").code == 1);
  CHECK(run("hh --example exterior --format xml").code == 1);
  CHECK(run("").code == 1);
  auto help = run("hh --help");
  CHECK(help.code == 0);
  CHECK(help.out.find("--oracle-crosscheck") != std::string::npos);
  CHECK(run("transport --example laurent-coalgebra --window -1:1").code == 1);
  CHECK(run("transport --example laurent-coalgebra --window -1:1 --force").code == 0);
  CHECK(run("hh --example koszul --ring gfp:3").code == 1);
  CHECK(run("hh --example exterior --ring gfp:3 --p 5").code == 1);
}

TEST_CASE("documented examples through the front end") {
  auto r = run("hh --example exterior --ring gfp:3 --gen-degree -1 --levels 6 --window -1:0 --format json");
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["entries"].size() == 2);
  for (const auto& e : j["entries"]) {
    CHECK(e["free_rank"] == 7);
    CHECK(e["stability"] == "unstable");
    CHECK(e["annotation"] == "+1/level");
  }
  auto c = nlohmann::json::parse(run("cohh --example dual-koszul --p 2 --levels 8 --window -5:0 --format json").out);
  for (const auto& e : c["entries"]) {
    int t = e["degree"];
    CHECK(e["stability"] == "certified");
    CHECK(e["torsion"] == (t % 2 != 0 ? nlohmann::json::array({2}) : nlohmann::json::array()));
  }
  auto a = run("axioms --input " + kData + "/broken_coassociativity.json");
  CHECK(a.out.find("coassociativity") != std::string::npos);
  CHECK(a.out.find("(x1, x2, x3)") != std::string::npos);
}

TEST_CASE("table and json carry the same rows") {
  auto t = run("cohh --example exterior-coalgebra --ring gfp:5 --levels 3 --window -1:2");
  auto j = nlohmann::json::parse(run("cohh --example exterior-coalgebra --ring gfp:5 --levels 3 --window -1:2 --format json").out);
  std::istringstream is(t.out);
  std::string line;
  std::getline(is, line);  // title
  std::getline(is, line);  // header
  for (const auto& e : j["entries"]) {
    REQUIRE(std::getline(is, line));
    std::istringstream ls(line);
    int degree;
    std::size_t free;
    std::string torsion, stability;
    ls >> degree >> free >> torsion >> stability;
    CHECK(degree == e["degree"]);
    CHECK(free == e["free_rank"]);
    CHECK(stability == e["stability"]);
  }
}

TEST_CASE("golden files") {
  std::ifstream jobs(kSource + "/tests/golden/jobs.txt");
  REQUIRE(jobs);
  bool update = std::getenv("HOCH_UPDATE_GOLDEN") != nullptr;
  int count = 0;
  for (std::string line; std::getline(jobs, line);) {
    if (line.empty() || line[0] == '#') continue;
    auto colon = line.find(':');
    std::string name = line.substr(0, colon), args = line.substr(colon + 1);
    replace_all(args, "{data}", kData);
    auto render = [&](const CliResult& r) {
      std::string s = r.out + "-- stderr\n" + r.err + "-- exit " + std::to_string(r.code) + "\n";
      replace_all(s, kData, "{data}");
      return s;
    };
    std::string got = render(run(args));
    std::string path = kSource + "/tests/golden/" + name + ".out";
    if (update) {
      std::ofstream(path, std::ios::binary) << got;
    } else {
      CHECK_MESSAGE(slurp(path) == got, name);
    }
    // determinism: repeat run and thread count change nothing
    CHECK_MESSAGE(render(run(args)) == got, name);
    CHECK_MESSAGE(render(run(args + " --threads 4")) == got, name);
    ++count;
  }
  CHECK(count >= 25);
}
