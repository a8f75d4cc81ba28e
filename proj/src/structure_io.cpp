#include "hoch/structure_io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "hoch/errors.hpp"
#include "json.hpp"

namespace hoch {

namespace {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& source, const std::string& ptr, const std::string& what) {
  throw InvalidInput(source + ": " + (ptr.empty() ? "/" : ptr) + ": " + what);
}

struct Reader {
  std::string source;

  const json& field(const json& obj, const std::string& ptr, const char* key) const {
    auto it = obj.find(key);
    if (it == obj.end()) fail(source, ptr, std::string("missing field '") + key + "'");
    return *it;
  }

  Scalar integer(const json& v, const std::string& ptr) const {
    if (v.is_number_integer()) {
      if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
        fail(source, ptr, "integer out of range");
      return v.get<Scalar>();
    }
    fail(source, ptr, "expected an integer, got " + std::string(v.type_name()));
  }

  const std::string& string(const json& v, const std::string& ptr) const {
    if (!v.is_string()) fail(source, ptr, "expected a string, got " + std::string(v.type_name()));
    return v.get_ref<const std::string&>();
  }

  const json& array(const json& v, const std::string& ptr) const {
    if (!v.is_array()) fail(source, ptr, "expected an array, got " + std::string(v.type_name()));
    return v;
  }

  std::size_t name(const Basis& b, const json& v, const std::string& ptr) const {
    const auto& s = string(v, ptr);
    if (!b.contains(s)) fail(source, ptr, "unknown basis element '" + s + "'");
    return b.index(s);
  }
};

CoefficientRing read_ring(const Reader& r, const json& v) {
  if (!v.is_object()) fail(r.source, "/ring", "expected an object, got " + std::string(v.type_name()));
  const auto& kind = r.string(r.field(v, "/ring", "kind"), "/ring/kind");
  if (kind == "integers") return CoefficientRing::integers();
  if (kind != "prime_field") fail(r.source, "/ring/kind", "expected \"prime_field\" or \"integers\", got \"" + kind + "\"");
  Scalar p = r.integer(r.field(v, "/ring", "p"), "/ring/p");
  if (!is_prime(p)) fail(r.source, "/ring/p", std::to_string(p) + " is not prime");
  try {
    return CoefficientRing::prime_field(p);
  } catch (const InvalidInput& e) {
    fail(r.source, "/ring/p", e.what());
  }
}

}  // namespace

Structure parse_structure(const std::string& text, bool check, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + std::min(e.byte, text.size()), '\n'));
    throw InvalidInput(source + ": line " + std::to_string(line) + ": malformed JSON (" + e.what() + ")");
  }
  Reader r{source};
  if (!doc.is_object()) fail(source, "", "expected an object");
  static const std::set<std::string> known{"ring", "basis", "unit", "counit", "diff", "mult", "comult"};
  for (auto& [k, v] : doc.items())
    if (!known.count(k)) fail(source, "/" + k, "unknown field");

  auto ring = read_ring(r, r.field(doc, "", "ring"));

  std::vector<std::string> names;
  std::vector<int> degrees;
  const auto& jb = r.array(r.field(doc, "", "basis"), "/basis");
  for (std::size_t i = 0; i < jb.size(); ++i) {
    std::string ptr = "/basis/" + std::to_string(i);
    if (!jb[i].is_object()) fail(source, ptr, "expected {\"name\", \"degree\"}");
    const auto& n = r.string(r.field(jb[i], ptr, "name"), ptr + "/name");
    if (std::find(names.begin(), names.end(), n) != names.end()) fail(source, ptr + "/name", "duplicate name '" + n + "'");
    Scalar d = r.integer(r.field(jb[i], ptr, "degree"), ptr + "/degree");
    if (d < INT32_MIN / 4 || d > INT32_MAX / 4) fail(source, ptr + "/degree", "degree out of range");
    names.push_back(n);
    degrees.push_back(static_cast<int>(d));
  }
  if (names.empty()) fail(source, "/basis", "empty basis");
  Basis basis(names, degrees);

  bool algebra = doc.contains("unit") || doc.contains("mult");
  bool coalgebra = doc.contains("counit") || doc.contains("comult");
  if (algebra && coalgebra) fail(source, "", "mixes algebra (unit/mult) and coalgebra (counit/comult) fields");
  if (!algebra && !coalgebra) fail(source, "", "need 'unit' and 'mult' (algebra) or 'counit' and 'comult' (coalgebra)");
  if (algebra && !doc.contains("unit")) fail(source, "/unit", "missing (algebra files need a unit)");
  if (coalgebra && !doc.contains("counit")) fail(source, "/counit", "missing (coalgebra files need a counit)");

  auto read_vec = [&](const json& v, const std::string& ptr) {
    std::map<std::size_t, Scalar> acc;
    const auto& a = r.array(v, ptr);
    for (std::size_t k = 0; k < a.size(); ++k) {
      std::string p = ptr + "/" + std::to_string(k);
      if (!a[k].is_array() || a[k].size() != 2) fail(source, p, "expected [name, coefficient]");
      auto i = r.name(basis, a[k][0], p + "/0");
      acc[i] = ring.add(acc[i], ring.normalize(r.integer(a[k][1], p + "/1")));
    }
    return make_vec(ring, acc);
  };

  std::vector<Vec> diff(basis.size());
  if (doc.contains("diff")) {
    const auto& jd = r.array(doc["diff"], "/diff");
    std::set<std::size_t> seen;
    for (std::size_t k = 0; k < jd.size(); ++k) {
      std::string ptr = "/diff/" + std::to_string(k);
      if (!jd[k].is_object()) fail(source, ptr, "expected {\"from\", \"to\"}");
      auto from = r.name(basis, r.field(jd[k], ptr, "from"), ptr + "/from");
      if (!seen.insert(from).second) fail(source, ptr + "/from", "second entry for '" + basis.name(from) + "'");
      diff[from] = read_vec(r.field(jd[k], ptr, "to"), ptr + "/to");
    }
  }

  StructureInfo info;
  info.name = source == "<input>" ? "input" : std::filesystem::path(source).stem().string();

  std::optional<Structure> out;
  if (algebra) {
    auto unit = r.name(basis, doc["unit"], "/unit");
    std::map<std::pair<std::size_t, std::size_t>, Vec> mult;
    if (doc.contains("mult")) {
      const auto& jm = r.array(doc["mult"], "/mult");
      for (std::size_t k = 0; k < jm.size(); ++k) {
        std::string ptr = "/mult/" + std::to_string(k);
        if (!jm[k].is_object()) fail(source, ptr, "expected {\"a\", \"b\", \"out\"}");
        auto a = r.name(basis, r.field(jm[k], ptr, "a"), ptr + "/a");
        auto b = r.name(basis, r.field(jm[k], ptr, "b"), ptr + "/b");
        if (mult.count({a, b})) fail(source, ptr, "second entry for " + basis.name(a) + "*" + basis.name(b));
        auto v = read_vec(r.field(jm[k], ptr, "out"), ptr + "/out");
        if (!v.empty()) mult[{a, b}] = v;
      }
    }
    out.emplace(DGAlgebra(ring, basis, diff, mult, unit, info));
  } else {
    const auto& jc = doc["counit"];
    if (!jc.is_object()) fail(source, "/counit", "expected an object mapping basis names to integers");
    std::map<std::size_t, Scalar> cacc;
    for (auto& [k, v] : jc.items()) {
      if (!basis.contains(k)) fail(source, "/counit/" + k, "unknown basis element '" + k + "'");
      cacc[basis.index(k)] = ring.normalize(r.integer(v, "/counit/" + k));
    }
    auto counit = make_vec(ring, cacc);
    if (counit.empty()) fail(source, "/counit", "the counit is zero");
    std::vector<Vec2> comult(basis.size());
    if (doc.contains("comult")) {
      const auto& jm = r.array(doc["comult"], "/comult");
      std::set<std::size_t> seen;
      for (std::size_t k = 0; k < jm.size(); ++k) {
        std::string ptr = "/comult/" + std::to_string(k);
        if (!jm[k].is_object()) fail(source, ptr, "expected {\"from\", \"out\"}");
        auto from = r.name(basis, r.field(jm[k], ptr, "from"), ptr + "/from");
        if (!seen.insert(from).second) fail(source, ptr + "/from", "second entry for '" + basis.name(from) + "'");
        const auto& terms = r.array(r.field(jm[k], ptr, "out"), ptr + "/out");
        std::map<std::pair<std::size_t, std::size_t>, Scalar> acc;
        for (std::size_t t = 0; t < terms.size(); ++t) {
          std::string p = ptr + "/out/" + std::to_string(t);
          if (!terms[t].is_array() || terms[t].size() != 3) fail(source, p, "expected [left, right, coefficient]");
          auto key = std::pair{r.name(basis, terms[t][0], p + "/0"), r.name(basis, terms[t][1], p + "/1")};
          acc[key] = ring.add(acc[key], ring.normalize(r.integer(terms[t][2], p + "/2")));
        }
        comult[from] = make_vec2(ring, acc);
      }
    }
    out.emplace(DGCoalgebra(ring, basis, diff, comult, counit, info));
  }
  if (check) std::visit([](const auto& s) { require_axioms(s); }, *out);
  return *out;
}

Structure parse_structure_file(const std::string& path, bool check) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput(path + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_structure(ss.str(), check, path);
}

namespace {

ojson ring_json(const CoefficientRing& ring) {
  ojson j;
  if (ring.is_field()) {
    j["kind"] = "prime_field";
    j["p"] = ring.p();
  } else {
    j["kind"] = "integers";
  }
  return j;
}

ojson common(const CoefficientRing& ring, const Basis& b) {
  ojson j;
  j["ring"] = ring_json(ring);
  j["basis"] = ojson::array();
  for (std::size_t i = 0; i < b.size(); ++i) j["basis"].push_back({{"name", b.name(i)}, {"degree", b.degree(i)}});
  return j;
}

ojson vec_json(const Basis& b, const Vec& v) {
  ojson a = ojson::array();
  for (auto [i, c] : v) a.push_back({b.name(i), c});
  return a;
}

template <class S>
ojson diff_json(const S& s) {
  ojson a = ojson::array();
  for (std::size_t i = 0; i < s.dim(); ++i)
    if (!s.diff(i).empty()) a.push_back({{"from", s.basis().name(i)}, {"to", vec_json(s.basis(), s.diff(i))}});
  return a;
}

}  // namespace

std::string serialize_structure(const DGAlgebra& a) {
  ojson j = common(a.ring(), a.basis());
  j["unit"] = a.basis().name(a.unit());
  j["diff"] = diff_json(a);
  j["mult"] = ojson::array();
  for (const auto& [ab, v] : a.mult())
    if (!v.empty())
      j["mult"].push_back({{"a", a.basis().name(ab.first)}, {"b", a.basis().name(ab.second)}, {"out", vec_json(a.basis(), v)}});
  return j.dump(2) + "\n";
}

std::string serialize_structure(const DGCoalgebra& c) {
  ojson j = common(c.ring(), c.basis());
  j["counit"] = ojson::object();
  for (auto [i, v] : c.counit()) j["counit"][c.basis().name(i)] = v;
  j["diff"] = diff_json(c);
  j["comult"] = ojson::array();
  for (std::size_t i = 0; i < c.dim(); ++i) {
    if (c.coproduct(i).empty()) continue;
    ojson out = ojson::array();
    for (auto [lr, v] : c.coproduct(i)) out.push_back({c.basis().name(lr.first), c.basis().name(lr.second), v});
    j["comult"].push_back({{"from", c.basis().name(i)}, {"out", out}});
  }
  return j.dump(2) + "\n";
}

std::string serialize_structure(const Structure& s) {
  return std::visit([](const auto& x) { return serialize_structure(x); }, s);
}

}  // namespace hoch
