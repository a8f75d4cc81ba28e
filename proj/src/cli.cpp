#include "hoch/cli.hpp"

#include <algorithm>
#include <regex>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "hoch/bar_cobar.hpp"
#include "hoch/duality.hpp"
#include "hoch/errors.hpp"
#include "hoch/ext.hpp"
#include "hoch/registry.hpp"
#include "hoch/structure_io.hpp"
#include "json.hpp"

namespace hoch {

namespace {

using ojson = nlohmann::ordered_json;

struct Job {
  std::string command;
  std::string example, input, ring, window, format = "table", demo;
  std::vector<int> gen_degree;
  Scalar p = 0;
  int truncation = 0, levels = 4, n = 3;
  std::size_t m = 6;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  bool force = false, oracle = false, certificate = false, no_check = false;
  CLI::Option *p_opt = nullptr, *trunc_opt = nullptr, *m_opt = nullptr;
};

// "--window -5:0" would otherwise read as an option.
std::vector<std::string> join_negative_values(const std::vector<std::string>& args) {
  static const std::set<std::string> valued{"--window", "--gen-degree", "--levels", "--p", "--m",
                                            "--truncation", "--n", "--seed", "--threads"};
  static const std::regex negative("^-[0-9].*");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (valued.count(args[i]) && i + 1 < args.size() && std::regex_match(args[i + 1], negative)) {
      out.push_back(args[i] + "=" + args[i + 1]);
      ++i;
    } else {
      out.push_back(args[i]);
    }
  }
  return out;
}

Window job_window(const Job& j) { return j.window.empty() ? Window(-4, 4) : Window::parse(j.window); }

RegistryObject load(const Job& j) {
  if (!j.input.empty()) {
    // axioms reports violations itself
    auto s = parse_structure_file(j.input, !j.no_check && j.command != "axioms");
    if (auto* a = std::get_if<DGAlgebra>(&s)) return *a;
    return std::get<DGCoalgebra>(s);
  }
  if (j.example.empty()) throw InvalidInput("need --example NAME or --input FILE");
  RegistryParams params;
  if (!j.ring.empty()) params.ring = CoefficientRing::parse(j.ring);
  params.degrees = j.gen_degree;
  if (j.p_opt->count()) params.p = j.p;
  if (j.trunc_opt->count()) params.truncation = j.truncation;
  if (!j.window.empty()) params.window = Window::parse(j.window);
  if (j.m_opt->count()) params.m = j.m;
  params.seed = j.seed;
  return example_registry(j.example, params);
}

std::string object_name(const RegistryObject& o) {
  if (auto* a = std::get_if<DGAlgebra>(&o)) return a->name();
  if (auto* c = std::get_if<DGCoalgebra>(&o)) return c->name();
  return "complex";
}

const DGAlgebra& need_algebra(const RegistryObject& o, const std::string& cmd) {
  if (auto* a = std::get_if<DGAlgebra>(&o)) return *a;
  throw InvalidInput(cmd + " needs an algebra; '" + object_name(o) + "' is not one");
}

const DGCoalgebra& need_coalgebra(const RegistryObject& o, const std::string& cmd) {
  if (auto* c = std::get_if<DGCoalgebra>(&o)) return *c;
  throw InvalidInput(cmd + " needs a coalgebra; '" + object_name(o) + "' is not one");
}

ojson ring_json(const CoefficientRing& r) {
  if (r.is_field()) return ojson{{"kind", "prime_field"}, {"p", r.p()}};
  return ojson{{"kind", "integers"}};
}

std::string render(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows)
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (width.size() <= c) width.push_back(0);
      width[c] = std::max(width[c], r[c].size());
    }
  std::ostringstream os;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t c = 0; c < r.size(); ++c) {
      line += r[c];
      if (c + 1 < r.size()) line += std::string(width[c] - r[c].size() + 2, ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << "\n";
  }
  return os.str();
}

std::string torsion_text(const HomologyGroup& g) {
  if (g.torsion.empty()) return "-";
  std::string s;
  for (auto t : g.torsion) s += (s.empty() ? "" : " ") + ("Z/" + std::to_string(t));
  return s;
}

std::string table_text(const HomologyTable& t) {
  std::vector<std::vector<std::string>> rows{{"degree", "free", "torsion", "stability", "note"}};
  for (const auto& e : t.entries)
    rows.push_back({std::to_string(e.degree), std::to_string(e.group.free_rank), torsion_text(e.group),
                    to_string(e.stability), e.annotation});
  return render(rows);
}

ojson table_json(const HomologyTable& t) {
  ojson a = ojson::array();
  for (const auto& e : t.entries)
    a.push_back({{"degree", e.degree},
                 {"free_rank", e.group.free_rank},
                 {"torsion", e.group.torsion},
                 {"stability", to_string(e.stability)},
                 {"annotation", e.annotation}});
  return a;
}

ojson header(const Job& j, const std::string& object, const CoefficientRing& ring) {
  return ojson{{"command", j.command}, {"object", object}, {"ring", ring_json(ring)}, {"levels", j.levels}};
}

std::string title(const Job& j, const std::string& object, const CoefficientRing& ring, const Window& w) {
  return j.command + " " + object + " over " + ring.to_string() + ", levels " + std::to_string(j.levels) + ", window " +
         w.to_string() + "\n";
}

// Degrees without a certificate, for --certificate-required.
std::vector<int> uncertified(const HomologyTable& t) {
  std::vector<int> out;
  for (const auto& e : t.entries)
    if (e.stability != Stability::kExact && e.stability != Stability::kCertified) out.push_back(e.degree);
  return out;
}

struct Emit {
  std::string out;
  std::string err;
  int code = 0;
};

void finish_homology(const Job& j, const HomologyTable& t, const std::string& object, const Window& w, ojson extra,
                     std::vector<std::string> pre, Emit& e) {
  if (j.format == "json") {
    ojson doc = header(j, object, t.ring);
    doc["window"] = {w.lo, w.hi};
    for (auto& [k, v] : extra.items()) doc[k] = v;
    doc["entries"] = table_json(t);
    e.out = doc.dump(2) + "\n";
  } else {
    e.out = title(j, object, t.ring, w);
    for (const auto& line : pre) e.out += line + "\n";
    e.out += table_text(t);
  }
  if (j.certificate) {
    auto bad = uncertified(t);
    if (!bad.empty()) {
      std::string list;
      for (int d : bad) list += (list.empty() ? "" : ", ") + std::to_string(d);
      throw CertificationUnattainable("no certificate at level " + std::to_string(j.levels) + " for degree" +
                                      (bad.size() == 1 ? " " : "s ") + list);
    }
  }
}

void cmd_homology(const Job& j, const RegistryObject& o, Emit& e) {
  Window w = job_window(j);
  if (j.command == "cohh") {
    const auto& c = need_coalgebra(o, j.command);
    finish_homology(j, cohochschild(c, j.levels, w, j.threads), c.name(), w, ojson::object(), {}, e);
    return;
  }
  const auto& a = need_algebra(o, j.command);
  if (j.command == "tor") {
    finish_homology(j, tor_one_sided(a, j.levels, w, j.threads), a.name(), w, ojson::object(), {}, e);
    return;
  }
  auto t = hochschild(a, j.levels, w, j.threads);
  ojson extra = ojson::object();
  std::vector<std::string> pre;
  if (j.oracle) {
    auto o2 = oracle_unnormalized_bar(a, j.levels, w);
    std::vector<int> bad;
    for (const auto& x : t.entries)
      if (!(o2.at(x.degree).group == x.group)) bad.push_back(x.degree);
    extra["oracle"] = {{"agrees", bad.empty()}, {"mismatched", bad}};
    if (bad.empty()) {
      pre.push_back("oracle: unnormalized complex agrees in every degree");
    } else {
      std::string list;
      for (int d : bad) list += (list.empty() ? "" : ", ") + std::to_string(d);
      pre.push_back("oracle: MISMATCH in degrees " + list);
    }
    finish_homology(j, t, a.name(), w, extra, pre, e);
    if (!bad.empty()) throw Error("oracle disagrees with the normalized complex");
    return;
  }
  finish_homology(j, t, a.name(), w, extra, pre, e);
}

void cmd_transport(const Job& j, const RegistryObject& o, Emit& e) {
  Window w = job_window(j);
  const auto& c = need_coalgebra(o, j.command);
  auto r = duality_transport_cohh(c, j.levels, w, j.force, j.threads);
  ojson extra{{"forced", r.forced}, {"audit", r.audit}};
  std::vector<std::string> pre;
  for (const auto& a : r.audit) pre.push_back("audit: " + a);
  finish_homology(j, r.table, c.name(), w, extra, pre, e);
}

void cmd_ext(const Job& j, const RegistryObject& o, Emit& e) {
  Window w = job_window(j);
  const auto& a = need_algebra(o, j.command);
  if (j.levels < 0) throw InvalidInput("--levels must be >= 0");
  auto res = periodic_resolution(a, j.levels + 2);
  bool exact = resolves_ground_ring(res, w);
  auto t = ext_from_resolution(res, trivial_module(0), j.levels, w);
  auto obs = formality_obstructions(a, std::max(j.levels, 1));
  if (j.format == "json") {
    ojson doc = header(j, a.name(), a.ring());
    doc["window"] = {w.lo, w.hi};
    doc["resolution_exact"] = exact;
    ojson rows = ojson::array();
    for (const auto& [sj, g] : t.ext)
      if (!g.is_zero())
        rows.push_back({{"s", sj.first}, {"internal", sj.second}, {"free_rank", g.free_rank}, {"torsion", g.torsion}});
    doc["ext"] = rows;
    ojson ob = ojson::array();
    for (const auto& g : obs)
      ob.push_back({{"s", g.s}, {"hom_rank", g.hom_rank}, {"free_rank", g.ext.free_rank}, {"torsion", g.ext.torsion}});
    doc["obstructions"] = ob;
    e.out = doc.dump(2) + "\n";
    return;
  }
  std::ostringstream os;
  os << "ext " << a.name() << " over " << a.ring().to_string() << " into k, s = 0.." << j.levels << ", internal window "
     << w.to_string() << "\n";
  os << "resolution exact on the window: " << (exact ? "yes" : "no") << "\n";
  std::vector<std::vector<std::string>> rows{{"s", "internal", "free", "torsion"}};
  for (const auto& [sj, g] : t.ext)
    if (!g.is_zero())
      rows.push_back({std::to_string(sj.first), std::to_string(sj.second), std::to_string(g.free_rank), torsion_text(g)});
  os << render(rows);
  os << "formality obstruction groups\n";
  std::vector<std::vector<std::string>> orows{{"s", "group", "hom rank", "value"}};
  for (const auto& g : obs)
    orows.push_back({std::to_string(g.s), "Ext^{" + std::to_string(g.s + 2) + ",0}", std::to_string(g.hom_rank),
                     g.ext.to_string(a.ring())});
  os << render(orows);
  e.out = os.str();
}

void cmd_dualize(const Job&, const RegistryObject& o, Emit& e) {
  if (auto* a = std::get_if<DGAlgebra>(&o))
    e.out = serialize_structure(dualize_algebra(*a));
  else if (auto* c = std::get_if<DGCoalgebra>(&o))
    e.out = serialize_structure(dualize_coalgebra(*c));
  else
    throw InvalidInput("dualize needs an algebra or a coalgebra");
}

void cmd_axioms(const Job& j, const RegistryObject& o, Emit& e) {
  AxiomReport r;
  if (auto* a = std::get_if<DGAlgebra>(&o)) r = check_algebra_axioms(*a);
  if (auto* c = std::get_if<DGCoalgebra>(&o)) r = check_coalgebra_axioms(*c);
  if (j.format == "json") {
    ojson v = ojson::array();
    for (const auto& x : r.violations) v.push_back({{"axiom", x.axiom}, {"detail", x.detail}});
    e.out = ojson{{"command", "axioms"}, {"object", object_name(o)}, {"ok", r.ok()}, {"violations", v}}.dump(2) + "\n";
  } else {
    e.out = "axioms " + object_name(o) + ": " + r.summary() + "\n";
  }
  if (!r.ok()) throw AxiomFailure("axiom check failed for " + object_name(o));
}

ojson report_json(const ConditionReport& r) {
  ojson degs = ojson::array();
  for (const auto& [t, v] : r.degrees)
    degs.push_back({{"degree", t},
                    {"verdict", to_string(v.verdict)},
                    {"source_rank", v.source_rank},
                    {"target_rank", v.target_rank},
                    {"witness", v.witness}});
  return ojson{{"condition", r.condition}, {"n", r.n},         {"window", {r.window.lo, r.window.hi}},
               {"ok", r.ok()},             {"chain_map", r.chain_map}, {"degrees", degs}, {"notes", r.notes}};
}

void cmd_check(const Job& j, const RegistryObject& o, Emit& e) {
  QuasiProperReport q;
  if (auto* a = std::get_if<DGAlgebra>(&o)) q = quasi_properness_report(*a);
  if (auto* c = std::get_if<DGCoalgebra>(&o)) q = quasi_properness_report(*c);
  if (auto* x = std::get_if<ChainComplex>(&o)) {
    if (j.n < 0) throw InvalidInput("--n must be >= 0");
    q.object = j.example.empty() ? "complex" : j.example;
    q.quasi_proper = true;
    for (int n = 0; n <= j.n; ++n) q.reports.push_back(condition1_check(*x, n));
    q.reports.push_back(condition2_check(*x));
    for (const auto& r : q.reports) q.quasi_proper = q.quasi_proper && r.ok();
    if (x->extent().declared_unbounded) {
      q.quasi_proper = false;
      q.reasons.push_back("the object is declared unbounded; only a finite window was checked");
    }
  }
  if (j.format == "json") {
    ojson reps = ojson::array();
    for (const auto& r : q.reports) reps.push_back(report_json(r));
    e.out = ojson{{"command", "check"}, {"object", q.object}, {"quasi_proper", q.quasi_proper}, {"reasons", q.reasons},
                  {"reports", reps}}
                .dump(2) +
            "\n";
  } else {
    e.out = q.summary() + "\n";
  }
}

void cmd_demo(const Job& j, Emit& e) {
  if (j.demo == "tensor-rank") {
    if (j.m < 1 || j.m > 12) throw InvalidInput("--m must be in 1..12");
    std::vector<std::vector<std::string>> rows{{"m", "rank(id)", "terms", "max rank of sums", "search", "separated"}};
    ojson arr = ojson::array();
    for (int m = 1; m <= static_cast<int>(j.m); ++m) {
      auto d = tensor_rank_bound_demo(m);
      std::string mode = d.exhaustive ? "exhaustive " + std::to_string(d.sums_checked)
                                      : "sampled " + std::to_string(d.sums_checked);
      rows.push_back({std::to_string(m), std::to_string(d.rank_h), std::to_string(d.terms),
                      std::to_string(d.max_rank_seen), mode, d.separated() ? "yes" : "no"});
      arr.push_back({{"m", m},
                     {"rank_identity", d.rank_h},
                     {"terms", d.terms},
                     {"max_rank_seen", d.max_rank_seen},
                     {"exhaustive", d.exhaustive},
                     {"sums_checked", d.sums_checked},
                     {"separated", d.separated()}});
    }
    if (j.format == "json")
      e.out = ojson{{"command", "demo"}, {"demo", "tensor-rank"}, {"results", arr}}.dump(2) + "\n";
    else
      e.out = "identity pairing on GF(2)^m (x) GF(2)^m versus sums of m-1 simple tensors\n" + render(rows);
    return;
  }
  // forced-transport: refusal first, then the override
  Job k = j;
  k.command = "transport";
  if (k.example.empty() && k.input.empty()) k.example = "laurent-coalgebra";
  auto o = load(k);
  const auto& c = need_coalgebra(o, "demo forced-transport");
  Window w = job_window(k);
  std::string refusal;
  try {
    duality_transport_cohh(c, k.levels, w, false, k.threads);
    refusal = "(no refusal: the input is quasi-proper)";
  } catch (const HypothesisFailure& h) {
    refusal = h.what();
  }
  k.force = true;
  Emit inner;
  cmd_transport(k, o, inner);
  if (j.format == "json") {
    auto doc = ojson::parse(inner.out);
    ojson wrapped{{"command", "demo"}, {"demo", "forced-transport"}, {"without_force", refusal}};
    for (auto& [key, v] : doc.items())
      if (key != "command") wrapped[key] = v;
    e.out = wrapped.dump(2) + "\n";
  } else {
    e.out = "without --force: " + refusal + "\nwith --force:\n" + inner.out;
  }
}

void add_input(CLI::App* sub, Job& j) {
  auto* ex = sub->add_option("--example", j.example, "registry example name");
  auto* in = sub->add_option("--input", j.input, "structure-constant JSON file");
  ex->excludes(in);
  sub->add_option("--ring", j.ring, "gfp:P or integers");
  sub->add_option("--gen-degree", j.gen_degree, "generator degrees, comma separated")->delimiter(',');
  j.p_opt = sub->add_option("--p", j.p, "prime for the example");
  j.trunc_opt = sub->add_option("--truncation", j.truncation, "truncation of polynomial examples");
  sub->add_option("--seed", j.seed, "seed for random-algebra");
  sub->add_option("--window", j.window, "degree window lo:hi (default -4:4)");
  sub->add_option("--format", j.format, "table or json")->check(CLI::IsMember({"table", "json"}));
  sub->add_flag("--no-check", j.no_check, "skip the axiom check when reading --input");
  sub->add_option("--threads", j.threads, "worker threads")->check(CLI::Range(1u, 256u));
}

}  // namespace

CliResult run_cli(const std::vector<std::string>& raw) {
  Job j;
  CLI::App app{"Hochschild and coHochschild homology of finite DG (co)algebras", "hoch"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {
      {"hh", "Hochschild homology of an algebra (normalized cyclic bar, truncated)"},
      {"cohh", "coHochschild homology of a coalgebra (conormalized cyclic cobar, truncated)"},
      {"tor", "Tor over an augmented algebra via the reduced bar construction"},
      {"ext", "Ext over an exterior algebra from the periodic resolution, plus formality obstructions"},
      {"dualize", "linear dual, written as a structure-constant file"},
      {"axioms", "check the (co)algebra axioms"},
      {"check", "conditions 1 and 2, and quasi-properness"},
      {"transport", "coHH of C computed as the dual of HH of the dual algebra"},
      {"demo", "counterexample demos: tensor-rank, forced-transport"},
  };
  for (const auto& s : subs) {
    auto* sub = app.add_subcommand(s.name, s.help);
    add_input(sub, j);
    sub->add_option("--levels", j.levels, "truncation level N")->check(CLI::NonNegativeNumber);
    j.m_opt = sub->add_option("--m", j.m, "dimension (finite-vector-space, tensor-rank demo)");
    std::string name = s.name;
    if (name == "hh") sub->add_flag("--oracle-crosscheck", j.oracle, "compare with the unnormalized complex");
    if (name == "hh" || name == "cohh" || name == "tor" || name == "transport")
      sub->add_flag("--certificate-required", j.certificate, "exit 3 unless every degree is certified");
    if (name == "transport" || name == "demo") sub->add_flag("--force", j.force, "transport even when not quasi-proper");
    if (name == "check") sub->add_option("--n", j.n, "largest tensor power for complexes (default 3)");
    if (name == "demo")
      sub->add_option("name", j.demo, "tensor-rank or forced-transport")
          ->required()
          ->check(CLI::IsMember({"tensor-rank", "forced-transport"}));
    sub->callback([&j, name] { j.command = name; });
  }

  CliResult res;
  std::ostringstream out, err;
  auto args = join_negative_values(raw);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    res.code = app.exit(e, out, err) == 0 ? 0 : 1;
    res.out = out.str();
    res.err = err.str();
    return res;
  }
  // the m option pointer is per subcommand; point at the one that was used
  for (auto* sub : app.get_subcommands()) {
    j.m_opt = sub->get_option("--m");
    j.p_opt = sub->get_option("--p");
    j.trunc_opt = sub->get_option("--truncation");
  }

  Emit e;
  try {
    if (j.command == "demo") {
      cmd_demo(j, e);
    } else {
      auto o = load(j);
      if (j.command == "hh" || j.command == "cohh" || j.command == "tor") cmd_homology(j, o, e);
      if (j.command == "transport") cmd_transport(j, o, e);
      if (j.command == "ext") cmd_ext(j, o, e);
      if (j.command == "dualize") cmd_dualize(j, o, e);
      if (j.command == "axioms") cmd_axioms(j, o, e);
      if (j.command == "check") cmd_check(j, o, e);
    }
  } catch (const AxiomFailure& x) {
    e.code = 2;
    e.err = std::string("error: axiom failure: ") + x.what() + "\n";
  } catch (const CertificationUnattainable& x) {
    e.code = 3;
    e.err = std::string("error: ") + x.what() + "\n";
  } catch (const HypothesisFailure& x) {
    e.code = 1;
    e.err = std::string("error: ") + x.what() + " (use --force to transport anyway)\n";
  } catch (const Error& x) {
    e.code = 1;
    e.err = std::string("error: ") + x.what() + "\n";
  } catch (const std::exception& x) {
    e.code = 1;
    e.err = std::string("error: internal: ") + x.what() + "\n";
  }
  res.code = e.code;
  res.out = e.out;
  res.err = e.err;
  return res;
}

}  // namespace hoch
