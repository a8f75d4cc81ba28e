#include "hoch/duality.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "hoch/errors.hpp"

namespace hoch {

std::string to_string(MapVerdict v) {
  switch (v) {
    case MapVerdict::kIso: return "iso";
    case MapVerdict::kNotInjective: return "not-injective";
    case MapVerdict::kNotSurjective: return "not-surjective";
  }
  return "?";
}

bool in_image(const Matrix& m, std::span<const Scalar> y) {
  if (y.size() != m.rows()) throw InvalidInput("in_image: size mismatch");
  const auto& ring = m.ring();
  auto sd = smith_decompose(m);
  std::vector<Scalar> yn(y.begin(), y.end());
  for (auto& v : yn) v = ring.normalize(v);
  auto z = sd.U.apply(yn);
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (j < sd.rank()) {
      if (!ring.is_field() && z[j] % sd.diagonal[j] != 0) return false;
    } else if (z[j] != 0) {
      return false;
    }
  }
  return true;
}

DegreeVerdict classify_map(const Matrix& m) {
  DegreeVerdict v;
  v.source_rank = m.cols();
  v.target_rank = m.rows();
  std::size_t r = rank(m);
  if (r < m.cols()) {
    v.verdict = MapVerdict::kNotInjective;
    Matrix k = kernel_basis(m);
    for (std::size_t i = 0; i < k.rows(); ++i) v.witness.push_back(k.at(i, 0));
    return v;
  }
  bool onto = r == m.rows();
  if (onto && !m.ring().is_field())
    for (Scalar d : smith_decompose(m).diagonal) onto = onto && d == 1;
  if (onto) return v;
  v.verdict = MapVerdict::kNotSurjective;
  for (std::size_t k = 0; k < m.rows(); ++k) {
    std::vector<Scalar> e(m.rows(), 0);
    e[k] = 1;
    if (!in_image(m, e)) {
      v.witness = e;
      break;
    }
  }
  return v;
}

namespace {

using Factor = std::pair<int, std::size_t>;  // (degree, index in that degree)
using FTuple = std::vector<Factor>;

// Basis of the n-fold tensor power, in the order tensor_power uses.
std::map<int, std::vector<FTuple>> power_basis(const std::map<int, std::size_t>& ranks, int n) {
  std::map<int, std::vector<FTuple>> cur{{0, {FTuple{}}}};
  for (int k = 0; k < n; ++k) {
    std::map<int, std::vector<FTuple>> next;
    for (auto& [i, list] : cur)
      for (auto& a : list)
        for (auto [j, rj] : ranks)
          for (std::size_t b = 0; b < rj; ++b) {
            FTuple t = a;
            t.emplace_back(j, b);
            next[i + j].push_back(std::move(t));
          }
    cur = std::move(next);
  }
  return cur;
}

std::map<int, std::size_t> dual_ranks(const std::map<int, std::size_t>& r) {
  std::map<int, std::size_t> out;
  for (auto [d, k] : r) out[-d] = k;
  return out;
}

std::map<int, std::size_t> restrict_ranks(const std::map<int, std::size_t>& r, const Window& w) {
  std::map<int, std::size_t> out;
  for (auto [d, k] : r)
    if (w.contains(d)) out[d] = k;
  return out;
}

// Finite data to run the checks on, plus notes for windows of unbounded objects.
ChainComplex finite_data(const ChainComplex& x, const char* what, std::vector<std::string>& notes) {
  if (x.is_complete()) return x;
  if (!x.extent().declared_unbounded)
    throw InsufficientData(std::string(what) + ": data only on " + x.extent().known->to_string() +
                           "; the complex is not known to be finite");
  notes.push_back("input is the window " + x.extent().known->to_string() +
                  " of an unbounded object; checked on that finite window only");
  return x.with_extent(DataExtent{}).with_connectivity({});
}

}  // namespace

Matrix condition1_map(const ChainComplex& x, int n, int t) {
  if (n < 0) throw InvalidInput("condition 1: negative tensor power");
  const auto& ring = x.ring();
  const auto& ranks = x.module().ranks();
  auto src = power_basis(dual_ranks(ranks), n);
  auto dst = power_basis(ranks, n);
  static const std::vector<FTuple> none;
  const auto& s = src.count(t) ? src.at(t) : none;
  const auto& d = dst.count(-t) ? dst.at(-t) : none;
  std::map<FTuple, std::size_t> pos;
  for (std::size_t k = 0; k < d.size(); ++k) pos[d[k]] = k;
  std::vector<Matrix::Triplet> trip;
  for (std::size_t j = 0; j < s.size(); ++j) {
    // f_1 .. f_n with f_l dual to b_l in degree -|f_l|; evaluating on
    // b_1 .. b_n moves f_l past b_k for k < l.
    FTuple b;
    long long e = 0;
    for (std::size_t l = 0; l < s[j].size(); ++l) {
      int bl = -s[j][l].first;
      for (std::size_t k = 0; k < l; ++k) e += static_cast<long long>(bl) * (-s[j][k].first);
      b.emplace_back(bl, s[j][l].second);
    }
    trip.push_back({pos.at(b), j, ring.sign(e)});
  }
  return Matrix::from_triplets(ring, d.size(), s.size(), trip);
}

bool ConditionReport::ok() const {
  if (!chain_map) return false;
  for (auto& [t, v] : degrees)
    if (v.verdict != MapVerdict::kIso) return false;
  return true;
}

std::string ConditionReport::summary() const {
  std::ostringstream os;
  os << "condition " << condition;
  if (condition == 1) os << " (n=" << n << ")";
  os << " on " << window.to_string() << ": ";
  std::vector<std::string> bad;
  for (auto& [t, v] : degrees)
    if (v.verdict != MapVerdict::kIso) {
      std::string w;
      for (std::size_t i = 0; i < v.witness.size(); ++i) w += (i ? "," : "") + std::to_string(v.witness[i]);
      bad.push_back("degree " + std::to_string(t) + " " + to_string(v.verdict) + " witness [" + w + "]");
    }
  if (bad.empty() && chain_map) {
    os << "iso";
  } else {
    os << "FAILS";
    for (auto& b : bad) os << "; " << b;
    if (!chain_map) os << "; not a chain map";
  }
  for (auto& n : notes) os << "\n  note: " << n;
  return os.str();
}

namespace {

Window support_window(const std::vector<int>& degrees) {
  if (degrees.empty()) return Window(0, 0);
  auto [lo, hi] = std::minmax_element(degrees.begin(), degrees.end());
  return Window(*lo, *hi);
}

}  // namespace

ConditionReport condition1_check(const ChainComplex& x_in, int n, std::optional<Window> w) {
  ConditionReport rep;
  rep.condition = 1;
  rep.n = n;
  ChainComplex x = finite_data(x_in, "condition 1", rep.notes);
  const auto& ranks = x.module().ranks();
  auto src = power_basis(dual_ranks(ranks), n);
  auto dst = power_basis(ranks, n);
  std::vector<int> degs;
  for (auto& [t, v] : src) degs.push_back(t);
  for (auto& [t, v] : dst) degs.push_back(-t);
  rep.window = w ? *w : support_window(degs);
  for (int t = rep.window.lo; t <= rep.window.hi; ++t) rep.degrees[t] = classify_map(condition1_map(x, n, t));

  // chain map: d_T phi = phi d_S, with S = (X^v)^n and T = (X^n)^v
  ChainComplex S = tensor_power(dual(x), n);
  ChainComplex T = dual(tensor_power(x, n));
  for (int t = rep.window.lo; t <= rep.window.hi + 1 && rep.chain_map; ++t) {
    Matrix lhs = T.d(t) * condition1_map(x, n, t);
    Matrix rhs = condition1_map(x, n, t - 1) * S.d(t);
    if (lhs.rows() == rhs.rows() && lhs.cols() == rhs.cols())
      rep.chain_map = lhs == rhs;
    else
      rep.chain_map = lhs.is_zero() && rhs.is_zero();
  }

  if (!x_in.is_complete()) {
    const Window& k = *x_in.extent().known;
    if (k.hi - k.lo >= 2) {
      Window inner(k.lo + 1, k.hi - 1);
      auto inner_dst = power_basis(restrict_ranks(ranks, inner), n);
      for (int t = rep.window.lo; t <= rep.window.hi; ++t) {
        std::size_t full = dst.count(-t) ? dst.at(-t).size() : 0;
        std::size_t part = inner_dst.count(-t) ? inner_dst.at(-t).size() : 0;
        if (full > part)
          rep.notes.push_back("degree " + std::to_string(t) + ": rank of (X^(x)" + std::to_string(n) + ")_" +
                              std::to_string(-t) + " is " + std::to_string(part) + " on " + inner.to_string() +
                              ", " + std::to_string(full) + " on " + k.to_string() +
                              "; it grows with the window, so no finite check reaches the limit");
      }
    }
  }
  return rep;
}

ConditionReport condition2_check(const ChainComplex& x_in, std::optional<Window> w) {
  ConditionReport rep;
  rep.condition = 2;
  ChainComplex x = finite_data(x_in, "condition 2", rep.notes);
  std::vector<int> degs;
  for (auto& [t, r] : x.module().ranks()) degs.push_back(t);
  rep.window = w ? *w : support_window(degs);
  for (int t = rep.window.lo; t <= rep.window.hi; ++t) rep.degrees[t] = classify_map(eta_matrix(x, t));
  rep.chain_map = double_dual_unit(x, Window(rep.window.lo - 1, rep.window.hi + 1)).chain_map;
  if (!x_in.is_complete())
    rep.notes.push_back("eta is an isomorphism on every finite window; the unbounded object itself is out of reach");
  return rep;
}

std::string QuasiProperReport::summary() const {
  std::ostringstream os;
  os << object << ": " << (quasi_proper ? "quasi-proper" : "NOT quasi-proper");
  for (auto& r : reasons) os << "\n  reason: " << r;
  for (auto& r : reports) os << "\n  " << r.summary();
  return os.str();
}

namespace {

void windowed_reason(const StructureInfo& info, QuasiProperReport& rep) {
  const auto& k = *info.extent.known;
  rep.reasons.push_back(std::string(info.extent.declared_unbounded ? "declared unbounded; " : "") +
                        "structure known only on the window " + k.to_string() +
                        ", so no finite-type statement is available");
}

void aggregate(QuasiProperReport& rep) {
  rep.quasi_proper = rep.reasons.empty();
  for (auto& r : rep.reports)
    if (!r.ok()) {
      rep.quasi_proper = false;
      rep.reasons.push_back(r.summary());
    }
}

}  // namespace

QuasiProperReport quasi_properness_report(const DGAlgebra& a, std::optional<Window> w) {
  QuasiProperReport rep;
  rep.object = a.name().empty() ? "algebra" : a.name();
  if (a.info().extent.known) {
    windowed_reason(a.info(), rep);
    return rep;
  }
  ChainComplex x = a.complex();
  for (int n = 0; n <= 3; ++n) rep.reports.push_back(condition1_check(x, n, w));
  rep.reports.push_back(condition2_check(x, w));
  aggregate(rep);
  return rep;
}

QuasiProperReport quasi_properness_report(const DGCoalgebra& c, std::optional<Window> w) {
  QuasiProperReport rep;
  rep.object = c.name().empty() ? "coalgebra" : c.name();
  if (c.info().extent.known) {
    windowed_reason(c.info(), rep);
    return rep;
  }
  ChainComplex x = c.complex();
  ChainComplex xd = dual(x);
  for (int n = 0; n <= 3; ++n) rep.reports.push_back(condition1_check(xd, n, w));
  rep.reports.push_back(condition2_check(x, w));
  aggregate(rep);
  return rep;
}

// ---- transport -------------------------------------------------------------------

namespace {

int trust(Stability s) {
  switch (s) {
    case Stability::kExact: return 4;
    case Stability::kCertified: return 3;
    case Stability::kObservedStable: return 2;
    case Stability::kUnstable: return 1;
    case Stability::kWindowEdge: return 0;
  }
  return 0;
}

}  // namespace

HomologyTable transport_from_table(const HomologyTable& hh) {
  HomologyTable out(hh.ring);
  if (hh.entries.empty()) return out;
  int lo = hh.entries.front().degree, hi = hh.entries.back().degree;
  if (hh.ring.is_field()) {
    for (int t = -hi; t <= -lo; ++t) {
      const auto* src = hh.find(-t);
      if (!src) continue;
      HomologyEntry e = *src;
      e.degree = t;
      for (auto& g : e.growth) g.torsion.clear();
      e.group.torsion.clear();
      out.entries.push_back(std::move(e));
    }
    return out;
  }
  // Hom(-, Z) of a free complex: free part of H_{-t}, torsion of H_{-t-1}
  for (int t = -hi; t <= -lo - 1; ++t) {
    const auto* f = hh.find(-t);
    const auto* tor = hh.find(-t - 1);
    if (!f || !tor) continue;
    HomologyEntry e;
    e.degree = t;
    e.group = HomologyGroup{f->group.free_rank, tor->group.torsion};
    const HomologyEntry& worse = trust(tor->stability) < trust(f->stability) ? *tor : *f;
    e.stability = worse.stability;
    e.annotation = worse.annotation;
    if (f->growth.size() == tor->growth.size())
      for (std::size_t n = 0; n < f->growth.size(); ++n)
        e.growth.push_back(HomologyGroup{f->growth[n].free_rank, tor->growth[n].torsion});
    out.entries.push_back(std::move(e));
  }
  return out;
}

namespace {

DGCoalgebra as_finite(const DGCoalgebra& c) {
  std::vector<Vec> diff;
  std::vector<Vec2> comult;
  for (std::size_t i = 0; i < c.dim(); ++i) {
    diff.push_back(c.diff(i));
    comult.push_back(c.coproduct(i));
  }
  return DGCoalgebra(c.ring(), c.basis(), diff, comult, c.counit(), StructureInfo{c.name(), {}, {}});
}

}  // namespace

TransportResult duality_transport_cohh(const DGCoalgebra& c, int N, const Window& w, bool force, unsigned threads) {
  TransportResult res{HomologyTable(c.ring()), {}, false};
  auto qp = quasi_properness_report(c);
  res.audit.push_back("check: " + qp.object + " is " + (qp.quasi_proper ? "quasi-proper" : "NOT quasi-proper"));
  DGCoalgebra input = c;
  if (!qp.quasi_proper) {
    std::string why;
    for (auto& r : qp.reasons) why += (why.empty() ? "" : "; ") + r;
    if (!force) throw HypothesisFailure("transport refused: " + qp.object + " is not quasi-proper: " + why);
    res.forced = true;
    for (auto& r : qp.reasons) res.audit.push_back("refused: " + r);
    res.audit.push_back("override: --force given; the duality hypothesis does not hold for this input");
    if (c.info().extent.known) {
      res.audit.push_back("using the stored window " + c.info().extent.known->to_string() +
                          " as a finite coalgebra");
      input = as_finite(c);
    }
  }
  Window hw = c.ring().is_field() ? w.reflected() : Window(-w.hi - 1, -w.lo);
  DGAlgebra a = dualize_coalgebra(input);
  res.audit.push_back("computed: HH of the dual algebra on " + hw.to_string() + " at N=" + std::to_string(N) +
                      ", then the degreewise dual");
  auto hh = hochschild(a, N, hw, threads);
  auto full = transport_from_table(hh);
  for (auto& e : full.entries)
    if (w.contains(e.degree)) res.table.entries.push_back(e);
  if (res.forced) res.audit.push_back("caveat: the numbers describe the finite window only, not the unbounded object");
  return res;
}

DualityCheck truncated_duality_check(const DGCoalgebra& c, int N, const Window& w, unsigned threads) {
  if (!c.ring().is_field())
    throw InvalidInput("truncated duality check needs field coefficients; over Z use the transport");
  require_axioms(c);
  auto co = cohochschild(c, N, w, threads);
  auto hh = hochschild(dualize_coalgebra(c), N, w.reflected(), threads);
  DualityCheck out;
  for (const auto& e : co.entries) {
    std::size_t r = hh.at(-e.degree).group.free_rank;
    out.ranks[e.degree] = {e.group.free_rank, r};
    if (r != e.group.free_rank) {
      out.ok = false;
      out.mismatched.push_back(e.degree);
    }
  }
  return out;
}

// ---- tensor rank demo ------------------------------------------------------------

namespace {

std::size_t rank_gf2(std::vector<std::uint32_t> rows) {
  std::size_t r = 0;
  for (std::uint32_t bit = 1; bit; bit <<= 1) {
    auto it = std::find_if(rows.begin() + r, rows.end(), [&](std::uint32_t x) { return x & bit; });
    if (it == rows.end()) continue;
    std::swap(*it, rows[r]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != r && (rows[i] & bit)) rows[i] ^= rows[r];
    ++r;
    if (r == rows.size()) break;
  }
  return r;
}

// Matrix of sum_l f_l (x) g_l, row i = xor of g_l over l with bit i of f_l.
std::size_t sum_rank(int m, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& terms) {
  std::vector<std::uint32_t> rows(m, 0);
  for (auto [f, g] : terms)
    for (int i = 0; i < m; ++i)
      if (f >> i & 1) rows[i] ^= g;
  return rank_gf2(rows);
}

}  // namespace

TensorRankDemo tensor_rank_bound_demo(int m, std::uint64_t samples, std::uint64_t seed) {
  if (m < 1 || m > 16) throw InvalidInput("tensor rank demo: m must be in 1..16");
  TensorRankDemo d;
  d.m = m;
  d.terms = m - 1;
  d.rank_h = rank(Matrix::identity(CoefficientRing::prime_field(2), m));
  std::uint64_t simple = std::uint64_t{1} << (2 * m);  // pairs (f, g)
  std::uint64_t total = 1;
  bool small = true;
  for (int k = 0; k < d.terms && small; ++k) {
    if (total > (std::uint64_t{1} << 25) / simple) small = false;
    total *= simple;
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> terms(d.terms);
  std::uint32_t mask = (std::uint32_t{1} << m) - 1;
  if (small) {
    d.exhaustive = true;
    for (std::uint64_t code = 0; code < total; ++code) {
      std::uint64_t c = code;
      for (auto& t : terms) {
        std::uint64_t v = c % simple;
        c /= simple;
        t = {static_cast<std::uint32_t>(v & mask), static_cast<std::uint32_t>(v >> m)};
      }
      d.max_rank_seen = std::max(d.max_rank_seen, sum_rank(m, terms));
      ++d.sums_checked;
    }
    return d;
  }
  std::mt19937_64 rng(seed);
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (auto& t : terms) t = {static_cast<std::uint32_t>(rng() & mask), static_cast<std::uint32_t>(rng() & mask)};
    d.max_rank_seen = std::max(d.max_rank_seen, sum_rank(m, terms));
    ++d.sums_checked;
  }
  return d;
}

}  // namespace hoch
