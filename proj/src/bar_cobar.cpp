#include "hoch/bar_cobar.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

#include "hoch/errors.hpp"
#include "hoch/parallel.hpp"

namespace hoch {

namespace {

using Tuple = std::vector<std::uint32_t>;
using Acc = std::map<Tuple, Scalar>;

void accumulate(const CoefficientRing& ring, Acc& acc, Tuple t, Scalar c) {
  c = ring.normalize(c);
  if (c == 0) return;
  auto [it, fresh] = acc.emplace(std::move(t), c);
  if (!fresh) it->second = ring.add(it->second, c);
}

std::vector<std::size_t> iota(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), std::size_t{0});
  return v;
}

std::vector<std::size_t> range(std::size_t lo, std::size_t hi) {
  std::vector<std::size_t> v;
  for (std::size_t i = lo; i < hi; ++i) v.push_back(i);
  return v;
}

// Slot layout of one kind of total complex.
struct Layout {
  BarKind kind;
  std::vector<int> deg;             // degree of each basis index
  std::vector<std::uint32_t> first;  // slot 0 (absent for the reduced bar)
  std::vector<std::uint32_t> rest;
  int shift = 1;  // total = internal + shift * level

  bool has_first() const { return kind != BarKind::kReducedBar; }
  int level(const Tuple& t) const { return has_first() ? static_cast<int>(t.size()) - 1 : static_cast<int>(t.size()); }
  int degree(const Tuple& t) const {
    int s = shift * level(t);
    for (auto x : t) s += deg[x];
    return s;
  }
};

struct Generators {
  std::map<int, std::vector<Tuple>> by_degree;  // level ordered
  std::map<Tuple, std::size_t> index;           // position inside its degree
};

// All tuples of levels 0..N with total degree in [lo, hi].
Generators enumerate(const Layout& L, int N, int lo, int hi) {
  Generators g;
  int rmin = 0, rmax = 0;
  if (!L.rest.empty()) {
    rmin = rmax = L.deg[L.rest.front()];
    for (auto x : L.rest) rmin = std::min(rmin, L.deg[x]), rmax = std::max(rmax, L.deg[x]);
  }
  Tuple cur;
  auto emit = [&](int s) {
    auto& v = g.by_degree[s];
    g.index.emplace(cur, v.size());
    v.push_back(cur);
  };
  // k slots still to fill, partial total s
  auto rec = [&](auto&& self, int k, int s) -> void {
    if (s + k * rmin > hi || s + k * rmax < lo) return;
    if (k == 0) {
      emit(s);
      return;
    }
    for (auto x : L.rest) {
      cur.push_back(x);
      self(self, k - 1, s + L.deg[x]);
      cur.pop_back();
    }
  };
  for (int n = 0; n <= N; ++n) {
    if (n > 0 && L.rest.empty()) break;
    if (L.has_first()) {
      for (auto x : L.first) {
        cur.assign(1, x);
        rec(rec, n, L.shift * n + L.deg[x]);
      }
    } else {
      cur.clear();
      rec(rec, n, L.shift * n);
    }
  }
  return g;
}

LevelSupport support_of(const Layout& L) {
  LevelSupport s;
  auto bounds = [&](const std::vector<std::uint32_t>& v, int& lo, int& hi) {
    lo = hi = 0;
    if (v.empty()) return;
    lo = hi = L.deg[v.front()];
    for (auto x : v) lo = std::min(lo, L.deg[x]), hi = std::max(hi, L.deg[x]);
  };
  if (L.has_first()) bounds(L.first, s.lo0, s.hi0);
  int rlo = 0, rhi = 0;
  bounds(L.rest, rlo, rhi);
  s.dlo = rlo + L.shift;
  s.dhi = rhi + L.shift;
  s.reduced_empty = L.rest.empty();
  return s;
}

// ---- face and coface pieces ----------------------------------------------

// Internal differential on every slot, Koszul signs, times `sign`.
template <class DiffFn>
void add_internal(const CoefficientRing& ring, const Layout& L, DiffFn&& diff, const Tuple& t, Scalar sign, Acc& out) {
  int pre = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (auto [y, c] : diff(t[i])) {
      Tuple nt = t;
      nt[i] = static_cast<std::uint32_t>(y);
      accumulate(ring, out, std::move(nt), ring.mul(ring.mul(sign, c), ring.sign(pre)));
    }
    pre += L.deg[t[i]];
  }
}

// Multiplies slots j and j+1.
void add_adjacent(const DGAlgebra& a, const Tuple& t, std::size_t j, Scalar sign, Acc& out) {
  const auto& ring = a.ring();
  for (auto [y, c] : a.product(t[j], t[j + 1])) {
    Tuple nt(t.begin(), t.begin() + j);
    nt.push_back(static_cast<std::uint32_t>(y));
    nt.insert(nt.end(), t.begin() + j + 2, t.end());
    accumulate(ring, out, std::move(nt), ring.mul(sign, c));
  }
}

// Cyclic face: a_n a_0 (x) a_1 ... a_{n-1}, with the sign of moving a_n to the front.
void add_cyclic_face(const DGAlgebra& a, const Layout& L, const Tuple& t, Scalar sign, Acc& out) {
  const auto& ring = a.ring();
  std::size_t n = t.size() - 1;
  int rest = 0;
  for (std::size_t j = 0; j < n; ++j) rest += L.deg[t[j]];
  Scalar s = ring.mul(sign, ring.sign(static_cast<long long>(L.deg[t[n]]) * rest));
  for (auto [y, c] : a.product(t[n], t[0])) {
    Tuple nt;
    nt.push_back(static_cast<std::uint32_t>(y));
    nt.insert(nt.end(), t.begin() + 1, t.begin() + n);
    accumulate(ring, out, std::move(nt), ring.mul(s, c));
  }
}

// Coface delta^i, 0 <= i <= n+1; delta^{n+1} rotates the left half of
// Delta(c_0) to the back.
void add_coface(const DGCoalgebra& c, const Layout& L, const Tuple& t, std::size_t i, Scalar sign, Acc& out) {
  const auto& ring = c.ring();
  std::size_t n = t.size() - 1;
  if (i <= n) {
    for (auto [lr, v] : c.coproduct(t[i])) {
      Tuple nt(t.begin(), t.begin() + i);
      nt.push_back(static_cast<std::uint32_t>(lr.first));
      nt.push_back(static_cast<std::uint32_t>(lr.second));
      nt.insert(nt.end(), t.begin() + i + 1, t.end());
      accumulate(ring, out, std::move(nt), ring.mul(sign, v));
    }
    return;
  }
  int tail = 0;
  for (std::size_t j = 1; j <= n; ++j) tail += L.deg[t[j]];
  for (auto [lr, v] : c.coproduct(t[0])) {
    Tuple nt;
    nt.push_back(static_cast<std::uint32_t>(lr.second));
    nt.insert(nt.end(), t.begin() + 1, t.end());
    nt.push_back(static_cast<std::uint32_t>(lr.first));
    long long k = static_cast<long long>(L.deg[lr.first]) * (L.deg[lr.second] + tail);
    accumulate(ring, out, std::move(nt), ring.mul(ring.mul(sign, v), ring.sign(k)));
  }
}

// ---- assembly ----------------------------------------------------------------

template <class TermsFn>
std::map<int, Matrix> assemble(const CoefficientRing& ring, const Generators& g, int lo, int hi, TermsFn&& terms) {
  std::map<int, Matrix> d;
  static const std::vector<Tuple> none;
  for (int t = lo; t <= hi; ++t) {
    auto src_it = g.by_degree.find(t);
    auto dst_it = g.by_degree.find(t - 1);
    const auto& src = src_it == g.by_degree.end() ? none : src_it->second;
    const auto& dst = dst_it == g.by_degree.end() ? none : dst_it->second;
    if (src.empty() || dst.empty()) continue;
    std::vector<Matrix::Triplet> trip;
    for (std::size_t j = 0; j < src.size(); ++j) {
      for (auto& [tup, c] : terms(src[j])) {
        if (c == 0) continue;
        auto it = g.index.find(tup);
        if (it == g.index.end()) throw std::logic_error("total complex: term outside the enumerated basis");
        trip.push_back({it->second, j, c});
      }
    }
    d.emplace(t, Matrix::from_triplets(ring, dst.size(), src.size(), trip));
  }
  return d;
}

std::string tuple_label(const Basis& b, const Tuple& t) {
  if (t.empty()) return "[]";
  std::string s;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += "|";
    s += b.name(t[i]);
  }
  return s;
}

TotalComplex finish(const CoefficientRing& ring, const Basis& basis, const Layout& L, const Generators& g,
                    std::map<int, Matrix> d, int N, const Window& w) {
  std::map<int, std::size_t> ranks;
  for (auto& [t, v] : g.by_degree) ranks[t] = v.size();
  GradedModule m(ring, ranks);
  TotalComplex tc;
  for (auto& [t, v] : g.by_degree) {
    std::vector<std::string> names;
    std::vector<int> lv;
    for (auto& tup : v) {
      names.push_back(tuple_label(basis, tup));
      lv.push_back(L.level(tup));
    }
    m.set_labels(t, std::move(names));
    tc.level_of[t] = std::move(lv);
  }
  tc.kind = L.kind;
  tc.levels = N;
  tc.window = w;
  tc.support = support_of(L);
  tc.complex = ChainComplex(m, std::move(d), {}, DataExtent{Window(w.lo - 1, w.hi + 1), false});
  return tc;
}

void require_finite(const StructureInfo& info, const std::string& what) {
  if (info.extent.known)
    throw InsufficientData(what + ": input only known on " + info.extent.known->to_string() +
                           "; total complexes need the whole structure");
}

void require_levels(int N) {
  if (N < 0) throw InvalidInput("truncation level must be >= 0");
}

Layout bar_layout(const DGAlgebra& a, BarKind kind) {
  Layout L;
  L.kind = kind;
  L.shift = 1;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    L.deg.push_back(a.basis().degree(i));
    L.first.push_back(static_cast<std::uint32_t>(i));
    if (i != a.unit()) L.rest.push_back(static_cast<std::uint32_t>(i));
  }
  if (kind == BarKind::kReducedBar) L.first.clear();
  return L;
}

bool has_slot(const Tuple& t, std::size_t from, std::size_t x) {
  for (std::size_t i = from; i < t.size(); ++i)
    if (t[i] == x) return true;
  return false;
}

}  // namespace

// ---- TotalComplex ----------------------------------------------------------

std::size_t TotalComplex::piece_rank(int level, int degree) const {
  auto it = level_of.find(degree);
  if (it == level_of.end()) return 0;
  return static_cast<std::size_t>(std::count(it->second.begin(), it->second.end(), level));
}

std::size_t TotalComplex::prefix(int degree, int n) const {
  auto it = level_of.find(degree);
  if (it == level_of.end()) return 0;
  return static_cast<std::size_t>(std::upper_bound(it->second.begin(), it->second.end(), n) - it->second.begin());
}

HomologyGroup TotalComplex::homology_at_level(int t, int n) const {
  if (n < 0 || n > levels) throw InvalidInput("level outside 0.." + std::to_string(levels));
  if (!window.contains(t)) throw InsufficientData("degree " + std::to_string(t) + " outside " + window.to_string());
  auto rows_t = iota(prefix(t, n));
  Matrix d_in = complex.d(t + 1).select(rows_t, iota(prefix(t + 1, n)));
  Matrix d_out = complex.d(t).select(iota(prefix(t - 1, n)), rows_t);
  return homology_group(d_in, d_out, complex.ring());
}

// ---- constructions -----------------------------------------------------------

TotalComplex normalized_bar(const DGAlgebra& a, int N, const Window& w) {
  require_levels(N);
  require_finite(a.info(), "bar");
  require_axioms(a);
  const auto& ring = a.ring();
  Layout L = bar_layout(a, BarKind::kCyclicBar);
  Generators g = enumerate(L, N, w.lo - 1, w.hi + 1);
  std::size_t unit = a.unit();
  auto diff = [&](std::size_t i) -> const Vec& { return a.diff(i); };
  auto terms = [&](const Tuple& t) {
    Acc out;
    std::size_t n = t.size() - 1;
    add_internal(ring, L, diff, t, ring.sign(n), out);
    for (std::size_t j = 0; j < n; ++j) add_adjacent(a, t, j, ring.sign(j), out);
    if (n > 0) add_cyclic_face(a, L, t, ring.sign(n), out);
    // quotient by the degenerate part
    std::erase_if(out, [&](const auto& kv) { return has_slot(kv.first, 1, unit); });
    return out;
  };
  auto d = assemble(ring, g, w.lo, w.hi + 1, terms);
  return finish(ring, a.basis(), L, g, std::move(d), N, w);
}

TotalComplex reduced_bar(const DGAlgebra& a, int N, const Window& w) {
  require_levels(N);
  require_finite(a.info(), "reduced bar");
  require_axioms(a);
  const auto& ring = a.ring();
  std::size_t unit = a.unit();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (i == unit) continue;
    for (auto [y, c] : a.diff(i))
      if (y == unit) throw InvalidInput("reduced bar: no augmentation, d(" + a.basis().name(i) + ") hits the unit");
    for (std::size_t j = 0; j < a.dim(); ++j) {
      if (j == unit) continue;
      for (auto [y, c] : a.product(i, j))
        if (y == unit)
          throw InvalidInput("reduced bar: no augmentation, " + a.basis().name(i) + "*" + a.basis().name(j) +
                             " hits the unit");
    }
  }
  Layout L = bar_layout(a, BarKind::kReducedBar);
  Generators g = enumerate(L, N, w.lo - 1, w.hi + 1);
  auto diff = [&](std::size_t i) -> const Vec& { return a.diff(i); };
  auto terms = [&](const Tuple& t) {
    Acc out;
    std::size_t n = t.size();
    add_internal(ring, L, diff, t, ring.sign(n), out);
    for (std::size_t j = 0; j + 1 < n; ++j) add_adjacent(a, t, j, ring.sign(j + 1), out);
    return out;
  };
  auto d = assemble(ring, g, w.lo, w.hi + 1, terms);
  return finish(ring, a.basis(), L, g, std::move(d), N, w);
}

TotalComplex conormalized_cobar(const DGCoalgebra& c_in, int N, const Window& w) {
  require_levels(N);
  require_finite(c_in.info(), "cobar");
  require_axioms(c_in);
  DGCoalgebra c = c_in.designated_counit() ? c_in : normalize_counit(c_in);
  std::size_t u = *c.designated_counit();
  const auto& ring = c.ring();
  Layout L;
  L.kind = BarKind::kCyclicCobar;
  L.shift = -1;
  for (std::size_t i = 0; i < c.dim(); ++i) {
    L.deg.push_back(c.basis().degree(i));
    L.first.push_back(static_cast<std::uint32_t>(i));
    if (i != u) L.rest.push_back(static_cast<std::uint32_t>(i));
  }
  Generators g = enumerate(L, N, w.lo - 1, w.hi + 1);
  auto diff = [&](std::size_t i) -> const Vec& { return c.diff(i); };
  auto terms = [&](const Tuple& t) {
    Acc out;
    std::size_t n = t.size() - 1;
    add_internal(ring, L, diff, t, ring.sign(n), out);
    if (static_cast<int>(n) < N)
      for (std::size_t i = 0; i <= n + 1; ++i) add_coface(c, L, t, i, ring.sign(i), out);
    // The conormalized part is a subcomplex: counit slots must cancel.
    for (auto& [tup, v] : out)
      if (v != 0 && has_slot(tup, 1, u))
        throw std::logic_error("cobar: differential leaves the conormalized subcomplex at " +
                               tuple_label(c.basis(), t));
    return out;
  };
  auto d = assemble(ring, g, w.lo, w.hi + 1, terms);
  return finish(ring, c.basis(), L, g, std::move(d), N, w);
}

// ---- homology with certificates --------------------------------------------

namespace {

std::string join_groups(const std::vector<HomologyGroup>& gs, const CoefficientRing& ring) {
  std::string s;
  for (std::size_t i = 0; i < gs.size(); ++i) {
    if (i) s += ",";
    s += gs[i].to_string(ring);
  }
  return s;
}

void classify(const TotalComplex& tc, HomologyEntry& e, const CoefficientRing& ring) {
  int t = e.degree, N = tc.levels;
  const auto& s = tc.support;
  if (s.empty(N)) {
    e.stability = Stability::kCertified;
    e.annotation = "levels >= " + std::to_string(N) + " are zero";
    return;
  }
  if (s.dlo >= 0 && s.lo(N) > t + 1) {
    e.stability = Stability::kCertified;
    e.annotation = "levels >= " + std::to_string(N) + " start in degree " + std::to_string(s.lo(N)) + " > t+1";
    return;
  }
  if (s.dhi <= 0 && s.hi(N) < t - 1) {
    e.stability = Stability::kCertified;
    e.annotation = "levels >= " + std::to_string(N) + " end in degree " + std::to_string(s.hi(N)) + " < t-1";
    return;
  }
  const auto& gr = e.growth;
  if (N >= 1 && gr[N] == gr[N - 1]) {
    int since = N;
    while (since > 0 && gr[since - 1] == gr[N]) --since;
    e.stability = Stability::kObservedStable;
    e.annotation = "unchanged since level " + std::to_string(since);
    return;
  }
  e.stability = Stability::kUnstable;
  if (N >= 1) {
    // constant free-rank step with fixed torsion over the last levels
    long long step = static_cast<long long>(gr[N].free_rank) - static_cast<long long>(gr[N - 1].free_rank);
    bool linear = step != 0;
    for (int n = std::max(1, N - 2); n <= N && linear; ++n) {
      long long dn = static_cast<long long>(gr[n].free_rank) - static_cast<long long>(gr[n - 1].free_rank);
      linear = dn == step && gr[n].torsion == gr[n - 1].torsion;
    }
    if (linear) {
      e.annotation = (step > 0 ? "+" : "") + std::to_string(step) + "/level";
      return;
    }
  }
  e.annotation = "growth " + join_groups(gr, ring);
}

}  // namespace

HomologyTable total_homology(const TotalComplex& tc, unsigned threads) {
  const auto& ring = tc.complex.ring();
  HomologyTable table(ring);
  for (int t = tc.window.lo; t <= tc.window.hi; ++t) table.entries.push_back(HomologyEntry{t, {}, {}, {}, {}});
  parallel_for(table.entries.size(), threads, [&](std::size_t i) {
    auto& e = table.entries[i];
    for (int n = 0; n <= tc.levels; ++n) e.growth.push_back(tc.homology_at_level(e.degree, n));
    e.group = e.growth.back();
    classify(tc, e, ring);
  });
  return table;
}

HomologyTable hochschild(const DGAlgebra& a, int N, const Window& w, unsigned threads) {
  return total_homology(normalized_bar(a, N, w), threads);
}

HomologyTable cohochschild(const DGCoalgebra& c, int N, const Window& w, unsigned threads) {
  return total_homology(conormalized_cobar(c, N, w), threads);
}

HomologyTable tor_one_sided(const DGAlgebra& a, int N, const Window& w, unsigned threads) {
  return total_homology(reduced_bar(a, N, w), threads);
}

std::map<std::pair<int, int>, HomologyGroup> tor_bigraded(const DGAlgebra& a, int N) {
  require_levels(N);
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (!a.diff(i).empty()) throw InvalidInput("tor_bigraded: the internal differential must vanish");
  Layout L = bar_layout(a, BarKind::kReducedBar);
  LevelSupport s = support_of(L);
  int lo = 0, hi = 0;
  for (int n = 0; n <= N; ++n) {
    if (s.empty(n)) break;
    lo = std::min(lo, s.lo(n));
    hi = std::max(hi, s.hi(n));
  }
  TotalComplex tc = reduced_bar(a, N, Window(lo, hi));
  std::map<std::pair<int, int>, HomologyGroup> out;
  // d_int = 0, so D maps (s, t) -> (s-1, t-1) and each (s, internal) line splits off.
  auto block = [&](int t, int lvl) { return range(tc.prefix(t, lvl - 1), tc.prefix(t, lvl)); };
  for (int lvl = 0; lvl < N; ++lvl) {
    for (int t = lo; t <= hi; ++t) {
      auto cols = block(t, lvl);
      if (cols.empty()) continue;
      Matrix d_out = tc.complex.d(t).select(block(t - 1, lvl - 1), cols);
      Matrix d_in = tc.complex.d(t + 1).select(cols, block(t + 1, lvl + 1));
      auto h = homology_group(d_in, d_out, a.ring());
      if (!h.is_zero()) out[{lvl, t - lvl}] = h;
    }
  }
  return out;
}

// ---- oracle ----------------------------------------------------------------

std::size_t oracle_cap() {
  if (const char* env = std::getenv("HOCH_ORACLE_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 4096;
}

HomologyTable oracle_unnormalized_bar(const DGAlgebra& a, int N, const Window& w, OracleMode mode) {
  require_levels(N);
  require_finite(a.info(), "oracle");
  require_axioms(a);
  const auto& ring = a.ring();
  Layout L = bar_layout(a, BarKind::kCyclicBar);
  L.rest = L.first;  // no normalization: every slot ranges over all of A
  int lo = w.lo - 2, hi = w.hi + 1;
  Generators g = enumerate(L, N, lo, hi);
  std::size_t cap = oracle_cap();
  for (auto& [t, v] : g.by_degree)
    if (v.size() > cap)
      throw InvalidInput("oracle: " + std::to_string(v.size()) + " generators in degree " + std::to_string(t) +
                         " exceed the cap " + std::to_string(cap) + " (HOCH_ORACLE_CAP)");
  auto diff = [&](std::size_t i) -> const Vec& { return a.diff(i); };
  auto full = [&](const Tuple& t) {
    Acc out;
    std::size_t n = t.size() - 1;
    add_internal(ring, L, diff, t, ring.sign(n), out);
    for (std::size_t j = 0; j < n; ++j) add_adjacent(a, t, j, ring.sign(j), out);
    if (n > 0) add_cyclic_face(a, L, t, ring.sign(n), out);
    return out;
  };
  auto raw = assemble(ring, g, lo + 1, hi, full);
  std::map<int, std::size_t> ranks;
  for (auto& [t, v] : g.by_degree) ranks[t] = v.size();

  if (mode == OracleMode::kRaw) {
    ChainComplex cx(GradedModule(ring, ranks), raw, {}, DataExtent{Window(lo, hi), false});
    return cx.homology(w);
  }

  // Moore complex: per degree, the joint kernel K of the non-cyclic faces,
  // level by level, with a left inverse Linv (Linv * K = 1).
  std::map<int, Matrix> K, Linv;
  for (int t = lo + 1; t <= hi; ++t) {
    auto it = g.by_degree.find(t);
    if (it == g.by_degree.end()) continue;
    const auto& src = it->second;
    auto dst_it = g.by_degree.find(t - 1);
    std::size_t ndst = dst_it == g.by_degree.end() ? 0 : dst_it->second.size();
    std::vector<Matrix::Triplet> kt, lt;
    std::size_t kcol = 0;
    std::size_t start = 0;
    while (start < src.size()) {
      int n = L.level(src[start]);
      std::size_t stop = start;
      while (stop < src.size() && L.level(src[stop]) == n) ++stop;
      std::size_t width = stop - start;
      if (n == 0) {
        for (std::size_t j = 0; j < width; ++j) {
          kt.push_back({start + j, kcol + j, 1});
          lt.push_back({kcol + j, start + j, 1});
        }
        kcol += width;
      } else {
        std::vector<Matrix::Triplet> ft;
        for (std::size_t j = 0; j < width; ++j)
          for (int i = 0; i < n; ++i) {
            Acc out;
            add_adjacent(a, src[start + j], static_cast<std::size_t>(i), 1, out);
            for (auto& [tup, c] : out) ft.push_back({i * ndst + g.index.at(tup), j, c});
          }
        Matrix F = Matrix::from_triplets(ring, static_cast<std::size_t>(n) * ndst, width, ft);
        auto sd = smith_decompose(F);
        std::size_t r = sd.rank();
        for (std::size_t k = r; k < width; ++k) {
          for (std::size_t row = 0; row < width; ++row) {
            Scalar v = sd.V.at(row, k);
            if (v) kt.push_back({start + row, kcol + (k - r), v});
          }
          for (const auto& e : sd.V_inv.row(k)) lt.push_back({kcol + (k - r), start + e.col, e.value});
        }
        kcol += width - r;
      }
      start = stop;
    }
    K.emplace(t, Matrix::from_triplets(ring, src.size(), kcol, kt));
    Linv.emplace(t, Matrix::from_triplets(ring, kcol, src.size(), lt));
  }
  std::map<int, std::size_t> mranks;
  for (auto& [t, k] : K)
    if (k.cols()) mranks[t] = k.cols();
  std::map<int, Matrix> md;
  for (auto& [t, m] : raw) {
    if (!K.count(t) || !K.count(t - 1)) continue;
    Matrix dk = m * K.at(t);
    Matrix dm = Linv.at(t - 1) * dk;
    if (!(K.at(t - 1) * dm == dk)) throw std::logic_error("oracle: Moore subcomplex not closed");
    if (dm.rows() && dm.cols()) md.emplace(t, dm);
  }
  ChainComplex moore(GradedModule(ring, mranks), md, {}, DataExtent{Window(lo + 1, hi), false});
  return moore.homology(w);
}

}  // namespace hoch
