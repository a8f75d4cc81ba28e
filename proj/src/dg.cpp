#include "hoch/dg.hpp"

#include <algorithm>
#include <sstream>

#include "hoch/errors.hpp"

namespace hoch {

Vec make_vec(const CoefficientRing& ring, const std::map<std::size_t, Scalar>& acc) {
  Vec v;
  for (auto [i, c] : acc) {
    Scalar x = ring.normalize(c);
    if (x != 0) v.emplace_back(i, x);
  }
  return v;
}

Vec2 make_vec2(const CoefficientRing& ring, const std::map<std::pair<std::size_t, std::size_t>, Scalar>& acc) {
  Vec2 v;
  for (auto [ij, c] : acc) {
    Scalar x = ring.normalize(c);
    if (x != 0) v.emplace_back(ij, x);
  }
  return v;
}

namespace {

Vec clean(const CoefficientRing& ring, const Vec& v) {
  std::map<std::size_t, Scalar> acc;
  for (auto [i, c] : v) acc[i] = ring.add(acc[i], c);
  return make_vec(ring, acc);
}

Vec2 clean2(const CoefficientRing& ring, const Vec2& v) {
  std::map<std::pair<std::size_t, std::size_t>, Scalar> acc;
  for (auto [ij, c] : v) acc[ij] = ring.add(acc[ij], c);
  return make_vec2(ring, acc);
}

const Vec kEmpty;

std::string dual_name(const std::string& name) {
  if (!name.empty() && name.back() == '*') return name.substr(0, name.size() - 1);
  return name + "*";
}

Connectivity support_connectivity(const Basis& basis, const StructureInfo& info) {
  Connectivity c = info.certificates;
  if (info.extent.known || info.extent.declared_unbounded || basis.size() == 0) return c;
  int lo = basis.by_degree().begin()->first;
  int hi = basis.by_degree().rbegin()->first;
  c.connective = c.connective ? std::max(*c.connective, lo) : lo;
  c.coconnective = c.coconnective ? std::min(*c.coconnective, hi) : hi;
  return c;
}

ChainComplex build_complex(const CoefficientRing& ring, const Basis& basis, const std::vector<Vec>& diff,
                           const Connectivity& conn, const DataExtent& extent) {
  GradedModule module = basis.module(ring);
  std::map<int, Matrix> diffs;
  for (const auto& [deg, idx] : basis.by_degree()) {
    std::vector<Matrix::Triplet> trip;
    for (std::size_t col = 0; col < idx.size(); ++col)
      for (auto [j, c] : diff[idx[col]]) {
        if (basis.degree(j) != deg - 1)
          throw AxiomFailure("grading: d(" + basis.name(idx[col]) + ") has component " + basis.name(j) +
                             " in degree " + std::to_string(basis.degree(j)));
        trip.push_back({basis.position(j), col, c});
      }
    if (!trip.empty()) diffs.emplace(deg, Matrix::from_triplets(ring, module.rank(deg - 1), idx.size(), trip));
  }
  return ChainComplex(module, diffs, conn, extent);
}

void check_index(std::size_t i, std::size_t dim, const char* what) {
  if (i >= dim) throw InvalidInput(std::string(what) + ": basis index out of range");
}

}  // namespace

// ---- Basis ----------------------------------------------------------------

Basis::Basis(std::vector<std::string> names, std::vector<int> degrees)
    : names_(std::move(names)), degrees_(std::move(degrees)) {
  if (names_.size() != degrees_.size()) throw InvalidInput("basis: names and degrees differ in length");
  position_.resize(names_.size());
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw InvalidInput("basis: empty name");
    if (!lookup_.emplace(names_[i], i).second) throw InvalidInput("basis: duplicate name '" + names_[i] + "'");
    auto& slot = by_degree_[degrees_[i]];
    position_[i] = slot.size();
    slot.push_back(i);
  }
}

std::size_t Basis::index(const std::string& name) const {
  auto it = lookup_.find(name);
  if (it == lookup_.end()) throw InvalidInput("basis: unknown element '" + name + "'");
  return it->second;
}

const std::vector<std::size_t>& Basis::in_degree(int degree) const {
  static const std::vector<std::size_t> none;
  auto it = by_degree_.find(degree);
  return it == by_degree_.end() ? none : it->second;
}

GradedModule Basis::module(const CoefficientRing& ring) const {
  std::map<int, std::size_t> ranks;
  for (const auto& [deg, idx] : by_degree_) ranks[deg] = idx.size();
  GradedModule m(ring, ranks);
  for (const auto& [deg, idx] : by_degree_) {
    std::vector<std::string> names;
    for (auto i : idx) names.push_back(names_[i]);
    m.set_labels(deg, std::move(names));
  }
  return m;
}

// ---- DGAlgebra ------------------------------------------------------------

DGAlgebra::DGAlgebra(CoefficientRing ring, Basis basis, std::vector<Vec> diff,
                     std::map<std::pair<std::size_t, std::size_t>, Vec> mult, std::size_t unit, StructureInfo info)
    : ring_(ring), basis_(std::move(basis)), unit_(unit), info_(std::move(info)) {
  const std::size_t n = basis_.size();
  diff.resize(n);
  if (diff.size() != n) throw InvalidInput("algebra: differential size mismatch");
  for (auto& v : diff) {
    for (auto [j, c] : v) check_index(j, n, "algebra differential");
    diff_.push_back(clean(ring_, v));
  }
  for (auto& [ab, v] : mult) {
    check_index(ab.first, n, "algebra product");
    check_index(ab.second, n, "algebra product");
    for (auto [j, c] : v) check_index(j, n, "algebra product");
    Vec cv = clean(ring_, v);
    if (!cv.empty()) mult_.emplace(ab, std::move(cv));
  }
  check_index(unit_, n, "algebra unit");
  if (basis_.degree(unit_) != 0) throw InvalidInput("algebra: unit '" + basis_.name(unit_) + "' is not in degree 0");
}

const Vec& DGAlgebra::product(std::size_t a, std::size_t b) const {
  auto it = mult_.find({a, b});
  return it == mult_.end() ? kEmpty : it->second;
}

Connectivity DGAlgebra::connectivity() const { return support_connectivity(basis_, info_); }

ChainComplex DGAlgebra::complex() const { return build_complex(ring_, basis_, diff_, connectivity(), info_.extent); }

Matrix DGAlgebra::mult_matrix(int i, int j) const {
  const auto& bi = basis_.in_degree(i);
  const auto& bj = basis_.in_degree(j);
  const auto& bk = basis_.in_degree(i + j);
  std::vector<Matrix::Triplet> trip;
  for (std::size_t a = 0; a < bi.size(); ++a)
    for (std::size_t b = 0; b < bj.size(); ++b)
      for (auto [k, c] : product(bi[a], bj[b]))
        if (basis_.degree(k) == i + j) trip.push_back({basis_.position(k), a * bj.size() + b, c});
  return Matrix::from_triplets(ring_, bk.size(), bi.size() * bj.size(), trip);
}

DGAlgebra DGAlgebra::renamed(std::string name) const {
  DGAlgebra out = *this;
  out.info_.name = std::move(name);
  return out;
}

bool operator==(const DGAlgebra& a, const DGAlgebra& b) {
  return a.ring_ == b.ring_ && a.basis_ == b.basis_ && a.diff_ == b.diff_ && a.mult_ == b.mult_ && a.unit_ == b.unit_;
}

// ---- DGCoalgebra ----------------------------------------------------------

DGCoalgebra::DGCoalgebra(CoefficientRing ring, Basis basis, std::vector<Vec> diff, std::vector<Vec2> comult, Vec counit,
                         StructureInfo info)
    : ring_(ring), basis_(std::move(basis)), info_(std::move(info)) {
  const std::size_t n = basis_.size();
  diff.resize(n);
  comult.resize(n);
  for (auto& v : diff) {
    for (auto [j, c] : v) check_index(j, n, "coalgebra differential");
    diff_.push_back(clean(ring_, v));
  }
  for (auto& v : comult) {
    for (auto [ij, c] : v) {
      check_index(ij.first, n, "coalgebra coproduct");
      check_index(ij.second, n, "coalgebra coproduct");
    }
    comult_.push_back(clean2(ring_, v));
  }
  for (auto [j, c] : counit) check_index(j, n, "coalgebra counit");
  counit_ = clean(ring_, counit);
  if (counit_.empty()) throw InvalidInput("coalgebra: counit is zero");
}

Scalar DGCoalgebra::counit_at(std::size_t i) const {
  for (auto [j, c] : counit_)
    if (j == i) return c;
  return 0;
}

std::optional<std::size_t> DGCoalgebra::designated_counit() const {
  if (counit_.size() == 1 && counit_[0].second == 1 && basis_.degree(counit_[0].first) == 0) return counit_[0].first;
  return std::nullopt;
}

Connectivity DGCoalgebra::connectivity() const { return support_connectivity(basis_, info_); }

ChainComplex DGCoalgebra::complex() const {
  return build_complex(ring_, basis_, diff_, connectivity(), info_.extent);
}

Matrix DGCoalgebra::comult_matrix(int n) const {
  GradedModule m = basis_.module(ring_);
  auto offsets = tensor_block_offsets(m, m, n);
  std::size_t total = 0;
  for (auto [i, off] : offsets) total += m.rank(i) * m.rank(n - i);
  const auto& src = basis_.in_degree(n);
  std::vector<Matrix::Triplet> trip;
  for (std::size_t col = 0; col < src.size(); ++col)
    for (auto [ab, c] : comult_[src[col]]) {
      int i = basis_.degree(ab.first);
      if (i + basis_.degree(ab.second) != n || !offsets.count(i)) continue;
      std::size_t row = offsets[i] + basis_.position(ab.first) * m.rank(n - i) + basis_.position(ab.second);
      trip.push_back({row, col, c});
    }
  return Matrix::from_triplets(ring_, total, src.size(), trip);
}

DGCoalgebra DGCoalgebra::renamed(std::string name) const {
  DGCoalgebra out = *this;
  out.info_.name = std::move(name);
  return out;
}

bool operator==(const DGCoalgebra& a, const DGCoalgebra& b) {
  return a.ring_ == b.ring_ && a.basis_ == b.basis_ && a.diff_ == b.diff_ && a.comult_ == b.comult_ &&
         a.counit_ == b.counit_;
}

// ---- axiom checks ---------------------------------------------------------

std::string AxiomReport::summary() const {
  if (ok()) return "all axioms hold";
  std::ostringstream os;
  os << violations.size() << " violation" << (violations.size() == 1 ? "" : "s");
  for (const auto& v : violations) os << "\n  " << v.axiom << ": " << v.detail;
  return os.str();
}

namespace {

constexpr std::size_t kMaxPerAxiom = 8;

class Reporter {
 public:
  explicit Reporter(std::optional<Window> w) : w_(w) {}
  bool in_window(int degree) const { return !w_ || w_->contains(degree); }
  void add(const std::string& axiom, const std::string& detail) {
    if (count_[axiom]++ < kMaxPerAxiom) report_.violations.push_back({axiom, detail});
  }
  AxiomReport take() {
    for (auto& [axiom, n] : count_)
      if (n > kMaxPerAxiom)
        report_.violations.push_back({axiom, std::to_string(n - kMaxPerAxiom) + " further violations omitted"});
    return std::move(report_);
  }

 private:
  std::optional<Window> w_;
  std::map<std::string, std::size_t> count_;
  AxiomReport report_;
};

std::string show(const Basis& b, const Vec& v) {
  if (v.empty()) return "0";
  std::ostringstream os;
  for (std::size_t k = 0; k < v.size(); ++k) os << (k ? " + " : "") << v[k].second << "*" << b.name(v[k].first);
  return os.str();
}

// Linear combination helpers over a fixed algebra.
struct AlgebraOps {
  const DGAlgebra& a;
  const CoefficientRing& ring;

  Vec mul(const Vec& x, const Vec& y) const {
    std::map<std::size_t, Scalar> acc;
    for (auto [i, ci] : x)
      for (auto [j, cj] : y)
        for (auto [k, ck] : a.product(i, j)) acc[k] = ring.add(acc[k], ring.mul(ring.mul(ci, cj), ck));
    return make_vec(ring, acc);
  }
  Vec d(const Vec& x) const {
    std::map<std::size_t, Scalar> acc;
    for (auto [i, ci] : x)
      for (auto [k, ck] : a.diff(i)) acc[k] = ring.add(acc[k], ring.mul(ci, ck));
    return make_vec(ring, acc);
  }
  Vec add(const Vec& x, const Vec& y, Scalar s = 1) const {
    std::map<std::size_t, Scalar> acc;
    for (auto [i, c] : x) acc[i] = ring.add(acc[i], c);
    for (auto [i, c] : y) acc[i] = ring.add(acc[i], ring.mul(s, c));
    return make_vec(ring, acc);
  }
};

}  // namespace

AxiomReport check_algebra_axioms(const DGAlgebra& a, std::optional<Window> w) {
  const Basis& b = a.basis();
  const CoefficientRing& ring = a.ring();
  AlgebraOps ops{a, ring};
  Reporter rep(w);
  const std::size_t n = a.dim();
  auto e = [](std::size_t i) { return Vec{{i, 1}}; };

  for (std::size_t i = 0; i < n; ++i)
    for (auto [j, c] : a.diff(i))
      if (b.degree(j) != b.degree(i) - 1 && rep.in_window(b.degree(i) - 1))
        rep.add("grading", "d(" + b.name(i) + ") has component " + b.name(j) + " of degree " +
                               std::to_string(b.degree(j)));
  for (const auto& [ab, v] : a.mult()) {
    int target = b.degree(ab.first) + b.degree(ab.second);
    for (auto [k, c] : v)
      if (b.degree(k) != target && rep.in_window(target))
        rep.add("grading", b.name(ab.first) + "*" + b.name(ab.second) + " has component " + b.name(k) +
                               " of degree " + std::to_string(b.degree(k)) + ", expected " + std::to_string(target));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!rep.in_window(b.degree(i) - 2)) continue;
    Vec dd = ops.d(a.diff(i));
    if (!dd.empty()) rep.add("differential", "d(d(" + b.name(i) + ")) = " + show(b, dd));
  }
  const std::size_t u = a.unit();
  if (!a.diff(u).empty()) rep.add("unit", "d(" + b.name(u) + ") = " + show(b, a.diff(u)));
  for (std::size_t i = 0; i < n; ++i) {
    if (!rep.in_window(b.degree(i))) continue;
    if (a.product(u, i) != e(i)) rep.add("unit", b.name(u) + "*" + b.name(i) + " = " + show(b, a.product(u, i)));
    if (a.product(i, u) != e(i)) rep.add("unit", b.name(i) + "*" + b.name(u) + " = " + show(b, a.product(i, u)));
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const Vec& xy = a.product(x, y);
      for (std::size_t z = 0; z < n; ++z) {
        if (!rep.in_window(b.degree(x) + b.degree(y) + b.degree(z))) continue;
        Vec left = ops.mul(xy, e(z));
        Vec right = ops.mul(e(x), a.product(y, z));
        if (left != right)
          rep.add("associativity", "(" + b.name(x) + "*" + b.name(y) + ")*" + b.name(z) + " = " + show(b, left) +
                                       " but " + b.name(x) + "*(" + b.name(y) + "*" + b.name(z) + ") = " +
                                       show(b, right));
      }
    }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (!rep.in_window(b.degree(x) + b.degree(y) - 1)) continue;
      Vec lhs = ops.d(a.product(x, y));
      Vec rhs = ops.add(ops.mul(a.diff(x), e(y)), ops.mul(e(x), a.diff(y)), ring.sign(b.degree(x)));
      if (lhs != rhs)
        rep.add("leibniz", "d(" + b.name(x) + "*" + b.name(y) + ") = " + show(b, lhs) + " but the rule gives " +
                               show(b, rhs));
    }
  return rep.take();
}

namespace {

using Vec3 = std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Scalar>;

std::string show2(const Basis& b, const Vec2& v) {
  if (v.empty()) return "0";
  std::ostringstream os;
  for (std::size_t k = 0; k < v.size(); ++k)
    os << (k ? " + " : "") << v[k].second << "*" << b.name(v[k].first.first) << "|" << b.name(v[k].first.second);
  return os.str();
}

}  // namespace

AxiomReport check_coalgebra_axioms(const DGCoalgebra& c, std::optional<Window> w) {
  const Basis& b = c.basis();
  const CoefficientRing& ring = c.ring();
  Reporter rep(w);
  const std::size_t n = c.dim();

  auto dvec = [&](const Vec& x) {
    std::map<std::size_t, Scalar> acc;
    for (auto [i, ci] : x)
      for (auto [k, ck] : c.diff(i)) acc[k] = ring.add(acc[k], ring.mul(ci, ck));
    return make_vec(ring, acc);
  };

  for (std::size_t i = 0; i < n; ++i) {
    if (!rep.in_window(b.degree(i) - 1) && !rep.in_window(b.degree(i))) continue;
    for (auto [j, k] : c.diff(i))
      if (b.degree(j) != b.degree(i) - 1)
        rep.add("grading", "d(" + b.name(i) + ") has component " + b.name(j) + " of degree " +
                               std::to_string(b.degree(j)));
    for (auto [ab, k] : c.coproduct(i))
      if (b.degree(ab.first) + b.degree(ab.second) != b.degree(i))
        rep.add("grading", "coproduct of " + b.name(i) + " has component " + b.name(ab.first) + "|" +
                               b.name(ab.second) + " of the wrong degree");
  }
  for (auto [j, k] : c.counit())
    if (b.degree(j) != 0) rep.add("grading", "counit is nonzero on " + b.name(j) + " of degree " + std::to_string(b.degree(j)));

  for (std::size_t i = 0; i < n; ++i) {
    if (!rep.in_window(b.degree(i) - 2)) continue;
    Vec dd = dvec(c.diff(i));
    if (!dd.empty()) rep.add("differential", "d(d(" + b.name(i) + ")) = " + show(b, dd));
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (!rep.in_window(b.degree(i))) continue;
    std::map<std::size_t, Scalar> left, right;
    for (auto [ab, k] : c.coproduct(i)) {
      left[ab.second] = ring.add(left[ab.second], ring.mul(c.counit_at(ab.first), k));
      right[ab.first] = ring.add(right[ab.first], ring.mul(c.counit_at(ab.second), k));
    }
    Vec id{{i, 1}};
    Vec l = make_vec(ring, left), r = make_vec(ring, right);
    if (l != id) rep.add("counit", "(eps|1)D(" + b.name(i) + ") = " + show(b, l));
    if (r != id) rep.add("counit", "(1|eps)D(" + b.name(i) + ") = " + show(b, r));
    Scalar ed = 0;
    for (auto [j, k] : c.diff(i)) ed = ring.add(ed, ring.mul(c.counit_at(j), k));
    if (ed != 0) rep.add("counit", "eps(d(" + b.name(i) + ")) = " + std::to_string(ed));
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (!rep.in_window(b.degree(i))) continue;
    Vec3 left, right;
    for (auto [ab, k] : c.coproduct(i)) {
      for (auto [xy, m] : c.coproduct(ab.first)) {
        auto key = std::make_tuple(xy.first, xy.second, ab.second);
        left[key] = ring.add(left[key], ring.mul(k, m));
      }
      for (auto [xy, m] : c.coproduct(ab.second)) {
        auto key = std::make_tuple(ab.first, xy.first, xy.second);
        right[key] = ring.add(right[key], ring.mul(k, m));
      }
    }
    std::erase_if(left, [](const auto& kv) { return kv.second == 0; });
    std::erase_if(right, [](const auto& kv) { return kv.second == 0; });
    if (left != right) {
      // Name the first triple where the two sides differ.
      std::tuple<std::size_t, std::size_t, std::size_t> bad{};
      Scalar lv = 0, rv = 0;
      for (const auto& [key, v] : left) {
        auto it = right.find(key);
        Scalar o = it == right.end() ? 0 : it->second;
        if (o != v) {
          bad = key, lv = v, rv = o;
          goto report;
        }
      }
      for (const auto& [key, v] : right)
        if (!left.count(key)) {
          bad = key, lv = 0, rv = v;
          break;
        }
    report:
      rep.add("coassociativity", "on " + b.name(i) + ": coefficient of (" + b.name(std::get<0>(bad)) + ", " +
                                     b.name(std::get<1>(bad)) + ", " + b.name(std::get<2>(bad)) + ") is " +
                                     std::to_string(lv) + " in (D|1)D but " + std::to_string(rv) + " in (1|D)D");
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (!rep.in_window(b.degree(i) - 1)) continue;
    std::map<std::pair<std::size_t, std::size_t>, Scalar> lhs, rhs;
    for (auto [j, k] : c.diff(i))
      for (auto [ab, m] : c.coproduct(j)) lhs[ab] = ring.add(lhs[ab], ring.mul(k, m));
    for (auto [ab, k] : c.coproduct(i)) {
      for (auto [x, m] : c.diff(ab.first)) {
        std::pair key{x, ab.second};
        rhs[key] = ring.add(rhs[key], ring.mul(k, m));
      }
      Scalar s = ring.sign(b.degree(ab.first));
      for (auto [y, m] : c.diff(ab.second)) {
        std::pair key{ab.first, y};
        rhs[key] = ring.add(rhs[key], ring.mul(s, ring.mul(k, m)));
      }
    }
    Vec2 l = make_vec2(ring, lhs), r = make_vec2(ring, rhs);
    if (l != r)
      rep.add("co-leibniz", "D(d(" + b.name(i) + ")) = " + show2(b, l) + " but (d|1 + 1|d)D gives " + show2(b, r));
  }
  return rep.take();
}

void require_axioms(const DGAlgebra& a) {
  AxiomReport r = check_algebra_axioms(a);
  if (!r.ok()) throw AxiomFailure("algebra " + a.name() + ": " + r.summary());
}

void require_axioms(const DGCoalgebra& c) {
  AxiomReport r = check_coalgebra_axioms(c);
  if (!r.ok()) throw AxiomFailure("coalgebra " + c.name() + ": " + r.summary());
}

// ---- dualization ----------------------------------------------------------

namespace {

void require_finite(const StructureInfo& info, const Connectivity& conn, const Basis& basis,
                    const std::optional<Window>& w, const char* what) {
  if (info.extent.known || info.extent.declared_unbounded)
    throw InvalidInput(std::string(what) + ": input is a window of an infinite-type object");
  if (!conn.connective && !conn.coconnective)
    throw InvalidInput(std::string(what) + ": no (co)connectivity certificate");
  if (w && basis.size()) {
    int lo = basis.by_degree().begin()->first, hi = basis.by_degree().rbegin()->first;
    if (!(w->lo <= -hi && -lo <= w->hi))
      throw InsufficientData(std::string(what) + ": window " + w->to_string() + " does not cover the dual support " +
                             std::to_string(-hi) + ":" + std::to_string(-lo));
  }
}

Basis dual_basis(const Basis& b) {
  std::vector<std::string> names;
  std::vector<int> degrees;
  for (std::size_t i = 0; i < b.size(); ++i) {
    names.push_back(dual_name(b.name(i)));
    degrees.push_back(-b.degree(i));
  }
  return Basis(names, degrees);
}

std::vector<Vec> dual_diff(const CoefficientRing& ring, const Basis& b, const std::vector<Vec>& diff) {
  std::vector<std::map<std::size_t, Scalar>> acc(b.size());
  for (std::size_t x = 0; x < b.size(); ++x)
    for (auto [a, c] : diff[x]) {
      // (d f_a)(x) = (-1)^{|f_a|+1} f_a(dx); |f_a| = -|a|.
      Scalar s = ring.sign(-b.degree(a) + 1);
      acc[a][x] = ring.add(acc[a][x], ring.mul(s, c));
    }
  std::vector<Vec> out;
  for (auto& m : acc) out.push_back(make_vec(ring, m));
  return out;
}

StructureInfo dual_info(const StructureInfo& info, const Connectivity& conn, const CoefficientRing& ring) {
  StructureInfo out;
  out.name = info.name.empty() ? "" : "dual(" + info.name + ")";
  out.certificates = predict_bounds({BoundOp::kDual, conn, {}, ring.global_dimension()});
  return out;
}

}  // namespace

DGCoalgebra dualize_algebra(const DGAlgebra& a, std::optional<Window> w) {
  const CoefficientRing& ring = a.ring();
  const Basis& b = a.basis();
  require_finite(a.info(), a.connectivity(), b, w, "dualize_algebra");
  std::vector<Vec> diff;
  for (std::size_t i = 0; i < b.size(); ++i) diff.push_back(a.diff(i));
  std::vector<std::map<std::pair<std::size_t, std::size_t>, Scalar>> acc(b.size());
  for (const auto& [xy, v] : a.mult()) {
    Scalar s = ring.sign(static_cast<long long>(b.degree(xy.first)) * b.degree(xy.second));
    for (auto [c, m] : v) acc[c][xy] = ring.add(acc[c][xy], ring.mul(s, m));
  }
  std::vector<Vec2> comult;
  for (auto& m : acc) comult.push_back(make_vec2(ring, m));
  return DGCoalgebra(ring, dual_basis(b), dual_diff(ring, b, diff), comult, Vec{{a.unit(), 1}},
                     dual_info(a.info(), a.connectivity(), ring));
}

DGAlgebra dualize_coalgebra(const DGCoalgebra& input, std::optional<Window> w) {
  require_finite(input.info(), input.connectivity(), input.basis(), w, "dualize_coalgebra");
  DGCoalgebra c = input.designated_counit() ? input : normalize_counit(input);
  const CoefficientRing& ring = c.ring();
  const Basis& b = c.basis();
  std::vector<Vec> diff;
  for (std::size_t i = 0; i < b.size(); ++i) diff.push_back(c.diff(i));
  std::map<std::pair<std::size_t, std::size_t>, std::map<std::size_t, Scalar>> acc;
  for (std::size_t k = 0; k < b.size(); ++k)
    for (auto [xy, m] : c.coproduct(k)) {
      Scalar s = ring.sign(static_cast<long long>(b.degree(xy.first)) * b.degree(xy.second));
      acc[xy][k] = ring.add(acc[xy][k], ring.mul(s, m));
    }
  std::map<std::pair<std::size_t, std::size_t>, Vec> mult;
  for (auto& [xy, m] : acc) mult[xy] = make_vec(ring, m);
  return DGAlgebra(ring, dual_basis(b), dual_diff(ring, b, diff), mult, *c.designated_counit(),
                   dual_info(c.info(), c.connectivity(), ring));
}

// ---- basis changes --------------------------------------------------------

namespace {

std::vector<Vec> columns_of(const Matrix& m) {
  Matrix t = m.transpose();
  std::vector<Vec> cols(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (const auto& e : t.row(j)) cols[j].emplace_back(e.col, e.value);
  return cols;
}

void check_change(const Basis& b, const Matrix& P, const Matrix& P_inv, const CoefficientRing& ring) {
  const std::size_t n = b.size();
  if (P.rows() != n || P.cols() != n || P_inv.rows() != n || P_inv.cols() != n)
    throw InvalidInput("change_basis: matrix shape does not match the basis");
  if (!(P * P_inv == Matrix::identity(ring, n))) throw InvalidInput("change_basis: P_inv is not the inverse of P");
  for (std::size_t r = 0; r < n; ++r)
    for (const auto& e : P.row(r))
      if (b.degree(r) != b.degree(e.col)) throw InvalidInput("change_basis: P does not preserve degrees");
}

struct Rebase {
  const CoefficientRing& ring;
  std::vector<Vec> pcols, qcols;  // columns of P and of P_inv

  // Old coordinates -> new coordinates.
  Vec to_new(const std::map<std::size_t, Scalar>& old) const {
    std::map<std::size_t, Scalar> acc;
    for (auto [i, c] : old)
      for (auto [k, q] : qcols[i]) acc[k] = ring.add(acc[k], ring.mul(c, q));
    return make_vec(ring, acc);
  }
};

}  // namespace

DGAlgebra change_basis(const DGAlgebra& a, const Matrix& P, const Matrix& P_inv) {
  const CoefficientRing& ring = a.ring();
  check_change(a.basis(), P, P_inv, ring);
  Rebase rb{ring, columns_of(P), columns_of(P_inv)};
  const std::size_t n = a.dim();
  if (rb.pcols[a.unit()] != Vec{{a.unit(), 1}}) throw InvalidInput("change_basis: P must fix the unit");
  std::vector<Vec> diff(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::map<std::size_t, Scalar> acc;
    for (auto [i, c] : rb.pcols[j])
      for (auto [k, d] : a.diff(i)) acc[k] = ring.add(acc[k], ring.mul(c, d));
    diff[j] = rb.to_new(acc);
  }
  std::map<std::pair<std::size_t, std::size_t>, Vec> mult;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      std::map<std::size_t, Scalar> acc;
      for (auto [i, ci] : rb.pcols[x])
        for (auto [j, cj] : rb.pcols[y])
          for (auto [k, m] : a.product(i, j)) acc[k] = ring.add(acc[k], ring.mul(ring.mul(ci, cj), m));
      Vec v = rb.to_new(acc);
      if (!v.empty()) mult[{x, y}] = v;
    }
  return DGAlgebra(ring, a.basis(), diff, mult, a.unit(), a.info());
}

DGCoalgebra change_basis(const DGCoalgebra& c, const Matrix& P, const Matrix& P_inv) {
  const CoefficientRing& ring = c.ring();
  check_change(c.basis(), P, P_inv, ring);
  Rebase rb{ring, columns_of(P), columns_of(P_inv)};
  const std::size_t n = c.dim();
  std::vector<Vec> diff(n);
  std::vector<Vec2> comult(n);
  Vec counit;
  for (std::size_t j = 0; j < n; ++j) {
    std::map<std::size_t, Scalar> acc;
    std::map<std::pair<std::size_t, std::size_t>, Scalar> old2;
    Scalar eps = 0;
    for (auto [i, ci] : rb.pcols[j]) {
      for (auto [k, d] : c.diff(i)) acc[k] = ring.add(acc[k], ring.mul(ci, d));
      for (auto [ab, m] : c.coproduct(i)) old2[ab] = ring.add(old2[ab], ring.mul(ci, m));
      eps = ring.add(eps, ring.mul(ci, c.counit_at(i)));
    }
    diff[j] = rb.to_new(acc);
    std::map<std::pair<std::size_t, std::size_t>, Scalar> acc2;
    for (auto [ab, m] : old2)
      for (auto [x, qa] : rb.qcols[ab.first])
        for (auto [y, qb] : rb.qcols[ab.second])
          acc2[{x, y}] = ring.add(acc2[{x, y}], ring.mul(m, ring.mul(qa, qb)));
    comult[j] = make_vec2(ring, acc2);
    if (eps != 0) counit.emplace_back(j, eps);
  }
  return DGCoalgebra(ring, c.basis(), diff, comult, counit, c.info());
}

DGCoalgebra normalize_counit(const DGCoalgebra& c) {
  if (c.designated_counit()) return c;
  const CoefficientRing& ring = c.ring();
  std::optional<std::size_t> pivot;
  for (auto [j, e] : c.counit())
    if (c.basis().degree(j) == 0 && ring.is_unit(e)) {
      pivot = j;
      break;
    }
  if (!pivot) throw InvalidInput("normalize_counit: no degree-0 basis element has a unit counit value");
  const std::size_t n = c.dim(), k = *pivot;
  const Scalar ek = c.counit_at(k), ek_inv = ring.inv(ek);
  Matrix P = Matrix::identity(ring, n), Q = Matrix::identity(ring, n);
  P.set(k, k, ek_inv);
  Q.set(k, k, ek);
  for (auto [j, e] : c.counit()) {
    if (j == k || c.basis().degree(j) != 0) continue;
    // x'_j = x_j - e_j e_k^{-1} x_k, and back: x_j = x'_j + e_j x'_k.
    P.set(k, j, ring.neg(ring.mul(e, ek_inv)));
    Q.set(k, j, e);
  }
  return change_basis(c, P, Q);
}

namespace {

Matrix eta_basis_matrix(const Basis& b, const CoefficientRing& ring) {
  Matrix P(ring, b.size(), b.size());
  for (std::size_t i = 0; i < b.size(); ++i) P.set(i, i, ring.sign(b.degree(i)));
  return P;
}

}  // namespace

DGAlgebra transport_along_eta(const DGAlgebra& a) {
  Matrix P = eta_basis_matrix(a.basis(), a.ring());
  return change_basis(a, P, P);
}

DGCoalgebra transport_along_eta(const DGCoalgebra& c) {
  Matrix P = eta_basis_matrix(c.basis(), c.ring());
  return change_basis(c, P, P);
}

// ---- double dual ----------------------------------------------------------

Matrix eta_matrix(const ChainComplex& x, int degree) {
  return Matrix::identity(x.ring(), x.rank(degree)).scaled(x.ring().sign(degree));
}

bool DoubleDualReport::all_iso() const {
  for (auto [deg, iso] : iso_by_degree)
    if (!iso) return false;
  return chain_map;
}

DoubleDualReport double_dual_unit(const ChainComplex& x, const Window& w) {
  ChainComplex xvv = dual(dual(x, w.reflected()), w);
  DoubleDualReport rep;
  for (int i = w.lo; i <= w.hi; ++i) {
    Matrix eta = eta_matrix(x, i);
    bool iso = xvv.rank(i) == x.rank(i) && rank(eta) == x.rank(i);
    if (!x.ring().is_field()) iso = iso && smith_normal_form(eta) == std::vector<Scalar>(x.rank(i), 1);
    rep.iso_by_degree[i] = iso;
    if (i > w.lo && iso && xvv.rank(i - 1) == x.rank(i - 1)) {
      Matrix lhs = xvv.d(i) * eta;
      Matrix rhs = eta_matrix(x, i - 1) * x.d(i);
      if (!(lhs == rhs)) rep.chain_map = false;
    }
  }
  return rep;
}

DualizabilityVerdict is_dualizable(const ChainComplex& x) {
  if (x.extent().declared_unbounded)
    return {false, "declared unbounded: the data is a window of an object with infinitely many nonzero degrees"};
  if (x.extent().known)
    throw InvalidInput("is_dualizable: windowed data " + x.extent().known->to_string() +
                       " without a statement about the degrees outside it");
  auto w = x.data_window();
  if (!w) return {true, "zero complex"};
  for (int t = w->lo; t <= w->hi; ++t) (void)x.homology_at(t);
  return {true, "finite rank in degrees " + w->to_string() + ", zero elsewhere"};
}

}  // namespace hoch
