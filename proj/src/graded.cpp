#include "hoch/graded.hpp"
#include "hoch/parallel.hpp"

#include <algorithm>
#include <charconv>
#include <exception>
#include <numeric>
#include <thread>

#include "hoch/errors.hpp"

namespace hoch {

namespace {

std::vector<std::size_t> iota_range(std::size_t a, std::size_t b) {
  std::vector<std::size_t> v(b > a ? b - a : 0);
  std::iota(v.begin(), v.end(), a);
  return v;
}

std::string dual_label(const std::string& name) {
  if (!name.empty() && name.back() == '*') return name.substr(0, name.size() - 1);
  return name + "*";
}

}  // namespace

// ---- Window ---------------------------------------------------------------

Window::Window(int lo_, int hi_) : lo(lo_), hi(hi_) {
  if (lo > hi) throw InvalidInput("window: lo " + std::to_string(lo) + " > hi " + std::to_string(hi));
}

Window Window::parse(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw InvalidInput("window: expected lo:hi, got '" + text + "'");
  auto num = [&](std::string_view s) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
      throw InvalidInput("window: bad bound in '" + text + "'");
    return v;
  };
  std::string_view sv(text);
  return Window(num(sv.substr(0, colon)), num(sv.substr(colon + 1)));
}

std::string Window::to_string() const { return std::to_string(lo) + ":" + std::to_string(hi); }

// ---- GradedModule ---------------------------------------------------------

GradedModule::GradedModule(CoefficientRing ring, const std::map<int, std::size_t>& ranks) : ring_(ring) {
  for (auto [deg, r] : ranks)
    if (r > 0) ranks_[deg] = r;
}

std::size_t GradedModule::rank(int degree) const {
  auto it = ranks_.find(degree);
  return it == ranks_.end() ? 0 : it->second;
}

std::optional<int> GradedModule::min_degree() const {
  if (ranks_.empty()) return std::nullopt;
  return ranks_.begin()->first;
}

std::optional<int> GradedModule::max_degree() const {
  if (ranks_.empty()) return std::nullopt;
  return ranks_.rbegin()->first;
}

std::size_t GradedModule::total_rank() const {
  std::size_t n = 0;
  for (auto [deg, r] : ranks_) n += r;
  return n;
}

void GradedModule::set_labels(int degree, std::vector<std::string> names) {
  if (names.size() != rank(degree))
    throw InvalidInput("graded module: " + std::to_string(names.size()) + " labels for rank " +
                       std::to_string(rank(degree)) + " in degree " + std::to_string(degree));
  if (names.empty()) return;
  labels_[degree] = std::move(names);
}

std::vector<std::string> GradedModule::labels(int degree) const {
  auto it = labels_.find(degree);
  if (it != labels_.end()) return it->second;
  std::vector<std::string> out;
  for (std::size_t i = 0; i < rank(degree); ++i) out.push_back("e" + std::to_string(degree) + "_" + std::to_string(i));
  return out;
}

// ---- bounds ---------------------------------------------------------------

Connectivity predict_bounds(const BoundsQuery& q) {
  Connectivity out;
  const int d = q.global_dimension;
  if (q.op == BoundOp::kDual) {
    if (!q.first.connective && !q.first.coconnective)
      throw InvalidInput("predict_bounds: dual needs a connectivity certificate");
    if (q.first.connective) out.coconnective = -*q.first.connective;
    if (q.first.coconnective) out.connective = -(*q.first.coconnective + d);
    return out;
  }
  bool conn = q.first.connective && q.second.connective;
  bool coconn = q.first.coconnective && q.second.coconnective;
  if (!conn && !coconn) throw InvalidInput("predict_bounds: tensor needs matching certificates on both factors");
  if (conn) out.connective = *q.first.connective + *q.second.connective;
  if (coconn) out.coconnective = *q.first.coconnective + *q.second.coconnective + d;
  return out;
}

namespace {

Connectivity try_bounds(const BoundsQuery& q) {
  try {
    return predict_bounds(q);
  } catch (const InvalidInput&) {
    return {};
  }
}

}  // namespace

std::string to_string(Stability s) {
  switch (s) {
    case Stability::kExact: return "exact";
    case Stability::kCertified: return "certified";
    case Stability::kObservedStable: return "observed-stable";
    case Stability::kUnstable: return "unstable";
    case Stability::kWindowEdge: return "edge";
  }
  return "?";
}

const HomologyEntry* HomologyTable::find(int degree) const {
  for (const auto& e : entries)
    if (e.degree == degree) return &e;
  return nullptr;
}

const HomologyEntry& HomologyTable::at(int degree) const {
  const HomologyEntry* e = find(degree);
  if (!e) throw InvalidInput("homology table: no entry for degree " + std::to_string(degree));
  return *e;
}

// ---- ChainComplex ---------------------------------------------------------

ChainComplex::ChainComplex(GradedModule module, std::map<int, Matrix> differentials, Connectivity connectivity,
                           DataExtent extent)
    : module_(std::move(module)), conn_(connectivity), extent_(extent) {
  const CoefficientRing& ring = module_.ring();
  for (auto& [n, m] : differentials) {
    if (m.ring() != ring) throw InvalidInput("chain complex: differential ring mismatch in degree " + std::to_string(n));
    if (m.rows() != rank(n - 1) || m.cols() != rank(n))
      throw InvalidInput("chain complex: d_" + std::to_string(n) + " has shape " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", expected " + std::to_string(rank(n - 1)) + "x" +
                         std::to_string(rank(n)));
    if (!m.is_zero()) d_.emplace(n, std::move(m));
  }
  for (const auto& [n, m] : d_) {
    auto below = d_.find(n - 1);
    if (below != d_.end() && !(below->second * m).is_zero())
      throw AxiomFailure("chain complex: d_" + std::to_string(n - 1) + " * d_" + std::to_string(n) + " != 0");
  }
  check_certificates();
}

Matrix ChainComplex::d(int n) const {
  auto it = d_.find(n);
  if (it != d_.end()) return it->second;
  return Matrix(ring(), rank(n - 1), rank(n));
}

std::optional<Window> ChainComplex::data_window() const {
  if (extent_.known) return extent_.known;
  auto lo = module_.min_degree(), hi = module_.max_degree();
  if (!lo) return std::nullopt;
  return Window(*lo, *hi);
}

ChainComplex ChainComplex::with_connectivity(Connectivity c) const {
  return ChainComplex(module_, d_, c, extent_);
}

ChainComplex ChainComplex::with_extent(DataExtent e) const {
  ChainComplex out = *this;
  out.extent_ = e;
  return out;
}

void ChainComplex::check_certificates() const {
  if (!is_complete() || module_.is_zero()) return;
  for (auto [deg, r] : module_.ranks()) {
    bool below = conn_.connective && deg < *conn_.connective;
    bool above = conn_.coconnective && deg > *conn_.coconnective;
    if ((below || above) && !homology_at(deg).is_zero())
      throw InvalidInput("chain complex: certificate violated, homology nonzero in degree " + std::to_string(deg));
  }
}

HomologyGroup ChainComplex::homology_at(int degree) const {
  return homology_group(d(degree + 1), d(degree), ring());
}

HomologyTable ChainComplex::homology(const Window& w, unsigned threads) const {
  HomologyTable table(ring());
  std::vector<int> degrees;
  for (int t = w.lo; t <= w.hi; ++t) {
    if (extent_.known && !extent_.known->contains(t))
      throw InsufficientData("homology: degree " + std::to_string(t) + " outside data window " +
                             extent_.known->to_string());
    degrees.push_back(t);
  }
  table.entries.resize(degrees.size());
  auto work = [&](std::size_t i) {
    int t = degrees[i];
    HomologyEntry& e = table.entries[i];
    e.degree = t;
    e.group = homology_at(t);
    if (extent_.known && !(extent_.known->contains(t - 1) && extent_.known->contains(t + 1))) {
      e.stability = Stability::kWindowEdge;
      e.annotation = "neighbour outside data " + extent_.known->to_string();
    }
  };
  parallel_for(degrees.size(), threads, work);
  return table;
}

// ---- constructions --------------------------------------------------------

ChainComplex unit_complex(CoefficientRing ring) {
  GradedModule m(ring, {{0, 1}});
  m.set_labels(0, {"1"});
  return ChainComplex(m, {}, Connectivity{0, 0});
}

std::map<int, std::size_t> tensor_block_offsets(const GradedModule& c, const GradedModule& d, int n) {
  std::map<int, std::size_t> off;
  std::size_t pos = 0;
  for (auto [i, ri] : c.ranks()) {
    std::size_t rj = d.rank(n - i);
    if (rj == 0) continue;
    off[i] = pos;
    pos += ri * rj;
  }
  return off;
}

namespace {

std::optional<Window> hull_sum(const std::optional<Window>& a, const std::optional<Window>& b) {
  if (!a || !b) return std::nullopt;
  return Window(a->lo + b->lo, a->hi + b->hi);
}

}  // namespace

ChainComplex tensor(const ChainComplex& c, const ChainComplex& d, const Window& w) {
  if (c.ring() != d.ring()) throw InvalidInput("tensor: ring mismatch");
  const CoefficientRing& ring = c.ring();
  const GradedModule& mc = c.module();
  const GradedModule& md = d.module();

  std::map<int, std::size_t> ranks;
  std::map<int, std::map<int, std::size_t>> offsets;
  for (int n = w.lo; n <= w.hi; ++n) {
    offsets[n] = tensor_block_offsets(mc, md, n);
    std::size_t total = 0;
    for (auto [i, off] : offsets[n]) total += mc.rank(i) * md.rank(n - i);
    if (total) ranks[n] = total;
  }
  GradedModule module(ring, ranks);
  bool labeled = true;
  for (auto [deg, r] : mc.ranks()) labeled = labeled && mc.has_labels(deg);
  for (auto [deg, r] : md.ranks()) labeled = labeled && md.has_labels(deg);
  if (labeled) {
    for (auto [n, r] : ranks) {
      std::vector<std::string> names;
      for (auto [i, off] : offsets[n])
        for (const auto& a : mc.labels(i))
          for (const auto& b : md.labels(n - i)) names.push_back(a + "|" + b);
      module.set_labels(n, std::move(names));
    }
  }

  std::map<int, Matrix> diffs;
  for (int n = w.lo + 1; n <= w.hi; ++n) {
    if (!module.rank(n) || !module.rank(n - 1)) continue;
    std::vector<Matrix::Triplet> trip;
    const auto& src = offsets[n];
    const auto& dst = offsets[n - 1];
    for (auto [i, off] : src) {
      int j = n - i;
      std::size_t ri = mc.rank(i), rj = md.rank(j);
      // da (x) b
      if (dst.count(i - 1)) {
        Matrix dc = c.d(i);
        std::size_t base = dst.at(i - 1);
        for (std::size_t r = 0; r < dc.rows(); ++r)
          for (const auto& e : dc.row(r))
            for (std::size_t b = 0; b < rj; ++b) trip.push_back({base + r * rj + b, off + e.col * rj + b, e.value});
      }
      // (-1)^i a (x) db
      if (dst.count(i)) {
        Matrix dd = d.d(j);
        std::size_t rj1 = md.rank(j - 1);
        std::size_t base = dst.at(i);
        Scalar s = ring.sign(i);
        for (std::size_t a = 0; a < ri; ++a)
          for (std::size_t r = 0; r < dd.rows(); ++r)
            for (const auto& e : dd.row(r))
              trip.push_back({base + a * rj1 + r, off + a * rj + e.col, ring.mul(s, e.value)});
      }
    }
    diffs.emplace(n, Matrix::from_triplets(ring, module.rank(n - 1), module.rank(n), trip));
  }

  Connectivity conn = try_bounds({BoundOp::kTensor, c.connectivity(), d.connectivity(), ring.global_dimension()});
  DataExtent ext;
  ext.declared_unbounded = c.extent().declared_unbounded || d.extent().declared_unbounded;
  auto hull = hull_sum(c.data_window(), d.data_window());
  bool covers = hull && w.lo <= hull->lo && hull->hi <= w.hi;
  if (!(c.is_complete() && d.is_complete() && (covers || !hull))) ext.known = w;
  return ChainComplex(module, diffs, conn, ext);
}

ChainComplex tensor(const ChainComplex& c, const ChainComplex& d) {
  auto hull = hull_sum(c.data_window(), d.data_window());
  if (!hull) {
    // One factor is zero: the product is zero.
    ChainComplex z(c.ring());
    return z;
  }
  ChainComplex out = tensor(c, d, *hull);
  if (c.is_complete() && d.is_complete()) return out;
  DataExtent ext = out.extent();
  ext.known = *hull;
  return out.with_extent(ext);
}

ChainComplex tensor_power(const ChainComplex& c, int n) {
  if (n < 0) throw InvalidInput("tensor_power: negative exponent");
  ChainComplex out = unit_complex(c.ring());
  for (int k = 0; k < n; ++k) out = tensor(out, c);
  if (n == 0) {
    DataExtent ext;
    return out.with_extent(ext);
  }
  return out;
}

ChainComplex dual(const ChainComplex& c, const Window& w) {
  const CoefficientRing& ring = c.ring();
  if (c.extent().known) {
    Window need = w.reflected();
    const Window& k = *c.extent().known;
    if (need.lo < k.lo || need.hi > k.hi)
      throw InsufficientData("dual: reflected window " + need.to_string() + " not covered by data " + k.to_string());
  }
  std::map<int, std::size_t> ranks;
  for (int i = w.lo; i <= w.hi; ++i)
    if (c.rank(-i)) ranks[i] = c.rank(-i);
  GradedModule module(ring, ranks);
  for (auto [i, r] : ranks)
    if (c.module().has_labels(-i)) {
      std::vector<std::string> names;
      for (const auto& s : c.module().labels(-i)) names.push_back(dual_label(s));
      module.set_labels(i, std::move(names));
    }
  std::map<int, Matrix> diffs;
  for (int i = w.lo + 1; i <= w.hi; ++i) {
    if (!module.rank(i) || !module.rank(i - 1)) continue;
    diffs.emplace(i, c.d(-i + 1).transpose().scaled(ring.sign(i + 1)));
  }
  Connectivity conn = try_bounds({BoundOp::kDual, c.connectivity(), {}, ring.global_dimension()});
  DataExtent ext;
  ext.declared_unbounded = c.extent().declared_unbounded;
  auto src = c.data_window();
  bool covers = src && w.lo <= -src->hi && -src->lo <= w.hi;
  if (!c.is_complete() || !(covers || !src)) ext.known = w;
  return ChainComplex(module, diffs, conn, ext);
}

ChainComplex dual(const ChainComplex& c) {
  auto src = c.data_window();
  if (!src) return ChainComplex(c.ring());
  return dual(c, src->reflected());
}

ChainComplex shift(const ChainComplex& c, int k) {
  const CoefficientRing& ring = c.ring();
  std::map<int, std::size_t> ranks;
  for (auto [deg, r] : c.module().ranks()) ranks[deg + k] = r;
  GradedModule module(ring, ranks);
  for (auto [deg, r] : c.module().ranks())
    if (c.module().has_labels(deg)) module.set_labels(deg + k, c.module().labels(deg));
  std::map<int, Matrix> diffs;
  for (const auto& [n, m] : c.differentials()) diffs.emplace(n + k, m.scaled(ring.sign(k)));
  Connectivity conn;
  if (c.connectivity().connective) conn.connective = *c.connectivity().connective + k;
  if (c.connectivity().coconnective) conn.coconnective = *c.connectivity().coconnective + k;
  DataExtent ext = c.extent();
  if (ext.known) ext.known = Window(ext.known->lo + k, ext.known->hi + k);
  return ChainComplex(module, diffs, conn, ext);
}

namespace {

void require_degree_data(const ChainComplex& c, int n, const char* what) {
  if (!c.extent().known) return;
  const Window& k = *c.extent().known;
  if (!(k.contains(n - 1) && k.contains(n + 1)))
    throw InsufficientData(std::string(what) + ": degree " + std::to_string(n) + " needs data on " +
                           std::to_string(n - 1) + ":" + std::to_string(n + 1) + ", have " + k.to_string());
}

}  // namespace

ChainComplex truncate_coconnective(const ChainComplex& c, int n) {
  require_degree_data(c, n, "truncate_coconnective");
  const CoefficientRing& ring = c.ring();
  Matrix top = c.d(n + 1);
  SmithDecomposition s = smith_decompose(top);
  std::size_t r = s.rank();

  std::map<int, std::size_t> ranks;
  for (auto [deg, rk] : c.module().ranks())
    if (deg <= n) ranks[deg] = rk;
  if (r) ranks[n + 1] = r;
  GradedModule module(ring, ranks);
  for (auto [deg, rk] : c.module().ranks())
    if (deg <= n && c.module().has_labels(deg)) module.set_labels(deg, c.module().labels(deg));

  std::map<int, Matrix> diffs;
  for (const auto& [k, m] : c.differentials())
    if (k <= n) diffs.emplace(k, m);
  if (r) {
    Matrix complement = s.V.select(iota_range(0, top.cols()), iota_range(0, r));
    diffs.emplace(n + 1, top * complement);
  }
  Connectivity conn = c.connectivity();
  conn.coconnective = conn.coconnective ? std::min(*conn.coconnective, n) : n;
  if (conn.connective && *conn.connective > n) conn.connective = n;
  DataExtent ext = c.extent();
  if (ext.known) ext.known = Window(std::min(ext.known->lo, n + 1), n + 1);
  return ChainComplex(module, diffs, conn, ext);
}

ChainComplex truncate_connective(const ChainComplex& c, int n) {
  require_degree_data(c, n, "truncate_connective");
  const CoefficientRing& ring = c.ring();
  Matrix bottom = c.d(n);
  SmithDecomposition s = smith_decompose(bottom);
  std::size_t r = s.rank();
  std::size_t z = bottom.cols() - r;

  std::map<int, std::size_t> ranks;
  for (auto [deg, rk] : c.module().ranks())
    if (deg > n) ranks[deg] = rk;
  if (z) ranks[n] = z;
  GradedModule module(ring, ranks);
  for (auto [deg, rk] : c.module().ranks())
    if (deg > n && c.module().has_labels(deg)) module.set_labels(deg, c.module().labels(deg));

  std::map<int, Matrix> diffs;
  for (const auto& [k, m] : c.differentials())
    if (k > n + 1) diffs.emplace(k, m);
  if (z && module.rank(n + 1)) {
    Matrix coords = s.V_inv.select(iota_range(r, bottom.cols()), iota_range(0, bottom.cols()));
    diffs.emplace(n + 1, coords * c.d(n + 1));
  }
  Connectivity conn = c.connectivity();
  conn.connective = conn.connective ? std::max(*conn.connective, n) : n;
  if (conn.coconnective && *conn.coconnective < n) conn.coconnective = n;
  DataExtent ext = c.extent();
  if (ext.known) ext.known = Window(n, std::max(ext.known->hi, n));
  return ChainComplex(module, diffs, conn, ext);
}

}  // namespace hoch
