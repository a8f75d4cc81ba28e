#include "hoch/ext.hpp"

#include "hoch/errors.hpp"

namespace hoch {

ModuleOver trivial_module(int degree, std::string name) {
  ModuleOver m;
  m.names.push_back(std::move(name));
  m.degrees.push_back(degree);
  return m;
}

ModuleOver direct_sum(const ModuleOver& a, const ModuleOver& b) {
  ModuleOver m = a;
  std::size_t off = a.names.size();
  m.names.insert(m.names.end(), b.names.begin(), b.names.end());
  m.degrees.insert(m.degrees.end(), b.degrees.begin(), b.degrees.end());
  for (auto& [key, v] : b.action) {
    Vec shifted;
    for (auto [i, c] : v) shifted.emplace_back(i + off, c);
    m.action[{key.first, key.second + off}] = shifted;
  }
  return m;
}

FreeResolution periodic_resolution(const DGAlgebra& ext, int length) {
  if (ext.dim() != 2) throw InvalidInput("periodic resolution: expected an exterior algebra on one generator");
  if (length < 1) throw InvalidInput("periodic resolution: length must be >= 1");
  std::size_t z = ext.unit() == 0 ? 1 : 0;
  int e = ext.basis().degree(z);
  FreeResolution r{ext, {}, {}};
  for (int s = 0; s < length; ++s) {
    r.shifts.push_back(s * e);
    r.boundary.push_back(s == 0 ? Vec{} : Vec{{z, 1}});
  }
  return r;
}

namespace {

// a.g_s for a in the algebra basis, restricted to internal degree i.
std::vector<std::size_t> free_piece(const FreeResolution& r, int s, int i) {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < r.algebra.dim(); ++a)
    if (r.algebra.basis().degree(a) + r.shifts[s] == i) out.push_back(a);
  return out;
}

// d_s : P_s -> P_{s-1} in internal degree i.
Matrix resolution_d(const FreeResolution& r, int s, int i) {
  const auto& A = r.algebra;
  auto src = free_piece(r, s, i), dst = free_piece(r, s - 1, i);
  std::map<std::size_t, std::size_t> pos;
  for (std::size_t k = 0; k < dst.size(); ++k) pos[dst[k]] = k;
  Matrix d(A.ring(), dst.size(), src.size());
  for (std::size_t j = 0; j < src.size(); ++j)
    for (auto [b, c] : r.boundary[s])
      for (auto [y, v] : A.product(src[j], b)) d.add_to(pos.at(y), j, A.ring().mul(c, v));
  return d;
}

std::vector<std::size_t> module_piece(const ModuleOver& m, int degree) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < m.degrees.size(); ++i)
    if (m.degrees[i] == degree) out.push_back(i);
  return out;
}

Vec act(const DGAlgebra& A, const ModuleOver& m, std::size_t a, std::size_t x) {
  if (a == A.unit()) return Vec{{x, 1}};
  auto it = m.action.find({a, x});
  return it == m.action.end() ? Vec{} : it->second;
}

}  // namespace

void check_resolution(const FreeResolution& r) {
  const auto& A = r.algebra;
  for (std::size_t i = 0; i < A.dim(); ++i)
    if (!A.diff(i).empty()) throw InvalidInput("resolution: the algebra must have zero differential");
  if (r.shifts.size() != r.boundary.size() || r.shifts.empty())
    throw InvalidInput("resolution: shifts and boundary lengths differ");
  for (std::size_t s = 1; s < r.shifts.size(); ++s)
    for (auto [b, c] : r.boundary[s])
      if (A.basis().degree(b) + r.shifts[s - 1] != r.shifts[s])
        throw InvalidInput("resolution: boundary of g_" + std::to_string(s) + " has the wrong degree");
  for (std::size_t s = 2; s < r.shifts.size(); ++s) {
    // d(d g_s) = sum c c' (b b') g_{s-2}
    std::map<std::size_t, Scalar> acc;
    for (auto [b, c] : r.boundary[s])
      for (auto [b2, c2] : r.boundary[s - 1])
        for (auto [y, v] : A.product(b, b2)) acc[y] = A.ring().add(acc[y], A.ring().mul(A.ring().mul(c, c2), v));
    if (!make_vec(A.ring(), acc).empty())
      throw InvalidInput("malformed resolution: d*d != 0 at stage " + std::to_string(s));
  }
}

bool resolves_ground_ring(const FreeResolution& r, const Window& w) {
  check_resolution(r);
  const auto& ring = r.algebra.ring();
  int len = static_cast<int>(r.shifts.size());
  for (int i = w.lo; i <= w.hi; ++i) {
    // augmentation P_0 -> k, k sitting in degree shifts[0]
    auto p0 = free_piece(r, 0, i);
    Matrix aug(ring, i == r.shifts[0] ? 1 : 0, p0.size());
    if (aug.rows())
      for (std::size_t j = 0; j < p0.size(); ++j)
        if (p0[j] == r.algebra.unit()) aug.set(0, j, 1);
    if (aug.rows() && rank(aug) != 1) return false;
    for (int s = 0; s + 1 < len; ++s) {
      Matrix d_out = s == 0 ? aug : resolution_d(r, s, i);
      Matrix d_in = resolution_d(r, s + 1, i);
      if (!homology_group(d_in, d_out, ring).is_zero()) return false;
    }
  }
  return true;
}

ExtTable ext_from_resolution(const FreeResolution& r, const ModuleOver& target, int smax, const Window& w) {
  check_resolution(r);
  const auto& A = r.algebra;
  const auto& ring = A.ring();
  int len = static_cast<int>(r.shifts.size());
  if (smax + 1 >= len)
    throw InsufficientData("ext: resolution of length " + std::to_string(len) + " only reaches s = " +
                           std::to_string(len - 2));
  for (auto& [key, v] : target.action)
    for (auto [y, c] : v)
      if (target.degrees.at(y) != A.basis().degree(key.first) + target.degrees.at(key.second))
        throw InvalidInput("ext: module action does not respect degrees");
  // delta_s : Hom(P_{s-1}, M)_j -> Hom(P_s, M)_j, f -> f o d
  auto delta = [&](int s, int j) {
    auto src = s == 0 ? std::vector<std::size_t>{} : module_piece(target, r.shifts[s - 1] + j);
    auto dst = module_piece(target, r.shifts[s] + j);
    std::map<std::size_t, std::size_t> pos;
    for (std::size_t k = 0; k < dst.size(); ++k) pos[dst[k]] = k;
    Matrix m(ring, dst.size(), src.size());
    if (s == 0) return m;
    for (std::size_t col = 0; col < src.size(); ++col)
      for (auto [a, c] : r.boundary[s]) {
        Scalar sg = ring.mul(c, ring.sign(static_cast<long long>(A.basis().degree(a)) * j));
        for (auto [y, v] : act(A, target, a, src[col])) m.add_to(pos.at(y), col, ring.mul(sg, v));
      }
    return m;
  };
  ExtTable t(ring);
  for (int s = 0; s <= smax; ++s)
    for (int j = w.lo; j <= w.hi; ++j) {
      t.hom_rank[{s, j}] = module_piece(target, r.shifts[s] + j).size();
      t.ext[{s, j}] = homology_group(delta(s, j), delta(s + 1, j), ring);
    }
  return t;
}

std::vector<ObstructionGroup> formality_obstructions(const DGAlgebra& ext, int smax) {
  auto res = periodic_resolution(ext, smax + 4);
  std::vector<ObstructionGroup> out;
  for (int s = 1; s <= smax; ++s) {
    // Omega^s (k + Omega k): k in degrees -s and -s-1
    auto target = direct_sum(trivial_module(-s, "k"), trivial_module(-s - 1, "Ok"));
    auto t = ext_from_resolution(res, target, s + 2, Window(0, 0));
    out.push_back({s, t.hom_rank.at({s + 2, 0}), t.ext.at({s + 2, 0})});
  }
  return out;
}

}  // namespace hoch
