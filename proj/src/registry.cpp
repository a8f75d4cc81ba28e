#include "hoch/registry.hpp"

#include <random>

#include "hoch/errors.hpp"

namespace hoch {

namespace {

// Sign of x_S * x_T when both are written in increasing generator order.
Scalar shuffle_sign(const CoefficientRing& ring, const std::vector<int>& degrees, unsigned s, unsigned t) {
  long long exponent = 0;
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (!(s >> i & 1u)) continue;
    for (std::size_t j = 0; j < i; ++j)
      if (t >> j & 1u) exponent += static_cast<long long>(degrees[i]) * degrees[j];
  }
  return ring.sign(exponent);
}

Basis exterior_basis(const std::vector<int>& degrees) {
  if (degrees.empty() || degrees.size() > 12) throw InvalidInput("exterior: need between 1 and 12 generators");
  std::vector<std::string> names;
  std::vector<int> degs;
  for (unsigned s = 0; s < (1u << degrees.size()); ++s) {
    std::string name;
    int deg = 0;
    for (std::size_t i = 0; i < degrees.size(); ++i)
      if (s >> i & 1u) {
        name += "x" + std::to_string(i + 1);
        deg += degrees[i];
      }
    names.push_back(name.empty() ? "1" : name);
    degs.push_back(deg);
  }
  return Basis(names, degs);
}

std::string degrees_label(const std::vector<int>& degrees) {
  std::string s;
  for (std::size_t i = 0; i < degrees.size(); ++i) s += (i ? "," : "") + std::to_string(degrees[i]);
  return s;
}

}  // namespace

DGAlgebra exterior_algebra(CoefficientRing ring, const std::vector<int>& degrees) {
  Basis basis = exterior_basis(degrees);
  std::map<std::pair<std::size_t, std::size_t>, Vec> mult;
  for (unsigned s = 0; s < basis.size(); ++s)
    for (unsigned t = 0; t < basis.size(); ++t)
      if ((s & t) == 0) mult[{s, t}] = Vec{{s | t, ring.normalize(shuffle_sign(ring, degrees, s, t))}};
  StructureInfo info;
  info.name = "exterior(" + degrees_label(degrees) + ")";
  return DGAlgebra(ring, basis, {}, mult, 0, info);
}

DGCoalgebra exterior_coalgebra(CoefficientRing ring, const std::vector<int>& degrees) {
  Basis basis = exterior_basis(degrees);
  std::vector<Vec2> comult(basis.size());
  for (unsigned s = 0; s < basis.size(); ++s) {
    std::map<std::pair<std::size_t, std::size_t>, Scalar> acc;
    // Every splitting S = A + B, including the empty parts.
    for (unsigned a = s;; a = (a - 1) & s) {
      unsigned b = s & ~a;
      acc[{a, b}] = shuffle_sign(ring, degrees, a, b);
      if (a == 0) break;
    }
    comult[s] = make_vec2(ring, acc);
  }
  StructureInfo info;
  info.name = "exterior-coalgebra(" + degrees_label(degrees) + ")";
  return DGCoalgebra(ring, basis, {}, comult, Vec{{0, 1}}, info);
}

DGAlgebra truncated_polynomial_algebra(CoefficientRing ring, int degree, int n) {
  if (n < 1) throw InvalidInput("truncated polynomial: truncation must be >= 1");
  std::vector<std::string> names;
  std::vector<int> degs;
  for (int k = 0; k < n; ++k) {
    names.push_back(k == 0 ? "1" : k == 1 ? "x" : "x^" + std::to_string(k));
    degs.push_back(k * degree);
  }
  std::map<std::pair<std::size_t, std::size_t>, Vec> mult;
  for (int a = 0; a < n; ++a)
    for (int b = 0; a + b < n; ++b) mult[{a, b}] = Vec{{static_cast<std::size_t>(a + b), 1}};
  StructureInfo info;
  info.name = "truncated-polynomial(|x|=" + std::to_string(degree) + ",n=" + std::to_string(n) + ")";
  return DGAlgebra(ring, Basis(names, degs), {}, mult, 0, info);
}

DGAlgebra koszul_model_Fp_over_Z(Scalar p) {
  if (!is_prime(p)) throw InvalidInput("koszul: " + std::to_string(p) + " is not prime");
  CoefficientRing z = CoefficientRing::integers();
  std::map<std::pair<std::size_t, std::size_t>, Vec> mult{
      {{0, 0}, Vec{{0, 1}}}, {{0, 1}, Vec{{1, 1}}}, {{1, 0}, Vec{{1, 1}}}};
  StructureInfo info;
  info.name = "koszul(p=" + std::to_string(p) + ")";
  return DGAlgebra(z, Basis({"1", "e"}, {0, 1}), {Vec{}, Vec{{0, p}}}, mult, 0, info);
}

DGCoalgebra dual_koszul_coalgebra(Scalar p) {
  return dualize_algebra(koszul_model_Fp_over_Z(p)).renamed("dual-koszul(p=" + std::to_string(p) + ")");
}

DGAlgebra ground_algebra(CoefficientRing ring) {
  StructureInfo info;
  info.name = "ground";
  return DGAlgebra(ring, Basis({"1"}, {0}), {}, {{{0, 0}, Vec{{0, 1}}}}, 0, info);
}

DGCoalgebra ground_coalgebra(CoefficientRing ring) {
  StructureInfo info;
  info.name = "ground-coalgebra";
  return DGCoalgebra(ring, Basis({"1"}, {0}), {}, {Vec2{{{0, 0}, 1}}}, Vec{{0, 1}}, info);
}

ChainComplex laurent_pattern_module(CoefficientRing ring, const Window& w) {
  std::map<int, std::size_t> ranks;
  for (int t = w.lo; t <= w.hi; ++t) ranks[t] = 1;
  GradedModule m(ring, ranks);
  for (int t = w.lo; t <= w.hi; ++t) m.set_labels(t, {"t^" + std::to_string(t)});
  return ChainComplex(m, {}, {}, DataExtent{w, true});
}

ChainComplex polynomial_pattern_module(CoefficientRing ring, int step, const Window& w) {
  if (step < 1) throw InvalidInput("polynomial pattern: step must be positive");
  std::map<int, std::size_t> ranks;
  for (int t = std::max(0, w.lo); t <= w.hi; ++t)
    if (t % step == 0) ranks[t] = 1;
  GradedModule m(ring, ranks);
  for (auto [t, r] : ranks) m.set_labels(t, {"y^" + std::to_string(t / step)});
  return ChainComplex(m, {}, Connectivity{0, std::nullopt}, DataExtent{w, true});
}

ChainComplex finite_vector_space(CoefficientRing ring, std::size_t m) {
  if (m < 1) throw InvalidInput("finite vector space: m must be >= 1");
  GradedModule mod(ring, {{0, m}});
  return ChainComplex(mod, {}, Connectivity{0, 0}, DataExtent{Window(0, 0), true});
}

DGCoalgebra laurent_coalgebra(CoefficientRing ring, const Window& w) {
  std::vector<std::string> names{"1"};
  std::vector<int> degs{0};
  for (int k = w.lo; k <= w.hi; ++k)
    if (k != 0) {
      names.push_back("t^" + std::to_string(k));
      degs.push_back(k);
    }
  std::vector<Vec2> comult(names.size());
  comult[0] = Vec2{{{0, 0}, 1}};
  for (std::size_t i = 1; i < names.size(); ++i) comult[i] = make_vec2(ring, {{{0, i}, 1}, {{i, 0}, 1}});
  StructureInfo info;
  info.name = "laurent-coalgebra(" + w.to_string() + ")";
  info.extent = DataExtent{w, true};
  return DGCoalgebra(ring, Basis(names, degs), {}, comult, Vec{{0, 1}}, info);
}

// ---- random algebras ------------------------------------------------------

DGAlgebra random_graded_commutative_algebra(CoefficientRing ring, std::uint64_t seed, int max_generators) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  int g = uniform(1, std::max(1, max_generators));

  std::vector<int> degs;
  bool with_d = g >= 2 && uniform(0, 1) == 1;
  if (with_d) {
    // Generator 0 odd, generator 1 even, |x0| = |x1| + 1.
    int y = 2 * uniform(-1, 1);
    if (y == 0) y = 2;
    degs = {y + 1, y};
  }
  while (static_cast<int>(degs.size()) < g) {
    int d = uniform(-3, 3);
    if (d != 0) degs.push_back(d);
  }
  std::vector<int> height(g);
  for (int i = 0; i < g; ++i) height[i] = (degs[i] % 2 != 0) ? 2 : uniform(2, 3);

  // Monomials in mixed radix.
  std::vector<std::vector<int>> monos{{}};
  for (int i = 0; i < g; ++i) {
    std::vector<std::vector<int>> next;
    for (int e = 0; e < height[i]; ++e)
      for (auto m : monos) {
        m.push_back(e);
        next.push_back(m);
      }
    monos = next;
  }
  std::map<std::vector<int>, std::size_t> index;
  std::vector<std::string> names;
  std::vector<int> bdeg;
  for (std::size_t k = 0; k < monos.size(); ++k) {
    index[monos[k]] = k;
    std::string name;
    int d = 0;
    for (int i = 0; i < g; ++i) {
      d += monos[k][i] * degs[i];
      if (monos[k][i] == 0) continue;
      name += "x" + std::to_string(i + 1);
      if (monos[k][i] > 1) name += "^" + std::to_string(monos[k][i]);
    }
    names.push_back(name.empty() ? "1" : name);
    bdeg.push_back(d);
  }
  auto product = [&](const std::vector<int>& a, const std::vector<int>& b) -> std::optional<std::pair<std::size_t, Scalar>> {
    std::vector<int> c(g);
    long long exponent = 0;
    for (int i = 0; i < g; ++i) {
      c[i] = a[i] + b[i];
      if (c[i] >= height[i]) return std::nullopt;
      for (int j = 0; j < i; ++j) exponent += static_cast<long long>(a[i]) * b[j] * degs[i] * degs[j];
    }
    return std::make_pair(index.at(c), ring.sign(exponent));
  };
  std::map<std::pair<std::size_t, std::size_t>, Vec> mult;
  for (std::size_t x = 0; x < monos.size(); ++x)
    for (std::size_t y = 0; y < monos.size(); ++y)
      if (auto r = product(monos[x], monos[y])) {
        Scalar c = ring.normalize(r->second);
        if (c != 0) mult[{x, y}] = Vec{{r->first, c}};
      }
  std::vector<Vec> diff(monos.size());
  if (with_d) {
    Scalar lambda = 0;
    while (lambda == 0) lambda = ring.normalize(uniform(1, 4));
    std::vector<int> y(g, 0);
    y[1] = 1;
    for (std::size_t k = 0; k < monos.size(); ++k) {
      if (monos[k][0] != 1) continue;
      std::vector<int> rest = monos[k];
      rest[0] = 0;
      if (auto r = product(y, rest)) diff[k] = Vec{{r->first, ring.normalize(ring.mul(lambda, r->second))}};
    }
  }
  StructureInfo info;
  info.name = "random(seed=" + std::to_string(seed) + ")";
  DGAlgebra base(ring, Basis(names, bdeg), diff, mult, 0, info);

  // Random degree-preserving change of basis fixing the unit.
  const std::size_t n = monos.size();
  Matrix P = Matrix::identity(ring, n), Q = Matrix::identity(ring, n);
  for (int step = 0; step < static_cast<int>(3 * n); ++step) {
    std::size_t i = uniform(0, n - 1), j = uniform(0, n - 1);
    if (i == j || j == 0 || bdeg[i] != bdeg[j]) continue;
    Scalar c = ring.normalize(uniform(-2, 2));
    if (c == 0) continue;
    Matrix E = Matrix::identity(ring, n), Einv = Matrix::identity(ring, n);
    E.set(i, j, c);
    Einv.set(i, j, ring.neg(c));
    P = P * E;
    Q = Einv * Q;
  }
  for (std::size_t j = 1; j < n; ++j) {
    Scalar s = ring.is_field() ? ring.normalize(uniform(1, static_cast<int>(ring.p()) - 1)) : (uniform(0, 1) ? 1 : -1);
    Matrix D = Matrix::identity(ring, n), Dinv = Matrix::identity(ring, n);
    D.set(j, j, s);
    Dinv.set(j, j, ring.inv(s));
    P = P * D;
    Q = Dinv * Q;
  }
  return change_basis(base, P, Q);
}

// ---- registry -------------------------------------------------------------

std::vector<std::string> registry_names() {
  return {"exterior",          "exterior-coalgebra", "truncated-polynomial", "koszul",
          "dual-koszul",       "ground",             "ground-coalgebra",     "laurent-module",
          "polynomial-module", "finite-vector-space", "laurent-coalgebra",   "random-algebra"};
}

RegistryObject example_registry(const std::string& name, const RegistryParams& params) {
  bool integral_example = name == "koszul" || name == "dual-koszul";
  if (params.ring && params.p && params.ring->is_field() && params.ring->p() != *params.p)
    throw InvalidInput("--p " + std::to_string(*params.p) + " contradicts --ring " + params.ring->to_string());
  CoefficientRing ring = params.ring.value_or(
      params.p && !integral_example ? CoefficientRing::prime_field(*params.p) : CoefficientRing::prime_field(2));
  std::vector<int> degrees = params.degrees.empty() ? std::vector<int>{1} : params.degrees;
  Window window = params.window.value_or(Window(-4, 4));
  auto integral = [&](const char* what) {
    if (params.ring && params.ring->is_field())
      throw InvalidInput(std::string(what) + " is defined over the integers; drop --ring or use --ring integers");
    return params.p.value_or(2);
  };

  if (name == "exterior") return exterior_algebra(ring, degrees);
  if (name == "exterior-coalgebra") return exterior_coalgebra(ring, degrees);
  if (name == "truncated-polynomial") return truncated_polynomial_algebra(ring, degrees.front(), params.truncation.value_or(2));
  if (name == "koszul") return koszul_model_Fp_over_Z(integral("koszul"));
  if (name == "dual-koszul") return dual_koszul_coalgebra(integral("dual-koszul"));
  if (name == "ground") return ground_algebra(ring);
  if (name == "ground-coalgebra") return ground_coalgebra(ring);
  if (name == "laurent-module") return laurent_pattern_module(ring, window);
  if (name == "polynomial-module") return polynomial_pattern_module(ring, degrees.front() > 0 ? degrees.front() : 2, window);
  if (name == "finite-vector-space") return finite_vector_space(ring, params.m.value_or(3));
  if (name == "laurent-coalgebra") return laurent_coalgebra(ring, params.window.value_or(Window(-2, 2)));
  if (name == "random-algebra") return random_graded_commutative_algebra(ring, params.seed);
  std::string known;
  for (const auto& n : registry_names()) known += (known.empty() ? "" : ", ") + n;
  throw InvalidInput("unknown example '" + name + "' (known: " + known + ")");
}

}  // namespace hoch
