#include <algorithm>

#include "oqkit/oq_core.hpp"

namespace oqkit {

OqContext::OqContext(RootDatum datum, Int l)
    : datum_(std::move(datum)),
      l_(l),
      ring_(datum_),
      finite_(std::make_unique<FiniteWeylGroup>(datum_)),
      affine_(std::make_unique<AffineWeylGroup>(datum_)),
      finite_kl_(std::make_unique<FiniteKL>(*finite_)),
      affine_kl_(std::make_unique<AffineKL>(*affine_)) {
  validate_l(datum_, l_);
}

// Parametrize W . b by the shortest representatives w of the cosets w W_b.
// For such w,
//   ch L_C(w . b) = sum_{y <= w} (-1)^{l(w) + l(y)} P_{y,w}(1) ch Delta_C(y . b),
// where several y may give the same weight y . b.
const ClassicalOrbit& OqContext::classical_orbit(const Weight& lambda) const {
  const Weight base = finite_->min_to_antidominant(lambda).antidominant;
  {
    std::lock_guard lock(memo_mutex_);
    if (auto it = orbits_.find(base); it != orbits_.end()) return *it->second;
  }
  auto orbit = std::make_shared<ClassicalOrbit>();
  orbit->base = base;
  std::map<Weight, FiniteWeylElement> shortest;
  for (const auto& w : finite_->elements()) {  // sorted by length
    Weight mu = finite_->dot(w, base);
    shortest.emplace(mu, w);
  }
  for (const auto& [mu, w] : shortest) orbit->weights.push_back(mu);
  ring_.order_below(orbit->weights.front(), orbit->weights);
  const std::size_t n = orbit->weights.size();
  for (std::size_t i = 0; i < n; ++i) orbit->index.emplace(orbit->weights[i], i);

  orbit->p.assign(n, std::vector<Int>(n, 0));
  for (std::size_t j = 0; j < n; ++j) {
    const auto& w = shortest.at(orbit->weights[j]);
    const Int lw = finite_->length(w);
    for (const auto& y : *finite_->lower_ideal(w)) {
      Int v = finite_kl_->kl_polynomial(y, w).at_one();
      Int sign = (lw + finite_->length(y)) % 2 == 0 ? 1 : -1;
      orbit->p[orbit->index.at(finite_->dot(y, base))][j] += sign * v;
    }
  }
  // A[lambda][mu] = p[mu][lambda] is unit upper triangular in this order;
  // [Delta_C(lambda) : L_C(mu)] is its inverse.
  auto& m = orbit->verma_simple;
  m.assign(n, std::vector<Int>(n, 0));
  for (std::size_t i = n; i-- > 0;) {
    if (orbit->p[i][i] != 1) throw Error("internal: classical decomposition matrix is not unitriangular");
    m[i][i] = 1;
    for (std::size_t j = i + 1; j < n; ++j) {
      Int s = 0;
      for (std::size_t k = i + 1; k <= j; ++k) s += orbit->p[k][i] * m[k][j];
      m[i][j] = -s;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (orbit->p[i][j] != 0) throw Error("internal: classical decomposition matrix is not triangular");

  std::lock_guard lock(memo_mutex_);
  return *orbits_.emplace(base, std::move(orbit)).first->second;
}

Int OqContext::classical_p(const Weight& mu, const Weight& lambda) const {
  const auto& orbit = classical_orbit(lambda);
  auto it = orbit.index.find(mu);
  if (it == orbit.index.end()) return 0;
  return orbit.p[it->second][orbit.index.at(lambda)];
}

Int OqContext::classical_verma_simple_multiplicity(const Weight& lambda, const Weight& mu) const {
  const auto& orbit = classical_orbit(lambda);
  auto it = orbit.index.find(mu);
  if (it == orbit.index.end()) return 0;
  return orbit.verma_simple[orbit.index.at(lambda)][it->second];
}

Multiplicities OqContext::classical_verma_factors(const Weight& lambda) const {
  const auto& orbit = classical_orbit(lambda);
  const auto& row = orbit.verma_simple[orbit.index.at(lambda)];
  Multiplicities out;
  for (std::size_t j = 0; j < row.size(); ++j)
    if (row[j] != 0) out.emplace(orbit.weights[j], row[j]);
  return out;
}

Multiplicities OqContext::classical_tilting_factors(const Weight& kappa) const {
  const Weight shift = -2 * datum_.rho();
  const Weight dual = shift - kappa;
  const auto& orbit = classical_orbit(dual);
  const std::size_t col = orbit.index.at(dual);
  Multiplicities out;
  for (std::size_t i = 0; i < orbit.weights.size(); ++i)
    if (Int m = orbit.verma_simple[i][col]; m != 0) out.emplace(shift - orbit.weights[i], m);
  return out;
}

Multiplicities OqContext::classical_projective_factors(const Weight& lambda) const {
  const auto& orbit = classical_orbit(lambda);
  const std::size_t col = orbit.index.at(lambda);
  Multiplicities out;
  for (std::size_t i = 0; i < orbit.weights.size(); ++i)
    if (Int m = orbit.verma_simple[i][col]; m != 0) out.emplace(orbit.weights[i], m);
  return out;
}

TruncatedCharacter OqContext::classical_simple_character(const Weight& lambda, const Window& w) const {
  const auto& orbit = classical_orbit(lambda);
  const std::size_t col = orbit.index.at(lambda);
  TruncatedCharacter out = ring_.verma(lambda, w);
  for (std::size_t i = 0; i < orbit.weights.size(); ++i) {
    Int c = orbit.p[i][col];
    if (i == col || c == 0) continue;
    out = ring_.add(out, ring_.scale(ring_.verma(orbit.weights[i], w), c));
  }
  out.is_virtual = false;
  return out;
}

}  // namespace oqkit
