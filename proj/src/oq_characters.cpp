#include <algorithm>

#include "oqkit/oq_core.hpp"

namespace oqkit {

const TruncatedCharacter& OqContext::restricted_simple_character(const Weight& lambda0) const {
  if (lambda0.rank() != static_cast<std::size_t>(datum_.rank()) || !in_restricted_box(lambda0, l_))
    throw Error("weight " + lambda0.to_string() + " is not restricted for l = " + std::to_string(l_));
  {
    std::lock_guard lock(memo_mutex_);
    if (auto it = restricted_.find(lambda0); it != restricted_.end()) return *it->second;
  }
  auto ch = std::make_shared<const TruncatedCharacter>(compute_restricted(lambda0));
  std::lock_guard lock(memo_mutex_);
  return *restricted_.emplace(lambda0, std::move(ch)).first->second;
}

// Alcove form of the character formula. Let w be the element with
// lambda0 + rho - eps rho in w . A^- (eps > 0 infinitesimal) and b = w^{-1} . lambda0,
// which lies in the closure of A^-. Then
//   ch L(lambda0) = sum_y (-1)^{l(w) + l(y)} P_{w0 y, w0 w}(1) chi(y . b)
// over y with y . A^- in the dominant chamber and w0 y <= w0 w.
TruncatedCharacter OqContext::compute_restricted(const Weight& lambda0) const {
  const AffineWeylGroup& g = *affine_;
  const Weight rho = datum_.rho();
  const Root& theta = g.theta();
  Weight p = lambda0 + rho;
  Weight e = -rho;  // infinitesimal direction
  auto w = g.identity();
  while (true) {
    int s = -1;
    for (int i = 0; i < datum_.rank() && s < 0; ++i)
      if (p[i] > 0 || (p[i] == 0 && e[i] > 0)) s = i + 1;
    if (s < 0) {
      Int tp = datum_.pairing(p, theta), te = datum_.pairing(e, theta);
      if (tp < -l_ || (tp == -l_ && te < 0)) s = 0;
    }
    if (s < 0) break;
    const auto gen = g.generator(s);
    p = g.act_shifted(gen, p, l_);
    e = gen.finite.matrix.apply(e);
    w = g.right_multiply(w, s);
  }
  const Weight base = p - rho;
  if (g.dot(w, base, l_) != lambda0) throw Error("internal: alcove navigation failed");

  const auto w0 = g.from_finite(finite_->longest());
  const auto top = g.multiply(w0, w);
  const Int lw = g.length(w);
  TruncatedCharacter acc = ring_.finite({});
  for (const auto& v : *g.lower_ideal(top)) {
    const auto y = g.multiply(w0, v);
    if (!g.maps_into_dominant_chamber(y)) continue;
    Int c = affine_kl_->kl_polynomial(v, top).at_one();
    if ((lw + g.length(y)) % 2 != 0) c = -c;
    acc = ring_.add(acc, ring_.scale(ring_.weyl(g.dot(y, base, l_)), c));
  }
  acc.is_virtual = false;

  // A simple module: top coefficient 1, nonnegative, W-invariant, below lambda0.
  if (ring_.coefficient(acc, lambda0) != 1) throw Error("internal: restricted character lost its highest weight");
  for (const auto& [x, c] : acc.values) {
    if (c < 0 || !datum_.dominance_leq(x, lambda0))
      throw Error("internal: restricted character of " + lambda0.to_string() + " is not a module character");
    for (int i = 0; i < datum_.rank(); ++i) {
      Weight r = x - x[i] * datum_.positive_roots()[datum_.simple_root_index(i)].fundamental;
      if (ring_.coefficient(acc, r) != c) throw Error("internal: restricted character is not W-invariant");
    }
  }
  return acc;
}

TruncatedCharacter OqContext::baby_simple_character(const Weight& mu) const {
  const auto e = expand(mu);
  return ring_.shift(restricted_simple_character(e.lambda0), l_ * e.lambda1);
}

TruncatedCharacter OqContext::simple_character(const Weight& lambda, Int depth) const {
  if (depth < 0) throw Error("window depth must be nonnegative");
  const auto e = expand(lambda);
  const auto& restricted = restricted_simple_character(e.lambda0);
  Int spread = 0;
  for (const auto& [x, c] : restricted.values)
    spread = std::max(spread, ring_.depth_of({e.lambda0}, x).value_or(0));
  const Int classical_depth = (depth + spread) / l_ + 1;
  auto classical = classical_simple_character(e.lambda1, Window{{e.lambda1}, classical_depth});
  auto product = ring_.multiply(ring_.frobenius_twist(classical, l_), restricted);
  return ring_.restrict(product, Window{{lambda}, depth});
}

Multiplicities OqContext::restricted_baby_factors(const Weight& lambda0) const {
  {
    std::lock_guard lock(memo_mutex_);
    if (auto it = baby_.find(lambda0); it != baby_.end()) return it->second;
  }
  // Peel simple characters off the top of the finite baby Verma character.
  Multiplicities rest = ring_.baby_verma(lambda0, l_).values;
  Multiplicities factors;
  while (!rest.empty()) {
    auto top = rest.begin();
    for (auto it = rest.begin(); it != rest.end(); ++it)
      if (datum_.scaled_height(it->first) > datum_.scaled_height(top->first)) top = it;
    const Weight x = top->first;
    const Int c = top->second;
    if (c < 0) throw Error("internal: baby Verma peeling produced a negative coefficient at " + x.to_string());
    factors[x] += c;
    for (const auto& [y, d] : baby_simple_character(x).values)
      if ((rest[y] -= c * d) == 0) rest.erase(y);
  }
  std::lock_guard lock(memo_mutex_);
  return baby_.emplace(lambda0, std::move(factors)).first->second;
}

Multiplicities OqContext::baby_verma_factors(const Weight& lambda) const {
  const auto e = expand(lambda);
  Multiplicities out;
  for (const auto& [x, c] : restricted_baby_factors(e.lambda0)) out.emplace(x + l_ * e.lambda1, c);
  return out;
}

Int OqContext::baby_verma_simple_multiplicity(const Weight& lambda, const Weight& mu) const {
  const auto f = baby_verma_factors(lambda);
  auto it = f.find(mu);
  return it == f.end() ? 0 : it->second;
}

Multiplicities OqContext::finite_projective_factors(const Weight& mu) const {
  // baby Delta(eta) lives in [eta - 2(l-1)rho, eta], so mu <= eta <= mu + 2(l-1)rho.
  const Weight extent = *datum_.simple_coords(2 * (l_ - 1) * datum_.rho());
  Multiplicities out;
  Weight c(datum_.rank());
  while (true) {
    const Weight eta = mu + datum_.from_simple(c);
    if (Int m = baby_verma_simple_multiplicity(eta, mu); m != 0) out.emplace(eta, m);
    std::size_t i = c.rank();
    while (i-- > 0) {
      if (c[i] < extent[i]) {
        ++c[i];
        break;
      }
      c[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

}  // namespace oqkit
