#include <algorithm>

#include "oqkit/oq_core.hpp"

namespace oqkit {

ModuleKind parse_module_kind(const std::string& text) {
  if (text == "simple") return ModuleKind::simple;
  if (text == "projective") return ModuleKind::projective;
  if (text == "injective") return ModuleKind::injective;
  if (text == "tilting") return ModuleKind::tilting;
  throw Error("unknown module kind '" + text + "'");
}

std::string to_string(ModuleKind kind) {
  switch (kind) {
    case ModuleKind::simple: return "simple";
    case ModuleKind::projective: return "projective";
    case ModuleKind::injective: return "injective";
    case ModuleKind::tilting: return "tilting";
  }
  return "?";
}

namespace {

void combine(Multiplicities& out, const Multiplicities& classical, const Multiplicities& finite, Int l) {
  for (const auto& [nu, a] : classical)
    for (const auto& [eta, b] : finite) out[l * nu + eta] += a * b;
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
}

Int lookup(const Multiplicities& m, const Weight& x) {
  auto it = m.find(x);
  return it == m.end() ? 0 : it->second;
}

}  // namespace

DecompositionRecord OqContext::decompose(ModuleKind kind, const Weight& lambda) const {
  DecompositionRecord rec{kind, {}, {}, l_};
  if (kind == ModuleKind::tilting) {
    const Weight top = (l_ - 1) * datum_.rho();
    const auto e = expand(lambda - top);
    rec.classical_weight = e.lambda1;
    rec.finite_weight = top + finite_->longest().matrix.apply(e.lambda0);
  } else {
    const auto e = expand(lambda);
    rec.classical_weight = e.lambda1;
    rec.finite_weight = e.lambda0;
  }
  return rec;
}

Weight OqContext::reconstruct(const DecompositionRecord& rec) const {
  if (rec.l != l_) throw Error("decomposition record was made for a different l");
  if (rec.kind == ModuleKind::tilting) {
    const Weight top = (l_ - 1) * datum_.rho();
    return top + finite_->longest().matrix.apply(rec.finite_weight - top) + l_ * rec.classical_weight;
  }
  return rec.finite_weight + l_ * rec.classical_weight;
}

Multiplicities OqContext::verma_factors(const Weight& lambda) const {
  Multiplicities out;
  for (const auto& [eta, m] : baby_verma_factors(lambda)) {
    const auto e = expand(eta);
    for (const auto& [kappa, c] : classical_verma_factors(e.lambda1)) out[l_ * kappa + e.lambda0] += m * c;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

Int OqContext::quantum_verma_simple_multiplicity(const Weight& lambda, const Weight& mu) const {
  if (!datum_.dominance_leq(mu, lambda)) return 0;
  return lookup(verma_factors(lambda), mu);
}

Multiplicities OqContext::tilting_factors(const Weight& lambda, TiltingMode mode) const {
  return mode == TiltingMode::standard ? tilting_standard(lambda) : tilting_fast_path(lambda);
}

Int OqContext::tilting_verma_multiplicity(const Weight& lambda, const Weight& mu, TiltingMode mode) const {
  return lookup(tilting_factors(lambda, mode), mu);
}

// T_q(lambda) = T_C(nu1)^[l] (x) Q_q((l-1)rho + w0 nu0) with lambda - (l-1)rho = nu0 + l nu1.
Multiplicities OqContext::tilting_standard(const Weight& lambda) const {
  const auto rec = decompose(ModuleKind::tilting, lambda);
  Multiplicities out;
  combine(out, classical_tilting_factors(rec.classical_weight), finite_projective_factors(rec.finite_weight), l_);
  return out;
}

// Both factors from KL polynomials at 1: the classical one from P on the
// finite group, the finite one from inverse polynomials Q on the affine group.
Multiplicities OqContext::tilting_fast_path(const Weight& lambda) const {
  const auto e = expand(lambda);
  const Weight rho = datum_.rho();
  const Weight kappa = e.lambda1 - rho;
  if (!datum_.is_regular(kappa) || !datum_.is_l_regular(e.lambda0, l_))
    throw RangeError("regular fast path needs lambda1 - rho regular and lambda0 l-regular; got lambda = " +
                     lambda.to_string());

  const auto red = finite_->min_to_antidominant(kappa);
  Multiplicities classical;
  for (const auto& y : *finite_->lower_ideal(red.w))
    classical[finite_->dot(y, red.antidominant)] += finite_kl_->kl_polynomial(y, red.w).at_one();

  // Only alcoves inside the support [tilde, tilde + 2(l-1)rho] of Q_q(tilde) contribute.
  const Weight tilde = l_ * rho + finite_->dot(finite_->longest(), e.lambda0);
  const Weight roof = tilde + 2 * (l_ - 1) * rho;
  const auto pos = affine_->normalize_to_alcove(e.lambda0 + l_ * rho, l_);
  Multiplicities finite;
  for (const auto& z : *affine_->lower_ideal(pos.navigator)) {
    const Weight eta = affine_->dot(z, pos.base, l_);
    if (!datum_.is_dominant(eta + rho) || !datum_.dominance_leq(tilde, eta) || !datum_.dominance_leq(eta, roof))
      continue;
    finite[eta] += affine_kl_->inverse_kl_polynomial(z, pos.navigator).at_one();
  }
  std::erase_if(finite, [](const auto& kv) { return kv.second == 0; });

  if (finite != finite_projective_factors(tilde))
    throw RangeError("regular fast path disagrees with baby Verma reciprocity at lambda = " + lambda.to_string());

  Multiplicities out;
  combine(out, classical, finite, l_);
  return out;
}

Multiplicities OqContext::projective_factors(const Weight& lambda) const {
  const auto e = expand(lambda);
  Multiplicities out;
  combine(out, classical_projective_factors(e.lambda1), finite_projective_factors(e.lambda0), l_);
  return out;
}

Multiplicities OqContext::injective_factors(const Weight& lambda) const {
  // nabla and Delta share characters, so (I_C(kappa) : nabla_C(nu)) = [Delta_C(nu) : L_C(kappa)].
  const auto e = expand(lambda);
  Multiplicities classical;
  for (const auto& nu : classical_orbit(e.lambda1).weights)
    if (Int m = classical_verma_simple_multiplicity(nu, e.lambda1); m != 0) classical.emplace(nu, m);
  Multiplicities out;
  combine(out, classical, finite_projective_factors(e.lambda0), l_);
  return out;
}

PqValue OqContext::p_q_coefficient(const Weight& mu, const Weight& lambda, PqMode mode, Int depth,
                                   bool force) const {
  if (mode == PqMode::oracle) {
    if (!datum_.dominance_leq(mu, lambda)) return {0, mode, false};
    const Window win{{lambda}, depth};
    if (!ring_.admissible(win, mu))
      throw RangeError("weight " + mu.to_string() + " lies outside the depth-" + std::to_string(depth) +
                       " window below " + lambda.to_string());
    // Peel Verma characters off ch L_q(lambda), top down.
    auto rest = simple_character(lambda, depth).values;
    std::vector<Weight> order = ring_.points(win);
    ring_.order_below(lambda, order);
    for (const auto& x : order) {
      const Int c = lookup(rest, x);
      if (x == mu) return {c, mode, false};
      if (c == 0) continue;
      for (const auto& [y, k] : ring_.verma(x, win).values)
        if (ring_.admissible(win, y) && (rest[y] -= c * k) == 0) rest.erase(y);
    }
    return {0, mode, false};
  }

  // Literal product formula: finite coefficients from the affine alcove
  // expansion of lambda0 times classical p at (mu - eta) / l.
  const auto e = expand(lambda);
  const auto pos = affine_->normalize_to_alcove(e.lambda0, l_);
  const Int lx = affine_->length(pos.navigator);
  Multiplicities finite;
  for (const auto& z : *affine_->lower_ideal(pos.navigator)) {
    Int c = affine_kl_->kl_polynomial(z, pos.navigator).at_one();
    if ((lx + affine_->length(z)) % 2 != 0) c = -c;
    finite[affine_->dot(z, pos.base, l_)] += c;
  }
  std::erase_if(finite, [](const auto& kv) { return kv.second == 0; });
  bool in_range = true;
  for (const auto& [eta, c] : finite)
    if (!datum_.is_dominant(eta + datum_.rho())) in_range = false;
  if (!in_range && !force)
    throw RangeError("product formula for p_q is outside its validated range at lambda = " + lambda.to_string() +
                     " (use force to evaluate anyway)");
  Int value = 0;
  for (const auto& [eta, c] : finite) {
    const Weight diff = mu - eta;
    bool divisible = true;
    Weight nu(diff.rank());
    for (std::size_t i = 0; i < diff.rank(); ++i) {
      if (diff[i] % l_ != 0) divisible = false;
      nu[i] = diff[i] / l_;
    }
    if (divisible) value += c * classical_p(nu, e.lambda1);
  }
  return {value, mode, !in_range};
}

SpecialBlock OqContext::special_block(const Weight& lambda) const {
  const auto e = expand(lambda);
  if (e.lambda0 != (l_ - 1) * datum_.rho()) return {};
  return {true, e.lambda1};
}

StructuralPredicates OqContext::structural_predicates(const Weight& lambda) const {
  const auto e = expand(lambda);
  const bool special = e.lambda0 == (l_ - 1) * datum_.rho();
  StructuralPredicates out;
  out.verma_simple = special && datum_.is_antidominant(e.lambda1);
  out.verma_projective = special && datum_.is_dominant(e.lambda1 + datum_.rho());
  out.proj_injective = datum_.is_antidominant(lambda);
  return out;
}

LargeLComparison OqContext::large_l_comparison(const Weight& lambda, const Weight& mu) const {
  LargeLComparison out;
  out.quantum = quantum_verma_simple_multiplicity(lambda, mu);
  out.baby = baby_verma_simple_multiplicity(lambda, mu);
  out.criterion = true;
  if (datum_.dominance_leq(mu, lambda)) {
    const Weight c = *datum_.simple_coords(lambda - mu);
    for (std::size_t i = 0; i < c.rank(); ++i)
      if (c[i] >= l_) out.criterion = false;
  }
  out.agree = out.quantum == out.baby;
  return out;
}

std::vector<Weight> OqContext::ordered(const Multiplicities& m) const {
  std::vector<Weight> out;
  for (const auto& [x, c] : m) out.push_back(x);
  if (out.empty()) return out;
  Weight top = out.front();
  for (const auto& x : out)
    if (datum_.scaled_height(x) > datum_.scaled_height(top) ||
        (datum_.scaled_height(x) == datum_.scaled_height(top) && x > top))
      top = x;
  ring_.order_below(top, out);
  return out;
}

nlohmann::ordered_json OqContext::to_json(const Multiplicities& m) const {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& x : ordered(m)) j[x.to_string()] = m.at(x);
  return j;
}

nlohmann::ordered_json OqContext::to_json(const DecompositionRecord& rec) const {
  nlohmann::ordered_json j;
  j["kind"] = to_string(rec.kind);
  j["classical"] = rec.classical_weight.coords();
  j["finite"] = rec.finite_weight.coords();
  j["l"] = rec.l;
  return j;
}

}  // namespace oqkit
