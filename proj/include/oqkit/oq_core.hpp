#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include <json.hpp>

#include "oqkit/char_ring.hpp"
#include "oqkit/kl.hpp"

namespace oqkit {

enum class ModuleKind { simple, projective, injective, tilting };

ModuleKind parse_module_kind(const std::string& text);
std::string to_string(ModuleKind kind);

/// l-adic tensor decomposition X(lambda) = X_C(classical)^[l] (x) F(finite).
/// For tilting modules, lambda - (l-1)rho = nu0 + l nu1 is expanded instead,
/// giving classical = nu1 and finite = (l-1)rho + w0 nu0. This equals
/// (lambda1 - rho, l rho + w0 . lambda0) unless some lambda0_i = l - 1.
struct DecompositionRecord {
  ModuleKind kind = ModuleKind::simple;
  Weight classical_weight;
  Weight finite_weight;
  Int l = 0;
};

/// Multiplicities of standard or simple constituents of one module.
struct MultiplicityTable {
  std::string subject;  // e.g. "Delta_q(4)", "T_q(1,0)"
  Multiplicities entries;
  bool complete = true;
};

enum class TiltingMode { standard, regular_fast_path };
enum class PqMode { oracle, formula };

struct PqValue {
  Int value = 0;
  PqMode mode = PqMode::oracle;
  bool forced = false;
};

struct SpecialBlock {
  bool is_special = false;
  std::optional<Weight> f_image;  // lambda1 when special
};

struct StructuralPredicates {
  bool verma_simple = false;      // sufficient condition only
  bool verma_projective = false;  // sufficient condition only
  bool proj_injective = false;    // iff
};

struct LargeLComparison {
  Int quantum = 0;
  Int baby = 0;
  bool criterion = false;
  bool agree = false;
};

/// Classical data of one dot-orbit W . b with b antidominant.
struct ClassicalOrbit {
  Weight base;
  std::vector<Weight> weights;                // highest first
  std::map<Weight, std::size_t> index;
  std::vector<std::vector<Int>> p;            // p[mu][lambda] = p^C_{mu, lambda}
  std::vector<std::vector<Int>> verma_simple; // [lambda][mu] = [Delta_C(lambda) : L_C(mu)]
};

/// All computations for one root datum and one odd l.
///
/// Memo tables are write-once and guarded, so a context may be shared across
/// threads. The KL engines are exposed for cache management.
class OqContext {
public:
  OqContext(RootDatum datum, Int l);
  OqContext(const OqContext&) = delete;
  OqContext& operator=(const OqContext&) = delete;

  const RootDatum& datum() const { return datum_; }
  Int l() const { return l_; }
  const CharacterRing& ring() const { return ring_; }
  const FiniteWeylGroup& finite_group() const { return *finite_; }
  const AffineWeylGroup& affine_group() const { return *affine_; }
  FiniteKL& finite_kl() { return *finite_kl_; }
  AffineKL& affine_kl() { return *affine_kl_; }
  const FiniteKL& finite_kl() const { return *finite_kl_; }
  const AffineKL& affine_kl() const { return *affine_kl_; }

  LAdicPair expand(const Weight& lambda) const { return l_adic_decompose(lambda, l_); }

  // ---- decompositions
  DecompositionRecord decompose(ModuleKind kind, const Weight& lambda) const;
  Weight reconstruct(const DecompositionRecord& rec) const;

  // ---- classical category O
  const ClassicalOrbit& classical_orbit(const Weight& lambda) const;
  Int classical_p(const Weight& mu, const Weight& lambda) const;
  Int classical_verma_simple_multiplicity(const Weight& lambda, const Weight& mu) const;
  Multiplicities classical_verma_factors(const Weight& lambda) const;
  /// (T_C(kappa) : Delta_C(nu)) = [Delta_C(-2rho - nu) : L_C(-2rho - kappa)].
  Multiplicities classical_tilting_factors(const Weight& kappa) const;
  /// (P_C(lambda) : Delta_C(mu)) = [Delta_C(mu) : L_C(lambda)].
  Multiplicities classical_projective_factors(const Weight& lambda) const;
  Int generic_verma_simple_multiplicity(const Weight& lambda, const Weight& mu) const {
    return classical_verma_simple_multiplicity(lambda, mu);
  }

  // ---- characters
  /// ch L_q(lambda0) for lambda0 in X_l.
  const TruncatedCharacter& restricted_simple_character(const Weight& lambda0) const;
  /// e^{l mu1} ch L_q(mu0).
  TruncatedCharacter baby_simple_character(const Weight& mu) const;
  TruncatedCharacter classical_simple_character(const Weight& lambda, const Window& w) const;
  /// ch L_q(lambda) = (ch L_C(lambda1))^[l] ch L_q(lambda0), exact on {lambda} to the given depth.
  TruncatedCharacter simple_character(const Weight& lambda, Int depth) const;

  // ---- small quantum group
  Multiplicities baby_verma_factors(const Weight& lambda) const;
  Int baby_verma_simple_multiplicity(const Weight& lambda, const Weight& mu) const;
  /// (Q_q(mu) : baby Delta(eta)) = [baby Delta(eta) : baby L(mu)].
  Multiplicities finite_projective_factors(const Weight& mu) const;

  // ---- quantum category O
  Multiplicities verma_factors(const Weight& lambda) const;
  Int quantum_verma_simple_multiplicity(const Weight& lambda, const Weight& mu) const;
  Multiplicities tilting_factors(const Weight& lambda, TiltingMode mode = TiltingMode::standard) const;
  Int tilting_verma_multiplicity(const Weight& lambda, const Weight& mu,
                                 TiltingMode mode = TiltingMode::standard) const;
  /// Verma flag of P_q(lambda) = P_C(lambda1)^[l] (x) Q_q(lambda0).
  Multiplicities projective_factors(const Weight& lambda) const;
  /// dual Verma flag of I_q(lambda) = I_C(lambda1)^[l] (x) Q_q(lambda0).
  Multiplicities injective_factors(const Weight& lambda) const;
  /// By reciprocity, [Delta_q(mu) : L_q(lambda)]; also (I_q(lambda) : nabla_q(mu)).
  Int projective_verma_multiplicity(const Weight& lambda, const Weight& mu) const {
    return quantum_verma_simple_multiplicity(mu, lambda);
  }
  PqValue p_q_coefficient(const Weight& mu, const Weight& lambda, PqMode mode, Int depth = 12,
                          bool force = false) const;

  // ---- special block and structure
  SpecialBlock special_block(const Weight& lambda) const;
  Weight special_g(const Weight& mu) const { return l_ * mu + (l_ - 1) * datum_.rho(); }
  StructuralPredicates structural_predicates(const Weight& lambda) const;
  LargeLComparison large_l_comparison(const Weight& lambda, const Weight& mu) const;

  // ---- output
  /// Weights ordered by height below the highest entry, ties lexicographically descending.
  std::vector<Weight> ordered(const Multiplicities& m) const;
  nlohmann::ordered_json to_json(const Multiplicities& m) const;
  nlohmann::ordered_json to_json(const DecompositionRecord& rec) const;

private:
  Multiplicities tilting_standard(const Weight& lambda) const;
  Multiplicities tilting_fast_path(const Weight& lambda) const;
  Multiplicities restricted_baby_factors(const Weight& lambda0) const;
  TruncatedCharacter compute_restricted(const Weight& lambda0) const;

  RootDatum datum_;
  Int l_;
  CharacterRing ring_;
  std::unique_ptr<FiniteWeylGroup> finite_;
  std::unique_ptr<AffineWeylGroup> affine_;
  std::unique_ptr<FiniteKL> finite_kl_;
  std::unique_ptr<AffineKL> affine_kl_;

  mutable std::mutex memo_mutex_;
  mutable std::map<Weight, std::shared_ptr<const ClassicalOrbit>> orbits_;
  mutable std::map<Weight, std::shared_ptr<const TruncatedCharacter>> restricted_;
  mutable std::map<Weight, Multiplicities> baby_;
};

}  // namespace oqkit
