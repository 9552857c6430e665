#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include <json.hpp>

#include "oqkit/root_datum.hpp"

namespace oqkit {

/// Region { tau - sum_i c_i alpha_i : tau in tops, 0 <= c_i <= depth }.
struct Window {
  std::vector<Weight> tops;
  Int depth = 0;
};

/// An element of the completed group ring, known exactly on part of X.
///
/// `bounds` bound the full support from above: every weight with a nonzero
/// coefficient lies below some bound. `values` agrees with the full character
/// on the admissible set of `window`; weights below no bound are known to be
/// zero. A finite character is known everywhere and carries no window of its
/// own. Characters of actual modules have nonnegative coefficients; alternating
/// sums are flagged virtual.
struct TruncatedCharacter {
  std::vector<Weight> bounds;
  std::optional<Window> window;  // empty for finite characters
  std::map<Weight, Int> values;  // nonzero entries only
  bool is_virtual = false;

  bool finite() const { return !window.has_value(); }
};

using Multiplicities = std::map<Weight, Int>;

/// Arithmetic in the truncated group ring of one root datum.
class CharacterRing {
public:
  explicit CharacterRing(RootDatum datum) : datum_(std::move(datum)) {}

  const RootDatum& datum() const { return datum_; }

  // ---- windows
  bool admissible(const Window& w, const Weight& x) const;
  std::vector<Weight> points(const Window& w) const;
  /// Smallest depth at which x becomes admissible for these tops, if any.
  std::optional<Int> depth_of(const std::vector<Weight>& tops, const Weight& x) const;
  bool below_some(const std::vector<Weight>& bounds, const Weight& x) const;

  // ---- queries
  bool known(const TruncatedCharacter& ch, const Weight& x) const;
  /// Throws Error when the coefficient at x is not determined.
  Int coefficient(const TruncatedCharacter& ch, const Weight& x) const;
  /// True when both are known and agree at every admissible weight of w.
  bool equal_on(const TruncatedCharacter& a, const TruncatedCharacter& b, const Window& w) const;
  /// Re-declares the window; every admissible weight of w must be known.
  TruncatedCharacter restrict(const TruncatedCharacter& ch, const Window& w) const;
  Int dimension(const TruncatedCharacter& ch) const;

  // ---- constructors
  TruncatedCharacter monomial(const Weight& lambda, Int c = 1) const;
  TruncatedCharacter finite(const Multiplicities& values, bool is_virtual = false) const;
  /// Kostant partition counts below lambda, exact on w.
  TruncatedCharacter verma(const Weight& lambda, const Window& w) const;
  TruncatedCharacter verma(const Weight& lambda, Int depth) const { return verma(lambda, Window{{lambda}, depth}); }
  /// e^lambda prod_{alpha > 0} (1 + e^{-alpha} + ... + e^{-(l-1) alpha}).
  TruncatedCharacter baby_verma(const Weight& lambda, Int l) const;
  TruncatedCharacter steinberg(Int l) const { return baby_verma((l - 1) * datum_.rho(), l); }
  /// Weyl character chi(lambda), alternating: chi(w . lambda) = (-1)^{l(w)} chi(lambda).
  /// Zero when lambda + rho is singular; negative ones are flagged virtual.
  TruncatedCharacter weyl(const Weight& lambda) const;

  // ---- ring operations
  TruncatedCharacter frobenius_twist(const TruncatedCharacter& ch, Int l) const;
  TruncatedCharacter multiply(const TruncatedCharacter& a, const TruncatedCharacter& b) const;
  TruncatedCharacter add(const TruncatedCharacter& a, const TruncatedCharacter& b) const;
  TruncatedCharacter scale(const TruncatedCharacter& a, Int k) const;
  /// Multiplication by e^mu.
  TruncatedCharacter shift(const TruncatedCharacter& a, const Weight& mu) const;

  /// Kostant partition count of gamma (simple-root coordinates); 0 unless gamma >= 0.
  Int kostant(const Weight& gamma_simple) const;

  /// Weights of the support, highest first (see order_below).
  std::vector<Weight> ordered_support(const TruncatedCharacter& ch) const;
  /// Sorts weights by height below top, then lexicographically descending.
  void order_below(const Weight& top, std::vector<Weight>& weights) const;

  nlohmann::ordered_json to_json(const TruncatedCharacter& ch) const;

private:
  std::vector<Weight> maximal_elements(const std::vector<Weight>& xs) const;
  /// Largest d <= max_depth with ok(x) for every admissible x of (tops, d).
  Int fit_depth(const std::vector<Weight>& tops, Int max_depth, const std::function<bool(const Weight&)>& ok) const;
  /// Kostant counts on the box [0, extent] in simple coordinates, row-major.
  std::vector<Int> kostant_box(const Weight& extent) const;

  RootDatum datum_;
};

}  // namespace oqkit
