#pragma once

#include <algorithm>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "oqkit/root_datum.hpp"

namespace oqkit {

/// Sequence of generator indices; 0 denotes the affine generator.
using Word = std::vector<int>;

std::string word_to_string(const Word& w);
/// Parses "2 1 3 2"; an empty string is the identity.
Word word_from_string(const std::string& text);

/// Square integer matrix acting on fundamental-weight coordinates.
class IntMatrix {
public:
  IntMatrix() = default;
  explicit IntMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0) {}
  static IntMatrix identity(int n);

  int size() const { return n_; }
  Int operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  Int& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }

  Weight apply(const Weight& v) const;
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
  std::size_t hash() const;

private:
  int n_ = 0;
  std::vector<Int> a_;
};

/// Element of the finite Weyl group W, acting linearly on X.
struct FiniteWeylElement {
  IntMatrix matrix;
  IntMatrix inverse;
  friend bool operator==(const FiniteWeylElement& a, const FiniteWeylElement& b) { return a.matrix == b.matrix; }
};

/// Element of W_l = W x| ZPhi. It acts on X through
///   lambda |-> finite(lambda + rho) - rho + l * translation
/// where the translation lies in the root lattice and is stored in simple-root
/// coordinates. The abstract group does not depend on l.
struct AffineWeylElement {
  FiniteWeylElement finite;
  Weight translation;
  friend bool operator==(const AffineWeylElement& a, const AffineWeylElement& b) {
    return a.finite == b.finite && a.translation == b.translation;
  }
};

struct FiniteElementHash {
  std::size_t operator()(const FiniteWeylElement& e) const noexcept { return e.matrix.hash(); }
};
struct AffineElementHash {
  std::size_t operator()(const AffineWeylElement& e) const noexcept {
    return e.finite.matrix.hash() * 31 + WeightHash{}(e.translation);
  }
};

struct GroupIdentity {
  char series = 'A';
  int rank = 0;
  bool affine = false;
  friend bool operator==(const GroupIdentity&, const GroupIdentity&) = default;
};

/// Bruhat order, lower intervals and ShortLex words shared by both groups.
/// Derived must provide identity(), generators(), generator(s), multiply(),
/// inverse(), length(), is_left_descent().
template <class Derived, class Element, class Hash>
class CoxeterOps {
public:
  using ElementSet = std::vector<Element>;

  Element left_multiply(int s, const Element& x) const { return self().multiply(self().generator(s), x); }
  Element right_multiply(const Element& x, int s) const { return self().multiply(x, self().generator(s)); }

  bool is_right_descent(const Element& x, int s) const { return self().is_left_descent(self().inverse(x), s); }

  /// First (smallest-index) left descent, or -1 for the identity.
  int first_left_descent(const Element& x) const {
    for (int s : self().generators())
      if (self().is_left_descent(x, s)) return s;
    return -1;
  }

  /// Lexicographically smallest reduced word.
  Word reduced_word(const Element& x) const {
    Word w;
    Element cur = x;
    for (int s = first_left_descent(cur); s >= 0; s = first_left_descent(cur)) {
      w.push_back(s);
      cur = left_multiply(s, cur);
    }
    return w;
  }

  Element from_word(const Word& w) const {
    Element x = self().identity();
    for (int s : w) {
      auto gens = self().generators();
      if (std::find(gens.begin(), gens.end(), s) == gens.end())
        throw Error("generator " + std::to_string(s) + " does not belong to this group");
      x = right_multiply(x, s);
    }
    return x;
  }

  /// y <= w in the Bruhat order. Follows a reduced word of w from the left:
  /// for a left descent s of w, y <= w iff min(y, sy) <= sw.
  bool bruhat_leq(const Element& y, const Element& w) const {
    Element a = y, b = w;
    while (true) {
      if (self().length(a) > self().length(b)) return false;
      int s = first_left_descent(b);
      if (s < 0) return a == self().identity();
      if (self().is_left_descent(a, s)) a = left_multiply(s, a);
      b = left_multiply(s, b);
    }
  }

  /// All z <= w, memoized.
  std::shared_ptr<const ElementSet> lower_ideal(const Element& w) const {
    {
      std::lock_guard lock(ideal_mutex_);
      auto it = ideals_.find(w);
      if (it != ideals_.end()) return it->second;
    }
    std::shared_ptr<ElementSet> result;
    int s = first_left_descent(w);
    if (s < 0) {
      result = std::make_shared<ElementSet>(ElementSet{self().identity()});
    } else {
      auto below = lower_ideal(left_multiply(s, w));
      std::unordered_set<Element, Hash> seen(below->begin(), below->end());
      result = std::make_shared<ElementSet>(*below);
      for (const auto& z : *below) {
        Element sz = left_multiply(s, z);
        if (seen.insert(sz).second) result->push_back(sz);
      }
    }
    std::lock_guard lock(ideal_mutex_);
    return ideals_.emplace(w, std::move(result)).first->second;
  }

  /// All z with y <= z <= w.
  ElementSet bruhat_interval(const Element& y, const Element& w) const {
    ElementSet out;
    if (!bruhat_leq(y, w)) return out;
    for (const auto& z : *lower_ideal(w))
      if (bruhat_leq(y, z)) out.push_back(z);
    return out;
  }

private:
  const Derived& self() const { return static_cast<const Derived&>(*this); }
  mutable std::mutex ideal_mutex_;
  mutable std::unordered_map<Element, std::shared_ptr<const ElementSet>, Hash> ideals_;
};

class FiniteWeylGroup : public CoxeterOps<FiniteWeylGroup, FiniteWeylElement, FiniteElementHash> {
public:
  using Element = FiniteWeylElement;
  using Hash = FiniteElementHash;

  explicit FiniteWeylGroup(const RootDatum& datum);

  const RootDatum& datum() const { return datum_; }
  GroupIdentity identity_tag() const { return {datum_.series(), datum_.rank(), false}; }

  std::vector<int> generators() const;
  Element identity() const;
  Element generator(int s) const;  // s in 1..n
  Element multiply(const Element& a, const Element& b) const;
  Element inverse(const Element& a) const { return {a.inverse, a.matrix}; }
  Int length(const Element& w) const;
  bool is_left_descent(const Element& w, int s) const;

  /// Reflection s_alpha for a positive root.
  Element reflection(const Root& alpha) const;
  Element longest() const;

  /// w . lambda = w(lambda + rho) - rho.
  Weight dot(const Element& w, const Weight& lambda) const;

  /// All elements, sorted by length (ties in ShortLex order of reduced words).
  const std::vector<Element>& elements() const;
  std::size_t order() const { return elements().size(); }

  struct AntidominantReduction {
    Element w;              // minimal with w^{-1} . lambda = antidominant
    Weight antidominant;
  };
  AntidominantReduction min_to_antidominant(const Weight& lambda) const;

  /// Dot-orbit of lambda.
  std::vector<Weight> dot_orbit(const Weight& lambda) const;

private:
  RootDatum datum_;
  std::vector<Element> gens_;
  mutable std::once_flag elements_once_;
  mutable std::vector<Element> elements_;
};

class AffineWeylGroup : public CoxeterOps<AffineWeylGroup, AffineWeylElement, AffineElementHash> {
public:
  using Element = AffineWeylElement;
  using Hash = AffineElementHash;

  explicit AffineWeylGroup(const RootDatum& datum);

  const RootDatum& datum() const { return datum_; }
  const FiniteWeylGroup& finite_group() const { return finite_; }
  GroupIdentity identity_tag() const { return {datum_.series(), datum_.rank(), true}; }

  std::vector<int> generators() const;
  Element identity() const;
  /// s = 0 is the reflection in the wall <lambda + rho, theta^vee> = -l, where
  /// theta^vee is the highest coroot; s = 1..n are the finite simple reflections.
  Element generator(int s) const;
  Element multiply(const Element& a, const Element& b) const;
  Element inverse(const Element& a) const;
  Element from_finite(const FiniteWeylElement& w) const;

  /// Number of hyperplanes <x, alpha^vee> in lZ separating the fundamental
  /// alcove from its image.
  Int length(const Element& x) const;
  bool is_left_descent(const Element& x, int s) const;

  /// Dot action for the given l.
  Weight dot(const Element& x, const Weight& lambda, Int l) const;

  /// The action on shifted coordinates p = lambda + rho.
  Weight act_shifted(const Element& x, const Weight& p, Int l) const;

  /// Reflection s_{alpha, m l}: lambda |-> lambda - (<lambda + rho, alpha^vee> - m l) alpha.
  Element affine_reflection(const Root& alpha, Int m) const;

  /// Image of the canonical interior point of the fundamental alcove, in units
  /// where the walls sit at multiples of (max coroot height + 1).
  Weight scaled_alcove_point(const Element& x) const;

  /// True if x maps the fundamental alcove into the dominant chamber.
  bool maps_into_dominant_chamber(const Element& x) const;

  struct AlcovePosition {
    Weight base;        // in the closure of A^-_l
    Element navigator;  // minimal with navigator . base = original
  };
  AlcovePosition normalize_to_alcove(const Weight& lambda, Int l) const;

  const Root& theta() const { return datum_.positive_roots()[datum_.highest_coroot_index()]; }

private:
  Weight translation_fundamental(const Element& x) const { return datum_.from_simple(x.translation); }

  RootDatum datum_;
  FiniteWeylGroup finite_;
  Int scale_;
};

}  // namespace oqkit
