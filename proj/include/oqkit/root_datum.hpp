#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oqkit/weight.hpp"

namespace oqkit {

/// A positive root, stored in simple-root coordinates together with the
/// functional it defines on X: <lambda, alpha^vee> = sum_j coroot[j] * lambda[j].
struct Root {
  Weight simple;       // alpha = sum_j simple[j] alpha_j
  Weight coroot;       // alpha^vee in simple-coroot coordinates
  Weight fundamental;  // alpha in fundamental-weight coordinates
  Int coroot_height() const;
};

/// Cartan data of a finite root system of type A-G.
///
/// Conventions (Bourbaki numbering): cartan[i][j] = <alpha_j, alpha_i^vee>, so
/// the simple root alpha_j has fundamental coordinates given by column j.
/// Symmetrizers d_i are coprime positive integers with d_i cartan[i][j]
/// symmetric; d_i = (alpha_i, alpha_i) / 2 with short roots normalized to 1.
/// In G2 the first simple root is short, so d = (1, 3).
class RootDatum {
public:
  RootDatum(char series, int rank);

  /// Parses "A1", "B2", "G2", ...
  static RootDatum from_label(const std::string& label);

  char series() const { return series_; }
  int rank() const { return rank_; }
  std::string label() const { return std::string(1, series_) + std::to_string(rank_); }

  Int cartan(int i, int j) const { return cartan_[i][j]; }
  const std::vector<std::vector<Int>>& cartan_matrix() const { return cartan_; }
  const std::vector<Int>& symmetrizers() const { return sym_; }

  const std::vector<Root>& positive_roots() const { return roots_; }
  std::size_t num_positive_roots() const { return roots_.size(); }

  /// Index into positive_roots() of the simple root alpha_i.
  std::size_t simple_root_index(int i) const { return simple_index_[i]; }
  /// Index of the root whose coroot is the highest coroot.
  std::size_t highest_coroot_index() const { return theta_; }
  /// Largest value of <rho, alpha^vee> over positive roots.
  Int max_coroot_height() const { return roots_[theta_].coroot_height(); }
  /// Index of the highest root (largest height in simple coordinates).
  std::size_t highest_root_index() const { return highest_root_; }

  Weight rho() const { return Weight::filled(rank_, 1); }
  Weight zero() const { return Weight(rank_); }

  Int pairing(const Weight& lambda, const Root& alpha) const;

  /// Simple-root coordinates of lambda, or nullopt if lambda is not in the root lattice.
  std::optional<Weight> simple_coords(const Weight& lambda) const;
  /// Fundamental coordinates of sum_j c[j] alpha_j.
  Weight from_simple(const Weight& c) const;

  /// mu <= lambda: lambda - mu is a non-negative integer combination of simple roots.
  bool dominance_leq(const Weight& mu, const Weight& lambda) const;

  /// det-scaled height: sum of the simple coordinates of lambda times the
  /// denominator of the inverse Cartan matrix. Strictly monotone for the dominance order.
  Int scaled_height(const Weight& lambda) const;

  /// Sum of the simple coordinates of lambda - mu; requires lambda - mu in the root lattice.
  Int height_difference(const Weight& lambda, const Weight& mu) const;

  bool is_dominant(const Weight& lambda) const;
  /// lambda + rho in -X^+.
  bool is_antidominant(const Weight& lambda) const;
  bool is_regular(const Weight& lambda) const;
  bool is_l_regular(const Weight& lambda, Int l) const;

  bool operator==(const RootDatum& o) const { return series_ == o.series_ && rank_ == o.rank_; }

private:
  char series_;
  int rank_;
  std::vector<std::vector<Int>> cartan_;
  std::vector<Int> sym_;
  std::vector<Root> roots_;
  std::vector<std::size_t> simple_index_;
  std::size_t theta_ = 0;
  std::size_t highest_root_ = 0;
  // cartan^{-1} = inv_num_ / inv_den_
  std::vector<std::vector<Int>> inv_num_;
  Int inv_den_ = 1;
};

/// lambda = lambda0 + l * lambda1 with 0 <= lambda0[i] < l.
struct LAdicPair {
  Weight lambda0;
  Weight lambda1;
  Int l = 0;
  Weight reconstruct() const { return lambda0 + l * lambda1; }
};

/// Rejects l unless it is odd, >= 3, and prime to 3 in type G2.
void validate_l(const RootDatum& datum, Int l);

LAdicPair l_adic_decompose(const Weight& lambda, Int l);

/// lambda0 in X_l.
bool in_restricted_box(const Weight& lambda, Int l);

struct WeightPredicates {
  bool dominant = false;
  bool antidominant = false;
  bool regular = false;
  bool l_regular = false;
  bool special = false;
  bool steinberg = false;
};

WeightPredicates weight_predicates(const RootDatum& datum, const Weight& lambda, Int l);

}  // namespace oqkit
