#pragma once

#include <string>
#include <vector>

#include "oqkit/weight.hpp"

namespace oqkit {

/// Integer polynomial in one variable q, constant term first, no trailing zeros.
class Polynomial {
public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }
  static Polynomial constant(Int c) { return Polynomial(std::vector<Int>{c}); }
  static Polynomial monomial(Int c, int degree) {
    std::vector<Int> v(degree + 1, 0);
    v[degree] = c;
    return Polynomial(std::move(v));
  }

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Int coeff(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : 0; }
  const std::vector<Int>& coeffs() const { return c_; }
  Int at_one() const {
    Int s = 0;
    for (auto x : c_) s += x;
    return s;
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Int> r(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(r));
  }
  friend Polynomial operator*(Int k, Polynomial a) {
    for (auto& x : a.c_) x *= k;
    a.trim();
    return a;
  }
  /// Multiplication by q^k.
  Polynomial shifted(int k) const {
    if (is_zero()) return {};
    std::vector<Int> r(k, 0);
    r.insert(r.end(), c_.begin(), c_.end());
    return Polynomial(std::move(r));
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// "0", "1", "1 + q", "2 + 3q^2 - q^3"
  std::string to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      Int a = c_[k];
      if (a == 0) continue;
      Int mag = a < 0 ? -a : a;
      if (s.empty())
        s += a < 0 ? "-" : "";
      else
        s += a < 0 ? " - " : " + ";
      std::string mono = k == 0 ? "" : (k == 1 ? "q" : "q^" + std::to_string(k));
      if (mag != 1 || k == 0) s += std::to_string(mag);
      s += mono;
    }
    return s;
  }

private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Int> c_;
};

}  // namespace oqkit
