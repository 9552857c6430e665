#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace oqkit {

using Int = std::int64_t;

/// Thrown for rejected inputs (bad series/rank, bad l, weights outside X_l, ...).
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Thrown when a computation is asked outside the range where its method is valid.
class RangeError : public Error {
public:
  using Error::Error;
};

/// Integer vector of fixed length. Used both for weights in fundamental-weight
/// coordinates and for root-lattice elements in simple-root coordinates.
class Weight {
public:
  Weight() = default;
  explicit Weight(std::size_t rank) : c_(rank, 0) {}
  Weight(std::initializer_list<Int> init) : c_(init) {}
  explicit Weight(std::vector<Int> coords) : c_(std::move(coords)) {}

  static Weight filled(std::size_t rank, Int value) {
    Weight w(rank);
    for (auto& x : w.c_) x = value;
    return w;
  }

  std::size_t rank() const { return c_.size(); }
  Int operator[](std::size_t i) const { return c_[i]; }
  Int& operator[](std::size_t i) { return c_[i]; }
  const std::vector<Int>& coords() const { return c_; }

  Weight& operator+=(const Weight& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Weight& operator-=(const Weight& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Weight& operator*=(Int k) {
    for (auto& x : c_) x *= k;
    return *this;
  }
  friend Weight operator+(Weight a, const Weight& b) { return a += b; }
  friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
  friend Weight operator*(Int k, Weight a) { return a *= k; }
  friend Weight operator-(Weight a) { return a *= -1; }

  bool is_zero() const {
    for (auto x : c_)
      if (x != 0) return false;
    return true;
  }

  friend bool operator==(const Weight&, const Weight&) = default;
  friend auto operator<=>(const Weight&, const Weight&) = default;

  /// "3,-1,0"
  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(c_[i]);
    }
    return s;
  }

  static Weight parse(const std::string& text);

private:
  void check(const Weight& o) const {
    if (o.c_.size() != c_.size()) throw Error("weight rank mismatch");
  }
  std::vector<Int> c_;
};

inline std::ostream& operator<<(std::ostream& os, const Weight& w) {
  return os << '(' << w.to_string() << ')';
}

inline Weight Weight::parse(const std::string& text) {
  std::vector<Int> v;
  std::size_t pos = 0;
  if (text.empty()) throw Error("empty weight");
  while (pos <= text.size()) {
    auto next = text.find(',', pos);
    if (next == std::string::npos) next = text.size();
    std::string tok = text.substr(pos, next - pos);
    std::size_t used = 0;
    long long value = 0;
    try {
      value = std::stoll(tok, &used);
    } catch (const std::exception&) {
      throw Error("malformed weight '" + text + "'");
    }
    if (used != tok.size()) throw Error("malformed weight '" + text + "'");
    v.push_back(value);
    pos = next + 1;
  }
  return Weight(std::move(v));
}

struct WeightHash {
  std::size_t operator()(const Weight& w) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (auto x : w.coords()) {
      h ^= std::hash<Int>{}(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

/// Floor division and non-negative remainder.
inline Int floor_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
inline Int floor_mod(Int a, Int b) { return a - b * floor_div(a, b); }

}  // namespace oqkit

template <>
struct std::hash<oqkit::Weight> : oqkit::WeightHash {};
