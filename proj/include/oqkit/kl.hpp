#pragma once

#include <algorithm>
#include <fstream>
#include <mutex>
#include <sstream>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "oqkit/polynomial.hpp"
#include "oqkit/weyl.hpp"

namespace oqkit {

inline constexpr int kCacheVersion = 1;

/// Kazhdan-Lusztig polynomials P_{y,w} and inverse polynomials Q_{z,w} of a
/// finite or affine Weyl group, memoized per (y, w).
///
/// P is computed by the left-descent recursion: for s with sw < w, v = sw and
/// sy < y,
///   P_{y,w} = P_{sy,v} + q P_{y,v} - sum_{z} mu(z,v) q^{(l(w)-l(z))/2} P_{y,z}
/// over y <= z < v with sz < z; when sy > y, P_{y,w} = P_{sy,w}.
/// Q solves sum_z (-1)^{l(z)-l(y)} P_{y,z} Q_{z,w} = delta_{y,w} over [y, w].
///
/// Public calls are serialized; entries are write-once and deterministic.
template <class Group>
class KLEngine {
public:
  using Element = typename Group::Element;

  explicit KLEngine(const Group& group) : group_(group) {}

  const Group& group() const { return group_; }

  Polynomial kl_polynomial(const Element& y, const Element& w) const {
    std::lock_guard lock(mutex_);
    return p_locked(y, w);
  }

  /// Coefficient of q^{(l(w)-l(y)-1)/2} in P_{y,w}; 0 unless y < w.
  Int mu_coefficient(const Element& y, const Element& w) const {
    std::lock_guard lock(mutex_);
    return mu_locked(y, w);
  }

  Polynomial inverse_kl_polynomial(const Element& z, const Element& w) const {
    std::lock_guard lock(mutex_);
    return q_locked(z, w);
  }

  std::size_t size() const {
    std::lock_guard lock(mutex_);
    return p_memo_.size();
  }
  std::size_t inverse_size() const {
    std::lock_guard lock(mutex_);
    return q_memo_.size();
  }

  /// Writes every memoized P as JSON lines, sorted by (l(w), w, l(y), y).
  void cache_store(std::ostream& out) const {
    std::lock_guard lock(mutex_);
    const auto tag = group_.identity_tag();
    nlohmann::ordered_json header;
    header["version"] = kCacheVersion;
    header["series"] = std::string(1, tag.series);
    header["rank"] = tag.rank;
    header["affine"] = tag.affine;
    out << header.dump() << '\n';
    using Row = std::tuple<Int, Word, Int, Word, const Polynomial*>;
    std::vector<Row> rows;
    rows.reserve(p_memo_.size());
    for (const auto& [key, poly] : p_memo_)
      rows.emplace_back(group_.length(key.second), group_.reduced_word(key.second), group_.length(key.first),
                        group_.reduced_word(key.first), &poly);
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
      return std::tie(std::get<0>(a), std::get<1>(a), std::get<2>(a), std::get<3>(a)) <
             std::tie(std::get<0>(b), std::get<1>(b), std::get<2>(b), std::get<3>(b));
    });
    for (const auto& row : rows) {
      nlohmann::ordered_json e;
      e["y"] = word_to_string(std::get<3>(row));
      e["w"] = word_to_string(std::get<1>(row));
      e["p"] = std::get<4>(row)->coeffs();
      out << e.dump() << '\n';
    }
  }

  void cache_store(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write KL cache '" + path + "'");
    cache_store(out);
    if (!out) throw Error("error while writing KL cache '" + path + "'");
  }

  /// Merges a stored table. Rejects version or group mismatches, malformed
  /// lines, non-canonical words and entries that disagree with memoized values.
  void cache_load(std::istream& in, const std::string& source = "<stream>") {
    std::string line;
    if (!std::getline(in, line)) throw Error(source + ": empty KL cache");
    nlohmann::json header;
    try {
      header = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw Error(source + ":1: cannot parse cache header: " + e.what());
    }
    const auto tag = group_.identity_tag();
    try {
      if (header.at("version").get<int>() != kCacheVersion)
        throw Error(source + ": unsupported cache version " + header.at("version").dump());
      GroupIdentity found{header.at("series").get<std::string>().at(0), header.at("rank").get<int>(),
                          header.at("affine").get<bool>()};
      if (!(found == tag))
        throw Error(source + ": cache is for group " + header.at("series").get<std::string>() +
                    std::to_string(found.rank) + (found.affine ? " (affine)" : " (finite)") +
                    ", session group is " + std::string(1, tag.series) + std::to_string(tag.rank) +
                    (tag.affine ? " (affine)" : " (finite)"));
    } catch (const nlohmann::json::exception& e) {
      throw Error(source + ":1: malformed cache header: " + e.what());
    }

    std::vector<std::pair<Key, Polynomial>> entries;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      const std::string where = source + ":" + std::to_string(lineno);
      try {
        auto e = nlohmann::json::parse(line);
        Word yw = word_from_string(e.at("y").get<std::string>());
        Word ww = word_from_string(e.at("w").get<std::string>());
        Element y = group_.from_word(yw);
        Element w = group_.from_word(ww);
        if (group_.reduced_word(y) != yw || group_.reduced_word(w) != ww)
          throw Error(where + ": word is not in ShortLex-minimal reduced form");
        entries.emplace_back(Key{y, w}, Polynomial(e.at("p").get<std::vector<Int>>()));
      } catch (const nlohmann::json::exception& e) {
        throw Error(where + ": cannot parse cache entry: " + e.what());
      }
    }
    std::lock_guard lock(mutex_);
    for (const auto& [key, poly] : entries) {
      auto it = p_memo_.find(key);
      if (it != p_memo_.end() && !(it->second == poly))
        throw Error(source + ": cached polynomial conflicts with computed value");
    }
    for (auto& [key, poly] : entries) p_memo_.emplace(key, std::move(poly));
  }

  void cache_load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read KL cache '" + path + "'");
    cache_load(in, path);
  }

private:
  using Key = std::pair<Element, Element>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      typename Group::Hash h;
      return h(k.first) * 1000003u ^ h(k.second);
    }
  };

  Polynomial p_locked(const Element& y, const Element& w) const {
    if (y == w) return Polynomial::constant(1);
    Key key{y, w};
    if (auto it = p_memo_.find(key); it != p_memo_.end()) return it->second;
    Polynomial result;
    if (group_.bruhat_leq(y, w)) {
      const int s = group_.first_left_descent(w);
      const Element sy = group_.left_multiply(s, y);
      if (!group_.is_left_descent(y, s)) {
        result = p_locked(sy, w);
      } else {
        const Element v = group_.left_multiply(s, w);
        const Int lw = group_.length(w);
        result = p_locked(sy, v) + p_locked(y, v).shifted(1);
        for (const auto& z : *group_.lower_ideal(v)) {
          if (z == v || !group_.is_left_descent(z, s)) continue;
          const Int lz = group_.length(z);
          if ((lw - lz) % 2 != 0) continue;  // mu(z, v) needs l(v) - l(z) odd
          if (!group_.bruhat_leq(y, z)) continue;
          Int m = mu_locked(z, v);
          if (m == 0) continue;
          result -= (m * p_locked(y, z)).shifted(static_cast<int>((lw - lz) / 2));
        }
      }
      check_invariants(y, w, result);
    }
    p_memo_.emplace(key, result);
    return result;
  }

  Int mu_locked(const Element& y, const Element& w) const {
    if (y == w) return 0;
    const Int d = group_.length(w) - group_.length(y);
    if (d <= 0 || d % 2 == 0) return 0;
    return p_locked(y, w).coeff(static_cast<int>((d - 1) / 2));
  }

  Polynomial q_locked(const Element& z, const Element& w) const {
    if (z == w) return Polynomial::constant(1);
    Key key{z, w};
    if (auto it = q_memo_.find(key); it != q_memo_.end()) return it->second;
    Polynomial result;
    if (group_.bruhat_leq(z, w)) {
      const Int lz = group_.length(z);
      for (const auto& u : *group_.lower_ideal(w)) {
        if (u == z || !group_.bruhat_leq(z, u)) continue;
        Polynomial term = p_locked(z, u) * q_locked(u, w);
        if ((group_.length(u) - lz) % 2 == 0)
          result -= term;
        else
          result += term;
      }
    }
    q_memo_.emplace(key, result);
    return result;
  }

  void check_invariants(const Element& y, const Element& w, const Polynomial& p) const {
    const Int d = group_.length(w) - group_.length(y);
    if (p.coeff(0) != 1 || 2 * p.degree() > d - 1)
      throw Error("internal: KL polynomial violates normalization or degree bound");
    for (auto c : p.coeffs())
      if (c < 0) throw Error("internal: KL polynomial with negative coefficient");
  }

  const Group& group_;
  mutable std::recursive_mutex mutex_;
  mutable std::unordered_map<Key, Polynomial, KeyHash> p_memo_;
  mutable std::unordered_map<Key, Polynomial, KeyHash> q_memo_;
};

using FiniteKL = KLEngine<FiniteWeylGroup>;
using AffineKL = KLEngine<AffineWeylGroup>;

}  // namespace oqkit
