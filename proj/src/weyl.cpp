#include "oqkit/weyl.hpp"

#include <deque>
#include <set>
#include <sstream>

namespace oqkit {

std::string word_to_string(const Word& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(w[i]);
  }
  return s;
}

Word word_from_string(const std::string& text) {
  Word w;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    int g = 0;
    try {
      g = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw Error("malformed word '" + text + "'");
    }
    if (used != tok.size() || g < 0) throw Error("malformed word '" + text + "'");
    w.push_back(g);
  }
  return w;
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Weight IntMatrix::apply(const Weight& v) const {
  Weight out(n_);
  for (int i = 0; i < n_; ++i) {
    Int s = 0;
    for (int j = 0; j < n_; ++j) s += (*this)(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix c(a.n_);
  for (int i = 0; i < a.n_; ++i)
    for (int k = 0; k < a.n_; ++k) {
      Int x = a(i, k);
      if (x == 0) continue;
      for (int j = 0; j < a.n_; ++j) c(i, j) += x * b(k, j);
    }
  return c;
}

std::size_t IntMatrix::hash() const {
  std::size_t h = 0x84222325ull;
  for (auto x : a_) h = h * 1099511628211ull ^ static_cast<std::size_t>(x + 1000);
  return h;
}

// ---------------------------------------------------------------- finite

FiniteWeylGroup::FiniteWeylGroup(const RootDatum& datum) : datum_(datum) {
  const int n = datum_.rank();
  for (int i = 0; i < n; ++i) {
    IntMatrix m = IntMatrix::identity(n);
    for (int k = 0; k < n; ++k) m(k, i) -= datum_.cartan(k, i);
    gens_.push_back({m, m});
  }
}

std::vector<int> FiniteWeylGroup::generators() const {
  std::vector<int> g;
  for (int i = 1; i <= datum_.rank(); ++i) g.push_back(i);
  return g;
}

FiniteWeylElement FiniteWeylGroup::identity() const {
  auto id = IntMatrix::identity(datum_.rank());
  return {id, id};
}

FiniteWeylElement FiniteWeylGroup::generator(int s) const {
  if (s < 1 || s > datum_.rank()) throw Error("no finite generator " + std::to_string(s));
  return gens_[s - 1];
}

FiniteWeylElement FiniteWeylGroup::multiply(const Element& a, const Element& b) const {
  if (a.matrix.size() != datum_.rank() || b.matrix.size() != datum_.rank())
    throw Error("element does not belong to this Weyl group");
  return {a.matrix * b.matrix, b.inverse * a.inverse};
}

Int FiniteWeylGroup::length(const Element& w) const {
  Weight wr = w.matrix.apply(datum_.rho());
  Int len = 0;
  for (const auto& r : datum_.positive_roots())
    if (datum_.pairing(wr, r) < 0) ++len;
  return len;
}

bool FiniteWeylGroup::is_left_descent(const Element& w, int s) const {
  // l(s_i w) < l(w) iff w^{-1} alpha_i < 0 iff <w rho, alpha_i^vee> < 0
  Weight wr = w.matrix.apply(datum_.rho());
  return wr[s - 1] < 0;
}

FiniteWeylElement FiniteWeylGroup::reflection(const Root& alpha) const {
  const int n = datum_.rank();
  IntMatrix m = IntMatrix::identity(n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) m(k, j) -= alpha.fundamental[k] * alpha.coroot[j];
  return {m, m};
}

FiniteWeylElement FiniteWeylGroup::longest() const {
  Element w = identity();
  while (true) {
    bool grew = false;
    for (int s : generators()) {
      if (!is_left_descent(w, s)) {
        w = left_multiply(s, w);
        grew = true;
        break;
      }
    }
    if (!grew) return w;
  }
}

Weight FiniteWeylGroup::dot(const Element& w, const Weight& lambda) const {
  const Weight rho = datum_.rho();
  return w.matrix.apply(lambda + rho) - rho;
}

const std::vector<FiniteWeylElement>& FiniteWeylGroup::elements() const {
  std::call_once(elements_once_, [this] {
    std::unordered_set<Element, Hash> seen;
    std::deque<Element> todo{identity()};
    seen.insert(identity());
    while (!todo.empty()) {
      Element w = todo.front();
      todo.pop_front();
      elements_.push_back(w);
      for (int s : generators()) {
        Element ws = right_multiply(w, s);
        if (seen.insert(ws).second) todo.push_back(ws);
      }
    }
    std::vector<std::pair<std::pair<Int, Word>, std::size_t>> keys;
    for (std::size_t i = 0; i < elements_.size(); ++i)
      keys.push_back({{length(elements_[i]), reduced_word(elements_[i])}, i});
    std::sort(keys.begin(), keys.end());
    std::vector<Element> sorted;
    for (auto& k : keys) sorted.push_back(elements_[k.second]);
    elements_ = std::move(sorted);
  });
  return elements_;
}

FiniteWeylGroup::AntidominantReduction FiniteWeylGroup::min_to_antidominant(const Weight& lambda) const {
  const Weight rho = datum_.rho();
  Weight x = lambda + rho;
  Element w = identity();
  bool moved = true;
  while (moved) {
    moved = false;
    for (int i = 0; i < datum_.rank(); ++i) {
      if (x[i] > 0) {
        x = gens_[i].matrix.apply(x);
        w = right_multiply(w, i + 1);
        moved = true;
        break;
      }
    }
  }
  return {w, x - rho};
}

std::vector<Weight> FiniteWeylGroup::dot_orbit(const Weight& lambda) const {
  std::set<Weight> seen{lambda};
  std::deque<Weight> todo{lambda};
  while (!todo.empty()) {
    Weight mu = todo.front();
    todo.pop_front();
    for (const auto& g : gens_) {
      Weight nu = dot(g, mu);
      if (seen.insert(nu).second) todo.push_back(nu);
    }
  }
  return {seen.begin(), seen.end()};
}

// ---------------------------------------------------------------- affine

AffineWeylGroup::AffineWeylGroup(const RootDatum& datum)
    : datum_(datum), finite_(datum), scale_(datum.max_coroot_height() + 1) {}

std::vector<int> AffineWeylGroup::generators() const {
  std::vector<int> g;
  for (int i = 0; i <= datum_.rank(); ++i) g.push_back(i);
  return g;
}

AffineWeylElement AffineWeylGroup::identity() const { return {finite_.identity(), datum_.zero()}; }

AffineWeylElement AffineWeylGroup::from_finite(const FiniteWeylElement& w) const { return {w, datum_.zero()}; }

AffineWeylElement AffineWeylGroup::generator(int s) const {
  if (s == 0) return {finite_.reflection(theta()), -theta().simple};
  return from_finite(finite_.generator(s));
}

AffineWeylElement AffineWeylGroup::multiply(const Element& a, const Element& b) const {
  if (a.translation.rank() != static_cast<std::size_t>(datum_.rank()) ||
      b.translation.rank() != static_cast<std::size_t>(datum_.rank()))
    throw Error("element does not belong to this affine Weyl group");
  Weight t = a.finite.matrix.apply(translation_fundamental(b)) + translation_fundamental(a);
  return {finite_.multiply(a.finite, b.finite), *datum_.simple_coords(t)};
}

AffineWeylElement AffineWeylGroup::inverse(const Element& a) const {
  Weight t = -a.finite.inverse.apply(translation_fundamental(a));
  return {finite_.inverse(a.finite), *datum_.simple_coords(t)};
}

Weight AffineWeylGroup::scaled_alcove_point(const Element& x) const {
  return x.finite.matrix.apply(-datum_.rho()) + scale_ * translation_fundamental(x);
}

Int AffineWeylGroup::length(const Element& x) const {
  Weight p = scaled_alcove_point(x);
  Int len = 0;
  for (const auto& r : datum_.positive_roots()) {
    Int k = floor_div(datum_.pairing(p, r), scale_) + 1;
    len += k < 0 ? -k : k;
  }
  return len;
}

bool AffineWeylGroup::is_left_descent(const Element& x, int s) const {
  Weight p = scaled_alcove_point(x);
  if (s == 0) return datum_.pairing(p, theta()) < -scale_;
  return p[s - 1] > 0;
}

bool AffineWeylGroup::maps_into_dominant_chamber(const Element& x) const {
  Weight p = scaled_alcove_point(x);
  for (auto v : p.coords())
    if (v <= 0) return false;
  return true;
}

Weight AffineWeylGroup::act_shifted(const Element& x, const Weight& p, Int l) const {
  return x.finite.matrix.apply(p) + l * translation_fundamental(x);
}

Weight AffineWeylGroup::dot(const Element& x, const Weight& lambda, Int l) const {
  const Weight rho = datum_.rho();
  return act_shifted(x, lambda + rho, l) - rho;
}

AffineWeylElement AffineWeylGroup::affine_reflection(const Root& alpha, Int m) const {
  return {finite_.reflection(alpha), m * alpha.simple};
}

AffineWeylGroup::AlcovePosition AffineWeylGroup::normalize_to_alcove(const Weight& lambda, Int l) const {
  validate_l(datum_, l);
  const Weight rho = datum_.rho();
  Weight p = lambda + rho;
  Element nav = identity();
  while (true) {
    int s = -1;
    for (int i = 0; i < datum_.rank(); ++i)
      if (p[i] > 0) {
        s = i + 1;
        break;
      }
    if (s < 0 && datum_.pairing(p, theta()) < -l) s = 0;
    if (s < 0) break;
    p = act_shifted(generator(s), p, l);
    nav = right_multiply(nav, s);
  }
  return {p - rho, nav};
}

}  // namespace oqkit
