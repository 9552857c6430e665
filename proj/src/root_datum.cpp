#include "oqkit/root_datum.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace oqkit {

Int Root::coroot_height() const {
  Int h = 0;
  for (auto x : coroot.coords()) h += x;
  return h;
}

namespace {

using Matrix = std::vector<std::vector<Int>>;

Matrix cartan_for(char series, int n) {
  Matrix c(n, std::vector<Int>(n, 0));
  for (int i = 0; i < n; ++i) c[i][i] = 2;
  auto link = [&](int i, int j) {  // 1-based simple bond
    c[i - 1][j - 1] = -1;
    c[j - 1][i - 1] = -1;
  };
  switch (series) {
    case 'A':
      for (int i = 1; i < n; ++i) link(i, i + 1);
      break;
    case 'B':
      for (int i = 1; i < n; ++i) link(i, i + 1);
      c[n - 1][n - 2] = -2;  // alpha_n short
      break;
    case 'C':
      for (int i = 1; i < n; ++i) link(i, i + 1);
      c[n - 2][n - 1] = -2;  // alpha_n long
      break;
    case 'D':
      for (int i = 1; i + 1 < n; ++i) link(i, i + 1);
      link(n - 2, n);
      break;
    case 'E':
      link(1, 3);
      link(3, 4);
      link(2, 4);
      for (int i = 4; i < n; ++i) link(i, i + 1);
      break;
    case 'F':
      link(1, 2);
      link(2, 3);
      c[2][1] = -2;  // alpha_2 long, alpha_3 short
      link(3, 4);
      break;
    case 'G':
      c[0][1] = -3;  // alpha_1 short
      c[1][0] = -1;
      break;
  }
  return c;
}

bool valid_type(char s, int n) {
  switch (s) {
    case 'A': return n >= 1;
    case 'B': return n >= 2;
    case 'C': return n >= 2;
    case 'D': return n >= 4;
    case 'E': return n >= 6 && n <= 8;
    case 'F': return n == 4;
    case 'G': return n == 2;
    default: return false;
  }
}

struct Rational {
  Int num = 0, den = 1;
  Rational() = default;
  Rational(Int n, Int d = 1) : num(n), den(d) { normalize(); }
  void normalize() {
    if (den < 0) num = -num, den = -den;
    Int g = std::gcd(num, den);
    if (g > 1) num /= g, den /= g;
  }
  friend Rational operator-(Rational a, Rational b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
  friend Rational operator*(Rational a, Rational b) { return {a.num * b.num, a.den * b.den}; }
  friend Rational operator/(Rational a, Rational b) { return {a.num * b.den, a.den * b.num}; }
};

}  // namespace

RootDatum::RootDatum(char series, int rank) : series_(series), rank_(rank) {
  if (!valid_type(series, rank))
    throw Error("invalid root system type " + std::string(1, series) + std::to_string(rank));
  cartan_ = cartan_for(series, rank);
  const int n = rank_;

  // Symmetrizers: propagate d_j = d_i c_ij / c_ji along the (connected) Dynkin diagram.
  std::vector<Rational> d(n);
  std::vector<bool> seen(n, false);
  d[0] = Rational(1);
  seen[0] = true;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int i = queue.front();
    queue.pop_front();
    for (int j = 0; j < n; ++j) {
      if (seen[j] || cartan_[i][j] == 0) continue;
      d[j] = d[i] * Rational(cartan_[i][j], cartan_[j][i]);
      seen[j] = true;
      queue.push_back(j);
    }
  }
  Int lcm_den = 1;
  for (auto& x : d) lcm_den = std::lcm(lcm_den, x.den);
  sym_.resize(n);
  Int g = 0;
  for (int i = 0; i < n; ++i) {
    sym_[i] = d[i].num * (lcm_den / d[i].den);
    g = std::gcd(g, sym_[i]);
  }
  for (auto& x : sym_) x /= g;

  // Exact inverse of the Cartan matrix by Gauss-Jordan over Q.
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = Rational(cartan_[i][j]);
    a[i][n + i] = Rational(1);
  }
  for (int col = 0; col < n; ++col) {
    int piv = col;
    while (a[piv][col].num == 0) ++piv;
    std::swap(a[piv], a[col]);
    Rational p = a[col][col];
    for (auto& x : a[col]) x = x / p;
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r][col].num == 0) continue;
      Rational f = a[r][col];
      for (int k = 0; k < 2 * n; ++k) a[r][k] = a[r][k] - f * a[col][k];
    }
  }
  inv_den_ = 1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv_den_ = std::lcm(inv_den_, a[i][n + j].den);
  inv_num_.assign(n, std::vector<Int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv_num_[i][j] = a[i][n + j].num * (inv_den_ / a[i][n + j].den);

  // Root system: closure of the simple roots under simple reflections.
  auto pair_simple = [&](const Weight& c, int i) {  // <beta, alpha_i^vee>
    Int s = 0;
    for (int j = 0; j < n; ++j) s += cartan_[i][j] * c[j];
    return s;
  };
  std::set<Weight> all;
  std::deque<Weight> todo;
  for (int i = 0; i < n; ++i) {
    Weight e(n);
    e[i] = 1;
    all.insert(e);
    todo.push_back(e);
  }
  while (!todo.empty()) {
    Weight b = todo.front();
    todo.pop_front();
    for (int i = 0; i < n; ++i) {
      Weight r = b;
      r[i] -= pair_simple(b, i);
      if (all.insert(r).second) todo.push_back(r);
    }
  }
  std::vector<Weight> pos;
  for (const auto& r : all) {
    bool positive = std::all_of(r.coords().begin(), r.coords().end(), [](Int x) { return x >= 0; });
    if (positive) pos.push_back(r);
  }
  auto height = [](const Weight& c) {
    Int h = 0;
    for (auto x : c.coords()) h += x;
    return h;
  };
  std::stable_sort(pos.begin(), pos.end(), [&](const Weight& x, const Weight& y) {
    if (height(x) != height(y)) return height(x) < height(y);
    return x > y;
  });
  simple_index_.assign(n, 0);
  for (const auto& c : pos) {
    // (beta, beta) / 2 = sum_ij c_i c_j d_i C_ij / 2
    Int norm2 = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) norm2 += c[i] * c[j] * sym_[i] * cartan_[i][j];
    Int dbeta = norm2 / 2;
    Root root;
    root.simple = c;
    root.coroot = Weight(n);
    for (int j = 0; j < n; ++j) {
      Int num = c[j] * sym_[j];
      if (num % dbeta != 0) throw Error("internal: non-integral coroot");
      root.coroot[j] = num / dbeta;
    }
    root.fundamental = from_simple(c);
    if (height(c) == 1)
      for (int i = 0; i < n; ++i)
        if (c[i] == 1) simple_index_[i] = roots_.size();
    roots_.push_back(std::move(root));
  }
  theta_ = 0;
  highest_root_ = 0;
  for (std::size_t k = 0; k < roots_.size(); ++k) {
    if (roots_[k].coroot_height() > roots_[theta_].coroot_height()) theta_ = k;
    if (height(roots_[k].simple) > height(roots_[highest_root_].simple)) highest_root_ = k;
  }
}

RootDatum RootDatum::from_label(const std::string& label) {
  if (label.size() < 2) throw Error("invalid root system label '" + label + "'");
  char s = label[0];
  int n = 0;
  try {
    std::size_t used = 0;
    n = std::stoi(label.substr(1), &used);
    if (used != label.size() - 1) throw Error("");
  } catch (const std::exception&) {
    throw Error("invalid root system label '" + label + "'");
  }
  return RootDatum(s, n);
}

Int RootDatum::pairing(const Weight& lambda, const Root& alpha) const {
  Int s = 0;
  for (int j = 0; j < rank_; ++j) s += alpha.coroot[j] * lambda[j];
  return s;
}

std::optional<Weight> RootDatum::simple_coords(const Weight& lambda) const {
  Weight c(rank_);
  for (int i = 0; i < rank_; ++i) {
    Int s = 0;
    for (int j = 0; j < rank_; ++j) s += inv_num_[i][j] * lambda[j];
    if (s % inv_den_ != 0) return std::nullopt;
    c[i] = s / inv_den_;
  }
  return c;
}

Weight RootDatum::from_simple(const Weight& c) const {
  Weight w(rank_);
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) w[i] += cartan_[i][j] * c[j];
  return w;
}

bool RootDatum::dominance_leq(const Weight& mu, const Weight& lambda) const {
  auto c = simple_coords(lambda - mu);
  if (!c) return false;
  for (auto x : c->coords())
    if (x < 0) return false;
  return true;
}

Int RootDatum::scaled_height(const Weight& lambda) const {
  Int h = 0;
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) h += inv_num_[i][j] * lambda[j];
  return h;
}

Int RootDatum::height_difference(const Weight& lambda, const Weight& mu) const {
  auto c = simple_coords(lambda - mu);
  if (!c) throw Error("weights " + lambda.to_string() + " and " + mu.to_string() + " are not linked by the root lattice");
  Int h = 0;
  for (auto x : c->coords()) h += x;
  return h;
}

bool RootDatum::is_dominant(const Weight& lambda) const {
  for (int i = 0; i < rank_; ++i)
    if (lambda[i] < 0) return false;
  return true;
}

bool RootDatum::is_antidominant(const Weight& lambda) const {
  for (int i = 0; i < rank_; ++i)
    if (lambda[i] + 1 > 0) return false;
  return true;
}

bool RootDatum::is_regular(const Weight& lambda) const {
  Weight x = lambda + rho();
  for (const auto& r : roots_)
    if (pairing(x, r) == 0) return false;
  return true;
}

bool RootDatum::is_l_regular(const Weight& lambda, Int l) const {
  Weight x = lambda + rho();
  for (const auto& r : roots_)
    if (floor_mod(pairing(x, r), l) == 0) return false;
  return true;
}

void validate_l(const RootDatum& datum, Int l) {
  if (l < 3 || l % 2 == 0) throw Error("l must be odd and >= 3, got " + std::to_string(l));
  if (datum.series() == 'G' && l % 3 == 0) throw Error("l must be prime to 3 in type G2");
}

LAdicPair l_adic_decompose(const Weight& lambda, Int l) {
  if (l < 3 || l % 2 == 0) throw Error("l must be odd and >= 3, got " + std::to_string(l));
  LAdicPair p{Weight(lambda.rank()), Weight(lambda.rank()), l};
  for (std::size_t i = 0; i < lambda.rank(); ++i) {
    p.lambda1[i] = floor_div(lambda[i], l);
    p.lambda0[i] = lambda[i] - l * p.lambda1[i];
  }
  return p;
}

bool in_restricted_box(const Weight& lambda, Int l) {
  for (auto x : lambda.coords())
    if (x < 0 || x >= l) return false;
  return true;
}

WeightPredicates weight_predicates(const RootDatum& datum, const Weight& lambda, Int l) {
  validate_l(datum, l);
  WeightPredicates p;
  p.dominant = datum.is_dominant(lambda);
  p.antidominant = datum.is_antidominant(lambda);
  p.regular = datum.is_regular(lambda);
  p.l_regular = datum.is_l_regular(lambda, l);
  const Weight st = (l - 1) * datum.rho();
  p.special = l_adic_decompose(lambda, l).lambda0 == st;
  p.steinberg = lambda == st;
  return p;
}

}  // namespace oqkit
