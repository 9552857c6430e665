#include "oqkit/char_ring.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace oqkit {

namespace {

// Row-major index into a box [0, extent_0] x ... x [0, extent_{n-1}].
std::size_t box_index(const Weight& c, const Weight& extent) {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < c.rank(); ++i) idx = idx * static_cast<std::size_t>(extent[i] + 1) + c[i];
  return idx;
}

// Advances c through the box in row-major order; false after the last point.
bool next_in_box(Weight& c, const Weight& extent) {
  for (std::size_t i = c.rank(); i-- > 0;) {
    if (c[i] < extent[i]) {
      ++c[i];
      return true;
    }
    c[i] = 0;
  }
  return false;
}

bool nonnegative(const Weight& c) {
  for (auto x : c.coords())
    if (x < 0) return false;
  return true;
}

}  // namespace

// ---------------------------------------------------------------- windows

bool CharacterRing::admissible(const Window& w, const Weight& x) const {
  auto d = depth_of(w.tops, x);
  return d && *d <= w.depth;
}

std::optional<Int> CharacterRing::depth_of(const std::vector<Weight>& tops, const Weight& x) const {
  std::optional<Int> best;
  for (const auto& t : tops) {
    auto c = datum_.simple_coords(t - x);
    if (!c || !nonnegative(*c)) continue;
    Int m = 0;
    for (auto v : c->coords()) m = std::max(m, v);
    if (!best || m < *best) best = m;
  }
  return best;
}

bool CharacterRing::below_some(const std::vector<Weight>& bounds, const Weight& x) const {
  for (const auto& b : bounds)
    if (datum_.dominance_leq(x, b)) return true;
  return false;
}

std::vector<Weight> CharacterRing::points(const Window& w) const {
  std::set<Weight> out;
  const int n = datum_.rank();
  if (w.depth < 0) return {};
  Weight extent = Weight::filled(n, w.depth);
  for (const auto& t : w.tops) {
    Weight c(n);
    do {
      Weight x = t;
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) x[k] -= c[i] * datum_.cartan(k, i);
      out.insert(x);
    } while (next_in_box(c, extent));
  }
  return {out.begin(), out.end()};
}

Int CharacterRing::fit_depth(const std::vector<Weight>& tops, Int max_depth,
                             const std::function<bool(const Weight&)>& ok) const {
  Int best = max_depth;
  for (const auto& x : points(Window{tops, max_depth})) {
    Int d = *depth_of(tops, x);
    if (d > best || ok(x)) continue;
    best = d - 1;
  }
  if (best < 0) throw Error("internal: no exact window survives this operation");
  return best;
}

std::vector<Weight> CharacterRing::maximal_elements(const std::vector<Weight>& xs) const {
  std::vector<std::pair<Int, Weight>> sorted;
  for (const auto& x : xs) sorted.emplace_back(-datum_.scaled_height(x), x);
  std::sort(sorted.begin(), sorted.end());
  std::vector<Weight> out;
  for (const auto& [h, x] : sorted)
    if (!below_some(out, x)) out.push_back(x);
  return out;
}

// ---------------------------------------------------------------- queries

bool CharacterRing::known(const TruncatedCharacter& ch, const Weight& x) const {
  if (ch.finite()) return true;
  return admissible(*ch.window, x) || !below_some(ch.bounds, x);
}

Int CharacterRing::coefficient(const TruncatedCharacter& ch, const Weight& x) const {
  if (!known(ch, x)) throw Error("coefficient at " + x.to_string() + " lies outside the exact window");
  auto it = ch.values.find(x);
  return it == ch.values.end() ? 0 : it->second;
}

bool CharacterRing::equal_on(const TruncatedCharacter& a, const TruncatedCharacter& b, const Window& w) const {
  for (const auto& x : points(w)) {
    if (!known(a, x) || !known(b, x)) return false;
    if (coefficient(a, x) != coefficient(b, x)) return false;
  }
  return true;
}

TruncatedCharacter CharacterRing::restrict(const TruncatedCharacter& ch, const Window& w) const {
  TruncatedCharacter out;
  out.bounds = ch.bounds;
  out.window = w;
  out.is_virtual = ch.is_virtual;
  for (const auto& x : points(w)) {
    Int c = coefficient(ch, x);
    if (c != 0) out.values.emplace(x, c);
  }
  return out;
}

Int CharacterRing::dimension(const TruncatedCharacter& ch) const {
  if (!ch.finite()) throw Error("dimension of an infinite character");
  Int s = 0;
  for (const auto& [x, c] : ch.values) s += c;
  return s;
}

// ---------------------------------------------------------------- constructors

TruncatedCharacter CharacterRing::monomial(const Weight& lambda, Int c) const {
  return finite({{lambda, c}}, c < 0);
}

TruncatedCharacter CharacterRing::finite(const Multiplicities& values, bool is_virtual) const {
  TruncatedCharacter out;
  std::vector<Weight> support;
  for (const auto& [x, c] : values)
    if (c != 0) {
      out.values.emplace(x, c);
      support.push_back(x);
    }
  out.bounds = maximal_elements(support);
  out.is_virtual = is_virtual;
  return out;
}

std::vector<Int> CharacterRing::kostant_box(const Weight& extent) const {
  std::size_t size = 1;
  for (auto e : extent.coords()) size *= static_cast<std::size_t>(e + 1);
  std::vector<Int> table(size, 0);
  table[0] = 1;
  const int n = datum_.rank();
  for (const auto& root : datum_.positive_roots()) {
    Weight c(n);
    do {
      Weight rest = c - root.simple;
      if (nonnegative(rest)) table[box_index(c, extent)] += table[box_index(rest, extent)];
    } while (next_in_box(c, extent));
  }
  return table;
}

Int CharacterRing::kostant(const Weight& gamma) const {
  if (!nonnegative(gamma)) return 0;
  return kostant_box(gamma).back();
}

TruncatedCharacter CharacterRing::verma(const Weight& lambda, const Window& w) const {
  TruncatedCharacter out;
  out.bounds = {lambda};
  out.window = w;
  std::vector<std::pair<Weight, Weight>> below;  // (x, simple coords of lambda - x)
  Weight extent(datum_.rank());
  for (const auto& x : points(w)) {
    auto c = datum_.simple_coords(lambda - x);
    if (!c || !nonnegative(*c)) continue;
    for (int i = 0; i < datum_.rank(); ++i) extent[i] = std::max(extent[i], (*c)[i]);
    below.emplace_back(x, *c);
  }
  if (below.empty()) return out;
  auto table = kostant_box(extent);
  for (const auto& [x, c] : below) {
    Int k = table[box_index(c, extent)];
    if (k != 0) out.values.emplace(x, k);
  }
  return out;
}

TruncatedCharacter CharacterRing::baby_verma(const Weight& lambda, Int l) const {
  validate_l(datum_, l);
  Multiplicities cur{{lambda, 1}};
  for (const auto& root : datum_.positive_roots()) {
    Multiplicities next;
    for (const auto& [x, c] : cur)
      for (Int k = 0; k < l; ++k) next[x - k * root.fundamental] += c;
    cur = std::move(next);
  }
  TruncatedCharacter out;
  out.values = std::move(cur);
  out.bounds = {lambda};
  return out;
}

TruncatedCharacter CharacterRing::weyl(const Weight& lambda) const {
  const int n = datum_.rank();
  const Weight rho = datum_.rho();
  auto reflect = [&](Weight x, int i) {
    Int v = x[i];
    for (int k = 0; k < n; ++k) x[k] -= v * datum_.cartan(k, i);
    return x;
  };
  // Move lambda + rho into the dominant chamber, tracking the sign.
  Weight x = lambda + rho;
  Int sign = 1;
  for (bool moved = true; moved;) {
    moved = false;
    for (int i = 0; i < n; ++i)
      if (x[i] < 0) {
        x = reflect(x, i);
        sign = -sign;
        moved = true;
      }
  }
  for (auto v : x.coords())
    if (v == 0) return finite({});

  // Orbit of the regular dominant x with signs (-1)^{l(w)}; each simple
  // reflection of a regular vector changes the length by one.
  std::map<Weight, Int> orbit{{x, 1}};
  std::deque<Weight> todo{x};
  Weight lowest = x;
  while (!todo.empty()) {
    Weight y = todo.front();
    todo.pop_front();
    for (int i = 0; i < n; ++i) {
      Weight z = reflect(y, i);
      if (orbit.emplace(z, -orbit.at(y)).second) {
        todo.push_back(z);
        if (datum_.scaled_height(z) < datum_.scaled_height(lowest)) lowest = z;
      }
    }
  }
  // m(nu) = sum_w (-1)^{l(w)} K(w x - nu - rho) for nu = mu - c, mu = x - rho.
  Weight extent = *datum_.simple_coords(x - lowest - 2 * rho);
  auto table = kostant_box(extent);
  std::vector<std::pair<Weight, Int>> shifts;
  for (const auto& [y, s] : orbit) shifts.emplace_back(*datum_.simple_coords(x - y), s);
  const Weight mu = x - rho;
  Multiplicities values;
  Weight c(n);
  do {
    Int m = 0;
    for (const auto& [shift, s] : shifts) {
      Weight g = c - shift;
      if (nonnegative(g)) m += s * table[box_index(g, extent)];
    }
    if (m != 0) values[mu - datum_.from_simple(c)] = sign * m;
  } while (next_in_box(c, extent));
  return finite(values, sign < 0);
}

// ---------------------------------------------------------------- ring operations

TruncatedCharacter CharacterRing::frobenius_twist(const TruncatedCharacter& ch, Int l) const {
  TruncatedCharacter out;
  out.is_virtual = ch.is_virtual;
  for (const auto& b : ch.bounds) out.bounds.push_back(l * b);
  for (const auto& [x, c] : ch.values) out.values.emplace(l * x, c);
  if (ch.finite()) return out;
  std::vector<Weight> tops;
  for (const auto& t : ch.window->tops) tops.push_back(l * t);
  auto ok = [&](const Weight& x) {
    Weight y(x.rank());
    for (std::size_t i = 0; i < x.rank(); ++i) {
      if (floor_mod(x[i], l) != 0) return true;  // not in lX: coefficient 0
      y[i] = x[i] / l;
    }
    return known(ch, y);
  };
  out.window = Window{tops, fit_depth(tops, l * ch.window->depth, ok)};
  std::erase_if(out.values, [&](const auto& e) { return !admissible(*out.window, e.first); });
  return out;
}

TruncatedCharacter CharacterRing::multiply(const TruncatedCharacter& a, const TruncatedCharacter& b) const {
  TruncatedCharacter out;
  out.is_virtual = a.is_virtual || b.is_virtual;
  for (const auto& x : a.bounds)
    for (const auto& y : b.bounds) out.bounds.push_back(x + y);
  out.bounds = maximal_elements(out.bounds);
  Multiplicities prod;
  for (const auto& [x, c] : a.values)
    for (const auto& [y, d] : b.values) prod[x + y] += c * d;
  if (a.finite() && b.finite()) {
    for (const auto& [x, c] : prod)
      if (c != 0) out.values.emplace(x, c);
    return out;
  }

  std::vector<Weight> tops;
  Int depth = 0;
  std::function<bool(const Weight&)> ok;
  if (a.finite() || b.finite()) {
    const TruncatedCharacter& fin = a.finite() ? a : b;
    const TruncatedCharacter& win = a.finite() ? b : a;
    for (const auto& t : win.window->tops)
      for (const auto& m : fin.bounds) tops.push_back(t + m);
    depth = win.window->depth;
    ok = [&](const Weight& x) {
      for (const auto& [v, c] : fin.values)
        if (!known(win, x - v)) return false;
      return true;
    };
  } else {
    for (const auto& s : a.window->tops)
      for (const auto& t : b.window->tops) tops.push_back(s + t);
    depth = std::min(a.window->depth, b.window->depth);
    // Every pair (u, x - u) that can contribute must be known in both factors.
    ok = [&](const Weight& x) {
      for (const auto& ba : a.bounds)
        for (const auto& bb : b.bounds) {
          auto span = datum_.simple_coords(ba + bb - x);
          if (!span || !nonnegative(*span)) continue;
          Weight c(datum_.rank());
          do {
            Weight u = ba - datum_.from_simple(c);
            if (!known(a, u) || !known(b, x - u)) return false;
          } while (next_in_box(c, *span));
        }
      return true;
    };
  }
  out.window = Window{tops, fit_depth(tops, depth, ok)};
  for (const auto& [x, c] : prod)
    if (c != 0 && admissible(*out.window, x)) out.values.emplace(x, c);
  return out;
}

TruncatedCharacter CharacterRing::add(const TruncatedCharacter& a, const TruncatedCharacter& b) const {
  TruncatedCharacter out;
  out.is_virtual = a.is_virtual || b.is_virtual;
  Multiplicities sum = a.values;
  for (const auto& [x, c] : b.values) sum[x] += c;
  std::vector<Weight> bounds = a.bounds;
  bounds.insert(bounds.end(), b.bounds.begin(), b.bounds.end());
  if (a.finite() && b.finite()) {
    std::erase_if(sum, [](const auto& e) { return e.second == 0; });
    out.values = std::move(sum);
    out.bounds = maximal_elements(bounds);
    return out;
  }
  out.bounds = bounds;
  std::vector<Weight> tops;
  Int depth = -1;
  for (const auto* ch : {&a, &b}) {
    if (ch->finite()) continue;
    for (const auto& t : ch->window->tops)
      if (std::find(tops.begin(), tops.end(), t) == tops.end()) tops.push_back(t);
    depth = depth < 0 ? ch->window->depth : std::min(depth, ch->window->depth);
  }
  out.window = Window{tops, fit_depth(tops, depth, [&](const Weight& x) { return known(a, x) && known(b, x); })};
  for (const auto& [x, c] : sum)
    if (c != 0 && admissible(*out.window, x)) out.values.emplace(x, c);
  return out;
}

TruncatedCharacter CharacterRing::scale(const TruncatedCharacter& a, Int k) const {
  TruncatedCharacter out = a;
  out.is_virtual = a.is_virtual || k < 0;
  out.values.clear();
  if (k != 0)
    for (const auto& [x, c] : a.values) out.values.emplace(x, k * c);
  return out;
}

TruncatedCharacter CharacterRing::shift(const TruncatedCharacter& a, const Weight& mu) const {
  TruncatedCharacter out;
  out.is_virtual = a.is_virtual;
  for (const auto& b : a.bounds) out.bounds.push_back(b + mu);
  for (const auto& [x, c] : a.values) out.values.emplace(x + mu, c);
  if (a.window) {
    Window w{{}, a.window->depth};
    for (const auto& t : a.window->tops) w.tops.push_back(t + mu);
    out.window = w;
  }
  return out;
}

// ---------------------------------------------------------------- output

void CharacterRing::order_below(const Weight& top, std::vector<Weight>& weights) const {
  const Int h = datum_.scaled_height(top);
  std::sort(weights.begin(), weights.end(), [&](const Weight& x, const Weight& y) {
    Int hx = h - datum_.scaled_height(x), hy = h - datum_.scaled_height(y);
    if (hx != hy) return hx < hy;
    return x > y;
  });
}

std::vector<Weight> CharacterRing::ordered_support(const TruncatedCharacter& ch) const {
  std::vector<Weight> xs;
  for (const auto& [x, c] : ch.values) xs.push_back(x);
  if (xs.empty()) return xs;
  Weight top = ch.window && !ch.window->tops.empty() ? ch.window->tops.front()
                                                      : (ch.bounds.empty() ? xs.front() : ch.bounds.front());
  order_below(top, xs);
  return xs;
}

nlohmann::ordered_json CharacterRing::to_json(const TruncatedCharacter& ch) const {
  nlohmann::ordered_json j;
  Window w;
  if (ch.window) {
    w = *ch.window;
  } else {
    w.tops = ch.bounds;
    for (const auto& [x, c] : ch.values) w.depth = std::max(w.depth, depth_of(w.tops, x).value_or(0));
  }
  j["window"]["tops"] = nlohmann::ordered_json::array();
  for (const auto& t : w.tops) j["window"]["tops"].push_back(t.coords());
  j["window"]["depth"] = w.depth;
  j["values"] = nlohmann::ordered_json::array();
  for (const auto& x : ordered_support(ch)) {
    nlohmann::ordered_json e;
    e["wt"] = x.coords();
    e["c"] = ch.values.at(x);
    j["values"].push_back(e);
  }
  return j;
}

}  // namespace oqkit
