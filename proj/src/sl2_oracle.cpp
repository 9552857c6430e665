#include "oqkit/sl2_oracle.hpp"

#include <initializer_list>

namespace oqkit::sl2 {

namespace {

Int mod(Int a, Int l) { return ((a % l) + l) % l; }

// Factors listed by the case analysis; coinciding entries collapse to one.
Table as_set(std::initializer_list<Int> weights) {
  Table t;
  for (Int w : weights) t[w] = 1;
  return t;
}

}  // namespace

Sl2Case classify(const std::string& type, Int lambda, Int l) {
  if (type != "A1") throw Error("the sl2 oracle only handles type A1, got " + type);
  if (l < 3 || l % 2 == 0) throw Error("l must be odd and at least 3");
  Sl2Case c;
  c.l = l;
  c.lambda = lambda;
  c.lambda0 = mod(lambda, l);
  c.lambda1 = (lambda - c.lambda0) / l;
  const bool singular = c.lambda0 == l - 1;
  if (singular)
    c.classification = lambda < 0 ? Sl2Class::singular_neg : Sl2Class::singular_pos;
  else
    c.classification = lambda < 0 ? Sl2Class::regular_neg : Sl2Class::regular_pos;
  return c;
}

Table verma_factors(const std::string& type, Int lambda, Int l) {
  const auto c = classify(type, lambda, l);
  const Int a = c.lambda0, b = c.lambda1;
  switch (c.classification) {
    case Sl2Class::singular_neg: return as_set({lambda});
    case Sl2Class::singular_pos: return as_set({lambda, -lambda - 2});
    case Sl2Class::regular_neg: return as_set({lambda, -a - 2 + l * b});
    case Sl2Class::regular_pos: return as_set({lambda, -a - 2 + l * b, -lambda - 2, a + l * (-b - 2)});
  }
  return {};
}

Table tilting_factors(const std::string& type, Int lambda, Int l) {
  const auto c = classify(type, lambda, l);
  const Int a = c.lambda0, b = c.lambda1;
  switch (c.classification) {
    case Sl2Class::singular_neg: return as_set({lambda});
    case Sl2Class::singular_pos: return as_set({lambda, -lambda - 2});
    case Sl2Class::regular_neg: return as_set({lambda, -a - 2 + l * b});
    case Sl2Class::regular_pos: return as_set({lambda, -a - 2 + l * b, -lambda - 2, a - l * b});
  }
  return {};
}

// L_C(lambda1)^[l] (x) L_q(lambda0). L_C(b) is finite for b >= 0 and equals
// the Verma module for b < 0; L_q(a) has weights a, a - 2, ..., -a.
Table simple_character(const std::string& type, Int lambda, Int l, Int depth) {
  const auto c = classify(type, lambda, l);
  const Int a = c.lambda0, b = c.lambda1;
  const Int floor = lambda - 2 * depth;
  Table t;
  for (Int k = b; b >= 0 ? k >= -b : l * k + a >= floor; k -= 2)
    for (Int j = a; j >= -a; j -= 2)
      if (Int w = l * k + j; w >= floor) t[w] += 1;
  return t;
}

std::string to_string(Sl2Class c) {
  switch (c) {
    case Sl2Class::singular_neg: return "singular-neg";
    case Sl2Class::singular_pos: return "singular-pos";
    case Sl2Class::regular_neg: return "regular-neg";
    case Sl2Class::regular_pos: return "regular-pos";
  }
  return "?";
}

}  // namespace oqkit::sl2
