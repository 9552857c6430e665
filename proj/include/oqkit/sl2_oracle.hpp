#pragma once

#include <map>
#include <string>

#include "oqkit/weight.hpp"

/// Closed-form answers for sl2, written out case by case. Deliberately shares
/// nothing with the general pipeline beyond the integer and exception types.
namespace oqkit::sl2 {

enum class Sl2Class { singular_neg, singular_pos, regular_neg, regular_pos };

struct Sl2Case {
  Int l = 0;
  Int lambda = 0;
  Sl2Class classification = Sl2Class::regular_pos;
  Int lambda0 = 0;  // 0 <= lambda0 < l - 1 in the regular cases
  Int lambda1 = 0;
};

using Table = std::map<Int, Int>;

/// Throws Error unless `type` is "A1" and l is odd and >= 3.
Sl2Case classify(const std::string& type, Int lambda, Int l);

/// [Delta_q(lambda) : L_q(mu)] for all mu.
Table verma_factors(const std::string& type, Int lambda, Int l);
/// (T_q(lambda) : Delta_q(mu)) for all mu.
Table tilting_factors(const std::string& type, Int lambda, Int l);
/// ch L_q(lambda) on the weights lambda, lambda - 2, ..., lambda - 2 depth.
Table simple_character(const std::string& type, Int lambda, Int l, Int depth);

std::string to_string(Sl2Class c);

}  // namespace oqkit::sl2
