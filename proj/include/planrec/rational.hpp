#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>

namespace planrec {

// Heuristic scores are ratios of small integer counts, so we keep them exact
// and only convert to double at the probability-combination boundary.
using Rational = boost::rational<std::int64_t>;

inline double to_double(const Rational &r) {
  return boost::rational_cast<double>(r);
}

inline std::string to_string(const Rational &r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace planrec
