#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace loccov {

// All arithmetic in this project is exact. Rationals are GMP-backed;
// the "p/q" string form (no decimals) is the only external format.
using Rat = mpq_class;

inline Rat rat_of(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat parse_rat(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  if (s.find('.') != std::string::npos)
    throw std::invalid_argument("rational literals must be exact \"p/q\" strings: " + s);
  Rat r;
  if (r.set_str(s, 10) != 0)
    throw std::invalid_argument("bad rational literal: " + s);
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  r.canonicalize();
  return r;
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

}  // namespace loccov
