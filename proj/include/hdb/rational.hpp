#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace hdb {

// Exact rational scalar. mpq_class keeps numerator/denominator as
// arbitrary-precision integers; after canonicalize() the fraction is reduced
// with a positive denominator, which is the canonical form used everywhere
// (in-memory comparisons and serialized text).
using Rat = mpq_class;

// Accepts "n", "-n", "p/q", "-p/q" with q > 0 after reduction. Anything else
// (including a zero denominator) is rejected.
inline Rat parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  std::size_t pos = 0;
  if (s[pos] == '-' || s[pos] == '+') ++pos;
  std::size_t digits = 0;
  while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') { ++pos; ++digits; }
  if (digits == 0) throw std::invalid_argument("bad rational literal '" + s + "'");
  if (pos < s.size()) {
    if (s[pos] != '/') throw std::invalid_argument("bad rational literal '" + s + "'");
    ++pos;
    std::size_t den_digits = 0;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') { ++pos; ++den_digits; }
    if (den_digits == 0 || pos != s.size())
      throw std::invalid_argument("bad rational literal '" + s + "'");
  }
  Rat r(s);
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

// "p/q" when q != 1, plain "n" otherwise.
inline std::string format_rational(const Rat& r) {
  Rat c = r;
  c.canonicalize();
  return c.get_str();
}

}  // namespace hdb
