#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace rspr {

// All probability masses, transport costs and curvature values are kept as
// exact rationals. Denominators grow as lcm's of tree degrees (times powers
// of two from lazy walks), which overflows fixed-width integers already for
// n = 7, hence the arbitrary-precision backend.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline std::string rat_str(const Rat& r) {
  return rat_num(r).str() + "/" + rat_den(r).str();
}

inline Rat make_rat(long long num, long long den) { return Rat(Int(num), Int(den)); }

inline double rat_double(const Rat& r) { return r.convert_to<double>(); }

}  // namespace rspr
