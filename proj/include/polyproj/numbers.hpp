#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace polyproj {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact binomial coefficient; zero outside 0 <= k <= n.
BigInt binomial(long n, long k);

/// 2^e as an exact rational, e may be negative.
Rational pow2(long e);

}  // namespace polyproj
