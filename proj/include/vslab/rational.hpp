#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace vslab {

using Int = mpz_class;
using Rat = mpq_class;

/// Canonicalized rational num/den (den must be nonzero).
Rat make_rat(Int num, Int den);

/// Row n of Pascal's triangle, C(n,0..n), built by the multiplicative
/// recurrence (one exact division per entry).
std::vector<Int> binomial_row(std::uint64_t n);

Int binomial(std::uint64_t n, std::uint64_t k);

/// Falling factorial (n)_k = n(n-1)...(n-k+1); (n)_0 = 1.
Int falling_factorial(std::uint64_t n, std::uint64_t k);

Int int_pow(std::uint64_t base, std::uint64_t e);
Rat rat_pow(const Rat& base, std::uint64_t e);

double rat_to_double(const Rat& x);

/// Natural log of a positive rational; works far outside double range.
double rat_log(const Rat& x);

}  // namespace vslab
