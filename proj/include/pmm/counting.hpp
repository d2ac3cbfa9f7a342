#pragma once

#include <gmpxx.h>

#include "pmm/errors.hpp"

namespace pmm {

/// n! as an exact integer.
mpz_class factorial(int n);

/// Binomial coefficient C(n, k), zero when k is outside 0..n.
mpz_class binomial(int n, int k);

/// Number of permutations of 1..n that disagree with a fixed injective
/// colouring of m positions at every one of those positions. By symmetry
/// the count depends only on n and m; it is the alternating sum
/// sum_{k=0..m} (-1)^k C(m,k) (n-k)!. At m = n this is the derangement
/// number.
mpz_class count_zero_queries_formula(int n, int m);

}  // namespace pmm
