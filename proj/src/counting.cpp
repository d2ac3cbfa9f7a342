#include "pmm/counting.hpp"

#include <string>

namespace pmm {

mpz_class factorial(int n) {
    if (n < 0) throw OutOfRange("factorial of negative " + std::to_string(n));
    mpz_class result;
    mpz_fac_ui(result.get_mpz_t(), static_cast<unsigned long>(n));
    return result;
}

mpz_class binomial(int n, int k) {
    if (n < 0) throw OutOfRange("binomial with negative n=" + std::to_string(n));
    if (k < 0 || k > n) return 0;
    mpz_class result;
    mpz_bin_uiui(result.get_mpz_t(), static_cast<unsigned long>(n),
                 static_cast<unsigned long>(k));
    return result;
}

mpz_class count_zero_queries_formula(int n, int m) {
    if (n < 1) throw OutOfRange("board size must be at least 1, got " + std::to_string(n));
    if (m < 0 || m > n)
        throw OutOfRange("assigned-position count " + std::to_string(m) + " outside 0.." +
                         std::to_string(n));
    mpz_class total = 0;
    for (int k = 0; k <= m; ++k) {
        mpz_class term = binomial(m, k) * factorial(n - k);
        if (k % 2 == 0)
            total += term;
        else
            total -= term;
    }
    return total;
}

}  // namespace pmm
