#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "pmm/permutation.hpp"

namespace pmm {

/// A (positions, valid colouring, rival colouring) instance: the rival
/// assigns the same positions and differs from the valid colouring at
/// every one of them. These are exactly the instances a good query set
/// must discriminate.
class TripleInstance {
public:
    /// Validates: same board size (SizeMismatch), same position set
    /// (DomainMismatch), `valid` injective (NotInjective), pointwise
    /// disagreement (OutOfRange).
    TripleInstance(PartialColouring valid, PartialColouring rival);

    /// Positions 1..m, valid colouring = identity, rival = the valid
    /// colours shifted cyclically (for m = 1: the next colour mod n).
    static TripleInstance canonical(int n, int m);

    int board_size() const noexcept { return valid_.size(); }
    int assigned_count() const noexcept { return valid_.assigned_count(); }
    std::vector<int> positions() const { return valid_.positions(); }

    const PartialColouring& valid_colouring() const noexcept { return valid_; }
    const PartialColouring& rival_colouring() const noexcept { return rival_; }

    bool operator==(const TripleInstance&) const = default;

private:
    PartialColouring valid_;
    PartialColouring rival_;
};

/// Exact sizes, obtained by full enumeration, of the per-position
/// discriminator sets of a triple: for each assigned position i, the
/// permutations that avoid the valid colouring everywhere but agree with
/// the rival at i. Their union is the set of discriminating queries.
struct SetSizeReport {
    int n = 0;
    int m = 0;
    std::vector<int> positions;                              // ascending
    std::vector<mpz_class> per_position;                     // aligned with positions
    std::vector<std::tuple<int, int, mpz_class>> pairwise;   // (i, j, size), i < j
    mpz_class union_size;
    mpz_class bonferroni_lower;  // sum of singles minus sum of pairs

    /// Flat key=value serialization consumed by the CLI.
    std::string to_key_value() const;
};

/// Enumerates all n! permutations and fills every field of the report.
SetSizeReport enumerate_set_sizes(const TripleInstance& t, int cutoff = kExhaustiveCutoff);

/// The two-sided bound on the zero-query count: n! <= 3 * A and A <= n!
/// where A = count_zero_queries_formula(n, m). Division-free, exact.
bool check_claim_a(int n, int m);

/// Finite-n forms of the set-size bounds, against enumerated sizes:
///   (i)  n * |S_i| >= A - n * (n-2)!              for every position i;
///   (ii) (n-4)(n-5) * |S_i ∩ S_j| <= A            for pairs with distinct
///        rival colours, and |S_i ∩ S_j| = 0 otherwise.
/// Part (ii) is only meaningful for n >= 6 and is skipped below that;
/// throws OutOfRange for n < 2.
bool check_claim_sizes_finite(const TripleInstance& t, int cutoff = kExhaustiveCutoff);
bool check_claim_sizes_finite(const TripleInstance& t, const SetSizeReport& report);

/// Probability that a uniform random permutation discriminates the triple:
/// |union of the S_i| / n!, exact.
mpq_class discriminating_fraction(const TripleInstance& t, int cutoff = kExhaustiveCutoff);

/// ceil(28 * n * ln n), the query budget that makes a random set good with
/// positive probability. The ceiling is computed with interval-checked
/// precision, so it is exact. Requires n >= 2.
std::int64_t required_query_count(std::int64_t n);

/// ceil(c * n * ln n) for a positive rational c; the generalization used
/// by the benchmark sweep.
std::int64_t scaled_query_count(const mpq_class& c, std::int64_t n);

/// The union-bound total sum_{k=1..n} n^{-k} as an exact rational; always
/// below 1 for n >= 2. Summed term by term, so tests can compare it
/// against the independent closed form (1 - n^{-n}) / (n - 1).
mpq_class failure_probability_bound(std::int64_t n);

/// Per-triple tail bound for |I| = k.
struct PerTripleBound {
    std::int64_t base;       // n
    std::int64_t exponent;   // -4k
    mpq_class value;         // n^(-4k), exact
    /// Outcome of the directed-rounding check that
    /// (1 - k/(7n))^required_query_count(n) <= n^(-4k). An upper bound of
    /// the left side is computed with upward rounding, so true is
    /// rigorous, never a rounding accident.
    bool tail_bound_verified;
};

PerTripleBound per_triple_failure_bound(std::int64_t n, std::int64_t k);

}  // namespace pmm
