#include "pmm/bounds.hpp"

#include <mpfr.h>

#include <algorithm>
#include <sstream>

#include "pmm/counting.hpp"

namespace pmm {

TripleInstance::TripleInstance(PartialColouring valid, PartialColouring rival)
    : valid_(std::move(valid)), rival_(std::move(rival)) {
    if (valid_.size() != rival_.size())
        throw SizeMismatch("colourings have board sizes " + std::to_string(valid_.size()) +
                           " and " + std::to_string(rival_.size()));
    auto va = valid_.assignments();
    auto ra = rival_.assignments();
    if (va.size() != ra.size())
        throw DomainMismatch("colourings assign different numbers of positions");
    for (std::size_t i = 0; i < va.size(); ++i) {
        if (va[i].first != ra[i].first)
            throw DomainMismatch("colourings assign different position sets");
        if (va[i].second == ra[i].second)
            throw OutOfRange("colourings agree at position " + std::to_string(va[i].first) +
                             "; they must disagree everywhere");
    }
    if (!valid_.is_valid()) throw NotInjective("the valid colouring must be injective");
}

TripleInstance TripleInstance::canonical(int n, int m) {
    if (m < 1 || m > n)
        throw OutOfRange("canonical triple needs 1 <= m <= n, got m=" + std::to_string(m));
    if (n < 2) throw OutOfRange("triples need n >= 2 to disagree pointwise");
    std::vector<std::pair<int, int>> valid_assign;
    std::vector<std::pair<int, int>> rival_assign;
    for (int i = 1; i <= m; ++i) {
        valid_assign.emplace_back(i, i);
        rival_assign.emplace_back(i, m >= 2 ? (i % m) + 1 : 2);
    }
    return TripleInstance(PartialColouring(n, std::move(valid_assign)),
                          PartialColouring(n, std::move(rival_assign)));
}

SetSizeReport enumerate_set_sizes(const TripleInstance& t, int cutoff) {
    const int n = t.board_size();
    detail::check_enumeration_cutoff(n, cutoff);

    SetSizeReport report;
    report.n = n;
    report.m = t.assigned_count();
    report.positions = t.positions();

    const auto valid_assign = t.valid_colouring().assignments();
    const auto rival_assign = t.rival_colouring().assignments();
    const std::size_t m = valid_assign.size();

    std::vector<long> singles(m, 0);
    std::vector<long> pairs(m * m, 0);
    long union_count = 0;

    std::vector<std::size_t> members;
    members.reserve(m);
    for_each_permutation(
        n,
        [&](std::span<const int> sigma) {
            for (auto [position, colour] : valid_assign)
                if (sigma[static_cast<std::size_t>(position) - 1] == colour) return;
            members.clear();
            for (std::size_t a = 0; a < m; ++a) {
                auto [position, colour] = rival_assign[a];
                if (sigma[static_cast<std::size_t>(position) - 1] == colour) members.push_back(a);
            }
            if (members.empty()) return;
            ++union_count;
            for (std::size_t a : members) ++singles[a];
            for (std::size_t x = 0; x < members.size(); ++x)
                for (std::size_t y = x + 1; y < members.size(); ++y)
                    ++pairs[members[x] * m + members[y]];
        },
        cutoff);

    mpz_class singles_sum = 0;
    mpz_class pairs_sum = 0;
    for (std::size_t a = 0; a < m; ++a) {
        report.per_position.emplace_back(singles[a]);
        singles_sum += singles[a];
    }
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b) {
            report.pairwise.emplace_back(report.positions[a], report.positions[b],
                                         mpz_class(pairs[a * m + b]));
            pairs_sum += pairs[a * m + b];
        }
    report.union_size = union_count;
    report.bonferroni_lower = singles_sum - pairs_sum;
    return report;
}

std::string SetSizeReport::to_key_value() const {
    std::ostringstream out;
    out << "n=" << n << '\n' << "m=" << m << '\n';
    out << "positions=";
    for (std::size_t a = 0; a < positions.size(); ++a)
        out << (a ? " " : "") << positions[a];
    out << '\n';
    for (std::size_t a = 0; a < positions.size(); ++a)
        out << "single_size[" << positions[a] << "]=" << per_position[a] << '\n';
    for (const auto& [i, j, size] : pairwise)
        out << "pair_size[" << i << "," << j << "]=" << size << '\n';
    out << "union_size=" << union_size << '\n';
    out << "bonferroni_lower=" << bonferroni_lower << '\n';
    return out.str();
}

bool check_claim_a(int n, int m) {
    mpz_class a = count_zero_queries_formula(n, m);
    mpz_class n_factorial = factorial(n);
    return n_factorial <= 3 * a && a <= n_factorial;
}

bool check_claim_sizes_finite(const TripleInstance& t, int cutoff) {
    return check_claim_sizes_finite(t, enumerate_set_sizes(t, cutoff));
}

bool check_claim_sizes_finite(const TripleInstance& t, const SetSizeReport& report) {
    const int n = t.board_size();
    if (n < 2) throw OutOfRange("finite size bounds need n >= 2, got " + std::to_string(n));
    mpz_class a = count_zero_queries_formula(n, report.m);

    mpz_class single_floor = a - n * factorial(n - 2);
    for (const mpz_class& size : report.per_position)
        if (n * size < single_floor) return false;

    if (n < 6) return true;  // (n-4)(n-5) is nonpositive below 6
    const auto& rival = t.rival_colouring();
    for (const auto& [i, j, size] : report.pairwise) {
        if (rival.colour_at(i) == rival.colour_at(j)) {
            if (size != 0) return false;
        } else if ((n - 4) * (n - 5) * size > a) {
            return false;
        }
    }
    return true;
}

mpq_class discriminating_fraction(const TripleInstance& t, int cutoff) {
    SetSizeReport report = enumerate_set_sizes(t, cutoff);
    mpq_class fraction(report.union_size, factorial(t.board_size()));
    fraction.canonicalize();
    return fraction;
}

namespace {

/// ceil(c * n * ln n), exact: lower and upper evaluations under directed
/// rounding must agree on the ceiling. c * n * ln n is irrational for
/// rational c > 0 and integer n >= 2, so agreement is always reached.
std::int64_t ceil_scaled_n_log_n(const mpq_class& c, std::int64_t n) {
    if (n < 2) throw OutOfRange("query budget needs n >= 2, got " + std::to_string(n));
    if (c <= 0) throw OutOfRange("query budget needs a positive multiplier");
    for (mpfr_prec_t prec = 64; prec <= 1 << 16; prec *= 2) {
        mpfr_t lo, hi;
        mpfr_inits2(prec, lo, hi, static_cast<mpfr_ptr>(nullptr));
        mpfr_set_ui(lo, static_cast<unsigned long>(n), MPFR_RNDD);
        mpfr_log(lo, lo, MPFR_RNDD);
        mpfr_mul_ui(lo, lo, static_cast<unsigned long>(n), MPFR_RNDD);
        mpfr_mul_q(lo, lo, c.get_mpq_t(), MPFR_RNDD);
        mpfr_set_ui(hi, static_cast<unsigned long>(n), MPFR_RNDU);
        mpfr_log(hi, hi, MPFR_RNDU);
        mpfr_mul_ui(hi, hi, static_cast<unsigned long>(n), MPFR_RNDU);
        mpfr_mul_q(hi, hi, c.get_mpq_t(), MPFR_RNDU);
        mpfr_ceil(lo, lo);
        mpfr_ceil(hi, hi);
        auto ceil_lo = static_cast<std::int64_t>(mpfr_get_si(lo, MPFR_RNDN));
        auto ceil_hi = static_cast<std::int64_t>(mpfr_get_si(hi, MPFR_RNDN));
        mpfr_clears(lo, hi, static_cast<mpfr_ptr>(nullptr));
        if (ceil_lo == ceil_hi) return ceil_lo;
    }
    throw OutOfRange("query budget did not converge; multiplier too extreme");
}

}  // namespace

std::int64_t required_query_count(std::int64_t n) {
    return ceil_scaled_n_log_n(mpq_class(28), n);
}

std::int64_t scaled_query_count(const mpq_class& c, std::int64_t n) {
    return ceil_scaled_n_log_n(c, n);
}

mpq_class failure_probability_bound(std::int64_t n) {
    if (n < 2) throw OutOfRange("union bound needs n >= 2, got " + std::to_string(n));
    // sum_{k=1..n} n^{-k}, accumulated over the common denominator n^n:
    // numerator after step k is sum_{j=1..k} n^{k-j}.
    mpz_class numerator = 0;
    for (std::int64_t k = 1; k <= n; ++k) numerator = numerator * n + 1;
    mpz_class denominator;
    mpz_ui_pow_ui(denominator.get_mpz_t(), static_cast<unsigned long>(n),
                  static_cast<unsigned long>(n));
    mpq_class total(numerator, denominator);
    total.canonicalize();
    if (total >= 1) throw std::logic_error("union bound reached 1; impossible for n >= 2");
    return total;
}

namespace {

bool verify_tail_bound(std::int64_t n, std::int64_t k, std::int64_t exponent,
                       const mpq_class& rhs) {
    // Upper-bound (1 - k/(7n))^exponent with upward rounding throughout;
    // comparing that bound against the exact rational rhs is rigorous.
    bool verified = false;
    for (mpfr_prec_t prec = 128; prec <= 4096 && !verified; prec *= 2) {
        mpfr_t x;
        mpfr_init2(x, prec);
        mpfr_set_ui(x, static_cast<unsigned long>(k), MPFR_RNDD);
        mpfr_div_ui(x, x, static_cast<unsigned long>(7 * n), MPFR_RNDD);
        mpfr_ui_sub(x, 1, x, MPFR_RNDU);
        mpfr_pow_ui(x, x, static_cast<unsigned long>(exponent), MPFR_RNDU);
        verified = mpfr_cmp_q(x, rhs.get_mpq_t()) <= 0;
        mpfr_clear(x);
    }
    return verified;
}

}  // namespace

PerTripleBound per_triple_failure_bound(std::int64_t n, std::int64_t k) {
    if (n < 2) throw OutOfRange("per-triple bound needs n >= 2, got " + std::to_string(n));
    if (k < 1 || k > n)
        throw OutOfRange("per-triple bound needs 1 <= k <= n, got k=" + std::to_string(k));
    PerTripleBound bound;
    bound.base = n;
    bound.exponent = -4 * k;
    mpz_class denominator;
    mpz_ui_pow_ui(denominator.get_mpz_t(), static_cast<unsigned long>(n),
                  static_cast<unsigned long>(4 * k));
    bound.value = mpq_class(1, denominator);
    bound.value.canonicalize();
    bound.tail_bound_verified = verify_tail_bound(n, k, required_query_count(n), bound.value);
    return bound;
}

}  // namespace pmm
