#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace pmm::cli {

/// One benchmark cell: queries sized ceil(c * n * ln n), `trials` random
/// codewords round-tripped through the decoder.
struct BenchRow {
    std::int64_t n = 0;
    std::string c_token;  // echoed verbatim in the CSV
    mpq_class c;
    std::int64_t query_count = 0;
    std::int64_t trials = 0;
    std::int64_t successes = 0;
    double wall_ms = 0.0;

    mpq_class success_rate() const;
};

/// Runs every (n, c) cell; rows come back in input order regardless of
/// scheduling. Each cell reseeds from (seed, n, c), so single cells can
/// be reproduced without the full sweep.
std::vector<BenchRow> run_bench(const std::vector<std::int64_t>& board_sizes,
                                const std::vector<std::string>& c_tokens, std::int64_t trials,
                                std::uint64_t seed, unsigned threads = 0);

/// Header `n,c,query_count,trials,success_rate,wall_ms` plus one row per
/// cell. wall_ms is the only non-reproducible column.
std::string bench_csv(const std::vector<BenchRow>& rows);

/// Exact rational from an integer ("28"), fraction ("1/2") or decimal
/// ("0.5") token.
mpq_class parse_rational(const std::string& token);

/// Entry point behind the `pmm` binary. Exit codes: 0 success/PASS,
/// 1 usage or input errors, 2 decoder stuck, 3 certificate FAIL,
/// 4 cutoff exceeded. Every nonzero exit writes one `pmm: <reason>` line
/// to the error stream.
int run(const std::vector<std::string>& args);

}  // namespace pmm::cli
