#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pmm/permutation.hpp"
#include "pmm/rng.hpp"

namespace pmm {

/// An ordered multiset of queries over one board size. Duplicates are
/// kept: the sampling story assumes independent draws with replacement.
/// When `seed` is present, regenerating with (n, queries.size(), seed,
/// generator_id) reproduces `queries` exactly.
struct QuerySet {
    int n = 0;
    std::vector<Permutation> queries;
    std::optional<std::uint64_t> seed;
    std::string generator_id;  // empty for hand-written sets

    bool operator==(const QuerySet&) const = default;
};

/// Uniform over all n! permutations: decreasing-index exchange shuffle
/// driven by Pcg32::next_below, so the distribution is exactly uniform.
Permutation random_permutation(int n, Pcg32& rng);

/// `count` queries drawn independently with replacement (nullopt sizes
/// the set as required_query_count(n)). Requires n >= 2.
QuerySet generate_query_set(int n, std::optional<std::int64_t> count, std::uint64_t seed);

/// Line-oriented ASCII format, newline-terminated:
///   PMM v1 n=<n> count=<q>[ seed=<s> gen=<id>]
/// followed by q lines of n space-separated colours. Reading back what
/// was written reproduces the QuerySet exactly, metadata included.
void write_query_set(const QuerySet& q, std::ostream& out);
QuerySet read_query_set(std::istream& in);

}  // namespace pmm
