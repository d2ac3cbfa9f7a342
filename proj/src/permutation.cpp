#include "pmm/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace pmm {

Permutation::Permutation(int n, std::vector<int> values) {
    if (n < 1)
        throw OutOfRange("board size must be at least 1, got " + std::to_string(n));
    if (static_cast<int>(values.size()) != n)
        throw NotABijection("expected " + std::to_string(n) + " colours, got " +
                            std::to_string(values.size()));
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int colour : values) {
        if (colour < 1 || colour > n)
            throw NotABijection("colour " + std::to_string(colour) + " outside 1.." +
                                std::to_string(n));
        if (seen[static_cast<std::size_t>(colour) - 1])
            throw NotABijection("colour " + std::to_string(colour) + " repeats");
        seen[static_cast<std::size_t>(colour) - 1] = 1;
    }
    values_ = std::move(values);
}

Permutation Permutation::identity(int n) {
    if (n < 1)
        throw OutOfRange("board size must be at least 1, got " + std::to_string(n));
    std::vector<int> values(static_cast<std::size_t>(n));
    std::iota(values.begin(), values.end(), 1);
    return unchecked(std::move(values));
}

Permutation Permutation::unchecked(std::vector<int> values) {
    Permutation p;
    p.values_ = std::move(values);
    return p;
}

int black_pegs(const Permutation& query, const Permutation& codeword) {
    if (query.size() != codeword.size())
        throw SizeMismatch("query has n=" + std::to_string(query.size()) + ", codeword has n=" +
                           std::to_string(codeword.size()));
    int pegs = 0;
    auto q = query.values();
    auto c = codeword.values();
    for (std::size_t i = 0; i < q.size(); ++i)
        if (q[i] == c[i]) ++pegs;
    return pegs;
}

PartialColouring::PartialColouring(int n, std::vector<std::pair<int, int>> assignments) : n_(n) {
    if (n < 1)
        throw OutOfRange("board size must be at least 1, got " + std::to_string(n));
    std::sort(assignments.begin(), assignments.end());
    int previous_position = 0;
    for (auto [position, colour] : assignments) {
        if (position < 1 || position > n)
            throw OutOfRange("position " + std::to_string(position) + " outside 1.." +
                             std::to_string(n));
        if (colour < 1 || colour > n)
            throw OutOfRange("colour " + std::to_string(colour) + " outside 1.." +
                             std::to_string(n));
        if (position == previous_position)
            throw OutOfRange("position " + std::to_string(position) + " assigned twice");
        previous_position = position;
    }
    assignments_ = std::move(assignments);
}

PartialColouring PartialColouring::empty(int n) { return PartialColouring(n, {}); }

PartialColouring PartialColouring::restriction(const Permutation& p,
                                               std::span<const int> positions) {
    std::vector<std::pair<int, int>> assignments;
    assignments.reserve(positions.size());
    for (int position : positions) {
        if (position < 1 || position > p.size())
            throw OutOfRange("position " + std::to_string(position) + " outside 1.." +
                             std::to_string(p.size()));
        assignments.emplace_back(position, p.at(position));
    }
    return PartialColouring(p.size(), std::move(assignments));
}

std::vector<int> PartialColouring::positions() const {
    std::vector<int> result;
    result.reserve(assignments_.size());
    for (auto [position, colour] : assignments_) result.push_back(position);
    return result;
}

bool PartialColouring::is_valid() const {
    std::vector<char> seen(static_cast<std::size_t>(n_), 0);
    for (auto [position, colour] : assignments_) {
        if (seen[static_cast<std::size_t>(colour) - 1]) return false;
        seen[static_cast<std::size_t>(colour) - 1] = 1;
    }
    return true;
}

int PartialColouring::colour_at(int position) const {
    auto it = std::lower_bound(assignments_.begin(), assignments_.end(),
                               std::make_pair(position, 0));
    if (it == assignments_.end() || it->first != position)
        throw OutOfRange("position " + std::to_string(position) + " not assigned");
    return it->second;
}

bool is_zero_query(const Permutation& sigma, const PartialColouring& c) {
    if (sigma.size() != c.size())
        throw SizeMismatch("permutation has n=" + std::to_string(sigma.size()) +
                           ", colouring has n=" + std::to_string(c.size()));
    for (auto [position, colour] : c.assignments())
        if (sigma.at(position) == colour) return false;
    return true;
}

bool discriminates(const Permutation& sigma, const PartialColouring& v,
                   const PartialColouring& c) {
    if (sigma.size() != v.size() || v.size() != c.size())
        throw SizeMismatch("permutation and colourings must share one board size");
    auto va = v.assignments();
    auto ca = c.assignments();
    if (va.size() != ca.size())
        throw DomainMismatch("colourings assign different numbers of positions");
    for (std::size_t i = 0; i < va.size(); ++i)
        if (va[i].first != ca[i].first)
            throw DomainMismatch("colourings assign different position sets");
    if (!v.is_valid()) throw NotInjective("the discriminated colouring must be injective");
    return is_zero_query(sigma, v) && !is_zero_query(sigma, c);
}

std::uint64_t permutation_count(int n) {
    if (n < 0 || n > 20)
        throw OutOfRange("n! only fits 64 bits for n <= 20, got " + std::to_string(n));
    std::uint64_t result = 1;
    for (int k = 2; k <= n; ++k) result *= static_cast<std::uint64_t>(k);
    return result;
}

Permutation nth_permutation(int n, std::uint64_t rank) {
    if (n < 1) throw OutOfRange("board size must be at least 1, got " + std::to_string(n));
    std::uint64_t total = permutation_count(n);
    if (rank >= total)
        throw OutOfRange("rank " + std::to_string(rank) + " outside 0.." +
                         std::to_string(total - 1));
    // Factorial number system: digit i selects among the remaining colours.
    std::vector<int> remaining(static_cast<std::size_t>(n));
    std::iota(remaining.begin(), remaining.end(), 1);
    std::vector<int> values;
    values.reserve(static_cast<std::size_t>(n));
    std::uint64_t radix = total;
    for (int i = n; i >= 1; --i) {
        radix /= static_cast<std::uint64_t>(i);
        std::size_t digit = static_cast<std::size_t>(rank / radix);
        rank %= radix;
        values.push_back(remaining[digit]);
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(digit));
    }
    return Permutation::unchecked(std::move(values));
}

std::vector<Permutation> all_permutations(int n, int cutoff) {
    detail::check_enumeration_cutoff(n, cutoff);
    std::vector<Permutation> result;
    result.reserve(static_cast<std::size_t>(permutation_count(n)));
    for_each_permutation(
        n,
        [&](std::span<const int> values) {
            result.push_back(Permutation::unchecked(std::vector<int>(values.begin(), values.end())));
        },
        cutoff);
    return result;
}

namespace detail {

void check_enumeration_cutoff(int n, int cutoff) {
    if (n < 1) throw OutOfRange("board size must be at least 1, got " + std::to_string(n));
    if (n > cutoff) throw CutoffExceeded(n, cutoff);
}

}  // namespace detail

}  // namespace pmm
