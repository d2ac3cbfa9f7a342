#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "pmm/errors.hpp"

namespace pmm {

/// Largest n for which exhaustive sweeps over all n! permutations run by
/// default (8! = 40320). Callers may pass a different cutoff explicitly.
inline constexpr int kExhaustiveCutoff = 8;

/// A bijection on positions 1..n, used as codeword, query and enumeration
/// element. Positions and colours are 1-based in the whole public interface
/// and in every file format.
class Permutation {
public:
    /// Validates that `values` is a bijection on 1..n.
    Permutation(int n, std::vector<int> values);

    static Permutation identity(int n);

    /// Wraps `values` without validation. Caller guarantees a bijection;
    /// used by generators that produce bijections by construction.
    static Permutation unchecked(std::vector<int> values);

    int size() const noexcept { return static_cast<int>(values_.size()); }

    /// Colour at a 1-based position.
    int at(int position) const { return values_[static_cast<std::size_t>(position) - 1]; }
    int operator()(int position) const { return at(position); }

    std::span<const int> values() const noexcept { return values_; }

    bool operator==(const Permutation&) const = default;
    auto operator<=>(const Permutation&) const = default;

private:
    Permutation() = default;

    std::vector<int> values_;  // values_[i] = colour at position i+1
};

/// Number of positions where query and codeword agree.
int black_pegs(const Permutation& query, const Permutation& codeword);

/// An assignment of colours to a subset of positions, not necessarily
/// injective. The injective case is the restriction of some permutation.
class PartialColouring {
public:
    /// `assignments` holds (position, colour) pairs; they are sorted by
    /// position here. Throws OutOfRange on values outside 1..n or on a
    /// repeated position.
    PartialColouring(int n, std::vector<std::pair<int, int>> assignments);

    static PartialColouring empty(int n);

    /// The restriction of `p` to the given positions.
    static PartialColouring restriction(const Permutation& p, std::span<const int> positions);

    /// Board size n (not the number of assigned positions).
    int size() const noexcept { return n_; }

    int assigned_count() const noexcept { return static_cast<int>(assignments_.size()); }

    /// Assignments sorted by position.
    std::span<const std::pair<int, int>> assignments() const noexcept { return assignments_; }

    /// Assigned positions, ascending.
    std::vector<int> positions() const;

    /// True iff no two positions share a colour.
    bool is_valid() const;

    /// Colour at an assigned position; throws OutOfRange otherwise.
    int colour_at(int position) const;

    bool operator==(const PartialColouring&) const = default;

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> assignments_;
};

/// True iff sigma disagrees with c at every assigned position (vacuously
/// true when nothing is assigned).
bool is_zero_query(const Permutation& sigma, const PartialColouring& c);

/// True iff sigma avoids v everywhere on I but hits c somewhere on I.
/// Requires v and c on the same position set, with v injective.
bool discriminates(const Permutation& sigma, const PartialColouring& v, const PartialColouring& c);

/// n! for n <= 20 (largest factorial fitting in 64 bits).
std::uint64_t permutation_count(int n);

/// The permutation of lex rank `rank` (0-based) among all n! permutations.
Permutation nth_permutation(int n, std::uint64_t rank);

/// All n! permutations in lexicographic order of their value sequences.
/// Throws CutoffExceeded when n > cutoff.
std::vector<Permutation> all_permutations(int n, int cutoff = kExhaustiveCutoff);

namespace detail {
void check_enumeration_cutoff(int n, int cutoff);
}

/// Calls fn(std::span<const int>) for each of the n! value sequences in
/// lexicographic order. The span is only valid during the call.
template <typename Fn>
void for_each_permutation(int n, Fn&& fn, int cutoff = kExhaustiveCutoff) {
    detail::check_enumeration_cutoff(n, cutoff);
    std::vector<int> values(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) values[static_cast<std::size_t>(i)] = i + 1;
    do {
        fn(std::span<const int>(values));
    } while (std::next_permutation(values.begin(), values.end()));
}

}  // namespace pmm
