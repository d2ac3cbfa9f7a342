#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pmm/query_set.hpp"

namespace pmm {

/// Black-peg counts, one per query, order-aligned with the query set.
struct FeedbackVector {
    int n = 0;
    std::vector<int> counts;

    bool operator==(const FeedbackVector&) const = default;
};

/// counts[t] = black_pegs(q.queries[t], codeword).
FeedbackVector answer_all(const QuerySet& q, const Permutation& codeword);

/// Throws SizeMismatch on board-size or length disagreement and
/// MalformedFeedback on an entry outside 0..n or equal to n-1 (two
/// bijections cannot differ in exactly one position).
void validate_feedback(const QuerySet& q, const FeedbackVector& feedback);

struct DecodeStep {
    int position;
    int colour;
    std::int64_t zero_query_count;  // live zero-queries when this position resolved

    bool operator==(const DecodeStep&) const = default;
};

/// What the decoder did, step by step. `result` is set exactly on
/// success; on a stuck outcome `recovered` holds the partial assignment
/// and `unresolved` the positions that could not be pinned down. A stuck
/// outcome is not an error: it witnesses that the query set lacks the
/// discrimination property for this codeword's residual instance.
struct DecodeTranscript {
    std::vector<DecodeStep> steps;
    std::optional<Permutation> result;
    std::optional<PartialColouring> recovered;
    std::vector<int> unresolved;
    std::int64_t work_units = 0;

    bool succeeded() const { return result.has_value(); }
};

/// Recovers the codeword one colour at a time. Maintains, per query, the
/// number of agreements with the codeword on the still-unknown positions;
/// queries whose residual hits zero join the zero-query set and their
/// colours feed per-position distinct-colour tallies. A position showing
/// n-1 distinct colours is resolved to the missing one; ties break to the
/// smallest position. Work is O(|Q| * n) plus O(n^2) bookkeeping.
///
/// Throws MalformedFeedback when the feedback is provably satisfiable by
/// no codeword (the incremental state contradicts itself, or a recovered
/// permutation fails to reproduce the feedback).
DecodeTranscript decode(const QuerySet& q, const FeedbackVector& feedback);

/// Reference decoder: recomputes the zero-query set and the colour
/// tallies from scratch at every step. Same outcomes and steps as
/// decode(); kept as the oracle for the incremental bookkeeping.
DecodeTranscript decode_by_rescanning(const QuerySet& q, const FeedbackVector& feedback);

/// True iff decoding the codeword's own feedback returns it.
bool round_trip_check(const QuerySet& q, const Permutation& codeword);

/// Feedback file format, newline-terminated ASCII:
///   PMMFB v1 n=<n> count=<q>
///   <q space-separated counts>
void write_feedback(const FeedbackVector& feedback, std::ostream& out);
FeedbackVector read_feedback(std::istream& in);

/// Human-readable step log, one key=value line per fact.
std::string transcript_log(const DecodeTranscript& transcript);

}  // namespace pmm
