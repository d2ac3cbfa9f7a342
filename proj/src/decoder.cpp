#include "pmm/decoder.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace pmm {

FeedbackVector answer_all(const QuerySet& q, const Permutation& codeword) {
    if (codeword.size() != q.n)
        throw SizeMismatch("codeword has n=" + std::to_string(codeword.size()) +
                           ", query set has n=" + std::to_string(q.n));
    FeedbackVector feedback;
    feedback.n = q.n;
    feedback.counts.reserve(q.queries.size());
    for (const Permutation& query : q.queries)
        feedback.counts.push_back(black_pegs(query, codeword));
    return feedback;
}

void validate_feedback(const QuerySet& q, const FeedbackVector& feedback) {
    if (feedback.n != q.n)
        throw SizeMismatch("feedback has n=" + std::to_string(feedback.n) +
                           ", query set has n=" + std::to_string(q.n));
    if (feedback.counts.size() != q.queries.size())
        throw SizeMismatch("feedback has " + std::to_string(feedback.counts.size()) +
                           " entries for " + std::to_string(q.queries.size()) + " queries");
    for (std::size_t t = 0; t < feedback.counts.size(); ++t) {
        int count = feedback.counts[t];
        if (count < 0 || count > q.n)
            throw MalformedFeedback("entry " + std::to_string(t + 1) + " is " +
                                    std::to_string(count) + ", outside 0.." + std::to_string(q.n));
        if (count == q.n - 1)
            throw MalformedFeedback("entry " + std::to_string(t + 1) + " equals n-1 = " +
                                    std::to_string(count) +
                                    "; two bijections cannot differ in exactly one position");
    }
}

namespace {

struct RecoveryState {
    explicit RecoveryState(int board_size)
        : n(board_size),
          unknown(static_cast<std::size_t>(board_size) + 1, 1),
          unknown_count(board_size),
          colour_of(static_cast<std::size_t>(board_size) + 1, 0),
          colour_used(static_cast<std::size_t>(board_size) + 1, 0) {}

    int n;
    std::vector<char> unknown;  // 1-based
    int unknown_count;
    std::vector<int> colour_of;    // 1-based, 0 = unresolved
    std::vector<char> colour_used;  // 1-based

    void assign(int position, int colour) {
        if (colour_used[static_cast<std::size_t>(colour)])
            throw MalformedFeedback("colour " + std::to_string(colour) +
                                    " derived twice; no codeword matches this feedback");
        colour_of[static_cast<std::size_t>(position)] = colour;
        colour_used[static_cast<std::size_t>(colour)] = 1;
        unknown[static_cast<std::size_t>(position)] = 0;
        --unknown_count;
    }
};

DecodeTranscript finish(const QuerySet& q, const FeedbackVector& feedback, RecoveryState& state,
                        DecodeTranscript transcript) {
    if (state.unknown_count == 0) {
        std::vector<int> values(state.colour_of.begin() + 1, state.colour_of.end());
        Permutation result = Permutation::unchecked(std::move(values));
        if (answer_all(q, result) != feedback)
            throw MalformedFeedback(
                "recovered permutation does not reproduce the feedback; no codeword matches");
        std::vector<std::pair<int, int>> assignments;
        assignments.reserve(static_cast<std::size_t>(state.n));
        for (int position = 1; position <= state.n; ++position)
            assignments.emplace_back(position, state.colour_of[static_cast<std::size_t>(position)]);
        transcript.recovered = PartialColouring(state.n, std::move(assignments));
        transcript.result = std::move(result);
    } else {
        std::vector<std::pair<int, int>> assignments;
        for (int position = 1; position <= state.n; ++position) {
            if (state.unknown[static_cast<std::size_t>(position)])
                transcript.unresolved.push_back(position);
            else
                assignments.emplace_back(position,
                                         state.colour_of[static_cast<std::size_t>(position)]);
        }
        transcript.recovered = PartialColouring(state.n, std::move(assignments));
    }
    return transcript;
}

}  // namespace

DecodeTranscript decode(const QuerySet& q, const FeedbackVector& feedback) {
    validate_feedback(q, feedback);
    const int n = q.n;
    const std::size_t query_count = q.queries.size();

    RecoveryState state(n);
    DecodeTranscript transcript;
    std::int64_t work = 0;

    std::vector<int> residual(query_count, 0);
    std::vector<char> in_zero_set(query_count, 0);
    std::int64_t zero_set_size = 0;

    // seen[(position-1) * n + (colour-1)] = occurrences among zero-set queries
    std::vector<int> seen(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
    std::vector<int> distinct(static_cast<std::size_t>(n) + 1, 0);

    auto enter_zero_set = [&](std::size_t t) {
        in_zero_set[t] = 1;
        ++zero_set_size;
        auto values = q.queries[t].values();
        for (int position = 1; position <= n; ++position) {
            if (!state.unknown[static_cast<std::size_t>(position)]) continue;
            ++work;
            int colour = values[static_cast<std::size_t>(position) - 1];
            std::size_t cell = static_cast<std::size_t>(position - 1) * static_cast<std::size_t>(n) +
                               static_cast<std::size_t>(colour - 1);
            if (seen[cell]++ == 0) ++distinct[static_cast<std::size_t>(position)];
        }
    };

    for (std::size_t t = 0; t < query_count; ++t) {
        ++work;
        residual[t] = feedback.counts[t];
        if (residual[t] == 0) enter_zero_set(t);
    }

    while (state.unknown_count > 0) {
        int picked = 0;
        for (int position = 1; position <= n && !picked; ++position) {
            ++work;
            if (state.unknown[static_cast<std::size_t>(position)] &&
                distinct[static_cast<std::size_t>(position)] == n - 1)
                picked = position;
        }
        if (!picked) break;

        int missing = 0;
        for (int colour = 1; colour <= n && !missing; ++colour) {
            ++work;
            std::size_t cell = static_cast<std::size_t>(picked - 1) * static_cast<std::size_t>(n) +
                               static_cast<std::size_t>(colour - 1);
            if (seen[cell] == 0) missing = colour;
        }

        transcript.steps.push_back({picked, missing, zero_set_size});
        state.assign(picked, missing);

        for (std::size_t t = 0; t < query_count; ++t) {
            ++work;
            int colour_here = q.queries[t].values()[static_cast<std::size_t>(picked) - 1];
            if (colour_here != missing) continue;
            if (in_zero_set[t])
                throw MalformedFeedback(
                    "a zero-count query matches a derived colour; no codeword matches");
            if (--residual[t] == 0) enter_zero_set(t);
        }
    }

    transcript.work_units = work;
    return finish(q, feedback, state, std::move(transcript));
}

DecodeTranscript decode_by_rescanning(const QuerySet& q, const FeedbackVector& feedback) {
    validate_feedback(q, feedback);
    const int n = q.n;

    RecoveryState state(n);
    DecodeTranscript transcript;

    while (state.unknown_count > 0) {
        // Zero-query set for the current unknown positions, from scratch.
        std::vector<std::size_t> zero_set;
        for (std::size_t t = 0; t < q.queries.size(); ++t) {
            auto values = q.queries[t].values();
            int resolved_matches = 0;
            for (int position = 1; position <= n; ++position)
                if (!state.unknown[static_cast<std::size_t>(position)] &&
                    values[static_cast<std::size_t>(position) - 1] ==
                        state.colour_of[static_cast<std::size_t>(position)])
                    ++resolved_matches;
            if (feedback.counts[t] - resolved_matches == 0) zero_set.push_back(t);
        }

        int picked = 0;
        int missing = 0;
        for (int position = 1; position <= n && !picked; ++position) {
            if (!state.unknown[static_cast<std::size_t>(position)]) continue;
            std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
            int distinct = 0;
            for (std::size_t t : zero_set) {
                int colour = q.queries[t].values()[static_cast<std::size_t>(position) - 1];
                if (!seen[static_cast<std::size_t>(colour)]) {
                    seen[static_cast<std::size_t>(colour)] = 1;
                    ++distinct;
                }
            }
            if (distinct != n - 1) continue;
            picked = position;
            for (int colour = 1; colour <= n && !missing; ++colour)
                if (!seen[static_cast<std::size_t>(colour)]) missing = colour;
        }
        if (!picked) break;

        transcript.steps.push_back({picked, missing, static_cast<std::int64_t>(zero_set.size())});
        state.assign(picked, missing);
    }

    return finish(q, feedback, state, std::move(transcript));
}

bool round_trip_check(const QuerySet& q, const Permutation& codeword) {
    DecodeTranscript transcript = decode(q, answer_all(q, codeword));
    return transcript.succeeded() && *transcript.result == codeword;
}

void write_feedback(const FeedbackVector& feedback, std::ostream& out) {
    out << "PMMFB v1 n=" << feedback.n << " count=" << feedback.counts.size() << '\n';
    for (std::size_t t = 0; t < feedback.counts.size(); ++t)
        out << (t ? " " : "") << feedback.counts[t];
    out << '\n';
}

namespace {

template <typename Int>
Int parse_int(const std::string& text, long line, const std::string& what) {
    Int value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw ParseError(line, "bad " + what + " '" + text + "'");
    return value;
}

}  // namespace

FeedbackVector read_feedback(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw ParseError(1, "missing header");
    std::istringstream head(header);
    std::string magic, version, token;
    if (!(head >> magic >> version) || magic != "PMMFB" || version != "v1")
        throw ParseError(1, "expected 'PMMFB v1' header");
    FeedbackVector feedback;
    if (!(head >> token) || token.rfind("n=", 0) != 0) throw ParseError(1, "expected n=<n>");
    feedback.n = parse_int<int>(token.substr(2), 1, "board size");
    if (!(head >> token) || token.rfind("count=", 0) != 0)
        throw ParseError(1, "expected count=<q>");
    auto count = parse_int<std::int64_t>(token.substr(6), 1, "count");
    if (count < 0) throw ParseError(1, "count must be nonnegative");
    if (head >> token) throw ParseError(1, "trailing token '" + token + "'");

    std::string line;
    if (!std::getline(in, line)) {
        if (count != 0) throw ParseError(2, "missing counts line");
        return feedback;
    }
    std::istringstream body(line);
    while (body >> token) feedback.counts.push_back(parse_int<int>(token, 2, "count"));
    if (static_cast<std::int64_t>(feedback.counts.size()) != count)
        throw ParseError(2, "expected " + std::to_string(count) + " counts, found " +
                                std::to_string(feedback.counts.size()));
    return feedback;
}

std::string transcript_log(const DecodeTranscript& transcript) {
    std::ostringstream out;
    for (std::size_t i = 0; i < transcript.steps.size(); ++i) {
        const DecodeStep& step = transcript.steps[i];
        out << "step=" << (i + 1) << " position=" << step.position << " colour=" << step.colour
            << " zero_queries=" << step.zero_query_count << '\n';
    }
    if (transcript.succeeded()) {
        out << "outcome=success\n";
        auto values = transcript.result->values();
        out << "codeword=";
        for (std::size_t i = 0; i < values.size(); ++i) out << (i ? " " : "") << values[i];
        out << '\n';
    } else {
        out << "outcome=stuck\n";
        out << "unresolved=";
        for (std::size_t i = 0; i < transcript.unresolved.size(); ++i)
            out << (i ? " " : "") << transcript.unresolved[i];
        out << '\n';
        out << "recovered=";
        if (transcript.recovered) {
            auto assignments = transcript.recovered->assignments();
            for (std::size_t i = 0; i < assignments.size(); ++i)
                out << (i ? " " : "") << assignments[i].first << ':' << assignments[i].second;
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace pmm
