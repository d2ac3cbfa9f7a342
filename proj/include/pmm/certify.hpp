#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "pmm/bounds.hpp"
#include "pmm/decoder.hpp"
#include "pmm/query_set.hpp"

namespace pmm {

/// Default cutoff for exhaustive triple certification. The triple space
/// grows like C(n,k) * n!/(n-k)! * (n-1)^k; n = 5 is ~3*10^5 instances,
/// n = 6 already tens of millions.
inline constexpr int kTripleCutoff = 5;

/// Nested rigor levels, weakest first. Exhaustive PASS at a stronger
/// level implies PASS at every weaker one.
enum class CertLevel {
    UniqueFeedback,  // codeword -> feedback is injective
    DecodeAll,       // every codeword round-trips through the decoder
    LemmaTriples,    // every (positions, valid, rival) instance is discriminated
};

std::string to_string(CertLevel level);

/// A feedback collision: two codewords the query set cannot tell apart.
struct CollisionWitness {
    Permutation first;
    Permutation second;
};

/// A codeword the decoder could not recover, with its transcript.
struct DecodeWitness {
    Permutation codeword;
    DecodeTranscript transcript;
};

using Witness = std::variant<CollisionWitness, DecodeWitness, TripleInstance>;

struct WorkCounters {
    std::int64_t instances_checked = 0;
    std::int64_t queries_scanned = 0;
};

/// Outcome of a certification run. FAIL always carries a concrete
/// witness; exhaustive runs are pure functions of the query set, Monte
/// Carlo runs of (query set, level, trials, seed).
struct Certificate {
    CertLevel level;
    bool exhaustive = true;
    std::int64_t trials = 0;                 // Monte Carlo only
    std::optional<std::uint64_t> mc_seed;    // Monte Carlo only
    bool pass = false;
    std::optional<Witness> witness;
    WorkCounters work;
};

struct CertifyOptions {
    int cutoff = kExhaustiveCutoff;
    int triple_cutoff = kTripleCutoff;
    /// 0 = one task per hardware thread. Parallel and serial runs return
    /// identical certificates: failures reduce to the enumeration-order
    /// first witness and counters are serial-canonical.
    unsigned threads = 0;
};

/// PASS iff codeword -> feedback is injective over all n! codewords.
Certificate certify_unique_feedback(const QuerySet& q, const CertifyOptions& options = {});

/// PASS iff every codeword round-trips; FAIL returns the lexicographically
/// first failing codeword with its transcript.
Certificate certify_decode_all(const QuerySet& q, const CertifyOptions& options = {});

/// PASS iff for every nonempty position set, every valid colouring on it
/// and every pointwise-different rival, some query discriminates.
/// Enumeration: |positions| ascending, then lexicographic.
Certificate certify_lemma_triples(const QuerySet& q, const CertifyOptions& options = {});

/// Samples `trials` random instances of the level (codewords, codeword
/// pairs, or triples with |positions| uniform in 1..n) and checks each.
/// PASS only means no counterexample was found in the sample; the
/// certificate records that weaker semantics.
Certificate monte_carlo_certify(const QuerySet& q, CertLevel level, std::int64_t trials,
                                std::uint64_t seed);

/// Independently re-checks a FAIL witness against the level's property.
/// True when the witness genuinely violates it.
bool witness_refutes(const QuerySet& q, const Certificate& certificate);

/// Extracts, from a stuck decode of honest feedback, the triple instance
/// that the query set fails to discriminate: the unresolved positions,
/// the codeword's restriction to them, and a rival colouring avoided by
/// every live zero-query.
TripleInstance uncovered_triple_from_stuck(const QuerySet& q, const Permutation& codeword,
                                           const DecodeTranscript& transcript);

/// Flat key=value report, one line per fact; witnesses use the query-set
/// line syntax.
std::string certificate_report(const Certificate& certificate);

}  // namespace pmm
