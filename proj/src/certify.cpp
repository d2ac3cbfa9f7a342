#include "pmm/certify.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <thread>
#include <unordered_map>

namespace pmm {

std::string to_string(CertLevel level) {
    switch (level) {
        case CertLevel::UniqueFeedback: return "unique-feedback";
        case CertLevel::DecodeAll: return "decode-all";
        case CertLevel::LemmaTriples: return "lemma-triples";
    }
    return "unknown";
}

namespace {

constexpr std::uint64_t kNoFailure = ~std::uint64_t{0};

std::uint64_t mix_step(std::uint64_t h, std::uint64_t value) {
    h ^= value + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

std::uint64_t feedback_hash(const FeedbackVector& feedback) {
    std::uint64_t h = 1469598103934665603ULL;
    for (int count : feedback.counts) h = mix_step(h, static_cast<std::uint64_t>(count) + 1);
    return h;
}

unsigned resolve_threads(unsigned requested, std::uint64_t instances) {
    unsigned threads = requested ? requested : std::thread::hardware_concurrency();
    if (threads == 0) threads = 1;
    if (instances < 2048) return 1;  // not worth spawning
    return static_cast<unsigned>(std::min<std::uint64_t>(threads, instances));
}

/// Runs fn(first_rank, last_rank, task_index) over a contiguous split of
/// 0..total-1 across tasks.
template <typename Fn>
void split_ranks(std::uint64_t total, unsigned tasks, Fn&& fn) {
    if (tasks <= 1) {
        fn(std::uint64_t{0}, total, 0u);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(tasks);
    std::uint64_t chunk = (total + tasks - 1) / tasks;
    for (unsigned task = 0; task < tasks; ++task) {
        std::uint64_t first = task * chunk;
        std::uint64_t last = std::min(total, first + chunk);
        if (first >= last) break;
        pool.emplace_back([=, &fn] { fn(first, last, task); });
    }
    for (std::thread& t : pool) t.join();
}

}  // namespace

Certificate certify_unique_feedback(const QuerySet& q, const CertifyOptions& options) {
    if (q.n > options.cutoff) throw CutoffExceeded(q.n, options.cutoff);
    const std::uint64_t total = permutation_count(q.n);
    const auto query_count = static_cast<std::int64_t>(q.queries.size());

    std::vector<std::uint64_t> hashes(total);
    split_ranks(total, resolve_threads(options.threads, total),
                [&](std::uint64_t first, std::uint64_t last, unsigned) {
                    Permutation codeword = nth_permutation(q.n, first);
                    std::vector<int> values(codeword.values().begin(), codeword.values().end());
                    for (std::uint64_t rank = first; rank < last; ++rank) {
                        hashes[rank] = feedback_hash(answer_all(q, codeword));
                        if (std::next_permutation(values.begin(), values.end()))
                            codeword = Permutation::unchecked(values);
                    }
                });

    Certificate certificate;
    certificate.level = CertLevel::UniqueFeedback;

    std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> buckets;
    buckets.reserve(static_cast<std::size_t>(total) * 2);
    for (std::uint64_t rank = 0; rank < total; ++rank) {
        auto& bucket = buckets[hashes[rank]];
        for (std::uint64_t earlier : bucket) {
            Permutation a = nth_permutation(q.n, earlier);
            Permutation b = nth_permutation(q.n, rank);
            if (answer_all(q, a) == answer_all(q, b)) {
                certificate.pass = false;
                certificate.witness = CollisionWitness{std::move(a), std::move(b)};
                certificate.work.instances_checked = static_cast<std::int64_t>(rank) + 1;
                certificate.work.queries_scanned =
                    certificate.work.instances_checked * query_count;
                return certificate;
            }
        }
        bucket.push_back(rank);
    }

    certificate.pass = true;
    certificate.work.instances_checked = static_cast<std::int64_t>(total);
    certificate.work.queries_scanned = certificate.work.instances_checked * query_count;
    return certificate;
}

Certificate certify_decode_all(const QuerySet& q, const CertifyOptions& options) {
    if (q.n > options.cutoff) throw CutoffExceeded(q.n, options.cutoff);
    const std::uint64_t total = permutation_count(q.n);
    const auto query_count = static_cast<std::int64_t>(q.queries.size());
    const unsigned threads = resolve_threads(options.threads, total);

    std::vector<std::uint64_t> first_failure(threads, kNoFailure);
    split_ranks(total, threads, [&](std::uint64_t first, std::uint64_t last, unsigned task) {
        Permutation codeword = nth_permutation(q.n, first);
        std::vector<int> values(codeword.values().begin(), codeword.values().end());
        for (std::uint64_t rank = first; rank < last; ++rank) {
            DecodeTranscript transcript = decode(q, answer_all(q, codeword));
            if (!transcript.succeeded() || *transcript.result != codeword) {
                first_failure[task] = rank;
                break;
            }
            if (std::next_permutation(values.begin(), values.end()))
                codeword = Permutation::unchecked(values);
        }
    });

    Certificate certificate;
    certificate.level = CertLevel::DecodeAll;
    std::uint64_t failing_rank = *std::min_element(first_failure.begin(), first_failure.end());

    // Per successful codeword the decoder takes exactly n steps, so the
    // serial-equivalent counters follow from the failing rank alone.
    auto scan_cost = [&](std::int64_t steps) { return query_count * (1 + steps); };
    if (failing_rank == kNoFailure) {
        certificate.pass = true;
        certificate.work.instances_checked = static_cast<std::int64_t>(total);
        certificate.work.queries_scanned =
            certificate.work.instances_checked * scan_cost(q.n);
        return certificate;
    }

    Permutation codeword = nth_permutation(q.n, failing_rank);
    DecodeTranscript transcript = decode(q, answer_all(q, codeword));
    certificate.pass = false;
    certificate.work.instances_checked = static_cast<std::int64_t>(failing_rank) + 1;
    certificate.work.queries_scanned =
        static_cast<std::int64_t>(failing_rank) * scan_cost(q.n) +
        scan_cost(static_cast<std::int64_t>(transcript.steps.size()));
    certificate.witness = DecodeWitness{std::move(codeword), std::move(transcript)};
    return certificate;
}

namespace {

/// The query-scan shared by exhaustive and Monte Carlo triple checks:
/// index of the first discriminating query, or -1. `scanned` grows by the
/// number of queries examined (early exit on the first hit).
std::int64_t first_discriminator(const QuerySet& q, std::span<const int> positions,
                                 std::span<const int> valid_colours,
                                 std::span<const int> rival_colours, std::int64_t& scanned) {
    for (std::size_t t = 0; t < q.queries.size(); ++t) {
        ++scanned;
        auto sigma = q.queries[t].values();
        bool avoids_valid = true;
        bool hits_rival = false;
        for (std::size_t a = 0; a < positions.size() && avoids_valid; ++a) {
            int colour = sigma[static_cast<std::size_t>(positions[a]) - 1];
            if (colour == valid_colours[a]) avoids_valid = false;
            if (colour == rival_colours[a]) hits_rival = true;
        }
        if (avoids_valid && hits_rival) return static_cast<std::int64_t>(t);
    }
    return -1;
}

TripleInstance build_triple(int n, std::span<const int> positions,
                            std::span<const int> valid_colours,
                            std::span<const int> rival_colours) {
    std::vector<std::pair<int, int>> valid_assign, rival_assign;
    for (std::size_t a = 0; a < positions.size(); ++a) {
        valid_assign.emplace_back(positions[a], valid_colours[a]);
        rival_assign.emplace_back(positions[a], rival_colours[a]);
    }
    return TripleInstance(PartialColouring(n, std::move(valid_assign)),
                          PartialColouring(n, std::move(rival_assign)));
}

/// Enumerates triples in canonical order: |positions| ascending, then
/// position sets, valid colourings and rival colourings each
/// lexicographic. Stops when the visitor returns false.
class TripleEnumeration {
public:
    using Visitor = bool (*)(void*, std::span<const int>, std::span<const int>,
                             std::span<const int>);

    TripleEnumeration(int n, void* context, Visitor visit)
        : n_(n), context_(context), visit_(visit) {}

    void run() {
        for (int k = 1; k <= n_; ++k) {
            positions_.resize(static_cast<std::size_t>(k));
            valid_.resize(static_cast<std::size_t>(k));
            rival_.resize(static_cast<std::size_t>(k));
            colour_used_.assign(static_cast<std::size_t>(n_) + 1, 0);
            for (int a = 0; a < k; ++a) positions_[static_cast<std::size_t>(a)] = a + 1;
            for (;;) {
                if (!descend_valid(0)) return;
                if (!next_combination()) break;
            }
        }
    }

private:
    bool descend_valid(std::size_t depth) {
        if (depth == positions_.size()) return descend_rival(0);
        for (int colour = 1; colour <= n_; ++colour) {
            if (colour_used_[static_cast<std::size_t>(colour)]) continue;
            colour_used_[static_cast<std::size_t>(colour)] = 1;
            valid_[depth] = colour;
            bool keep_going = descend_valid(depth + 1);
            colour_used_[static_cast<std::size_t>(colour)] = 0;
            if (!keep_going) return false;
        }
        return true;
    }

    bool descend_rival(std::size_t depth) {
        if (depth == positions_.size())
            return visit_(context_, positions_, valid_, rival_);
        for (int colour = 1; colour <= n_; ++colour) {
            if (colour == valid_[depth]) continue;
            rival_[depth] = colour;
            if (!descend_rival(depth + 1)) return false;
        }
        return true;
    }

    bool next_combination() {
        int k = static_cast<int>(positions_.size());
        int a = k - 1;
        while (a >= 0 && positions_[static_cast<std::size_t>(a)] == n_ - (k - 1 - a)) --a;
        if (a < 0) return false;
        ++positions_[static_cast<std::size_t>(a)];
        for (int b = a + 1; b < k; ++b)
            positions_[static_cast<std::size_t>(b)] = positions_[static_cast<std::size_t>(b - 1)] + 1;
        return true;
    }

    int n_;
    void* context_;
    Visitor visit_;
    std::vector<int> positions_;
    std::vector<int> valid_;
    std::vector<int> rival_;
    std::vector<char> colour_used_;
};

}  // namespace

Certificate certify_lemma_triples(const QuerySet& q, const CertifyOptions& options) {
    if (q.n > options.triple_cutoff) throw CutoffExceeded(q.n, options.triple_cutoff);

    Certificate certificate;
    certificate.level = CertLevel::LemmaTriples;
    certificate.pass = true;

    struct Scan {
        const QuerySet* queries;
        Certificate* certificate;
    } scan{&q, &certificate};

    TripleEnumeration enumeration(
        q.n, &scan,
        [](void* context, std::span<const int> positions, std::span<const int> valid_colours,
           std::span<const int> rival_colours) {
            auto& s = *static_cast<Scan*>(context);
            ++s.certificate->work.instances_checked;
            if (first_discriminator(*s.queries, positions, valid_colours, rival_colours,
                                    s.certificate->work.queries_scanned) >= 0)
                return true;
            s.certificate->pass = false;
            s.certificate->witness =
                build_triple(s.queries->n, positions, valid_colours, rival_colours);
            return false;
        });
    enumeration.run();
    return certificate;
}

Certificate monte_carlo_certify(const QuerySet& q, CertLevel level, std::int64_t trials,
                                std::uint64_t seed) {
    if (trials < 1) throw OutOfRange("trial count must be positive, got " + std::to_string(trials));
    const int n = q.n;
    if (n < 1) throw OutOfRange("query set has no board size");

    Certificate certificate;
    certificate.level = level;
    certificate.exhaustive = false;
    certificate.trials = trials;
    certificate.mc_seed = seed;
    certificate.pass = true;

    Pcg32 rng(seed);
    const auto query_count = static_cast<std::int64_t>(q.queries.size());

    for (std::int64_t trial = 0; trial < trials; ++trial) {
        ++certificate.work.instances_checked;
        switch (level) {
            case CertLevel::UniqueFeedback: {
                if (n == 1) break;  // a single codeword exists; nothing to collide
                Permutation first = random_permutation(n, rng);
                Permutation second = random_permutation(n, rng);
                while (second == first) second = random_permutation(n, rng);
                certificate.work.queries_scanned += 2 * query_count;
                if (answer_all(q, first) == answer_all(q, second)) {
                    certificate.pass = false;
                    certificate.witness = CollisionWitness{std::move(first), std::move(second)};
                }
                break;
            }
            case CertLevel::DecodeAll: {
                Permutation codeword = random_permutation(n, rng);
                DecodeTranscript transcript = decode(q, answer_all(q, codeword));
                certificate.work.queries_scanned +=
                    query_count * (1 + static_cast<std::int64_t>(transcript.steps.size()));
                if (!transcript.succeeded() || *transcript.result != codeword) {
                    certificate.pass = false;
                    certificate.witness = DecodeWitness{std::move(codeword), std::move(transcript)};
                }
                break;
            }
            case CertLevel::LemmaTriples: {
                int k = 1 + static_cast<int>(rng.next_below(static_cast<std::uint32_t>(n)));
                std::vector<int> slots(static_cast<std::size_t>(n));
                std::iota(slots.begin(), slots.end(), 1);
                for (int a = 0; a < k; ++a) {
                    auto rest = static_cast<std::uint32_t>(n - a);
                    std::swap(slots[static_cast<std::size_t>(a)],
                              slots[static_cast<std::size_t>(a) + rng.next_below(rest)]);
                }
                std::vector<int> positions(slots.begin(), slots.begin() + k);
                std::sort(positions.begin(), positions.end());

                std::vector<int> palette(static_cast<std::size_t>(n));
                std::iota(palette.begin(), palette.end(), 1);
                std::vector<int> valid_colours(static_cast<std::size_t>(k));
                for (int a = 0; a < k; ++a) {
                    auto rest = static_cast<std::uint32_t>(n - a);
                    std::swap(palette[static_cast<std::size_t>(a)],
                              palette[static_cast<std::size_t>(a) + rng.next_below(rest)]);
                    valid_colours[static_cast<std::size_t>(a)] = palette[static_cast<std::size_t>(a)];
                }

                std::vector<int> rival_colours(static_cast<std::size_t>(k));
                for (int a = 0; a < k; ++a) {
                    int draw = 1 + static_cast<int>(rng.next_below(static_cast<std::uint32_t>(n - 1)));
                    rival_colours[static_cast<std::size_t>(a)] =
                        draw < valid_colours[static_cast<std::size_t>(a)] ? draw : draw + 1;
                }

                if (first_discriminator(q, positions, valid_colours, rival_colours,
                                        certificate.work.queries_scanned) < 0) {
                    certificate.pass = false;
                    certificate.witness = build_triple(n, positions, valid_colours, rival_colours);
                }
                break;
            }
        }
        if (!certificate.pass) break;
    }
    return certificate;
}

bool witness_refutes(const QuerySet& q, const Certificate& certificate) {
    if (certificate.pass || !certificate.witness) return false;
    const Witness& witness = *certificate.witness;
    if (const auto* collision = std::get_if<CollisionWitness>(&witness)) {
        return collision->first != collision->second &&
               answer_all(q, collision->first) == answer_all(q, collision->second);
    }
    if (const auto* stuck = std::get_if<DecodeWitness>(&witness)) {
        DecodeTranscript transcript = decode(q, answer_all(q, stuck->codeword));
        return !transcript.succeeded() || *transcript.result != stuck->codeword;
    }
    const auto& triple = std::get<TripleInstance>(witness);
    for (const Permutation& query : q.queries)
        if (discriminates(query, triple.valid_colouring(), triple.rival_colouring())) return false;
    return true;
}

TripleInstance uncovered_triple_from_stuck(const QuerySet& q, const Permutation& codeword,
                                           const DecodeTranscript& transcript) {
    if (transcript.succeeded())
        throw OutOfRange("transcript is a success; only stuck decodes yield a triple");
    const std::vector<int>& unresolved = transcript.unresolved;
    if (unresolved.empty()) throw OutOfRange("stuck transcript has no unresolved positions");

    PartialColouring valid = PartialColouring::restriction(codeword, unresolved);

    // Colours shown at each unresolved position by the live zero-queries.
    const int n = q.n;
    std::vector<char> shown(unresolved.size() * static_cast<std::size_t>(n + 1), 0);
    for (const Permutation& query : q.queries) {
        if (!is_zero_query(query, valid)) continue;
        for (std::size_t a = 0; a < unresolved.size(); ++a)
            shown[a * static_cast<std::size_t>(n + 1) +
                  static_cast<std::size_t>(query.at(unresolved[a]))] = 1;
    }

    std::vector<std::pair<int, int>> rival_assign;
    for (std::size_t a = 0; a < unresolved.size(); ++a) {
        int position = unresolved[a];
        int chosen = 0;
        for (int colour = 1; colour <= n && !chosen; ++colour) {
            if (colour == codeword.at(position)) continue;
            if (shown[a * static_cast<std::size_t>(n + 1) + static_cast<std::size_t>(colour)])
                continue;
            chosen = colour;
        }
        if (!chosen)
            throw std::logic_error("no avoidable colour at a stuck position; feedback dishonest?");
        rival_assign.emplace_back(position, chosen);
    }
    return TripleInstance(std::move(valid), PartialColouring(n, std::move(rival_assign)));
}

namespace {

void append_values(std::ostringstream& out, std::span<const int> values) {
    for (std::size_t i = 0; i < values.size(); ++i) out << (i ? " " : "") << values[i];
}

}  // namespace

std::string certificate_report(const Certificate& certificate) {
    std::ostringstream out;
    out << "level=" << to_string(certificate.level) << '\n';
    if (certificate.exhaustive) {
        out << "mode=exhaustive\n";
    } else {
        out << "mode=monte-carlo\n";
        out << "trials=" << certificate.trials << '\n';
        if (certificate.mc_seed) out << "seed=" << *certificate.mc_seed << '\n';
        out << "semantics=pass-means-no-counterexample-in-sample\n";
    }
    out << "verdict=" << (certificate.pass ? "PASS" : "FAIL") << '\n';
    out << "instances_checked=" << certificate.work.instances_checked << '\n';
    out << "queries_scanned=" << certificate.work.queries_scanned << '\n';
    if (certificate.witness) {
        const Witness& witness = *certificate.witness;
        if (const auto* collision = std::get_if<CollisionWitness>(&witness)) {
            out << "witness_first=";
            append_values(out, collision->first.values());
            out << '\n' << "witness_second=";
            append_values(out, collision->second.values());
            out << '\n';
        } else if (const auto* stuck = std::get_if<DecodeWitness>(&witness)) {
            out << "witness_codeword=";
            append_values(out, stuck->codeword.values());
            out << '\n';
            out << "witness_steps=" << stuck->transcript.steps.size() << '\n';
            out << "witness_unresolved=";
            append_values(out, stuck->transcript.unresolved);
            out << '\n';
        } else {
            const auto& triple = std::get<TripleInstance>(witness);
            std::vector<int> positions = triple.positions();
            std::vector<int> valid_colours, rival_colours;
            for (int position : positions) {
                valid_colours.push_back(triple.valid_colouring().colour_at(position));
                rival_colours.push_back(triple.rival_colouring().colour_at(position));
            }
            out << "witness_positions=";
            append_values(out, positions);
            out << '\n' << "witness_valid_colouring=";
            append_values(out, valid_colours);
            out << '\n' << "witness_rival_colouring=";
            append_values(out, rival_colours);
            out << '\n';
        }
    }
    return out.str();
}

}  // namespace pmm
