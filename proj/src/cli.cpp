#include "pmm/cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "pmm/bounds.hpp"
#include "pmm/certify.hpp"
#include "pmm/counting.hpp"
#include "pmm/decoder.hpp"
#include "pmm/query_set.hpp"

namespace pmm::cli {

mpq_class BenchRow::success_rate() const {
    mpq_class rate(successes, trials);
    rate.canonicalize();
    return rate;
}

mpq_class parse_rational(const std::string& token) {
    if (token.empty()) throw OutOfRange("empty rational token");
    if (auto slash = token.find('/'); slash != std::string::npos) {
        mpq_class value;
        if (value.set_str(token, 10) != 0 || value.get_den() == 0)
            throw OutOfRange("bad rational '" + token + "'");
        value.canonicalize();
        return value;
    }
    std::string digits = token;
    std::size_t scale = 0;
    if (auto dot = token.find('.'); dot != std::string::npos) {
        digits = token.substr(0, dot) + token.substr(dot + 1);
        scale = token.size() - dot - 1;
    }
    if (digits.empty() || digits.find_first_not_of("0123456789", digits[0] == '-' ? 1 : 0) !=
                              std::string::npos)
        throw OutOfRange("bad rational '" + token + "'");
    mpz_class numerator(digits, 10);
    mpz_class denominator;
    mpz_ui_pow_ui(denominator.get_mpz_t(), 10, scale);
    mpq_class value(numerator, denominator);
    value.canonicalize();
    return value;
}

namespace {

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

/// Documented derivation: cell_seed = mix64(mix64(mix64(seed) ^ n) ^ fnv1a(c)),
/// with c in canonical num[/den] form.
std::uint64_t cell_seed(std::uint64_t seed, std::int64_t n, const mpq_class& c) {
    std::uint64_t h = mix64(seed);
    h = mix64(h ^ static_cast<std::uint64_t>(n));
    return mix64(h ^ fnv1a(c.get_str()));
}

BenchRow run_bench_cell(std::int64_t n, const std::string& c_token, const mpq_class& c,
                        std::int64_t trials, std::uint64_t seed) {
    BenchRow row;
    row.n = n;
    row.c_token = c_token;
    row.c = c;
    row.trials = trials;
    row.query_count = scaled_query_count(c, n);

    auto started = std::chrono::steady_clock::now();
    std::uint64_t derived = cell_seed(seed, n, c);
    Pcg32 rng(derived);
    QuerySet queries;
    queries.n = static_cast<int>(n);
    queries.seed = derived;
    queries.generator_id = Pcg32::kGeneratorId;
    queries.queries.reserve(static_cast<std::size_t>(row.query_count));
    for (std::int64_t i = 0; i < row.query_count; ++i)
        queries.queries.push_back(random_permutation(queries.n, rng));

    for (std::int64_t trial = 0; trial < trials; ++trial) {
        Permutation codeword = random_permutation(queries.n, rng);
        if (round_trip_check(queries, codeword)) ++row.successes;
    }
    row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                            started)
                      .count();
    return row;
}

}  // namespace

std::vector<BenchRow> run_bench(const std::vector<std::int64_t>& board_sizes,
                                const std::vector<std::string>& c_tokens, std::int64_t trials,
                                std::uint64_t seed, unsigned threads) {
    if (trials < 1) throw OutOfRange("trial count must be positive, got " + std::to_string(trials));
    struct Cell {
        std::int64_t n;
        std::string token;
        mpq_class c;
    };
    std::vector<Cell> cells;
    for (std::int64_t n : board_sizes) {
        if (n < 2 || n > 1 << 20)
            throw OutOfRange("bench board size " + std::to_string(n) + " outside 2..2^20");
        for (const std::string& token : c_tokens) {
            mpq_class c = parse_rational(token);
            if (c <= 0) throw OutOfRange("bench multiplier must be positive, got '" + token + "'");
            cells.push_back({n, token, std::move(c)});
        }
    }

    std::vector<BenchRow> rows(cells.size());
    unsigned workers = threads ? threads : std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, cells.size()));

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t index = next.fetch_add(1);
            if (index >= cells.size()) return;
            const Cell& cell = cells[index];
            rows[index] = run_bench_cell(cell.n, cell.token, cell.c, trials, seed);
        }
    };
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
    std::ostringstream out;
    out << "n,c,query_count,trials,success_rate,wall_ms\n";
    char rate[32];
    for (const BenchRow& row : rows) {
        std::snprintf(rate, sizeof rate, "%.6f",
                      static_cast<double>(row.successes) / static_cast<double>(row.trials));
        out << row.n << ',' << row.c_token << ',' << row.query_count << ',' << row.trials << ','
            << rate << ',' << static_cast<std::int64_t>(row.wall_ms + 0.5) << '\n';
    }
    return out.str();
}

namespace {

int fail_with(const std::string& reason, int code) {
    std::cerr << "pmm: " << reason << '\n';
    return code;
}

QuerySet load_query_set(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open query file '" + path + "'");
    return read_query_set(in);
}

FeedbackVector load_feedback(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open feedback file '" + path + "'");
    return read_feedback(in);
}

void save_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open output file '" + path + "'");
    out << text;
    if (!out) throw Error("failed writing '" + path + "'");
}

std::vector<int> parse_colour_list(const std::string& text) {
    std::istringstream in(text);
    std::vector<int> values;
    int value = 0;
    while (in >> value) values.push_back(value);
    if (!in.eof()) throw OutOfRange("bad colour list '" + text + "'");
    return values;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> items;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ','))
        if (!item.empty()) items.push_back(item);
    if (items.empty()) throw OutOfRange("empty list '" + text + "'");
    return items;
}

int default_cutoff(int fallback) {
    if (const char* env = std::getenv("PMM_CUTOFF")) {
        int value = std::atoi(env);
        if (value >= 1) return value;
    }
    return fallback;
}

std::vector<TripleInstance> load_triples(const std::string& path, int n) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open triple file '" + path + "'");
    std::vector<TripleInstance> triples;
    std::string line;
    long line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream body(line);
        int m = 0;
        if (!(body >> m) || m < 1) throw ParseError(line_number, "expected a position count");
        std::vector<int> positions(static_cast<std::size_t>(m));
        std::vector<std::pair<int, int>> valid_assign, rival_assign;
        for (int& p : positions)
            if (!(body >> p)) throw ParseError(line_number, "expected " + std::to_string(m) + " positions");
        for (int a = 0; a < m; ++a) {
            int colour = 0;
            if (!(body >> colour)) throw ParseError(line_number, "expected valid colours");
            valid_assign.emplace_back(positions[static_cast<std::size_t>(a)], colour);
        }
        for (int a = 0; a < m; ++a) {
            int colour = 0;
            if (!(body >> colour)) throw ParseError(line_number, "expected rival colours");
            rival_assign.emplace_back(positions[static_cast<std::size_t>(a)], colour);
        }
        std::string extra;
        if (body >> extra) throw ParseError(line_number, "trailing token '" + extra + "'");
        try {
            triples.emplace_back(PartialColouring(n, std::move(valid_assign)),
                                 PartialColouring(n, std::move(rival_assign)));
        } catch (const Error& e) {
            throw ParseError(line_number, e.what());
        }
    }
    return triples;
}

void print_triple_report(std::ostream& out, const TripleInstance& triple, int index, int cutoff) {
    SetSizeReport report = enumerate_set_sizes(triple, cutoff);
    out << "triple_index=" << index << '\n';
    out << report.to_key_value();
    out << "claim_sizes_finite=" << (check_claim_sizes_finite(triple, report) ? "true" : "false")
        << '\n';
    out << "bonferroni_holds="
        << (report.union_size >= report.bonferroni_lower ? "true" : "false") << '\n';
    mpq_class fraction(report.union_size, factorial(report.n));
    fraction.canonicalize();
    out << "discriminating_fraction=" << fraction.get_str() << '\n';
    mpq_class reference(report.m, 7 * report.n);
    reference.canonicalize();
    // The |I|/(7n) target holds for large n only; reported, never asserted.
    out << "asymptotic_fraction_reference=" << reference.get_str() << '\n';
}

struct GenArgs {
    std::int64_t n = 0;
    std::string count = "auto";
    std::uint64_t seed = 0;
    std::string output;
};

struct AnswerArgs {
    std::string queries;
    std::string codeword;
    std::string output;
};

struct DecodeArgs {
    std::string queries;
    std::string feedback;
};

struct CertifyArgs {
    std::string queries;
    std::string level;
    bool exhaustive = false;
    std::int64_t mc_trials = 0;
    std::uint64_t seed = 0;
    int cutoff = 0;
    unsigned threads = 0;
};

struct BoundsArgs {
    std::int64_t n = 0;
    std::int64_t m = -1;
    std::string triples;
    int cutoff = 0;
};

struct BenchArgs {
    std::string n_list;
    std::string c_list;
    std::int64_t trials = 0;
    std::uint64_t seed = 0;
    std::string output;
    unsigned threads = 0;
};

int run_gen(const GenArgs& args) {
    std::optional<std::int64_t> count;
    if (args.count != "auto") {
        std::int64_t value = 0;
        try {
            value = std::stoll(args.count);
        } catch (const std::exception&) {
            return fail_with("error: bad --count '" + args.count + "'", 1);
        }
        count = value;
    }
    if (args.n > (1 << 20)) return fail_with("error: board size too large", 1);
    QuerySet set = generate_query_set(static_cast<int>(args.n), count, args.seed);
    std::ostringstream out;
    write_query_set(set, out);
    save_text(args.output, out.str());
    return 0;
}

int run_answer(const AnswerArgs& args) {
    QuerySet set = load_query_set(args.queries);
    Permutation codeword(set.n, parse_colour_list(args.codeword));
    FeedbackVector feedback = answer_all(set, codeword);
    std::ostringstream out;
    write_feedback(feedback, out);
    save_text(args.output, out.str());
    return 0;
}

int run_decode(const DecodeArgs& args) {
    QuerySet set = load_query_set(args.queries);
    FeedbackVector feedback = load_feedback(args.feedback);
    DecodeTranscript transcript = decode(set, feedback);
    std::cout << transcript_log(transcript);
    if (!transcript.succeeded())
        return fail_with("stuck: " + std::to_string(transcript.unresolved.size()) +
                             " positions unresolved",
                         2);
    return 0;
}

int run_certify(const CertifyArgs& args) {
    QuerySet set = load_query_set(args.queries);
    CertLevel level;
    if (args.level == "unique-feedback")
        level = CertLevel::UniqueFeedback;
    else if (args.level == "decode-all")
        level = CertLevel::DecodeAll;
    else if (args.level == "lemma-triples")
        level = CertLevel::LemmaTriples;
    else
        return fail_with("error: unknown level '" + args.level + "'", 1);

    Certificate certificate;
    if (args.mc_trials > 0) {
        certificate = monte_carlo_certify(set, level, args.mc_trials, args.seed);
    } else {
        CertifyOptions options;
        options.cutoff = args.cutoff ? args.cutoff : default_cutoff(kExhaustiveCutoff);
        options.triple_cutoff = args.cutoff ? args.cutoff : default_cutoff(kTripleCutoff);
        options.threads = args.threads;
        switch (level) {
            case CertLevel::UniqueFeedback: certificate = certify_unique_feedback(set, options); break;
            case CertLevel::DecodeAll: certificate = certify_decode_all(set, options); break;
            case CertLevel::LemmaTriples: certificate = certify_lemma_triples(set, options); break;
        }
    }
    std::cout << certificate_report(certificate);
    if (!certificate.pass)
        return fail_with("certify-fail: level=" + to_string(certificate.level), 3);
    return 0;
}

int run_bounds_report(const BoundsArgs& args) {
    if (args.n < 2) return fail_with("error: --n must be at least 2", 1);
    auto n = static_cast<int>(args.n);
    int cutoff = args.cutoff ? args.cutoff : default_cutoff(kExhaustiveCutoff);
    std::ostringstream out;
    out << "n=" << n << '\n';
    if (args.m >= 0) out << "m=" << args.m << '\n';
    out << "required_query_count=" << required_query_count(n) << '\n';
    mpq_class failure = failure_probability_bound(n);
    out << "failure_probability_bound=" << failure.get_str() << '\n';
    out << "failure_probability_lt_1=" << (failure < 1 ? "true" : "false") << '\n';
    for (std::int64_t k = 1; k <= std::min<std::int64_t>(n, 8); ++k) {
        PerTripleBound bound = per_triple_failure_bound(n, k);
        out << "per_triple_bound[k=" << k << "]=" << bound.value.get_str() << '\n';
        out << "per_triple_tail_verified[k=" << k << "]="
            << (bound.tail_bound_verified ? "true" : "false") << '\n';
    }
    if (args.m >= 0) {
        out << "claim_a[m=" << args.m << "]="
            << (check_claim_a(n, static_cast<int>(args.m)) ? "true" : "false") << '\n';
    } else {
        for (int m = 0; m <= n; ++m)
            out << "claim_a[m=" << m << "]=" << (check_claim_a(n, m) ? "true" : "false") << '\n';
    }

    std::vector<TripleInstance> triples;
    if (!args.triples.empty()) {
        triples = load_triples(args.triples, n);
    } else if (args.m >= 1 && n <= cutoff) {
        triples.push_back(TripleInstance::canonical(n, static_cast<int>(args.m)));
    }
    if (n <= cutoff) {
        for (std::size_t i = 0; i < triples.size(); ++i)
            print_triple_report(out, triples[i], static_cast<int>(i), cutoff);
    } else if (!triples.empty()) {
        out << "triple_enumeration=skipped (n above cutoff " << cutoff << ")\n";
    }
    std::cout << out.str();
    return 0;
}

int run_bench_command(const BenchArgs& args) {
    std::vector<std::int64_t> board_sizes;
    for (const std::string& token : split_list(args.n_list)) {
        try {
            board_sizes.push_back(std::stoll(token));
        } catch (const std::exception&) {
            return fail_with("error: bad board size '" + token + "'", 1);
        }
    }
    std::vector<BenchRow> rows =
        run_bench(board_sizes, split_list(args.c_list), args.trials, args.seed, args.threads);
    save_text(args.output, bench_csv(rows));
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"Static permutation-codeword query sets: generate, answer, decode, certify"};
    app.require_subcommand(1);

    GenArgs gen_args;
    CLI::App* gen = app.add_subcommand("gen", "generate a random query set");
    gen->add_option("--n", gen_args.n, "board size (positions = colours)")->required();
    gen->add_option("--count", gen_args.count, "query count, or 'auto' for ceil(28 n ln n)");
    gen->add_option("--seed", gen_args.seed, "64-bit generator seed")->required();
    gen->add_option("-o,--output", gen_args.output, "query-set file to write")->required();

    AnswerArgs answer_args;
    CLI::App* answer = app.add_subcommand("answer", "answer every query for a codeword");
    answer->add_option("--queries", answer_args.queries, "query-set file")->required();
    answer->add_option("--codeword", answer_args.codeword, "codeword, e.g. \"2 3 1\"")->required();
    answer->add_option("-o,--output", answer_args.output, "feedback file to write")->required();

    DecodeArgs decode_args;
    CLI::App* decode_cmd = app.add_subcommand("decode", "recover the codeword from feedback");
    decode_cmd->add_option("--queries", decode_args.queries, "query-set file")->required();
    decode_cmd->add_option("--feedback", decode_args.feedback, "feedback file")->required();

    CertifyArgs certify_args;
    CLI::App* certify = app.add_subcommand("certify", "certify a query set at a rigor level");
    certify->add_option("--queries", certify_args.queries, "query-set file")->required();
    certify->add_option("--level", certify_args.level,
                        "unique-feedback | decode-all | lemma-triples")
        ->required();
    CLI::Option* exhaustive = certify->add_flag("--exhaustive", certify_args.exhaustive,
                                                "sweep the whole instance space (default)");
    certify->add_option("--mc", certify_args.mc_trials, "Monte Carlo with this many trials")
        ->excludes(exhaustive);
    certify->add_option("--seed", certify_args.seed, "Monte Carlo seed");
    certify->add_option("--cutoff", certify_args.cutoff, "override the exhaustive cutoff");
    certify->add_option("--threads", certify_args.threads, "worker threads (0 = hardware)");

    BoundsArgs bounds_args;
    CLI::App* bounds = app.add_subcommand("bounds-report", "report the proof inequalities at n");
    bounds->add_option("--n", bounds_args.n, "board size")->required();
    bounds->add_option("--m", bounds_args.m, "assigned-position count");
    bounds->add_option("--triples", bounds_args.triples,
                       "triple file: lines of 'm positions valid rival'");
    bounds->add_option("--cutoff", bounds_args.cutoff, "override the enumeration cutoff");

    BenchArgs bench_args;
    CLI::App* bench = app.add_subcommand("bench", "success-rate sweep over (n, c) cells");
    bench->add_option("--n-list", bench_args.n_list, "board sizes, e.g. \"4,8,16\"")->required();
    bench->add_option("--c-list", bench_args.c_list, "budget multipliers, e.g. \"1,2,4,28\"")
        ->required();
    bench->add_option("--trials", bench_args.trials, "codewords per cell")->required();
    bench->add_option("--seed", bench_args.seed, "sweep seed; cells derive from (seed, n, c)")
        ->required();
    bench->add_option("-o,--output", bench_args.output, "CSV file to write")->required();
    bench->add_option("--threads", bench_args.threads, "worker threads (0 = hardware)");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("pmm");
    for (const std::string& arg : args) argv.push_back(arg.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : fail_with("error: usage", 1);
    }

    try {
        if (gen->parsed()) return run_gen(gen_args);
        if (answer->parsed()) return run_answer(answer_args);
        if (decode_cmd->parsed()) return run_decode(decode_args);
        if (certify->parsed()) return run_certify(certify_args);
        if (bounds->parsed()) return run_bounds_report(bounds_args);
        if (bench->parsed()) return run_bench_command(bench_args);
    } catch (const CutoffExceeded& e) {
        return fail_with(std::string("cutoff-exceeded: ") + e.what(), 4);
    } catch (const Error& e) {
        return fail_with(std::string("error: ") + e.what(), 1);
    } catch (const std::exception& e) {
        return fail_with(std::string("error: ") + e.what(), 1);
    }
    return fail_with("error: no subcommand", 1);
}

}  // namespace pmm::cli
