#include "pmm/query_set.hpp"

#include <charconv>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "pmm/bounds.hpp"

namespace pmm {

Permutation random_permutation(int n, Pcg32& rng) {
    if (n < 1) throw OutOfRange("board size must be at least 1, got " + std::to_string(n));
    std::vector<int> values(static_cast<std::size_t>(n));
    std::iota(values.begin(), values.end(), 1);
    for (std::uint32_t i = static_cast<std::uint32_t>(n) - 1; i > 0; --i)
        std::swap(values[i], values[rng.next_below(i + 1)]);
    return Permutation::unchecked(std::move(values));
}

QuerySet generate_query_set(int n, std::optional<std::int64_t> count, std::uint64_t seed) {
    if (n < 2) throw OutOfRange("query sets need n >= 2, got " + std::to_string(n));
    std::int64_t resolved = count ? *count : required_query_count(n);
    if (resolved < 1)
        throw OutOfRange("query count must be positive, got " + std::to_string(resolved));

    QuerySet set;
    set.n = n;
    set.seed = seed;
    set.generator_id = Pcg32::kGeneratorId;
    set.queries.reserve(static_cast<std::size_t>(resolved));
    Pcg32 rng(seed);
    for (std::int64_t i = 0; i < resolved; ++i)
        set.queries.push_back(random_permutation(n, rng));
    return set;
}

void write_query_set(const QuerySet& q, std::ostream& out) {
    for (const Permutation& query : q.queries)
        if (query.size() != q.n)
            throw SizeMismatch("query set labelled n=" + std::to_string(q.n) +
                               " contains a permutation of size " + std::to_string(query.size()));
    out << "PMM v1 n=" << q.n << " count=" << q.queries.size();
    if (q.seed) out << " seed=" << *q.seed << " gen=" << q.generator_id;
    out << '\n';
    for (const Permutation& query : q.queries) {
        auto values = query.values();
        for (std::size_t i = 0; i < values.size(); ++i) out << (i ? " " : "") << values[i];
        out << '\n';
    }
}

namespace {

bool take_field(std::istringstream& in, const std::string& key, std::string& value) {
    std::string token;
    if (!(in >> token)) return false;
    if (token.rfind(key + "=", 0) != 0) return false;
    value = token.substr(key.size() + 1);
    return true;
}

template <typename Int>
Int parse_int(const std::string& text, long line, const std::string& what) {
    Int value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw ParseError(line, "bad " + what + " '" + text + "'");
    return value;
}

}  // namespace

QuerySet read_query_set(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw ParseError(1, "missing header");
    std::istringstream head(header);
    std::string magic, version, field;
    if (!(head >> magic >> version) || magic != "PMM" || version != "v1")
        throw ParseError(1, "expected 'PMM v1' header");
    if (!take_field(head, "n", field)) throw ParseError(1, "expected n=<n>");
    int n = parse_int<int>(field, 1, "board size");
    if (n < 1) throw ParseError(1, "board size must be at least 1");
    if (!take_field(head, "count", field)) throw ParseError(1, "expected count=<q>");
    auto count = parse_int<std::int64_t>(field, 1, "query count");
    if (count < 0) throw ParseError(1, "query count must be nonnegative");

    QuerySet set;
    set.n = n;
    std::string rest;
    if (head >> rest) {
        if (rest.rfind("seed=", 0) != 0) throw ParseError(1, "unexpected token '" + rest + "'");
        set.seed = parse_int<std::uint64_t>(rest.substr(5), 1, "seed");
        if (!take_field(head, "gen", set.generator_id)) throw ParseError(1, "expected gen=<id>");
        if (head >> rest) throw ParseError(1, "trailing token '" + rest + "'");
    }

    set.queries.reserve(static_cast<std::size_t>(count));
    std::string line;
    for (std::int64_t row = 0; row < count; ++row) {
        long line_number = row + 2;
        if (!std::getline(in, line))
            throw ParseError(line_number, "expected " + std::to_string(count) +
                                              " query lines, found " + std::to_string(row));
        std::istringstream body(line);
        std::vector<int> values;
        values.reserve(static_cast<std::size_t>(n));
        std::string token;
        while (body >> token)
            values.push_back(parse_int<int>(token, line_number, "colour"));
        if (static_cast<int>(values.size()) != n)
            throw ParseError(line_number, "expected " + std::to_string(n) + " colours, found " +
                                              std::to_string(values.size()));
        try {
            set.queries.emplace_back(n, std::move(values));
        } catch (const NotABijection& e) {
            throw ParseError(line_number, e.what());
        }
    }
    if (std::getline(in, line) && !line.empty())
        throw ParseError(count + 2, "trailing content after the last query");
    return set;
}

}  // namespace pmm
