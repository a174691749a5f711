#include "esc/survey.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include <json.hpp>

#include "esc/arith.hpp"
#include "esc/oracle.hpp"
#include "esc/reduction.hpp"
#include "esc/structure.hpp"

namespace esc::survey {

std::string_view to_string(Strategy s) noexcept {
    switch (s) {
    case Strategy::Oracle: return "oracle";
    case Strategy::TwoVar: return "two-var";
    case Strategy::OneVar: return "one-var";
    case Strategy::Hybrid: return "hybrid";
    }
    return "unknown";
}

Strategy parse_strategy(std::string_view name) {
    for (Strategy s : {Strategy::Oracle, Strategy::TwoVar, Strategy::OneVar, Strategy::Hybrid}) {
        if (name == to_string(s)) return s;
    }
    throw Error(ErrorKind::UnknownStrategy,
                "unknown strategy '" + std::string(name) + "' (expected oracle, two-var, one-var or hybrid)");
}

AnnotatedSolution annotate(const Solution& s) {
    return {s, structure::classify(s), reduction::x_from_y(s.prime(), s.y()) == s.x()};
}

namespace {

bool xy_order(const Solution& a, const Solution& b) {
    return a.x() != b.x() ? a.x() < b.x() : a.y() < b.y();
}

} // namespace

std::vector<Solution> solve_prime(Prime p, Strategy strategy, bool all) {
    std::vector<Solution> out;
    switch (strategy) {
    case Strategy::Oracle: out = oracle::enumerate_all(p); break;
    case Strategy::TwoVar: out = reduction::search_two_var(p); break;
    case Strategy::OneVar: out = reduction::search_one_var(p, !all); break;
    case Strategy::Hybrid:
        out = reduction::search_one_var(p, !all);
        if (out.empty()) out = reduction::search_two_var(p);
        break;
    }
    std::ranges::sort(out, xy_order);
    if (!all && out.size() > 1) out.erase(out.begin() + 1, out.end());
    return out;
}

namespace {

SurveyRecord survey_prime(std::uint64_t value, Strategy strategy, bool enumerate_all) {
    const Prime p = Prime::make(value);
    const auto start = std::chrono::steady_clock::now();
    std::vector<Solution> found = solve_prime(p, strategy, enumerate_all);
    const auto stop = std::chrono::steady_clock::now();

    SurveyRecord r{p, strategy, enumerate_all, {}, std::nullopt,
                   std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start)};
    r.solutions.reserve(found.size());
    for (const auto& s : found) r.solutions.push_back(annotate(s));
    if (!found.empty()) r.first_y = found.front().y();
    return r;
}

std::vector<std::vector<SurveyRecord>> run_wave(const std::vector<std::vector<std::uint64_t>>& chunks,
                                                Strategy strategy, bool enumerate_all, unsigned jobs) {
    std::vector<std::vector<SurveyRecord>> results(chunks.size());
    auto work = [&](std::size_t i) {
        results[i].reserve(chunks[i].size());
        for (std::uint64_t p : chunks[i]) results[i].push_back(survey_prime(p, strategy, enumerate_all));
    };
    const unsigned workers = std::min<unsigned>(jobs, static_cast<unsigned>(chunks.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < chunks.size(); ++i) work(i);
        return results;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = next++; i < chunks.size(); i = next++) work(i);
                } catch (...) {
                    errors[w] = std::current_exception();
                    next = chunks.size();
                }
            });
        }
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return results;
}

} // namespace

void scan_stream(std::uint64_t lo, std::uint64_t hi, Strategy strategy, bool enumerate_all,
                 const ScanOptions& options, const std::function<void(const SurveyRecord&)>& sink) {
    if (lo > hi) {
        throw Error(ErrorKind::InvalidInput,
                    "scan: empty range, from " + std::to_string(lo) + " exceeds to " + std::to_string(hi));
    }
    if (hi >= kMaxSearchPrime) throw Error(ErrorKind::Magnitude, "scan: upper bound must be below 2^30");

    const unsigned jobs = std::max(1u, options.jobs);
    const std::size_t chunk_size = std::max<std::size_t>(1, options.chunk_size);
    std::vector<std::vector<std::uint64_t>> wave;
    std::vector<std::uint64_t> current;

    auto flush = [&] {
        for (const auto& chunk : run_wave(wave, strategy, enumerate_all, jobs)) {
            for (const auto& record : chunk) sink(record);
        }
        wave.clear();
    };

    for_each_prime(lo, hi, [&](std::uint64_t p) {
        current.push_back(p);
        if (current.size() == chunk_size) {
            wave.push_back(std::move(current));
            current.clear();
            if (wave.size() == jobs) flush();
        }
    });
    if (!current.empty()) wave.push_back(std::move(current));
    if (!wave.empty()) flush();
}

std::vector<SurveyRecord> scan(std::uint64_t lo, std::uint64_t hi, Strategy strategy, bool enumerate_all,
                               const ScanOptions& options) {
    std::vector<SurveyRecord> out;
    scan_stream(lo, hi, strategy, enumerate_all, options, [&out](const SurveyRecord& r) { out.push_back(r); });
    return out;
}

Rational Rational::reduced() const noexcept {
    if (den == 0) return *this;
    const Natural g = gcd(num, den);
    return {num / g, den / g};
}

bool operator==(const Rational& a, const Rational& b) noexcept {
    if (!a.defined() || !b.defined()) return a.defined() == b.defined();
    return a.num * b.den == b.num * a.den;
}

bool at_least(const Rational& r, const Rational& lo) noexcept {
    return r.defined() && lo.defined() && r.num * lo.den >= lo.num * r.den;
}

std::string to_decimal(const Rational& r, int places) {
    if (!r.defined()) return "n/a";
    Natural scale = 1;
    for (int i = 0; i < places; ++i) scale *= 10;
    const Natural scaled = r.num * scale;
    Natural q = scaled / r.den;
    if (2 * (scaled % r.den) >= r.den) ++q;
    std::string out = esc::to_string(q / scale);
    if (places > 0) {
        std::string frac = esc::to_string(q % scale);
        out += "." + std::string(static_cast<std::size_t>(places) - frac.size(), '0') + frac;
    }
    return out;
}

void Aggregate::add(const SurveyRecord& r) {
    ++primes_scanned;
    if (!r.exhaustive) first_only = true;
    if (r.solutions.empty()) failures.push_back(r.p.value());
    for (const auto& s : r.solutions) {
        ++solutions_total;
        const bool type_i = s.type == SolutionType::TypeI;
        ++(type_i ? type1 : type2);
        if (s.eq5) {
            ++eq5_satisfied;
            ++(type_i ? eq5_type1_satisfied : eq5_type2_satisfied);
        }
    }
    eq5_rate = {eq5_satisfied, solutions_total};
}

Aggregate aggregate(const std::vector<SurveyRecord>& records) {
    Aggregate agg;
    for (const auto& r : records) agg.add(r);
    return agg;
}

std::vector<Figure2Row> figure2_dataset(std::uint64_t lo, std::uint64_t hi) {
    std::vector<Figure2Row> rows;
    for_each_prime(lo, hi, [&rows](std::uint64_t value) {
        const Prime p = Prime::make(value);
        const std::size_t first = rows.size();
        for (const auto& s : oracle::enumerate_all(p)) {
            if (structure::classify(s) == SolutionType::TypeI) {
                rows.push_back({value, s.y(), static_cast<unsigned>(value % 4)});
            }
        }
        std::sort(rows.begin() + static_cast<std::ptrdiff_t>(first), rows.end(),
                  [](const Figure2Row& a, const Figure2Row& b) { return a.y < b.y; });
    });
    return rows;
}

std::vector<std::pair<std::uint64_t, std::vector<Solution>>> special_x_survey(std::uint64_t lo, std::uint64_t hi,
                                                                              std::uint64_t oracle_cap) {
    if (lo <= hi && hi > oracle_cap) {
        throw Error(ErrorKind::Magnitude, "special_x_survey: upper bound " + std::to_string(hi) +
                                              " exceeds the oracle cap " + std::to_string(oracle_cap));
    }
    std::vector<std::pair<std::uint64_t, std::vector<Solution>>> out;
    for_each_prime(lo, hi, [&out](std::uint64_t value) {
        const Prime p = Prime::make(value);
        const Natural half = ceil_div(value, 2);
        std::vector<Solution> at_half;
        for (const auto& s : oracle::enumerate_all(p)) {
            if (s.x() == half) at_half.push_back(s);
        }
        out.emplace_back(value, std::move(at_half));
    });
    return out;
}

std::string to_jsonl(const SurveyRecord& r, bool include_timing) {
    std::string out = "{\"p\":" + std::to_string(r.p.value()) + ",\"strategy\":\"";
    out += to_string(r.strategy);
    out += "\",\"solutions\":[";
    for (std::size_t i = 0; i < r.solutions.size(); ++i) {
        const auto& a = r.solutions[i];
        if (i) out += ",";
        out += "{\"x\":" + esc::to_string(a.solution.x()) + ",\"y\":" + esc::to_string(a.solution.y()) +
               ",\"z\":" + esc::to_string(a.solution.z()) + ",\"type\":\"";
        out += esc::to_string(a.type);
        out += "\",\"eq5\":";
        out += a.eq5 ? "true" : "false";
        out += "}";
    }
    out += "],\"first_y\":" + (r.first_y ? esc::to_string(*r.first_y) : std::string("null"));
    out += ",\"elapsed_ns\":" + std::to_string(include_timing ? r.elapsed.count() : 0);
    out += ",\"all\":";
    out += r.exhaustive ? "true" : "false";
    out += "}";
    return out;
}

namespace {

[[noreturn]] void malformed(const std::string& what) {
    throw Error(ErrorKind::InvalidInput, what);
}

Natural unsigned_field(const nlohmann::json& obj, const char* key) {
    if (!obj.contains(key)) malformed(std::string("missing field '") + key + "'");
    const auto& v = obj.at(key);
    if (!v.is_number_unsigned()) malformed(std::string("field '") + key + "' is not a non-negative integer");
    return v.get<std::uint64_t>();
}

} // namespace

SurveyRecord parse_jsonl(std::string_view line) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
        malformed(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) malformed("record is not a JSON object");

    const Natural p_value = unsigned_field(j, "p");
    Prime p = [&] {
        try {
            return Prime::make(p_value);
        } catch (const Error& e) {
            malformed(e.what());
        }
    }();
    if (!j.contains("strategy") || !j.at("strategy").is_string()) malformed("missing field 'strategy'");
    Strategy strategy;
    try {
        strategy = parse_strategy(j.at("strategy").get<std::string>());
    } catch (const Error& e) {
        malformed(e.what());
    }
    bool exhaustive = true;
    if (j.contains("all")) {
        if (!j.at("all").is_boolean()) malformed("field 'all' is not a boolean");
        exhaustive = j.at("all").get<bool>();
    }

    SurveyRecord r{p, strategy, exhaustive, {}, std::nullopt,
                   std::chrono::nanoseconds(static_cast<std::int64_t>(unsigned_field(j, "elapsed_ns")))};

    if (!j.contains("solutions") || !j.at("solutions").is_array()) malformed("missing array 'solutions'");
    for (const auto& item : j.at("solutions")) {
        if (!item.is_object()) malformed("solution entry is not an object");
        const Natural x = unsigned_field(item, "x");
        const Natural y = unsigned_field(item, "y");
        Natural z = 0;
        if (!item.contains("z") || !item.at("z").is_number()) malformed("missing field 'z'");
        if (item.at("z").is_number_unsigned()) {
            z = item.at("z").get<std::uint64_t>();
        } else {
            // Beyond 64 bits the JSON reader only keeps a double; z is pinned by (p, x, y).
            const Natural four_xy = 4 * x * y, p_sum = Natural{p} * (x + y);
            if (four_xy <= p_sum) malformed("solution entry does not satisfy the equation");
            z = x * y * Natural{p} / (four_xy - p_sum);
        }
        Solution s = [&] {
            try {
                return make_solution(p, x, y, z);
            } catch (const Error& e) {
                malformed(e.what());
            }
        }();
        const AnnotatedSolution a = annotate(s);
        if (!item.contains("type") || !item.at("type").is_string() ||
            item.at("type").get<std::string>() != esc::to_string(a.type)) {
            malformed("type tag missing or inconsistent for (" + esc::to_string(x) + ", " + esc::to_string(y) + ")");
        }
        if (!item.contains("eq5") || !item.at("eq5").is_boolean() || item.at("eq5").get<bool>() != a.eq5) {
            malformed("eq5 flag missing or inconsistent for (" + esc::to_string(x) + ", " + esc::to_string(y) + ")");
        }
        if (!r.solutions.empty() && !xy_order(r.solutions.back().solution, s)) {
            malformed("solutions are not in (x, y) order");
        }
        r.solutions.push_back(a);
    }

    if (!j.contains("first_y")) malformed("missing field 'first_y'");
    if (!j.at("first_y").is_null()) r.first_y = unsigned_field(j, "first_y");
    return r;
}

} // namespace esc::survey
