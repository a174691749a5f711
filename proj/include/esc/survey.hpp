#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "esc/model.hpp"

namespace esc::survey {

enum class Strategy { Oracle, TwoVar, OneVar, Hybrid };

std::string_view to_string(Strategy s) noexcept;
/// "oracle", "two-var", "one-var", "hybrid"; anything else throws Error(UnknownStrategy).
Strategy parse_strategy(std::string_view name);

/// Tags a solution with its type and whether x = ceil(yp/(4y-p)).
AnnotatedSolution annotate(const Solution& s);

/// Solutions for one prime under a strategy, in (x, y) order. With
/// all = false at most one solution comes back. Hybrid with all = true
/// returns every one-variable hit, or every two-variable hit when there are
/// none. Hybrid never throws NoSolutionError here; it returns an empty list.
std::vector<Solution> solve_prime(Prime p, Strategy strategy, bool all);

struct SurveyRecord {
    Prime p;
    Strategy strategy;
    bool exhaustive;  // produced with enumerate_all = true
    std::vector<AnnotatedSolution> solutions;
    std::optional<Natural> first_y;
    std::chrono::nanoseconds elapsed{0};
};

struct ScanOptions {
    unsigned jobs = 1;
    std::size_t chunk_size = 1024;  // primes per work unit; never changes output
};

/// One record per prime of [lo, hi], handed to sink in ascending p order
/// regardless of jobs. Throws Error(Magnitude) for hi >= 2^30 and
/// Error(InvalidInput) for lo > hi.
void scan_stream(std::uint64_t lo, std::uint64_t hi, Strategy strategy, bool enumerate_all,
                 const ScanOptions& options, const std::function<void(const SurveyRecord&)>& sink);

std::vector<SurveyRecord> scan(std::uint64_t lo, std::uint64_t hi, Strategy strategy, bool enumerate_all,
                               const ScanOptions& options = {});

/// Exact fraction; 0/0 stands for "undefined". Equality is by value.
struct Rational {
    Natural num = 0;
    Natural den = 0;

    bool defined() const noexcept { return den != 0; }
    Rational reduced() const noexcept;
    friend bool operator==(const Rational& a, const Rational& b) noexcept;
};

/// Decimal with the given number of places, rounded half up; "n/a" for 0/0.
std::string to_decimal(const Rational& r, int places);
/// num >= lo * den, exact.
bool at_least(const Rational& r, const Rational& lo) noexcept;

struct Aggregate {
    std::uint64_t primes_scanned = 0;
    std::uint64_t solutions_total = 0;
    std::uint64_t type1 = 0;
    std::uint64_t type2 = 0;
    std::uint64_t eq5_satisfied = 0;
    std::uint64_t eq5_type1_satisfied = 0;
    std::uint64_t eq5_type2_satisfied = 0;
    Rational eq5_rate;  // pooled over every solution of every record
    std::vector<std::uint64_t> failures;
    bool first_only = false;  // some record came from a first-solution scan

    void add(const SurveyRecord& r);
};

Aggregate aggregate(const std::vector<SurveyRecord>& records);

struct Figure2Row {
    std::uint64_t p;
    Natural y;
    unsigned mod4;

    friend bool operator==(const Figure2Row&, const Figure2Row&) = default;
};

/// One row per type I solution of each prime in [lo, hi], ascending (p, y).
std::vector<Figure2Row> figure2_dataset(std::uint64_t lo, std::uint64_t hi);

inline constexpr std::uint64_t kDefaultOracleCap = 50000;

/// For each prime in [lo, hi], the brute-force solutions with x = ceil(p/2).
/// Throws Error(Magnitude) when hi exceeds oracle_cap.
std::vector<std::pair<std::uint64_t, std::vector<Solution>>> special_x_survey(
    std::uint64_t lo, std::uint64_t hi, std::uint64_t oracle_cap = kDefaultOracleCap);

/// {"p":..,"strategy":..,"solutions":[{"x","y","z","type","eq5"}],"first_y":..,"elapsed_ns":..,"all":..}
/// With include_timing = false, elapsed_ns is written as 0.
std::string to_jsonl(const SurveyRecord& r, bool include_timing = true);

/// Parses and re-validates one JSONL line. Throws Error(InvalidInput) naming
/// the problem; the stored type/eq5 tags must agree with recomputation.
SurveyRecord parse_jsonl(std::string_view line);

} // namespace esc::survey
