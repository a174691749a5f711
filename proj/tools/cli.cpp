#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <memory>
#include <optional>

#include <CLI11.hpp>

#include "esc/arith.hpp"
#include "esc/model.hpp"
#include "esc/structure.hpp"
#include "esc/survey.hpp"
#include "esc/version.hpp"

namespace esc::cli {

namespace {

// Input problems that should end the command with exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Format { Table, Csv, Json, Jsonl };

const std::map<std::string, Format> kFormats = {
    {"table", Format::Table}, {"csv", Format::Csv}, {"json", Format::Json}, {"jsonl", Format::Jsonl}};

Prime parse_search_prime(const std::string& text) {
    const Natural n = parse_natural(text);
    if ((n >> 64) != 0 || !is_prime(n)) throw UsageError(text + " is not prime");
    if (n >= kMaxSearchPrime) throw UsageError(text + " is too large: p must be below 2^30");
    return Prime::make(n);
}

std::uint64_t parse_bound(const std::string& text, const char* name) {
    const Natural n = parse_natural(text);
    if (n >= kMaxSearchPrime) throw UsageError(std::string("--") + name + " must be below 2^30");
    return static_cast<std::uint64_t>(n);
}

unsigned default_jobs() {
    const char* env = std::getenv("ESC_JOBS");
    if (env == nullptr || *env == '\0') return 1;
    const Natural n = parse_natural(env);
    if (n == 0 || n > 1024) throw UsageError("ESC_JOBS must be between 1 and 1024");
    return static_cast<unsigned>(n);
}

std::string equation_text(const Solution& s) {
    return "4/" + to_string(s.p()) + " = 1/" + to_string(s.x()) + " + 1/" + to_string(s.y()) + " + 1/" +
           to_string(s.z());
}

// Opens --out when given; otherwise writes go to the fallback stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) {
        if (path.empty()) {
            stream_ = &fallback;
            return;
        }
        file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
        if (!*file_) throw UsageError("cannot open '" + path + "' for writing");
        stream_ = file_.get();
    }

    std::ostream& stream() { return *stream_; }
    bool to_file() const { return file_ != nullptr; }

    void close(const std::string& path) {
        if (!file_) return;
        file_->close();
        if (!*file_) throw UsageError("failed writing '" + path + "'");
    }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_ = nullptr;
};

void render_aggregate(const survey::Aggregate& agg, Format format, std::ostream& out) {
    const survey::Rational type1_rate{agg.eq5_type1_satisfied, agg.type1};
    const survey::Rational type2_rate{agg.eq5_type2_satisfied, agg.type2};
    constexpr std::string_view kPooling = "pooled over all solutions of all primes in the input";
    if (format == Format::Json) {
        auto rate = [](const survey::Rational& r) {
            return "{\"num\":" + to_string(r.num) + ",\"den\":" + to_string(r.den) + ",\"decimal\":\"" +
                   survey::to_decimal(r, 4) + "\"}";
        };
        out << "{\"version\":\"" << kVersion << "\",\"primes_scanned\":" << agg.primes_scanned
            << ",\"solutions_total\":" << agg.solutions_total << ",\"type1\":" << agg.type1
            << ",\"type2\":" << agg.type2 << ",\"eq5_satisfied\":" << agg.eq5_satisfied
            << ",\"eq5_rate\":" << rate(agg.eq5_rate) << ",\"eq5_rate_type1\":" << rate(type1_rate)
            << ",\"eq5_rate_type2\":" << rate(type2_rate) << ",\"failures\":[";
        for (std::size_t i = 0; i < agg.failures.size(); ++i) out << (i ? "," : "") << agg.failures[i];
        out << "],\"first_only\":" << (agg.first_only ? "true" : "false") << ",\"pooling\":\"" << kPooling
            << "\"}\n";
        return;
    }
    auto rate_line = [](const survey::Rational& r) {
        if (!r.defined()) return std::string("n/a");
        return to_string(r.num) + "/" + to_string(r.den) + " = " + survey::to_decimal(r, 4);
    };
    out << "primes scanned:   " << agg.primes_scanned << "\n"
        << "solutions:        " << agg.solutions_total << "\n"
        << "  type I:         " << agg.type1 << "\n"
        << "  type II:        " << agg.type2 << "\n"
        << "eq5 satisfied:    " << agg.eq5_satisfied << "\n"
        << "eq5_rate:         " << rate_line(agg.eq5_rate) << "\n"
        << "  type I:         " << rate_line(type1_rate) << "\n"
        << "  type II:        " << rate_line(type2_rate) << "\n"
        << "failures:         " << agg.failures.size();
    for (std::size_t i = 0; i < agg.failures.size() && i < 20; ++i) out << (i ? ", " : " (") << agg.failures[i];
    if (!agg.failures.empty()) out << (agg.failures.size() > 20 ? ", ...)" : ")");
    out << "\n"
        << "pooling:          " << kPooling << "\n";
    if (agg.first_only) out << "note: some records hold only a first solution; counts are not complete\n";
}

int cmd_solve(const std::string& p_text, const std::string& strategy_name, bool all, Format format,
              std::uint64_t oracle_cap, std::ostream& out, std::ostream& err) {
    const Prime p = parse_search_prime(p_text);
    const std::string name = strategy_name.empty() ? (all ? "two-var" : "hybrid") : strategy_name;
    const auto strategy = survey::parse_strategy(name);
    if (strategy == survey::Strategy::Oracle && p.value() > oracle_cap) {
        throw UsageError("p = " + p_text + " exceeds the oracle cap " + std::to_string(oracle_cap) +
                         " (raise --oracle-cap)");
    }
    const auto found = survey::solve_prime(p, strategy, all);
    if (found.empty()) {
        err << "no solution found for p = " << p.value() << " with strategy " << name << "\n";
        return kNoSolution;
    }
    switch (format) {
    case Format::Table:
        for (const auto& s : found) out << equation_text(s) << "\n";
        break;
    case Format::Csv:
        out << kSolutionCsvHeader << "\n";
        for (const auto& s : found) out << to_csv_row(survey::annotate(s)) << "\n";
        break;
    case Format::Jsonl:
        for (const auto& s : found) out << to_json(survey::annotate(s)) << "\n";
        break;
    case Format::Json:
        out << "{\"version\":\"" << kVersion << "\",\"p\":" << p.value() << ",\"strategy\":\"" << name
            << "\",\"all\":" << (all ? "true" : "false") << ",\"solutions\":[";
        for (std::size_t i = 0; i < found.size(); ++i) out << (i ? "," : "") << to_json(survey::annotate(found[i]));
        out << "]}\n";
        break;
    }
    return kOk;
}

int cmd_verify(const std::vector<std::string>& values, Format format, std::ostream& out) {
    const Natural p = parse_natural(values[0]);
    if (p >= kMaxSearchPrime) throw UsageError("p must be below 2^30");
    const Solution s = make_solution(p, parse_natural(values[1]), parse_natural(values[2]), parse_natural(values[3]));
    const auto report = structure::verify_all(s);
    if (format == Format::Json) {
        out << "{\"version\":\"" << kVersion << "\",\"p\":" << to_string(s.p()) << ",\"x\":" << to_string(s.x())
            << ",\"y\":" << to_string(s.y()) << ",\"z\":" << to_string(s.z()) << ",\"type\":";
        if (report.type) {
            out << "\"" << to_string(*report.type) << "\"";
        } else {
            out << "null";
        }
        out << ",\"all_pass\":" << (report.all_pass() ? "true" : "false")
            << ",\"checks\":" << structure::to_json(report) << "}\n";
    } else {
        out << equation_text(s);
        if (report.type) out << "  (type " << to_string(*report.type) << ")";
        out << "\n";
        for (const auto& c : report.checks) {
            out << (c.pass ? "PASS  " : "FAIL  ") << c.check;
            for (const auto& w : c.witness) {
                out << "  " << w.key << "=";
                std::visit(
                    [&out](const auto& v) {
                        using T = std::decay_t<decltype(v)>;
                        if constexpr (std::is_same_v<T, bool>) {
                            out << (v ? "true" : "false");
                        } else if constexpr (std::is_same_v<T, std::string>) {
                            out << v;
                        } else {
                            out << to_string(v);
                        }
                    },
                    w.value);
            }
            out << "\n";
        }
    }
    return report.all_pass() ? kOk : kCheckFailed;
}

struct ScanArgs {
    std::string from, to, strategy = "hybrid", out_path;
    bool all = false, no_timing = false;
    std::optional<unsigned> jobs;
    std::size_t chunk_size = 1024;
    std::uint64_t oracle_cap = survey::kDefaultOracleCap;
    std::string summary_format = "table";
};

int cmd_scan(const ScanArgs& a, std::ostream& out, std::ostream& err) {
    const std::uint64_t lo = parse_bound(a.from, "from");
    const std::uint64_t hi = parse_bound(a.to, "to");
    if (lo > hi) throw UsageError("--from " + a.from + " exceeds --to " + a.to);
    const auto strategy = survey::parse_strategy(a.strategy);
    if (strategy == survey::Strategy::Oracle && hi > a.oracle_cap) {
        throw UsageError("--to " + a.to + " exceeds the oracle cap " + std::to_string(a.oracle_cap) +
                         " (raise --oracle-cap)");
    }
    if (a.chunk_size == 0) throw UsageError("--chunk-size must be positive");
    survey::ScanOptions options;
    options.jobs = a.jobs ? *a.jobs : default_jobs();
    if (options.jobs == 0) throw UsageError("--jobs must be positive");
    options.chunk_size = a.chunk_size;

    Sink sink(a.out_path, out);
    survey::Aggregate agg;
    survey::scan_stream(lo, hi, strategy, a.all, options, [&](const survey::SurveyRecord& r) {
        sink.stream() << survey::to_jsonl(r, !a.no_timing) << "\n";
        agg.add(r);
    });
    sink.close(a.out_path);

    std::ostream& summary = sink.to_file() ? out : err;
    render_aggregate(agg, a.summary_format == "json" ? Format::Json : Format::Table, summary);
    if (!agg.failures.empty()) {
        err << "no solution found for " << agg.failures.size() << " prime(s); first is " << agg.failures.front()
            << "\n";
        return kNoSolution;
    }
    return kOk;
}

int cmd_stats(const std::string& path, Format format, std::ostream& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open '" + path + "'");
    survey::Aggregate agg;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            agg.add(survey::parse_jsonl(line));
        } catch (const Error& e) {
            throw UsageError(path + ":" + std::to_string(line_no) + ": malformed record: " + e.what());
        }
    }
    render_aggregate(agg, format, out);
    return kOk;
}

int cmd_figure2(const std::string& from, const std::string& to, const std::string& out_path,
                std::uint64_t oracle_cap, std::ostream& out) {
    const std::uint64_t lo = parse_bound(from, "from");
    const std::uint64_t hi = parse_bound(to, "to");
    if (lo > hi) throw UsageError("--from " + from + " exceeds --to " + to);
    if (hi > oracle_cap) {
        throw UsageError("--to " + to + " exceeds the oracle cap " + std::to_string(oracle_cap) +
                         " (raise --oracle-cap)");
    }
    const auto rows = survey::figure2_dataset(lo, hi);
    Sink sink(out_path, out);
    sink.stream() << "p,y,mod4\n";
    for (const auto& r : rows) sink.stream() << r.p << "," << to_string(r.y) << "," << r.mod4 << "\n";
    sink.close(out_path);
    return kOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Search, verify and survey solutions of 4/p = 1/x + 1/y + 1/z", "esc"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    std::string format_name = "table";
    std::string strategy_name;
    std::string p_text;
    bool all = false;
    std::uint64_t oracle_cap = survey::kDefaultOracleCap;

    auto add_solve_options = [&](CLI::App* cmd) {
        cmd->add_option("p", p_text, "prime p")->required();
        cmd->add_option("--strategy", strategy_name,
                        "oracle | two-var | one-var | hybrid (default: hybrid, two-var with --all)");
        cmd->add_option("--format", format_name, "table | csv | json | jsonl")
            ->check(CLI::IsMember({"table", "csv", "json", "jsonl"}));
        cmd->add_option("--oracle-cap", oracle_cap, "largest p the oracle strategy accepts");
    };

    auto* solve = app.add_subcommand("solve", "find a solution (or all of them) for a prime");
    add_solve_options(solve);
    solve->add_flag("--all", all, "list every solution");

    auto* enumerate = app.add_subcommand("enumerate", "list every solution for a prime (solve --all)");
    add_solve_options(enumerate);

    std::vector<std::string> verify_values;
    auto* verify = app.add_subcommand("verify", "check a triple against every structural fact");
    verify->add_option("values", verify_values, "p x y z")->required()->expected(4);
    verify->add_option("--format", format_name, "table | json")->check(CLI::IsMember({"table", "json"}));

    ScanArgs scan_args;
    auto* scan = app.add_subcommand("scan", "survey every prime in a range, writing JSONL records");
    scan->add_option("--from", scan_args.from, "lower bound (inclusive)")->required();
    scan->add_option("--to", scan_args.to, "upper bound (inclusive)")->required();
    scan->add_option("--strategy", scan_args.strategy, "oracle | two-var | one-var | hybrid");
    scan->add_flag("--all", scan_args.all, "record every solution instead of the first");
    scan->add_option("--jobs", scan_args.jobs, "worker threads (default: $ESC_JOBS or 1)");
    scan->add_option("--out", scan_args.out_path, "JSONL output file (default: stdout)");
    scan->add_option("--oracle-cap", scan_args.oracle_cap, "largest p the oracle strategy accepts");
    scan->add_option("--chunk-size", scan_args.chunk_size, "primes per work unit");
    scan->add_flag("--no-timing", scan_args.no_timing, "write elapsed_ns as 0");
    scan->add_option("--format", scan_args.summary_format, "summary format: table | json")
        ->check(CLI::IsMember({"table", "json"}));

    std::string in_path;
    auto* stats = app.add_subcommand("stats", "aggregate a JSONL scan");
    stats->add_option("--in", in_path, "JSONL file")->required();
    stats->add_option("--format", format_name, "table | json")->check(CLI::IsMember({"table", "json"}));

    std::string fig_from, fig_to, fig_out;
    auto* figure2 = app.add_subcommand("figure2", "CSV of (p, y, p mod 4) for every type I solution");
    figure2->add_option("--from", fig_from, "lower bound (inclusive)")->required();
    figure2->add_option("--to", fig_to, "upper bound (inclusive)")->required();
    figure2->add_option("--out", fig_out, "CSV output file (default: stdout)");
    figure2->add_option("--oracle-cap", oracle_cap, "largest p accepted");

    std::vector<const char*> argv{"esc"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        const Format format = kFormats.at(format_name);
        if (*solve) return cmd_solve(p_text, strategy_name, all, format, oracle_cap, out, err);
        if (*enumerate) return cmd_solve(p_text, strategy_name, true, format, oracle_cap, out, err);
        if (*verify) return cmd_verify(verify_values, format, out);
        if (*scan) return cmd_scan(scan_args, out, err);
        if (*stats) return cmd_stats(in_path, format, out);
        if (*figure2) return cmd_figure2(fig_from, fig_to, fig_out, oracle_cap, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const NoSolutionError& e) {
        err << "error: " << e.what() << "\n";
        return kNoSolution;
    } catch (const Error& e) {
        err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

} // namespace esc::cli
