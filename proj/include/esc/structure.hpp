#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "esc/model.hpp"

namespace esc::structure {

/// Type I: p divides z only. Type II: p divides y and z. Any other gcd pattern
/// throws Error(StructureViolation).
SolutionType classify(const Solution& s);

/// Throws Error(InternalInconsistency) if the result breaks an invariant.
Factorization factorize(const Solution& s);

/// Type I: x0 = y0 = 1 and z0 = p. Type II: x0 = y0 = z0 = 1 and p | c.
bool check_lemma5(const Factorization& f, SolutionType t, Prime p);

/// p divides at least one of x, y, z but not all three.
bool check_propositions(const Solution& s);

/// p^2 divides neither y nor z.
bool check_lemma3(const Solution& s);

using WitnessValue = std::variant<Natural, Integer, bool, std::string>;

struct Witness {
    std::string key;
    WitnessValue value;
};

struct CheckResult {
    std::string check;
    bool pass = false;
    std::vector<Witness> witness;
};

// Check names, in report order. These strings are a stable interface.
inline constexpr std::string_view kCheckNames[] = {
    "prop1", "prop2",  "lemma1_bounds", "lemma2", "lemma3",           "lemma4",
    "lemma5", "eq3_identity", "eq4_z",  "eq5_x",  "corollary1_bounds",
};

struct VerificationReport {
    std::vector<CheckResult> checks;
    std::optional<SolutionType> type;
    std::optional<Factorization> factorization;

    bool all_pass() const noexcept;
    const CheckResult* find(std::string_view name) const noexcept;
};

/// Runs every named check. Failures are report entries, never exceptions.
VerificationReport verify_all(const Solution& s);

/// [{"check":..,"pass":..,"witness":{..}}, ...]
std::string to_json(const VerificationReport& report);

} // namespace esc::structure
