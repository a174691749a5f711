#include "esc/structure.hpp"

#include <algorithm>

#include "esc/reduction.hpp"

namespace esc::structure {

SolutionType classify(const Solution& s) {
    const Natural p = s.p();
    const Natural gx = gcd(s.x(), p), gy = gcd(s.y(), p), gz = gcd(s.z(), p);
    if (gx == 1 && gy == 1 && gz == p) return SolutionType::TypeI;
    if (gx == 1 && gy == p && gz == p) return SolutionType::TypeII;
    throw Error(ErrorKind::StructureViolation,
                "gcd pattern (" + to_string(gx) + ", " + to_string(gy) + ", " + to_string(gz) +
                    ") of (x, y, z) with p = " + to_string(p) + " matches neither type");
}

Factorization factorize(const Solution& s) {
    const Natural x = s.x(), y = s.y(), z = s.z(), p = s.p();
    Factorization f;
    f.d = gcd(gcd(x, y), z);
    f.a = gcd(x, y) / f.d;
    f.b = gcd(x, z) / f.d;
    f.c = gcd(y, z) / f.d;
    f.x0 = x / (f.a * f.b * f.d);
    f.y0 = y / (f.a * f.c * f.d);
    f.z0 = z / (f.b * f.c * f.d);
    if (f.c % p == 0) f.c_star = f.c / p;
    check_factorization(f, s);
    return f;
}

bool check_lemma5(const Factorization& f, SolutionType t, Prime p) {
    const Natural pv = p;
    if (t == SolutionType::TypeI) return f.x0 == 1 && f.y0 == 1 && f.z0 == pv;
    return f.x0 == 1 && f.y0 == 1 && f.z0 == 1 && f.c % pv == 0;
}

bool check_propositions(const Solution& s) {
    const Natural p = s.p();
    const bool dx = s.x() % p == 0, dy = s.y() % p == 0, dz = s.z() % p == 0;
    return (dx || dy || dz) && !(dx && dy && dz);
}

bool check_lemma3(const Solution& s) {
    const Natural p2 = s.p() * s.p();
    return s.y() % p2 != 0 && s.z() % p2 != 0;
}

bool VerificationReport::all_pass() const noexcept {
    return std::ranges::all_of(checks, [](const CheckResult& c) { return c.pass; });
}

const CheckResult* VerificationReport::find(std::string_view name) const noexcept {
    auto it = std::ranges::find_if(checks, [name](const CheckResult& c) { return c.check == name; });
    return it == checks.end() ? nullptr : &*it;
}

namespace {

CheckResult bounds_check(std::string name, const Solution& s, const Bounds& xs) {
    CheckResult r{std::move(name), false, {}};
    r.witness.push_back({"x_lo", xs.lo});
    r.witness.push_back({"x_hi", xs.hi});
    const Prime p = s.prime();
    if (4 * s.x() <= Natural{p}) {
        r.witness.push_back({"note", std::string("4x <= p, y bounds undefined")});
        return r;
    }
    const Bounds ys = reduction::lemma1_y_bounds(p, s.x());
    r.witness.push_back({"y_lo", ys.lo});
    r.witness.push_back({"y_hi", ys.hi});
    r.pass = xs.contains(s.x()) && ys.contains(s.y());
    return r;
}

} // namespace

VerificationReport verify_all(const Solution& s) {
    VerificationReport report;
    const Prime p = s.prime();
    const Natural pv = p;
    const Natural x = s.x(), y = s.y(), z = s.z();
    const Natural gx = gcd(x, pv), gy = gcd(y, pv), gz = gcd(z, pv);
    auto& checks = report.checks;

    {
        CheckResult prop1{"prop1", gx == pv || gy == pv || gz == pv, {}};
        prop1.witness = {{"gcd_x_p", gx}, {"gcd_y_p", gy}, {"gcd_z_p", gz}};
        checks.push_back(std::move(prop1));
        CheckResult prop2{"prop2", !(gx == pv && gy == pv && gz == pv), {}};
        prop2.witness = {{"gcd_x_p", gx}, {"gcd_y_p", gy}, {"gcd_z_p", gz}};
        checks.push_back(std::move(prop2));
    }

    checks.push_back(bounds_check("lemma1_bounds", s, reduction::lemma1_x_bounds(p)));
    checks.push_back({"lemma2", gx == 1, {{"gcd_x_p", gx}}});

    {
        const Natural y_max = pv * (pv + 1) / 2;
        CheckResult lemma3{"lemma3", check_lemma3(s), {}};
        lemma3.witness = {{"y_mod_p2", y % (pv * pv)},
                          {"z_mod_p2", z % (pv * pv)},
                          {"y_max", y_max},
                          {"y_within_max", y <= y_max}};
        checks.push_back(std::move(lemma3));
    }

    checks.push_back({"lemma4", gy != pv || gz == pv, {{"gcd_y_p", gy}, {"gcd_z_p", gz}}});

    {
        CheckResult lemma5{"lemma5", false, {}};
        try {
            report.type = classify(s);
            report.factorization = factorize(s);
            const auto& f = *report.factorization;
            lemma5.pass = check_lemma5(f, *report.type, p);
            lemma5.witness = {{"type", std::string(to_string(*report.type))},
                              {"d", f.d},
                              {"a", f.a},
                              {"b", f.b},
                              {"c", f.c},
                              {"x0", f.x0},
                              {"y0", f.y0},
                              {"z0", f.z0}};
            if (f.c_star) lemma5.witness.push_back({"c_star", *f.c_star});
        } catch (const Error& e) {
            lemma5.witness = {{"error", std::string(e.what())}};
        }
        checks.push_back(std::move(lemma5));
    }

    {
        const Integer residual = reduction::theorem1_residual(p, x, y);
        const Natural rhs = gy * gcd(x * y, x + y);
        checks.push_back({"eq3_identity",
                          residual == 0,
                          {{"lhs", static_cast<Integer>(rhs) + residual}, {"rhs", rhs}, {"residual", residual}}});
    }

    {
        CheckResult eq4{"eq4_z", false, {}};
        try {
            const Natural zz = reduction::z_from_xy(p, x, y);
            eq4.pass = zz == z;
            eq4.witness = {{"z_formula", zz}};
        } catch (const Error& e) {
            eq4.witness = {{"error", std::string(e.what())}};
        }
        checks.push_back(std::move(eq4));
    }

    {
        CheckResult eq5{"eq5_x", false, {}};
        if (4 * y <= pv) {
            eq5.witness = {{"error", std::string("4y <= p")}};
        } else {
            const Natural xf = reduction::x_from_y(p, y);
            const bool holds = xf == x;
            eq5.witness = {{"x_formula", xf}};
            if (report.type == SolutionType::TypeII) {
                eq5.pass = true;
                eq5.witness.push_back(
                    {"status", std::string(holds ? "holds (Type II, not guaranteed)" : "fails (Type II, not guaranteed)")});
            } else {
                eq5.pass = holds;
                eq5.witness.push_back({"status", std::string(holds ? "holds" : "fails")});
            }
        }
        checks.push_back(std::move(eq5));
    }

    checks.push_back(bounds_check("corollary1_bounds", s, reduction::corollary1_x_bounds(p)));
    return report;
}

namespace {

std::string quote(std::string_view s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out.push_back('\\');
        out.push_back(ch);
    }
    out.push_back('"');
    return out;
}

std::string render(const WitnessValue& v) {
    return std::visit(
        [](const auto& value) -> std::string {
            using T = std::decay_t<decltype(value)>;
            if constexpr (std::is_same_v<T, bool>) {
                return value ? "true" : "false";
            } else if constexpr (std::is_same_v<T, std::string>) {
                return quote(value);
            } else {
                return to_string(value);
            }
        },
        v);
}

} // namespace

std::string to_json(const VerificationReport& report) {
    std::string out = "[";
    for (std::size_t i = 0; i < report.checks.size(); ++i) {
        const auto& c = report.checks[i];
        if (i) out += ",";
        out += "{\"check\":" + quote(c.check) + ",\"pass\":" + (c.pass ? "true" : "false") + ",\"witness\":{";
        for (std::size_t j = 0; j < c.witness.size(); ++j) {
            if (j) out += ",";
            out += quote(c.witness[j].key) + ":" + render(c.witness[j].value);
        }
        out += "}}";
    }
    out += "]";
    return out;
}

} // namespace esc::structure
