#include "esc/model.hpp"

namespace esc {

Prime Prime::make(Natural n) {
    if (!is_prime(n)) throw Error(ErrorKind::NotPrime, to_string(n) + " is not prime");
    return Prime(static_cast<std::uint64_t>(n));
}

Solution make_solution(Natural p, Natural x, Natural y, Natural z) {
    return make_solution(Prime::make(p), x, y, z);
}

Solution make_solution(Prime p, Natural x, Natural y, Natural z) {
    if (x == 0) throw Error(ErrorKind::Equation, "x must be at least 1");
    if (!(x <= y && y <= z)) {
        throw Error(ErrorKind::Ordering, "ordering x <= y <= z violated for (" + to_string(x) + ", " +
                                             to_string(y) + ", " + to_string(z) + ")");
    }
    // 4xyz = p(yz + xz + xy) rearranged as z * (4xy - p(x+y)) = pxy, which keeps
    // every product below 2^128 for the supported range.
    const Natural pv = p;
    const Natural four_xy = checked_mul(4, checked_mul(x, y));
    const Natural p_sum = checked_mul(pv, checked_add(x, y));
    const Natural pxy = checked_mul(pv, checked_mul(x, y));
    bool holds = false;
    if (four_xy > p_sum) {
        Natural lhs;
        holds = !__builtin_mul_overflow(z, four_xy - p_sum, &lhs) && lhs == pxy;
    }
    if (!holds) {
        throw Error(ErrorKind::Equation, "4/" + to_string(pv) + " != 1/" + to_string(x) + " + 1/" + to_string(y) +
                                             " + 1/" + to_string(z));
    }
    return Solution(p, x, y, z);
}

std::string_view to_string(SolutionType t) noexcept {
    return t == SolutionType::TypeI ? "I" : "II";
}

void check_factorization(const Factorization& f, const Solution& s) {
    auto fail = [](const std::string& what) {
        throw Error(ErrorKind::InternalInconsistency, "factorization invariant broken: " + what);
    };
    const Natural x = s.x(), y = s.y(), z = s.z(), p = s.p();
    if (f.d == 0 || f.a == 0 || f.b == 0 || f.c == 0) fail("zero component");
    if (f.d != gcd(gcd(x, y), z)) fail("d != gcd(x,y,z)");
    if (f.a * f.d != gcd(x, y)) fail("a != gcd(x,y)/d");
    if (f.b * f.d != gcd(x, z)) fail("b != gcd(x,z)/d");
    if (f.c * f.d != gcd(y, z)) fail("c != gcd(y,z)/d");
    if (f.x0 * f.a * f.b * f.d != x) fail("x != x0*a*b*d");
    if (f.y0 * f.a * f.c * f.d != y) fail("y != y0*a*c*d");
    if (f.z0 * f.b * f.c * f.d != z) fail("z != z0*b*c*d");
    if (gcd(f.a, f.b) != 1 || gcd(f.a, f.c) != 1 || gcd(f.b, f.c) != 1) fail("a, b, c not pairwise coprime");
    if (f.c_star.has_value() != (f.c % p == 0)) fail("c_star present iff p | c");
    if (f.c_star && *f.c_star * p != f.c) fail("c != c_star*p");
}

std::string to_json(const AnnotatedSolution& s) {
    const auto& sol = s.solution;
    std::string out = "{\"p\":" + to_string(sol.p());
    out += ",\"x\":" + to_string(sol.x());
    out += ",\"y\":" + to_string(sol.y());
    out += ",\"z\":" + to_string(sol.z());
    out += ",\"type\":\"";
    out += to_string(s.type);
    out += "\",\"eq5\":";
    out += s.eq5 ? "true" : "false";
    out += "}";
    return out;
}

std::string to_csv_row(const AnnotatedSolution& s) {
    const auto& sol = s.solution;
    std::string out = to_string(sol.p()) + "," + to_string(sol.x()) + "," + to_string(sol.y()) + "," +
                      to_string(sol.z()) + ",";
    out += to_string(s.type);
    out += s.eq5 ? ",true" : ",false";
    return out;
}

} // namespace esc
