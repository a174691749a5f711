#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "esc/arith.hpp"
#include "esc/model.hpp"
#include "esc/oracle.hpp"
#include "esc/reduction.hpp"
#include "esc/structure.hpp"
#include "esc/survey.hpp"
#include "esc/version.hpp"

namespace py = pybind11;

// Python ints <-> 128-bit integers, via their decimal text.
namespace pybind11::detail {

template <>
struct type_caster<esc::Natural> {
    PYBIND11_TYPE_CASTER(esc::Natural, const_name("int"));

    bool load(handle src, bool) {
        if (!src || !PyLong_Check(src.ptr())) return false;
        const std::string text = py::str(src);
        if (text.empty() || text[0] == '-') return false;
        try {
            value = esc::parse_natural(text);
        } catch (const esc::Error&) {
            return false;
        }
        return true;
    }

    static handle cast(esc::Natural v, return_value_policy, handle) {
        return PyLong_FromString(esc::to_string(v).c_str(), nullptr, 10);
    }
};

template <>
struct type_caster<esc::Integer> {
    PYBIND11_TYPE_CASTER(esc::Integer, const_name("int"));

    bool load(handle, bool) { return false; }

    static handle cast(esc::Integer v, return_value_policy, handle) {
        return PyLong_FromString(esc::to_string(v).c_str(), nullptr, 10);
    }
};

} // namespace pybind11::detail

namespace {

esc::Prime prime(esc::Natural p) { return esc::Prime::make(p); }

py::dict witness_dict(const std::vector<esc::structure::Witness>& ws) {
    py::dict d;
    for (const auto& w : ws) {
        std::visit([&](const auto& v) { d[py::str(w.key)] = py::cast(v); }, w.value);
    }
    return d;
}

py::object factorization_dict(const esc::Factorization& f) {
    py::dict d;
    d["d"] = py::cast(f.d);
    d["a"] = py::cast(f.a);
    d["b"] = py::cast(f.b);
    d["c"] = py::cast(f.c);
    d["x0"] = py::cast(f.x0);
    d["y0"] = py::cast(f.y0);
    d["z0"] = py::cast(f.z0);
    d["c_star"] = f.c_star ? py::cast(*f.c_star) : py::none();
    return d;
}

esc::SolutionType parse_type(const std::string& t) {
    if (t == "I") return esc::SolutionType::TypeI;
    if (t == "II") return esc::SolutionType::TypeII;
    throw py::value_error("type must be 'I' or 'II'");
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Erdos-Straus solution search, verification and survey";
    m.attr("__version__") = std::string(esc::kVersion);

    static py::exception<esc::Error> esc_error(m, "EscError", PyExc_ValueError);
    static py::exception<esc::NoSolutionError> no_solution(m, "NoSolutionError", esc_error.ptr());
    py::register_exception_translator([](std::exception_ptr ep) {
        try {
            if (ep) std::rethrow_exception(ep);
        } catch (const esc::NoSolutionError& e) {
            py::object exc = py::reinterpret_borrow<py::object>(no_solution.ptr())(e.what());
            exc.attr("kind") = std::string(esc::to_string(e.kind()));
            exc.attr("prime") = e.prime();
            py::set_error(no_solution, exc);
        } catch (const esc::Error& e) {
            py::object exc = py::reinterpret_borrow<py::object>(esc_error.ptr())(e.what());
            exc.attr("kind") = std::string(esc::to_string(e.kind()));
            py::set_error(esc_error, exc);
        }
    });

    py::class_<esc::Bounds>(m, "Bounds")
        .def(py::init([](esc::Natural lo, esc::Natural hi) { return esc::Bounds{lo, hi}; }))
        .def_property_readonly("lo", [](const esc::Bounds& b) { return b.lo; })
        .def_property_readonly("hi", [](const esc::Bounds& b) { return b.hi; })
        .def_property_readonly("empty", &esc::Bounds::empty)
        .def("__contains__", [](const esc::Bounds& b, esc::Natural v) { return b.contains(v); })
        .def("__eq__", [](const esc::Bounds& a, const esc::Bounds& b) { return a == b; })
        .def("__repr__", [](const esc::Bounds& b) {
            return b.empty() ? std::string("Bounds(empty)")
                             : "Bounds(" + esc::to_string(b.lo) + ", " + esc::to_string(b.hi) + ")";
        });

    py::class_<esc::Solution>(m, "Solution")
        .def_property_readonly("p", &esc::Solution::p)
        .def_property_readonly("x", &esc::Solution::x)
        .def_property_readonly("y", &esc::Solution::y)
        .def_property_readonly("z", &esc::Solution::z)
        .def("as_tuple", [](const esc::Solution& s) { return py::make_tuple(s.x(), s.y(), s.z()); })
        .def("__eq__", [](const esc::Solution& a, const esc::Solution& b) { return a == b; })
        .def("__hash__", [](const esc::Solution& s) {
            return py::hash(py::make_tuple(s.p(), s.x(), s.y(), s.z()));
        })
        .def("__repr__", [](const esc::Solution& s) {
            return "Solution(p=" + esc::to_string(s.p()) + ", x=" + esc::to_string(s.x()) + ", y=" +
                   esc::to_string(s.y()) + ", z=" + esc::to_string(s.z()) + ")";
        });

    py::class_<esc::survey::SurveyRecord>(m, "SurveyRecord")
        .def_property_readonly("p", [](const esc::survey::SurveyRecord& r) { return r.p.value(); })
        .def_property_readonly("strategy",
                               [](const esc::survey::SurveyRecord& r) { return std::string(to_string(r.strategy)); })
        .def_property_readonly("solutions",
                               [](const esc::survey::SurveyRecord& r) {
                                   py::list out;
                                   for (const auto& a : r.solutions) {
                                       py::dict d;
                                       d["x"] = py::cast(a.solution.x());
                                       d["y"] = py::cast(a.solution.y());
                                       d["z"] = py::cast(a.solution.z());
                                       d["type"] = std::string(esc::to_string(a.type));
                                       d["eq5"] = a.eq5;
                                       out.append(d);
                                   }
                                   return out;
                               })
        .def_property_readonly("first_y",
                               [](const esc::survey::SurveyRecord& r) -> py::object {
                                   return r.first_y ? py::cast(*r.first_y) : py::none();
                               })
        .def_property_readonly("elapsed_ns", [](const esc::survey::SurveyRecord& r) { return r.elapsed.count(); })
        .def("to_jsonl", &esc::survey::to_jsonl, py::arg("include_timing") = true);

    // arith
    m.def("gcd", &esc::gcd, py::arg("a"), py::arg("b"));
    m.def("ceil_div", &esc::ceil_div, py::arg("n"), py::arg("d"));
    m.def("floor_div", &esc::floor_div, py::arg("n"), py::arg("d"));
    m.def("is_prime", &esc::is_prime, py::arg("n"));
    m.def("primes_in", &esc::primes_in, py::arg("lo"), py::arg("hi"), py::call_guard<py::gil_scoped_release>());

    // model / oracle
    m.def("make_solution", py::overload_cast<esc::Natural, esc::Natural, esc::Natural, esc::Natural>(
                               &esc::make_solution),
          py::arg("p"), py::arg("x"), py::arg("y"), py::arg("z"));
    m.def("is_solution", &esc::oracle::is_solution, py::arg("p"), py::arg("x"), py::arg("y"), py::arg("z"));
    m.def("elementary_x_range", [](esc::Natural p) { return esc::oracle::elementary_x_range(prime(p)); }, py::arg("p"));
    m.def("elementary_y_range",
          [](esc::Natural p, esc::Natural x) { return esc::oracle::elementary_y_range(prime(p), x); }, py::arg("p"),
          py::arg("x"));
    m.def("z_candidate",
          [](esc::Natural p, esc::Natural x, esc::Natural y) { return esc::oracle::z_candidate(prime(p), x, y); },
          py::arg("p"), py::arg("x"), py::arg("y"));
    m.def("enumerate_all", [](esc::Natural p) {
        const auto pp = prime(p);
        py::gil_scoped_release release;
        return esc::oracle::enumerate_all(pp);
    }, py::arg("p"));

    // reduction
    namespace red = esc::reduction;
    m.def("lemma1_x_bounds", [](esc::Natural p) { return red::lemma1_x_bounds(prime(p)); }, py::arg("p"));
    m.def("lemma1_y_bounds", [](esc::Natural p, esc::Natural x) { return red::lemma1_y_bounds(prime(p), x); },
          py::arg("p"), py::arg("x"));
    m.def("corollary1_x_bounds", [](esc::Natural p) { return red::corollary1_x_bounds(prime(p)); }, py::arg("p"));
    m.def("theorem1_residual",
          [](esc::Natural p, esc::Natural x, esc::Natural y) { return red::theorem1_residual(prime(p), x, y); },
          py::arg("p"), py::arg("x"), py::arg("y"));
    m.def("z_from_xy", [](esc::Natural p, esc::Natural x, esc::Natural y) { return red::z_from_xy(prime(p), x, y); },
          py::arg("p"), py::arg("x"), py::arg("y"));
    m.def("x_from_y", [](esc::Natural p, esc::Natural y) { return red::x_from_y(prime(p), y); }, py::arg("p"),
          py::arg("y"));
    m.def("one_var_y_region", [](esc::Natural p) { return red::one_var_y_region(prime(p)); }, py::arg("p"));
    m.def("one_var_condition", [](esc::Natural p, esc::Natural y) { return red::one_var_condition(prime(p), y); },
          py::arg("p"), py::arg("y"));
    m.def("search_two_var", [](esc::Natural p) {
        const auto pp = prime(p);
        py::gil_scoped_release release;
        return red::search_two_var(pp);
    }, py::arg("p"));
    m.def("search_one_var", [](esc::Natural p, bool stop_at_first) {
        const auto pp = prime(p);
        py::gil_scoped_release release;
        return red::search_one_var(pp, stop_at_first);
    }, py::arg("p"), py::arg("stop_at_first") = true);
    m.def("special_3mod4", [](esc::Natural p) { return red::special_3mod4(prime(p)); }, py::arg("p"));
    m.def("hybrid_search", [](esc::Natural p) {
        const auto pp = prime(p);
        py::gil_scoped_release release;
        return red::hybrid_search(pp);
    }, py::arg("p"));

    // structure
    namespace st = esc::structure;
    m.def("classify", [](const esc::Solution& s) { return std::string(esc::to_string(st::classify(s))); },
          py::arg("solution"));
    m.def("factorize", [](const esc::Solution& s) { return factorization_dict(st::factorize(s)); },
          py::arg("solution"));
    m.def("check_lemma5", [](const esc::Solution& s, const std::string& type) {
        return st::check_lemma5(st::factorize(s), parse_type(type), s.prime());
    }, py::arg("solution"), py::arg("type"));
    m.def("check_propositions", &st::check_propositions, py::arg("solution"));
    m.def("check_lemma3", &st::check_lemma3, py::arg("solution"));
    m.def("verify_all", [](const esc::Solution& s) {
        py::list out;
        for (const auto& c : st::verify_all(s).checks) {
            py::dict d;
            d["check"] = c.check;
            d["pass"] = c.pass;
            d["witness"] = witness_dict(c.witness);
            out.append(d);
        }
        return out;
    }, py::arg("solution"));

    // survey
    namespace sv = esc::survey;
    m.def("scan", [](std::uint64_t lo, std::uint64_t hi, const std::string& strategy, bool enumerate_all,
                     unsigned jobs, std::size_t chunk_size) {
        const auto s = sv::parse_strategy(strategy);
        py::gil_scoped_release release;
        return sv::scan(lo, hi, s, enumerate_all, {jobs, chunk_size});
    }, py::arg("lo"), py::arg("hi"), py::arg("strategy") = "hybrid", py::arg("enumerate_all") = false,
          py::arg("jobs") = 1, py::arg("chunk_size") = 1024);
    m.def("aggregate", [](const std::vector<sv::SurveyRecord>& records) {
        const auto agg = sv::aggregate(records);
        py::dict d;
        d["primes_scanned"] = agg.primes_scanned;
        d["solutions_total"] = agg.solutions_total;
        d["type1"] = agg.type1;
        d["type2"] = agg.type2;
        d["eq5_satisfied"] = agg.eq5_satisfied;
        d["eq5_rate"] = py::make_tuple(agg.eq5_rate.num, agg.eq5_rate.den);
        d["failures"] = agg.failures;
        d["first_only"] = agg.first_only;
        return d;
    }, py::arg("records"));
    m.def("figure2_dataset", [](std::uint64_t lo, std::uint64_t hi) {
        py::list out;
        for (const auto& r : sv::figure2_dataset(lo, hi)) out.append(py::make_tuple(r.p, r.y, r.mod4));
        return out;
    }, py::arg("lo"), py::arg("hi"));
    m.def("special_x_survey", &sv::special_x_survey, py::arg("lo"), py::arg("hi"),
          py::arg("oracle_cap") = sv::kDefaultOracleCap);
    m.def("parse_jsonl", &sv::parse_jsonl, py::arg("line"));
}
