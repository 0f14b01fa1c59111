#include <pybind11/pybind11.h>

#include "sqfree/counting.hpp"
#include "sqfree/fast.hpp"
#include "sqfree/golden.hpp"
#include "sqfree/mertens.hpp"
#include "sqfree/mobius.hpp"
#include "sqfree/parallel.hpp"

#include <optional>
#include <string>

namespace py = pybind11;
using namespace sqfree;

namespace {

// python ints carry arbitrary precision; go through decimal strings
u128 to_u128(const py::int_& v) {
    std::string s = py::str(v);
    try {
        u128 n = parse_u128(s);
        if (n > pow10_u128(36))
            throw py::value_error("n exceeds the supported bound 10^36");
        return n;
    } catch (const py::value_error&) {
        throw;
    } catch (const std::exception&) {
        throw py::value_error("expected a nonnegative integer up to 10^36, got " + s);
    }
}

py::int_ from_i128(i128 v) {
    std::string s = to_string(v);
    PyObject* obj = PyLong_FromString(s.c_str(), nullptr, 10);
    if (!obj) throw py::error_already_set();
    return py::reinterpret_steal<py::int_>(obj);
}

std::optional<u64> opt_u64(const py::object& o, const char* what) {
    if (o.is_none()) return std::nullopt;
    long long v = py::cast<long long>(o);
    if (v < 0) throw py::value_error(std::string(what) + " must be nonnegative");
    return u64(v);
}

py::int_ py_count(const py::int_& n_obj, const std::string& algo, u64 workers,
                  const py::object& override_I, const py::object& override_B) {
    u128 n = to_u128(n_obj);
    auto oi = opt_u64(override_I, "I");
    auto ob = opt_u64(override_B, "block_size");
    CountResult res;
    try {
        if (algo == "brute")
            res = count_bruteforce(n);
        else if (algo == "basic")
            res = count_basic(n);
        else if (algo == "fast-mem")
            res = n < kFastMinN ? count_fast_inmemory(n)
                                : count_fast_inmemory(n, choose_parameters(n, oi, ob));
        else if (algo == "fast")
            res = n < kFastMinN ? count_fast_blocked(n)
                                : count_fast_blocked(n, choose_parameters(n, oi, ob));
        else if (algo == "parallel")
            res = count_parallel(n, workers, std::nullopt, oi, ob);
        else
            throw py::value_error("unknown algorithm: " + algo);
    } catch (const py::value_error&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw py::value_error(e.what());
    } catch (const std::out_of_range& e) {
        throw py::value_error(e.what());
    }
    return from_i128(res.s);
}

py::int_ py_mertens(long long x) {
    if (x < 1) throw py::value_error("x must be >= 1");
    return from_i128(mertens_standalone(u64(x)));
}

int py_mobius(long long k) {
    if (k < 1) throw py::value_error("k must be >= 1");
    return mobius_oracle(u64(k));
}

double py_approx(const py::int_& n) { return approx_count(to_u128(n)); }

py::int_ py_golden(unsigned e) {
    try {
        return from_i128(i128(golden_value(e)));
    } catch (const std::out_of_range& e2) {
        throw py::value_error(e2.what());
    }
}

py::dict py_parameters(const py::int_& n_obj, const py::object& override_I) {
    u128 n = to_u128(n_obj);
    try {
        Parameters p = choose_parameters(n, opt_u64(override_I, "I"));
        py::dict d;
        d["I"] = p.I;
        d["D"] = p.D;
        d["B"] = p.B;
        d["L"] = p.L;
        return d;
    } catch (const std::invalid_argument& e) {
        throw py::value_error(e.what());
    }
}

}  // namespace

PYBIND11_MODULE(_sqfree, m) {
    m.doc() = "Exact counting of square-free integers up to 10^36.";

    m.def("count", &py_count, py::arg("n"), py::kw_only(), py::arg("algo") = "fast",
          py::arg("workers") = 0, py::arg("I") = py::none(),
          py::arg("block_size") = py::none(),
          "S(n): the number of square-free integers in [1, n].\n"
          "algo is one of brute, basic, fast-mem, fast, parallel.");
    m.def("mertens", &py_mertens, py::arg("x"), "Mertens function M(x).");
    m.def("mobius", &py_mobius, py::arg("k"), "Moebius function mu(k) by trial division.");
    m.def("approx", &py_approx, py::arg("n"), "Asymptotic estimate (6/pi^2) n.");
    m.def("golden", &py_golden, py::arg("e"), "Reference value of S(10^e) for e = 0..36.");
    m.def("parameters", &py_parameters, py::arg("n"), py::arg("I") = py::none(),
          "Blocked-counter parameters {I, D, B, L} chosen for n.");
    m.attr("max_exponent") = int(kGoldenMaxExp);
}
