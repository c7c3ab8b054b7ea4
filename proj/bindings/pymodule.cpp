#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "padld/germ.hpp"
#include "padld/isolation.hpp"
#include "padld/polytope.hpp"
#include "padld/separation.hpp"

namespace py = pybind11;
using namespace padld;

namespace {

std::vector<Val> parse_polyvaluation(const std::vector<std::string>& m) {
    std::vector<Val> out;
    for (const auto& s : m)
        out.push_back(s == "inf" ? Val::inf() : Val::of(parse_rat(s)));
    return out;
}

}  // namespace

PYBIND11_MODULE(_padld, mod) {
    mod.doc() = "local dynamical invariants of analytic germs over p-adic fields";

    py::register_exception<Error>(mod, "PadldError");

    py::class_<Germ>(mod, "Germ")
        .def_static("from_text", &parse_germ, py::arg("text"))
        .def("to_text", &print_germ)
        .def_property_readonly("p", &Germ::p)
        .def_property_readonly("dim", &Germ::dim)
        .def_property_readonly("trunc", &Germ::trunc)
        .def("__eq__", [](const Germ& a, const Germ& b) { return a == b; });

    mod.def("iterate", &iterate, py::arg("germ"), py::arg("k"));

    mod.def("classify_multiplier", [](const std::string& lam, long p) {
        return std::string(multiplier_class_name(classify_multiplier(parse_rat(lam), p)));
    });

    mod.def("vp", [](const std::string& x, long p) { return vp(parse_rat(x), p).str(); });

    mod.def("v_lambda_k", [](const std::string& lam, long k, long p) {
        return v_lambda_k(parse_rat(lam), k, p).str();
    });

    mod.def(
        "orbit_valuations",
        [](const Germ& g, const std::vector<std::string>& z, int K) {
            std::vector<Rat> pt;
            for (const auto& s : z) pt.push_back(parse_rat(s));
            auto steps = orbit_valuations(g, pt, K);
            std::vector<std::vector<std::string>> out;
            for (const auto& st : steps) {
                std::vector<std::string> row;
                for (const auto& v : st.vals) row.push_back(v.str());
                out.push_back(row);
            }
            return out;
        },
        py::arg("germ"), py::arg("z"), py::arg("K"));

    mod.def(
        "separate",
        [](const Germ& g, int r, int budget) {
            SeparationResult res = solve_separation(g, SplitSpec{r}, budget);
            py::dict out;
            py::list f;
            for (const auto& s : res.f) f.append(s.str());
            out["f"] = f;
            out["conjugated"] = res.conjugated;
            out["radius_threshold"] =
                res.radius_bound ? py::object(py::str(res.radius_bound->str())) : py::none();
            out["semigroup_evidence"] = res.semigroup_evidence;
            return out;
        },
        py::arg("germ"), py::arg("r"), py::arg("budget") = 16);

    mod.def(
        "newton_polygon",
        [](const std::string& series, int trunc, long p) {
            auto np = newton_polygon(parse_series(series, 1, trunc), p);
            std::vector<std::pair<std::string, std::string>> out;
            for (const auto& s : np.segments)
                out.emplace_back(s.slope_neg_inf ? "-inf" : rat_str(s.slope), rat_str(s.length));
            return out;
        },
        py::arg("series"), py::arg("trunc"), py::arg("p"));

    mod.def(
        "count_roots",
        [](const std::string& series, int trunc, const std::string& m, long p, bool exact_tail) {
            Val mv = m == "inf" ? Val::inf() : Val::of(parse_rat(m));
            return count_roots_by_valuation(parse_series(series, 1, trunc), mv, p, exact_tail);
        },
        py::arg("series"), py::arg("trunc"), py::arg("m"), py::arg("p"),
        py::arg("exact_tail") = false);

    mod.def(
        "mixed_volume",
        [](const std::vector<std::string>& polytopes) {
            std::vector<Polytope> ps;
            for (const auto& t : polytopes) ps.push_back(parse_polytope(t));
            return rat_str(mixed_volume(ps));
        },
        py::arg("polytopes"));

    mod.def(
        "rabinoff_count",
        [](const std::vector<std::string>& series, int dim, int trunc,
           const std::vector<std::string>& m, long p, bool exact_tail) {
            std::vector<Series> gs;
            for (const auto& s : series) gs.push_back(parse_series(s, dim, trunc));
            RootCount rc = rabinoff_count(gs, parse_polyvaluation(m), p, exact_tail);
            return py::make_tuple(rat_str(rc.count), rc.assumptions);
        },
        py::arg("series"), py::arg("dim"), py::arg("trunc"), py::arg("m"), py::arg("p"),
        py::arg("exact_tail") = false);

    mod.def(
        "certify_isolation",
        [](const Germ& g, long max_direct_period, long k_cap) {
            IsolationCertificate c = certify_isolation(g, max_direct_period, k_cap);
            py::dict out;
            out["m_star"] = c.m_star;
            out["K"] = c.K;
            out["tail_argument"] = c.tail_argument;
            out["oracle_checked"] = c.oracle_checked;
            out["normalization_iterate"] = c.normalization_iterate;
            out["oracle_modulus_exp"] = c.oracle_modulus_exp;
            py::list per_k;
            for (const auto& e : c.per_k) {
                py::dict d;
                d["k"] = e.k;
                d["evidence"] = e.evidence;
                d["candidates"] = e.candidates;
                d["discounted"] = e.discounted;
                per_k.append(d);
            }
            out["per_k"] = per_k;
            out["e"] = c.profile.e;
            out["t"] = rat_str(c.profile.t);
            return out;
        },
        py::arg("germ"), py::arg("max_direct_period") = 0, py::arg("k_cap") = 64);

    mod.def("oracle_periodic_points", &oracle_periodic_points, py::arg("germ"), py::arg("k"),
            py::arg("M"), py::arg("a"));
}
