// Python bindings. Rationals cross the boundary as fractions.Fraction; inputs may
// also be ints or "p/q" strings. Floats are rejected.

#include "ratvol/fan.hpp"
#include "ratvol/io.hpp"
#include "ratvol/measure.hpp"
#include "ratvol/polyhedron.hpp"
#include "ratvol/transforms.hpp"
#include "ratvol/verify.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace ratvol;

namespace {

py::object fraction(const Rat& r) {
    static const py::object cls = py::module_::import("fractions").attr("Fraction");
    const py::int_ num(py::str(r.get_num().get_str()));
    const py::int_ den(py::str(r.get_den().get_str()));
    return cls(num, den);
}

Rat to_rat(const py::handle& h) {
    if (py::isinstance<py::bool_>(h) || py::isinstance<py::float_>(h))
        throw py::type_error("expected an int, a fractions.Fraction or a \"p/q\" string, got " +
                             std::string(py::str(py::type::of(h).attr("__name__"))));
    if (py::isinstance<py::str>(h)) return parse_rat(h.cast<std::string>());
    if (py::isinstance<py::int_>(h)) return parse_rat(std::string(py::str(h)));
    if (py::hasattr(h, "numerator") && py::hasattr(h, "denominator") && !py::isinstance<py::float_>(h))
        return Rat(Int(std::string(py::str(h.attr("numerator")))), Int(std::string(py::str(h.attr("denominator")))));
    throw py::type_error("cannot convert " + std::string(py::repr(h)) + " to an exact rational");
}

RatPoint to_point(const py::handle& h) {
    std::vector<Rat> cs;
    for (const auto& c : h) cs.push_back(to_rat(c));
    return RatPoint(std::move(cs));
}

Polyhedron make_polyhedron(std::size_t dim, const py::iterable& simplexes) {
    std::vector<Simplex> out;
    for (const auto& s : simplexes) {
        std::vector<RatPoint> vs;
        for (const auto& v : s) {
            RatPoint p = to_point(v);
            if (p.dim() != dim)
                throw GeometryError("vertex has " + std::to_string(p.dim()) + " coordinates, expected " +
                                    std::to_string(dim));
            vs.push_back(std::move(p));
        }
        out.emplace_back(std::move(vs));
    }
    return Polyhedron(dim, std::move(out));
}

py::object from_json(const io::Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

py::list fractions(const std::vector<Rat>& xs) {
    py::list out;
    for (const auto& x : xs) out.append(fraction(x));
    return out;
}

GnMap make_map(const std::vector<std::vector<py::object>>& matrix, const std::vector<py::object>& shift) {
    const std::size_t n = matrix.size();
    if (shift.size() != n) throw GeometryError("shift has " + std::to_string(shift.size()) + " entries, expected " +
                                               std::to_string(n));
    IntMat a(n, n);
    IntVec t(n);
    for (std::size_t r = 0; r < n; ++r) {
        if (matrix[r].size() != n) throw GeometryError("matrix is not square");
        for (std::size_t c = 0; c < n; ++c) a(r, c) = io::parse_integer(std::string(py::str(matrix[r][c])));
        t[r] = io::parse_integer(std::string(py::str(shift[r])));
    }
    return GnMap(std::move(a), std::move(t));
}

}  // namespace

PYBIND11_MODULE(_ratvol, m) {
    m.doc() = "Exact G_n-invariant rational measures of rational polyhedra";

    py::register_exception<GeometryError>(m, "GeometryError", PyExc_ValueError);
    py::register_exception<io::ParseError>(m, "ParseError", PyExc_ValueError);

    py::class_<Polyhedron>(m, "Polyhedron")
        .def(py::init(&make_polyhedron), py::arg("dim"), py::arg("simplexes"))
        .def_static("from_json", [](const std::string& text) { return io::parse_polyhedron(text); })
        .def("to_json", [](const Polyhedron& p) { return io::polyhedron_to_json(p).dump(); })
        .def_property_readonly("ambient_dim", &Polyhedron::ambient_dim)
        .def_property_readonly("dimension", &Polyhedron::dimension)
        .def("is_empty", &Polyhedron::empty)
        .def("__contains__", [](const Polyhedron& p, const py::object& x) { return p.contains(to_point(x)); })
        .def("__repr__", [](const Polyhedron& p) {
            return "<Polyhedron ambient_dim=" + std::to_string(p.ambient_dim()) + " simplexes=" +
                   std::to_string(p.input_simplexes().size()) + ">";
        });

    m.def("measure", [](const Polyhedron& p, std::size_t d) { return fraction(lambda(p, d).value); },
          py::arg("polyhedron"), py::arg("d"), "λ_d of the polyhedron; 0 when d exceeds the ambient dimension.");
    m.def("measures", [](const Polyhedron& p) { return fractions(lambda_vector(p)); }, py::arg("polyhedron"),
          "[λ_0, ..., λ_n] of the polyhedron.");

    m.def(
        "triangulate",
        [](const Polyhedron& p, bool regular) {
            return from_json(io::complex_to_json(regular ? regular_triangulation(p) : p.canonical()));
        },
        py::arg("polyhedron"), py::arg("regular") = false);

    m.def(
        "transform",
        [](const Polyhedron& p, const std::vector<std::vector<py::object>>& matrix, const std::vector<py::object>& shift) {
            if (matrix.size() != p.ambient_dim()) throw GeometryError("matrix size does not match the ambient dimension");
            return apply_polyhedron(make_map(matrix, shift), p);
        },
        py::arg("polyhedron"), py::arg("matrix"), py::arg("shift"));

    m.def(
        "verify",
        [](std::uint64_t seed, std::size_t trials, const std::vector<std::string>& properties) {
            verify::Options o;
            o.seed = seed;
            o.trials = trials;
            o.only = properties;
            verify::Report r;
            {
                py::gil_scoped_release release;
                r = verify::run(o);
            }
            return from_json(r.to_json());
        },
        py::arg("seed") = 42, py::arg("trials") = 200, py::arg("properties") = std::vector<std::string>{});
    m.def("property_names", &verify::property_names);
}
