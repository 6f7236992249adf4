// Python extension exposing the main operations: exact polytopes, their
// intersection bodies (piecewise-rational radial function, membership,
// degrees, meshes), and the independent section-volume oracle. Exact values
// cross the boundary as fractions.Fraction; polynomials as canonical text.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <utility>
#include <vector>

#include "ibody/errors.hpp"
#include "ibody/intersection_body.hpp"
#include "ibody/io.hpp"
#include "ibody/oracle.hpp"

namespace py = pybind11;
using namespace ibody;

namespace {

py::object rat_to_fraction(const Rat& v) {
    py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(rat_to_string(v));
}

py::list vec_to_fractions(const RatVec& v) {
    py::list out;
    for (const Rat& c : v) out.append(rat_to_fraction(c));
    return out;
}

Rat object_to_rat(py::handle h) {
    if (py::isinstance<py::float_>(h))
        throw ValidationError(
            "not an exact rational: floating-point coordinate "
            "(irrational coordinates unsupported; pass int, str or Fraction)");
    return parse_rat(py::str(h).cast<std::string>());
}

RatVec sequence_to_vec(py::handle seq) {
    RatVec out;
    for (py::handle h : py::iter(seq)) out.push_back(object_to_rat(h));
    return out;
}

VPolytope make_polytope(py::iterable vertices, const std::string& name) {
    std::vector<RatVec> rows;
    for (py::handle row : vertices) rows.push_back(sequence_to_vec(row));
    return VPolytope(std::move(rows), name);
}

NormalizationMode mode_from_text(const std::string& text) {
    return mode_from_string(text); // accepts "true" / "cone" spellings
}

py::dict piece_to_dict(const IntersectionBody& body, std::size_t i) {
    if (i >= body.pieces().size())
        throw ValidationError("chamber id out of range");
    const ChamberPiece& piece = body.pieces()[i];
    const Chamber& chamber = body.chambers()[i];
    py::dict d;
    d["chamber"] = piece.chamber_id;
    d["p_tilde"] = poly_to_string(piece.p_tilde);
    d["q"] = poly_to_string(piece.q);
    d["boundary"] = poly_to_string(piece.boundary_poly);
    d["degree"] = piece.degree;
    d["is_zero"] = piece.is_zero_piece;
    d["signs"] = chamber.signs;
    d["witness"] = vec_to_fractions(chamber.witness);
    py::list rays;
    for (const RatVec& r : chamber.rays) rays.append(vec_to_fractions(r));
    d["rays"] = rays;
    return d;
}

} // namespace

PYBIND11_MODULE(_ibody, m) {
    m.doc() = "Exact intersection bodies of rational polytopes";
    m.attr("__version__") = "0.1.0";

    py::register_exception<ValidationError>(m, "ValidationError",
                                            PyExc_ValueError);
    py::register_exception<InternalError>(m, "InternalError",
                                          PyExc_RuntimeError);

    py::class_<VPolytope>(m, "Polytope",
                          "Full-dimensional polytope from exact rational "
                          "vertices (every point must be a vertex)")
        .def(py::init(&make_polytope), py::arg("vertices"),
             py::arg("name") = std::string())
        .def_property_readonly("dimension", &VPolytope::dimension)
        .def_property_readonly("name", &VPolytope::name)
        .def_property_readonly(
            "vertices",
            [](const VPolytope& p) {
                py::list out;
                for (const RatVec& v : p.vertices())
                    out.append(vec_to_fractions(v));
                return out;
            })
        .def_property_readonly(
            "f01",
            [](const VPolytope& p) {
                auto [v, e] = p.f01();
                return py::make_tuple(v, e);
            },
            "(vertex count, edge count)")
        .def("volume",
             [](const VPolytope& p) { return rat_to_fraction(p.volume()); })
        .def("hash", [](const VPolytope& p) { return polytope_hash(p); },
             "Content fingerprint of the vertex set (name-independent)")
        .def("__repr__", [](const VPolytope& p) {
            return "Polytope(name='" + p.name() +
                   "', dimension=" + std::to_string(p.dimension()) +
                   ", vertices=" + std::to_string(p.vertices().size()) + ")";
        });

    py::class_<IntersectionBody>(
        m, "IntersectionBody",
        "Intersection body of a polytope: the star body whose radial "
        "function at x is the section volume of the polytope at the "
        "hyperplane through the origin orthogonal to x")
        .def(py::init([](const VPolytope& p, const std::string& mode,
                         unsigned jobs) {
                 return IntersectionBody(p, mode_from_text(mode), jobs);
             }),
             py::arg("polytope"), py::arg("mode") = std::string("true"),
             py::arg("jobs") = 1u,
             "mode: 'true' for Euclidean section volume, 'cone' for the "
             "unit-apex cone volume (section volume / dimension)")
        .def_property_readonly(
            "polytope",
            [](const IntersectionBody& b) { return b.polytope(); })
        .def_property_readonly(
            "mode",
            [](const IntersectionBody& b) { return mode_to_string(b.mode()); })
        .def_property_readonly(
            "chamber_count",
            [](const IntersectionBody& b) { return b.chambers().size(); })
        .def("piece", &piece_to_dict, py::arg("chamber"),
             "Radial piece of one chamber: polynomials as canonical text, "
             "witness and rays as exact fractions")
        .def("pieces",
             [](const IntersectionBody& b) {
                 py::list out;
                 for (std::size_t i = 0; i < b.pieces().size(); ++i)
                     out.append(piece_to_dict(b, i));
                 return out;
             })
        .def("locate",
             [](const IntersectionBody& b, py::iterable point) -> py::object {
                 LocateResult loc = locate(b.normals(), b.chambers(),
                                           sequence_to_vec(point));
                 if (!loc.chamber_id) return py::none();
                 return py::cast(*loc.chamber_id);
             },
             py::arg("point"),
             "Chamber id whose open cone contains the point, or None when "
             "the point lies on an arrangement wall")
        .def("radial",
             [](const IntersectionBody& b, py::iterable point) -> py::object {
                 RadialValue v = b.evaluate_radial(sequence_to_vec(point));
                 if (v.is_infinite)
                     return py::module_::import("math").attr("inf");
                 return rat_to_fraction(v.value);
             },
             py::arg("point"),
             "Exact radial function value (math.inf at the origin)")
        .def("contains",
             [](const IntersectionBody& b, py::iterable point) {
                 return b.membership(sequence_to_vec(point));
             },
             py::arg("point"),
             "Exact membership: radial(point) >= 1, boundary included")
        .def("__contains__",
             [](const IntersectionBody& b, py::iterable point) {
                 return b.membership(sequence_to_vec(point));
             })
        .def("degree_report",
             [](const IntersectionBody& b) {
                 DegreeReport rep = b.degree_table();
                 py::dict d;
                 py::dict hist;
                 for (auto [deg, n] : rep.histogram)
                     hist[py::cast(deg)] = n;
                 d["histogram"] = hist;
                 d["global_bound"] = rep.global_bound;
                 d["centrally_symmetric"] = rep.centrally_symmetric;
                 d["satisfied"] = rep.satisfied;
                 return d;
             },
             "Boundary degrees per chamber: histogram, the proven global "
             "bound, and whether every piece satisfies it")
        .def("result_json",
             [](const IntersectionBody& b) {
                 return result_to_json(b).dump(2) + "\n";
             },
             "Full deterministic result document as JSON text")
        .def("mesh_obj",
             [](const IntersectionBody& b, unsigned refine) {
                 return mesh_to_obj(b.mesh_boundary(refine));
             },
             py::arg("refine") = 0u,
             "Wavefront OBJ text of the boundary mesh (3d bodies only)")
        .def("__repr__", [](const IntersectionBody& b) {
            return "IntersectionBody(polytope='" + b.polytope().name() +
                   "', mode='" + mode_to_string(b.mode()) +
                   "', chambers=" + std::to_string(b.chambers().size()) + ")";
        });

    m.def(
        "section_volume_scaled",
        [](const VPolytope& p, py::iterable point) {
            return rat_to_fraction(
                section_volume_scaled(p, sequence_to_vec(point)));
        },
        py::arg("polytope"), py::arg("point"),
        "Independent direct-volume oracle: |x| times the (d-1)-volume of the "
        "section of the polytope by the hyperplane orthogonal to x. Throws "
        "when x lies on an arrangement wall.");

    m.def(
        "load_polytope",
        [](const std::string& path) { return read_polytope_file(path); },
        py::arg("path"),
        "Read a polytope JSON file {\"dimension\": d, \"vertices\": [...]}");
}
