#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "polyweyl/cech.hpp"
#include "polyweyl/classify.hpp"
#include "polyweyl/io.hpp"
#include "polyweyl/local_glue.hpp"
#include "polyweyl/rank_one.hpp"

namespace py = pybind11;
using namespace polyweyl;
using nlohmann::json;

namespace {

py::int_ to_py(const Int& x) {
    // exact conversion through the decimal representation
    return py::cast<py::int_>(py::module_::import("builtins").attr("int")(x.get_str()));
}

py::list vec_py(const IntVec& v) {
    py::list out;
    for (const Int& x : v) out.append(to_py(x));
    return out;
}

py::list mat_py(const IntMat& m) {
    py::list out;
    for (size_t i = 0; i < m.rows(); ++i) {
        py::list row;
        for (size_t j = 0; j < m.cols(); ++j) row.append(to_py(m(i, j)));
        out.append(row);
    }
    return out;
}

IntMat mat_from_py(const std::vector<std::vector<long long>>& rows) {
    size_t r = rows.size(), c = r ? rows[0].size() : 0;
    IntMat m(r, c);
    for (size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw Error("BadShape", "ragged matrix");
        for (size_t j = 0; j < c; ++j) m(i, j) = static_cast<long>(rows[i][j]);
    }
    return m;
}

Rat rat_arg(const std::string& s) {
    auto r = rat_from_string(s);
    if (!r) throw Error("BadInput", "unparsable rational '" + s + "'");
    return *r;
}

RatVec point_arg(const std::vector<std::string>& coords) {
    RatVec out;
    for (const std::string& c : coords) out.push_back(rat_arg(c));
    return out;
}

py::dict descriptor_py(const DiagonalizableGroupDescriptor& d) {
    py::dict out;
    out["torus_rank"] = d.torus_rank;
    out["torsion"] = vec_py(d.torsion);
    return out;
}

std::string verdict_str(MfVerdict v) {
    switch (v) {
        case MfVerdict::MultiplicityFree: return "mf";
        case MfVerdict::NotMultiplicityFree: return "not-mf";
        default: return "undecided";
    }
}

}  // namespace

PYBIND11_MODULE(_polyweyl, m) {
    m.doc() = "exact root-datum, polytope, gluing and cohomology computations";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    m.def("smith_normal_form", [](const std::vector<std::vector<long long>>& rows) {
        SmithDecomposition s = smith_normal_form(mat_from_py(rows));
        py::dict out;
        out["U"] = mat_py(s.U);
        out["D"] = mat_py(s.D);
        out["V"] = mat_py(s.V);
        return out;
    });

    m.def("hermite_normal_form", [](const std::vector<std::vector<long long>>& rows) {
        return mat_py(hermite_normal_form(mat_from_py(rows)));
    });

    m.def("quotient_invariants", [](const std::vector<std::vector<long long>>& gens,
                                    size_t ambient_rank) {
        IntMat g = mat_from_py(gens);
        QuotientInvariants q = quotient_invariants(Sublattice(ambient_rank, g.row_vectors()));
        return py::make_tuple(q.free_rank, vec_py(q.torsion));
    });

    m.def("is_direct_summand",
          [](const std::vector<std::vector<long long>>& gens, size_t ambient_rank) {
              IntMat g = mat_from_py(gens);
              return is_direct_summand(Sublattice(ambient_rank, g.row_vectors()));
          });

    m.def("recognize_finite_type", [](const std::vector<std::vector<long long>>& cartan) {
        return recognize_finite_type(mat_from_py(cartan));
    });

    m.def("delzant_check", [](const std::vector<std::vector<std::string>>& vertices) {
        if (vertices.empty()) throw Error("BadInput", "no vertices");
        size_t dim = vertices[0].size();
        std::vector<RatVec> vs;
        for (const auto& v : vertices) vs.push_back(point_arg(v));
        DelzantVerdict verdict = delzant_check(RationalPolytope::from_vertices(dim, vs));
        py::dict out;
        out["delzant"] = verdict.delzant;
        py::list certs;
        for (const auto& c : verdict.certificates) {
            py::dict e;
            py::list vertex;
            for (const Rat& x : c.vertex) vertex.append(rat_to_string(x));
            e["vertex"] = vertex;
            e["simple"] = c.simple;
            e["unimodular"] = c.unimodular;
            e["det"] = to_py(c.det);
            certs.append(e);
        }
        out["certificates"] = certs;
        return out;
    });

    m.def("classify_su2", [](const std::string& x, const std::string& y, long d) {
        Su2Classification c = classify_su2(rat_arg(x), rat_arg(y), Int(d));
        py::dict out;
        out["case"] = (c.tag == Su2Case::Point)          ? "point"
                      : (c.tag == Su2Case::WallInterval) ? "wall-interval"
                                                         : "interior-interval";
        out["manifold"] = c.manifold;
        return out;
    });

    m.def(
        "mf_check",
        [](const std::string& polytope_json, const std::string& lattice_json,
           const std::string& datum_json, const std::string& oracle_json) {
            MomentumData data;
            data.Q = polytope_from_json(json::parse(polytope_json));
            data.lambda0 = sublattice_from_json(json::parse(lattice_json));
            RootDatum ambient = datum_from_json(json::parse(datum_json));
            LocalOracleTable oracle;
            if (!oracle_json.empty()) oracle = oracle_from_json(json::parse(oracle_json));
            MfResult r = mf_check(data, ambient, oracle);
            py::dict out;
            out["verdict"] = verdict_str(r.verdict);
            py::list faces;
            for (const auto& f : r.faces) {
                py::dict e;
                py::list pt;
                for (const Rat& x : f.point) pt.append(rat_to_string(x));
                e["point"] = pt;
                e["local_type"] = f.local_type;
                e["verdict"] = verdict_str(f.verdict);
                e["reason"] = f.reason;
                faces.append(e);
            }
            out["faces"] = faces;
            return out;
        },
        py::arg("polytope_json"), py::arg("lattice_json"), py::arg("datum_json"),
        py::arg("oracle_json") = "");

    m.def("glue_weyl", [](const std::string& datum_json, const std::string& polytope_json) {
        RootDatum d = datum_from_json(json::parse(datum_json));
        RationalPolytope P = polytope_from_json(json::parse(polytope_json));
        LocalSystemAssignment L = induced_assignment(d, P);
        GluedSystem g = glue_weyl(L, P);
        py::dict out;
        out["weyl_order"] = g.weyl.order();
        out["num_roots"] = g.datum.num_roots();
        py::list simples;
        for (const LocalRoot& s : g.simples) simples.append(vec_py(s.root));
        out["simple_roots"] = simples;
        return out;
    });

    m.def(
        "phi_m",
        [](const std::string& datum_json, const std::string& polytope_json,
           const std::string& lattice_json) {
            RootDatum d = datum_from_json(json::parse(datum_json));
            RationalPolytope P = polytope_from_json(json::parse(polytope_json));
            LocalSystemAssignment L = induced_assignment(d, P);
            GluedSystem g = glue_weyl(L, P);
            Sublattice lambda_m = lattice_json.empty()
                                      ? Sublattice::full(P.dim())
                                      : sublattice_from_json(json::parse(lattice_json));
            PhiMResult r = construct_phi_m(lambda_m, g.weyl, L, P);
            py::dict out;
            out["datum_json"] = datum_to_json(r.phi_m).dump();
            py::list halved;
            for (const IntVec& h : r.halved_simples) halved.append(vec_py(h));
            out["halved"] = halved;
            out["sections"] = descriptor_py(global_sections(r.phi_m));
            return out;
        },
        py::arg("datum_json"), py::arg("polytope_json"), py::arg("lattice_json") = "");

    m.def("fiber_structure",
          [](const std::string& datum_json, const std::vector<std::string>& point) {
              RootDatum d = datum_from_json(json::parse(datum_json));
              FiberStructure f = fiber_structure(d, point_arg(point));
              py::dict out;
              out["semisimple"] = descriptor_py(f.semisimple);
              out["unipotent_rank"] = f.unipotent_rank;
              out["num_local_roots"] = f.local_roots.size();
              return out;
          });

    m.def("global_sections", [](const std::string& datum_json) {
        return descriptor_py(global_sections(datum_from_json(json::parse(datum_json))));
    });

    m.def("special_roots", [](const std::string& datum_json) {
        RootDatum d = datum_from_json(json::parse(datum_json));
        py::list out;
        for (const auto& c : special_roots(d)) {
            py::dict e;
            e["root"] = vec_py(d.roots[c.root_index]);
            e["summand_type"] = c.summand_type;
            e["involution_mod2"] = vec_py(special_involution(d, c.root_index));
            out.append(e);
        }
        return out;
    });

    m.def("cech_vanishing",
          [](const std::string& datum_json, const std::string& polytope_json,
             const std::string& cover_json) {
              RootDatum d = datum_from_json(json::parse(datum_json));
              RationalPolytope P = polytope_from_json(json::parse(polytope_json));
              auto pieces = cover_from_json(json::parse(cover_json));
              Phi0Reduction red = reduce_to_phi0(d);
              RationalPolytope P0 = P.transform(red.to_lambda0);
              std::vector<RationalPolytope> pieces0;
              for (const auto& u : pieces) pieces0.push_back(u.transform(red.to_lambda0));
              ConvexCover cover = build_cover(pieces0, P0);
              CechComplex cx = cech_cohomology(red.phi0, P0, cover);
              py::dict out;
              py::list table;
              bool vanishing = true;
              for (size_t p = 0; p < cx.cohomology.size(); ++p) {
                  const auto& h = cx.cohomology[p];
                  py::dict e;
                  e["degree"] = p;
                  e["lattice_free_rank"] = h.free_rank;
                  e["lattice_torsion"] = vec_py(h.torsion);
                  e["rational_betti"] = h.rational_betti;
                  table.append(e);
                  if (p >= 1 && !h.is_zero()) vanishing = false;
              }
              out["table"] = table;
              out["vanishing"] = vanishing;
              out["lattice_change"] = descriptor_py(red.E);
              out["surjectivity_certificate"] = wall_surjectivity_certificate(red.phi0, P0);
              return out;
          });

    m.def("cut_corner", [](const std::string& polytope_json,
                           const std::vector<std::string>& vertex, const std::string& eps) {
        RationalPolytope P = polytope_from_json(json::parse(polytope_json));
        RationalPolytope cut = cut_corner(P, point_arg(vertex), rat_arg(eps));
        return polytope_to_json(cut).dump();
    });

    m.def("weight_monoid", [](const std::vector<std::vector<long long>>& generators,
                              size_t rank) {
        std::vector<IntVec> gens;
        for (const auto& g : generators) {
            IntVec v;
            for (long long x : g) v.emplace_back(static_cast<long>(x));
            gens.push_back(v);
        }
        WeightMonoidData w = weight_monoid_data(gens, rank);
        py::dict out;
        out["saturated"] = w.saturated;
        py::list rays;
        for (const IntVec& r : w.cone_generators) rays.append(vec_py(r));
        out["cone_rays"] = rays;
        return out;
    });

    m.def("rank1_multiply", [](const std::vector<std::string>& u,
                               const std::vector<std::string>& v) {
        if (u.size() != 3 || v.size() != 3) throw Error("BadInput", "elements are (a, b, s)");
        RankOneElement x{rat_arg(u[0]), rat_arg(u[1]), rat_arg(u[2])};
        RankOneElement y{rat_arg(v[0]), rat_arg(v[1]), rat_arg(v[2])};
        x.check_invariant();
        y.check_invariant();
        RankOneElement p = multiply(x, y);
        return py::make_tuple(rat_to_string(p.a), rat_to_string(p.b), rat_to_string(p.s));
    });

    m.def("symplectic_identity_check", []() {
        SymplecticCheck c = symplectic_identity_check();
        return c.identity_holds && c.cancellation_holds;
    });
}
