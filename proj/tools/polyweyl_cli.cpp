// polyweyl: exact root-datum, polytope, gluing, cohomology and classification
// computations from the command line. All arithmetic is exact; all output is
// deterministic. Exit codes: 0 = positive verdict / success, 1 = negative
// verdict, 2 = usage or input error.

#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "polyweyl/cech.hpp"
#include "polyweyl/classify.hpp"
#include "polyweyl/io.hpp"
#include "polyweyl/local_glue.hpp"
#include "polyweyl/rank_one.hpp"

using namespace polyweyl;
using nlohmann::json;

namespace {

struct OutputOptions {
    std::string format = "human";
};

RatVec parse_point(const std::string& text) {
    RatVec out;
    std::istringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        auto r = rat_from_string(tok);
        if (!r) throw Error("BadInput", "unparsable coordinate '" + tok + "'");
        out.push_back(*r);
    }
    if (out.empty()) throw Error("BadInput", "empty point");
    return out;
}

std::string vec_str(const IntVec& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].get_str();
    }
    return s + "]";
}

std::string ratvec_str(const RatVec& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += rat_to_string(v[i]);
    }
    return s + "]";
}

std::string descriptor_str(const DiagonalizableGroupDescriptor& d) {
    std::string s;
    if (d.torus_rank > 0) s += "torus rank " + std::to_string(d.torus_rank);
    if (!d.torsion.empty()) {
        if (!s.empty()) s += " x ";
        s += "torsion [";
        for (size_t i = 0; i < d.torsion.size(); ++i) {
            if (i) s += ",";
            s += d.torsion[i].get_str();
        }
        s += "]";
    }
    if (s.empty()) s = "trivial";
    return s;
}

int emit(const Report& report, const OutputOptions& opt, const std::string& human) {
    if (opt.format == "structured") std::cout << report.to_jsonl();
    else std::cout << human;
    return report.verdict() ? 0 : 1;
}

int run_delzant(const std::string& polytope_path, const std::string& lattice_path,
                const OutputOptions& opt) {
    RationalPolytope Q = polytope_from_json(load_json(polytope_path));
    Sublattice lambda = lattice_path.empty()
                            ? Sublattice::full(Q.dim())
                            : sublattice_from_json(load_json(lattice_path));
    DelzantVerdict v = delzant_check(Q, lambda);

    Report report("delzant-check");
    std::ostringstream human;
    for (const auto& c : v.certificates) {
        json rec;
        rec["record"] = "vertex";
        rec["vertex"] = ratvec_json(c.vertex);
        rec["simple"] = c.simple;
        rec["unimodular"] = c.unimodular;
        rec["det"] = c.det.get_str();
        json dirs = json::array();
        for (const IntVec& d : c.edge_dirs) dirs.push_back(vec_json(d));
        rec["edges"] = dirs;
        report.add(rec);
        human << "vertex " << ratvec_str(c.vertex) << ": "
              << (c.simple && c.unimodular ? "ok" : "FAIL") << " (det " << c.det.get_str()
              << ", " << c.edge_dirs.size() << " edges)\n";
    }
    report.set_verdict(v.delzant, v.delzant ? "Delzant" : "not Delzant");
    human << (v.delzant ? "Delzant: yes\n" : "Delzant: no\n");
    return emit(report, opt, human.str());
}

int run_su2(bool have_point, const Rat& x, const Rat& y, long d, const OutputOptions& opt) {
    Report report("su2-classify");
    std::ostringstream human;
    try {
        Su2Classification c = have_point ? classify_su2(x, x, d) : classify_su2(x, y, d);
        json rec;
        rec["record"] = "classification";
        rec["case"] = (c.tag == Su2Case::Point)          ? "point"
                      : (c.tag == Su2Case::WallInterval) ? "wall-interval"
                                                         : "interior-interval";
        rec["x"] = rat_json(c.x);
        rec["y"] = rat_json(c.y);
        rec["d"] = c.d.get_str();
        rec["manifold"] = c.manifold;
        report.add(rec);
        report.set_verdict(true, c.manifold);
        human << "manifold: " << c.manifold << "\n";
        return emit(report, opt, human.str());
    } catch (const Error& e) {
        if (e.code() != "InvalidPair") throw;
        report.set_verdict(false, std::string(e.what()) + "; admissible d: {1,2,4}");
        human << "no manifold: " << e.what() << " (admissible d: {1,2,4})\n";
        return emit(report, opt, human.str());
    }
}

int run_mf_check(const std::string& polytope_path, const std::string& lattice_path,
                 const std::string& datum_path, const std::string& oracle_path,
                 const std::string& faces, const OutputOptions& opt) {
    MomentumData data;
    data.Q = polytope_from_json(load_json(polytope_path));
    data.lambda0 = sublattice_from_json(load_json(lattice_path));
    RootDatum ambient = datum_from_json(load_json(datum_path));
    LocalOracleTable oracle;
    if (!oracle_path.empty()) oracle = oracle_from_json(load_json(oracle_path));

    MfResult r = mf_check(data, ambient, oracle, faces == "vertices");

    Report report("mf-check");
    std::ostringstream human;
    for (const auto& f : r.faces) {
        json rec;
        rec["record"] = "face";
        rec["point"] = ratvec_json(f.point);
        rec["local_type"] = f.local_type;
        rec["verdict"] = (f.verdict == MfVerdict::MultiplicityFree)    ? "mf"
                         : (f.verdict == MfVerdict::NotMultiplicityFree) ? "not-mf"
                                                                         : "undecided";
        rec["reason"] = f.reason;
        report.add(rec);
        human << "point " << ratvec_str(f.point) << " [" << f.local_type
              << "]: " << rec["verdict"].get<std::string>() << " (" << f.reason << ")\n";
    }
    bool ok = r.verdict == MfVerdict::MultiplicityFree;
    std::string summary = ok                                             ? "multiplicity free"
                          : (r.verdict == MfVerdict::NotMultiplicityFree) ? "not multiplicity free"
                                                                          : "undecided";
    report.set_verdict(ok, summary);
    human << "verdict: " << summary << "\n";
    return emit(report, opt, human.str());
}

int run_glue(const std::string& polytope_path, const std::string& assignment_path,
             const std::string& datum_path, const OutputOptions& opt) {
    RationalPolytope P = polytope_from_json(load_json(polytope_path));
    LocalSystemAssignment L;
    if (!assignment_path.empty()) {
        L = assignment_from_json(load_json(assignment_path));
    } else if (!datum_path.empty()) {
        L = induced_assignment(datum_from_json(load_json(datum_path)), P);
    } else {
        throw Error("BadInput", "glue-weyl needs --assignment or --root-datum");
    }
    CoherenceReport coherence = check_coherence(L, P);
    Report report("glue-weyl");
    std::ostringstream human;
    for (const auto& v : coherence.violations) {
        json rec;
        rec["record"] = "coherence-violation";
        rec["face"] = v.face;
        rec["subface"] = v.subface;
        rec["detail"] = v.detail;
        report.add(rec);
        human << "coherence violation between faces\n";
    }
    if (!coherence.clean()) {
        report.set_verdict(false, "assignment is not coherent");
        human << "verdict: incoherent assignment\n";
        return emit(report, opt, human.str());
    }
    GluedSystem g = glue_weyl(L, P);
    json rec;
    rec["record"] = "glued-system";
    json simples = json::array();
    for (const LocalRoot& s : g.simples) {
        json e;
        e["root"] = vec_json(s.root);
        e["coroot"] = vec_json(s.coroot);
        simples.push_back(e);
    }
    rec["simples"] = simples;
    rec["num_roots"] = g.datum.num_roots();
    rec["weyl_order"] = g.weyl.order();
    report.add(rec);
    report.set_verdict(true, "glued");
    human << "simple roots:";
    for (const LocalRoot& s : g.simples) human << " " << vec_str(s.root);
    human << "\nroots: " << g.datum.num_roots() << "\nWeyl order: " << g.weyl.order() << "\n";
    return emit(report, opt, human.str());
}

int run_phi_m(const std::string& polytope_path, const std::string& assignment_path,
              const std::string& datum_path, const std::string& lattice_path,
              const OutputOptions& opt) {
    RationalPolytope P = polytope_from_json(load_json(polytope_path));
    LocalSystemAssignment L;
    if (!assignment_path.empty()) L = assignment_from_json(load_json(assignment_path));
    else if (!datum_path.empty())
        L = induced_assignment(datum_from_json(load_json(datum_path)), P);
    else throw Error("BadInput", "phi-m needs --assignment or --root-datum");
    Sublattice lambda_m = lattice_path.empty()
                              ? Sublattice::full(P.dim())
                              : sublattice_from_json(load_json(lattice_path));
    GluedSystem g = glue_weyl(L, P);
    PhiMResult r = construct_phi_m(lambda_m, g.weyl, L, P);

    Report report("phi-m");
    std::ostringstream human;
    json rec;
    rec["record"] = "phi-m";
    rec["datum"] = datum_to_json(r.phi_m);
    json halved = json::array();
    for (const IntVec& h : r.halved_simples) halved.push_back(vec_json(h));
    rec["halved"] = halved;
    json defaulted = json::array();
    for (const IntVec& h : r.defaulted_simples) defaulted.push_back(vec_json(h));
    rec["defaulted_walls"] = defaulted;
    report.add(rec);
    auto sections = global_sections(r.phi_m);
    json sec;
    sec["record"] = "global-sections";
    sec["torus_rank"] = sections.torus_rank;
    sec["torsion"] = vec_json(sections.torsion);
    report.add(sec);
    report.set_verdict(true, "constructed");
    human << "roots of Phi_M (Lambda_M coordinates):";
    for (size_t i : r.phi_m.positive) human << " " << vec_str(r.phi_m.roots[i]);
    human << "\nhalved simple roots: " << r.halved_simples.size();
    human << "\ncritical walls missing P (defaulted): " << r.defaulted_simples.size();
    human << "\nA^Phi_M: " << descriptor_str(sections) << "\n";
    for (const IntVec& h : r.defaulted_simples)
        human << "warning: wall of " << vec_str(h) << " misses the polytope; kept maximal\n";
    return emit(report, opt, human.str());
}

int run_fibers(const std::string& datum_path, const std::vector<std::string>& points,
               const OutputOptions& opt) {
    RootDatum d = datum_from_json(load_json(datum_path));
    Report report("fibers");
    std::ostringstream human;
    for (const std::string& text : points) {
        RatVec a = parse_point(text);
        FiberStructure f = fiber_structure(d, a);
        json rec;
        rec["record"] = "fiber";
        rec["point"] = ratvec_json(a);
        rec["torus_rank"] = f.semisimple.torus_rank;
        rec["torsion"] = vec_json(f.semisimple.torsion);
        rec["unipotent_rank"] = f.unipotent_rank;
        rec["local_roots"] = f.local_roots;
        report.add(rec);
        human << "a = " << ratvec_str(a) << ": semisimple " << descriptor_str(f.semisimple)
              << ", unipotent rank " << f.unipotent_rank << ", |Delta_a| = "
              << f.local_roots.size() << "\n";
    }
    report.set_verdict(true, "computed");
    return emit(report, opt, human.str());
}

int run_sections(const std::string& datum_path, const std::string& polytope_path,
                 const std::string& piece_path, const OutputOptions& opt) {
    RootDatum d = datum_from_json(load_json(datum_path));
    RationalPolytope P = polytope_from_json(load_json(polytope_path));
    Phi0Reduction red = reduce_to_phi0(d);
    RationalPolytope P0 = P.transform(red.to_lambda0);
    KPlusSections sec;
    if (piece_path.empty()) {
        sec = global_kplus(red.phi0, P0);
    } else {
        RationalPolytope U0 =
            polytope_from_json(load_json(piece_path)).transform(red.to_lambda0);
        sec = sections_kplus(red.phi0, P0, U0);
    }
    Report report("sections");
    std::ostringstream human;
    json rec;
    rec["record"] = "sections";
    rec["lattice_change"] = descriptor_str(red.E);
    json basis = json::array();
    for (const IntVec& b : sec.lattice.basis()) basis.push_back(vec_json(b));
    rec["gamma_basis"] = basis;
    rec["active_walls"] = sec.active_walls;
    rec["rational_part"] = 1;
    report.add(rec);
    report.set_verdict(true, "computed");
    human << "E = Hom(Lambda/Lambda_0, C^x): " << descriptor_str(red.E) << "\n";
    human << "active walls: " << sec.active_walls.size() << "\n";
    human << "gamma lattice basis (Lambda_0 dual coordinates):";
    for (const IntVec& b : sec.lattice.basis()) human << " " << vec_str(b);
    human << "\nrational part: rank 1 (the constant)\n";
    return emit(report, opt, human.str());
}

int run_cech(const std::string& datum_path, const std::string& polytope_path,
             const std::string& cover_path, const std::string& strict_eps,
             const OutputOptions& opt) {
    RootDatum d = datum_from_json(load_json(datum_path));
    RationalPolytope P = polytope_from_json(load_json(polytope_path));
    std::vector<RationalPolytope> pieces = cover_from_json(load_json(cover_path));
    Phi0Reduction red = reduce_to_phi0(d);
    RationalPolytope P0 = P.transform(red.to_lambda0);
    std::vector<RationalPolytope> pieces0;
    for (const RationalPolytope& u : pieces) pieces0.push_back(u.transform(red.to_lambda0));
    if (!strict_eps.empty()) {
        auto eps = rat_from_string(strict_eps);
        if (!eps || *eps <= 0) throw Error("BadInput", "--strict-open needs a positive rational");
        pieces0 = shrink_pieces(pieces0, *eps);
    }
    ConvexCover cover = build_cover(pieces0, P0);
    CechComplex cx = cech_cohomology(red.phi0, P0, cover);

    Report report("cech-vanish");
    std::ostringstream human;
    bool vanishing = true;
    human << "E: " << descriptor_str(red.E) << "\n";
    human << "nerve size: " << cover.nerve.size() << "\n";
    for (size_t p = 0; p < cx.cohomology.size(); ++p) {
        const auto& h = cx.cohomology[p];
        json rec;
        rec["record"] = "cohomology";
        rec["degree"] = p;
        rec["lattice_free_rank"] = h.free_rank;
        rec["lattice_torsion"] = vec_json(h.torsion);
        rec["rational_betti"] = h.rational_betti;
        report.add(rec);
        human << "H^" << p << ": lattice free rank " << h.free_rank << ", torsion [";
        for (size_t i = 0; i < h.torsion.size(); ++i)
            human << (i ? "," : "") << h.torsion[i].get_str();
        human << "], rational betti " << h.rational_betti << "\n";
        if (p >= 1 && !h.is_zero()) vanishing = false;
    }
    json cert;
    cert["record"] = "surjectivity";
    cert["all_divisors_one"] = wall_surjectivity_certificate(red.phi0, P0);
    report.add(cert);
    report.set_verdict(vanishing, vanishing ? "higher cohomology vanishes"
                                            : "nonzero higher cohomology");
    human << "wall surjectivity certificate: "
          << (cert["all_divisors_one"].get<bool>() ? "yes" : "no") << "\n";
    human << (vanishing ? "vanishing: yes\n" : "vanishing: NO\n");
    return emit(report, opt, human.str());
}

int run_rank1(const std::vector<std::string>& s_values, const OutputOptions& opt) {
    Report report("rank1-demo");
    std::ostringstream human;
    for (const std::string& text : s_values) {
        auto s = rat_from_string(text);
        if (!s) throw Error("BadInput", "unparsable s value '" + text + "'");
        FiberDescriptor f = fiber_decompose(*s);
        json rec;
        rec["record"] = "fiber";
        rec["s"] = rat_json(*s);
        rec["kind"] = f.torus ? "torus" : "degenerate";
        rec["component_order"] = f.component_order;
        rec["unipotent_rank"] = f.unipotent_rank;
        report.add(rec);
        human << "s = " << rat_to_string(*s) << ": "
              << (f.torus ? "one-dimensional torus"
                          : "{+-1} x additive line (component order 2)")
              << "\n";
    }
    SymplecticCheck sym = symplectic_identity_check();
    json rec;
    rec["record"] = "symplectic-identity";
    rec["identity"] = sym.identity_holds;
    rec["cancellation"] = sym.cancellation_holds;
    report.add(rec);
    human << "symplectic identity: " << (sym.identity_holds ? "holds" : "FAILS") << "\n";
    human << "cancellation bridge: " << (sym.cancellation_holds ? "holds" : "FAILS") << "\n";
    report.set_verdict(sym.identity_holds && sym.cancellation_holds, "rank-one demo");
    return emit(report, opt, human.str());
}

int run_cut(const std::string& polytope_path, const std::string& vertex_text,
            const std::string& eps_text, const std::string& out_path,
            const OutputOptions& opt) {
    RationalPolytope P = polytope_from_json(load_json(polytope_path));
    RatVec v = parse_point(vertex_text);
    auto eps = rat_from_string(eps_text);
    if (!eps) throw Error("BadInput", "unparsable epsilon '" + eps_text + "'");
    RationalPolytope cut = cut_corner(P, v, *eps);
    json out = polytope_to_json(cut);
    if (!out_path.empty()) write_text_file(out_path, out.dump() + "\n");
    Report report("cut-corner");
    json rec;
    rec["record"] = "polytope";
    rec["polytope"] = out;
    report.add(rec);
    report.set_verdict(true, "cut");
    std::ostringstream human;
    human << "inequalities after the cut:\n";
    for (const Inequality& q : cut.inequalities())
        human << "  " << vec_str(q.normal) << " . x >= " << rat_to_string(q.offset) << "\n";
    return emit(report, opt, human.str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computations for multiplicity free momentum data"};
    app.require_subcommand(1);
    app.fallthrough();
    OutputOptions opt;
    app.add_option("--format", opt.format, "human or structured (JSONL)")
        ->check(CLI::IsMember({"human", "structured"}));

    std::string polytope_path, lattice_path, datum_path, oracle_path, assignment_path,
        cover_path, piece_path, out_path, vertex_text, eps_text, strict_eps;
    std::string faces = "vertices";
    std::vector<std::string> points, s_values;
    bool have_point = false;
    std::pair<std::string, std::string> interval_arg;
    std::string point_arg;
    long d_arg = 0;

    auto* delzant = app.add_subcommand("delzant-check", "per-vertex Delzant test");
    delzant->add_option("--polytope", polytope_path)->required();
    delzant->add_option("--lattice", lattice_path);

    auto* su2 = app.add_subcommand("su2-classify", "rank-one classification table");
    auto* point_opt = su2->add_option("--point", point_arg, "single point x");
    su2->add_option("--interval", interval_arg, "interval ends x y")->excludes(point_opt);
    su2->add_option("--d", d_arg, "lattice scale (0 for a point)");

    auto* mf = app.add_subcommand("mf-check", "face-by-face multiplicity free test");
    mf->add_option("--polytope", polytope_path)->required();
    mf->add_option("--lattice", lattice_path)->required();
    mf->add_option("--root-datum", datum_path)->required();
    mf->add_option("--oracle", oracle_path);
    mf->add_option("--faces", faces)->check(CLI::IsMember({"vertices", "all"}));

    auto* glue = app.add_subcommand("glue-weyl", "glue local systems to a global one");
    glue->add_option("--polytope", polytope_path)->required();
    glue->add_option("--assignment", assignment_path);
    glue->add_option("--root-datum", datum_path);

    auto* phim = app.add_subcommand("phi-m", "critical-root halving of the maximal system");
    phim->add_option("--polytope", polytope_path)->required();
    phim->add_option("--assignment", assignment_path);
    phim->add_option("--root-datum", datum_path);
    phim->add_option("--lattice", lattice_path);

    auto* fibers = app.add_subcommand("fibers", "group-scheme fiber structure at points");
    fibers->add_option("--root-datum", datum_path)->required();
    fibers->add_option("--point", points, "rational point, e.g. 1/2,0")->required();

    auto* sections = app.add_subcommand("sections", "sections of K+ over a cover piece");
    sections->add_option("--root-datum", datum_path)->required();
    sections->add_option("--polytope", polytope_path)->required();
    sections->add_option("--piece", piece_path);

    auto* cech = app.add_subcommand("cech-vanish", "Cech cohomology of K+ for a cover");
    cech->add_option("--root-datum", datum_path)->required();
    cech->add_option("--polytope", polytope_path)->required();
    cech->add_option("--cover", cover_path)->required();
    cech->add_option("--strict-open", strict_eps, "shrink pieces by a rational epsilon");

    auto* rank1 = app.add_subcommand("rank1-demo", "rank-one fiber table and form identity");
    rank1->add_option("--s", s_values, "base values, e.g. 0 4 -1 9/4")->required();

    auto* cut = app.add_subcommand("cut-corner", "symplectic corner cut at a vertex");
    cut->add_option("--polytope", polytope_path)->required();
    cut->add_option("--vertex", vertex_text)->required();
    cut->add_option("--eps", eps_text)->required();
    cut->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (delzant->parsed()) return run_delzant(polytope_path, lattice_path, opt);
        if (su2->parsed()) {
            have_point = point_opt->count() > 0;
            Rat x = 0, y = 0;
            if (have_point) {
                auto r = rat_from_string(point_arg);
                if (!r) throw Error("BadInput", "unparsable --point");
                x = y = *r;
            } else {
                auto rx = rat_from_string(interval_arg.first);
                auto ry = rat_from_string(interval_arg.second);
                if (!rx || !ry) throw Error("BadInput", "unparsable --interval");
                x = *rx;
                y = *ry;
            }
            return run_su2(have_point, x, y, d_arg, opt);
        }
        if (mf->parsed())
            return run_mf_check(polytope_path, lattice_path, datum_path, oracle_path, faces,
                                opt);
        if (glue->parsed()) return run_glue(polytope_path, assignment_path, datum_path, opt);
        if (phim->parsed())
            return run_phi_m(polytope_path, assignment_path, datum_path, lattice_path, opt);
        if (fibers->parsed()) return run_fibers(datum_path, points, opt);
        if (sections->parsed()) return run_sections(datum_path, polytope_path, piece_path, opt);
        if (cech->parsed())
            return run_cech(datum_path, polytope_path, cover_path, strict_eps, opt);
        if (rank1->parsed()) return run_rank1(s_values, opt);
        if (cut->parsed()) return run_cut(polytope_path, vertex_text, eps_text, out_path, opt);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::cerr << "error: no subcommand\n";
    return 2;
}
