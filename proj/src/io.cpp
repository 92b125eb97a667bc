#include "polyweyl/io.hpp"

#include <fstream>
#include <sstream>

namespace polyweyl {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& why) {
    throw Error("BadInput", "field '" + field + "': " + why);
}

const json& need(const json& j, const std::string& field) {
    if (!j.is_object() || !j.contains(field)) bad(field, "missing");
    return j.at(field);
}

size_t need_count(const json& j, const std::string& field) {
    const json& v = need(j, field);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
        bad(field, "expected a nonnegative integer");
    return v.get<size_t>();
}

void need_schema(const json& j, const std::string& schema) {
    if (need(j, "schema").get<std::string>() != schema) bad("schema", "expected " + schema);
    if (need_count(j, "version") != 1) bad("version", "unsupported version");
}

}  // namespace

json rat_json(const Rat& r) { return rat_to_string(r); }

Rat rat_from_json(const json& j, const std::string& field) {
    if (j.is_number_integer()) return Rat(Int(static_cast<long>(j.get<long long>())));
    if (!j.is_string()) bad(field, "expected a rational as \"p\" or \"p/q\"");
    auto r = rat_from_string(j.get<std::string>());
    if (!r) bad(field, "unparsable rational '" + j.get<std::string>() + "'");
    return *r;
}

json vec_json(const IntVec& v) {
    json out = json::array();
    for (const Int& x : v) {
        if (x.fits_slong_p()) out.push_back(x.get_si());
        else out.push_back(x.get_str());
    }
    return out;
}

IntVec vec_from_json(const json& j, const std::string& field) {
    if (!j.is_array()) bad(field, "expected an array of integers");
    IntVec v;
    for (const json& x : j) {
        if (x.is_number_integer()) v.emplace_back(static_cast<long>(x.get<long long>()));
        else if (x.is_string()) v.emplace_back(Int(x.get<std::string>()));
        else bad(field, "expected integer entries");
    }
    return v;
}

json ratvec_json(const RatVec& v) {
    json out = json::array();
    for (const Rat& x : v) out.push_back(rat_json(x));
    return out;
}

RatVec ratvec_from_json(const json& j, const std::string& field) {
    if (!j.is_array()) bad(field, "expected an array of rationals");
    RatVec v;
    for (const json& x : j) v.push_back(rat_from_json(x, field));
    return v;
}

json datum_to_json(const RootDatum& d) {
    json j;
    j["schema"] = "root-datum";
    j["version"] = 1;
    j["rank"] = d.rank;
    j["roots"] = json::array();
    j["coroots"] = json::array();
    for (const IntVec& r : d.roots) j["roots"].push_back(vec_json(r));
    for (const IntVec& c : d.coroots) j["coroots"].push_back(vec_json(c));
    j["positive"] = d.positive;
    return j;
}

RootDatum datum_from_json(const json& j) {
    need_schema(j, "root-datum");
    RootDatum d;
    d.rank = need_count(j, "rank");
    for (const json& r : need(j, "roots")) d.roots.push_back(vec_from_json(r, "roots"));
    for (const json& c : need(j, "coroots")) d.coroots.push_back(vec_from_json(c, "coroots"));
    for (const json& p : need(j, "positive")) {
        if (!p.is_number_integer()) bad("positive", "expected index list");
        d.positive.push_back(p.get<size_t>());
    }
    if (d.roots.size() != d.coroots.size()) bad("coroots", "not parallel to roots");
    for (size_t i : d.positive)
        if (i >= d.roots.size()) bad("positive", "index out of range");
    d.validate();
    return d;
}

json polytope_to_json(const RationalPolytope& p) {
    json j;
    j["schema"] = "polytope";
    j["version"] = 1;
    j["dim"] = p.dim();
    j["inequalities"] = json::array();
    for (const Inequality& q : p.inequalities()) {
        json e;
        e["normal"] = vec_json(q.normal);
        e["offset"] = rat_json(q.offset);
        j["inequalities"].push_back(e);
    }
    return j;
}

RationalPolytope polytope_from_json(const json& j) {
    need_schema(j, "polytope");
    size_t dim = need_count(j, "dim");
    std::vector<Inequality> qs;
    for (const json& e : need(j, "inequalities")) {
        Inequality q;
        q.normal = vec_from_json(need(e, "normal"), "normal");
        if (q.normal.size() != dim) bad("normal", "wrong dimension");
        q.offset = rat_from_json(need(e, "offset"), "offset");
        qs.push_back(std::move(q));
    }
    return RationalPolytope(dim, std::move(qs));
}

json assignment_to_json(const LocalSystemAssignment& a) {
    json j;
    j["schema"] = "local-assignment";
    j["version"] = 1;
    j["faces"] = json::array();
    for (const auto& [tight, roots] : a.by_face) {
        json f;
        f["tight"] = tight;
        f["simple_roots"] = json::array();
        for (const LocalRoot& r : roots) {
            json e;
            e["root"] = vec_json(r.root);
            e["coroot"] = vec_json(r.coroot);
            f["simple_roots"].push_back(e);
        }
        j["faces"].push_back(f);
    }
    return j;
}

LocalSystemAssignment assignment_from_json(const json& j) {
    need_schema(j, "local-assignment");
    LocalSystemAssignment a;
    for (const json& f : need(j, "faces")) {
        std::vector<size_t> tight;
        for (const json& t : need(f, "tight")) tight.push_back(t.get<size_t>());
        std::vector<LocalRoot> roots;
        for (const json& e : need(f, "simple_roots")) {
            LocalRoot r;
            r.root = vec_from_json(need(e, "root"), "root");
            if (e.contains("coroot")) {
                r.coroot = vec_from_json(e.at("coroot"), "coroot");
            } else {
                // Euclidean coroot 2a/(a,a) must be integral
                Int norm = dot(r.root, r.root);
                if (norm == 0) bad("root", "zero root");
                r.coroot.resize(r.root.size());
                for (size_t t = 0; t < r.root.size(); ++t) {
                    Int twice = 2 * r.root[t];
                    if (twice % norm != 0)
                        bad("coroot", "no integral Euclidean coroot; supply one explicitly");
                    r.coroot[t] = twice / norm;
                }
            }
            roots.push_back(std::move(r));
        }
        std::sort(roots.begin(), roots.end());
        a.by_face[tight] = std::move(roots);
    }
    return a;
}

json cover_to_json(const std::vector<RationalPolytope>& pieces) {
    json j;
    j["schema"] = "cover";
    j["version"] = 1;
    j["pieces"] = json::array();
    for (const RationalPolytope& p : pieces) j["pieces"].push_back(polytope_to_json(p));
    return j;
}

std::vector<RationalPolytope> cover_from_json(const json& j) {
    need_schema(j, "cover");
    std::vector<RationalPolytope> pieces;
    for (const json& p : need(j, "pieces")) pieces.push_back(polytope_from_json(p));
    return pieces;
}

json oracle_to_json(const LocalOracleTable& t) {
    json j;
    j["schema"] = "oracle-extension";
    j["version"] = 1;
    j["rows"] = json::array();
    for (const OracleRow& r : t.rows) {
        json e;
        e["type"] = r.local_type;
        e["lattice_divisors"] = vec_json(r.lattice_divisors);
        e["cones"] = json::array();
        for (const auto& cone : r.admissible_cones) {
            json c = json::array();
            for (const IntVec& g : cone) c.push_back(vec_json(g));
            e["cones"].push_back(c);
        }
        j["rows"].push_back(e);
    }
    return j;
}

LocalOracleTable oracle_from_json(const json& j) {
    need_schema(j, "oracle-extension");
    LocalOracleTable t;
    for (const json& e : need(j, "rows")) {
        OracleRow r;
        r.local_type = need(e, "type").get<std::string>();
        r.lattice_divisors = vec_from_json(need(e, "lattice_divisors"), "lattice_divisors");
        for (const json& c : need(e, "cones")) {
            std::vector<IntVec> cone;
            for (const json& g : c) cone.push_back(vec_from_json(g, "cones"));
            r.admissible_cones.push_back(std::move(cone));
        }
        t.rows.push_back(std::move(r));
    }
    return t;
}

json sublattice_to_json(const Sublattice& L) {
    json j;
    j["schema"] = "sublattice";
    j["version"] = 1;
    j["ambient_rank"] = L.ambient_rank();
    j["generators"] = json::array();
    for (const IntVec& g : L.generators()) j["generators"].push_back(vec_json(g));
    return j;
}

Sublattice sublattice_from_json(const json& j) {
    need_schema(j, "sublattice");
    size_t rank = need_count(j, "ambient_rank");
    std::vector<IntVec> gens;
    for (const json& g : need(j, "generators")) {
        IntVec v = vec_from_json(g, "generators");
        if (v.size() != rank) bad("generators", "wrong rank");
        gens.push_back(std::move(v));
    }
    return Sublattice(rank, std::move(gens));
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("BadInput", "cannot open file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("BadInput", "cannot write file " + path);
    out << content;
}

json load_json(const std::string& path) {
    try {
        return json::parse(read_text_file(path));
    } catch (const json::parse_error& e) {
        throw Error("BadInput", std::string("invalid JSON in ") + path + ": " + e.what());
    }
}

Report::Report(const std::string& subcommand) {
    json meta;
    meta["record"] = "meta";
    meta["schema"] = "report";
    meta["version"] = 1;
    meta["subcommand"] = subcommand;
    records_.push_back(std::move(meta));
}

void Report::add(const json& record) { records_.push_back(record); }

void Report::set_verdict(bool ok, const std::string& summary) {
    verdict_ok_ = ok;
    json v;
    v["record"] = "verdict";
    v["ok"] = ok;
    v["summary"] = summary;
    records_.push_back(std::move(v));
}

std::string Report::to_jsonl() const {
    std::string out;
    for (const json& r : records_) {
        out += r.dump();
        out += "\n";
    }
    return out;
}

Report Report::parse_jsonl(const std::string& text) {
    Report r;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json rec = json::parse(line);
        if (rec.contains("record") && rec["record"] == "verdict" && rec.contains("ok"))
            r.verdict_ok_ = rec["ok"].get<bool>();
        r.records_.push_back(std::move(rec));
    }
    return r;
}

}  // namespace polyweyl
