#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "polyweyl/io.hpp"

using namespace polyweyl;
using nlohmann::json;

namespace {

IntVec iv(std::initializer_list<long> xs) {
    IntVec v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

std::string run_cli(const std::string& args, int& exit_code) {
    const char* cli = std::getenv("POLYWEYL_CLI");
    REQUIRE(cli != nullptr);
    std::string cmd = std::string(cli) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, n);
    exit_code = WEXITSTATUS(pclose(pipe));
    return out;
}

}  // namespace

TEST_CASE("root datum json round trip") {
    RootDatum d = datum_bn_epsilon(2);
    json j = datum_to_json(d);
    RootDatum back = datum_from_json(j);
    CHECK(back.roots == d.roots);
    CHECK(back.coroots == d.coroots);
    CHECK(back.positive == d.positive);
    CHECK(datum_to_json(back).dump() == j.dump());
}

TEST_CASE("polytope json round trip keeps the canonical form") {
    RationalPolytope p(2, {make_ineq({1, 0}, 0), make_ineq({0, 1}, 0),
                           make_ineq({-1, -1}, Rat(-3, 2))});
    json j = polytope_to_json(p);
    RationalPolytope back = polytope_from_json(j);
    CHECK(back.inequalities() == p.inequalities());
    CHECK(polytope_to_json(back).dump() == j.dump());
}

TEST_CASE("assignment json with euclidean coroot defaults") {
    json j;
    j["schema"] = "local-assignment";
    j["version"] = 1;
    j["faces"] = json::array();
    json f;
    f["tight"] = std::vector<size_t>{0};
    json root_only;
    root_only["root"] = std::vector<long>{2};
    f["simple_roots"] = json::array({root_only});
    j["faces"].push_back(f);

    LocalSystemAssignment a = assignment_from_json(j);
    const auto& roots = a.at({0});
    REQUIRE(roots.size() == 1);
    CHECK(roots[0].root == iv({2}));
    CHECK(roots[0].coroot == iv({1}));  // 2*2/(2,2)

    // (1,2) has no integral euclidean coroot
    json bad = j;
    bad["faces"][0]["simple_roots"][0]["root"] = std::vector<long>{1, 2};
    bad["faces"][0]["tight"] = std::vector<size_t>{1};
    CHECK_THROWS_WITH_AS(assignment_from_json(bad), doctest::Contains("BadInput"), Error);

    // full round trip with explicit coroots
    json j2 = assignment_to_json(a);
    LocalSystemAssignment a2 = assignment_from_json(j2);
    CHECK(a2.at({0}) == a.at({0}));
    CHECK(assignment_to_json(a2).dump() == j2.dump());
}

TEST_CASE("cover, oracle and sublattice round trips") {
    std::vector<RationalPolytope> pieces = {
        RationalPolytope(1, {make_ineq({1}, 0), make_ineq({-1}, Rat(-2, 3))}),
        RationalPolytope(1, {make_ineq({1}, Rat(1, 3))})};
    json cj = cover_to_json(pieces);
    auto back = cover_from_json(cj);
    REQUIRE(back.size() == 2);
    CHECK(back[0].inequalities() == pieces[0].inequalities());
    CHECK(cover_to_json(back).dump() == cj.dump());

    LocalOracleTable t;
    OracleRow row;
    row.local_type = "A2";
    row.lattice_divisors = {Int(1)};
    row.admissible_cones = {{iv({1, 2}), iv({2, 1})}};
    t.rows.push_back(row);
    json oj = oracle_to_json(t);
    auto tn = oracle_from_json(oj);
    REQUIRE(tn.rows.size() == 1);
    CHECK(tn.rows[0].local_type == "A2");
    CHECK(tn.rows[0].admissible_cones == t.rows[0].admissible_cones);
    CHECK(oracle_to_json(tn).dump() == oj.dump());

    Sublattice L(2, {iv({1, 1}), iv({1, -1})});
    CHECK(sublattice_from_json(sublattice_to_json(L)) == L);
}

TEST_CASE("malformed inputs raise BadInput with the offending field") {
    json j;
    j["schema"] = "root-datum";
    j["version"] = 1;
    CHECK_THROWS_WITH_AS(datum_from_json(j), doctest::Contains("rank"), Error);
    j["rank"] = 1;
    j["roots"] = json::array({std::vector<long>{2}});
    j["coroots"] = json::array();
    j["positive"] = json::array();
    CHECK_THROWS_WITH_AS(datum_from_json(j), doctest::Contains("coroots"), Error);
    json wrong;
    wrong["schema"] = "polytope";
    wrong["version"] = 1;
    CHECK_THROWS_WITH_AS(datum_from_json(wrong), doctest::Contains("schema"), Error);
}

TEST_CASE("report serialization is byte stable") {
    Report r("demo");
    json rec;
    rec["record"] = "value";
    rec["x"] = rat_json(Rat(1, 3));
    r.add(rec);
    r.set_verdict(true, "ok");
    std::string text = r.to_jsonl();
    Report parsed = Report::parse_jsonl(text);
    CHECK(parsed.verdict());
    CHECK(parsed.to_jsonl() == text);
}

TEST_SUITE("cli") {
    TEST_CASE("structured reports round trip byte-identically") {
        if (!std::getenv("POLYWEYL_CLI")) return;  // run via the dedicated ctest entry
        const std::string data = std::string(POLYWEYL_SOURCE_DIR) + "/data";
        std::vector<std::string> invocations = {
            "delzant-check --polytope " + data + "/hirzebruch3.json --format structured",
            "su2-classify --interval 0 5 --d 3 --format structured",
            "su2-classify --interval 1 4 --d 3 --format structured",
            "mf-check --polytope " + data + "/interval01.json --lattice " + data +
                "/lattice_2z.json --root-datum " + data +
                "/sl2_datum.json --format structured",
            "cech-vanish --root-datum " + data + "/sl2_datum.json --polytope " + data +
                "/interval01.json --cover " + data + "/cover_interval.json --format structured",
            "rank1-demo --s 0 --s 4 --s 9/4 --format structured",
            "fibers --root-datum " + data + "/sl2_datum.json --point 0 --format structured",
        };
        for (const std::string& args : invocations) {
            CAPTURE(args);
            int code1 = 0, code2 = 0;
            std::string out1 = run_cli(args, code1);
            std::string out2 = run_cli(args, code2);
            CHECK(code1 == code2);
            CHECK(out1 == out2);  // determinism: same files, same bytes
            REQUIRE(!out1.empty());
            Report parsed = Report::parse_jsonl(out1);
            CHECK(parsed.to_jsonl() == out1);  // reparse and reserialize
        }
    }
    TEST_CASE("exit code contract") {
        if (!std::getenv("POLYWEYL_CLI")) return;
        const std::string data = std::string(POLYWEYL_SOURCE_DIR) + "/data";
        int code = 0;
        run_cli("delzant-check --polytope " + data + "/cp2_simplex.json", code);
        CHECK(code == 0);
        run_cli("delzant-check --polytope " + data + "/triangle_nondelzant.json", code);
        CHECK(code == 1);
        run_cli("su2-classify --interval 0 5 --d 3", code);
        CHECK(code == 1);
        run_cli("delzant-check --polytope /nonexistent.json", code);
        CHECK(code == 2);
        run_cli("su2-classify --interval 0 5 --d notanumber", code);
        CHECK(code == 2);
    }
}
