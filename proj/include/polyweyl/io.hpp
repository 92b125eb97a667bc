#pragma once

#include <string>

#include "polyweyl/cech.hpp"
#include "polyweyl/classify.hpp"
#include "polyweyl/local_glue.hpp"
#include "polyweyl/polytope.hpp"
#include "polyweyl/root_datum.hpp"

#include <json.hpp>

namespace polyweyl {

// JSON file schemas. All rationals are serialized as "p" or "p/q" strings and
// integer vectors as JSON arrays; every record carries schema and version.
// Parse errors throw Error("BadInput", ...) naming the offending field.

nlohmann::json datum_to_json(const RootDatum& d);
RootDatum datum_from_json(const nlohmann::json& j);

nlohmann::json polytope_to_json(const RationalPolytope& p);
RationalPolytope polytope_from_json(const nlohmann::json& j);

nlohmann::json assignment_to_json(const LocalSystemAssignment& a);
LocalSystemAssignment assignment_from_json(const nlohmann::json& j);

nlohmann::json cover_to_json(const std::vector<RationalPolytope>& pieces);
std::vector<RationalPolytope> cover_from_json(const nlohmann::json& j);

nlohmann::json oracle_to_json(const LocalOracleTable& t);
LocalOracleTable oracle_from_json(const nlohmann::json& j);

nlohmann::json sublattice_to_json(const Sublattice& L);
Sublattice sublattice_from_json(const nlohmann::json& j);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
nlohmann::json load_json(const std::string& path);

// Structured CLI reports: line-delimited JSON with a leading meta record.
// Re-parsing and re-serializing a report is byte-identical.
class Report {
public:
    explicit Report(const std::string& subcommand);

    void add(const nlohmann::json& record);
    void set_verdict(bool ok, const std::string& summary);

    std::string to_jsonl() const;
    static Report parse_jsonl(const std::string& text);

    bool verdict() const { return verdict_ok_; }
    const std::vector<nlohmann::json>& records() const { return records_; }

private:
    Report() = default;
    std::vector<nlohmann::json> records_;
    bool verdict_ok_ = false;
};

// helpers shared by schemas and the CLI
nlohmann::json rat_json(const Rat& r);
Rat rat_from_json(const nlohmann::json& j, const std::string& field);
nlohmann::json vec_json(const IntVec& v);
IntVec vec_from_json(const nlohmann::json& j, const std::string& field);
nlohmann::json ratvec_json(const RatVec& v);
RatVec ratvec_from_json(const nlohmann::json& j, const std::string& field);

}  // namespace polyweyl
