#include <catch2/catch_amalgamated.hpp>

#include <filesystem>

#include "fixtures.hpp"
#include "generators.hpp"
#include "woe/schema.hpp"

using Catch::Matchers::ContainsSubstring;
using namespace woe;
using namespace woe::testing;
using schema::json;

namespace {

json drug_json() { return schema::parse_json(read_text(assessment_path("drug_positive.json"))); }

Error parse_error(const json& j) {
    try {
        schema::parse_document(j);
    } catch (const Error& e) {
        return e;
    }
    FAIL("document was accepted");
    return Error(ErrorCode::Validation, "");
}

}  // namespace

TEST_CASE("shipped documents parse and evaluate", "[schema]") {
    int count = 0;
    for (const auto& entry : std::filesystem::directory_iterator(WOE_ASSESSMENTS_DIR)) {
        if (entry.path().extension() != ".json") continue;
        ++count;
        INFO(entry.path().filename().string());
        const auto doc = schema::parse_document_text(read_text(entry.path().string()));
        const auto report = evaluate(doc.assessment);
        const bool demonstrates =
            std::find(doc.tags.begin(), doc.tags.end(), "demonstrates-warning") != doc.tags.end();
        CHECK(report.warnings.empty() != demonstrates);
    }
    CHECK(count >= 5);
}

TEST_CASE("unknown fields are rejected with their path", "[schema]") {
    json j = drug_json();
    j["adjustmnts"] = json::array();
    auto e = parse_error(j);
    CHECK(e.field() == "adjustmnts");
    CHECK_THAT(std::string(e.what()), ContainsSubstring("unknown field \"adjustmnts\""));

    j = drug_json();
    j["adjustments"][1]["weight"] = 2;
    CHECK(parse_error(j).field() == "adjustments[1].weight");

    j = drug_json();
    j["baseline"]["alpha"] = 0.05;
    CHECK(parse_error(j).field() == "baseline.alpha");
}

TEST_CASE("schema_version must be 1", "[schema]") {
    json j = drug_json();
    j["schema_version"] = 2;
    const auto e = parse_error(j);
    CHECK(e.field() == "schema_version");
    CHECK_THAT(std::string(e.what()), ContainsSubstring("unsupported schema_version 2"));

    j.erase("schema_version");
    CHECK(parse_error(j).field() == "schema_version");
}

TEST_CASE("field-level validation", "[schema]") {
    json j = drug_json();
    j["prior_p_h1"] = 1.0;
    auto e = parse_error(j);
    CHECK(e.code() == ErrorCode::DegenerateProbability);
    CHECK(e.field() == "prior_p_h1");

    j = drug_json();
    j["baseline"]["power"] = 1.2;
    e = parse_error(j);
    CHECK(e.code() == ErrorCode::OutOfRange);
    CHECK(e.field() == "baseline.power");

    j = drug_json();
    j["result_direction"] = "positive";
    CHECK(parse_error(j).field() == "result_direction");

    j = drug_json();
    j["adjustments"][0]["value"] = 1.0;
    e = parse_error(j);
    CHECK(e.code() == ErrorCode::InvalidAdjustment);
    CHECK(e.field() == "adjustments[0].value");

    j = drug_json();
    j["adjustments"][0]["rationale"] = "";
    CHECK(parse_error(j).field() == "adjustments[0].rationale");

    j = drug_json();
    j["id"] = "";
    CHECK(parse_error(j).field() == "id");

    j = drug_json();
    j["baseline"]["fpr"] = "0.05";
    CHECK(parse_error(j).field() == "baseline.fpr");

    CHECK_THROWS_AS(schema::parse_document_text("{\"schema_version\": 1,"), Error);
    try {
        schema::parse_document_text("{");
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::Malformed);
    }
}

TEST_CASE("created_at must be RFC 3339", "[schema]") {
    CHECK(schema::detail::is_rfc3339("2024-03-01T09:00:00Z"));
    CHECK(schema::detail::is_rfc3339("2024-03-01T09:00:00.125+05:30"));
    CHECK_FALSE(schema::detail::is_rfc3339("2024-03-01"));
    CHECK_FALSE(schema::detail::is_rfc3339("2024-13-01T09:00:00Z"));
    CHECK_FALSE(schema::detail::is_rfc3339("yesterday"));

    json j = drug_json();
    j["created_at"] = "March 1st";
    CHECK(parse_error(j).field() == "created_at");
}

TEST_CASE("documents round-trip through JSON text", "[schema][property]") {
    Gen gen(0x5eed0001);
    for (int i = 0; i < 1000; ++i) {
        const auto doc = gen.document();
        const std::string text = schema::to_json(doc).dump();
        const auto back = schema::parse_document_text(text);
        INFO(text);
        REQUIRE(back == doc);
        REQUIRE(schema::to_json(back).dump() == text);
    }
}

TEST_CASE("reports serialize with every field", "[schema]") {
    const json j = schema::to_json(evaluate(drug(ResultDirection::Positive)));
    for (const char* key : {"result_direction", "effective", "lr_for_h1", "woe_evidence", "woe_prior", "woe_total",
                            "posterior_p_h1", "audit_trail", "warnings"}) {
        CHECK(j.contains(key));
    }
    CHECK(j["audit_trail"].size() == 2);
    CHECK(j["audit_trail"][1]["after"]["fpr"] == 0.15);
    CHECK(schema::parse_report_evidence(j).value() == j["woe_evidence"].get<double>());
}

TEST_CASE("request parsers are strict", "[schema]") {
    CHECK_THROWS_AS(schema::parse_power_request(json{{"n1", 10}, {"n2", 10}, {"p1", 0.1}, {"p2", 0.2}}), Error);
    const auto p = schema::parse_power_request(
        json{{"n1", 10}, {"n2", 10}, {"p1", 0.1}, {"p2", 0.2}, {"alpha", 0.05}, {"sides", "OneSided"}});
    CHECK(p.design.sides == Sides::OneSided);
    CHECK_FALSE(p.simulate);
    try {
        schema::parse_power_request(
            json{{"n1", 10}, {"n2", 10}, {"p1", 0.1}, {"p2", 0.2}, {"alpha", 0.05}, {"iters", 10}});
        FAIL("unknown field accepted");
    } catch (const Error& e) {
        CHECK(e.field() == "iters");
    }
    const auto c = schema::parse_convert_request(json{{"value", 10}, {"from", "woe"}, {"to", "probability"}});
    CHECK(c.to == Unit::Probability);
    CHECK_THROWS_AS(schema::parse_convert_request(json{{"value", 10}, {"from", "dB"}, {"to", "odds"}}), Error);
}
