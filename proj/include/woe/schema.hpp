#pragma once

// Canonical JSON forms of documents, reports, sweeps and power estimates.
// Parsing is strict: unknown fields, wrong types and out-of-range values are
// rejected with an Error whose field() is the dotted path of the culprit.

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "woe/assessment.hpp"
#include "woe/enum_names.hpp"
#include "woe/error.hpp"
#include "woe/power.hpp"
#include "woe/sensitivity.hpp"

namespace woe::schema {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

struct AssessmentDocument {
    StudyAssessment assessment;
    int schema_version = kSchemaVersion;
    std::optional<std::string> created_at;  // RFC 3339
    std::vector<std::string> tags;

    friend bool operator==(const AssessmentDocument&, const AssessmentDocument&) = default;
};

struct PowerRequest {
    TwoGroupBinaryDesign design;
    bool simulate = false;
    std::int64_t iterations = 100000;
    std::uint64_t seed = 1;
    unsigned workers = 1;
};

struct ConvertRequest {
    double value = 0.0;
    Unit from = Unit::Woe;
    Unit to = Unit::Woe;
};

struct DesignRequest {
    OperatingCharacteristics base;
    std::vector<OperatingCharacteristics> variants;
    ResultDirection direction = ResultDirection::Positive;
};

struct RequiredPowerRequest {
    Probability fpr;
    DecibelWeight target_woe;
};

namespace detail {

inline std::string join(const std::string& path, std::string_view key) {
    return path.empty() ? std::string(key) : path + "." + std::string(key);
}

inline std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

inline const char* type_name(const json& j) { return j.type_name(); }

/// Typed, path-aware access to one JSON object with a closed set of keys.
class Fields {
public:
    Fields(const json& j, std::string path, std::initializer_list<std::string_view> allowed)
        : j_(j), path_(std::move(path)) {
        if (!j.is_object()) {
            throw Error(ErrorCode::Validation,
                        (path_.empty() ? std::string("document") : path_) + " must be a JSON object, got " +
                            type_name(j),
                        path_);
        }
        for (const auto& [key, _] : j.items()) {
            bool known = false;
            for (auto a : allowed) known = known || a == key;
            if (!known) {
                throw Error(ErrorCode::Validation, "unknown field \"" + join(path_, key) + "\"", join(path_, key));
            }
        }
    }

    std::string field(std::string_view key) const { return join(path_, key); }
    bool has(std::string_view key) const { return j_.contains(std::string(key)); }

    const json& required(std::string_view key) const {
        auto it = j_.find(std::string(key));
        if (it == j_.end()) {
            throw Error(ErrorCode::Validation, "missing required field \"" + field(key) + "\"", field(key));
        }
        return *it;
    }

    double number(std::string_view key) const {
        const json& v = required(key);
        if (!v.is_number()) type_error(key, "a number", v);
        return v.get<double>();
    }

    std::int64_t integer(std::string_view key) const {
        const json& v = required(key);
        if (!v.is_number_integer()) type_error(key, "an integer", v);
        return v.get<std::int64_t>();
    }

    std::uint64_t unsigned_integer(std::string_view key) const {
        const json& v = required(key);
        if (!v.is_number_unsigned()) type_error(key, "a non-negative integer", v);
        return v.get<std::uint64_t>();
    }

    bool boolean(std::string_view key) const {
        const json& v = required(key);
        if (!v.is_boolean()) type_error(key, "a boolean", v);
        return v.get<bool>();
    }

    std::string string(std::string_view key) const {
        const json& v = required(key);
        if (!v.is_string()) type_error(key, "a string", v);
        return v.get<std::string>();
    }

    std::string string_or(std::string_view key, std::string fallback) const {
        return has(key) ? string(key) : fallback;
    }

    Probability probability(std::string_view key) const {
        const double v = number(key);
        if (!(v >= 0.0 && v <= 1.0)) {
            throw Error(ErrorCode::OutOfRange,
                        field(key) + " must lie in [0, 1], got " + woe::detail::fmt_value(v), field(key));
        }
        return Probability(v);
    }

    template <class E>
    E enumeration(std::string_view key) const {
        const std::string s = string(key);
        if (auto e = parse_enum<E>(s)) return *e;
        throw Error(ErrorCode::Validation,
                    field(key) + " has unknown value \"" + s + "\" (expected one of: " + enum_choices<E>() + ")",
                    field(key));
    }

    const json& array(std::string_view key) const {
        const json& v = required(key);
        if (!v.is_array()) type_error(key, "an array", v);
        return v;
    }

private:
    [[noreturn]] void type_error(std::string_view key, const char* expected, const json& got) const {
        throw Error(ErrorCode::Validation, field(key) + " must be " + expected + ", got " + type_name(got),
                    field(key));
    }

    const json& j_;
    std::string path_;
};

inline bool is_rfc3339(const std::string& s) {
    static const std::regex pattern(
        R"(^\d{4}-(0[1-9]|1[0-2])-(0[1-9]|[12]\d|3[01])[Tt ]([01]\d|2[0-3]):[0-5]\d:([0-5]\d|60)(\.\d+)?([Zz]|[+-]([01]\d|2[0-3]):[0-5]\d)$)");
    return std::regex_match(s, pattern);
}

/// Re-tags an error raised by a domain constructor with the field it came from.
template <class F>
auto at_field(const std::string& field, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const Error& e) {
        if (!e.field().empty()) throw;
        throw Error(e.code(), field + ": " + e.what(), field);
    }
}

}  // namespace detail

inline json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::Malformed, std::string("malformed JSON: ") + e.what());
    }
}

// ---- operating characteristics ------------------------------------------------

inline json to_json(const OperatingCharacteristics& oc) {
    return json{{"power", oc.power.value()}, {"fpr", oc.fpr.value()}};
}

inline OperatingCharacteristics parse_characteristics(const json& j, const std::string& path) {
    detail::Fields f(j, path, {"power", "fpr"});
    return {f.probability("power"), f.probability("fpr")};
}

// ---- assessment documents -----------------------------------------------------

inline json to_json(const Adjustment& a) {
    return json{{"target", enum_name(a.target)},
                {"mode", enum_name(a.mode)},
                {"value", a.value},
                {"rationale", a.rationale},
                {"category", enum_name(a.category)}};
}

inline Adjustment parse_adjustment(const json& j, const std::string& path) {
    detail::Fields f(j, path, {"target", "mode", "value", "rationale", "category"});
    Adjustment a;
    a.target = f.enumeration<AdjustmentTarget>("target");
    a.mode = f.enumeration<AdjustmentMode>("mode");
    a.value = f.number("value");
    a.rationale = f.string("rationale");
    a.category = f.enumeration<AdjustmentCategory>("category");
    return a;
}

inline json to_json(const AssessmentDocument& doc) {
    const StudyAssessment& a = doc.assessment;
    json adjustments = json::array();
    for (const auto& adj : a.adjustments) adjustments.push_back(to_json(adj));
    json out{{"schema_version", doc.schema_version},
             {"id", a.id},
             {"title", a.title},
             {"description", a.description}};
    if (doc.created_at) out["created_at"] = *doc.created_at;
    out["tags"] = doc.tags;
    out["result_direction"] = enum_name(a.result_direction);
    out["baseline"] = to_json(a.baseline);
    out["baseline_provenance"] = json{{"kind", enum_name(a.baseline_provenance)}, {"note", a.baseline_note}};
    out["adjustments"] = std::move(adjustments);
    out["prior_p_h1"] = a.prior_p_h1.value();
    return out;
}

inline AssessmentDocument parse_document(const json& j, const std::string& path = {}) {
    detail::Fields f(j, path,
                     {"schema_version", "id", "title", "description", "created_at", "tags", "result_direction",
                      "baseline", "baseline_provenance", "adjustments", "prior_p_h1"});
    AssessmentDocument doc;

    // Checked first: a newer document is rejected before anything else is read.
    const std::int64_t version = f.integer("schema_version");
    if (version != kSchemaVersion) {
        throw Error(ErrorCode::Validation,
                    "unsupported schema_version " + std::to_string(version) + " (this build reads version " +
                        std::to_string(kSchemaVersion) + ")",
                    f.field("schema_version"));
    }
    doc.schema_version = static_cast<int>(version);

    StudyAssessment& a = doc.assessment;
    a.id = f.string("id");
    if (a.id.empty()) throw Error(ErrorCode::Validation, "id must not be empty", f.field("id"));
    a.title = f.string_or("title", "");
    a.description = f.string_or("description", "");
    if (f.has("created_at")) {
        doc.created_at = f.string("created_at");
        if (!detail::is_rfc3339(*doc.created_at)) {
            throw Error(ErrorCode::Validation, "created_at must be an RFC 3339 timestamp", f.field("created_at"));
        }
    }
    if (f.has("tags")) {
        const json& tags = f.array("tags");
        for (std::size_t i = 0; i < tags.size(); ++i) {
            if (!tags[i].is_string()) {
                throw Error(ErrorCode::Validation, "tags must be strings", detail::index(f.field("tags"), i));
            }
            doc.tags.push_back(tags[i].get<std::string>());
        }
    }
    a.result_direction = f.enumeration<ResultDirection>("result_direction");
    a.baseline = parse_characteristics(f.required("baseline"), f.field("baseline"));
    if (f.has("baseline_provenance")) {
        detail::Fields p(f.required("baseline_provenance"), f.field("baseline_provenance"), {"kind", "note"});
        a.baseline_provenance = p.enumeration<BaselineProvenance>("kind");
        a.baseline_note = p.string_or("note", "");
    }
    if (f.has("adjustments")) {
        const json& adjustments = f.array("adjustments");
        for (std::size_t i = 0; i < adjustments.size(); ++i) {
            a.adjustments.push_back(parse_adjustment(adjustments[i], detail::index(f.field("adjustments"), i)));
        }
    }
    a.prior_p_h1 = f.probability("prior_p_h1");

    try {
        validate(a);
    } catch (const Error& e) {
        throw Error(e.code(), e.what(), detail::join(path, e.field()));
    }
    return doc;
}

inline AssessmentDocument parse_document_text(std::string_view text) { return parse_document(parse_json(text)); }

// ---- reports ------------------------------------------------------------------

inline json to_json(const AuditStep& s) {
    return json{{"index", s.index},
                {"adjustment", to_json(s.adjustment)},
                {"before", to_json(s.before)},
                {"after", to_json(s.after)},
                {"clamped", s.clamped}};
}

inline json to_json(const WoeReport& r) {
    json trail = json::array();
    for (const auto& s : r.audit_trail) trail.push_back(to_json(s));
    json warnings = json::array();
    for (const auto& w : r.warnings) warnings.push_back(json{{"code", w.code}, {"message", w.message}});
    return json{{"result_direction", enum_name(r.result_direction)},
                {"effective", to_json(r.effective)},
                {"lr_for_h1", r.lr_for_h1.value()},
                {"woe_evidence", r.woe_evidence.value()},
                {"woe_prior", r.woe_prior.value()},
                {"woe_total", r.woe_total.value()},
                {"posterior_p_h1", r.posterior_p_h1.value()},
                {"audit_trail", std::move(trail)},
                {"warnings", std::move(warnings)}};
}

/// Reads back the evidence weight of a serialized report.
inline DecibelWeight parse_report_evidence(const json& j, const std::string& path = {}) {
    detail::Fields f(j, path,
                     {"result_direction", "effective", "lr_for_h1", "woe_evidence", "woe_prior", "woe_total",
                      "posterior_p_h1", "audit_trail", "warnings"});
    return detail::at_field(f.field("woe_evidence"), [&] { return DecibelWeight(f.number("woe_evidence")); });
}

// ---- sweeps -------------------------------------------------------------------

inline SweepSpec parse_sweep_spec(const json& j) {
    detail::Fields f(j, {}, {"target", "grid", "base"});
    SweepSpec s;
    s.target = f.enumeration<SweepTarget>("target");
    const json& grid = f.array("grid");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!grid[i].is_number()) {
            throw Error(ErrorCode::Validation, "grid values must be numbers", detail::index("grid", i));
        }
        s.grid.push_back(grid[i].get<double>());
    }
    s.base = parse_document(f.required("base"), "base").assessment;
    validate(s);
    return s;
}

inline json to_json(const SweepResult& r) {
    json points = json::array();
    for (const auto& p : r.points) {
        json pt{{"value", p.value}};
        if (p.failure) {
            pt["error"] = json{{"code", to_string(p.failure->code)}, {"message", p.failure->message}};
        } else {
            pt["woe_total"] = p.woe_total;
            pt["posterior_p_h1"] = p.posterior_p_h1;
        }
        points.push_back(std::move(pt));
    }
    return json{{"target", enum_name(r.target)}, {"points", std::move(points)}};
}

// ---- power --------------------------------------------------------------------

inline PowerRequest parse_power_request(const json& j) {
    detail::Fields f(j, {}, {"n1", "n2", "p1", "p2", "alpha", "sides", "simulate", "iterations", "seed", "workers"});
    PowerRequest r;
    r.design.n1 = f.integer("n1");
    r.design.n2 = f.integer("n2");
    r.design.p1 = f.number("p1");
    r.design.p2 = f.number("p2");
    r.design.alpha = f.number("alpha");
    if (f.has("sides")) r.design.sides = f.enumeration<Sides>("sides");
    if (f.has("simulate")) r.simulate = f.boolean("simulate");
    if (f.has("iterations")) r.iterations = f.integer("iterations");
    if (f.has("seed")) r.seed = f.unsigned_integer("seed");
    if (f.has("workers")) {
        const std::int64_t w = f.integer("workers");
        if (w < 1 || w > 256) throw Error(ErrorCode::InvalidDesign, "workers must be in [1, 256]", "workers");
        r.workers = static_cast<unsigned>(w);
    }
    validate(r.design);
    return r;
}

inline json to_json(const PowerEstimate& e) {
    json out{{"power", e.power.value()}, {"method", enum_name(e.method)}, {"null_design", e.null_design}};
    if (e.method == PowerMethod::MonteCarlo) {
        out["iterations"] = e.iterations;
        out["seed"] = e.seed;
        out["mc_standard_error"] = e.mc_standard_error;
        out["workers"] = e.workers;
    }
    return out;
}

// ---- conversions, design comparisons, impacts ----------------------------------

inline ConvertRequest parse_convert_request(const json& j) {
    detail::Fields f(j, {}, {"value", "from", "to"});
    return {f.number("value"), f.enumeration<Unit>("from"), f.enumeration<Unit>("to")};
}

inline json convert_response(const ConvertRequest& r, double result) {
    return json{{"value", r.value}, {"from", enum_name(r.from)}, {"to", enum_name(r.to)}, {"result", result}};
}

inline DesignRequest parse_design_request(const json& j) {
    detail::Fields f(j, {}, {"base", "variants", "direction"});
    DesignRequest r;
    r.base = parse_characteristics(f.required("base"), "base");
    if (f.has("variants")) {
        const json& v = f.array("variants");
        for (std::size_t i = 0; i < v.size(); ++i) {
            r.variants.push_back(parse_characteristics(v[i], detail::index("variants", i)));
        }
    }
    r.direction = f.enumeration<ResultDirection>("direction");
    return r;
}

inline json to_json(const std::vector<DesignRow>& rows) {
    json out = json::array();
    for (const auto& r : rows) {
        out.push_back(json{{"power", r.characteristics.power.value()},
                           {"fpr", r.characteristics.fpr.value()},
                           {"lr", r.lr.value()},
                           {"woe", r.woe.value()},
                           {"delta_vs_base", r.delta_vs_base},
                           {"is_base", r.is_base}});
    }
    return json{{"rows", std::move(out)}};
}

inline RequiredPowerRequest parse_required_power_request(const json& j) {
    detail::Fields f(j, {}, {"fpr", "target_woe"});
    RequiredPowerRequest r;
    r.fpr = f.probability("fpr");
    r.target_woe = detail::at_field(f.field("target_woe"), [&] { return DecibelWeight(f.number("target_woe")); });
    return r;
}

inline json impacts_response(const StudyAssessment& a, double full_woe, const std::vector<AdjustmentImpact>& impacts) {
    json list = json::array();
    for (const auto& i : impacts) {
        const Adjustment& adj = a.adjustments[i.index];
        list.push_back(json{{"index", i.index},
                            {"category", enum_name(adj.category)},
                            {"rationale", adj.rationale},
                            {"woe_without", i.woe_without},
                            {"delta_woe", i.delta_woe}});
    }
    return json{{"woe_total", full_woe}, {"impacts", std::move(list)}};
}

}  // namespace woe::schema
