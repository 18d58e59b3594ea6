#pragma once

// JSON-in/JSON-out request handling for the /v1 API, independent of any
// transport. Handlers are stateless; every request is parsed into immutable
// values and evaluated from scratch.

#include <exception>
#include <string>
#include <string_view>

#include "woe/assessment.hpp"
#include "woe/error.hpp"
#include "woe/power.hpp"
#include "woe/schema.hpp"
#include "woe/sensitivity.hpp"
#include "woe/version.hpp"

namespace woe::service {

using schema::json;

enum class ServiceErrorCode { BadRequest, ValidationFailed, Unreachable, Internal };

inline std::string_view to_string(ServiceErrorCode c) noexcept {
    switch (c) {
        case ServiceErrorCode::BadRequest: return "BadRequest";
        case ServiceErrorCode::ValidationFailed: return "ValidationFailed";
        case ServiceErrorCode::Unreachable: return "Unreachable";
        case ServiceErrorCode::Internal: return "Internal";
    }
    return "Internal";
}

struct Response {
    int status = 200;
    json body;
};

inline Response error_response(int status, ServiceErrorCode code, const std::string& message, json detail = nullptr) {
    json body{{"code", to_string(code)}, {"message", message}};
    if (!detail.is_null()) body["detail"] = std::move(detail);
    return {status, std::move(body)};
}

/// Malformed JSON is a BadRequest; any other input problem is
/// ValidationFailed (400); failures of valid input during evaluation are
/// reported as 422 with the underlying error kind in the detail.
inline Response error_response(const Error& e) {
    json detail{{"kind", woe::to_string(e.code())}};
    if (!e.field().empty()) detail["field"] = e.field();
    if (e.code() == ErrorCode::Malformed) {
        return error_response(400, ServiceErrorCode::BadRequest, e.what(), std::move(detail));
    }
    if (is_validation(e.code())) {
        return error_response(400, ServiceErrorCode::ValidationFailed, e.what(), std::move(detail));
    }
    return error_response(422, ServiceErrorCode::Unreachable, e.what(), std::move(detail));
}

inline json evaluate_json(const json& request) {
    return schema::to_json(evaluate(schema::parse_document(request).assessment));
}

inline json sweep_json(const json& request) { return schema::to_json(sweep(schema::parse_sweep_spec(request))); }

inline json power_json(const json& request) {
    const auto req = schema::parse_power_request(request);
    const PowerEstimate est = req.simulate
                                  ? simulate_two_group_power(req.design, req.iterations, req.seed, req.workers)
                                  : two_proportion_power(req.design);
    return schema::to_json(est);
}

inline json convert_json(const json& request) {
    const auto req = schema::parse_convert_request(request);
    return schema::convert_response(req, convert(req.value, req.from, req.to));
}

inline json impacts_json(const json& request) {
    const StudyAssessment a = schema::parse_document(request).assessment;
    const auto impacts = adjustment_impacts(a);
    return schema::impacts_response(a, evaluate(a).woe_total.value(), impacts);
}

inline json design_json(const json& request) {
    const auto req = schema::parse_design_request(request);
    return schema::to_json(design_compare(req.base, req.variants, req.direction));
}

inline json required_power_json(const json& request) {
    const auto req = schema::parse_required_power_request(request);
    return json{{"fpr", req.fpr.value()},
                {"target_woe", req.target_woe.value()},
                {"power", required_power(req.fpr, req.target_woe).value()}};
}

inline json health_json() { return json{{"status", "ok"}, {"version", std::string(kVersion)}}; }

/// Routes one request. Never throws.
inline Response handle(std::string_view method, std::string_view path, std::string_view body) noexcept {
    try {
        if (path == "/v1/health") {
            if (method != "GET") return error_response(405, ServiceErrorCode::BadRequest, "use GET /v1/health");
            return {200, health_json()};
        }

        using Handler = json (*)(const json&);
        Handler handler = nullptr;
        if (path == "/v1/evaluate") handler = evaluate_json;
        else if (path == "/v1/sweep") handler = sweep_json;
        else if (path == "/v1/power") handler = power_json;
        else if (path == "/v1/convert") handler = convert_json;
        else if (path == "/v1/impacts") handler = impacts_json;
        else if (path == "/v1/design") handler = design_json;
        else if (path == "/v1/required_power") handler = required_power_json;

        if (handler == nullptr) {
            return error_response(404, ServiceErrorCode::BadRequest, "no such endpoint: " + std::string(path));
        }
        if (method != "POST") {
            return error_response(405, ServiceErrorCode::BadRequest, "use POST " + std::string(path));
        }
        return {200, handler(schema::parse_json(body))};
    } catch (const Error& e) {
        return error_response(e);
    } catch (...) {
        return error_response(500, ServiceErrorCode::Internal, "internal error");
    }
}

}  // namespace woe::service
