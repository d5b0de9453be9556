#pragma once

#include "negcf/classifier.hpp"
#include "negcf/expression.hpp"

#include <json.hpp>

namespace negcf {

inline constexpr const char* kSchemaVersion = "1";

/// Echo of the parsed input shared by every JSON document.
nlohmann::json input_json(const CfExpression& expr);

/// Serialized classification. `digits` controls the decimal rendering of an
/// enclosure; `trace_excerpt` caps the number of trace entries included.
nlohmann::json report_json(const CfExpression& expr, const ClassificationReport& report, int digits,
                           std::size_t trace_excerpt = 50);

nlohmann::json certificate_json(const CycleCertificate& cert);

}  // namespace negcf
