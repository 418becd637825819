#pragma once
#include <string>

#include "json.hpp"

#include "gint/classifier.hpp"
#include "gint/group.hpp"
#include "gint/kmmm.hpp"
#include "gint/spectral.hpp"

namespace gint {

// every emitted document carries this marker
inline constexpr const char* kReportSchema = "gint-report/1";

// doubles rounded to 12 significant digits before serialization, so golden
// documents stay byte-stable across platforms
nlohmann::ordered_json json_float(double x);
nlohmann::ordered_json json_floats(const std::vector<double>& xs);

nlohmann::ordered_json fingerprint_json(const Fingerprint& f);
nlohmann::ordered_json group_json(const std::string& spec_text, const Group& G);
nlohmann::ordered_json spectrum_json(const SpectrumReport& r);
nlohmann::ordered_json verdict_json(const GkVerdict& v, const Group& G);
nlohmann::ordered_json kmmm_json(const KmmmReport& R, const Group& G);
nlohmann::ordered_json witness_suite_json(const WitnessSuiteReport& rep);
nlohmann::ordered_json classification_json(const std::vector<ClassificationRow>& rows);
nlohmann::ordered_json hereditary_json(const HereditaryReport& rep);

// the envelope: schema marker, command, payload fields, timing
nlohmann::ordered_json report_document(const std::string& command,
                                       nlohmann::ordered_json payload,
                                       double elapsed_seconds);
nlohmann::ordered_json error_document(const std::string& command, const std::string& type,
                                      const std::string& message,
                                      nlohmann::ordered_json detail = {});

std::string render_report(const nlohmann::ordered_json& doc);  // 2-space indent + newline

}  // namespace gint
