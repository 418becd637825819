#include "gint/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

using nlohmann::ordered_json;

namespace gint {

ordered_json json_float(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

ordered_json json_floats(const std::vector<double>& xs) {
    ordered_json arr = ordered_json::array();
    for (double x : xs) arr.push_back(json_float(x));
    return arr;
}

ordered_json fingerprint_json(const Fingerprint& f) {
    ordered_json profile = ordered_json::array();
    for (const auto& [ord, count] : f.profile) profile.push_back({ord, count});
    return {{"order", f.order},
            {"abelian", f.abelian},
            {"exponent", f.exponent},
            {"centerOrder", f.center_order},
            {"profile", profile},
            {"abelianization", f.abelianization}};
}

ordered_json group_json(const std::string& spec_text, const Group& G) {
    return {{"spec", spec_text},
            {"name", G.name},
            {"order", G.n},
            {"fingerprint", fingerprint_json(fingerprint(G))}};
}

ordered_json spectrum_json(const SpectrumReport& r) {
    ordered_json ints = ordered_json::array();
    for (const auto& [value, mult] : r.integer_eigenvalues) ints.push_back({value, mult});
    ordered_json out{{"n", r.n},
                     {"degree", r.degree},
                     {"integral", r.integral},
                     {"integerEigenvalues", ints},
                     {"floatSpectrum", json_floats(r.float_eigenvalues)},
                     {"charPolynomial", r.char_polynomial.coeff_strings()}};
    if (!r.integral) {
        out["evidenceEigenvalue"] = json_float(r.evidence_eigenvalue);
        out["evidenceGap"] = json_float(r.evidence_gap);
    }
    return out;
}

ordered_json verdict_json(const GkVerdict& v, const Group& G) {
    ordered_json out{{"group", v.group},
                     {"k", v.k},
                     {"decision", v.decision == Decision::member ? "member" : "nonmember"},
                     {"setsExamined", v.sets_examined},
                     {"elapsedSeconds", json_float(v.elapsed_seconds)}};
    if (v.witness) {
        ordered_json labels = ordered_json::array();
        for (int e : v.witness->elements) labels.push_back(G.labels[e]);
        out["witness"] = {{"elements", v.witness->elements},
                          {"labels", labels},
                          {"degree", v.witness->degree()}};
    }
    if (v.evidence)
        out["evidence"] = {{"eigenvalue", json_float(v.evidence->eigenvalue)},
                           {"exactFailure", v.evidence->exact_failure}};
    return out;
}

ordered_json kmmm_json(const KmmmReport& R, const Group& G) {
    ordered_json reps = ordered_json::array();
    for (int r : R.transversal.reps) reps.push_back(G.labels[r]);

    ordered_json cells = ordered_json::array();
    for (int i = 0; i < R.symbol.m; ++i) {
        ordered_json row = ordered_json::array();
        for (int j = 0; j < R.symbol.m; ++j) {
            ordered_json cell = ordered_json::array();
            for (int h : R.symbol.cells[i][j]) cell.push_back(G.labels[h]);
            row.push_back(cell);
        }
        cells.push_back(row);
    }

    ordered_json blocks = ordered_json::array();
    for (const KmmmBlock& b : R.blocks) {
        ordered_json blk{{"character", b.char_exponents},
                         {"eigenvalues", json_floats(b.eigenvalues)}};
        if (b.has_quadratic)
            blk["quadratic"] = {{"center", json_float(b.q_center)},
                                {"radicand", json_float(b.q_radicand)}};
        blocks.push_back(blk);
    }

    return {{"cosets", R.symbol.m},
            {"transversal", reps},
            {"symbol", cells},
            {"characterModulus", R.characters.modulus},
            {"blocks", blocks},
            {"spectrum", json_floats(R.spectrum)}};
}

ordered_json witness_suite_json(const WitnessSuiteReport& rep) {
    ordered_json checks = ordered_json::array();
    for (const WitnessCheck& c : rep.checks)
        checks.push_back({{"group", c.group},
                          {"set", c.set_words},
                          {"required", json_floats(c.required)},
                          {"worstGap", json_float(c.worst_gap)},
                          {"exactNonintegral", c.exact_nonintegral},
                          {"passed", c.passed}});
    return {{"suite", "witnesses"}, {"passed", rep.passed()}, {"checks", checks}};
}

ordered_json classification_json(const std::vector<ClassificationRow>& rows) {
    bool all = true;
    ordered_json out_rows = ordered_json::array();
    for (const ClassificationRow& r : rows) {
        all = all && r.matches();
        out_rows.push_back(
            {{"group", r.group},
             {"k", r.k},
             {"expected", r.expected == Decision::member ? "member" : "nonmember"},
             {"actual", r.actual == Decision::member ? "member" : "nonmember"},
             {"setsExamined", r.sets_examined}});
    }
    return {{"suite", "classification"}, {"passed", all}, {"rows", out_rows}};
}

ordered_json hereditary_json(const HereditaryReport& rep) {
    ordered_json boundary = ordered_json::array();
    for (const BoundaryQuotient& b : rep.boundary)
        boundary.push_back({{"kernelOrder", b.kernel_order},
                            {"quotientOrder", b.quotient.order},
                            {"quotientAbelian", b.quotient.abelian},
                            {"member", b.member}});
    return {{"group", rep.group},
            {"k", rep.k},
            {"subgroupsChecked", rep.subgroups_checked},
            {"dividingQuotientsChecked", rep.dividing_quotients_checked},
            {"oddAbelianQuotientsChecked", rep.odd_abelian_quotients_checked},
            {"violations", rep.violations},
            {"boundary", boundary},
            {"passed", rep.passed()}};
}

ordered_json report_document(const std::string& command, ordered_json payload,
                             double elapsed_seconds) {
    ordered_json doc{{"schema", kReportSchema}, {"command", command}};
    for (auto& [key, value] : payload.items()) doc[key] = std::move(value);
    doc["elapsedSeconds"] = json_float(elapsed_seconds);
    return doc;
}

ordered_json error_document(const std::string& command, const std::string& type,
                            const std::string& message, ordered_json detail) {
    ordered_json err{{"type", type}, {"message", message}};
    for (auto& [key, value] : detail.items()) err[key] = std::move(value);
    return {{"schema", kReportSchema}, {"command", command}, {"error", err}};
}

std::string render_report(const ordered_json& doc) { return doc.dump(2) + "\n"; }

}  // namespace gint
