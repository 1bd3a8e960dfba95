#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "valuelint/annotator.hpp"
#include "valuelint/common.hpp"
#include "valuelint/inspector.hpp"
#include "valuelint/recommender.hpp"
#include "valuelint/version.hpp"

namespace valuelint {

struct AnalysisReport {
    std::string tool_version;
    std::string run_timestamp; // injected by the caller so output stays reproducible
    std::string catalog_version;
    std::size_t annotated_count = 0; // elements with a non-empty effective profile
    std::map<SmellKind, std::size_t> smell_counts;
    std::size_t suppressed_count = 0;
    std::vector<ValueSmell> smells;
    std::vector<Recommendation> recommendations;
    std::optional<Json> annotations; // sidecar payload, when requested

    bool operator==(const AnalysisReport&) const = default;
};

enum class ReportFormat { Text, Json, Sarif };

inline std::optional<ReportFormat> parse_report_format(std::string_view s) {
    if (s == "text") return ReportFormat::Text;
    if (s == "json") return ReportFormat::Json;
    if (s == "sarif") return ReportFormat::Sarif;
    return std::nullopt;
}

inline AnalysisReport build_report(std::string timestamp, const std::string& catalog_version,
                                   const AnnotationMap& annotated,
                                   const InspectionResult& inspection,
                                   std::vector<Recommendation> recommendations,
                                   bool include_annotations) {
    AnalysisReport report;
    report.tool_version = kToolVersion;
    report.run_timestamp = std::move(timestamp);
    report.catalog_version = catalog_version;
    for (const auto& [fq, ann] : annotated) {
        if (!ann.effective_profile.empty()) {
            ++report.annotated_count;
        }
    }
    for (SmellKind kind : kAllSmellKinds) {
        report.smell_counts[kind] = 0;
    }
    for (const auto& smell : inspection.smells) {
        ++report.smell_counts[smell.kind];
    }
    report.suppressed_count = inspection.suppressed.size();
    report.smells = inspection.smells;
    report.recommendations = std::move(recommendations);
    if (include_annotations) {
        report.annotations = sidecar_to_json(annotated);
    }
    return report;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

inline Json smell_to_json(const ValueSmell& smell) {
    Json values = Json::array();
    for (ValueId v : smell.values) {
        values.push_back(value_code(v));
    }
    Json evidence = Json::array();
    for (const auto& e : smell.evidence) {
        evidence.push_back(Json{{"pattern", e.pattern},
                                {"relation", std::string(relation_symbol(e.relation))},
                                {"file", e.span.file},
                                {"span", span_to_json(e.span)}});
    }
    return Json{{"kind", std::string(smell_kind_name(smell.kind))},
                {"element", smell.element},
                {"values", std::move(values)},
                {"severity", std::string(severity_name(smell.severity))},
                {"message", smell.message},
                {"evidence", std::move(evidence)}};
}

inline ValueSmell smell_from_json(const Json& j, const std::string& ctx) {
    ValueSmell smell;
    auto kind = parse_smell_kind(j.at("kind").get<std::string>());
    if (!kind) {
        throw ValidationError(ctx + ": unknown smell kind");
    }
    smell.kind = *kind;
    smell.element = j.at("element").get<std::string>();
    for (const auto& v : j.at("values")) {
        auto value = parse_value_code(v.get<std::string>());
        if (!value) {
            throw ValidationError(ctx + ": unknown value id \"" + v.get<std::string>() + "\"");
        }
        smell.values.push_back(*value);
    }
    auto severity = parse_severity(j.at("severity").get<std::string>());
    if (!severity) {
        throw ValidationError(ctx + ": unknown severity");
    }
    smell.severity = *severity;
    smell.message = j.at("message").get<std::string>();
    for (const auto& je : j.at("evidence")) {
        SmellEvidence e;
        e.pattern = je.at("pattern").get<std::string>();
        auto relation = parse_relation_symbol(je.at("relation").get<std::string>());
        if (!relation) {
            throw ValidationError(ctx + ": bad relation symbol");
        }
        e.relation = *relation;
        e.span = span_from_json(je.at("span"), je.at("file").get<std::string>(), ctx);
        smell.evidence.push_back(std::move(e));
    }
    return smell;
}

inline Json report_to_json(const AnalysisReport& report) {
    Json counts = Json::object();
    for (SmellKind kind : kAllSmellKinds) {
        auto it = report.smell_counts.find(kind);
        counts[std::string(smell_kind_name(kind))] = it == report.smell_counts.end() ? 0 : it->second;
    }
    Json smells = Json::array();
    for (const auto& smell : report.smells) {
        smells.push_back(smell_to_json(smell));
    }
    Json recommendations = Json::array();
    for (const auto& rec : report.recommendations) {
        Json j{{"smell_index", rec.smell_index}};
        j["rule"] = rule_to_json(rec.rule);
        j["rendered_text"] = rec.rendered_text;
        recommendations.push_back(std::move(j));
    }
    Json doc{{"version", "1"},
             {"tool", Json{{"name", kToolName}, {"version", report.tool_version}}},
             {"run_timestamp", report.run_timestamp},
             {"catalog_version", report.catalog_version},
             {"summary", Json{{"annotated_count", report.annotated_count},
                              {"suppressed_count", report.suppressed_count},
                              {"smell_counts", std::move(counts)}}},
             {"smells", std::move(smells)},
             {"recommendations", std::move(recommendations)}};
    if (report.annotations) {
        doc["annotations"] = *report.annotations;
    }
    return doc;
}

inline AnalysisReport report_from_json(const Json& doc, const std::string& origin) {
    require_format_version(doc, "1", origin);
    AnalysisReport report;
    report.tool_version = doc.at("tool").at("version").get<std::string>();
    report.run_timestamp = doc.at("run_timestamp").get<std::string>();
    report.catalog_version = doc.at("catalog_version").get<std::string>();
    const Json& summary = doc.at("summary");
    report.annotated_count = summary.at("annotated_count").get<std::size_t>();
    report.suppressed_count = summary.at("suppressed_count").get<std::size_t>();
    for (SmellKind kind : kAllSmellKinds) {
        report.smell_counts[kind] =
            summary.at("smell_counts").at(std::string(smell_kind_name(kind))).get<std::size_t>();
    }
    std::size_t index = 0;
    for (const auto& j : doc.at("smells")) {
        report.smells.push_back(
            smell_from_json(j, origin + ": smell #" + std::to_string(index++)));
    }
    index = 0;
    for (const auto& j : doc.at("recommendations")) {
        std::string ctx = origin + ": recommendation #" + std::to_string(index++);
        Recommendation rec;
        rec.smell_index = j.at("smell_index").get<std::size_t>();
        rec.rule = rule_from_json(j.at("rule"), ctx);
        rec.rendered_text = j.at("rendered_text").get<std::string>();
        report.recommendations.push_back(std::move(rec));
    }
    if (doc.contains("annotations")) {
        report.annotations = doc["annotations"];
    }
    // Counts must agree with the lists they summarize.
    std::map<SmellKind, std::size_t> recount;
    for (SmellKind kind : kAllSmellKinds) {
        recount[kind] = 0;
    }
    for (const auto& smell : report.smells) {
        ++recount[smell.kind];
    }
    if (recount != report.smell_counts) {
        throw ValidationError(origin + ": smell_counts disagree with the smells array");
    }
    return report;
}

// ---------------------------------------------------------------------------
// SARIF 2.1.0 (minimal subset)
// ---------------------------------------------------------------------------

inline std::string_view sarif_level(Severity severity) {
    switch (severity) {
    case Severity::Error: return "error";
    case Severity::Warning: return "warning";
    case Severity::Info: return "note";
    }
    throw UsageError("invalid Severity");
}

inline std::string_view smell_kind_description(SmellKind kind) {
    switch (kind) {
    case SmellKind::ValueTension:
        return "One API pattern supports some human values while working against others.";
    case SmellKind::ValueConflict:
        return "Evidence from different sources carries opposite signs on the same value.";
    case SmellKind::UnreviewedUnknown:
        return "Evidence whose relevance sign has not been reviewed.";
    case SmellKind::UnmitigatedNegative:
        return "Negative value impact with no recorded suppression.";
    case SmellKind::MissingValueSupport:
        return "A policy-required value has no positive evidence in the project.";
    }
    throw UsageError("invalid SmellKind");
}

inline Json report_to_sarif(const AnalysisReport& report) {
    Json rules = Json::array();
    std::map<SmellKind, std::size_t> rule_index;
    for (SmellKind kind : kAllSmellKinds) {
        rule_index[kind] = rules.size();
        rules.push_back(
            Json{{"id", std::string(smell_kind_name(kind))},
                 {"shortDescription", Json{{"text", std::string(smell_kind_description(kind))}}}});
    }
    Json results = Json::array();
    for (const auto& smell : report.smells) {
        Json result{{"ruleId", std::string(smell_kind_name(smell.kind))},
                    {"ruleIndex", rule_index[smell.kind]},
                    {"level", std::string(sarif_level(smell.severity))},
                    {"message", Json{{"text", smell.message}}}};
        if (!smell.evidence.empty()) {
            const SourceSpan& span = smell.evidence.front().span;
            result["locations"] = Json::array(
                {Json{{"physicalLocation",
                       Json{{"artifactLocation", Json{{"uri", span.file}}},
                            {"region", Json{{"startLine", span.start_line},
                                            {"startColumn", span.start_col},
                                            {"endLine", span.end_line},
                                            {"endColumn", span.end_col}}}}}}});
        }
        results.push_back(std::move(result));
    }
    Json driver{{"name", kToolName},
                {"version", report.tool_version},
                {"rules", std::move(rules)}};
    return Json{
        {"$schema", "https://raw.githubusercontent.com/oasis-tcs/sarif-spec/master/Schemata/"
                    "sarif-schema-2.1.0.json"},
        {"version", "2.1.0"},
        {"runs", Json::array({Json{{"tool", Json{{"driver", std::move(driver)}}},
                                   {"results", std::move(results)}}})}};
}

// ---------------------------------------------------------------------------
// Text
// ---------------------------------------------------------------------------

namespace detail {

struct Palette {
    const char* red = "";
    const char* yellow = "";
    const char* cyan = "";
    const char* bold = "";
    const char* dim = "";
    const char* reset = "";
};

inline Palette make_palette(bool color) {
    if (!color) {
        return {};
    }
    return {"\033[31m", "\033[33m", "\033[36m", "\033[1m", "\033[2m", "\033[0m"};
}

inline const char* severity_color(const Palette& p, Severity severity) {
    switch (severity) {
    case Severity::Error: return p.red;
    case Severity::Warning: return p.yellow;
    case Severity::Info: return p.cyan;
    }
    return "";
}

inline std::string indent_block(const std::string& text, const std::string& prefix) {
    std::string out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t pos = text.find('\n', start);
        std::string line = pos == std::string::npos ? text.substr(start)
                                                    : text.substr(start, pos - start);
        out += prefix + line + "\n";
        if (pos == std::string::npos) {
            break;
        }
        start = pos + 1;
    }
    return out;
}

} // namespace detail

inline std::string render_text_report(const AnalysisReport& report, bool color) {
    detail::Palette p = detail::make_palette(color);
    std::string out;
    out += std::string(p.bold) + kToolName + " " + report.tool_version + p.reset +
           " — value analysis report\n";
    out += "timestamp: " + report.run_timestamp + "\n";
    out += "catalog:   " + report.catalog_version + "\n";

    // Group by the file carrying the first evidence span; project-level
    // smells come last.
    std::map<std::string, std::vector<std::size_t>> by_file;
    for (std::size_t i = 0; i < report.smells.size(); ++i) {
        const auto& smell = report.smells[i];
        std::string key = smell.evidence.empty() ? std::string(kProjectElement)
                                                 : smell.evidence.front().span.file;
        by_file[key].push_back(i);
    }
    auto render_group = [&](const std::string& key, const std::vector<std::size_t>& indices) {
        out += "\n" + std::string(p.bold) + key + p.reset + "\n";
        for (std::size_t i : indices) {
            const auto& smell = report.smells[i];
            std::string location;
            if (!smell.evidence.empty()) {
                const auto& span = smell.evidence.front().span;
                location = std::to_string(span.start_line) + ":" +
                           std::to_string(span.start_col);
            }
            out += "  " + std::string(p.dim) + (location.empty() ? "-" : location) + p.reset +
                   "  " + detail::severity_color(p, smell.severity) +
                   std::string(severity_name(smell.severity)) + p.reset + "  " +
                   std::string(smell_kind_name(smell.kind)) + "  " + smell.element + "\n";
            out += "      " + smell.message + "\n";
            for (const auto& e : smell.evidence) {
                out += std::string("      evidence: ") + e.pattern + " (" +
                       std::string(relation_symbol(e.relation)) + ") at " + e.span.file + ":" +
                       std::to_string(e.span.start_line) + ":" +
                       std::to_string(e.span.start_col) + "\n";
            }
            for (const auto& rec : report.recommendations) {
                if (rec.smell_index == i) {
                    out += detail::indent_block(rec.rendered_text, "      > ");
                }
            }
        }
    };
    for (const auto& [key, indices] : by_file) {
        if (key != kProjectElement) {
            render_group(key, indices);
        }
    }
    if (auto it = by_file.find(kProjectElement); it != by_file.end()) {
        render_group(it->first, it->second);
    }

    std::size_t errors = 0, warnings = 0, infos = 0;
    for (const auto& smell : report.smells) {
        switch (smell.severity) {
        case Severity::Error: ++errors; break;
        case Severity::Warning: ++warnings; break;
        case Severity::Info: ++infos; break;
        }
    }
    out += "\nsummary: " + std::to_string(report.smells.size()) + " smell(s) — " +
           std::to_string(errors) + " error, " + std::to_string(warnings) + " warning, " +
           std::to_string(infos) + " info; " + std::to_string(report.suppressed_count) +
           " suppressed; " + std::to_string(report.annotated_count) +
           " annotated element(s)\n";
    return out;
}

/// Render a report in the requested format. Text honours `color`; the
/// machine formats ignore it.
inline std::string render(const AnalysisReport& report, ReportFormat format, bool color = false) {
    switch (format) {
    case ReportFormat::Text: return render_text_report(report, color);
    case ReportFormat::Json: return report_to_json(report).dump(2) + "\n";
    case ReportFormat::Sarif: return report_to_sarif(report).dump(2) + "\n";
    }
    throw UsageError("unknown report format");
}

} // namespace valuelint
