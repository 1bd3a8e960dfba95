#pragma once

// Maps detected smells to advice from a data-driven rule catalog. For each
// smell, matching rules are ranked by specificity (api pattern + value, then
// value only, then api only, then kind only; ties broken by rule position)
// and the most specific one renders the recommendation. A smell nothing
// matches receives the generic review recommendation, so every smell gets
// advice.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "valuelint/common.hpp"
#include "valuelint/inspector.hpp"
#include "valuelint/value_model.hpp"

namespace valuelint {

struct RuleMatch {
    SmellKind kind = SmellKind::ValueTension;
    std::string api;                // optional; empty = any
    std::optional<ValueId> value;   // optional

    bool operator==(const RuleMatch&) const = default;
};

struct RecommendationRule {
    RuleMatch match;
    std::string advice;
    std::string fix_hint;
    std::vector<std::string> references;
    std::string tradeoffs;

    bool operator==(const RecommendationRule&) const = default;
};

struct RuleSet {
    std::string version = "1";
    std::vector<RecommendationRule> rules;

    bool operator==(const RuleSet&) const = default;
};

struct Recommendation {
    std::size_t smell_index = 0; // index into the inspected smell list
    RecommendationRule rule;
    std::string rendered_text;

    bool operator==(const Recommendation&) const = default;
};

inline bool rule_matches(const RecommendationRule& rule, const ValueSmell& smell) {
    if (rule.match.kind != smell.kind) {
        return false;
    }
    if (!rule.match.api.empty()) {
        bool api_hit = false;
        for (const auto& evidence : smell.evidence) {
            if (is_segment_prefix(rule.match.api, evidence.pattern)) {
                api_hit = true;
                break;
            }
        }
        if (!api_hit) {
            return false;
        }
    }
    if (rule.match.value) {
        if (std::find(smell.values.begin(), smell.values.end(), *rule.match.value) ==
            smell.values.end()) {
            return false;
        }
    }
    return true;
}

inline int rule_specificity(const RecommendationRule& rule) {
    bool has_api = !rule.match.api.empty();
    bool has_value = rule.match.value.has_value();
    if (has_api && has_value) return 3;
    if (has_value) return 2;
    if (has_api) return 1;
    return 0;
}

/// Fallback applied when no rule matches a smell.
inline const RecommendationRule& generic_rule() {
    static const RecommendationRule rule = [] {
        RecommendationRule r;
        r.advice = "Review the value impact of this finding with the affected stakeholders "
                   "and record the outcome.";
        return r;
    }();
    return rule;
}

inline std::string render_recommendation(const RecommendationRule& rule) {
    std::string text = rule.advice;
    if (!rule.fix_hint.empty()) {
        text += "\nfix hint: " + rule.fix_hint;
    }
    if (!rule.tradeoffs.empty()) {
        // Trade-off text always shows so competing values stay visible.
        text += "\ntrade-off: " + rule.tradeoffs;
    }
    if (!rule.references.empty()) {
        text += "\nreferences: ";
        for (std::size_t i = 0; i < rule.references.size(); ++i) {
            text += (i ? "; " : "") + rule.references[i];
        }
    }
    return text;
}

inline std::vector<Recommendation> recommend(const std::vector<ValueSmell>& smells,
                                             const std::vector<RecommendationRule>& rules) {
    std::vector<Recommendation> out;
    out.reserve(smells.size());
    for (std::size_t i = 0; i < smells.size(); ++i) {
        const RecommendationRule* best = nullptr;
        int best_specificity = -1;
        for (const auto& rule : rules) {
            if (!rule_matches(rule, smells[i])) {
                continue;
            }
            int specificity = rule_specificity(rule);
            if (specificity > best_specificity) { // ties keep the earlier rule
                best = &rule;
                best_specificity = specificity;
            }
        }
        if (best == nullptr) {
            best = &generic_rule();
        }
        out.push_back({i, *best, render_recommendation(*best)});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Rules file
// ---------------------------------------------------------------------------

inline Json rule_to_json(const RecommendationRule& rule) {
    Json match{{"kind", std::string(smell_kind_name(rule.match.kind))}};
    if (!rule.match.api.empty()) {
        match["api"] = rule.match.api;
    }
    if (rule.match.value) {
        match["value"] = value_code(*rule.match.value);
    }
    Json j{{"match", std::move(match)}, {"advice", rule.advice}};
    if (!rule.fix_hint.empty()) {
        j["fix_hint"] = rule.fix_hint;
    }
    if (!rule.references.empty()) {
        j["references"] = rule.references;
    }
    if (!rule.tradeoffs.empty()) {
        j["tradeoffs"] = rule.tradeoffs;
    }
    return j;
}

inline RecommendationRule rule_from_json(const Json& j, const std::string& ctx) {
    RecommendationRule rule;
    if (!j.is_object() || !j.contains("match") || !j.contains("advice")) {
        throw ValidationError(ctx + ": each rule needs \"match\" and \"advice\"");
    }
    const Json& match = j["match"];
    auto kind = parse_smell_kind(match.at("kind").get<std::string>());
    if (!kind) {
        throw ValidationError(ctx + ": unknown smell kind \"" +
                              match.at("kind").get<std::string>() + "\"");
    }
    rule.match.kind = *kind;
    if (match.contains("api")) {
        rule.match.api = match["api"].get<std::string>();
    }
    if (match.contains("value")) {
        auto value = parse_value_code(match["value"].get<std::string>());
        if (!value) {
            throw ValidationError(ctx + ": unknown value id \"" +
                                  match["value"].get<std::string>() + "\"");
        }
        rule.match.value = *value;
    }
    rule.advice = j["advice"].get<std::string>();
    if (rule.advice.empty()) {
        throw ValidationError(ctx + ": advice must not be empty");
    }
    if (j.contains("fix_hint")) {
        rule.fix_hint = j["fix_hint"].get<std::string>();
    }
    if (j.contains("references")) {
        for (const auto& r : j["references"]) {
            rule.references.push_back(r.get<std::string>());
        }
    }
    if (j.contains("tradeoffs")) {
        rule.tradeoffs = j["tradeoffs"].get<std::string>();
    }
    return rule;
}

inline Json rules_to_json(const RuleSet& set) {
    Json rules = Json::array();
    for (const auto& rule : set.rules) {
        rules.push_back(rule_to_json(rule));
    }
    return Json{{"version", set.version}, {"rules", std::move(rules)}};
}

inline RuleSet rules_from_json(const Json& doc, const std::string& origin) {
    require_format_version(doc, "1", origin);
    if (!doc.contains("rules") || !doc["rules"].is_array()) {
        throw ValidationError(origin + ": missing \"rules\" array");
    }
    RuleSet set;
    set.version = doc["version"].get<std::string>();
    std::size_t index = 0;
    for (const auto& j : doc["rules"]) {
        set.rules.push_back(rule_from_json(j, origin + ": rule #" + std::to_string(index++)));
    }
    return set;
}

inline RuleSet load_rules(const std::filesystem::path& path) {
    return rules_from_json(load_json_file(path), path.string());
}

inline void save_rules(const RuleSet& set, const std::filesystem::path& path) {
    write_text_file(path, rules_to_json(set).dump(2) + "\n");
}

/// Rules shipped with the tool: the accessibility-service privacy fix, the
/// accessibility-vs-security conflict guidance, and Unicode adoption for
/// missing Universalism support.
inline const RuleSet& builtin_rules() {
    static const RuleSet set = [] {
        RuleSet s;
        RecommendationRule leak;
        leak.match = {SmellKind::UnmitigatedNegative, "android.accessibilityservice",
                      ValueId::SelfDirection};
        leak.advice = "Apps can prevent information leaks through accessibility services by "
                      "setting a single flag for sensitive inputs.";
        leak.fix_hint = "Mark sensitive input fields with "
                        "android:importantForAccessibility=\"no\" (or call "
                        "setImportantForAccessibility) so assistive services cannot read them.";
        leak.references = {
            "https://developer.android.com/reference/android/accessibilityservice/"
            "package-summary"};
        leak.tradeoffs =
            "Disabling accessibility services for a field improves security but reduces "
            "accessibility.";
        s.rules.push_back(std::move(leak));

        RecommendationRule conflict;
        conflict.match = {SmellKind::ValueConflict, "android.accessibilityservice", std::nullopt};
        conflict.advice = "Reconcile assistive access with the security facilities in use: "
                          "restrict what accessibility services may observe on sensitive "
                          "surfaces instead of disabling assistive features wholesale.";
        conflict.fix_hint = "Limit the fields exposed to accessibility services to the minimum "
                            "needed for assistive use.";
        conflict.references = {
            "https://developer.android.com/reference/android/accessibilityservice/"
            "package-summary",
            "https://developer.android.com/reference/android/security/package-summary"};
        conflict.tradeoffs =
            "Disabling accessibility services for a field improves security but reduces "
            "accessibility.";
        s.rules.push_back(std::move(conflict));

        RecommendationRule unicode;
        unicode.match = {SmellKind::MissingValueSupport, "", ValueId::Universalism};
        unicode.advice = "Adopt a Unicode/internationalization library (for example the "
                         "android.icu packages) so text handling serves every language "
                         "community.";
        unicode.fix_hint =
            "Route user-visible text through an i18n library such as android.icu.lang.";
        unicode.references = {
            "https://developer.android.com/reference/android/icu/lang/package-summary"};
        s.rules.push_back(std::move(unicode));
        return s;
    }();
    return set;
}

} // namespace valuelint
