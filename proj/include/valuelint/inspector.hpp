#pragma once

// Value inspection: applies the smell rules to annotated elements under a
// project policy.
//
//   ValueTension        (Warning) one API pattern positive for some values
//                       and negative for others, on the element's own facts
//   ValueConflict       (Error)   a value whose effective state is Conflict
//   UnreviewedUnknown   (Info)    a value whose direct state is Unknown
//   UnmitigatedNegative (Warning) a value whose direct state is Negative
//                       and no policy suppression covers (element, value)
//   MissingValueSupport (Warning) a policy-required value with no positive
//                       evidence anywhere in the project
//
// Tension/Unknown/Negative fire where the usage actually sits (direct
// profiles); Conflict fires on every element whose merged view carries it.
// Suppressed smells are returned separately so reports can count them.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "valuelint/annotator.hpp"
#include "valuelint/catalog.hpp"
#include "valuelint/common.hpp"
#include "valuelint/value_model.hpp"

namespace valuelint {

inline constexpr const char* kProjectElement = "<project>";

enum class SmellKind {
    ValueTension,
    ValueConflict,
    UnreviewedUnknown,
    UnmitigatedNegative,
    MissingValueSupport,
};

inline constexpr std::array<SmellKind, 5> kAllSmellKinds = {
    SmellKind::ValueTension, SmellKind::ValueConflict, SmellKind::UnreviewedUnknown,
    SmellKind::UnmitigatedNegative, SmellKind::MissingValueSupport,
};

inline std::string_view smell_kind_name(SmellKind k) {
    switch (k) {
    case SmellKind::ValueTension: return "ValueTension";
    case SmellKind::ValueConflict: return "ValueConflict";
    case SmellKind::UnreviewedUnknown: return "UnreviewedUnknown";
    case SmellKind::UnmitigatedNegative: return "UnmitigatedNegative";
    case SmellKind::MissingValueSupport: return "MissingValueSupport";
    }
    throw UsageError("invalid SmellKind");
}

inline std::optional<SmellKind> parse_smell_kind(std::string_view s) {
    for (SmellKind k : kAllSmellKinds) {
        if (smell_kind_name(k) == s) {
            return k;
        }
    }
    return std::nullopt;
}

enum class Severity { Info, Warning, Error };

inline std::string_view severity_name(Severity s) {
    switch (s) {
    case Severity::Info: return "info";
    case Severity::Warning: return "warning";
    case Severity::Error: return "error";
    }
    throw UsageError("invalid Severity");
}

inline std::optional<Severity> parse_severity(std::string_view s) {
    for (Severity sev : {Severity::Info, Severity::Warning, Severity::Error}) {
        if (severity_name(sev) == s) {
            return sev;
        }
    }
    return std::nullopt;
}

struct SmellEvidence {
    SourceSpan span;
    std::string pattern;
    Relation relation = Relation::NonRelevant;

    bool operator==(const SmellEvidence&) const = default;
};

struct ValueSmell {
    SmellKind kind = SmellKind::ValueTension;
    std::string element; // fq_name, or "<project>" for project-level smells
    std::vector<ValueId> values;
    Severity severity = Severity::Warning;
    std::vector<SmellEvidence> evidence; // empty only for MissingValueSupport
    std::string message;

    bool operator==(const ValueSmell&) const = default;
};

// ---------------------------------------------------------------------------
// Policy
// ---------------------------------------------------------------------------

struct PolicyRequirement {
    ValueId value = ValueId::SelfDirection;
    std::string rationale;

    bool operator==(const PolicyRequirement&) const = default;
};

struct PolicySuppression {
    std::string element; // exact fq_name or whole-segment prefix
    ValueId value = ValueId::SelfDirection;
    std::string justification;

    bool operator==(const PolicySuppression&) const = default;
};

struct Policy {
    std::vector<PolicyRequirement> required_values;
    std::vector<PolicySuppression> suppressions;

    bool operator==(const Policy&) const = default;
};

inline Json policy_to_json(const Policy& policy) {
    Json required = Json::array();
    for (const auto& r : policy.required_values) {
        required.push_back(Json{{"value", value_code(r.value)}, {"rationale", r.rationale}});
    }
    Json suppressions = Json::array();
    for (const auto& s : policy.suppressions) {
        suppressions.push_back(Json{{"element", s.element},
                                    {"value", value_code(s.value)},
                                    {"justification", s.justification}});
    }
    return Json{{"version", "1"},
                {"required_values", std::move(required)},
                {"suppressions", std::move(suppressions)}};
}

inline Policy policy_from_json(const Json& doc, const std::string& origin) {
    require_format_version(doc, "1", origin);
    Policy policy;
    if (doc.contains("required_values")) {
        std::size_t index = 0;
        for (const auto& j : doc["required_values"]) {
            std::string ctx = origin + ": required_values #" + std::to_string(index++);
            auto value = parse_value_code(j.at("value").get<std::string>());
            if (!value) {
                throw ValidationError(ctx + ": unknown value id \"" +
                                      j.at("value").get<std::string>() + "\"");
            }
            std::string rationale;
            if (j.contains("rationale")) {
                rationale = j["rationale"].get<std::string>();
            }
            policy.required_values.push_back({*value, std::move(rationale)});
        }
    }
    if (doc.contains("suppressions")) {
        std::size_t index = 0;
        for (const auto& j : doc["suppressions"]) {
            std::string ctx = origin + ": suppressions #" + std::to_string(index++);
            auto value = parse_value_code(j.at("value").get<std::string>());
            if (!value) {
                throw ValidationError(ctx + ": unknown value id \"" +
                                      j.at("value").get<std::string>() + "\"");
            }
            std::string element = j.at("element").get<std::string>();
            std::string justification = j.at("justification").get<std::string>();
            if (justification.empty()) {
                throw ValidationError(ctx + ": suppression justification must not be empty");
            }
            policy.suppressions.push_back({std::move(element), *value, std::move(justification)});
        }
    }
    return policy;
}

inline Policy load_policy(const std::filesystem::path& path) {
    return policy_from_json(load_json_file(path), path.string());
}

inline void save_policy(const Policy& policy, const std::filesystem::path& path) {
    write_text_file(path, policy_to_json(policy).dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// Inspection
// ---------------------------------------------------------------------------

struct InspectionResult {
    std::vector<ValueSmell> smells;
    std::vector<ValueSmell> suppressed; // excluded from smells, counted in reports

    bool operator==(const InspectionResult&) const = default;
};

namespace detail {

inline std::string join_names(const std::vector<ValueId>& values) {
    std::string out;
    for (ValueId v : values) {
        out += (out.empty() ? "" : ", ") + std::string(canonical_name(v));
    }
    return out;
}

inline std::string join_sources(const std::vector<std::string>& sources) {
    std::string out;
    for (const auto& s : sources) {
        out += (out.empty() ? "" : ", ") + s;
    }
    return out;
}

inline int smell_kind_rank(SmellKind k) {
    return static_cast<int>(k);
}

inline bool smell_order(const ValueSmell& a, const ValueSmell& b) {
    if (a.kind != b.kind) {
        return smell_kind_rank(a.kind) < smell_kind_rank(b.kind);
    }
    if (a.element != b.element) {
        return a.element < b.element;
    }
    if (a.values != b.values) {
        return a.values < b.values;
    }
    std::string ap = a.evidence.empty() ? "" : a.evidence.front().pattern;
    std::string bp = b.evidence.empty() ? "" : b.evidence.front().pattern;
    return ap < bp;
}

} // namespace detail

inline bool suppression_matches(const PolicySuppression& suppression, const std::string& element,
                                ValueId value) {
    return suppression.value == value &&
           (suppression.element == element || is_segment_prefix(suppression.element, element));
}

inline InspectionResult inspect(const AnnotationMap& annotated, const Policy& policy,
                                const Catalog& catalog) {
    InspectionResult result;

    // Subtree index for locating the evidence behind effective-profile states.
    std::map<std::string, std::vector<const AnnotatedElement*>> children;
    for (const auto& [fq, ann] : annotated) {
        if (!ann.parent.empty()) {
            children[ann.parent].push_back(&ann);
        }
    }
    auto subtree_of = [&](const AnnotatedElement& root) {
        std::vector<const AnnotatedElement*> out{&root};
        for (std::size_t i = 0; i < out.size(); ++i) {
            auto it = children.find(out[i]->element);
            if (it != children.end()) {
                out.insert(out.end(), it->second.begin(), it->second.end());
            }
        }
        return out;
    };
    // Earliest fact span for a pattern among the given elements' own facts.
    auto span_for_pattern = [](const std::vector<const AnnotatedElement*>& scope,
                               const std::string& pattern) -> std::optional<SourceSpan> {
        std::optional<SourceSpan> best;
        for (const AnnotatedElement* ann : scope) {
            for (const auto& cf : ann->contributing_facts) {
                if (cf.pattern != pattern) {
                    continue;
                }
                if (!best || detail::span_before(cf.fact.span, *best)) {
                    best = cf.fact.span;
                }
            }
        }
        return best;
    };

    for (const auto& [fq, ann] : annotated) {
        std::vector<const AnnotatedElement*> own{&ann};

        // ValueTension: one pattern, both signs, on the element's own facts.
        std::set<std::string> own_patterns;
        for (const auto& cf : ann.contributing_facts) {
            own_patterns.insert(cf.pattern);
        }
        for (const auto& pattern : own_patterns) {
            const ApiAnnotation* entry = catalog.find(pattern);
            if (entry == nullptr) {
                continue;
            }
            std::vector<ValueId> positives, negatives;
            for (const auto& [value, relation] : entry->profile.entries()) {
                if (relation == Relation::Positive) {
                    positives.push_back(value);
                } else if (relation == Relation::Negative) {
                    negatives.push_back(value);
                }
            }
            if (positives.empty() || negatives.empty()) {
                continue;
            }
            ValueSmell smell;
            smell.kind = SmellKind::ValueTension;
            smell.element = fq;
            smell.severity = Severity::Warning;
            for (const auto& [value, relation] : entry->profile.entries()) {
                if (relation != Relation::Positive && relation != Relation::Negative) {
                    continue;
                }
                smell.values.push_back(value);
                auto span = span_for_pattern(own, pattern);
                smell.evidence.push_back({span.value_or(SourceSpan{}), pattern, relation});
            }
            smell.message = "value tension in '" + pattern + "': positive for " +
                            detail::join_names(positives) + "; negative for " +
                            detail::join_names(negatives);
            result.smells.push_back(std::move(smell));
        }

        // ValueConflict on the effective profile.
        auto scope = subtree_of(ann);
        for (const auto& [value, state] : ann.effective_profile.entries) {
            if (state.kind != StateKind::Conflict) {
                continue;
            }
            ValueSmell smell;
            smell.kind = SmellKind::ValueConflict;
            smell.element = fq;
            smell.values = {value};
            smell.severity = Severity::Error;
            std::vector<std::string> pos, neg, unk;
            for (const auto& entry : state.evidence) {
                auto span = span_for_pattern(scope, entry.source);
                smell.evidence.push_back({span.value_or(SourceSpan{}), entry.source,
                                          entry.relation});
                if (entry.relation == Relation::Positive) {
                    pos.push_back(entry.source);
                } else if (entry.relation == Relation::Negative) {
                    neg.push_back(entry.source);
                } else {
                    unk.push_back(entry.source);
                }
            }
            smell.message = "value conflict on " + std::string(canonical_name(value)) +
                            ": positive from " + detail::join_sources(pos) + "; negative from " +
                            detail::join_sources(neg);
            if (!unk.empty()) {
                smell.message += "; unknown from " + detail::join_sources(unk);
            }
            result.smells.push_back(std::move(smell));
        }

        // UnreviewedUnknown / UnmitigatedNegative on the direct profile.
        for (const auto& [value, state] : ann.direct_profile.entries) {
            if (state.kind == StateKind::Unknown) {
                ValueSmell smell;
                smell.kind = SmellKind::UnreviewedUnknown;
                smell.element = fq;
                smell.values = {value};
                smell.severity = Severity::Info;
                std::vector<std::string> sources;
                for (const auto& entry : state.evidence) {
                    if (entry.relation != Relation::Unknown) {
                        continue;
                    }
                    auto span = span_for_pattern(own, entry.source);
                    smell.evidence.push_back({span.value_or(SourceSpan{}), entry.source,
                                              entry.relation});
                    sources.push_back(entry.source);
                }
                smell.message = "relevance of " + std::string(canonical_name(value)) +
                                " is marked unknown ('?') by " + detail::join_sources(sources) +
                                "; needs review";
                result.smells.push_back(std::move(smell));
            } else if (state.kind == StateKind::Negative) {
                ValueSmell smell;
                smell.kind = SmellKind::UnmitigatedNegative;
                smell.element = fq;
                smell.values = {value};
                smell.severity = Severity::Warning;
                std::vector<std::string> sources;
                for (const auto& entry : state.evidence) {
                    if (entry.relation != Relation::Negative) {
                        continue;
                    }
                    auto span = span_for_pattern(own, entry.source);
                    smell.evidence.push_back({span.value_or(SourceSpan{}), entry.source,
                                              entry.relation});
                    sources.push_back(entry.source);
                }
                smell.message = "negative impact on " + std::string(canonical_name(value)) +
                                " from " + detail::join_sources(sources) +
                                " without suppression or mitigation";
                bool suppressed = false;
                for (const auto& suppression : policy.suppressions) {
                    if (suppression_matches(suppression, fq, value)) {
                        suppressed = true;
                        break;
                    }
                }
                if (suppressed) {
                    result.suppressed.push_back(std::move(smell));
                } else {
                    result.smells.push_back(std::move(smell));
                }
            }
        }
    }

    // MissingValueSupport: project-level, one per unmet requirement.
    for (const auto& requirement : policy.required_values) {
        bool supported = false;
        for (const auto& [fq, ann] : annotated) {
            const AggregateState* state = ann.direct_profile.find(requirement.value);
            if (state == nullptr) {
                continue;
            }
            for (const auto& entry : state->evidence) {
                if (entry.relation == Relation::Positive) {
                    supported = true;
                    break;
                }
            }
            if (supported) {
                break;
            }
        }
        if (supported) {
            continue;
        }
        ValueSmell smell;
        smell.kind = SmellKind::MissingValueSupport;
        smell.element = kProjectElement;
        smell.values = {requirement.value};
        smell.severity = Severity::Warning;
        smell.message = "no positive evidence for required value " +
                        std::string(canonical_name(requirement.value)) +
                        " anywhere in the project";
        if (!requirement.rationale.empty()) {
            smell.message += " (policy: " + requirement.rationale + ")";
        }
        result.smells.push_back(std::move(smell));
    }

    std::sort(result.smells.begin(), result.smells.end(), detail::smell_order);
    std::sort(result.suppressed.begin(), result.suppressed.end(), detail::smell_order);
    return result;
}

} // namespace valuelint
