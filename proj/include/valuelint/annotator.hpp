#pragma once

// Value annotation of code elements: each usage fact that matches a catalog
// pattern contributes that pattern's profile to the owning element's direct
// profile (once per pattern). Effective profiles add the direct evidence of
// every containment descendant; with call propagation enabled, an element
// also absorbs the direct evidence of intra-project call targets (one hop).

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "valuelint/catalog.hpp"
#include "valuelint/code_facts.hpp"
#include "valuelint/common.hpp"
#include "valuelint/value_model.hpp"

namespace valuelint {

struct ContributingFact {
    UsageFact fact;
    std::string pattern; // catalog pattern the api_name matched

    bool operator==(const ContributingFact&) const = default;
};

struct AnnotatedElement {
    std::string element; // fq_name
    ElementKind kind = ElementKind::Class;
    SourceSpan span;
    std::string parent;
    AggregateProfile direct_profile;
    AggregateProfile effective_profile;
    std::vector<ContributingFact> contributing_facts;

    bool operator==(const AnnotatedElement&) const = default;
};

using AnnotationMap = std::map<std::string, AnnotatedElement>;

struct AnnotateOptions {
    bool propagate_calls = false; // one-hop propagation along intra-project Call facts
};

inline AnnotationMap annotate(const std::vector<CodeElement>& elements,
                              const std::vector<UsageFact>& facts, const Catalog& catalog,
                              const AnnotateOptions& options = {}) {
    AnnotationMap result;
    for (const auto& e : elements) {
        AnnotatedElement ann;
        ann.element = e.fq_name;
        ann.kind = e.kind;
        ann.span = e.span;
        ann.parent = e.parent;
        result.emplace(e.fq_name, std::move(ann));
    }

    for (const auto& fact : facts) {
        auto it = result.find(fact.element);
        if (it == result.end()) {
            throw UsageError("annotate: fact references undeclared element \"" + fact.element +
                             "\"");
        }
        if (const ApiAnnotation* match = match_api(fact.api_name, catalog)) {
            it->second.contributing_facts.push_back({fact, match->pattern});
        }
    }

    // Direct profile: each distinct matched pattern contributes once.
    for (auto& [fq, ann] : result) {
        std::set<std::string> patterns;
        for (const auto& cf : ann.contributing_facts) {
            patterns.insert(cf.pattern);
        }
        std::vector<ValueProfile> profiles;
        std::vector<std::string> sources;
        for (const auto& pattern : patterns) {
            const ApiAnnotation* entry = catalog.find(pattern);
            if (entry != nullptr) {
                profiles.push_back(entry->profile);
                sources.push_back(pattern);
            }
        }
        ann.direct_profile = merge_profiles(profiles, sources);
    }

    // Optional one-hop call propagation: an element's Call facts whose
    // api_name names a declared element (or a member of one) pull in that
    // element's direct evidence. Depth stays 1 because only direct profiles
    // travel.
    std::map<std::string, AggregateProfile> extended;
    for (auto& [fq, ann] : result) {
        AggregateProfile profile = ann.direct_profile;
        if (options.propagate_calls) {
            std::set<std::string> targets;
            // Call facts are scanned from the raw fact list so unmatched
            // intra-project calls (no catalog pattern) still propagate.
            for (const auto& fact : facts) {
                if (fact.element != fq || fact.usage_kind != UsageKind::Call) {
                    continue;
                }
                const AnnotatedElement* best = nullptr;
                for (const auto& [cand_fq, cand] : result) {
                    if (is_segment_prefix(cand_fq, fact.api_name)) {
                        if (!best || cand_fq.size() > best->element.size()) {
                            best = &cand;
                        }
                    }
                }
                if (best != nullptr && best->element != fq) {
                    targets.insert(best->element);
                }
            }
            for (const auto& target : targets) {
                profile = merge_aggregates(profile, result.at(target).direct_profile);
            }
        }
        extended.emplace(fq, std::move(profile));
    }

    // Effective profile: union over the containment subtree.
    std::map<std::string, std::vector<std::string>> children;
    for (const auto& [fq, ann] : result) {
        if (!ann.parent.empty()) {
            children[ann.parent].push_back(fq);
        }
    }
    // Process deepest-first so each effective profile folds in completed
    // child profiles.
    std::map<std::string, int> depth;
    auto depth_of = [&](const std::string& fq) {
        int d = 0;
        std::string cursor = fq;
        while (true) {
            auto it = result.find(cursor);
            if (it == result.end() || it->second.parent.empty()) {
                break;
            }
            cursor = it->second.parent;
            ++d;
        }
        return d;
    };
    std::vector<std::string> order;
    for (const auto& [fq, ann] : result) {
        depth[fq] = depth_of(fq);
        order.push_back(fq);
    }
    std::sort(order.begin(), order.end(), [&](const std::string& a, const std::string& b) {
        if (depth[a] != depth[b]) {
            return depth[a] > depth[b];
        }
        return a < b;
    });
    std::map<std::string, AggregateProfile> effective;
    for (const auto& fq : order) {
        AggregateProfile profile = extended.at(fq);
        for (const auto& child : children[fq]) {
            profile = merge_aggregates(profile, effective.at(child));
        }
        effective.emplace(fq, std::move(profile));
    }
    for (auto& [fq, ann] : result) {
        ann.effective_profile = effective.at(fq);
        std::sort(ann.contributing_facts.begin(), ann.contributing_facts.end(),
                  [](const ContributingFact& a, const ContributingFact& b) {
                      return std::tie(a.fact.span.file, a.fact.span.start_line,
                                      a.fact.span.start_col, a.pattern, a.fact.api_name) <
                             std::tie(b.fact.span.file, b.fact.span.start_line,
                                      b.fact.span.start_col, b.pattern, b.fact.api_name);
                  });
    }
    return result;
}

// ---------------------------------------------------------------------------
// Sidecar annotation document
// ---------------------------------------------------------------------------

inline Json aggregate_profile_to_json(const AggregateProfile& profile) {
    Json j = Json::object();
    for (const auto& [value, state] : profile.entries) {
        Json evidence = Json::array();
        for (const auto& entry : state.evidence) {
            evidence.push_back(Json{{"source", entry.source},
                                    {"relation", std::string(relation_symbol(entry.relation))}});
        }
        j[value_code(value)] =
            Json{{"state", std::string(state_name(state.kind))}, {"evidence", std::move(evidence)}};
    }
    return j;
}

inline AggregateProfile aggregate_profile_from_json(const Json& j, const std::string& ctx) {
    AggregateProfile profile;
    for (const auto& [key, jstate] : j.items()) {
        auto value = parse_value_code(key);
        if (!value) {
            throw ValidationError(ctx + ": unknown value id \"" + key + "\"");
        }
        AggregateState state;
        auto kind = parse_state_name(jstate.at("state").get<std::string>());
        if (!kind) {
            throw ValidationError(ctx + ": unknown state \"" +
                                  jstate.at("state").get<std::string>() + "\"");
        }
        state.kind = *kind;
        for (const auto& je : jstate.at("evidence")) {
            auto relation = parse_relation_symbol(je.at("relation").get<std::string>());
            if (!relation) {
                throw ValidationError(ctx + ": bad relation symbol \"" +
                                      je.at("relation").get<std::string>() + "\"");
            }
            state.evidence.push_back({je.at("source").get<std::string>(), *relation});
        }
        profile.entries.emplace(*value, std::move(state));
    }
    return profile;
}

inline Json sidecar_to_json(const AnnotationMap& annotated) {
    Json entries = Json::object();
    for (const auto& [fq, ann] : annotated) {
        entries[fq] = Json{{"kind", std::string(element_kind_name(ann.kind))},
                           {"direct", aggregate_profile_to_json(ann.direct_profile)},
                           {"effective", aggregate_profile_to_json(ann.effective_profile)}};
    }
    return Json{{"version", "1"}, {"annotations", std::move(entries)}};
}

/// Profiles reconstructed from a sidecar document, keyed by element fq_name.
struct SidecarEntry {
    ElementKind kind = ElementKind::Class;
    AggregateProfile direct;
    AggregateProfile effective;

    bool operator==(const SidecarEntry&) const = default;
};

inline std::map<std::string, SidecarEntry> sidecar_from_json(const Json& doc,
                                                             const std::string& origin) {
    require_format_version(doc, "1", origin);
    if (!doc.contains("annotations") || !doc["annotations"].is_object()) {
        throw ValidationError(origin + ": missing \"annotations\" object");
    }
    std::map<std::string, SidecarEntry> result;
    for (const auto& [fq, j] : doc["annotations"].items()) {
        std::string ctx = origin + ": element \"" + fq + "\"";
        SidecarEntry entry;
        auto kind = parse_element_kind(j.at("kind").get<std::string>());
        if (!kind) {
            throw ValidationError(ctx + ": unknown element kind");
        }
        entry.kind = *kind;
        entry.direct = aggregate_profile_from_json(j.at("direct"), ctx);
        entry.effective = aggregate_profile_from_json(j.at("effective"), ctx);
        result.emplace(fq, std::move(entry));
    }
    return result;
}

inline std::map<std::string, SidecarEntry> load_sidecar(const std::filesystem::path& path) {
    return sidecar_from_json(load_json_file(path), path.string());
}

inline void save_sidecar(const AnnotationMap& annotated, const std::filesystem::path& path) {
    write_text_file(path, sidecar_to_json(annotated).dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// Inline suggestions (comment insertions rendered as a unified diff preview;
// source files are never modified)
// ---------------------------------------------------------------------------

inline std::string state_sign(StateKind kind) {
    switch (kind) {
    case StateKind::Positive: return "+";
    case StateKind::Negative: return "-";
    case StateKind::Unknown: return "?";
    case StateKind::Conflict: return "+/-";
    case StateKind::NonRelevant: break;
    }
    return "";
}

/// Comment text suggested above an element, e.g.
/// "// values: Self Direction(-), Security(-), Benevolence(+), Universalism(+)".
inline std::string suggestion_comment(const AggregateProfile& profile) {
    std::string out = "// values: ";
    bool first = true;
    for (const auto& [value, state] : profile.entries) {
        if (state.kind == StateKind::NonRelevant) {
            continue;
        }
        if (!first) {
            out += ", ";
        }
        first = false;
        out += std::string(canonical_name(value)) + "(" + state_sign(state.kind) + ")";
    }
    return out;
}

inline std::string render_inline_suggestions(const AnnotationMap& annotated) {
    struct Insertion {
        std::string file;
        int line = 1; // insert above this 1-based line
        std::string fq;
        std::string comment;
    };
    std::vector<Insertion> insertions;
    for (const auto& [fq, ann] : annotated) {
        if (ann.direct_profile.empty() || ann.span.file.empty()) {
            continue;
        }
        insertions.push_back(
            {ann.span.file, ann.span.start_line, fq, suggestion_comment(ann.direct_profile)});
    }
    std::sort(insertions.begin(), insertions.end(), [](const Insertion& a, const Insertion& b) {
        return std::tie(a.file, a.line, a.fq) < std::tie(b.file, b.line, b.fq);
    });

    std::string out;
    std::string current_file;
    int offset = 0;
    for (const auto& ins : insertions) {
        if (ins.file != current_file) {
            current_file = ins.file;
            offset = 0;
            out += "--- a/" + ins.file + "\n";
            out += "+++ b/" + ins.file + "\n";
        }
        int old_line = ins.line - 1; // insert after this line of the original
        int new_line = ins.line + offset;
        out += "@@ -" + std::to_string(old_line) + ",0 +" + std::to_string(new_line) + ",1 @@ " +
               ins.fq + "\n";
        out += "+" + ins.comment + "\n";
        ++offset;
    }
    return out;
}

enum class AnnotationOutput { Sidecar, InlineSuggestions };

/// Render annotations in the requested output form.
inline std::string emit_annotations(const AnnotationMap& annotated, AnnotationOutput format) {
    if (format == AnnotationOutput::Sidecar) {
        return sidecar_to_json(annotated).dump(2) + "\n";
    }
    return render_inline_suggestions(annotated);
}

} // namespace valuelint
