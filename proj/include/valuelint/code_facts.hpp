#pragma once

#include <algorithm>
#include <compare>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "valuelint/common.hpp"

namespace valuelint {

/// 1-based, inclusive source region.
struct SourceSpan {
    std::string file;
    int start_line = 1;
    int start_col = 1;
    int end_line = 1;
    int end_col = 1;

    auto operator<=>(const SourceSpan&) const = default;
};

enum class ElementKind { Package, Class, Interface, Method, Field };

inline std::string_view element_kind_name(ElementKind k) {
    switch (k) {
    case ElementKind::Package: return "Package";
    case ElementKind::Class: return "Class";
    case ElementKind::Interface: return "Interface";
    case ElementKind::Method: return "Method";
    case ElementKind::Field: return "Field";
    }
    throw UsageError("invalid ElementKind");
}

inline std::optional<ElementKind> parse_element_kind(std::string_view s) {
    for (ElementKind k : {ElementKind::Package, ElementKind::Class, ElementKind::Interface,
                          ElementKind::Method, ElementKind::Field}) {
        if (element_kind_name(k) == s) {
            return k;
        }
    }
    return std::nullopt;
}

/// A declared source construct. `parent` is the fully-qualified name of the
/// containing element (empty for roots).
struct CodeElement {
    ElementKind kind = ElementKind::Class;
    std::string fq_name;
    SourceSpan span;
    std::string parent;

    bool operator==(const CodeElement&) const = default;
};

enum class UsageKind { Import, Extend, Implement, Call, Instantiate, Reference, Annotation };

inline std::string_view usage_kind_name(UsageKind k) {
    switch (k) {
    case UsageKind::Import: return "Import";
    case UsageKind::Extend: return "Extend";
    case UsageKind::Implement: return "Implement";
    case UsageKind::Call: return "Call";
    case UsageKind::Instantiate: return "Instantiate";
    case UsageKind::Reference: return "Reference";
    case UsageKind::Annotation: return "Annotation";
    }
    throw UsageError("invalid UsageKind");
}

inline std::optional<UsageKind> parse_usage_kind(std::string_view s) {
    for (UsageKind k : {UsageKind::Import, UsageKind::Extend, UsageKind::Implement,
                        UsageKind::Call, UsageKind::Instantiate, UsageKind::Reference,
                        UsageKind::Annotation}) {
        if (usage_kind_name(k) == s) {
            return k;
        }
    }
    return std::nullopt;
}

/// One observed interaction between a code element and an API.
struct UsageFact {
    std::string element;  // fq_name of the interacting element
    std::string api_name; // qualified name as written/resolved
    UsageKind usage_kind = UsageKind::Reference;
    SourceSpan span;

    bool operator==(const UsageFact&) const = default;
};

/// Non-fatal extraction diagnostics (unreadable file, skipped file, ...).
struct ExtractionWarning {
    std::string file;
    std::string message;

    bool operator==(const ExtractionWarning&) const = default;
};

struct FactSet {
    std::vector<CodeElement> elements;
    std::vector<UsageFact> facts;
    std::vector<ExtractionWarning> warnings;

    const CodeElement* find(std::string_view fq_name) const {
        for (const auto& e : elements) {
            if (e.fq_name == fq_name) {
                return &e;
            }
        }
        return nullptr;
    }
};

struct ExtractionConfig {
    std::vector<std::string> include_globs = {"**/*.java"};
    std::vector<std::string> exclude_globs;
    std::size_t max_file_size = 1024 * 1024;
};

namespace detail {

inline bool span_before(const SourceSpan& a, const SourceSpan& b) {
    return std::tie(a.file, a.start_line, a.start_col, a.end_line, a.end_col) <
           std::tie(b.file, b.start_line, b.start_col, b.end_line, b.end_col);
}

} // namespace detail

/// Canonical ordering: by file path, then span, then name.
inline void sort_fact_set(FactSet& set) {
    std::sort(set.elements.begin(), set.elements.end(),
              [](const CodeElement& a, const CodeElement& b) {
                  if (a.span != b.span) {
                      return detail::span_before(a.span, b.span);
                  }
                  return a.fq_name < b.fq_name;
              });
    std::sort(set.facts.begin(), set.facts.end(), [](const UsageFact& a, const UsageFact& b) {
        if (a.span != b.span) {
            return detail::span_before(a.span, b.span);
        }
        return std::tie(a.element, a.api_name) < std::tie(b.element, b.api_name);
    });
    std::sort(set.warnings.begin(), set.warnings.end(),
              [](const ExtractionWarning& a, const ExtractionWarning& b) {
                  return std::tie(a.file, a.message) < std::tie(b.file, b.message);
              });
}

/// Structural invariants shared by both front ends: declared elements are
/// unique, parent chains resolve with consistent kinds, facts reference
/// declared elements.
inline void validate_fact_set(const FactSet& set, const std::string& origin) {
    std::map<std::string, const CodeElement*> by_name;
    for (const auto& e : set.elements) {
        if (e.fq_name.empty()) {
            throw ValidationError(origin + ": element with empty fq_name");
        }
        if (!by_name.emplace(e.fq_name, &e).second) {
            throw ValidationError(origin + ": duplicate element \"" + e.fq_name + "\"");
        }
    }
    for (const auto& e : set.elements) {
        if (e.parent.empty()) {
            continue;
        }
        auto it = by_name.find(e.parent);
        if (it == by_name.end()) {
            throw ValidationError(origin + ": element \"" + e.fq_name +
                                  "\" references undeclared parent \"" + e.parent + "\"");
        }
        ElementKind pk = it->second->kind;
        bool ok = false;
        switch (e.kind) {
        case ElementKind::Package:
            ok = false; // packages are roots
            break;
        case ElementKind::Class:
        case ElementKind::Interface:
            ok = pk == ElementKind::Package || pk == ElementKind::Class ||
                 pk == ElementKind::Interface;
            break;
        case ElementKind::Method:
        case ElementKind::Field:
            ok = pk == ElementKind::Class || pk == ElementKind::Interface;
            break;
        }
        if (!ok) {
            throw ValidationError(origin + ": element \"" + e.fq_name + "\" (" +
                                  std::string(element_kind_name(e.kind)) +
                                  ") has parent of inconsistent kind \"" + e.parent + "\"");
        }
        // Acyclic parent chain.
        std::string cursor = e.parent;
        std::size_t steps = 0;
        while (!cursor.empty()) {
            if (++steps > set.elements.size()) {
                throw ValidationError(origin + ": parent cycle at \"" + e.fq_name + "\"");
            }
            auto pit = by_name.find(cursor);
            if (pit == by_name.end()) {
                break;
            }
            cursor = pit->second->parent;
        }
    }
    for (const auto& f : set.facts) {
        if (f.api_name.empty()) {
            throw ValidationError(origin + ": fact with empty api_name");
        }
        if (!by_name.count(f.element)) {
            throw ValidationError(origin + ": fact references undeclared element \"" + f.element +
                                  "\"");
        }
    }
}

// ---------------------------------------------------------------------------
// Facts file (language-agnostic front door)
// ---------------------------------------------------------------------------

inline Json span_to_json(const SourceSpan& span) {
    return Json{{"start_line", span.start_line},
                {"start_col", span.start_col},
                {"end_line", span.end_line},
                {"end_col", span.end_col}};
}

inline SourceSpan span_from_json(const Json& j, std::string file, const std::string& ctx) {
    SourceSpan span;
    span.file = std::move(file);
    try {
        span.start_line = j.at("start_line").get<int>();
        span.start_col = j.at("start_col").get<int>();
        span.end_line = j.at("end_line").get<int>();
        span.end_col = j.at("end_col").get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(ctx + ": bad span: " + e.what());
    }
    if (span.start_line < 1 || span.start_col < 1 || span.end_line < 1 || span.end_col < 1 ||
        std::tie(span.end_line, span.end_col) < std::tie(span.start_line, span.start_col)) {
        throw ValidationError(ctx + ": span out of order or non-positive");
    }
    return span;
}

inline Json fact_set_to_json(const FactSet& set) {
    Json elements = Json::array();
    for (const auto& e : set.elements) {
        Json j{{"kind", std::string(element_kind_name(e.kind))}, {"fq_name", e.fq_name}};
        if (!e.parent.empty()) {
            j["parent"] = e.parent;
        }
        j["file"] = e.span.file;
        j["span"] = span_to_json(e.span);
        elements.push_back(std::move(j));
    }
    Json facts = Json::array();
    for (const auto& f : set.facts) {
        facts.push_back(Json{{"element", f.element},
                             {"api_name", f.api_name},
                             {"usage_kind", std::string(usage_kind_name(f.usage_kind))},
                             {"file", f.span.file},
                             {"span", span_to_json(f.span)}});
    }
    return Json{{"version", "1"}, {"elements", std::move(elements)}, {"facts", std::move(facts)}};
}

inline FactSet fact_set_from_json(const Json& doc, const std::string& origin) {
    require_format_version(doc, "1", origin);
    if (!doc.contains("elements") || !doc["elements"].is_array() || !doc.contains("facts") ||
        !doc["facts"].is_array()) {
        throw ValidationError(origin + ": expected \"elements\" and \"facts\" arrays");
    }
    FactSet set;
    std::size_t index = 0;
    for (const auto& j : doc["elements"]) {
        std::string ctx = origin + ": element #" + std::to_string(index++);
        if (!j.is_object() || !j.contains("kind") || !j.contains("fq_name") ||
            !j.contains("file") || !j.contains("span")) {
            throw ValidationError(ctx + ": each element needs kind, fq_name, file, span");
        }
        CodeElement e;
        auto kind = parse_element_kind(j["kind"].get<std::string>());
        if (!kind) {
            throw ValidationError(ctx + ": unknown element kind \"" +
                                  j["kind"].get<std::string>() + "\"");
        }
        e.kind = *kind;
        e.fq_name = j["fq_name"].get<std::string>();
        if (j.contains("parent") && !j["parent"].is_null()) {
            e.parent = j["parent"].get<std::string>();
        }
        e.span = span_from_json(j["span"], j["file"].get<std::string>(), ctx);
        set.elements.push_back(std::move(e));
    }
    index = 0;
    for (const auto& j : doc["facts"]) {
        std::string ctx = origin + ": fact #" + std::to_string(index++);
        if (!j.is_object() || !j.contains("element") || !j.contains("api_name") ||
            !j.contains("usage_kind") || !j.contains("file") || !j.contains("span")) {
            throw ValidationError(ctx +
                                  ": each fact needs element, api_name, usage_kind, file, span");
        }
        UsageFact f;
        f.element = j["element"].get<std::string>();
        f.api_name = j["api_name"].get<std::string>();
        auto kind = parse_usage_kind(j["usage_kind"].get<std::string>());
        if (!kind) {
            throw ValidationError(ctx + ": unknown usage kind \"" +
                                  j["usage_kind"].get<std::string>() + "\"");
        }
        f.usage_kind = *kind;
        f.span = span_from_json(j["span"], j["file"].get<std::string>(), ctx);
        set.facts.push_back(std::move(f));
    }
    sort_fact_set(set);
    validate_fact_set(set, origin);
    return set;
}

inline FactSet ingest_facts_file(const std::filesystem::path& path) {
    return fact_set_from_json(load_json_file(path), path.string());
}

inline void save_facts_file(const FactSet& set, const std::filesystem::path& path) {
    write_text_file(path, fact_set_to_json(set).dump(2) + "\n");
}

} // namespace valuelint
