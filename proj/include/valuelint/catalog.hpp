#pragma once

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "valuelint/common.hpp"
#include "valuelint/value_model.hpp"

namespace valuelint {

/// A dot-separated API name prefix bound to a value profile.
struct ApiAnnotation {
    std::string pattern;
    std::string description;
    ValueProfile profile;
    std::string provenance;
    std::string notes;

    bool operator==(const ApiAnnotation&) const = default;
};

/// Validated, pattern-sorted collection of API annotations.
struct Catalog {
    std::string version;
    std::vector<ApiAnnotation> annotations; // sorted by pattern, patterns unique

    const ApiAnnotation* find(std::string_view pattern) const {
        auto it = std::lower_bound(
            annotations.begin(), annotations.end(), pattern,
            [](const ApiAnnotation& a, std::string_view p) { return a.pattern < p; });
        return it != annotations.end() && it->pattern == pattern ? &*it : nullptr;
    }

    bool operator==(const Catalog&) const = default;
};

namespace detail {

inline void validate_pattern(const std::string& pattern, const std::string& ctx) {
    if (pattern.empty()) {
        throw ValidationError(ctx + ": empty pattern");
    }
    for (const auto& segment : split(pattern, '.')) {
        if (segment.empty()) {
            throw ValidationError(ctx + ": pattern \"" + pattern + "\" has an empty segment");
        }
        for (char c : segment) {
            if (std::isspace(static_cast<unsigned char>(c))) {
                throw ValidationError(ctx + ": pattern \"" + pattern + "\" contains whitespace");
            }
        }
    }
}

} // namespace detail

/// Sort by pattern and enforce catalog invariants. Duplicates are an error,
/// never a silent override.
inline Catalog finalize_catalog(Catalog catalog, const std::string& origin) {
    std::sort(catalog.annotations.begin(), catalog.annotations.end(),
              [](const ApiAnnotation& a, const ApiAnnotation& b) { return a.pattern < b.pattern; });
    for (std::size_t i = 0; i + 1 < catalog.annotations.size(); ++i) {
        if (catalog.annotations[i].pattern == catalog.annotations[i + 1].pattern) {
            throw ValidationError(origin + ": duplicate pattern \"" +
                                  catalog.annotations[i].pattern + "\"");
        }
    }
    return catalog;
}

inline ApiAnnotation annotation_from_json(const Json& j, const std::string& ctx) {
    if (!j.is_object() || !j.contains("pattern") || !j["pattern"].is_string()) {
        throw ValidationError(ctx + ": annotation record needs a string \"pattern\"");
    }
    ApiAnnotation ann;
    ann.pattern = j["pattern"].get<std::string>();
    std::string actx = ctx + " (pattern \"" + ann.pattern + "\")";
    detail::validate_pattern(ann.pattern, actx);
    if (j.contains("description")) {
        ann.description = j["description"].get<std::string>();
    }
    if (j.contains("provenance")) {
        ann.provenance = j["provenance"].get<std::string>();
    }
    if (j.contains("notes")) {
        ann.notes = j["notes"].get<std::string>();
    }
    if (j.contains("values")) {
        if (!j["values"].is_object()) {
            throw ValidationError(actx + ": \"values\" must be an object");
        }
        for (const auto& [key, symbol] : j["values"].items()) {
            auto value = parse_value_code(key);
            if (!value) {
                throw ValidationError(actx + ": unknown value id \"" + key + "\"");
            }
            if (!symbol.is_string()) {
                throw ValidationError(actx + ": relation for " + key + " must be a string");
            }
            auto relation = parse_relation_symbol(symbol.get<std::string>());
            if (!relation) {
                throw ValidationError(actx + ": bad relation symbol \"" +
                                      symbol.get<std::string>() + "\" for " + key +
                                      " (expected \"+\", \"-\" or \"?\")");
            }
            ann.profile.set(*value, *relation);
        }
    }
    return ann;
}

inline Json annotation_to_json(const ApiAnnotation& ann) {
    Json values = Json::object();
    for (const auto& [value, relation] : ann.profile.entries()) {
        values[value_code(value)] = std::string(relation_symbol(relation));
    }
    Json j{{"pattern", ann.pattern}, {"description", ann.description},
           {"provenance", ann.provenance}};
    if (!ann.notes.empty()) {
        j["notes"] = ann.notes;
    }
    j["values"] = std::move(values);
    return j;
}

inline Catalog catalog_from_json(const Json& doc, const std::string& origin) {
    if (!doc.is_object()) {
        throw ValidationError(origin + ": expected a JSON object at top level");
    }
    if (!doc.contains("version") || !doc["version"].is_string() ||
        doc["version"].get<std::string>().empty()) {
        throw ValidationError(origin + ": missing \"version\" field");
    }
    if (!doc.contains("annotations") || !doc["annotations"].is_array()) {
        throw ValidationError(origin + ": missing \"annotations\" array");
    }
    Catalog catalog;
    catalog.version = doc["version"].get<std::string>();
    std::size_t index = 0;
    for (const auto& j : doc["annotations"]) {
        catalog.annotations.push_back(
            annotation_from_json(j, origin + ": annotation #" + std::to_string(index++)));
    }
    return finalize_catalog(std::move(catalog), origin);
}

inline Json catalog_to_json(const Catalog& catalog) {
    Json annotations = Json::array();
    for (const auto& ann : catalog.annotations) {
        annotations.push_back(annotation_to_json(ann));
    }
    return Json{{"version", catalog.version}, {"annotations", std::move(annotations)}};
}

inline Catalog load_catalog(const std::filesystem::path& path) {
    return catalog_from_json(load_json_file(path), path.string());
}

/// Load and merge several catalog files. A pattern appearing in more than one
/// file is a validation error.
inline Catalog load_catalogs(const std::vector<std::filesystem::path>& paths) {
    if (paths.empty()) {
        throw UsageError("load_catalogs: no catalog paths given");
    }
    Catalog merged = load_catalog(paths[0]);
    std::string origin = paths[0].string();
    for (std::size_t i = 1; i < paths.size(); ++i) {
        Catalog next = load_catalog(paths[i]);
        origin += "+" + paths[i].string();
        for (auto& ann : next.annotations) {
            merged.annotations.push_back(std::move(ann));
        }
        merged.version += "+" + next.version;
        merged = finalize_catalog(std::move(merged), origin);
    }
    return merged;
}

inline void save_catalog(const Catalog& catalog, const std::filesystem::path& path) {
    write_text_file(path, catalog_to_json(catalog).dump(2) + "\n");
}

/// Longest whole-segment prefix match of `qualified_name` among the catalog
/// patterns; nullptr when nothing matches.
inline const ApiAnnotation* match_api(std::string_view qualified_name, const Catalog& catalog) {
    if (qualified_name.empty()) {
        throw UsageError("match_api: empty qualified name");
    }
    const ApiAnnotation* best = nullptr;
    for (const auto& ann : catalog.annotations) {
        if (is_segment_prefix(ann.pattern, qualified_name)) {
            if (!best || ann.pattern.size() > best->pattern.size()) {
                best = &ann;
            }
        }
    }
    return best;
}

struct ConflictingPair {
    const ApiAnnotation* first = nullptr;  // catalog order: first->pattern < second->pattern
    const ApiAnnotation* second = nullptr;
    ValueId value = ValueId::SelfDirection;
};

/// All annotation pairs carrying opposite signs on the same value, ordered by
/// (value, first pattern, second pattern).
inline std::vector<ConflictingPair> query_conflicting_pairs(const Catalog& catalog) {
    std::vector<ConflictingPair> pairs;
    for (ValueId value : kAllValues) {
        for (std::size_t i = 0; i < catalog.annotations.size(); ++i) {
            for (std::size_t j = i + 1; j < catalog.annotations.size(); ++j) {
                Relation a = catalog.annotations[i].profile.at(value);
                Relation b = catalog.annotations[j].profile.at(value);
                bool opposite = (a == Relation::Positive && b == Relation::Negative) ||
                                (a == Relation::Negative && b == Relation::Positive);
                if (opposite) {
                    pairs.push_back({&catalog.annotations[i], &catalog.annotations[j], value});
                }
            }
        }
    }
    return pairs;
}

/// The catalog shipped with the tool: nine Android API packages annotated
/// from their public reference documentation.
inline const Catalog& builtin_catalog() {
    static const Catalog catalog = [] {
        using V = ValueId;
        using R = Relation;
        const std::string provenance = "developer.android.com/reference";
        auto ann = [&](std::string pattern, std::string description, ValueProfile profile) {
            return ApiAnnotation{std::move(pattern), std::move(description), std::move(profile),
                                 provenance, ""};
        };
        Catalog c;
        c.version = "1.0.0";
        c.annotations = {
            ann("android.accessibilityservice",
                "Accessibility services that assist users with disabilities in using Android "
                "devices and apps.",
                {{V::SelfDirection, R::Negative},
                 {V::Security, R::Negative},
                 {V::Benevolence, R::Positive},
                 {V::Universalism, R::Positive}}),
            ann("android.animation",
                "Property animation system for animating object properties of any type.",
                {{V::Hedonism, R::Unknown}}),
            ann("android.app.admin",
                "Device administration features at the system level for building "
                "security-aware applications in enterprise settings.",
                {{V::Power, R::Positive}, {V::Security, R::Positive}}),
            ann("android.app.role",
                "Information about and management of roles.",
                {{V::SelfDirection, R::Positive},
                 {V::Power, R::Positive},
                 {V::Security, R::Positive}}),
            ann("android.icu.lang",
                "International language support.",
                {{V::Benevolence, R::Positive}, {V::Universalism, R::Positive}}),
            ann("android.icu.media",
                "Media interfaces for playing and recording audio and video, face detection, "
                "audio routing, and alert control.",
                {{V::SelfDirection, R::Unknown},
                 {V::Stimulation, R::Unknown},
                 {V::Hedonism, R::Unknown},
                 {V::Universalism, R::Unknown}}),
            ann("android.mtp",
                "Direct interaction with connected cameras and other devices: attachment "
                "notifications, storage management, and file transfer.",
                {{V::SelfDirection, R::Unknown}}),
            ann("android.nfc",
                "Access to Near Field Communication functionality for reading NDEF messages "
                "in NFC tags.",
                {{V::SelfDirection, R::Unknown},
                 {V::Security, R::Unknown},
                 {V::Conformity, R::Positive}}),
            ann("android.security",
                "Access to a few facilities of the Android security subsystems.",
                {{V::Security, R::Positive}}),
        };
        return finalize_catalog(std::move(c), "builtin catalog");
    }();
    return catalog;
}

} // namespace valuelint
