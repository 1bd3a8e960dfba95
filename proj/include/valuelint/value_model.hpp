#pragma once

#include <array>
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "valuelint/common.hpp"

namespace valuelint {

/// The twelve basic human values of the Schwartz model, V1 through V12.
enum class ValueId : int {
    SelfDirection = 1,
    Stimulation = 2,
    Hedonism = 3,
    Achievement = 4,
    Power = 5,
    Face = 6,
    Security = 7,
    Tradition = 8,
    Conformity = 9,
    Humility = 10,
    Benevolence = 11,
    Universalism = 12,
};

inline constexpr std::array<ValueId, 12> kAllValues = {
    ValueId::SelfDirection, ValueId::Stimulation, ValueId::Hedonism,  ValueId::Achievement,
    ValueId::Power,         ValueId::Face,        ValueId::Security,  ValueId::Tradition,
    ValueId::Conformity,    ValueId::Humility,    ValueId::Benevolence, ValueId::Universalism,
};

inline std::string_view canonical_name(ValueId value) {
    switch (value) {
    case ValueId::SelfDirection: return "Self Direction";
    case ValueId::Stimulation: return "Stimulation";
    case ValueId::Hedonism: return "Hedonism";
    case ValueId::Achievement: return "Achievement";
    case ValueId::Power: return "Power";
    case ValueId::Face: return "Face";
    case ValueId::Security: return "Security";
    case ValueId::Tradition: return "Tradition";
    case ValueId::Conformity: return "Conformity";
    case ValueId::Humility: return "Humility";
    case ValueId::Benevolence: return "Benevolence";
    case ValueId::Universalism: return "Universalism";
    }
    throw UsageError("invalid ValueId");
}

/// Short code "V1".."V12" used in every file format.
inline std::string value_code(ValueId value) {
    return "V" + std::to_string(static_cast<int>(value));
}

inline std::optional<ValueId> parse_value_code(std::string_view code) {
    if (code.size() < 2 || code.size() > 3 || code[0] != 'V') {
        return std::nullopt;
    }
    int n = 0;
    for (char c : code.substr(1)) {
        if (c < '0' || c > '9') {
            return std::nullopt;
        }
        n = n * 10 + (c - '0');
    }
    if (n < 1 || n > 12) {
        return std::nullopt;
    }
    return static_cast<ValueId>(n);
}

inline std::optional<ValueId> parse_canonical_name(std::string_view name) {
    for (ValueId v : kAllValues) {
        if (canonical_name(v) == name) {
            return v;
        }
    }
    return std::nullopt;
}

/// How a source (an API annotation) relates to one value. NonRelevant is the
/// absent/default state and is never stored in a sparse profile.
enum class Relation { Positive, Negative, Unknown, NonRelevant };

/// File-format symbol for a stored relation: "+", "-", "?".
inline std::string_view relation_symbol(Relation r) {
    switch (r) {
    case Relation::Positive: return "+";
    case Relation::Negative: return "-";
    case Relation::Unknown: return "?";
    case Relation::NonRelevant: break;
    }
    throw UsageError("NonRelevant has no symbol; it is encoded by absence");
}

inline std::optional<Relation> parse_relation_symbol(std::string_view s) {
    if (s == "+") return Relation::Positive;
    if (s == "-") return Relation::Negative;
    if (s == "?") return Relation::Unknown;
    return std::nullopt;
}

/// Combined relevance of one value once evidence from several sources is
/// merged. Conflict exists only at this level, never in a single source.
enum class StateKind { NonRelevant, Positive, Negative, Unknown, Conflict };

inline std::string_view state_name(StateKind k) {
    switch (k) {
    case StateKind::NonRelevant: return "non-relevant";
    case StateKind::Positive: return "positive";
    case StateKind::Negative: return "negative";
    case StateKind::Unknown: return "unknown";
    case StateKind::Conflict: return "conflict";
    }
    throw UsageError("invalid StateKind");
}

inline std::optional<StateKind> parse_state_name(std::string_view s) {
    for (StateKind k : {StateKind::NonRelevant, StateKind::Positive, StateKind::Negative,
                        StateKind::Unknown, StateKind::Conflict}) {
        if (state_name(k) == s) {
            return k;
        }
    }
    return std::nullopt;
}

/// One piece of evidence: which source asserted which relation.
struct EvidenceEntry {
    std::string source;
    Relation relation = Relation::NonRelevant;

    auto operator<=>(const EvidenceEntry&) const = default;
};

struct AggregateState {
    StateKind kind = StateKind::NonRelevant;
    std::vector<EvidenceEntry> evidence; // sorted, duplicate-free (set semantics)

    bool operator==(const AggregateState&) const = default;
};

/// Combine the relation kinds present in a multiset of evidence.
///
/// Precedence: Conflict (both signs present) over Unknown over the single
/// sign present over NonRelevant. An empty input yields NonRelevant.
template <typename Range>
StateKind derive_state(const Range& relations) {
    bool pos = false, neg = false, unk = false;
    for (Relation r : relations) {
        switch (r) {
        case Relation::Positive: pos = true; break;
        case Relation::Negative: neg = true; break;
        case Relation::Unknown: unk = true; break;
        case Relation::NonRelevant: break;
        }
    }
    if (pos && neg) return StateKind::Conflict;
    if (unk) return StateKind::Unknown;
    if (pos) return StateKind::Positive;
    if (neg) return StateKind::Negative;
    return StateKind::NonRelevant;
}

/// Sparse per-source profile: value -> relation, NonRelevant kept implicit.
class ValueProfile {
public:
    ValueProfile() = default;
    ValueProfile(std::initializer_list<std::pair<ValueId, Relation>> init) {
        for (const auto& [v, r] : init) {
            set(v, r);
        }
    }

    void set(ValueId value, Relation relation) {
        if (relation == Relation::NonRelevant) {
            entries_.erase(value);
        } else {
            entries_[value] = relation;
        }
    }

    Relation at(ValueId value) const {
        auto it = entries_.find(value);
        return it == entries_.end() ? Relation::NonRelevant : it->second;
    }

    const std::map<ValueId, Relation>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

    bool operator==(const ValueProfile&) const = default;

private:
    std::map<ValueId, Relation> entries_;
};

/// Sparse aggregate: value -> combined state with its evidence. Values with
/// no evidence are NonRelevant and absent from the map.
struct AggregateProfile {
    std::map<ValueId, AggregateState> entries;

    StateKind kind(ValueId value) const {
        auto it = entries.find(value);
        return it == entries.end() ? StateKind::NonRelevant : it->second.kind;
    }

    const AggregateState* find(ValueId value) const {
        auto it = entries.find(value);
        return it == entries.end() ? nullptr : &it->second;
    }

    bool empty() const { return entries.empty(); }

    bool operator==(const AggregateProfile&) const = default;
};

namespace detail {

inline void insert_evidence(std::vector<EvidenceEntry>& evidence, EvidenceEntry entry) {
    auto it = std::lower_bound(evidence.begin(), evidence.end(), entry);
    if (it == evidence.end() || *it != entry) {
        evidence.insert(it, std::move(entry));
    }
}

} // namespace detail

/// Merge per-source profiles into one aggregate. Evidence is the set of
/// (source, relation) pairs per value; the state follows derive_state.
inline AggregateProfile merge_profiles(const std::vector<ValueProfile>& profiles,
                                       const std::vector<std::string>& source_ids) {
    if (profiles.size() != source_ids.size()) {
        throw UsageError("merge_profiles: profiles and source_ids differ in length");
    }
    AggregateProfile result;
    for (std::size_t i = 0; i < profiles.size(); ++i) {
        for (const auto& [value, relation] : profiles[i].entries()) {
            detail::insert_evidence(result.entries[value].evidence, {source_ids[i], relation});
        }
    }
    for (auto& [value, state] : result.entries) {
        std::vector<Relation> relations;
        relations.reserve(state.evidence.size());
        for (const auto& e : state.evidence) {
            relations.push_back(e.relation);
        }
        state.kind = derive_state(relations);
    }
    return result;
}

/// Union of two evidence-bearing aggregates, re-deriving each state.
inline AggregateProfile merge_aggregates(const AggregateProfile& a, const AggregateProfile& b) {
    AggregateProfile result = a;
    for (const auto& [value, state] : b.entries) {
        auto& target = result.entries[value];
        for (const auto& entry : state.evidence) {
            detail::insert_evidence(target.evidence, entry);
        }
    }
    for (auto& [value, state] : result.entries) {
        std::vector<Relation> relations;
        relations.reserve(state.evidence.size());
        for (const auto& e : state.evidence) {
            relations.push_back(e.relation);
        }
        state.kind = derive_state(relations);
    }
    return result;
}

// ---------------------------------------------------------------------------
// Value definitions (the shipped description of the twelve values)
// ---------------------------------------------------------------------------

/// One sub-dimension of a value ("thought", "caring", ...). Values without
/// named sub-dimensions carry a single dimension with an empty name.
struct ValueDimension {
    ValueId value = ValueId::SelfDirection;
    std::string dimension_name;
    std::string definition;
    std::vector<std::string> descriptive_items;

    bool operator==(const ValueDimension&) const = default;
};

struct ValueDefinition {
    ValueId id = ValueId::SelfDirection;
    std::string name;
    std::vector<ValueDimension> dimensions;

    bool operator==(const ValueDefinition&) const = default;
};

inline const std::vector<ValueDefinition>& builtin_value_definitions() {
    static const std::vector<ValueDefinition> defs = [] {
        auto dim = [](ValueId v, std::string name, std::string def,
                      std::vector<std::string> items) {
            return ValueDimension{v, std::move(name), std::move(def), std::move(items)};
        };
        std::vector<ValueDefinition> d;
        d.push_back({ValueId::SelfDirection,
                     "Self Direction",
                     {dim(ValueId::SelfDirection, "thought",
                          "freedom to cultivate one's own ideas and abilities.",
                          {"creativity/imagination", "curious/interested"}),
                      dim(ValueId::SelfDirection, "action",
                          "freedom to determine one's own actions.",
                          {"choosing own goals/own purposes", "independent/self-reliant",
                           "privacy"})}});
        d.push_back({ValueId::Stimulation,
                     "Stimulation",
                     {dim(ValueId::Stimulation, "", "excitement, novelty, and change.",
                          {"an exciting life/stimulating experiences", "a varied life",
                           "daring/seeking adventure"})}});
        d.push_back({ValueId::Hedonism,
                     "Hedonism",
                     {dim(ValueId::Hedonism, "", "pleasure and sensuous gratification",
                          {"pleasure"})}});
        d.push_back({ValueId::Achievement,
                     "Achievement",
                     {dim(ValueId::Achievement, "", "success according to social standards",
                          {"successful/achieving goals", "ambitious/aspiring",
                           "capable/competent",
                           "influential/having an impact on people and events"})}});
        d.push_back({ValueId::Power,
                     "Power",
                     {dim(ValueId::Power, "dominance", "exercising control over people.",
                          {"social power/control over others", "authority/right to command"}),
                      dim(ValueId::Power, "resources",
                          "control of material and social resources.",
                          {"wealth/material possessions"})}});
        d.push_back({ValueId::Face,
                     "Face",
                     {dim(ValueId::Face, "",
                          "maintaining one's public image and avoiding humiliation.",
                          {"social recognition/respect",
                           "preserving public image/maintaining face"})}});
        d.push_back({ValueId::Security,
                     "Security",
                     {dim(ValueId::Security, "personal", "safety in one's immediate environment.",
                          {"sense of belonging/feeling others care about me", "healthy/not sick",
                           "reciprocating favors/avoiding indebtedness", "clean/neat, tidy",
                           "family security/safety for loved ones"}),
                      dim(ValueId::Security, "social",
                          "safety and stability in the wider society",
                          {"national security/nation safe from enemies",
                           "social order/societal stability"})}});
        d.push_back({ValueId::Tradition,
                     "Tradition",
                     {dim(ValueId::Tradition, "",
                          "maintaining and preserving cultural, family or religious traditions",
                          {"respect tradition/preserve customs",
                           "devout/hold religious faith"})}});
        d.push_back({ValueId::Conformity,
                     "Conformity",
                     {dim(ValueId::Conformity, "rules",
                          "compliance with rules, laws, and formal obligations.",
                          {"self-discipline/resist temptation", "obedient/meet obligations"}),
                      dim(ValueId::Conformity, "interpersonal",
                          "avoidance of upsetting or harming other people",
                          {"politeness/courtesy", "honor parents/show respect"})}});
        d.push_back({ValueId::Humility,
                     "Humility",
                     {dim(ValueId::Humility, "",
                          "recognizing one's insignificance in the larger scheme of things.",
                          {"humble/modest, self-effacing",
                           "accepting my portion/submitting to life's circumstances"})}});
        d.push_back({ValueId::Benevolence,
                     "Benevolence",
                     {dim(ValueId::Benevolence, "caring",
                          "devotion to the welfare of in-group members.",
                          {"helpful/working for others welfare", "honest/genuine",
                           "forgiving/willing to pardon",
                           "family security/safety for loved ones"}),
                      dim(ValueId::Benevolence, "dependability",
                          "being a reliable and trustworthy member of the in-group",
                          {"responsible/dependable", "loyal/faithful to friends"})}});
        d.push_back({ValueId::Universalism,
                     "Universalism",
                     {dim(ValueId::Universalism, "nature",
                          "preservation of the natural environment.",
                          {"protect the environment", "unity with nature", "world beauty"}),
                      dim(ValueId::Universalism, "concern",
                          "commitment to equality, justice and protection for all people",
                          {"equality for all", "social justice", "world at peace"}),
                      dim(ValueId::Universalism, "tolerance",
                          "acceptance and understanding of those who are different from oneself",
                          {"broadminded/tolerant", "wisdom/mature understanding"})}});
        return d;
    }();
    return defs;
}

inline Json value_definitions_to_json(const std::vector<ValueDefinition>& defs) {
    Json values = Json::array();
    for (const auto& def : defs) {
        Json dims = Json::array();
        for (const auto& dim : def.dimensions) {
            Json j;
            if (!dim.dimension_name.empty()) {
                j["name"] = dim.dimension_name;
            }
            j["definition"] = dim.definition;
            j["descriptive_items"] = dim.descriptive_items;
            dims.push_back(std::move(j));
        }
        values.push_back(Json{{"id", value_code(def.id)}, {"name", def.name},
                              {"dimensions", std::move(dims)}});
    }
    return Json{{"version", "1"}, {"values", std::move(values)}};
}

inline std::vector<ValueDefinition> value_definitions_from_json(const Json& doc,
                                                                const std::string& origin) {
    require_format_version(doc, "1", origin);
    if (!doc.contains("values") || !doc["values"].is_array()) {
        throw ValidationError(origin + ": missing \"values\" array");
    }
    std::vector<ValueDefinition> defs;
    std::size_t index = 0;
    for (const auto& jv : doc["values"]) {
        std::string ctx = origin + ": value #" + std::to_string(index++);
        if (!jv.is_object() || !jv.contains("id") || !jv.contains("name") ||
            !jv.contains("dimensions")) {
            throw ValidationError(ctx + ": each value needs id, name, dimensions");
        }
        auto id = parse_value_code(jv["id"].get<std::string>());
        if (!id) {
            throw ValidationError(ctx + ": unknown value id \"" +
                                  jv["id"].get<std::string>() + "\"");
        }
        ValueDefinition def;
        def.id = *id;
        def.name = jv["name"].get<std::string>();
        for (const auto& jd : jv["dimensions"]) {
            ValueDimension dim;
            dim.value = *id;
            if (jd.contains("name")) {
                dim.dimension_name = jd["name"].get<std::string>();
            }
            dim.definition = jd.at("definition").get<std::string>();
            for (const auto& item : jd.at("descriptive_items")) {
                dim.descriptive_items.push_back(item.get<std::string>());
            }
            def.dimensions.push_back(std::move(dim));
        }
        defs.push_back(std::move(def));
    }
    if (defs.size() != 12) {
        throw ValidationError(origin + ": expected 12 values, found " +
                              std::to_string(defs.size()));
    }
    for (std::size_t i = 0; i < defs.size(); ++i) {
        if (static_cast<int>(defs[i].id) != static_cast<int>(i) + 1) {
            throw ValidationError(origin + ": values must appear in order V1..V12");
        }
        if (canonical_name(defs[i].id) != defs[i].name) {
            throw ValidationError(origin + ": value " + value_code(defs[i].id) +
                                  " has non-canonical name \"" + defs[i].name + "\"");
        }
    }
    return defs;
}

inline std::vector<ValueDefinition>
load_value_definitions(const std::filesystem::path& path) {
    return value_definitions_from_json(load_json_file(path), path.string());
}

inline void save_value_definitions(const std::vector<ValueDefinition>& defs,
                                   const std::filesystem::path& path) {
    write_text_file(path, value_definitions_to_json(defs).dump(2) + "\n");
}

} // namespace valuelint
