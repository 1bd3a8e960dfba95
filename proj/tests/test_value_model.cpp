#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "valuelint/value_model.hpp"

namespace valuelint::test {
namespace {

using R = Relation;
using K = StateKind;
using V = ValueId;

TEST(ValueIds, TwelveMembersWithBijectiveNames) {
    ASSERT_EQ(kAllValues.size(), 12u);
    std::set<std::string> names;
    for (ValueId v : kAllValues) {
        names.insert(std::string(canonical_name(v)));
        EXPECT_EQ(parse_value_code(value_code(v)), v);
        EXPECT_EQ(parse_canonical_name(canonical_name(v)), v);
    }
    EXPECT_EQ(names.size(), 12u);
    EXPECT_EQ(canonical_name(V::SelfDirection), "Self Direction");
    EXPECT_EQ(canonical_name(V::Face), "Face");
    EXPECT_EQ(canonical_name(V::Universalism), "Universalism");
    EXPECT_FALSE(parse_value_code("V0"));
    EXPECT_FALSE(parse_value_code("V13"));
    EXPECT_FALSE(parse_value_code("W1"));
}

TEST(ValueIds, RelationSymbols) {
    EXPECT_EQ(relation_symbol(R::Positive), "+");
    EXPECT_EQ(relation_symbol(R::Negative), "-");
    EXPECT_EQ(relation_symbol(R::Unknown), "?");
    EXPECT_EQ(parse_relation_symbol("+"), R::Positive);
    EXPECT_FALSE(parse_relation_symbol("*"));
    EXPECT_FALSE(parse_relation_symbol(""));
}

// All 15 non-empty subsets of relation kinds, expected state frozen from the
// precedence contract: Conflict over Unknown over the present sign.
TEST(DeriveState, ExhaustiveOverKindSubsets) {
    struct Case {
        std::vector<R> input;
        K expected;
    };
    const std::vector<Case> cases = {
        {{R::Positive}, K::Positive},
        {{R::Negative}, K::Negative},
        {{R::Unknown}, K::Unknown},
        {{R::NonRelevant}, K::NonRelevant},
        {{R::Positive, R::Negative}, K::Conflict},
        {{R::Positive, R::Unknown}, K::Unknown},
        {{R::Positive, R::NonRelevant}, K::Positive},
        {{R::Negative, R::Unknown}, K::Unknown},
        {{R::Negative, R::NonRelevant}, K::Negative},
        {{R::Unknown, R::NonRelevant}, K::Unknown},
        {{R::Positive, R::Negative, R::Unknown}, K::Conflict},
        {{R::Positive, R::Negative, R::NonRelevant}, K::Conflict},
        {{R::Positive, R::Unknown, R::NonRelevant}, K::Unknown},
        {{R::Negative, R::Unknown, R::NonRelevant}, K::Unknown},
        {{R::Positive, R::Negative, R::Unknown, R::NonRelevant}, K::Conflict},
    };
    ASSERT_EQ(cases.size(), 15u);
    for (const auto& c : cases) {
        EXPECT_EQ(derive_state(c.input), c.expected);
        // Multiplicity never matters; doubling the multiset changes nothing.
        std::vector<R> doubled = c.input;
        doubled.insert(doubled.end(), c.input.begin(), c.input.end());
        EXPECT_EQ(derive_state(doubled), c.expected);
    }
}

TEST(MergeProfiles, EmptyListYieldsEmptyAggregate) {
    AggregateProfile merged = merge_profiles({}, {});
    EXPECT_TRUE(merged.empty());
    EXPECT_EQ(merged.kind(V::Security), K::NonRelevant);
}

// Catalog rows for the accessibility service and the security subsystem,
// encoded directly: merging them must conflict on Security only.
TEST(MergeProfiles, AccessibilityPlusSecurityRows) {
    ValueProfile accessibility{{V::SelfDirection, R::Negative},
                               {V::Security, R::Negative},
                               {V::Benevolence, R::Positive},
                               {V::Universalism, R::Positive}};
    ValueProfile security{{V::Security, R::Positive}};
    AggregateProfile merged =
        merge_profiles({accessibility, security}, {"android.accessibilityservice",
                                                   "android.security"});
    EXPECT_EQ(merged.kind(V::Security), K::Conflict);
    EXPECT_EQ(merged.kind(V::SelfDirection), K::Negative);
    EXPECT_EQ(merged.kind(V::Benevolence), K::Positive);
    EXPECT_EQ(merged.kind(V::Universalism), K::Positive);
    EXPECT_EQ(merged.kind(V::Hedonism), K::NonRelevant);

    const AggregateState* security_state = merged.find(V::Security);
    ASSERT_NE(security_state, nullptr);
    std::vector<EvidenceEntry> expected = {
        {"android.accessibilityservice", R::Negative},
        {"android.security", R::Positive},
    };
    EXPECT_EQ(security_state->evidence, expected);
}

TEST(MergeProfiles, LanguageSupportRowAlone) {
    ValueProfile icu_lang{{V::Benevolence, R::Positive}, {V::Universalism, R::Positive}};
    AggregateProfile merged = merge_profiles({icu_lang}, {"android.icu.lang"});
    EXPECT_EQ(merged.entries.size(), 2u);
    EXPECT_EQ(merged.kind(V::Benevolence), K::Positive);
    EXPECT_EQ(merged.kind(V::Universalism), K::Positive);
}

TEST(MergeProfiles, LengthMismatchIsUsageError) {
    EXPECT_THROW(merge_profiles({ValueProfile{}}, {}), UsageError);
}

TEST(ValueProfile, SparsenessCanonicalForm) {
    ValueProfile p;
    p.set(V::Security, R::Positive);
    p.set(V::Security, R::NonRelevant);
    EXPECT_TRUE(p.empty());
    p.set(V::Hedonism, R::Unknown);
    EXPECT_EQ(p.entries().size(), 1u);
}

ValueProfile random_profile(std::mt19937& rng) {
    std::uniform_int_distribution<int> count_dist(0, 4);
    std::uniform_int_distribution<int> value_dist(1, 12);
    std::uniform_int_distribution<int> rel_dist(0, 2);
    ValueProfile p;
    int n = count_dist(rng);
    for (int i = 0; i < n; ++i) {
        ValueId v = static_cast<ValueId>(value_dist(rng));
        Relation r = std::array{R::Positive, R::Negative, R::Unknown}[rel_dist(rng)];
        p.set(v, r);
    }
    return p;
}

TEST(MergeProfiles, PermutationInvariance) {
    std::mt19937 rng(20260809);
    std::uniform_int_distribution<int> size_dist(0, 6);
    for (int iter = 0; iter < 1000; ++iter) {
        int n = size_dist(rng);
        std::vector<ValueProfile> profiles;
        std::vector<std::string> sources;
        for (int i = 0; i < n; ++i) {
            profiles.push_back(random_profile(rng));
            sources.push_back("src" + std::to_string(i));
        }
        AggregateProfile base = merge_profiles(profiles, sources);

        std::vector<std::size_t> order(profiles.size());
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        std::vector<ValueProfile> shuffled_profiles;
        std::vector<std::string> shuffled_sources;
        for (std::size_t idx : order) {
            shuffled_profiles.push_back(profiles[idx]);
            shuffled_sources.push_back(sources[idx]);
        }
        ASSERT_EQ(merge_profiles(shuffled_profiles, shuffled_sources), base) << "iter " << iter;
    }
}

TEST(MergeProfiles, AssociativeUnderFlattening) {
    std::mt19937 rng(424242);
    std::uniform_int_distribution<int> size_dist(1, 8);
    for (int iter = 0; iter < 300; ++iter) {
        int n = size_dist(rng);
        std::vector<ValueProfile> profiles;
        std::vector<std::string> sources;
        for (int i = 0; i < n; ++i) {
            profiles.push_back(random_profile(rng));
            sources.push_back("src" + std::to_string(i));
        }
        std::uniform_int_distribution<int> split_dist(0, n);
        std::size_t split = static_cast<std::size_t>(split_dist(rng));

        AggregateProfile flat = merge_profiles(profiles, sources);
        AggregateProfile left = merge_profiles(
            {profiles.begin(), profiles.begin() + split}, {sources.begin(), sources.begin() + split});
        AggregateProfile right = merge_profiles(
            {profiles.begin() + split, profiles.end()}, {sources.begin() + split, sources.end()});
        ASSERT_EQ(merge_aggregates(left, right), flat) << "iter " << iter;
    }
}

TEST(MergeProfiles, EmptyProfileIdentity) {
    std::mt19937 rng(7);
    for (int iter = 0; iter < 100; ++iter) {
        std::vector<ValueProfile> profiles = {random_profile(rng), random_profile(rng)};
        std::vector<std::string> sources = {"a", "b"};
        AggregateProfile base = merge_profiles(profiles, sources);

        profiles.push_back(ValueProfile{});
        sources.push_back("empty-source");
        ASSERT_EQ(merge_profiles(profiles, sources), base) << "iter " << iter;
    }
}

TEST(ValueDefinitions, BuiltinMatchesCanonicalModel) {
    const auto& defs = builtin_value_definitions();
    ASSERT_EQ(defs.size(), 12u);
    for (std::size_t i = 0; i < defs.size(); ++i) {
        EXPECT_EQ(static_cast<int>(defs[i].id), static_cast<int>(i) + 1);
        EXPECT_EQ(defs[i].name, canonical_name(defs[i].id));
        EXPECT_FALSE(defs[i].dimensions.empty());
        for (const auto& dim : defs[i].dimensions) {
            EXPECT_EQ(dim.value, defs[i].id);
            EXPECT_FALSE(dim.definition.empty());
            EXPECT_FALSE(dim.descriptive_items.empty());
        }
    }
    // Spot checks against the shipped model.
    ASSERT_EQ(defs[0].dimensions.size(), 2u);
    EXPECT_EQ(defs[0].dimensions[0].dimension_name, "thought");
    EXPECT_EQ(defs[0].dimensions[0].definition,
              "freedom to cultivate one's own ideas and abilities.");
    EXPECT_EQ(defs[0].dimensions[1].dimension_name, "action");
    ASSERT_EQ(defs[11].dimensions.size(), 3u);
    EXPECT_EQ(defs[11].dimensions[2].dimension_name, "tolerance");
    EXPECT_EQ(defs[2].dimensions[0].descriptive_items, std::vector<std::string>{"pleasure"});
}

TEST(ValueDefinitions, ShippedFileEqualsBuiltin) {
    auto loaded = load_value_definitions(std::string(VL_DATA_DIR) + "/values.json");
    EXPECT_EQ(loaded, builtin_value_definitions());
}

TEST(ValueDefinitions, RoundTripThroughJson) {
    Json doc = value_definitions_to_json(builtin_value_definitions());
    auto parsed = value_definitions_from_json(doc, "roundtrip");
    EXPECT_EQ(parsed, builtin_value_definitions());
}

TEST(ValueDefinitions, RejectsNonCanonicalContent) {
    Json doc = value_definitions_to_json(builtin_value_definitions());
    doc["values"][0]["name"] = "Self-Direction";
    EXPECT_THROW(value_definitions_from_json(doc, "bad"), ValidationError);

    Json truncated = value_definitions_to_json(builtin_value_definitions());
    truncated["values"].erase(0);
    EXPECT_THROW(value_definitions_from_json(truncated, "bad"), ValidationError);
}

} // namespace
} // namespace valuelint::test
