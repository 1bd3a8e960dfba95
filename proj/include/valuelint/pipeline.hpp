#pragma once

// Full analysis pipeline: scan (extract or ingest) -> annotate -> inspect ->
// recommend -> report. Stage failures surface as StageError so callers can
// name the failing stage.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "valuelint/annotator.hpp"
#include "valuelint/catalog.hpp"
#include "valuelint/code_facts.hpp"
#include "valuelint/common.hpp"
#include "valuelint/extractor.hpp"
#include "valuelint/inspector.hpp"
#include "valuelint/recommender.hpp"
#include "valuelint/report.hpp"

namespace valuelint {

class StageError : public std::runtime_error {
public:
    StageError(std::string stage, const std::string& message)
        : std::runtime_error("[" + stage + "] " + message), stage_(std::move(stage)) {}

    const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

struct AnalysisOptions {
    std::optional<std::filesystem::path> source_root;
    std::optional<std::filesystem::path> facts_file;
    std::vector<std::filesystem::path> catalog_paths; // empty -> builtin catalog
    std::optional<std::filesystem::path> policy_path;
    std::optional<std::filesystem::path> rules_path;  // empty -> builtin rules
    ExtractionConfig extraction;
    bool propagate_calls = false;
    bool include_annotations = true;
    std::string timestamp; // injected so repeated runs are byte-identical
};

struct AnalysisOutcome {
    Catalog catalog;
    FactSet facts;
    AnnotationMap annotated;
    Policy policy;
    InspectionResult inspection;
    std::vector<Recommendation> recommendations;
    AnalysisReport report;
};

template <typename F>
auto run_stage(const char* stage, F&& f) {
    try {
        return f();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(stage, e.what());
    }
}

inline AnalysisOutcome run_analysis(const AnalysisOptions& options) {
    if (options.source_root.has_value() == options.facts_file.has_value()) {
        throw StageError("config", "exactly one of source root / facts file must be given");
    }
    AnalysisOutcome outcome;
    outcome.catalog = run_stage("catalog", [&] {
        return options.catalog_paths.empty() ? builtin_catalog()
                                             : load_catalogs(options.catalog_paths);
    });
    outcome.facts = run_stage(options.facts_file ? "ingest" : "extract", [&] {
        return options.facts_file ? ingest_facts_file(*options.facts_file)
                                  : extract_facts(*options.source_root, options.extraction);
    });
    outcome.policy = run_stage("policy", [&] {
        return options.policy_path ? load_policy(*options.policy_path) : Policy{};
    });
    RuleSet rules = run_stage("rules", [&] {
        return options.rules_path ? load_rules(*options.rules_path) : builtin_rules();
    });
    outcome.annotated = run_stage("annotate", [&] {
        return annotate(outcome.facts.elements, outcome.facts.facts, outcome.catalog,
                        AnnotateOptions{options.propagate_calls});
    });
    outcome.inspection = run_stage("inspect", [&] {
        return inspect(outcome.annotated, outcome.policy, outcome.catalog);
    });
    outcome.recommendations = run_stage("recommend", [&] {
        return recommend(outcome.inspection.smells, rules.rules);
    });
    outcome.report = run_stage("report", [&] {
        return build_report(options.timestamp, outcome.catalog.version, outcome.annotated,
                            outcome.inspection, outcome.recommendations,
                            options.include_annotations);
    });
    return outcome;
}

} // namespace valuelint
