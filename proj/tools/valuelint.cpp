// valuelint — annotates source code with human-value relevance from a catalog
// of value-annotated APIs, inspects the result for value smells, and emits
// recommendations. Exit codes follow the linter convention: 0 clean, 1 when a
// smell at or above --fail-on fires, 2 on usage or internal errors.

#include <cstdlib>
#include <ctime>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"

#include "valuelint/valuelint.hpp"

namespace {

using namespace valuelint;

constexpr int kExitClean = 0;
constexpr int kExitThreshold = 1;
constexpr int kExitError = 2;

std::string current_utc_timestamp() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

bool color_enabled(bool writing_to_file) {
    if (writing_to_file) {
        return false;
    }
    if (std::getenv("VALUE_LINT_NO_COLOR") != nullptr) {
        return false;
    }
    return isatty(fileno(stdout)) != 0;
}

void emit_document(const std::string& document, const std::optional<std::string>& out_path) {
    if (out_path) {
        write_text_file(*out_path, document);
    } else {
        std::cout << document;
    }
}

void print_warnings(const FactSet& facts) {
    for (const auto& warning : facts.warnings) {
        std::cerr << "valuelint: warning: " << warning.file << ": " << warning.message << "\n";
    }
}

struct CommonOptions {
    std::string source_root;
    std::string facts_file;
    std::vector<std::string> catalog_paths;
    std::vector<std::string> include_globs;
    std::vector<std::string> exclude_globs;
    std::size_t max_file_size = ExtractionConfig{}.max_file_size;
    bool propagate_calls = false;
};

void add_common_options(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("source", opts.source_root, "Source tree to analyze");
    cmd->add_option("--facts", opts.facts_file,
                    "Pre-computed facts file instead of a source tree");
    cmd->add_option("--catalog", opts.catalog_paths,
                    "Catalog file (repeatable; files merge, duplicates are errors). "
                    "Replaces the builtin catalog when given");
    cmd->add_option("--include", opts.include_globs, "Extraction include glob (default **/*.java)");
    cmd->add_option("--exclude", opts.exclude_globs, "Extraction exclude glob");
    cmd->add_option("--max-file-size", opts.max_file_size,
                    "Skip files larger than this many bytes");
    cmd->add_flag("--propagate-calls", opts.propagate_calls,
                  "Propagate annotations one hop along intra-project calls");
}

AnalysisOptions to_analysis_options(const CommonOptions& opts) {
    AnalysisOptions options;
    if (!opts.source_root.empty()) {
        options.source_root = opts.source_root;
    }
    if (!opts.facts_file.empty()) {
        options.facts_file = opts.facts_file;
    }
    for (const auto& path : opts.catalog_paths) {
        options.catalog_paths.emplace_back(path);
    }
    if (!opts.include_globs.empty()) {
        options.extraction.include_globs = opts.include_globs;
    }
    options.extraction.exclude_globs = opts.exclude_globs;
    options.extraction.max_file_size = opts.max_file_size;
    options.propagate_calls = opts.propagate_calls;
    return options;
}

int run_analyze(const CommonOptions& common, const std::string& policy_path,
                const std::string& rules_path, const std::string& format_name,
                const std::optional<std::string>& out_path, const std::string& fail_on_name,
                std::string timestamp, bool no_annotations) {
    auto format = parse_report_format(format_name);
    if (!format) {
        std::cerr << "valuelint: error [config] unknown format \"" << format_name << "\"\n";
        return kExitError;
    }
    auto fail_on = parse_severity(fail_on_name);
    if (!fail_on) {
        std::cerr << "valuelint: error [config] unknown --fail-on severity \"" << fail_on_name
                  << "\"\n";
        return kExitError;
    }
    AnalysisOptions options = to_analysis_options(common);
    if (!policy_path.empty()) {
        options.policy_path = policy_path;
    }
    if (!rules_path.empty()) {
        options.rules_path = rules_path;
    }
    options.include_annotations = !no_annotations;
    options.timestamp = timestamp.empty() ? current_utc_timestamp() : std::move(timestamp);

    AnalysisOutcome outcome = run_analysis(options);
    print_warnings(outcome.facts);
    emit_document(render(outcome.report, *format, color_enabled(out_path.has_value())),
                  out_path);

    for (const auto& smell : outcome.inspection.smells) {
        if (static_cast<int>(smell.severity) >= static_cast<int>(*fail_on)) {
            return kExitThreshold;
        }
    }
    return kExitClean;
}

int run_annotate(const CommonOptions& common, const std::string& emit_name,
                 const std::optional<std::string>& out_path) {
    AnnotationOutput output;
    if (emit_name == "sidecar") {
        output = AnnotationOutput::Sidecar;
    } else if (emit_name == "inline") {
        output = AnnotationOutput::InlineSuggestions;
    } else {
        std::cerr << "valuelint: error [config] unknown --emit format \"" << emit_name << "\"\n";
        return kExitError;
    }
    AnalysisOptions options = to_analysis_options(common);
    options.include_annotations = false;
    options.timestamp = "-";

    Catalog catalog = run_stage("catalog", [&] {
        return options.catalog_paths.empty() ? builtin_catalog()
                                             : load_catalogs(options.catalog_paths);
    });
    if (options.source_root.has_value() == options.facts_file.has_value()) {
        throw StageError("config", "exactly one of source root / facts file must be given");
    }
    FactSet facts = run_stage(options.facts_file ? "ingest" : "extract", [&] {
        return options.facts_file ? ingest_facts_file(*options.facts_file)
                                  : extract_facts(*options.source_root, options.extraction);
    });
    AnnotationMap annotated = run_stage("annotate", [&] {
        return annotate(facts.elements, facts.facts, catalog,
                        AnnotateOptions{options.propagate_calls});
    });
    print_warnings(facts);
    emit_document(emit_annotations(annotated, output), out_path);
    return kExitClean;
}

int run_catalog_validate(const std::vector<std::string>& paths) {
    std::vector<std::filesystem::path> fs_paths(paths.begin(), paths.end());
    Catalog catalog = load_catalogs(fs_paths);
    std::cout << "OK: " << catalog.annotations.size() << " annotation(s), version "
              << catalog.version << "\n";
    return kExitClean;
}

Catalog load_for_query(const std::vector<std::string>& paths) {
    if (paths.empty()) {
        return builtin_catalog();
    }
    return load_catalogs({paths.begin(), paths.end()});
}

int run_catalog_query_conflicts(const std::vector<std::string>& paths,
                                const std::string& format_name) {
    Catalog catalog = load_for_query(paths);
    auto pairs = query_conflicting_pairs(catalog);
    if (format_name == "json") {
        Json out = Json::array();
        for (const auto& pair : pairs) {
            out.push_back(Json{{"value", value_code(pair.value)},
                               {"value_name", std::string(canonical_name(pair.value))},
                               {"first", pair.first->pattern},
                               {"second", pair.second->pattern}});
        }
        std::cout << out.dump(2) << "\n";
        return kExitClean;
    }
    if (pairs.empty()) {
        std::cout << "no conflicting annotation pairs\n";
        return kExitClean;
    }
    for (const auto& pair : pairs) {
        std::cout << value_code(pair.value) << " " << canonical_name(pair.value) << ": "
                  << pair.first->pattern << " ("
                  << relation_symbol(pair.first->profile.at(pair.value)) << ") vs "
                  << pair.second->pattern << " ("
                  << relation_symbol(pair.second->profile.at(pair.value)) << ")\n";
    }
    return kExitClean;
}

int run_catalog_query_match(const std::vector<std::string>& paths, const std::string& name,
                            const std::string& format_name) {
    Catalog catalog = load_for_query(paths);
    const ApiAnnotation* match = match_api(name, catalog);
    if (format_name == "json") {
        std::cout << (match ? annotation_to_json(*match) : Json(nullptr)).dump(2) << "\n";
        return kExitClean;
    }
    if (match == nullptr) {
        std::cout << "no annotation matches \"" << name << "\"\n";
        return kExitClean;
    }
    std::cout << match->pattern << ": ";
    bool first = true;
    for (const auto& [value, relation] : match->profile.entries()) {
        std::cout << (first ? "" : ", ") << canonical_name(value) << "("
                  << relation_symbol(relation) << ")";
        first = false;
    }
    std::cout << "\n";
    return kExitClean;
}

int run_values(const std::string& format_name) {
    const auto& defs = builtin_value_definitions();
    if (format_name == "json") {
        std::cout << value_definitions_to_json(defs).dump(2) << "\n";
        return kExitClean;
    }
    for (const auto& def : defs) {
        std::cout << value_code(def.id) << " " << def.name << "\n";
        for (const auto& dim : def.dimensions) {
            std::cout << "  ";
            if (!dim.dimension_name.empty()) {
                std::cout << dim.dimension_name << ": ";
            }
            std::cout << dim.definition << "\n";
            for (const auto& item : dim.descriptive_items) {
                std::cout << "    - " << item << "\n";
            }
        }
    }
    return kExitClean;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"value linter: annotate code from value-annotated APIs, detect value smells, "
                 "recommend mitigations"};
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
    app.require_subcommand(1);

    // analyze
    CommonOptions analyze_common;
    std::string policy_path, rules_path;
    std::string format_name = "text";
    std::string fail_on_name = "error";
    std::string timestamp;
    std::string out_path;
    bool no_annotations = false;
    CLI::App* analyze = app.add_subcommand("analyze", "Run the full analysis pipeline");
    add_common_options(analyze, analyze_common);
    analyze->add_option("--policy", policy_path, "Policy file (required values, suppressions)");
    analyze->add_option("--rules", rules_path,
                        "Recommendation rules file (replaces the builtin rules)");
    analyze->add_option("--format", format_name, "Report format: text, json, sarif");
    analyze->add_option("--out", out_path, "Write the report to this file instead of stdout");
    analyze->add_option("--fail-on", fail_on_name,
                        "Exit 1 when a smell at or above this severity fires "
                        "(info, warning, error)");
    analyze->add_option("--timestamp", timestamp,
                        "Timestamp recorded in the report (defaults to the current UTC time)");
    analyze->add_flag("--no-annotations", no_annotations,
                      "Omit the per-element annotation payload from the report");

    // annotate
    CommonOptions annotate_common;
    std::string emit_name = "sidecar";
    std::string annotate_out;
    CLI::App* annotate_cmd =
        app.add_subcommand("annotate", "Emit annotations only (sidecar or inline suggestions)");
    add_common_options(annotate_cmd, annotate_common);
    annotate_cmd->add_option("--emit", emit_name, "Output form: sidecar, inline");
    annotate_cmd->add_option("--out", annotate_out, "Write the document to this file");

    // catalog
    CLI::App* catalog_cmd = app.add_subcommand("catalog", "Catalog utilities");
    catalog_cmd->require_subcommand(1);
    std::vector<std::string> validate_paths;
    CLI::App* validate_cmd = catalog_cmd->add_subcommand("validate", "Validate catalog files");
    validate_cmd->add_option("paths", validate_paths, "Catalog files to validate")->required();

    CLI::App* query_cmd = catalog_cmd->add_subcommand("query", "Query a catalog");
    query_cmd->require_subcommand(1);
    std::vector<std::string> query_paths;
    std::string query_format = "text";
    CLI::App* conflicts_cmd =
        query_cmd->add_subcommand("conflicts", "List annotation pairs with opposite signs");
    conflicts_cmd->add_option("--catalog", query_paths, "Catalog file (default: builtin)");
    conflicts_cmd->add_option("--format", query_format, "Output format: text, json");
    std::string match_name;
    std::vector<std::string> match_paths;
    std::string match_format = "text";
    CLI::App* match_cmd =
        query_cmd->add_subcommand("match", "Match a qualified API name against the catalog");
    match_cmd->add_option("name", match_name, "Qualified API name")->required();
    match_cmd->add_option("--catalog", match_paths, "Catalog file (default: builtin)");
    match_cmd->add_option("--format", match_format, "Output format: text, json");

    // values
    std::string values_format = "text";
    CLI::App* values_cmd = app.add_subcommand("values", "Show the value model");
    values_cmd->add_option("--format", values_format, "Output format: text, json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitClean : kExitError;
    }

    try {
        if (analyze->parsed()) {
            return run_analyze(analyze_common, policy_path, rules_path, format_name,
                               out_path.empty() ? std::nullopt
                                                : std::make_optional(out_path),
                               fail_on_name, timestamp, no_annotations);
        }
        if (annotate_cmd->parsed()) {
            return run_annotate(annotate_common, emit_name,
                                annotate_out.empty() ? std::nullopt
                                                     : std::make_optional(annotate_out));
        }
        if (validate_cmd->parsed()) {
            return run_catalog_validate(validate_paths);
        }
        if (conflicts_cmd->parsed()) {
            return run_catalog_query_conflicts(query_paths, query_format);
        }
        if (match_cmd->parsed()) {
            return run_catalog_query_match(match_paths, match_name, match_format);
        }
        if (values_cmd->parsed()) {
            return run_values(values_format);
        }
    } catch (const StageError& e) {
        std::cerr << "valuelint: error " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "valuelint: error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
