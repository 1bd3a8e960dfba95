#pragma once

// Built-in extractor for a Java-like source subset: package declarations,
// imports (plain/wildcard/static), type declarations with extends/implements,
// method and field declarations, annotation uses, and qualified or
// imported-name references in bodies. No full grammar, no generics
// resolution, no type inference; the facts-file front end covers everything
// this subset cannot.
//
// Name resolution is import-table based: a simple name maps to an API only
// if imported or written fully qualified inline. A capitalized simple name
// under exactly one wildcard import resolves to a type-level Reference in
// that package; with several candidate wildcard imports the reference is
// dropped with a warning. Unresolvable names produce no facts.
//
// Attribution: facts inside a method body belong to the method; facts in
// field initializers and initializer blocks belong to the class; annotation
// uses belong to the declaration they decorate; import facts belong to the
// file's first top-level type (or the package element when the file declares
// no types).

#include <cctype>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "valuelint/code_facts.hpp"
#include "valuelint/common.hpp"

namespace valuelint {

namespace detail {

struct Token {
    enum class Kind { Ident, Number, Text, Punct, End };
    Kind kind = Kind::End;
    std::string text;
    int line = 1;
    int col = 1;

    int end_col() const {
        return text.empty() ? col : col + static_cast<int>(text.size()) - 1;
    }
};

inline std::vector<Token> tokenize_source(const std::string& src) {
    std::vector<Token> tokens;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](char c) {
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    };
    while (i < src.size()) {
        char c = src[i];
        if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
            while (i < src.size() && src[i] != '\n') {
                advance(src[i++]);
            }
            continue;
        }
        if (c == '/' && i + 1 < src.size() && src[i + 1] == '*') {
            advance(src[i++]);
            advance(src[i++]);
            while (i + 1 < src.size() && !(src[i] == '*' && src[i + 1] == '/')) {
                advance(src[i++]);
            }
            if (i + 1 < src.size()) {
                advance(src[i++]);
                advance(src[i++]);
            } else {
                i = src.size();
            }
            continue;
        }
        if (c == '"' || c == '\'') {
            Token t{Token::Kind::Text, std::string(1, c), line, col};
            char quote = c;
            advance(src[i++]);
            while (i < src.size() && src[i] != quote) {
                if (src[i] == '\\' && i + 1 < src.size()) {
                    advance(src[i++]);
                }
                if (i < src.size()) {
                    advance(src[i++]);
                }
            }
            if (i < src.size()) {
                advance(src[i++]);
            }
            tokens.push_back(std::move(t));
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(src[i++]);
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$') {
            Token t{Token::Kind::Ident, "", line, col};
            while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) ||
                                      src[i] == '_' || src[i] == '$')) {
                t.text += src[i];
                advance(src[i++]);
            }
            tokens.push_back(std::move(t));
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Token t{Token::Kind::Number, "", line, col};
            while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) ||
                                      src[i] == '_' || src[i] == '.')) {
                t.text += src[i];
                advance(src[i++]);
            }
            tokens.push_back(std::move(t));
            continue;
        }
        tokens.push_back(Token{Token::Kind::Punct, std::string(1, c), line, col});
        advance(src[i++]);
    }
    tokens.push_back(Token{Token::Kind::End, "", line, col});
    return tokens;
}

inline bool is_java_keyword(const std::string& word) {
    static const std::set<std::string> kw = {
        "abstract",   "assert",       "boolean",  "break",   "byte",      "case",
        "catch",      "char",         "class",    "const",   "continue",  "default",
        "do",         "double",       "else",     "enum",    "extends",   "final",
        "finally",    "float",        "for",      "goto",    "if",        "implements",
        "import",     "instanceof",   "int",      "interface", "long",    "native",
        "new",        "package",      "private",  "protected", "public",  "return",
        "short",      "static",       "strictfp", "super",   "switch",    "synchronized",
        "this",       "throw",        "throws",   "transient", "try",     "var",
        "void",       "volatile",     "while",    "true",    "false",     "null",
        "record",     "sealed",       "permits",  "yield",
    };
    return kw.count(word) > 0;
}

inline bool is_modifier(const std::string& word) {
    static const std::set<std::string> mods = {
        "public", "private",   "protected", "static",   "final",  "abstract",
        "native", "transient", "volatile",  "strictfp", "sealed", "synchronized",
        "default",
    };
    return mods.count(word) > 0;
}

// Simple names implicitly visible via java.lang; excluded from
// wildcard-import resolution to avoid false annotations.
inline bool is_java_lang_name(const std::string& word) {
    static const std::set<std::string> names = {
        "Object",        "String",     "System",           "Math",
        "Thread",        "Runnable",   "Exception",        "RuntimeException",
        "Error",         "Throwable",  "Integer",          "Long",
        "Short",         "Byte",       "Boolean",          "Character",
        "Float",         "Double",     "Void",             "Number",
        "StringBuilder", "StringBuffer", "CharSequence",   "Iterable",
        "Class",         "ClassLoader", "Comparable",      "Cloneable",
        "Override",      "Deprecated", "SuppressWarnings", "SafeVarargs",
        "FunctionalInterface", "AutoCloseable", "Enum",    "Record",
    };
    return names.count(word) > 0;
}

class FileExtractor {
public:
    FileExtractor(std::string rel_path, const std::string& source, FactSet& out)
        : file_(std::move(rel_path)), tokens_(tokenize_source(source)), out_(out) {}

    void run() {
        collect_declared_type_names();
        parse_file_level();
        flush_pending_imports();
    }

private:
    struct Chain {
        std::vector<std::string> segments;
        SourceSpan span;
        bool followed_by_paren = false;
    };

    std::string file_;
    std::vector<Token> tokens_;
    FactSet& out_;
    std::size_t pos_ = 0;

    std::string package_name_;
    std::string package_element_;
    std::string first_toplevel_type_;
    std::map<std::string, std::string> imports_; // simple name -> qualified name
    std::vector<std::string> wildcard_imports_;
    std::set<std::string> declared_type_names_;
    std::set<std::string> warned_ambiguous_;
    std::vector<UsageFact> pending_import_facts_;
    std::vector<UsageFact> pending_annotation_facts_; // element filled on attach

    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = pos_ + ahead;
        return i < tokens_.size() ? tokens_[i] : tokens_.back();
    }
    const Token& next() {
        const Token& t = tokens_[std::min(pos_, tokens_.size() - 1)];
        if (pos_ < tokens_.size() - 1) {
            ++pos_;
        }
        return t;
    }
    bool at_end() const { return peek().kind == Token::Kind::End; }
    bool at_punct(const char* p) const {
        return peek().kind == Token::Kind::Punct && peek().text == p;
    }
    bool at_ident(const char* word) const {
        return peek().kind == Token::Kind::Ident && peek().text == word;
    }

    SourceSpan span_of(const Token& from, const Token& to) const {
        return SourceSpan{file_, from.line, from.col, to.line, to.end_col()};
    }

    void add_fact(std::string element, std::string api, UsageKind kind, SourceSpan span) {
        out_.facts.push_back(UsageFact{std::move(element), std::move(api), kind, std::move(span)});
    }

    void warn(std::string message) {
        out_.warnings.push_back(ExtractionWarning{file_, std::move(message)});
    }

    // Pre-pass so local type names are not mistaken for wildcard-imported ones.
    void collect_declared_type_names() {
        for (std::size_t i = 0; i + 1 < tokens_.size(); ++i) {
            if (tokens_[i].kind == Token::Kind::Ident &&
                (tokens_[i].text == "class" || tokens_[i].text == "interface" ||
                 tokens_[i].text == "enum") &&
                tokens_[i + 1].kind == Token::Kind::Ident) {
                declared_type_names_.insert(tokens_[i + 1].text);
            }
        }
    }

    void skip_balanced(const char* open, const char* close) {
        if (!at_punct(open)) {
            return;
        }
        int depth = 0;
        while (!at_end()) {
            if (at_punct(open)) {
                ++depth;
            } else if (at_punct(close)) {
                if (--depth == 0) {
                    next();
                    return;
                }
            }
            next();
        }
    }

    // Reads IDENT (. IDENT)*; also notes a trailing ".*" for imports.
    std::optional<Chain> read_chain(bool* trailing_star = nullptr) {
        if (peek().kind != Token::Kind::Ident) {
            return std::nullopt;
        }
        Chain chain;
        const Token& first = peek();
        const Token* last = &peek();
        chain.segments.push_back(next().text);
        while (at_punct(".")) {
            if (peek(1).kind == Token::Kind::Ident) {
                next();
                last = &peek();
                chain.segments.push_back(next().text);
            } else if (trailing_star && peek(1).kind == Token::Kind::Punct &&
                       peek(1).text == "*") {
                next();
                next();
                *trailing_star = true;
                break;
            } else {
                break;
            }
        }
        chain.span = span_of(first, *last);
        chain.followed_by_paren = at_punct("(");
        return chain;
    }

    static std::string join_segments(const std::vector<std::string>& segments,
                                     std::size_t from = 0) {
        std::string out;
        for (std::size_t i = from; i < segments.size(); ++i) {
            if (!out.empty()) {
                out += ".";
            }
            out += segments[i];
        }
        return out;
    }

    enum class RefContext { Plain, Instantiate, Annotation, Extend, Implement };

    struct Resolved {
        std::string api;
        UsageKind kind = UsageKind::Reference;
    };

    std::optional<Resolved> resolve_chain(const Chain& chain, RefContext context) {
        const std::string& head = chain.segments.front();
        if (is_java_keyword(head)) {
            return std::nullopt;
        }
        auto kind_for = [&](bool wildcard_resolved) {
            switch (context) {
            case RefContext::Instantiate: return UsageKind::Instantiate;
            case RefContext::Annotation: return UsageKind::Annotation;
            case RefContext::Extend: return UsageKind::Extend;
            case RefContext::Implement: return UsageKind::Implement;
            case RefContext::Plain:
                if (wildcard_resolved) {
                    return UsageKind::Reference; // package inferred, stay conservative
                }
                return chain.followed_by_paren ? UsageKind::Call : UsageKind::Reference;
            }
            return UsageKind::Reference;
        };
        if (auto it = imports_.find(head); it != imports_.end()) {
            std::string api = it->second;
            std::string rest = join_segments(chain.segments, 1);
            if (!rest.empty()) {
                api += "." + rest;
            }
            return Resolved{std::move(api), kind_for(false)};
        }
        bool head_upper = std::isupper(static_cast<unsigned char>(head[0])) != 0;
        if (!head_upper && chain.segments.size() >= 2) {
            // Inline fully-qualified reference: lowercase package segments
            // leading to a capitalized type name.
            bool has_type_segment = false;
            for (std::size_t i = 1; i < chain.segments.size(); ++i) {
                if (std::isupper(static_cast<unsigned char>(chain.segments[i][0]))) {
                    has_type_segment = true;
                    break;
                }
            }
            if (has_type_segment) {
                return Resolved{join_segments(chain.segments), kind_for(false)};
            }
            return std::nullopt;
        }
        if (head_upper && !is_java_lang_name(head) && !declared_type_names_.count(head)) {
            if (wildcard_imports_.size() == 1) {
                return Resolved{wildcard_imports_.front() + "." + head, kind_for(true)};
            }
            if (wildcard_imports_.size() > 1 && warned_ambiguous_.insert(head).second) {
                std::string candidates;
                for (const auto& w : wildcard_imports_) {
                    candidates += (candidates.empty() ? "" : ", ") + w + ".*";
                }
                warn("ambiguous reference '" + head + "': several wildcard imports could supply it (" +
                     candidates + ")");
            }
        }
        return std::nullopt;
    }

    // ----- file level -----------------------------------------------------

    void parse_file_level() {
        while (!at_end()) {
            if (at_ident("package")) {
                parse_package_decl();
            } else if (at_ident("import")) {
                parse_import_decl();
            } else if (at_punct("@") && peek(1).kind == Token::Kind::Ident &&
                       peek(1).text != "interface") {
                parse_annotation_use();
            } else if (is_type_decl_ahead()) {
                parse_type_decl(enclosing_package(), true);
            } else {
                next();
            }
        }
    }

    std::string enclosing_package() const { return package_name_; }

    bool is_type_decl_ahead() const {
        std::size_t i = pos_;
        while (i < tokens_.size() && tokens_[i].kind == Token::Kind::Ident &&
               is_modifier(tokens_[i].text)) {
            ++i;
        }
        if (i < tokens_.size() && tokens_[i].kind == Token::Kind::Punct &&
            tokens_[i].text == "@" && i + 1 < tokens_.size() &&
            tokens_[i + 1].text == "interface") {
            return true;
        }
        return i < tokens_.size() && tokens_[i].kind == Token::Kind::Ident &&
               (tokens_[i].text == "class" || tokens_[i].text == "interface" ||
                tokens_[i].text == "enum");
    }

    void parse_package_decl() {
        const Token& kw = next(); // "package"
        auto chain = read_chain();
        if (!chain) {
            return;
        }
        package_name_ = join_segments(chain->segments);
        const Token* end = &peek();
        if (at_punct(";")) {
            end = &peek();
            next();
        }
        package_element_ = package_name_;
        out_.elements.push_back(CodeElement{ElementKind::Package, package_name_,
                                            span_of(kw, *end), ""});
    }

    void parse_import_decl() {
        const Token& kw = next(); // "import"
        bool is_static = false;
        if (at_ident("static")) {
            is_static = true;
            next();
        }
        bool wildcard = false;
        auto chain = read_chain(&wildcard);
        if (!chain) {
            return;
        }
        const Token* end = &peek();
        if (at_punct(";")) {
            end = &peek();
            next();
        }
        std::string fq = join_segments(chain->segments);
        if (wildcard) {
            if (!is_static &&
                std::find(wildcard_imports_.begin(), wildcard_imports_.end(), fq) ==
                    wildcard_imports_.end()) {
                wildcard_imports_.push_back(fq);
            }
        } else {
            imports_[chain->segments.back()] = fq;
        }
        UsageFact fact;
        fact.api_name = fq; // ".*" stripped for wildcards
        fact.usage_kind = UsageKind::Import;
        fact.span = span_of(kw, *end);
        if (!first_toplevel_type_.empty()) {
            fact.element = first_toplevel_type_;
            out_.facts.push_back(std::move(fact));
        } else {
            pending_import_facts_.push_back(std::move(fact));
        }
    }

    void flush_pending_imports() {
        if (pending_import_facts_.empty()) {
            return;
        }
        std::string owner = !first_toplevel_type_.empty() ? first_toplevel_type_
                                                          : package_element_;
        if (owner.empty()) {
            warn("dropped " + std::to_string(pending_import_facts_.size()) +
                 " import fact(s): file declares no type or package to own them");
            pending_import_facts_.clear();
            return;
        }
        for (auto& fact : pending_import_facts_) {
            fact.element = owner;
            out_.facts.push_back(std::move(fact));
        }
        pending_import_facts_.clear();
    }

    void parse_annotation_use() {
        const Token& at = next(); // "@"
        auto chain = read_chain();
        if (!chain) {
            return;
        }
        if (at_punct("(")) {
            skip_balanced("(", ")");
        }
        if (auto resolved = resolve_chain(*chain, RefContext::Annotation)) {
            UsageFact fact;
            fact.api_name = resolved->api;
            fact.usage_kind = UsageKind::Annotation;
            fact.span =
                SourceSpan{file_, at.line, at.col, chain->span.end_line, chain->span.end_col};
            pending_annotation_facts_.push_back(std::move(fact));
        }
    }

    void attach_pending_annotations(const std::string& element) {
        for (auto& fact : pending_annotation_facts_) {
            fact.element = element;
            out_.facts.push_back(std::move(fact));
        }
        pending_annotation_facts_.clear();
    }

    // ----- type declarations ----------------------------------------------

    void parse_type_decl(const std::string& parent_fq, bool top_level) {
        const Token& decl_start = peek();
        while (peek().kind == Token::Kind::Ident && is_modifier(peek().text)) {
            next();
        }
        ElementKind kind = ElementKind::Class;
        if (at_punct("@") && peek(1).text == "interface") {
            next();
            next();
            kind = ElementKind::Interface;
        } else if (at_ident("interface")) {
            next();
            kind = ElementKind::Interface;
        } else if (at_ident("class") || at_ident("enum")) {
            next();
        } else {
            next();
            return;
        }
        if (peek().kind != Token::Kind::Ident) {
            return;
        }
        std::string name = next().text;
        std::string fq = parent_fq.empty() ? name : parent_fq + "." + name;
        std::string parent = parent_fq; // package or enclosing type (or empty)

        if (top_level && first_toplevel_type_.empty()) {
            first_toplevel_type_ = fq;
            for (auto& fact : pending_import_facts_) {
                fact.element = fq;
                out_.facts.push_back(std::move(fact));
            }
            pending_import_facts_.clear();
        }
        attach_pending_annotations(fq);

        if (at_punct("<")) {
            skip_balanced("<", ">");
        }
        // Header: extends / implements clauses until the body opens.
        while (!at_end() && !at_punct("{") && !at_punct(";")) {
            if (at_ident("extends")) {
                next();
                parse_supertype_list(fq, RefContext::Extend);
            } else if (at_ident("implements")) {
                next();
                parse_supertype_list(fq, RefContext::Implement);
            } else {
                next();
            }
        }
        SourceSpan span = span_of(decl_start, decl_start);
        if (at_punct("{")) {
            const Token& close = parse_type_body(fq);
            span = span_of(decl_start, close);
        } else if (at_punct(";")) {
            span = span_of(decl_start, peek());
            next();
        }
        out_.elements.push_back(CodeElement{kind, fq, span, parent});
    }

    void parse_supertype_list(const std::string& owner, RefContext context) {
        while (true) {
            auto chain = read_chain();
            if (!chain) {
                return;
            }
            if (at_punct("<")) {
                skip_balanced("<", ">");
            }
            if (auto resolved = resolve_chain(*chain, context)) {
                add_fact(owner, resolved->api, resolved->kind, chain->span);
            }
            if (at_punct(",")) {
                next();
                continue;
            }
            return;
        }
    }

    // Parses a type body starting at '{'; returns the closing brace token.
    const Token& parse_type_body(const std::string& type_fq) {
        next(); // consume '{'
        while (!at_end()) {
            if (at_punct("}")) {
                const Token& close = peek();
                next();
                pending_annotation_facts_.clear();
                return close;
            }
            if (at_punct(";")) {
                next();
                continue;
            }
            if (at_punct("@") && peek(1).kind == Token::Kind::Ident &&
                peek(1).text != "interface") {
                parse_annotation_use();
                continue;
            }
            if (is_type_decl_ahead()) {
                parse_type_decl(type_fq, false);
                continue;
            }
            if (at_punct("{")) { // instance initializer block
                scan_block(type_fq);
                continue;
            }
            if (at_ident("static") && peek(1).kind == Token::Kind::Punct &&
                peek(1).text == "{") {
                next();
                scan_block(type_fq);
                continue;
            }
            parse_member(type_fq);
        }
        return tokens_.back();
    }

    // One member declaration: a method (IDENT before '(' at top nesting) or
    // one-or-more field declarators.
    void parse_member(const std::string& type_fq) {
        const Token& decl_start = peek();
        std::string last_ident;
        while (!at_end()) {
            if (at_punct("<")) {
                skip_balanced("<", ">");
                continue;
            }
            if (peek().kind == Token::Kind::Ident) {
                if (!is_java_keyword(peek().text)) {
                    last_ident = peek().text;
                }
                next();
                continue;
            }
            if (at_punct("(")) {
                parse_method_rest(type_fq, decl_start, last_ident);
                return;
            }
            if (at_punct("=") || at_punct(",") || at_punct(";")) {
                parse_field_rest(type_fq, decl_start, last_ident);
                return;
            }
            if (at_punct("[") ) {
                skip_balanced("[", "]");
                continue;
            }
            if (at_punct("@")) {
                // annotation amid modifiers; belongs to this declaration
                parse_annotation_use();
                continue;
            }
            if (at_punct("}") || at_punct("{")) {
                // malformed member; let the body loop handle structure
                pending_annotation_facts_.clear();
                return;
            }
            next();
        }
    }

    void parse_method_rest(const std::string& type_fq, const Token& decl_start,
                           const std::string& name) {
        std::string fq = name.empty() ? type_fq + ".<anonymous>" : type_fq + "." + name;
        attach_pending_annotations(fq);
        skip_balanced("(", ")");
        while (!at_end() && !at_punct("{") && !at_punct(";") && !at_punct("}")) {
            next(); // throws clause and similar
        }
        SourceSpan span = span_of(decl_start, decl_start);
        if (at_punct("{")) {
            const Token& close = scan_block(fq);
            span = span_of(decl_start, close);
        } else if (at_punct(";")) {
            span = span_of(decl_start, peek());
            next();
        }
        out_.elements.push_back(CodeElement{ElementKind::Method, fq, span, type_fq});
    }

    void parse_field_rest(const std::string& type_fq, const Token& decl_start,
                          const std::string& first_name) {
        std::vector<std::string> names;
        if (!first_name.empty()) {
            names.push_back(first_name);
        }
        const Token* end = &peek();
        while (!at_end()) {
            if (at_punct(";")) {
                end = &peek();
                next();
                break;
            }
            if (at_punct(",")) {
                next();
                if (peek().kind == Token::Kind::Ident && !is_java_keyword(peek().text)) {
                    names.push_back(peek().text);
                    next();
                }
                continue;
            }
            if (at_punct("=")) {
                next();
                scan_initializer(type_fq);
                continue;
            }
            if (at_punct("{")) { // array initializer or malformed
                scan_block(type_fq);
                continue;
            }
            next();
        }
        SourceSpan span = span_of(decl_start, *end);
        bool first = true;
        for (const auto& name : names) {
            std::string fq = type_fq + "." + name;
            if (first) {
                attach_pending_annotations(fq);
                first = false;
            }
            out_.elements.push_back(CodeElement{ElementKind::Field, fq, span, type_fq});
        }
        pending_annotation_facts_.clear();
    }

    // Field initializer expression: scan for facts until ',' or ';' at top
    // nesting. Facts belong to the class.
    void scan_initializer(const std::string& owner) {
        int paren = 0;
        while (!at_end()) {
            if (at_punct("(")) {
                ++paren;
                next();
                continue;
            }
            if (at_punct(")")) {
                --paren;
                next();
                continue;
            }
            if (at_punct("{")) {
                scan_block(owner);
                continue;
            }
            if (paren == 0 && (at_punct(",") || at_punct(";"))) {
                return; // caller consumes
            }
            if (!scan_expression_step(owner)) {
                next();
            }
        }
    }

    // Statement/expression scanning inside bodies. Returns the closing '}'.
    const Token& scan_block(const std::string& owner) {
        if (!at_punct("{")) {
            return tokens_.back();
        }
        next();
        while (!at_end()) {
            if (at_punct("{")) {
                scan_block(owner);
                continue;
            }
            if (at_punct("}")) {
                const Token& close = peek();
                next();
                return close;
            }
            if (!scan_expression_step(owner)) {
                next();
            }
        }
        return tokens_.back();
    }

    // Consumes one fact-relevant construct if the cursor is at one.
    bool scan_expression_step(const std::string& owner) {
        if (at_punct("@") && peek(1).kind == Token::Kind::Ident) {
            const Token& at = peek();
            next();
            auto chain = read_chain();
            if (!chain) {
                return true;
            }
            if (at_punct("(")) {
                skip_balanced("(", ")");
            }
            if (auto resolved = resolve_chain(*chain, RefContext::Annotation)) {
                add_fact(owner, resolved->api, resolved->kind,
                         SourceSpan{file_, at.line, at.col, chain->span.end_line,
                                    chain->span.end_col});
            }
            return true;
        }
        if (at_ident("new")) {
            next();
            auto chain = read_chain();
            if (!chain) {
                return true;
            }
            if (auto resolved = resolve_chain(*chain, RefContext::Instantiate)) {
                add_fact(owner, resolved->api, resolved->kind, chain->span);
            }
            return true;
        }
        if (peek().kind == Token::Kind::Ident && !is_java_keyword(peek().text)) {
            // Not a chain continuation: the previous token must not be '.'.
            if (pos_ > 0 && tokens_[pos_ - 1].kind == Token::Kind::Punct &&
                tokens_[pos_ - 1].text == ".") {
                next();
                return true;
            }
            auto chain = read_chain();
            if (!chain) {
                return true;
            }
            if (auto resolved = resolve_chain(*chain, RefContext::Plain)) {
                add_fact(owner, resolved->api, resolved->kind, chain->span);
            }
            return true;
        }
        return false;
    }
};

} // namespace detail

/// Extract elements and usage facts from one source file's text. `rel_path`
/// is recorded in every span.
inline void extract_source_text(const std::string& rel_path, const std::string& source,
                                FactSet& out) {
    detail::FileExtractor extractor(rel_path, source, out);
    extractor.run();
}

/// Walk `root`, extract every file matched by the config, merge and sort.
/// Per-file failures become warnings; analysis continues.
inline FactSet extract_facts(const std::filesystem::path& root, const ExtractionConfig& config) {
    namespace fs = std::filesystem;
    if (!fs::exists(root) || !fs::is_directory(root)) {
        throw UsageError("extract_facts: source root does not exist: " + root.string());
    }
    std::vector<std::string> rel_paths;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
        if (!entry.is_regular_file()) {
            continue;
        }
        std::string rel = fs::relative(entry.path(), root).generic_string();
        bool included = false;
        for (const auto& glob : config.include_globs) {
            if (glob_match(glob, rel)) {
                included = true;
                break;
            }
        }
        for (const auto& glob : config.exclude_globs) {
            if (glob_match(glob, rel)) {
                included = false;
                break;
            }
        }
        if (included) {
            rel_paths.push_back(std::move(rel));
        }
    }
    std::sort(rel_paths.begin(), rel_paths.end());

    FactSet merged;
    std::set<std::string> seen_elements;
    for (const auto& rel : rel_paths) {
        fs::path full = root / fs::path(rel);
        std::error_code ec;
        auto size = fs::file_size(full, ec);
        if (!ec && size > config.max_file_size) {
            merged.warnings.push_back(
                {rel, "skipped: file exceeds size limit (" + std::to_string(size) + " > " +
                          std::to_string(config.max_file_size) + " bytes)"});
            continue;
        }
        FactSet single;
        try {
            extract_source_text(rel, read_text_file(full), single);
        } catch (const std::exception& e) {
            merged.warnings.push_back({rel, std::string("extraction failed: ") + e.what()});
            continue;
        }
        for (auto& element : single.elements) {
            if (seen_elements.insert(element.fq_name).second) {
                merged.elements.push_back(std::move(element));
            }
            // repeated declarations (same package in several files, method
            // overloads) collapse onto the first one in canonical file order
        }
        for (auto& fact : single.facts) {
            merged.facts.push_back(std::move(fact));
        }
        for (auto& warning : single.warnings) {
            merged.warnings.push_back(std::move(warning));
        }
    }
    sort_fact_set(merged);
    validate_fact_set(merged, "extracted facts");
    return merged;
}

} // namespace valuelint
