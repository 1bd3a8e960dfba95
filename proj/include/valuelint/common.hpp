#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace valuelint {

// Document-order-preserving JSON; all file formats round-trip through this.
using Json = nlohmann::ordered_json;

/// A file could not be read or parsed as its expected format.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A file parsed but violates the format's invariants.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Caller misuse of an operation (bad arguments, bad configuration).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Filesystem failure while reading or writing.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = text.find(sep, start);
        if (pos == std::string_view::npos) {
            parts.emplace_back(text.substr(start));
            return parts;
        }
        parts.emplace_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

/// True when `prefix` equals `name` or is a dot-separated prefix of it on a
/// whole-segment boundary ("android.nfc" matches "android.nfc.Tag" but not
/// "android.nfcx.Tag").
inline bool is_segment_prefix(std::string_view prefix, std::string_view name) {
    if (prefix.empty() || name.size() < prefix.size()) {
        return false;
    }
    if (name.substr(0, prefix.size()) != prefix) {
        return false;
    }
    return name.size() == prefix.size() || name[prefix.size()] == '.';
}

namespace detail {

inline bool glob_segment_match(std::string_view pat, std::string_view text) {
    // Classic *, ? matching within one path segment.
    std::size_t p = 0, t = 0, star = std::string_view::npos, mark = 0;
    while (t < text.size()) {
        if (p < pat.size() && (pat[p] == '?' || pat[p] == text[t])) {
            ++p;
            ++t;
        } else if (p < pat.size() && pat[p] == '*') {
            star = p++;
            mark = t;
        } else if (star != std::string_view::npos) {
            p = star + 1;
            t = ++mark;
        } else {
            return false;
        }
    }
    while (p < pat.size() && pat[p] == '*') {
        ++p;
    }
    return p == pat.size();
}

inline bool glob_segments_match(const std::vector<std::string>& pat, std::size_t pi,
                                const std::vector<std::string>& segs, std::size_t si) {
    if (pi == pat.size()) {
        return si == segs.size();
    }
    if (pat[pi] == "**") {
        for (std::size_t skip = si; skip <= segs.size(); ++skip) {
            if (glob_segments_match(pat, pi + 1, segs, skip)) {
                return true;
            }
        }
        return false;
    }
    if (si == segs.size()) {
        return false;
    }
    return glob_segment_match(pat[pi], segs[si]) && glob_segments_match(pat, pi + 1, segs, si + 1);
}

} // namespace detail

/// Glob match over '/'-separated relative paths. `*` and `?` stay within one
/// segment; `**` spans zero or more segments.
inline bool glob_match(std::string_view pattern, std::string_view path) {
    return detail::glob_segments_match(split(pattern, '/'), 0, split(path, '/'), 0);
}

inline std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open file: " + path.string());
    }
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw IoError("read failure: " + path.string());
    }
    return text;
}

inline void write_text_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open file for writing: " + path.string());
    }
    out << content;
    out.flush();
    if (!out) {
        throw IoError("write failure: " + path.string());
    }
}

/// Parse a JSON document, reporting parse errors with a line number.
inline Json parse_json_text(const std::string& text, const std::string& origin) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& err) {
        std::size_t offset = std::min<std::size_t>(err.byte, text.size());
        std::size_t line = 1 + static_cast<std::size_t>(
                                   std::count(text.begin(), text.begin() + offset, '\n'));
        throw ParseError(origin + ":" + std::to_string(line) + ": " + err.what());
    }
}

inline Json load_json_file(const std::filesystem::path& path) {
    return parse_json_text(read_text_file(path), path.string());
}

/// Every on-disk format carries a "version" field checked at load.
inline void require_format_version(const Json& doc, std::string_view expected,
                                   const std::string& origin) {
    if (!doc.is_object()) {
        throw ValidationError(origin + ": expected a JSON object at top level");
    }
    if (!doc.contains("version") || !doc["version"].is_string()) {
        throw ValidationError(origin + ": missing \"version\" field");
    }
    if (doc["version"].get<std::string>() != expected) {
        throw ValidationError(origin + ": unsupported version \"" +
                              doc["version"].get<std::string>() + "\" (expected \"" +
                              std::string(expected) + "\")");
    }
}

} // namespace valuelint
