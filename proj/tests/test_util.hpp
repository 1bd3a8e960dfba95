#pragma once

#include <filesystem>
#include <string>

#include "valuelint/common.hpp"

namespace valuelint::test {

inline std::filesystem::path fixtures_dir() { return VL_FIXTURES_DIR; }
inline std::filesystem::path data_dir() { return VL_DATA_DIR; }

/// Fresh scratch directory under the system temp dir, wiped on construction
/// and destruction.
class TempDir {
public:
    explicit TempDir(const std::string& name)
        : path_(std::filesystem::temp_directory_path() / ("valuelint-" + name)) {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }

    std::filesystem::path write(const std::string& rel, const std::string& content) const {
        std::filesystem::path p = path_ / rel;
        std::filesystem::create_directories(p.parent_path());
        write_text_file(p, content);
        return p;
    }

private:
    std::filesystem::path path_;
};

} // namespace valuelint::test
