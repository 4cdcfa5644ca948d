#pragma once
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ontochat {

// Raised for missing/unreadable/unwritable files. The CLI maps it to exit 66.
class IoError : public std::runtime_error {
public:
    IoError(const std::filesystem::path& path, const std::string& what)
        : std::runtime_error(path.string() + ": " + what), path_(path) {}
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

} // namespace ontochat
