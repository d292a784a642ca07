#pragma once

#include <filesystem>
#include <string>

namespace typoline {

std::string read_file(const std::filesystem::path& path);

// Writes to a temporary sibling, then renames into place.
void atomic_write_file(const std::filesystem::path& path,
                       std::string_view content);

}  // namespace typoline
