#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace nerkit {

// ASCII-only lowercase; bytes outside A-Z pass through untouched.
std::string ascii_lower(std::string_view s);

// Split on runs of spaces and tabs; no empty fields.
std::vector<std::string> split_ws(std::string_view line);

// Split on a single character, keeping empty fields.
std::vector<std::string> split_char(std::string_view s, char sep);

std::string_view trim(std::string_view s);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace nerkit
