#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace synthbench {

std::string trim(std::string_view s);
std::string to_lower(std::string_view s);

// Collapses runs of whitespace to single spaces and trims the ends.
std::string collapse_whitespace(std::string_view s);

// Trim + collapse + lowercase; the key used for duplicate detection.
std::string normalize_text(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);
std::vector<std::string> split_whitespace(std::string_view s);
std::vector<std::string> split_lines(std::string_view text);

// Shortest round-trip decimal representation of a double.
std::string format_double(double value);

// Case-insensitive count of non-overlapping occurrences of needle.
std::size_t count_occurrences(std::string_view haystack, std::string_view needle);
bool contains_ci(std::string_view haystack, std::string_view needle);

std::string sha256_hex(std::string_view data);

uint64_t fnv1a64(std::string_view data);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

std::string iso8601_utc(int64_t epoch_seconds);

}  // namespace synthbench
