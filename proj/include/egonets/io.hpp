#pragma once
// Small file and CSV helpers shared by the pipeline stages.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace egonets {

// Write via temp file + rename so readers never observe partial output.
void atomic_write_file(const std::filesystem::path& path, std::string_view content);

std::optional<std::string> read_file(const std::filesystem::path& path);

std::uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);
std::optional<std::string> hash_file_hex(const std::filesystem::path& path);

// RFC 4180-style single-line split/quote (embedded newlines unsupported).
std::optional<std::vector<std::string>> csv_split(std::string_view line);
std::string csv_quote(std::string_view field);

// Fixed-precision float formatting for stable, re-parseable CSV output.
std::string format_double(double v);

// Runs fn(i) for i in [0, n) across at most `jobs` threads. Exceptions in
// workers are rethrown on the calling thread.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn);

}  // namespace egonets
