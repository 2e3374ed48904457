#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qnid {

// Shortest decimal form that parses back to the identical double
// (std::to_chars). Used for every artifact file so outputs are
// byte-stable and reload bit-for-bit.
std::string format_double(double v);

// Strict double parse of the whole token; throws qnid::data_error on junk.
double parse_double(std::string_view token, std::string_view context);

// Strict unsigned parse; throws qnid::data_error on junk or sign.
std::uint64_t parse_u64(std::string_view token, std::string_view context);

std::vector<std::string> split(std::string_view line, char sep);
std::string_view trim(std::string_view s);

// FNV-1a 64-bit, used for stage-seed derivation and manifest digests.
std::uint64_t fnv1a64(std::string_view bytes);
std::uint64_t fnv1a64_file(const std::string& path); // throws data_error if unreadable
std::string hex64(std::uint64_t v);

} // namespace qnid
