#pragma once

#include <string>

#include <json.hpp>

#include "padld/rat.hpp"

namespace padld {

using Json = nlohmann::json;

inline constexpr const char* kReportVersion = "1";

// FNV-1a 64-bit digest of raw input bytes, hex-encoded.
std::string fnv1a_digest(const std::string& data);

// Skeleton report; callers fill results/assumptions and stamp timing last.
Json make_report(const std::string& command);

// Serialized error payload for failed commands.
Json error_payload(const Error& e);

}  // namespace padld
