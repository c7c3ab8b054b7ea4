#include "padld/report.hpp"

#include <cstdint>
#include <sstream>

namespace padld {

std::string fnv1a_digest(const std::string& data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

Json make_report(const std::string& command) {
    Json r;
    r["version"] = kReportVersion;
    r["command"] = command;
    r["inputs"] = Json::object();
    r["results"] = Json::object();
    r["assumptions"] = Json::array();
    r["timing_seconds"] = 0.0;
    return r;
}

Json error_payload(const Error& e) {
    Json j;
    j["code"] = errc_name(e.code());
    j["message"] = e.what();
    return j;
}

}  // namespace padld
