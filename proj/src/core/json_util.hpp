#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "errors.hpp"

namespace embmark {

// Object keys sort automatically (nlohmann backs objects with std::map);
// dumping without indent yields the canonical form: sorted keys, UTF-8,
// no insignificant whitespace, shortest round-trip numbers.
inline std::string canonical_dump(const nlohmann::json& j) {
    return j.dump(-1, ' ', false,
                  nlohmann::json::error_handler_t::strict);
}

inline nlohmann::json parse_json(const std::string& text,
                                 const char* what = "JSON") {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded())
        fail(Err::format, std::string("malformed ") + what);
    return j;
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Err::io, "cannot open " + path);
    return std::string(std::istreambuf_iterator<char>(in),
                       std::istreambuf_iterator<char>());
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(Err::io, "cannot write " + path);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) fail(Err::io, "short write to " + path);
}

inline nlohmann::json load_json_file(const std::string& path) {
    return parse_json(read_text_file(path), path.c_str());
}

}  // namespace embmark
