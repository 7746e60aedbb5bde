#include "unicode.hpp"

namespace embmark::uni {

Decoded decode_utf8(std::string_view text, std::size_t pos) {
    if (pos >= text.size()) return {0, 0};
    auto byte = [&](std::size_t i) -> unsigned {
        return static_cast<unsigned char>(text[i]);
    };
    unsigned b0 = byte(pos);
    if (b0 < 0x80) return {b0, 1};
    std::size_t len;
    char32_t cp;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        return {0, 0};
    }
    if (pos + len > text.size()) return {0, 0};
    for (std::size_t i = 1; i < len; ++i) {
        unsigned b = byte(pos + i);
        if ((b & 0xC0) != 0x80) return {0, 0};
        cp = (cp << 6) | (b & 0x3F);
    }
    if (len == 2 && cp < 0x80) return {0, 0};
    if (len == 3 && cp < 0x800) return {0, 0};
    if (len == 4 && cp < 0x10000) return {0, 0};
    if (cp >= 0xD800 && cp <= 0xDFFF) return {0, 0};
    if (cp > 0x10FFFF) return {0, 0};
    return {cp, len};
}

bool is_symbol_token(std::string_view token) {
    if (token.empty()) return false;
    std::size_t pos = 0;
    while (pos < token.size()) {
        Decoded d = decode_utf8(token, pos);
        if (d.length == 0) return false;
        if (is_letter_or_digit(d.cp)) return false;
        pos += d.length;
    }
    return true;
}

}  // namespace embmark::uni
