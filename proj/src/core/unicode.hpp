#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace embmark::uni {

// True iff the codepoint's Unicode general category is L* or N*.
// Table generated by scripts/gen_unicode_tables.py.
bool is_letter_or_digit(char32_t cp);

struct Decoded {
    char32_t cp;
    std::size_t length;  // bytes consumed; 0 on invalid input
};

// Decodes one UTF-8 codepoint at `pos`. Rejects overlong forms, surrogates
// and values above U+10FFFF (length 0 in all those cases).
Decoded decode_utf8(std::string_view text, std::size_t pos);

// True iff every token character is non-letter, non-digit (the special
// symbol predicate). False on empty or invalid UTF-8.
bool is_symbol_token(std::string_view token);

}  // namespace embmark::uni
