#!/usr/bin/env python3
"""Regenerate src/core/unicode_tables.cpp from Python's unicodedata.

The table holds sorted codepoint ranges whose general category is a letter
(L*) or a number (N*). Everything outside these ranges counts as a symbol
character for the trigger-pool predicate.

Usage: python3 scripts/gen_unicode_tables.py > src/core/unicode_tables.cpp
"""

import sys
import unicodedata

MAX_CP = 0x110000


def main() -> None:
    ranges = []
    start = None
    for cp in range(MAX_CP):
        cat = unicodedata.category(chr(cp))
        is_ln = cat[0] in ("L", "N")
        if is_ln and start is None:
            start = cp
        elif not is_ln and start is not None:
            ranges.append((start, cp - 1))
            start = None
    if start is not None:
        ranges.append((start, MAX_CP - 1))

    out = sys.stdout
    out.write("// Generated by scripts/gen_unicode_tables.py -- do not edit.\n")
    out.write("// Unicode %s general categories L* and N* as sorted\n"
              % unicodedata.unidata_version)
    out.write("// inclusive codepoint ranges.\n\n")
    out.write("#include \"unicode.hpp\"\n\n")
    out.write("#include <algorithm>\n\n")
    out.write("namespace embmark::uni {\n\n")
    out.write("namespace {\n\n")
    out.write("struct Range { char32_t lo; char32_t hi; };\n\n")
    out.write("constexpr Range kLetterOrDigit[] = {\n")
    for lo, hi in ranges:
        out.write("    {0x%X, 0x%X},\n" % (lo, hi))
    out.write("};\n\n")
    out.write("}  // namespace\n\n")
    out.write("bool is_letter_or_digit(char32_t cp) {\n")
    out.write("    const auto* end = std::end(kLetterOrDigit);\n")
    out.write("    const auto* it = std::upper_bound(\n")
    out.write("        std::begin(kLetterOrDigit), end, cp,\n")
    out.write("        [](char32_t v, const Range& r) { return v < r.lo; });\n")
    out.write("    if (it == std::begin(kLetterOrDigit)) return false;\n")
    out.write("    --it;\n")
    out.write("    return cp >= it->lo && cp <= it->hi;\n")
    out.write("}\n\n")
    out.write("}  // namespace embmark::uni\n")


if __name__ == "__main__":
    main()
