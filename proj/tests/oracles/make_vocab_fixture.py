#!/usr/bin/env python3
"""Builds the 30,522-entry WordPiece-style vocabulary fixture and the
expected symbol pool for it.

The pool expectation is computed here, directly from unicodedata general
categories, so the C++ pool builder is checked against an independent
filter over the raw vocab file.

Outputs (relative to tests/fixtures/):
  vocab30k.txt        one token per line, LF, trailing newline
  expected_pool.json  {"pool": [[token_id, token], ...], "vocab_sha256": hex}

Usage: python3 tests/oracles/make_vocab_fixture.py
"""

import hashlib
import json
import os
import unicodedata

RESERVED = ["[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]"]

TERMS = ["kinase", "acid", "cancer", "HIV", "gene", "chemical", "disease",
         "species"]

# Single-codepoint symbol tokens drawn from several Unicode blocks.
SYMBOL_RANGES = [
    (0x0021, 0x002F),  # ascii punctuation
    (0x003A, 0x0040),
    (0x005B, 0x0060),
    (0x007B, 0x007E),
    (0x00A1, 0x00BF),  # latin-1 punctuation and signs
    (0x2010, 0x2027),  # general punctuation
    (0x2030, 0x205E),
    (0x2190, 0x21FF),  # arrows
    (0x2200, 0x22FF),  # mathematical operators
    (0x2300, 0x232F),  # misc technical
    (0x25A0, 0x25CF),  # geometric shapes
    (0x2600, 0x262F),  # misc symbols
]

MULTI_SYMBOLS = ["((", "))", "->", "=>", "...", "::", "!=", "==", "<=", ">=",
                 "±∓", "≤≥", "†‡", "<<", ">>", "--", "++", "†", "[*]"]

# Symbol-only continuations: these must be excluded from the pool by the
# continuation-prefix rule even though every char is non-letter/non-digit.
SYMBOL_CONTINUATIONS = ["##≡", "##°", "##/", "##--", "##±"]

WORDS = ["kin", "study", "report", "patient", "clinical", "trial", "result",
         "analysis", "protein", "cell", "tissue", "blood", "treatment",
         "therapy", "dose", "response", "tumor", "enzyme", "receptor",
         "pathway", "expression", "mutation", "sequence", "genome", "virus",
         "bacteria", "infection", "immune", "antibody", "clinic"]

CONTINUATIONS = ["##ase", "##ing", "##ed", "##s", "##al", "##ic", "##tion",
                 "##ment", "##er", "##est", "##形"]

TOTAL = 30522


def main() -> None:
    here = os.path.dirname(os.path.abspath(__file__))
    fixtures = os.path.normpath(os.path.join(here, "..", "fixtures"))
    os.makedirs(fixtures, exist_ok=True)

    tokens = list(RESERVED)
    tokens += TERMS
    for lo, hi in SYMBOL_RANGES:
        for cp in range(lo, hi + 1):
            ch = chr(cp)
            if unicodedata.category(ch) == "Cn":
                continue
            tokens.append(ch)
    tokens += MULTI_SYMBOLS
    tokens += SYMBOL_CONTINUATIONS
    tokens += WORDS
    tokens += CONTINUATIONS
    seen = set()
    uniq = []
    for t in tokens:
        if t not in seen:
            seen.add(t)
            uniq.append(t)
    tokens = uniq
    i = 0
    while len(tokens) < TOTAL:
        w = "word%05d" % i
        if w not in seen:
            tokens.append(w)
            seen.add(w)
        i += 1
    assert len(tokens) == TOTAL, len(tokens)

    data = "".join(t + "\n" for t in tokens).encode("utf-8")
    with open(os.path.join(fixtures, "vocab30k.txt"), "wb") as f:
        f.write(data)
    vocab_sha = hashlib.sha256(data).hexdigest()

    reserved = set(RESERVED)
    pool = []
    for tid, tok in enumerate(tokens):
        if tok in reserved or tok.startswith("##"):
            continue
        if all(unicodedata.category(c)[0] not in ("L", "N") for c in tok):
            pool.append([tid, tok])

    with open(os.path.join(fixtures, "expected_pool.json"), "w",
              encoding="utf-8") as f:
        json.dump({"pool": pool, "vocab_sha256": vocab_sha}, f,
                  ensure_ascii=False, indent=1)
        f.write("\n")
    print("vocab tokens: %d, pool size: %d" % (len(tokens), len(pool)))


if __name__ == "__main__":
    main()
