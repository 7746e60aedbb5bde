#!/usr/bin/env python3
"""Independent greedy WordPiece-style matcher, used to freeze the expected
token stream for the fixture paragraph.

Tokenizer contract:
  - optional ASCII lowercasing (off here)
  - whitespace = ASCII space, \\t, \\n, \\r, \\v, \\f
  - a non-ws span splits into maximal runs of letter-or-digit codepoints
    (Unicode categories L*/N*) and maximal runs of everything else
  - a run longer than 100 codepoints maps to [UNK]
  - per run: greedy longest prefix present in the vocab; continuations are
    looked up with a "##" prefix; any dead end maps the whole run to [UNK]

Writes tests/fixtures/paragraph.txt and tests/fixtures/expected_tokens.json.
"""

import json
import os
import unicodedata

WS = set(" \t\n\r\v\f")
MAX_CHARS = 100


def is_word_char(c: str) -> bool:
    return unicodedata.category(c)[0] in ("L", "N")


def split_runs(text: str):
    runs = []
    cur = []
    cur_kind = None
    for c in text:
        if c in WS:
            if cur:
                runs.append("".join(cur))
                cur, cur_kind = [], None
            continue
        kind = is_word_char(c)
        if cur and kind != cur_kind:
            runs.append("".join(cur))
            cur = []
        cur.append(c)
        cur_kind = kind
    if cur:
        runs.append("".join(cur))
    return runs


def wordpiece(run: str, vocab: dict):
    if len(run) > MAX_CHARS:
        return None
    pieces = []
    start = 0
    n = len(run)
    while start < n:
        end = n
        hit = None
        while start < end:
            piece = run[start:end]
            if start > 0:
                piece = "##" + piece
            if piece in vocab:
                hit = piece
                break
            end -= 1
        if hit is None:
            return None
        pieces.append(hit)
        start = end
    return pieces


def tokenize(text: str, vocab: dict):
    out = []
    for run in split_runs(text):
        pieces = wordpiece(run, vocab)
        if pieces is None:
            out.append(["[UNK]", vocab["[UNK]"]])
        else:
            out.extend([p, vocab[p]] for p in pieces)
    return out


PARAGRAPH = (
    "patient report shows cancer progression in the study ≡ analysis "
    "confirmed kinase expression with acid levels rising → treatment "
    "response was studied across species and the gene pathway ⊕ mutation "
    "profile ((  word00001 word00042 chemical disease markers )) the HIV "
    "panel ± baseline virus screen ... unknownblob zzzzqqq word00777 "
    "report report patient ≤≥ clinical trial result † blood tissue cell "
    "enzyme receptor == antibody immune bacteria infection != genome "
    "sequence word12345 | studying kinases acids :: clinics reported "
    "tumor dose therapy < > [ ] { } word00002-word00003 patient/report "
    "kin word09999 %% studied §¶ reports, clinical. trials; analysis: "
    "word00004 !? cancer≡gene ‡ protein cells word00100 word00200 "
    "word00300 blood†tissue infection... the the the word29999 zz9 "
    "multi‰sign word00500 ∀x ∃y ∑n ∏k √2 ∞ receptor word00600 mutated "
    "genomes ≈ word00700 sequenced ⊂⊆ word00800 expressions ⋅ word00900 "
    "therapies word01000 ↔ responses word01100 doses word01200 ∧∨ trials "
    "word01300 patients word01400 ⊥ word01500 treatments word01600 ∩∪ "
    "word01700 antibodies word01800 ⇒ word01900 bacterias word02000"
)


def main() -> None:
    here = os.path.dirname(os.path.abspath(__file__))
    fixtures = os.path.normpath(os.path.join(here, "..", "fixtures"))

    vocab = {}
    with open(os.path.join(fixtures, "vocab30k.txt"), encoding="utf-8") as f:
        for i, line in enumerate(f):
            vocab[line.rstrip("\n")] = i

    with open(os.path.join(fixtures, "paragraph.txt"), "w",
              encoding="utf-8") as f:
        f.write(PARAGRAPH + "\n")

    tokens = tokenize(PARAGRAPH + "\n", vocab)
    with open(os.path.join(fixtures, "expected_tokens.json"), "w",
              encoding="utf-8") as f:
        json.dump({"tokens": tokens}, f, ensure_ascii=False, indent=1)
        f.write("\n")
    n_unk = sum(1 for t in tokens if t[0] == "[UNK]")
    print("tokens: %d, unk: %d" % (len(tokens), n_unk))


if __name__ == "__main__":
    main()
