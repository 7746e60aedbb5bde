#!/usr/bin/env python3
"""Reference trigger derivation, independent of the C++ implementation.

Derivation rule (shared contract):
  m_i    = utf8(message) || 0x1F || ascii_decimal(i)        for i = 1..n
  sig_i  = RSASSA-PKCS1-v1_5(SHA-256, m_i) with the private key
  digest = SHA-256(sig_i)
  index  = big-endian-uint(digest) mod |pool|
  while index already taken: digest = SHA-256(digest); recompute index

Writes tests/fixtures/expected_triggers.json with the full derivation record
for message "AliceHospital", n = 8, over the vocab30k symbol pool.

Usage: python3 tests/oracles/trigger_reference.py
"""

import hashlib
import json
import os

from cryptography.hazmat.primitives import hashes, serialization
from cryptography.hazmat.primitives.asymmetric import padding

MESSAGE = "AliceHospital"
N = 8


def derive(message: bytes, key, pool_size: int, n: int):
    taken = set()
    out = []
    for i in range(1, n + 1):
        m_i = message + b"\x1f" + str(i).encode("ascii")
        sig = key.sign(m_i, padding.PKCS1v15(), hashes.SHA256())
        digest = hashlib.sha256(sig).digest()
        idx = int.from_bytes(digest, "big") % pool_size
        rehash = 0
        while idx in taken:
            digest = hashlib.sha256(digest).digest()
            idx = int.from_bytes(digest, "big") % pool_size
            rehash += 1
        taken.add(idx)
        out.append({
            "i": i,
            "m_i": m_i.decode("utf-8"),
            "signature_sha256": hashlib.sha256(sig).hexdigest(),
            "signature_hex": sig.hex(),
            "rehash_count": rehash,
            "index_in_pool": idx,
        })
    return out


def main() -> None:
    here = os.path.dirname(os.path.abspath(__file__))
    fixtures = os.path.normpath(os.path.join(here, "..", "fixtures"))

    with open(os.path.join(fixtures, "owner_key.pem"), "rb") as f:
        key = serialization.load_pem_private_key(f.read(), password=None)
    with open(os.path.join(fixtures, "expected_pool.json")) as f:
        pool = json.load(f)["pool"]

    records = derive(MESSAGE.encode("utf-8"), key, len(pool), N)
    for r in records:
        tid, tok = pool[r["index_in_pool"]]
        r["token_id"] = tid
        r["token"] = tok

    with open(os.path.join(fixtures, "expected_triggers.json"), "w",
              encoding="utf-8") as f:
        json.dump({"message": MESSAGE, "n": N, "pool_size": len(pool),
                   "triggers": records}, f, ensure_ascii=False, indent=1)
        f.write("\n")
    print(json.dumps([(r["index_in_pool"], r["token"]) for r in records],
                     ensure_ascii=False))


if __name__ == "__main__":
    main()
