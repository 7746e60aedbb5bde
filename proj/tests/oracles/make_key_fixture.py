#!/usr/bin/env python3
"""Generates the fixed 2048-bit RSA test key used by the test suite.

Run once; the committed PEM files are the fixture. Regenerating produces a
different key and invalidates expected_triggers.json, so rerun
trigger_reference.py afterwards.

Outputs (tests/fixtures/): owner_key.pem (PKCS#8), owner_key_pub.pem (SPKI),
owner_key.der (PKCS#8 DER), key_fingerprint.txt (SHA-256 of SPKI DER, hex).
"""

import hashlib
import os

from cryptography.hazmat.primitives import serialization
from cryptography.hazmat.primitives.asymmetric import rsa


def main() -> None:
    here = os.path.dirname(os.path.abspath(__file__))
    fixtures = os.path.normpath(os.path.join(here, "..", "fixtures"))

    key = rsa.generate_private_key(public_exponent=65537, key_size=2048)
    priv_pem = key.private_bytes(
        serialization.Encoding.PEM,
        serialization.PrivateFormat.PKCS8,
        serialization.NoEncryption())
    priv_der = key.private_bytes(
        serialization.Encoding.DER,
        serialization.PrivateFormat.PKCS8,
        serialization.NoEncryption())
    pub = key.public_key()
    pub_pem = pub.public_bytes(serialization.Encoding.PEM,
                               serialization.PublicFormat.SubjectPublicKeyInfo)
    pub_der = pub.public_bytes(serialization.Encoding.DER,
                               serialization.PublicFormat.SubjectPublicKeyInfo)

    with open(os.path.join(fixtures, "owner_key.pem"), "wb") as f:
        f.write(priv_pem)
    with open(os.path.join(fixtures, "owner_key.der"), "wb") as f:
        f.write(priv_der)
    with open(os.path.join(fixtures, "owner_key_pub.pem"), "wb") as f:
        f.write(pub_pem)
    with open(os.path.join(fixtures, "key_fingerprint.txt"), "w") as f:
        f.write(hashlib.sha256(pub_der).hexdigest() + "\n")
    print("fingerprint:", hashlib.sha256(pub_der).hexdigest())


if __name__ == "__main__":
    main()
