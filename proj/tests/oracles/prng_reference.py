#!/usr/bin/env python3
"""Reference implementation of the PRNG contract, used to freeze expected
values for the C++ tests.

Contract (all arithmetic mod 2^64):
  SplitMix64 next: state += 0x9E3779B97F4A7C15
                   z = state
                   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
                   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
                   return z ^ (z >> 31)
  mix64(x)       : first output of SplitMix64 seeded at x
  substream(s,k) : mix64(s + (k+1) * 0x9E3779B97F4A7C15)
  below(b)       : next() % b
  unit()         : (next() >> 11) * 2^-53                 in [0,1)
  gauss pair     : u1 = ((next() >> 11) + 1) * 2^-53      in (0,1]
                   u2 = (next() >> 11) * 2^-53
                   r = sqrt(-2 ln u1); a = 2*pi*u2
                   yields r*cos(a) then r*sin(a)
  shuffle(v)     : Fisher-Yates, j = n-1..1, i = below(j+1), swap v[i], v[j]

Writes tests/fixtures/prng_expected.json.
"""

import json
import math
import os
import struct

MASK = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK

    def next(self) -> int:
        self.state = (self.state + GOLDEN) & MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        return self.next() % bound

    def unit(self) -> float:
        return (self.next() >> 11) * (2.0 ** -53)


def mix64(x: int) -> int:
    return SplitMix64(x).next()


def substream(seed: int, k: int) -> int:
    return mix64((seed + (k + 1) * GOLDEN) & MASK)


def shuffle(items, g: SplitMix64):
    v = list(items)
    for j in range(len(v) - 1, 0, -1):
        i = g.below(j + 1)
        v[i], v[j] = v[j], v[i]
    return v


def gaussians(seed: int, count: int):
    g = SplitMix64(seed)
    out = []
    while len(out) < count:
        u1 = ((g.next() >> 11) + 1) * (2.0 ** -53)
        u2 = (g.next() >> 11) * (2.0 ** -53)
        r = math.sqrt(-2.0 * math.log(u1))
        a = 2.0 * math.pi * u2
        out.append(r * math.cos(a))
        out.append(r * math.sin(a))
    return out[:count]


def f64_hex(x: float) -> str:
    return struct.pack("<d", x).hex()


def main() -> None:
    here = os.path.dirname(os.path.abspath(__file__))
    fixtures = os.path.normpath(os.path.join(here, "..", "fixtures"))

    data = {}
    data["next"] = {
        str(seed): ["%016x" % SplitMix64(seed).next() for _ in range(1)] and
                   ["%016x" % v for v in
                    (lambda g: [g.next() for _ in range(8)])(SplitMix64(seed))]
        for seed in (0, 1, 42, 0xDEADBEEF, MASK)
    }
    data["mix64"] = {str(x): "%016x" % mix64(x) for x in (0, 1, 42, GOLDEN)}
    data["substream"] = {
        "7": ["%016x" % substream(7, k) for k in range(4)],
        "42": ["%016x" % substream(42, k) for k in range(4)],
    }
    data["shuffle8"] = {
        str(seed): shuffle(range(8), SplitMix64(seed))
        for seed in (7, 42, 123456789)
    }

    identity = list(range(8))
    ident_seed = None
    s = 0
    while s < 10_000_000:
        if shuffle(identity, SplitMix64(s)) == identity:
            ident_seed = s
            break
        s += 1
    assert ident_seed is not None
    data["identity_shuffle8_seed"] = ident_seed

    ga = gaussians(42, 8)
    data["gauss_seed42"] = {"values": ga, "hex": [f64_hex(v) for v in ga]}

    with open(os.path.join(fixtures, "prng_expected.json"), "w") as f:
        json.dump(data, f, indent=1)
        f.write("\n")
    print("identity shuffle seed:", ident_seed)
    print("shuffle8 seed42:", data["shuffle8"]["42"])


if __name__ == "__main__":
    main()
