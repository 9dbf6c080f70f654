#!/usr/bin/env python3
"""Search procedure for the "desk" parameter set.

The curve family is E : y^2 = x^3 + x over F_p with p = 3 (mod 4), which is
supersingular with #E(F_p) = p + 1 and a cyclic group, so any prime q | p + 1
gives a unique order-q subgroup. The search fixes the cofactor shape

    p = q * 2^96 - 1

so that p = 3 (mod 4) holds automatically (4 | 2^96), the cofactor is exactly
2^96, and a 160-bit q yields a 256-bit p. Sieving then walks odd candidates
q >= 2^159 + 1 upward and keeps the first q where both q and p pass
Miller-Rabin.

The generator is derived deterministically from the parameters: walk x = 0,
1, 2, ... until x^3 + x is a square, take the canonical root y = min(y0,
p - y0), clear the cofactor, and keep the first point that survives (the 2^96
multiple of a random-ish point lands in the order-q subgroup or at infinity).

Run with no arguments to re-derive and verify the pinned constants; pass
--search to redo the sieve from scratch (takes a minute or two).
"""

import argparse
import random
import sys

PINNED_Q = 730750818665451459101842416358141509827966273897
PINNED_P = 57896044618658097711785492504343953926634992523680925516591581266803941179391
PINNED_GX = 17645026842952372560485356147499896715667002612945242447877260013491970479088
PINNED_GY = 8510849890427579706621051371108648385247966473182008240712041271904549236951
COFACTOR = 2**96


def is_probable_prime(n: int, rounds: int = 48) -> bool:
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47):
        if n % small == 0:
            return n == small
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    rng = random.Random(0xC0FFEE)  # fixed bases keep the run reproducible
    for _ in range(rounds):
        a = rng.randrange(2, n - 1)
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def ec_add(P, Q, p):
    if P is None:
        return Q
    if Q is None:
        return P
    (x1, y1), (x2, y2) = P, Q
    if x1 == x2 and (y1 + y2) % p == 0:
        return None
    if P == Q:
        lam = (3 * x1 * x1 + 1) * pow(2 * y1, p - 2, p) % p
    else:
        lam = (y2 - y1) * pow(x2 - x1, p - 2, p) % p
    x3 = (lam * lam - x1 - x2) % p
    return (x3, (lam * (x1 - x3) - y1) % p)


def ec_mul(k, P, p):
    acc = None
    while k:
        if k & 1:
            acc = ec_add(acc, P, p)
        P = ec_add(P, P, p)
        k >>= 1
    return acc


def derive_generator(p, q, cofactor):
    for x in range(0, 10**6):
        rhs = (x * x * x + x) % p
        y0 = pow(rhs, (p + 1) // 4, p)
        if y0 * y0 % p != rhs:
            continue
        y = min(y0, (p - y0) % p)
        g = ec_mul(cofactor, (x, y), p)
        if g is None:
            continue
        assert ec_mul(q, g, p) is None, "generator must have order q"
        return g
    raise RuntimeError("no generator found")


def sieve() -> int:
    q = 2**159 + 1
    while True:
        if is_probable_prime(q) and is_probable_prime(q * COFACTOR - 1):
            return q
        q += 2


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--search", action="store_true",
                        help="redo the sieve instead of verifying the pinned q")
    args = parser.parse_args()

    q = sieve() if args.search else PINNED_Q
    p = q * COFACTOR - 1

    assert p % 4 == 3
    assert q.bit_length() == 160 and p.bit_length() == 256
    assert is_probable_prime(q) and is_probable_prime(p)
    assert (p + 1) % q == 0 and (p + 1) // q == COFACTOR
    assert COFACTOR % q != 0          # q^2 does not divide the curve order
    assert (p - 1) % q != 0           # q-torsion lives only in p + 1

    gx, gy = derive_generator(p, q, COFACTOR)
    assert (gy * gy - (gx**3 + gx)) % p == 0

    print(f"label = desk")
    print(f"p = {p}")
    print(f"q = {q}")
    print(f"cofactor = {COFACTOR}")
    print(f"gx = {gx}")
    print(f"gy = {gy}")

    if not args.search:
        ok = (q, p, gx, gy) == (PINNED_Q, PINNED_P, PINNED_GX, PINNED_GY)
        print("pinned constants verified" if ok else "MISMATCH with pinned constants")
        return 0 if ok else 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
