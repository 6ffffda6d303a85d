"""Exact mod-p arithmetic and the coefficient/bound functions of the relation system."""

from __future__ import annotations

from functools import lru_cache

# Residues in [0, p) are plain ints; a wrapper class would dominate the hot paths.
Fp = int


def is_odd_prime(p: int) -> bool:
    """True for odd primes. Trial division; the primes used here are small."""
    if p < 3 or p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def _pascal_table(p: int) -> list[list[int]]:
    # C(a, b) mod p for 0 <= b <= a < p; the digit table behind Lucas products.
    rows = [[1]]
    for a in range(1, p):
        prev = rows[-1]
        row = [1] * (a + 1)
        for b in range(1, a):
            row[b] = (prev[b - 1] + prev[b]) % p
        rows.append(row)
    return rows


class PrimeContext:
    """A fixed odd prime p plus the memo tables shared by rewriting and the differential.

    Instances are cheap, but the caches live per instance; reuse one context
    per p (see :func:`get_context`) so pair rewrites and differentials of
    monomials are computed once per process.
    """

    def __init__(self, p: int, term_budget: int = 10_000_000):
        if not is_odd_prime(p):
            raise ValueError(f"p must be an odd prime >= 3, got {p!r}")
        self.p = p
        self.term_budget = term_budget
        # (g1, g2) -> tuple of ((h1, h2), coeff): straightening rule right-hand sides
        self.pair_cache: dict = {}
        # d(generator) raw terms, keyed by packed generator
        self.dgen_cache: dict = {}
        # sign mode -> {word: d(word) term dict}
        self.d_cache: dict = {}
        self._digit_binom = _pascal_table(p)

    def __repr__(self) -> str:
        return f"PrimeContext(p={self.p})"


@lru_cache(maxsize=None)
def get_context(p: int) -> PrimeContext:
    """Shared context per prime, with the default term budget."""
    return PrimeContext(p)


def binom_mod_p(n: int, k: int, ctx: PrimeContext) -> Fp:
    """C(n, k) mod p by base-p digit products.

    Exact for arbitrarily large n (no factorials involved). k > n gives 0,
    and n < 0 gives 0 as well so the coefficient functions below can be
    called uniformly on out-of-range arguments.
    """
    if k < 0 or k > n:
        return 0
    p = ctx.p
    table = ctx._digit_binom
    out = 1
    while k:
        nd = n % p
        kd = k % p
        if kd > nd:
            return 0
        out = out * table[nd][kd] % p
        n //= p
        k //= p
    return out


def coeff_a(k: int, j: int, ctx: PrimeContext) -> Fp:
    """Relation coefficient a(k, j) = (-1)^(j+1) * C((p-1)(k-j) - 1, j) in F_p."""
    c = binom_mod_p((ctx.p - 1) * (k - j) - 1, j, ctx)
    return c if (j + 1) % 2 == 0 else (-c) % ctx.p


def coeff_b(k: int, j: int, ctx: PrimeContext) -> Fp:
    """Relation coefficient b(k, j) = (-1)^j * C((p-1)(k-j), j) in F_p."""
    c = binom_mod_p((ctx.p - 1) * (k - j), j, ctx)
    return c if j % 2 == 0 else (-c) % ctx.p


def bound_N(k: int, ctx: PrimeContext) -> int:
    """floor(k - (k+1)/p); equals -1 at k = 0, which makes the k = 0 sums empty."""
    return (k * ctx.p - k - 1) // ctx.p


def bound_Nprime(k: int, ctx: PrimeContext) -> int:
    """floor(k - k/p)."""
    return (k * ctx.p - k) // ctx.p


def valuation_p(n: int, ctx: PrimeContext) -> int:
    """Largest e with p^e dividing n; n must be >= 1."""
    if n < 1:
        raise ValueError(f"valuation is only defined for n >= 1, got {n!r}")
    p = ctx.p
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e
