"""Generators, monomials, admissibility, and admissible-basis enumeration.

A generator is packed into a single int: the lambda generator with index i
(i >= 1) is ``2*i`` and the mu generator with index j (j >= 0) is ``2*j + 1``.
Integer order on packed generators is index-major with lambda before mu at
equal index, which is exactly the deterministic basis order used everywhere
downstream (matrices, JSON, text output).

A monomial is a tuple of packed generators; the empty tuple is the unit.
Text form: whitespace-separated tokens ``l<i>`` / ``m<j>``, and ``1`` for
the unit, e.g. ``"m1 m2 l1"``.
"""

from __future__ import annotations

import enum
from typing import Iterator, NamedTuple

LAMBDA = 0
MU = 1

Gen = int
Word = tuple  # tuple of packed generators

DEFAULT_ENUM_BUDGET = 5_000_000


class ResourceBudgetError(RuntimeError):
    """An enumeration or rewrite exceeded its configured resource budget."""


def lam(i: int) -> Gen:
    if i < 1:
        raise ValueError(f"lambda index must be >= 1, got {i}")
    return 2 * i


def mu(j: int) -> Gen:
    if j < 0:
        raise ValueError(f"mu index must be >= 0, got {j}")
    return 2 * j + 1


def gen_kind(g: Gen) -> int:
    return g & 1


def gen_index(g: Gen) -> int:
    return g >> 1


def gen_degree(g: Gen, p: int) -> int:
    # lambda_i has degree 2(p-1)i - 1, mu_j has degree 2(p-1)j
    i = g >> 1
    return 2 * (p - 1) * i - (1 - (g & 1))


def degree(mon: Word, p: int) -> int:
    """Total degree of a monomial: the sum of its generator degrees."""
    return sum(gen_degree(g, p) for g in mon)


def next_index_bound(g: Gen, p: int) -> int:
    """Largest index allowed directly after g in an admissible word."""
    i = g >> 1
    return p * i - (1 - (g & 1))


def pair_is_admissible(g1: Gen, g2: Gen, p: int) -> bool:
    return (g2 >> 1) <= next_index_bound(g1, p)


def is_admissible(mon: Word, p: int) -> bool:
    """Every adjacent pair satisfies the index bound (lambda: p*i - 1, mu: p*i)."""
    for t in range(len(mon) - 1):
        if (mon[t + 1] >> 1) > next_index_bound(mon[t], p):
            return False
    return True


def format_gen(g: Gen) -> str:
    return f"{'m' if g & 1 else 'l'}{g >> 1}"


def parse_gen(tok: str) -> Gen:
    if len(tok) >= 2 and tok[0] in "lm" and tok[1:].isdigit():
        idx = int(tok[1:])
        return lam(idx) if tok[0] == "l" else mu(idx)
    raise ValueError(f"bad generator token {tok!r}")


def format_word(mon: Word) -> str:
    return " ".join(format_gen(g) for g in mon) if mon else "1"


def parse_word(text: str) -> Word:
    toks = text.split()
    if toks == ["1"]:
        return ()
    return tuple(parse_gen(t) for t in toks)


class Ideal(str, enum.Enum):
    """Which span a basis cell refers to: the whole algebra, or words ending in a lambda."""

    FULL = "full"
    LAMBDA_IDEAL = "lambda"


class BasisKey(NamedTuple):
    p: int
    n: int  # unstable bound on the first index
    m: int  # degree
    l: int  # word length
    ideal: Ideal = Ideal.FULL


def _candidate_gens(p: int, bound: int, rem_deg: int) -> Iterator[Gen]:
    """Generators with index <= bound and degree <= rem_deg, ascending, mu_0 excluded."""
    two = 2 * (p - 1)
    max_lam = min(bound, (rem_deg + 1) // two)
    max_mu = min(bound, rem_deg // two)
    for i in range(1, max(max_lam, max_mu) + 1):
        if i <= max_lam:
            yield 2 * i
        if i <= max_mu:
            yield 2 * i + 1


def _max_fill_degree(p: int, bound: int, rem_len: int) -> int:
    # Chains maximize degree by taking mu_bound, then mu_{p*bound}, ...:
    # sum 2(p-1)*bound*p^t = 2*bound*(p^rem_len - 1).
    return 2 * bound * (p ** rem_len - 1)


def basis(key: BasisKey, budget: int = DEFAULT_ENUM_BUDGET) -> list[Word]:
    """All admissible monomials for one (degree, length) cell, in basis order.

    First index <= n; for Ideal.LAMBDA_IDEAL the last generator must be a
    lambda (which also excludes mu_0 everywhere: anything after mu_0 must be
    mu_0 again, so mu_0 blocks are terminal and cannot end in a lambda).
    """
    p, n, m, l, ideal = key
    if n < 1 or m < 0 or l < 0:
        raise ValueError(f"bad basis key {key!r}")
    lambda_only = ideal == Ideal.LAMBDA_IDEAL
    min_gen_deg = 2 * p - 3  # smallest positive generator degree (lambda_1)
    out: list[Word] = []
    count = 0

    def rec(word: list[Gen], bound: int, rem_deg: int, rem_len: int) -> None:
        nonlocal count
        if rem_len == 0:
            # words built under lambda_only always end in a lambda; only the
            # empty word slips through and must be rejected there
            if rem_deg == 0 and (word or not lambda_only):
                count += 1
                if count > budget:
                    raise ResourceBudgetError(
                        f"basis cell {key} exceeded budget of {budget} monomials"
                    )
                out.append(tuple(word))
            return
        if lambda_only:
            if rem_deg < min_gen_deg * rem_len:
                return
        elif rem_deg == 0:
            # only mu_0 has degree 0, and after mu_0 only mu_0 fits
            count += 1
            if count > budget:
                raise ResourceBudgetError(
                    f"basis cell {key} exceeded budget of {budget} monomials"
                )
            out.append(tuple(word) + (1,) * rem_len)
            return
        if rem_deg > _max_fill_degree(p, bound, rem_len):
            return
        last = rem_len == 1
        for g in _candidate_gens(p, bound, rem_deg):
            if lambda_only and last and (g & 1):
                continue
            word.append(g)
            rec(word, next_index_bound(g, p), rem_deg - gen_degree(g, p), rem_len - 1)
            word.pop()

    rec([], n, m, l)
    out.sort()
    return out


def default_length_cap(p: int, max_degree: int, ideal: Ideal) -> int:
    """Length cap for degree sweeps.

    Lambda-ending words have no mu_0 and every letter costs at least
    2p - 3 >= 3 of degree, so their length is intrinsically bounded. Full
    cells stay finite per (m, l) but mu_0 tails make the set of lengths
    unbounded, hence the cap of 2 * max_degree on sweeps.
    """
    if ideal == Ideal.LAMBDA_IDEAL:
        return max_degree // (2 * p - 3)
    return 2 * max_degree


def enumerate_up_to(
    p: int,
    n: int,
    max_degree: int,
    ideal: Ideal,
    max_length: int | None = None,
    budget: int = DEFAULT_ENUM_BUDGET,
) -> dict[tuple[int, int], list[Word]]:
    """Bases for every (m, l) with m <= max_degree and l <= the length cap.

    Returns a dict keyed by (degree, length); cells that would be empty are
    simply absent. A single walk over admissible words feeds all cells.
    """
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    if max_length is None:
        max_length = default_length_cap(p, max_degree, ideal)
    lambda_only = ideal == Ideal.LAMBDA_IDEAL
    table: dict[tuple[int, int], list[Word]] = {}
    count = 0

    def emit(word: tuple, deg: int) -> None:
        nonlocal count
        count += 1
        if count > budget:
            raise ResourceBudgetError(
                f"enumeration (p={p}, n={n}, max_degree={max_degree}) exceeded "
                f"budget of {budget} monomials"
            )
        table.setdefault((deg, len(word)), []).append(word)

    def rec(word: list[Gen], bound: int, deg: int) -> None:
        w = tuple(word)
        if not lambda_only:
            emit(w, deg)
            # mu_0 tails: admissible after any letter, and terminal
            for r in range(1, max_length - len(w) + 1):
                emit(w + (1,) * r, deg)
        elif word and not (word[-1] & 1):
            emit(w, deg)
        if len(word) == max_length:
            return
        for g in _candidate_gens(p, bound, max_degree - deg):
            word.append(g)
            rec(word, next_index_bound(g, p), deg + gen_degree(g, p))
            word.pop()

    rec([], n, 0)
    for cell in table.values():
        cell.sort()
    return table


def dimension_table(
    p: int,
    n: int,
    max_degree: int,
    ideal: Ideal,
    max_length: int | None = None,
) -> dict[tuple[int, int], int]:
    """Cell dimensions only, without materializing monomials.

    mu_0 tails contribute one word per extra length, so each mu_0-free word
    of length l adds 1 to every cell (m, l..max_length) in the full span.
    """
    if max_length is None:
        max_length = default_length_cap(p, max_degree, ideal)
    lambda_only = ideal == Ideal.LAMBDA_IDEAL
    dims: dict[tuple[int, int], int] = {}

    def rec(word: list[Gen], bound: int, deg: int) -> None:
        l = len(word)
        if lambda_only:
            if word and not (word[-1] & 1):
                dims[deg, l] = dims.get((deg, l), 0) + 1
        else:
            for ll in range(l, max_length + 1):
                dims[deg, ll] = dims.get((deg, ll), 0) + 1
        if l == max_length:
            return
        for g in _candidate_gens(p, bound, max_degree - deg):
            word.append(g)
            rec(word, next_index_bound(g, p), deg + gen_degree(g, p))
            word.pop()

    rec([], n, 0)
    return dims
