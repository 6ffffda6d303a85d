"""Nonvanishing certificates for homotopy groups of the 2-sphere, and composition arithmetic.

Every dimension n >= 2 gets a machine-checkable certificate:

  * CURTIS_RESIDUE when n is not 1 mod 8;
  * otherwise n = 8l + 1, and the odd-primary family supplies
    a Z/p summand in dimension 2(p-1)k + 1 whenever k is not 1 mod p
    (statement A) or not 0 mod p (statement B). With p = 3 and k = 2l at
    least one of the two always applies, since 0 and 1 differ mod p.

mori_check and final_remark_instance mechanize the inequality conditions
under which two alpha-family elements compose nontrivially; the exponent u
comes from the product of their complex e-invariants, -p^(-f-1) each, so
u = f + g + 2.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fparith import get_context, is_odd_prime, valuation_p

CURTIS_RESIDUE = "CURTIS_RESIDUE"
ODD_PRIMARY = "ODD_PRIMARY"


@dataclass(frozen=True)
class Certificate:
    """Why pi_n of the 2-sphere is nonzero, for one n."""

    n: int
    kind: str
    residue: int | None = None  # n mod 8, for CURTIS_RESIDUE
    p: int | None = None
    k: int | None = None
    statement: str | None = None  # "A" or "B"

    def validate(self) -> None:
        if self.n < 2:
            raise ValueError(f"certificate for n={self.n} < 2")
        if self.kind == CURTIS_RESIDUE:
            if self.n % 8 == 1:
                raise ValueError(f"n={self.n} is 1 mod 8; the residue family does not apply")
            if self.residue != self.n % 8:
                raise ValueError(f"residue {self.residue} != {self.n} mod 8")
        elif self.kind == ODD_PRIMARY:
            if self.n < 3:
                raise ValueError("odd-primary certificates need n >= 3")
            if not (self.p and is_odd_prime(self.p)) or not self.k or self.k < 1:
                raise ValueError(f"bad odd-primary payload p={self.p}, k={self.k}")
            if 2 * (self.p - 1) * self.k + 1 != self.n:
                raise ValueError(f"(p={self.p}, k={self.k}) does not reach n={self.n}")
            if self.statement == "A":
                if not statement_A_applies(self.p, self.k):
                    raise ValueError(f"statement A fails for p={self.p}, k={self.k}")
            elif self.statement == "B":
                if not statement_B_applies(self.p, self.k):
                    raise ValueError(f"statement B fails for p={self.p}, k={self.k}")
            else:
                raise ValueError(f"unknown statement tag {self.statement!r}")
        else:
            raise ValueError(f"unknown certificate kind {self.kind!r}")

    def to_json(self) -> dict:
        out: dict = {"n": self.n, "kind": self.kind}
        if self.kind == CURTIS_RESIDUE:
            out["residue"] = self.residue
        else:
            out["p"] = self.p
            out["k"] = self.k
            out["statement"] = self.statement
        return out


def statement_A_applies(p: int, k: int) -> bool:
    """Z/p in dimension 2(p-1)k + 1 via the first route: k not 1 mod p."""
    return k % p != 1


def statement_B_applies(p: int, k: int) -> bool:
    """Z/p in dimension 2(p-1)k + 1 via the second route: k not 0 mod p."""
    return k % p != 0


def _odd_primary(n: int, p: int) -> Certificate | None:
    span = 2 * (p - 1)
    if (n - 1) % span:
        return None
    k = (n - 1) // span
    if k < 1:
        return None
    if statement_A_applies(p, k):
        return Certificate(n, ODD_PRIMARY, p=p, k=k, statement="A")
    return Certificate(n, ODD_PRIMARY, p=p, k=k, statement="B")


def certify_dimension(n: int) -> Certificate:
    """A certificate that pi_n of the 2-sphere is nonzero, n >= 2.

    Prefers the residue family; dimensions 1 mod 8 fall back to p = 3 with
    k = (n - 1) / 4, which is an even integer there, so one of the two
    odd-primary statements always applies. Those dimensions have n >= 9,
    where the groups of the 2- and 3-sphere agree.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if n % 8 != 1:
        return Certificate(n, CURTIS_RESIDUE, residue=n % 8)
    cert = _odd_primary(n, 3)
    if cert is None:  # n = 8l + 1 always has (n - 1) % 4 == 0
        raise AssertionError(f"no certificate for n={n}")
    return cert


def all_certificates(n: int, p_bound: int = 50) -> list[Certificate]:
    """Every available certificate for n: the residue one plus all odd-primary (p, k)."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    out = []
    if n % 8 != 1:
        out.append(Certificate(n, CURTIS_RESIDUE, residue=n % 8))
    if n >= 3:
        for p in range(3, p_bound + 1, 2):
            if is_odd_prime(p):
                cert = _odd_primary(n, p)
                if cert is not None:
                    out.append(cert)
    return out


@dataclass(frozen=True)
class MoriParams:
    """Arguments of the composition criterion; u is pinned by the e-invariants."""

    p: int
    f: int
    g: int
    i: int
    j: int

    def __post_init__(self):
        if not is_odd_prime(self.p):
            raise ValueError(f"p must be an odd prime, got {self.p}")
        if self.f < 0 or self.g < 0 or self.i < 1 or self.j < 1:
            raise ValueError(f"need f, g >= 0 and i, j >= 1, got {self}")

    @property
    def u(self) -> int:
        # e-invariants multiply to p^-(f+g+2)
        return self.f + self.g + 2


def mori_check(params: MoriParams, n: int) -> bool:
    """Both inequality chains of the composition criterion, for this n."""
    ctx = get_context(params.p)
    p, f, g, i, j, u = params.p, params.f, params.g, params.i, params.j, params.u
    big = i * (p - 1) * p**f
    chain1 = valuation_p(j, ctx) + g + 1 < u <= valuation_p(i, ctx) + f + 1 + big
    mixed = valuation_p(i * p**f + j * p**g, ctx)
    lo = u + mixed - valuation_p(i, ctx) - f - big
    hi = u + mixed - valuation_p(j, ctx) - g
    return chain1 and lo <= n < hi


def mori_window(params: MoriParams) -> tuple[int, int]:
    """The half-open interval of n accepted by the second chain."""
    ctx = get_context(params.p)
    p, f, g, i, j, u = params.p, params.f, params.g, params.i, params.j, params.u
    big = i * (p - 1) * p**f
    mixed = valuation_p(i * p**f + j * p**g, ctx)
    lo = u + mixed - valuation_p(i, ctx) - f - big
    hi = u + mixed - valuation_p(j, ctx) - g
    return lo, hi


@dataclass(frozen=True)
class FinalRemarkResult:
    params: MoriParams
    verdict: bool
    target_dimension: int
    n_window: tuple[int, int]  # half-open, already clipped to n >= 1
    checked_ns: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "p": self.params.p,
            "k": (self.params.i + 1) // self.params.p**2,
            "f": self.params.f,
            "g": self.params.g,
            "i": self.params.i,
            "j": self.params.j,
            "u": self.params.u,
            "verdict": self.verdict,
            "target_dimension": self.target_dimension,
            "n_window": list(self.n_window),
        }


def final_remark_instance(p: int, k: int) -> FinalRemarkResult:
    """The parameter family g = 0, f = p - 2, i = p^2 k - 1, j = p^(p-2).

    Checks the composition criterion over the whole admissible n-window
    (clipped to n >= 1; the criterion itself does not single out one n) and
    reports the dimension 2(p-1)(p^p k + 1) + 1 targeted by the construction.
    """
    if not is_odd_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    params = MoriParams(p, p - 2, 0, p * p * k - 1, p ** (p - 2))
    lo, hi = mori_window(params)
    lo = max(lo, 1)
    checked = tuple(n for n in range(lo, hi) if mori_check(params, n))
    verdict = bool(checked) and len(checked) == max(hi - lo, 0)
    target = 2 * (p - 1) * (p**p * k + 1) + 1
    return FinalRemarkResult(params, verdict, target, (lo, hi), checked)
