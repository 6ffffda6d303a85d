"""Differential matrices per (degree, length) cell and homology dimensions.

The page of a span at a cell (m, l) is ker(d at (m, l)) / im(d at (m+1, l-1));
both dimensions come from exact ranks over F_p. Each cell also carries
pi_index = m + 2n + 1, the homotopy degree the cell contributes to under the
grading convention used by the charts (a reading convention, not a theorem).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .algebra import (
    BasisKey,
    Ideal,
    Word,
    basis,
    default_length_cap,
    enumerate_up_to,
    format_word,
)
from .differential import DEFAULT_SIGN_CONVENTION, SignConvention, d_word
from .fparith import PrimeContext, get_context


class FpMatrix:
    """Sparse matrix over F_p: entries maps (row, col) to a nonzero residue."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: dict | None = None):
        self.rows = rows
        self.cols = cols
        self.entries = entries if entries is not None else {}

    def set(self, r: int, c: int, v: int, p: int) -> None:
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise IndexError(f"entry ({r}, {c}) outside {self.rows} x {self.cols}")
        v %= p
        if v:
            self.entries[r, c] = v
        else:
            self.entries.pop((r, c), None)

    def get(self, r: int, c: int) -> int:
        return self.entries.get((r, c), 0)

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.rows, self.cols), dtype=np.int64)
        for (r, c), v in self.entries.items():
            out[r, c] = v
        return out

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other) -> bool:
        if not isinstance(other, FpMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __repr__(self) -> str:
        return f"<FpMatrix {self.rows}x{self.cols}, {len(self.entries)} nonzero>"


def d_matrix(
    key: BasisKey,
    ctx: PrimeContext | None = None,
    sign: SignConvention = DEFAULT_SIGN_CONVENTION,
    table: dict[tuple[int, int], list[Word]] | None = None,
) -> FpMatrix:
    """Matrix of d from the cell (m, l) to (m - 1, l + 1), columns in basis order.

    Column j holds the coordinates of d applied to the j-th basis monomial.
    A differential term falling outside the target cell would mean the span
    is not closed under d; that is asserted here and surfaces as an error.
    """
    ctx = ctx or get_context(key.p)
    src = _cell(key, key.m, key.l, table)
    tgt = _cell(key, key.m - 1, key.l + 1, table)
    index = {w: i for i, w in enumerate(tgt)}
    mat = FpMatrix(len(tgt), len(src))
    for j, word in enumerate(src):
        for w2, c in d_word(word, ctx, sign).items():
            i = index.get(w2)
            if i is None:
                raise AssertionError(
                    f"d({format_word(word)}) leaves the span at {key}: "
                    f"term {format_word(w2)}"
                )
            mat.entries[i, j] = c
    return mat


def _cell(key: BasisKey, m: int, l: int, table) -> list[Word]:
    if m < 0 or l < 0:
        return []
    if table is not None:
        return table.get((m, l), [])
    return basis(BasisKey(key.p, key.n, m, l, key.ideal))


def rank_fp(mat: FpMatrix, ctx: PrimeContext) -> int:
    """Exact rank over F_p."""
    if mat.rows == 0 or mat.cols == 0:
        return 0
    return _kernels.rank_mod_p(mat.to_dense(), ctx.p)


def pi_index(n: int, m: int) -> int:
    """Homotopy degree m + 2n + 1 attached to degree-m cells of the sphere-level span."""
    return m + 2 * n + 1


@dataclass(frozen=True)
class E2Cell:
    key: BasisKey
    dim_e1: int
    dim_kernel: int
    dim_image_in: int
    dim_e2: int
    pi_index: int

    def to_json(self) -> dict:
        return {
            "p": self.key.p,
            "n": self.key.n,
            "ideal": self.key.ideal.value,
            "m": self.key.m,
            "l": self.key.l,
            "dim_e1": self.dim_e1,
            "dim_kernel": self.dim_kernel,
            "dim_image_in": self.dim_image_in,
            "dim_e2": self.dim_e2,
            "pi_index": self.pi_index,
        }


def e2_page(
    p: int,
    n: int,
    max_degree: int,
    ideal: Ideal = Ideal.LAMBDA_IDEAL,
    max_length: int | None = None,
    include_empty: bool = False,
    jobs: int = 1,
    sign: SignConvention = DEFAULT_SIGN_CONVENTION,
    cache=None,
) -> list[E2Cell]:
    """Homology dimensions for every cell with m <= max_degree.

    Cells with dim_e1 = 0 are omitted unless include_empty is set. The
    incoming differential needs bases one degree above max_degree and one
    length above the cap, so the enumeration runs slightly larger than the
    reported window. Distinct cells are independent; jobs > 1 evaluates them
    concurrently and the output order is deterministic regardless.
    """
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    ctx = get_context(p)
    cap = max_length if max_length is not None else default_length_cap(p, max_degree, ideal)
    table = enumerate_up_to(p, n, max_degree + 1, ideal, max_length=cap + 1)
    matrices: dict[tuple[int, int], FpMatrix] = {}

    def matrix(m: int, l: int) -> FpMatrix:
        got = matrices.get((m, l))
        if got is None:
            got = d_matrix(BasisKey(p, n, m, l, ideal), ctx, sign, table)
            matrices[m, l] = got
        return got

    def compute(m: int, l: int) -> E2Cell:
        key = BasisKey(p, n, m, l, ideal)
        dim_e1 = len(table.get((m, l), ()))
        out_rank = rank_fp(matrix(m, l), ctx) if dim_e1 else 0
        dim_kernel = dim_e1 - out_rank
        in_rank = rank_fp(matrix(m + 1, l - 1), ctx) if l >= 1 and m + 1 <= max_degree + 1 else 0
        return E2Cell(key, dim_e1, dim_kernel, in_rank, dim_kernel - in_rank, pi_index(n, m))

    def cell_dims(m: int, l: int) -> E2Cell:
        if cache is None:
            return compute(m, l)
        payload = cache.get_or_compute(
            ("e2cell", p, n, m, l, ideal.value, sign.value),
            lambda: _cell_payload(compute(m, l)),
        )
        return _cell_from_payload(BasisKey(p, n, m, l, ideal), n, payload)

    wanted = sorted(
        (m, l) for (m, l) in table if m <= max_degree and l <= cap
    )
    if include_empty:
        have = set(wanted)
        for m in range(max_degree + 1):
            for l in range(cap + 1):
                if (m, l) not in have:
                    wanted.append((m, l))
        wanted.sort()
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            cells = list(pool.map(lambda ml: cell_dims(*ml), wanted))
    else:
        cells = [cell_dims(m, l) for m, l in wanted]
    if not include_empty:
        cells = [c for c in cells if c.dim_e1]
    return cells


def _cell_payload(cell: E2Cell) -> dict:
    return {
        "dim_e1": cell.dim_e1,
        "dim_kernel": cell.dim_kernel,
        "dim_image_in": cell.dim_image_in,
        "dim_e2": cell.dim_e2,
    }


def _cell_from_payload(key: BasisKey, n: int, payload: dict) -> E2Cell:
    return E2Cell(
        key,
        payload["dim_e1"],
        payload["dim_kernel"],
        payload["dim_image_in"],
        payload["dim_e2"],
        pi_index(n, key.m),
    )


CSV_HEADER = "p,n,ideal,m,l,dim_e1,dim_e2,pi_index"


def chart_csv(cells: list[E2Cell]) -> str:
    lines = [CSV_HEADER]
    for c in cells:
        k = c.key
        lines.append(
            f"{k.p},{k.n},{k.ideal.value},{k.m},{k.l},{c.dim_e1},{c.dim_e2},{c.pi_index}"
        )
    return "\n".join(lines) + "\n"


def chart_text(cells: list[E2Cell]) -> str:
    """Length (vertical) against pi_index (horizontal); cells show dim_e2.

    Zero is drawn as '.', dimensions above 9 as '+'.
    """
    if not cells:
        return "(empty chart)\n"
    by_pos = {}
    for c in cells:
        by_pos[c.pi_index, c.key.l] = by_pos.get((c.pi_index, c.key.l), 0) + c.dim_e2
    pis = [pi for pi, _ in by_pos]
    ls = [l for _, l in by_pos]
    pi_lo, pi_hi = min(pis), max(pis)
    l_hi = max(ls)
    lines = []
    for l in range(l_hi, -1, -1):
        row = []
        for pi in range(pi_lo, pi_hi + 1):
            v = by_pos.get((pi, l), 0)
            row.append("." if v == 0 else (str(v) if v < 10 else "+"))
        lines.append(f"l={l:<3d} " + " ".join(row))
    axis = []
    for pi in range(pi_lo, pi_hi + 1):
        axis.append(str(pi % 10))
    lines.append("      " + " ".join(axis))
    lines.append(f"      pi_index from {pi_lo} to {pi_hi}")
    return "\n".join(lines) + "\n"
