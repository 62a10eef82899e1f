"""Exact integer linear algebra and homology of cellular chain complexes."""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Iterable, Mapping

from .errors import ComplexInvalid

if TYPE_CHECKING:
    from .boundary import ChainComplex

RINGS = ("Z", "Z2")


@dataclass(frozen=True)
class IntegerMatrix:
    """Sparse integer matrix stored as {(row, col): value} with no zero entries."""

    rows: int
    cols: int
    entries: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (i, j), v in dict(self.entries).items():
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise IndexError(f"entry ({i}, {j}) outside a {self.rows}x{self.cols} matrix")
            v = int(v)
            if v:
                clean[(int(i), int(j))] = v
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_triplets(cls, rows: int, cols: int, triplets: Iterable[tuple[int, int, int]]) -> "IntegerMatrix":
        entries: dict[tuple[int, int], int] = {}
        for i, j, v in triplets:
            if (i, j) in entries:
                raise ValueError(f"duplicate position ({i}, {j})")
            entries[(i, j)] = v
        return cls(rows, cols, entries)

    @classmethod
    def from_dense(cls, dense: list[list[int]], cols: int | None = None) -> "IntegerMatrix":
        rows = len(dense)
        if cols is None:
            cols = len(dense[0]) if dense else 0
        return cls(rows, cols, {(i, j): v for i, row in enumerate(dense) for j, v in enumerate(row) if v})

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls(rows, cols, {})

    def triplets(self) -> list[tuple[int, int, int]]:
        return sorted((i, j, v) for (i, j), v in self.entries.items())

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def __getitem__(self, ij) -> int:
        return self.entries.get(ij, 0)

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        by_row: dict[int, list[tuple[int, int]]] = {}
        for (k, j), v in other.entries.items():
            by_row.setdefault(k, []).append((j, v))
        out: dict[tuple[int, int], int] = {}
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, ()):
                out[(i, j)] = out.get((i, j), 0) + a * b
        return IntegerMatrix(self.rows, other.cols, out)

    def is_zero(self) -> bool:
        return not self.entries


@dataclass(frozen=True)
class SmithNormalFormResult:
    diagonal: tuple[int, ...]
    rank: int

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return self.diagonal[: self.rank]


def _normalize_diagonal(values: list[int]) -> list[int]:
    """Turn any diagonal into the divisibility chain of an equivalent SNF."""
    d = sorted(abs(v) for v in values if v)
    # pairwise (a, b) -> (gcd, lcm) until the chain property holds
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            a, b = d[i], d[j]
            g = math.gcd(a, b)
            if g != a:
                d[i], d[j] = g, a // g * b
    return d


def _dense_pivots(a: list[list[int]], rows: int, cols: int) -> list[int]:
    """Diagonalize a dense matrix in place; returns the nonzero pivots."""
    pivots: list[int] = []
    t = 0
    while t < rows and t < cols:
        # smallest nonzero |entry| in the trailing block keeps coefficient growth down
        best = None
        for i in range(t, rows):
            row = a[i]
            for j in range(t, cols):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        a[t], a[pi] = a[pi], a[t]
        if pj != t:
            for row in a:
                row[t], row[pj] = row[pj], row[t]
        while True:
            p = a[t][t]
            moved = False
            for i in range(t + 1, rows):
                v = a[i][t]
                if v:
                    q = v // p
                    if q:
                        ri, rt = a[i], a[t]
                        for j in range(t, cols):
                            if rt[j]:
                                ri[j] -= q * rt[j]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        moved = True
                        break
            if moved:
                continue
            rt = a[t]
            for j in range(t + 1, cols):
                v = rt[j]
                if v:
                    q = v // p
                    if q:
                        for row in a[t:]:
                            if row[t]:
                                row[j] -= q * row[t]
                    if rt[j]:
                        for row in a:
                            row[t], row[j] = row[j], row[t]
                        moved = True
                        break
            if not moved:
                break
        pivots.append(a[t][t])
        t += 1
    return pivots


def _eliminate_units(rows: dict[int, dict[int, int]]) -> int:
    """Pivot on +-1 entries with sparse row operations; returns how many were used.

    Row r with a unit at column c clears the rest of column c, after which
    column operations clear row r without touching anything else, so both are
    dropped.  Columns are visited shortest first to keep fill-in low.
    """
    cols: dict[int, set[int]] = {}
    for i, row in rows.items():
        for j in row:
            cols.setdefault(j, set()).add(i)
    heap = [(len(members), j) for j, members in cols.items()]
    heapq.heapify(heap)
    units = 0
    while heap:
        count, c = heapq.heappop(heap)
        members = cols.get(c)
        if not members or len(members) != count:
            continue
        candidates = [i for i in members if abs(rows[i][c]) == 1]
        if not candidates:
            continue
        r = min(candidates, key=lambda i: len(rows[i]))
        pivot_row = rows.pop(r)
        p = pivot_row[c]
        for j in pivot_row:
            cols[j].discard(r)
        touched = set()
        for i in members - {r}:
            row = rows[i]
            f = row[c] * p  # p = +-1, so row[c] / p == row[c] * p
            for j, v in pivot_row.items():
                new = row.get(j, 0) - f * v
                if new:
                    if j not in row:
                        cols[j].add(i)
                    row[j] = new
                elif j in row:
                    del row[j]
                    cols[j].discard(i)
            touched.update(pivot_row)
        del cols[c]
        units += 1
        for j in touched - {c}:
            if cols.get(j):
                heapq.heappush(heap, (len(cols[j]), j))
    return units


def smith_normal_form(m: IntegerMatrix) -> SmithNormalFormResult:
    rows, cols = m.rows, m.cols
    content = 0
    for v in m.entries.values():
        content = math.gcd(content, v)
    if not content:
        return SmithNormalFormResult((0,) * min(rows, cols), 0)
    sparse: dict[int, dict[int, int]] = {}
    for (i, j), v in m.entries.items():
        sparse.setdefault(i, {})[j] = v // content
    units = _eliminate_units(sparse)
    # whatever is left has no unit entries; finish densely
    live_rows = [i for i, row in sparse.items() if row]
    live_cols = sorted({j for i in live_rows for j in sparse[i]})
    where = {j: k for k, j in enumerate(live_cols)}
    dense = [[0] * len(live_cols) for _ in live_rows]
    for k, i in enumerate(live_rows):
        for j, v in sparse[i].items():
            dense[k][where[j]] = v
    rest = _dense_pivots(dense, len(live_rows), len(live_cols))
    # content divides every content * v, so the unit pivots already sit at the front of the chain
    chain = [content] * units + _normalize_diagonal([content * v for v in rest])
    r = len(chain)
    return SmithNormalFormResult(tuple(chain) + (0,) * (min(rows, cols) - r), r)


def rank_mod2(m: IntegerMatrix) -> int:
    rows: dict[int, int] = {}
    for (i, j), v in m.entries.items():
        if v % 2:
            rows[i] = rows.get(i, 0) ^ (1 << j)
    basis: dict[int, int] = {}  # leading bit -> row
    for r in rows.values():
        while r:
            lead = r.bit_length() - 1
            if lead in basis:
                r ^= basis[lead]
            else:
                basis[lead] = r
                break
    return len(basis)


@dataclass(frozen=True)
class HomologyGroup:
    degree: int
    betti: int
    torsion: tuple[int, ...] = ()
    ring: str = "Z"

    def __post_init__(self):
        if self.ring not in RINGS:
            raise ValueError(f"ring must be one of {RINGS}, got {self.ring!r}")
        t = tuple(self.torsion)
        if t and self.ring == "Z2":
            raise ValueError("a Z2 vector space has no torsion")
        if any(d <= 1 for d in t) or any(t[k + 1] % t[k] for k in range(len(t) - 1)):
            raise ValueError(f"torsion {t} is not a divisibility chain of integers > 1")
        object.__setattr__(self, "torsion", t)

    def __str__(self):
        parts = []
        base = self.ring
        if self.betti == 1:
            parts.append(base)
        elif self.betti > 1:
            parts.append(f"{base}^{self.betti}")
        parts.extend(f"Z{d}" for d in self.torsion)
        return " + ".join(parts) or "0"

    @classmethod
    def parse(cls, degree: int, text: str, ring: str = "Z") -> "HomologyGroup":
        """Inverse of ``str``: 'Z^2 + Z2 + Z4' -> betti 2, torsion (2, 4).

        Over Z2 the only summands are powers of the field, written Z2 or Z2^k.
        """
        text = text.strip()
        if text == "0":
            return cls(degree, 0, (), ring)
        betti = 0
        torsion = []
        for part in text.split("+"):
            part = part.strip()
            if part == ring:
                betti += 1
            elif part.startswith(ring + "^") and part[len(ring) + 1:].isdigit():
                betti += int(part[len(ring) + 1:])
            elif ring == "Z2":
                raise ValueError(f"cannot parse Z2 summand {part!r}")
            elif part.startswith("Z") and part[1:].isdigit():
                torsion.append(int(part[1:]))
            else:
                raise ValueError(f"cannot parse group summand {part!r}")
        return cls(degree, betti, tuple(torsion), ring)


def check_boundary_squared(cx: "ChainComplex") -> list[tuple[int, tuple[int, int], int]]:
    """Nonzero entries of d_{k-1} d_k, as (k, (row, col), value)."""
    bad = []
    for k in range(2, cx.top + 1):
        prod = cx.matrix(k - 1) @ cx.matrix(k)
        bad.extend((k, ij, v) for ij, v in sorted(prod.entries.items()))
    return bad


def homology_groups(cx: "ChainComplex", ring: str = "Z") -> list[HomologyGroup]:
    if ring not in RINGS:
        raise ValueError(f"ring must be one of {RINGS}, got {ring!r}")
    bad = check_boundary_squared(cx)
    if bad:
        k, ij, v = bad[0]
        raise ComplexInvalid(f"d_{k - 1} d_{k} has entry {v} at {ij}")
    top = cx.top
    if ring == "Z":
        snf = {k: smith_normal_form(cx.matrix(k)) for k in range(1, top + 1)}
        rank = {k: s.rank for k, s in snf.items()}
    else:
        rank = {k: rank_mod2(cx.matrix(k)) for k in range(1, top + 1)}
    out = []
    for k in range(top + 1):
        n = len(cx.cells[k])
        betti = n - rank.get(k, 0) - rank.get(k + 1, 0)
        torsion: tuple[int, ...] = ()
        if ring == "Z" and k + 1 in snf:
            torsion = tuple(d for d in snf[k + 1].invariant_factors if d > 1)
        out.append(HomologyGroup(k, betti, torsion, ring))
    return out


def euler_characteristic(cx: "ChainComplex") -> int:
    return sum((-1) ** k * len(cells) for k, cells in enumerate(cx.cells))


def poincare_table(cx: "ChainComplex", ring: str = "Z2") -> list[int]:
    return [h.betti for h in homology_groups(cx, ring)]
