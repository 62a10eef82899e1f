"""Reduced root systems of types A-G built from Cartan data.

Roots are integer coordinate tuples over the simple basis.  The invariant
inner product is kept as a matrix of Fractions normalized so that long
roots have squared length 2; every other quantity is an exact integer.

Simple roots are numbered from 1.  Types A-F follow Bourbaki; for G2 the
first simple root is the *long* one, which is the labelling under which
the positive roots read a1, a2, a1+a2, a1+2a2, a1+3a2, 2a1+3a2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Union

from .errors import InvalidSpec, MissingRoot, NotARoot, OrbitInconsistent

Root = tuple[int, ...]

FAMILIES = ("A", "B", "C", "D", "E", "F", "G")

# Closed-form numbers of positive roots, used as a construction sanity check.
_POSITIVE_COUNT = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "G": lambda n: 6,
}


@dataclass(frozen=True)
class RootSystemSpec:
    family: str
    rank: int

    def __post_init__(self):
        family = str(self.family).upper()
        object.__setattr__(self, "family", family)
        if family not in FAMILIES:
            raise InvalidSpec(f"unknown family {self.family!r}; expected one of {', '.join(FAMILIES)}")
        if isinstance(self.rank, bool) or not isinstance(self.rank, int):
            raise InvalidSpec(f"rank must be an integer, got {self.rank!r}")
        n = self.rank
        ok = {
            "A": n >= 1,
            "B": n >= 2,
            "C": n >= 2,
            "D": n >= 3,
            "E": n in (6, 7, 8),
            "F": n == 4,
            "G": n == 2,
        }[family]
        if not ok:
            raise InvalidSpec(f"rank {n} is not admissible for type {family}")

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"


def _gram_matrix(spec: RootSystemSpec) -> list[list[Fraction]]:
    """Inner products of the simple roots, long roots of squared length 2."""
    n = spec.rank
    f = spec.family
    g = [[Fraction(0)] * n for _ in range(n)]

    def link(i, j, value):
        g[i][j] = g[j][i] = Fraction(value)

    if f in ("A", "B", "C", "D"):
        for i in range(n):
            g[i][i] = Fraction(2)
        chain = n - 1 if f == "D" else n
        for i in range(chain - 1):
            link(i, i + 1, -1)
        if f == "B":
            g[n - 1][n - 1] = Fraction(1)
        elif f == "C":
            for i in range(n - 1):
                g[i][i] = Fraction(1)
            for i in range(n - 2):
                link(i, i + 1, Fraction(-1, 2))
            link(n - 2, n - 1, -1)
        elif f == "D":
            link(n - 3, n - 1, -1)
    elif f == "E":
        for i in range(n):
            g[i][i] = Fraction(2)
        link(0, 2, -1)
        link(1, 3, -1)
        for i in range(2, n - 1):
            link(i, i + 1, -1)
    elif f == "F":
        g[0][0] = g[1][1] = Fraction(2)
        g[2][2] = g[3][3] = Fraction(1)
        link(0, 1, -1)
        link(1, 2, -1)
        link(2, 3, Fraction(-1, 2))
    elif f == "G":
        g[0][0] = Fraction(2)
        g[1][1] = Fraction(2, 3)
        link(0, 1, -1)
    return g


def _add(a: Root, b: Root, k: int = 1) -> Root:
    return tuple(x + k * y for x, y in zip(a, b))


def _neg(a: Root) -> Root:
    return tuple(-x for x in a)


@dataclass(frozen=True, eq=False)
class RootSystem:
    spec: RootSystemSpec
    simple: tuple[Root, ...]
    positive: tuple[Root, ...]
    cartan: tuple[tuple[int, ...], ...]
    form: tuple[tuple[Fraction, ...], ...]

    @property
    def rank(self) -> int:
        return self.spec.rank

    @property
    def name(self) -> str:
        return self.spec.name

    @cached_property
    def roots(self) -> tuple[Root, ...]:
        """Signed roots: positives in order, then their negatives in the same order."""
        return self.positive + tuple(_neg(r) for r in self.positive)

    @cached_property
    def root_index(self) -> dict[Root, int]:
        return {r: k for k, r in enumerate(self.roots)}

    def index(self, r: Root) -> int:
        try:
            return self.root_index[tuple(r)]
        except KeyError:
            raise NotARoot(f"{tuple(r)} is not a root of {self.name}") from None

    def is_positive_index(self, k: int) -> bool:
        return k < len(self.positive)

    def inner(self, a: Root, b: Root) -> Fraction:
        g = self.form
        n = self.rank
        return sum(
            (a[i] * b[j] * g[i][j] for i in range(n) for j in range(n) if a[i] and b[j]),
            Fraction(0),
        )

    def height(self, r: Root) -> int:
        return sum(r)

    @cached_property
    def simple_reflection_perms(self) -> tuple[tuple[int, ...], ...]:
        """perm[i-1][k] is the index of r_i applied to root k."""
        return tuple(
            tuple(self.index(reflect(self, i, r)) for r in self.roots) for i in range(1, self.rank + 1)
        )

    @cached_property
    def simple_pairings(self) -> tuple[tuple[int, ...], ...]:
        """pairings[i-1][k] = 2<alpha_i, root k>/<alpha_i, alpha_i>."""
        return tuple(tuple(killing_number(self, a, r) for r in self.roots) for a in self.simple)

    def support(self, r: Root) -> frozenset[int]:
        return frozenset(i + 1 for i, c in enumerate(r) if c)


def killing_number(rs: RootSystem, a: Root, b: Root) -> int:
    """2<a,b>/<a,a> as an exact integer."""
    rs.index(a)
    rs.index(b)
    value = 2 * rs.inner(a, b) / rs.inner(a, a)
    assert value.denominator == 1, f"non-integral Killing number for {a}, {b}"
    return int(value)


def reflect(rs: RootSystem, idx: int, r: Root) -> Root:
    """Reflect r in the hyperplane of the simple root with 1-based index idx."""
    if not 1 <= idx <= rs.rank:
        raise InvalidSpec(f"simple root index {idx} out of range 1..{rs.rank}")
    alpha = rs.simple[idx - 1]
    r = tuple(r)
    if len(r) != rs.rank:
        raise NotARoot(f"{r} has wrong length for {rs.name}")
    # Only validate when the positive list exists; during construction it does not yet.
    if rs.positive:
        rs.index(r)
    value = 2 * rs.inner(alpha, r) / rs.inner(alpha, alpha)
    assert value.denominator == 1
    return _add(r, alpha, -int(value))


def reflect_root(rs: RootSystem, beta: Root, r: Root) -> Root:
    """Reflection r_beta(r) for an arbitrary root beta."""
    return _add(tuple(r), tuple(beta), -killing_number(rs, beta, r))


def build_root_system(spec: RootSystemSpec) -> RootSystem:
    if not isinstance(spec, RootSystemSpec):
        raise InvalidSpec(f"expected RootSystemSpec, got {spec!r}")
    n = spec.rank
    g = _gram_matrix(spec)
    simple = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    cartan = []
    for i in range(n):
        row = []
        for j in range(n):
            value = 2 * g[i][j] / g[i][i]
            assert value.denominator == 1
            row.append(int(value))
        cartan.append(tuple(row))
    draft = RootSystem(spec, simple, (), tuple(cartan), tuple(tuple(r) for r in g))

    # closure of the simple roots under simple reflections, kept positive
    found = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for r in frontier:
            for i in range(1, n + 1):
                s = reflect(draft, i, r)
                if all(c >= 0 for c in s) and s not in found:
                    found.add(s)
                    nxt.append(s)
        frontier = nxt

    positive = tuple(sorted(found, key=lambda r: (sum(r), tuple(-c for c in r))))
    # weyl relies on simple root i sitting at position i - 1
    assert positive[:n] == simple
    expected = _POSITIVE_COUNT[spec.family](n)
    if len(positive) != expected:
        raise AssertionError(f"{spec.name}: built {len(positive)} positive roots, expected {expected}")
    return RootSystem(spec, simple, positive, tuple(cartan), tuple(tuple(r) for r in g))


def root_system(family: str, rank: int) -> RootSystem:
    return build_root_system(RootSystemSpec(family, rank))


def as_root(rs: RootSystem, coords) -> Root:
    """Validate a coordinate vector as a root of rs."""
    r = tuple(int(c) for c in coords)
    if any(c > 0 for c in r) and any(c < 0 for c in r):
        raise NotARoot(f"{r} mixes signs")
    rs.index(r)
    return r


def root_orbits(rs: RootSystem) -> list[frozenset[Root]]:
    """Weyl orbits of roots, restricted to positive roots."""
    parent = {r: r for r in rs.positive}

    def find(r):
        while parent[r] != r:
            parent[r] = parent[parent[r]]
            r = parent[r]
        return r

    for r in rs.positive:
        for i in range(1, rs.rank + 1):
            s = reflect(rs, i, r)
            if any(c < 0 for c in s):
                s = _neg(s)
            a, b = find(r), find(s)
            if a != b:
                parent[b] = a
    groups: dict[Root, set[Root]] = {}
    for r in rs.positive:
        groups.setdefault(find(r), set()).add(r)
    return [frozenset(v) for v in sorted(groups.values(), key=lambda s: min(rs.index(r) for r in s))]


@dataclass(frozen=True, eq=False)
class MultiplicityMap:
    """Root-space dimensions, one positive integer per positive root."""

    rs: RootSystem
    values: tuple[int, ...]
    preset: str = "custom"

    def __getitem__(self, r) -> int:
        k = self.rs.index(tuple(r))
        return self.values[k % len(self.values)]

    def of_index(self, k: int) -> int:
        return self.values[k % len(self.values)]

    def simple(self, idx: int) -> int:
        return self.values[idx - 1]

    def as_dict(self) -> dict[Root, int]:
        return dict(zip(self.rs.positive, self.values))

    def __eq__(self, other):
        return isinstance(other, MultiplicityMap) and self.rs is other.rs and self.values == other.values

    def __hash__(self):
        return hash(self.values)


MultiplicityPreset = Union[str, Mapping[Root, int]]


def multiplicity_map(rs: RootSystem, preset: MultiplicityPreset = "split") -> MultiplicityMap:
    """Multiplicities from a preset name ('split', 'complex') or an explicit map."""
    n = len(rs.positive)
    if isinstance(preset, str):
        if preset == "split":
            return MultiplicityMap(rs, (1,) * n, "split")
        if preset == "complex":
            return MultiplicityMap(rs, (2,) * n, "complex")
        raise InvalidSpec(f"unknown multiplicity preset {preset!r}")

    given = {}
    for r, m in preset.items():
        r = as_root(rs, r)
        if any(c < 0 for c in r):
            r = _neg(r)
        if isinstance(m, bool) or not isinstance(m, int) or m < 1:
            raise InvalidSpec(f"multiplicity of {r} must be a positive integer, got {m!r}")
        if r in given and given[r] != m:
            raise OrbitInconsistent(f"conflicting multiplicities for {r}")
        given[r] = m
    missing = [r for r in rs.positive if r not in given]
    if missing:
        raise MissingRoot(f"no multiplicity given for root(s) {missing}")
    for orbit in root_orbits(rs):
        seen = {given[r] for r in orbit}
        if len(seen) > 1:
            raise OrbitInconsistent(
                f"multiplicities {sorted(seen)} differ on the Weyl orbit of {min(orbit, key=rs.index)}"
            )
    return MultiplicityMap(rs, tuple(given[r] for r in rs.positive), "custom")
