"""Weyl group elements as permutations of the signed roots.

An element w is stored through its action on roots: ``perm[k]`` is the index
of w(root_k) in ``RootSystem.roots``.  Composition is ``(uv)[k] = u[v[k]]``.
Each element carries its canonical reduced word, obtained by repeatedly
splitting off the smallest-index left descent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

from .errors import GroupTooLarge, InvalidSpec, NotMinimalRepresentative
from .root_system import MultiplicityMap, Root, RootSystem

DEFAULT_GROUP_CAP = 10**6

Perm = tuple[int, ...]
Word = tuple[int, ...]


def weyl_group_order(rs: RootSystem) -> int:
    n = rs.rank
    return {
        "A": lambda: math.factorial(n + 1),
        "B": lambda: 2**n * math.factorial(n),
        "C": lambda: 2**n * math.factorial(n),
        "D": lambda: 2 ** (n - 1) * math.factorial(n),
        "E": lambda: {6: 51840, 7: 2903040, 8: 696729600}[n],
        "F": lambda: 1152,
        "G": lambda: 12,
    }[rs.spec.family]()


@dataclass(frozen=True, eq=False)
class WeylElement:
    perm: Perm
    word: Word
    index: int
    group: "WeylGroup" = field(repr=False)

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.perm == other.perm

    def __hash__(self):
        return hash(self.perm)

    def __repr__(self):
        letters = "".join(f"r{i}" for i in self.word) or "1"
        return f"WeylElement({letters})"

    @property
    def length(self) -> int:
        return len(self.word)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return self.group.from_perm(tuple(self.perm[k] for k in other.perm))

    def __call__(self, root: Root) -> Root:
        rs = self.group.rs
        return rs.roots[self.perm[rs.index(root)]]

    @cached_property
    def inverse_perm(self) -> Perm:
        inv = [0] * len(self.perm)
        for k, v in enumerate(self.perm):
            inv[v] = k
        return tuple(inv)

    @property
    def inverse(self) -> "WeylElement":
        return self.group.from_perm(self.inverse_perm)

    @cached_property
    def inversion_indices(self) -> frozenset[int]:
        """Indices of positive roots beta with w^{-1} beta < 0."""
        npos = len(self.perm) // 2
        return frozenset(k for k in range(npos) if self.inverse_perm[k] >= npos)

    def is_left_descent(self, i: int) -> bool:
        return (i - 1) in self.inversion_indices

    def is_right_descent(self, i: int) -> bool:
        return self.perm[i - 1] >= len(self.perm) // 2


class WeylGroup(Sequence[WeylElement]):
    """All elements of W, in order of length then canonical word."""

    def __init__(self, rs: RootSystem, perms_and_words: Iterable[tuple[Perm, Word]]):
        self.rs = rs
        items = sorted(perms_and_words, key=lambda pw: (len(pw[1]), pw[1]))
        self._elements = [WeylElement(tuple(p), tuple(wd), k, self) for k, (p, wd) in enumerate(items)]
        self._by_perm = {w.perm: w for w in self._elements}
        self.simple_perms = rs.simple_reflection_perms
        self.identity = self._elements[0]
        self.simple = tuple(self.from_perm(p) for p in self.simple_perms)

    def __len__(self):
        return len(self._elements)

    def __getitem__(self, k):
        return self._elements[k]

    def __iter__(self) -> Iterator[WeylElement]:
        return iter(self._elements)

    def from_perm(self, perm: Perm) -> WeylElement:
        return self._by_perm[perm]

    def from_word(self, word: Iterable[int]) -> WeylElement:
        return self.from_perm(evaluate_word(self.rs, word))

    def left_mul(self, i: int, w: WeylElement) -> WeylElement:
        s = self.simple_perms[i - 1]
        return self._by_perm[tuple(s[k] for k in w.perm)]

    def right_mul(self, w: WeylElement, i: int) -> WeylElement:
        s = self.simple_perms[i - 1]
        return self._by_perm[tuple(w.perm[k] for k in s)]

    @cached_property
    def longest(self) -> WeylElement:
        return self._elements[-1]

    def reflection(self, beta: Root) -> WeylElement:
        from .root_system import reflect_root

        rs = self.rs
        return self.from_perm(tuple(rs.index(reflect_root(rs, beta, r)) for r in rs.roots))

    def length_histogram(self) -> list[int]:
        hist = [0] * (self.longest.length + 1)
        for w in self._elements:
            hist[w.length] += 1
        return hist


def evaluate_word(rs: RootSystem, word: Iterable[int]) -> Perm:
    """Permutation of the product r_{i1} r_{i2} ... of simple reflections."""
    perm = tuple(range(len(rs.roots)))
    simple = rs.simple_reflection_perms
    for i in word:
        if not 1 <= i <= rs.rank:
            raise InvalidSpec(f"letter {i} out of range 1..{rs.rank}")
        s = simple[i - 1]
        perm = tuple(perm[k] for k in s)
    return perm


def _canonical_words(rs: RootSystem, perms_by_length: list[list[Perm]]) -> dict[Perm, Word]:
    npos = len(rs.positive)
    simple = rs.simple_reflection_perms
    words: dict[Perm, Word] = {}
    for level in perms_by_length:
        for p in level:
            if not words and all(p[k] == k for k in range(len(p))):
                words[p] = ()
                continue
            inv = [0] * len(p)
            for k, v in enumerate(p):
                inv[v] = k
            # smallest i with w^{-1}(alpha_i) < 0
            i = next(i for i in range(rs.rank) if inv[i] >= npos)
            s = simple[i]
            rest = tuple(s[k] for k in p)
            words[p] = (i + 1,) + words[rest]
    return words


def generate_weyl_group(rs: RootSystem, cap: int = DEFAULT_GROUP_CAP) -> WeylGroup:
    order = weyl_group_order(rs)
    if order > cap:
        raise GroupTooLarge(f"|W({rs.name})| = {order} exceeds the cap {cap}")
    npos = len(rs.positive)
    simple = rs.simple_reflection_perms
    identity = tuple(range(2 * npos))
    seen = {identity}
    levels = [[identity]]
    while True:
        nxt = []
        for p in levels[-1]:
            for i, s in enumerate(simple):
                if p[i] < npos:  # w(alpha_i) > 0, so w r_i is longer
                    q = tuple(p[k] for k in s)
                    if q not in seen:
                        seen.add(q)
                        nxt.append(q)
        if not nxt:
            break
        levels.append(nxt)
    assert len(seen) == order, f"enumerated {len(seen)} elements, expected {order}"
    words = _canonical_words(rs, levels)
    return WeylGroup(rs, words.items())


def inversion_set(w: WeylElement) -> frozenset[Root]:
    rs = w.group.rs
    return frozenset(rs.roots[k] for k in w.inversion_indices)


def inversion_sequence(w: WeylElement, word: Optional[Sequence[int]] = None) -> list[Root]:
    """Inversion set listed as a1, r1 a2, r1 r2 a3, ... along a reduced word."""
    rs = w.group.rs
    word = w.word if word is None else tuple(word)
    out = []
    perm = tuple(range(len(rs.roots)))
    for i in word:
        out.append(rs.roots[perm[i - 1]])
        s = rs.simple_reflection_perms[i - 1]
        perm = tuple(perm[k] for k in s)
    return out


def canonical_reduced_word(w: WeylElement) -> Word:
    return w.word


def bruhat_leq(u: WeylElement, v: WeylElement) -> bool:
    """u <= v in the Bruhat-Chevalley order, by the lifting property."""
    group = v.group
    while True:
        if u.length > v.length:
            return False
        if v.length == 0:
            return u.length == 0
        s = v.word[0]
        if u.is_left_descent(s):
            u = group.left_mul(s, u)
        v = group.left_mul(s, v)


def principal_involution(group: WeylGroup) -> WeylElement:
    return group.longest


@dataclass(frozen=True)
class ThetaSubset:
    indices: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "indices", frozenset(int(i) for i in self.indices))

    def __iter__(self):
        return iter(sorted(self.indices))

    def __len__(self):
        return len(self.indices)

    def __contains__(self, i):
        return i in self.indices

    def validate(self, rs: RootSystem) -> "ThetaSubset":
        bad = [i for i in self.indices if not 1 <= i <= rs.rank]
        if bad:
            raise InvalidSpec(f"theta indices {sorted(bad)} outside 1..{rs.rank}")
        return self


def theta_subset(rs: RootSystem, indices: Iterable[int] = ()) -> ThetaSubset:
    return ThetaSubset(frozenset(indices)).validate(rs)


def theta_root_indices(rs: RootSystem, theta: ThetaSubset) -> frozenset[int]:
    """Indices of positive roots whose support lies in theta."""
    return frozenset(
        k for k, r in enumerate(rs.positive) if rs.support(r) <= theta.indices
    )


def is_minimal_representative(w: WeylElement, theta: ThetaSubset) -> bool:
    # w maps every positive root of <theta> to a positive root; it suffices to test simple ones
    return not any(w.is_right_descent(j) for j in theta.indices)


def minimal_representative(w: WeylElement, theta: ThetaSubset) -> WeylElement:
    group = w.group
    while True:
        j = next((j for j in sorted(theta.indices) if w.is_right_descent(j)), None)
        if j is None:
            return w
        w = group.right_mul(w, j)


@dataclass(frozen=True)
class CosetRep:
    w: WeylElement
    theta: ThetaSubset
    members: tuple[WeylElement, ...] = field(default=(), compare=False)


def parabolic_subgroup(group: WeylGroup, theta: ThetaSubset) -> list[WeylElement]:
    return [w for w in group if set(w.word) <= theta.indices]


def minimal_coset_representatives(group: WeylGroup, theta: ThetaSubset) -> list[CosetRep]:
    """One minimal element per left coset w W_theta, in enumeration order."""
    theta.validate(group.rs)
    if not theta.indices:
        return [CosetRep(w, theta, (w,)) for w in group]
    members: dict[WeylElement, list[WeylElement]] = {}
    for w in group:
        members.setdefault(minimal_representative(w, theta), []).append(w)
    reps = sorted(members, key=lambda w: w.index)
    return [CosetRep(w, theta, tuple(members[w])) for w in reps]


def cell_dimension(w: WeylElement, mult: MultiplicityMap, theta: ThetaSubset = ThetaSubset()) -> int:
    """Dimension of the Schubert cell of w in the flag manifold of type theta."""
    if theta.indices and not is_minimal_representative(w, theta):
        raise NotMinimalRepresentative(f"{w!r} is not minimal in its coset for theta={sorted(theta.indices)}")
    return sum(mult.of_index(k) for k in w.inversion_indices)
