"""Independent reference computations used by the test-suite.

Nothing here goes through the package's own algorithms for the quantity
being checked: roots come from root strings on the Cartan matrix, Bruhat
order from subwords and from reflection closure, SNF from determinantal
divisors, length histograms from exponents or inversion counting.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

# Cartan matrices written out by hand, A[i][j] = <alpha_j, alpha_i^vee>
# (row i is the coroot).  G2 has alpha_1 long.
def cartan_reference(family: str, n: int) -> list[list[int]]:
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
    if family in "ABC":
        for i in range(n - 1):
            a[i][i + 1] = a[i + 1][i] = -1
        if family == "B" and n >= 2:
            a[n - 1][n - 2] = -2
        if family == "C" and n >= 2:
            a[n - 2][n - 1] = -2
    elif family == "D":
        for i in range(n - 2):
            a[i][i + 1] = a[i + 1][i] = -1
        a[n - 3][n - 1] = a[n - 1][n - 3] = -1
    elif family == "E":
        edges = [(0, 2), (1, 3), (2, 3)] + [(i, i + 1) for i in range(3, n - 1)]
        for i, j in edges:
            a[i][j] = a[j][i] = -1
    elif family == "F":
        a[0][1] = a[1][0] = -1
        a[1][2] = -1
        a[2][1] = -2
        a[2][3] = a[3][2] = -1
    elif family == "G":
        a[0][1] = -1
        a[1][0] = -3
    return a


def positive_roots_by_strings(cartan) -> set[tuple[int, ...]]:
    """Positive roots grown by the root-string rule p = q - <beta, alpha_i^vee>."""
    n = len(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(n):
                pairing = sum(beta[j] * cartan[i][j] for j in range(n))
                q = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) in roots:
                        q += 1
                    else:
                        break
                if q - pairing > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in roots:
                        roots.add(up)
                        nxt.append(up)
        layer = nxt
    return roots


EXPONENTS = {
    ("A", n): list(range(1, n + 1)) for n in range(1, 9)
}
EXPONENTS.update({("B", n): [2 * k - 1 for k in range(1, n + 1)] for n in range(2, 9)})
EXPONENTS.update({("C", n): [2 * k - 1 for k in range(1, n + 1)] for n in range(2, 9)})
EXPONENTS.update({("D", n): [2 * k - 1 for k in range(1, n)] + [n - 1] for n in range(3, 9)})
EXPONENTS.update(
    {
        ("E", 6): [1, 4, 5, 7, 8, 11],
        ("F", 4): [1, 5, 7, 11],
        ("G", 2): [1, 5],
    }
)


def poincare_coefficients(family: str, n: int) -> list[int]:
    """Coefficients of prod_i (1 + q + ... + q^{e_i})."""
    poly = [1]
    for e in EXPONENTS[(family, n)]:
        out = [0] * (len(poly) + e)
        for k, c in enumerate(poly):
            for j in range(e + 1):
                out[k + j] += c
        poly = out
    return poly


def permutation_length_histogram(n: int) -> list[int]:
    """Inversion counts over all permutations of n letters (type A_{n-1})."""
    hist = [0] * (n * (n - 1) // 2 + 1)
    for p in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        hist[inv] += 1
    return hist


def subword_bruhat(group) -> set[tuple[int, int]]:
    """All pairs (u, v) of element indices with u a reduced subword product of v's word."""
    pairs = set()
    for v in group:
        # states: (element, number of letters kept)
        states = {(group.identity, 0)}
        for letter in v.word:
            grown = set(states)
            for w, k in states:
                grown.add((group.right_mul(w, letter), k + 1))
            states = grown
        for w, k in states:
            if w.length == k:
                pairs.add((w.index, v.index))
    return pairs


def reflection_closure_bruhat(group) -> set[tuple[int, int]]:
    """Transitive closure of w -> t w with t a reflection and l(w) < l(t w)."""
    rs = group.rs
    reflections = {group.reflection(b) for b in rs.positive}
    up = {w: set() for w in group}
    for w in group:
        for t in reflections:
            x = t * w
            if x.length > w.length:
                up[w].add(x)
    pairs = set()
    for w in group:
        seen = {w}
        stack = [w]
        while stack:
            y = stack.pop()
            for z in up[y]:
                if z not in seen:
                    seen.add(z)
                    stack.append(z)
        pairs.update((w.index, z.index) for z in seen)
    return pairs


def _det(m: list[list[int]]) -> int:
    n = len(m)
    total = 0
    for p in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if p[i] > p[j]:
                    sign = -sign
        prod = sign
        for i in range(n):
            prod *= m[i][p[i]]
            if not prod:
                break
        total += prod
    return total


def invariant_factors_by_minors(dense: list[list[int]]) -> list[int]:
    """d_k = D_k / D_{k-1} with D_k the gcd of all k x k minors."""
    rows = len(dense)
    cols = len(dense[0]) if rows else 0
    prev = 1
    out = []
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for r in itertools.combinations(range(rows), k):
            for c in itertools.combinations(range(cols), k):
                g = math.gcd(g, _det([[dense[i][j] for j in c] for i in r]))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


def orbit_classes_by_length(rs) -> dict[Fraction, set]:
    """Positive roots grouped by squared length; for reduced systems these are the Weyl orbits."""
    out: dict[Fraction, set] = {}
    for r in rs.positive:
        out.setdefault(rs.inner(r, r), set()).add(r)
    return out


def coset_minima(group, theta) -> set[int]:
    """Unique shortest element of each left coset w W_theta, found by brute force."""
    sub = [w for w in group if set(w.word) <= set(theta)]
    seen = set()
    minima = set()
    for w in group:
        if w in seen:
            continue
        coset = {w * u for u in sub}
        seen |= coset
        best = min(x.length for x in coset)
        shortest = [x for x in coset if x.length == best]
        assert len(shortest) == 1, f"coset of {w!r} has {len(shortest)} shortest elements"
        minima.add(shortest[0].index)
    return minima


# Rational cohomology of a real split maximal flag manifold K/M (M finite, K
# connected) is that of K: an exterior algebra.  Generator degrees of the
# maximal compact subgroups, written out per family.
def _so_degrees(m: int) -> list[int]:
    if m <= 1:
        return []
    if m == 2:
        return [1]
    k = m // 2
    if m % 2:
        return [4 * i - 1 for i in range(1, k + 1)]
    return [4 * i - 1 for i in range(1, k)] + [2 * k - 1]


def compact_generator_degrees(family: str, n: int) -> list[int]:
    if family == "A":
        return _so_degrees(n + 1)
    if family == "B":
        return _so_degrees(n + 1) + _so_degrees(n)
    if family == "C":
        return [2 * i - 1 for i in range(1, n + 1)]  # U(n)
    if family == "D":
        return _so_degrees(n) * 2
    if family == "G":
        return [3, 3]  # SO(4)
    if family == "F":
        return [3, 7, 11, 3]  # Sp(3) x Sp(1) up to a finite quotient
    if family == "E" and n == 6:
        return [3, 7, 11, 15]  # Sp(4) modulo its centre
    raise KeyError(family)


def rational_betti(family: str, n: int, top: int) -> list[int]:
    p = [1]
    for d in compact_generator_degrees(family, n):
        q = p + [0] * d
        for i, c in enumerate(p):
            q[i + d] += c
        p = q
    return (p + [0] * (top + 1))[: top + 1]
