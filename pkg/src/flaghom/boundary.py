"""Boundary coefficients between Schubert cells and assembly of the chain complex.

For a covering pair w = r_1 ... r_n and w' = r_1 ... ^r_i ... r_n (letter i of
multiplicity one) the coefficient is

    c(w, w') = tau * (-1)^I * (1 + (-1)^kappa)

where phi(w) - phi(w') = kappa * beta, beta = r_1 ... r_{i-1} alpha_i, and I is
the total multiplicity of the letters up to position i.  The sign tau is the
degree of the change of parametrization between the deleted word and the fixed
word of w'.  It comes from a ``SignPolicy``:

* ``orientation`` (split multiplicities only) computes that degree exactly by
  comparing the two tangent frames at the centre of the cell;
* ``plus-one`` sets tau = +1 and relies on the edge-sign solver in
  ``flaghom.signs`` whenever d^2 != 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .errors import CheckFailed, NotProportional, SignInconsistency
from .homology import IntegerMatrix, check_boundary_squared
from .root_system import MultiplicityMap, Root
from .weyl import (
    ThetaSubset,
    WeylElement,
    WeylGroup,
    cell_dimension,
    minimal_coset_representatives,
)


def phi(w: WeylElement, mult: MultiplicityMap) -> Root:
    """Multiplicity-weighted sum of the inversion set of w."""
    memo = w.group.__dict__.setdefault("_phi", {}).setdefault(mult.values, {})
    if w.index in memo:
        return memo[w.index]
    rs = w.group.rs
    total = [0] * rs.rank
    for k in w.inversion_indices:
        m = mult.of_index(k)
        for j, c in enumerate(rs.roots[k]):
            total[j] += m * c
    memo[w.index] = tuple(total)
    return memo[w.index]


def _reflection_root(w: WeylElement, w_prime: WeylElement) -> Root:
    """The positive root beta with w = r_beta w'."""
    group = w.group
    rs = group.rs
    npos = len(rs.positive)
    r = tuple(w.perm[k] for k in w_prime.inverse_perm)
    flipped = [k for k in range(npos) if r[k] == k + npos]
    if len(flipped) != 1 or group.reflection(rs.positive[flipped[0]]).perm != r:
        raise ValueError(f"{w!r} and {w_prime!r} do not differ by a reflection")
    return rs.positive[flipped[0]]


def kappa(w: WeylElement, w_prime: WeylElement, mult: MultiplicityMap, beta: Optional[Root] = None) -> int:
    if beta is None:
        beta = _reflection_root(w, w_prime)
    diff = [a - b for a, b in zip(phi(w, mult), phi(w_prime, mult))]
    j = next(j for j, c in enumerate(beta) if c)
    k, rem = divmod(diff[j], beta[j])
    if rem or any(d != k * b for d, b in zip(diff, beta)):
        raise NotProportional(f"phi({w!r}) - phi({w_prime!r}) = {tuple(diff)} is not a multiple of {beta}")
    return k


def sigma(w: WeylElement, delete_index: int, mult: MultiplicityMap, suffix: Optional[WeylElement] = None) -> int:
    """Killing-number sum over the inversion set of the suffix after position delete_index."""
    group = w.group
    rs = group.rs
    word = w.word
    if not 1 <= delete_index <= len(word):
        raise IndexError(f"deletion position {delete_index} outside 1..{len(word)}")
    pairing = rs.simple_pairings[word[delete_index - 1] - 1]
    u = suffix if suffix is not None else group.from_word(word[delete_index:])
    return sum(pairing[k] * mult.of_index(k) for k in u.inversion_indices)


@dataclass(frozen=True)
class CoveringEdge:
    w: WeylElement
    w_prime: WeylElement
    delete_index: int
    beta: Root
    I: int
    kappa: int
    sigma: int

    @property
    def canonical_deletion(self) -> bool:
        """True when the deleted word is already the fixed word of w'; tau is then exactly +1."""
        word = self.w.word
        i = self.delete_index
        return word[: i - 1] + word[i:] == self.w_prime.word

    @property
    def key(self) -> tuple[int, int]:
        return (self.w.index, self.w_prime.index)

    @property
    def magnitude(self) -> int:
        return 2 if self.kappa % 2 == 0 else 0


@dataclass(frozen=True)
class SignPolicy:
    """Supplies the global sign tau of each edge.

    ``exact`` marks policies whose signs are the true transition degrees, so
    partial flags need no borrowing from the maximal complex.
    """

    name: str
    tau: Callable[[CoveringEdge], int]
    exact: bool = False


PLUS_ONE_POLICY = SignPolicy("plus-one", lambda edge: 1)
POLICY_NAMES = ("auto", "orientation", "plus-one")


def orientation_policy(group: WeylGroup) -> SignPolicy:
    """Exact tau for the split real form, from the frames of the two reduced words."""
    cache = group.__dict__.setdefault("_orientation_policy", [])
    if cache:
        return cache[0]
    from .chevalley import chevalley_basis

    basis = chevalley_basis(group.rs)
    fixed: dict[int, int] = {}

    def tau(edge: CoveringEdge) -> int:
        w_prime = edge.w_prime
        if edge.canonical_deletion:
            return 1
        if w_prime.index not in fixed:
            fixed[w_prime.index] = basis.orientation(w_prime.word)
        word, i = edge.w.word, edge.delete_index
        return basis.orientation(word[: i - 1] + word[i:]) * fixed[w_prime.index]

    cache.append(SignPolicy("orientation", tau, exact=True))
    return cache[0]


def select_policy(group: WeylGroup, mult: MultiplicityMap, name: str = "auto") -> SignPolicy:
    """``auto`` is orientation for split multiplicities and plus-one otherwise."""
    if name not in POLICY_NAMES:
        raise ValueError(f"unknown sign policy {name!r}; expected one of {', '.join(POLICY_NAMES)}")
    split = all(m == 1 for m in mult.values)
    if name == "orientation" and not split:
        raise ValueError("the orientation policy needs multiplicity one on every root")
    if name == "orientation" or (name == "auto" and split):
        return orientation_policy(group)
    return PLUS_ONE_POLICY


def _prefix_perms(w: WeylElement) -> list[tuple[int, ...]]:
    rs = w.group.rs
    perm = tuple(range(len(rs.roots)))
    out = [perm]
    for i in w.word:
        s = rs.simple_reflection_perms[i - 1]
        perm = tuple(map(perm.__getitem__, s))
        out.append(perm)
    return out


def _suffix_perms(w: WeylElement) -> list[tuple[int, ...]]:
    rs = w.group.rs
    n = len(w.word)
    out = [None] * (n + 1)
    perm = tuple(range(len(rs.roots)))
    out[n] = perm
    for j in range(n - 1, -1, -1):
        s = rs.simple_reflection_perms[w.word[j] - 1]
        perm = tuple(map(s.__getitem__, perm))
        out[j] = perm
    return out


def deletions(w: WeylElement, pre: Optional[list] = None, suf: Optional[list] = None) -> list[tuple[int, WeylElement]]:
    """(position, w') for every single-letter deletion of w's word that stays reduced."""
    group = w.group
    n = w.length
    pre = pre or _prefix_perms(w)
    suf = suf or _suffix_perms(w)
    out = []
    for i in range(1, n + 1):
        w_prime = group.from_perm(tuple(map(pre[i - 1].__getitem__, suf[i])))
        if w_prime.length == n - 1:
            out.append((i, w_prime))
    return out


def covering_edges(
    cells: Iterable[WeylElement],
    mult: MultiplicityMap,
    theta: ThetaSubset = ThetaSubset(),
) -> list[CoveringEdge]:
    """All dimension-one covering pairs among the given cells."""
    cells = list(cells)
    allowed = set(cells)
    edges = []
    for w in cells:
        if not w.length:
            continue
        rs = w.group.rs
        pre, suf = _prefix_perms(w), _suffix_perms(w)
        seen: dict[WeylElement, int] = {}
        found = deletions(w, pre, suf)
        w.group.__dict__.setdefault("_covers", {})[w.index] = {wp for _, wp in found}
        for i, w_prime in found:
            letter = w.word[i - 1]
            if mult.simple(letter) != 1 or w_prime not in allowed:
                continue
            if w_prime in seen:
                raise CheckFailed(f"{w!r} reaches {w_prime!r} by deleting positions {seen[w_prime]} and {i}")
            seen[w_prime] = i
            beta = rs.roots[pre[i - 1][letter - 1]]
            weight = sum(mult.simple(j) for j in w.word[:i])
            k = kappa(w, w_prime, mult, beta)
            s = sigma(w, i, mult, w.group.from_perm(suf[i]))
            edges.append(CoveringEdge(w, w_prime, i, beta, weight, k, s))
    edges.sort(key=lambda e: e.key)
    return edges


def coefficient(edge: CoveringEdge, mult: MultiplicityMap = None, policy: SignPolicy = PLUS_ONE_POLICY) -> int:
    tau = policy.tau(edge)
    if tau not in (1, -1):
        raise ValueError(f"sign policy {policy.name!r} returned {tau!r}")
    return tau * (-1) ** edge.I * (1 + (-1) ** edge.kappa)


@dataclass
class ChainComplex:
    theta: ThetaSubset
    cells: list[list[WeylElement]]
    matrices: dict[int, IntegerMatrix]
    mult: Optional[MultiplicityMap] = None
    edges: list[CoveringEdge] = field(default_factory=list)
    coefficients: dict[tuple[int, int], int] = field(default_factory=dict)
    sign_policy_report: dict = field(default_factory=dict)

    @property
    def top(self) -> int:
        return len(self.cells) - 1

    def matrix(self, k: int) -> IntegerMatrix:
        """d_k : C_k -> C_{k-1}; zero outside 1..top."""
        if k in self.matrices:
            return self.matrices[k]
        rows = len(self.cells[k - 1]) if 1 <= k <= self.top + 1 else 0
        cols = len(self.cells[k]) if 0 <= k <= self.top else 0
        return IntegerMatrix.zeros(rows, cols)

    def dimension_of(self, w: WeylElement) -> int:
        for k, cells in enumerate(self.cells):
            if w in cells:
                return k
        raise KeyError(w)

    @property
    def num_cells(self) -> int:
        return sum(len(c) for c in self.cells)


def build_matrices(
    cells: list[list[WeylElement]],
    edges: list[CoveringEdge],
    coefficients: dict[tuple[int, int], int],
) -> dict[int, IntegerMatrix]:
    position = {}
    dim_of = {}
    for k, level in enumerate(cells):
        for p, w in enumerate(level):
            position[w] = p
            dim_of[w] = k
    triplets: dict[int, list[tuple[int, int, int]]] = {k: [] for k in range(1, len(cells))}
    for e in edges:
        c = coefficients[e.key]
        if c:
            k = dim_of[e.w]
            triplets[k].append((position[e.w_prime], position[e.w], c))
    return {
        k: IntegerMatrix.from_triplets(len(cells[k - 1]), len(cells[k]), trip)
        for k, trip in triplets.items()
    }


def verify_diamonds(group: WeylGroup) -> None:
    """Every length-2 Bruhat interval has exactly two middle elements."""
    cached = getattr(group, "_diamonds_checked", False)
    if cached:
        return
    known = group.__dict__.get("_covers", {})
    covers = {w: known[w.index] if w.index in known else {wp for _, wp in deletions(w)} for w in group}
    for w in group:
        below: dict[WeylElement, int] = {}
        for c in covers[w]:
            for x in covers[c]:
                below[x] = below.get(x, 0) + 1
        for x, count in below.items():
            if count != 2:
                raise CheckFailed(f"interval [{x!r}, {w!r}] has {count} middle elements")
    group._diamonds_checked = True


def assemble(
    group: WeylGroup,
    mult: MultiplicityMap,
    theta: ThetaSubset = ThetaSubset(),
    policy: Optional[SignPolicy] = None,
    sign_solver: bool = True,
) -> ChainComplex:
    """Cellular chain complex of the flag manifold of type theta.

    With no policy given, ``select_policy(group, mult)`` decides.
    """
    from .signs import solve_signs

    if policy is None:
        policy = select_policy(group, mult)

    reps = [c.w for c in minimal_coset_representatives(group, theta)]
    dims = {w: cell_dimension(w, mult, theta) for w in reps}
    top = max(dims.values())
    cells: list[list[WeylElement]] = [[] for _ in range(top + 1)]
    for w in reps:
        cells[dims[w]].append(w)

    edges = covering_edges(reps, mult, theta)
    for e in edges:
        if dims[e.w] - dims[e.w_prime] != 1:
            raise CheckFailed(f"edge {e.w!r} -> {e.w_prime!r} has dimension gap {dims[e.w] - dims[e.w_prime]}")
        if e.kappa != 1 - e.sigma:
            raise CheckFailed(f"kappa = {e.kappa} but 1 - sigma = {1 - e.sigma} on {e.w!r} -> {e.w_prime!r}")
    verify_diamonds(group)

    coefficients = {e.key: coefficient(e, mult, policy) for e in edges}
    tentative = dict(coefficients)
    report = {
        "policy": policy.name,
        "tentative_d2_zero": not check_boundary_squared(
            ChainComplex(theta, cells, build_matrices(cells, edges, coefficients))
        ),
        "solver": "on" if sign_solver else "off",
        "rescaled": False,
        "flipped_edges": [],
    }
    if theta.indices and sign_solver and not policy.exact:
        # partial-flag coefficients are the maximal-flag ones on minimal representatives
        full = _maximal_complex(group, mult, policy)
        coefficients = {key: full.coefficients[key] for key in coefficients}
        report["inherited_from_maximal"] = True
    cx = ChainComplex(theta, cells, build_matrices(cells, edges, coefficients), mult, edges, coefficients)
    bad = check_boundary_squared(cx)
    if bad:
        if not sign_solver:
            report["status"] = "inconsistent"
            raise SignInconsistency(
                f"d^2 != 0 under policy {policy.name!r} ({len(bad)} nonzero entries) and the sign solver is off",
                report,
            )
        solution = solve_signs(cx)
        report.update(solution.report)
        if solution.flips is None:
            report["status"] = "no-solution"
            raise SignInconsistency(f"no edge-sign assignment makes d^2 = 0: {solution.reason}", report)
        for key in solution.flips:
            coefficients[key] = -coefficients[key]
        cx.matrices = build_matrices(cells, edges, coefficients)
        if check_boundary_squared(cx):
            raise SignInconsistency("sign solver returned an assignment that does not close d^2", report)
    flipped = sorted([list(k) for k, c in coefficients.items() if c != tentative[k]])
    report["rescaled"] = bool(flipped)
    report["flipped_edges"] = flipped
    report["status"] = "ok"
    cx.sign_policy_report = report
    return cx


def _maximal_complex(group: WeylGroup, mult: MultiplicityMap, policy: SignPolicy) -> ChainComplex:
    cache = group.__dict__.setdefault("_maximal_complexes", {})
    key = (mult.values, policy.name, id(policy.tau))
    if key not in cache:
        cache[key] = assemble(group, mult, ThetaSubset(), policy, sign_solver=True)
    return cache[key]
