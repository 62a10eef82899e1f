"""Chevalley basis of the split Lie algebra and the action of Weyl lifts on it.

Structure constants N(r, s) with [e_r, e_s] = N(r, s) e_{r+s} are fixed by
taking N = +(p + 1) on extraspecial pairs and deriving the rest from the
standard identities for a Chevalley basis.  The lift of r_i used here is
n_i = exp(e_i) exp(-f_i) exp(e_i), the quarter turn exp((pi/2)(e_i - f_i)) of
the rank-one compact subgroup; Ad(n_i) sends e_g to +-e_{r_i g}.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property

from .root_system import Root, RootSystem, killing_number


def _add(a: Root, b: Root) -> Root:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a: Root, b: Root) -> Root:
    return tuple(x - y for x, y in zip(a, b))


def _neg(a: Root) -> Root:
    return tuple(-x for x in a)


class ChevalleyBasis:
    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.roots = set(rs.roots)
        self.order = {r: k for k, r in enumerate(rs.positive)}
        self._n: dict[tuple[Root, Root], int] = {}
        self.norm = {r: rs.inner(r, r) for r in rs.roots}

    def _is_positive(self, r: Root) -> bool:
        return any(c > 0 for c in r)

    def _p(self, r: Root, s: Root) -> int:
        """Largest p with s - p r a root."""
        p = 0
        x = _sub(s, r)
        while x in self.roots:
            p += 1
            x = _sub(x, r)
        return p

    def extraspecial(self, xi: Root) -> tuple[Root, Root]:
        for a in self.rs.positive:
            b = _sub(xi, a)
            if b in self.roots and self._is_positive(b):
                return a, b
        raise ValueError(f"{xi} is simple")

    def N(self, r: Root, s: Root) -> int:
        key = (r, s)
        if key not in self._n:
            self._n[key] = self._compute(r, s)
        return self._n[key]

    def _compute(self, r: Root, s: Root) -> int:
        xi = _add(r, s)
        if xi not in self.roots:
            return 0
        pr, ps = self._is_positive(r), self._is_positive(s)
        if not pr and not ps:
            return -self.N(_neg(r), _neg(s))
        if pr != ps:
            t = _neg(xi)
            # N(r,s)/(t,t) = N(s,t)/(r,r) = N(t,r)/(s,s), rewrite with a same-sign pair
            if self._is_positive(t) == pr:
                value = Fraction(self.norm[t]) / self.norm[s] * self.N(t, r)
            else:
                value = Fraction(self.norm[t]) / self.norm[r] * self.N(s, t)
            assert value.denominator == 1
            return int(value)
        a, b = self.extraspecial(xi)
        if (r, s) == (a, b):
            return self._p(a, b) + 1
        if (r, s) == (b, a):
            return -self.N(a, b)
        # four-root identity with r + s + (-a) + (-b) = 0
        total = Fraction(0)
        for x, y, z, u in ((s, _neg(a), r, _neg(b)), (_neg(a), r, s, _neg(b))):
            xy = _add(x, y)
            if xy in self.roots:
                total -= Fraction(self.N(x, y) * self.N(z, u)) / self.norm[xy]
        value = total * self.norm[xi] / self.N(_neg(a), _neg(b))
        assert value.denominator == 1, (r, s, value)
        return int(value)

    # brackets on vectors {("e", root) | ("h", i): coefficient}

    def coroot(self, r: Root) -> dict[int, Fraction]:
        rs = self.rs
        return {
            i: Fraction(c) * rs.form[i][i] / self.norm[r] for i, c in enumerate(r) if c
        }

    def bracket_basis(self, x, y) -> dict:
        kx, vx = x
        ky, vy = y
        if kx == "h" and ky == "h":
            return {}
        if kx == "h":
            return {k: -c for k, c in self.bracket_basis(y, x).items()}
        if ky == "h":
            # [e_r, h_i] = -<r, alpha_i^vee> e_r
            alpha = self.rs.simple[vy]
            value = -killing_number(self.rs, alpha, vx)
            return {("e", vx): Fraction(value)} if value else {}
        r, s = vx, vy
        if _add(r, s) == tuple(0 for _ in r):
            return {("h", i): c for i, c in self.coroot(r).items()}
        n = self.N(r, s)
        return {("e", _add(r, s)): Fraction(n)} if n else {}

    def bracket(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for bx, cx in u.items():
            for by, cy in v.items():
                for k, c in self.bracket_basis(bx, by).items():
                    out[k] = out.get(k, 0) + cx * cy * c
        return {k: c for k, c in out.items() if c}

    def _exp_ad(self, x: dict, v: dict) -> dict:
        out = dict(v)
        term = dict(v)
        k = 1
        while term:
            term = {key: c / k for key, c in self.bracket(x, term).items()}
            for key, c in term.items():
                out[key] = out.get(key, 0) + c
            k += 1
        return {key: c for key, c in out.items() if c}

    def weyl_lift_action(self, i: int, v: dict) -> dict:
        """Ad(n_i) v with n_i = exp(e_i) exp(-f_i) exp(e_i), i 1-based."""
        a = self.rs.simple[i - 1]
        e = {("e", a): Fraction(1)}
        f = {("e", _neg(a)): Fraction(-1)}
        return self._exp_ad(e, self._exp_ad(f, self._exp_ad(e, v)))

    @cached_property
    def lift_signs(self) -> tuple[tuple[int, ...], ...]:
        """signs[i-1][k] = eta with Ad(n_i) e_k = eta e_{r_i k}, k a root index."""
        rs = self.rs
        out = []
        for i in range(1, rs.rank + 1):
            perm = rs.simple_reflection_perms[i - 1]
            row = []
            for k, g in enumerate(rs.roots):
                image = self.weyl_lift_action(i, {("e", g): Fraction(1)})
                target = ("e", rs.roots[perm[k]])
                if set(image) != {target} or abs(image[target]) != 1:
                    raise AssertionError(f"Ad(n_{i}) e_{g} = {image} is not a signed root vector")
                row.append(int(image[target]))
            out.append(tuple(row))
        return tuple(out)

    def word_frame(self, word) -> tuple[tuple[int, ...], int]:
        """Tangent frame at w b0 of the cube parametrization along a reduced word.

        The j-th coordinate direction at the centre of the cube is
        eta_j e_{beta_j} modulo the stabilizer, with beta_j the j-th root of the
        inversion sequence.  Returns (beta indices, product of the eta_j).
        """
        rs = self.rs
        signs = self.lift_signs
        img = list(range(len(rs.roots)))
        sgn = [1] * len(rs.roots)
        betas = []
        eta = 1
        for i in word:
            a = rs.index(rs.simple[i - 1])
            betas.append(img[a])
            eta *= sgn[a]
            perm, row = rs.simple_reflection_perms[i - 1], signs[i - 1]
            img = list(map(img.__getitem__, perm))
            sgn = list(map(int.__mul__, row, map(sgn.__getitem__, perm)))
        return tuple(betas), eta

    def orientation(self, word) -> int:
        """Sign of the word's frame against the positive-root order on the cell."""
        betas, eta = self.word_frame(word)
        if len(set(betas)) != len(betas) or any(b >= len(self.rs.positive) for b in betas):
            raise ValueError(f"{tuple(word)} is not a reduced word")
        inversions = sum(1 for x in range(len(betas)) for y in range(x + 1, len(betas)) if betas[x] > betas[y])
        return eta * (-1) ** inversions


def chevalley_basis(rs: RootSystem) -> ChevalleyBasis:
    cache = rs.__dict__.setdefault("_chevalley", [])
    if not cache:
        cache.append(ChevalleyBasis(rs))
    return cache[0]
