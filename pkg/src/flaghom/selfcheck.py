"""Invariant battery and reference tables used by ``flaghom --check``."""

from __future__ import annotations

from typing import Callable, Optional

from .boundary import ChainComplex, assemble, build_matrices, phi
from .errors import CheckFailed
from .homology import check_boundary_squared, euler_characteristic, homology_groups
from .root_system import multiplicity_map, root_system
from .weyl import ThetaSubset, generate_weyl_group, inversion_set, parabolic_subgroup, weyl_group_order

# word -> phi(w), split multiplicities
A2_PHI = {
    (): (0, 0),
    (1,): (1, 0),
    (2,): (0, 1),
    (1, 2): (2, 1),
    (2, 1): (1, 2),
    (1, 2, 1): (2, 2),
}

_G2_ROOTS = {1: (1, 0), 2: (0, 1), 3: (1, 1), 4: (1, 2), 5: (1, 3), 6: (2, 3)}

# word -> (inversion set as root labels, phi(w)), split multiplicities
G2_TABLE = {
    (): ((), (0, 0)),
    (1,): ((1,), (1, 0)),
    (2,): ((2,), (0, 1)),
    (1, 2): ((1, 3), (2, 1)),
    (2, 1): ((2, 5), (1, 4)),
    (1, 2, 1): ((1, 3, 6), (4, 4)),
    (2, 1, 2): ((2, 5, 4), (2, 6)),
    (1, 2, 1, 2): ((1, 3, 6, 4), (5, 6)),
    (2, 1, 2, 1): ((2, 5, 4, 6), (4, 9)),
    (1, 2, 1, 2, 1): ((1, 3, 6, 4, 5), (6, 9)),
    (2, 1, 2, 1, 2): ((2, 5, 4, 6, 3), (5, 10)),
    (1, 2, 1, 2, 1, 2): ((1, 2, 3, 4, 5, 6), (6, 10)),
}

A2_HOMOLOGY = ["Z", "Z2 + Z2", "0", "Z"]
G2_HOMOLOGY = ["Z", "Z2 + Z2", "0", "Z^2", "Z2 + Z2", "0", "Z"]
G2_THETA1_HOMOLOGY = ["Z", "Z2", "0", "Z", "Z2", "0"]
G2_THETA1_REPS = [(), (2,), (1, 2), (2, 1, 2), (1, 2, 1, 2), (2, 1, 2, 1, 2)]


def _check(checks: list, name: str, ok: bool, detail: str = ""):
    checks.append({"name": name, "ok": bool(ok), "detail": detail})


def complex_checks(cx: ChainComplex, group) -> list[dict]:
    """Structural invariants every assembled complex must satisfy."""
    checks: list[dict] = []
    bad = check_boundary_squared(cx)
    _check(checks, "d_squared_zero", not bad, f"{len(bad)} nonzero entries" if bad else "")

    ks = [e for e in cx.edges if e.kappa != 1 - e.sigma]
    _check(checks, "kappa_equals_one_minus_sigma", not ks, f"{len(cx.edges)} edges, {len(ks)} violations")

    mags = [e for e in cx.edges if abs(cx.coefficients[e.key]) != e.magnitude]
    _check(checks, "magnitude_is_two_iff_kappa_even", not mags, f"{len(mags)} violations")

    entries = {v for k in cx.matrices for v in cx.matrices[k].entries.values()}
    _check(checks, "entries_in_0_pm2", entries <= {2, -2}, str(sorted(entries)))

    if not bad:
        z2 = homology_groups(cx, "Z2")
        counts = [len(c) for c in cx.cells]
        _check(checks, "z2_betti_equal_cell_counts", [h.betti for h in z2] == counts)
        z = homology_groups(cx, "Z")
        alt = sum((-1) ** h.degree * h.betti for h in z)
        _check(checks, "euler_consistent", alt == euler_characteristic(cx), f"{alt} vs {euler_characteristic(cx)}")
        _check(checks, "h0_is_z", str(z[0]) == "Z", str(z[0]))

    order = weyl_group_order(group.rs)
    sub = len(parabolic_subgroup(group, cx.theta))
    _check(checks, "cell_total", cx.num_cells == order // sub, f"{cx.num_cells} cells, |W|/|W_theta| = {order // sub}")
    return checks


def _golden_checks() -> list[dict]:
    checks: list[dict] = []
    rs = root_system("A", 2)
    group = generate_weyl_group(rs)
    mult = multiplicity_map(rs)
    got = {w.word: phi(w, mult) for w in group}
    _check(checks, "a2_phi_table", got == A2_PHI)
    cx = assemble(group, mult)
    _check(checks, "a2_homology", [str(h) for h in homology_groups(cx, "Z")] == A2_HOMOLOGY)

    rs = root_system("G", 2)
    group = generate_weyl_group(rs)
    mult = multiplicity_map(rs)
    table = {}
    for w in group:
        labels = tuple(sorted(k for k, r in _G2_ROOTS.items() if r in inversion_set(w)))
        table[w.word] = (labels, phi(w, mult))
    want = {word: (tuple(sorted(labels)), p) for word, (labels, p) in G2_TABLE.items()}
    _check(checks, "g2_table", table == want)
    cx = assemble(group, mult)
    _check(checks, "g2_homology", [str(h) for h in homology_groups(cx, "Z")] == G2_HOMOLOGY)

    theta = ThetaSubset(frozenset({1}))
    cx = assemble(group, mult, theta)
    reps = sorted((w.word for level in cx.cells for w in level), key=len)
    _check(checks, "g2_theta1_representatives", reps == G2_THETA1_REPS)
    _check(checks, "g2_theta1_homology", [str(h) for h in homology_groups(cx, "Z")] == G2_THETA1_HOMOLOGY)
    return checks


def flip_one_sign(cx: ChainComplex) -> ChainComplex:
    """Fault injection: negate one coefficient that lies on a two-step path."""
    nonzero = {e.key: e for e in cx.edges if cx.coefficients[e.key]}
    starts = {e.w_prime for e in nonzero.values()}
    ends = {e.w for e in nonzero.values()}
    target = next(
        (e for e in nonzero.values() if e.w in starts or e.w_prime in ends),
        next(iter(nonzero.values()), None),
    )
    coeffs = dict(cx.coefficients)
    if target is not None:
        coeffs[target.key] = -coeffs[target.key]
    return ChainComplex(
        cx.theta, cx.cells, build_matrices(cx.cells, cx.edges, coeffs), cx.mult, cx.edges, coeffs,
        dict(cx.sign_policy_report),
    )


def self_check(
    cx: ChainComplex,
    group,
    fault: Optional[Callable[[ChainComplex], ChainComplex]] = None,
    golden: bool = True,
) -> dict:
    """Run the invariants on cx (after the optional fault hook) plus the reference tables."""
    if fault is not None:
        cx = fault(cx)
    checks = [dict(c, target="run") for c in complex_checks(cx, group)]
    if cx.mult is not None and cx.mult.preset == "complex":
        zero = all(m.is_zero() for m in cx.matrices.values())
        checks.append({"name": "complex_preset_zero_boundary", "ok": zero, "detail": "", "target": "run"})
    if golden:
        try:
            checks.extend(dict(c, target="reference") for c in _golden_checks())
        except Exception as exc:  # a crash in the reference run is itself a failure
            checks.append({"name": "reference_tables", "ok": False, "detail": repr(exc), "target": "reference"})
    failed = [c for c in checks if not c["ok"]]
    return {
        "passed": not failed,
        "first_failure": failed[0]["name"] if failed else None,
        "checks": checks,
    }


def require(report: dict) -> None:
    if not report["passed"]:
        first = next(c for c in report["checks"] if not c["ok"])
        raise CheckFailed(f"{first['name']} failed {first['detail']}".strip())
