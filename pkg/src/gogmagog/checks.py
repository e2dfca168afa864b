"""Exhaustive verification suites behind ``gogmagog verify``."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

from . import asm as asm_mod
from . import catalan as cat
from . import definetti as fin
from . import poset as pc
from . import pyramids as pyr
from . import triangles as tri
from .errors import Infeasible

# largest n each suite accepts without --force
LIMITS = {
    "counts": 6,
    "psi-roundtrip": 6,
    "phi-involution": 6,
    "asm-rowrev": asm_mod.MAX_ROWREV_N,
    "catalan-commute": cat.MAX_COMMUTE_N,
    "lattice-fn21": 6,
    "definetti-f2": fin.MAX_TOTAL_ORDER_N,
}


@dataclass
class CheckResult:
    check: str
    n: int
    cases: int = 0
    counterexample: Any = None
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.counterexample is None

    def to_json(self) -> dict:
        out = {"check": self.check, "n": self.n, "passed": self.passed, "cases": self.cases}
        out.update(self.details)
        if not self.passed:
            out["counterexample"] = self.counterexample
        return out


def check_counts(n: int) -> CheckResult:
    r = CheckResult("counts", n)
    ballot = pc.count_linear_extensions(fin.build_fn2(n))
    r.details["ballot"] = ballot
    r.details["asm"] = tri.asm_count_formula(n)
    expected = {"linear-extensions": tri.ballot_number(n)}
    found = {"linear-extensions": ballot}
    for family in tri.FAMILIES:
        expected[family] = tri.asm_count_formula(n)
        found[family] = sum(1 for _ in tri.enumerate_family(family, n))
    if n >= 2:
        expected["fn21"] = tri.asm_count_formula(n - 1)
        found["fn21"] = sum(1 for _ in fin.enumerate_fn21(n))
    r.cases = len(expected)
    for key, want in expected.items():
        if found[key] != want:
            r.counterexample = {"count": key, "expected": want, "found": found[key]}
            break
    return r


def check_psi_roundtrip(n: int) -> CheckResult:
    r = CheckResult("psi-roundtrip", n)
    images = set()
    for o in tri.enumerate_family("omagog", n):
        r.cases += 1
        p = pyr.to_pyramid(o)
        q = pyr.psi(p)
        k = pyr.from_pyramid(q)
        if pyr.psi_inverse(q) != p or pyr.psi_inverse_triangle(k) != o:
            r.counterexample = tri.triangle_to_json(o)
            return r
        images.add(k)
    if len(images) != tri.asm_count_formula(n):
        r.counterexample = {"distinct-images": len(images), "expected": tri.asm_count_formula(n)}
    return r


def check_phi_involution(n: int) -> CheckResult:
    r = CheckResult("phi-involution", n)
    for o in tri.enumerate_family("ogog", n):
        r.cases += 1
        if pyr.phi_triangle(pyr.phi_triangle(o)) != o:
            r.counterexample = tri.triangle_to_json(o)
            break
    return r


def check_asm_rowrev(n: int) -> CheckResult:
    r = CheckResult("asm-rowrev", n)
    for a in asm_mod.enumerate_asm(n, force=True):
        r.cases += 1
        if asm_mod.asm_to_gog(asm_mod.row_reverse(a)) != asm_mod.gog_involution(asm_mod.asm_to_gog(a)):
            r.counterexample = asm_mod.asm_to_json(a)
            break
    return r


def check_catalan_commute(n: int) -> CheckResult:
    r = CheckResult("catalan-commute", n)
    sizes = {"S": sum(1 for _ in cat.monotone_sequences(n)), "C": sum(1 for _ in cat.coin_pyramids(n))}
    for s in cat.monotone_sequences(n):
        r.cases += 1
        k = pyr.psi_triangle(cat.rho(s))
        if not cat.in_c_prime(k) or cat.tau_inverse(k) != cat.sigma(s):
            r.counterexample = cat.sequence_to_json(s)
            return r
    r.details["catalan"] = tri.catalan(n)
    if any(v != tri.catalan(n) for v in sizes.values()):
        r.counterexample = {"sizes": sizes, "expected": tri.catalan(n)}
    return r


def check_lattice_fn21(n: int) -> CheckResult:
    r = CheckResult("lattice-fn21", n)
    for p in fin.enumerate_fn21(n):
        r.cases += 1
        if not pc.lattice_check(p).is_lattice or not fin.satisfies_definetti(p):
            r.counterexample = pc.poset_to_json(p)
            break
    return r


def check_definetti_f2(n: int, force: bool = False) -> CheckResult:
    r = CheckResult("definetti-f2", n)
    if not fin.satisfies_definetti(fin.build_fn2(n)):
        r.counterexample = {"poset": "fn2"}
        return r
    for order in fin.enumerate_definetti_total_orders(n, force=force):
        r.cases += 1
        if not fin.is_definetti_total_order(order, n):
            r.counterexample = {"n": n, "order": [sorted(s) for s in order]}
            break
    return r


SUITES: dict[str, Callable[[int], CheckResult]] = {
    "counts": check_counts,
    "psi-roundtrip": check_psi_roundtrip,
    "phi-involution": check_phi_involution,
    "asm-rowrev": check_asm_rowrev,
    "catalan-commute": check_catalan_commute,
    "lattice-fn21": check_lattice_fn21,
    "definetti-f2": check_definetti_f2,
}


def run_check(name: str, n: int, force: bool = False) -> CheckResult:
    if name not in SUITES:
        raise KeyError(name)
    if n > LIMITS[name] and not force:
        raise Infeasible(f"{name} is limited to n <= {LIMITS[name]} (use --force)")
    if name == "definetti-f2":
        return check_definetti_f2(n, force=force)
    return SUITES[name](n)
