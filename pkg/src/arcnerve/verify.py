"""Formula-versus-oracle verification suites behind ``arcnerve verify``."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Optional

from .complex import clique_complex, clique_nk, isomorphic_to_nk, nerve, nerve_nk
from .graphs import chromatic_number, chi_circular, circular_complete, lovasz_report, neighborhood_complex
from .homology import (
    OracleCapExceeded,
    det,
    induced_map_on_homology,
    is_boundary,
    is_cocycle,
    pair,
    reduced_homology,
)
from .homotopy import HomotopyType, clique_homotopy, nerve_homotopy, nerve_homotopy_by_recursion
from .maps import (
    automorphism_count,
    dihedral_action_on_homology,
    epsilon_delta_identity,
    mod_n_surjection,
    preimage_is_cone,
)
from .polytope import (
    alpha_cycle,
    beta_cochain_even,
    beta_cochain_odd,
    check_polytope_inclusion,
    cyclic_polytope_boundary,
    delta_boundary,
    evaluation_matrix,
    even_parameter,
    gale_evenness_facets,
    gale_facets,
    missing_facets,
    odd_parameter,
    polytope_fundamental_cycle,
)
from .reduce import reduce_to_minimal, verify_reduction
from .sampling import random_collection


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    skipped: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def check(self, label: str, fn: Callable[[], object]) -> None:
        """Run ``fn``; a falsy result or an exception is a failure, a cap hit a skip."""
        try:
            result = fn()
        except OracleCapExceeded:
            self.skipped += 1
            return
        except Exception as exc:  # noqa: BLE001 - reported as a counterexample
            self.failures.append(f"{label}: {type(exc).__name__}: {exc}")
            return
        if result is True:
            self.passed += 1
        else:
            self.failures.append(f"{label}: {result}")

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}: {self.passed} passed, {len(self.failures)} failed, {self.skipped} skipped"


def _faulty_nerve_homotopy(n: int, k: int) -> HomotopyType:
    """Nerve classifier with the odd branch deliberately broken (harness self-test)."""
    h = nerve_homotopy(n, k)
    if not h.is_contractible and h.dim % 2 == 1:
        return HomotopyType.sphere(h.dim + 2)
    return h


def _matches(groups, h: HomotopyType):
    want = {} if h.is_contractible else {h.dim: (h.count, ())}
    got = groups.nonzero()
    return True if got == want else f"oracle {groups} but formula {h}"


def suite_formulas(n_max: int, clique: bool = True, nerve_fn=nerve_homotopy) -> SuiteResult:
    res = SuiteResult("formulas")
    for n in range(1, n_max + 1):
        for k in range(n):
            res.check(f"nerve ({n},{k})", lambda n=n, k=k: _matches(reduced_homology(nerve_nk(n, k)), nerve_fn(n, k)))
            if clique and 2 * k < n:
                res.check(
                    f"clique ({n},{k})",
                    lambda n=n, k=k: _matches(reduced_homology(clique_nk(n, k)), clique_homotopy(n, k)),
                )
    for n in range(1, 51):
        for k in range(n):
            res.check(f"recursion ({n},{k})", lambda n=n, k=k: nerve_homotopy_by_recursion(n, k) == nerve_fn(n, k))
    return res


def check_random_collection(coll, nerve_fn=nerve_homotopy):
    r = reduce_to_minimal(coll)
    if not verify_reduction(coll, r):
        return f"reduction log does not replay for {coll!r}"
    k = nerve(coll)
    got = _matches(reduced_homology(k), nerve_fn(r.n_prime, r.k_prime))
    if got is not True:
        return f"nerve of {coll!r}: {got}"
    got = _matches(reduced_homology(clique_complex(k)), clique_homotopy(r.n_prime, r.k_prime))
    if got is not True:
        return f"clique complex of {coll!r}: {got}"
    return True


def suite_random(count: int, seed: int, max_n: int = 8, nerve_fn=nerve_homotopy) -> SuiteResult:
    res = SuiteResult("random")
    rng = random.Random(seed)
    for t in range(count):
        coll = random_collection(rng, rng.randint(1, max_n))
        res.check(f"collection {t}", lambda c=coll: check_random_collection(c, nerve_fn))
    return res


def even_cases(n_max: int) -> list:
    return [(n, k) for n in range(2, n_max + 1) for k in range(1, n) if even_parameter(n, k) is not None]


def odd_cases(n_max: int) -> list:
    return [(n, k) for n in range(3, n_max + 1) for k in range(1, n) if odd_parameter(n, k) is not None]


def check_generators(n: int, k: int):
    """Every claim of the even-case generator construction for one (n, k)."""
    cx = nerve_nk(n, k)
    l = even_parameter(n, k)
    beta = beta_cochain_even(n, k)
    if not is_cocycle(cx, beta):
        return "beta is not a cocycle"
    dd = delta_boundary(n, k)
    if dd.boundary():
        return "boundary of delta is not a cycle"
    if pair(beta, dd) != -1:
        return f"<beta, d Delta> = {pair(beta, dd)}"
    evaluation_matrix(n, k)
    total = alpha_cycle(n, k, 0)
    for i in range(1, n - k):
        total = total + alpha_cycle(n, k, i)
    if not is_boundary(cx, total):
        return "sum of the alphas is not a boundary"
    rank = reduced_homology(cx).betti(2 * l)
    if rank != n - k - 1:
        return f"rank {rank} != {n - k - 1}"
    return True


def suite_generators(n_max: int) -> SuiteResult:
    res = SuiteResult("generators")
    for n, k in even_cases(n_max):
        res.check(f"generators ({n},{k})", lambda n=n, k=k: check_generators(n, k))
    return res


def check_inclusion_iso(n: int, k: int):
    """The sphere of the cyclic polytope includes into N(n, k) inducing +-1 on top homology."""
    l = odd_parameter(n, k)
    poly = cyclic_polytope_boundary(2 * l + 2, n)
    m = induced_map_on_homology(poly, nerve_nk(n, k), list(range(n)), 2 * l + 1)
    return True if len(m) == 1 and abs(det(m)) == 1 else f"induced map {m}"


def check_odd_cocycle_pairing(n: int, k: int):
    l = odd_parameter(n, k)
    c = beta_cochain_odd(n, k)
    v = pair(c, polytope_fundamental_cycle(2 * l + 2, n))
    return True if abs(v) == 1 else f"pairing with the fundamental cycle is {v}"


def suite_polytope(n_max: int) -> SuiteResult:
    res = SuiteResult("polytope")
    for n in range(3, n_max + 1):
        for m in range(1, (n - 1) // 2 + 1):
            res.check(
                f"gale ({2 * m},{n})",
                lambda n=n, m=m: list(gale_facets(2 * m, n).facets) == gale_evenness_facets(2 * m, n),
            )
    for n, k in odd_cases(n_max):
        l = odd_parameter(n, k)
        if n >= 2 * l + 3:
            res.check(f"polytope inclusion ({n},{k})", lambda n=n, k=k: check_polytope_inclusion(n, k))
        res.check(f"odd cocycle ({n},{k})", lambda n=n, k=k: check_odd_cocycle_pairing(n, k))
        res.check(f"inclusion ({n},{k})", lambda n=n, k=k: check_inclusion_iso(n, k))
    for n, k in even_cases(n_max):
        res.check(f"missing facets ({n},{k})", lambda n=n, k=k: bool(missing_facets(n, k)))
    return res


def check_surjection(n: int, k: int):
    f = mod_n_surjection(n, k)
    for d in range(f.target.dim + 1):
        for tau in f.target.faces(d):
            if preimage_is_cone(f, tau) is None:
                return f"preimage of {tau} is not a cone"
    h = nerve_homotopy(n, k)
    if not h.is_contractible:
        m = induced_map_on_homology(f.source, f.target, f, h.dim)
        if abs(det(m)) != 1:
            return f"induced map {m} is not invertible"
    return True


def suite_maps(n_max: int) -> SuiteResult:
    res = SuiteResult("maps")
    for n in range(4, min(n_max, 8) + 1):
        for k in range(1, n - 2):
            res.check(f"automorphisms ({n},{k})", lambda n=n, k=k: automorphism_count(nerve_nk(n, k)) == 2 * n)
    for n, k in even_cases(n_max):
        res.check(f"epsilon identity ({n},{k})", lambda n=n, k=k: epsilon_delta_identity(n, k))
    for n in range(2, min(n_max, 9) + 1):
        for k in range(n - 1):
            res.check(f"action ({n},{k})", lambda n=n, k=k: dihedral_action_on_homology(n, k).ok)
    for n in range(1, n_max + 4):
        for k in range(0, n_max + 4 - n):
            res.check(f"mod-n ({n},{k})", lambda n=n, k=k: check_surjection(n, k))
    return res


def suite_graphs(n_max: int) -> SuiteResult:
    res = SuiteResult("graphs")
    for n in range(2, 21):
        for d in range(1, n // 2 + 1):
            res.check(f"lovasz ({n},{d})", lambda n=n, d=d: lovasz_report(n, d).gap in (0, 1))
            if n <= min(n_max, 10):
                res.check(
                    f"neighborhood ({n},{d})",
                    lambda n=n, d=d: isomorphic_to_nk(neighborhood_complex(circular_complete(n, d))) == (n, n - 2 * d),
                )
            if n <= 8:
                res.check(
                    f"chromatic ({n},{d})",
                    lambda n=n, d=d: chromatic_number(circular_complete(n, d)) == chi_circular(n, d),
                )
    return res


def run_all(n_max: int = 8, clique: bool = True, random_count: int = 200, seed: int = 0, inject_fault: bool = False) -> list:
    nerve_fn = _faulty_nerve_homotopy if inject_fault else nerve_homotopy
    return [
        suite_formulas(n_max, clique, nerve_fn),
        suite_random(random_count, seed, nerve_fn=nerve_fn),
        suite_generators(n_max),
        suite_polytope(n_max),
        suite_maps(n_max),
        suite_graphs(n_max),
    ]


def first_failure(results: list) -> Optional[str]:
    for r in results:
        if r.failures:
            return f"[{r.name}] {r.failures[0]}"
    return None
