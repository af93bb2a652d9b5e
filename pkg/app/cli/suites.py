"""
Property suites behind `check`: every diagram is put through the complexes,
the bordered modules and all pairings; the algebra suite checks the DGA
axioms and relations of A_{N,k}.
"""

import logging
from collections import Counter
from itertools import combinations, permutations, product
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ..bordered import (
    cancellation_profile,
    cpa,
    cpa_abs,
    cpd,
    cpda,
    cpdd,
    pair_AD,
    tensor_A_DA,
    tensor_Aabs_DD,
    tensor_DA_D,
)
from ..complexes import cfk_complex, cfp_complex
from ..grid import PlanarGridDiagram, slice_diagram, validate_planar, wrap
from ..strands import (
    FactorizationError,
    InterfaceGradingData,
    algebra_diff,
    algebra_mul,
    as_element,
    basis,
    basis_by_source,
    cross,
    diff_basis,
    factorize,
    gradings_alg,
    mul_basis,
    relation_diff,
    reverse,
    rho,
)


logger = logging.getLogger(__name__)

Outcome = Tuple[str, Optional[Dict[str, Any]]]
DiagramKey = Tuple[int, Tuple[int, ...], Tuple[int, ...]]


def random_diagrams(n: int, count: int, seed: int) -> List[DiagramKey]:
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        sx = tuple(int(v) + 1 for v in rng.permutation(n))
        so = tuple(int(v) + 1 for v in rng.permutation(n))
        out.append((n, sx, so))
    return out


def exhaustive_diagrams(n: int) -> Iterator[DiagramKey]:
    perms = list(permutations(range(1, n + 1)))
    for sx, so in product(perms, perms):
        yield n, sx, so


def _witness(d: PlanarGridDiagram, detail: str, cuts: Sequence[int] = ()) -> Dict[str, Any]:
    return {
        "n": d.n,
        "x": list(d.sigma_x),
        "o": list(d.sigma_o),
        "cuts": list(cuts),
        "detail": detail,
    }


def _first(failures: Sequence, d: PlanarGridDiagram, cuts: Sequence[int] = ()) -> Optional[Dict[str, Any]]:
    if not failures:
        return None
    first = failures[0]
    detail = " ".join(str(part) for part in first) if isinstance(first, tuple) else str(first)
    return _witness(d, detail, cuts)


def diagram_properties(d: PlanarGridDiagram, deep: bool = False) -> Tuple[List[Outcome], Counter]:
    """
    Every structural property of one diagram. `deep` adds module
    associativity and Leibniz checks, which grow quickly with N.
    """
    n = d.n
    out: List[Outcome] = []
    profile: Counter = Counter()

    direct = cfp_complex(d)
    out.append(("cfp.d2", _first(direct.d_squared_failures(), d)))
    out.append(("cfp.gradings", _first(direct.grading_failures(), d)))
    torus = cfk_complex(wrap(d))
    out.append(("cfk.d2", _first(torus.d_squared_failures(), d)))
    out.append(("cfk.gradings", _first(torus.grading_failures(), d)))

    left, right = {}, {}
    for k in range(1, n + 1):
        a_part, d_part = slice_diagram(d, [k])
        ma, md = cpa(a_part), cpd(d_part)
        left[k], right[k] = ma, md
        out.append(("cpa.d2", _first(ma.d_squared_failures(), d, [k])))
        out.append(("cpa.gradings", _first(ma.grading_failures(), d, [k])))
        out.append(("cpd.d2", _first(md.d_squared_failures(), d, [k])))
        out.append(("cpd.gradings", _first(md.grading_failures(), d, [k])))
        if deep:
            out.append(("cpa.associativity", _first(ma.associativity_failures(), d, [k])))
            out.append(("cpa.leibniz", _first(ma.leibniz_failures(), d, [k])))
        out.append(("pairing", _first(pair_AD(ma, md).differences(direct), d, [k])))
        absorbing = cpa_abs(d_part)
        if deep:
            out.append(("cpa_abs.associativity", _first(absorbing.associativity_failures(), d, [k])))
        absorbed = tensor_Aabs_DD(absorbing, cpdd(n, k))
        out.append(("dd.absorb", _first(absorbed.differences(md), d, [k])))
        for (kind, label), count in cancellation_profile(md).items():
            profile[f"{kind}: {label}"] += count

    for k, l in combinations(range(1, n + 1), 2):
        _, m_part, _ = slice_diagram(d, [k, l])
        mm = cpda(m_part)
        out.append(("cpda.d2", _first(mm.d_squared_failures(), d, [k, l])))
        out.append(("cpda.gradings", _first(mm.grading_failures(), d, [k, l])))
        if deep:
            out.append(("cpda.leibniz", _first(mm.leibniz_failures(), d, [k, l])))
            out.append(("cpda.associativity", _first(mm.associativity_failures(), d, [k, l])))
        ma_l = tensor_A_DA(left[k], mm)
        md_k = tensor_DA_D(mm, right[l])
        out.append(("tensor.A_DA", _first(ma_l.differences(left[l]), d, [k, l])))
        out.append(("tensor.DA_D", _first(md_k.differences(right[k]), d, [k, l])))
        out.append(("triple.left", _first(pair_AD(ma_l, right[l]).differences(direct), d, [k, l])))
        out.append(("triple.right", _first(pair_AD(left[k], md_k).differences(direct), d, [k, l])))
    return out, profile


def check_diagram(task: Tuple[DiagramKey, bool]) -> Dict[str, Any]:
    """Worker entry point: plain data in, plain data out."""
    (n, sx, so), deep = task
    d = validate_planar(n, sx, so)
    outcomes, profile = diagram_properties(d, deep)
    return {"key": (n, sx, so), "outcomes": outcomes, "profile": dict(profile)}


def algebra_properties(n: int, seed: int = 0, deep: bool = True) -> List[Outcome]:
    """DGA axioms, gradings, relations, reversal and factorization of A_{n,k}, all k."""
    rng = np.random.default_rng(seed)
    out: List[Outcome] = []

    def witness(k: int, detail: str) -> Dict[str, Any]:
        return {"n": n, "k": k, "detail": detail}

    for k in range(n + 2):
        elements = basis(n, k)
        by_source = basis_by_source(n, k)
        size = min(k, n)
        gd = InterfaceGradingData.of(
            rng.choice(np.arange(1, n + 1), size, replace=False).tolist(),
            rng.choice(np.arange(1, n + 1), size, replace=False).tolist(),
        )
        bad: Dict[str, Optional[Dict[str, Any]]] = {
            name: None
            for name in (
                "algebra.d2",
                "algebra.leibniz",
                "algebra.associativity",
                "algebra.gradings",
                "algebra.reverse",
                "algebra.factorize",
            )
        }

        def flag(name: str, detail: str) -> None:
            if bad[name] is None:
                bad[name] = witness(k, detail)

        for f in elements:
            e = as_element(f, n)
            if algebra_diff(algebra_diff(e)):
                flag("algebra.d2", f"d(d({f})) != 0")
            if reverse(reverse(f)) != f:
                flag("algebra.reverse", f"reverse is not an involution on {f}")
            if cross(reverse(f)) != cross(f):
                flag("algebra.reverse", f"reverse changes the crossings of {f}")
            if {reverse(h) for h in diff_basis(f)} != diff_basis(reverse(f)):
                flag("algebra.reverse", f"reverse does not commute with d on {f}")
            try:
                factorize(f)
            except FactorizationError as error:
                flag("algebra.factorize", str(error))
            gf = gradings_alg(f, gd)
            for h in diff_basis(f):
                if gradings_alg(h, gd) != (gf[0], gf[1] - 1):
                    flag("algebra.gradings", f"d{f} contains {h} of the wrong degree")
            for g in by_source.get(f.target, []):
                fg = mul_basis(f, g)
                eg = as_element(g, n)
                lhs = algebra_diff(algebra_mul(e, eg))
                rhs = algebra_mul(algebra_diff(e), eg) + algebra_mul(e, algebra_diff(eg))
                if lhs != rhs:
                    flag("algebra.leibniz", f"Leibniz fails on {f}, {g}")
                if mul_basis(reverse(g), reverse(f)) != (reverse(fg) if fg is not None else None):
                    flag("algebra.reverse", f"reverse is not anti-multiplicative on {f}, {g}")
                if fg is not None:
                    gg = gradings_alg(g, gd)
                    if gradings_alg(fg, gd) != (gf[0] + gg[0], gf[1] + gg[1]):
                        flag("algebra.gradings", f"{f}*{g} has the wrong degree")
                if deep:
                    for h in by_source.get(g.target, []):
                        first = mul_basis(fg, h) if fg is not None else None
                        gh = mul_basis(g, h)
                        second = mul_basis(f, gh) if gh is not None else None
                        if first != second:
                            flag("algebra.associativity", f"({f}*{g})*{h} != {f}*({g}*{h})")
        out.extend(bad.items())
        out.extend(relation_properties(n, k, witness))
    return out


def relation_properties(n: int, k: int, witness) -> List[Outcome]:
    """
    Commutation (disjoint or nested chords), vanishing (interleaved chords),
    chaining, and the relation form of the differential, on every rho.
    """
    bad: Dict[str, Optional[Dict[str, Any]]] = {
        "relations.commute": None,
        "relations.vanish": None,
        "relations.chain": None,
        "relations.diff": None,
    }

    def flag(name: str, detail: str) -> None:
        if bad[name] is None:
            bad[name] = witness(k, detail)

    for s in combinations(range(n + 1), k):
        s = frozenset(s)
        for i, j in _moves(n, s):
            first = rho(n, s, i, j)
            if set(relation_diff(n, s, i, j)) != diff_basis(first):
                flag("relations.diff", f"d rho({sorted(s)},{i},{j})")
            t = first.target
            for l, m in _moves(n, t):
                product_ = mul_basis(first, rho(n, t, l, m))
                if l == j:
                    if m not in s and product_ != rho(n, s, i, m):
                        flag("relations.chain", f"rho({i},{j}) rho({j},{m}) on {sorted(s)}")
                elif i < l < j < m:
                    if product_ is not None:
                        flag("relations.vanish", f"rho({i},{j}) rho({l},{m}) on {sorted(s)}")
                elif (j < l or m < i or i < l < m < j or l < i < j < m) and l in s and m not in s:
                    other = rho(n, s, l, m)
                    if i in other.target and j not in other.target:
                        swapped = mul_basis(other, rho(n, other.target, i, j))
                        if swapped != product_:
                            flag("relations.commute", f"rho({i},{j}), rho({l},{m}) on {sorted(s)}")
    return list(bad.items())


def _moves(n: int, s: Iterable[int]) -> Iterator[Tuple[int, int]]:
    s = frozenset(s)
    for i in sorted(s):
        for j in range(i + 1, n + 1):
            if j not in s:
                yield i, j


def tally(results: Iterable[Iterable[Outcome]], witness_limit: int) -> Dict[str, Dict[str, Any]]:
    """Per property: passes, failures and the smallest failing witnesses."""
    table: Dict[str, Dict[str, Any]] = {}
    for outcomes in results:
        for name, failure in outcomes:
            row = table.setdefault(name, {"passed": 0, "failed": 0, "witnesses": []})
            if failure is None:
                row["passed"] += 1
            else:
                row["failed"] += 1
                row["witnesses"].append(failure)
    for row in table.values():
        row["witnesses"] = sorted(row["witnesses"], key=_witness_order)[:witness_limit]
    return dict(sorted(table.items()))


def _witness_order(w: Dict[str, Any]):
    return (w.get("n", 0), w.get("x", []), w.get("o", []), w.get("cuts", []), w.get("k", 0), w["detail"])


def merge_profiles(profiles: Iterable[Dict[str, int]]) -> Dict[str, int]:
    total: Counter = Counter()
    for p in profiles:
        total.update(p)
    return dict(sorted(total.items()))
