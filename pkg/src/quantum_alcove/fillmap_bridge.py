"""Filling maps from subsets of a lambda-chain to tableaux, and the verifier
comparing the alcove-model crystal with the tensor-product crystal.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import alcove_model as am
from . import tableaux as tb
from .alcove_model import INF, LambdaChain
from .root_core import RootSystem, Vector, WeylElement


@dataclass(frozen=True)
class FillResult:
    J: tuple[int, ...]
    columns: tuple[tuple[int, ...], ...]  # type C: the doubled 2*lambda_1 columns
    perms: tuple[WeylElement, ...]  # pi_1, pi_2, ... one per segment


def _column_heights(chain: LambdaChain) -> list[int]:
    heights = tb.tensor_shape(chain.lam)
    if chain.rs.kind == "C":
        return [h for h in heights for _ in range(2)]
    return list(heights)


def fill(chain: LambdaChain, J: Sequence[int]) -> FillResult:
    """Defined for every J inside [1, m]; admissibility is not required."""
    Jset = set(J)
    w = chain.rs.identity
    cols, perms = [], []
    for (a, b), h in zip(chain.segments, _column_heights(chain)):
        for k in range(a, b + 1):
            if k in Jset:
                w = w.right_reflect(chain.beta(k))
        perms.append(w)
        cols.append(w.window[:h])
    return FillResult(tuple(sorted(Jset)), tuple(cols), tuple(perms))


def sfill_columns(chain: LambdaChain, J: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    rs = chain.rs
    return tuple(tb.sort_column(rs, c) for c in fill(chain, J).columns)


def sfill(chain: LambdaChain, J: Sequence[int]) -> tuple:
    """The tensor element of J; in type C consecutive sorted columns are
    read as split pairs (lC, rC) and pulled back to KN columns."""
    cols = sfill_columns(chain, J)
    if chain.rs.kind == "A":
        return cols
    return tb.undouble(chain.rs, cols)


def content(rs: RootSystem, columns: Sequence[Sequence[int]]) -> Vector:
    """Letter counts; in type C the halved differences N_i - N_ibar of a
    doubled filling."""
    v = [Fraction(0)] * rs.n
    scale = Fraction(1) if rs.kind == "A" else Fraction(1, 2)
    for col in columns:
        for x in col:
            v[abs(x) - 1] += scale if x > 0 else -scale
    return rs.canonical(v)


def verify_weight_lemma(chain: LambdaChain, J: Sequence[int]) -> bool:
    return am.fold(chain, J).mu == content(chain.rs, fill(chain, J).columns)


def height_counting_failures(chain: LambdaChain, J: Sequence[int]) -> list[dict]:
    rs = chain.rs
    F = am.fold(chain, J)
    cols = fill(chain, J).columns
    bad = []
    for k in range(1, chain.m + 1):
        q = chain.segment_of(k) - 1
        g = F.gamma[k - 1]
        lhs = g.sign * F.levels[k - 1]
        rhs = rs.pairing(content(rs, cols[:q]), g)
        if lhs != rhs:
            bad.append({"J": list(F.J), "k": k, "gamma": g.label(), "level": lhs, "count": str(rhs)})
    return bad


def verify_height_counting(chain: LambdaChain, J: Sequence[int]) -> bool:
    return not height_counting_failures(chain, J)


# -- the column statistics a_i, h_j, M', m' ---------------------------------------


@dataclass(frozen=True)
class ColumnStats:
    a: tuple  # a_1, a_2, ... (index 0 unused, a[0] = 0)
    h: tuple  # partial sums h_0, h_1, ...
    M: Fraction
    m: int


def column_stats(rs: RootSystem, columns, p: int) -> ColumnStats:
    alpha = rs.alpha(p)
    a = [Fraction(0)] + [Fraction(rs.pairing(content(rs, [c]), alpha)) for c in columns]
    h, s = [], Fraction(0)
    for x in a:
        s += x
        h.append(s)
    M = max(h)
    return ColumnStats(tuple(a), tuple(h), M, h.index(M))


def plus_minus_sets(rs: RootSystem, p: int) -> tuple[set, set]:
    n = rs.n
    if rs.kind == "A":
        return ({n}, {1}) if p == 0 else ({p}, {p + 1})
    if p == 0:
        return {-1}, {1}
    if p == n:
        return {n}, {-n}
    return {p, -(p + 1)}, {p + 1, -p}


def check_subset_statistics(chain: LambdaChain, J: tuple[int, ...]) -> dict[str, list]:
    """Statements tying g_alpha to the column statistics of sfill(J)."""
    rs = chain.rs
    F = am.fold(chain, J)
    cols = sfill_columns(chain, J)
    half = Fraction(1, 2)
    out: dict[str, list] = {"chain_filling": [], "max_correspondence": [],
                            "root_matching": [], "split_signature": []}
    for p in range(rs.rank + 1):
        alpha = rs.alpha(p)
        st = column_stats(rs, cols, p)
        a = st.a
        where = {"lambda": list(chain.lam), "J": list(J), "p": p}
        for k in range(1, chain.m + 1):
            if F.gamma[k - 1] != alpha or k in J:
                continue
            q = chain.segment_of(k)
            if rs.kind == "A" or q % 2 == 0:
                ok = a[q] == 1
            else:
                ok = a[q] == 1 or (a[q] == half and a[q + 1] == half)
            if not ok:
                out["chain_filling"].append({**where, "k": k, "segment": q,
                                             "a": [str(x) for x in a]})
        prof = am.g_profile(F, p)
        M = prof.M
        delta = 1 if p == 0 else 0
        if not (M >= st.M and (M < delta or M == st.M)):
            out["max_correspondence"].append({**where, "M": str(M), "M_prime": str(st.M)})
        if M > delta:
            _, m, k = am._f_data(F, p, prof)
            want = st.m if rs.kind == "A" or a[st.m] == 1 else st.m - 1
            if chain.segment_of(k) != want:
                out["root_matching"].append({**where, "k": k, "segment": chain.segment_of(k),
                                             "m_prime": st.m})
            stop = len(cols) + 1 if m == INF else chain.segment_of(m)
            if any(a[i] != 0 for i in range(st.m + 1, stop)):
                out["root_matching"].append({**where, "m": str(m), "statement": "a_i = 0 between"})
        if rs.kind == "C" and st.M > 0 and a[st.m] == half:
            plus, minus = plus_minus_sets(rs, p)
            mm = st.m
            ok = mm % 2 == 0
            if ok:
                left, right = set(cols[mm - 2]), set(cols[mm - 1])
                pl, pr = left & plus, right & plus
                ok = (len(pl) == 1 and pl == pr and not (left & minus) and not (right & minus))
            if not ok:
                out["split_signature"].append({**where, "m_prime": mm})
    return out


# -- verification ----------------------------------------------------------------


def _check_chunk(args):
    rs, lam, subsets, admissible = args
    chain = am.lambda_chain(rs, lam)
    names = ["operators_commute", "kn_recovery"]
    out: dict[str, list] = {k: [] for k in names}
    for J in subsets:
        for name, bad in am.check_subset(chain, J, admissible).items():
            out.setdefault(name, []).extend(bad)
        for name, bad in check_subset_statistics(chain, J).items():
            out.setdefault(name, []).extend(bad)
        try:
            b = sfill(chain, J)
        except tb.CrystalError as exc:
            out["kn_recovery"].append({"J": list(J), "error": str(exc)})
            continue
        for p in range(rs.rank + 1):
            where = {"J": list(J), "p": p, "b": [list(c) for c in b]}
            T = am.crystal_f(chain, J, p)
            fb = tb.f_i(rs, b, p)
            arrow = fb is not None and tb.is_dual_demazure(rs, b, p)
            if (T is not None) != arrow:
                out["operators_commute"].append({**where, "op": "f", "model": T and list(T),
                                                 "crystal": fb and [list(c) for c in fb],
                                                 "dual_demazure": arrow})
            elif T is not None and sfill(chain, T) != fb:
                out["operators_commute"].append({**where, "op": "f", "model": list(T),
                                                 "sfill": [list(c) for c in sfill(chain, T)],
                                                 "crystal": [list(c) for c in fb]})
            T = am.crystal_e(chain, J, p)
            eb = tb.e_i(rs, b, p)
            arrow = eb is not None and tb.is_dual_demazure(rs, eb, p)
            if (T is not None) != arrow:
                out["operators_commute"].append({**where, "op": "e", "model": T and list(T),
                                                 "crystal": eb and [list(c) for c in eb],
                                                 "dual_demazure": arrow})
            elif T is not None and sfill(chain, T) != eb:
                out["operators_commute"].append({**where, "op": "e", "model": list(T)})
    return out


def _chunks(seq, k):
    size = max(1, -(-len(seq) // k))
    return [seq[i:i + size] for i in range(0, len(seq), size)]


def verify_isomorphism(rs: RootSystem, lam: Sequence[int], workers: int = 1,
                       max_chain_length: int = am.DEFAULT_MAX_CHAIN_LENGTH,
                       max_vertices: int = tb.DEFAULT_MAX_VERTICES) -> dict:
    """Exhaustive comparison of the admissible-subset crystal with B^lambda.

    Returns the JSON-ready report; every check passes iff its counterexample
    list is empty.
    """
    chain = am.lambda_chain(rs, lam)
    lam = chain.lam
    admissible = am.enumerate_admissible(chain, workers=workers, max_chain_length=max_chain_length)
    adm_set = frozenset(admissible)
    graph = tb.build_tensor_crystal(rs, lam, max_vertices=max_vertices)

    checks: dict[str, list] = {}
    images = {}
    for J in admissible:
        try:
            images[J] = sfill(chain, J)
        except tb.CrystalError:
            pass
    vertex_set = set(graph.vertices)
    bij = []
    if len(set(images.values())) != len(images):
        bij.append({"statement": "sfill injective"})
    missing = vertex_set - set(images.values())
    if missing or len(admissible) != len(graph.vertices):
        bij.append({"statement": "sfill surjective", "admissible": len(admissible),
                    "vertices": len(graph.vertices),
                    "missing": sorted([[list(c) for c in b] for b in missing])[:20]})
    checks["sfill_bijection"] = bij
    if rs.kind == "C":
        checks["kn_split_columns"] = tb.check_split_columns(rs, tb.tensor_shape(lam))

    jobs = [(rs, lam, part, adm_set) for part in _chunks(admissible, max(1, workers) * 4)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_check_chunk, jobs))
    else:
        parts = [_check_chunk(job) for job in jobs]
    for part in parts:
        for name, bad in part.items():
            checks.setdefault(name, []).extend(bad)

    res = tb.energy(graph, anchor=sfill(chain, ()))
    checks["energy_recursion_consistent"] = res.conflicts
    mismatch = []
    for J, b in images.items():
        d = res.values.get(b)
        if d is not None and d != -am.fold(chain, J).height:
            mismatch.append({"J": list(J), "D": d, "height": am.fold(chain, J).height})
    checks["energy_equals_minus_height"] = mismatch

    # 0-arrows of the crystal that are not dual Demazure must be invisible
    # to the model: f_0(J) is zero there
    hidden, leaked = 0, []
    inverse = {b: J for J, b in images.items()}
    for e in graph.edges:
        if e.i == 0 and not e.dual_demazure:
            hidden += 1
            J = inverse.get(graph.vertices[e.source])
            if J is not None and am.crystal_f(chain, J, 0) is not None:
                leaked.append({"J": list(J), "b": graph.label(graph.vertices[e.source])})
    checks["non_dual_demazure_arrows_zero"] = leaked

    report = {
        "kind": rs.kind,
        "n": rs.n,
        "lambda": list(lam),
        "counts": {
            "admissible": len(admissible),
            "tensor_vertices": len(graph.vertices),
            "chain_length": chain.m,
            "energy_reached": sum(1 for d in res.values.values() if d is not None),
            "non_dual_demazure_0_arrows": hidden,
        },
        "checks": [{"name": name, "pass": not bad,
                    "counterexamples": sorted(bad, key=lambda d: json.dumps(d, sort_keys=True))}
                   for name, bad in sorted(checks.items())],
    }
    return report


def report_passed(report: dict) -> bool:
    return all(c["pass"] for c in report["checks"])
