"""The quantum alcove model: lambda-chains, folding, admissible subsets and
the crystal operators f_p, e_p on admissible subsets.

Positions in a chain are 1-based, as are the entries of a subset J.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .qbg import EdgeKind, edge_kind
from .root_core import ResourceLimitError, Root, RootSystem, WeylElement, Vector

INF = math.inf
DEFAULT_MAX_CHAIN_LENGTH = 64


class ModelError(AssertionError):
    """An internal consistency statement of the model failed."""


def conjugate(lam: Sequence[int]) -> tuple[int, ...]:
    lam = [x for x in lam if x > 0]
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x > c) for c in range(lam[0]))


def check_partition(rs: RootSystem, lam: Sequence[int]) -> tuple[int, ...]:
    lam = tuple(int(x) for x in lam)
    while lam and lam[-1] == 0:
        lam = lam[:-1]
    if any(x < 0 for x in lam) or any(a < b for a, b in zip(lam, lam[1:])):
        raise ValueError(f"{lam} is not a partition")
    max_parts = rs.n - 1 if rs.kind == "A" else rs.n
    if len(lam) > max_parts:
        raise ValueError(f"partition {lam} has more than {max_parts} parts for {rs}")
    return lam


def omega_chain(rs: RootSystem, k: int) -> list[Root]:
    """The omega_k-chain of positive roots used to build lambda-chains."""
    n = rs.n
    if rs.kind == "A":
        if not 1 <= k <= n - 1:
            raise ValueError(f"k={k} out of range 1..{n - 1}")
        return [Root(i, j) for i in range(k, 0, -1) for j in range(k + 1, n + 1)]
    if not 1 <= k <= n:
        raise ValueError(f"k={k} out of range 1..{n}")
    return omega_chain_left(rs, k) + omega_chain_right(rs, k)


def _gamma_i(i: int) -> list[Root]:
    return [Root.from_letters(i, -j) for j in range(i - 1, 0, -1)]


def _gamma_ki(n: int, k: int, i: int) -> list[Root]:
    roots = [Root.from_letters(i, j) for j in range(k + 1, n + 1)]
    roots.append(Root.from_letters(i, -i))
    roots += [Root.from_letters(i, -j) for j in range(n, k, -1)]
    roots += _gamma_i(i)
    return roots


def omega_chain_left(rs: RootSystem, k: int) -> list[Root]:
    return [r for i in range(k, 0, -1) for r in _gamma_ki(rs.n, k, i)]


def omega_chain_right(rs: RootSystem, k: int) -> list[Root]:
    return [r for i in range(k, 1, -1) for r in _gamma_i(i)]


@dataclass(frozen=True)
class LambdaChain:
    rs: RootSystem
    lam: tuple[int, ...]
    roots: tuple[Root, ...]
    levels: tuple[int, ...]
    colevels: tuple[int, ...]
    # 1-based inclusive (start, end) per segment; end < start for empty segments
    segments: tuple[tuple[int, int], ...]

    @property
    def m(self) -> int:
        return len(self.roots)

    @property
    def weight(self) -> Vector:
        return self.rs.partition_weight(self.lam)

    def beta(self, k: int) -> Root:
        return self.roots[k - 1]

    def segment_of(self, k: int) -> int:
        """1-based segment index containing position k."""
        for q, (a, b) in enumerate(self.segments, start=1):
            if a <= k <= b:
                return q
        raise IndexError(k)

    def rows(self):
        for k in range(1, self.m + 1):
            yield k, self.roots[k - 1], self.levels[k - 1], self.colevels[k - 1], self.segment_of(k)


def lambda_chain(rs: RootSystem, lam: Sequence[int]) -> LambdaChain:
    lam = check_partition(rs, lam)
    roots: list[Root] = []
    segments = []
    for col in conjugate(lam):
        parts = ([omega_chain(rs, col)] if rs.kind == "A"
                 else [omega_chain_left(rs, col), omega_chain_right(rs, col)])
        for part in parts:
            segments.append((len(roots) + 1, len(roots) + len(part)))
            roots += part
    weight = rs.partition_weight(lam)
    levels, colevels = [], []
    seen: dict[Root, int] = {}
    for beta in roots:
        l = seen.get(beta, 0)
        seen[beta] = l + 1
        levels.append(l)
        colevels.append(rs.pairing(weight, beta) - l)
    chain = LambdaChain(rs, lam, tuple(roots), tuple(levels), tuple(colevels), tuple(segments))
    for beta in rs.positive_roots:
        if seen.get(beta, 0) != rs.pairing(weight, beta):
            raise ModelError(f"root {beta} occurs {seen.get(beta, 0)} times in the chain")
    return chain


# -- folding -----------------------------------------------------------------


@dataclass(frozen=True)
class FoldedChain:
    chain: LambdaChain
    J: tuple[int, ...]
    gamma: tuple[Root, ...]
    levels: tuple[int, ...]  # folded levels, one per chain position
    gamma_inf: Vector
    eps: tuple[int, ...]
    mu: Vector
    path: tuple[WeylElement, ...]  # 1, r_{j1}, r_{j1} r_{j2}, ...

    @property
    def rs(self) -> RootSystem:
        return self.chain.rs

    @property
    def j_plus(self) -> tuple[int, ...]:
        return tuple(j for j in self.J if self.gamma[j - 1].is_positive)

    @property
    def j_minus(self) -> tuple[int, ...]:
        return tuple(j for j in self.J if not self.gamma[j - 1].is_positive)

    @property
    def height(self) -> int:
        return sum(self.chain.colevels[j - 1] for j in self.j_minus)

    def to_dict(self) -> dict:
        return {
            "J": list(self.J),
            "gamma": [g.label() for g in self.gamma],
            "levels": list(self.levels),
            "mu": _jsonable(self.mu),
            "height": self.height,
            "J_plus": list(self.j_plus),
            "J_minus": list(self.j_minus),
        }


def _jsonable(v):
    return [x if isinstance(x, int) else str(x) for x in v]


def fold(chain: LambdaChain, J: Iterable[int]) -> FoldedChain:
    """Fold the chain at the positions of J.

    The composed affine map r^_{j1} ... r^_{jp} is kept as a pair (w, t) acting
    by x -> w(x) + t, so the image of H_{beta, -l} is H_{|w(beta)|, -l'} with
    l' = sgn(w beta) (l - <t, w(beta)-coroot>).
    """
    rs = chain.rs
    J = tuple(sorted(set(J)))
    if J and not (1 <= J[0] and J[-1] <= chain.m):
        raise ValueError(f"subset {J} is not inside [1, {chain.m}]")
    Jset = set(J)
    w = rs.identity
    t: Vector = (0,) * rs.n
    gamma, levels, path = [], [], [w]
    for k in range(1, chain.m + 1):
        beta, l = chain.beta(k), chain.levels[k - 1]
        g = w.act_root(beta)
        gamma.append(g)
        lev = l - rs.pairing(t, g)
        levels.append(lev if g.is_positive else -lev)
        if k in Jset:
            gv = rs.root_vector(g)
            t = tuple(x - l * y for x, y in zip(t, gv))
            w = w.right_reflect(beta)
            path.append(w)
    lam = chain.weight
    mu = rs.canonical(tuple(a - b for a, b in zip(w.act_vector(lam), t)))
    gamma_inf = w.act_vector(rs.rho)
    eps = tuple(-1 if k in Jset else 1 for k in range(1, chain.m + 1))
    return FoldedChain(chain, J, tuple(gamma), tuple(levels), gamma_inf, eps, mu, tuple(path))


def height(F: FoldedChain) -> int:
    return F.height


def weight_mu(F: FoldedChain) -> Vector:
    return F.mu


# -- admissibility --------------------------------------------------------------


def is_admissible(chain: LambdaChain, J: Iterable[int]) -> bool:
    w = chain.rs.identity
    for j in sorted(J):
        beta = chain.beta(j)
        if not edge_kind(w, beta):
            return False
        w = w.right_reflect(beta)
    return True


def _dfs(chain: LambdaChain, start: int, w: WeylElement, prefix: tuple[int, ...], out: list):
    out.append(prefix)
    for j in range(start, chain.m + 1):
        beta = chain.beta(j)
        if edge_kind(w, beta):
            _dfs(chain, j + 1, w.right_reflect(beta), prefix + (j,), out)


def _subtree(args):
    chain, j = args
    w = chain.rs.identity.right_reflect(chain.beta(j))
    out: list = []
    _dfs(chain, j + 1, w, (j,), out)
    return out


def enumerate_admissible(chain: LambdaChain, workers: int = 1,
                         max_chain_length: int = DEFAULT_MAX_CHAIN_LENGTH) -> list[tuple[int, ...]]:
    """All admissible subsets in lexicographic order.

    Prefixes of QBG paths are QBG paths, so a depth-first search that only
    extends admissible prefixes visits exactly the admissible subsets.
    """
    if chain.m > max_chain_length:
        raise ResourceLimitError(f"chain length {chain.m} > bound {max_chain_length}")
    ident = chain.rs.identity
    firsts = [j for j in range(1, chain.m + 1) if edge_kind(ident, chain.beta(j))]
    jobs = [(chain, j) for j in firsts]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_subtree, jobs))
    else:
        parts = [_subtree(job) for job in jobs]
    # the DFS already emits lexicographic order; subtrees are merged in order
    result = [()]
    for part in parts:
        result.extend(part)
    return result


# -- the piecewise-linear functions g_alpha --------------------------------------


@dataclass(frozen=True)
class GProfile:
    alpha: Root
    indices: tuple  # I^_alpha: chain positions i_1 < ... < i_n, then INF
    values: tuple  # sgn(alpha) * folded level at each index; <mu, alpha-coroot> at INF
    sigma: tuple  # ((s11, s12), ..., (sn1, sn2), s_{n+1})
    walk: tuple  # g_alpha at 0, 1/2, 1, ..., n + 1/2
    M: Fraction
    mu_pairing: int

    @property
    def length(self) -> int:
        return len(self.indices) - 1

    def at(self, x) -> Fraction:
        """g_alpha(x) for x a multiple of 1/2."""
        return self.walk[int(2 * Fraction(x))]


def _sgn(x) -> int:
    return 1 if x > 0 else -1 if x < 0 else 0


def g_profile(F: FoldedChain, p: int) -> GProfile:
    rs = F.rs
    alpha = rs.alpha(p)
    s = alpha.sign
    pos = abs(alpha)
    idx = [i for i in range(1, F.chain.m + 1) if abs(F.gamma[i - 1]) == pos]
    values = [s * F.levels[i - 1] for i in idx]
    mu_pair = rs.pairing(F.mu, alpha)
    sigma = []
    for i in idx:
        sg = 1 if F.gamma[i - 1].is_positive else -1
        sigma.append((s * sg, s * F.eps[i - 1] * sg))
    last = s * _sgn(rs.pairing(F.gamma_inf, pos))
    sigma.append(last)
    half = Fraction(1, 2)
    g = -half * s
    walk = [g]
    for a, b in sigma[:-1]:
        g += half * a
        walk.append(g)
        g += half * b
        walk.append(g)
    g += half * last
    walk.append(g)
    return GProfile(alpha, tuple(idx) + (INF,), tuple(values) + (mu_pair,), tuple(sigma),
                    tuple(walk), max(walk), mu_pair)


def _replace(J: Sequence[int], remove, add) -> tuple[int, ...]:
    out = set(J)
    if remove != INF:
        out.discard(remove)
    if add != INF:
        out.add(add)
    return tuple(sorted(out))


def _f_data(F: FoldedChain, p: int, prof: GProfile | None = None):
    """(M, m, k) for f_p, with k None when f_p(J) = 0."""
    prof = prof or g_profile(F, p)
    M = prof.M
    delta = 1 if p == 0 else 0
    if not M > delta:
        return M, None, None
    hits = [i for i, v in zip(prof.indices, prof.values) if v == M]
    if not hits:
        raise ModelError(f"maximum {M} of g not attained at an index (J={F.J}, p={p})")
    m = hits[0]
    pos = prof.indices.index(m)
    if pos == 0:
        raise ModelError(f"index {m} has no predecessor (J={F.J}, p={p})")
    return M, m, prof.indices[pos - 1]


def _e_data(F: FoldedChain, p: int, prof: GProfile | None = None):
    """(M, k, m) for e_p, with k None when e_p(J) = 0."""
    prof = prof or g_profile(F, p)
    M = prof.M
    delta = 1 if p == 0 else 0
    if not (M > prof.mu_pairing and M >= delta):
        return M, None, None
    hits = [i for i, v in zip(prof.indices[:-1], prof.values[:-1]) if v == M]
    if not hits:
        raise ModelError(f"maximum {M} of g not attained in I_alpha (J={F.J}, p={p})")
    k = hits[-1]
    pos = prof.indices.index(k)
    return M, k, prof.indices[pos + 1]


def crystal_f(chain: LambdaChain, J: Sequence[int], p: int) -> Optional[tuple[int, ...]]:
    """f_p(J), or None for the zero element."""
    F = fold(chain, J)
    _, m, k = _f_data(F, p)
    if k is None:
        return None
    return _replace(F.J, m, k)


def crystal_e(chain: LambdaChain, J: Sequence[int], p: int) -> Optional[tuple[int, ...]]:
    """e_p(J), or None for the zero element."""
    F = fold(chain, J)
    _, k, m = _e_data(F, p)
    if k is None:
        return None
    return _replace(F.J, k, m)


# -- the crystal on admissible subsets ---------------------------------------------


@dataclass
class AlcoveCrystal:
    chain: LambdaChain
    vertices: list[tuple[int, ...]]
    edges: list[tuple[int, int, int]]  # (source index, target index, p)

    def to_json(self) -> str:
        folded = [fold(self.chain, J) for J in self.vertices]
        doc = {
            "type": self.chain.rs.kind,
            "n": self.chain.rs.n,
            "lambda": list(self.chain.lam),
            "vertices": [{"J": list(F.J), "mu": _jsonable(F.mu), "height": F.height}
                         for F in folded],
            # every f_0 arrow of this model is dual Demazure
            "edges": [{"from": s, "to": t, "i": p, "demazure": None, "dual_demazure": True}
                      for s, t, p in self.edges],
        }
        return json.dumps(doc, indent=1, sort_keys=True)

    def to_dot(self) -> str:
        lines = ["digraph alcove_crystal {"]
        for k, J in enumerate(self.vertices):
            lines.append(f'  v{k} [label="{{{",".join(map(str, J))}}}"];')
        for s, t, p in self.edges:
            lines.append(f'  v{s} -> v{t} [label="{p}", i={p}, dual_demazure=true];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def alcove_crystal(chain: LambdaChain, workers: int = 1,
                   max_chain_length: int = DEFAULT_MAX_CHAIN_LENGTH) -> AlcoveCrystal:
    vertices = enumerate_admissible(chain, workers=workers, max_chain_length=max_chain_length)
    index = {J: k for k, J in enumerate(vertices)}
    edges = []
    for s, J in enumerate(vertices):
        for p in range(chain.rs.rank + 1):
            T = crystal_f(chain, J, p)
            if T is not None:
                if T not in index:
                    raise ModelError(f"f_{p}({J}) = {T} is not admissible")
                edges.append((s, index[T], p))
    return AlcoveCrystal(chain, vertices, edges)


def is_qbg_path(chain: LambdaChain, J: Sequence[int]) -> list[tuple[WeylElement, Root, EdgeKind]]:
    """The steps of the QBG path of J, each with its edge kind (NONE marks a break)."""
    w = chain.rs.identity
    steps = []
    for j in sorted(J):
        beta = chain.beta(j)
        steps.append((w, beta, edge_kind(w, beta)))
        w = w.right_reflect(beta)
    return steps


# -- executable statements about admissible subsets ---------------------------------


def _check_maxima(prof: GProfile, theta: bool) -> list[str]:
    """Shape of g_alpha near its maximum; returns the violated statements."""
    bad = []
    g, M, sigma = prof.walk, prof.M, prof.sigma
    n = prof.length
    half = Fraction(1, 2)
    at_max = [t for t, v in enumerate(g) if v == M]
    if not theta or M >= 1:
        for t in at_max:
            if t % 2 == 0:
                bad.append("maximum at an integer point")
                continue
            m = (t - 1) // 2
            s = sigma[m]
            if s not in ((1, -1), 1):
                bad.append("sigma after a maximum")
        if M.denominator != 1 or M < (1 if theta else 0):
            bad.append("maximum not a nonnegative integer")
    if M > 0 if not theta else M >= 2:
        t = at_max[0]
        m = (t - 1) // 2
        if t % 2 == 0 or m <= 0:
            bad.append("first maximum index m > 0")
        else:
            if sigma[m - 1] != (1, 1):
                bad.append("sigma_m = (1,1) before first maximum")
            if prof.at(m - half) != M - 1:
                bad.append("g(m - 1/2) = M - 1")
            if any(v > M - 1 for v in g[: 2 * m]):
                bad.append("g <= M - 1 before first maximum")
    if M > g[-1] and (not theta or M >= 1):
        t = at_max[-1]
        k = (t + 1) // 2
        if t % 2 == 0 or k > n:
            bad.append("last maximum index k <= n")
        else:
            if sigma[k] not in ((-1, -1), -1):
                bad.append("sigma_{k+1} after last maximum")
            if prof.at(k + half) != M - 1:
                bad.append("g(k + 1/2) = M - 1")
            if any(v > M - 1 for v in g[2 * k + 1:]):
                bad.append("g <= M - 1 after last maximum")
    return bad


def check_subset(chain: LambdaChain, J: tuple[int, ...], admissible: set) -> dict[str, list]:
    """Every model statement for one admissible subset, keyed by check name."""
    rs = chain.rs
    F = fold(chain, J)
    out: dict[str, list] = {k: [] for k in (
        "closure", "partial_inverse", "weight_shift", "conditions_C1_C2",
        "maxima_shape", "profile_levels", "f_predecessor", "e_successor")}
    for p in range(rs.rank + 1):
        alpha = rs.alpha(p)
        prof = g_profile(F, p)
        where = {"lambda": list(chain.lam), "J": list(J), "p": p}
        # values from folded levels equal the walked function
        for k, (i, v) in enumerate(zip(prof.indices, prof.values), start=1):
            if prof.at(Fraction(2 * k - 1, 2)) != v:
                out["profile_levels"].append({**where, "index": str(i), "level": v,
                                              "g": str(prof.at(Fraction(2 * k - 1, 2)))})
        sig = prof.sigma
        if p != 0:
            first = sig[0][0] if len(sig) > 1 else sig[0]
            if first != 1:
                out["conditions_C1_C2"].append({**where, "condition": "C1"})
        for j in range(len(sig) - 1):
            nxt = sig[j + 1][0] if j + 1 < len(sig) - 1 else sig[j + 1]
            if sig[j][1] == 1 and nxt != 1:
                out["conditions_C1_C2"].append({**where, "condition": "C2", "j": j + 1})
        for stmt in _check_maxima(prof, theta=(p == 0)):
            out["maxima_shape"].append({**where, "statement": stmt})

        delta = 1 if p == 0 else 0
        M = prof.M
        if M >= delta:
            hits = [i for i, v in zip(prof.indices, prof.values) if v == M]
            m = hits[0] if hits else None
            if m is None:
                out["f_predecessor"].append({**where, "statement": "maximum attained"})
            elif m != INF and not (F.gamma[m - 1] == alpha and m in J):
                out["f_predecessor"].append({**where, "statement": "gamma_m = alpha, m in J"})
            if M > delta and m is not None:
                k = prof.indices[prof.indices.index(m) - 1] if m != prof.indices[0] else None
                if k is None or not (F.gamma[k - 1] == alpha and k not in J
                                     and alpha.sign * F.levels[k - 1] == M - 1):
                    out["f_predecessor"].append({**where, "statement": "predecessor k"})
        if M > prof.mu_pairing and M >= delta:
            _, k, m = _e_data(F, p, prof)
            if not (F.gamma[k - 1] == alpha and k in J):
                out["e_successor"].append({**where, "statement": "gamma_k = alpha, k in J"})
            if m != INF and not (F.gamma[m - 1] == -alpha and m not in J
                                 and alpha.sign * F.levels[m - 1] == M - 1):
                out["e_successor"].append({**where, "statement": "successor m"})

        for name, op, inv, shift in (("f", crystal_f, crystal_e, -1), ("e", crystal_e, crystal_f, 1)):
            T = op(chain, J, p)
            if T is None:
                continue
            if T not in admissible:
                out["closure"].append({**where, "op": name, "image": list(T)})
                continue
            if inv(chain, T, p) != J:
                out["partial_inverse"].append({**where, "op": name, "image": list(T)})
            want = rs.canonical(tuple(a + shift * b for a, b in
                                      zip(F.mu, rs.root_vector(alpha))))
            got = fold(chain, T).mu
            if got != want:
                out["weight_shift"].append({**where, "op": name, "mu": _jsonable(got),
                                            "expected": _jsonable(want)})
    return out
