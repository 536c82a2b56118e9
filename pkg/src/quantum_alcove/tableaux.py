"""Column-shape KR crystals of types A and C, their tensor products and the
signature rule, including the affine operators f_0, e_0.

A column is a tuple of letters, strictly increasing in the letter order of the
root system.  A tensor element b_1 (x) ... (x) b_k is a tuple of columns; the
word of b reads every column bottom to top, columns left to right.  Type C
columns are Kashiwara-Nakashima (KN) columns; their operators are computed on
the split doubling lC rC (f_i acts there as f_i^2) and pulled back.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .root_core import ResourceLimitError, RootSystem, Vector, letter_str

Column = tuple
Tensor = tuple

DEFAULT_MAX_VERTICES = 200000


class CrystalError(AssertionError):
    """A crystal operation left the set of valid elements."""


def sort_column(rs: RootSystem, col) -> Column:
    return tuple(sorted(col, key=rs.key))


def is_column(rs: RootSystem, col: Sequence[int]) -> bool:
    keys = [rs.key(x) for x in col]
    if any(x not in rs.letters for x in col) or any(a >= b for a, b in zip(keys, keys[1:])):
        return False
    return 1 <= len(col) <= (rs.n - 1 if rs.kind == "A" else rs.n)


def is_kn_column(rs: RootSystem, col: Sequence[int]) -> bool:
    """No pair z = x_p, z-bar = x_q with q - p <= r - z."""
    r = len(col)
    where = {x: p for p, x in enumerate(col, start=1)}
    for z, p in where.items():
        if z > 0 and -z in where and where[-z] - p <= r - z:
            return False
    return True


def split_column(rs: RootSystem, col: Sequence[int]) -> Optional[tuple[Column, Column]]:
    """The split (lC, rC) of a type C column, or None if it cannot be split."""
    present = set(col)
    I = sorted((z for z in present if z > 0 and -z in present), reverse=True)
    ts = []
    bound = None
    for z in I:
        limit = z if bound is None else min(bound, z)
        t = next((t for t in range(limit - 1, 0, -1)
                  if t not in present and -t not in present), None)
        if t is None:
            return None
        ts.append(t)
        bound = t
    lmap = {z: t for z, t in zip(I, ts)}
    rmap = {-z: -t for z, t in zip(I, ts)}
    left = sort_column(rs, [lmap.get(x, x) for x in col])
    right = sort_column(rs, [rmap.get(x, x) for x in col])
    return left, right


def unsplit_column(rs: RootSystem, left: Sequence[int], right: Sequence[int]) -> Optional[Column]:
    """The KN column whose split is (left, right), if there is one."""
    col = sort_column(rs, [x for x in right if x > 0] + [x for x in left if x < 0])
    if len(col) != len(left) or len(set(col)) != len(col):
        return None
    if split_column(rs, col) != (tuple(left), tuple(right)):
        return None
    return col


def check_split_columns(rs: RootSystem, heights: Sequence[int]) -> list[dict]:
    """Over all increasing columns of the given heights: the KN condition
    holds iff the column splits, and a split (lC, rC) meets each {x, x-bar}
    on both sides or on neither."""
    letters = sorted(rs.letters, key=rs.key)
    bad = []
    for r in sorted(set(heights)):
        for col in itertools.combinations(letters, r):
            pair = split_column(rs, col)
            if is_kn_column(rs, col) != (pair is not None):
                bad.append({"column": list(col), "statement": "KN iff splittable"})
                continue
            if pair is None:
                continue
            left, right = set(pair[0]), set(pair[1])
            for x in range(1, rs.n + 1):
                if bool(left & {x, -x}) != bool(right & {x, -x}):
                    bad.append({"column": list(col), "x": x, "statement": "split meets {x, x-bar}"})
    return bad


def columns_of_height(rs: RootSystem, r: int) -> list[Column]:
    letters = sorted(rs.letters, key=rs.key)
    cols = [tuple(c) for c in itertools.combinations(letters, r)]
    if rs.kind == "C":
        cols = [c for c in cols if is_kn_column(rs, c)]
    return cols


# -- words and signatures ------------------------------------------------------


def word(b: Tensor) -> list[int]:
    return [x for col in b for x in reversed(col)]


def _symbol(rs: RootSystem, i: int, x: int) -> int:
    """+1, -1 or 0: the signature symbol of letter x for index i."""
    n = rs.n
    if rs.kind == "A":
        if i == 0:
            return 1 if x == n else -1 if x == 1 else 0
        return 1 if x == i else -1 if x == i + 1 else 0
    if i == 0:
        return 1 if x == -1 else -1 if x == 1 else 0
    if i == n:
        return 1 if x == n else -1 if x == -n else 0
    if x == i or x == -(i + 1):
        return 1
    if x == i + 1 or x == -i:
        return -1
    return 0


@dataclass(frozen=True)
class SignatureWord:
    # (symbol, column index, cell index) in reading order
    raw: tuple[tuple[int, int, int], ...]
    reduced: tuple[tuple[int, int, int], ...]

    @property
    def plus(self) -> int:
        return sum(1 for s, _, _ in self.reduced if s > 0)

    @property
    def minus(self) -> int:
        return sum(1 for s, _, _ in self.reduced if s < 0)

    def __str__(self):
        return "".join("+" if s > 0 else "-" for s, _, _ in self.reduced)


def i_signature(rs: RootSystem, b: Tensor, i: int) -> SignatureWord:
    if not 0 <= i <= rs.rank:
        raise ValueError(f"operator index {i} out of range 0..{rs.rank}")
    raw = []
    for c, col in enumerate(b):
        cells = [(_symbol(rs, i, x), c, r) for r, x in reversed(list(enumerate(col)))]
        cells = [cell for cell in cells if cell[0]]
        # In type A the letters n and 1 of one column cancel for i = 0, as in
        # the promotion-rotated column.
        if rs.kind == "A" and i == 0 and len(cells) == 2:
            cells = []
        raw.extend(cells)
    reduced: list = []
    for cell in raw:
        if cell[0] > 0 and reduced and reduced[-1][0] < 0:
            reduced.pop()
        else:
            reduced.append(cell)
    return SignatureWord(tuple(raw), tuple(reduced))


def _change(rs: RootSystem, i: int, x: int, raise_: bool) -> int:
    """Letter produced from x by f_i (lowering) or e_i (raising)."""
    n = rs.n
    if rs.kind == "A":
        if i == 0:
            return n if raise_ else 1
        return i if raise_ else i + 1
    if i == 0:
        return -1 if raise_ else 1
    if i == n:
        return n if raise_ else -n
    if x > 0:
        return i if raise_ else i + 1
    return -(i + 1) if raise_ else -i


def _apply(rs: RootSystem, b: Tensor, i: int, raise_: bool) -> Optional[Tensor]:
    sig = i_signature(rs, b, i)
    if raise_:
        cells = [cell for cell in sig.reduced if cell[0] < 0]
        if not cells:
            return None
        _, c, r = cells[0]
    else:
        cells = [cell for cell in sig.reduced if cell[0] > 0]
        if not cells:
            return None
        _, c, r = cells[-1]
    col = list(b[c])
    col[r] = _change(rs, i, col[r], raise_)
    new = sort_column(rs, col)
    if len(set(new)) != len(new):
        raise CrystalError(f"operator {i} produced a repeated letter in {b}")
    return b[:c] + (new,) + b[c + 1:]


def double(rs: RootSystem, b: Tensor) -> Tensor:
    out = []
    for col in b:
        pair = split_column(rs, col)
        if pair is None:
            raise CrystalError(f"{col} is not a KN column")
        out.extend(pair)
    return tuple(out)


def undouble(rs: RootSystem, d: Tensor) -> Tensor:
    out = []
    for left, right in zip(d[0::2], d[1::2]):
        col = unsplit_column(rs, left, right)
        if col is None:
            raise CrystalError(f"({left}, {right}) is not a split KN column")
        out.append(col)
    return tuple(out)


def _operate(rs: RootSystem, b: Tensor, i: int, raise_: bool) -> Optional[Tensor]:
    if rs.kind == "A":
        return _apply(rs, b, i, raise_)
    d = double(rs, b)
    for _ in range(2):
        d = _apply(rs, d, i, raise_)
        if d is None:
            return None
    return undouble(rs, d)


def f_i(rs: RootSystem, b: Tensor, i: int) -> Optional[Tensor]:
    return _operate(rs, b, i, raise_=False)


def e_i(rs: RootSystem, b: Tensor, i: int) -> Optional[Tensor]:
    return _operate(rs, b, i, raise_=True)


def f_i_word(rs: RootSystem, b: Tensor, i: int) -> Optional[Tensor]:
    """f_i by the signature rule on the word of b itself, without splitting."""
    return _apply(rs, b, i, raise_=False)


def phi(rs: RootSystem, b: Tensor, i: int) -> int:
    return i_signature(rs, b, i).plus


def epsilon(rs: RootSystem, b: Tensor, i: int) -> int:
    return i_signature(rs, b, i).minus


def weight(rs: RootSystem, b: Tensor) -> Vector:
    v = [0] * rs.n
    for col in b:
        for x in col:
            v[abs(x) - 1] += 1 if x > 0 else -1
    return rs.canonical(v)


def is_dual_demazure(rs: RootSystem, b: Tensor, i: int) -> bool:
    return i != 0 or phi(rs, b, 0) >= 2


def is_demazure(rs: RootSystem, b: Tensor, i: int) -> bool:
    return i != 0 or epsilon(rs, b, 0) >= 1


def classify_arrow(rs: RootSystem, b: Tensor, i: int) -> str:
    if f_i(rs, b, i) is None:
        raise ValueError(f"f_{i} is undefined on {b}")
    dem, dual = is_demazure(rs, b, i), is_dual_demazure(rs, b, i)
    if dem and dual:
        return "both"
    if dem:
        return "demazure"
    if dual:
        return "dual_demazure"
    return "neither"


# -- tensor product crystals ---------------------------------------------------


def tensor_shape(lam: Sequence[int]) -> tuple[int, ...]:
    """Column heights lambda'_1, lambda'_2, ... of the partition."""
    lam = [x for x in lam if x > 0]
    return tuple(sum(1 for x in lam if x > c) for c in range(lam[0])) if lam else ()


def highest_element(lam: Sequence[int]) -> Tensor:
    return tuple(tuple(range(1, h + 1)) for h in tensor_shape(lam))


def tensor_elements(rs: RootSystem, lam: Sequence[int]) -> list[Tensor]:
    factors = [columns_of_height(rs, h) for h in tensor_shape(lam)]
    return [tuple(b) for b in itertools.product(*factors)]


@dataclass(frozen=True)
class CrystalEdge:
    source: int
    target: int
    i: int
    demazure: bool
    dual_demazure: bool


@dataclass
class CrystalGraph:
    rs: RootSystem
    lam: tuple[int, ...]
    vertices: list[Tensor]
    edges: list[CrystalEdge] = field(default_factory=list)
    energy: Optional[dict] = None

    def index(self) -> dict:
        return {b: k for k, b in enumerate(self.vertices)}

    def label(self, b: Tensor, overline: bool = False) -> str:
        sep = "⊗" if overline else "(x)"
        return sep.join("/".join(letter_str(x, overline) for x in col) for col in b)

    def to_json(self, overline: bool = False) -> str:
        doc = {
            "type": self.rs.kind,
            "n": self.rs.n,
            "lambda": list(self.lam),
            "vertices": [],
            "edges": [{"from": e.source, "to": e.target, "i": e.i, "demazure": e.demazure,
                       "dual_demazure": e.dual_demazure} for e in self.edges],
        }
        for b in self.vertices:
            v = {"columns": [list(col) for col in b], "label": self.label(b, overline)}
            if self.energy is not None:
                v["energy"] = self.energy.get(b)
            doc["vertices"].append(v)
        return json.dumps(doc, indent=1, sort_keys=True, ensure_ascii=not overline)

    def to_dot(self, overline: bool = False) -> str:
        lines = ["digraph tensor_crystal {"]
        for k, b in enumerate(self.vertices):
            extra = ""
            if self.energy is not None and self.energy.get(b) is not None:
                extra = f", energy={self.energy[b]}"
            lines.append(f'  v{k} [label="{self.label(b, overline)}"{extra}];')
        for e in self.edges:
            lines.append(f'  v{e.source} -> v{e.target} [label="{e.i}", i={e.i}, '
                         f'demazure={str(e.demazure).lower()}, '
                         f'dual_demazure={str(e.dual_demazure).lower()}];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_tensor_crystal(rs: RootSystem, lam: Sequence[int],
                         max_vertices: int = DEFAULT_MAX_VERTICES) -> CrystalGraph:
    lam = tuple(x for x in lam if x > 0)
    size = 1
    for h in tensor_shape(lam):
        size *= len(columns_of_height(rs, h))
    if size > max_vertices:
        raise ResourceLimitError(f"tensor crystal has {size} vertices > bound {max_vertices}")
    vertices = sorted(tensor_elements(rs, lam),
                      key=lambda b: tuple(rs.key(x) for col in b for x in col))
    graph = CrystalGraph(rs, lam, vertices)
    index = graph.index()
    for s, b in enumerate(vertices):
        for i in range(rs.rank + 1):
            t = f_i(rs, b, i)
            if t is None:
                continue
            graph.edges.append(CrystalEdge(s, index[t], i, is_demazure(rs, b, i),
                                           is_dual_demazure(rs, b, i)))
    return graph


@dataclass
class EnergyResult:
    values: dict  # vertex -> int, or None when not reached from the anchor
    conflicts: list

    @property
    def unreached(self) -> list:
        return [b for b, d in self.values.items() if d is None]


def energy(graph: CrystalGraph, anchor: Optional[Tensor] = None) -> EnergyResult:
    """Propagate D from D(anchor) = 0 along classical arrows (D unchanged) and
    dual Demazure 0-arrows (D drops by one), in both directions."""
    if anchor is None:
        anchor = highest_element(graph.lam)
    adj: dict = {b: [] for b in graph.vertices}
    used = []
    for e in graph.edges:
        if e.i != 0 or e.dual_demazure:
            step = -1 if e.i == 0 else 0
            s, t = graph.vertices[e.source], graph.vertices[e.target]
            adj[s].append((t, step))
            adj[t].append((s, -step))
            used.append((s, t, step))
    values = {b: None for b in graph.vertices}
    values[anchor] = 0
    queue = deque([anchor])
    while queue:
        b = queue.popleft()
        for c, step in adj[b]:
            if values[c] is None:
                values[c] = values[b] + step
                queue.append(c)
    conflicts = []
    for s, t, step in used:
        if values[s] is not None and values[t] != values[s] + step:
            conflicts.append({"from": graph.label(s), "to": graph.label(t),
                              "D_from": values[s], "D_to": values[t], "step": step})
    graph.energy = values
    return EnergyResult(values, conflicts)
