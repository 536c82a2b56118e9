"""The quantum Bruhat graph on the Weyl group.

Edges w -> w s_beta (beta positive) are Bruhat covers when the length goes up
by one and quantum edges when it drops by 2<rho, beta-coroot> - 1.  Besides
the length definition this module implements the circular-order edge
criteria for types A and C, which decide existence of an edge without any
length computation; the edge kind is then read off the length difference.
"""

from __future__ import annotations

import enum
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .root_core import ResourceLimitError, Root, RootSystem, WeylElement

DEFAULT_MAX_GROUP_ORDER = 3628800  # 10!


class EdgeKind(enum.Enum):
    COVER = "cover"
    QUANTUM = "quantum"
    NONE = "none"

    def __bool__(self):
        return self is not EdgeKind.NONE


def edge_kind_by_length(w: WeylElement, beta: Root) -> EdgeKind:
    rs = w.rs
    beta = rs.check_root(abs(beta))
    lw = w.length
    lv = w.right_reflect(beta).length
    if lv == lw + 1:
        return EdgeKind.COVER
    if lv == lw - 2 * rs.pairing(rs.rho, beta) + 1:
        return EdgeKind.QUANTUM
    return EdgeKind.NONE


def _kind_from_lengths(w: WeylElement, beta: Root) -> EdgeKind:
    return EdgeKind.COVER if w.right_reflect(beta).length > w.length else EdgeKind.QUANTUM


def edge_kind_fast_A(w: WeylElement, beta: Root) -> EdgeKind:
    """Type A criterion: no k in (i, j) with w(i) < w(k) < w(j) circularly from w(i)."""
    rs = w.rs
    i, j = beta.i, beta.j
    wi, wj = w(i), w(j)
    for k in range(i + 1, j):
        if rs.circular_less(wi, w(k), wj):
            return EdgeKind.NONE
    return _kind_from_lengths(w, beta)


def edge_kind_fast_C(w: WeylElement, beta: Root) -> EdgeKind:
    """Type C criteria, one per root class (i,j), (i,j-bar), (i,i-bar)."""
    rs = w.rs
    key = rs.key
    i, j = beta.i, beta.j
    wi = w(i)
    if j > 0:
        wj = w(j)
        for k in range(i + 1, j):
            if rs.circular_less(wi, w(k), wj):
                return EdgeKind.NONE
        return _kind_from_lengths(w, beta)
    if j == -i:
        wb = w(-i)
        for k in range(i + 1, rs.n + 1):
            if rs.circular_less(wi, w(k), wb):
                return EdgeKind.NONE
        return _kind_from_lengths(w, beta)
    # (i, j-bar), i < j
    wb = w(j)
    if not (key(wi) < key(wb) and (wi > 0) == (wb > 0)):
        return EdgeKind.NONE
    lo, hi = key(i), key(j)
    for k in rs.letters:
        if lo < key(k) < hi and key(wi) < key(w(k)) < key(wb):
            return EdgeKind.NONE
    return _kind_from_lengths(w, beta)


def edge_kind(w: WeylElement, beta: Root) -> EdgeKind:
    if w.rs.kind == "A":
        return edge_kind_fast_A(w, beta)
    return edge_kind_fast_C(w, beta)


def _reflection_label(u: WeylElement, v: WeylElement) -> Root | None:
    """The positive root beta with v = u s_beta, if any."""
    for beta in u.rs.positive_roots:
        if u.right_reflect(beta) == v:
            return beta
    return None


def is_edge(u: WeylElement, v: WeylElement) -> bool:
    beta = _reflection_label(u, v)
    return beta is not None and bool(edge_kind_by_length(u, beta))


def is_cover(u: WeylElement, v: WeylElement) -> bool:
    beta = _reflection_label(u, v)
    return beta is not None and edge_kind_by_length(u, beta) is EdgeKind.COVER


def is_quantum(u: WeylElement, v: WeylElement) -> bool:
    beta = _reflection_label(u, v)
    return beta is not None and edge_kind_by_length(u, beta) is EdgeKind.QUANTUM


@dataclass
class QuantumBruhatGraph:
    rs: RootSystem
    vertices: list[WeylElement]
    # adjacency keyed by vertex index: parallel (target, root, kind) lists
    targets: list[list[int]] = field(default_factory=list)
    labels: list[list[Root]] = field(default_factory=list)
    kinds: list[list[EdgeKind]] = field(default_factory=list)

    def edges(self):
        for s, (ts, ls, ks) in enumerate(zip(self.targets, self.labels, self.kinds)):
            for t, beta, kind in zip(ts, ls, ks):
                yield s, t, beta, kind

    @property
    def num_edges(self) -> int:
        return sum(len(ts) for ts in self.targets)

    def to_json(self, overline: bool = False) -> str:
        doc = {
            "type": self.rs.kind,
            "n": self.rs.n,
            "vertices": [v.label(overline) for v in self.vertices],
            "edges": [
                {"from": s, "to": t, "root": beta.label(), "kind": kind.value}
                for s, t, beta, kind in self.edges()
            ],
        }
        return json.dumps(doc, indent=1, sort_keys=True, ensure_ascii=not overline)

    def to_dot(self, overline: bool = False) -> str:
        lines = [f"digraph qbg_{self.rs.kind}{self.rs.n} {{"]
        for k, v in enumerate(self.vertices):
            lines.append(f'  v{k} [label="{v.label(overline)}"];')
        for s, t, beta, kind in self.edges():
            style = "solid" if kind is EdgeKind.COVER else "dashed"
            lines.append(f'  v{s} -> v{t} [label="{beta.label()}", kind={kind.value}, style={style}];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _out_edges(args):
    rs, window = args
    w = WeylElement(rs, window)
    out = []
    for beta in rs.positive_roots:
        kind = edge_kind(w, beta)
        if kind:
            out.append((w.right_reflect(beta).window, beta, kind))
    return out


def build_graph(rs: RootSystem, max_group_order: int = DEFAULT_MAX_GROUP_ORDER,
                workers: int = 1) -> QuantumBruhatGraph:
    if rs.group_order() > max_group_order:
        raise ResourceLimitError(
            f"group {rs} has order {rs.group_order()} > bound {max_group_order}")
    vertices = list(rs.elements())
    index = {v.window: k for k, v in enumerate(vertices)}
    jobs = [(rs, v.window) for v in vertices]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_out_edges, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        results = [_out_edges(job) for job in jobs]
    graph = QuantumBruhatGraph(rs, vertices)
    for out in results:
        graph.targets.append([index[t] for t, _, _ in out])
        graph.labels.append([beta for _, beta, _ in out])
        graph.kinds.append([kind for _, _, kind in out])
    return graph


# -- structural checks (exhaustive) ------------------------------------------


def check_fast_predicates(rs: RootSystem) -> list[dict]:
    """Disagreements between the circular-order and the length predicates."""
    bad = []
    for w in rs.elements():
        for beta in rs.positive_roots:
            fast, slow = edge_kind(w, beta), edge_kind_by_length(w, beta)
            if fast is not slow:
                bad.append({"w": w.label(), "root": beta.label(),
                            "fast": fast.value, "length": slow.value})
    return bad


def check_lemma_theta(rs: RootSystem) -> list[dict]:
    """w^{-1}(theta) > 0 iff w ~> s_theta w, and < 0 iff s_theta w ~> w."""
    theta = rs.theta
    bad = []
    for w in rs.elements():
        pos = w.inverse().act_root(theta).is_positive
        sw = w.left_reflect(theta)
        if pos != is_quantum(w, sw):
            bad.append({"w": w.label(), "statement": "positive iff w ~> s_theta w"})
        if (not pos) != is_quantum(sw, w):
            bad.append({"w": w.label(), "statement": "negative iff s_theta w ~> w"})
    return bad


def check_diamond_lemmas(rs: RootSystem) -> list[dict]:
    """Both diamond statements, with every quantifier unrolled."""
    bad = []
    elements = list(rs.elements())
    for w in elements:
        for beta in rs.positive_roots:
            wb = w.right_reflect(beta)
            for alpha in rs.simple_roots:
                aw = w.left_reflect(alpha)
                if aw == wb:
                    continue
                awb = wb.left_reflect(alpha)
                lhs = is_cover(w, aw) and is_edge(w, wb)
                rhs = is_cover(wb, awb) and is_edge(aw, awb)
                if lhs != rhs:
                    bad.append({"w": w.label(), "alpha": alpha.label(), "beta": beta.label(),
                                "statement": "simple diamond", "lhs": lhs, "rhs": rhs})
                elif lhs and is_cover(w, wb) != is_cover(aw, awb):
                    bad.append({"w": w.label(), "alpha": alpha.label(), "beta": beta.label(),
                                "statement": "simple diamond cover clause"})
            tw = w.left_reflect(rs.theta)
            if tw == wb:
                continue
            twb = wb.left_reflect(rs.theta)
            lhs = is_quantum(w, tw) and is_edge(w, wb)
            rhs = is_quantum(wb, twb) and is_edge(tw, twb)
            if lhs != rhs:
                bad.append({"w": w.label(), "beta": beta.label(),
                            "statement": "theta diamond", "lhs": lhs, "rhs": rhs})
    return bad


def check_graph_edges(graph: QuantumBruhatGraph) -> list[dict]:
    """Re-assert the length identity on every constructed edge and recount."""
    rs = graph.rs
    bad = []
    for s, t, beta, kind in graph.edges():
        u, v = graph.vertices[s], graph.vertices[t]
        diff = v.length - u.length
        want = 1 if kind is EdgeKind.COVER else 1 - 2 * rs.pairing(rs.rho, beta)
        if diff != want or not beta.is_positive:
            bad.append({"from": u.label(), "to": v.label(), "root": beta.label()})
    recount = sum(1 for w in graph.vertices for b in rs.positive_roots if edge_kind_by_length(w, b))
    if recount != graph.num_edges:
        bad.append({"recount": recount, "built": graph.num_edges})
    return bad
