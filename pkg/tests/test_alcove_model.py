import itertools
import json
from fractions import Fraction

import pydot
import pytest

from quantum_alcove import alcove_model as am
from quantum_alcove import tableaux as tb
from quantum_alcove.alcove_model import INF, crystal_e, crystal_f, fold, lambda_chain
from quantum_alcove.qbg import edge_kind_by_length
from quantum_alcove.root_core import ResourceLimitError, Root, RootSystem

A3 = RootSystem("A", 3)
A4 = RootSystem("A", 4)
C2 = RootSystem("C", 2)
C3 = RootSystem("C", 3)
EX34 = lambda_chain(A3, (3, 2))
EX36 = (1, 2, 3, 5)

CASES = [(A3, (1,)), (A3, (1, 1)), (A3, (2, 1)), (A3, (3, 2)), (A3, (4, 3)), (A4, (2, 1, 1)),
         (C2, (1,)), (C2, (1, 1)), (C2, (2,)), (C2, (2, 1)), (C3, (1, 1))]


def labels(roots):
    return [r.label() for r in roots]


# -- chains ------------------------------------------------------------------------


def test_omega_chains():
    assert labels(am.omega_chain(A4, 2)) == ["(2,3)", "(2,4)", "(1,3)", "(1,4)"]
    assert labels(am.omega_chain(A3, 2)) == ["(2,3)", "(1,3)"]
    assert labels(am.omega_chain_left(C2, 1)) == ["(1,2)", "(1,-1)", "(1,-2)"]
    assert am.omega_chain_right(C2, 1) == []


def test_example_chain():
    assert labels(EX34.roots) == ["(2,3)", "(1,3)", "(2,3)", "(1,3)", "(1,2)", "(1,3)"]
    assert EX34.levels == (0, 0, 1, 1, 0, 2)
    assert EX34.colevels == (2, 3, 1, 2, 1, 1)
    ch = lambda_chain(RootSystem("A", 2), (1,))
    assert labels(ch.roots) == ["(1,2)"] and ch.levels == (0,) and ch.colevels == (1,)


def _affine_reflect(x, beta_vec, k):
    # s_{beta,k}(x) = x - (<x, beta-coroot> - k) beta
    norm = sum(b * b for b in beta_vec)
    c = Fraction(2 * sum(a * b for a, b in zip(x, beta_vec)), norm)
    return [a - (c - k) * b for a, b in zip(x, beta_vec)]


def _coroot_values(rs, x):
    out = {}
    for beta in rs.positive_roots:
        v = beta.vector(rs.n)
        norm = sum(b * b for b in v)
        out[beta] = Fraction(2 * sum(a * b for a, b in zip(x, v)), norm)
    return out


@pytest.mark.parametrize("rs,lam", CASES + [(C3, (2, 1, 1)), (A4, (3, 2, 1)), (C2, (3, 1))],
                         ids=lambda x: str(x))
def test_chain_is_reduced_alcove_path(rs, lam):
    """Walk a point of the fundamental alcove through the affine reflections:
    each step crosses exactly the hyperplane H_{beta_i, -l_i} and nothing
    else, and the walk ends at the translate by -lambda."""
    chain = lambda_chain(rs, lam)
    # the largest coroot pairing with rho is n - 1 (A) or 2n - 1 (C)
    h = rs.n if rs.kind == "A" else 2 * rs.n
    x0 = [Fraction(c, h) for c in rs.rho]
    x = list(x0)
    for beta, l in zip(chain.roots, chain.levels):
        before = _coroot_values(rs, x)
        x = _affine_reflect(x, beta.vector(rs.n), -l)
        after = _coroot_values(rs, x)
        crossed = []
        for b in rs.positive_roots:
            lo, hi = sorted((before[b], after[b]))
            crossed += [(b, k) for k in range(int(lo) - 2, int(hi) + 3) if lo < k < hi]
        assert crossed == [(beta, -l)]
    target = [a - b for a, b in zip(x0, rs.partition_weight(lam))]
    assert _coroot_values(rs, x) == _coroot_values(rs, target)
    assert chain.m == sum(rs.pairing(chain.weight, b) for b in rs.positive_roots)


@pytest.mark.parametrize("rs,lam", CASES, ids=lambda x: str(x))
def test_root_multiplicities(rs, lam):
    chain = lambda_chain(rs, lam)
    for beta in rs.positive_roots:
        assert chain.roots.count(beta) == rs.pairing(chain.weight, beta)
    for k in range(1, chain.m + 1):
        beta = chain.beta(k)
        assert chain.levels[k - 1] == chain.roots[:k - 1].count(beta)
        assert chain.colevels[k - 1] == chain.roots[k - 1:].count(beta)


def test_bad_partitions():
    with pytest.raises(ValueError):
        lambda_chain(A3, (1, 2))
    with pytest.raises(ValueError):
        lambda_chain(A3, (1, 1, 1))
    with pytest.raises(ValueError):
        lambda_chain(C2, (1, 1, 1))


# -- folding ---------------------------------------------------------------------


def test_example_fold():
    F = fold(EX34, EX36)
    assert labels(F.gamma) == ["(2,3)", "(1,2)", "(3,1)", "(2,3)", "(2,1)", "(1,3)"]
    assert F.j_plus == (1, 2) and F.j_minus == (3, 5)
    assert F.mu == A3.canonical((0, 0, -1))
    assert F.height == 2
    assert list(F.eps) == [-1, -1, -1, 1, -1, 1]


def test_empty_fold():
    F = fold(EX34, ())
    assert F.gamma == EX34.roots and F.mu == EX34.weight and F.height == 0


def test_weight_shift_example():
    mu = fold(EX34, EX36).mu
    a2 = A3.root_vector(A3.alpha(2))
    assert fold(EX34, (1, 2, 3, 4, 5)).mu == A3.canonical([x - y for x, y in zip(mu, a2)])


def _admissible_by_lengths(chain, J):
    w = chain.rs.identity
    for j in J:
        if not edge_kind_by_length(w, chain.beta(j)):
            return False
        w = w.right_reflect(chain.beta(j))
    return True


def test_admissible_examples():
    assert am.is_admissible(EX34, EX36)
    assert am.is_admissible(EX34, ())
    assert am.is_admissible(lambda_chain(A3, (4, 3)), (1, 2, 3, 5, 7))


@pytest.mark.parametrize("rs,lam", [(A3, (3, 2)), (C2, (2, 1)), (A4, (2, 1, 1)), (C3, (1, 1))],
                         ids=lambda x: str(x))
def test_dfs_matches_brute_force(rs, lam):
    chain = lambda_chain(rs, lam)
    brute = [J for r in range(chain.m + 1)
             for J in itertools.combinations(range(1, chain.m + 1), r)
             if _admissible_by_lengths(chain, J)]
    assert am.enumerate_admissible(chain) == sorted(brute)
    for J in brute:
        assert all(J[:i] in set(brute) for i in range(len(J)))


def test_enumeration_trivial():
    ch = lambda_chain(RootSystem("A", 2), (1,))
    assert am.enumerate_admissible(ch) == [(), (1,)]


@pytest.mark.parametrize("rs,lam", CASES, ids=lambda x: str(x))
def test_counts_match_tensor_crystal(rs, lam):
    chain = lambda_chain(rs, lam)
    assert len(am.enumerate_admissible(chain)) == len(tb.tensor_elements(rs, lam))


def test_enumeration_workers_and_bound():
    chain = lambda_chain(C3, (2, 1, 1))
    assert am.enumerate_admissible(chain, workers=3) == am.enumerate_admissible(chain)
    with pytest.raises(ResourceLimitError):
        am.enumerate_admissible(chain, max_chain_length=5)


# -- profiles and operators --------------------------------------------------------


def test_example_profiles():
    F = fold(EX34, EX36)
    p2 = am.g_profile(F, 2)
    assert p2.indices == (1, 4, INF) and p2.values == (0, 0, 1)
    p0 = am.g_profile(F, 0)
    assert p0.indices[:-1] == (3, 6) and p0.M == 1
    for prof in (p0, p2, am.g_profile(F, 1)):
        for k, v in enumerate(prof.values, start=1):
            assert prof.at(Fraction(2 * k - 1, 2)) == v


def test_example_operators():
    assert crystal_f(EX34, EX36, 2) == (1, 2, 3, 4, 5)
    assert crystal_f(EX34, EX36, 0) is None
    assert crystal_e(EX34, EX36, 0) == (1, 2, 5, 6)
    assert crystal_e(EX34, (1, 2, 3, 4, 5), 2) == EX36


def test_smallest_operators():
    ch = lambda_chain(RootSystem("A", 2), (1,))
    assert am.g_profile(fold(ch, ()), 1).M == 1
    assert crystal_f(ch, (), 1) == (1,)
    assert crystal_e(ch, (1,), 1) == ()
    assert crystal_e(ch, (), 1) is None


@pytest.mark.parametrize("rs,lam", CASES, ids=lambda x: str(x))
def test_model_invariants(rs, lam):
    chain = lambda_chain(rs, lam)
    adm = am.enumerate_admissible(chain)
    adm_set = set(adm)
    for J in adm:
        bad = {k: v for k, v in am.check_subset(chain, J, adm_set).items() if v}
        assert bad == {}


def test_empty_set_is_highest_weight():
    for rs, lam in CASES:
        chain = lambda_chain(rs, lam)
        assert all(crystal_e(chain, (), p) is None for p in range(1, rs.rank + 1))


def test_qbg_path_of_example():
    steps = am.is_qbg_path(lambda_chain(A3, (4, 3)), (1, 2, 3, 5, 7))
    assert all(kind for _, _, kind in steps)
    assert any(kind.value == "quantum" for _, _, kind in steps)


def test_alcove_crystal_exports():
    g = am.alcove_crystal(EX34)
    doc = json.loads(g.to_json())
    idx = {tuple(v["J"]): k for k, v in enumerate(doc["vertices"])}
    assert {"from": idx[EX36], "to": idx[(1, 2, 3, 4, 5)], "i": 2} in [
        {k: e[k] for k in ("from", "to", "i")} for e in doc["edges"]]
    assert all(e["dual_demazure"] for e in doc["edges"])
    (dot,) = pydot.graph_from_dot_data(g.to_dot())
    assert len(dot.get_edges()) == len(doc["edges"])
