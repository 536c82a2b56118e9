"""Root systems of types A_{n-1} and C_n, their weights and Weyl groups.

Letters of [n] (type A) or [n-bar] (type C) are nonzero integers; the barred
letter i-bar is stored as -i.  The order 1 < ... < n < n-bar < ... < 1-bar is
imposed through :meth:`RootSystem.key`, never through native integer order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Sequence

Vector = tuple  # tuple of int / Fraction, length n


class ResourceLimitError(RuntimeError):
    """A configured size bound would be exceeded."""


def _num(x):
    """Collapse an integral Fraction to int."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


@dataclass(frozen=True, order=True)
class Root:
    """The root sign * (eps_i - eps_j), where eps of a barred letter is -eps.

    ``(i, j)`` is always the canonical positive pair: ``0 < i < j`` for
    eps_i - eps_j, ``j = -k`` with ``i < k`` for eps_i + eps_k, and ``j = -i``
    for 2 eps_i.
    """

    i: int
    j: int
    sign: int = 1

    def __post_init__(self):
        i, j = self.i, self.j
        ok = i > 0 and (j > i or (j < 0 and -j >= i))
        if not ok or self.sign not in (1, -1):
            raise ValueError(f"not a canonical root: {(i, j, self.sign)}")

    @classmethod
    def from_letters(cls, a: int, b: int) -> "Root":
        """Root eps_a - eps_b for letters a != b."""
        if a == b or a == 0 or b == 0:
            raise ValueError(f"bad letter pair {(a, b)}")
        if a == -b:
            return cls(abs(a), -abs(a), 1 if a > 0 else -1)
        # eps_a - eps_b = eps_{-b} - eps_{-a}; choose the spelling whose first
        # letter has the smaller absolute value.
        if abs(a) > abs(b):
            a, b = -b, -a
        if a > 0:
            return cls(a, b, 1)
        # -eps_|a| - eps_b  ==  -(eps_|a| + eps_b)
        return cls(-a, -b, -1)

    @classmethod
    def from_vector(cls, v: Sequence[int]) -> "Root":
        nz = [(k + 1, x) for k, x in enumerate(v) if x]
        if len(nz) == 1 and abs(nz[0][1]) == 2:
            (k, x), = nz
            return cls(k, -k, 1 if x > 0 else -1)
        if len(nz) == 2 and all(abs(x) == 1 for _, x in nz):
            (p, x), (q, y) = nz
            sign = 1 if x > 0 else -1
            return cls(p, -q if x * y > 0 else q, sign)
        raise ValueError(f"not a root vector: {tuple(v)}")

    def letters(self) -> tuple[int, int]:
        """Letter pair (a, b) with self = eps_a - eps_b."""
        if self.sign > 0:
            return self.i, self.j
        return self.j, self.i

    def vector(self, n: int) -> Vector:
        v = [0] * n
        a, b = self.letters()
        v[abs(a) - 1] += 1 if a > 0 else -1
        v[abs(b) - 1] -= 1 if b > 0 else -1
        return tuple(v)

    @property
    def is_positive(self) -> bool:
        return self.sign > 0

    def __neg__(self) -> "Root":
        return Root(self.i, self.j, -self.sign)

    def __abs__(self) -> "Root":
        return Root(self.i, self.j, 1)

    @property
    def root_class(self) -> str:
        if self.j > 0:
            return "EiMinusEj"
        if self.j == -self.i:
            return "TwoEi"
        return "EiPlusEj"

    def label(self) -> str:
        a, b = self.letters()
        return f"({a},{b})"

    def __str__(self):
        return self.label()


@dataclass(frozen=True)
class RootSystem:
    """Type A_{n-1} (kind ``"A"``) or C_n (kind ``"C"``)."""

    kind: str
    n: int

    def __post_init__(self):
        if self.kind not in ("A", "C"):
            raise ValueError(f"unknown type {self.kind!r}")
        if self.n < 2:
            raise ValueError("rank parameter n must be at least 2")

    # -- letters -----------------------------------------------------------

    @cached_property
    def letters(self) -> tuple[int, ...]:
        if self.kind == "A":
            return tuple(range(1, self.n + 1))
        return tuple(range(1, self.n + 1)) + tuple(range(-self.n, 0))

    def key(self, x: int) -> int:
        """Position of letter x in 1 < ... < n < n-bar < ... < 1-bar (0-based)."""
        return x - 1 if x > 0 else 2 * self.n + x

    def circular_less(self, start: int, a: int, b: int) -> bool:
        """Whether a precedes b in the circular order beginning at ``start``."""
        if a == b:
            return False
        size = len(self.letters)
        s = self.key(start)
        return (self.key(a) - s) % size < (self.key(b) - s) % size

    # -- roots ---------------------------------------------------------------

    @property
    def rank(self) -> int:
        return self.n - 1 if self.kind == "A" else self.n

    @cached_property
    def positive_roots(self) -> tuple[Root, ...]:
        n = self.n
        roots = [Root(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
        if self.kind == "C":
            roots += [Root(i, -j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
            roots += [Root(i, -i) for i in range(1, n + 1)]
        return tuple(sorted(roots, key=lambda r: (r.i, self.key(r.j))))

    @cached_property
    def simple_roots(self) -> tuple[Root, ...]:
        roots = [Root(i, i + 1) for i in range(1, self.n)]
        if self.kind == "C":
            roots.append(Root(self.n, -self.n))
        return tuple(roots)

    @cached_property
    def highest_root(self) -> Root:
        return Root(1, self.n) if self.kind == "A" else Root(1, -1)

    @property
    def theta(self) -> Root:
        return -self.highest_root

    def alpha(self, p: int) -> Root:
        """alpha_p for p in 1..rank, and theta for p = 0."""
        if p == 0:
            return self.theta
        if not 1 <= p <= self.rank:
            raise ValueError(f"operator index {p} out of range 0..{self.rank}")
        return self.simple_roots[p - 1]

    def contains(self, beta: Root) -> bool:
        if self.kind == "A":
            return 0 < beta.j <= self.n
        return abs(beta.j) <= self.n

    def check_root(self, beta: Root) -> Root:
        if not self.contains(beta):
            raise ValueError(f"root {beta} is not in type {self.kind}{self.n}")
        return beta

    # -- weights ---------------------------------------------------------------

    @cached_property
    def rho(self) -> Vector:
        if self.kind == "A":
            return tuple(range(self.n - 1, -1, -1))
        return tuple(range(self.n, 0, -1))

    def canonical(self, v: Sequence) -> Vector:
        """Canonical weight vector: type A representatives have last entry 0."""
        v = tuple(_num(Fraction(x)) for x in v)
        if self.kind == "A":
            last = v[-1]
            v = tuple(_num(x - last) for x in v)
        return v

    def pairing(self, lam: Sequence, beta: Root):
        """<lam, beta-coroot>; an int whenever the value is integral."""
        b = beta.vector(self.n)
        num = sum(Fraction(x) * y for x, y in zip(lam, b))
        den = sum(y * y for y in b)
        return _num(2 * num / den)

    def partition_weight(self, lam: Sequence[int]) -> Vector:
        lam = tuple(lam) + (0,) * (self.n - len(lam))
        return self.canonical(lam[: self.n])

    def is_dominant(self, lam: Sequence) -> bool:
        return all(self.pairing(lam, a) >= 0 for a in self.simple_roots)

    def reflect_vector(self, beta: Root, v: Sequence) -> Vector:
        b = beta.vector(self.n)
        c = self.pairing(v, beta)
        return tuple(_num(x - c * y) for x, y in zip(v, b))

    def root_vector(self, beta: Root) -> Vector:
        return beta.vector(self.n)

    # -- Weyl group --------------------------------------------------------------

    @property
    def identity(self) -> "WeylElement":
        return WeylElement(self, tuple(range(1, self.n + 1)))

    def group_order(self) -> int:
        order = 1
        for k in range(2, self.n + 1):
            order *= k
        return order if self.kind == "A" else order * 2 ** self.n

    def elements(self) -> Iterator["WeylElement"]:
        """All group elements, lexicographic in window notation (letter order)."""
        if self.kind == "A":
            for perm in itertools.permutations(range(1, self.n + 1)):
                yield WeylElement(self, perm)
            return
        windows = []
        for perm in itertools.permutations(range(1, self.n + 1)):
            for signs in itertools.product((1, -1), repeat=self.n):
                windows.append(tuple(s * x for s, x in zip(signs, perm)))
        windows.sort(key=lambda w: tuple(self.key(x) for x in w))
        for w in windows:
            yield WeylElement(self, w)

    def reflection(self, beta: Root) -> "WeylElement":
        return self.identity.right_reflect(beta)

    def __str__(self):
        return f"{self.kind}{self.n}"


@dataclass(frozen=True)
class WeylElement:
    """A (signed) permutation in window notation w(1) ... w(n)."""

    rs: RootSystem
    window: tuple[int, ...]

    def __post_init__(self):
        w = self.window
        if len(w) != self.rs.n or sorted(abs(x) for x in w) != list(range(1, self.rs.n + 1)):
            raise ValueError(f"not a window of {self.rs}: {w}")
        if self.rs.kind == "A" and min(w) < 1:
            raise ValueError(f"type A window must be unsigned: {w}")

    def __call__(self, x: int) -> int:
        y = self.window[abs(x) - 1]
        return y if x > 0 else -y

    def full(self) -> tuple[int, ...]:
        """Full one-line notation over all letters (type C: w(1..n) w(n-bar..1-bar))."""
        return tuple(self(x) for x in self.rs.letters)

    @classmethod
    def from_full(cls, rs: RootSystem, full: Sequence[int]) -> "WeylElement":
        w = cls(rs, tuple(full[: rs.n]))
        if w.full() != tuple(full):
            raise ValueError(f"inconsistent one-line notation {tuple(full)}")
        return w

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return WeylElement(self.rs, tuple(self(other(k)) for k in range(1, self.rs.n + 1)))

    def inverse(self) -> "WeylElement":
        win = [0] * self.rs.n
        for k, y in enumerate(self.window, start=1):
            win[abs(y) - 1] = k if y > 0 else -k
        return WeylElement(self.rs, tuple(win))

    @cached_property
    def length(self) -> int:
        if self.rs.kind == "A":
            w = self.window
            return sum(1 for a, b in itertools.combinations(w, 2) if a > b)
        key = self.rs.key
        count = 0
        for k in range(1, self.rs.n + 1):
            wk = key(self(k))
            for l in self.rs.letters:
                if k <= abs(l) and wk > key(self(l)):
                    count += 1
        return count

    def act_root(self, beta: Root) -> Root:
        a, b = beta.letters()
        return Root.from_letters(self(a), self(b))

    def act_vector(self, v: Sequence) -> Vector:
        out = [0] * self.rs.n
        for k, x in enumerate(v, start=1):
            y = self(k)
            out[abs(y) - 1] += x if y > 0 else -x
        return tuple(_num(x) for x in out)

    def _swap_map(self, beta: Root):
        a, b = beta.letters()
        if self.rs.kind == "A":
            return {a: b, b: a}
        return {a: b, b: a, -a: -b, -b: -a}

    def right_reflect(self, beta: Root) -> "WeylElement":
        """w s_beta: permute window positions by the reflection."""
        if not beta.is_positive:
            beta = -beta
        self.rs.check_root(beta)
        s = self._swap_map(beta)

        def sx(x):
            return s.get(x, x)

        return WeylElement(self.rs, tuple(self(sx(k)) for k in range(1, self.rs.n + 1)))

    def left_reflect(self, beta: Root) -> "WeylElement":
        """s_beta w: permute window values by the reflection."""
        self.rs.check_root(abs(beta))
        s = self._swap_map(abs(beta))
        return WeylElement(self.rs, tuple(s.get(x, x) for x in self.window))

    def label(self, overline: bool = False) -> str:
        return ",".join(letter_str(x, overline) for x in self.window)

    def __str__(self):
        return self.label()


def letter_str(x: int, overline: bool = False) -> str:
    if x > 0 or not overline:
        return str(x)
    return f"{-x}̅"


def positive_roots(rs: RootSystem) -> tuple[Root, ...]:
    return rs.positive_roots


def apply_reflection_right(w: WeylElement, beta: Root) -> WeylElement:
    return w.right_reflect(beta)


def length(w: WeylElement) -> int:
    return w.length


def pairing(rs: RootSystem, lam: Sequence, beta: Root):
    return rs.pairing(lam, beta)


def circular_less(rs: RootSystem, start: int, a: int, b: int) -> bool:
    return rs.circular_less(start, a, b)
