"""Derived operations on top of the fundamental selector.

t_d, the five binary operations, signature translations, the symmetric
group action, coordinates relative to a Boolean center, the symmetric
difference +_i, and coordinate reconstruction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import Element, PowerAlgebra, ShapeError
from . import terms
from .terms import Bin, Const, Q, T, Term, TermError


@dataclass(frozen=True)
class CenterParams:
    i: int
    j: int

    def __post_init__(self):
        if self.i == self.j:
            raise ValueError("center parameters must be distinct")


@dataclass(frozen=True)
class Permutation:
    images: tuple  # images[k-1] = sigma(k), a bijection on 1..n

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {self.images}")

    def __call__(self, k: int) -> int:
        return self.images[k - 1]

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other: (self.compose(other))(k) = self(other(k))."""
        return Permutation(tuple(self(other(k)) for k in range(1, len(self.images) + 1)))


def transposition(n: int, r: int, k: int) -> Permutation:
    images = list(range(1, n + 1))
    images[r - 1], images[k - 1] = k, r
    return Permutation(tuple(images))


def all_permutations(n: int):
    import itertools

    return [Permutation(p) for p in itertools.permutations(range(1, n + 1))]


# -- t_d and the binary operations ---------------------------------------


def t_eval(d, x: Element, y: Element, z: Element, alg: PowerAlgebra) -> Element:
    """t_d(x,y,z) = q(x, y outside d, z inside d)."""
    d = frozenset(d)
    if not d:
        raise ValueError("index set must be nonempty")
    if not d <= set(range(1, alg.n + 1)):
        raise ValueError(f"index set {sorted(d)} not within 1..{alg.n}")
    branches = [z if k in d else y for k in range(1, alg.n + 1)]
    return alg.q(tuple(x), branches)


def derived_bin(kind: str, d, x: Element, y: Element, alg: PowerAlgebra,
                i: int = None, j: int = None) -> Element:
    """The five binary operations; i defaults to min(d), j to min outside d."""
    d = frozenset(d)
    if kind in ("meet", "minus") or kind == "join":
        pass
    if kind == "meet":
        i = min(d) if i is None else i
        return t_eval(d, x, y, alg.constant(i), alg)
    if kind == "join":
        comp = sorted(set(range(1, alg.n + 1)) - d)
        if not comp:
            raise ValueError("join needs an index outside d")
        j = comp[0] if j is None else j
        return t_eval(d, x, alg.constant(j), y, alg)
    if kind == "minus":
        # x minus y = x \_d y = t_d(y, 0_i, x)
        i = min(d) if i is None else i
        return t_eval(d, y, alg.constant(i), x, alg)
    if kind == "barwedge":
        return t_eval(d, x, y, x, alg)
    if kind == "barvee":
        return t_eval(d, x, x, y, alg)
    raise ValueError(f"unknown binary kind {kind!r}")


# -- the symmetric group action ------------------------------------------


def perm_apply(x: Element, sigma: Permutation, alg: PowerAlgebra) -> Element:
    """x^sigma = q(x, e_{sigma 1}, ..., e_{sigma n})."""
    out = alg.q(tuple(x), [alg.constant(sigma(k)) for k in range(1, alg.n + 1)])
    assert out == tuple(sigma(v) for v in x), "action must agree pointwise"
    return out


# -- coordinates, +_i, reconstruction --------------------------------------


def coordinates(x: Element, cp: CenterParams, alg: PowerAlgebra) -> list:
    """x_k = t_k(x, e_i, e_j), one per k in 1..n."""
    ei, ej = alg.constant(cp.i), alg.constant(cp.j)
    return [t_eval({k}, tuple(x), ei, ej, alg) for k in range(1, alg.n + 1)]


def plus_i(x: Element, y: Element, i: int, alg: PowerAlgebra) -> Element:
    """x +_i y: commutative, unit e_i, x +_i x = e_i."""
    ei = alg.constant(i)
    branches = []
    for k in range(1, alg.n + 1):
        if k == i:
            branches.append(tuple(y))
        else:
            branches.append(t_eval({i}, tuple(y), ei, alg.constant(k), alg))
    return alg.q(tuple(x), branches)


def reconstruct(coords: Sequence[Element], i: int, alg: PowerAlgebra) -> Element:
    """Fold (x_1 meet_i e_1) +_i ... +_i (x_n meet_i e_n) back into x."""
    if len(coords) != alg.n:
        raise ShapeError(f"expected {alg.n} coordinates")
    parts = [
        t_eval({i}, tuple(c), alg.constant(k), alg.constant(i), alg)
        for k, c in enumerate(coords, start=1)
    ]
    acc = parts[-1]
    for p in reversed(parts[:-1]):
        acc = plus_i(p, acc, i, alg)
    return acc


def reconstruct_parenthesized(coords: Sequence[Element], i: int, alg: PowerAlgebra,
                              order: Sequence[int]) -> Element:
    """Fold the +_i chain in an arbitrary association order.

    order is a sequence of gap positions (0-based into the remaining list)
    selecting which adjacent pair to combine next.
    """
    parts = [
        t_eval({i}, tuple(c), alg.constant(k), alg.constant(i), alg)
        for k, c in enumerate(coords, start=1)
    ]
    items = list(parts)
    for gap in order:
        a = items.pop(gap)
        b = items.pop(gap)
        items.insert(gap, plus_i(a, b, i, alg))
    if len(items) != 1:
        raise ValueError("association order did not reduce to a single value")
    return items[0]


# -- signature translations ------------------------------------------------


def to_q(t: Term, n: int) -> Term:
    """Eliminate T/Bin nodes in favour of Q."""
    return terms.elaborate(t, n)


def to_star(t: Term, n: int) -> Term:
    """Rewrite onto the skew-star signature (t_i with singleton i, 0_i).

    Q nodes become the nested selector chain with t_1 outermost.
    """
    if isinstance(t, terms.Var):
        return t
    if isinstance(t, Const):
        return Const(t.k, "0")
    if isinstance(t, (T, Bin)):
        return to_star(terms.elaborate(t, n), n)
    x = to_star(t.scrutinee, n)
    ys = [to_star(b, n) for b in t.branches]
    # t_1(x, t_2(x, ... t_{n-1}(x, y_n, y_{n-1}) ..., y_2), y_1)
    acc = ys[n - 1]
    for s in range(n - 1, 0, -1):
        acc = T(frozenset({s}), x, acc, ys[s - 1])
    return acc


def to_skew(t: Term, n: int, i: int) -> Term:
    """Rewrite a {t_i, 0_i}-term onto the skew signature (and, bv, sub, 0_i).

    t_i(x,y,z) maps to (x and_i y) bv_i (z sub_i x) per the ternary-to-skew
    dictionary; only the index family i is admitted.
    """
    fam = frozenset({i})
    if isinstance(t, terms.Var):
        return t
    if isinstance(t, Const):
        if t.k != i:
            raise TermError(f"constant outside the index-{i} family")
        return Const(i, "0")
    if isinstance(t, T):
        if t.d != fam:
            raise TermError(f"t subscript {sorted(t.d)} outside the index-{i} family")
        x, y, z = (to_skew(s, n, i) for s in (t.x, t.y, t.z))
        return Bin("bv", fam, Bin("and", fam, x, y), Bin("sub", fam, z, x))
    if isinstance(t, Bin):
        if t.d != fam or t.kind in ("or", "bw"):
            raise TermError("operation outside the skew signature for this family")
        return Bin(t.kind, fam, to_skew(t.lhs, n, i), to_skew(t.rhs, n, i))
    raise TermError("q nodes are not in the scope of the skew translation")


def translate_term(t: Term, target: str, n: int, i: int = 1) -> Term:
    """target is one of "q", "star", "skew"."""
    if target == "q":
        return to_q(t, n)
    if target == "star":
        return to_star(t, n)
    if target == "skew":
        return to_skew(t, n, i)
    raise ValueError(f"unknown target {target!r}")


def central_retract(alg: PowerAlgebra, d, i: int, j: int, x: Element) -> Element:
    """c(x) = t_d(x, 1_j, 0_i); idempotent retraction onto 2-central elements."""
    d = frozenset(d)
    if i not in d or j in d:
        raise ValueError("need i in d and j outside d")
    return t_eval(d, tuple(x), alg.constant(j), alg.constant(i), alg)
