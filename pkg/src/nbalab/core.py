"""Finite n-valued algebras with a generalised if-then-else operator.

Elements of a power algebra are tuples of value indices in 1..n, one per
point of a finite point set.  Such a tuple is at the same time an
n-partition of the point set (block k = points carrying value k).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

Element = tuple  # tuple of ints in 1..n


class DimensionError(ValueError):
    pass


class ShapeError(ValueError):
    pass


def _check_dim(n: int) -> int:
    if not isinstance(n, int) or n < 2:
        raise DimensionError(f"dimension must be an integer >= 2, got {n!r}")
    return n


def constant_element(n: int, m: int, k: int) -> Element:
    """The constant element e_k of the m-point power of dimension n."""
    if not 1 <= k <= n:
        raise ValueError(f"constant index {k} out of 1..{n}")
    return (k,) * m


@dataclass(frozen=True)
class PowerAlgebra:
    """A (sub-)power of the n-element generator on an m-point set.

    carrier is None for the full power, otherwise a lexicographically
    sorted tuple of elements containing the constants and closed under q.
    """

    n: int
    points: int
    carrier: Optional[tuple] = None
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        _check_dim(self.n)
        if self.points < 0:
            raise ValueError("point count must be >= 0")
        if self.carrier is not None:
            object.__setattr__(self, "carrier", tuple(sorted(set(self.carrier))))
            for el in self.carrier:
                self._check_element(el)
            for k in range(1, self.n + 1):
                if constant_element(self.n, self.points, k) not in set(self.carrier):
                    raise ValueError(f"carrier misses constant e_{k}")

    def _check_element(self, el: Element) -> None:
        if len(el) != self.points:
            raise ShapeError(f"element {el} has {len(el)} points, expected {self.points}")
        for v in el:
            if not 1 <= v <= self.n:
                raise ShapeError(f"value {v} out of 1..{self.n} in {el}")

    @property
    def size(self) -> int:
        return len(self.elements())

    def elements(self) -> tuple:
        if self.carrier is not None:
            return self.carrier
        full = self._cache.get("full")
        if full is None:
            full = tuple(itertools.product(range(1, self.n + 1), repeat=self.points))
            self._cache["full"] = full
        return full

    def index(self, el: Element) -> int:
        idx = self._cache.get("index")
        if idx is None:
            idx = {e: i for i, e in enumerate(self.elements())}
            self._cache["index"] = idx
        try:
            return idx[tuple(el)]
        except KeyError:
            raise ShapeError(f"element {el} not in carrier") from None

    def __contains__(self, el) -> bool:
        try:
            self.index(el)
            return True
        except ShapeError:
            return False

    def constant(self, k: int) -> Element:
        return constant_element(self.n, self.points, k)

    @property
    def constants(self) -> tuple:
        return tuple(self.constant(k) for k in range(1, self.n + 1))

    # -- the fundamental operation ------------------------------------

    def q(self, x: Element, ys: Sequence[Element]) -> Element:
        """Pointwise generalised if-then-else: result[p] = ys[x[p]][p]."""
        self._check_element(x)
        if len(ys) != self.n:
            raise ShapeError(f"q expects {self.n} branches, got {len(ys)}")
        for y in ys:
            self._check_element(y)
        out = tuple(ys[x[p] - 1][p] for p in range(self.points))
        if self.carrier is not None and out not in self:
            raise ShapeError(f"carrier not closed under q: produced {out}")
        return out

    def q_idx(self, s: int, branches: Sequence[int]) -> int:
        els = self.elements()
        return self.index(self.q(els[s], [els[b] for b in branches]))

    def q_table(self) -> np.ndarray:
        """Dense (size,)*(n+1) table of q over carrier indices."""
        tab = self._cache.get("qtab")
        if tab is None:
            els = self.elements()
            s = len(els)
            vals = np.array(els, dtype=np.int64).reshape(s, max(self.points, 1))
            if self.points == 0:
                tab = np.zeros((s,) * (self.n + 1), dtype=np.int64)
            else:
                grids = np.indices((s,) * (self.n + 1))
                x, ys = grids[0], grids[1:]
                cols = []
                for p in range(self.points):
                    sel = vals[x, p] - 1  # which branch at point p
                    yvals = np.stack([vals[y, p] for y in ys])
                    cols.append(np.take_along_axis(yvals, sel[None], axis=0)[0])
                res = np.stack(cols, axis=-1)
                lut = {tuple(e): i for i, e in enumerate(els)}
                flat = res.reshape(-1, self.points)
                tab = np.fromiter(
                    (lut[tuple(row)] for row in flat), dtype=np.int64, count=flat.shape[0]
                ).reshape((s,) * (self.n + 1))
            self._cache["qtab"] = tab
        return tab

    def q_vec(self, s: np.ndarray, branches: Sequence[np.ndarray]) -> np.ndarray:
        """Vectorised q over arrays of carrier indices."""
        if self.carrier is None and self.points > 0:
            # full power: indices are base-n codes of the value vectors
            m, n = self.points, self.n
            out = np.zeros_like(s)
            for p in range(m):
                shift = n ** (m - 1 - p)
                sel = (s // shift) % n
                yp = np.stack([(b // shift) % n for b in branches])
                out += np.take_along_axis(yp, sel[None], axis=0)[0] * shift
            return out
        tab = self.q_table()
        return tab[tuple([s, *branches])]

    def element_label(self, i: int) -> str:
        el = self.elements()[i]
        return "[" + ",".join(map(str, el)) + "]"

    def to_json(self) -> dict:
        if self.carrier is None:
            return {"n": self.n, "kind": "power", "points": self.points}
        return {
            "n": self.n,
            "kind": "subpower",
            "points": self.points,
            "carrier": [list(e) for e in self.carrier],
        }


@dataclass(frozen=True)
class TableAlgebra:
    """A raw operation-table algebra over {0..size-1}, for axiom auditing.

    Unlike PowerAlgebra, a TableAlgebra may fail the defining identities;
    that is the point of having it.
    """

    n: int
    size: int
    constants: tuple  # n carrier indices, constants[k-1] is e_k
    q_flat: tuple  # row-major, length size**(n+1)

    def __post_init__(self):
        _check_dim(self.n)
        if len(self.constants) != self.n:
            raise ValueError(f"expected {self.n} constants")
        for c in self.constants:
            if not 0 <= c < self.size:
                raise ValueError(f"constant index {c} out of range")
        if len(self.q_flat) != self.size ** (self.n + 1):
            raise ValueError("q table has wrong length")
        for v in self.q_flat:
            if not 0 <= v < self.size:
                raise ValueError(f"table entry {v} out of range")

    def q_table(self) -> np.ndarray:
        return np.asarray(self.q_flat, dtype=np.int64).reshape((self.size,) * (self.n + 1))

    def q_idx(self, s: int, branches: Sequence[int]) -> int:
        return int(self.q_table()[tuple([s, *branches])])

    def q_vec(self, s: np.ndarray, branches: Sequence[np.ndarray]) -> np.ndarray:
        return self.q_table()[tuple([s, *branches])]

    def element_label(self, i: int) -> str:
        return f"#{i}"

    def constant_index(self, k: int) -> int:
        return self.constants[k - 1]

    def mutate(self, key: tuple, value: int) -> "TableAlgebra":
        """Copy with one q entry replaced (mutation testing helper)."""
        flat = list(self.q_flat)
        pos = 0
        for k in key:
            pos = pos * self.size + k
        flat[pos] = value
        return TableAlgebra(self.n, self.size, self.constants, tuple(flat))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "kind": "table",
            "size": self.size,
            "constants": list(self.constants),
            "q": list(self.q_flat),
        }


def generator(n: int) -> PowerAlgebra:
    """The one-point power whose carrier is exactly {e_1..e_n}."""
    _check_dim(n)
    return PowerAlgebra(n, 1)


def power_algebra(n: int, m: int) -> PowerAlgebra:
    """The full power with n**m elements."""
    _check_dim(n)
    return PowerAlgebra(n, m)


def table_of_power(alg: PowerAlgebra) -> TableAlgebra:
    """Materialise a PowerAlgebra as an explicit TableAlgebra."""
    consts = tuple(alg.index(c) for c in alg.constants)
    return TableAlgebra(alg.n, alg.size, consts, tuple(int(v) for v in alg.q_table().ravel()))


def q_eval(alg: PowerAlgebra, x: Element, ys: Sequence[Element]) -> Element:
    return alg.q(tuple(x), [tuple(y) for y in ys])


# -- n-subsets ---------------------------------------------------------

NSubset = tuple  # tuple of n frozensets of points


def nsubset(parts: Iterable[Iterable[int]]) -> NSubset:
    return tuple(frozenset(p) for p in parts)


def nsubset_q(n: int, y0: NSubset, ys: Sequence[NSubset]) -> NSubset:
    """q on n-subsets: component k = union over i of Y0_i & Yi_k."""
    _check_dim(n)
    if len(y0) != n or any(len(y) != n for y in ys) or len(ys) != n:
        raise ShapeError("all n-subsets must have exactly n components")
    return tuple(
        frozenset().union(*(y0[i] & ys[i][k] for i in range(n))) for k in range(n)
    )


def element_to_partition(el: Element, n: int) -> NSubset:
    return tuple(frozenset(p for p, v in enumerate(el) if v == k) for k in range(1, n + 1))


def partition_to_element(parts: NSubset, m: int) -> Element:
    vals = [0] * m
    for k, part in enumerate(parts, start=1):
        for p in part:
            if vals[p]:
                raise ShapeError("parts overlap; not a partition")
            vals[p] = k
    if 0 in vals:
        raise ShapeError("parts do not cover the point set")
    return tuple(vals)


# -- subalgebra closure ------------------------------------------------


def subalgebra_closure(alg: PowerAlgebra, gens: Iterable[Element]) -> PowerAlgebra:
    """Smallest carrier containing constants and gens, closed under q."""
    base = alg.elements()
    full = len(base)
    current = set(alg.constants)
    for g in gens:
        alg._check_element(tuple(g))
        current.add(tuple(g))
    frontier = set(current)
    while frontier and len(current) < full:
        new = set()
        pool = sorted(current)
        for combo in itertools.product(pool, repeat=alg.n + 1):
            if not any(c in frontier for c in combo):
                continue
            out = alg.q(combo[0], combo[1:])
            if out not in current and out not in new:
                new.add(out)
        current |= new
        frontier = new
    return PowerAlgebra(alg.n, alg.points, tuple(sorted(current)))


# -- serialisation -----------------------------------------------------


def algebra_from_json(obj: dict):
    kind = obj.get("kind")
    n = obj["n"]
    if kind == "power":
        return PowerAlgebra(n, obj["points"])
    if kind == "subpower":
        return PowerAlgebra(n, obj["points"], tuple(tuple(e) for e in obj["carrier"]))
    if kind == "table":
        return TableAlgebra(n, obj["size"], tuple(obj["constants"]), tuple(obj["q"]))
    raise ValueError(f"unknown algebra kind {kind!r}")


def load_algebra(path: str):
    with open(path, encoding="utf-8") as fh:
        return algebra_from_json(json.load(fh))
