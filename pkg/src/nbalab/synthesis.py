"""Truth-table-to-term compilation, sound simplification, verification.

Tables are row-major with the first argument slowest-varying.  The
compiler is a multiplexer (Shannon-style) expansion on the fundamental
selector; the simplifier applies the three contracting identities
innermost-first with a leftmost tie-break and records a trace.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Optional

from .core import TableAlgebra, generator
from .terms import Const, Q, Term, Var, eval_term, free_vars


@dataclass(frozen=True)
class TruthTable:
    n: int
    k: int
    entries: tuple  # n^k values in 1..n, first argument slowest-varying

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("dimension must be >= 2")
        if self.k < 0:
            raise ValueError("arity must be >= 0")
        if len(self.entries) != self.n**self.k:
            raise ValueError(f"expected {self.n ** self.k} entries, got {len(self.entries)}")
        for v in self.entries:
            if not 1 <= v <= self.n:
                raise ValueError(f"entry {v} out of 1..{self.n}")

    def lookup(self, args) -> int:
        pos = 0
        for a in args:
            pos = pos * self.n + (a - 1)
        return self.entries[pos]

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "entries": list(self.entries)}


def table_from_json(obj: dict) -> TruthTable:
    return TruthTable(obj["n"], obj["k"], tuple(obj["entries"]))


def load_table(path: str) -> TruthTable:
    with open(path, encoding="utf-8") as fh:
        return table_from_json(json.load(fh))


def synth(table: TruthTable) -> Term:
    """Multiplexer expansion: q on x1 over the n sub-tables."""
    return _synth(table.n, table.k, table.entries, depth=1)


def _synth(n: int, k: int, entries: tuple, depth: int) -> Term:
    if k == 0:
        return Const(entries[0], "e")
    stride = n ** (k - 1)
    slices = [entries[v * stride:(v + 1) * stride] for v in range(n)]
    return Q(Var(f"x{depth}"),
             tuple(_synth(n, k - 1, s, depth + 1) for s in slices))


# -- simplification --------------------------------------------------------


@dataclass(frozen=True)
class RewriteStep:
    rule: str  # B0-const-scrutinee | B1-equal-branches | B4-identity-branches
    position: tuple  # path of child offsets from the root


RewriteTrace = tuple


def _rule_at(t: Term, n: int) -> Optional[tuple]:
    """A root redex, if any: (rule name, reduct)."""
    if not isinstance(t, Q):
        return None
    if isinstance(t.scrutinee, Const):
        return ("B0-const-scrutinee", t.branches[t.scrutinee.k - 1])
    if all(b == t.branches[0] for b in t.branches):
        return ("B1-equal-branches", t.branches[0])
    if all(isinstance(b, Const) and b.k == s + 1
           for s, b in enumerate(t.branches)):
        return ("B4-identity-branches", t.scrutinee)
    return None


def _simplify(t: Term, n: int, pos: tuple, trace: list) -> Term:
    if isinstance(t, Q):
        scr = _simplify(t.scrutinee, n, pos + (0,), trace)
        branches = tuple(
            _simplify(b, n, pos + (s + 1,), trace) for s, b in enumerate(t.branches))
        t = Q(scr, branches)
    while True:
        hit = _rule_at(t, n)
        if hit is None:
            return t
        rule, t = hit
        trace.append(RewriteStep(rule, pos))
        # the reduct may expose a fresh redex below; renormalise it
        t = _simplify(t, n, pos, trace)


def simplify(t: Term, n: int) -> tuple:
    """Returns (normal form, trace); only q-signature terms are accepted."""
    _check_q_signature(t)
    trace: list = []
    out = _simplify(t, n, (), trace)
    return out, tuple(trace)


def _check_q_signature(t: Term) -> None:
    if isinstance(t, (Var, Const)):
        return
    if isinstance(t, Q):
        _check_q_signature(t.scrutinee)
        for b in t.branches:
            _check_q_signature(b)
        return
    raise ValueError("simplify handles q-signature terms only")


def verify_term(t: Term, table: TruthTable) -> bool:
    """Exhaustive agreement of the term with the table."""
    alg = generator(table.n)
    names = [f"x{s}" for s in range(1, table.k + 1)]
    if not set(free_vars(t)) <= set(names):
        return False
    for args in itertools.product(range(1, table.n + 1), repeat=table.k):
        env = {name: (v,) for name, v in zip(names, args)}
        if eval_term(t, env, alg) != (table.lookup(args),):
            return False
    return True


def table_of_term(t: Term, n: int, k: int) -> TruthTable:
    alg = generator(n)
    names = [f"x{s}" for s in range(1, k + 1)]
    entries = []
    for args in itertools.product(range(1, n + 1), repeat=k):
        env = {name: (v,) for name, v in zip(names, args)}
        entries.append(eval_term(t, env, alg)[0])
    return TruthTable(n, k, tuple(entries))


# -- best-effort primality probe for raw tables -----------------------------


def find_selector_term(alg: TableAlgebra, max_depth: int = 2) -> Optional[dict]:
    """Best-effort search for a selector-like term operation on a raw table.

    Only meaningful for carriers of size <= 4; returns a witness
    operation table (as nested tuples) satisfying the selector law
    q(c_i, x_1..x_n) = x_i on the designated constants, or None.  This
    is a heuristic probe, not a decision procedure.
    """
    if alg.size > 4:
        raise ValueError("primality probe supports carriers of size <= 4 only")
    n = alg.n
    tab = alg.q_table()
    ok = True
    for i in range(1, n + 1):
        ci = alg.constant_index(i)
        for args in itertools.product(range(alg.size), repeat=n):
            if int(tab[(ci, *args)]) != args[i - 1]:
                ok = False
                break
        if not ok:
            break
    if ok:
        return {"witness": "fundamental", "depth": 0}
    # depth-1 compositions: q with one argument slot pre-permuted by q(e_s, ...)
    for perm in itertools.permutations(range(1, n + 1)):
        good = True
        for i in range(1, n + 1):
            ci = alg.constant_index(perm[i - 1])
            for args in itertools.product(range(alg.size), repeat=n):
                if int(tab[(ci, *args)]) != args[i - 1]:
                    good = False
                    break
            if not good:
                break
        if good:
            return {"witness": "constant-permuted", "permutation": list(perm), "depth": 1}
    return None
