"""Terms over the q-, skew- and skew-star signatures.

Grammar:
    term := var | "e" INT | "0" INT
          | "q(" term {"," term} ")"
          | ("t"|"and"|"or"|"sub"|"bw"|"bv") "[" INT {"," INT} "]" "(" term {"," term} ")"
    var  := [a-z][a-z0-9_]*

"and"/"or"/"sub"/"bw"/"bv" are the derived binary operations (meet, join,
subtraction, double-bar meet, double-bar join); "t" is the ternary
selector.  Subscripts are subsets of 1..n.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

DEFAULT_BUDGET = 10**7
DEFAULT_SAMPLES = 10**5
DEFAULT_SEED = 0xA11CE

BIN_KINDS = ("and", "or", "sub", "bw", "bv")


class TermError(ValueError):
    pass


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    k: int
    style: str = "e"  # "e" or "0", same denotation


@dataclass(frozen=True)
class Q:
    scrutinee: "Term"
    branches: tuple


@dataclass(frozen=True)
class T:
    d: frozenset
    x: "Term"
    y: "Term"
    z: "Term"


@dataclass(frozen=True)
class Bin:
    kind: str  # one of BIN_KINDS
    d: frozenset
    lhs: "Term"
    rhs: "Term"


Term = object


# -- parsing / printing -------------------------------------------------

_TOKEN = re.compile(r"\s*(?:([a-z][a-z0-9_]*)|(\d+)|([(),\[\]]))")


class _Parser:
    def __init__(self, text: str, n: int):
        self.text = text
        self.n = n
        self.pos = 0

    def error(self, msg: str):
        raise TermError(f"{msg} at position {self.pos} in {self.text!r}")

    def peek(self):
        m = _TOKEN.match(self.text, self.pos)
        if m is None:
            return None, self.pos
        return m, m.end()

    def next_token(self):
        m, end = self.peek()
        if m is None:
            self.error("unexpected character" if self.pos < len(self.text) else "unexpected end")
        self.pos = end
        return m

    def expect(self, sym: str):
        m = self.next_token()
        if m.group(3) != sym:
            self.error(f"expected {sym!r}")

    def parse_subscript(self) -> frozenset:
        self.expect("[")
        d = set()
        while True:
            m = self.next_token()
            if m.group(2) is None:
                self.error("expected index")
            k = int(m.group(2))
            if not 1 <= k <= self.n:
                self.error(f"subscript {k} out of 1..{self.n}")
            d.add(k)
            m = self.next_token()
            if m.group(3) == "]":
                return frozenset(d)
            if m.group(3) != ",":
                self.error("expected ',' or ']'")

    def parse_args(self):
        self.expect("(")
        args = [self.parse_term()]
        while True:
            m = self.next_token()
            if m.group(3) == ")":
                return args
            if m.group(3) != ",":
                self.error("expected ',' or ')'")
            args.append(self.parse_term())

    def parse_term(self) -> Term:
        m = self.next_token()
        word = m.group(1)
        if m.group(2) is not None:
            digits = m.group(2)
            # constants "0" INT lex as one number token starting with 0
            if digits.startswith("0") and len(digits) > 1:
                k = int(digits[1:])
                if not 1 <= k <= self.n:
                    self.error(f"constant 0{digits[1:]} out of 1..{self.n}")
                return Const(k, "0")
            self.error("unexpected number")
        if word is None:
            self.error("expected term")
        if word == "q":
            args = self.parse_args()
            if len(args) != self.n + 1:
                self.error(f"q takes {self.n + 1} arguments, got {len(args)}")
            return Q(args[0], tuple(args[1:]))
        if word == "t" or word in BIN_KINDS:
            d = self.parse_subscript()
            args = self.parse_args()
            if word == "t":
                if len(args) != 3:
                    self.error("t takes 3 arguments")
                return T(d, *args)
            if len(args) != 2:
                self.error(f"{word} takes 2 arguments")
            return Bin(word, d, *args)
        cm = re.fullmatch(r"e(\d+)", word)
        if cm:
            k = int(cm.group(1))
            if not 1 <= k <= self.n:
                self.error(f"constant e{k} out of 1..{self.n}")
            return Const(k, "e")
        return Var(word)


def parse_term(text: str, n: int) -> Term:
    """Parse a term; raises TermError with a position on bad input."""
    parser = _Parser(text, n)
    t = parser.parse_term()
    if parser.text[parser.pos:].strip():
        parser.error("trailing input")
    return t


parse = parse_term


def print_term(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Const):
        return f"{'e' if t.style == 'e' else '0'}{t.k}"
    if isinstance(t, Q):
        return "q(" + ",".join(print_term(s) for s in (t.scrutinee, *t.branches)) + ")"
    sub = "[" + ",".join(str(k) for k in sorted(t.d)) + "]"
    if isinstance(t, T):
        return f"t{sub}(" + ",".join(print_term(s) for s in (t.x, t.y, t.z)) + ")"
    return f"{t.kind}{sub}(" + ",".join(print_term(s) for s in (t.lhs, t.rhs)) + ")"


def free_vars(t: Term) -> list:
    """Free variables in first-occurrence order."""
    out: list = []
    seen = set()

    def walk(s):
        if isinstance(s, Var):
            if s.name not in seen:
                seen.add(s.name)
                out.append(s.name)
        elif isinstance(s, Q):
            walk(s.scrutinee)
            for b in s.branches:
                walk(b)
        elif isinstance(s, T):
            walk(s.x), walk(s.y), walk(s.z)
        elif isinstance(s, Bin):
            walk(s.lhs), walk(s.rhs)

    walk(t)
    return out


# -- elaboration of derived operators to q ------------------------------


def _t_to_q(n: int, d: frozenset, x: Term, y: Term, z: Term) -> Q:
    branches = tuple(z if k in d else y for k in range(1, n + 1))
    return Q(x, branches)


def elaborate(t: Term, n: int) -> Term:
    """Rewrite T/Bin nodes into their defining Q form."""
    if isinstance(t, (Var, Const)):
        return t
    if isinstance(t, Q):
        return Q(elaborate(t.scrutinee, n), tuple(elaborate(b, n) for b in t.branches))
    if isinstance(t, T):
        return _t_to_q(n, t.d, elaborate(t.x, n), elaborate(t.y, n), elaborate(t.z, n))
    if isinstance(t, Bin):
        if not t.d:
            raise TermError("empty subscript")
        lhs, rhs = elaborate(t.lhs, n), elaborate(t.rhs, n)
        i = min(t.d)
        if t.kind == "and":  # x and_d y = t_d(x, y, 0_i)
            return _t_to_q(n, t.d, lhs, rhs, Const(i, "0"))
        if t.kind == "or":  # x or_d y = t_d(x, 1_j, y), j smallest outside d
            comp = sorted(set(range(1, n + 1)) - t.d)
            if not comp:
                raise TermError("or needs an index outside the subscript")
            return _t_to_q(n, t.d, lhs, Const(comp[0], "e"), rhs)
        if t.kind == "sub":  # y sub_d x = t_d(x, 0_i, y): lhs minus rhs
            return _t_to_q(n, t.d, rhs, Const(i, "0"), lhs)
        if t.kind == "bw":  # x bw_d y = t_d(x, y, x)
            return _t_to_q(n, t.d, lhs, rhs, lhs)
        if t.kind == "bv":  # x bv_d y = t_d(x, x, y)
            return _t_to_q(n, t.d, lhs, lhs, rhs)
    raise TermError(f"unknown node {t!r}")


# -- evaluation ---------------------------------------------------------


def eval_term(t: Term, env: dict, alg) -> tuple:
    """Evaluate a term in a power algebra; env maps names to Elements."""
    if isinstance(t, Var):
        if t.name not in env:
            raise TermError(f"unbound variable {t.name!r}")
        return tuple(env[t.name])
    if isinstance(t, Const):
        return alg.constant(t.k)
    if isinstance(t, Q):
        if len(t.branches) != alg.n:
            raise TermError(f"q node has {len(t.branches)} branches, expected {alg.n}")
        return alg.q(
            eval_term(t.scrutinee, env, alg),
            [eval_term(b, env, alg) for b in t.branches],
        )
    return eval_term(elaborate(t, alg.n), env, alg)


def eval_vec(t: Term, env: dict, alg) -> np.ndarray:
    """Evaluate over arrays of carrier indices (env: name -> index array)."""
    if isinstance(t, Var):
        if t.name not in env:
            raise TermError(f"unbound variable {t.name!r}")
        return env[t.name]
    if isinstance(t, Const):
        k = alg.index(alg.constant(t.k)) if hasattr(alg, "constant") else alg.constant_index(t.k)
        some = next(iter(env.values()), None)
        return np.full_like(some, k) if some is not None else np.array([k])
    t = elaborate(t, alg.n) if not isinstance(t, Q) else t
    s = eval_vec(t.scrutinee, env, alg)
    return alg.q_vec(s, [eval_vec(b, env, alg) for b in t.branches])


# -- identity checking against the n-element generator -------------------


@dataclass(frozen=True)
class Verdict:
    valid: bool
    mode: str  # "exhaustive" or "sampled"
    counterexample: Optional[dict] = None
    samples: Optional[int] = None
    seed: Optional[int] = None

    def __bool__(self):
        return self.valid


class BudgetExceeded(RuntimeError):
    """Raised when an exhaustive check would exceed the budget."""


def _assignment_arrays(nvars: int, size: int, budget: int):
    total = size**nvars
    if total > budget:
        raise BudgetExceeded(
            f"{size}^{nvars} = {total} assignments exceed the budget {budget}; "
            "use sampled mode"
        )
    idx = np.arange(total, dtype=np.int64)
    return [(idx // size**t) % size for t in range(nvars)]


def _sampled_arrays(nvars: int, size: int, samples: int, seed: int):
    rng = np.random.default_rng(seed)
    return [rng.integers(0, size, size=samples, dtype=np.int64) for _ in range(nvars)]


def check_identity(
    lhs: Term,
    rhs: Term,
    n: int,
    mode: str = "exhaustive",
    budget: int = DEFAULT_BUDGET,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
) -> Verdict:
    """Check lhs = rhs in the n-element generator (hence in the variety).

    Exhaustive verdicts are sound and complete for the variety; sampled
    Valid verdicts are only probabilistic, sampled counterexamples exact.
    """
    from .core import generator

    alg = generator(n)
    names = []
    for v in free_vars(lhs) + free_vars(rhs):
        if v not in names:
            names.append(v)
    if mode == "exhaustive":
        arrays = _assignment_arrays(len(names), n, budget)
    elif mode == "sampled":
        arrays = _sampled_arrays(len(names), n, samples, seed)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    env = dict(zip(names, arrays))
    if not names:
        arrays = [np.zeros(1, dtype=np.int64)]
        env = {"__pad__": arrays[0]}
    l = eval_vec(lhs, env, alg)
    r = eval_vec(rhs, env, alg)
    bad = np.nonzero(l != r)[0]
    if bad.size == 0:
        if mode == "sampled":
            return Verdict(True, "sampled", samples=samples, seed=seed)
        return Verdict(True, "exhaustive")
    i = int(bad[0])
    cex = {name: f"e{int(arr[i]) + 1}" for name, arr in zip(names, arrays)}
    return Verdict(
        False,
        mode,
        counterexample=cex,
        samples=samples if mode == "sampled" else None,
        seed=seed if mode == "sampled" else None,
    )
