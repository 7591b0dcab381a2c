"""Baire space machinery: lazy points, pairing and tupling, and the
fuel-bounded universal function over associate codes.

Every potentially divergent evaluation takes a fuel budget (counted in
strategy queries) and returns an outcome value instead of looping.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt
from typing import Callable, Iterable, Optional


# ---------------------------------------------------------------------------
# Cantor pairing

def pair_nat(m: int, n: int) -> int:
    """The Cantor pairing <m,n> = (m+n)(m+n+1)/2 + m."""
    s = m + n
    return s * (s + 1) // 2 + m


def unpair_nat(k: int) -> tuple[int, int]:
    w = (isqrt(8 * k + 1) - 1) // 2
    t = w * (w + 1) // 2
    m = k - t
    return m, w - m


# ---------------------------------------------------------------------------
# finite-sequence codes
#
# Sequences are coded by concatenating Elias-gamma codes of entry+1
# behind a sentinel 1 bit: code(()) = 0 and in general
# code(sigma) = int('1' + gamma(a0+1) + ... + gamma(ak+1), 2) - 1.
# The code length grows linearly with the entries' bit lengths, so deep
# prefixes stay cheap; not every natural is a code.

def _gamma(u: int) -> str:
    bits = bin(u)[2:]
    return "0" * (len(bits) - 1) + bits


def seq_code(sigma: Iterable[int]) -> int:
    parts = ["1"]
    for a in sigma:
        if a < 0:
            raise ValueError("sequence entries must be naturals")
        parts.append(_gamma(a + 1))
    return int("".join(parts), 2) - 1


def seq_decode(code: int) -> Optional[tuple[int, ...]]:
    """Inverse of seq_code; None when code is not a sequence code."""
    if code < 0:
        return None
    bits = bin(code + 1)[2:]
    if bits[0] != "1":
        return None
    i = 1
    out = []
    n = len(bits)
    while i < n:
        z = 0
        while i < n and bits[i] == "0":
            z += 1
            i += 1
        if i + z + 1 > n:
            return None
        u = int(bits[i:i + z + 1], 2)
        i += z + 1
        out.append(u - 1)
    return tuple(out)


def query_code(index: int, sigma: Iterable[int]) -> int:
    """Code of the associate query 'output index at this input prefix'."""
    return pair_nat(index, seq_code(sigma))


def decode_query(code: int) -> Optional[tuple[int, tuple[int, ...]]]:
    index, sc = unpair_nat(code)
    sigma = seq_decode(sc)
    return None if sigma is None else (index, sigma)


# ---------------------------------------------------------------------------
# lazy points

class BairePoint:
    """A lazy element of the Baire space.

    Values are produced by a generator function and memoised; the value
    at each index is stable across calls, so concurrent readers observe
    a consistent stream (fill-once).  Indices used as associate query
    codes can be large, so non-contiguous values go to a side table.
    """

    __slots__ = ("_fn", "_cache")

    def __init__(self, fn: Callable[[int], int]):
        self._fn = fn
        self._cache: dict[int, int] = {}

    def value(self, i: int) -> int:
        v = self._cache.get(i)
        if v is None:
            v = self._fn(i)
            self._cache[i] = v
        return v

    def prefix(self, n: int) -> tuple[int, ...]:
        return tuple(self.value(i) for i in range(n))

    def __repr__(self):
        shown = ",".join(str(self._cache[i]) for i in range(8) if i in self._cache)
        return f"BairePoint({shown},...)"


def point_from(fn: Callable[[int], int]) -> BairePoint:
    return BairePoint(fn)


def constant_point(v: int) -> BairePoint:
    return BairePoint(lambda i: v)


def prefix_point(prefix: Iterable[int], tail: int = 0) -> BairePoint:
    pre = tuple(prefix)
    return BairePoint(lambda i: pre[i] if i < len(pre) else tail)


def delta0_name(n: int) -> BairePoint:
    """The canonical name n,0,0,... of the natural n."""
    return BairePoint(lambda i: n if i == 0 else 0)


def is_prefix(sigma: tuple[int, ...], tau: tuple[int, ...]) -> bool:
    return len(sigma) <= len(tau) and tau[:len(sigma)] == sigma


# ---------------------------------------------------------------------------
# strategies

class ContinuousStrategy:
    """Monotone prefix-to-answer rule for a partial continuous function.

    answer(n, sigma) is the output value at index n once the input
    prefix sigma determines it, else None.  Implementations must be
    monotone: once answered, every extension of sigma answers the same.
    The optional dom_bound records a symbolic bound on the domain
    (pointclass value); None is read as the universal Pi0[2] bound.
    """

    dom_bound = None

    def answer(self, n: int, sigma: tuple[int, ...]) -> Optional[int]:
        raise NotImplementedError


class FnStrategy(ContinuousStrategy):
    def __init__(self, fn: Callable[[int, tuple[int, ...]], Optional[int]]):
        self._fn = fn

    def answer(self, n, sigma):
        return self._fn(n, sigma)


class ConstStrategy(ContinuousStrategy):
    """Answers every query with the same value."""

    def __init__(self, value: int):
        self.value = value

    def answer(self, n, sigma):
        return self.value


class IdentityStrategy(ContinuousStrategy):
    """Realizes the identity: answers sigma[n] once the prefix covers n."""

    def answer(self, n, sigma):
        return sigma[n] if n < len(sigma) else None


class InterleaveStrategy(ContinuousStrategy):
    """Realizes the pair swap <x,y> -> <y,x> on interleaved names."""

    def answer(self, n, sigma):
        m = n ^ 1
        return sigma[m] if m < len(sigma) else None


class TableStrategy(ContinuousStrategy):
    """Finite table of (index, prefix, value) plus an optional default.

    The default answers a query only when no table entry for the same
    index could still apply on an extension; that keeps answers
    monotone.  Entries with index None apply at every output index.
    """

    def __init__(self, entries: Iterable[tuple[Optional[int], tuple[int, ...], int]],
                 default: Optional[int] = None):
        self.entries = [(n, tuple(p), v) for n, p, v in entries]
        self.default = default
        for n1, p1, v1 in self.entries:
            for n2, p2, v2 in self.entries:
                if n1 == n2 and v1 != v2 and (is_prefix(p1, p2) or is_prefix(p2, p1)):
                    raise ValueError("inconsistent table entries "
                                     f"({n1}, {p1})={v1} vs ({n2}, {p2})={v2}")

    def answer(self, n, sigma):
        pending = False
        best = None
        for en, ep, ev in self.entries:
            if en is not None and en != n:
                continue
            if is_prefix(ep, sigma):
                if best is None or len(ep) > best[0]:
                    best = (len(ep), ev)
            elif is_prefix(sigma, ep):
                pending = True
        if best is not None:
            return best[1]
        if pending:
            return None
        return self.default

    def never_answers(self, n, sigma):
        if self.default is not None:
            return False
        for en, ep, ev in self.entries:
            if en is not None and en != n:
                continue
            if is_prefix(ep, sigma) or is_prefix(sigma, ep):
                return False
        return True


def check_monotone(strategy: ContinuousStrategy, point: BairePoint,
                   depth: int, indices: int) -> Optional[str]:
    """Probe prefix extensions for an answer change; None when clean."""
    for n in range(indices):
        committed = None
        for l in range(depth + 1):
            a = strategy.answer(n, point.prefix(l))
            if a is None:
                if committed is not None:
                    return f"answer for index {n} retracted at prefix length {l}"
                continue
            if committed is None:
                committed = a
            elif a != committed:
                return (f"answer for index {n} changed from {committed} "
                        f"to {a} at prefix length {l}")
    return None


# ---------------------------------------------------------------------------
# outcomes

@dataclass(frozen=True)
class Determined:
    prefix: tuple[int, ...]


@dataclass(frozen=True)
class Exhausted:
    spent: int


@dataclass(frozen=True)
class Inconsistent:
    index: int
    details: str


@dataclass(frozen=True)
class Malformed:
    details: str


EvalOutcome = Determined | Exhausted | Inconsistent | Malformed


# ---------------------------------------------------------------------------
# stream pairing / tupling

def pair_points(x: BairePoint, y: BairePoint) -> BairePoint:
    """Interleave: z(2i) = x(i), z(2i+1) = y(i)."""
    return BairePoint(lambda i: x.value(i // 2) if i % 2 == 0 else y.value(i // 2))


def unpair_points(z: BairePoint) -> tuple[BairePoint, BairePoint]:
    return (BairePoint(lambda i: z.value(2 * i)),
            BairePoint(lambda i: z.value(2 * i + 1)))


class PairStrategy(ContinuousStrategy):
    """Pairing as a strategy on the interleaved input <x,y>; the answer
    at output index n needs an input prefix of length at most n+1."""

    def answer(self, n, sigma):
        return sigma[n] if n < len(sigma) else None


class ProjectLeftStrategy(ContinuousStrategy):
    def answer(self, n, sigma):
        return sigma[2 * n] if 2 * n < len(sigma) else None


class ProjectRightStrategy(ContinuousStrategy):
    def answer(self, n, sigma):
        return sigma[2 * n + 1] if 2 * n + 1 < len(sigma) else None


def tuple_points(family: Callable[[int], BairePoint]) -> BairePoint:
    """The tupling homeomorphism: value at <m,n> is family(m)(n)."""
    memo: dict[int, BairePoint] = {}

    def member(m: int) -> BairePoint:
        p = memo.get(m)
        if p is None:
            p = family(m)
            memo[m] = p
        return p

    def fn(i: int) -> int:
        m, n = unpair_nat(i)
        return member(m).value(n)

    return BairePoint(fn)


def project(z: BairePoint, m: int) -> BairePoint:
    return BairePoint(lambda n: z.value(pair_nat(m, n)))


def tail(q: BairePoint) -> tuple[int, BairePoint]:
    return q.value(0), BairePoint(lambda i: q.value(i + 1))


def cons(head: int, rest: BairePoint) -> BairePoint:
    return BairePoint(lambda i: head if i == 0 else rest.value(i - 1))


# ---------------------------------------------------------------------------
# the universal function

class AssociatePoint(BairePoint):
    """An associate name backed by the strategy it encodes.

    The stream interface is the contract (the value at a query code is
    0 or answer+1); carrying the strategy lets the evaluator skip the
    code round-trip.  Both routes compute the same stream.
    """

    __slots__ = ("strategy",)

    def __init__(self, s: ContinuousStrategy):
        def fn(c: int) -> int:
            q = decode_query(c)
            if q is None:
                return 0
            a = s.answer(q[0], q[1])
            return 0 if a is None else a + 1

        super().__init__(fn)
        self.strategy = s


def encode_strategy(s: ContinuousStrategy) -> BairePoint:
    """The associate of a strategy: answers query codes <n, code(sigma)>
    with value+1, and 0 where the strategy has no answer yet."""
    return AssociatePoint(s)


def eval_universal(p: BairePoint, x: BairePoint, fuel: int,
                   depth: int = 8) -> EvalOutcome:
    """Evaluate the associate p on input x to the requested output depth.

    For each output index the evaluator queries p at <n, code(x prefix)>
    for prefix lengths 0, 1, 2, ... and commits to the first non-zero
    answer.  Each query to p costs one unit of fuel.  More fuel never
    changes determined values, only extends the determined prefix.
    """
    strategy = p.strategy if isinstance(p, AssociatePoint) else None
    out: list[int] = []
    spent = 0
    for n in range(depth):
        l = 0
        while True:
            if spent >= fuel:
                return Exhausted(spent)
            if strategy is not None:
                a = strategy.answer(n, x.prefix(l))
                v = 0 if a is None else a + 1
            else:
                v = p.value(query_code(n, x.prefix(l)))
            spent += 1
            if v > 0:
                out.append(v - 1)
                break
            l += 1
            if strategy is not None and settled_none(strategy, n, x.prefix(l)):
                # the strategy can never answer this index on any
                # extension: the run would burn the whole budget
                return Exhausted(fuel)
    return Determined(tuple(out))


def settled_none(s: ContinuousStrategy, n: int, sigma: tuple[int, ...]) -> bool:
    probe = getattr(s, "never_answers", None)
    return bool(probe(n, sigma)) if probe is not None else False


def audit_universal(p: BairePoint, x: BairePoint, depth: int,
                    prefix_bound: int) -> EvalOutcome:
    """Exhaustive scan that keeps querying past the first answer.

    Two distinct non-zero answers for comparable prefixes at the same
    output index make the code inconsistent; that is reported as a
    distinct outcome instead of being silently resolved.
    """
    out: list[int] = []
    for n in range(depth):
        committed: Optional[int] = None
        for l in range(prefix_bound + 1):
            v = p.value(query_code(n, x.prefix(l)))
            if v == 0:
                continue
            if committed is None:
                committed = v - 1
            elif v - 1 != committed:
                return Inconsistent(n, f"values {committed} and {v - 1} at index {n}, "
                                       f"prefix length {l}")
        if committed is None:
            return Exhausted(depth)
        out.append(committed)
    return Determined(tuple(out))


def interleave_prefix(p_prefix: tuple[int, ...], q_prefix: tuple[int, ...]) -> tuple[int, ...]:
    out = []
    for a, b in zip(p_prefix, q_prefix):
        out.append(a)
        out.append(b)
    return tuple(out)


def curry_universal(F: ContinuousStrategy) -> Callable[[BairePoint], BairePoint]:
    """Total continuous g with u(g(p), q) = F(<p, q>) on F's domain.

    F is a strategy over the interleaved pair <p,q>.  g(p) is the
    associate that answers the query <n, code(sigma_q)> by running F on
    the interleaving of p's matching prefix with sigma_q.
    """

    def g(p: BairePoint) -> BairePoint:
        return AssociatePoint(_CurriedStrategy(F, p))

    return g


class _CurriedStrategy(ContinuousStrategy):
    def __init__(self, F: ContinuousStrategy, p: BairePoint):
        self.F = F
        self.p = p

    def _paired(self, sigma_q):
        return interleave_prefix(self.p.prefix(len(sigma_q)), sigma_q)

    def answer(self, n, sigma_q):
        return self.F.answer(n, self._paired(sigma_q))

    def never_answers(self, n, sigma_q):
        probe = getattr(self.F, "never_answers", None)
        return bool(probe(n, self._paired(sigma_q))) if probe is not None else False


def strategy_answer_on(p: BairePoint, n: int, sigma: tuple[int, ...]) -> Optional[int]:
    """The answer encoded in the associate p at output index n within
    the given input prefix: the first non-zero query value along sigma's
    initial segments."""
    for l in range(len(sigma) + 1):
        v = p.value(query_code(n, sigma[:l]))
        if v > 0:
            return v - 1
    return None
