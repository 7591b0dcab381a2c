"""Ordinal notations in Cantor normal form, below epsilon-0.

A notation is a finite sum ``w^e1*c1 + ... + w^ek*ck`` with strictly
decreasing exponents (themselves notations) and positive integer
coefficients.  The empty sum is 0.  Every ordinal below epsilon-0 has
exactly one such normal form, so structural equality is ordinal equality.

The literal grammar accepted by :func:`parse_ordinal` is the canonical
rendering produced by :func:`render_ordinal`: ``0``, decimal naturals,
``w``, ``w*c``, ``w^e`` and ``w^e*c`` joined by ``+``, exponents
parenthesised when they are sums or carry coefficients, e.g.
``w^2*3+w+5`` or ``w^(w+1)*2+4``.  Non-canonical spellings such as
``1+w`` or ``w*1`` are rejected.
"""

from __future__ import annotations

import bisect
import os
from dataclasses import dataclass
from functools import total_ordering
from typing import Iterator, Optional


class OrdinalError(ValueError):
    pass


class CapOverflowError(OrdinalError):
    """A notation reached or exceeded the configured cap."""


@total_ordering
@dataclass(frozen=True)
class OrdinalNotation:
    terms: tuple[tuple["OrdinalNotation", int], ...]

    def __post_init__(self):
        prev = None
        for exp, coeff in self.terms:
            if not isinstance(exp, OrdinalNotation) or coeff < 1:
                raise OrdinalError(f"bad CNF term ({exp!r}, {coeff!r})")
            if prev is not None and compare(prev, exp) <= 0:
                raise OrdinalError("CNF exponents must strictly decrease")
            prev = exp

    def __lt__(self, other: "OrdinalNotation") -> bool:
        return compare(self, other) < 0

    def __repr__(self):
        return f"Ord({render_ordinal(self)})"

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_successor(self) -> bool:
        return bool(self.terms) and self.terms[-1][0].is_zero

    @property
    def is_limit(self) -> bool:
        return bool(self.terms) and not self.terms[-1][0].is_zero

    def as_int(self) -> Optional[int]:
        """The integer value if the notation is finite, else None."""
        if self.is_zero:
            return 0
        if len(self.terms) == 1 and self.terms[0][0].is_zero:
            return self.terms[0][1]
        return None


ZERO = OrdinalNotation(())
ONE = OrdinalNotation(((ZERO, 1),))
OMEGA = OrdinalNotation(((ONE, 1),))


def from_int(n: int) -> OrdinalNotation:
    if n < 0:
        raise OrdinalError("ordinals are non-negative")
    return ZERO if n == 0 else OrdinalNotation(((ZERO, n),))


def omega_power(exp: OrdinalNotation, coeff: int = 1) -> OrdinalNotation:
    return OrdinalNotation(((exp, coeff),))


def compare(a: OrdinalNotation, b: OrdinalNotation) -> int:
    """Total order on notations: -1, 0 or 1.

    CNF comparison is lexicographic on the term lists, comparing
    exponents recursively before coefficients; a proper prefix is
    smaller than its extension.
    """
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = compare(ea, eb)
        if c != 0:
            return c
        if ca != cb:
            return -1 if ca < cb else 1
    if len(a.terms) != len(b.terms):
        return -1 if len(a.terms) < len(b.terms) else 1
    return 0


def classify_ordinal(a: OrdinalNotation) -> tuple[str, Optional[OrdinalNotation]]:
    """Return ("zero"|"successor"|"limit", predecessor-or-None)."""
    if a.is_zero:
        return "zero", None
    exp, coeff = a.terms[-1]
    if not exp.is_zero:
        return "limit", None
    if coeff > 1:
        pred = OrdinalNotation(a.terms[:-1] + ((ZERO, coeff - 1),))
    else:
        pred = OrdinalNotation(a.terms[:-1])
    return "successor", pred


def successor(a: OrdinalNotation) -> OrdinalNotation:
    if a.is_zero:
        return ONE
    exp, coeff = a.terms[-1]
    if exp.is_zero:
        return OrdinalNotation(a.terms[:-1] + ((ZERO, coeff + 1),))
    return OrdinalNotation(a.terms + ((ZERO, 1),))


def add_omega_power(a: OrdinalNotation, exp: OrdinalNotation) -> OrdinalNotation:
    """Ordinal sum a + w^exp, in CNF (absorbs trailing smaller terms)."""
    kept = tuple((e, c) for e, c in a.terms if compare(e, exp) > 0)
    same = [c for e, c in a.terms if compare(e, exp) == 0]
    coeff = (same[0] + 1) if same else 1
    return OrdinalNotation(kept + ((exp, coeff),))


# ---------------------------------------------------------------------------
# literal grammar


def render_ordinal(a: OrdinalNotation) -> str:
    if a.is_zero:
        return "0"
    parts = []
    for exp, coeff in a.terms:
        if exp.is_zero:
            parts.append(str(coeff))
            continue
        if exp == ONE:
            base = "w"
        else:
            inner = render_ordinal(exp)
            base = f"w^({inner})" if ("+" in inner or "*" in inner) else f"w^{inner}"
        parts.append(base if coeff == 1 else f"{base}*{coeff}")
    return "+".join(parts)


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def expect(self, ch: str):
        if not self.take(ch):
            raise OrdinalError(f"expected {ch!r} at position {self.pos}")

    def nat(self) -> int:
        start = self.pos
        while self.peek().isdigit():
            self.pos += 1
        if start == self.pos:
            raise OrdinalError(f"expected digit at position {self.pos}")
        return int(self.text[start:self.pos])


def _parse_sum(sc: _Scanner) -> OrdinalNotation:
    terms = [_parse_term(sc)]
    while sc.take("+"):
        terms.append(_parse_term(sc))
    try:
        return OrdinalNotation(tuple(terms))
    except OrdinalError:
        raise OrdinalError(f"not in normal form near position {sc.pos}")


def _parse_term(sc: _Scanner) -> tuple[OrdinalNotation, int]:
    if sc.peek().isdigit():
        n = sc.nat()
        if n == 0:
            raise OrdinalError(f"zero term at position {sc.pos}")
        return (ZERO, n)
    if sc.take("w"):
        exp = ONE
        if sc.take("^"):
            exp = _parse_exponent(sc)
        coeff = 1
        if sc.take("*"):
            coeff = sc.nat()
        return (exp, coeff)
    raise OrdinalError(f"unexpected {sc.peek()!r} at position {sc.pos}")


def _parse_exponent(sc: _Scanner) -> OrdinalNotation:
    # exponent primaries carry no coefficient; w^e*c in exponent position
    # must be written w^(w^e*c)
    if sc.take("("):
        inner = _parse_sum(sc)
        sc.expect(")")
        return inner
    if sc.peek().isdigit():
        return from_int(sc.nat())
    if sc.take("w"):
        if sc.take("^"):
            return omega_power(_parse_exponent(sc))
        return OMEGA
    raise OrdinalError(f"bad exponent at position {sc.pos}")


def parse_ordinal(text: str) -> OrdinalNotation:
    stripped = text.replace(" ", "")
    if not stripped:
        raise OrdinalError("empty ordinal literal")
    if stripped == "0":
        return ZERO
    sc = _Scanner(stripped)
    result = _parse_sum(sc)
    if sc.pos != len(stripped):
        raise OrdinalError(f"trailing input at position {sc.pos}")
    canonical = render_ordinal(result)
    if canonical != stripped:
        raise OrdinalError(
            f"non-canonical literal {text!r} (canonical spelling: {canonical!r})")
    return result


# ---------------------------------------------------------------------------
# Goedel coding and enumeration below a limit

def _pair(m: int, n: int) -> int:
    s = m + n
    return s * (s + 1) // 2 + m


def godel_code(a: OrdinalNotation) -> int:
    """Injective code of a CNF tree: 0 for 0, else pairing the leading
    term (exponent code, coefficient-1) with the code of the rest."""
    if a.is_zero:
        return 0
    exp, coeff = a.terms[0]
    rest = OrdinalNotation(a.terms[1:])
    return _pair(godel_code(exp), _pair(coeff - 1, godel_code(rest))) + 1


def _below(a_lead_exp: OrdinalNotation, a_lead_coeff: int,
           rest: OrdinalNotation, bound: OrdinalNotation) -> bool:
    candidate = (a_lead_exp, a_lead_coeff)
    for eb, cb in bound.terms:
        c = compare(candidate[0], eb)
        if c != 0:
            return c < 0
        if candidate[1] != cb:
            return candidate[1] < cb
        # equal leading term: compare rests
        return compare(rest, OrdinalNotation(bound.terms[1:])) < 0
    return False  # bound exhausted first


def _max_first(limit: int) -> int:
    # largest m with _pair(m, 0) <= limit, or -1
    if limit < 0:
        return -1
    lo, hi = 0, limit
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if _pair(mid, 0) <= limit:
            lo = mid
        else:
            hi = mid - 1
    return lo


def _max_second(first: int, limit: int) -> int:
    # largest t with _pair(first, t) <= limit, or -1
    if _pair(first, 0) > limit:
        return -1
    lo, hi = 0, limit
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if _pair(first, mid) <= limit:
            lo = mid
        else:
            hi = mid - 1
    return lo


_ladder: dict[int, list[tuple[int, OrdinalNotation]]] = {}


def _universe_upto(code_bound: int) -> list[tuple[int, OrdinalNotation]]:
    """All notations with code <= code_bound, sorted by code (memoised
    in powers of 8 so repeated queries share work)."""
    if code_bound < 0:
        return []
    if code_bound < 1:
        return [(0, ZERO)]
    j = code_bound.bit_length() - 1
    if 2 ** j < code_bound:
        j += 1
    items = _ladder_level(j)
    if items and items[-1][0] > code_bound:
        cut = bisect.bisect_right(items, code_bound, key=lambda item: item[0])
        items = items[:cut]
    return items


def _ladder_level(j: int) -> list[tuple[int, OrdinalNotation]]:
    # levels hold codes <= 2**j; the generator body only consults bounds
    # around sqrt(2**j), so levels are built strictly bottom-up
    cached = _ladder.get(j)
    if cached is not None:
        return cached
    items = _generate(2 ** j, None)
    _ladder[j] = items
    return items


def _generate(code_bound: int, bound: Optional[OrdinalNotation]) -> list[tuple[int, OrdinalNotation]]:
    """All notations a (with a < bound when given) whose code is <= code_bound,
    as (code, notation) pairs sorted by code."""
    out: list[tuple[int, OrdinalNotation]] = []
    if code_bound >= 0 and (bound is None or bound.terms):
        out.append((0, ZERO))
    if code_bound < 1:
        return out
    for ecode, exp in _universe_upto(_max_first(code_bound - 1)):
        if bound is not None and compare(omega_power(exp), bound) >= 0:
            continue  # no term with this exponent can stay below the bound
        tmax = _max_second(ecode, code_bound - 1)
        if tmax < 0:
            continue
        # rests must have leading exponent < exp
        for rcode, rest in _universe_upto(tmax):
            if rest.terms and compare(rest.terms[0][0], exp) >= 0:
                continue
            cmax = _max_second(rcode, tmax)  # bound on coeff-1 via pair(c-1, rcode)
            if cmax < 0:
                continue
            for cm1 in range(cmax + 1):
                if _pair(cm1, rcode) > tmax:
                    break
                if bound is not None and not _below(exp, cm1 + 1, rest, bound):
                    continue
                code = _pair(ecode, _pair(cm1, rcode)) + 1
                if code <= code_bound:
                    out.append((code, OrdinalNotation(((exp, cm1 + 1),) + rest.terms)))
    out.sort(key=lambda item: item[0])
    return out


class Enumeration:
    """Bijective enumeration of the notations below a limit ordinal,
    in increasing Goedel-code order.  Deterministic and memoised."""

    def __init__(self, lam: OrdinalNotation):
        if not lam.is_limit:
            raise OrdinalError("enumerate_below requires a limit notation")
        self.lam = lam
        self._items: list[OrdinalNotation] = []
        self._index: dict[OrdinalNotation, int] = {}
        self._code_bound = 256

    def _grow(self):
        self._code_bound *= 8
        items = _generate(self._code_bound, self.lam)
        self._items = [a for _, a in items]
        self._index = {a: i for i, a in enumerate(self._items)}

    def value(self, k: int) -> OrdinalNotation:
        while k >= len(self._items):
            self._grow()
        return self._items[k]

    def index_of(self, a: OrdinalNotation) -> int:
        if compare(a, self.lam) >= 0:
            raise OrdinalError("notation not below the enumeration bound")
        target = godel_code(a)
        while self._code_bound < target or a not in self._index:
            self._grow()
        return self._index[a]

    def __iter__(self) -> Iterator[OrdinalNotation]:
        k = 0
        while True:
            yield self.value(k)
            k += 1


def enumerate_below(lam: OrdinalNotation) -> Enumeration:
    return Enumeration(lam)


# ---------------------------------------------------------------------------
# optional cap (env-configurable, used by the CLI for CI runs)

CAP_ENV = "HYPERREP_CAP"


def current_cap() -> Optional[OrdinalNotation]:
    raw = os.environ.get(CAP_ENV, "").strip()
    return parse_ordinal(raw) if raw else None


def check_cap(a: OrdinalNotation, what: str = "ordinal"):
    cap = current_cap()
    if cap is not None and compare(a, cap) >= 0:
        raise CapOverflowError(f"{what} {render_ordinal(a)} reaches the cap {render_ordinal(cap)}")
