"""Symbolic algebra of hierarchy levels.

Classes are normal forms over the tags below; the order is the
reflexive-transitive closure of a fixed finite rule set, so `leq`
answers False for anything not derivable.  That is sound for
upper-bound tracking: the engine may overestimate, never underestimate.

Canonical forms and rendering:

    Sigma0[1]  open sets                 Pi0[1]   closed sets
    BoolOpen   Boolean combos of opens
    Sigma0[2]  (the level-0 Sigma row)   Pi0[2]   (the level-0 Pi row)
    Sigma1[a]  a >= 1                    Pi1[a]   a >= 1
    Delta1[a]  a >= 0
    SigmaBelow[l], SigmaBelowSigma[l], SigmaBelowDelta[l]  (l a limit)

Sigma1[0] and Pi1[0] are accepted on input and normalise to Sigma0[2]
and Pi0[2].
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional

from .ordinals import (
    ZERO, ONE, OrdinalNotation, OrdinalError, compare, parse_ordinal,
    render_ordinal, successor,
)

SIGMA0_1 = "Sigma0_1"
PI0_1 = "Pi0_1"
BOOL_OPEN = "BoolOpen"
SIGMA0_2 = "Sigma0_2"
PI0_2 = "Pi0_2"
SIGMA1 = "Sigma1"
PI1 = "Pi1"
DELTA1 = "Delta1"
SIGMA_BELOW = "SigmaBelow"
SIGMA_BELOW_SIGMA = "SigmaBelowSigma"
SIGMA_BELOW_DELTA = "SigmaBelowDelta"

_LEVELLED = {SIGMA1, PI1, DELTA1}
_LIMIT_FAMILY = {SIGMA_BELOW, SIGMA_BELOW_SIGMA, SIGMA_BELOW_DELTA}
_ATOMIC = {SIGMA0_1, PI0_1, BOOL_OPEN, SIGMA0_2, PI0_2}


class PointclassError(ValueError):
    pass


@dataclass(frozen=True)
class Pointclass:
    tag: str
    level: Optional[OrdinalNotation] = None

    def __post_init__(self):
        if self.tag in _ATOMIC:
            if self.level is not None:
                raise PointclassError(f"{self.tag} takes no level")
        elif self.tag in _LEVELLED:
            if self.level is None:
                raise PointclassError(f"{self.tag} needs a level")
            if self.tag in (SIGMA1, PI1) and self.level.is_zero:
                raise PointclassError("level-0 rows are Sigma0[2]/Pi0[2]")
        elif self.tag in _LIMIT_FAMILY:
            if self.level is None or not self.level.is_limit:
                raise PointclassError(f"{self.tag} needs a limit level")
        else:
            raise PointclassError(f"unknown tag {self.tag!r}")

    def __repr__(self):
        return f"Pointclass({render(self)})"


def sigma0(level: int) -> Pointclass:
    if level == 1:
        return Pointclass(SIGMA0_1)
    if level == 2:
        return Pointclass(SIGMA0_2)
    raise PointclassError("only Borel levels 1 and 2 are represented")


def pi0(level: int) -> Pointclass:
    if level == 1:
        return Pointclass(PI0_1)
    if level == 2:
        return Pointclass(PI0_2)
    raise PointclassError("only Borel levels 1 and 2 are represented")


def bool_open() -> Pointclass:
    return Pointclass(BOOL_OPEN)


def sigma1(level: OrdinalNotation) -> Pointclass:
    return Pointclass(SIGMA0_2) if level.is_zero else Pointclass(SIGMA1, level)


def pi1(level: OrdinalNotation) -> Pointclass:
    return Pointclass(PI0_2) if level.is_zero else Pointclass(PI1, level)


def delta1(level: OrdinalNotation) -> Pointclass:
    return Pointclass(DELTA1, level)


def sigma_below(lam: OrdinalNotation) -> Pointclass:
    return Pointclass(SIGMA_BELOW, lam)


def sigma_below_sigma(lam: OrdinalNotation) -> Pointclass:
    return Pointclass(SIGMA_BELOW_SIGMA, lam)


def sigma_below_delta(lam: OrdinalNotation) -> Pointclass:
    return Pointclass(SIGMA_BELOW_DELTA, lam)


def normalize(g: Pointclass) -> Pointclass:
    return g  # construction canonicalises; kept for idempotence checks


# ---------------------------------------------------------------------------
# entry thresholds: the least b with g <= Sigma1[b] / Pi1[b] / Delta1[b],
# reading Sigma1[0] as Sigma0[2] and Pi1[0] as Pi0[2]

def _sigma_entry(g: Pointclass) -> OrdinalNotation:
    t = g.tag
    if t in (SIGMA0_1, PI0_1, BOOL_OPEN, SIGMA0_2):
        return ZERO
    if t == PI0_2:
        return ONE
    if t == SIGMA1:
        return g.level
    if t == PI1:
        return successor(g.level)
    if t == DELTA1:
        return g.level
    return g.level  # SigmaBelow-family enters at the limit itself


def _pi_entry(g: Pointclass) -> OrdinalNotation:
    t = g.tag
    if t in (SIGMA0_1, PI0_1, BOOL_OPEN, PI0_2):
        return ZERO
    if t == SIGMA0_2:
        return ONE
    if t == PI1:
        return g.level
    if t == SIGMA1:
        return successor(g.level)
    if t == DELTA1:
        return g.level
    return g.level  # the whole SigmaBelow family sits inside the Pi limit row


def _delta_entry(g: Pointclass) -> OrdinalNotation:
    t = g.tag
    if t in (SIGMA0_1, PI0_1, BOOL_OPEN):
        return ZERO
    if t in (SIGMA0_2, PI0_2):
        return ONE
    if t == DELTA1:
        return g.level
    if t in (SIGMA1, PI1):
        return successor(g.level)
    return g.level  # SigmaBelow family: inside both limit rows, so Delta too


def sigma_entry(g: Pointclass) -> OrdinalNotation:
    """Least a with leq(g, Sigma1[a]) (Sigma0[2] at a = 0)."""
    return _sigma_entry(g)


def pi_entry(g: Pointclass) -> OrdinalNotation:
    return _pi_entry(g)


# ---------------------------------------------------------------------------
# the inclusion order

def leq(a: Pointclass, b: Pointclass) -> bool:
    if a == b:
        return True
    t = b.tag
    if t == SIGMA0_1 or t == PI0_1:
        return False
    if t == BOOL_OPEN:
        return a.tag in (SIGMA0_1, PI0_1)
    if t == SIGMA0_2:
        return _sigma_entry(a).is_zero
    if t == PI0_2:
        return _pi_entry(a).is_zero
    if t == SIGMA1:
        return compare(_sigma_entry(a), b.level) <= 0
    if t == PI1:
        return compare(_pi_entry(a), b.level) <= 0
    if t == DELTA1:
        return compare(_delta_entry(a), b.level) <= 0
    # SigmaBelow family: everything that lands strictly below the limit
    below = compare(_sigma_entry(a), b.level) < 0 or compare(_pi_entry(a), b.level) < 0
    if t == SIGMA_BELOW:
        return below
    return below or (a.tag == SIGMA_BELOW and compare(a.level, b.level) == 0)


def join(a: Pointclass, b: Pointclass) -> Pointclass:
    """Least representable class above both (total: the incomparable
    pairs of the rule set all have a unique minimal upper bound)."""
    if leq(a, b):
        return b
    if leq(b, a):
        return a
    ta, tb = a.tag, b.tag
    if {ta, tb} == {SIGMA0_1, PI0_1}:
        return Pointclass(BOOL_OPEN)
    sides = {ta, tb}
    if sides == {SIGMA0_2, PI0_2}:
        return delta1(ONE)
    if sides == {SIGMA1, PI1} and compare(a.level, b.level) == 0:
        return delta1(successor(a.level))
    if sides == {SIGMA_BELOW_SIGMA, SIGMA_BELOW_DELTA}:
        return delta1(a.level)
    raise PointclassError(f"no join rule for {render(a)} and {render(b)}")


def join_all(classes: Iterable[Pointclass]) -> Pointclass:
    out = None
    for g in classes:
        out = g if out is None else join(out, g)
    if out is None:
        raise PointclassError("empty join")
    return out


# ---------------------------------------------------------------------------
# the operation calculus

def complement(g: Pointclass) -> Pointclass:
    t = g.tag
    swap = {SIGMA0_1: PI0_1, PI0_1: SIGMA0_1, SIGMA0_2: PI0_2, PI0_2: SIGMA0_2,
            SIGMA1: PI1, PI1: SIGMA1,
            SIGMA_BELOW_SIGMA: SIGMA_BELOW_DELTA,
            SIGMA_BELOW_DELTA: SIGMA_BELOW_SIGMA}
    if t in (BOOL_OPEN, DELTA1, SIGMA_BELOW):
        return g
    return Pointclass(swap[t], g.level)


def close_sigma(g: Pointclass) -> Pointclass:
    t = g.tag
    if t in (SIGMA0_1, SIGMA0_2, SIGMA1, PI1, SIGMA_BELOW_SIGMA):
        return g
    if t in (PI0_1, BOOL_OPEN):
        return Pointclass(SIGMA0_2)
    if t == PI0_2:
        return delta1(ONE)
    if t == DELTA1:
        return g if not g.level.is_zero else Pointclass(SIGMA0_2)
    if t == SIGMA_BELOW:
        return sigma_below_sigma(g.level)
    return delta1(g.level)  # unions escape SigmaBelowDelta, land in the limit Delta row


def close_delta(g: Pointclass) -> Pointclass:
    t = g.tag
    if t in (PI0_1, PI0_2, SIGMA1, PI1, SIGMA_BELOW_DELTA):
        return g
    if t in (SIGMA0_1, BOOL_OPEN):
        return Pointclass(PI0_2)
    if t == SIGMA0_2:
        return delta1(ONE)
    if t == DELTA1:
        return g if not g.level.is_zero else Pointclass(PI0_2)
    if t == SIGMA_BELOW:
        return sigma_below_delta(g.level)
    # countable intersections escape SigmaBelowSigma; both closures of
    # the union class sit inside the limit Delta row, the least safe bound
    return delta1(g.level)


def proj_exists(g: Pointclass) -> Pointclass:
    t = g.tag
    if t in (SIGMA0_1, SIGMA1, SIGMA_BELOW, SIGMA_BELOW_SIGMA):
        return g
    if t in (PI0_1, BOOL_OPEN, SIGMA0_2, PI0_2):
        return sigma1(ONE)
    if t == DELTA1:
        return sigma1(g.level) if not g.level.is_zero else sigma1(ONE)
    if t == PI1:
        return sigma1(successor(g.level))
    return sigma1(g.level)  # SigmaBelowDelta: projection reaches the limit row


def proj_forall(g: Pointclass) -> Pointclass:
    return complement(proj_exists(complement(g)))


def diff(g: Pointclass) -> Pointclass:
    if g.tag == SIGMA0_1:
        return Pointclass(BOOL_OPEN)
    return join(g, complement(g))


def preimage_pi02(g: Pointclass) -> Pointclass:
    """Bound for preimages under partial continuous functions whose
    domain sits at the Pi0[2] level."""
    if g.tag in _ATOMIC or (g.tag == DELTA1 and g.level.is_zero):
        return join(g, Pointclass(PI0_2))
    return g


# ---------------------------------------------------------------------------
# rendering and parsing

_RENDER = {SIGMA0_1: "Sigma0[1]", PI0_1: "Pi0[1]", BOOL_OPEN: "BoolOpen",
           SIGMA0_2: "Sigma0[2]", PI0_2: "Pi0[2]"}
_NAMES = {"Sigma1": sigma1, "Pi1": pi1, "Delta1": delta1,
          "SigmaBelow": sigma_below, "SigmaBelowSigma": sigma_below_sigma,
          "SigmaBelowDelta": sigma_below_delta}


def render(g: Pointclass) -> str:
    fixed = _RENDER.get(g.tag)
    if fixed is not None:
        return fixed
    return f"{g.tag}[{render_ordinal(g.level)}]"


def parse_pointclass(text: str) -> Pointclass:
    stripped = text.strip()
    if stripped == "BoolOpen":
        return Pointclass(BOOL_OPEN)
    m = re.fullmatch(r"(Sigma0|Pi0|Sigma1|Pi1|Delta1|SigmaBelow|SigmaBelowSigma|SigmaBelowDelta)\[([^]]*)\]",
                     stripped)
    if m is None:
        raise PointclassError(f"bad pointclass literal {text!r}")
    name, arg = m.group(1), m.group(2)
    if name == "Sigma0":
        return sigma0(int(arg))
    if name == "Pi0":
        return pi0(int(arg))
    try:
        level = parse_ordinal(arg)
    except OrdinalError as e:
        raise PointclassError(f"bad level in {text!r}: {e}") from e
    return _NAMES[name](level)
