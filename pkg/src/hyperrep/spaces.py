"""Space expressions and their s-expression grammar.

Grammar (CLI input):

    omega | baire | sierpinski | pomega | reals
    (nk <ord>) | (rk <ord>)
    (prod e1 e2) | (coprod e1 e2 ...) | (exp Y X)
    (prod-omega (family (k) <expr>)) | (coprod-omega (family (k) <expr>))
    (equalizer X f g) | (coequalizer A X f g)
    (retract X w) | (t0 X) | (hyper-o X)

Inside a family body the index variable may appear in ordinal slots,
either as a trailing summand (`k`, `w*2+k`) or as the exponent or
coefficient of the last term (`w^k`, `w^2*k`); the engine derives the
limit of such a template symbolically.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .ordinals import (
    ZERO, ONE, OrdinalNotation, OrdinalError, add_omega_power, compare,
    from_int, omega_power, parse_ordinal, render_ordinal, successor,
)


class SpaceParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


# ---------------------------------------------------------------------------
# ordinal templates (index variable in the last term)

@dataclass(frozen=True)
class OrdinalTemplate:
    """An ordinal literal mentioning the family index variable.

    prefix + var             (slot = "summand")
    prefix + w^var           (slot = "exponent", exp_prefix unused)
    prefix + w^exp * var     (slot = "coefficient")
    """

    prefix: OrdinalNotation
    slot: str
    exp: Optional[OrdinalNotation] = None

    def substitute(self, k: int) -> OrdinalNotation:
        if self.slot == "summand":
            if k == 0:
                return self.prefix
            if self.prefix.terms and self.prefix.terms[-1][0].is_zero:
                head, tail = self.prefix.terms[:-1], self.prefix.terms[-1][1]
                return OrdinalNotation(head + ((ZERO, tail + k),))
            return OrdinalNotation(self.prefix.terms + ((ZERO, k),))
        if self.slot == "exponent":
            return add_omega_power(self.prefix, from_int(k))
        # coefficient
        if k == 0:
            return self.prefix
        return OrdinalNotation(self.prefix.terms + ((self.exp, k),))

    def limit(self) -> OrdinalNotation:
        """sup over k of substitute(k)."""
        if self.slot == "summand":
            return add_omega_power(self.prefix, ONE)
        if self.slot == "exponent":
            return add_omega_power(self.prefix, omega_power(ONE))
        return add_omega_power(self.prefix, successor(self.exp))  # coefficient


OrdinalExpr = Union[OrdinalNotation, OrdinalTemplate]


def substitute_ordinal(o: OrdinalExpr, k: int) -> OrdinalNotation:
    return o.substitute(k) if isinstance(o, OrdinalTemplate) else o


# ---------------------------------------------------------------------------
# AST

class SpaceExpr:
    pass


@dataclass(frozen=True)
class Omega(SpaceExpr):
    pass


@dataclass(frozen=True)
class Baire(SpaceExpr):
    pass


@dataclass(frozen=True)
class Sierpinski(SpaceExpr):
    pass


@dataclass(frozen=True)
class POmega(SpaceExpr):
    pass


@dataclass(frozen=True)
class Reals(SpaceExpr):
    pass


@dataclass(frozen=True)
class Nk(SpaceExpr):
    level: OrdinalExpr


@dataclass(frozen=True)
class Rk(SpaceExpr):
    level: OrdinalExpr


@dataclass(frozen=True)
class Prod(SpaceExpr):
    left: SpaceExpr
    right: SpaceExpr


@dataclass(frozen=True)
class Coprod(SpaceExpr):
    parts: tuple[SpaceExpr, ...]


@dataclass(frozen=True)
class Family(SpaceExpr):
    var: str
    body: SpaceExpr

    def instantiate(self, k: int) -> SpaceExpr:
        return substitute_space(self.body, k)


@dataclass(frozen=True)
class ProdOmega(SpaceExpr):
    family: Family


@dataclass(frozen=True)
class CoprodOmega(SpaceExpr):
    family: Family


@dataclass(frozen=True)
class Exp(SpaceExpr):
    base: SpaceExpr       # Y in Y^X
    exponent: SpaceExpr   # X


@dataclass(frozen=True)
class Equalizer(SpaceExpr):
    space: SpaceExpr
    f: str
    g: str


@dataclass(frozen=True)
class Coequalizer(SpaceExpr):
    source: SpaceExpr
    space: SpaceExpr
    f: str
    g: str


@dataclass(frozen=True)
class RetractOf(SpaceExpr):
    space: SpaceExpr
    witness: str


@dataclass(frozen=True)
class T0(SpaceExpr):
    space: SpaceExpr


def hyper_o(x: SpaceExpr) -> SpaceExpr:
    return Exp(Sierpinski(), x)


def substitute_space(e: SpaceExpr, k: int) -> SpaceExpr:
    if isinstance(e, Nk):
        return Nk(substitute_ordinal(e.level, k))
    if isinstance(e, Rk):
        return Rk(substitute_ordinal(e.level, k))
    if isinstance(e, Prod):
        return Prod(substitute_space(e.left, k), substitute_space(e.right, k))
    if isinstance(e, Coprod):
        return Coprod(tuple(substitute_space(p, k) for p in e.parts))
    if isinstance(e, Exp):
        return Exp(substitute_space(e.base, k), substitute_space(e.exponent, k))
    if isinstance(e, T0):
        return T0(substitute_space(e.space, k))
    if isinstance(e, Equalizer):
        return Equalizer(substitute_space(e.space, k), e.f, e.g)
    if isinstance(e, Coequalizer):
        return Coequalizer(substitute_space(e.source, k), substitute_space(e.space, k), e.f, e.g)
    if isinstance(e, RetractOf):
        return RetractOf(substitute_space(e.space, k), e.witness)
    if isinstance(e, (ProdOmega, CoprodOmega)):
        raise SpaceParseError("nested families are not supported", 0)
    return e


def mentions_var(e: SpaceExpr) -> bool:
    if isinstance(e, (Nk, Rk)):
        return isinstance(e.level, OrdinalTemplate)
    if isinstance(e, Prod):
        return mentions_var(e.left) or mentions_var(e.right)
    if isinstance(e, Coprod):
        return any(mentions_var(p) for p in e.parts)
    if isinstance(e, Exp):
        return mentions_var(e.base) or mentions_var(e.exponent)
    if isinstance(e, (T0, Equalizer, RetractOf)):
        return mentions_var(e.space)
    if isinstance(e, Coequalizer):
        return mentions_var(e.source) or mentions_var(e.space)
    return False


def template_limits(e: SpaceExpr) -> list[OrdinalNotation]:
    """The symbolic limits of every template slot in a family body."""
    out = []
    if isinstance(e, (Nk, Rk)) and isinstance(e.level, OrdinalTemplate):
        out.append(e.level.limit())
    elif isinstance(e, Prod):
        out += template_limits(e.left) + template_limits(e.right)
    elif isinstance(e, Coprod):
        for p in e.parts:
            out += template_limits(p)
    elif isinstance(e, Exp):
        out += template_limits(e.base) + template_limits(e.exponent)
    elif isinstance(e, (T0, Equalizer, RetractOf)):
        out += template_limits(e.space)
    elif isinstance(e, Coequalizer):
        out += template_limits(e.source) + template_limits(e.space)
    return out


# ---------------------------------------------------------------------------
# parser

_ATOMS = {"omega": Omega, "baire": Baire, "sierpinski": Sierpinski,
          "pomega": POmega, "reals": Reals}


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.toks: list[tuple[str, int]] = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch in "()":
                self.toks.append((ch, i))
                i += 1
            else:
                j = i
                while j < len(text) and not text[j].isspace() and text[j] not in "()":
                    j += 1
                self.toks.append((text[i:j], i))
                i = j
        self.pos = 0

    def peek(self) -> Optional[tuple[str, int]]:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def next(self) -> tuple[str, int]:
        t = self.peek()
        if t is None:
            raise SpaceParseError("unexpected end of input", len(self.text))
        self.pos += 1
        return t


def parse_space(text: str) -> SpaceExpr:
    toks = _Tokens(text)
    expr = _parse_expr(toks, var=None)
    left = toks.peek()
    if left is not None:
        raise SpaceParseError(f"trailing input {left[0]!r}", left[1])
    return expr


def _parse_ordinal_token(tok: str, pos: int, var: Optional[str]) -> OrdinalExpr:
    if var is not None and var in tok:
        return _parse_template(tok, pos, var)
    try:
        return parse_ordinal(tok)
    except OrdinalError as e:
        raise SpaceParseError(str(e), pos) from e


def _parse_template(tok: str, pos: int, var: str) -> OrdinalTemplate:
    bad = SpaceParseError(
        f"index variable {var!r} may appear only in the last term "
        f"(as `{var}`, `w^{var}` or `w^e*{var}`)", pos)
    parts = tok.split("+")
    head, last = parts[:-1], parts[-1]
    if any(var in p for p in head):
        raise bad
    prefix_text = "+".join(head)
    try:
        prefix = parse_ordinal(prefix_text) if prefix_text else ZERO
    except OrdinalError as e:
        raise SpaceParseError(str(e), pos) from e
    if last == var:
        return OrdinalTemplate(prefix, "summand")
    if last == f"w^{var}":
        return OrdinalTemplate(prefix, "exponent")
    if last.endswith(f"*{var}"):
        base = last[:-len(f"*{var}")]
        if base == "w":
            return OrdinalTemplate(prefix, "coefficient", exp=ONE)
        if base.startswith("w^"):
            try:
                exp = parse_ordinal(base[2:].strip("()"))
            except OrdinalError as e:
                raise SpaceParseError(str(e), pos) from e
            return OrdinalTemplate(prefix, "coefficient", exp=exp)
    raise bad


def _parse_expr(toks: _Tokens, var: Optional[str]) -> SpaceExpr:
    tok, pos = toks.next()
    if tok == ")":
        raise SpaceParseError("unexpected ')'", pos)
    if tok != "(":
        ctor = _ATOMS.get(tok)
        if ctor is None:
            raise SpaceParseError(f"unknown atom {tok!r}", pos)
        return ctor()
    head, hpos = toks.next()
    if head == "nk" or head == "rk":
        ord_tok, opos = toks.next()
        level = _parse_ordinal_token(ord_tok, opos, var)
        _expect_close(toks)
        return (Nk if head == "nk" else Rk)(level)
    if head == "prod":
        left = _parse_expr(toks, var)
        right = _parse_expr(toks, var)
        _expect_close(toks)
        return Prod(left, right)
    if head == "coprod":
        parts = []
        while toks.peek() is not None and toks.peek()[0] != ")":
            parts.append(_parse_expr(toks, var))
        _expect_close(toks)
        if len(parts) < 2:
            raise SpaceParseError("coprod needs at least two parts", hpos)
        return Coprod(tuple(parts))
    if head in ("prod-omega", "coprod-omega"):
        fam = _parse_family(toks)
        _expect_close(toks)
        return ProdOmega(fam) if head == "prod-omega" else CoprodOmega(fam)
    if head == "exp":
        base = _parse_expr(toks, var)
        exponent = _parse_expr(toks, var)
        _expect_close(toks)
        return Exp(base, exponent)
    if head == "equalizer":
        space = _parse_expr(toks, var)
        f, _ = toks.next()
        g, _ = toks.next()
        _expect_close(toks)
        return Equalizer(space, f, g)
    if head == "coequalizer":
        source = _parse_expr(toks, var)
        space = _parse_expr(toks, var)
        f, _ = toks.next()
        g, _ = toks.next()
        _expect_close(toks)
        return Coequalizer(source, space, f, g)
    if head == "retract":
        space = _parse_expr(toks, var)
        w, _ = toks.next()
        _expect_close(toks)
        return RetractOf(space, w)
    if head == "t0":
        space = _parse_expr(toks, var)
        _expect_close(toks)
        return T0(space)
    if head == "hyper-o":
        space = _parse_expr(toks, var)
        _expect_close(toks)
        return hyper_o(space)
    raise SpaceParseError(f"unknown form {head!r}", hpos)


def _parse_family(toks: _Tokens) -> Family:
    tok, pos = toks.next()
    if tok != "(":
        raise SpaceParseError("expected (family (k) <expr>)", pos)
    kw, kpos = toks.next()
    if kw != "family":
        raise SpaceParseError("expected 'family'", kpos)
    tok, pos = toks.next()
    if tok != "(":
        raise SpaceParseError("expected (var)", pos)
    var, _ = toks.next()
    _expect_close(toks)
    body = _parse_expr(toks, var)
    _expect_close(toks)
    return Family(var, body)


def _expect_close(toks: _Tokens):
    tok, pos = toks.next()
    if tok != ")":
        raise SpaceParseError(f"expected ')', got {tok!r}", pos)


# ---------------------------------------------------------------------------
# rendering (for messages and traces)

def render_space(e: SpaceExpr) -> str:
    if isinstance(e, Omega):
        return "omega"
    if isinstance(e, Baire):
        return "baire"
    if isinstance(e, Sierpinski):
        return "sierpinski"
    if isinstance(e, POmega):
        return "pomega"
    if isinstance(e, Reals):
        return "reals"
    if isinstance(e, Nk):
        return f"(nk {render_ordinal_expr(e.level)})"
    if isinstance(e, Rk):
        return f"(rk {render_ordinal_expr(e.level)})"
    if isinstance(e, Prod):
        return f"(prod {render_space(e.left)} {render_space(e.right)})"
    if isinstance(e, Coprod):
        return "(coprod " + " ".join(render_space(p) for p in e.parts) + ")"
    if isinstance(e, ProdOmega):
        return f"(prod-omega {render_family(e.family)})"
    if isinstance(e, CoprodOmega):
        return f"(coprod-omega {render_family(e.family)})"
    if isinstance(e, Exp):
        return f"(exp {render_space(e.base)} {render_space(e.exponent)})"
    if isinstance(e, Equalizer):
        return f"(equalizer {render_space(e.space)} {e.f} {e.g})"
    if isinstance(e, Coequalizer):
        return f"(coequalizer {render_space(e.source)} {render_space(e.space)} {e.f} {e.g})"
    if isinstance(e, RetractOf):
        return f"(retract {render_space(e.space)} {e.witness})"
    if isinstance(e, T0):
        return f"(t0 {render_space(e.space)})"
    if isinstance(e, Family):
        return render_family(e)
    raise TypeError(f"unrenderable {e!r}")


def render_family(f: Family) -> str:
    return f"(family ({f.var}) {render_space(f.body)})"


def render_ordinal_expr(o: OrdinalExpr) -> str:
    if isinstance(o, OrdinalNotation):
        return render_ordinal(o)
    prefix = "" if o.prefix.is_zero else render_ordinal(o.prefix) + "+"
    if o.slot == "summand":
        return prefix + "k"
    if o.slot == "exponent":
        return prefix + "w^k"
    base = "w" if o.exp == ONE else (f"w^{render_ordinal(o.exp)}")
    return prefix + base + "*k"
