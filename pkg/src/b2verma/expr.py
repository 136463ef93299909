"""Expression language for elements of the negative part, weights and side conditions.

Element grammar (whitespace is insignificant)::

    sum     := ['-'] term (('+' | '-') term)*
    term    := '-' term | factor (['*'] factor)*
    factor  := NUM ['/' NUM]                 rational scalar
             | LETTER ['^' exponent]         f1 f2 f12 f112 f12' f112'
             | '[' sum ',' sum ']'           commutator xy - yx
             | '(' sum ')'
             | 'frac' '(' sum ',' sum ')'    homogeneous z with z*y = x
             | 'x' '(' int ',' int ')'       the element x_{a,b}
    exponent:= '(' int ')' | NUM | NAME

Integer expressions use + - * parentheses and juxtaposition (``2l-3``);
names are looked up in an environment that always contains ``l``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError

LETTERS = ("f1", "f2", "f12", "f112", "f12'", "f112'")


# -- tree ----------------------------------------------------------------------
class Expr:
    __slots__ = ()

    def __str__(self):
        return to_source(self)


@dataclass(frozen=True)
class Gen(Expr):
    letter: str
    exp: int = 1


@dataclass(frozen=True)
class Const(Expr):
    value: Fraction


@dataclass(frozen=True)
class Prod(Expr):
    factors: tuple


@dataclass(frozen=True)
class Sum(Expr):
    terms: tuple


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr


@dataclass(frozen=True)
class Comm(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Frac(Expr):
    num: Expr
    den: Expr


@dataclass(frozen=True)
class XAB(Expr):
    a: int
    b: int


def to_source(e: Expr) -> str:
    if isinstance(e, Gen):
        return e.letter if e.exp == 1 else f"{e.letter}^({e.exp})"
    if isinstance(e, Const):
        v = Fraction(e.value)
        if v < 0:
            return f"(-{-v})"
        return str(v)
    if isinstance(e, Prod):
        return " ".join(_factor_source(f) for f in e.factors)
    if isinstance(e, Sum):
        out = to_source(e.terms[0])
        for t in e.terms[1:]:
            if isinstance(t, Neg):
                out += " - " + _neg_arg_source(t.arg)
            else:
                out += " + " + _term_source(t)
        return out
    if isinstance(e, Neg):
        return "-" + _neg_arg_source(e.arg)
    if isinstance(e, Comm):
        return f"[{to_source(e.left)}, {to_source(e.right)}]"
    if isinstance(e, Frac):
        return f"frac({to_source(e.num)}, {to_source(e.den)})"
    if isinstance(e, XAB):
        return f"x({e.a}, {e.b})"
    raise TypeError(f"not an expression: {e!r}")


def _factor_source(f):
    if isinstance(f, (Sum, Neg, Prod)):
        return f"({to_source(f)})"
    return to_source(f)


def _term_source(t):
    return f"({to_source(t)})" if isinstance(t, Sum) else to_source(t)


def _neg_arg_source(a):
    return f"({to_source(a)})" if isinstance(a, (Sum, Neg)) else to_source(a)


# -- tokens ----------------------------------------------------------------------
_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<letter>f(?:112|12|1|2)'?(?![A-Za-z0-9_]))
  | (?P<num>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>==|!=|>=|<=|\.\.|[-+*/^()\[\],<>=;{}|])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(src: str):
    tokens = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:
            line, col = _linecol(src, pos)
            raise ParseError(f"unexpected character {src[pos]!r}", line, col)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, m.group(), pos))
        pos = m.end()
    tokens.append(Token("end", "", len(src)))
    return tokens


def _linecol(src, pos):
    line = src.count("\n", 0, pos) + 1
    start = src.rfind("\n", 0, pos) + 1
    return line, pos - start + 1


class _Parser:
    def __init__(self, src: str, env: dict):
        self.src = src
        self.toks = tokenize(src)
        self.i = 0
        self.env = env

    # -- helpers --
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        line, col = _linecol(self.src, tok.pos)
        if tok.kind == "end":
            msg = f"{msg} (unexpected end of input)"
        raise ParseError(msg, line, col)

    def at(self, text):
        return self.tok.kind in ("op", "name") and self.tok.text == text

    def advance(self):
        t = self.tok
        self.i += 1
        return t

    def expect(self, text):
        if not self.at(text):
            self.error(f"expected {text!r}")
        return self.advance()

    def done(self):
        if self.tok.kind != "end":
            self.error(f"unexpected {self.tok.text!r}")

    # -- integers --
    def int_expr(self) -> int:
        neg = False
        if self.at("-"):
            self.advance()
            neg = True
        val = self.int_term()
        if neg:
            val = -val
        while self.at("+") or self.at("-"):
            op = self.advance().text
            rhs = self.int_term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def _int_atom_start(self):
        t = self.tok
        return t.kind in ("num", "name") or (t.kind == "op" and t.text == "(")

    def int_term(self) -> int:
        val = self.int_atom()
        while True:
            if self.at("*"):
                self.advance()
                val *= self.int_atom()
            elif self._int_atom_start() and not self._is_keyword():
                val *= self.int_atom()
            else:
                return val

    def _is_keyword(self):
        return self.tok.kind == "name" and self.tok.text in ("and", "if", "in")

    def int_atom(self) -> int:
        t = self.tok
        if t.kind == "num":
            self.advance()
            return int(t.text)
        if t.kind == "name":
            self.advance()
            if t.text not in self.env:
                self.error(f"unknown name {t.text!r}", t)
            v = self.env[t.text]
            if not isinstance(v, int):
                self.error(f"{t.text!r} is not an integer", t)
            return v
        if self.at("("):
            self.advance()
            v = self.int_expr()
            self.expect(")")
            return v
        if self.at("-"):
            self.advance()
            return -self.int_atom()
        self.error("expected an integer expression")

    # -- elements --
    def sum(self) -> Expr:
        if self.at("-"):
            self.advance()
            first = Neg(self.term())
        else:
            first = self.term()
        terms = [first]
        while self.at("+") or self.at("-"):
            op = self.advance().text
            t = self.term()
            terms.append(Neg(t) if op == "-" else t)
        if len(terms) == 1:
            return terms[0]
        flat = []
        for t in terms:
            flat.extend(t.terms if isinstance(t, Sum) else (t,))
        return Sum(tuple(flat))

    def _factor_start(self):
        t = self.tok
        if t.kind in ("letter", "num"):
            return True
        if t.kind == "op":
            return t.text in ("[", "(")
        if t.kind == "name":
            return t.text in ("frac", "x")
        return False

    def term(self) -> Expr:
        if self.at("-"):
            self.advance()
            return Neg(self.term())
        factors = [self.factor()]
        while True:
            if self.at("*"):
                self.advance()
                factors.append(self.factor())
            elif self._factor_start():
                factors.append(self.factor())
            else:
                break
        if len(factors) == 1:
            return factors[0]
        flat = []
        for f in factors:
            flat.extend(f.factors if isinstance(f, Prod) else (f,))
        return Prod(tuple(flat))

    def factor(self) -> Expr:
        t = self.tok
        if t.kind == "num":
            self.advance()
            num = int(t.text)
            if self.at("/"):
                self.advance()
                d = self.tok
                if d.kind != "num":
                    self.error("expected a denominator")
                self.advance()
                if int(d.text) == 0:
                    self.error("zero denominator", d)
                return Const(Fraction(num, int(d.text)))
            return Const(Fraction(num))
        if t.kind == "letter":
            self.advance()
            exp = 1
            if self.at("^"):
                self.advance()
                start = self.tok
                if self.at("("):
                    self.advance()
                    exp = self.int_expr()
                    self.expect(")")
                else:
                    exp = self.int_atom()
                if exp < 0:
                    self.error(f"negative divided power {exp}", start)
            return Gen(t.text, exp)
        if self.at("["):
            self.advance()
            left = self.sum()
            self.expect(",")
            right = self.sum()
            self.expect("]")
            return Comm(left, right)
        if self.at("("):
            self.advance()
            inner = self.sum()
            self.expect(")")
            return inner
        if self.at("frac"):
            self.advance()
            self.expect("(")
            num = self.sum()
            self.expect(",")
            den = self.sum()
            self.expect(")")
            return Frac(num, den)
        if self.at("x"):
            self.advance()
            self.expect("(")
            start = self.tok
            a = self.int_expr()
            self.expect(",")
            b = self.int_expr()
            self.expect(")")
            if a < 0 or b < 0:
                self.error("x(a,b) needs nonnegative indices", start)
            return XAB(a, b)
        self.error("expected a factor")

    # -- weights --
    def w_expr(self):
        neg = False
        if self.at("-"):
            self.advance()
            neg = True
        val = self.w_term()
        if neg:
            val = _wscale(-1, val)
        while self.at("+") or self.at("-"):
            op = self.advance()
            rhs = self.w_term()
            val = _wadd(val, rhs if op.text == "+" else _wscale(-1, rhs), self, op)
        return val

    def w_term(self):
        val = self.w_atom()
        while True:
            if self.at("*"):
                op = self.advance()
                val = _wmul(val, self.w_atom(), self, op)
            elif self._int_atom_start() and not self._is_keyword():
                op = self.tok
                val = _wmul(val, self.w_atom(), self, op)
            else:
                return val

    def w_atom(self):
        t = self.tok
        if t.kind == "num":
            self.advance()
            return int(t.text)
        if t.kind == "name":
            self.advance()
            if t.text not in self.env:
                self.error(f"unknown name {t.text!r}", t)
            return self.env[t.text]
        if self.at("("):
            self.advance()
            first = self.w_expr()
            if self.at(","):
                self.advance()
                second = self.w_expr()
                self.expect(")")
                if not (isinstance(first, int) and isinstance(second, int)):
                    self.error("weight literal needs integer coordinates", t)
                from .verma import Weight

                return Weight(first, second)
            self.expect(")")
            return first
        if self.at("-"):
            self.advance()
            return _wscale(-1, self.w_atom())
        self.error("expected a weight expression")

    # -- conditions --
    def condition(self) -> bool:
        ok = self.comparison()
        while self.at("and"):
            self.advance()
            ok = self.comparison() and ok
        return ok

    def comparison(self) -> bool:
        lhs = self.int_expr()
        t = self.tok
        ops = {"==": int.__eq__, "!=": int.__ne__, ">=": int.__ge__, "<=": int.__le__, ">": int.__gt__, "<": int.__lt__}
        if t.kind != "op" or t.text not in ops:
            self.error("expected a comparison operator")
        self.advance()
        rhs = self.int_expr()
        return ops[t.text](lhs, rhs)


def _is_weight(v):
    return not isinstance(v, int)


def _wscale(k, v):
    return k * v


def _wadd(x, y, parser, tok):
    if _is_weight(x) != _is_weight(y):
        parser.error("cannot add an integer and a weight", tok)
    return x + y


def _wmul(x, y, parser, tok):
    if _is_weight(x) and _is_weight(y):
        parser.error("cannot multiply two weights", tok)
    if _is_weight(x):
        x, y = y, x
    return x * y


def _env(l, env):
    out = {"l": int(l)}
    if env:
        out.update(env)
    return out


def parse(src: str, l: int, env: dict | None = None) -> Expr:
    """Parse an element expression, resolving ``l`` and any extra integer names."""
    p = _Parser(src, _env(l, env))
    tree = p.sum()
    p.done()
    return tree


def parse_equation(src: str, l: int, env: dict | None = None):
    """Parse ``lhs == rhs`` into a pair of trees."""
    p = _Parser(src, _env(l, env))
    lhs = p.sum()
    p.expect("==")
    rhs = p.sum()
    p.done()
    return lhs, rhs


def eval_int(src: str, env: dict) -> int:
    p = _Parser(src, dict(env))
    v = p.int_expr()
    p.done()
    return v


def eval_weight(src: str, env: dict):
    """Evaluate a weight expression such as ``L - 3A1 - (l+1)A2``."""
    from .verma import ALPHA1, ALPHA2, RHO

    full = {"A1": ALPHA1, "A2": ALPHA2, "rho": RHO}
    full.update(env)
    p = _Parser(src, full)
    v = p.w_expr()
    p.done()
    if isinstance(v, int):
        raise ParseError("expected a weight, got an integer", 1, 1)
    return v


def eval_condition(src: str, env: dict) -> bool:
    p = _Parser(src, dict(env))
    v = p.condition()
    p.done()
    return v


def free_names(src: str):
    """Names occurring in ``src`` (excluding keywords and the macros frac/x)."""
    reserved = {"frac", "x", "and", "if", "in"}
    return {t.text for t in tokenize(src) if t.kind == "name" and t.text not in reserved}
