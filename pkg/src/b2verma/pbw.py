"""Normal-form arithmetic in the negative part of the type-B2 quantum group at xi.

A PBW monomial ``(a, b, c, d)`` stands for ``f1^(a) f112^(b) f12^(c) f2^(d)``.
Products of divided powers are straightened with Lusztig's commutation
formulas.  The opposite order ``f2 f12' f112' f1`` has its own rule table and
is used only to cross-check the main engine.
"""

from __future__ import annotations

from functools import lru_cache
from fractions import Fraction

from . import linalg
from .cyclotomic import CycScalar, RootOfUnityConfig, qbinom, qfact
from .errors import (
    DegreeError,
    DivisionError,
    EngineError,
    InexpandableDividedPower,
    NoRuleError,
    UnresolvedDivision,
)

# Letter ids.  Primed letters are distinct symbols of the opposite PBW order.
F1, F112, F12, F2, F12P, F112P = range(6)

LETTER_NAMES = ("f1", "f112", "f12", "f2", "f12'", "f112'")
LETTER_IDS = {name: k for k, name in enumerate(LETTER_NAMES)}

# 1 for short root vectors, 2 for long ones; selects v_i in merges.
LETTER_INDEX = (1, 2, 1, 2, 1, 2)

# Root content in (alpha1, alpha2) coordinates.
LETTER_DEGREE = ((1, 0), (2, 1), (1, 1), (0, 1), (1, 1), (2, 1))

PBW = "pbw"
PRIMED = "primed"

# Position of each letter inside a normal monomial, per order.
_SLOTS = {
    PBW: {F1: 0, F112: 1, F12: 2, F2: 3},
    PRIMED: {F2: 0, F12P: 1, F112P: 2, F1: 3},
}
_SLOT_LETTERS = {PBW: (F1, F112, F12, F2), PRIMED: (F2, F12P, F112P, F1)}


def letter_id(letter) -> int:
    if isinstance(letter, int):
        return letter
    try:
        return LETTER_IDS[letter]
    except KeyError:
        raise ValueError(f"unknown letter {letter!r}") from None


class AlgElement:
    """Finite Q(xi)-combination of normal monomials (immutable by convention)."""

    __slots__ = ("algebra", "terms", "order")

    def __init__(self, algebra: "NegativePart", terms=None, order: str = PBW):
        self.algebra = algebra
        self.order = order
        self.terms: dict[tuple[int, int, int, int], CycScalar] = {
            m: c for m, c in (terms or {}).items() if c
        }

    # -- construction helpers -------------------------------------------------
    def _new(self, terms):
        return AlgElement(self.algebra, terms, self.order)

    def _check(self, other):
        if not isinstance(other, AlgElement):
            return NotImplemented
        if other.algebra is not self.algebra or other.order != self.order:
            raise ValueError("elements live in different algebras or PBW orders")
        return other

    # -- arithmetic -------------------------------------------------------------
    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return self._new(out)

    def __neg__(self):
        return self._new({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def scale(self, c) -> "AlgElement":
        c = self.algebra.field(c)
        if not c:
            return self._new({})
        return self._new({m: c * x for m, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, AlgElement):
            return self.algebra.multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, AlgElement):
            return NotImplemented
        return self.order == other.order and self.terms == other.terms

    def __hash__(self):
        return hash((self.order, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- queries ----------------------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(), reverse=True)

    def degree(self) -> tuple[int, int]:
        if not self.terms:
            raise DegreeError("zero element has no degree")
        degs = {monomial_degree(m, self.order) for m in self.terms}
        if len(degs) != 1:
            raise DegreeError(f"inhomogeneous element (degrees {sorted(degs)})")
        return degs.pop()

    def is_homogeneous(self) -> bool:
        return len({monomial_degree(m, self.order) for m in self.terms}) <= 1

    def is_restricted(self) -> bool:
        top = self.algebra.l - 1
        return all(max(m) <= top for m in self.terms)

    def coefficient(self, mono) -> CycScalar:
        return self.terms.get(tuple(mono), self.algebra.field.zero)

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"AlgElement({self})"


def monomial_degree(mono, order: str = PBW) -> tuple[int, int]:
    m = n = 0
    for letter, e in zip(_SLOT_LETTERS[order], mono):
        dm, dn = LETTER_DEGREE[letter]
        m += dm * e
        n += dn * e
    return (m, n)


def format_monomial(mono, order: str = PBW) -> str:
    parts = []
    for letter, e in zip(_SLOT_LETTERS[order], mono):
        if e == 1:
            parts.append(LETTER_NAMES[letter])
        elif e:
            parts.append(f"{LETTER_NAMES[letter]}^({e})")
    return " ".join(parts)


def format_element(x: AlgElement) -> str:
    if not x.terms:
        return "0"
    out = []
    for mono, c in x.sorted_terms():
        word = format_monomial(mono, x.order)
        neg = False
        if c.is_atomic():
            text = str(c)
            if text.startswith("-"):
                neg, text = True, text[1:]
            if not word:
                body = text
            elif text == "1":
                body = word
            else:
                body = f"{text}·{word}"
        else:
            text = f"({c})"
            body = f"{text}·{word}" if word else text
        out.append(("-" if neg else "+", body))
    first_sign, first = out[0]
    s = ("-" if first_sign == "-" else "") + first
    for sign, body in out[1:]:
        s += f" {sign} {body}"
    return s


class NegativePart:
    """The algebra U_xi^- with memoized straightening.

    One instance per root of unity; obtain it with :meth:`NegativePart.of`.
    """

    def __init__(self, config: RootOfUnityConfig):
        self.config = config
        self.l = config.l
        self.field = config.field
        self._rmul_cache: dict = {}
        self._pair_cache: dict = {}
        self._monomul_cache: dict = {}
        self._prod_g = {}
        self._prod_h = {}

    @staticmethod
    @lru_cache(maxsize=None)
    def _of(l: int) -> "NegativePart":
        return NegativePart(RootOfUnityConfig(l))

    @classmethod
    def of(cls, config) -> "NegativePart":
        l = config.l if isinstance(config, RootOfUnityConfig) else int(config)
        return cls._of(l)

    # -- elements -----------------------------------------------------------
    def zero(self, order=PBW) -> AlgElement:
        return AlgElement(self, {}, order)

    def one(self, order=PBW) -> AlgElement:
        return AlgElement(self, {(0, 0, 0, 0): self.field.one}, order)

    def monomial(self, exps, coeff=None, order=PBW) -> AlgElement:
        exps = tuple(exps)
        if len(exps) != 4 or min(exps) < 0:
            raise ValueError(f"bad exponent tuple {exps}")
        c = self.field.one if coeff is None else self.field(coeff)
        return AlgElement(self, {exps: c}, order)

    def gen(self, letter, n: int = 1, order=PBW) -> AlgElement:
        """A single divided power ``letter^(n)``, expanding letters foreign to ``order``."""
        k = letter_id(letter)
        if n < 0:
            raise ValueError("negative divided power")
        slots = _SLOTS[order]
        if k in slots:
            exps = [0, 0, 0, 0]
            exps[slots[k]] = n
            return AlgElement(self, {tuple(exps): self.field.one}, order)
        return self._expand_root_power(k, n, order)

    def restricted_basis(self, degree=None):
        """Restricted monomials, optionally only those of a given root content."""
        l = self.l
        out = []
        for a in range(l):
            for b in range(l):
                for c in range(l):
                    if degree is not None:
                        m = a + 2 * b + c
                        if m != degree[0]:
                            continue
                        d = degree[1] - b - c
                        if 0 <= d < l:
                            out.append((a, b, c, d))
                        continue
                    for d in range(l):
                        out.append((a, b, c, d))
        return out

    # -- coefficient helpers --------------------------------------------------
    def xi(self, k: int) -> CycScalar:
        return self.field.xi_pow(k)

    def _g_prod(self, s):
        # prod_{h=1}^{s} (xi^(-4h+2) - 1)
        if s not in self._prod_g:
            acc = self.field.one
            for h in range(1, s + 1):
                acc = acc * (self.xi(-4 * h + 2) - 1)
            self._prod_g[s] = acc
        return self._prod_g[s]

    def _h_prod(self, s):
        # prod_{h=1}^{s} (xi^(-2h) + 1)
        if s not in self._prod_h:
            acc = self.field.one
            for h in range(1, s + 1):
                acc = acc * (self.xi(-2 * h) + 1)
            self._prod_h[s] = acc
        return self._prod_h[s]

    # -- pair rules -------------------------------------------------------------
    def merge_same(self, letter, a: int, b: int, order=PBW) -> AlgElement:
        """``letter^(a) letter^(b)`` as a multiple of ``letter^(a+b)``."""
        k = letter_id(letter)
        coeff = qbinom(a + b, a, LETTER_INDEX[k], self.field)
        exps = [0, 0, 0, 0]
        exps[_SLOTS[order][k]] = a + b
        return AlgElement(self, {tuple(exps): coeff}, order)

    def _pair_words(self, x, i, y, j, order):
        """Expansion of x^(i) y^(j) as {normal word: coeff}; words are tuples of (letter, exp)."""
        key = (order, x, i, y, j)
        hit = self._pair_cache.get(key)
        if hit is not None:
            return hit
        terms: dict = {}

        def put(word, c):
            if not c:
                return
            w = tuple((let, e) for let, e in word if e)
            terms[w] = terms[w] + c if w in terms else c

        xi = self.xi
        if x == y:
            put(((x, i + j),), qbinom(i + j, i, LETTER_INDEX[x], self.field))
        elif order == PBW:
            self._pbw_rule(x, i, y, j, put, xi)
        else:
            self._primed_rule(x, i, y, j, put, xi)
        terms = {w: c for w, c in terms.items() if c}
        self._pair_cache[key] = terms
        return terms

    def _pbw_rule(self, x, i, y, j, put, xi):
        if (x, y) == (F112, F1):
            # (f): f1^(j) f112^(i) = xi^(2ij) f112^(i) f1^(j)
            put(((F1, j), (F112, i)), xi(-2 * i * j))
        elif (x, y) == (F12, F112):
            # (e): f112^(j) f12^(i) = xi^(2ij) f12^(i) f112^(j)
            put(((F112, j), (F12, i)), xi(-2 * i * j))
        elif (x, y) == (F2, F12):
            # (d): f12^(j) f2^(i) = xi^(2ij) f2^(i) f12^(j)
            put(((F12, j), (F2, i)), xi(-2 * i * j))
        elif (x, y) == (F2, F112):
            # (g): r + s = j, s + t = i
            for s in range(min(i, j) + 1):
                r, t = j - s, i - s
                c = xi(-2 * r * s - 2 * s * t) * self._g_prod(s)
                put(((F112, r), (F12, 2 * s), (F2, t)), c)
        elif (x, y) == (F12, F1):
            # (h): r + s = j, s + t = i
            for s in range(min(i, j) + 1):
                r, t = j - s, i - s
                c = xi(-r * s - s * t + s) * self._h_prod(s)
                put(((F1, r), (F112, s), (F12, t)), c)
        elif (x, y) == (F2, F1):
            # (i): s + t + u = i, r + 2s + t = j
            for s in range(min(i, j // 2) + 1):
                for t in range(min(i - s, j - 2 * s) + 1):
                    u = i - s - t
                    r = j - 2 * s - t
                    put(((F1, r), (F112, s), (F12, t), (F2, u)), xi(2 * r * u + 2 * s * u + r * t))
        else:
            raise NoRuleError(f"no rule for {LETTER_NAMES[x]}^({i}) {LETTER_NAMES[y]}^({j})")

    def _primed_rule(self, x, i, y, j, put, xi):
        if (x, y) == (F1, F112P):
            put(((F112P, j), (F1, i)), xi(-2 * i * j))
        elif (x, y) == (F112P, F12P):
            put(((F12P, j), (F112P, i)), xi(-2 * i * j))
        elif (x, y) == (F12P, F2):
            put(((F2, j), (F12P, i)), xi(-2 * i * j))
        elif (x, y) == (F112P, F2):
            # (j): r + s = j, s + t = i
            for s in range(min(i, j) + 1):
                r, t = j - s, i - s
                c = xi(-2 * r * s - 2 * s * t) * self._g_prod(s)
                put(((F2, r), (F12P, 2 * s), (F112P, t)), c)
        elif (x, y) == (F1, F12P):
            # (k): r + s = j, s + t = i
            for s in range(min(i, j) + 1):
                r, t = j - s, i - s
                c = xi(-r * s - s * t + s) * self._h_prod(s)
                put(((F12P, r), (F112P, s), (F1, t)), c)
        elif (x, y) == (F1, F2):
            # (l): r + s + t = j, s + 2t + u = i
            for t in range(min(j, i // 2) + 1):
                for s in range(min(j - t, i - 2 * t) + 1):
                    r = j - s - t
                    u = i - s - 2 * t
                    put(((F2, r), (F12P, s), (F112P, t), (F1, u)), xi(2 * r * u + 2 * r * t + u * s))
        else:
            raise NoRuleError(f"no primed rule for {LETTER_NAMES[x]}^({i}) {LETTER_NAMES[y]}^({j})")

    def straighten_pair(self, left, i: int, right, j: int, order=PBW) -> AlgElement:
        """Normal form of ``left^(i) right^(j)``; the pair must be out of order (or equal)."""
        x, y = letter_id(left), letter_id(right)
        slots = _SLOTS[order]
        if x not in slots or y not in slots:
            raise NoRuleError("letter foreign to this PBW order")
        if slots[x] < slots[y]:
            raise NoRuleError(f"{LETTER_NAMES[x]} {LETTER_NAMES[y]} is already in order")
        return self._words_to_element(self._straighten_word(((x, i), (y, j)), order), order)

    # -- straightening ----------------------------------------------------------
    def _straighten_word(self, word, order):
        """Normal form of a word of (letter, exp) pairs, all letters native to ``order``."""
        slots = _SLOTS[order]
        one = self.field.one
        pending = {tuple((x, e) for x, e in word if e): one}
        result: dict = {}
        steps = 0
        while pending:
            w, c = pending.popitem()
            steps += 1
            if steps > 10_000_000:
                raise EngineError("straightening did not terminate")
            for p in range(len(w) - 1):
                if slots[w[p][0]] >= slots[w[p + 1][0]]:
                    break
            else:
                exps = [0, 0, 0, 0]
                for x, e in w:
                    exps[slots[x]] = e
                m = tuple(exps)
                result[m] = result[m] + c if m in result else c
                continue
            (x, i), (y, j) = w[p], w[p + 1]
            for sub, cc in self._pair_words(x, i, y, j, order).items():
                nw = w[:p] + sub + w[p + 2 :]
                val = c * cc
                if nw in pending:
                    val = pending[nw] + val
                    if not val:
                        del pending[nw]
                        continue
                pending[nw] = val
        return {m: c for m, c in result.items() if c}

    def _words_to_element(self, terms, order):
        return AlgElement(self, terms, order)

    def _rmul(self, mono, letter, n, order):
        """Normal form of (normal monomial) * letter^(n)."""
        key = (order, mono, letter, n)
        hit = self._rmul_cache.get(key)
        if hit is None:
            word = tuple((x, e) for x, e in zip(_SLOT_LETTERS[order], mono) if e) + ((letter, n),)
            hit = self._straighten_word(word, order)
            self._rmul_cache[key] = hit
        return hit

    def _mono_mul(self, m1, m2, order):
        key = (order, m1, m2)
        hit = self._monomul_cache.get(key)
        if hit is not None:
            return hit
        cur = {m1: self.field.one}
        for letter, e in zip(_SLOT_LETTERS[order], m2):
            if not e:
                continue
            nxt: dict = {}
            for m, c in cur.items():
                for m3, c3 in self._rmul(m, letter, e, order).items():
                    v = c * c3
                    nxt[m3] = nxt[m3] + v if m3 in nxt else v
            cur = {m: c for m, c in nxt.items() if c}
        self._monomul_cache[key] = cur
        return cur

    def multiply(self, x: AlgElement, y: AlgElement) -> AlgElement:
        if x.order != y.order:
            raise ValueError("cannot multiply elements of different PBW orders")
        order = x.order
        out: dict = {}
        for m1, c1 in x.terms.items():
            for m2, c2 in y.terms.items():
                c12 = c1 * c2
                for m, c in self._mono_mul(m1, m2, order).items():
                    v = c12 * c
                    out[m] = out[m] + v if m in out else v
        return AlgElement(self, out, order)

    def word(self, letters, order=PBW) -> AlgElement:
        """Normal form of a product of divided powers given as (letter, exp) pairs."""
        acc = self.one(order)
        for letter, e in letters:
            acc = self.multiply(acc, self.gen(letter, e, order))
        return acc

    # -- root vectors that are foreign to an order ------------------------------
    def _expand_root_power(self, k, n, order):
        cache = self._rmul_cache
        key = ("expand", order, k, n)
        if key in cache:
            return AlgElement(self, cache[key], order)
        if n == 0:
            return self.one(order)
        if n >= self.l:
            raise InexpandableDividedPower(
                f"{LETTER_NAMES[k]}^({n}) has exponent >= l and cannot be written as a word"
            )
        f1, f2 = self.gen(F1, 1, order), self.gen(F2, 1, order)
        v2 = self.xi(2)
        if k in (F12, F12P):
            base = (f2 * f1 - (f1 * f2).scale(v2)) if k == F12 else (f1 * f2 - (f2 * f1).scale(v2))
            denom = qfact(n, 1, self.field)
        else:
            root = self.gen(F12 if k == F112 else F12P, 1, order)
            base = (root * f1 - f1 * root) if k == F112 else (f1 * root - root * f1)
            denom = ((self.xi(1) + self.xi(-1)) ** n) * qfact(n, 2, self.field)
        power = self.one(order)
        for _ in range(n):
            power = power * base
        out = power.scale(denom.inverse())
        cache[key] = out.terms
        return out

    # -- expression evaluation ------------------------------------------------
    def reduce(self, expr, order=PBW, divide=False) -> AlgElement:
        """Normal form of an expression tree (or a word of (letter, exp) pairs).

        ``frac`` nodes are an error unless ``divide`` is set, in which case they
        are resolved with :meth:`divide`.
        """
        from .expr import XAB, Comm, Const, Frac, Gen, Neg, Prod, Sum

        if isinstance(expr, (list, tuple)):
            return self.word(expr, order)
        if isinstance(expr, AlgElement):
            return expr
        if isinstance(expr, Gen):
            return self.gen(expr.letter, expr.exp, order)
        if isinstance(expr, Const):
            return self.one(order).scale(self.field(Fraction(expr.value)))
        if isinstance(expr, Prod):
            acc = self.one(order)
            for f in expr.factors:
                acc = self.multiply(acc, self.reduce(f, order, divide))
            return acc
        if isinstance(expr, Sum):
            acc = self.zero(order)
            for t in expr.terms:
                acc = acc + self.reduce(t, order, divide)
            return acc
        if isinstance(expr, Neg):
            return -self.reduce(expr.arg, order, divide)
        if isinstance(expr, Comm):
            x = self.reduce(expr.left, order, divide)
            y = self.reduce(expr.right, order, divide)
            return x * y - y * x
        if isinstance(expr, XAB):
            return self.x_ab(expr.a, expr.b) if order == PBW else self._x_ab_primed(expr.a, expr.b)
        if isinstance(expr, Frac):
            if not divide:
                raise UnresolvedDivision("frac node must be resolved by divide() first")
            return self.divide(self.reduce(expr.num, order, divide), self.reduce(expr.den, order, divide))
        raise TypeError(f"cannot reduce {expr!r}")

    def primed_reduce(self, expr) -> AlgElement:
        """Normal form in the order f2 < f12' < f112' < f1."""
        return self.reduce(expr, order=PRIMED)

    def unprime(self, x: AlgElement) -> AlgElement:
        """Rewrite a primed-order element in the main PBW order."""
        if x.order == PBW:
            return x
        acc = self.zero()
        for mono, c in x.terms.items():
            letters = [(k, e) for k, e in zip(_SLOT_LETTERS[PRIMED], mono) if e]
            acc = acc + self.word(letters).scale(c)
        return acc

    # -- named elements -------------------------------------------------------
    def x_ab(self, a: int, b: int) -> AlgElement:
        first = self.word([(F1, a), (F2, a + b), (F1, a + 2 * b), (F2, b)])
        second = self.word([(F2, b), (F1, a + 2 * b), (F2, a + b), (F1, a)])
        if first != second:
            raise EngineError(f"x_{{{a},{b}}}: the two defining words disagree")
        return first

    def _x_ab_primed(self, a, b):
        return self.word([(F1, a), (F2, a + b), (F1, a + 2 * b), (F2, b)], order=PRIMED)

    def degree(self, x: AlgElement) -> tuple[int, int]:
        return x.degree()

    def is_restricted(self, x: AlgElement) -> bool:
        return x.is_restricted()

    # -- division ---------------------------------------------------------------
    def divide(self, x: AlgElement, y: AlgElement) -> AlgElement:
        """A homogeneous restricted z with z * y = x (canonical echelon choice)."""
        if y.is_zero():
            raise DivisionError("division by zero")
        dy = y.degree()
        if x.is_zero():
            return self.zero()
        dx = x.degree()
        target = (dx[0] - dy[0], dx[1] - dy[1])
        if min(target) < 0:
            raise DivisionError(f"degree mismatch: {dx} - {dy} = {target}")
        basis = self.restricted_basis(target)
        cols = [self.monomial(m) * y for m in basis]
        rows_index = sorted({m for col in cols for m in col.terms} | set(x.terms))
        zero = self.field.zero
        matrix = [[col.terms.get(r, zero) for col in cols] for r in rows_index]
        rhs = [x.terms.get(r, zero) for r in rows_index]
        z = linalg.solve(matrix, rhs, self.field) if basis else None
        if z is None:
            raise DivisionError("no solution: the system z*y = x is inconsistent")
        out = AlgElement(self, {m: c for m, c in zip(basis, z) if c})
        if out * y != x:
            raise EngineError("division check z*y == x failed")
        return out

    def division_kernel_dim(self, y: AlgElement, target) -> int:
        """Dimension of {z restricted of degree target : z*y = 0}."""
        basis = self.restricted_basis(target)
        if not basis:
            return 0
        cols = [self.monomial(m) * y for m in basis]
        rows_index = sorted({m for col in cols for m in col.terms})
        zero = self.field.zero
        matrix = [[col.terms.get(r, zero) for col in cols] for r in rows_index]
        return len(basis) - (linalg.rank(matrix) if matrix else 0)
