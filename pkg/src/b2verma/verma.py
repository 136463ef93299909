"""Baby Verma modules over the small quantum group of type B2.

The module with highest weight lambda is identified with the restricted part
of the negative half: the basis vector attached to a restricted PBW monomial
``m`` is ``m * 1_lambda``.  F-operators are left multiplication.  E-operators
are built inductively from the top weight down using

    E_i F_j w = F_j E_i w + delta_ij [mu_i]_i w        (w of weight mu),

which doubles as a global consistency test of the straightening engine.

Everything that depends on lambda only through ``lambda mod l`` (the E and F
matrices, the contravariant form) lives in a cached :class:`ModuleCore`; a
:class:`ModuleModel` pairs a core with the actual highest weight.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

from . import linalg
from .cyclotomic import RootOfUnityConfig, cartan_binom_eval, qint
from .errors import (
    FormInconsistency,
    InconsistentModule,
    NegativeMultiplicity,
    NotRestrictedError,
    NotWeightVector,
)
from .pbw import AlgElement, NegativePart, monomial_degree

# (alpha1, alpha2)-degree of f1 and f2.
GEN_DEGREE = {1: (1, 0), 2: (0, 1)}
_GEN_MONO = {1: (1, 0, 0, 0), 2: (0, 0, 0, 1)}


@dataclass(frozen=True, order=True)
class Weight:
    """Integral weight given by its values on the simple coroots."""

    l1: int
    l2: int

    def __add__(self, other):
        return Weight(self.l1 + other.l1, self.l2 + other.l2)

    def __sub__(self, other):
        return Weight(self.l1 - other.l1, self.l2 - other.l2)

    def __neg__(self):
        return Weight(-self.l1, -self.l2)

    def __rmul__(self, k: int):
        return Weight(k * self.l1, k * self.l2)

    def __getitem__(self, i):
        # 1-based, matching the index of the simple root.
        if i == 1:
            return self.l1
        if i == 2:
            return self.l2
        raise IndexError(i)

    def __iter__(self):
        return iter((self.l1, self.l2))

    def __str__(self):
        return f"({self.l1},{self.l2})"

    def minus(self, m: int, n: int) -> "Weight":
        """``self - m*alpha1 - n*alpha2``."""
        return Weight(self.l1 - 2 * m + 2 * n, self.l2 + m - 2 * n)

    def reflect(self, i: int) -> "Weight":
        """Dot action of the simple reflection s_i."""
        k = self[i] + 1
        return self - k * SIMPLE_ROOTS[i]

    def dot(self, word) -> "Weight":
        """Dot action of s_{word[0]} s_{word[1]} ... (rightmost acts first)."""
        w = self
        for i in reversed(tuple(word)):
            w = w.reflect(i)
        return w

    def root_coordinates(self, other: "Weight"):
        """(m, n) with ``other = self - m*alpha1 - n*alpha2``, or None."""
        d1, d2 = self.l1 - other.l1, self.l2 - other.l2
        m = d1 + d2
        if (d2 + m) % 2:
            return None
        return (m, (d2 + m) // 2)

    def leq(self, other: "Weight") -> bool:
        """Dominance order: ``other - self`` is a nonnegative root combination."""
        c = other.root_coordinates(self)
        return c is not None and min(c) >= 0

    def mod(self, l: int) -> "Weight":
        return Weight(self.l1 % l, self.l2 % l)

    @classmethod
    def parse(cls, obj) -> "Weight":
        if isinstance(obj, Weight):
            return obj
        a, b = obj
        return cls(int(a), int(b))


ALPHA1 = Weight(2, -1)
ALPHA2 = Weight(-2, 2)
RHO = Weight(1, 1)
SIMPLE_ROOTS = {1: ALPHA1, 2: ALPHA2}


def weyl_orbit(weight: Weight):
    """The eight dot-images of ``weight``, in the order 1, s1, s2, s2s1, s1s2, s1s2s1, s2s1s2, s1s2s1s2."""
    words = [(), (1,), (2,), (2, 1), (1, 2), (1, 2, 1), (2, 1, 2), (1, 2, 1, 2)]
    return [weight.dot(w) for w in words]


def _config(config) -> RootOfUnityConfig:
    if isinstance(config, RootOfUnityConfig):
        return config
    return RootOfUnityConfig(int(config))


class ModuleVector:
    """Vector of a baby Verma module, stored as {degree: coordinate list}."""

    __slots__ = ("parts",)

    def __init__(self, parts):
        self.parts = {d: list(v) for d, v in parts.items() if any(v)}

    def is_zero(self):
        return not self.parts

    def __bool__(self):
        return bool(self.parts)

    def degree(self):
        if len(self.parts) != 1:
            raise NotWeightVector("zero vector" if not self.parts else "vector spans several weights")
        return next(iter(self.parts))

    def coords(self):
        deg = self.degree()
        return deg, self.parts[deg]

    def scale(self, c):
        return ModuleVector({d: [c * x for x in v] for d, v in self.parts.items()})

    def __add__(self, other):
        out = {d: list(v) for d, v in self.parts.items()}
        for d, v in other.parts.items():
            if d in out:
                out[d] = [x + y for x, y in zip(out[d], v)]
            else:
                out[d] = list(v)
        return ModuleVector(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __eq__(self, other):
        if not isinstance(other, ModuleVector):
            return NotImplemented
        return self.parts == other.parts

    def __repr__(self):
        return f"ModuleVector({self.parts!r})"


class Subspace:
    """Weight-graded subspace, one echelon basis per degree."""

    def __init__(self, core: "ModuleCore"):
        self.core = core
        self.spaces: dict[tuple[int, int], linalg.EchelonSpace] = {}

    def _space(self, deg):
        sp = self.spaces.get(deg)
        if sp is None:
            sp = linalg.EchelonSpace(self.core.dim_at(deg), self.core.field)
            self.spaces[deg] = sp
        return sp

    def add(self, deg, vec) -> bool:
        return self._space(deg).add(vec)

    def contains(self, v: ModuleVector) -> bool:
        for deg, vec in v.parts.items():
            sp = self.spaces.get(deg)
            if sp is None or not sp.contains(vec):
                return False
        return True

    def dim(self) -> int:
        return sum(len(sp) for sp in self.spaces.values())

    def dim_at(self, deg) -> int:
        sp = self.spaces.get(deg)
        return len(sp) if sp else 0

    def character(self) -> dict:
        return {d: len(sp) for d, sp in self.spaces.items() if len(sp)}

    def vectors(self):
        for deg in sorted(self.spaces):
            for row in self.spaces[deg].rows:
                yield ModuleVector({deg: row})

    def __len__(self):
        return self.dim()


class ModuleCore:
    """E/F matrices and contravariant form of a baby Verma module, up to the l-shift."""

    def __init__(self, l: int, lam_mod: tuple[int, int]):
        self.config = RootOfUnityConfig(l)
        self.l = l
        self.field = self.config.field
        self.lam = Weight(*lam_mod)
        self.algebra = NegativePart.of(self.config)
        basis: dict = {}
        for mono in self.algebra.restricted_basis():
            basis.setdefault(monomial_degree(mono), []).append(mono)
        self.degrees = sorted(basis, key=lambda d: (d[0] + d[1], d))
        self.basis = {d: sorted(ms) for d, ms in basis.items()}
        self.index = {d: {m: k for k, m in enumerate(ms)} for d, ms in self.basis.items()}
        self.dim = sum(len(ms) for ms in self.basis.values())
        self.lowest = max(self.degrees, key=lambda d: d[0] + d[1])
        self._build_f()
        self._build_e()
        self._gram: dict | None = None

    def dim_at(self, deg) -> int:
        return len(self.basis.get(deg, ()))

    def weight_at(self, deg) -> Weight:
        return self.lam.minus(*deg)

    def shifted(self, deg, j, sign=1):
        dm, dn = GEN_DEGREE[j]
        target = (deg[0] + sign * dm, deg[1] + sign * dn)
        return target if target in self.basis else None

    # -- F: left multiplication -------------------------------------------
    def _build_f(self):
        zero = self.field.zero
        self.F = {1: {}, 2: {}}
        for j in (1, 2):
            g = _GEN_MONO[j]
            for deg in self.degrees:
                target = self.shifted(deg, j)
                if target is None:
                    continue
                tindex = self.index[target]
                mat = [[zero] * len(self.basis[deg]) for _ in range(len(self.basis[target]))]
                for k, mono in enumerate(self.basis[deg]):
                    prod = self.algebra._mono_mul(g, mono, "pbw")
                    for m, c in prod.items():
                        row = tindex.get(m)
                        if row is None:
                            raise InconsistentModule(f"f{j} * {mono} left the restricted part")
                        mat[row][k] = c
                self.F[j][deg] = mat

    # -- E: inductive construction ----------------------------------------
    def _spanning_columns(self, deg):
        """Columns F_j u (u a basis vector one step higher) spanning the space at ``deg``."""
        field = self.field
        cols = []
        for j in (1, 2):
            src = self.shifted(deg, j, -1)
            if src is None:
                continue
            mat = self.F[j][src]
            for k in range(len(self.basis[src])):
                cols.append((j, src, k, [row[k] for row in mat]))
        return cols

    def _e_image_of_column(self, i, j, src, k):
        """E_i (F_j u_k) via the commutation relation; lives at deg - deg(f_i)."""
        field = self.field
        zero = field.zero
        deg = (src[0] + GEN_DEGREE[j][0], src[1] + GEN_DEGREE[j][1])
        target = self.shifted(deg, i, -1)
        if target is None:
            return None, None
        out = [zero] * len(self.basis[target])
        below = self.shifted(src, i, -1)
        if below is not None:
            e_col = [row[k] for row in self.E[i][src]]
            fmat = self.F[j][below]
            for r, frow in enumerate(fmat):
                acc = zero
                for x, y in zip(frow, e_col):
                    if x and y:
                        acc = acc + x * y
                out[r] = acc
        if i == j:
            mu = self.weight_at(src)
            q = qint(mu[i], i, self.field)
            if q:
                out[k] = out[k] + q
        return target, out

    def _build_e(self):
        field = self.field
        zero = field.zero
        self.E = {1: {}, 2: {}}
        self._sb_inv = {}
        self._span = {}
        for deg in self.degrees:
            d = len(self.basis[deg])
            if deg == (0, 0):
                continue
            cols = self._spanning_columns(deg)
            S = [[c[3][r] for c in cols] for r in range(d)]
            _, pivots = linalg.rref(S)
            if len(pivots) != d:
                raise InconsistentModule(f"F-images do not span the weight space at degree {deg}")
            SB = [[S[r][p] for p in pivots] for r in range(d)]
            sb_inv = linalg.inverse(SB, field)
            self._sb_inv[deg] = sb_inv
            self._span[deg] = (cols, pivots)
            for i in (1, 2):
                target = self.shifted(deg, i, -1)
                if target is None:
                    continue
                T = []
                for (j, src, k, _) in cols:
                    T.append(self._e_image_of_column(i, j, src, k)[1])
                T = linalg.transpose(T)  # rows: target basis, cols: spanning set
                TB = [[row[p] for p in pivots] for row in T]
                M = linalg.matmul(TB, sb_inv, field)
                if linalg.matmul(M, S, field) != T:
                    raise InconsistentModule(
                        f"E{i} is not well defined at degree {deg}: the commutation relations disagree"
                    )
                self.E[i][deg] = M

    # -- contravariant form -----------------------------------------------
    def gram(self, deg):
        if self._gram is None:
            self._build_gram()
        return self._gram[deg]

    def _build_gram(self):
        field = self.field
        gram = {(0, 0): [[field.one]]}
        for deg in self.degrees:
            if deg == (0, 0):
                continue
            cols, pivots = self._span[deg]
            d = len(self.basis[deg])
            # rows of R: <F_j u, w> = <u, E_j w> = (G_src E_j)[u, w]
            prod_cache = {}
            R = []
            for (j, src, k, _) in cols:
                if (j, src) not in prod_cache:
                    prod_cache[(j, src)] = linalg.matmul(gram[src], self.E[j][deg], field)
                R.append(prod_cache[(j, src)][k])
            RB = [R[p] for p in pivots]
            G = linalg.matmul(linalg.transpose(self._sb_inv[deg]), RB, field)
            S_T = [c[3] for c in cols]
            if linalg.matmul(S_T, G, field) != R:
                raise FormInconsistency(f"contravariant form is not well defined at degree {deg}")
            if G != linalg.transpose(G):
                raise FormInconsistency(f"Gram matrix at degree {deg} is not symmetric")
            gram[deg] = G
        self._gram = gram

    @lru_cache(maxsize=None)
    def simple_character(self) -> dict:
        """Degree -> dimension of the simple quotient (ranks of the form)."""
        out = {}
        for deg in self.degrees:
            r = linalg.rank(self.gram(deg))
            if r:
                out[deg] = r
        return out


@lru_cache(maxsize=None)
def module_core(l: int, lam_mod: tuple[int, int]) -> ModuleCore:
    return ModuleCore(l, (lam_mod[0] % l, lam_mod[1] % l))


class ModuleModel:
    """The baby Verma module with a given highest weight (immutable)."""

    def __init__(self, highest_weight: Weight, config):
        self.config = _config(config)
        self.l = self.config.l
        self.highest_weight = Weight.parse(highest_weight)
        self.core = module_core(self.l, tuple(self.highest_weight.mod(self.l)))
        self.field = self.core.field
        self.algebra = self.core.algebra

    # -- bookkeeping --------------------------------------------------------
    @property
    def dim(self) -> int:
        return self.core.dim

    @property
    def degrees(self):
        return self.core.degrees

    def basis(self, deg):
        return self.core.basis.get(deg, [])

    def weight_of(self, deg) -> Weight:
        return self.highest_weight.minus(*deg)

    def degree_of(self, weight: Weight):
        c = self.highest_weight.root_coordinates(Weight.parse(weight))
        if c is None or c not in self.core.basis:
            return None
        return c

    def weight_multiplicities(self) -> dict:
        return {self.weight_of(d): len(ms) for d, ms in self.core.basis.items()}

    def weight_of_vector(self, v: ModuleVector) -> Weight:
        return self.weight_of(v.degree())

    def highest_vector(self) -> ModuleVector:
        return ModuleVector({(0, 0): [self.field.one]})

    def zero_vector(self) -> ModuleVector:
        return ModuleVector({})

    # -- operators ------------------------------------------------------------
    def F(self, j: int, v: ModuleVector) -> ModuleVector:
        out = {}
        for deg, vec in v.parts.items():
            target = self.core.shifted(deg, j)
            if target is None:
                continue
            out[target] = linalg.matvec(self.core.F[j][deg], vec, self.field)
        return ModuleVector(out)

    def E(self, i: int, v: ModuleVector) -> ModuleVector:
        out = {}
        for deg, vec in v.parts.items():
            target = self.core.shifted(deg, i, -1)
            if target is None:
                continue
            out[target] = linalg.matvec(self.core.E[i][deg], vec, self.field)
        return ModuleVector(out)

    def K(self, i: int, v: ModuleVector, power: int = 1) -> ModuleVector:
        out = {}
        for deg, vec in v.parts.items():
            c = self.field.xi_pow(power * i * self.weight_of(deg)[i])
            out[deg] = [c * x for x in vec]
        return ModuleVector(out)

    def cartan(self, i: int, c: int, a: int, v: ModuleVector) -> ModuleVector:
        """Action of the Cartan divided power [k_i; c over a]."""
        out = {}
        for deg, vec in v.parts.items():
            s = cartan_binom_eval(tuple(self.weight_of(deg)), c, a, i, self.config)
            out[deg] = [s * x for x in vec]
        return ModuleVector(out)

    def act(self, word, v: ModuleVector) -> ModuleVector:
        """Apply a word of operators given as pairs ('E'|'F', index), rightmost first."""
        for kind, i in reversed(tuple(word)):
            v = self.E(i, v) if kind == "E" else self.F(i, v)
        return v

    def apply(self, x: AlgElement) -> ModuleVector:
        """Coordinates of ``x * 1_lambda``."""
        if not x.is_restricted():
            raise NotRestrictedError(f"element is not in the restricted part: {x}")
        if x.order != "pbw":
            x = self.algebra.unprime(x)
        out: dict = {}
        for mono, c in x.terms.items():
            deg = monomial_degree(mono)
            if deg not in out:
                out[deg] = [self.field.zero] * len(self.core.basis[deg])
            out[deg][self.core.index[deg][mono]] = c
        return ModuleVector(out)

    def element_of(self, v: ModuleVector) -> AlgElement:
        terms = {}
        for deg, vec in v.parts.items():
            for mono, c in zip(self.core.basis[deg], vec):
                if c:
                    terms[mono] = c
        return AlgElement(self.algebra, terms)

    # -- decision procedures ------------------------------------------------
    def _weight_vector(self, v):
        if v.is_zero():
            raise NotWeightVector("zero vector")
        return v.degree()

    def is_maximal(self, v: ModuleVector) -> bool:
        self._weight_vector(v)
        return self.E(1, v).is_zero() and self.E(2, v).is_zero()

    def submodule(self, gens, bound=None) -> Subspace:
        """Submodule generated by ``gens``.

        With ``bound`` (a degree) only the part at degrees componentwise <= bound
        is computed, which is all that a membership test at that degree needs.
        """
        sub = Subspace(self.core)
        gens = [g for g in gens if not g.is_zero()]

        def within(deg):
            return bound is None or (deg[0] <= bound[0] and deg[1] <= bound[1])

        # U+ closure first, then U- applied to it: the algebra factors as U- U0 U+.
        queue = []
        for g in gens:
            for deg, vec in g.parts.items():
                if within(deg) and sub.add(deg, vec):
                    queue.append((deg, vec))
        top = []
        while queue:
            deg, vec = queue.pop()
            top.append((deg, vec))
            for i in (1, 2):
                target = self.core.shifted(deg, i, -1)
                if target is None:
                    continue
                w = linalg.matvec(self.core.E[i][deg], vec, self.field)
                if any(w) and sub.add(target, w):
                    queue.append((target, w))
        queue = top
        while queue:
            deg, vec = queue.pop()
            for j in (1, 2):
                target = self.core.shifted(deg, j)
                if target is None or not within(target):
                    continue
                w = linalg.matvec(self.core.F[j][deg], vec, self.field)
                if any(w) and sub.add(target, w):
                    queue.append((target, w))
        return sub

    def is_primitive(self, v: ModuleVector) -> bool:
        deg = self._weight_vector(v)
        q = self.submodule([self.E(1, v), self.E(2, v)], bound=deg)
        return not q.contains(v)

    def maximal_vectors(self, weight) -> Subspace:
        sub = Subspace(self.core)
        deg = self.degree_of(weight)
        if deg is None:
            return sub
        n = self.core.dim_at(deg)
        stacked = []
        for i in (1, 2):
            if deg in self.core.E[i]:
                stacked.extend(self.core.E[i][deg])
        if not stacked:
            basis = [[self.field.one if r == c else self.field.zero for r in range(n)] for c in range(n)]
        else:
            basis = linalg.nullspace(stacked, n, self.field)
        for vec in basis:
            sub.add(deg, vec)
        return sub

    def lowest_vectors(self) -> Subspace:
        """Common kernel of F1 and F2 on the whole module."""
        sub = Subspace(self.core)
        for deg in self.core.degrees:
            n = self.core.dim_at(deg)
            stacked = []
            for j in (1, 2):
                if deg in self.core.F[j]:
                    stacked.extend(self.core.F[j][deg])
            if stacked:
                vecs = linalg.nullspace(stacked, n, self.field)
            else:
                vecs = [[self.field.one if r == c else self.field.zero for r in range(n)] for c in range(n)]
            for vec in vecs:
                sub.add(deg, vec)
        return sub

    def contravariant_gram(self, weight):
        deg = self.degree_of(weight)
        if deg is None:
            return []
        return self.core.gram(deg)


def build_module(highest_weight, config, check_serre: bool = False) -> ModuleModel:
    """Baby Verma module of the given highest weight.

    The commutation relations between E and F are enforced during the build.
    ``check_serre`` additionally verifies the q-Serre relations as operator identities.
    """
    m = ModuleModel(Weight.parse(highest_weight), config)
    if check_serre:
        bad = serre_failures(m)
        if bad:
            raise InconsistentModule(f"q-Serre relation fails: {bad[0]}")
    return m


def _serre_words(kind):
    # f1 f2^2 - [2]_2 f2 f1 f2 + f2^2 f1 and the cubic relation in f1; coefficients as xi-exponent lists.
    a = (kind, 1)
    b = (kind, 2)
    return [
        ("quadratic", [([a, b, b], {0: 1}), ([b, a, b], {2: -1, -2: -1}), ([b, b, a], {0: 1})]),
        (
            "cubic",
            [
                ([a, a, a, b], {0: 1}),
                ([a, a, b, a], {2: -1, 0: -1, -2: -1}),
                ([a, b, a, a], {2: 1, 0: 1, -2: 1}),
                ([b, a, a, a], {0: -1}),
            ],
        ),
    ]


def serre_failures(m: ModuleModel):
    """Names of q-Serre relations (for E and F) that fail on some basis vector."""
    field = m.field
    bad = []
    for kind in ("E", "F"):
        for name, terms in _serre_words(kind):
            coeffs = [field.from_exponents(c) for _, c in terms]
            for deg in m.degrees:
                n = m.core.dim_at(deg)
                for k in range(n):
                    v = ModuleVector({deg: [field.one if r == k else field.zero for r in range(n)]})
                    acc = ModuleVector({})
                    for (word, _), c in zip(terms, coeffs):
                        acc = acc + m.act(word, v).scale(c)
                    if not acc.is_zero():
                        bad.append(f"{kind}-{name} at degree {deg}")
                        break
                else:
                    continue
                break
    return bad


def simple_character(weight, config) -> dict:
    """Weight -> dimension for the simple module with the given highest weight."""
    cfg = _config(config)
    weight = Weight.parse(weight)
    core = module_core(cfg.l, tuple(weight.mod(cfg.l)))
    return {weight.minus(*d): r for d, r in core.simple_character().items()}


def simple_dim(weight, config) -> int:
    return sum(simple_character(weight, config).values())


def composition_multiset(highest_weight, config) -> Counter:
    """Composition factors of the baby Verma module, by peeling simple characters."""
    cfg = _config(config)
    lam = Weight.parse(highest_weight)
    m = ModuleModel(lam, cfg)
    remaining = {d: len(ms) for d, ms in m.core.basis.items()}
    out: Counter = Counter()
    for deg in m.core.degrees:
        c = remaining.get(deg, 0)
        if c < 0:
            raise NegativeMultiplicity(f"negative remainder {c} at degree {deg}")
        if not c:
            continue
        mu = m.weight_of(deg)
        out[mu] += c
        for d2, r in module_core(cfg.l, tuple(mu.mod(cfg.l))).simple_character().items():
            tgt = (deg[0] + d2[0], deg[1] + d2[1])
            if tgt not in remaining:
                raise NegativeMultiplicity(f"simple character leaves the module at degree {tgt}")
            remaining[tgt] -= c * r
    if any(remaining.values()):
        raise NegativeMultiplicity("character peeling left a nonzero remainder")
    return out
