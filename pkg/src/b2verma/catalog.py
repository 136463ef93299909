"""Machine-checkable claims about baby Verma modules and their certificates.

Claims are data: one record per line in ``data/claims.txt`` with the fields
``id|kind|weight|element|payload``.  :func:`verify` turns a claim, a root of
unity and family parameters ``(a, b)`` into a :class:`Certificate`.
"""

from __future__ import annotations

import fnmatch
import re
import time
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from . import __version__
from .cyclotomic import RootOfUnityConfig
from .errors import (
    B2Error,
    DivisionError,
    EngineError,
    InexpandableDividedPower,
    NotRestrictedError,
    ParseError,
)
from .expr import Frac, eval_condition, eval_int, eval_weight, parse, parse_equation
from .pbw import NegativePart
from .verma import ModuleModel, Weight, composition_multiset, simple_dim

KINDS = (
    "maximal",
    "primitive-not-maximal",
    "no-maximal-at-weight",
    "composition-multiset",
    "restrictedness",
    "vanishing",
    "identity",
    "irreducible-socle",
    "weyl-dim",
)

# Failures of the claim itself, as opposed to engine trouble.
_CLAIM_FAILURES = (DivisionError, NotRestrictedError, InexpandableDividedPower)


@dataclass(frozen=True)
class Claim:
    id: str
    kind: str
    weight: str
    element: str
    payload: str
    line: int = 0

    @property
    def group(self) -> str:
        return self.id.rsplit(".", 1)[0]

    def options(self) -> dict:
        return parse_payload(self.payload)


@dataclass
class Certificate:
    id: str
    status: str
    weight: str | None
    witness: dict
    millis: float
    l: int = 0
    params: tuple = (0, 0)
    engine_version: str = __version__

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "status": self.status,
            "weight": self.weight,
            "witness": self.witness,
            "millis": round(self.millis, 3),
        }


# -- catalog file -------------------------------------------------------------
def parse_catalog(text: str) -> list[Claim]:
    claims = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in line.split("|")]
        if len(fields) != 5:
            raise ParseError(f"expected 5 fields, found {len(fields)}", lineno, 1)
        cid, kind, weight, element, payload = fields
        if kind not in KINDS:
            raise ParseError(f"unknown claim kind {kind!r}", lineno, raw.index(kind) + 1)
        if cid in seen:
            raise ParseError(f"duplicate claim id {cid!r}", lineno, 1)
        seen.add(cid)
        claims.append(Claim(cid, kind, weight, element, payload, lineno))
    return claims


@lru_cache(maxsize=None)
def load_catalog(path: str | None = None) -> tuple[Claim, ...]:
    if path is None:
        text = resources.files("b2verma").joinpath("data/claims.txt").read_text(encoding="utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return tuple(parse_catalog(text))


def select(claims, pattern: str | None):
    if not pattern:
        return list(claims)
    pats = [p.strip() for p in pattern.split(",") if p.strip()]
    return [c for c in claims if any(fnmatch.fnmatchcase(c.id, p) for p in pats)]


_FOR = re.compile(r"^for\s+([A-Za-z_]\w*)\s*=\s*(.+?)\s*\.\.\s*(.+)$")
_CASES = re.compile(r"^cases\s*\(([^)]*)\)\s*=\s*(.+)$")


def parse_payload(payload: str) -> dict:
    """Split a payload into sweeps, cases, a condition and key=value options."""
    out: dict = {"for": [], "cases": None, "if": None}
    for clause in (c.strip() for c in payload.split(";")):
        if not clause:
            continue
        m = _FOR.match(clause)
        if m:
            out["for"].append((m.group(1), m.group(2), m.group(3)))
            continue
        m = _CASES.match(clause)
        if m:
            names = [n.strip() for n in m.group(1).split(",")]
            tuples = re.findall(r"\(([^)]*)\)", m.group(2))
            out["cases"] = (names, [[t.strip() for t in tup.split(",")] for tup in tuples])
            continue
        if clause.startswith("if "):
            out["if"] = clause[3:].strip()
            continue
        if "=" in clause:
            key, value = clause.split("=", 1)
            out[key.strip()] = value.strip()
            continue
        raise ParseError(f"cannot read payload clause {clause!r}", 1, 1)
    return out


# -- instantiation ------------------------------------------------------------
@dataclass
class Instance:
    env: dict
    weight: Weight | None


@dataclass
class ConcreteClaim:
    claim: Claim
    l: int
    params: tuple
    instances: list = field(default_factory=list)
    options: dict = field(default_factory=dict)


def instantiate(claim: Claim, l: int, params=(0, 0)) -> ConcreteClaim:
    """Resolve ``l``, the family parameters and any sweep variables."""
    RootOfUnityConfig(l)  # validates l
    a, b = params
    opts = claim.options()
    base = {"l": l, "a": a, "b": b}
    envs = [dict(base)]
    if opts["cases"]:
        names, tuples = opts["cases"]
        envs = []
        for tup in tuples:
            env = dict(base)
            for n, v in zip(names, tup):
                env[n] = eval_int(v, base)
            envs.append(env)
    for name, lo, hi in opts["for"]:
        nxt = []
        for env in envs:
            for v in range(eval_int(lo, env), eval_int(hi, env) + 1):
                e = dict(env)
                e[name] = v
                nxt.append(e)
        envs = nxt
    if opts["if"]:
        envs = [e for e in envs if eval_condition(opts["if"], e)]
    out = ConcreteClaim(claim, l, tuple(params), options=opts)
    for env in envs:
        w = eval_weight(claim.weight, env) if claim.weight else None
        out.instances.append(Instance(env, w))
    return out


# -- helpers --------------------------------------------------------------------
@lru_cache(maxsize=4096)
def _reduce_cached(src: str, l: int, env_items: tuple):
    A = NegativePart.of(l)
    return A.reduce(parse(src, l, dict(env_items)), divide=True)


def reduce_source(src: str, l: int, env: dict):
    return _reduce_cached(src, l, tuple(sorted(env.items())))


@lru_cache(maxsize=None)
def _composition(l: int, weight: Weight):
    return composition_multiset(weight, l)


def _module(weight: Weight, l: int) -> ModuleModel:
    return ModuleModel(weight, l)


def weyl_dim(weight) -> int:
    """Dimension of the Weyl module of a dominant weight."""
    l1, l2 = Weight.parse(weight)
    if l1 < 0 or l2 < 0:
        raise _NonDominant(f"non-dominant weight ({l1},{l2})")
    num = (l1 + 1) * (l2 + 1) * (l1 + l2 + 2) * (l1 + 2 * l2 + 3)
    assert num % 6 == 0
    return num // 6


class _NonDominant(B2Error, ValueError):
    pass


def _env_str(env):
    return ",".join(f"{k}={v}" for k, v in sorted(env.items()) if k not in ("l",))


class _Fail(Exception):
    def __init__(self, reason, **data):
        super().__init__(reason)
        self.data = {"reason": reason, **data}


# -- per-kind checks ------------------------------------------------------------
def _representative(claim, inst, l, src):
    """Explicit quotient z for ``frac(x, y)``; checked exactly as z y = x."""
    tree = parse(claim.element, l, inst.env)
    if not isinstance(tree, Frac):
        raise _Fail("repr given for an element that is not a quotient", instance=_env_str(inst.env))
    A = NegativePart.of(l)
    x = A.reduce(tree.num, divide=True)
    y = A.reduce(tree.den, divide=True)
    z = reduce_source(src, l, inst.env)
    if A.multiply(z, y) != x:
        raise _Fail("representative times denominator differs from numerator", instance=_env_str(inst.env))
    return z


def _element_vector(claim, inst, l, repr_src=None):
    x = reduce_source(claim.element, l, inst.env)
    if repr_src:
        if x.is_zero() or not x.is_restricted():
            raise _Fail("canonical quotient is zero or unrestricted", instance=_env_str(inst.env))
        x = _representative(claim, inst, l, repr_src)
    if x.is_zero():
        raise _Fail("element is zero", instance=_env_str(inst.env))
    if not x.is_restricted():
        raise _Fail("element is not restricted", instance=_env_str(inst.env), element=str(x))
    m = _module(inst.weight, l)
    v = m.apply(x)
    if len(v.parts) != 1:
        raise _Fail("element is not homogeneous", instance=_env_str(inst.env))
    return x, m, v


def _check_maximal(cc, want_primitive_only=False):
    claim, l = cc.claim, cc.l
    checked = skipped = 0
    last = {}
    restricted_only = cc.options.get("filter") == "restricted-nonzero"
    for inst in cc.instances:
        if restricted_only:
            x = reduce_source(claim.element, l, inst.env)
            if x.is_zero() or not x.is_restricted():
                skipped += 1
                continue
        x, m, v = _element_vector(claim, inst, l, cc.options.get("repr"))
        w = m.weight_of_vector(v)
        maximal = m.is_maximal(v)
        if want_primitive_only:
            primitive = m.is_primitive(v)
            if not primitive or maximal:
                raise _Fail(
                    "not primitive" if not primitive else "element is maximal",
                    instance=_env_str(inst.env),
                    weight=str(w),
                    primitive=primitive,
                    maximal=maximal,
                    element=str(x),
                )
        elif not maximal:
            raise _Fail("not maximal", instance=_env_str(inst.env), weight=str(w), element=str(x))
        checked += 1
        last = {"weight": str(w), "element": str(x), "terms": len(x.terms)}
        if cc.options.get("repr"):
            last["representative"] = cc.options["repr"]
    if len(cc.instances) == 1:
        out = dict(last)
        if want_primitive_only:
            out.update(primitive=True, maximal=False)
        else:
            out.update(maximal=True)
        return out, last.get("weight")
    return {"instances": checked, "skipped": skipped}, None


def _check_restricted(cc):
    for inst in cc.instances:
        x = reduce_source(cc.claim.element, cc.l, inst.env)
        if not x.is_restricted():
            raise _Fail("not restricted", instance=_env_str(inst.env), element=str(x))
    return {"instances": len(cc.instances)}, None


def _check_vanishing(cc):
    for inst in cc.instances:
        x = reduce_source(cc.claim.element, cc.l, inst.env)
        if not x.is_zero():
            raise _Fail("element does not vanish", instance=_env_str(inst.env), element=str(x))
    return {"instances": len(cc.instances)}, None


def _check_identity(cc):
    A = NegativePart.of(cc.l)
    for inst in cc.instances:
        lhs, rhs = parse_equation(cc.claim.element, cc.l, inst.env)
        x = A.reduce(lhs, divide=True)
        y = A.reduce(rhs, divide=True)
        if x != y:
            ratio = None
            if x and y and len(x.terms) == len(y.terms) and x.terms.keys() == y.terms.keys():
                k = next(iter(x.terms))
                c = x.terms[k] / y.terms[k]
                if x == y.scale(c):
                    ratio = str(c)
            raise _Fail(
                "sides differ",
                instance=_env_str(inst.env),
                lhs=str(x),
                rhs=str(y),
                lhs_over_rhs=ratio,
            )
    return {"instances": len(cc.instances)}, None


def _check_socle(cc):
    claim, l = cc.claim, cc.l
    out = {}
    for inst in cc.instances:
        x, m, v = _element_vector(claim, inst, l)
        target = eval_weight(cc.options["target"], inst.env)
        w = m.weight_of_vector(v)
        info = {"weight": str(w), "target": str(target)}
        if w != target:
            raise _Fail("generator has the wrong weight", **info)
        if not m.is_maximal(v):
            raise _Fail("generator is not maximal", **info)
        sub = m.submodule([v])
        sdim = simple_dim(target, l)
        info.update(submodule_dim=sub.dim(), simple_dim=sdim)
        if sub.dim() != sdim:
            raise _Fail("generated submodule is not simple", **info)
        low = m.lowest_vectors()
        info["lowest_dim"] = low.dim()
        if low.dim() != 1:
            raise _Fail("module has more than one lowest vector", **info)
        if not all(sub.contains(u) for u in low.vectors()):
            raise _Fail("generated submodule misses the lowest vector", **info)
        out = info
    return out, out.get("weight")


def _check_composition(cc, catalog):
    claim, l = cc.claim, cc.l
    inst = cc.instances[0]
    lam = inst.weight
    env = dict(inst.env, L=lam)
    factor = eval_weight(cc.options["factor"], env)
    sibling_weights = []
    for c in catalog:
        if c.group == claim.group and c.kind == "composition-multiset":
            sibling_weights.append(eval_weight(c.options()["factor"], env))
    comp = _composition(l, lam)
    total = sum(comp.values())
    mult = comp.get(factor, 0)
    info = {
        "factor": str(factor),
        "multiplicity": mult,
        "simple_dim": simple_dim(factor, l) if mult else None,
        "factors_total": total,
        "factors_listed": len(sibling_weights),
    }
    if mult != 1 or total != len(sibling_weights) or set(comp) != set(sibling_weights):
        info["computed"] = [[str(w), n, simple_dim(w, l)] for w, n in sorted(comp.items())]
        info["unlisted"] = sorted(str(w) for w in set(comp) - set(sibling_weights))
        info["not_found"] = sorted(str(w) for w in set(sibling_weights) - set(comp))
        reason = "multiplicity is not 1" if mult != 1 else "listed factors differ from the computed multiset"
        raise _Fail(reason, **info)
    return info, str(factor)


def _check_no_maximal(cc, catalog, params):
    claim, l = cc.claim, cc.l
    pattern = cc.options["claims"]
    members = [c for c in catalog if fnmatch.fnmatchcase(c.id, pattern) and c.kind != "no-maximal-at-weight"]
    inst = cc.instances[0]
    m = _module(inst.weight, l)
    report = {}
    for c in members:
        x = reduce_source(c.element, l, inst.env)
        if x.is_zero() or not x.is_restricted():
            raise _Fail("member element is zero or unrestricted", member=c.id)
        deg = x.degree()
        w = m.weight_of(deg)
        dim = len(m.maximal_vectors(w))
        report[c.id] = [str(w), dim]
        if dim:
            raise _Fail("maximal vectors exist at a member weight", member=c.id, weight=str(w), dim=dim)
    return {"members": report}, str(inst.weight)


def _check_weyl(cc):
    w = cc.instances[0].weight
    value = weyl_dim(w)
    expected = int(cc.options["value"])
    if value != expected:
        raise _Fail("dimension differs", computed=value, expected=expected)
    return {"dim": value}, str(w)


# -- driver ------------------------------------------------------------------------
def verify(claim: Claim, l: int, params=(0, 0), catalog=None) -> Certificate:
    """Check one claim; never raises for claim-level problems."""
    catalog = load_catalog() if catalog is None else catalog
    RootOfUnityConfig(l)
    start = time.perf_counter()
    weight = None
    try:
        cc = instantiate(claim, l, params)
        if len(cc.instances) == 1 and cc.instances[0].weight is not None:
            weight = str(cc.instances[0].weight)
        kind = claim.kind
        if kind == "maximal":
            witness, w = _check_maximal(cc)
        elif kind == "primitive-not-maximal":
            witness, w = _check_maximal(cc, want_primitive_only=True)
        elif kind == "restrictedness":
            witness, w = _check_restricted(cc)
        elif kind == "vanishing":
            witness, w = _check_vanishing(cc)
        elif kind == "identity":
            witness, w = _check_identity(cc)
        elif kind == "irreducible-socle":
            witness, w = _check_socle(cc)
        elif kind == "composition-multiset":
            witness, w = _check_composition(cc, catalog)
        elif kind == "no-maximal-at-weight":
            witness, w = _check_no_maximal(cc, catalog, params)
        else:
            witness, w = _check_weyl(cc)
        status = "pass"
        weight = w or weight
    except _Fail as f:
        status, witness = "fail", f.data
        weight = f.data.get("weight", weight)
    except _CLAIM_FAILURES as e:
        status, witness = "fail", {"reason": f"{type(e).__name__}: {e}"}
    except (B2Error, EngineError) as e:
        status, witness = "error", {"reason": f"{type(e).__name__}: {e}"}
    millis = (time.perf_counter() - start) * 1000.0
    return Certificate(claim.id, status, weight, witness, millis, l, tuple(params))


def verify_many(claims, l: int, params=(0, 0), jobs: int = 1, catalog=None):
    catalog = load_catalog() if catalog is None else catalog
    claims = list(claims)
    if jobs <= 1 or len(claims) <= 1:
        return [verify(c, l, params, catalog) for c in claims]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(verify, c, l, params, catalog) for c in claims]
        return [f.result() for f in futures]


def verify_all(l: int, jobs: int = 1, catalog=None) -> list[Certificate]:
    """Every claim at parameters (0, 0) and (1, 1)."""
    RootOfUnityConfig(l)
    catalog = load_catalog() if catalog is None else catalog
    out = []
    for params in ((0, 0), (1, 1)):
        out.extend(verify_many(catalog, l, params, jobs, catalog))
    return out


def report(certs, l: int, params) -> dict:
    return {
        "schema_version": 1,
        "engine_version": __version__,
        "l": l,
        "params": {"a": params[0], "b": params[1]},
        "certificates": [c.to_json() for c in certs],
    }
