"""Invariant polytope certificates: search, verification, reporting.

A certificate for scaling alpha is a finite set X of nonnegative vectors with
V0/alpha in conv_<=(X) and B(x, y) in conv_<=(X) for every ordered pair from
X.  It proves count(n) <= C*alpha^n with C = max over X of F.x.

The search iterates the closure: add every product that escapes the dominated
hull, reduce, repeat.  Some systems approach their limit polytope along exact
geometric sequences without ever reaching it; the search therefore watches,
for each escaping product B(x, y), the orbit of x (resp. y) under the fixed
other factor, and when three consecutive orbit points have exactly
proportional consecutive differences with ratio r in (0, 1) it also inserts
the extrapolated limit point.  Inserting any vector is sound: validity is
decided solely by the closure conditions, which the verifier re-checks
independently, and a wrong guess merely fails to close.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import DimensionMismatch, NonPositiveScale, ParseError
from .geometry import (
    Vec,
    hull_reduce,
    member_dominated_hull,
    vec_is_nonnegative,
    vec_scale,
    vec_sub,
)
from .numeric import (
    NumberField,
    decimal_str,
    format_number,
    parse_field_header,
    parse_number,
    sign_of,
)
from .system import BilinearSystem, apply, bk_levels, level_max, objective


@dataclass(frozen=True)
class SearchConfig:
    max_iterations: int = 10_000
    max_vectors: int = 2_000
    pair_order: str = "insertion"  # the one canonical deterministic policy
    extrapolate: bool = True

    def __post_init__(self):
        if self.max_iterations < 1 or self.max_vectors < 1:
            raise ValueError("budgets must be positive")
        if self.pair_order != "insertion":
            raise ValueError(f"unknown pair order {self.pair_order!r}")


@dataclass(frozen=True)
class Certificate:
    field: Optional[NumberField]       # None for purely rational alpha
    alpha: object                      # positive scaling value
    vectors: Tuple[Vec, ...]           # all >= 0, closed modulo conv_<=
    seeds: Tuple[Vec, ...] = ()
    C: object = None                   # max F.x over vectors (derived)
    coord_names: Optional[Tuple[str, ...]] = None


@dataclass(frozen=True)
class Found:
    certificate: Certificate
    iterations: int


@dataclass(frozen=True)
class BudgetExhausted:
    vectors: Tuple[Vec, ...]           # partial state, resumable as seeds
    iterations: int
    reason: str
    growth_trace: Tuple = ()           # (k, max F.v over B^k(V0/alpha)) pairs


@dataclass(frozen=True)
class Valid:
    C: object


@dataclass(frozen=True)
class Invalid:
    witness: Vec
    kind: str                          # 'seed' or 'product'
    pair: Optional[Tuple[Vec, Vec]] = None


def certificate_constant(s: BilinearSystem, vectors: Sequence[Vec]):
    best = None
    for v in vectors:
        val = objective(s, v)
        if best is None or sign_of(val - best) > 0:
            best = val
    return best


def verify_certificate(s: BilinearSystem, alpha, vectors: Sequence[Vec]):
    """Independent check of the two closure conditions; shares no search state.

    Valid(C) certifies count(n) <= C*alpha^n for all n; Invalid carries the
    offending vector or escaping product.
    """
    if not vectors:
        raise ValueError("empty certificate")
    for v in vectors:
        if len(v) != s.dim:
            raise DimensionMismatch("certificate vector of wrong dimension")
        if not vec_is_nonnegative(v):
            raise ValueError("certificate vectors must be nonnegative")
    if sign_of(alpha) <= 0:
        raise NonPositiveScale("alpha must be positive")
    x0 = vec_scale(s.v0, 1 / alpha)
    if not member_dominated_hull(x0, vectors):
        return Invalid(x0, "seed")
    for x in vectors:
        for y in vectors:
            p = apply(s, x, y)
            if not member_dominated_hull(p, vectors):
                return Invalid(p, "product", (x, y))
    return Valid(certificate_constant(s, vectors))


# -- the fixed-point search -------------------------------------------------------


def _geometric_limit(u: Vec, v: Vec, w: Vec) -> Optional[Vec]:
    """Limit of the geometric sequence u, v, w, ... if it is exactly one.

    Requires w - v = r*(v - u) componentwise for a single ratio 0 < r < 1;
    returns w + (w - v)*r/(1 - r), or None if the pattern does not hold.
    """
    d1, d2 = vec_sub(v, u), vec_sub(w, v)
    r = None
    for a, b in zip(d1, d2):
        if sign_of(a) != 0:
            r = b / a
            break
    if r is None:
        return None
    if not (sign_of(r) > 0 and sign_of(1 - r) > 0):
        return None
    for a, b in zip(d1, d2):
        if sign_of(b - r * a) != 0:
            return None
    factor = r / (1 - r)
    limit = tuple(c + factor * d for c, d in zip(w, d2))
    if not vec_is_nonnegative(limit):
        return None
    return limit


def find_certificate(s: BilinearSystem, alpha, seeds: Sequence[Vec] = (),
                     cfg: SearchConfig = SearchConfig(),
                     number_field: Optional[NumberField] = None):
    """Iterate X -> Hull_<=(X + escaping products) from {V0/alpha} + seeds.

    Returns Found(certificate) at the fixed point, else BudgetExhausted with
    the partial vector set (usable as seeds to resume) and a growth trace.
    """
    if sign_of(alpha) <= 0:
        raise NonPositiveScale("alpha must be positive")
    x0 = vec_scale(s.v0, 1 / alpha)
    for v in seeds:
        if len(v) != s.dim:
            raise DimensionMismatch("seed vector of wrong dimension")
    X: List[Vec] = hull_reduce([x0, *seeds])
    inside: set = set()               # pairs whose product is known to stay inside
    provenance: Dict[Vec, Tuple[Vec, Vec]] = {}
    iterations = 0
    for iterations in range(1, cfg.max_iterations + 1):
        escapes: List[Tuple[Vec, Vec, Vec]] = []
        for x in X:
            for y in X:
                if (x, y) in inside:
                    continue
                p = apply(s, x, y)
                if member_dominated_hull(p, X):
                    inside.add((x, y))   # conv_<= only grows: stays valid
                else:
                    escapes.append((p, x, y))
        if not escapes:
            cert = Certificate(number_field, alpha, tuple(X), tuple(seeds),
                               certificate_constant(s, X), s.coord_names)
            return Found(cert, iterations)
        added: List[Vec] = []
        seen = set(X)
        for p, x, y in escapes:
            if p not in seen:
                seen.add(p)
                added.append(p)
                provenance[p] = (x, y)
            if not cfg.extrapolate:
                continue
            for u, v in _chain_tail(provenance, p, x, y):
                limit = _geometric_limit(u, v, p)
                if limit is not None and limit not in seen:
                    seen.add(limit)
                    added.append(limit)
        X = hull_reduce(X + added)
        if len(X) > cfg.max_vectors:
            return BudgetExhausted(tuple(X), iterations, "max_vectors",
                                   growth_trace(s, alpha))
    return BudgetExhausted(tuple(X), cfg.max_iterations, "max_iterations",
                           growth_trace(s, alpha))


def _chain_tail(provenance, p: Vec, x: Vec, y: Vec):
    """Orbit predecessors (u, v) such that v, p continue a fixed-factor chain.

    p = B(x, y): if x itself arose as B(x', y), the left orbit under y is
    x', x, p; symmetrically for the right slot.
    """
    out = []
    gen_x = provenance.get(x)
    if gen_x is not None and gen_x[1] == y:
        out.append((gen_x[0], x))
    gen_y = provenance.get(y)
    if gen_y is not None and gen_y[0] == x:
        out.append((gen_y[1], y))
    return out


def growth_trace(s: BilinearSystem, alpha, kmax: int = 10) -> Tuple:
    """(k, max F.v over B^k(V0/alpha)) for diagnosing alpha below the rate.

    Levels are expanded on the unscaled (rational) system and only the maxima
    are divided by alpha^k, which is the same by the scaling identity.
    """
    try:
        levels = bk_levels(s, kmax, prune=True)
    except Exception:
        return ()
    inv = 1 / alpha
    out = []
    scale = 1
    for k in range(1, kmax + 1):
        scale = scale * inv
        out.append((k, level_max(s, levels.levels[k]) * scale))
    return tuple(out)


# -- reporting ------------------------------------------------------------------


def upper_bound_report(s: BilinearSystem, cert: Certificate,
                       n_samples: Sequence[int] = (), digits: int = 6,
                       citation: Optional[str] = None) -> str:
    """Exact values first, decimal brackets second, citation last."""
    lines = []
    lines.append(f"upper bound: count(n) <= C * alpha^n for all n")
    lines.append(f"  alpha = {format_number(cert.alpha)}"
                 f"  ~ {decimal_str(cert.alpha, digits)}")
    C = cert.C if cert.C is not None else certificate_constant(s, cert.vectors)
    lines.append(f"  C     = {format_number(C)}  ~ {decimal_str(C, digits)}")
    lines.append(f"  certificate vectors: {len(cert.vectors)}")
    for n in n_samples:
        bound = C * cert.alpha ** n
        lines.append(f"  n = {n}: count <= {decimal_str(bound, digits)}")
    if citation:
        lines.append(f"  [{citation}]")
    return "\n".join(lines)


# -- certificate file format ----------------------------------------------------
#   field: c0,...,cd ; interval lo hi     (omitted for rational alpha)
#   alpha <number>
#   seed c1 ... cn     (optional, repeated)
#   vec  c1 ... cn     (repeated)
#   C <number>         (informative; re-derived on load)
#   states s1 ... sn   (optional coordinate provenance)


def format_certificate(cert: Certificate) -> str:
    lines = []
    if cert.field is not None:
        lines.append(cert.field.header())
    if cert.coord_names:
        lines.append("states " + " ".join(cert.coord_names))
    lines.append("alpha " + format_number(cert.alpha))
    for v in cert.seeds:
        lines.append("seed " + " ".join(format_number(c) for c in v))
    for v in cert.vectors:
        lines.append("vec " + " ".join(format_number(c) for c in v))
    if cert.C is not None:
        lines.append("C " + format_number(cert.C))
    return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> Certificate:
    nf: Optional[NumberField] = None
    alpha = None
    seeds: List[Vec] = []
    vectors: List[Vec] = []
    names = None
    c_stated = None
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        try:
            if line.startswith("field:"):
                nf = parse_field_header(line)
            elif kind == "states":
                names = tuple(parts[1:])
            elif kind == "alpha":
                alpha = parse_number(parts[1], nf)
            elif kind == "seed":
                seeds.append(tuple(parse_number(t, nf) for t in parts[1:]))
            elif kind == "vec":
                vectors.append(tuple(parse_number(t, nf) for t in parts[1:]))
            elif kind == "C":
                c_stated = parse_number(parts[1], nf)
            else:
                raise ParseError(f"unknown directive {kind!r}", ln)
        except ParseError:
            raise
        except (ValueError, IndexError) as exc:
            raise ParseError(f"bad {kind} line: {exc}", ln) from None
    if alpha is None or not vectors:
        raise ParseError("certificate needs an alpha line and vec lines")
    dims = {len(v) for v in vectors} | {len(v) for v in seeds}
    if len(dims) != 1:
        raise ParseError("inconsistent vector dimensions")
    return Certificate(nf, alpha, tuple(vectors), tuple(seeds), c_stated, names)


def load_certificate(path) -> Certificate:
    from pathlib import Path
    return parse_certificate(Path(path).read_text())
