"""Principalization of an ideal of Q[x, y] near the origin by point blow-ups.

Every blow-up is carried out in two explicit affine charts::

    kind 1:  (p - a, q - b) = (u, u*v)     new exceptional curve {u = 0}
    kind 2:  (p - a, q - b) = (u*v, v)     new exceptional curve {v = 0}

where ``(a, b)`` is the center in the parent chart's coordinates ``(p, q)``.
A point of the new curve is either ``(0, c)`` in the kind-1 chart or the
origin of the kind-2 chart.  Every chart stores

* the residual generators: pull-backs of the finitely supported part
  ``f_i / h`` with the common exceptional monomial divided out, and
* the strict transforms of the squarefree layers of ``h``.

The numerical data is updated incrementally: with ``ord`` the order at the
center,

    N(new)  = sum of N over exceptional curves through the center
              + sum_k k * ord(strict transform of layer k) + min_i ord(g_i)
    nu(new) = 2, nu_a + 1 or nu_a + nu_b for 0, 1 or 2 curves through the center.

The origin of the base plane is always blown up once, so the preimage of the
origin is a union of exceptional curves.
"""

from __future__ import annotations

import copy
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact_poly import (
    BivariatePoly,
    UnivariatePoly,
    gcd_many,
    parse_polynomial_list,
    squarefree_decompose,
    univariate_gcd,
)
from .graph_model import EXCEPTIONAL, WEAK, Component, DualGraph

log = logging.getLogger(__name__)

Point = tuple[Fraction, Fraction]
ORIGIN: Point = (Fraction(0), Fraction(0))


class IdealError(ValueError):
    pass


class IrrationalCenterError(ValueError):
    """A mandatory blow-up center has non-rational coordinates."""

    def __init__(self, component: str, polynomial: UnivariatePoly):
        self.component = component
        self.polynomial = polynomial
        self.minimal_polynomial = _irreducible_factor(polynomial)
        super().__init__(
            f"irrational center: a required blow-up center on {component} is a root of "
            f"{self.minimal_polynomial.to_string('v')} (rational centers only)"
        )


class GenericPositionError(RuntimeError):
    def __init__(self, seed: int, attempts: int):
        self.seed = seed
        super().__init__(
            f"generic position not reached after {attempts} draws with seed {seed}; try another --seed"
        )


class PrincipalizationError(RuntimeError):
    """Internal invariant violation; should be unreachable."""


def _irreducible_factor(p: UnivariatePoly) -> UnivariatePoly:
    # only used to name the offending polynomial in error messages
    try:
        import sympy
    except ImportError:  # pragma: no cover
        return p
    v = sympy.Symbol("v")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * v**k for k, c in enumerate(p.coeffs))
    _, factors = sympy.factor_list(expr, v)
    for fac, _ in sorted(factors, key=lambda f: (sympy.degree(f[0], v), str(f[0]))):
        if sympy.degree(fac, v) >= 2:
            coeffs = sympy.Poly(fac, v).all_coeffs()[::-1]
            return UnivariatePoly(Fraction(int(sympy.numer(c)), int(sympy.denom(c))) for c in coeffs).monic()
    return p


# --------------------------------------------------------------------------
# ideals
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Ideal:
    generators: tuple[BivariatePoly, ...]

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))

    @classmethod
    def from_text(cls, text: str) -> "Ideal":
        return cls(tuple(parse_polynomial_list(text)))

    def text(self) -> str:
        return ", ".join(str(g) for g in self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def is_unit_at_origin(self) -> bool:
        return any(g.constant_term() != 0 for g in self.generators)

    def check_nontrivial(self) -> "Ideal":
        gens = tuple(g for g in self.generators if not g.is_zero())
        if not gens:
            raise IdealError("the zero ideal has no principalization")
        if any(g.constant_term() != 0 for g in gens):
            raise IdealError("ideal does not vanish at the origin")
        return Ideal(gens)


def split_principal_part(ideal: Ideal) -> tuple[BivariatePoly, Ideal]:
    """Write the ideal as ``(h) * (f_1', ..., f_r')`` with ``h`` the gcd of the generators."""
    gens = [g for g in ideal.generators if not g.is_zero()]
    if not gens:
        raise IdealError("the zero ideal has no principal part")
    h = gcd_many(gens)
    residual = tuple(g.divexact(h) for g in gens)
    return h, Ideal(residual)


# --------------------------------------------------------------------------
# state
# --------------------------------------------------------------------------


@dataclass
class Chart:
    id: int
    parent: int | None
    kind: int  # 0 root, 1 = (u, uv), 2 = (uv, v)
    center: Point  # in the parent chart's coordinates
    labels: tuple[str | None, str | None]  # exceptional curves {u = 0}, {v = 0}
    residual: tuple[BivariatePoly, ...]
    residual_monomial: tuple[int, int]
    layers: tuple[BivariatePoly, ...]  # strict transforms, aligned with Principalizer.multiplicities

    def weak_restriction(self, axis: str) -> list[UnivariatePoly]:
        return [h.restrict_x0() if axis == "u" else h.restrict_y0() for h in self.layers]

    def residual_restriction(self, axis: str) -> list[UnivariatePoly]:
        return [g.restrict_x0() if axis == "u" else g.restrict_y0() for g in self.residual]


@dataclass
class ExceptionalRecord:
    id: str
    N: int
    nu: int
    self_intersection: int
    N_residual: int
    N_principal: int
    center_chart: int
    center: Point
    chart1: int
    chart2: int
    later_centers: list[Fraction] = field(default_factory=list)
    infinity_blown_up: bool = False
    # (layer index, number of points) for transverse intersections at irrational points
    irrational_weak: list[tuple[int, int]] = field(default_factory=list)


@dataclass
class Site:
    """A final point over the origin where at least two components meet."""

    chart: int
    point: Point
    exceptional: tuple[str, ...]
    layers: tuple[int, ...]


@dataclass
class LocalData:
    labels: tuple[str, ...]
    residual: list[BivariatePoly]
    layers: list[BivariatePoly]
    label_axes: tuple[bool, bool]

    def residual_unit(self) -> bool:
        return any(g.constant_term() != 0 for g in self.residual)

    def residual_order(self) -> int:
        return min(g.order_at_origin() for g in self.residual)

    def layer_orders(self) -> list[int]:
        return [h.order_at_origin() for h in self.layers]

    def normal_crossing(self) -> bool:
        forms = []
        if self.label_axes[0]:
            forms.append(BivariatePoly.x())
        if self.label_axes[1]:
            forms.append(BivariatePoly.y())
        m = len(forms)
        for h in self.layers:
            k = h.order_at_origin()
            if k:
                m += k
                forms.append(h.initial_form())
        if m <= 1:
            return True
        if m > 2:
            return False
        q = BivariatePoly.constant(1)
        for f in forms:
            q = q * f
        a, b, c = q.coefficient(2, 0), q.coefficient(1, 1), q.coefficient(0, 2)
        return b * b - 4 * a * c != 0


class Principalizer:
    """Mutable builder behind :func:`principalize`."""

    def __init__(self, ideal: Ideal, max_blowups: int = 2000):
        ideal = ideal.check_nontrivial()
        self.ideal = ideal
        self.max_blowups = max_blowups
        h, residual = split_principal_part(ideal)
        self.principal_part = h
        self.residual_ideal = residual
        layers = [] if h.is_constant() else squarefree_decompose(h)
        self.layer_polys = tuple(f for f, _ in layers)
        self.multiplicities = tuple(k for _, k in layers)
        root = Chart(0, None, 0, ORIGIN, (None, None), residual.generators, (0, 0), self.layer_polys)
        self.charts: dict[int, Chart] = {0: root}
        self.exceptional: dict[str, ExceptionalRecord] = {}
        self.sites: dict[tuple[int, Point], Site] = {}
        self.blown_up: set[tuple[int, Point]] = set()
        self.history: list[tuple[int, Point, str]] = []

    # -- local analysis ------------------------------------------------
    def local_data(self, chart_id: int, point: Point) -> LocalData:
        ch = self.charts[chart_id]
        a, b = point
        on_u = a == 0 and ch.labels[0] is not None
        on_v = b == 0 and ch.labels[1] is not None
        labels = tuple(l for l, on in zip(ch.labels, (on_u, on_v)) if on)
        residual = [g.translate(a, b) for g in ch.residual]
        layers = [h.translate(a, b) for h in ch.layers]
        return LocalData(labels, residual, layers, (on_u, on_v))

    def is_good(self, chart_id: int, point: Point) -> bool:
        loc = self.local_data(chart_id, point)
        return loc.residual_unit() and loc.normal_crossing()

    def _check_center(self, chart_id: int, point: Point):
        ch = self.charts.get(chart_id)
        if ch is None:
            raise KeyError(f"unknown chart {chart_id}")
        if (chart_id, point) in self.blown_up:
            raise ValueError(f"point {point} of chart {chart_id} was already blown up")
        if ch.kind == 0:
            if point != ORIGIN:
                raise ValueError("only the origin of the base plane lies over the origin")
        elif ch.kind == 1:
            if point[0] != 0:
                raise ValueError("centers in a kind-1 chart must lie on its exceptional axis u = 0")
        elif point != ORIGIN:
            raise ValueError("only the origin of a kind-2 chart is a valid center")

    # -- blow-up -------------------------------------------------------
    def blow_up(self, chart_id: int, point: Point) -> str:
        """Blow up a point; returns the id of the new exceptional curve."""
        point = (Fraction(point[0]), Fraction(point[1]))
        self._check_center(chart_id, point)
        if len(self.exceptional) >= self.max_blowups:
            raise PrincipalizationError(f"blow-up cap {self.max_blowups} reached")
        parent = self.charts[chart_id]
        loc = self.local_data(chart_id, point)
        through = [self.exceptional[l] for l in loc.labels]
        ord_g = 0 if loc.residual_unit() else loc.residual_order()
        ord_h = sum(k * o for k, o in zip(self.multiplicities, loc.layer_orders()))
        n_res = sum(e.N_residual for e in through) + ord_g
        n_pri = sum(e.N_principal for e in through) + ord_h
        nu = 2 + sum(e.nu - 1 for e in through)
        eid = f"E{len(self.exceptional) + 1}"

        for e in through:
            e.self_intersection -= 1
            if chart_id == e.chart1 and point[0] == 0:
                e.later_centers.append(point[1])
            if chart_id == e.chart2 and point == ORIGIN:
                e.infinity_blown_up = True
        self.sites.pop((chart_id, point), None)
        self.blown_up.add((chart_id, point))

        ids = []
        for kind in (1, 2):
            cid = len(self.charts)
            residual = [g.blowup_chart(kind) for g in loc.residual]
            mu = min(g.order_in_x() for g in residual)
            mv = min(g.order_in_y() for g in residual)
            if (kind == 1 and mv) or (kind == 2 and mu):
                raise PrincipalizationError("residual generators acquired a non-exceptional common factor")
            residual = tuple(g.divide_monomial(mu, mv) for g in residual)
            layers = []
            for h in loc.layers:
                hh = h.blowup_chart(kind)
                layers.append(hh.divide_monomial(hh.order_in_x(), 0) if kind == 1
                              else hh.divide_monomial(0, hh.order_in_y()))
            if kind == 1:
                labels = (eid, parent.labels[1] if loc.label_axes[1] else None)
            else:
                labels = (parent.labels[0] if loc.label_axes[0] else None, eid)
            self.charts[cid] = Chart(cid, chart_id, kind, point, labels, residual, (mu, mv), tuple(layers))
            ids.append(cid)

        self.exceptional[eid] = ExceptionalRecord(
            id=eid, N=n_res + n_pri, nu=nu, self_intersection=-1, N_residual=n_res, N_principal=n_pri,
            center_chart=chart_id, center=point, chart1=ids[0], chart2=ids[1],
        )
        self.history.append((chart_id, point, eid))
        log.debug("blew up %s in chart %d -> %s (N=%d, nu=%d)", point, chart_id, eid, n_res + n_pri, nu)
        return eid

    def points_to_examine(self, eid: str) -> list[tuple[int, Point]]:
        """Rational points of a new exceptional curve where something else may pass.

        Raises :class:`IrrationalCenterError` when a point that must be blown up
        is not rational.
        """
        rec = self.exceptional[eid]
        c1 = self.charts[rec.chart1]
        rs = c1.residual_restriction("u")
        base = univariate_gcd(rs)
        ws = c1.weak_restriction("u")
        w = UnivariatePoly([1])
        for wk in ws:
            w = w * wk
        bad = UnivariatePoly([1])
        if not base.is_constant():
            bad = bad * base.squarefree_part()
        if not w.is_constant():
            bad = bad * w.gcd(w.derivative())
        irrational = bad.without_rational_roots() if not bad.is_constant() else bad
        if not irrational.is_constant():
            raise IrrationalCenterError(eid, irrational)
        cands: set[Fraction] = set()
        special = base * w
        if not special.is_constant():
            cands.update(special.rational_roots())
        if c1.labels[1] is not None:
            cands.add(Fraction(0))
        for k, wk in enumerate(ws):
            if wk.is_constant():
                continue
            d = wk.without_rational_roots().degree
            if d > 0:
                rec.irrational_weak.append((k, d))
        out = [(rec.chart1, (Fraction(0), c)) for c in sorted(cands)]
        out.append((rec.chart2, ORIGIN))
        return out

    def _record_site(self, chart_id: int, point: Point):
        loc = self.local_data(chart_id, point)
        layers = tuple(k for k, h in enumerate(loc.layers) if h.constant_term() == 0)
        if len(loc.labels) + len(layers) >= 2:
            self.sites[(chart_id, point)] = Site(chart_id, point, loc.labels, layers)

    def process(self, chart_id: int, point: Point, force: bool = False):
        """Blow up ``point`` if needed (or if ``force``), then recurse depth-first."""
        stack = [(chart_id, point, force)]
        while stack:
            cid, pt, forced = stack.pop()
            if not forced and self.is_good(cid, pt):
                self._record_site(cid, pt)
                continue
            eid = self.blow_up(cid, pt)
            for item in reversed(self.points_to_examine(eid)):
                stack.append((item[0], item[1], False))

    def run(self) -> "Principalizer":
        self.process(0, ORIGIN, force=True)
        return self

    # -- output --------------------------------------------------------
    def special_locus(self, eid: str) -> tuple[UnivariatePoly, bool]:
        """Points of an exceptional curve lying on other components.

        Returns a squarefree polynomial in the kind-1 chart coordinate whose
        roots contain every such affine point, and whether the point at
        infinity (origin of the kind-2 chart) is such a point.
        """
        rec = self.exceptional[eid]
        c1, c2 = self.charts[rec.chart1], self.charts[rec.chart2]
        s = univariate_gcd(c1.residual_restriction("u"))
        for wk in c1.weak_restriction("u"):
            s = s * wk
        for c in rec.later_centers:
            s = s * UnivariatePoly.linear_root(c)
        if c1.labels[1] is not None:
            s = s * UnivariatePoly.linear_root(0)
        s = s.squarefree_part() if not s.is_constant() else UnivariatePoly([1])
        at_inf = (
            c2.labels[0] is not None
            or rec.infinity_blown_up
            or any(h.constant_term() == 0 for h in c2.layers)
            or not any(g.constant_term() != 0 for g in c2.residual)
        )
        return s, at_inf

    def free_point(self, eid: str) -> tuple[int, Point]:
        """A rational point of ``eid`` on no other component."""
        rec = self.exceptional[eid]
        s, _ = self.special_locus(eid)
        c = Fraction(1)
        while s(c) == 0 or (rec.chart1, (Fraction(0), c)) in self.blown_up:
            c += 1
        return rec.chart1, (Fraction(0), c)

    def dual_graph(self) -> DualGraph:
        comps = []
        for rec in self.exceptional.values():
            comps.append(Component(rec.id, EXCEPTIONAL, rec.N, rec.nu, rec.self_intersection, None, True))
        edges = []
        weak_counter = 0
        weak_info: dict[str, tuple[int, str]] = {}

        def new_weak(layer: int, where: str) -> str:
            nonlocal weak_counter
            weak_counter += 1
            wid = f"W{weak_counter}"
            comps.append(Component(wid, WEAK, self.multiplicities[layer], 1, None, None, False))
            weak_info[wid] = (layer, where)
            return wid

        for site in self.sites.values():
            members = list(site.exceptional)
            for k in site.layers:
                members.append(new_weak(k, f"chart {site.chart} point {site.point}"))
            for i in range(len(members)):
                for j in range(i + 1, len(members)):
                    edges.append((members[i], members[j]))
        for rec in self.exceptional.values():
            for k, count in rec.irrational_weak:
                for _ in range(count):
                    edges.append((rec.id, new_weak(k, f"irrational point of {rec.id}")))
        graph = DualGraph(tuple(comps), tuple(edges), {"ideal": self.ideal.text()})
        self.weak_info = weak_info
        return graph.with_generic_counts()

    def snapshot(self) -> "ResolutionOutput":
        graph = self.dual_graph()
        state = copy.deepcopy(self)
        return ResolutionOutput(
            ideal=self.ideal,
            principal_part=self.principal_part,
            residual=self.residual_ideal,
            layers=tuple(zip(self.layer_polys, self.multiplicities)),
            charts=state.charts,
            components=state.exceptional,
            sites=state.sites,
            graph=graph,
            weak_branches=dict(self.weak_info),
            _builder=state,
        )


@dataclass(frozen=True)
class ResolutionOutput:
    ideal: Ideal
    principal_part: BivariatePoly
    residual: Ideal
    layers: tuple[tuple[BivariatePoly, int], ...]
    charts: dict[int, Chart]
    components: dict[str, ExceptionalRecord]
    sites: dict
    graph: DualGraph
    weak_branches: dict[str, tuple[int, str]]
    _builder: Principalizer = field(repr=False, compare=False)

    @property
    def r(self) -> int:
        return len(self.residual)

    def chart_map(self, chart_id: int) -> tuple[BivariatePoly, BivariatePoly]:
        """The composite map from a chart to the base plane, as ``(x(u, v), y(u, v))``."""
        chain = []
        cid = chart_id
        while cid is not None:
            chain.append(self.charts[cid])
            cid = self.charts[cid].parent
        # compose from the root outwards
        X, Y = BivariatePoly.x(), BivariatePoly.y()
        for ch in reversed(chain[:-1]):
            a, b = ch.center
            u, v = BivariatePoly.x(), BivariatePoly.y()
            if ch.kind == 1:
                p, q = u + a, u * v + b
            else:
                p, q = u * v + a, v + b
            X, Y = X.compose(p, q), Y.compose(p, q)
        return X, Y

    def direct_multiplicities(self) -> dict[str, int]:
        """N of every exceptional curve recomputed from the original generators."""
        out = {}
        for eid, rec in self.components.items():
            X, Y = self.chart_map(rec.chart1)
            out[eid] = min(f.compose(X, Y).order_in_x() for f in self.ideal.generators)
        return out

    def free_point(self, eid: str) -> tuple[int, Point]:
        return self._builder.free_point(eid)

    def special_locus(self, eid: str) -> tuple[UnivariatePoly, bool]:
        return self._builder.special_locus(eid)


def principalize(ideal: Ideal | str, max_blowups: int = 2000) -> ResolutionOutput:
    """Principalize ``ideal`` over the origin and return charts, data and dual graph."""
    if isinstance(ideal, str):
        ideal = Ideal.from_text(ideal)
    return Principalizer(ideal, max_blowups=max_blowups).run().snapshot()


def blow_up_point(res: ResolutionOutput, chart_id: int, point: Sequence) -> ResolutionOutput:
    """Blow up one more point of a finished principalization.

    The new exceptional curve's points are re-examined, so the result is again
    a principalization (no longer minimal).
    """
    builder = copy.deepcopy(res._builder)
    builder.process(chart_id, (Fraction(point[0]), Fraction(point[1])), force=True)
    return builder.snapshot()


# --------------------------------------------------------------------------
# generic member
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class GenericMember:
    polynomial: BivariatePoly
    coefficients: tuple[int, ...]
    counts: dict[str, int]
    seed: int
    attempts: int


def _counts_for(res: ResolutionOutput, lambdas: Sequence[int]) -> dict[str, int] | None:
    counts = {}
    for eid, rec in res.components.items():
        c1, c2 = res.charts[rec.chart1], res.charts[rec.chart2]
        rs = c1.residual_restriction("u")
        g = sum((r.scale(l) for r, l in zip(rs, lambdas)), UnivariatePoly())
        if g.is_zero():
            return None
        base = univariate_gcd(rs)
        free = g.divexact(base)
        special, special_inf = res.special_locus(eid)
        if not free.is_constant():
            if not free.is_squarefree() or not free.gcd(base).is_constant() or not free.gcd(special).is_constant():
                return None
        n = max(free.degree, 0)
        rs2 = c2.residual_restriction("v")
        g2 = sum((r.scale(l) for r, l in zip(rs2, lambdas)), UnivariatePoly())
        if g2.is_zero():
            return None
        free2 = g2.divexact(univariate_gcd(rs2))
        at_inf = free2.order_at_zero()
        if at_inf > 1 or (at_inf == 1 and special_inf):
            return None
        counts[eid] = n + at_inf
    return counts


def generic_member(res: ResolutionOutput, seed: int = 17, max_attempts: int = 25) -> GenericMember:
    """Draw a generic member of the residual linear system and count where its
    strict transform meets each exceptional curve.
    """
    rng = random.Random(seed)
    gens = res.residual.generators
    for attempt in range(1, max_attempts + 1):
        lambdas = tuple(rng.choice([-1, 1]) * rng.randint(1, 30) for _ in gens)
        counts = _counts_for(res, lambdas)
        if counts is not None:
            poly = sum((g.scale(l) for g, l in zip(gens, lambdas)), BivariatePoly())
            return GenericMember(poly, lambdas, counts, seed, attempt)
    raise GenericPositionError(seed, max_attempts)
