"""Monodromy zeta functions of the ideal along the exceptional curve of its blow-up.

The principalization factors through the blow-up of the ideal.  On each
exceptional curve ``E_j`` that map is read off in the kind-1 chart where
``E_j = {u = 0}``: the residual generators restricted to ``u = 0`` give a
parametrization ``v -> (c_1(v) : ... : c_r(v))`` of the image of ``E_j``.
Curves with ``n_j = 0`` are contracted to points; connected groups of them
("clusters") are the fibers over those points.  The monodromy zeta function at
a point ``e`` is ``prod (1 - t^N_j)^chi(E_j open, over e)``.
"""

from __future__ import annotations

import logging
import random
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import networkx as nx

from .exact_poly import BivariatePoly, UnivariatePoly, resultant_lifted, squarefree_part, univariate_gcd
from .graph_model import DualGraph, GraphError, chi_open, derive_generic_counts, sort_ids

log = logging.getLogger(__name__)


class MonodromyError(RuntimeError):
    """Internal consistency failure between the combinatorics and the parametrizations."""


# --------------------------------------------------------------------------
# cyclotomic products
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class CyclotomicFactored:
    """``prod_N (1 - t^N)^e_N``; stored as sorted ``(N, e_N)`` pairs, no zero exponents."""

    exponents: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_mapping(cls, exps: dict[int, int] | Iterable[tuple[int, int]]) -> "CyclotomicFactored":
        acc: dict[int, int] = defaultdict(int)
        items = exps.items() if isinstance(exps, dict) else exps
        for N, e in items:
            if N <= 0:
                raise ValueError(f"exponent base must be positive, got {N}")
            acc[N] += e
        return cls(tuple(sorted((N, e) for N, e in acc.items() if e != 0)))

    def as_dict(self) -> dict[int, int]:
        return dict(self.exponents)

    def __mul__(self, other: "CyclotomicFactored") -> "CyclotomicFactored":
        return CyclotomicFactored.from_mapping(list(self.exponents) + list(other.exponents))

    def is_one(self) -> bool:
        return not self.exponents

    def __call__(self, t) -> Fraction:
        t = Fraction(t)
        out = Fraction(1)
        for N, e in self.exponents:
            out *= (1 - t**N) ** e
        return out

    def to_string(self) -> str:
        if not self.exponents:
            return "1"
        def factor(N: int, e: int) -> str:
            base = "(1-t)" if N == 1 else f"(1-t^{N})"
            return base + (f"^{e}" if e > 1 else "")

        num = [factor(N, e) for N, e in self.exponents if e > 0]
        den = [factor(N, -e) for N, e in self.exponents if e < 0]
        top = "*".join(num) if num else "1"
        if not den:
            return top
        return f"{top}/{den[0]}" if len(den) == 1 else f"{top}/({'*'.join(den)})"

    def __str__(self) -> str:
        return self.to_string()

    def to_json(self) -> list[list[int]]:
        return [[N, e] for N, e in self.exponents]


def eigenvalue_order(z: CyclotomicFactored, a_over_d: Fraction) -> int:
    """Vanishing order of ``z`` at ``exp(2 pi i a/d)``: the sum of ``e_N`` over ``d | N``."""
    d = Fraction(a_over_d).denominator
    return sum(e for N, e in z.exponents if N % d == 0)


# --------------------------------------------------------------------------
# contraction and clusters
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Cluster:
    id: str
    members: tuple[str, ...]
    neighbors: tuple[str, ...]
    image: tuple[Fraction, ...] | None = None

    def to_json(self) -> dict:
        out = {"id": self.id, "members": list(self.members), "neighbors": list(self.neighbors)}
        if self.image is not None:
            out["image"] = [str(c) for c in self.image]
        return out


def contracted_set(g: DualGraph) -> set[str]:
    n = derive_generic_counts(g)
    return {cid for cid, k in n.items() if k == 0}


def clusters(g: DualGraph, images: dict[str, tuple[Fraction, ...]] | None = None) -> list[Cluster]:
    contracted = contracted_set(g)
    sub = nx.Graph()
    sub.add_nodes_from(contracted)
    sub.add_edges_from((a, b) for a, b in g.edges if a in contracted and b in contracted)
    parts = [sort_ids(c) for c in nx.connected_components(sub)]
    order = sort_ids(ms[0] for ms in parts)
    parts.sort(key=lambda ms: order.index(ms[0]))
    out = []
    for k, members in enumerate(parts, start=1):
        nbrs = sort_ids({nb for m in members for nb in g.neighbors(m) if nb not in contracted})
        image = images.get(members[0]) if images else None
        out.append(Cluster(f"C{k}", tuple(members), tuple(nbrs), image))
    return out


# --------------------------------------------------------------------------
# parametrizations
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ProjectiveParam:
    component: str
    coords: tuple[UnivariatePoly, ...]
    chart: int

    @property
    def degree(self) -> int:
        return max(max(c.degree, 0) for c in self.coords)

    def is_constant(self) -> bool:
        return all(c.is_constant() for c in self.coords)

    def value(self, v) -> tuple[Fraction, ...]:
        return normalize_point(c(v) for c in self.coords)

    def at_infinity(self) -> tuple[Fraction, ...]:
        D = self.degree
        return normalize_point(c.coefficient(D) for c in self.coords)

    def constant_value(self) -> tuple[Fraction, ...]:
        if not self.is_constant():
            raise MonodromyError(f"{self.component} is not contracted")
        return self.value(0)

    def to_json(self) -> dict:
        return {"component": self.component, "chart": self.chart,
                "coordinates": [c.to_string("v") for c in self.coords]}


def normalize_point(coords: Iterable) -> tuple[Fraction, ...]:
    pt = tuple(Fraction(c) for c in coords)
    lead = next((c for c in pt if c != 0), None)
    if lead is None:
        raise MonodromyError("all projective coordinates vanish")
    return tuple(c / lead for c in pt)


def restrict_projective_map(res, j: str) -> ProjectiveParam:
    """The map from ``E_j`` to projective space given by the residual generators."""
    rec = res.components.get(j)
    if rec is None:
        raise KeyError(f"{j} is not an exceptional component of this principalization")
    chart = res.charts[rec.chart1]
    coords = chart.residual_restriction("u")
    common = univariate_gcd(coords)
    if common.is_zero():
        raise MonodromyError(f"{j}: all coordinates vanish identically")
    coords = tuple(c.divexact(common) for c in coords)
    return ProjectiveParam(j, coords, rec.chart1)


def _fiber_poly(p: ProjectiveParam, point: Sequence[Fraction]) -> UnivariatePoly:
    """gcd of the 2x2 minors of ``(c(v), point)``: vanishes where ``c(v)`` is proportional to ``point``."""
    minors = []
    r = len(point)
    for k in range(r):
        for l in range(k + 1, r):
            minors.append(p.coords[k].scale(point[l]) - p.coords[l].scale(point[k]))
    return univariate_gcd(minors)


def contains_point(p: ProjectiveParam, point: Sequence[Fraction]) -> bool:
    if p.is_constant():
        return p.value(0) == normalize_point(point)
    f = _fiber_poly(p, point)
    if f.is_zero() or not f.is_constant():
        return True
    return p.at_infinity() == normalize_point(point)


def fiber_count(p: ProjectiveParam, point: Sequence[Fraction], exclude: UnivariatePoly | None = None,
                exclude_infinity: bool = False) -> int:
    """Number of distinct parameter values (infinity included) mapping to ``point``."""
    f = _fiber_poly(p, point)
    if f.is_zero():
        raise MonodromyError(f"{p.component}: parametrization is constant at the queried point")
    count = 0
    if not f.is_constant():
        f = f.squarefree_part()
        if exclude is not None and not exclude.is_constant():
            f = f.divexact(f.gcd(exclude))
        count = f.degree
    if not exclude_infinity and p.at_infinity() == normalize_point(point):
        count += 1
    return count


def fiber_degree_oracle(p: ProjectiveParam, seed: int = 0) -> int:
    """Mapping degree of ``E_j`` onto its image by counting one generic fiber."""
    rng = random.Random(seed)
    for _ in range(50):
        v0 = Fraction(rng.randint(-1000, 1000), rng.randint(1, 50))
        try:
            return fiber_count(p, p.value(v0))
        except MonodromyError:
            continue
    raise MonodromyError(f"{p.component}: no usable sample point")


def implicit_degree(p: ProjectiveParam, seed: int = 0) -> int:
    """Degree of the image curve, via a generic projection to the plane and a resultant."""
    r = len(p.coords)
    if r == 2:
        return 1
    rng = random.Random(seed)
    best = 0
    for _ in range(2):
        L = [[rng.randint(-20, 20) or 1 for _ in range(r)] for _ in range(3)]
        lin = [sum((c.scale(a) for c, a in zip(p.coords, row)), UnivariatePoly()) for row in L]
        X, Y = BivariatePoly.x(), BivariatePoly.y()
        D = p.degree
        lifted_a = [BivariatePoly.constant(lin[0].coefficient(k)) - X * lin[2].coefficient(k) for k in range(D + 1)]
        lifted_b = [BivariatePoly.constant(lin[1].coefficient(k)) - Y * lin[2].coefficient(k) for k in range(D + 1)]
        R = resultant_lifted(lifted_a, lifted_b)
        if R.is_zero():
            continue
        best = max(best, squarefree_part(R).total_degree())
    if best == 0:
        raise MonodromyError(f"{p.component}: implicitization failed")
    return best


@dataclass(frozen=True)
class ComponentImageGroup:
    id: str
    members: tuple[str, ...]
    degrees: dict[str, int]
    image_degree: int
    image: str

    def to_json(self) -> dict:
        return {"id": self.id, "image": self.image, "image_degree": self.image_degree,
                "members": [{"component": m, "degree": self.degrees[m]} for m in self.members]}


def image_grouping_and_degrees(params: Sequence[ProjectiveParam], g: DualGraph,
                               r: int | None = None) -> list[ComponentImageGroup]:
    """Group non-contracted curves by image and compute their mapping degrees."""
    n = derive_generic_counts(g)
    by_id = {p.component: p for p in params}
    moving = [by_id[cid] for cid in sort_ids(by_id) if n[cid] > 0]
    if r is None:
        r = len(moving[0].coords) if moving else (len(params[0].coords) if params else 2)
    for p in params:
        if (n[p.component] == 0) != p.is_constant():
            raise MonodromyError(f"{p.component}: n = {n[p.component]} but parametrization degree {p.degree}")
    groups: list[list[ProjectiveParam]] = []
    image_deg: list[int] = []
    if r == 2:
        if moving:
            groups.append(list(moving))
            image_deg.append(1)
    else:
        for p in moving:
            deg = implicit_degree(p)
            for gi, grp in enumerate(groups):
                if image_deg[gi] == deg and _same_image(p, grp[0], deg):
                    grp.append(p)
                    break
            else:
                groups.append([p])
                image_deg.append(deg)
    out = []
    for k, (grp, nd) in enumerate(zip(groups, image_deg), start=1):
        degrees = {}
        for p in grp:
            if p.degree != n[p.component]:
                raise MonodromyError(f"{p.component}: parametrization degree {p.degree} != n = {n[p.component]}")
            if n[p.component] % nd:
                raise MonodromyError(f"{p.component}: n = {n[p.component]} not divisible by image degree {nd}")
            degrees[p.component] = n[p.component] // nd
        label = "P^1" if r == 2 else f"image curve {k} (degree {nd})"
        out.append(ComponentImageGroup(f"G{k}", tuple(p.component for p in grp), degrees, nd, label))
    return out + weak_groups(g, start=len(out) + 1)


def weak_groups(g: DualGraph, start: int = 1) -> list[ComponentImageGroup]:
    return [
        ComponentImageGroup(f"G{start + k}", (w.id,), {w.id: 1}, 1, f"weak {w.id}")
        for k, w in enumerate(g.weak())
    ]


def _same_image(p: ProjectiveParam, q: ProjectiveParam, deg: int) -> bool:
    # two distinct irreducible curves of degree deg share at most deg^2 points;
    # p hits each point of its image at most p.degree / deg times
    samples = p.degree * deg + 1
    return all(contains_point(q, p.value(Fraction(k))) for k in range(samples))


def groups_from_hints(g: DualGraph, warnings: list[str]) -> list[ComponentImageGroup]:
    """Image groups on the graph-only path, from ``image``/``degree`` fields or the r = 2 assumption."""
    n = derive_generic_counts(g)
    moving = [c for c in g.exceptional() if n[c.id] > 0]
    if not moving:
        return weak_groups(g)
    if all(c.image is not None for c in moving):
        by_image: dict[str, list] = defaultdict(list)
        for c in moving:
            by_image[c.image].append(c)
        out = []
        for k, (img, comps) in enumerate(sorted(by_image.items(), key=lambda kv: sort_ids([kv[1][0].id])), start=1):
            degrees = {}
            for c in comps:
                degrees[c.id] = c.degree if c.degree is not None else n[c.id]
            nd = n[comps[0].id] // degrees[comps[0].id]
            for c in comps:
                if degrees[c.id] * nd != n[c.id]:
                    raise GraphError(f"{c.id}: degree {degrees[c.id]} inconsistent with n = {n[c.id]}")
            out.append(ComponentImageGroup(f"G{k}", tuple(c.id for c in comps), degrees, nd, img))
        return out + weak_groups(g, start=len(out) + 1)
    warnings.append("image groups assume two residual generators (image is a projective line)")
    degrees = {c.id: (c.degree if c.degree is not None else n[c.id]) for c in moving}
    grp = ComponentImageGroup("G1", tuple(c.id for c in moving), degrees, 1, "P^1")
    return [grp] + weak_groups(g, start=2)


# --------------------------------------------------------------------------
# zeta functions
# --------------------------------------------------------------------------


def extra_fiber_points(res, j: str, c: Cluster, params: dict[str, ProjectiveParam] | None = None) -> int:
    """Points of ``E_j`` (open part) mapping to the image of cluster ``c``."""
    g = res.graph
    comp = g.component(j)
    if not comp.is_exceptional:
        return 0
    if j in contracted_set(g):
        raise ValueError(f"not applicable: {j} is contracted")
    params = params or {}
    pj = params.get(j) or restrict_projective_map(res, j)
    member = params.get(c.members[0]) or restrict_projective_map(res, c.members[0])
    image = member.constant_value()
    special, special_inf = res.special_locus(j)
    return fiber_count(pj, image, exclude=special, exclude_infinity=special_inf)


def monodromy_zeta_at_cluster(g: DualGraph, c: Cluster, res=None,
                              params: dict[str, ProjectiveParam] | None = None) -> CyclotomicFactored:
    exps: dict[int, int] = defaultdict(int)
    for m in c.members:
        exps[g.component(m).N] += chi_open(g, m)
    if res is not None:
        contracted = contracted_set(g)
        for comp in g.exceptional():
            if comp.id in contracted:
                continue
            m = extra_fiber_points(res, comp.id, c, params)
            if m:
                exps[comp.N] += m
    return CyclotomicFactored.from_mapping(exps)


def monodromy_zeta_at_generic(g: DualGraph, group: ComponentImageGroup) -> CyclotomicFactored:
    exps: dict[int, int] = defaultdict(int)
    for m in group.members:
        exps[g.component(m).N] += group.degrees[m]
    return CyclotomicFactored.from_mapping(exps)


@dataclass
class MonodromyData:
    contracted: list[str]
    clusters: list[Cluster]
    groups: list[ComponentImageGroup]
    cluster_zetas: dict[str, CyclotomicFactored]
    generic_zetas: dict[str, CyclotomicFactored]
    params: dict[str, ProjectiveParam] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "contracted": self.contracted,
            "clusters": [
                {**c.to_json(), "zeta": self.cluster_zetas[c.id].to_json(), "zeta_text": str(self.cluster_zetas[c.id])}
                for c in self.clusters
            ],
            "image_groups": [
                {**grp.to_json(), "zeta": self.generic_zetas[grp.id].to_json(), "zeta_text": str(self.generic_zetas[grp.id])}
                for grp in self.groups
            ],
            "parametrizations": [p.to_json() for p in self.params.values()],
        }


def monodromy_from_resolution(res) -> MonodromyData:
    g = res.graph
    params = {cid: restrict_projective_map(res, cid) for cid in sort_ids(res.components)}
    contracted = contracted_set(g)
    warnings: list[str] = []
    images = {cid: params[cid].constant_value() for cid in contracted}
    cls = clusters(g, images)
    seen: dict[tuple, str] = {}
    for c in cls:
        if c.image in seen:
            warnings.append(f"clusters {seen[c.image]} and {c.id} have the same image point")
        seen.setdefault(c.image, c.id)
    groups = image_grouping_and_degrees(list(params.values()), g, r=res.r)
    return MonodromyData(
        contracted=sort_ids(contracted),
        clusters=cls,
        groups=groups,
        cluster_zetas={c.id: monodromy_zeta_at_cluster(g, c, res, params) for c in cls},
        generic_zetas={grp.id: monodromy_zeta_at_generic(g, grp) for grp in groups},
        params=params,
        warnings=warnings,
    )


def monodromy_from_graph(g: DualGraph) -> MonodromyData:
    warnings: list[str] = []
    cls = clusters(g)
    if cls:
        warnings.append("extra fiber points over cluster images assumed 0 (no parametrization available)")
    groups = groups_from_hints(g, warnings)
    return MonodromyData(
        contracted=sort_ids(contracted_set(g)),
        clusters=cls,
        groups=groups,
        cluster_zetas={c.id: monodromy_zeta_at_cluster(g, c) for c in cls},
        generic_zetas={grp.id: monodromy_zeta_at_generic(g, grp) for grp in groups},
        warnings=warnings,
    )
