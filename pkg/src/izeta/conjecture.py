"""Pole-by-pole certificates that ``exp(2 pi i s0)`` is a monodromy eigenvalue.

For a pole ``s0 = -a/d`` two kinds of evidence are produced:

* a non-contracted component (exceptional or weak) with ``d | N``: its image
  group's generic-point zeta vanishes at the root of unity;
* otherwise a contracted curve with ``-nu/N = s0`` meeting at least three
  other components: in its cluster the Euler characteristics of the members
  with ``d | N`` sum to a negative number, so the cluster zeta has a pole there.

Anything else is reported as a violation rather than raised.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact_poly import format_rational
from .graph_model import DualGraph, chi_open, sort_ids
from .monodromy import (
    Cluster,
    ComponentImageGroup,
    CyclotomicFactored,
    MonodromyData,
    contracted_set,
    eigenvalue_order,
)
from .topo_zeta import RationalFunctionS, poles_of, topological_zeta_local

WITNESS = "witness"
CLUSTER = "cluster"
VIOLATION = "violation"


class NotAPoleError(ValueError):
    pass


def eigenvalue_text(a_over_d: Fraction) -> str:
    return f"exp(-2*pi*i*{a_over_d.numerator}/{a_over_d.denominator})"


def pi_multiple_text(m: Fraction) -> str:
    """``exp(pi i m)`` written as ``exp(-4*pi*i/3)`` and the like."""
    p, q = m.numerator, m.denominator
    head = {1: "", -1: "-"}.get(p, f"{p}*")
    tail = "" if q == 1 else f"/{q}"
    return f"exp({head}pi*i{tail})" if p else "1"


@dataclass(frozen=True)
class PoleCertificate:
    pole: Fraction
    variant: str
    witness: str | None = None
    zeta: CyclotomicFactored | None = None
    order: int = 0
    group: str | None = None
    chi_sum: int | None = None
    members: tuple[str, ...] = ()
    diagnostics: str = ""

    @property
    def a_over_d(self) -> Fraction:
        return -self.pole

    @property
    def eigenvalue(self) -> str:
        return eigenvalue_text(self.a_over_d)

    @property
    def eigenvalue_pi_multiple(self) -> Fraction:
        """The eigenvalue is ``exp(i * pi * m)`` with this ``m``."""
        return -2 * self.a_over_d

    def to_json(self) -> dict:
        out = {
            "pole": format_rational(self.pole),
            "variant": self.variant,
            "witness": self.witness,
            "eigenvalue": self.eigenvalue,
            "order": self.order,
            "eigenvalue_pi_form": pi_multiple_text(self.eigenvalue_pi_multiple),
        }
        if self.zeta is not None:
            out["zeta"] = self.zeta.to_json()
        if self.group is not None:
            out["group"] = self.group
        if self.chi_sum is not None:
            out["chi_sum"] = self.chi_sum
            out["members"] = list(self.members)
        if self.diagnostics:
            out["diagnostics"] = self.diagnostics
        return out


def check_pole(
    g: DualGraph,
    groups: Sequence[ComponentImageGroup],
    clusters: Sequence[Cluster],
    s0: Fraction,
    generic_zetas: dict[str, CyclotomicFactored],
    cluster_zetas: dict[str, CyclotomicFactored],
    poles: Sequence[Fraction] | None = None,
) -> PoleCertificate:
    s0 = Fraction(s0)
    if poles is None:
        poles = [p.value for p in poles_of(topological_zeta_local(g))]
    if s0 not in poles:
        raise NotAPoleError(f"not a pole: {format_rational(s0)}")
    a_over_d = -s0
    d = a_over_d.denominator
    contracted = contracted_set(g)

    moving = [c for c in g.components if c.id not in contracted and c.N % d == 0]
    order_ids = sort_ids(c.id for c in moving)
    moving.sort(key=lambda c: (c.N, order_ids.index(c.id)))
    group_of = {m: grp for grp in groups for m in grp.members}
    for comp in moving:
        grp = group_of.get(comp.id)
        if grp is None:
            continue
        z = generic_zetas[grp.id]
        k = eigenvalue_order(z, a_over_d)
        if k >= 1:
            return PoleCertificate(s0, WITNESS, comp.id, z, k, group=grp.id)

    cluster_of = {m: c for c in clusters for m in c.members}
    tried = []
    for comp in g.exceptional():
        if Fraction(-comp.nu, comp.N) != s0 or g.valence(comp.id) < 3 or comp.id not in cluster_of:
            continue
        cl = cluster_of[comp.id]
        members = tuple(m for m in cl.members if g.component(m).N % d == 0)
        chi_sum = sum(chi_open(g, m) for m in members)
        z = cluster_zetas[cl.id]
        k = eigenvalue_order(z, a_over_d)
        tried.append(f"{comp.id} in {cl.id}: chi-sum {chi_sum}, order {k}")
        if chi_sum < 0 and k != 0:
            return PoleCertificate(s0, CLUSTER, cl.id, z, k, chi_sum=chi_sum, members=members)

    detail = "; ".join(tried) or "no non-contracted component with d | N and no contracted curve of valence >= 3"
    return PoleCertificate(s0, VIOLATION, diagnostics=detail)


def reverify(cert: PoleCertificate, g: DualGraph) -> list[str]:
    """Re-check a certificate's claims from scratch; returns the failures."""
    problems = []
    d = cert.a_over_d.denominator
    if cert.variant == VIOLATION:
        return ["certificate is a violation"]
    k = eigenvalue_order(cert.zeta, cert.a_over_d)
    if k != cert.order:
        problems.append(f"recorded order {cert.order} but zeta gives {k}")
    if cert.variant == WITNESS:
        comp = g.component(cert.witness)
        if comp.N % d:
            problems.append(f"{comp.id}: {d} does not divide N = {comp.N}")
        if k <= 0:
            problems.append("eigenvalue order is not positive")
    else:
        chi_sum = sum(chi_open(g, m) for m in cert.members)
        if any(g.component(m).N % d for m in cert.members):
            problems.append("a listed member has N not divisible by d")
        if chi_sum != cert.chi_sum or chi_sum >= 0:
            problems.append(f"chi-sum {chi_sum} is not negative or differs from recorded {cert.chi_sum}")
        if k == 0:
            problems.append("cluster zeta has order 0")
    return problems


@dataclass
class ConjectureReport:
    certificates: list[PoleCertificate] = field(default_factory=list)

    @property
    def violations(self) -> list[PoleCertificate]:
        return [c for c in self.certificates if c.variant == VIOLATION]

    @property
    def verdict(self) -> str:
        return "VIOLATION" if self.violations else "VERIFIED"

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "certificates": [c.to_json() for c in self.certificates]}


def check_conjecture(g: DualGraph, mono: MonodromyData, zeta: RationalFunctionS | None = None) -> ConjectureReport:
    if zeta is None:
        zeta = topological_zeta_local(g)
    poles = [p.value for p in poles_of(zeta)]
    report = ConjectureReport()
    for s0 in poles:
        report.certificates.append(
            check_pole(g, mono.groups, mono.clusters, s0, mono.generic_zetas, mono.cluster_zetas, poles)
        )
    return report
