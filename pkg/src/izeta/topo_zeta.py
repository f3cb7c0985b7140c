"""Local topological zeta function of a dual graph, and its poles."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .exact_poly import UnivariatePoly, format_rational
from .graph_model import DualGraph, GraphError, chi_open, derive_generic_counts

# A denominator factor (p, q, m) stands for (p + q*s)^m with gcd(p, q) = 1, q > 0.
Factor = tuple[int, int, int]


def _primitive(nu: int, N: int) -> tuple[int, int, int]:
    g = gcd(nu, N)
    return nu // g, N // g, g


def _factor_text(p: int, q: int) -> str:
    return f"({p} + s)" if q == 1 else f"({p} + {q}*s)"


def _linear(p: int, q: int) -> UnivariatePoly:
    return UnivariatePoly([p, q])


@dataclass(frozen=True)
class RationalFunctionS:
    """``numerator / prod (p + q s)^m``, kept reduced."""

    numerator: UnivariatePoly
    factors: tuple[Factor, ...] = ()

    @classmethod
    def build(cls, numerator: UnivariatePoly, factors: dict[tuple[int, int], int]) -> "RationalFunctionS":
        num = numerator
        mult = {k: m for k, m in factors.items() if m > 0}
        if num.is_zero():
            return cls(num, ())
        for (p, q) in list(mult):
            root = Fraction(-p, q)
            while mult[(p, q)] > 0 and num(root) == 0:
                num = num.divexact(_linear(p, q))
                mult[(p, q)] -= 1
        return cls(num, tuple(sorted((p, q, m) for (p, q), m in mult.items() if m > 0)))

    @property
    def denominator(self) -> UnivariatePoly:
        d = UnivariatePoly([1])
        for p, q, m in self.factors:
            d = d * _linear(p, q) ** m
        return d

    def __call__(self, s) -> Fraction:
        s = Fraction(s)
        den = self.denominator(s)
        if den == 0:
            raise ZeroDivisionError(f"pole at s = {s}")
        return self.numerator(s) / den

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def __add__(self, other: "RationalFunctionS") -> "RationalFunctionS":
        return _sum_terms([(self.numerator, dict(((p, q), m) for p, q, m in self.factors)),
                           (other.numerator, dict(((p, q), m) for p, q, m in other.factors))])

    def to_string(self) -> str:
        num = self.numerator.to_string("s")
        if not self.factors:
            return num
        den = "*".join(_factor_text(p, q) + (f"^{m}" if m > 1 else "") for p, q, m in self.factors)
        return f"({num}) / ({den})"

    def __str__(self) -> str:
        return self.to_string()

    def to_json(self) -> dict:
        return {
            "numerator": [format_rational(c) for c in self.numerator.coeffs],
            "denominator": [format_rational(c) for c in self.denominator.coeffs],
            "denominator_factors": [[p, q, m] for p, q, m in self.factors],
        }

    @classmethod
    def from_json(cls, data: dict) -> "RationalFunctionS":
        num = UnivariatePoly(Fraction(c) for c in data["numerator"])
        return cls.build(num, {(p, q): m for p, q, m in data["denominator_factors"]})


def _sum_terms(terms: list[tuple[UnivariatePoly, dict[tuple[int, int], int]]]) -> RationalFunctionS:
    common: dict[tuple[int, int], int] = defaultdict(int)
    for _, fs in terms:
        for k, m in fs.items():
            common[k] = max(common[k], m)
    total = UnivariatePoly()
    for num, fs in terms:
        part = num
        for k, m in common.items():
            part = part * _linear(*k) ** (m - fs.get(k, 0))
        total = total + part
    return RationalFunctionS.build(total, dict(common))


def topological_zeta_local(g: DualGraph) -> RationalFunctionS:
    """Sum of chi(E_i open)/(nu_i + s N_i) over exceptional curves over the origin,
    plus 1/((nu_i + s N_i)(nu_j + s N_j)) over intersection points over the origin."""
    over = {c.id for c in g.components if c.over_origin}
    if not over:
        raise GraphError("origin not in support: no component lies over the origin")
    terms = []
    for c in g.components:
        if not c.over_origin:
            continue
        if not c.is_exceptional:
            raise GraphError(f"{c.id}: only exceptional components can lie over the origin")
        p, q, scale = _primitive(c.nu, c.N)
        terms.append((UnivariatePoly([Fraction(chi_open(g, c.id), scale)]), {(p, q): 1}))
    for a, b in g.edges:
        if a not in over and b not in over:
            continue
        ca, cb = g.component(a), g.component(b)
        pa, qa, sa = _primitive(ca.nu, ca.N)
        pb, qb, sb = _primitive(cb.nu, cb.N)
        fs: dict[tuple[int, int], int] = defaultdict(int)
        fs[(pa, qa)] += 1
        fs[(pb, qb)] += 1
        terms.append((UnivariatePoly([Fraction(1, sa * sb)]), dict(fs)))
    return _sum_terms(terms)


@dataclass(frozen=True)
class Pole:
    value: Fraction
    order: int | None  # None when read off the graph combinatorially
    components: tuple[str, ...]
    conditions: tuple[tuple[int, str], ...] = ()

    def to_json(self) -> dict:
        out = {"value": format_rational(self.value), "components": list(self.components)}
        if self.order is not None:
            out["order"] = self.order
        if self.conditions:
            out["conditions"] = [{"condition": k, "component": cid} for k, cid in self.conditions]
        return out


def candidate_components(g: DualGraph, value: Fraction) -> tuple[str, ...]:
    return tuple(c.id for c in g.components if Fraction(-c.nu, c.N) == value)


def poles_of(z: RationalFunctionS, g: DualGraph | None = None) -> list[Pole]:
    """Poles with orders, ascending; ``g`` supplies the contributing components."""
    out = []
    for p, q, m in z.factors:
        value = Fraction(-p, q)
        out.append(Pole(value, m, candidate_components(g, value) if g is not None else ()))
    return sorted(out, key=lambda pole: pole.value)


CONDITION_TEXT = {
    1: "weak-transform component",
    2: "meets the strict transform of a generic curve",
    3: "meets at least three other components",
}


def pole_characterization(g: DualGraph) -> list[Pole]:
    """Poles read off the graph combinatorially, each tagged with its reasons."""
    n = derive_generic_counts(g)
    reasons: dict[Fraction, list[tuple[int, str]]] = defaultdict(list)
    for c in g.components:
        value = Fraction(-c.nu, c.N)
        if not c.is_exceptional:
            reasons[Fraction(-1, c.N)].append((1, c.id))
            continue
        if n[c.id] > 0:
            reasons[value].append((2, c.id))
        if g.valence(c.id) >= 3:
            reasons[value].append((3, c.id))
    return [
        Pole(v, None, candidate_components(g, v), tuple(reasons[v]))
        for v in sorted(reasons)
    ]
