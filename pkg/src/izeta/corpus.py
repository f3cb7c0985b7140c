"""Case directories and a generator of random test ideals.

A case directory holds ``<name>.ideal`` (the generators, comma separated;
lines starting with ``#`` are ignored) or ``<name>.graph.json`` files, each
optionally accompanied by ``<name>.expected.json`` with any of the keys
``numerical_data``, ``poles``, ``zeta``, ``verdict``, ``contracted``,
``cluster_zetas``, ``generic_zetas`` and ``a_campo``.
"""

from __future__ import annotations

import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .exact_poly import BivariatePoly
from .graph_model import chi_open, from_json
from .monodromy import CyclotomicFactored
from .pipeline import DEFAULT_SEED, AnalysisReport, analyze_graph, analyze_ideal
from .principalization import Ideal, IrrationalCenterError, blow_up_point, generic_member
from .topo_zeta import topological_zeta_local


@dataclass(frozen=True)
class Case:
    name: str
    kind: str  # "ideal" or "graph"
    source: Path
    expected: Path | None = None


@dataclass
class CaseResult:
    name: str
    passed: bool
    failures: list[str] = field(default_factory=list)
    verdict: str | None = None


def load_cases(directory: str | Path) -> list[Case]:
    root = Path(directory)
    if not root.is_dir():
        raise FileNotFoundError(f"no such directory: {root}")
    cases = []
    for path in sorted(root.iterdir()):
        if path.name.endswith(".ideal"):
            name, kind = path.name[: -len(".ideal")], "ideal"
        elif path.name.endswith(".graph.json"):
            name, kind = path.name[: -len(".graph.json")], "graph"
        else:
            continue
        expected = root / f"{name}.expected.json"
        cases.append(Case(name, kind, path, expected if expected.exists() else None))
    return cases


def read_ideal_file(path: Path) -> str:
    lines = [l.strip() for l in path.read_text().splitlines()]
    return " ".join(l for l in lines if l and not l.startswith("#"))


def a_campo_zeta(g) -> CyclotomicFactored:
    """prod over exceptional curves of (1 - t^N)^chi(E open)."""
    return CyclotomicFactored.from_mapping([(c.N, chi_open(g, c.id)) for c in g.exceptional()])


def invariant_failures(report: AnalysisReport, seeds=(1, 2, 3)) -> list[str]:
    """Structural checks on a finished ideal analysis."""
    out = []
    res, g = report.resolution, report.graph
    data = report.data
    if not data.get("validation", {}).get("ok"):
        out.append("graph validation failed")
    if not data.get("poles", {}).get("agree"):
        out.append("pole methods disagree")
    for cert in data.get("conjecture", {}).get("certificates", []):
        if not cert.get("reverified"):
            out.append(f"certificate for {cert['pole']} does not re-verify")
    if res is None:
        return out
    derived = {c.id: c.n_generic for c in g.exceptional()}
    for seed in seeds:
        counts = generic_member(res, seed).counts
        if counts != derived:
            out.append(f"seed {seed}: generic member counts {counts} != {derived}")
    z = topological_zeta_local(g)
    first = g.exceptional()[0].id
    extras = [("free point", res.free_point(first))]
    crossing = next((s for s in res.sites.values() if len(s.exceptional) == 2), None)
    if crossing is not None:
        extras.append(("intersection point", (crossing.chart, crossing.point)))
    for label, (chart, point) in extras:
        bigger = blow_up_point(res, chart, point)
        if topological_zeta_local(bigger.graph) != z:
            out.append(f"zeta changed after blowing up a {label}")
    if res.r == 1 and report.monodromy is not None:
        cl = report.monodromy.clusters
        if len(cl) != 1 or report.monodromy.cluster_zetas[cl[0].id] != a_campo_zeta(g):
            out.append("cluster zeta differs from the classical formula")
    return out


def _compare_expected(report: AnalysisReport, expected: dict) -> list[str]:
    out = []
    data = report.data
    g = report.graph

    def check(key, actual):
        if key in expected and expected[key] != actual:
            out.append(f"{key}: expected {expected[key]!r}, got {actual!r}")

    if g is not None:
        check("numerical_data", [[c.N, c.nu] for c in g.exceptional()])
    check("poles", [p["value"] for p in data.get("poles", {}).get("from_zeta", [])])
    check("zeta", data.get("zeta", {}).get("text"))
    check("verdict", data.get("conjecture", {}).get("verdict"))
    mono = report.monodromy
    if mono is not None:
        check("contracted", mono.contracted)
        check("cluster_zetas", [str(mono.cluster_zetas[c.id]) for c in mono.clusters])
        check("generic_zetas", [str(mono.generic_zetas[grp.id]) for grp in mono.groups])
    if "a_campo" in expected and g is not None:
        check("a_campo", str(a_campo_zeta(g)))
    return out


def run_case(case: Case, seed: int = DEFAULT_SEED) -> CaseResult:
    try:
        if case.kind == "ideal":
            report = analyze_ideal(read_ideal_file(case.source), seed=seed)
        else:
            report = analyze_graph(from_json(case.source.read_text()))
        failures = []
        if "error" in report.data:
            failures.append(report.data["error"])
        else:
            if report.conjecture is not None and report.conjecture.violations:
                failures.append("conjecture violation")
            if case.kind == "ideal":
                failures.extend(invariant_failures(report))
        if case.expected is not None:
            failures.extend(_compare_expected(report, json.loads(case.expected.read_text())))
        verdict = report.conjecture.verdict if report.conjecture else None
        return CaseResult(case.name, not failures, failures, verdict)
    except Exception as exc:  # malformed case files are reported, not fatal
        return CaseResult(case.name, False, [f"{type(exc).__name__}: {exc}"])


def run_corpus(cases: list[Case], jobs: int = 1, seed: int = DEFAULT_SEED) -> list[CaseResult]:
    if jobs <= 1:
        return [run_case(c, seed) for c in cases]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run_case, cases, [seed] * len(cases)))


def summary_table(results: list[CaseResult]) -> str:
    width = max([len(r.name) for r in results] + [4])
    lines = [f"{'case':<{width}}  result  verdict"]
    for r in results:
        lines.append(f"{r.name:<{width}}  {'pass' if r.passed else 'FAIL':<6}  {r.verdict or '-'}")
        lines.extend(f"{'':<{width}}    {msg}" for msg in r.failures)
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} passed")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# random ideals
# --------------------------------------------------------------------------


def _monomial(rng: random.Random, top: int = 6) -> BivariatePoly:
    while True:
        a, b = rng.randint(0, top), rng.randint(0, top)
        if a + b:
            return BivariatePoly.monomial(a, b)


def _coefficient(rng: random.Random) -> int:
    return rng.choice([-1, 1]) * rng.randint(1, 3)


def _binomial(rng: random.Random) -> BivariatePoly:
    while True:
        p = _monomial(rng, 4).scale(_coefficient(rng)) + _monomial(rng, 4).scale(_coefficient(rng))
        if not p.is_zero() and len(p.terms) == 2:
            return p


def random_monomial_ideal(rng: random.Random) -> Ideal:
    return Ideal(tuple(_monomial(rng) for _ in range(rng.randint(1, 4))))


def random_binomial_pair(rng: random.Random) -> Ideal:
    h = BivariatePoly.monomial(rng.randint(0, 2), rng.randint(0, 2))
    if rng.random() < 0.4:
        h = h * (BivariatePoly.y() - BivariatePoly.monomial(rng.randint(1, 3), 0).scale(_coefficient(rng)))
    return Ideal((h * _binomial(rng), h * _binomial(rng)))


def random_principal_curve(rng: random.Random) -> Ideal:
    f = BivariatePoly.monomial(rng.randint(0, 2), rng.randint(0, 2))
    for _ in range(rng.randint(1, 2)):
        p, q = rng.randint(1, 4), rng.randint(1, 5)
        f = f * (BivariatePoly.monomial(0, p) - BivariatePoly.monomial(q, 0).scale(_coefficient(rng)))
    return Ideal((f,))


GENERATORS = (random_monomial_ideal, random_binomial_pair, random_principal_curve)


def generate_corpus(count: int = 60, seed: int = 2024, max_blowups: int = 40, kinds=GENERATORS) -> list[str]:
    """Ideal strings accepted by the rational-center principalizer, deduplicated."""
    from .principalization import Principalizer, PrincipalizationError

    rng = random.Random(seed)
    out: list[str] = []
    seen = set()
    while len(out) < count:
        ideal = kinds[len(out) % len(kinds)](rng)
        text = ideal.text()
        if text in seen:
            continue
        seen.add(text)
        try:
            Principalizer(ideal, max_blowups=max_blowups).run()
        except (IrrationalCenterError, PrincipalizationError, ValueError):
            continue
        out.append(text)
    return out
