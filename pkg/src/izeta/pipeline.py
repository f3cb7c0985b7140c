"""End-to-end analysis of an ideal or of a dual graph, producing a JSON-ready report."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

from .conjecture import ConjectureReport, check_conjecture, pi_multiple_text, reverify
from .exact_poly import PolynomialError, format_rational
from .graph_model import DualGraph, GraphError, ascii_diagram, derive_generic_counts, graph_to_dict, validate
from .monodromy import MonodromyData, MonodromyError, monodromy_from_graph, monodromy_from_resolution
from .principalization import (
    GenericPositionError,
    IdealError,
    Ideal,
    IrrationalCenterError,
    PrincipalizationError,
    ResolutionOutput,
    generic_member,
    principalize,
)
from .topo_zeta import RationalFunctionS, pole_characterization, poles_of, topological_zeta_local

SCHEMA_VERSION = 1
DEFAULT_SEED = 17

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VIOLATION = 2

INPUT_ERRORS = (PolynomialError, IdealError, IrrationalCenterError, GenericPositionError, GraphError)


class AnalysisError(RuntimeError):
    pass


@dataclass
class AnalysisReport:
    data: dict
    graph: DualGraph | None = None
    zeta: RationalFunctionS | None = None
    monodromy: MonodromyData | None = None
    conjecture: ConjectureReport | None = None
    resolution: ResolutionOutput | None = None
    warnings: list[str] = field(default_factory=list)
    timing: dict[str, float] = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        if "error" in self.data:
            return EXIT_ERROR
        if self.conjecture is not None and self.conjecture.violations:
            return EXIT_VIOLATION
        return EXIT_OK

    def to_json(self) -> str:
        return json.dumps(self.data, indent=2) + "\n"


def _poles_section(g: DualGraph, z: RationalFunctionS) -> dict:
    from_zeta = poles_of(z, g)
    from_graph = pole_characterization(g)
    agree = [p.value for p in from_zeta] == [p.value for p in from_graph]
    if not agree:
        raise AnalysisError(
            "pole methods disagree: zeta gives "
            + ", ".join(format_rational(p.value) for p in from_zeta)
            + "; graph gives "
            + ", ".join(format_rational(p.value) for p in from_graph)
        )
    return {
        "from_zeta": [p.to_json() for p in from_zeta],
        "from_graph": [p.to_json() for p in from_graph],
        "agree": agree,
    }


def _conjecture_section(rep: ConjectureReport, g: DualGraph) -> dict:
    out = rep.to_json()
    for cert, js in zip(rep.certificates, out["certificates"]):
        problems = reverify(cert, g) if cert.variant != "violation" else []
        js["reverified"] = not problems
        if problems:
            js["reverify_problems"] = problems
    return out


def _timed(timing: dict, key: str, fn, *args, **kwargs):
    start = time.perf_counter()
    out = fn(*args, **kwargs)
    timing[key] = time.perf_counter() - start
    return out


def analyze_ideal(text: str, seed: int = DEFAULT_SEED, conjecture: bool = True) -> AnalysisReport:
    report = AnalysisReport({"schema_version": SCHEMA_VERSION, "input": {"mode": "ideal", "ideal": text, "seed": seed}})
    data = report.data
    try:
        ideal = Ideal.from_text(text)
        res = _timed(report.timing, "principalize", principalize, ideal)
    except INPUT_ERRORS as exc:
        data["error"] = str(exc)
        return report
    report.resolution = res
    g = res.graph
    report.graph = g
    data["input"]["generators"] = [str(f) for f in ideal.generators]
    data["principal_part"] = str(res.principal_part)
    data["residual"] = [str(f) for f in res.residual.generators]
    data["graph"] = graph_to_dict(g)
    try:
        diag = validate(g)
        data["validation"] = {"ok": diag.ok, "checks": diag.to_json()}
        if not diag.ok:
            raise AnalysisError("principalization produced an invalid graph: " + diag.summary())
        direct = res.direct_multiplicities()
        if any(direct[c.id] != c.N for c in g.exceptional()):
            raise AnalysisError(f"incremental N disagrees with direct recomputation: {direct}")
        gm = _timed(report.timing, "generic_member", generic_member, res, seed)
        derived = derive_generic_counts(g)
        data["generic_member"] = {
            "polynomial": str(gm.polynomial),
            "coefficients": list(gm.coefficients),
            "counts": gm.counts,
            "matches_graph": gm.counts == derived,
        }
        if gm.counts != derived:
            raise AnalysisError(f"generic member counts {gm.counts} differ from derived {derived}")
        z = _timed(report.timing, "zeta", topological_zeta_local, g)
        report.zeta = z
        data["zeta"] = {"text": str(z), **z.to_json()}
        data["poles"] = _poles_section(g, z)
        mono = _timed(report.timing, "monodromy", monodromy_from_resolution, res)
        report.monodromy = mono
        data["monodromy"] = mono.to_json()
        report.warnings.extend(mono.warnings)
        if conjecture:
            rep = _timed(report.timing, "conjecture", check_conjecture, g, mono, z)
            report.conjecture = rep
            data["conjecture"] = _conjecture_section(rep, g)
    except GenericPositionError as exc:
        data["error"] = str(exc)
    except (AnalysisError, MonodromyError, PrincipalizationError) as exc:
        data["error"] = f"internal consistency failure: {exc}"
    data["warnings"] = report.warnings
    return report


def analyze_graph(g: DualGraph, zeta: bool = True, monodromy: bool = True, conjecture: bool = True) -> AnalysisReport:
    report = AnalysisReport({"schema_version": SCHEMA_VERSION, "input": {"mode": "graph"}})
    data = report.data
    report.graph = g
    data["graph"] = graph_to_dict(g)
    diag = validate(g)
    data["validation"] = {"ok": diag.ok, "checks": diag.to_json()}
    if not diag.ok:
        data["error"] = "graph failed validation:\n" + diag.summary()
        return report
    try:
        z = topological_zeta_local(g)
        report.zeta = z
        if zeta or conjecture:
            data["zeta"] = {"text": str(z), **z.to_json()}
            data["poles"] = _poles_section(g, z)
        if monodromy or conjecture:
            mono = monodromy_from_graph(g)
            report.monodromy = mono
            report.warnings.extend(mono.warnings)
            if monodromy:
                data["monodromy"] = mono.to_json()
            if conjecture:
                rep = check_conjecture(g, mono, z)
                report.conjecture = rep
                data["conjecture"] = _conjecture_section(rep, g)
    except (GraphError, AnalysisError, MonodromyError) as exc:
        data["error"] = str(exc)
    data["warnings"] = report.warnings
    return report


def render_text(report: AnalysisReport, timing: bool = False) -> str:
    """Human-readable summary of a report."""
    data = report.data
    lines = []
    inp = data.get("input", {})
    if inp.get("mode") == "ideal":
        lines.append(f"ideal: ({inp['ideal']})   seed {inp['seed']}")
    if report.graph is not None:
        lines.append("dual graph:")
        lines.append(ascii_diagram(report.graph))
    if report.zeta is not None and "zeta" in data:
        lines.append(f"topological zeta: {report.zeta}")
        poles = ", ".join(
            f"{p['value']}" + (f" (order {p['order']})" if p.get("order", 1) > 1 else "")
            for p in data["poles"]["from_zeta"]
        )
        lines.append(f"poles: {poles or 'none'}")
    if report.monodromy is not None and "monodromy" in data:
        mono = report.monodromy
        lines.append("contracted: " + (", ".join(mono.contracted) or "none"))
        for c in mono.clusters:
            lines.append(f"cluster {c.id} {{{', '.join(c.members)}}}: zeta {mono.cluster_zetas[c.id]}")
        for grp in mono.groups:
            degs = ", ".join(f"{m}:{grp.degrees[m]}" for m in grp.members)
            lines.append(f"image group {grp.id} ({grp.image}) degrees {{{degs}}}: generic zeta {mono.generic_zetas[grp.id]}")
    if report.conjecture is not None:
        for cert in report.conjecture.certificates:
            where = f"{cert.variant} {cert.witness}" if cert.witness else cert.variant
            lines.append(
                f"pole {format_rational(cert.pole)}: eigenvalue {cert.eigenvalue} "
                f"= {pi_multiple_text(cert.eigenvalue_pi_multiple)}, {where}, order {cert.order}"
            )
        lines.append(f"conjecture: {report.conjecture.verdict}")
    for w in report.warnings:
        lines.append(f"warning: {w}")
    if timing:
        for k, v in report.timing.items():
            lines.append(f"time {k}: {v * 1000:.1f} ms")
    return "\n".join(lines) + "\n"
