"""Example records, expected classification rows, and the verification runner.

Each record carries a model declaration in the small text grammar, the
expected row data (Picard rank, K^2, h^1, normalization type: the last three
are expected-only and never claimed as computed), the assumptions under which
irreducibility is implied, and instructions for computing K^2 exactly.

verify_example runs the chart-by-chart pipeline for one record and diffs the
results against the expected row; verify_all runs every in-scope record.
Reports serialize to JSON deterministically (schema 1); wall times are kept
out of the JSON unless explicitly requested so consecutive runs are
byte-identical.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .groebner import Inconclusive, Limits
from .lattice import (
    blowup_k2,
    cover_lattice,
    hypersurface_lattice,
    k2_weighted_ci,
    product,
)
from .parsing import parse_model, parse_poly
from .scheme import (
    SurfaceModel,
    ambient_check,
    build_model,
    check_regular,
    geometric_integrality,
    geometric_singular_dimension,
    is_geometrically_normal,
    subschemes_disjoint,
)


@dataclass(frozen=True)
class ExpectedRow:
    table: int  # classification table: 1 (p=3) or 2 (p=2)
    row: str
    p: int
    rho: int
    k2: int
    h1: int
    normalization: str
    extremal_rays: str | None = None
    regular: bool = True
    geom_integral: bool = True
    geom_normal: bool = False


@dataclass(frozen=True)
class ExampleRecord:
    record_id: str
    expected: ExpectedRow
    model_text: str
    k2_data: dict
    assumptions: tuple[str, ...] = ("proper", "H0=k", "Cohen-Macaulay")
    aux_models: tuple[tuple[str, str], ...] = ()  # (name, model text), in build order
    extras: str | None = None
    extra_data: tuple = ()
    notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class OutOfScopeRow:
    row: str
    expected: ExpectedRow
    reason: str
    has_example: bool


# ---------------------------------------------------------------------------
# model declarations
# ---------------------------------------------------------------------------

_SEXTIC = """
ring p={p} geom x0:1 x1:1 y:2 z:3 params s0 s1 s2 s3
ambient wproj
hypersurface s0*z^2+s1*y^3+s2*x0^6+s3*x1^6
extrachart name=U coords x0 x1 u invert u eq s0*u^2+s1*u^3+s2*x0^6+s3*x1^6
"""

_E1_2 = """
ring p=2 geom x0:1 x1:1 x2:1 y:2 params s0 s1 s2 t
ambient wproj
hypersurface y^2+t*x0^2*y+s0*x0^4+s1*x1^4+s2*x2^4
"""

_E1_3 = """
ring p=3 geom x:1 y:1 z:1 w:1 params s t
ambient wproj
hypersurface x^2*y+x*y^2+s*z^3+t*w^3
"""

_E1_4 = """
ring p=2 geom x0:1 x1:1 x2:1 x3:1 x4:1 params s1 s2 s3 s4 t1 t2 t3 t4
ambient wproj
hypersurface x0*x1+s1*x1^2+s2*x2^2+s3*x3^2+s4*x4^2
hypersurface x0*x2+t1*x1^2+t2*x2^2+t3*x3^2+t4*x4^2
"""

_E2_2 = """
ring p=2 geom x0:1 x1:1 x2:1 y:2 params s0 s1 s2 t0 t1 t2 u0 u1 u2
ambient wproj
hypersurface y^2+(s0*x0^2+s1*x1^2+s2*x2^2)*y+(t0*x0^2+t1*x1^2+t2*x2^2)*(u0*x0^2+u1*x1^2+u2*x2^2)
"""

# Blow-up of the two-quadric record at the rational point [1:0:0:0:0].  On
# D+(x0) the coordinates x3, x4 generate the maximal ideal of the center
# locally but cut three extra closed points globally; inverting h removes
# them (h is nonzero at the center and vanishes on all three).
_E2_3 = """
ring p=2 geom x0:1 x1:1 x2:1 x3:1 x4:1 params s1 s2 s3 s4 t1 t2 t3 t4
ambient wproj
blowup parent=e1-4 chart=D+(x0) center x3 ; x4
localize (s2*t1+s1*t2)^2*x1^3+(t2^2+s1*s2)*x1+s2
"""

_E2_4 = """
ring p=2 geom x:1 y:1 x':1 y':1 params t1 t2 t3 t4
ambient multiproj 1 1
doublecover bidegree 1 1 section x*y*x'^2+t1*x^2*x'^2+t2*y^2*x'^2+t3*x^2*y'^2+t4*y^2*y'^2
"""

_E2_5_PENCIL = """
ring p=2 geom x:1 y:1 z:1 u:1 v:1 params s t
ambient multiproj 2 1
hypersurface u*(x^2+s*z^2)+v*(y^2+t*z^2)
"""

_PLANE = """
ring p=2 geom x:1 y:1 z:1 params s t
ambient wproj
"""

_E2_5_BLOWUP = """
ring p=2 geom x:1 y:1 z:1 params s t
ambient wproj
blowup parent=plane chart=D+(z) center x^2+s ; y^2+t
"""

_QUADRIC = """
ring p=2 geom x:1 y:1 z:1 w:1 params s
ambient wproj
hypersurface x^2+s*y^2+z*w
"""

_E2_6 = """
ring p=2 geom x:1 y:1 z:1 w:1 params s
ambient wproj
blowup parent=quadric chart=D+(y) center z ; w
"""


def _row(table, row, p, rho, k2, h1, normalization, rays=None, **flags):
    return ExpectedRow(table, row, p, rho, k2, h1, normalization, rays, **flags)


_RECORDS: dict[str, ExampleRecord] = {}


def _add(record: ExampleRecord):
    if record.record_id in _RECORDS:
        raise ValueError(f"duplicate record id {record.record_id}")
    _RECORDS[record.record_id] = record


_add(
    ExampleRecord(
        "e1-1-p3",
        _row(1, "1-1", 3, 1, 1, 0, "P^2"),
        _SEXTIC.format(p=3),
        {"kind": "weighted_ci", "weights": (1, 1, 2, 3), "degrees": (6,)},
        notes=(
            "the chart U with y and z inverted covers the locus missed by the weight-1 charts",
        ),
    )
)
_add(
    ExampleRecord(
        "e1-1-p2",
        _row(2, "1-1", 2, 1, 1, 0, "P^2"),
        _SEXTIC.format(p=2),
        {"kind": "weighted_ci", "weights": (1, 1, 2, 3), "degrees": (6,)},
        notes=(
            "the chart U with y and z inverted covers the locus missed by the weight-1 charts",
        ),
    )
)
_add(
    ExampleRecord(
        "e1-2",
        _row(2, "1-2", 2, 1, 2, 0, "P(1,1,2) or P^1 x P^1"),
        _E1_2,
        {"kind": "weighted_ci", "weights": (1, 1, 1, 2), "degrees": (4,)},
    )
)
_add(
    ExampleRecord(
        "e1-3",
        _row(1, "1-3", 3, 1, 3, 0, "P(1,1,3)"),
        _E1_3,
        {"kind": "weighted_ci", "weights": (1, 1, 1, 1), "degrees": (3,)},
        notes=(
            "the geometric singular locus is the line x = y with s^(1/3)z + t^(1/3)w = x "
            "over the algebraic closure; the coordinate line x = z = 0 is smooth on D+(w)",
        ),
    )
)
_add(
    ExampleRecord(
        "e1-4",
        _row(2, "1-4", 2, 1, 4, 0, "P^2 or P^1 x P^1"),
        _E1_4,
        {"kind": "weighted_ci", "weights": (1, 1, 1, 1, 1), "degrees": (2, 2)},
    )
)
_add(
    ExampleRecord(
        "e2-2",
        _row(2, "2-2", 2, 2, 2, 0, "P^1 x P^1", "C+C"),
        _E2_2,
        {"kind": "weighted_ci", "weights": (1, 1, 1, 2), "degrees": (4,)},
        extras="disjoint_curves",
        extra_data=(
            ("y+s0*x0^2+s1*x1^2+s2*x2^2", "t0*x0^2+t1*x1^2+t2*x2^2"),
            (
                "y+t0*x0^2+t1*x1^2+t2*x2^2",
                "y+(s0+u0)*x0^2+(s1+u1)*x1^2+(s2+u2)*x2^2",
            ),
        ),
    )
)
_add(
    ExampleRecord(
        "e2-3",
        _row(2, "2-3", 2, 2, 3, 0, "P_{P^1}(O + O(1))", "B+C"),
        _E2_3,
        {
            "kind": "blow_up",
            "parent": {"kind": "weighted_ci", "weights": (1, 1, 1, 1, 1), "degrees": (2, 2)},
        },
        aux_models=(("e1-4", _E1_4),),
        notes=(
            "verified through the blow-up presentation; the cubic-hypersurface "
            "description of this row is expected data only",
        ),
    )
)
_add(
    ExampleRecord(
        "e2-4",
        _row(2, "2-4", 2, 2, 4, 0, "P^1 x P^1", "C+C"),
        _E2_4,
        {"kind": "cover", "factors": (1, 1), "bidegree": (1, 1)},
    )
)
_add(
    ExampleRecord(
        "e2-5-pencil",
        _row(2, "2-5", 2, 2, 5, 0, "P_{P^1}(O + O(1))", "B+C"),
        _E2_5_PENCIL,
        {"kind": "product_hypersurface", "factors": (2, 1), "multidegree": (2, 1)},
        extras="cross_model",
        extra_data=("e2-5-blowup",),
    )
)
_add(
    ExampleRecord(
        "e2-5-blowup",
        _row(2, "2-5", 2, 2, 5, 0, "P_{P^1}(O + O(1))", "B+C"),
        _E2_5_BLOWUP,
        {
            "kind": "blow_up",
            "parent": {"kind": "weighted_ci", "weights": (1, 1, 1), "degrees": ()},
        },
        aux_models=(("plane", _PLANE),),
        extras="cross_model",
        extra_data=("e2-5-pencil",),
    )
)
_add(
    ExampleRecord(
        "e2-6",
        _row(2, "2-6", 2, 2, 6, 0, "P_{P^1}(O + O(2))", "B+C"),
        _E2_6,
        {
            "kind": "blow_up",
            "parent": {"kind": "weighted_ci", "weights": (1, 1, 1, 1), "degrees": (2,)},
        },
        aux_models=(("quadric", _QUADRIC),),
    )
)

RECORD_ORDER = (
    "e1-1-p3",
    "e1-3",
    "e1-1-p2",
    "e1-2",
    "e1-4",
    "e2-2",
    "e2-3",
    "e2-4",
    "e2-5-pencil",
    "e2-5-blowup",
    "e2-6",
)

OUT_OF_SCOPE = (
    OutOfScopeRow(
        "1-1-i",
        _row(2, "1-1-i", 2, 1, 1, 1, "P^2"),
        "irregular surface (h^1 = 1); outside the verification pipeline's assumptions",
        has_example=True,
    ),
    OutOfScopeRow(
        "1-2-i",
        _row(2, "1-2-i", 2, 1, 2, 1, "P(1,1,2)"),
        "no known example for this row",
        has_example=False,
    ),
)


def record_ids() -> tuple[str, ...]:
    return RECORD_ORDER


def coverage_selftest() -> list[str]:
    """Every expected row with an in-scope example must be covered by a
    record, seen rows must be consistent, and ids must be well-formed."""
    problems = []
    seen_rows = set()
    for rid in RECORD_ORDER:
        rec = _RECORDS.get(rid)
        if rec is None:
            problems.append(f"missing record {rid}")
            continue
        seen_rows.add((rec.expected.table, rec.expected.row))
        if rec.expected.p not in (2, 3):
            problems.append(f"{rid}: characteristic {rec.expected.p}")
    expected_rows = {(1, "1-1"), (1, "1-3"), (2, "1-1"), (2, "1-2"), (2, "1-4"),
                     (2, "2-2"), (2, "2-3"), (2, "2-4"), (2, "2-5"), (2, "2-6")}
    missing = expected_rows - seen_rows
    if missing:
        problems.append(f"rows with no record: {sorted(missing)}")
    out_rows = {r.row for r in OUT_OF_SCOPE}
    if out_rows != {"1-1-i", "1-2-i"}:
        problems.append("out-of-scope accounting incomplete")
    return problems


def load_example(record_id: str, limits: Limits | None = None) -> tuple[ExampleRecord, SurfaceModel]:
    """Parse and build the model for a record (with its parents)."""
    rec = _RECORDS.get(record_id)
    if rec is None:
        for row in OUT_OF_SCOPE:
            if record_id == row.row or record_id == f"e{row.row}":
                raise KeyError(f"{record_id!r} is out of scope: {row.reason}")
        raise KeyError(f"unknown example id {record_id!r}")
    parents: dict[str, SurfaceModel] = {}
    for name, text in rec.aux_models:
        parents[name] = build_model(parse_model(text), name, parents, limits)
    model = build_model(parse_model(rec.model_text), record_id, parents, limits)
    return rec, model


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------


@dataclass
class CheckResult:
    name: str
    status: str  # "pass" | "fail" | "inconclusive"
    expected: object = None
    computed: object = None
    certificate: object = None
    note: str = ""
    seconds: float = 0.0


@dataclass
class VerificationReport:
    record_id: str
    checks: list[CheckResult] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    expected: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        if any(c.status == "fail" for c in self.checks):
            return "fail"
        if any(c.status == "inconclusive" for c in self.checks):
            return "inconclusive"
        return "pass"

    def check(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(f"no check named {name!r}")

    def to_json(self, include_timings: bool = False) -> dict:
        return {
            "schema": 1,
            "id": self.record_id,
            "checks": [
                {"name": c.name, "status": c.status, "note": c.note}
                for c in self.checks
            ],
            "certificates": [
                {"check": c.name, "certificate": c.certificate}
                for c in self.checks
                if c.certificate is not None
            ],
            "expected": self.expected,
            "computed": {
                c.name: c.computed for c in self.checks if c.computed is not None
            },
            "notes": list(self.notes),
            "timings": (
                {c.name: round(c.seconds, 3) for c in self.checks}
                if include_timings
                else {}
            ),
        }


def _expected_dict(rec: ExampleRecord) -> dict:
    e = rec.expected
    return {
        "table": e.table,
        "row": e.row,
        "p": e.p,
        "k2": e.k2,
        "flags": {
            "regular": "yes" if e.regular else "no",
            "geom_integral": "yes" if e.geom_integral else "no",
            "geom_normal": "yes" if e.geom_normal else "no",
        },
        "expected_only": {
            "rho": e.rho,
            "h1": e.h1,
            "normalization": e.normalization,
            "extremal_rays": e.extremal_rays,
        },
    }


def compute_k2(k2_data: dict, model: SurfaceModel) -> tuple[int, dict]:
    """Exact K^2 from a record's presentation, with a certificate of the
    arithmetic used."""
    kind = k2_data["kind"]
    if kind == "weighted_ci":
        w, d = list(k2_data["weights"]), list(k2_data["degrees"])
        val = k2_weighted_ci(w, d)
        assert val.denominator == 1
        return int(val), {"method": "weighted_ci", "weights": w, "degrees": d}
    if kind == "blow_up":
        parent_val, parent_cert = compute_k2(k2_data["parent"], model.parent)
        assert model.center_degree is not None
        val = blowup_k2(parent_val, model.center_degree)
        return val, {
            "method": "blow_up",
            "parent": parent_cert,
            "parent_k2": parent_val,
            "center_degree": model.center_degree,
        }
    if kind == "cover":
        lat = cover_lattice(list(k2_data["factors"]), list(k2_data["bidegree"]))
        val = product(lat, lat.k(), lat.k())
        return val, {
            "method": "cover_lattice",
            "gram": [list(r) for r in lat.gram],
            "canonical": list(lat.canonical),
        }
    if kind == "product_hypersurface":
        lat = hypersurface_lattice(
            list(k2_data["factors"]), list(k2_data["multidegree"])
        )
        val = product(lat, lat.k(), lat.k())
        return val, {
            "method": "hypersurface_lattice",
            "gram": [list(r) for r in lat.gram],
            "canonical": list(lat.canonical),
        }
    raise ValueError(f"unknown k2 method {kind!r}")


ALL_CHECKS = ("ambient", "regular", "geom_normal", "geom_integral", "k2", "extras")


def verify_example(
    record_id: str,
    checks: tuple[str, ...] | None = None,
    limits: Limits | None = None,
) -> VerificationReport:
    """Run the verification pipeline for one record and diff against the
    expected row.  Always returns a report; hard failures are recorded as
    failed checks."""
    rec, model = load_example(record_id, limits)
    selected = tuple(checks) if checks is not None else ALL_CHECKS
    for c in selected:
        if c not in ALL_CHECKS:
            raise ValueError(f"unknown check {c!r}")
    report = VerificationReport(record_id=record_id, expected=_expected_dict(rec))
    report.notes.extend(rec.notes)
    report.notes.extend(model.notes)
    report.notes.append(
        "rho, h1, normalization and extremal-ray data are expected values, not computed"
    )

    if "ambient" in selected:
        t0 = time.perf_counter()
        try:
            amb = ambient_check(model, limits)
            status = "pass" if amb.ok else "fail"
            cert = {
                "strata": [[d, bool(ok)] for d, ok in amb.strata],
                "coverage": amb.coverage,
            }
            result = CheckResult(
                "ambient",
                status,
                expected={"ok": True},
                computed={"ok": amb.ok, "coverage": amb.coverage},
                certificate=cert,
                note="; ".join(amb.notes),
            )
        except Inconclusive as exc:
            result = CheckResult("ambient", "inconclusive", note=str(exc))
        result.seconds = time.perf_counter() - t0
        report.checks.append(result)

    if "regular" in selected:
        t0 = time.perf_counter()
        verdict, per_chart = check_regular(model, limits)
        expected = "yes" if rec.expected.regular else "no"
        status = (
            "inconclusive"
            if verdict == "inconclusive"
            else ("pass" if verdict == expected else "fail")
        )
        cert = [
            {
                "chart": r.name,
                "provenance": r.provenance,
                "verdict": r.verdict,
                "detail": r.detail,
            }
            for r in per_chart
        ]
        report.checks.append(
            CheckResult(
                "regular",
                status,
                expected=expected,
                computed=verdict,
                certificate=cert,
                seconds=time.perf_counter() - t0,
            )
        )

    if "geom_normal" in selected:
        t0 = time.perf_counter()
        normal, data = is_geometrically_normal(model, limits)
        dim = None if normal is None else max(d.dim for d in data)
        expected = "yes" if rec.expected.geom_normal else "no"
        if normal is None:
            status, computed = "inconclusive", None
        else:
            computed = "yes" if normal else "no"
            status = "pass" if computed == expected else "fail"
        cert = [
            {
                "chart": d.name,
                "provenance": d.provenance,
                "dim": d.dim,
                "basis": list(d.certificate),
                "detail": d.detail,
            }
            for d in data
        ]
        report.checks.append(
            CheckResult(
                "geom_normal",
                status,
                expected=expected,
                computed={"geom_normal": computed, "singular_dimension": dim},
                certificate=cert,
                seconds=time.perf_counter() - t0,
            )
        )

    if "geom_integral" in selected:
        t0 = time.perf_counter()
        res = geometric_integrality(model, rec.assumptions, limits)
        expected = "yes" if rec.expected.geom_integral else "no"
        computed = "yes" if res["integral"] else "no"
        status = "pass" if computed == expected else "fail"
        report.checks.append(
            CheckResult(
                "geom_integral",
                status,
                expected=expected,
                computed={
                    "geom_integral": computed,
                    "reduced": res["reduced"],
                    "irreducible": res["irreducible"],
                },
                certificate={"smooth_point_witness": res["witness"]},
                note="irreducibility implied by regularity with properness and H0 = k on record",
                seconds=time.perf_counter() - t0,
            )
        )

    if "k2" in selected:
        t0 = time.perf_counter()
        val, cert = compute_k2(rec.k2_data, model)
        status = "pass" if val == rec.expected.k2 else "fail"
        report.checks.append(
            CheckResult(
                "k2",
                status,
                expected=rec.expected.k2,
                computed=val,
                certificate=cert,
                seconds=time.perf_counter() - t0,
            )
        )

    if "extras" in selected and rec.extras is not None:
        t0 = time.perf_counter()
        report.checks.append(_run_extras(rec, model, limits))
        report.checks[-1].seconds = time.perf_counter() - t0

    return report


def _run_extras(rec: ExampleRecord, model: SurfaceModel, limits) -> CheckResult:
    if rec.extras == "disjoint_curves":
        a_texts, b_texts = rec.extra_data
        a_gens = [parse_poly(model.ring, t) for t in a_texts]
        b_gens = [parse_poly(model.ring, t) for t in b_texts]
        rep = subschemes_disjoint(model, a_gens, b_gens, limits)
        if rep.disjoint is None:
            return CheckResult("extras", "inconclusive", note="; ".join(rep.notes))
        status = "pass" if rep.disjoint else "fail"
        return CheckResult(
            "extras",
            status,
            expected={"disjoint": True},
            computed={"disjoint": rep.disjoint},
            certificate={
                "kind": "disjointness",
                "charts": [[name, verdict] for name, verdict in rep.chart_certificates],
            },
            note="two disjoint curves witness Picard rank >= 2",
        )
    if rec.extras == "cross_model":
        (sibling_id,) = rec.extra_data
        mine = verdict_tuple(rec.record_id, limits)
        theirs = verdict_tuple(sibling_id, limits)
        status = "pass" if mine == theirs else "fail"
        return CheckResult(
            "extras",
            status,
            expected={"agrees_with": sibling_id},
            computed={"this": list(mine), "sibling": list(theirs)},
            certificate={
                "kind": "cross_model",
                "tuple_fields": ["regular", "geom_normal", "geom_integral", "k2"],
            },
            note="independent presentations of the same row must agree",
        )
    raise ValueError(f"unknown extras {rec.extras!r}")


def verdict_tuple(record_id: str, limits: Limits | None = None):
    """(regular, geom_normal, geom_integral, K^2) for cross-model checks."""
    rec, model = load_example(record_id, limits)
    reg, _ = check_regular(model, limits)
    normal, _ = is_geometrically_normal(model, limits)
    integ = geometric_integrality(model, rec.assumptions, limits)
    k2, _ = compute_k2(rec.k2_data, model)
    normal_txt = None if normal is None else ("yes" if normal else "no")
    return (reg, normal_txt, "yes" if integ["integral"] else "no", k2)


@dataclass
class Summary:
    reports: list[VerificationReport]
    skipped: list[tuple[str, str]]  # out-of-scope rows with reasons
    seconds: float

    @property
    def mismatches(self) -> int:
        return sum(1 for r in self.reports if r.status == "fail")

    @property
    def inconclusive(self) -> int:
        return sum(1 for r in self.reports if r.status == "inconclusive")

    @property
    def exit_code(self) -> int:
        if self.mismatches:
            return 1
        if self.inconclusive:
            return 2
        return 0


def verify_all(
    p: int | None = None,
    limits: Limits | None = None,
    threads: int | None = None,
) -> Summary:
    """Verify every in-scope record (optionally restricted to one
    characteristic), in the fixed catalogue order."""
    problems = coverage_selftest()
    if problems:
        raise RuntimeError("catalogue self-test failed: " + "; ".join(problems))
    ids = [rid for rid in RECORD_ORDER if p is None or _RECORDS[rid].expected.p == p]
    if threads is None:
        threads = int(os.environ.get("DPV_THREADS", "1"))
    t0 = time.perf_counter()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            reports = list(pool.map(lambda r: verify_example(r, None, limits), ids))
    else:
        reports = [verify_example(rid, None, limits) for rid in ids]
    skipped = [
        (row.row, row.reason)
        for row in OUT_OF_SCOPE
        if p is None or row.expected.p == p
    ]
    return Summary(reports=reports, skipped=skipped, seconds=time.perf_counter() - t0)
