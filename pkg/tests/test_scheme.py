"""Charts, Jacobian criteria, blow-ups, covers, and the model pipeline."""

import pytest

from dpv.groebner import is_unit_ideal
from dpv.parsing import parse_model, parse_poly, parse_ring
from dpv.scheme import (
    ambient_check,
    blow_up,
    build_model,
    chart_singular_data,
    check_regular,
    double_cover,
    geometric_integrality,
    geometric_singular_dimension,
    jacobian_minors,
    nonsmooth_ideal,
    pth_root_closure,
    subschemes_disjoint,
)

PLANE = """
ring p=2 geom x:1 y:1 z:1 params s t
ambient wproj
"""

QUADRIC = """
ring p=2 geom x:1 y:1 z:1 w:1 params s
ambient wproj
hypersurface x^2+s*y^2+z*w
"""


def build(text, model_id="m", parents=None):
    return build_model(parse_model(text), model_id, parents or {}, None)


def test_standard_charts_weighted():
    m = build(
        """
        ring p=3 geom x0:1 x1:1 y:2 z:3 params s0 s1 s2 s3
        ambient wproj
        hypersurface s0*z^2+s1*y^3+s2*x0^6+s3*x1^6
        """
    )
    names = [c.name for c in m.charts]
    assert names == ["D+(x0)", "D+(x1)"]  # only weight-1 charts dehomogenize
    c = m.chart("D+(x0)")
    assert c.from_vars == ("x0",)
    assert tuple(c.ring.geom) == ("x1", "y", "z")
    assert c.codim == 1
    assert len(c.equations) == 1


def test_standard_charts_product():
    m = build(
        """
        ring p=2 geom x:1 y:1 z:1 u:1 v:1 params s t
        ambient multiproj 2 1
        hypersurface u*(x^2+s*z^2)+v*(y^2+t*z^2)
        """
    )
    names = [c.name for c in m.charts]
    assert len(names) == 6
    assert "D+(x)&D+(u)" in names
    c = m.chart("D+(z)&D+(v)")
    assert set(c.ring.geom) == {"x", "y", "u"}
    assert c.codim == 1


def test_chart_inversion_bookkeeping():
    m = build(QUADRIC, "q")
    c = m.chart("D+(y)")
    c2 = c.with_inversion(parse_poly(c.ring, "z"), "h")
    assert c2.ring.geom[-1] == "h_inv"
    rels = c2.inversion_relations()
    assert len(rels) == 1
    assert str(rels[0]) in ("z*h_inv + 1", "h_inv*z + 1")  # char 2: -1 = 1
    # one more variable; the inversion relation is counted by full_equations
    assert c2.codim == c.codim + 1
    assert len(c2.full_equations()) == len(c.full_equations()) + 1


def test_jacobian_minors_signs():
    # det with alternating signs: minor of [[fx fy],[gx gy]] is fx*gy - fy*gx
    ring = parse_ring("ring p=3 geom x y")
    f = parse_poly(ring, "x^2")
    g = parse_poly(ring, "y^2")
    minors = jacobian_minors([f, g], ring, 2, include_params=False)
    assert [str(m) for m in minors] == ["x*y"]  # 2x*2y = 4xy = xy mod 3


def test_jacobian_minors_with_parameter_columns():
    ring = parse_ring("ring p=3 geom x params s")
    f = parse_poly(ring, "x^3+s")
    # d/dx kills x^3 in char 3 and zero minors are dropped
    assert jacobian_minors([f], ring, 1, include_params=False) == []
    with_params = jacobian_minors([f], ring, 1, include_params=True)
    assert [str(m) for m in with_params] == ["1"]  # d/ds


def test_nonsmooth_ideal_smooth_chart_is_unit():
    m = build(
        """
        ring p=5 geom x:1 y:1 z:1 w:1
        ambient wproj
        hypersurface x^2+y^2+z^2+w^2
        """
    )
    for c in m.charts:
        assert c.codim == 1
        assert is_unit_ideal(nonsmooth_ideal(c))


def test_pth_root_closure_sharpens():
    ring = parse_ring("ring p=2 geom x y params s")
    closed = pth_root_closure([parse_poly(ring, "x^2+s^2*y^2")], None)
    assert [str(g) for g in closed] == ["x + s*y"]
    # s is not a square in F_2(s): nothing to extract
    fixed = pth_root_closure([parse_poly(ring, "x^2+s*y^2")], None)
    assert [str(g) for g in fixed] == ["x^2 + s*y^2"]


def test_blow_up_point_on_plane():
    plane = build(PLANE, "plane")
    m = blow_up(plane, "D+(z)", ("x", "y"), None, "bl", None)
    assert m.center_degree == 1
    names = [c.name for c in m.charts]
    assert names[0] == "D+(z)|v" and names[1] == "D+(z)|u"
    # the eliminable branch drops the substituted coordinate
    cv = m.chart("D+(z)|v")
    assert "x" not in cv.ring.geom or "y" not in cv.ring.geom
    # every parent chart is retained for coverage
    assert {"D+(x)", "D+(y)", "D+(z)"} <= set(names)
    assert all(c.provenance == "parent" for c in m.charts[2:])


def test_blow_up_keeps_relation_when_center_not_eliminable():
    plane = build(PLANE, "plane")
    m = blow_up(plane, "D+(z)", ("x^2+s", "y^2+t"), None, "bl", None)
    assert m.center_degree == 4
    cv = m.chart("D+(z)|v")
    assert set(cv.ring.geom) >= {"x", "y"}
    assert len(cv.equations) == 1
    assert str(cv.equations[0]) in ("y^2*v + x^2 + t*v + s", "v*y^2 + x^2 + t*v + s")


def test_blow_up_rejects_positive_dimensional_center():
    plane = build(PLANE, "plane")
    with pytest.raises(ValueError):
        blow_up(plane, "D+(z)", ("x", "x"), None, "bl", None)


def test_double_cover_charts_and_validation():
    decl = parse_model(
        """
        ring p=2 geom x:1 y:1 x':1 y':1 params t1 t2 t3 t4
        ambient multiproj 1 1
        doublecover bidegree 1 1 section x*y*x'^2+t1*x^2*x'^2+t2*y^2*x'^2+t3*x^2*y'^2+t4*y^2*y'^2
        """
    )
    m = build_model(decl, "dc", {}, None)
    assert len(m.charts) == 4
    c = m.chart("D+(y)&D+(y')")
    assert "w" in c.ring.geom
    assert len(c.equations) == 1
    assert c.equations[0].diff("w").is_zero()  # w^2 only: inseparable cover

    with pytest.raises(ValueError):
        bad = parse_model(
            """
            ring p=2 geom x:1 y:1 x':1 y':1 params t1
            ambient multiproj 1 1
            doublecover bidegree 1 1 section t1*x^2*x'^2*y^2
            """
        )
        build_model(bad, "dc2", {}, None)


def test_regularity_pipeline_positive_and_negative():
    # regular: the quadric
    q = build(QUADRIC, "q")
    verdict, per_chart = check_regular(q, None)
    assert verdict == "yes"
    assert all(r.verdict == "yes" for r in per_chart)
    # non-regular: a cone, singular at a rational point
    cone = build(
        """
        ring p=5 geom x:1 y:1 z:1 w:1
        ambient wproj
        hypersurface x^2+y^2+w^2
        """
    )
    verdict, per_chart = check_regular(cone, None)
    assert verdict == "no"
    bad = [r for r in per_chart if r.verdict == "no"]
    assert bad and bad[0].name == "D+(z)"


def test_geometric_singularity_vs_regularity():
    # x^2 + s*y^2 + z*w: regular over F_2(s) but geometrically singular
    q = build(QUADRIC, "q")
    dim, data = geometric_singular_dimension(q, None)
    assert dim == 0
    by_name = {d.name: d for d in data}
    assert by_name["D+(y)"].dim == 0
    assert sorted(by_name["D+(y)"].certificate) == ["w", "x^2 + s", "z"]
    assert by_name["D+(z)"].dim == -1


def test_geometric_integrality_needs_assumptions():
    q = build(QUADRIC, "q")
    full = geometric_integrality(q, ("proper", "H0=k"), None)
    assert full["reduced"] is True
    assert full["irreducible"] == "implied"
    assert full["integral"] is True
    assert full["witness"]["chart"]
    partial = geometric_integrality(q, (), None)
    assert partial["irreducible"] == "unchecked"
    assert partial["integral"] is False


def test_ambient_check_weighted_strata():
    covered = build(
        """
        ring p=3 geom x0:1 x1:1 y:2 z:3 params s0 s1 s2 s3
        ambient wproj
        hypersurface s0*z^2+s1*y^3+s2*x0^6+s3*x1^6
        extrachart name=U coords x0 x1 u invert u eq s0*u^2+s1*u^3+s2*x0^6+s3*x1^6
        """
    )
    rep = ambient_check(covered, None)
    assert rep.ok
    assert rep.coverage == "asserted"
    assert dict(rep.strata) == {2: True, 3: True}

    uncovered = build(
        """
        ring p=3 geom x0:1 x1:1 y:2 z:3 params s0 s1 s2 s3
        ambient wproj
        hypersurface s0*z^2+s1*y^3+s2*x0^6+s3*x1^6
        """
    )
    rep2 = ambient_check(uncovered, None)
    assert not rep2.ok
    assert rep2.coverage == "uncovered"


def test_subschemes_disjoint_toy_cases():
    plane = build(PLANE, "plane")
    ring = plane.ring
    point = [parse_poly(ring, "x"), parse_poly(ring, "y")]
    line = [parse_poly(ring, "z")]
    rep = subschemes_disjoint(plane, point, line, None)
    assert rep.disjoint is True
    assert all(v == "unit" for _, v in rep.chart_certificates)

    meet = subschemes_disjoint(plane, [parse_poly(ring, "x")], [parse_poly(ring, "y")], None)
    assert meet.disjoint is False


def test_chart_singular_data_certificate_reduces():
    q = build(QUADRIC, "q")
    data = chart_singular_data(q.chart("D+(y)"), None)
    assert data.dim == 0
    # the certificate basis cuts exactly the inseparable point
    assert "x^2 + s" in data.certificate
