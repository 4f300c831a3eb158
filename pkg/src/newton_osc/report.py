"""JSON-ready dictionaries for every stage of the pipeline.

Exact values are written as integers or fraction strings, never floats, so
a report can be parsed back (see :func:`polyhedron_from_dict`) and fed into
the downstream stages with identical results.
"""

from fractions import Fraction

from .charts import charts_for
from .decay import predict_main, predict_weighted
from .fan import Fan, normal_fan, smooth_refinement
from .newton import Facet, NewtonPolyhedron, newton_polyhedron
from .nondegeneracy import check_all
from .polynomial import format_polynomial

SCHEMA = "newton-osc/1"


def _q(x):
    return str(Fraction(x))


def face_to_dict(face):
    return {
        "tight_facets": list(face.tight_facets),
        "vertices": [list(v) for v in face.vertices],
        "dimension": face.dimension,
        "compact": face.compact,
    }


def polyhedron_to_dict(np_):
    return {
        "dimension": np_.dimension,
        "vertices": [list(v) for v in np_.vertices],
        "facets": [{"normal": list(f.normal), "offset": f.offset} for f in np_.facets],
    }


def polyhedron_from_dict(d):
    facets = tuple(Facet(tuple(f["normal"]), int(f["offset"])) for f in d["facets"])
    verts = tuple(tuple(int(x) for x in v) for v in d["vertices"])
    return NewtonPolyhedron(int(d["dimension"]), verts, facets)


def distance_to_dict(dist):
    return {"d_f": _q(dist.d_f), "principal_face": face_to_dict(dist.principal_face),
            "k": dist.codimension}


def nondegeneracy_to_dict(report):
    faces = []
    for i, e in enumerate(report.entries):
        faces.append({
            "face": i,
            "vertices": [list(v) for v in e.face.vertices],
            "verdict": e.verdict,
            "exact": e.exact,
            "witness": None if e.witness is None else [str(c) for c in e.witness],
            "gamma_part": format_polynomial(e.gamma_part) if e.gamma_part is not None else None,
        })
    return {"overall": report.overall, "nondegenerate": report.nondegenerate, "faces": faces}


def fan_to_dict(fan):
    return fan.to_dict()


def fan_from_dict(d):
    return Fan.from_dict(d)


def toric_data(p, np_=None):
    """Polyhedron, both fans and the charts (no nondegeneracy gate)."""
    np_ = np_ if np_ is not None else newton_polyhedron(p)
    coarse = normal_fan(np_)
    fine = smooth_refinement(coarse)
    charts = charts_for(p, fine, np_)
    return np_, coarse, fine, charts


def analysis_report(p, beta=None, seed=0, echo=None):
    """Full exact pipeline; raises when the gate rejects the phase."""
    np_ = newton_polyhedron(p)
    dist = np_.distance
    nd = check_all(p, seed=seed)
    np_, coarse, fine, charts = toric_data(p, np_)
    main = predict_main(p, seed=seed, report=nd)
    beta = tuple(beta) if beta is not None else (0,) * p.dimension
    weighted = predict_weighted(p, beta, seed=seed, report=nd)
    return {
        "schema": SCHEMA,
        "input": echo or {"phase": format_polynomial(p), "dimension": p.dimension},
        "polyhedron": polyhedron_to_dict(np_),
        "distance": distance_to_dict(dist),
        "nondegeneracy": nondegeneracy_to_dict(nd),
        "fans": {"normal_fan": fan_to_dict(coarse), "smooth_fan": fan_to_dict(fine)},
        "charts": [c.to_dict() for c in charts],
        "predictions": {
            "main": main.to_dict(),
            "weighted": dict(weighted.to_dict(), beta=list(beta)),
            "charts": [{"generators": [list(g) for g in c.generators], "d_chart": _q(c.chart_d),
                        "M": c.chart_M, "exponent": _q(1 / c.chart_d) if c.chart_d else None}
                       for c in charts],
        },
    }


def charts_report(p, echo=None):
    np_, coarse, fine, charts = toric_data(p)
    return {
        "schema": SCHEMA,
        "input": echo or {"phase": format_polynomial(p), "dimension": p.dimension},
        "polyhedron": polyhedron_to_dict(np_),
        "fans": {"normal_fan": fan_to_dict(coarse), "smooth_fan": fan_to_dict(fine)},
        "charts": [c.to_dict() for c in charts],
    }
