"""Newton polyhedra of polynomial phases.

The polyhedron ``conv(support) + R_+^n`` is kept in both descriptions:
its vertices (certified extreme points of the support) and its facets
``<xi, x> >= l(xi)`` with primitive nonnegative normals.  Facets are found
by double description on the homogenised cone.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd
from functools import reduce

from .errors import HypothesisError, InputError
from .exact import dot, linprog, rank, solve
from .polynomial import Polynomial


class GradientAtOriginError(HypothesisError):
    """Some exponent has total degree one, so grad f(0) != 0."""

    kind = "gradient_nonzero"


@dataclass(frozen=True)
class Facet:
    normal: tuple
    offset: int

    @property
    def weight(self):
        """Sum of the normal entries."""
        return sum(self.normal)

    def value(self, point):
        return dot(self.normal, point)

    def is_axis(self):
        return sum(1 for x in self.normal if x) == 1


@dataclass(frozen=True)
class Face:
    tight_facets: tuple
    vertices: tuple
    dimension: int
    compact: bool
    recession_axes: tuple = ()

    def codimension(self, n):
        return n - self.dimension


@dataclass(frozen=True)
class DistanceResult:
    d_f: Fraction
    principal_face: Face
    codimension: int

    @property
    def k(self):
        return self.codimension


@dataclass(frozen=True)
class NewtonPolyhedron:
    dimension: int
    vertices: tuple
    facets: tuple
    _face_cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    # -- membership ---------------------------------------------------------

    def contains(self, point):
        """H-description membership (exact)."""
        return all(f.value(point) >= f.offset for f in self.facets) and all(x >= 0 for x in point)

    def contains_by_vertices(self, point):
        """V-description membership by exact LP: point >= some convex combination."""
        return _dominates_hull(point, self.vertices)

    def tight_facets(self, point):
        return tuple(i for i, f in enumerate(self.facets) if f.value(point) == f.offset)

    # -- faces --------------------------------------------------------------

    def face(self, tight):
        """The face cut out by the facet indices ``tight`` (closed under tightness)."""
        tight = tuple(sorted(set(tight)))
        if tight in self._face_cache:
            return self._face_cache[tight]
        n = self.dimension
        verts = tuple(v for v in self.vertices
                      if all(self.facets[i].value(v) == self.facets[i].offset for i in tight))
        if not verts:
            return None
        rec = tuple(a for a in range(n) if all(self.facets[i].normal[a] == 0 for i in tight))
        closed = tuple(j for j, f in enumerate(self.facets)
                       if all(f.value(v) == f.offset for v in verts)
                       and all(f.normal[a] == 0 for a in rec))
        if closed in self._face_cache:
            face = self._face_cache[closed]
        else:
            dirs = [tuple(x - y for x, y in zip(v, verts[0])) for v in verts[1:]]
            dirs += [tuple(int(i == a) for i in range(n)) for a in rec]
            dim = rank(dirs) if dirs else 0
            face = Face(closed, verts, dim, not rec, rec)
            self._face_cache[closed] = face
        self._face_cache[tight] = face
        return face

    def minimal_face(self, point):
        """Smallest face containing ``point`` (which must lie in the polyhedron)."""
        if not self.contains(point):
            raise InputError("point %r is not in the Newton polyhedron" % (tuple(point),))
        return self.face(self.tight_facets(point))

    def faces(self):
        """All nonempty faces, ordered by tight-facet index set."""
        whole = self.face(())
        seen = {whole.tight_facets: whole}
        frontier = [whole]
        while frontier:
            nxt = []
            for F in frontier:
                for j in range(len(self.facets)):
                    if j in F.tight_facets:
                        continue
                    G = self.face(F.tight_facets + (j,))
                    if G is not None and G.tight_facets not in seen:
                        seen[G.tight_facets] = G
                        nxt.append(G)
            frontier = nxt
        return [seen[k] for k in sorted(seen)]

    def compact_faces(self):
        return enumerate_compact_faces(self)

    @cached_property
    def distance(self):
        return newton_distance(self)


# -- construction --------------------------------------------------------------

def check_hypotheses(p):
    """Raise unless ``p`` is nonzero with f(0) = 0 and grad f(0) = 0."""
    if p.is_zero():
        raise HypothesisError("the zero polynomial has no Newton polyhedron")
    if p.constant_term != 0:
        raise HypothesisError("phase must vanish at the origin (constant term %s)" % p.constant_term)
    linear = [a for a in p.support if sum(a) == 1]
    if linear:
        raise GradientAtOriginError(
            "phase has nonzero gradient at the origin (linear term x^%s)" % (linear[0],))


def _dominates_hull(point, points):
    """Is ``point >= sum(lam_i p_i)`` for some convex weights ``lam``?"""
    k = len(points)
    n = len(point)
    A_ub = [[pts[i] for pts in points] for i in range(n)]
    res = linprog([0] * k, A_ub=A_ub, b_ub=list(point), A_eq=[[1] * k], b_eq=[1])
    return res.success


def dominance_filter(points):
    """Drop points that dominate (componentwise >=) another distinct point."""
    pts = sorted(set(tuple(p) for p in points))
    out = []
    for p in pts:
        if not any(q != p and all(a >= b for a, b in zip(p, q)) for q in pts):
            out.append(p)
    return out


def extreme_points(points):
    """Vertices of ``conv(points) + R_+^n``, each certified by an exact LP."""
    cand = dominance_filter(points)
    out = []
    for i, p in enumerate(cand):
        others = cand[:i] + cand[i + 1:]
        if not others or not _dominates_hull(p, others):
            out.append(p)
    return out


def _normalize(v):
    g = reduce(gcd, (abs(x) for x in v), 0)
    return tuple(x // g for x in v) if g > 1 else tuple(v)


def extreme_rays(constraints, dim):
    """Extreme rays of the pointed cone ``{y : G y >= 0}`` by double description.

    ``constraints`` are integer rows; the first ``dim`` rows processed must
    contain a nonsingular subsystem (found automatically).
    """
    G = [tuple(int(x) for x in g) for g in constraints]
    order = []
    for idx in range(len(G)):
        if rank([G[i] for i in order + [idx]]) > len(order):
            order.append(idx)
        if len(order) == dim:
            break
    if len(order) < dim:
        raise ValueError("cone is not pointed")
    rest = [i for i in range(len(G)) if i not in order]
    B = [G[i] for i in order]
    rays = []
    for j in range(dim):
        e = [int(i == j) for i in range(dim)]
        col = solve(B, e)
        den = reduce(lambda a, b: a * b // gcd(a, b), (x.denominator for x in col), 1)
        rays.append(_normalize([int(x * den) for x in col]))
    processed = list(order)

    def zero_set(r):
        return frozenset(i for i in processed if dot(G[i], r) == 0)

    zeros = {r: zero_set(r) for r in rays}
    for idx in rest:
        g = G[idx]
        vals = {r: dot(g, r) for r in rays}
        pos = [r for r in rays if vals[r] > 0]
        neg = [r for r in rays if vals[r] < 0]
        zer = [r for r in rays if vals[r] == 0]
        new = []
        for p in pos:
            for q in neg:
                common = zeros[p] & zeros[q]
                if len(common) < dim - 2:
                    continue
                if any(r != p and r != q and common <= zeros[r] for r in rays):
                    continue
                y = _normalize([vals[p] * b - vals[q] * a for a, b in zip(p, q)])
                new.append(y)
        processed.append(idx)
        rays = pos + zer + new
        zeros = {r: zero_set(r) for r in rays}
    return sorted(set(rays))


def _facets_from_vertices(vertices, n):
    # y = (xi, c): <xi, v> + c >= 0 for every vertex, xi_i >= 0
    cons = [tuple(int(i == j) for j in range(n + 1)) for i in range(n)]
    cons += [tuple(v) + (1,) for v in vertices]
    facets = []
    for y in extreme_rays(cons, n + 1):
        xi = y[:n]
        if not any(xi):
            continue
        xi = _normalize(xi)
        l = min(dot(xi, v) for v in vertices)
        facets.append(Facet(tuple(xi), int(l)))
    return sorted(set(facets), key=lambda f: f.normal)


def polyhedron_from_points(points, dimension):
    points = [tuple(int(x) for x in p) for p in points]
    if not points:
        raise HypothesisError("empty support")
    verts = extreme_points(points)
    facets = _facets_from_vertices(verts, dimension)
    return NewtonPolyhedron(dimension, tuple(sorted(verts, reverse=True)), tuple(facets))


def newton_polyhedron(p):
    """Exact V- and H-description of ``conv(support p) + R_+^n``."""
    if p.is_zero():
        raise HypothesisError("the zero polynomial has no Newton polyhedron")
    if p.constant_term != 0:
        raise HypothesisError("phase must vanish at the origin (constant term %s)" % p.constant_term)
    return polyhedron_from_points(p.support, p.dimension)


def newton_distance(np_):
    """Newton distance, principal face and its codimension."""
    positive = [f for f in np_.facets if f.offset > 0]
    if not positive:
        raise HypothesisError("every facet passes through the origin; f(0) = 0 and grad f(0) = 0 required")
    d = max(Fraction(f.offset, f.weight) for f in positive)
    point = (d,) * np_.dimension
    face = np_.minimal_face(point)
    return DistanceResult(d, face, np_.dimension - face.dimension)


def enumerate_compact_faces(np_):
    return [F for F in np_.faces() if F.compact]


def gamma_part(p, face):
    """Sub-sum of ``p`` over the exponents lying on the compact ``face``."""
    if not face.compact:
        raise InputError("gamma-part is only defined for compact faces")
    poly = newton_polyhedron(p)
    facets = [poly.facets[i] for i in face.tight_facets]
    on = [a for a in p.support if all(f.value(a) == f.offset for f in facets)]
    return p.restrict(on)


def weighted_index(np_, beta):
    """Return ``(c, d_beta)``: the largest ``c`` with ``(beta+1)/c`` in the
    polyhedron and the codimension of the smallest face containing that point."""
    beta = tuple(int(b) for b in beta)
    if len(beta) != np_.dimension or any(b < 0 for b in beta):
        raise InputError("beta must be a nonnegative vector of length %d" % np_.dimension)
    positive = [f for f in np_.facets if f.offset > 0]
    if not positive:
        raise HypothesisError("every facet passes through the origin; f(0) = 0 and grad f(0) = 0 required")
    q = tuple(b + 1 for b in beta)
    c = min(Fraction(f.value(q), f.offset) for f in positive)
    point = tuple(Fraction(x) / c for x in q)
    face = np_.minimal_face(point)
    return c, np_.dimension - face.dimension
