"""Rational fans in the positive orthant and their smooth refinement.

A :class:`Fan` stores its rays (primitive integer vectors, sorted
lexicographically) and its maximal cones as sorted tuples of ray indices.
All tests are exact integer/rational computations.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd

from .errors import InputError
from .exact import adjugate, det, dot, linprog, nullspace, rank, integer_scale


def primitive(v):
    """``v / gcd(v)`` for a nonzero nonnegative integer vector."""
    v = tuple(int(x) for x in v)
    if any(x < 0 for x in v):
        raise InputError("cone generators must be nonnegative: %r" % (v,))
    g = reduce(gcd, v, 0)
    if g == 0:
        raise InputError("the zero vector has no primitive direction")
    return tuple(x // g for x in v)


@dataclass(frozen=True)
class Cone:
    generators: tuple

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(primitive(g) for g in self.generators))

    @property
    def dimension(self):
        return rank(self.generators)

    @property
    def ambient_dimension(self):
        return len(self.generators[0])

    def is_simplicial(self):
        return self.dimension == len(self.generators)

    def matrix(self):
        """Generators as columns: ``A[j][i]`` is entry ``j`` of generator ``i``."""
        n = self.ambient_dimension
        return [[g[j] for g in self.generators] for j in range(n)]

    def coordinates(self, point):
        """Coefficients of ``point`` in the generator basis (full-dim simplicial cones)."""
        A = self.matrix()
        d = det(A)
        if d == 0:
            raise InputError("coordinates need a full-dimensional simplicial cone")
        adj = adjugate(A)
        return [Fraction(dot(row, point), d) for row in adj]

    def contains(self, point):
        if self.is_simplicial() and len(self.generators) == self.ambient_dimension:
            return all(c >= 0 for c in self.coordinates(point))
        from .exact import in_conic_hull
        return in_conic_hull(point, self.generators)


def cone_index(cone):
    """Lattice index ``|det|`` of a full-dimensional simplicial cone."""
    gens = cone.generators if isinstance(cone, Cone) else tuple(cone)
    n = len(gens[0])
    if len(gens) != n or rank(gens) != n:
        raise InputError("cone index needs n linearly independent generators")
    return abs(det([list(g) for g in gens]))


class Fan:
    """Maximal cones over a common ray list; support is assumed to be R_+^n."""

    def __init__(self, rays, cones):
        rays = [tuple(r) for r in rays]
        order = sorted(range(len(rays)), key=lambda i: rays[i])
        self.rays = tuple(rays[i] for i in order)
        pos = {old: new for new, old in enumerate(order)}
        self.cones = tuple(sorted({tuple(sorted(pos[i] for i in c)) for c in cones}))
        self.dimension = len(self.rays[0]) if self.rays else 0

    @classmethod
    def from_generator_sets(cls, cones):
        rays = sorted({tuple(g) for c in cones for g in c})
        idx = {r: i for i, r in enumerate(rays)}
        return cls(rays, [[idx[tuple(g)] for g in c] for c in cones])

    def generator_sets(self):
        return [tuple(self.rays[i] for i in c) for c in self.cones]

    def maximal_cones(self):
        return [Cone(g) for g in self.generator_sets()]

    def indices(self):
        return [cone_index(g) for g in self.generator_sets()]

    def is_simplicial(self):
        return all(len(c) == self.dimension and rank([self.rays[i] for i in c]) == self.dimension
                   for c in self.cones)

    def is_smooth(self):
        return self.is_simplicial() and all(i == 1 for i in self.indices())

    def __eq__(self, other):
        return isinstance(other, Fan) and self.rays == other.rays and self.cones == other.cones

    def __hash__(self):
        return hash((self.rays, self.cones))

    def __repr__(self):
        return "Fan(rays=%r, cones=%r)" % (self.rays, self.cones)

    # -- checks -------------------------------------------------------------

    def containing_cones(self, point):
        return [k for k, c in enumerate(self.maximal_cones()) if c.contains(point)]

    def facet_multiplicities(self):
        """Map each codimension-one cone (ray-index tuple) to the maximal cones sharing it."""
        out = {}
        for k, c in enumerate(self.cones):
            for sub in combinations(c, len(c) - 1):
                out.setdefault(sub, []).append(k)
        return out

    def on_boundary(self, ray_indices):
        """Does the cone lie in a coordinate hyperplane of the orthant?"""
        return any(all(self.rays[i][j] == 0 for i in ray_indices) for j in range(self.dimension))

    def cones_meet_properly(self, a, b):
        """Exact test that maximal cones ``a`` and ``b`` intersect in their common face."""
        ga = [self.rays[i] for i in self.cones[a]]
        gb = [self.rays[i] for i in self.cones[b]]
        common = set(self.cones[a]) & set(self.cones[b])
        extra_a = [i for i, r in enumerate(self.cones[a]) if r not in common]
        extra_b = [i for i, r in enumerate(self.cones[b]) if r not in common]
        if not extra_a or not extra_b:
            return True
        ka, kb = len(ga), len(gb)
        n = self.dimension
        A_eq = [[ga[i][j] for i in range(ka)] + [-gb[i][j] for i in range(kb)] for j in range(n)]
        b_eq = [0] * n
        # normalise: total weight on the non-shared generators of a equals 1
        A_eq.append([1 if i in extra_a else 0 for i in range(ka)] + [0] * kb)
        b_eq.append(1)
        return not linprog([0] * (ka + kb), A_eq=A_eq, b_eq=b_eq).success

    def is_compatible(self):
        return all(self.cones_meet_properly(a, b)
                   for a in range(len(self.cones)) for b in range(len(self.cones)) if a != b)

    def to_dict(self):
        return {
            "rays": [list(r) for r in self.rays],
            "cones": [list(c) for c in self.cones],
            "indices": self.indices() if self.is_simplicial() else None,
        }

    @classmethod
    def from_dict(cls, d):
        return cls([tuple(r) for r in d["rays"]], [tuple(c) for c in d["cones"]])


def normal_fan(np_):
    """Fan of the inner normal cones at the vertices of a Newton polyhedron."""
    normals = [f.normal for f in np_.facets]
    cones = []
    for v in np_.vertices:
        cones.append([i for i, f in enumerate(np_.facets) if f.value(v) == f.offset])
    return Fan(normals, cones)


# -- making cones simplicial ----------------------------------------------------

def cone_facets(generators):
    """Facets of a full-dimensional cone as frozensets of generator positions."""
    n = len(generators[0])
    facets = set()
    for sub in combinations(range(len(generators)), n - 1):
        rows = [generators[i] for i in sub]
        if rank(rows) != n - 1:
            continue
        normal = integer_scale(nullspace(rows, n)[0])
        vals = [dot(normal, g) for g in generators]
        if all(v >= 0 for v in vals) or all(v <= 0 for v in vals):
            facets.add(frozenset(i for i, v in enumerate(vals) if v == 0))
    return sorted(facets, key=sorted)


def _pull(cones, ray, dim):
    out = []
    for gens in cones:
        if ray not in gens or len(gens) == dim:
            out.append(gens)
            continue
        r = gens.index(ray)
        for F in cone_facets(list(gens)):
            if r not in F:
                out.append(tuple(sorted([gens[i] for i in F] + [ray])))
    return out


def simplicial_subdivision(fan):
    """Pulling triangulation with one global lexicographic ray order.

    Pulling a ray acts on every cone having it as a generator at once, so
    adjacent cones get identical triangulations of their shared faces.
    """
    cones = [tuple(sorted(g)) for g in fan.generator_sets()]
    for ray in fan.rays:
        cones = _pull(cones, ray, fan.dimension)
    return Fan.from_generator_sets(cones)


# -- smoothing -----------------------------------------------------------------

def parallelepiped_points(gens):
    """Nonzero lattice points ``sum c_i v_i`` with ``0 <= c_i < 1``.

    Returned as ``(point, numerators)`` with ``c_i = numerators[i] / m``.
    """
    A = [[g[j] for g in gens] for j in range(len(gens))]
    m = det(A)
    sign = 1 if m > 0 else -1
    m = abs(m)
    adj = adjugate(A)
    n = len(gens)
    group_gens = []
    for j in range(n):
        col = tuple((sign * adj[i][j]) % m for i in range(n))
        group_gens.append(col)
    seen = {(0,) * n}
    frontier = [(0,) * n]
    while frontier:
        nxt = []
        for t in frontier:
            for g in group_gens:
                u = tuple((a + b) % m for a, b in zip(t, g))
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    out = []
    for t in sorted(seen):
        if not any(t):
            continue
        p = tuple(sum(t[i] * gens[i][j] for i in range(n)) // m for j in range(n))
        out.append((p, t))
    return out


def best_subdivision_ray(gens):
    """Interior lattice ray minimising the worst sub-cone index (then lexicographic)."""
    best = None
    for p, t in parallelepiped_points(gens):
        if reduce(gcd, p, 0) != 1:
            continue
        key = (max(x for x in t if x), p)
        if best is None or key < best[0]:
            best = (key, p)
    return best[1]


def stellar_subdivision(fan, ray):
    """Star-subdivide every maximal simplicial cone containing ``ray``."""
    ray = primitive(ray)
    cones = []
    for gens in fan.generator_sets():
        c = Cone(gens)
        coords = c.coordinates(ray)
        if ray in gens or any(x < 0 for x in coords):
            cones.append(gens)
            continue
        for i, x in enumerate(coords):
            if x > 0:
                cones.append(tuple(sorted(gens[:i] + (ray,) + gens[i + 1:])))
    return Fan.from_generator_sets(cones)


def smooth_refinement(fan, max_steps=10000):
    """Simplicial subdivision followed by stellar subdivisions until every
    maximal cone is unimodular.  Input rays are preserved."""
    fan = simplicial_subdivision(fan) if not fan.is_simplicial() else fan
    for _ in range(max_steps):
        bad = [g for g in fan.generator_sets() if cone_index(g) > 1]
        if not bad:
            return fan
        fan = stellar_subdivision(fan, best_subdivision_ray(bad[0]))
    raise RuntimeError("smooth refinement did not terminate")
