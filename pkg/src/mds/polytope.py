"""Exact rational polyhedral calculus.

H-representations (inequality rows a.x >= b with rational entries) and
V-representations (vertices + recession rays) of closed convex polyhedra,
converted in both directions by a double-description engine over exact
integer arithmetic.  Every generator or facet the engine emits is verified
against the tight-rank characterization of extremality (rank n at vertices,
rank n-1 at rays of the homogeneous system), so the fast path and the
defining criterion cannot drift apart.

On top of the generic calculus sit the affine involutions sigma_J on
(x_1, ..., x_k, z), the base region {x_j >= 1/2, z >= 1/2, 2x_j + z >= 2},
the hull of its 2^k sigma_J images, and the explicit type/level half-space
family that the hull is checked against, exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd

from .config import DEFAULT_LIMITS
from .errors import DegeneratePolyhedronError, EmptyPolyhedronError

__all__ = [
    "RationalPolyhedron",
    "AffineInvolution",
    "h_to_v",
    "v_to_h",
    "apply_sigma",
    "sigma_map",
    "hull_union",
    "base_region",
    "region_S",
    "theorem_region_hrep",
    "verify_region_theorem",
    "verify_rays",
    "dumps",
    "loads",
    "hrep_contains",
    "vrep_contains",
]

IntVec = tuple[int, ...]
FracVec = tuple[Fraction, ...]


# ----------------------------------------------------------------------
# low-level exact linear algebra
# ----------------------------------------------------------------------

def _reduce(v: IntVec) -> IntVec:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g > 1:
        return tuple(x // g for x in v)
    return v


def _dot(a: IntVec, b: IntVec) -> int:
    return sum(x * y for x, y in zip(a, b))


def _int_rows(rows: list[tuple[FracVec, Fraction]]) -> list[IntVec]:
    """Scale rational rows (a, b) to primitive integer vectors (a..., -b)."""
    out = []
    for a, b in rows:
        den = 1
        for x in (*a, b):
            den = den * x.denominator // gcd(den, x.denominator)
        vec = tuple(int(x * den) for x in a) + (-int(b * den),)
        out.append(_reduce(vec))
    return out


def _rank(rows: list[IntVec]) -> int:
    """Exact rank by fraction-free Gaussian elimination."""
    if not rows:
        return 0
    mat = [list(r) for r in rows]
    m, n = len(mat), len(mat[0])
    rank = 0
    col = 0
    while rank < m and col < n:
        piv = next((i for i in range(rank, m) if mat[i][col]), None)
        if piv is None:
            col += 1
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        lead = mat[rank][col]
        for i in range(rank + 1, m):
            if mat[i][col]:
                f = mat[i][col]
                mat[i] = [lead * x - f * y for x, y in zip(mat[i], mat[rank])]
                g = 0
                for x in mat[i]:
                    g = gcd(g, x)
                if g > 1:
                    mat[i] = [x // g for x in mat[i]]
        rank += 1
        col += 1
    return rank


def _nullspace(rows: list[IntVec], dim: int) -> list[IntVec]:
    """Primitive integer basis of {y : r.y = 0 for all rows}."""
    mat = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(dim):
        piv = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        lead = mat[r][c]
        mat[r] = [x / lead for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    free = [c for c in range(dim) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * dim
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -mat[i][fc]
        den = 1
        for x in vec:
            den = den * x.denominator // gcd(den, x.denominator)
        basis.append(_reduce(tuple(int(x * den) for x in vec)))
    return basis


# ----------------------------------------------------------------------
# double description on pointed cones
# ----------------------------------------------------------------------

def _initial_independent(rows: list[IntVec], dim: int) -> list[int]:
    """Indices of dim rows forming a nonsingular system, greedily."""
    chosen: list[int] = []
    for i, r in enumerate(rows):
        if _rank([rows[j] for j in chosen] + [r]) > len(chosen):
            chosen.append(i)
            if len(chosen) == dim:
                return chosen
    return chosen


def _adjugate_columns(mat: list[IntVec]) -> tuple[list[IntVec], int]:
    """Columns of adj(M) and det(M), via cofactors (exact, small dims)."""
    d = len(mat)

    def minor_det(rows_skip: int, cols_skip: int) -> int:
        sub = [
            [mat[i][j] for j in range(d) if j != cols_skip]
            for i in range(d)
            if i != rows_skip
        ]
        return _det(sub)

    def _det(m: list[list[int]]) -> int:
        n = len(m)
        if n == 0:
            return 1
        if n == 1:
            return m[0][0]
        # fraction-free Bareiss
        m = [row[:] for row in m]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                piv = next((i for i in range(k + 1, n) if m[i][k]), None)
                if piv is None:
                    return 0
                m[k], m[piv] = m[piv], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    det = _det([list(r) for r in mat])
    cols = []
    for j in range(d):
        col = tuple((-1) ** (i + j) * minor_det(j, i) for i in range(d))
        cols.append(col)
    return cols, det


def _dd_pointed(rows: list[IntVec], dim: int) -> list[tuple[IntVec, int]]:
    """Extremal rays of the pointed cone {y : r.y >= 0 for all rows}.

    Requires rank(rows) == dim.  Returns (ray, tight_mask) pairs where bit i
    of tight_mask is set iff rows[i].ray == 0.
    """
    order = _initial_independent(rows, dim)
    rest = [i for i in range(len(rows)) if i not in order]
    base = [rows[i] for i in order]
    cols, det = _adjugate_columns(base)
    if det == 0:
        raise DegeneratePolyhedronError("initial system unexpectedly singular")
    sgn = 1 if det > 0 else -1
    rays: list[IntVec] = [_reduce(tuple(sgn * x for x in col)) for col in cols]

    def tight_mask(r: IntVec, upto: list[int]) -> int:
        m = 0
        for i in upto:
            if _dot(rows[i], r) == 0:
                m |= 1 << i
        return m

    processed = list(order)
    masks = [tight_mask(r, processed) for r in rays]

    for idx in rest:
        a = rows[idx]
        vals = [_dot(a, r) for r in rays]
        if all(v >= 0 for v in vals):
            processed.append(idx)
            masks = [
                m | (1 << idx) if v == 0 else m for m, v in zip(masks, vals)
            ]
            continue
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        zero = [i for i, v in enumerate(vals) if v == 0]
        new_rays: list[IntVec] = []
        need = dim - 2
        for ip in pos:
            mp = masks[ip]
            for ineg in neg:
                common = mp & masks[ineg]
                if common.bit_count() < need:
                    continue
                # combinatorial adjacency: no other extremal ray is tight on
                # every row in `common`
                adjacent = True
                for j, mj in enumerate(masks):
                    if j == ip or j == ineg:
                        continue
                    if common & mj == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vp, vn = vals[ip], vals[ineg]
                comb = tuple(
                    vp * y - vn * x for x, y in zip(rays[ip], rays[ineg])
                )
                new_rays.append(_reduce(comb))
        processed.append(idx)
        rays = [rays[i] for i in pos + zero] + new_rays
        masks = [tight_mask(r, processed) for r in rays]

    return list(zip(rays, masks))


def _dd_rays(rows: list[IntVec], dim: int) -> tuple[list[IntVec], list[IntVec], list[int]]:
    """Extremal rays of {y : r.y >= 0}, with lineality handled explicitly.

    Returns (lineality_basis, rays, tight_masks); the cone is
    span(lineality) + cone(rays).
    """
    null = _nullspace(rows, dim)
    if not null:
        pairs = _dd_pointed(rows, dim)
        return [], [p[0] for p in pairs], [p[1] for p in pairs]
    # quotient by the lineality space: project onto a basis of the row space
    rho = dim - len(null)
    basis_idx = _initial_independent(rows, rho)
    u_cols = [rows[i] for i in basis_idx]  # span the row space
    proj = [tuple(_dot(r, u) for u in u_cols) for r in rows]
    pairs = _dd_pointed(proj, rho)
    lifted = []
    for z, _ in pairs:
        y = tuple(sum(zi * u[j] for zi, u in zip(z, u_cols)) for j in range(dim))
        lifted.append(_reduce(y))
    masks = [
        sum(1 << i for i, r in enumerate(rows) if _dot(r, y) == 0)
        for y in lifted
    ]
    return null, lifted, masks


# ----------------------------------------------------------------------
# the public polyhedron type
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class RationalPolyhedron:
    """Closed convex polyhedron with exact rational representations.

    ``hrep`` rows are (a, b) meaning a.x >= b.  ``vertices`` and ``rays``
    are the V-representation.  A representation is canonical when it lists
    exactly the facets / extremal generators, normalized and sorted.
    """

    dim: int
    hrep: tuple[tuple[FracVec, Fraction], ...] | None = None
    vertices: tuple[FracVec, ...] | None = None
    rays: tuple[FracVec, ...] | None = None
    h_canonical: bool = False
    v_canonical: bool = False

    # -- constructors ---------------------------------------------------

    @staticmethod
    def from_hrep(rows: list[tuple[list[Fraction | int], Fraction | int]]) -> "RationalPolyhedron":
        dim = len(rows[0][0])
        norm = tuple(
            (tuple(Fraction(x) for x in a), Fraction(b)) for a, b in rows
        )
        return RationalPolyhedron(dim=dim, hrep=norm)

    @staticmethod
    def from_vrep(
        vertices: list[list[Fraction | int]],
        rays: list[list[Fraction | int]] | None = None,
        dim: int | None = None,
    ) -> "RationalPolyhedron":
        rays = rays or []
        if not vertices and not rays:
            raise DegeneratePolyhedronError("V-representation has no generators")
        dim = dim if dim is not None else len((vertices or rays)[0])
        return RationalPolyhedron(
            dim=dim,
            vertices=tuple(tuple(Fraction(x) for x in v) for v in vertices),
            rays=tuple(tuple(Fraction(x) for x in r) for r in rays),
        )

    # -- helpers ---------------------------------------------------------

    def hrep_int(self) -> list[IntVec]:
        assert self.hrep is not None
        return _int_rows(list(self.hrep))

    def generators_int(self) -> list[IntVec]:
        """Homogenized generators (v, 1) and (r, 0) as primitive vectors."""
        assert self.vertices is not None
        gens = []
        for v in self.vertices:
            den = 1
            for x in v:
                den = den * x.denominator // gcd(den, x.denominator)
            gens.append(_reduce(tuple(int(x * den) for x in v) + (den,)))
        for r in self.rays or ():
            den = 1
            for x in r:
                den = den * x.denominator // gcd(den, x.denominator)
            gens.append(_reduce(tuple(int(x * den) for x in r) + (0,)))
        return gens


def _sort_key_row(row: tuple[FracVec, Fraction]):
    a, b = row
    deg = sum(abs(x) for x in a)
    return (deg, a, b)


def _normalize_row(a: FracVec, b: Fraction) -> tuple[FracVec, Fraction]:
    den = 1
    for x in (*a, b):
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in a] + [int(b * den)]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(Fraction(x) for x in ints[:-1]), Fraction(ints[-1])


def h_to_v(p: RationalPolyhedron, oracle: bool = True) -> RationalPolyhedron:
    """Canonical V-representation from an H-representation.

    Extremal points are exactly the rank-n tight intersections, extremal
    rays the rank-(n-1) tight directions of the homogeneous system; the
    double-description output is re-verified against that characterization
    when ``oracle`` is set.
    """
    if p.hrep is None:
        raise ValueError("h_to_v requires an H-representation")
    n = p.dim
    rows = p.hrep_int() + [tuple([0] * n + [1])]  # homogenize, t >= 0
    null, cone_rays, masks = _dd_rays(rows, n + 1)
    if null:
        raise DegeneratePolyhedronError(
            "polyhedron has a nontrivial lineality space (no vertices)"
        )
    verts: list[FracVec] = []
    vrays: list[FracVec] = []
    for ray, mask in zip(cone_rays, masks):
        if oracle:
            tight = [rows[i] for i in range(len(rows)) if mask >> i & 1]
            if _rank(tight) != n:  # cone dim is n+1; extremal => rank n
                raise AssertionError("DD emitted a non-extremal generator")
        t = ray[-1]
        if t > 0:
            verts.append(tuple(Fraction(x, t) for x in ray[:-1]))
        else:
            vrays.append(tuple(Fraction(x) for x in _reduce(ray[:-1])))
    if not verts:
        raise EmptyPolyhedronError("H-representation defines the empty set")
    return RationalPolyhedron(
        dim=n,
        hrep=p.hrep,
        h_canonical=p.h_canonical,
        vertices=tuple(sorted(verts)),
        rays=tuple(sorted(vrays)),
        v_canonical=True,
    )


def v_to_h(p: RationalPolyhedron, oracle: bool = True) -> RationalPolyhedron:
    """Canonical (irredundant) H-representation from a V-representation.

    Runs double description on the polar side: facets of the homogenized
    cone are the extremal rays of {y : y.g >= 0 over all generators g}.
    Non-full-dimensional polyhedra yield paired +-rows for each implicit
    equality.
    """
    if p.vertices is None:
        raise ValueError("v_to_h requires a V-representation")
    if not p.vertices:
        raise DegeneratePolyhedronError("no vertices in V-representation")
    n = p.dim
    gens = p.generators_int()
    null, facet_rays, masks = _dd_rays(gens, n + 1)
    cone_dim = n + 1 - len(null)  # dimension of span(generators)
    out_rows: list[tuple[FracVec, Fraction]] = []
    for y in null:
        for sgn in (1, -1):
            a = tuple(Fraction(sgn * x) for x in y[:-1])
            b = Fraction(-sgn * y[-1])
            if any(a):
                out_rows.append(_normalize_row(a, b))
    for y, mask in zip(facet_rays, masks):
        if all(x == 0 for x in y[:-1]):
            continue  # the trivial row 1 >= 0
        if oracle:
            tight = [gens[i] for i in range(len(gens)) if mask >> i & 1]
            if _rank(tight) != cone_dim - 1:
                raise AssertionError("DD emitted a non-facet inequality")
        a = tuple(Fraction(x) for x in y[:-1])
        b = Fraction(-y[-1])
        out_rows.append(_normalize_row(a, b))
    out_rows = sorted(set(out_rows), key=_sort_key_row)
    return RationalPolyhedron(
        dim=n,
        hrep=tuple(out_rows),
        h_canonical=True,
        vertices=p.vertices,
        rays=p.rays,
        v_canonical=p.v_canonical,
    )


def canonicalize(p: RationalPolyhedron) -> RationalPolyhedron:
    """Both representations, canonical: facets + extremal generators."""
    if p.vertices is not None:
        withh = v_to_h(p)
        # filter generators down to the extremal ones using the tight-rank
        # oracle against the canonical facet rows
        rows = withh.hrep_int()
        n = p.dim
        verts = []
        for v in withh.vertices or ():
            den = 1
            for x in v:
                den = den * x.denominator // gcd(den, x.denominator)
            hom = tuple(int(x * den) for x in v) + (den,)
            tight = [r for r in rows if _dot(r, hom) == 0]
            if _rank(tight) == n:
                verts.append(v)
        t_row = tuple([0] * n) + (1,)
        rays = []
        for r in withh.rays or ():
            den = 1
            for x in r:
                den = den * x.denominator // gcd(den, x.denominator)
            hom = tuple(int(x * den) for x in r) + (0,)
            tight = [rw for rw in rows if _dot(rw, hom) == 0]
            # homogeneous system: rank n-1 among the P-rows, i.e. rank n
            # once the implicit t>=0 tight row is counted
            if _rank(tight + [t_row]) == n:
                rays.append(r)
        return RationalPolyhedron(
            dim=n,
            hrep=withh.hrep,
            h_canonical=True,
            vertices=tuple(sorted(set(verts))),
            rays=tuple(sorted(set(rays))),
            v_canonical=True,
        )
    return h_to_v(p)


# ----------------------------------------------------------------------
# affine involutions sigma_J
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class AffineInvolution:
    """sigma_J on (x_1, ..., x_k, z): x_j -> 1 - x_j for j in J and
    z -> z + sum_{j in J} x_j - |J|/2."""

    k: int
    J: frozenset[int]

    def apply_point(self, v: FracVec) -> FracVec:
        k = self.k
        out = list(v)
        shift = Fraction(0)
        for j in self.J:
            shift += v[j - 1]
            out[j - 1] = 1 - v[j - 1]
        out[k] = v[k] + shift - Fraction(len(self.J), 2)
        return tuple(out)

    def apply_ray(self, r: FracVec) -> FracVec:
        k = self.k
        out = list(r)
        shift = Fraction(0)
        for j in self.J:
            shift += r[j - 1]
            out[j - 1] = -r[j - 1]
        out[k] = r[k] + shift
        return tuple(out)

    def compose(self, other: "AffineInvolution") -> "AffineInvolution":
        if self.k != other.k:
            raise ValueError("mismatched ambient dimensions")
        return AffineInvolution(self.k, self.J ^ other.J)


def sigma_map(k: int, J: frozenset[int] | set[int]) -> AffineInvolution:
    J = frozenset(J)
    if not J <= set(range(1, k + 1)):
        raise ValueError("J must be a subset of {1..k}")
    return AffineInvolution(k, J)


def apply_sigma(p: RationalPolyhedron, J: frozenset[int] | set[int]) -> RationalPolyhedron:
    """Image of the polyhedron under sigma_J (vertices by the affine map,
    rays by its linear part)."""
    if p.vertices is None:
        raise ValueError("apply_sigma requires a V-representation")
    k = p.dim - 1
    sig = sigma_map(k, J)
    verts = [sig.apply_point(v) for v in p.vertices]
    rays = [sig.apply_ray(r) for r in p.rays or ()]
    q = RationalPolyhedron(
        dim=p.dim,
        vertices=tuple(sorted(verts)),
        rays=tuple(sorted(_normalize_ray(r) for r in rays)),
        v_canonical=p.v_canonical,
    )
    return q


def _normalize_ray(r: FracVec) -> FracVec:
    den = 1
    for x in r:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = _reduce(tuple(int(x * den) for x in r))
    return tuple(Fraction(x) for x in ints)


def hull_union(*polys: RationalPolyhedron) -> RationalPolyhedron:
    """Convex hull of finitely many polyhedra given by V-representations:
    concatenate generators, then canonicalize (extremality filtering)."""
    if not polys:
        raise ValueError("hull_union needs at least one polyhedron")
    dim = polys[0].dim
    verts: set[FracVec] = set()
    rays: set[FracVec] = set()
    for p in polys:
        if p.vertices is None:
            raise ValueError("hull_union requires V-representations")
        if p.dim != dim:
            raise ValueError("mixed ambient dimensions")
        verts.update(p.vertices)
        rays.update(_normalize_ray(r) for r in p.rays or ())
    merged = RationalPolyhedron(
        dim=dim, vertices=tuple(sorted(verts)), rays=tuple(sorted(rays))
    )
    return canonicalize(merged)


# ----------------------------------------------------------------------
# membership
# ----------------------------------------------------------------------

def hrep_contains(p: RationalPolyhedron, x: list[Fraction | int]) -> bool:
    assert p.hrep is not None
    xv = [Fraction(v) for v in x]
    return all(
        sum(a_i * x_i for a_i, x_i in zip(a, xv)) >= b for a, b in p.hrep
    )


def vrep_contains(p: RationalPolyhedron, x: list[Fraction | int]) -> bool:
    """Exact feasibility: is x in conv(vertices) + cone(rays)?

    Solved as a phase-1 simplex with Bland's rule over Fractions.
    """
    assert p.vertices is not None
    xv = [Fraction(v) for v in x]
    n = p.dim
    cols: list[list[Fraction]] = []
    for v in p.vertices:
        cols.append([*v, Fraction(1)])
    for r in p.rays or ():
        cols.append([*r, Fraction(0)])
    rhs = [*xv, Fraction(1)]
    return _lp_feasible(cols, rhs)


def _lp_feasible(cols: list[list[Fraction]], rhs: list[Fraction]) -> bool:
    """Does cols @ lam = rhs admit lam >= 0?  Phase-1 simplex, Bland."""
    m = len(rhs)
    nv = len(cols)
    # rows: for each constraint i: sum_j cols[j][i] lam_j (+ artificial) = rhs[i]
    tab = [[cols[j][i] for j in range(nv)] for i in range(m)]
    b = rhs[:]
    for i in range(m):
        if b[i] < 0:
            tab[i] = [-x for x in tab[i]]
            b[i] = -b[i]
    # artificial basis
    for i in range(m):
        for r in range(m):
            tab[r].append(Fraction(1) if r == i else Fraction(0))
    basis = list(range(nv, nv + m))
    ncols = nv + m

    def objective_row():
        # minimize sum of artificials: reduced costs
        zc = [Fraction(0)] * ncols
        zv = Fraction(0)
        for i, bi in enumerate(basis):
            if bi >= nv:
                for j in range(ncols):
                    zc[j] += tab[i][j]
                zv += b[i]
        return zc, zv

    while True:
        zc, zv = objective_row()
        enter = None
        for j in range(ncols):
            if j < nv or j >= nv:  # Bland: smallest index with positive reduced cost
                cost = zc[j] - (Fraction(1) if j >= nv else Fraction(0))
                if cost > 0:
                    enter = j
                    break
        if enter is None:
            return zv == 0
        # ratio test (Bland ties by smallest basis index)
        leave = None
        best = None
        for i in range(m):
            if tab[i][enter] > 0:
                ratio = b[i] / tab[i][enter]
                if best is None or ratio < best or (
                    ratio == best and basis[i] < basis[leave]
                ):
                    best = ratio
                    leave = i
        if leave is None:
            return zv == 0  # unbounded in phase 1 cannot happen; be safe
        piv = tab[leave][enter]
        tab[leave] = [x / piv for x in tab[leave]]
        b[leave] /= piv
        for i in range(m):
            if i != leave and tab[i][enter]:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[leave])]
                b[i] -= f * b[leave]
        basis[leave] = enter


# ----------------------------------------------------------------------
# the continuation region
# ----------------------------------------------------------------------

HALF = Fraction(1, 2)


def base_region(k: int) -> RationalPolyhedron:
    """Closure of the base set: {x_j >= 1/2, z >= 1/2, 2 x_j + z >= 2}."""
    rows: list[tuple[list[Fraction], Fraction]] = []
    n = k + 1
    for j in range(k):
        a = [Fraction(0)] * n
        a[j] = Fraction(1)
        rows.append((a, HALF))
    a = [Fraction(0)] * n
    a[k] = Fraction(1)
    rows.append((a, HALF))
    for j in range(k):
        a = [Fraction(0)] * n
        a[j] = Fraction(2)
        a[k] = Fraction(1)
        rows.append((a, Fraction(2)))
    return RationalPolyhedron.from_hrep(rows)


def region_S(k: int) -> RationalPolyhedron:
    """Hull of the 2^k sigma_J images of the closed base region."""
    if not 1 <= k <= DEFAULT_LIMITS.max_hull_k:
        raise ValueError(f"k must be in 1..{DEFAULT_LIMITS.max_hull_k}")
    base = h_to_v(base_region(k))
    copies = []
    universe = list(range(1, k + 1))
    for r in range(k + 1):
        for J in combinations(universe, r):
            copies.append(apply_sigma(base, frozenset(J)))
    return hull_union(*copies)


def theorem_region_hrep(k: int) -> RationalPolyhedron:
    """The explicit half-space family: type 0 rows
    sum_{j in L} x_j + z >= (1+|L|)/2 over all L, and type t rows
    sum_{i in I} x_i + 2 sum_{j in L} x_j + 2z >= 1 + 3t/4 + |L|
    for 1 <= t <= min(4, k), I and L disjoint."""
    if k < 1:
        raise ValueError("k >= 1 required")
    n = k + 1
    rows: list[tuple[list[Fraction], Fraction]] = []
    universe = list(range(1, k + 1))
    for lvl in range(k + 1):
        for L in combinations(universe, lvl):
            a = [Fraction(0)] * n
            for j in L:
                a[j - 1] = Fraction(1)
            a[k] = Fraction(1)
            rows.append((a, Fraction(1 + lvl, 2)))
    for t in range(1, min(4, k) + 1):
        for I in combinations(universe, t):
            others = [j for j in universe if j not in I]
            for lvl in range(len(others) + 1):
                for L in combinations(others, lvl):
                    a = [Fraction(0)] * n
                    for i in I:
                        a[i - 1] = Fraction(1)
                    for j in L:
                        a[j - 1] = Fraction(2)
                    a[k] = Fraction(2)
                    rows.append((a, Fraction(4 + 3 * t, 4) + lvl))
    norm = sorted({_normalize_row(tuple(a), b) for a, b in rows}, key=_sort_key_row)
    return RationalPolyhedron(dim=n, hrep=tuple(norm))


@dataclass
class RegionDiff:
    equal: bool
    missing_facets: list[tuple[FracVec, Fraction]] = field(default_factory=list)
    violated_rows: list[tuple[tuple[FracVec, Fraction], FracVec]] = field(default_factory=list)
    extremal_point_diff: tuple[list[FracVec], list[FracVec]] = ((), ())

    def report(self) -> str:
        if self.equal:
            return "regions identical (canonical rational equality)"
        lines = ["regions differ:"]
        for a, b in self.missing_facets:
            lines.append(f"  hull facet not among theorem rows: {a} >= {b}")
        for (a, b), g in self.violated_rows:
            lines.append(f"  theorem row {a} >= {b} violated by hull generator {g}")
        extra, missing = self.extremal_point_diff
        for v in extra:
            lines.append(f"  unexpected extremal point: {v}")
        for v in missing:
            lines.append(f"  predicted extremal point absent: {v}")
        return "\n".join(lines)


def _expected_extremal_points(k: int) -> set[FracVec]:
    P = tuple([Fraction(3, 4)] * k + [HALF])
    pts = set()
    universe = list(range(1, k + 1))
    for r in range(k + 1):
        for J in combinations(universe, r):
            pts.add(sigma_map(k, frozenset(J)).apply_point(P))
    if k >= 5:
        pts.add(tuple([HALF] * k + [Fraction(1)]))
    return pts


def verify_region_theorem(
    k: int, hull: RationalPolyhedron | None = None
) -> tuple[bool, RegionDiff]:
    """Exact equality of the computed hull and the theorem half-space family.

    The two inclusions are certified separately: every theorem row must be
    valid on all hull generators (hull субset theorem region), and every
    canonical hull facet must literally occur among the theorem rows
    (theorem region subset hull).  Both checks are exact.
    """
    hull = region_S(k) if hull is None else hull
    theorem = theorem_region_hrep(k)
    assert hull.hrep is not None and hull.vertices is not None

    t_rows = set(theorem.hrep or ())
    diff = RegionDiff(equal=True)

    gens_hom = hull.generators_int()
    for a, b in theorem.hrep or ():
        den = 1
        for x in (*a, b):
            den = den * x.denominator // gcd(den, x.denominator)
        row = tuple(int(x * den) for x in a) + (-int(b * den),)
        for g in gens_hom:
            if _dot(row, g) < 0:
                gv = tuple(Fraction(x, g[-1]) if g[-1] else Fraction(x) for x in g[:-1])
                diff.violated_rows.append(((a, b), gv))

    for row in hull.hrep:
        if row not in t_rows:
            diff.missing_facets.append(row)

    expected = _expected_extremal_points(k)
    got = set(hull.vertices)
    extra = sorted(got - expected)
    missing = sorted(expected - got)
    diff.extremal_point_diff = (extra, missing)

    diff.equal = not (
        diff.missing_facets or diff.violated_rows or extra or missing
    )
    return diff.equal, diff


def verify_rays(k: int, hull: RationalPolyhedron | None = None) -> bool:
    """Canonical ray set equals {v_j} union {w_j = v_{k+1} - v_j}, and
    v_{k+1} lies in the recession cone without being extremal."""
    hull = region_S(k) if hull is None else hull
    assert hull.rays is not None
    expected: set[FracVec] = set()
    for j in range(k):
        v = [Fraction(0)] * (k + 1)
        v[j] = Fraction(1)
        expected.add(tuple(v))
        w = [Fraction(0)] * (k + 1)
        w[j] = Fraction(-1)
        w[k] = Fraction(1)
        expected.add(tuple(w))
    if set(hull.rays) != expected:
        return False
    vlast = tuple([Fraction(0)] * k + [Fraction(1)])
    if vlast in set(hull.rays):
        return False
    # v_{k+1} = v_j + w_j is in the cone but not extremal
    cone_ok = all(
        sum(a_i * r_i for a_i, r_i in zip(a, vlast)) >= 0 for a, _ in hull.hrep or ()
    )
    return cone_ok


# ----------------------------------------------------------------------
# serialization
# ----------------------------------------------------------------------

def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def dumps(p: RationalPolyhedron) -> str:
    """Line-oriented text form: an H block then a V block."""
    lines: list[str] = []
    if p.hrep is not None:
        lines.append(f"H {len(p.hrep)} {p.dim}")
        for a, b in p.hrep:
            lines.append(" ".join(_fmt(x) for x in (*a, b)))
    if p.vertices is not None:
        lines.append(f"V {len(p.vertices)} {len(p.rays or ())} {p.dim}")
        for v in p.vertices:
            lines.append(" ".join(_fmt(x) for x in v))
        for r in p.rays or ():
            lines.append(" ".join(_fmt(x) for x in r))
    return "\n".join(lines) + "\n"


def loads(text: str) -> RationalPolyhedron:
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    i = 0
    hrep = None
    vertices = None
    rays = None
    dim = None
    while i < len(lines):
        head = lines[i].split()
        if head[0] == "H":
            n_rows, dim = int(head[1]), int(head[2])
            rows = []
            for j in range(n_rows):
                vals = [Fraction(tok) for tok in lines[i + 1 + j].split()]
                rows.append((tuple(vals[:-1]), vals[-1]))
            hrep = tuple(rows)
            i += 1 + n_rows
        elif head[0] == "V":
            n_vert, n_rays, dim = int(head[1]), int(head[2]), int(head[3])
            vs = []
            rs = []
            for j in range(n_vert):
                vs.append(tuple(Fraction(tok) for tok in lines[i + 1 + j].split()))
            for j in range(n_rays):
                rs.append(
                    tuple(Fraction(tok) for tok in lines[i + 1 + n_vert + j].split())
                )
            vertices = tuple(vs)
            rays = tuple(rs)
            i += 1 + n_vert + n_rays
        else:
            raise ValueError(f"unrecognized block header: {lines[i]!r}")
    assert dim is not None
    return RationalPolyhedron(
        dim=dim,
        hrep=hrep,
        vertices=vertices,
        rays=rays,
        h_canonical=hrep is not None,
        v_canonical=vertices is not None,
    )
