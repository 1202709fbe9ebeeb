"""Finitely generated rational polyhedral cones.

Cones are stored by generators (V-representation).  Dual cones and
extreme rays are computed with the double description method over exact
rationals: constraints are inserted in lexicographic order and adjacency
of rays is decided by the rank of their common active-constraint set,
so results are deterministic across runs.

Rays are directed: canonicalization rescales to coprime integer entries
by a positive rational, never flipping orientation.  Non-pointed cones
report a reduced-row-echelon lineality basis, and extreme rays are
reduced modulo the lineality space.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import DimensionError, SingularMatrixError, ZeroRayError
from .exact import QMatrix, QVector


def canonical_ray(v: QVector) -> QVector:
    """Positive rational rescaling of ``v`` with coprime integer entries."""
    if v.is_zero():
        raise ZeroRayError("zero vector spans no ray")
    scale = math.lcm(*(e.denominator for e in v))
    ints = [int(e * scale) for e in v]
    g = math.gcd(*(abs(i) for i in ints))
    return QVector([i // g for i in ints])


def _rref(vectors: Sequence[QVector], dim: int):
    """Reduced row echelon basis of the span; returns (basis, pivot columns)."""
    rows = [list(v) for v in vectors]
    pivots = []
    r = 0
    for c in range(dim):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [e * inv for e in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    basis = [QVector(rows[i]) for i in range(r)]
    return basis, pivots


def _reduce_mod_lineality(ray: QVector, lin_basis, lin_pivots) -> QVector:
    """Zero out the pivot coordinates of ``ray`` along the lineality space."""
    out = list(ray)
    for vec, piv in zip(lin_basis, lin_pivots):
        f = out[piv]
        if f != 0:
            out = [a - f * b for a, b in zip(out, vec)]
    return QVector(out)


def _run_double_description(constraints, dim):
    """Generators of ``{y : a·y >= 0 for all a in constraints}``.

    Returns (rays, lineality_vectors); rays are canonical and reduced
    modulo the lineality space, both lists in deterministic order.
    """
    ordered = sorted(
        {tuple(canonical_ray(a)) for a in constraints if not a.is_zero()}
    )
    basis = [QVector.unit(dim, i) for i in range(dim)]
    rays: list[QVector] = []
    processed: list[QVector] = []

    for tup in ordered:
        a = QVector(tup)
        absorb = next((i for i, w in enumerate(basis) if a.dot(w) != 0), None)
        if absorb is not None:
            w = basis.pop(absorb)
            if a.dot(w) < 0:
                w = -w
            aw = a.dot(w)
            basis = [v - w.scale(a.dot(v) / aw) for v in basis]
            rays = [canonical_ray(r - w.scale(a.dot(r) / aw)) for r in rays]
            rays.append(canonical_ray(w))
        else:
            products = [a.dot(r) for r in rays]
            pos = [r for r, p in zip(rays, products) if p > 0]
            zero = [r for r, p in zip(rays, products) if p == 0]
            neg = [r for r, p in zip(rays, products) if p < 0]
            if neg:
                target_rank = dim - len(basis) - 2
                new_rays = []
                for p in pos:
                    for n in neg:
                        if _adjacent(p, n, processed, target_rank):
                            combo = n.scale(a.dot(p)) - p.scale(a.dot(n))
                            new_rays.append(canonical_ray(combo))
                rays = pos + zero + new_rays
            # constraint redundant on the current cone when neg is empty
        processed.append(a)

    lin_basis, lin_pivots = _rref(basis, dim)
    seen = set()
    reduced = []
    for r in rays:
        rr = _reduce_mod_lineality(r, lin_basis, lin_pivots)
        if rr.is_zero():
            continue
        rr = canonical_ray(rr)
        key = tuple(rr)
        if key not in seen:
            seen.add(key)
            reduced.append(rr)
    reduced.sort(key=tuple)
    return reduced, lin_basis


def _adjacent(p, n, processed, target_rank):
    if target_rank < 0:
        # cone spans at most 2 dimensions beyond lineality: all pairs adjacent
        return True
    active = [c for c in processed if c.dot(p) == 0 and c.dot(n) == 0]
    if len(active) < target_rank:
        return False
    return QMatrix([list(c) for c in active]).rank() == target_rank


class BilinearForm:
    """Nonsingular square rational form ``(x, y) -> x^T F y``."""

    def __init__(self, matrix: QMatrix):
        if matrix.rows != matrix.cols:
            raise DimensionError("bilinear form must be square")
        rank = matrix.rank()
        if rank != matrix.rows:
            raise SingularMatrixError("bilinear form is degenerate", rank)
        self.matrix = matrix

    @property
    def dim(self):
        return self.matrix.rows

    def pair(self, x: QVector, y: QVector) -> Fraction:
        return (self.matrix.transpose() @ x).dot(y)


class Cone:
    """Rational polyhedral cone given by a finite generator list.

    Extreme rays, lineality basis and the dual H-representation are
    computed on first use and cached; instances are never mutated
    afterwards, so shared concurrent reads are safe.
    """

    def __init__(self, ambient_dim: int, generators: Iterable[QVector]):
        if ambient_dim < 1:
            raise DimensionError("ambient dimension must be positive")
        gens = []
        for g in generators:
            if len(g) != ambient_dim:
                raise DimensionError(
                    f"generator length {len(g)} != ambient dimension {ambient_dim}"
                )
            gens.append(canonical_ray(g))
        self.ambient_dim = ambient_dim
        self.generators = tuple(gens)
        self._dual_hrep = None        # (rays, lineality) of the dual cone
        self._vrep = None             # (extreme rays, lineality) of this cone

    @staticmethod
    def from_rows(ambient_dim: int, rows: Iterable[Sequence]) -> "Cone":
        return Cone(ambient_dim, [QVector(r) for r in rows])

    @staticmethod
    def orthant(dim: int) -> "Cone":
        return Cone(dim, [QVector.unit(dim, i) for i in range(dim)])

    # -- representations ----------------------------------------------

    def _dual_generators(self):
        if self._dual_hrep is None:
            self._dual_hrep = _run_double_description(
                list(self.generators), self.ambient_dim
            )
        return self._dual_hrep

    def _v_representation(self):
        if self._vrep is None:
            ineqs, eqs = self._dual_generators()
            constraints = list(ineqs)
            for w in eqs:
                constraints.append(w)
                constraints.append(-w)
            rays, lin = _run_double_description(constraints, self.ambient_dim)
            self._certify_extreme(rays, ineqs, eqs, len(lin))
            self._vrep = (rays, lin)
        return self._vrep

    def _certify_extreme(self, rays, ineqs, eqs, lin_dim):
        """Rank certificate: each ray spans a 1-face of the pointed part."""
        want = self.ambient_dim - 1 - lin_dim
        for r in rays:
            active = [list(c) for c in ineqs if c.dot(r) == 0]
            active += [list(w) for w in eqs]
            got = QMatrix(active).rank() if active else 0
            if got != want:
                raise AssertionError(
                    f"extreme-ray certificate failed: active rank {got} != {want}"
                )

    # -- queries --------------------------------------------------------

    def extreme_rays(self):
        """Irredundant extreme rays of the pointed quotient, sorted."""
        return list(self._v_representation()[0])

    def lineality(self):
        """Reduced row echelon basis of {v : v and -v both in the cone}."""
        return list(self._v_representation()[1])

    def is_pointed(self) -> bool:
        return not self.lineality()

    def dual(self) -> "Cone":
        """The cone of functionals nonnegative on every generator."""
        rays, lin = self._dual_generators()
        gens = list(rays)
        for w in lin:
            gens.append(canonical_ray(w))
            gens.append(canonical_ray(-w))
        dual = Cone(self.ambient_dim, gens)
        # the DD output is already the canonical V-representation
        dual._vrep = (list(rays), list(lin))
        return dual

    def dual_with_form(self, form: BilinearForm) -> "Cone":
        """Dual w.r.t. ``form``: {y : x^T F y >= 0 for all x in the cone}."""
        if form.dim != self.ambient_dim:
            raise DimensionError(
                f"form dimension {form.dim} != ambient {self.ambient_dim}"
            )
        ft = form.matrix.transpose()
        transformed = Cone(
            self.ambient_dim, [ft @ g for g in self.generators]
        )
        return transformed.dual()

    def contains(self, v: QVector) -> bool:
        """Exact membership: nonnegative on the dual's V-representation."""
        if len(v) != self.ambient_dim:
            raise DimensionError(
                f"vector length {len(v)} != ambient dimension {self.ambient_dim}"
            )
        ineqs, eqs = self._dual_generators()
        return all(a.dot(v) >= 0 for a in ineqs) and all(
            w.dot(v) == 0 for w in eqs
        )

    def equals(self, other: "Cone") -> bool:
        """Double inclusion via canonical extreme rays and lineality bases."""
        if self.ambient_dim != other.ambient_dim:
            raise DimensionError("cones live in different ambient dimensions")
        r1, l1 = self._v_representation()
        r2, l2 = other._v_representation()
        return [tuple(r) for r in r1] == [tuple(r) for r in r2] and [
            tuple(w) for w in l1
        ] == [tuple(w) for w in l2]

    def __repr__(self):
        return (
            f"Cone(dim={self.ambient_dim}, generators={len(self.generators)})"
        )


def dual_cone(c: Cone) -> Cone:
    return c.dual()


def dual_cone_with_form(c: Cone, form: BilinearForm) -> Cone:
    return c.dual_with_form(form)


def extreme_rays(c: Cone):
    return c.extreme_rays()


def contains(c: Cone, v: QVector) -> bool:
    return c.contains(v)


def cones_equal(a: Cone, b: Cone) -> bool:
    return a.equals(b)


def lineality_space(c: Cone):
    return c.lineality()
