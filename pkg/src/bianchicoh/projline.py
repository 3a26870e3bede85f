"""The projective line P^1(O/n) and the right SL_2 action on it.

Points are unit-ray classes of coprime bottom-row pairs (c : d).  The
canonical representative of a ray is the lexicographically least reduced
pair under the element key (b, a), found by sweeping all pairs in
ascending order and marking each newly seen ray in full.  The resulting
table gives O(1) normalization and action lookups; it is the coset space
of Gamma_0(n) in SL_2(O) that the Schreier machinery walks.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import (
    BadDeterminant,
    ConstructionFailure,
    NotProjectivePoint,
    ZeroModulus,
)
from .ideals import PIdeal, ResidueSystem, factor
from .qfield import Mat2, QuadInt


class P1Point:
    """A point (c : d) of P^1(O/n) in canonical form, with its index."""

    __slots__ = ("c", "d", "index")

    def __init__(self, c: QuadInt, d: QuadInt, index: int):
        self.c = c
        self.d = d
        self.index = index

    def __eq__(self, other):
        return (
            isinstance(other, P1Point)
            and self.c == other.c
            and self.d == other.d
        )

    def __hash__(self):
        return hash((self.c, self.d))

    def __repr__(self):
        return f"({self.c}:{self.d})"


class P1Table:
    """Enumerated P^1(O/level) with normalization and right action."""

    def __init__(self, level: PIdeal):
        if level.is_zero():
            raise ZeroModulus("P^1 over O/(0) is not finite")
        self.level = level
        self.ctx = level.ctx
        self.rs = ResidueSystem(level)
        self._build()

    def _build(self):
        rs = self.rs
        n = len(rs)
        # pair (c, d) is projective iff no prime divisor of the level
        # contains both coordinates
        masks = []
        if not self.level.is_unit_ideal():
            for p, _ in factor(self.level):
                masks.append(bytes(p.contains(x) for x in rs.reps))
        units = rs.invertible_reps()
        taken = bytearray(n * n)
        lookup: dict[tuple[int, int, int, int], int] = {}
        points: list[P1Point] = []
        for ic, c in enumerate(rs.reps):
            row = ic * n
            for idd, dd in enumerate(rs.reps):
                if taken[row + idd]:
                    continue
                if any(m[ic] and m[idd] for m in masks):
                    continue
                pt = P1Point(c, dd, len(points))
                points.append(pt)
                for u in units:
                    uc = rs.reduce(u * c)
                    ud = rs.reduce(u * dd)
                    taken[rs.index(uc) * n + rs.index(ud)] = 1
                    lookup[(uc.a, uc.b, ud.a, ud.b)] = pt.index
        self.points = points
        self._lookup = lookup
        expected = 1
        for p, e in factor(self.level):
            np = p.norm()
            expected *= np ** (e - 1) * (np + 1)
        if len(points) != expected:
            raise ConstructionFailure(
                f"|P^1| = {len(points)} but the local formula gives {expected}"
            )

    def __len__(self):
        return len(self.points)

    def normalize(self, c: QuadInt, d: QuadInt) -> P1Point:
        rc = self.rs.reduce(c)
        rd = self.rs.reduce(d)
        idx = self._lookup.get((rc.a, rc.b, rd.a, rd.b))
        if idx is None:
            raise NotProjectivePoint(
                f"({rc}:{rd}) is not projective mod {self.level}"
            )
        return self.points[idx]

    def apply(self, g: Mat2, x: P1Point) -> P1Point:
        if not g.det().is_unit():
            raise BadDeterminant(f"determinant {g.det()} is not a unit")
        return self.normalize(x.c * g.a + x.d * g.c, x.c * g.b + x.d * g.d)

    def base_point(self) -> P1Point:
        """The class of (0 : 1), the coset of Gamma_0(n) itself."""
        return self.normalize(self.ctx.zero, self.ctx.one)


@lru_cache(maxsize=None)
def p1_table(n: PIdeal) -> P1Table:
    return P1Table(n)


def p1_normalize(c: QuadInt, d: QuadInt, n: PIdeal) -> P1Point:
    return p1_table(n).normalize(c, d)


def p1_enumerate(n: PIdeal) -> list[P1Point]:
    return list(p1_table(n).points)


def p1_apply(g: Mat2, x: P1Point, n: PIdeal) -> P1Point:
    return p1_table(n).apply(g, x)
