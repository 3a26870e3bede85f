"""Hecke operators, coset decompositions, and the Eisenstein check.

T_l acts through the N(l)+1 explicit right-coset representatives of the
double coset of diag(1, lambda): the upper-triangular sigma_{k,lambda}
over a residue system mod l, plus diag(lambda, 1).  Applying a class to
delta_i * gamma * delta_{sigma(i)}^{-1} and summing realizes the
operator on functionals; the permutation sigma is discovered by linear
scan and certified unique.  The Eisenstein check asks whether
T_l - (N(l)+1) is nilpotent on a stable subspace for ray-trivial l,
which is the finite-level meaning of "supported on Eisenstein maximal
ideals only".
"""

from __future__ import annotations

import numpy as np

from .cohom import CohomSubspace
from .errors import (
    ConstructionFailure,
    ExhaustedSearch,
    NotCoprimeToLevel,
    NotPrime,
    NotStable,
    PermutationFailure,
    ProjectionFailure,
    ShapeMismatch,
)
from .degmaps import LinMap
from .ideals import (
    PIdeal,
    ResidueSystem,
    format_ideal,
    prime_residue_reps_in_ideal,
    primes_by_norm,
)
from .modlinalg import MatQ, coordinates_in_rowspace, rref
from .qfield import FieldCtx, Mat2, QuadInt, divides, exact_div, xgcd


def _unit_group(ctx: FieldCtx) -> list[QuadInt]:
    """All units of the ring, starting from 1."""
    one = ctx.one
    units = [one, -one]
    if ctx.d == 1:
        units += [ctx.omega, -ctx.omega]
    elif ctx.d == 3:
        w = ctx.omega
        units += [w, -w, w * w, -(w * w)]
    return units


class HeckeCosets:
    """Right-coset representatives for the double coset of diag(1, l)."""

    __slots__ = ("l", "level", "reps", "lam")

    def __init__(self, l: PIdeal, level: PIdeal, reps: list[Mat2]):
        self.l = l
        self.level = level
        self.reps = reps
        self.lam = l.gen

    def __len__(self):
        return len(self.reps)

    def __repr__(self):
        return f"HeckeCosets(l={self.l}, {len(self.reps)} reps)"


def _gamma0_tilde_member(m: Mat2, level: PIdeal) -> bool:
    """Membership in matrices with unit determinant and lower-left in level."""
    return m.det().is_unit() and level.contains(m.c)


def _quotient_in_gamma0(x: Mat2, delta: Mat2, lam: QuadInt, level: PIdeal):
    """x * delta^{-1} when it lands in the unit-det level group, else None."""
    prod = x * delta.adjugate()
    ents = prod.entries()
    if not all(divides(lam, e) for e in ents):
        return None
    quot = Mat2(*(exact_div(e, lam) for e in ents))
    if not _gamma0_tilde_member(quot, level):
        return None
    return quot


def hecke_cosets(l: PIdeal, level: PIdeal) -> HeckeCosets:
    """The N(l)+1 validated coset representatives for T_l at this level."""
    if not l.is_prime():
        raise NotPrime(f"{l} is not a prime ideal")
    if not l.is_coprime(level):
        raise NotCoprimeToLevel(f"{l} shares a factor with the level {level}")
    ctx = l.ctx
    lam = l.gen
    one, zero = ctx.one, ctx.zero
    reps = [Mat2(one, k, zero, lam) for k in ResidueSystem(l).reps]
    reps.append(Mat2(lam, zero, zero, one))
    hc = HeckeCosets(l, level, reps)
    if len(reps) != l.norm() + 1:
        raise ConstructionFailure(
            f"expected {l.norm() + 1} representatives, built {len(reps)}"
        )
    for i, di in enumerate(reps):
        for j, dj in enumerate(reps):
            if i == j:
                continue
            if _quotient_in_gamma0(di, dj, lam, level) is not None:
                raise ConstructionFailure(
                    f"representatives {i} and {j} share a right coset"
                )
    return hc


def locate_right_coset(hc: HeckeCosets, x: Mat2) -> int:
    """Index of the unique representative whose right coset contains x."""
    hits = [
        j
        for j, dj in enumerate(hc.reps)
        if _quotient_in_gamma0(x, dj, hc.lam, hc.level) is not None
    ]
    if len(hits) != 1:
        raise PermutationFailure(
            f"element lies in {len(hits)} right cosets instead of 1"
        )
    return hits[0]


def gamma01_cosets(levelN: PIdeal, p: PIdeal) -> list[Mat2]:
    """Right-coset representatives of the level-N*p group inside level N.

    The N(p) unipotents [1,0;k,1] with k running over a residue system
    of O/p lying inside N, plus one matrix [s,-t;C,D] with C generating
    N, D generating p, and s*D + t*C = 1.
    """
    if not p.is_prime():
        raise NotPrime(f"{p} is not a prime ideal")
    if not p.is_coprime(levelN):
        raise NotCoprimeToLevel(f"{p} divides the level {levelN}")
    ctx = levelN.ctx
    one = ctx.one
    reps = [
        Mat2(one, ctx.zero, k, one)
        for k in prime_residue_reps_in_ideal(p, levelN)
    ]
    big_c, big_d = levelN.gen, p.gen
    g, s, t = xgcd(big_d, big_c)
    if not g.is_one():
        raise ConstructionFailure(
            f"generators of {levelN} and {p} are not coprime"
        )
    reps.append(Mat2(s, -t, big_c, big_d))
    levelNp = levelN * p
    for i, gi in enumerate(reps):
        if not (gi.det().is_one() and levelN.contains(gi.c)):
            raise ConstructionFailure(f"representative {i} escapes level {levelN}")
        for j, gj in enumerate(reps):
            if i != j and levelNp.contains((gi * gj.inv_det_one()).c):
                raise ConstructionFailure(
                    f"representatives {i} and {j} share a coset at level {levelNp}"
                )
    if len(reps) != p.norm() + 1:
        raise ConstructionFailure(
            f"expected {p.norm() + 1} representatives, built {len(reps)}"
        )
    return reps


def hecke_matrix(l: PIdeal, space: CohomSubspace) -> LinMap:
    """Matrix of T_l on the given subspace, rows = images of basis."""
    cc = space.cc
    hc = hecke_cosets(l, cc.level)
    lam = hc.lam
    nreps = len(hc.reps)
    q = space.q.q
    ev_rows = []
    for _, gamma in cc.sgens:
        row = np.zeros(len(cc.sgens), dtype=np.int64)
        sigma = []
        for i, di in enumerate(hc.reps):
            x = di * gamma
            found = None
            for j, dj in enumerate(hc.reps):
                quot = _quotient_in_gamma0(x, dj, lam, cc.level)
                if quot is None:
                    continue
                if not quot.det().is_one():
                    continue
                if found is not None:
                    raise PermutationFailure(
                        "double-coset element lies in two right cosets"
                    )
                found = (j, quot)
            if found is None:
                raise PermutationFailure(
                    "double-coset element lies in no right coset"
                )
            sigma.append(found[0])
            row += np.array(cc.express(found[1]), dtype=np.int64)
        if sorted(sigma) != list(range(nreps)):
            raise PermutationFailure("coset permutation is not a bijection")
        ev_rows.append(row % q)
    if space.dim == 0:
        return LinMap(space, space, MatQ(q, np.zeros((0, 0), dtype=np.int64)))
    ev = MatQ(q, np.asarray(ev_rows, dtype=np.int64))
    images = space.basis @ ev.transpose()
    rows = []
    for i in range(space.dim):
        coords = coordinates_in_rowspace(space.basis, images.arr[i])
        if coords is None:
            raise ProjectionFailure(
                "Hecke image escapes the subspace; this indicates a bug"
            )
        rows.append(coords)
    return LinMap(space, space, MatQ(q, np.asarray(rows, dtype=np.int64)))


def diamond(l: PIdeal, space: CohomSubspace) -> LinMap:
    """The central double coset of diag(lambda, lambda).

    Conjugation by a central matrix is trivial, so on trivial
    coefficients the operator is the identity on any subspace.
    """
    return LinMap(space, space, MatQ.identity(space.q.q, space.dim))


def ray_trivial_unit(l: PIdeal, conductor: PIdeal) -> QuadInt | None:
    """A unit u with u * gen(l) = 1 mod conductor, or None."""
    lam = l.gen
    one = l.ctx.one
    for u in _unit_group(l.ctx):
        if conductor.contains(u * lam - one):
            return u
    return None


def ray_trivial_primes(
    levelN: PIdeal,
    count: int,
    avoid=(),
    max_norm: int = 1000,
    conductor: PIdeal | None = None,
) -> list[PIdeal]:
    """The `count` smallest primes trivial in the ray class group.

    A prime (lambda) qualifies when some unit multiple of lambda is
    congruent to 1 modulo the conductor (default: the level itself),
    it does not divide the level, and it is not in `avoid`.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    cond = conductor if conductor is not None else levelN
    shun = set(avoid)
    out = []
    for l in primes_by_norm(levelN.ctx, max_norm):
        if l in shun or not l.is_coprime(levelN):
            continue
        if ray_trivial_unit(l, cond) is None:
            continue
        out.append(l)
        if len(out) == count:
            return out
    raise ExhaustedSearch(
        f"only {len(out)} of {count} ray-trivial primes below norm {max_norm}"
    )


def _restrict_operator(red: MatQ, opmat: MatQ) -> MatQ:
    """Matrix of an operator restricted to the span of an RREF basis."""
    images = red @ opmat
    rows = []
    for i in range(red.nrows):
        coords = coordinates_in_rowspace(red, images.arr[i])
        if coords is None:
            raise NotStable("subspace is not stable under the operator")
        rows.append(coords)
    if not rows:
        return MatQ(red.q, np.zeros((0, 0), dtype=np.int64))
    return MatQ(red.q, np.asarray(rows, dtype=np.int64))


def eisenstein_check(space: CohomSubspace, basis: MatQ, l: PIdeal) -> dict:
    """Nilpotency report for T_l - (N(l)+1) on the given stable subspace.

    basis rows live either in space coordinates or, for the kernel of
    the stacked degeneracy map, in doubled coordinates on which T_l
    acts blockwise.  Raises NotStable when the subspace escapes.
    """
    q = space.q.q
    t = hecke_matrix(l, space)
    d = space.dim
    if basis.ncols == d:
        opmat = t.mat
    elif basis.ncols == 2 * d:
        arr = np.zeros((2 * d, 2 * d), dtype=np.int64)
        arr[:d, :d] = t.mat.arr
        arr[d:, d:] = t.mat.arr
        opmat = MatQ(q, arr)
    else:
        raise ShapeMismatch(
            f"basis has {basis.ncols} columns, expected {d} or {2 * d}"
        )
    nlp1 = (l.norm() + 1) % q
    red = rref(basis)[0]
    dim_b = red.nrows
    report = {
        "l": format_ideal(l),
        "norm": l.norm(),
        "cosets": l.norm() + 1,
        "stable": True,
        "nilpotency_index": 0,
        "passed": True,
    }
    if dim_b == 0:
        return report
    rmat = _restrict_operator(red, opmat)
    rmat = rmat - MatQ(q, nlp1 * np.eye(dim_b, dtype=np.int64))
    power = MatQ.identity(q, dim_b)
    for e in range(dim_b + 1):
        if power.is_zero():
            report["nilpotency_index"] = e
            return report
        power = power @ rmat
    report["passed"] = False
    report["nilpotency_index"] = None
    return report
