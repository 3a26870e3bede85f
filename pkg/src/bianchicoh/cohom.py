"""H^1(Gamma_0(n), Z/q), its parabolic and unit-invariant subspaces.

A cohomology class with trivial coefficients is a homomorphism to Z/q,
i.e. a functional on the Schreier generators killing every rewritten
relator; the full space is therefore the right kernel of the relator
matrix mod q.  The parabolic subspace imposes vanishing on the unipotent
stabilizer of every cusp (two conditions per cusp, one for each Z-basis
vector of the width ideal); torsion parts of the stabilizers contribute
nothing since q is coprime to their order.  The unit-invariant subspace
is the fixed space of conjugation by diag(u0, 1) for a generator u0 of
the unit group, which descends the computation from SL_2 to GL_2 level.

Cusps are enumerated exactly: candidates a/c with c running over the
divisors of the level generator and a over lifted invertible residues,
deduplicated with a certificate-producing equivalence test that solves
the stabilizer congruence over units.
"""

from __future__ import annotations

import numpy as np

from .errors import (
    BadModulus,
    ConstructionFailure,
    ProjectionFailure,
)
from .ideals import PIdeal, ResidueSystem, divisors
from .modlinalg import (
    MatQ,
    coordinates_in_rowspace,
    fixed_space,
    kernel_basis,
    rref,
)
from .qfield import Mat2, QuadInt, divides, exact_div, gcd, xgcd
from .schreier import CongCtx

FULL = "full"
PARABOLIC = "parabolic"
PARABOLIC_UNIT = "parabolic-unit-invariant"


class CoefficientModulus:
    """A prime coefficient modulus q >= 5 (hence coprime to 6 and units)."""

    __slots__ = ("q",)

    def __init__(self, q: int):
        if not isinstance(q, int) or q < 5:
            raise BadModulus(f"modulus must be a prime >= 5, got {q}")
        if any(q % p == 0 for p in range(2, int(q**0.5) + 1)):
            raise BadModulus(f"modulus {q} is not prime")
        self.q = q

    def __repr__(self):
        return f"CoefficientModulus({self.q})"


def _as_modulus(q) -> CoefficientModulus:
    return q if isinstance(q, CoefficientModulus) else CoefficientModulus(q)


class CohomSubspace:
    """A subspace of H^1 as an RREF row basis of functionals on sgens."""

    __slots__ = ("cc", "q", "basis", "kind")

    def __init__(self, cc: CongCtx, q: CoefficientModulus, basis: MatQ, kind):
        self.cc = cc
        self.q = q
        self.basis = basis
        self.kind = kind

    @property
    def dim(self) -> int:
        return self.basis.nrows

    def __repr__(self):
        return (
            f"CohomSubspace({self.kind}, level={self.cc.level}, "
            f"q={self.q.q}, dim={self.dim})"
        )


class Cusp:
    """A cusp a/c with an SL_2 matrix sending infinity to it."""

    __slots__ = ("a", "c", "gmat", "width_gen")

    def __init__(self, a: QuadInt, c: QuadInt, gmat: Mat2, width_gen: QuadInt):
        self.a = a
        self.c = c
        self.gmat = gmat
        self.width_gen = width_gen

    def __repr__(self):
        return f"Cusp({self.a}/{self.c})"


def h1(cc: CongCtx, q) -> CohomSubspace:
    """Full H^1(Gamma_0(level), Z/q) as kernel of the relator matrix."""
    qm = _as_modulus(q)
    relmat = MatQ(qm.q, cc.relmat)
    return CohomSubspace(cc, qm, kernel_basis(relmat), FULL)


# ---------------------------------------------------------------------------
# cusps


def _cusp_gmat(ctx, a: QuadInt, c: QuadInt) -> Mat2:
    g, s, t = xgcd(a, c)
    if not g.is_unit():
        raise ConstructionFailure(f"cusp {a}/{c} is not in lowest terms")
    # rescale so that s*a + t*c = 1 exactly
    gi = g.conjugate()  # g is a unit of norm 1
    s, t = s * gi, t * gi
    return Mat2(a, -t, c, s)


def _lift_coprime(abar: QuadInt, h: PIdeal, c: QuadInt) -> QuadInt:
    """Element congruent to abar mod h and coprime to c."""
    if gcd(abar, c).is_unit():
        return abar
    for k in ResidueSystem(PIdeal(c)).reps:
        cand = abar + k * h.gen
        if gcd(cand, c).is_unit():
            return cand
    raise ConstructionFailure(f"no coprime lift of {abar} mod {h} for {c}")


def cusp_equivalent(cc: CongCtx, a1, c1, a2, c2):
    """Exact equivalence test for two cusps under Gamma_0(level).

    Returns (True, gamma) with a membership-checked certificate mapping
    a1/c1 to a2/c2, or (False, None).  Solves the congruence
    c2*d1*t - c1*d2*t^{-1} = c1*c2*x (mod level) over units t, with x
    recovered by an extended-gcd division.
    """
    ctx = cc.ctx
    gen = cc.level.gen
    zero = ctx.zero
    g1 = _cusp_gmat(ctx, a1, c1)
    g2 = _cusp_gmat(ctx, a2, c2)
    c1c2 = c1 * c2
    for t in ctx.units:
        ti = t.conjugate()  # = t^{-1}, units have norm 1
        lhs = c2 * g1.d * t - c1 * g2.d * ti
        g = gcd(c1c2, gen) if not c1c2.is_zero() else gcd(zero, gen)
        if not divides(g, lhs):
            continue
        big_g = exact_div(gen, g)
        if big_g.is_unit():
            x = zero
        else:
            cq = exact_div(c1c2, g)
            _, s, _ = xgcd(cq, big_g)
            x = s * exact_div(lhs, g)
        b = Mat2(t, x, zero, ti)
        gamma = g2 * b * g1.inv_det_one()
        if not cc.membership(gamma):
            raise ConstructionFailure("cusp certificate escaped the level")
        va = gamma.a * a1 + gamma.b * c1
        vc = gamma.c * a1 + gamma.d * c1
        if va != a2 * t or vc != c2 * t:
            raise ConstructionFailure("cusp certificate moves the wrong cusp")
        return True, gamma
    return False, None


def cusps(cc: CongCtx) -> list[Cusp]:
    """Pairwise inequivalent, exhaustive cusp representatives."""
    ctx = cc.ctx
    n = cc.level
    candidates = [(ctx.one, ctx.zero)]  # infinity
    for div in divisors(n):
        c = div.gen
        h = div.add(PIdeal(exact_div(n.gen, c)))
        for abar in ResidueSystem(h).invertible_reps():
            a = _lift_coprime(abar, h, c)
            candidates.append((a, c))
    out: list[Cusp] = []
    for a, c in candidates:
        if any(cusp_equivalent(cc, a, c, x.a, x.c)[0] for x in out):
            continue
        out.append(Cusp(a, c, _cusp_gmat(ctx, a, c), n.colon_square(c)))
    return out


# ---------------------------------------------------------------------------
# subspaces


def _restrict_rows(space: CohomSubspace, cond_rows, kind) -> CohomSubspace:
    """Subspace of space killing the given integer condition rows."""
    if not cond_rows:
        return CohomSubspace(space.cc, space.q, space.basis, kind)
    q = space.q.q
    cond = MatQ(q, cond_rows)
    prod = space.basis @ cond.transpose()
    coords = kernel_basis(prod.transpose())
    newbasis = rref(coords @ space.basis)[0]
    return CohomSubspace(space.cc, space.q, newbasis, kind)


def parabolic(space: CohomSubspace, cusp_list=None) -> CohomSubspace:
    """Classes vanishing on the unipotent stabilizer of every cusp."""
    if space.kind != FULL:
        raise ValueError(f"parabolic expects a full space, got {space.kind}")
    cc = space.cc
    ctx = cc.ctx
    conds = []
    for cusp in cusp_list if cusp_list is not None else cusps(cc):
        gi = cusp.gmat.inv_det_one()
        for mult in (ctx.one, ctx.omega):
            xi = cusp.width_gen * mult
            m = cusp.gmat * Mat2(ctx.one, xi, ctx.zero, ctx.one) * gi
            conds.append(cc.express(m))
    return _restrict_rows(space, conds, PARABOLIC)


def _unit_conj_generator(ctx) -> QuadInt:
    """Generator u0 of the unit group defining the descent operator."""
    if ctx.d in (1, 3):
        return ctx.omega
    return -ctx.one


def unit_conjugation_operator(space: CohomSubspace) -> MatQ:
    """Matrix of f -> (g -> f(diag(u0,1) g diag(u0,1)^{-1})) on space."""
    cc = space.cc
    ctx = cc.ctx
    q = space.q.q
    u0 = _unit_conj_generator(ctx)
    u0i = u0.conjugate()
    vrows = []
    for _, m in cc.sgens:
        conj = Mat2(m.a, u0 * m.b, u0i * m.c, m.d)
        vrows.append(cc.express(conj))
    if space.dim == 0:
        return MatQ(q, np.zeros((0, 0), dtype=np.int64))
    v = MatQ(q, vrows)
    images = space.basis @ v.transpose()  # row i = values of U(f_i) on sgens
    rows = []
    for i in range(space.dim):
        coords = coordinates_in_rowspace(space.basis, images.arr[i])
        if coords is None:
            raise ProjectionFailure(
                "unit conjugation escapes the subspace; this is a bug"
            )
        rows.append(coords)
    return MatQ(q, rows)


def unit_invariants(space: CohomSubspace) -> CohomSubspace:
    """Fixed space of the unit conjugation operator (GL_2 descent)."""
    if space.kind not in (PARABOLIC, PARABOLIC_UNIT):
        raise ValueError(
            f"unit_invariants expects a parabolic space, got {space.kind}"
        )
    if space.dim == 0:
        return CohomSubspace(space.cc, space.q, space.basis, PARABOLIC_UNIT)
    op = unit_conjugation_operator(space)
    # op[i] holds the coordinates of U(f_i), so a class a @ basis is fixed
    # exactly when a @ op = a: the left fixed space, i.e. the right fixed
    # space of the transpose.
    fixed = fixed_space(op.transpose())
    newbasis = rref(fixed @ space.basis)[0]
    return CohomSubspace(space.cc, space.q, newbasis, PARABOLIC_UNIT)


def evaluate(space: CohomSubspace, coeffs, m: Mat2) -> int:
    """Value of the class with given basis coordinates on a matrix."""
    q = space.q.q
    vec = np.mod(np.asarray(coeffs, dtype=np.int64), q)
    if vec.shape != (space.dim,):
        raise ValueError(f"expected {space.dim} coordinates")
    functional = vec @ space.basis.arr % q
    ex = np.array(space.cc.express(m), dtype=np.int64)
    return int(functional @ ex % q)
