"""Numeric companions to the exact kernel.

Roots of univariate polynomials come from companion-matrix eigenvalues
(numpy) refined by Newton's method in extended precision (mpmath).  A root
that is recognized as an element of Q or Q(omega) and verified by exact
evaluation is reported exactly; the rest carry only a numeric value.
Numeric ranks are decided by a singular value gap.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath
import numpy as np

from .algebra.fields import QQ, QQ_OMEGA, QOmega
from .algebra.polynomial import PolyRing, Polynomial
from .algebra.univariate import squarefree_part, to_dense, udivmod

ROOT_TOL = 1e-9
REFINE_TOL = 1e-12
RANK_GAP = 1e-6
WORKING_DPS = 60


@dataclass(frozen=True)
class Root:
    value: complex
    exact: object | None = None

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    def __repr__(self):
        if self.exact is not None:
            return f"Root({self.exact})"
        return f"Root(~{self.value:.12g})"


def to_mp(c):
    if isinstance(c, QOmega):
        return mpmath.mpf(c.a.numerator) / c.a.denominator + (
            mpmath.mpf(c.b.numerator) / c.b.denominator
        ) * mpmath.mpc(-0.5, mpmath.sqrt(3) / 2)
    if isinstance(c, Fraction):
        return mpmath.mpf(c.numerator) / c.denominator
    if isinstance(c, int):
        return mpmath.mpf(c)
    return mpmath.mpc(c)


def _mp_eval(coeffs, z):
    acc = mpmath.mpc(0)
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def _newton(coeffs, dcoeffs, z, steps=80):
    for _ in range(steps):
        fz = _mp_eval(coeffs, z)
        dz = _mp_eval(dcoeffs, z)
        if dz == 0:
            break
        step = fz / dz
        z = z - step
        if abs(step) < mpmath.mpf(10) ** (-(WORKING_DPS - 10)) * max(1, abs(z)):
            break
    return z


def _recognize(z, max_den=10**15):
    """Candidates in Q then Q(omega) for an mp complex number."""
    out = []
    re, im = mpmath.re(z), mpmath.im(z)
    scale = max(mpmath.mpf(1), abs(z))
    if abs(im) < mpmath.mpf(10) ** -30 * scale:
        out.append(Fraction(str(mpmath.nstr(re, 40))).limit_denominator(max_den))
    b = im / (mpmath.sqrt(3) / 2)
    a = re + b / 2
    fa = Fraction(str(mpmath.nstr(a, 40))).limit_denominator(max_den)
    fb = Fraction(str(mpmath.nstr(b, 40))).limit_denominator(max_den)
    if fb != 0:
        out.append(QOmega(fa, fb))
    return out


def numeric_roots(p: Polynomial) -> list:
    """Simple roots of a square-free univariate polynomial, refined in mp precision."""
    coeffs = to_dense(p)
    if len(coeffs) <= 1:
        return []
    with mpmath.workdps(WORKING_DPS):
        mpc = [to_mp(c) for c in coeffs]
        dmpc = [k * mpc[k] for k in range(1, len(mpc))]
        lead = mpc[-1]
        approx = np.roots([complex(c / lead) for c in reversed(mpc)])
        roots = [_newton(mpc, dmpc, mpmath.mpc(complex(z))) for z in approx]
    return roots


def polynomial_roots(p: Polynomial) -> list[Root]:
    """Distinct roots of a univariate polynomial, exact where they lie in Q(omega)."""
    if p.ring.ngens != 1:
        raise ValueError("polynomial_roots needs a univariate polynomial")
    if p.total_degree() <= 0:
        return []
    remaining = squarefree_part(p)
    found: list[Root] = []
    while remaining.total_degree() > 0:
        hit = None
        with mpmath.workdps(WORKING_DPS):
            approx = numeric_roots(remaining)
            for z in approx:
                for cand in _recognize(z):
                    field = remaining.ring.field
                    if isinstance(cand, QOmega) and field == QQ:
                        probe = remaining.change_ring(remaining.ring.with_field(QQ_OMEGA))
                    else:
                        probe = remaining
                    if probe.evaluate([cand]) == 0:
                        hit = (cand, probe)
                        break
                if hit:
                    break
        if hit is None:
            break
        cand, probe = hit
        found.append(Root(complex(cand), cand))
        lin = probe.ring.gen(0) - probe.ring.constant(cand)
        remaining = udivmod(probe, lin)[0]
    with mpmath.workdps(WORKING_DPS):
        for z in numeric_roots(remaining) if remaining.total_degree() > 0 else []:
            found.append(Root(complex(z)))
    return found


def evaluate_mp(f: Polynomial, point: Sequence):
    pt = [to_mp(x) if not isinstance(x, (mpmath.mpc, mpmath.mpf)) else x for x in point]
    total = mpmath.mpc(0)
    for e, c in f.terms.items():
        term = to_mp(c)
        for x, k in zip(pt, e):
            if k:
                term *= x**k
        total += term
    return total


def newton_system(polys: Sequence[Polynomial], point: Sequence, steps: int = 60):
    """Gauss-Newton refinement of a common zero of ``polys`` in mp precision."""
    ring = polys[0].ring
    jac = [[p.derivative(v) for v in ring.variables] for p in polys]
    with mpmath.workdps(WORKING_DPS):
        x = mpmath.matrix([to_mp(c) if not isinstance(c, complex) else mpmath.mpc(c) for c in point])
        for _ in range(steps):
            F = mpmath.matrix([evaluate_mp(p, x) for p in polys])
            J = mpmath.matrix([[evaluate_mp(d, x) for d in row] for row in jac])
            JH = J.H
            try:
                step = mpmath.lu_solve(JH * J, JH * F)
            except ZeroDivisionError:
                break
            x = x - step
            if mpmath.norm(step) < mpmath.mpf(10) ** (-(WORKING_DPS - 15)):
                break
        return [x[i] for i in range(len(point))]


def numeric_rank(matrix, gap: float = RANK_GAP) -> int:
    A = np.array(matrix, dtype=complex)
    if A.size == 0:
        return 0
    s = np.linalg.svd(A, compute_uv=False)
    scale = max(1.0, float(s[0]))
    return int(np.sum(s > gap * scale))


def complex_hessian(f: Polynomial, point: Sequence, variables: Sequence[str] | None = None):
    variables = list(variables or f.ring.variables)
    pt = [complex(x) for x in point]
    grads = [f.derivative(v) for v in variables]
    return [[g.derivative(v).evaluate_complex(pt) for v in variables] for g in grads]


def univariate_ring(name: str = "z", field=QQ) -> PolyRing:
    return PolyRing((name,), field)


def algebraic_root(p: Polynomial, root: Root, symbol: str = "theta"):
    """The root as an exact element of Q(theta), theta the root of ``p`` nearest ``root.value``."""
    if root.is_exact:
        return root.exact
    if p.ring.field != QQ:
        raise ValueError("algebraic roots are supported over Q only")
    from .algebra.numberfield import AlgebraicRootField

    sq = squarefree_part(p)
    coeffs = to_dense(sq)
    with mpmath.workdps(WORKING_DPS):
        mpc = [to_mp(c) for c in coeffs]
        dmpc = [k * mpc[k] for k in range(1, len(mpc))]
        z = _newton(mpc, dmpc, mpmath.mpc(root.value))
    return AlgebraicRootField(coeffs, z, symbol).gen
