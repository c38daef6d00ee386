"""Interval representation of O_A on step functions, and the sequence model of O_2.

Given a point ``a`` of Lambda(A) with eigenvector ``x`` the unit interval is
cut at ``c_i = x_1 + ... + x_i`` into cells ``R_i``.  The generator ``s_i`` maps
``R_j`` affinely onto ``V_ij = a_i R_j + b_ij`` (for ``A_ij = 1``) with
amplitude ``a_i ** -1/2``; the ``V_ij`` tile ``R_i``.  Step functions are
closed under these maps, so every operator is applied exactly, with no
quadrature.  Cells are half-open ``[t_k, t_{k+1})``; shared endpoints of the
closed intervals have measure zero and are ignored.

Rational points give rational breakpoints; amplitudes are then exact
:class:`~ckrep.scalars.Surd` values, and all identities hold with zero residual.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ConsistencyError, DomainError
from .scalars import conj, is_exact, sqrt
from .spectral import LambdaPoint, ZeroOneMatrix
from .words import FormalSum, Word

FLOAT_SNAP = 1e-14
FLOAT_TOL = 1e-12
RATE_SHIFT_TOL = 1e-8


# step functions -------------------------------------------------------------

def _is_zero(v) -> bool:
    return not v


@dataclass(frozen=True, eq=False)
class StepFunction:
    """Piecewise-constant function on [0, 1].

    ``breakpoints`` runs strictly increasing from 0 to 1; ``values[k]`` is the
    value on ``[breakpoints[k], breakpoints[k+1])``.  Adjacent equal values are
    merged, so equal functions have equal representations (exactly in
    rational mode).
    """

    breakpoints: tuple
    values: tuple

    def __post_init__(self):
        bp, vals = self.breakpoints, self.values
        if len(vals) != len(bp) - 1 or not vals:
            raise DomainError("a step function needs one value per cell")
        if bp[0] != 0 or bp[-1] != 1:
            raise DomainError("breakpoints must start at 0 and end at 1")
        if any(u >= v for u, v in zip(bp, bp[1:])):
            raise DomainError("breakpoints must be strictly increasing")

    @property
    def exact(self) -> bool:
        return isinstance(self.breakpoints[1], Fraction)

    @property
    def _zero(self):
        return Fraction(0) if self.exact else 0.0

    # construction ---------------------------------------------------------
    @classmethod
    def constant(cls, value=1, exact: bool = True) -> "StepFunction":
        if exact:
            return cls((Fraction(0), Fraction(1)), (value,))
        return cls((0.0, 1.0), (value,))

    @classmethod
    def zero(cls, exact: bool = True) -> "StepFunction":
        return cls.constant(Fraction(0) if exact else 0.0, exact)

    @classmethod
    def indicator(cls, lo, hi, value=1, exact: bool | None = None) -> "StepFunction":
        if exact is None:
            exact = isinstance(lo, Fraction) or isinstance(hi, Fraction) or (
                isinstance(lo, int) and isinstance(hi, int))
        if exact:
            lo, hi = Fraction(lo), Fraction(hi)
        return cls.from_segments([(lo, hi, value)], exact=exact)

    @classmethod
    def from_segments(cls, segments: Iterable[tuple], exact: bool) -> "StepFunction":
        """Assemble from disjoint ``(lo, hi, value)`` pieces; gaps are zero."""
        snap = 0 if exact else FLOAT_SNAP
        zero = Fraction(0) if exact else 0.0
        one = Fraction(1) if exact else 1.0
        pieces: list[list] = []
        cur = Fraction(0) if exact else 0.0
        for lo, hi, v in sorted(segments, key=lambda s: s[0]):
            if not exact:
                lo, hi = float(lo), float(hi)
            lo = max(lo, 0 * one)
            hi = min(hi, one)
            if lo - cur > snap:
                pieces.append([cur, lo, zero])
            else:
                lo = cur
            if hi - lo <= snap:
                continue
            pieces.append([lo, hi, v])
            cur = hi
        if one - cur > snap:
            pieces.append([cur, one, zero])
        elif pieces:
            pieces[-1][1] = one
        else:
            pieces.append([0 * one, one, zero])
        bps = [pieces[0][0]]
        vals: list = []
        for lo, hi, v in pieces:
            if vals and vals[-1] == v:
                bps[-1] = hi
            else:
                vals.append(v)
                bps.append(hi)
        return cls(tuple(bps), tuple(vals))

    # evaluation -----------------------------------------------------------
    def __call__(self, t):
        if not 0 <= t <= 1:
            raise DomainError(f"{t} outside [0, 1]")
        k = bisect.bisect_right(self.breakpoints, t) - 1
        return self.values[min(k, len(self.values) - 1)]

    def cells(self) -> Iterable[tuple]:
        bp = self.breakpoints
        return ((bp[k], bp[k + 1], v) for k, v in enumerate(self.values))

    def restrict(self, lo, hi) -> list[tuple]:
        """Pieces ``(max(lo, t_k), min(hi, t_{k+1}), value)`` meeting ``[lo, hi]``."""
        out = []
        bp = self.breakpoints
        k = max(bisect.bisect_right(bp, lo) - 1, 0)
        while k < len(self.values) and bp[k] < hi:
            u, w = max(lo, bp[k]), min(hi, bp[k + 1])
            if w > u:
                out.append((u, w, self.values[k]))
            k += 1
        return out

    def support_measure(self):
        return sum((hi - lo for lo, hi, v in self.cells() if not _is_zero(v)), self._zero)

    # algebra ----------------------------------------------------------------
    def _refine(self, other: "StepFunction"):
        a_bp, b_bp = self.breakpoints, other.breakpoints
        i = j = 0
        bps = [a_bp[0]]
        pairs = []
        while i < len(self.values) and j < len(other.values):
            pairs.append((self.values[i], other.values[j]))
            ta, tb = a_bp[i + 1], b_bp[j + 1]
            if ta == tb:
                bps.append(ta)
                i += 1
                j += 1
            elif ta < tb:
                bps.append(ta)
                i += 1
            else:
                bps.append(tb)
                j += 1
        return bps, pairs

    def _combine(self, other: "StepFunction", op) -> "StepFunction":
        bps, pairs = self._refine(other)
        segs = [(bps[k], bps[k + 1], op(u, v)) for k, (u, v) in enumerate(pairs)]
        return StepFunction.from_segments(segs, exact=self.exact and other.exact)

    def __add__(self, other):
        if not isinstance(other, StepFunction):
            return NotImplemented
        return self._combine(other, lambda u, v: u + v)

    def __sub__(self, other):
        if not isinstance(other, StepFunction):
            return NotImplemented
        return self._combine(other, lambda u, v: u - v)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, factor) -> "StepFunction":
        return StepFunction.from_segments(((lo, hi, factor * v) for lo, hi, v in self.cells()),
                                          exact=self.exact)

    def __mul__(self, factor):
        if isinstance(factor, StepFunction):
            return NotImplemented
        return self.scale(factor)

    __rmul__ = __mul__

    def inner(self, other: "StepFunction"):
        """L2 pairing ``int conj(f) g``, summed over the common refinement."""
        bps, pairs = self._refine(other)
        total = self._zero
        for k, (u, v) in enumerate(pairs):
            if _is_zero(u) or _is_zero(v):
                continue
            total = total + conj(u) * v * (bps[k + 1] - bps[k])
        return total

    def norm2(self):
        return self.inner(self)

    def norm(self) -> float:
        n2 = self.norm2()
        return 0.0 if _is_zero(n2) else math.sqrt(abs(float(n2.real if isinstance(n2, complex) else n2)))

    def is_zero(self) -> bool:
        return all(_is_zero(v) for v in self.values)

    def __eq__(self, other):
        if not isinstance(other, StepFunction):
            return NotImplemented
        return self.breakpoints == other.breakpoints and self.values == other.values

    __hash__ = None

    def allclose(self, other: "StepFunction", tol: float = FLOAT_TOL) -> bool:
        return (self - other).norm() <= tol

    def to_json(self) -> dict:
        return {"breakpoints": [_json_num(t) for t in self.breakpoints],
                "values": [_json_num(v) for v in self.values]}

    @classmethod
    def from_json(cls, data: dict, exact: bool = True) -> "StepFunction":
        from .scalars import parse_scalar

        conv = (lambda s: parse_scalar(str(s), exact))
        return cls.from_segments(
            [(conv(lo), conv(hi), conv(v)) for lo, hi, v in
             zip(data["breakpoints"], data["breakpoints"][1:], data["values"])], exact=exact)


def _json_num(v):
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else int(v)
    if is_exact(v):
        q = v.to_rational()
        return str(q) if q is not None else float(v)
    return v


def inner_product(f: StepFunction, g: StepFunction):
    return f.inner(g)


# generic representation helpers ---------------------------------------------

class Representation:
    """Shared word-level operations for carriers that define ``apply``/``adjoint``."""

    A: ZeroOneMatrix
    point: LambdaPoint

    @property
    def n(self) -> int:
        return self.A.n

    @property
    def exact(self) -> bool:
        return self.point.exact

    def apply(self, i: int, v):  # pragma: no cover - interface
        raise NotImplementedError

    def adjoint(self, i: int, v):  # pragma: no cover - interface
        raise NotImplementedError

    def cyclic(self):  # pragma: no cover - interface
        raise NotImplementedError

    def zero(self):  # pragma: no cover - interface
        raise NotImplementedError

    def _check_generator(self, i: int):
        if not isinstance(i, int) or not 1 <= i <= self.n:
            raise DomainError(f"generator index {i!r} outside 1..{self.n}")

    def apply_word(self, J: Word, v):
        """``s_J v = s_{j_1} ... s_{j_m} v``."""
        for letter in reversed(J):
            v = self.apply(letter, v)
        return v

    def adjoint_word(self, K: Word, v):
        """``s_K* v = s_{k_p}* ... s_{k_1}* v``."""
        for letter in K:
            v = self.adjoint(letter, v)
        return v

    def apply_pair(self, J: Word, K: Word, v):
        return self.apply_word(J, self.adjoint_word(K, v))

    def apply_formal_sum(self, f_sum: FormalSum, v):
        if f_sum.A != self.A:
            raise DomainError("formal sum and representation use different matrices")
        total = self.zero()
        for (J, K), c in f_sum.items():
            total = total + self.apply_pair(J, K, v).scale(c)
        return total

    def vector_state(self, f_sum: FormalSum, vector=None):
        vector = self.cyclic() if vector is None else vector
        return vector.inner(self.apply_formal_sum(f_sum, vector))

    def moment(self, J: Word, K: Word, vector=None):
        """``<v, s_J s_K* v>`` computed as ``<s_J* v, s_K* v>``."""
        vector = self.cyclic() if vector is None else vector
        return self.adjoint_word(J, vector).inner(self.adjoint_word(K, vector))


# interval system ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class IntervalSystem(Representation):
    """Breakpoints ``c``, offsets ``b`` and target intervals ``V`` for one point."""

    point: LambdaPoint
    c: tuple
    b: tuple
    R: tuple
    V: dict = field(repr=False)
    forward_amp: tuple = field(repr=False)
    adjoint_amp: tuple = field(repr=False)
    rate_shift: float = 0.0

    @property
    def A(self) -> ZeroOneMatrix:
        return self.point.A

    def one(self) -> StepFunction:
        return StepFunction.constant(Fraction(1) if self.exact else 1.0, self.exact)

    cyclic = one

    def zero(self) -> StepFunction:
        return StepFunction.zero(self.exact)

    def apply(self, i: int, f: StepFunction) -> StepFunction:
        """``(s_i f)(y) = a_i^{-1/2} f((y - b_ij) / a_i)`` on ``V_ij``, zero off ``R_i``."""
        self._check_generator(i)
        a = self.point.a[i - 1]
        amp = self.forward_amp[i - 1]
        segs = []
        for j in self.A.successors(i):
            b = self.b[i - 1][j - 1]
            lo, hi = self.R[j - 1]
            for u0, u1, v in f.restrict(lo, hi):
                if not _is_zero(v):
                    segs.append((a * u0 + b, a * u1 + b, amp * v))
        return StepFunction.from_segments(segs, exact=self.exact)

    def adjoint(self, i: int, f: StepFunction) -> StepFunction:
        """``(s_i* f)(t) = a_i^{1/2} f(a_i t + b_ij)`` on ``R_j`` with ``A_ij = 1``."""
        self._check_generator(i)
        a = self.point.a[i - 1]
        amp = self.adjoint_amp[i - 1]
        segs = []
        for j in self.A.successors(i):
            b = self.b[i - 1][j - 1]
            lo, hi = self.V[(i, j)]
            for y0, y1, v in f.restrict(lo, hi):
                if not _is_zero(v):
                    segs.append(((y0 - b) / a, (y1 - b) / a, amp * v))
        return StepFunction.from_segments(segs, exact=self.exact)

    def breakpoint_closure(self, depth: int = 1) -> list:
        """Cell edges ``c_i`` and ``V_ij`` endpoints, closed ``depth`` times under the maps."""
        pts = set(self.c)
        for lo, hi in self.V.values():
            pts.update((lo, hi))
        for _ in range(depth):
            new = set(pts)
            for (i, j), (vlo, vhi) in self.V.items():
                a = self.point.a[i - 1]
                b = self.b[i - 1][j - 1]
                rlo, rhi = self.R[j - 1]
                for t in pts:
                    if rlo <= t <= rhi:
                        new.add(a * t + b)
                    if vlo <= t <= vhi:
                        new.add((t - b) / a)
            pts = new
        pts = sorted(pts)
        if not self.exact:
            dedup = [pts[0]]
            for t in pts[1:]:
                if t - dedup[-1] > FLOAT_SNAP:
                    dedup.append(t)
            dedup[-1] = 1.0
            pts = dedup
        return pts

    def cell_indicators(self, depth: int = 1) -> list[StepFunction]:
        pts = self.breakpoint_closure(depth)
        return [StepFunction.indicator(lo, hi, exact=self.exact) for lo, hi in zip(pts, pts[1:])]


def _close(u, v, exact: bool) -> bool:
    return u == v if exact else abs(u - v) <= FLOAT_TOL


def build_interval_system(p: LambdaPoint) -> IntervalSystem:
    """Breakpoints ``c_i``, offsets ``b_ij``, cells ``R_i`` and targets ``V_ij``.

    ``c_i = x_1 + ... + x_i`` and
    ``b_ij = c_{i-1} - a_i * sum_{k <= j} (1 - A_ik) x_k``.
    In float mode the rates are taken as ``a_i = x_i / (A x)_i`` so that the
    targets tile each cell to rounding; an eigenvector that is only accurate
    to 1e-13 would otherwise leave slivers whose L2 norm is of order 1e-7.
    The shift from the given ``a`` is kept in ``rate_shift``.
    Raises :class:`ConsistencyError` if the tiling invariants fail.
    """
    A, a, x = p.A, p.a, p.x
    n = A.n
    exact = p.exact
    shift = 0.0
    if not exact:
        total = math.fsum(x)
        x = tuple(xi / total for xi in x)
        rates = tuple(x[i] / math.fsum(x[j - 1] for j in A.successors(i + 1)) for i in range(n))
        shift = max(abs(u - v) for u, v in zip(rates, a))
        if shift > RATE_SHIFT_TOL:
            raise ConsistencyError(f"eigenvector inconsistent with a (shift {shift:.3e})")
        a = rates
        p = LambdaPoint(A, a, x, p.residual, "float")
    zero = Fraction(0) if exact else 0.0
    c = [zero]
    for xi in x:
        c.append(c[-1] + xi)
    if exact:
        if c[-1] != 1:
            raise ConsistencyError("eigenvector does not sum to one")
    else:
        c[-1] = 1.0
    b = []
    for i in range(n):
        row, skipped = [], zero
        for j in range(n):
            skipped = skipped + (1 - A.rows[i][j]) * x[j]
            row.append(c[i] - a[i] * skipped)
        b.append(tuple(row))
    R = tuple((c[i], c[i + 1]) for i in range(n))
    V = {}
    for i in range(n):
        for j in range(n):
            if A.rows[i][j]:
                V[(i + 1, j + 1)] = (a[i] * c[j] + b[i][j], a[i] * c[j + 1] + b[i][j])
    # invariants
    if any(u >= v for u, v in zip(c, c[1:])):
        raise ConsistencyError("breakpoints are not strictly increasing")
    for i in range(n):
        if any(u < v for u, v in zip(b[i], b[i][1:])):
            raise ConsistencyError(f"offsets in row {i + 1} are not non-increasing")
        targets = [V[(i + 1, j)] for j in A.successors(i + 1)]
        if not _close(targets[0][0], R[i][0], exact) or not _close(targets[-1][1], R[i][1], exact):
            raise ConsistencyError(f"targets of generator {i + 1} do not cover R_{i + 1}")
        if any(not _close(u[1], v[0], exact) for u, v in zip(targets, targets[1:])):
            raise ConsistencyError(f"targets of generator {i + 1} leave gaps or overlap")
    forward = tuple(sqrt(1 / ai) for ai in a)
    adjoint = tuple(sqrt(ai) for ai in a)
    return IntervalSystem(p, tuple(c), tuple(b), R, V, forward, adjoint, shift)


def eta_apply(sys: IntervalSystem, i: int, f: StepFunction) -> StepFunction:
    return sys.apply(i, f)


def eta_adjoint_apply(sys: IntervalSystem, i: int, f: StepFunction) -> StepFunction:
    return sys.adjoint(i, f)


def apply_formal_sum(rep: Representation, f_sum: FormalSum, f):
    return rep.apply_formal_sum(f_sum, f)


def vector_state_eval(rep: Representation, f_sum: FormalSum):
    """``<1, eta(f) 1>`` (or ``<e_1, eta'(f) e_1>`` on the sequence carrier)."""
    return rep.vector_state(f_sum)


# relation checks ------------------------------------------------------------------

@dataclass
class RelationReport:
    max_residual: float
    residuals: dict
    probes: int
    exact: bool
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_residual == 0 if self.exact else self.max_residual <= self.tol

    def to_json(self) -> dict:
        return {"max_residual": self.max_residual, "residuals": self.residuals,
                "probes": self.probes, "exact": self.exact, "passed": self.passed}


def verify_ck_relations(rep: Representation, probes: Sequence | None = None,
                        tol: float = FLOAT_TOL) -> RelationReport:
    """Residuals (L2 norms) of the defining relations on every probe vector.

    ``s_i* s_i = sum_j A_ij s_j s_j*``, ``sum_i s_i s_i* = 1`` and
    ``s_i* s_j = 0`` for ``i != j``.
    """
    if probes is None:
        probes = rep.cell_indicators()
    probes = list(probes)
    if not probes:
        raise DomainError("at least one probe is needed")
    A = rep.A
    n = rep.n
    worst = {"range_projections": 0.0, "partition_of_unity": 0.0, "orthogonal_ranges": 0.0}
    for f in probes:
        ranges = [rep.apply(i, rep.adjoint(i, f)) for i in range(1, n + 1)]
        total = rep.zero()
        for g in ranges:
            total = total + g
        worst["partition_of_unity"] = max(worst["partition_of_unity"], (total - f).norm())
        for i in range(1, n + 1):
            si_f = rep.apply(i, f)
            lhs = rep.adjoint(i, si_f)
            rhs = rep.zero()
            for j in A.successors(i):
                rhs = rhs + ranges[j - 1]
            worst["range_projections"] = max(worst["range_projections"], (lhs - rhs).norm())
            for k in range(1, n + 1):
                if k != i:
                    worst["orthogonal_ranges"] = max(worst["orthogonal_ranges"],
                                                     rep.adjoint(k, si_f).norm())
    return RelationReport(max(worst.values()), worst, len(probes), rep.exact, tol)


# sequence carrier for O_2 ---------------------------------------------------------

class SequenceVector:
    """Finitely supported vector in l2(N) over the basis ``e_1, e_2, ...``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict | None = None):
        self.coeffs = {k: v for k, v in (coeffs or {}).items() if not _is_zero(v)}
        for k in self.coeffs:
            if not isinstance(k, int) or k < 1:
                raise DomainError(f"basis index {k!r} is not a positive integer")

    @classmethod
    def basis(cls, k: int, value=1) -> "SequenceVector":
        return cls({k: value})

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return SequenceVector(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, factor) -> "SequenceVector":
        return SequenceVector({k: factor * v for k, v in self.coeffs.items()})

    __mul__ = __rmul__ = scale

    def inner(self, other: "SequenceVector"):
        total = 0
        for k, v in self.coeffs.items():
            w = other.coeffs.get(k)
            if w is not None:
                total = total + conj(v) * w
        return total

    def norm(self) -> float:
        n2 = self.inner(self)
        return 0.0 if _is_zero(n2) else math.sqrt(abs(float(n2)))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, SequenceVector):
            return NotImplemented
        return self.coeffs == other.coeffs

    __hash__ = None

    def __repr__(self):
        return f"SequenceVector({dict(sorted(self.coeffs.items()))})"


class EtaPrime(Representation):
    """O_2 on l2(N): ``s_1 e_k = sqrt(a) e_{2k-1} - sqrt(b) e_{2k}``,
    ``s_2 e_k = sqrt(b) e_{2k-1} + sqrt(a) e_{2k}``, with ``a + b = 1``."""

    def __init__(self, a, b=None):
        if b is None:
            b = 1 - a
        exact = is_exact(a) and is_exact(b)
        if exact:
            a, b = Fraction(a), Fraction(b)
        else:
            a, b = float(a), float(b)
        if not (0 < a < 1 and 0 < b < 1):
            raise DomainError("both parameters must lie in (0, 1)")
        if (a + b != 1) if exact else abs(a + b - 1) > FLOAT_TOL:
            raise DomainError(f"parameters must sum to one, got {a + b}")
        self.a, self.b = a, b
        self.sqrt_a, self.sqrt_b = sqrt(a), sqrt(b)
        self.A = ZeroOneMatrix.ones(2)
        self.point = LambdaPoint(self.A, (a, b), (a, b), Fraction(0) if exact else 0.0,
                                 "exact" if exact else "float")

    def cyclic(self) -> SequenceVector:
        return SequenceVector.basis(1, Fraction(1) if self.exact else 1.0)

    def zero(self) -> SequenceVector:
        return SequenceVector()

    def _matrix(self, i: int):
        self._check_generator(i)
        # (coefficient on e_{2k-1}, coefficient on e_{2k})
        return (self.sqrt_a, -self.sqrt_b) if i == 1 else (self.sqrt_b, self.sqrt_a)

    def apply(self, i: int, v: SequenceVector) -> SequenceVector:
        odd, even = self._matrix(i)
        out: dict = {}
        for k, c in v.coeffs.items():
            out[2 * k - 1] = out.get(2 * k - 1, 0) + odd * c
            out[2 * k] = out.get(2 * k, 0) + even * c
        return SequenceVector(out)

    def adjoint(self, i: int, v: SequenceVector) -> SequenceVector:
        odd, even = self._matrix(i)
        out: dict = {}
        for k, c in v.coeffs.items():
            parent = (k + 1) // 2
            coeff = odd if k % 2 else even
            out[parent] = out.get(parent, 0) + conj(coeff) * c
        return SequenceVector(out)


def eta_prime_apply(a, i: int, v: SequenceVector) -> SequenceVector:
    """``eta'(s_i) v`` for the parameter pair ``a = (a, b)``."""
    return EtaPrime(*a).apply(i, v)


def eta_prime_adjoint_apply(a, i: int, v: SequenceVector) -> SequenceVector:
    return EtaPrime(*a).adjoint(i, v)


# fixed points ---------------------------------------------------------------------

def gp_fixed_point_check(rep: Representation, z: Sequence, candidate=None,
                         require_unit: bool = True) -> float:
    """``|| pi(z_1 s_1 + ... + z_n s_n) v - v ||`` for the candidate ``v``.

    ``candidate`` defaults to the representation's cyclic vector.  With
    ``require_unit`` the vector ``z`` must have norm one.
    """
    z = list(z)
    if len(z) != rep.n:
        raise DomainError(f"z has length {len(z)}, expected {rep.n}")
    if require_unit:
        nz = sum((conj(zi) * zi for zi in z), 0)
        bad = nz != 1 if all(is_exact(zi) for zi in z) else abs(complex(nz) - 1) > FLOAT_TOL
        if bad:
            raise DomainError(f"z must be a unit vector, |z|^2 = {nz}")
    v = rep.cyclic() if candidate is None else candidate
    total = rep.zero()
    for i, zi in enumerate(z, start=1):
        if not _is_zero(zi):
            total = total + rep.apply(i, v).scale(zi)
    return (total - v).norm()
