"""Free-group tensor representation and the moment comparison with the quasi-free state.

``Pi(s_i) = eta(s_i) (x) U_{xi_i}`` acts on finitely supported maps from reduced
free-group words to carrier vectors.  On the cyclic vector ``1 (x) e_eps`` the
group factor contributes ``delta(xi_J, xi_K)``, which is exactly what turns the
carrier's moments into the quasi-free state.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DomainError
from .interval import Representation
from .scalars import is_exact
from .words import CKMonomial, FormalSum, Word, nonzero_pairs, state_on_pair, WORD_LENGTH_CAP


@dataclass(frozen=True)
class ReducedWord:
    """Reduced word in the free group; letter ``+i`` is xi_i and ``-i`` its inverse."""

    letters: tuple[int, ...] = ()

    def __post_init__(self):
        for u, v in zip(self.letters, self.letters[1:]):
            if u == -v:
                raise DomainError(f"word {self.letters} is not reduced")
        if any(not isinstance(l, int) or l == 0 for l in self.letters):
            raise DomainError("letters are nonzero integers")

    def __len__(self):
        return len(self.letters)

    def is_identity(self) -> bool:
        return not self.letters

    def left_mul(self, letter: int) -> "ReducedWord":
        """``xi_letter * self`` in normal form."""
        if self.letters and self.letters[0] == -letter:
            return ReducedWord(self.letters[1:])
        return ReducedWord((letter,) + self.letters)

    def inverse(self) -> "ReducedWord":
        return ReducedWord(tuple(-l for l in reversed(self.letters)))

    def __str__(self):
        if not self.letters:
            return "e"
        return "".join(f"x{l}" if l > 0 else f"x{-l}^-1" for l in self.letters)


EPSILON = ReducedWord()


def reduce_word(letters: Iterable[int], n: int | None = None) -> ReducedWord:
    """Free reduction by a single stack pass; the result is unique."""
    stack: list[int] = []
    for l in letters:
        if not isinstance(l, int) or l == 0 or (n is not None and abs(l) > n):
            raise DomainError(f"letter {l!r} out of range")
        if stack and stack[-1] == -l:
            stack.pop()
        else:
            stack.append(l)
    return ReducedWord(tuple(stack))


def xi_word(J: Word) -> ReducedWord:
    """``xi_J = xi_{j_1} ... xi_{j_m}``; positive words are already reduced."""
    return ReducedWord(tuple(J))


class TensorVector:
    """Finitely supported map ReducedWord -> carrier vector; zeros are dropped."""

    __slots__ = ("parts",)

    def __init__(self, parts: dict | None = None):
        self.parts = {g: f for g, f in (parts or {}).items() if not f.is_zero()}

    @classmethod
    def elementary(cls, g: ReducedWord, f) -> "TensorVector":
        return cls({g: f})

    def __add__(self, other: "TensorVector") -> "TensorVector":
        out = dict(self.parts)
        for g, f in other.parts.items():
            out[g] = out[g] + f if g in out else f
        return TensorVector(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, factor) -> "TensorVector":
        return TensorVector({g: f.scale(factor) for g, f in self.parts.items()})

    def inner(self, other: "TensorVector"):
        total = 0
        for g, f in self.parts.items():
            h = other.parts.get(g)
            if h is not None:
                total = total + f.inner(h)
        return total

    def norm(self) -> float:
        n2 = self.inner(self)
        return 0.0 if not n2 else abs(float(n2)) ** 0.5

    def is_zero(self) -> bool:
        return not self.parts

    def support(self) -> list[ReducedWord]:
        return sorted(self.parts, key=lambda g: (len(g), g.letters))

    def __eq__(self, other):
        if not isinstance(other, TensorVector):
            return NotImplemented
        return self.parts == other.parts

    __hash__ = None

    def __repr__(self):
        return f"TensorVector({{{', '.join(str(g) for g in self.support())}}})"


class TensorRepresentation(Representation):
    """``Pi(s_i) = rep(s_i) (x) U_{xi_i}`` over a pluggable carrier ``rep``."""

    def __init__(self, rep: Representation):
        self.base = rep
        self.A = rep.A
        self.point = rep.point

    def cyclic(self) -> TensorVector:
        return TensorVector.elementary(EPSILON, self.base.cyclic())

    def zero(self) -> TensorVector:
        return TensorVector()

    def apply(self, i: int, v: TensorVector) -> TensorVector:
        self._check_generator(i)
        return TensorVector({g.left_mul(i): self.base.apply(i, f) for g, f in v.parts.items()})

    def adjoint(self, i: int, v: TensorVector) -> TensorVector:
        self._check_generator(i)
        return TensorVector({g.left_mul(-i): self.base.adjoint(i, f) for g, f in v.parts.items()})


def tensor_representation(rep: Representation) -> TensorRepresentation:
    return rep if isinstance(rep, TensorRepresentation) else TensorRepresentation(rep)


def pi_apply(rep: Representation, i: int, v: TensorVector) -> TensorVector:
    return tensor_representation(rep).apply(i, v)


def pi_adjoint_apply(rep: Representation, i: int, v: TensorVector) -> TensorVector:
    return tensor_representation(rep).adjoint(i, v)


def gns_moment(rep: Representation, m):
    """``<1 (x) e_eps, Pi(m) (1 (x) e_eps)>`` for a monomial, a pair ``(J, K)`` or a formal sum."""
    pi = tensor_representation(rep)
    if isinstance(m, CKMonomial):
        if m.A != pi.A:
            raise DomainError("monomial and representation use different matrices")
        m = FormalSum.word_pair(m.A, m.J, m.K)
    elif isinstance(m, tuple):
        m = FormalSum.word_pair(pi.A, *m)
    return pi.vector_state(m)


# comparison -------------------------------------------------------------------

def _deviation(u, v) -> float:
    d = u - v
    return 0.0 if not d else abs(float(d))


@dataclass
class MomentRow:
    J: Word
    K: Word
    gns: object
    state: object
    carrier: object
    deviation: float

    def to_json(self) -> dict:
        from .scalars import format_scalar

        return {"J": list(self.J), "K": list(self.K), "gns": format_scalar(self.gns),
                "state": format_scalar(self.state), "eta_only": format_scalar(self.carrier),
                "deviation": self.deviation}


@dataclass
class StateComparison:
    rows: list[MomentRow]
    max_len: int
    tol: float
    exact: bool

    @property
    def max_deviation(self) -> float:
        return max((r.deviation for r in self.rows), default=0.0)

    @property
    def worst(self) -> MomentRow | None:
        return max(self.rows, key=lambda r: r.deviation, default=None)

    @property
    def failures(self) -> list[MomentRow]:
        if self.exact:
            return [r for r in self.rows if r.deviation != 0]
        return [r for r in self.rows if r.deviation > self.tol]

    @property
    def passed(self) -> bool:
        return not self.failures

    def off_diagonal(self) -> list[MomentRow]:
        return [r for r in self.rows if r.J != r.K]

    def to_json(self, table: bool = True) -> dict:
        w = self.worst
        out = {"max_len": self.max_len, "pairs": len(self.rows), "exact": self.exact,
               "max_deviation": self.max_deviation, "passed": self.passed,
               "worst": None if w is None else {"J": list(w.J), "K": list(w.K),
                                                 "deviation": w.deviation}}
        if table:
            out["table"] = [r.to_json() for r in self.rows]
        return out


def compare_states(rep: Representation, max_len: int, tol: float = 1e-12,
                   pairs: Sequence[tuple[Word, Word]] | None = None) -> StateComparison:
    """Compare ``Pi``-moments with the quasi-free state on all nonzero pairs.

    Moments are formed as ``<Pi(s_J)* Omega, Pi(s_K)* Omega>`` from cached
    adjoint vectors; the carrier's own vector state (without the group factor)
    is recorded alongside for contrast.
    """
    if max_len < 0 or max_len > WORD_LENGTH_CAP:
        raise DomainError(f"max_len must lie in 0..{WORD_LENGTH_CAP}")
    base = rep.base if isinstance(rep, TensorRepresentation) else rep
    pi = tensor_representation(base)
    if pairs is None:
        pairs = nonzero_pairs(base.A, max_len)
    omega, cyc = pi.cyclic(), base.cyclic()
    pi_cache: dict = {}
    base_cache: dict = {}

    def pi_adj(J):
        if J not in pi_cache:
            pi_cache[J] = pi.adjoint_word(J, omega)
        return pi_cache[J]

    def base_adj(J):
        if J not in base_cache:
            base_cache[J] = base.adjoint_word(J, cyc)
        return base_cache[J]

    rows = []
    for J, K in pairs:
        g = pi_adj(J).inner(pi_adj(K))
        s = state_on_pair(base.point, J, K)
        e = base_adj(J).inner(base_adj(K))
        rows.append(MomentRow(J, K, g, s, e, _deviation(g, s)))
    exact = base.exact and all(is_exact(r.gns) or r.gns == 0 for r in rows)
    return StateComparison(rows, max_len, tol, exact)


def product_of(a: Sequence, J: Word):
    out = 1
    for j in J:
        out = out * a[j - 1]
    return out
