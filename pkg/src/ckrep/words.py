"""Word calculus for Cuntz-Krieger monomials ``s_J s_K*`` and the quasi-free state.

Letters are 1-based.  A word ``J = (j_1, ..., j_m)`` is admissible when every
transition ``j_t -> j_{t+1}`` is allowed by ``A``; the empty word stands for the
identity.  A pair ``(J, K)`` of admissible words gives a nonzero monomial
``s_J s_K*`` iff, when both are nonempty, the last letters share a successor:
``s_J s_K* = s_J (sum_l A[j_m, l] A[k_p, l] s_l s_l*) s_K*``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import DomainError, MalformedInputError, ResourceError, ZeroMonomialError
from .scalars import parse_scalar
from .spectral import LambdaPoint, ZeroOneMatrix

Word = tuple[int, ...]

WORD_LENGTH_CAP = 24


def _check_letters(A: ZeroOneMatrix, J) -> Word:
    J = tuple(J)
    for letter in J:
        if not isinstance(letter, int) or not 1 <= letter <= A.n:
            raise DomainError(f"letter {letter!r} outside 1..{A.n}")
    return J


def is_admissible_word(A: ZeroOneMatrix, J) -> bool:
    J = _check_letters(A, J)
    return all(A.allowed(p, q) for p, q in zip(J, J[1:]))


def _row_support(A: ZeroOneMatrix, J: Word) -> frozenset[int]:
    """Letters that may follow ``J``; the empty word allows all of them."""
    if not J:
        return frozenset(range(1, A.n + 1))
    return frozenset(A.successors(J[-1]))


def is_nonzero_monomial(A: ZeroOneMatrix, J, K) -> bool:
    J = _check_letters(A, J)
    K = _check_letters(A, K)
    if not (is_admissible_word(A, J) and is_admissible_word(A, K)):
        return False
    return bool(_row_support(A, J) & _row_support(A, K))


@dataclass(frozen=True)
class CKMonomial:
    """The nonzero element ``s_J s_K*`` of O_A."""

    A: ZeroOneMatrix
    J: Word = ()
    K: Word = ()

    def __post_init__(self):
        object.__setattr__(self, "J", _check_letters(self.A, self.J))
        object.__setattr__(self, "K", _check_letters(self.A, self.K))
        if not is_nonzero_monomial(self.A, self.J, self.K):
            raise ZeroMonomialError(f"{format_pair(self.J, self.K)} is zero for this matrix")

    @property
    def key(self) -> tuple[Word, Word]:
        return (self.J, self.K)

    def adjoint(self) -> "CKMonomial":
        return CKMonomial(self.A, self.K, self.J)

    def __str__(self):
        return format_pair(self.J, self.K)


def format_pair(J: Word, K: Word) -> str:
    if not J and not K:
        return "1"
    parts = []
    if J:
        parts.append("s[" + ",".join(map(str, J)) + "]")
    if K:
        parts.append("s[" + ",".join(map(str, K)) + "]'")
    return "*".join(parts)


class FormalSum:
    """Finite real-linear combination of nonzero monomials over one matrix.

    Like terms are merged and zero coefficients dropped.  Equality is
    structural; use :meth:`equivalent` to compare modulo the relation
    ``s_J s_K* = sum_l s_{Jl} s_{Kl}*``.
    """

    __slots__ = ("A", "_terms")

    def __init__(self, A: ZeroOneMatrix, terms: Iterable[tuple[object, CKMonomial | tuple[Word, Word]]] = ()):
        self.A = A
        acc: dict[tuple[Word, Word], object] = {}
        for coeff, mono in terms:
            if isinstance(mono, CKMonomial):
                if mono.A != A:
                    raise DomainError("monomial belongs to a different matrix")
                key = mono.key
            else:
                key = (tuple(mono[0]), tuple(mono[1]))
                CKMonomial(A, *key)
            acc[key] = acc.get(key, 0) + coeff
        self._terms = {k: c for k, c in acc.items() if c != 0}

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls, A: ZeroOneMatrix) -> "FormalSum":
        return cls(A)

    @classmethod
    def identity(cls, A: ZeroOneMatrix) -> "FormalSum":
        return cls(A, [(1, ((), ()))])

    @classmethod
    def word_pair(cls, A: ZeroOneMatrix, J=(), K=(), coeff=1) -> "FormalSum":
        """``coeff * s_J s_K*``, or the zero sum when that monomial vanishes."""
        J = _check_letters(A, J)
        K = _check_letters(A, K)
        if not is_nonzero_monomial(A, J, K):
            return cls(A)
        return cls(A, [(coeff, (J, K))])

    @classmethod
    def projection(cls, A: ZeroOneMatrix, J) -> "FormalSum":
        """``E_J = s_J s_J*``."""
        return cls.word_pair(A, J, J)

    # access -------------------------------------------------------------
    def items(self) -> Iterator[tuple[tuple[Word, Word], object]]:
        return iter(sorted(self._terms.items(), key=lambda kv: (len(kv[0][0]), len(kv[0][1]), kv[0])))

    def monomials(self) -> Iterator[tuple[object, CKMonomial]]:
        for (J, K), c in self.items():
            yield c, CKMonomial(self.A, J, K)

    def coefficient(self, J=(), K=()):
        return self._terms.get((tuple(J), tuple(K)), 0)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    # algebra ------------------------------------------------------------
    def _same_context(self, other: "FormalSum"):
        if other.A != self.A:
            raise DomainError("formal sums over different matrices")

    def __add__(self, other):
        if not isinstance(other, FormalSum):
            return NotImplemented
        self._same_context(other)
        return FormalSum(self.A, [(c, k) for k, c in self._terms.items()] +
                         [(c, k) for k, c in other._terms.items()])

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor) -> "FormalSum":
        return FormalSum(self.A, [(c * factor, k) for k, c in self._terms.items()])

    def __mul__(self, other):
        if isinstance(other, FormalSum):
            self._same_context(other)
            out = FormalSum(self.A)
            for k1, c1 in self._terms.items():
                for k2, c2 in other._terms.items():
                    prod = _pair_product(self.A, k1, k2)
                    out = out + prod.scale(c1 * c2)
            return out
        if isinstance(other, CKMonomial):
            return self * FormalSum(self.A, [(1, other)])
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def adjoint(self) -> "FormalSum":
        return FormalSum(self.A, [(c.conjugate(), (K, J)) for (J, K), c in self._terms.items()])

    # comparison ---------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, FormalSum):
            return NotImplemented
        return self.A == other.A and self._terms == other._terms

    __hash__ = None

    def expanded(self, depth: int) -> "FormalSum":
        """Rewrite until every monomial has ``min(|J|, |K|) >= depth``."""
        terms: list[tuple[object, tuple[Word, Word]]] = []
        stack = list((k, c) for k, c in self._terms.items())
        while stack:
            (J, K), c = stack.pop()
            if min(len(J), len(K)) >= depth:
                terms.append((c, (J, K)))
                continue
            for l in sorted(_row_support(self.A, J) & _row_support(self.A, K)):
                stack.append(((J + (l,), K + (l,)), c))
        return FormalSum(self.A, terms)

    def equivalent(self, other: "FormalSum") -> bool:
        """Equality in O_A, tested on a common expansion depth."""
        self._same_context(other)
        depth = max((min(len(J), len(K)) for J, K in list(self._terms) + list(other._terms)), default=0)
        return self.expanded(depth) == other.expanded(depth)

    def __repr__(self):
        return f"FormalSum({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        return " + ".join(f"{c}*{format_pair(J, K)}" for (J, K), c in self.items())


def _pair_product(A: ZeroOneMatrix, left: tuple[Word, Word], right: tuple[Word, Word]) -> FormalSum:
    """``(s_J s_K*)(s_L s_M*)`` by prefix cancellation."""
    (J, K), (L, M) = left, right
    p = min(len(K), len(L))
    if K[:p] != L[:p]:
        return FormalSum(A)
    if len(L) > len(K):
        # s_K* s_L = s_{L'} with L = K L'; admissibility of L covers the junction
        return FormalSum.word_pair(A, J + L[p:], M) if is_admissible_word(A, J + L[p:]) else FormalSum(A)
    if len(K) > len(L):
        Kp = K[p:]
        return FormalSum.word_pair(A, J, M + Kp) if is_admissible_word(A, M + Kp) else FormalSum(A)
    if not K:
        return FormalSum.word_pair(A, J, M)
    # K == L: s_K* s_K = sum_l A[k_p, l] s_l s_l*
    middle = _row_support(A, K)
    common = _row_support(A, J) & _row_support(A, M)
    if (J or M) and common <= middle:
        return FormalSum.word_pair(A, J, M)
    terms = [(1, (J + (l,), M + (l,))) for l in sorted(middle & common)]
    return FormalSum(A, terms)


def monomial_product(A: ZeroOneMatrix, m1: CKMonomial, m2: CKMonomial) -> FormalSum:
    """Product of two monomials as a formal sum.

    ``(s_J s_K*)(s_L s_M*)`` vanishes unless one of ``K``, ``L`` is a prefix of
    the other.  When ``K == L`` the middle factor ``s_K* s_K`` is the
    projection ``sum_l A[k_p, l] s_l s_l*``; it is absorbed when it acts
    trivially on the outer words and expanded one step otherwise.
    """
    for m in (m1, m2):
        if m.A != A:
            raise DomainError("monomial belongs to a different matrix")
    return _pair_product(A, m1.key, m2.key)


def enumerate_admissible(A: ZeroOneMatrix, m: int, cap: int = WORD_LENGTH_CAP) -> list[Word]:
    """All admissible words of length ``m`` in lexicographic order."""
    if m < 1:
        raise DomainError("word length must be at least 1")
    if m > cap:
        raise ResourceError(f"word length {m} exceeds cap {cap}")
    words: list[Word] = [(i,) for i in range(1, A.n + 1)]
    for _ in range(m - 1):
        words = [w + (j,) for w in words for j in A.successors(w[-1])]
    return words


def admissible_words_upto(A: ZeroOneMatrix, max_len: int, include_empty: bool = True,
                          cap: int = WORD_LENGTH_CAP) -> list[Word]:
    out: list[Word] = [()] if include_empty else []
    for m in range(1, max_len + 1):
        out.extend(enumerate_admissible(A, m, cap))
    return out


def nonzero_pairs(A: ZeroOneMatrix, max_len: int, cap: int = WORD_LENGTH_CAP) -> list[tuple[Word, Word]]:
    """Every pair ``(J, K)`` with ``|J|, |K| <= max_len`` and ``s_J s_K* != 0``."""
    words = admissible_words_upto(A, max_len, cap=cap)
    return [(J, K) for J in words for K in words
            if bool(_row_support(A, J) & _row_support(A, K))]


# quasi-free state ---------------------------------------------------------

def state_on_pair(p: LambdaPoint, J: Word, K: Word):
    """``delta_JK a_{j_1} ... a_{j_{m-1}} x_{j_m}``; the identity maps to 1."""
    if J != K:
        return 0
    if not J:
        return 1
    value = p.x[J[-1] - 1]
    for letter in J[:-1]:
        value = value * p.a[letter - 1]
    return value


def quasifree_eval(p: LambdaPoint, f) -> object:
    """Linear extension of the quasi-free state to a formal sum or monomial."""
    if isinstance(f, CKMonomial):
        f = FormalSum(f.A, [(1, f)])
    if f.A != p.A:
        raise DomainError("formal sum and parameter point use different matrices")
    total = 0
    for (J, K), c in f.items():
        total = total + c * state_on_pair(p, J, K)
    return total


# text syntax ---------------------------------------------------------------

_TOKEN = re.compile(r"""\s*(?:
    (?P<gen>s\[(?P<letters>[0-9,\s]*)\](?P<star>'?))
  | (?P<num>[0-9]+(?:\.[0-9]*)?(?:/[0-9]+)?)
  | (?P<op>[*+-])
)""", re.VERBOSE)


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise MalformedInputError(f"cannot parse expression near {text[pos:]!r}")
        if m.group("gen"):
            tokens.append(("gen" + ("*" if m.group("star") else ""), m.group("letters")))
        elif m.group("num"):
            tokens.append(("num", m.group("num")))
        else:
            tokens.append(("op", m.group("op")))
        pos = m.end()
    return tokens


def parse_formal_sum(A: ZeroOneMatrix, text: str, exact: bool = True) -> FormalSum:
    """Parse e.g. ``"s[3,1]*s[3,1]'"``, ``"1"`` or ``"2*s[1]*s[2]' - 1/2*s[2]'"``.

    ``s[...]`` is ``s_J`` and a trailing ``'`` marks the adjoint ``s_J*``.
    Factors joined by ``*`` are multiplied in O_A; numbers are coefficients.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise MalformedInputError("empty expression")
    total = FormalSum(A)
    pos = 0
    sign = 1
    if tokens[0] == ("op", "-") or tokens[0] == ("op", "+"):
        sign = -1 if tokens[0][1] == "-" else 1
        pos = 1
    while True:
        term = FormalSum.identity(A)
        coeff = 1
        expect_factor = True
        while pos < len(tokens):
            kind, val = tokens[pos]
            if expect_factor:
                if kind == "num":
                    coeff = coeff * parse_scalar(val, exact)
                elif kind.startswith("gen"):
                    try:
                        word = _check_letters(A, tuple(int(t) for t in val.split(",") if t.strip()))
                    except (DomainError, ValueError) as exc:
                        raise MalformedInputError(f"bad word s[{val}]: {exc}") from exc
                    factor = (FormalSum.word_pair(A, (), word) if kind == "gen*"
                              else FormalSum.word_pair(A, word, ()))
                    term = term * factor
                else:
                    raise MalformedInputError(f"unexpected {val!r}")
                expect_factor = False
            elif (kind, val) == ("op", "*"):
                expect_factor = True
            else:
                break
            pos += 1
        if expect_factor:
            raise MalformedInputError("expression ends with an operator")
        total = total + term.scale(sign * coeff)
        if pos == len(tokens):
            return total
        sign = -1 if tokens[pos][1] == "-" else 1
        pos += 1
