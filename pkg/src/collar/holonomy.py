"""Once-punctured torus holonomy and the radial-limit experiment.

A point ``(a, b, c)`` of H is realised by a pair ``A, B`` in SL(2, R)
with ``tr A = 2 cosh a``, ``tr B = 2 cosh b`` and ``tr AB = 2 cosh c``;
the collar equation is then exactly ``tr [A, B] = -2``.

Entries grow like ``exp(a + b + c)``, so matrices are held entrywise
in signed log form, together with a first-order bound on the absolute
error of every entry. The error bound is what decides whether a trace is distinguishable
from a parabolic one.
"""

import math
import re
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateA, DomainTooLarge, NotHyperbolic, NotOnH, UnsupportedWord, WordParseError
from .foliations import foliation_from_lengths
from .geometry import TriangleLengths, collar_residual_relative, invert_pi_delta, invert_pi_H
from .numerics import DEFAULT_TOL, LOG2, arccosh_from_log, log_cosh

UNIT_ROUNDOFF = 2.0 ** -53
# safety factor applied to the first-order error bound before deciding hyperbolicity
ERROR_INFLATION = 8.0
PARABOLIC_FLOOR = 1e-10
MAX_FOLIATION_EXPONENT = 3


def _log_sinh(x):
    return x + math.log(-math.expm1(-2.0 * x)) - LOG2


def _log_diff(l1, l2):
    """Sign and log|e^l1 - e^l2|; log is -inf for an exact zero."""
    if l1 == l2:
        return 0, -math.inf
    if l1 > l2:
        return 1, l1 + math.log(-math.expm1(l2 - l1))
    return -1, l2 + math.log(-math.expm1(l1 - l2))


def _exp_or_zero(x):
    return 0.0 if x == -math.inf else math.exp(x)


def _lse(values):
    """log(sum(exp(values))) with -inf entries allowed."""
    top = max(values)
    if top == -math.inf:
        return top
    return top + math.log(math.fsum(math.exp(v - top) for v in values))


def _signed_lse2(s1, l1, s2, l2):
    """Sign and log|s1 e^l1 + s2 e^l2|; -inf encodes zero."""
    if l1 < l2:
        s1, l1, s2, l2 = s2, l2, s1, l1
    if l1 == -math.inf or s1 == 0:
        return (s2, l2) if s2 and l2 > -math.inf else (0, -math.inf)
    if s2 == 0 or l2 == -math.inf:
        return s1, l1
    r = math.exp(l2 - l1)
    if s1 == s2:
        return s1, l1 + math.log1p(r)
    if r == 1.0:
        return 0, -math.inf
    return s1, l1 + math.log1p(-r)


_LOG_3U = math.log(3.0 * UNIT_ROUNDOFF)


@dataclass(frozen=True)
class LogMatrix:
    """2x2 matrix stored entrywise as sign and log|entry|, plus log error bounds.

    Entries are row-major 4-tuples. A single common scale is not enough:
    the diagonal of ``B`` can hold ``exp(-1000)`` next to ``exp(1000)``,
    and both matter after multiplying by ``A``.
    """

    signs: tuple
    logs: tuple
    log_errs: tuple

    @classmethod
    def from_entries(cls, signs, logs, log_errs):
        return cls(tuple(int(v) for v in signs), tuple(float(v) for v in logs),
                   tuple(float(v) for v in log_errs))

    def __matmul__(self, other):
        s1, l1, e1 = self.signs, self.logs, self.log_errs
        s2, l2, e2 = other.signs, other.logs, other.log_errs
        signs, logs, errs = [], [], []
        for i in (0, 2):
            for j in (0, 1):
                # entry (i, j) = self[i, 0] other[0, j] + self[i, 1] other[1, j]
                la, lb = l1[i] + l2[j], l1[i + 1] + l2[j + 2]
                sg, lg = _signed_lse2(s1[i] * s2[j], la, s1[i + 1] * s2[j + 2], lb)
                signs.append(sg)
                logs.append(lg)
                errs.append(_lse((
                    l1[i] + e2[j], e1[i] + l2[j], e1[i] + e2[j], la + _LOG_3U,
                    l1[i + 1] + e2[j + 2], e1[i + 1] + l2[j + 2], e1[i + 1] + e2[j + 2], lb + _LOG_3U,
                )))
        return LogMatrix(tuple(signs), tuple(logs), tuple(errs))

    def inverse(self):
        """Inverse of a determinant-one matrix: [[s, -q], [-r, p]]."""
        s, l, e = self.signs, self.logs, self.log_errs
        return LogMatrix((s[3], -s[1], -s[2], s[0]), (l[3], l[1], l[2], l[0]), (e[3], e[1], e[2], e[0]))

    def trace_log(self):
        """(log|tr|, sign, log of the error bound on tr)."""
        sign, lt = _signed_lse2(self.signs[0], self.logs[0], self.signs[3], self.logs[3])
        lerr = _lse((self.log_errs[0], self.log_errs[3], lt + math.log(UNIT_ROUNDOFF)))
        return lt, sign, lerr

    def to_array(self):
        top = max(self.logs)
        if top > 709.0:
            raise DomainTooLarge(f"matrix entries overflow (log {top:.1f})")
        return np.array([sg * _exp_or_zero(lg) for sg, lg in zip(self.signs, self.logs)]).reshape(2, 2)

    @classmethod
    def identity(cls):
        ninf = -math.inf
        return cls((1, 0, 0, 1), (0.0, ninf, ninf, 0.0), (ninf,) * 4)


@dataclass(frozen=True)
class HolonomyPair:
    A: LogMatrix
    B: LogMatrix

    @property
    def C(self):
        return self.A @ self.B

    def matrices(self):
        """Plain float arrays (A, B, AB); raises DomainTooLarge if they overflow."""
        return self.A.to_array(), self.B.to_array(), self.C.to_array()


def holonomy_from_lengths(t, check=True, tol=1e-9):
    """A = diag(e^a, e^-a), B = [[p, 1], [p s - 1, s]] with the three trace targets met.

    ``p = (cosh c - e^-a cosh b) / sinh a`` and ``s = 2 cosh b - p``, which
    rearranges to ``s = (e^a cosh b - cosh c) / sinh a``; both forms are
    evaluated in log scale. With ``check=False`` any positive triple is
    accepted (the pair then has ``tr [A, B] = 4 * collar_residual - 2``).
    """
    a, b, c = t
    if a <= 0.0:
        raise DegenerateA(f"a must be positive, got {a}")
    if min(b, c) <= 0.0:
        raise NotOnH(f"{t} has a non-positive component")
    if check and abs(collar_residual_relative(t)) > tol:
        raise NotOnH(f"{t} does not satisfy the collar equation")
    rel_in = UNIT_ROUNDOFF * (2.0 + max(a, b, c))
    log_rel = math.log(rel_in)
    lb, lc = log_cosh(b), log_cosh(c)
    lsa = _log_sinh(a)

    A = LogMatrix.from_entries(
        (1, 0, 0, 1), (a, -math.inf, -math.inf, -a),
        (log_rel + a, -math.inf, -math.inf, log_rel - a),
    )
    sp, lnum_p = _log_diff(lc, lb - a)
    lp = lnum_p - lsa
    lerr_p = log_rel + _lse((lc, lb - a)) - lsa
    ss, lnum_s = _log_diff(a + lb, lc)
    ls = lnum_s - lsa
    lerr_s = log_rel + _lse((a + lb, lc)) - lsa
    # q = p s - 1
    sps, lps = sp * ss, lp + ls
    if lps == -math.inf:
        sq, lq = -1, 0.0
    elif sps > 0 and lps > 40.0:
        sq, lq = 1, lps + math.log1p(-math.exp(-lps))
    else:
        val = math.expm1(lps) if sps > 0 else -math.exp(lps) - 1.0
        sq, lq = (1 if val > 0 else -1 if val < 0 else 0), (math.log(abs(val)) if val else -math.inf)
    lerr_q = _lse((lerr_p + ls, lerr_s + lp))
    B = LogMatrix.from_entries(
        (sp, 1, sq, ss), (lp, 0.0, lq, ls),
        (lerr_p, -math.inf, lerr_q, lerr_s),
    )
    return HolonomyPair(A, B)


_GREEK = {"α": "a", "β": "b"}


@dataclass(frozen=True)
class TorusWord:
    """A word in the free group on alpha, beta; letters are a, A, b, B (capital = inverse)."""

    letters: str

    def __post_init__(self):
        if not re.fullmatch(r"[aAbB]*", self.letters):
            raise WordParseError(f"word {self.letters!r} must use only the letters a, A, b, B")

    @classmethod
    def parse(cls, text):
        """Parse ``"abAB"``; also accepts Greek letters with ``⁻¹`` or ``^-1`` inverses."""
        s = text.strip()
        for g, latin in _GREEK.items():
            s = s.replace(g + "⁻¹", latin.upper()).replace(g + "^-1", latin.upper()).replace(g, latin)
        s = s.replace(" ", "").replace("*", "").replace(".", "")
        if s in ("", "1", "e"):
            return cls("")
        return cls(s)

    def reduced(self):
        out = []
        for ch in self.letters:
            if out and out[-1] == ch.swapcase():
                out.pop()
            else:
                out.append(ch)
        return TorusWord("".join(out))

    def cyclically_reduced(self):
        w = self.reduced().letters
        while len(w) >= 2 and w[0] == w[-1].swapcase():
            w = w[1:-1]
        return TorusWord(w)

    @property
    def word_length(self):
        return len(self.cyclically_reduced().letters)

    @property
    def abelianization(self):
        p = self.letters.count("a") - self.letters.count("A")
        q = self.letters.count("b") - self.letters.count("B")
        return p, q

    def __str__(self):
        return self.letters or "1"


COMMUTATOR = TorusWord("abAB")


def _word_matrix(h, w):
    A, B = h.A, h.B
    mats = {"a": A, "A": A.inverse(), "b": B, "B": B.inverse()}
    out = LogMatrix.identity()
    for ch in w.cyclically_reduced().letters:
        out = out @ mats[ch]
    return out


def word_trace_log(h, w):
    """(log|tr|, sign, log error bound) of the cyclically reduced word."""
    return _word_matrix(h, w).trace_log()


def word_trace(h, w):
    lt, sign, _ = word_trace_log(h, w)
    if lt > 709.0:
        raise DomainTooLarge(f"trace of {w} overflows (log {lt:.1f})")
    return sign * _exp_or_zero(lt)


def geodesic_half_length(h, w):
    """arccosh(|tr| / 2): half the length of the closed geodesic of ``w``.

    Raises NotHyperbolic when ``|tr| <= 2`` up to the propagated rounding
    error, e.g. for the commutator, which is parabolic.
    """
    lt, _, lerr = word_trace_log(h, w)
    margin = _lse((lerr + math.log(ERROR_INFLATION), math.log(PARABOLIC_FLOOR)))
    if lt <= _lse((LOG2, margin)):
        raise NotHyperbolic(f"word {w} is not distinguishable from parabolic/elliptic")
    return arccosh_from_log(lt - LOG2)


def _christoffel(p, q):
    """Lower Christoffel word with p letters a and q letters b (p, q >= 0, coprime)."""
    n = p + q
    return "".join("b" if (i * q) // n != ((i - 1) * q) // n else "a" for i in range(1, n + 1))


def _is_simple_power(w):
    """True if the cyclic word is a power of a simple closed curve."""
    letters = w.cyclically_reduced().letters
    if not letters:
        return False
    p, q = TorusWord(letters).abelianization
    k = math.gcd(abs(p), abs(q))
    if k == 0:
        return False
    base = _christoffel(abs(p) // k, abs(q) // k)
    if p < 0:
        base = base.replace("a", "A")
    if q < 0:
        base = base.replace("b", "B")
    target = base * k
    n = len(target)
    if len(letters) != n:
        return False
    return any(letters == target[i:] + target[:i] for i in range(n))


def foliation_half_length(p, w):
    """Predicted limit of (half length)/t along the ray t*p: |P a + sign Q b|.

    ``(P, Q)`` is the abelianization of ``w`` and ``(a, b, c)`` the
    triangle lengths on Delta over ``p``; this is the transverse measure
    of the straight (P, Q) curve. Only (powers of) simple curves with
    ``|P|, |Q| <= 3`` are supported.
    """
    P, Q = w.abelianization
    if max(abs(P), abs(Q)) > MAX_FOLIATION_EXPONENT or not _is_simple_power(w):
        raise UnsupportedWord(f"no foliation length prediction for {w}")
    fol = foliation_from_lengths(invert_pi_delta(p), tol=1e-12)
    wx, wy = fol.form
    return abs(P * wx + Q * wy)


def ray_limit_experiment(p, w, t_values, tol=DEFAULT_TOL):
    """``[(t, half_length(t p) / t), ...]`` with ``None`` where the word is not hyperbolic."""
    if p.x == 0.0 and p.y == 0.0:
        raise ValueError("direction must be non-zero")
    rows = []
    for t in t_values:
        h = holonomy_from_lengths(invert_pi_H(p * t, tol))
        try:
            rows.append((t, geodesic_half_length(h, w) / t))
        except NotHyperbolic:
            rows.append((t, None))
    return rows


def theta_roundtrip(t):
    """Lengths read back from the traces of a, b and ab."""
    h = holonomy_from_lengths(t)
    return TriangleLengths(
        geodesic_half_length(h, TorusWord("a")),
        geodesic_half_length(h, TorusWord("b")),
        geodesic_half_length(h, TorusWord("ab")),
    )


def commutator_trace_plus_two(h):
    """tr [A, B] + 2 for moderate-size pairs."""
    return word_trace(h, COMMUTATOR) + 2.0
