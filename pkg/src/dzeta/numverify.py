"""Independent arbitrary-precision numerical oracle.

This module never feeds values back into the exact pipeline; it exists to
falsify.  Zeta values come from an Euler-Maclaurin tail with an explicit
remainder bound; the weighted harmonic sums use the digamma/trigamma
asymptotics so a short partial sum plus closed-form power/log tails reaches
any reasonable precision; alternating sums use repeated pair averaging with a
bracketing-based error estimate.  Working precision always carries guard bits
beyond the requested digits, so reported tail bounds dominate rounding.

Big floats are mpmath `mpf` values; pi and Euler's constant come from mpmath's
standard arbitrary-precision constants (pi is cross-checked against the
series for the weight-2 sum in the test suite).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

import mpmath
from mpmath import mpf

from .identities import FourierIdentity, IdentityRecord
from .symfield import SymNumber, bernoulli

BigReal = mpf

_GUARD_BITS = 48


def _to_mpf(value) -> mpf:
    """Exact rational (or int/float) to mpf at the current working precision."""
    if isinstance(value, Fraction):
        return mpf(value.numerator) / value.denominator
    return mpf(value)


class PrecisionUnreachable(ArithmeticError):
    def __init__(self, message, achieved_digits=None):
        super().__init__(message)
        self.achieved_digits = achieved_digits


def _workprec(digits: int):
    return mpmath.workprec(int(digits * 3.33) + _GUARD_BITS)


def pi_num(digits: int) -> BigReal:
    with _workprec(digits):
        return +mpmath.pi


class _TailResult(NamedTuple):
    value: mpf
    bound: mpf  # rigorous bound on the estimation error


def _powerlog_tail(c_log, c_const, r: int, x0, step: int = 1,
                   levels: int = 14) -> _TailResult:
    """sum_{j>=0} f(x0 + step*j) for f(y) = y^-r (c_log ln y + c_const).

    Euler-Maclaurin in j with the periodized-Bernoulli remainder bound
    |R| <= 4 (2 pi)^(-2J) int |h^(2J)|; requires r >= 2 and x0 >= 1.
    """
    if r < 2:
        raise ValueError("tail requires decay exponent >= 2")
    x0 = mpf(x0)
    if x0 < 1:
        raise ValueError("tail start must be >= 1")
    c_log = mpf(c_log)
    c_const = mpf(c_const)
    ln0 = mpmath.ln(x0)

    # f^(p)(y) = y^(-r-p) (A_p ln y + B_p)
    A = [c_log]
    B = [c_const]
    for p in range(2 * levels + 1):
        A.append(-(r + p) * A[p])
        B.append(-(r + p) * B[p] + A[p])

    def integral(a_coeff, b_coeff, power):
        # int_x0^inf y^-power (a ln y + b) dy for power >= 2
        base = x0 ** (1 - power) / (power - 1)
        return base * (a_coeff * (ln0 + mpf(1) / (power - 1)) + b_coeff)

    total = integral(c_log, c_const, r) / step
    total += (x0 ** (-r)) * (c_log * ln0 + c_const) / 2
    for i in range(1, levels + 1):
        p = 2 * i - 1
        deriv = (step ** p) * x0 ** (-r - p) * (A[p] * ln0 + B[p])
        total -= _to_mpf(bernoulli(2 * i)) / mpmath.factorial(2 * i) * deriv
    p = 2 * levels
    abs_integral = integral(abs(A[p]), abs(B[p]) + abs(A[p]), r + p)
    bound = 4 * (step / (2 * mpmath.pi)) ** (2 * levels) * abs_integral / step
    return _TailResult(total, abs(bound))


def zeta_num(s: int, digits: int) -> BigReal:
    """zeta(s) for integer s >= 2 by partial sum plus Euler-Maclaurin tail."""
    value, _ = _zeta_with_bound(s, digits)
    return value


@functools.lru_cache(maxsize=None)
def _zeta_with_bound(s: int, digits: int) -> _TailResult:
    if s < 2:
        raise ValueError("s must be >= 2")
    target = mpf(10) ** (-digits)
    with _workprec(digits):
        for n_terms in (24, 48, 96, 192):
            partial = mpmath.fsum(mpf(n) ** (-s) for n in range(1, n_terms + 1))
            tail = _powerlog_tail(0, 1, s, n_terms + 1)
            if tail.bound < target:
                return _TailResult(+(partial + tail.value), +tail.bound)
    raise PrecisionUnreachable(f"zeta({s}) to {digits} digits")


def _dzv_with_bound(k: int, m: int, digits: int,
                    max_terms: Optional[int] = None) -> _TailResult:
    """Weighted harmonic sum  sum_{n>=1} H_{n,m} / (n+1)^k.

    Shifted to u = n+1 the summand is (psi(u) + euler)/u^k for m = 1 and
    (zeta(2) - psi'(u))/u^k for m = 2; inserting the digamma/trigamma
    asymptotics (remainders bounded by the first omitted term) leaves
    closed-form power and power-log tails.
    """
    if k < 2 or m not in (1, 2):
        raise ValueError("need k >= 2 and m in {1, 2}")
    target = mpf(10) ** (-digits)
    corrections = 6
    with _workprec(digits):
        options = [64, 128, 256]
        if max_terms is not None:
            options = [min(o, max_terms) for o in options]
        best_bound = None
        for cutoff in options:
            partial = mpf(0)
            h = mpf(0)
            for n in range(1, cutoff):
                h += mpf(n) ** (-m)
                partial += h / mpf(n + 1) ** k
            u0 = cutoff + 1  # tail starts at u = cutoff + 1, i.e. n = cutoff
            bound = mpf(0)
            if m == 1:
                tail_t = [_powerlog_tail(0, 1, k + j, u0)
                          for j in (0, 1, *range(2, 2 * corrections + 1, 2))]
                tail_log = _powerlog_tail(1, 0, k, u0)
                tail = tail_log.value + mpmath.euler * tail_t[0].value \
                    - tail_t[1].value / 2
                bound += tail_log.bound + mpmath.euler * tail_t[0].bound \
                    + tail_t[1].bound / 2
                for idx, i in enumerate(range(1, corrections + 1)):
                    b2i = _to_mpf(bernoulli(2 * i))
                    tail -= b2i / (2 * i) * tail_t[2 + idx].value
                    bound += abs(b2i) / (2 * i) * tail_t[2 + idx].bound
                rem = _powerlog_tail(0, 1, k + 2 * corrections + 2, u0)
                b_next = abs(_to_mpf(bernoulli(2 * corrections + 2)))
                bound += b_next / (2 * corrections + 2) \
                    * (rem.value + rem.bound)
            else:
                zeta2 = mpmath.pi ** 2 / 6
                t_k = _powerlog_tail(0, 1, k, u0)
                t_k1 = _powerlog_tail(0, 1, k + 1, u0)
                t_k2 = _powerlog_tail(0, 1, k + 2, u0)
                tail = zeta2 * t_k.value - t_k1.value - t_k2.value / 2
                bound += zeta2 * t_k.bound + t_k1.bound + t_k2.bound / 2
                for i in range(1, corrections + 1):
                    b2i = _to_mpf(bernoulli(2 * i))
                    t = _powerlog_tail(0, 1, k + 2 * i + 1, u0)
                    tail -= b2i * t.value
                    bound += abs(b2i) * t.bound
                rem = _powerlog_tail(0, 1, k + 2 * corrections + 3, u0)
                b_next = abs(_to_mpf(bernoulli(2 * corrections + 2)))
                bound += 2 * b_next * (rem.value + rem.bound)
            best_bound = bound if best_bound is None else min(best_bound, bound)
            if bound < target:
                return _TailResult(+(partial + tail), +bound)
    achieved = int(-mpmath.log10(best_bound)) if best_bound and best_bound > 0 else 0
    raise PrecisionUnreachable(
        f"dzv({k},{m}) tail bound {mpmath.nstr(best_bound, 3)} exceeds "
        f"10^-{digits} within the term budget", achieved_digits=achieved)


def dzv_num(k: int, m: int, digits: int, max_terms: Optional[int] = None) -> BigReal:
    return _dzv_with_bound(k, m, digits, max_terms).value


def _alt_with_bound(k: int, m: int, digits: int,
                    max_terms: Optional[int] = None) -> _TailResult:
    """Alternating sum  sum_{n>=1} (-1)^n H_{n,m} / (n+1)^k.

    Repeated pair averaging of the partial sums.  At every level consecutive
    averaged values must keep bracketing the limit (they do for terms whose
    finite differences are monotone, which holds here beyond small n and is
    checked numerically); the final gap then bounds the error.
    """
    if k < 2 or m not in (1, 2):
        raise ValueError("need k >= 2 and m in {1, 2}")
    target = mpf(10) ** (-digits)

    def averaged(n_terms: int, window: int) -> _TailResult:
        h = mpf(0)
        sums = []
        acc = mpf(0)
        for n in range(1, n_terms + 1):
            h += mpf(n) ** (-m)
            acc += (-1) ** n * h / mpf(n + 1) ** k
            sums.append(acc)
        row = sums[-(window + 1):]
        value = (row[-1] + row[-2]) / 2
        bound = abs(row[-1] - row[-2])
        while len(row) > 2:
            gaps = [row[i + 1] - row[i] for i in range(len(row) - 1)]
            signs = [mpmath.sign(g) for g in gaps if g != 0]
            if any(signs[i] == signs[i + 1] for i in range(len(signs) - 1)):
                break  # alternation lost: stop at the last valid bracket
            # entries straddle the limit; the last pair brackets tightest
            value = (row[-1] + row[-2]) / 2
            bound = abs(row[-1] - row[-2])
            if not bound:
                break
            row = [(row[i] + row[i + 1]) / 2 for i in range(len(row) - 1)]
        return _TailResult(value, bound)

    with _workprec(digits):
        # Windows stay shallow relative to the start index: bracketing needs
        # the window-depth finite differences of the terms to stay monotone,
        # which the log-growth factor only guarantees for ln(start) above the
        # harmonic number of the depth.  Successive estimates cross-check each
        # other and their spread is folded into the reported bound.
        options = [(240, 40), (480, 80), (960, 160)]
        if max_terms is not None:
            options = [(min(n, max_terms), max(2, min(w, max_terms // 4)))
                       for n, w in options]
        best = None
        previous = None
        for n_terms, window in options:
            est = averaged(n_terms, window)
            if previous is not None:
                bound = max(est.bound, abs(est.value - previous.value))
                if best is None or bound < best.bound:
                    best = _TailResult(+est.value, +bound)
                if best.bound < target:
                    return best
            previous = est
        if best is None:
            best = _TailResult(+previous.value, +previous.bound)
    achieved = int(-mpmath.log10(best.bound)) if best.bound > 0 else digits
    raise PrecisionUnreachable(
        f"alternating sum ({k},{m}) reached only ~{achieved} digits",
        achieved_digits=achieved)


def alt_sum_num(k: int, m: int, digits: int,
                max_terms: Optional[int] = None) -> BigReal:
    return _alt_with_bound(k, m, digits, max_terms).value


# ---------------------------------------------------------------------------
# Symbolic-to-numeric substitution.

def sym_to_mpf(x: SymNumber, digits: int) -> BigReal:
    """Evaluate an unknown-free symbolic number with oracle zeta values."""
    with _workprec(digits + 8):
        total = mpf(0)
        for mono, coeff in x.terms():
            if mono.unknown is not None:
                raise ValueError("cannot evaluate a formal unknown numerically")
            if coeff.im:
                raise ValueError("cannot evaluate a complex value as a real")
            term = _to_mpf(coeff.re)
            if mono.pi_exp:
                term *= mpmath.pi ** mono.pi_exp
            for s, e in mono.zetas:
                term *= zeta_num(s, digits + 8) ** e
            total += term
        return +total


# ---------------------------------------------------------------------------
# Reports.

@dataclass(frozen=True)
class NumericReport:
    identity: str
    lhs: str
    rhs: str
    abs_error: float
    rel_error: float
    tail_bound: float
    tolerance: float
    passed: bool

    def to_json_dict(self) -> dict:
        return {
            "identity": self.identity,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "abs_error": repr(self.abs_error),
            "rel_error": repr(self.rel_error),
            "tail_bound": repr(self.tail_bound),
            "tolerance": repr(self.tolerance),
            "passed": self.passed,
        }


def verify_identity_numeric(rec: IdentityRecord, digits: int = 12,
                            tolerance: float = 1e-8) -> NumericReport:
    """Compare an identity's left side (summed directly) with its solved
    right side (zeta oracle substitution).  Pass requires relative error
    within tolerance and the summation tail bound under a tenth of it."""
    if rec.kind == "trivial":
        raise ValueError("trivial records carry nothing to verify")
    with _workprec(digits):
        if rec.kind == "dzv":
            lhs = _dzv_with_bound(rec.k, rec.m, digits)
        else:
            lhs = _alt_with_bound(rec.k, rec.m, digits)
        rhs = sym_to_mpf(rec.value, digits)
        abs_err = abs(lhs.value - rhs)
        scale = max(abs(lhs.value), abs(rhs), mpf(1) * 10 ** (-digits))
        rel_err = abs_err / scale
        passed = bool(rel_err <= tolerance and lhs.bound <= tolerance / 10)
        name = rec.lhs_label()
        return NumericReport(
            identity=f"{name}@{rec.point:+d}",
            lhs=mpmath.nstr(lhs.value, digits),
            rhs=mpmath.nstr(rhs, digits),
            abs_error=float(abs_err),
            rel_error=float(rel_err),
            tail_bound=float(lhs.bound),
            tolerance=float(tolerance),
            passed=passed,
        )


def fourier_spot_check(samples, digits: int = 12, tolerance: float = 1e-10,
                       identity: Optional[FourierIdentity] = None) -> NumericReport:
    """Check sum (-1)^n cos(2 pi n t)/n^2 against its closed quadratic form.

    Samples must be rational; the summand is then periodic in n over residue
    classes, and each class tail is a closed-form power tail, so the
    summation error bound is explicit.
    """
    ts = [Fraction(t) for t in samples]
    with _workprec(digits):
        if identity is not None:
            const = sym_to_mpf(identity.constant, digits)
            lin = sym_to_mpf(identity.linear, digits)
            quad = sym_to_mpf(identity.quadratic, digits)
        else:
            const = -mpmath.pi ** 2 / 12
            lin = mpf(0)
            quad = mpmath.pi ** 2
        worst_abs = mpf(0)
        worst_bound = mpf(0)
        lhs_texts = []
        rhs_texts = []
        for t in ts:
            q = t.denominator
            period = q if q % 2 == 0 else 2 * q  # lcm(2, q): sign and cosine
            n_cut = max(128, 8 * period)
            partial = mpmath.fsum(
                (-1) ** n * mpmath.cospi(_to_mpf(2 * n * t)) / mpf(n) ** 2
                for n in range(1, n_cut + 1))
            tail = mpf(0)
            bound = mpf(0)
            for r in range(1, period + 1):
                n_first = n_cut + r
                w = (-1) ** n_first * mpmath.cospi(_to_mpf(2 * n_first * t))
                if w == 0:
                    continue
                piece = _powerlog_tail(0, 1, 2, mpf(n_first) / period, step=1)
                tail += w * piece.value / period ** 2
                bound += abs(w) * piece.bound / period ** 2
            lhs = partial + tail
            rhs = const + lin * _to_mpf(t) + quad * _to_mpf(t) ** 2
            worst_abs = max(worst_abs, abs(lhs - rhs))
            worst_bound = max(worst_bound, bound)
            lhs_texts.append(mpmath.nstr(lhs, digits))
            rhs_texts.append(mpmath.nstr(rhs, digits))
        passed = bool(worst_abs <= tolerance and worst_bound <= tolerance / 10)
        return NumericReport(
            identity="fourier-alternating-weight2",
            lhs="; ".join(lhs_texts),
            rhs="; ".join(rhs_texts),
            abs_error=float(worst_abs),
            rel_error=float(worst_abs / max(abs(const), mpf(1))),
            tail_bound=float(worst_bound),
            tolerance=float(tolerance),
            passed=passed,
        )
