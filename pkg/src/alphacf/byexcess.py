"""By-excess continued fractions and the digit dictionary.

The by-excess map on (0, 1] is

    A0(x) = floor(1/x + 1) - 1/x

with digits b_n = floor(1/x_{n-1} + 1) >= 2 and the minus expansion
x = 1/b_1 - 1/b_2 - ...  With this convention A0(1/n) = 1 for every n, so a
rational orbit reaches the fixed point 1 and continues with an infinite run
of 2's; that tail is kept symbolic (``reached_one``), never materialized.

Runs of digit 2 encode the regular continued fraction digits: the
conversions here implement the classical two-way dictionary between the
two expansions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .exact import (DomainError, RealValue, compare, floor_shift, is_exact,
                    recip, sign_val, sub_int, to_float)


class SideMismatch(ValueError):
    """Declared side of 1/2 contradicts the first by-excess digit."""


class MalformedStream(ValueError):
    """Digit stream violates the continued fraction digit constraints."""


@dataclass
class MinusExpansion:
    """Finite prefix of a by-excess expansion, with a symbolic 2-tail."""

    x: RealValue
    x0: RealValue
    digits: list[int]       # b_1 .. b_D, all >= 2
    remainders: list        # x_0 .. x_D
    pstar: list[int]        # p*_0 .. p*_D
    qstar: list[int]        # q*_0 .. q*_D
    betastars: list         # beta*_0 .. beta*_D  (= x_0...x_n)
    reached_one: bool       # remainder hit 1: all further digits are 2

    def digit(self, k: int) -> int:
        """b_k (1-based); returns the symbolic tail of 2's past the end."""
        if k < 1:
            raise IndexError(k)
        if k <= len(self.digits):
            return self.digits[k - 1]
        if self.reached_one:
            return 2
        raise IndexError(f"digit b_{k} not expanded")

    def to_csv_rows(self) -> list[list]:
        rows = [["n", "b", "p_star", "q_star", "beta_star", "in_I_star"]]
        for n in range(len(self.digits)):
            rows.append([n, self.digits[n], self.pstar[n], self.qstar[n],
                         to_float(self.betastars[n]),
                         int(self.digits[n] == 2)])
        return rows

    def to_json(self) -> str:
        return json.dumps({
            "x": str(self.x),
            "digits": self.digits,
            "tail2": self.reached_one,
            "convergents": [{"p": p, "q": q}
                            for p, q in zip(self.pstar, self.qstar)],
        })


def minus_step(x: RealValue) -> tuple[int, RealValue]:
    """One application of A0 on (0, 1]: digit b = floor(1/x + 1), next = b - 1/x.

    At x = 1/n this gives b = n + 1 and next = 1 (the convention that keeps
    the expansion total on the rationals); x = 1 is the fixed point b = 2.
    """
    if compare(x, Fraction(0)) <= 0 or compare(x, Fraction(1)) > 0:
        raise DomainError(f"x must lie in (0, 1], got {x}")
    y = recip(x)
    b = floor_shift(y, Fraction(0))  # floor(y + 1)
    return b, -sub_int(y, b)


def minus_expand(x: RealValue, max_digits: int) -> MinusExpansion:
    """Iterate minus_step; stops at the remainder 1 or the digit budget.

    The input is reduced mod 1 into (0, 1] first (integers map to 1).
    Convergents satisfy p*_n = b_n p*_{n-1} - p*_{n-2} with seeds fixed by
    p*_1/q*_1 = 1/b_1 and unimodularity p*_n q*_{n-1} - p*_{n-1} q*_n = 1.
    """
    if max_digits < 0:
        raise ValueError("max_digits must be >= 0")
    m = floor_shift(x, Fraction(1))
    x0 = sub_int(x, m)
    if is_exact(x0) and sign_val(x0) == 0:
        x0 = Fraction(1)

    digits: list[int] = []
    remainders = [x0]
    pstar, qstar = [0], [1]
    pm1, qm1 = -1, 0   # p*_{-1}, q*_{-1}
    betastars = [x0]
    reached_one = is_exact(x0) and compare(x0, Fraction(1)) == 0

    cur = x0
    while len(digits) < max_digits and not reached_one:
        b, nxt = minus_step(cur)
        digits.append(b)
        p_new = b * pstar[-1] - pm1
        q_new = b * qstar[-1] - qm1
        pm1, qm1 = pstar[-1], qstar[-1]
        pstar.append(p_new)
        qstar.append(q_new)
        remainders.append(nxt)
        betastars.append(nxt * betastars[-1])
        if is_exact(nxt) and compare(nxt, Fraction(1)) == 0:
            reached_one = True
        cur = nxt
    return MinusExpansion(x, x0, digits, remainders, pstar, qstar,
                          betastars, reached_one)


@dataclass
class RunDecomposition:
    """Maximal runs of 2's between the digits greater than 2.

    ``runs[i]`` is the paper-free reading of the block structure: run i
    consists of runs[i]-1 copies of the digit 2 followed by one digit > 2,
    whose 0-based position is ``t[i]``.  ``i_starstar`` collects those
    positions (remainder <= 1/2); ``i_star`` is the complement over the
    covered prefix.  ``open_run`` flags an unterminated trailing run of 2's.
    """

    runs: list[int]
    t: list[int]
    big_digits: list[int]   # the > 2 digit closing each run
    i_star: list[int]
    i_starstar: list[int]
    open_run: bool


def run_decomposition(digits: Sequence[int],
                      tail_of_twos: bool = False) -> RunDecomposition:
    """Split a by-excess digit stream into runs of 2's."""
    for b in digits:
        if b < 2:
            raise MalformedStream(f"by-excess digits must be >= 2, got {b}")
    runs, t, big = [], [], []
    last_big = -1
    for idx, b in enumerate(digits):
        if b > 2:
            runs.append(idx - last_big)
            t.append(idx)
            big.append(b)
            last_big = idx
    open_run = tail_of_twos or last_big < len(digits) - 1
    i_starstar = list(t)
    i_star = [n for n in range(len(digits)) if digits[n] == 2]
    return RunDecomposition(runs, t, big, i_star, i_starstar, open_run)


def _canonical_fixup(a: list[int]) -> list[int]:
    # finite regular CF: fold a trailing 1 into the previous digit
    if len(a) >= 2 and a[-1] == 1:
        return a[:-2] + [a[-2] + 1]
    return a


def minus_to_regular(digits: Sequence[int], side: Optional[str] = None,
                     tail_of_twos: bool = False) -> tuple[list[int], bool]:
    """Translate by-excess digits into regular continued fraction digits.

    ``side`` is "above_half" (first digit 2) or "below_half" (first digit
    > 2); inferred from the stream when omitted.  Returns (a_digits,
    terminated): a trailing open run of 2's marks a rational input, whose
    regular expansion terminates (in canonical form, last digit >= 2).
    For a plain prefix of an infinite stream, only digits derivable from
    complete runs are emitted.
    """
    digits = list(digits)
    if not digits:
        raise MalformedStream("empty by-excess stream")
    inferred = "above_half" if digits[0] == 2 else "below_half"
    if side is None:
        side = inferred
    elif side != inferred:
        raise SideMismatch(f"side={side} but b_1={digits[0]}")

    dec = run_decomposition(digits, tail_of_twos)
    if not dec.runs:
        # all 2's: no complete information (or x = 1 if the tail is open)
        return [], False
    out: list[int] = []
    if side == "above_half":
        if dec.runs[0] < 2:
            raise SideMismatch("b_1 = 2 requires a leading run of length >= 2")
        out = [1, dec.runs[0] - 1]
        for j, bv in enumerate(dec.big_digits):
            out.append(bv - 2)
            if j + 1 < len(dec.runs):
                out.append(dec.runs[j + 1])
    else:
        out = [dec.big_digits[0] - 1]
        for j in range(1, len(dec.runs)):
            out.append(dec.runs[j])
            out.append(dec.big_digits[j] - 2)
    if tail_of_twos:
        return _canonical_fixup(out), True
    return out, False


def regular_to_minus(a: Sequence[int],
                     terminated: bool = True) -> tuple[list[int], bool]:
    """Inverse dictionary: regular digits to by-excess digits.

    A finite (terminated) regular expansion, canonical form with last
    digit >= 2, maps to a by-excess stream ending in an infinite run of
    2's, reported as (digits, True).  Prefixes of infinite expansions map
    to the derivable by-excess prefix, reported as (digits, False).
    """
    a = list(a)
    if not a:
        raise MalformedStream("empty regular stream")
    for d in a:
        if d < 1:
            raise MalformedStream(f"regular digits must be >= 1, got {d}")
    if terminated and len(a) > 1 and a[-1] == 1:
        raise MalformedStream("finite regular expansion must end with >= 2")
    if terminated and len(a) % 2 == 0:
        # undo canonical form so the stream ends on a big-digit slot
        a = a[:-1] + [a[-1] - 1, 1]

    runs: list[int] = []
    big: list[int] = []
    if a[0] == 1:
        if len(a) == 1:
            raise MalformedStream("regular stream [1] does not encode x in (0,1)")
        runs.append(a[1] + 1)
        k = 2
    else:
        runs.append(1)
        big.append(a[0] + 1)
        k = 1
    while k < len(a):
        if len(big) < len(runs):
            big.append(a[k] + 2)
        else:
            runs.append(a[k])
        k += 1

    b: list[int] = []
    for i, n in enumerate(runs):
        b.extend([2] * (n - 1))
        if i < len(big):
            b.append(big[i])
    return b, terminated


def complement_regular(a: Sequence[int]) -> list[int]:
    """Regular digits of 1 - x from those of x in (0, 1/2): prepend 1, a1 - 1.

    The boundary stream [2] (x = 1/2) maps to the formal [1, 1].
    """
    a = list(a)
    if not a:
        raise MalformedStream("empty regular stream")
    if a[0] < 2:
        raise DomainError("complement needs a_1 >= 2 (x < 1/2)")
    return [1, a[0] - 1] + a[1:]
