"""Named registry of the q-series identities behind the vanishing and sign results.

Each record pairs two sides that must agree coefficientwise.  A side is a
:class:`SeriesSpec`, a list of them (summed), an :class:`IntegerSeries` or a
callable ``N -> IntegerSeries``.  The cubic function c(q) is carried as the
integer series c(q) / (3 q^(1/3)), so c^3 enters as 27 q (c-shifted)^3.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

from .qseries import (
    IdentityCheck,
    IntegerSeries,
    SeriesSpec,
    Side,
    borwein_coeffs,
    cubic_a,
    cubic_b,
    cubic_c_shifted,
    dissect,
    jacobi_cube_terms,
    pentagonal_terms,
    q_kij_series,
    rr_quotient,
    theta_phi,
    theta_psi,
    verify_identity,
)

DEFAULT_ORDER = 500
CUBIC_ORDER = 150


@dataclass(frozen=True)
class IdentityRecord:
    id: str
    lhs: Side
    rhs: Side
    default_order: int
    description: str

    def check(self, order: int | None = None) -> IdentityCheck:
        return verify_identity(self.lhs, self.rhs, order or self.default_order)


class IdentityFailure(AssertionError):
    def __init__(self, ident: str, index: int | None):
        super().__init__(f"identity {ident} fails at q^{index}")
        self.ident = ident
        self.index = index


def eta(powers: dict[int, int], coeff: int = 1, shift: int = 0) -> SeriesSpec:
    return SeriesSpec.eta(powers, coeff, shift)


def _dilated(f: Callable[[int], IntegerSeries], k: int, N: int) -> IntegerSeries:
    """f(q^k) truncated at N."""
    return f(N // k).dilate(k).truncate(N)


def _part(t: int, m: int, step: int, r: int) -> Callable[[int], IntegerSeries]:
    """N -> sum_n c_t^(m)(step n + r) q^n."""
    return lambda N: dissect(borwein_coeffs(t, m, step * N + r), step, r)


def _constant(c: int) -> Callable[[int], IntegerSeries]:
    return lambda N: IntegerSeries.from_terms({0: c}, N)


# -- individual sides ------------------------------------------------------------------

def _pentagonal_sum(N: int) -> IntegerSeries:
    return IntegerSeries.from_terms(pentagonal_terms(N), N)


def _jacobi_sum(N: int) -> IntegerSeries:
    return IntegerSeries.from_terms(jacobi_cube_terms(N), N)


def _a_cubed(N: int) -> IntegerSeries:
    return cubic_a(N) ** 3


def _b3_plus_c3(N: int) -> IntegerSeries:
    c = cubic_c_shifted(N) ** 3
    return cubic_b(N) ** 3 + (c * 27).shift(1).truncate(N)


def _a_of_cube(N: int) -> IntegerSeries:
    return _dilated(cubic_a, 3, N)


def _rr5(N: int) -> IntegerSeries:
    return _dilated(rr_quotient, 5, N)


def _rr_quintic(N: int) -> IntegerSeries:
    R = _rr5(N)
    return R.inverse() - IntegerSeries.from_terms({1: 1}, N) - (R.shift(2)).truncate(N)


def _rr_fifth(N: int) -> IntegerSeries:
    R5 = _rr5(N) ** 5
    return R5.inverse() - IntegerSeries.from_terms({5: 11}, N) - R5.shift(10).truncate(N)


def _andrews_rhs(p: int) -> Callable[[int], IntegerSeries]:
    k = (3 * p - 1) // 2

    def side(N: int) -> IntegerSeries:
        Q = lambda i: _dilated(lambda M: q_kij_series(k, i, M), p, N)
        total = Q(k)
        for r in range(1, (p - 1) // 2 + 1):
            sign = (-1) ** r
            a = Q((3 * p + 1) // 2 - 3 * r).shift(r * (3 * r - 1) // 2)
            b = Q((3 * p - 1) // 2 - 3 * r).shift(r * (3 * r + 1) // 2)
            total = total + (a + b).truncate(N) * sign
        return total

    return side


def _c93_rhs(N: int) -> IntegerSeries:
    # -3q + a(q^3) (q^3;q^3) / (q^9;q^9)^3
    return _a_of_cube(N) * eta({3: 1, 9: -3}).expand(N) - IntegerSeries.from_terms({1: 3}, N)


def _c33_zero_part(N: int) -> IntegerSeries:
    return cubic_a(N) * eta({1: -2}).expand(N)


def _c44_octo(r: int, N: int) -> IntegerSeries:
    """Right-hand sides for c_4^(4)(8n + r)."""
    base = dissect(borwein_coeffs(2, 1, 2 * N + r // 4), 2, r // 4)
    if r % 4 == 0:
        return theta_phi(N) * eta({1: -1}).expand(N) * base
    return eta({1: -1, 2: -1, 4: 2}, coeff=2).expand(N) * base


# -- the registry --------------------------------------------------------------------

def _records() -> list[IdentityRecord]:
    R = IdentityRecord
    recs = [
        R("pentagonal-number-theorem", eta({1: 1}), _pentagonal_sum, 1000,
          "(q;q) = sum_j (-1)^j q^(j(3j+1)/2)"),
        R("jacobi-cube", eta({1: 3}), _jacobi_sum, DEFAULT_ORDER,
          "(q;q)^3 = sum_j (-1)^j (2j+1) q^(j(j+1)/2)"),
        R("phi-product", theta_phi, eta({1: -2, 2: 5, 4: -2}), DEFAULT_ORDER,
          "phi(q) = (q^2;q^2)^5 / ((q;q)^2 (q^4;q^4)^2)"),
        R("psi-product", theta_psi, eta({1: -1, 2: 2}), DEFAULT_ORDER,
          "psi(q) = (q^2;q^2)^2 / (q;q)"),
        R("cubic-a-eta", cubic_a, [eta({1: 3, 3: -1}), eta({3: -1, 9: 3}, 9, 1)], CUBIC_ORDER,
          "a(q) = (q;q)^3/(q^3;q^3) + 9q (q^9;q^9)^3/(q^3;q^3)"),
        R("cubic-b-eta", cubic_b, eta({1: 3, 3: -1}), CUBIC_ORDER,
          "b(q) = (q;q)^3/(q^3;q^3)"),
        R("cubic-c-eta", cubic_c_shifted, eta({1: -1, 3: 3}), CUBIC_ORDER,
          "c(q)/(3q^(1/3)) = (q^3;q^3)^3/(q;q)"),
        R("cubic-cube-sum", _a_cubed, _b3_plus_c3, CUBIC_ORDER,
          "a^3 = b^3 + c^3, with c^3 = 27q (c-shifted)^3"),
        R("cubic-a-triplication",
          cubic_a, lambda N: _a_of_cube(N) * 3 - eta({1: 3, 3: -1}, 2).expand(N), CUBIC_ORDER,
          "a(q) = 3a(q^3) - 2(q;q)^3/(q^3;q^3)"),
        R("cubic-a-nonic",
          cubic_a, lambda N: _a_of_cube(N) + eta({3: -1, 9: 3}, 6, 1).expand(N), CUBIC_ORDER,
          "a(q) = a(q^3) + 6q (q^9;q^9)^3/(q^3;q^3)"),
        R("cubic-b-trisection",
          eta({1: 3, 3: -1}), lambda N: _a_of_cube(N) - eta({3: -1, 9: 3}, 3, 1).expand(N),
          CUBIC_ORDER, "(q;q)^3/(q^3;q^3) = a(q^3) - 3q (q^9;q^9)^3/(q^3;q^3)"),
        R("eta4-two-dissection", eta({1: 4}),
          [eta({2: -2, 4: 10, 8: -4}), eta({2: 2, 4: -2, 8: 4}, -4, 1)], DEFAULT_ORDER,
          "(q;q)^4 = (q^4;q^4)^10/((q^2;q^2)^2 (q^8;q^8)^4) - 4q (q^2;q^2)^2 (q^8;q^8)^4/(q^4;q^4)^2"),
        R("eta8-two-dissection", eta({1: 8}),
          [eta({2: -4, 4: 20, 8: -8}), eta({2: 4, 4: -4, 8: 8}, 16, 2), eta({4: 8}, -8, 1)],
          DEFAULT_ORDER, "square of the (q;q)^4 dissection"),
        R("inverse-eta-squared-two-dissection", eta({1: -2}),
          [eta({2: -5, 8: 5, 16: -2}), eta({2: -5, 4: 2, 8: -1, 16: 2}, 2, 1)], DEFAULT_ORDER,
          "1/(q;q)^2 = (q^8;q^8)^5/((q^2;q^2)^5 (q^16;q^16)^2) + 2q (q^4;q^4)^2 (q^16;q^16)^2/((q^2;q^2)^5 (q^8;q^8))"),
        R("rogers-ramanujan-quintic", _rr_quintic, eta({1: 1, 25: -1}), DEFAULT_ORDER,
          "1/R(q^5) - q - q^2 R(q^5) = (q;q)/(q^25;q^25)"),
        R("rogers-ramanujan-fifth-power", _rr_fifth, eta({5: 6, 25: -6}), DEFAULT_ORDER,
          "1/R^5(q^5) - 11q^5 - q^10 R^5(q^5) = (q^5;q^5)^6/(q^25;q^25)^6"),
        R("eta5-quintisection", lambda N: dissect(eta({1: 5}).expand(5 * N), 5, 0),
          eta({1: 6, 5: -1}), DEFAULT_ORDER, "sum_n y(5n) q^n = (q;q)^6/(q^5;q^5), (q;q)^5 = sum y(n) q^n"),
    ]
    for p in (3, 5, 7):
        recs.append(R(f"andrews-dissection-p{p}", eta({1: 1, p: -1}), _andrews_rhs(p), DEFAULT_ORDER,
                      f"(q;q)/(q^{p};q^{p}) as a sum of Q_(k,i)(1;q^{p}) with k = {(3 * p - 1) // 2}"))
    # dissections of the Borwein powers themselves
    recs += [
        R("c48-odd-part", _part(4, 8, 2, 1), _constant(-8), DEFAULT_ORDER,
          "sum_n c_4^(8)(2n+1) q^n = -8"),
        R("c93-trisection", eta({1: 3, 9: -3}), _c93_rhs, CUBIC_ORDER,
          "(q;q)^3/(q^9;q^9)^3 = -3q + a(q^3) (q^3;q^3)/(q^9;q^9)^3"),
        R("c39-zero-part", _part(3, 9, 3, 0), eta({1: 3, 3: -3}), DEFAULT_ORDER,
          "sum_n c_3^(9)(3n) q^n = (q;q)^3/(q^3;q^3)^3"),
        R("c33-zero-part", _part(3, 3, 3, 0), _c33_zero_part, CUBIC_ORDER,
          "sum_n c_3^(3)(3n) q^n = a(q)/(q;q)^2"),
        R("c33-one-part", _part(3, 3, 3, 1), eta({1: -3, 3: 3}, -3), DEFAULT_ORDER,
          "sum_n c_3^(3)(3n+1) q^n = -3 (q^3;q^3)^3/(q;q)^3"),
        R("c33-two-part", _part(3, 3, 3, 2), _constant(0), DEFAULT_ORDER,
          "c_3^(3)(3n+2) = 0"),
        R("c44-even-part", _part(4, 4, 2, 0), eta({1: -2, 2: 6, 4: -4}), DEFAULT_ORDER,
          "sum_n c_4^(4)(2n) q^n = (q^2;q^2)^6/((q;q)^2 (q^4;q^4)^4)"),
        R("c44-four-part", _part(4, 4, 4, 0), eta({1: 1, 2: -4, 4: 5, 8: -2}), DEFAULT_ORDER,
          "sum_n c_4^(4)(4n) q^n = (q;q)(q^4;q^4)^5/((q^2;q^2)^4 (q^8;q^8)^2)"),
        R("c44-four-two-part", _part(4, 4, 4, 2), eta({1: 1, 2: -2, 4: -1, 8: 2}, 2), DEFAULT_ORDER,
          "sum_n c_4^(4)(4n+2) q^n = 2(q;q)(q^8;q^8)^2/((q^2;q^2)^2 (q^4;q^4))"),
    ]
    for r in (0, 2, 4, 6):
        recs.append(R(f"c44-eight-part-{r}", _part(4, 4, 8, r), lambda N, r=r: _c44_octo(r, N),
                      DEFAULT_ORDER, f"sum_n c_4^(4)(8n+{r}) q^n via c_2^(1)"))
    recs += [
        R("c55-zero-part", _part(5, 5, 5, 0), eta({1: 1, 5: -1}), DEFAULT_ORDER,
          "c_5^(5)(5n) = c_5^(1)(n)"),
        R("c51-zero-part", _part(5, 1, 5, 0), SeriesSpec(((1, 5, -2), (4, 5, -2))), DEFAULT_ORDER,
          "sum_n c_5^(1)(5n) q^n = 1/((q;q^5)^2 (q^4;q^5)^2)"),
        R("c51-one-part", _part(5, 1, 5, 1), eta({1: -1, 5: 1}, -1), DEFAULT_ORDER,
          "sum_n c_5^(1)(5n+1) q^n = -(q^5;q^5)/(q;q)"),
        R("c51-two-part", _part(5, 1, 5, 2), SeriesSpec(((2, 5, -2), (3, 5, -2)), -1), DEFAULT_ORDER,
          "sum_n c_5^(1)(5n+2) q^n = -1/((q^2;q^5)^2 (q^3;q^5)^2)"),
        R("c51-three-part", _part(5, 1, 5, 3), _constant(0), DEFAULT_ORDER, "c_5^(1)(5n+3) = 0"),
        R("c51-four-part", _part(5, 1, 5, 4), _constant(0), DEFAULT_ORDER, "c_5^(1)(5n+4) = 0"),
    ]
    return recs


REGISTRY: dict[str, IdentityRecord] = {r.id: r for r in _records()}


@dataclass(frozen=True)
class IdentityResult:
    id: str
    order: int
    ok: bool
    first_mismatch: int | None
    seconds: float
    description: str

    def to_dict(self) -> dict:
        return dict(id=self.id, order=self.order, ok=self.ok,
                    first_mismatch=self.first_mismatch, seconds=round(self.seconds, 3),
                    description=self.description)


def run_registry(min_order: int = 100, ids=None, strict: bool = False,
                 progress=None) -> list[IdentityResult]:
    """Verify every record to max(default_order, min_order)."""
    if min_order < 100:
        raise ValueError("min_order must be at least 100")
    out = []
    for rec in REGISTRY.values():
        if ids is not None and rec.id not in ids:
            continue
        order = max(rec.default_order, min_order)
        if progress:
            progress(f"{rec.id} to order {order}")
        t0 = time.perf_counter()
        chk = rec.check(order)
        res = IdentityResult(rec.id, order, chk.ok, chk.first_mismatch,
                             time.perf_counter() - t0, rec.description)
        if strict and not chk.ok:
            raise IdentityFailure(rec.id, chk.first_mismatch)
        out.append(res)
    return out
