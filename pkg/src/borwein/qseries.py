"""Truncated integer power series and the eta-type products built from them.

Every :class:`IntegerSeries` knows the order through which its coefficients
are exact; binary operations keep the smaller order, so a truncation never
silently masquerades as a zero coefficient.

Multiplication strategy:

* dense x sparse (pentagonal / triangular / binomial supports) for the
  Borwein powers and every ``(q^a; q^b)_inf^e`` factor, O(N^1.5) per pass;
* dense x dense by Kronecker substitution into one big integer product;
* :func:`naive_mul` (schoolbook convolution) is kept as the test oracle.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from operator import add, sub
from typing import Callable, Iterable, Mapping, Sequence, Union

Terms = list[tuple[int, int]]


# -- sparse kernels ------------------------------------------------------------

def pentagonal_terms(N: int) -> Terms:
    """(k, (-1)^j) for generalized pentagonal k = j(3j+1)/2 <= N, sorted by k."""
    out = []
    j = 0
    while j * (3 * j - 1) // 2 <= N:
        for jj in ((j, -j) if j else (0,)):
            k = jj * (3 * jj + 1) // 2
            if k <= N:
                out.append((k, -1 if jj % 2 else 1))
        j += 1
    out.sort()
    return out


def jacobi_cube_terms(N: int) -> Terms:
    """(k, (-1)^j (2j+1)) for triangular k = j(j+1)/2 <= N."""
    out = []
    j = 0
    while j * (j + 1) // 2 <= N:
        out.append((j * (j + 1) // 2, (-1) ** j * (2 * j + 1)))
        j += 1
    return out


def dilate_terms(terms: Terms, b: int, N: int) -> Terms:
    return [(k * b, c) for k, c in terms if k * b <= N]


def mul_sparse(a: list[int], terms: Terms, N: int) -> list[int]:
    """Truncated product of dense ``a`` with sum(c q^k for k, c in terms)."""
    a = a[: N + 1]
    a += [0] * (N + 1 - len(a))
    out = [0] * (N + 1)
    for k, c in terms:
        if k > N or c == 0:
            continue
        seg = a[: N + 1 - k]
        if c == 1:
            out[k:] = map(add, out[k:], seg)
        elif c == -1:
            out[k:] = map(sub, out[k:], seg)
        else:
            out[k:] = [o + c * x for o, x in zip(out[k:], seg)]
    return out


def div_sparse(a: list[int], terms: Terms, N: int) -> list[int]:
    """Truncated quotient a / S for sparse S with constant term +-1.

    Solves S * b = a forward in blocks whose width is the smallest positive
    exponent of S, so each block only reads finished coefficients.
    """
    lead = dict(terms).get(0, 0)
    if lead not in (1, -1):
        raise ValueError("sparse divisor must have constant term +-1")
    rest = sorted((k, c) for k, c in terms if k > 0 and c != 0 and k <= N)
    b = list(a[: N + 1]) + [0] * (N + 1 - len(a))
    if lead == -1:
        b = [-x for x in b]
    if not rest:
        return b
    width = rest[0][0]
    for start in range(width, N + 1, width):
        end = min(start + width, N + 1)
        for k, c in rest:
            if k >= end:
                break
            lo = max(start, k)
            c = c * lead
            src = b[lo - k: end - k]
            if c == 1:
                b[lo:end] = map(sub, b[lo:end], src)
            elif c == -1:
                b[lo:end] = map(add, b[lo:end], src)
            else:
                b[lo:end] = [x - c * y for x, y in zip(b[lo:end], src)]
    return b


def _mul_one_minus(a: list[int], j: int, N: int) -> list[int]:
    out = list(a)
    if j <= N:
        out[j:] = map(sub, a[j:], a[: N + 1 - j])
    return out


def _div_one_minus(a: list[int], j: int, N: int) -> list[int]:
    b = list(a)
    for start in range(j, N + 1, j):
        end = min(start + j, N + 1)
        b[start:end] = map(add, b[start:end], b[start - j: end - j])
    return b


# -- dense kernels -------------------------------------------------------------

def naive_mul(a: Sequence[int], b: Sequence[int], N: int) -> list[int]:
    """Schoolbook convolution, truncated at N.  Reference implementation."""
    out = [0] * (N + 1)
    for i, x in enumerate(a[: N + 1]):
        if x:
            for j, y in enumerate(b[: N + 1 - i]):
                if y:
                    out[i + j] += x * y
    return out


def _pack(coeffs: Sequence[int], width: int) -> int:
    nbytes = width // 8
    pos = b"".join((c if c > 0 else 0).to_bytes(nbytes, "little") for c in coeffs)
    neg = b"".join((-c if c < 0 else 0).to_bytes(nbytes, "little") for c in coeffs)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def kronecker_mul(a: Sequence[int], b: Sequence[int], N: int) -> list[int]:
    """Truncated product via a single big-integer multiplication."""
    a = list(a[: N + 1])
    b = list(b[: N + 1])
    while a and a[-1] == 0:
        a.pop()
    while b and b[-1] == 0:
        b.pop()
    if not a or not b:
        return [0] * (N + 1)
    bound = max(map(abs, a)) * max(map(abs, b)) * min(len(a), len(b))
    width = (bound.bit_length() + 2 + 7) // 8 * 8
    prod = _pack(a, width) * _pack(b, width)
    slots = min(len(a) + len(b) - 1, N + 1)
    nbytes = width // 8
    half = 1 << (width - 1)
    bias = int.from_bytes(half.to_bytes(nbytes, "little") * slots, "little")
    # biasing every slot into [0, 2^width) makes the low slots carry-free
    prod = (prod + bias) % (1 << (width * slots))
    raw = prod.to_bytes(nbytes * slots, "little")
    out = [int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") - half for i in range(slots)]
    return out + [0] * (N + 1 - slots)


# -- the series type ---------------------------------------------------------------

@dataclass(frozen=True)
class IntegerSeries:
    """sum coeffs[n] q^n, exact for 0 <= n <= order = len(coeffs) - 1."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("series needs at least one coefficient")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def of(cls, coeffs: Iterable[int]) -> "IntegerSeries":
        return cls(tuple(int(c) for c in coeffs))

    @classmethod
    def zero(cls, N: int) -> "IntegerSeries":
        return cls((0,) * (N + 1))

    @classmethod
    def one(cls, N: int) -> "IntegerSeries":
        return cls((1,) + (0,) * N)

    @classmethod
    def from_terms(cls, terms: Mapping[int, int] | Terms, N: int) -> "IntegerSeries":
        out = [0] * (N + 1)
        items = terms.items() if isinstance(terms, Mapping) else terms
        for k, c in items:
            if 0 <= k <= N:
                out[k] += c
        return cls(tuple(out))

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, n):
        return self.coeffs[n]

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, N: int) -> "IntegerSeries":
        if N > self.order:
            raise ValueError(f"cannot extend order {self.order} to {N}")
        return IntegerSeries(self.coeffs[: N + 1])

    def _common(self, other: "IntegerSeries") -> tuple[list[int], list[int], int]:
        N = min(self.order, other.order)
        return list(self.coeffs[: N + 1]), list(other.coeffs[: N + 1]), N

    def __add__(self, other):
        if isinstance(other, int):
            return IntegerSeries((self.coeffs[0] + other,) + self.coeffs[1:])
        a, b, _ = self._common(other)
        return IntegerSeries(tuple(map(add, a, b)))

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            return self + (-other)
        a, b, _ = self._common(other)
        return IntegerSeries(tuple(map(sub, a, b)))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self) -> "IntegerSeries":
        return IntegerSeries(tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return IntegerSeries(tuple(other * c for c in self.coeffs))
        a, b, N = self._common(other)
        return IntegerSeries(tuple(kronecker_mul(a, b, N)))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntegerSeries":
        if k < 0:
            return self.inverse() ** (-k)
        result = IntegerSeries.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse(self) -> "IntegerSeries":
        """1/self by Newton iteration; the constant term must be +-1."""
        c0 = self.coeffs[0]
        if c0 not in (1, -1):
            raise ValueError(f"constant term {c0} is not a unit")
        N = self.order
        inv = [c0]
        prec = 1
        while prec <= N:
            prec = min(2 * prec, N + 1)
            a = list(self.coeffs[:prec])
            e = kronecker_mul(a, inv, prec - 1)
            e = [-x for x in e]
            e[0] += 2
            inv = kronecker_mul(inv, e, prec - 1)
        return IntegerSeries(tuple(inv[: N + 1]))

    def __truediv__(self, other):
        if isinstance(other, int):
            return self.exact_div(other)
        a, b, N = self._common(other)
        return IntegerSeries(tuple(a)) * IntegerSeries(tuple(b)).inverse()

    def exact_div(self, k: int) -> "IntegerSeries":
        out = []
        for c in self.coeffs:
            q, r = divmod(c, k)
            if r:
                raise ArithmeticError(f"coefficient {c} not divisible by {k}")
            out.append(q)
        return IntegerSeries(tuple(out))

    def shift(self, s: int) -> "IntegerSeries":
        """Multiply by q^s (s >= 0); the exact order grows by s."""
        if s < 0:
            raise ValueError("negative shifts leave the power-series ring")
        return IntegerSeries((0,) * s + self.coeffs)

    def dilate(self, k: int) -> "IntegerSeries":
        """f(q^k); exact through k(order+1) - 1."""
        if k < 1:
            raise ValueError("dilation factor must be positive")
        out = [0] * (k * (self.order + 1))
        out[::k] = self.coeffs
        return IntegerSeries(tuple(out))

    def dissect(self, t: int, r: int) -> "IntegerSeries":
        return dissect(self, t, r)

    # -- serialization

    def to_tsv(self) -> str:
        return "".join(f"{n}\t{c}\n" for n, c in enumerate(self.coeffs))

    @classmethod
    def from_tsv(cls, text: str) -> "IntegerSeries":
        rows = {}
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            n, c = line.split("\t")
            rows[int(n)] = int(c)
        N = max(rows)
        if sorted(rows) != list(range(N + 1)):
            raise ValueError("tsv series must list every index 0..N exactly once")
        return cls(tuple(rows[n] for n in range(N + 1)))

    def to_json(self) -> str:
        return json.dumps([str(c) for c in self.coeffs])

    @classmethod
    def from_json(cls, text: str) -> "IntegerSeries":
        return cls(tuple(int(c) for c in json.loads(text)))


def dissect(s: IntegerSeries, t: int, r: int) -> IntegerSeries:
    """sum_n s[t n + r] q^n, exact through floor((order - r) / t)."""
    if t < 1 or not 0 <= r < t:
        raise ValueError(f"need 0 <= r < t, got t={t}, r={r}")
    if r > s.order:
        raise ValueError("residue beyond the exact order")
    return IntegerSeries(s.coeffs[r::t])


# -- products --------------------------------------------------------------------

def euler_factor(a: int, b: int, e: int, N: int) -> IntegerSeries:
    """(q^a; q^b)_inf^e truncated at order N."""
    if b < 1 or a < 0:
        raise ValueError(f"need b >= 1 and a >= 0, got a={a}, b={b}")
    c = [1] + [0] * N
    if e == 0:
        return IntegerSeries(tuple(c))
    if a == 0:
        if e < 0:
            raise ValueError("(1; q^b)_inf vanishes and has no inverse")
        return IntegerSeries.zero(N)
    if a % b == 0:
        # (q^{jb}; q^b) = (q^b; q^b) / prod_{i<j} (1 - q^{ib})
        pent = dilate_terms(pentagonal_terms(N // b), b, N)
        head = [i * b for i in range(1, a // b)]
        for _ in range(abs(e)):
            if e > 0:
                c = mul_sparse(c, pent, N)
                for j in head:
                    c = _div_one_minus(c, j, N)
            else:
                c = div_sparse(c, pent, N)
                for j in head:
                    c = _mul_one_minus(c, j, N)
        return IntegerSeries(tuple(c))
    exps = range(a, N + 1, b)
    for _ in range(abs(e)):
        for j in exps:
            c = _mul_one_minus(c, j, N) if e > 0 else _div_one_minus(c, j, N)
    return IntegerSeries(tuple(c))


Factor = tuple[int, int, int]


@dataclass(frozen=True)
class SeriesSpec:
    """coeff * q^shift * prod (q^a; q^b)_inf^e over ``factors``."""

    factors: tuple[Factor, ...]
    coeff: int = 1
    shift: int = 0

    def __post_init__(self):
        for a, b, _ in self.factors:
            if b < 1 or a < 0:
                raise ValueError(f"bad factor (q^{a}; q^{b})")

    @classmethod
    def eta(cls, powers: Mapping[int, int], coeff: int = 1, shift: int = 0) -> "SeriesSpec":
        """prod (q^k; q^k)_inf^{powers[k]}."""
        return cls(tuple((k, k, e) for k, e in sorted(powers.items()) if e), coeff, shift)

    def expand(self, N: int) -> IntegerSeries:
        if self.shift > N:
            return IntegerSeries.zero(N)
        M = N - self.shift
        c = [1] + [0] * M
        for a, b, e in self.factors:
            c = _apply_factor(c, a, b, e, M)
        return IntegerSeries(tuple(self.coeff * x for x in c)).shift(self.shift)

    def naive(self, N: int) -> IntegerSeries:
        """Term-by-term expansion with schoolbook products (the oracle)."""
        if self.shift > N:
            return IntegerSeries.zero(N)
        M = N - self.shift
        acc = [1] + [0] * M
        for a, b, e in self.factors:
            if e == 0:
                continue
            if a == 0:
                if e < 0:
                    raise ValueError("(1; q^b)_inf has no inverse")
                acc = [0] * (M + 1)
                continue
            for j in range(a, M + 1, b):
                if e > 0:
                    f = [0] * (M + 1)
                    f[0], f[j] = 1, -1
                else:
                    f = [1 if i % j == 0 else 0 for i in range(M + 1)]
                for _ in range(abs(e)):
                    acc = naive_mul(acc, f, M)
        return IntegerSeries(tuple(self.coeff * x for x in acc)).shift(self.shift)


def _apply_factor(c: list[int], a: int, b: int, e: int, N: int) -> list[int]:
    if e == 0:
        return c
    if a == 0:
        if e < 0:
            raise ValueError("(1; q^b)_inf has no inverse")
        return [0] * (N + 1)
    if a % b == 0:
        pent = dilate_terms(pentagonal_terms(N // b), b, N)
        head = [i * b for i in range(1, a // b)]
        for _ in range(abs(e)):
            if e > 0:
                c = mul_sparse(c, pent, N)
                for j in head:
                    c = _div_one_minus(c, j, N)
            else:
                c = div_sparse(c, pent, N)
                for j in head:
                    c = _mul_one_minus(c, j, N)
        return c
    for _ in range(abs(e)):
        for j in range(a, N + 1, b):
            c = _mul_one_minus(c, j, N) if e > 0 else _div_one_minus(c, j, N)
    return c


def borwein_powers(t: int, N: int, m_max: int):
    """Yield (m, G_t^m) for m = 1..m_max, one multiply and one divide pass each."""
    if t < 1 or m_max < 1:
        raise ValueError("need t >= 1 and m_max >= 1")
    pent = pentagonal_terms(N)
    pent_t = dilate_terms(pentagonal_terms(N // t), t, N)
    c = [1] + [0] * N
    for m in range(1, m_max + 1):
        c = div_sparse(mul_sparse(c, pent, N), pent_t, N)
        yield m, IntegerSeries(tuple(c))


def borwein_coeffs(t: int, m: int, N: int) -> IntegerSeries:
    """c_t^(m)(0..N): coefficients of (q;q)_inf^m / (q^t;q^t)_inf^m.

    m pentagonal multiplications followed by m pentagonal divisions at
    stride t; O(m N^1.5) big-integer operations.
    """
    if t < 1 or m < 1:
        raise ValueError("need t >= 1 and m >= 1")
    c = [1] + [0] * N
    pent = pentagonal_terms(N)
    for _ in range(m):
        c = mul_sparse(c, pent, N)
    pent_t = dilate_terms(pentagonal_terms(N // t), t, N)
    for _ in range(m):
        c = div_sparse(c, pent_t, N)
    return IntegerSeries(tuple(c))


# -- theta functions ------------------------------------------------------------

def theta_phi(N: int) -> IntegerSeries:
    """sum over all integers n of q^(n^2)."""
    out = [0] * (N + 1)
    n = 0
    while n * n <= N:
        out[n * n] += 1 if n == 0 else 2
        n += 1
    return IntegerSeries(tuple(out))


def theta_psi(N: int) -> IntegerSeries:
    """sum_{n >= 0} q^(n(n+1)/2)."""
    out = [0] * (N + 1)
    n = 0
    while n * (n + 1) // 2 <= N:
        out[n * (n + 1) // 2] += 1
        n += 1
    return IntegerSeries(tuple(out))


def _lattice(N: int, linear: int = 0):
    """(m, n, m^2+mn+n^2 + linear*(m+n)) for all lattice points with value <= N."""
    # m^2+mn+n^2 >= 3/4 max(|m|,|n|)^2
    R = math.isqrt(4 * (N + linear * linear) // 3) + 2 + linear
    for m in range(-R, R + 1):
        for n in range(-R, R + 1):
            v = m * m + m * n + n * n + linear * (m + n)
            if 0 <= v <= N:
                yield m, n, v


def cubic_a(N: int) -> IntegerSeries:
    """sum_{m,n} q^(m^2+mn+n^2) by direct enumeration."""
    out = [0] * (N + 1)
    for _, _, v in _lattice(N):
        out[v] += 1
    return IntegerSeries(tuple(out))


def cubic_b(N: int) -> IntegerSeries:
    """sum_{m,n} w^(m-n) q^(m^2+mn+n^2), w a primitive cube root of unity.

    The lattice is symmetric under m <-> n, so each coefficient is real:
    w^k + w^-k is 2 for k = 0 mod 3 and -1 otherwise.
    """
    twice = [0] * (N + 1)
    for m, n, v in _lattice(N):
        twice[v] += 2 if (m - n) % 3 == 0 else -1
    return IntegerSeries(tuple(twice)).exact_div(2)


def cubic_c_shifted(N: int) -> IntegerSeries:
    """c(q) / (3 q^(1/3)) = (1/3) sum_{m,n} q^(m^2+mn+n^2+m+n)."""
    out = [0] * (N + 1)
    for _, _, v in _lattice(N, linear=1):
        out[v] += 1
    return IntegerSeries(tuple(out)).exact_div(3)


def rr_quotient(N: int) -> IntegerSeries:
    """(q;q^5)(q^4;q^5) / ((q^2;q^5)(q^3;q^5))."""
    return SeriesSpec(((1, 5, 1), (4, 5, 1), (2, 5, -1), (3, 5, -1))).expand(N)


def q_kij_series(k: int, i: int, N: int) -> IntegerSeries:
    """(q^i, q^(2k+1-i), q^(2k+1); q^(2k+1))_inf / (q;q)_inf."""
    if k < 1 or not 1 <= i <= 2 * k:
        raise ValueError(f"need k >= 1 and 1 <= i <= 2k, got k={k}, i={i}")
    K = 2 * k + 1
    return SeriesSpec(((i, K, 1), (K - i, K, 1), (K, K, 1), (1, 1, -1))).expand(N)


# -- identity checking ------------------------------------------------------------

Side = Union[IntegerSeries, SeriesSpec, Sequence[SeriesSpec], Callable[[int], IntegerSeries]]


def evaluate(side: Side, N: int) -> IntegerSeries:
    if isinstance(side, IntegerSeries):
        return side
    if isinstance(side, SeriesSpec):
        return side.expand(N)
    if callable(side):
        return side(N)
    total = IntegerSeries.zero(N)
    for spec in side:
        total = total + spec.expand(N)
    return total


@dataclass(frozen=True)
class IdentityCheck:
    ok: bool
    order: int
    first_mismatch: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_identity(lhs: Side, rhs: Side, N: int) -> IdentityCheck:
    """Compare both sides coefficientwise for 0..N."""
    left = evaluate(lhs, N)
    right = evaluate(rhs, N)
    if left.order < N or right.order < N:
        raise ValueError(f"sides only exact to {min(left.order, right.order)} < {N}")
    for n in range(N + 1):
        if left[n] != right[n]:
            return IdentityCheck(False, N, n)
    return IdentityCheck(True, N)
