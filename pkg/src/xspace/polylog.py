"""Polylogarithms over restricted summation domains.

Domains (all indices start at 1):

``P``
    independent indices, a product of single polylogarithms;
``MP``
    ``n_1 < n_2 < ... < n_k``, the multiple polylogarithm;
``T``
    ``n_1 < n_2`` and ``n_2 - n_1 < n_3 < n_2 + n_1`` (``k = 3``);
``MT`` / ``AV``
    independent / strictly increasing indices with an extra aggregate factor
    ``z_agg^{n_1+...+n_k} / (n_1+...+n_k)^{s_agg}`` (Mordell-Tornheim and
    Apostol-Vu type).

Each index may be restricted to even or odd values, and the whole sum may be
restricted to an even or odd total degree ``n_1+...+n_k``.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np
from scipy import special as sps

from .exact import ZetaCombination
from .series import ConvergenceError, SeriesValue
from .special import bernoulli, harmonic, zeta, zeta_float

PARITIES = ("any", "even", "odd")
DOMAINS = ("P", "MP", "T", "MT", "AV")

_ROUND = 2e-16  # relative rounding allowance per accumulated magnitude
_DEFAULT_EPS = 1e-12


# ---------------------------------------------------------------------------
# spec


def _parse_number(v):
    if isinstance(v, Mapping):
        return complex(v.get("re", 0.0), v.get("im", 0.0))
    if isinstance(v, (list, tuple)):
        return complex(v[0], v[1])
    if isinstance(v, complex):
        return v if v.imag else v.real
    return float(v)


def _dump_number(v):
    if isinstance(v, complex):
        return {"re": v.real, "im": v.imag}
    return float(v)


@dataclass(frozen=True)
class PolylogSpec:
    """Restricted polylogarithm ``Li^{domain}_{s}(z)``.

    >>> PolylogSpec("P", (2,), (1.0,))
    PolylogSpec(domain='P', s=(2,), z=(1.0,), parity=('any',), total_parity='any', s_agg=None, z_agg=None)
    """

    domain: str
    s: tuple
    z: tuple
    parity: tuple | None = None
    total_parity: str = "any"
    s_agg: int | None = None
    z_agg: complex | float | None = None

    def __post_init__(self):
        if self.domain not in DOMAINS:
            raise ValueError(f"unknown domain {self.domain!r}")
        s = tuple(int(x) for x in self.s)
        z = tuple(_parse_number(x) for x in self.z)
        if len(s) != len(z) or not s:
            raise ValueError("s and z must be nonempty and of equal length")
        parity = tuple(self.parity) if self.parity is not None else ("any",) * len(s)
        if len(parity) != len(s):
            raise ValueError("one parity entry per index is required")
        for p in parity + (self.total_parity,):
            if p not in PARITIES:
                raise ValueError(f"unknown parity {p!r}")
        if self.domain == "T" and len(s) != 3:
            raise ValueError("domain T needs exactly three indices")
        agg = self.domain in ("MT", "AV")
        if agg and (self.s_agg is None or self.z_agg is None):
            raise ValueError(f"domain {self.domain} needs s_agg and z_agg")
        if not agg and (self.s_agg is not None or self.z_agg is not None):
            raise ValueError(f"domain {self.domain} takes no aggregate slot")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "parity", parity)
        if agg:
            object.__setattr__(self, "s_agg", int(self.s_agg))
            object.__setattr__(self, "z_agg", _parse_number(self.z_agg))

    @property
    def depth(self) -> int:
        return len(self.s)

    @classmethod
    def from_json(cls, data: str | Mapping) -> "PolylogSpec":
        if isinstance(data, str):
            data = json.loads(data)
        known = {"domain", "s", "z", "parity", "total_parity", "s_agg", "z_agg"}
        extra = set(data) - known
        if extra:
            raise ValueError(f"unknown keys {sorted(extra)}")
        try:
            return cls(
                data["domain"],
                tuple(data["s"]),
                tuple(data["z"]),
                tuple(data["parity"]) if data.get("parity") is not None else None,
                data.get("total_parity", "any"),
                data.get("s_agg"),
                data.get("z_agg"),
            )
        except KeyError as exc:
            raise ValueError(f"missing key {exc}") from exc

    def to_json(self) -> dict:
        out = {
            "domain": self.domain,
            "parity": list(self.parity),
            "s": list(self.s),
            "z": [_dump_number(x) for x in self.z],
        }
        if self.total_parity != "any":
            out["total_parity"] = self.total_parity
        if self.s_agg is not None:
            out["s_agg"] = self.s_agg
            out["z_agg"] = _dump_number(self.z_agg)
        return out


# ---------------------------------------------------------------------------
# bound helpers


def _is_one(x: float) -> bool:
    return abs(x - 1.0) <= 1e-15


def _tail(N: int, rho: float, sigma: float, p: int, c: float = 1.0) -> float:
    """Upper bound of ``c * sum_{n>N} rho^n (1+ln n)^p n^{-sigma}``."""
    if c == 0 or rho == 0:
        return 0.0
    m = N + 1
    if rho < 1 and not _is_one(rho):
        q = rho * (1 + 1 / m) ** (p + max(0.0, -sigma))
        if q >= 1:
            return math.inf
        first = math.exp(m * math.log(rho) + p * math.log1p(math.log(m)) - sigma * math.log(m))
        return c * first / (1 - q)
    if sigma <= 1:
        return math.inf
    # f(x) = (1+ln x)^p x^{-sigma} decreases once sigma (1 + ln x) >= p
    if sigma * (1 + math.log(max(N, 1))) < p:
        return math.inf
    u0 = (sigma - 1) * (1 + math.log(max(N, 1)))
    integral = math.exp(sigma - 1) * sps.gammaincc(p + 1, u0) * math.gamma(p + 1) / (sigma - 1) ** (p + 1)
    return c * integral


def _choose_n(bound_of_n, eps: float, n_min: int, n_max: int) -> tuple[int, float]:
    """Smallest power-of-two-ish ``N`` in ``[n_min, n_max]`` with ``bound_of_n(N) <= eps``."""
    n = max(n_min, 8)
    while n < n_max and bound_of_n(n) > eps:
        n *= 2
    n = min(n, n_max)
    lo, hi = max(n_min, n // 2), n
    if bound_of_n(hi) <= eps:
        while hi - lo > max(8, hi // 64):
            mid = (lo + hi) // 2
            if bound_of_n(mid) <= eps:
                hi = mid
            else:
                lo = mid
    return hi, bound_of_n(hi)


@dataclass(frozen=True)
class _Growth:
    """``sum_{m<n} rho^m m^{-s} <= c * n^e * (1 + ln n)^p`` for all ``n >= 1``."""

    c: float
    e: float
    p: int


def _growth_unit(s: int) -> _Growth:
    if s >= 2:
        return _Growth(zeta_float(s), 0.0, 0)
    if s == 1:
        return _Growth(1.0, 0.0, 1)
    return _Growth(1.0, 1.0 - s, 0)


def _growth(s: int, rho: float) -> _Growth:
    if rho == 0:
        return _Growth(0.0, 0.0, 0)
    if rho < 1 and not _is_one(rho):
        v = eval_polylog(s, rho)
        return _Growth(float(v.value) + v.tail_bound, 0.0, 0)
    return _growth_unit(s)


# ---------------------------------------------------------------------------
# single polylogarithm


def _eulerian_row(m: int) -> list[int]:
    """Eulerian numbers ``A(m, 0..m-1)``."""
    row = [1]
    for n in range(2, m + 1):
        new = [0] * n
        for k, a in enumerate(row):
            new[k] += (k + 1) * a
            new[k + 1] += (n - k - 1) * a
        row = new
    return row


def _li_closed(s: int, z):
    """``Li_s`` for ``s <= 1`` in closed form."""
    if s == 1:
        return -cmath.log(1 - z) if isinstance(z, complex) else -math.log1p(-z)
    if s == 0:
        return z / (1 - z)
    m = -s
    row = _eulerian_row(m)
    poly = sum(c * z**k for k, c in enumerate(row))
    return z * poly / (1 - z) ** (m + 1)


def _li_direct(s: int, z, eps: float, n_max: int = 1 << 22) -> SeriesValue:
    r = abs(z)
    N, bound = _choose_n(lambda n: _tail(n, r, s, 0), eps / 2, 8, n_max)
    n = np.arange(1, N + 1, dtype=float)
    terms = np.power(complex(z) if isinstance(z, complex) else z, n) * n ** (-float(s))
    value = complex(np.sum(terms)) if isinstance(z, complex) else math.fsum(terms)
    round_err = _ROUND * float(np.sum(np.abs(terms))) * 4
    return SeriesValue(value, bound + round_err, N)


def _li_log_series(s: int, z, eps: float) -> SeriesValue:
    """Expansion of ``Li_s(e^mu)`` in powers of ``mu = ln z`` (valid for ``|mu| < 2 pi``)."""
    mu = cmath.log(z)
    if not isinstance(z, complex) and z > 0:
        mu = mu.real
    amu = abs(mu)
    q = amu / (2 * math.pi)
    if q >= 1:
        raise ConvergenceError("log series needs |ln z| < 2 pi")
    terms = []
    if amu == 0:
        return zeta(s)
    lead = mu ** (s - 1) / math.factorial(s - 1) * (float(harmonic(s - 1)) - cmath.log(-mu))
    terms.append(lead)
    k = 0
    K = s
    # pick K so that the geometric tail drops below eps
    pref = 2 * zeta_float(2) * (2 * math.pi) ** (s - 1)
    while pref * q ** (K + 1) / (1 - q) > eps / 2:
        K += 1
    zeta_bound = 0.0
    while k <= K:
        if k != s - 1:
            m = s - k
            if m >= 2:
                zv = zeta(m)
                zeta_bound += zv.tail_bound * amu**k / math.factorial(k)
                zk = zv.value
            elif m == 0:
                zk = -0.5
            else:
                zk = -float(bernoulli(1 - m)) / (1 - m)
            terms.append(zk * mu**k / math.factorial(k))
        k += 1
    tail = pref * q ** (K + 1) / (1 - q)
    total = sum(terms)
    if not isinstance(z, complex):
        total = total.real if isinstance(total, complex) else total
    round_err = _ROUND * 8 * sum(abs(t) for t in terms)
    return SeriesValue(total, tail + zeta_bound + round_err, len(terms))


def eval_polylog(s: int, z, eps: float = 1e-15) -> SeriesValue:
    """``Li_s(z) = sum_{n>=1} z^n / n^s`` for ``|z| <= 1``.

    Small ``|z|`` is summed directly; otherwise an expansion in ``ln z`` is
    used, which also covers the unit circle. ``s <= 1`` uses closed forms.
    """
    s = int(s)
    if isinstance(z, complex) and z.imag == 0:
        z = z.real
    if z == 0:
        return SeriesValue(0.0 * z, 0.0, 0)
    r = abs(z)
    if r > 1 and not _is_one(r):
        raise ConvergenceError("no convergence bound: |z| > 1")
    on_circle = _is_one(r)
    if s <= 1:
        if on_circle and (s <= 0 or z == 1):
            raise ConvergenceError("no convergence bound: divergent on the unit circle")
        v = _li_closed(s, z)
        return SeriesValue(v, 4 * _ROUND * (abs(v) + 1), 0)
    if z == 1:
        return zeta(s)
    if r <= 0.75:
        return _li_direct(s, z, eps)
    return _li_log_series(s, z, eps)


def _parity_single(s: int, z, parity: str, eps: float) -> SeriesValue:
    if parity == "any":
        return eval_polylog(s, z, eps)
    a, b = eval_polylog(s, z, eps), eval_polylog(s, -z, eps)
    v = a + b if parity == "even" else a - b
    return v.scaled(0.5)


# ---------------------------------------------------------------------------
# restricted sums


def _coeffs(s: int, z, n_max: int, parity: str = "any") -> np.ndarray:
    n = np.arange(n_max + 1, dtype=float)
    dtype = complex if isinstance(z, complex) else float
    out = np.zeros(n_max + 1, dtype=dtype)
    if n_max >= 1:
        out[1:] = np.power(z, n[1:]) * n[1:] ** (-float(s))
    if parity == "even":
        out[1::2] = 0
    elif parity == "odd":
        out[0::2] = 0
    return out


def _result(value, abs_sum: float, bound: float, terms: int, is_complex: bool) -> SeriesValue:
    v = complex(value) if is_complex else float(np.real(value))
    return SeriesValue(v, bound + _ROUND * 16 * abs_sum, terms)


def _eval_mp(spec: PolylogSpec, eps: float, max_terms: int) -> SeriesValue:
    k = spec.depth
    rho = [abs(x) for x in spec.z]
    if _is_one(rho[-1]) and spec.s[-1] < 2:
        raise ConvergenceError("no convergence bound: outermost exponent must be >= 2 on |z| = 1")
    grow = [_growth(spec.s[i], rho[i]) for i in range(k - 1)]
    c = math.prod(g.c for g in grow)
    e = sum(g.e for g in grow)
    p = sum(g.p for g in grow)
    sigma = spec.s[-1] - e
    bound_of = lambda n: _tail(n, rho[-1], sigma, p, c)  # noqa: E731
    if _is_one(rho[-1]) and sigma <= 1:
        raise ConvergenceError("no convergence bound")
    N, bound = _choose_n(bound_of, eps / 2, 8, max_terms)
    is_c = any(isinstance(x, complex) for x in spec.z)
    acc = None
    acc_abs = None
    for i in range(k):
        a = _coeffs(spec.s[i], spec.z[i], N, spec.parity[i])
        if acc is None:
            cur, cur_abs = a, np.abs(a)
        else:
            # strictly smaller previous index: shift cumulative sums by one
            prev = np.concatenate(([0], np.cumsum(acc)[:-1]))
            prev_abs = np.concatenate(([0], np.cumsum(acc_abs)[:-1]))
            cur, cur_abs = a * prev, np.abs(a) * prev_abs
        acc, acc_abs = cur, cur_abs
    return _result(np.sum(acc), float(np.sum(acc_abs)), bound, N, is_c)


def _eval_t(spec: PolylogSpec, eps: float, max_terms: int) -> SeriesValue:
    s1, s2, s3 = spec.s
    z1, z2, z3 = spec.z
    r1, r2, r3 = abs(z1), abs(z2), abs(z3)
    r13 = max(r1, r3)
    rho = r2 * r13
    g1 = _growth_unit(s1)
    g3 = _growth_unit(s3)
    # (1 + ln 2n) <= 2 (1 + ln n)
    c = r13 * g1.c * g3.c * 2.0**g3.e * 2.0**g3.p
    sigma = s2 - g1.e - g3.e
    p = g1.p + g3.p
    if _is_one(rho) and sigma <= 1:
        raise ConvergenceError("no convergence bound")
    N, bound = _choose_n(lambda n: _tail(n, rho, sigma, p, c), eps / 2, 8, max_terms)
    a1 = _coeffs(s1, z1, N, spec.parity[0])
    a2 = _coeffs(s2, z2, N, spec.parity[1])
    a3 = _coeffs(s3, z3, 2 * N, spec.parity[2])
    pre3 = np.cumsum(a3)
    pre3_abs = np.cumsum(np.abs(a3))
    total = 0j if any(isinstance(x, complex) for x in spec.z) else 0.0
    parts = []
    abs_total = 0.0
    for n2 in range(2, N + 1):
        if a2[n2] == 0:
            continue
        n1 = np.arange(1, n2)
        inner = pre3[n2 + n1 - 1] - pre3[n2 - n1]
        inner_abs = pre3_abs[n2 + n1 - 1] - pre3_abs[n2 - n1]
        parts.append(a2[n2] * np.dot(a1[1:n2], inner))
        abs_total += abs(a2[n2]) * float(np.dot(np.abs(a1[1:n2]), inner_abs))
    total = math.fsum(parts) if not np.iscomplexobj(np.asarray(parts)) else complex(np.sum(parts))
    is_c = any(isinstance(x, complex) for x in spec.z)
    return _result(total, abs_total, bound, N, is_c)


def _eval_product(spec: PolylogSpec, eps: float) -> SeriesValue:
    k = spec.depth
    vals = [_parity_single(s, z, p, eps / (4 * k)) for s, z, p in zip(spec.s, spec.z, spec.parity)]
    value = 1.0
    hi = 1.0
    lo = 1.0
    for v in vals:
        value = value * v.value
        hi *= abs(v.value) + v.tail_bound
        lo *= abs(v.value)
    return SeriesValue(value, hi - lo + _ROUND * 4 * hi, sum(v.terms_used for v in vals))


def _aggregate_growth(s: Sequence[int]) -> tuple[float, float, int]:
    """Shell bound ``sum_{n_1+...+n_k=d} prod n_i^{-s_i} <= c d^{-sigma} (1+ln d)^p``."""
    k = len(s)
    grow = [_growth_unit(si) for si in s]
    c_tot = 0.0
    sigma = math.inf
    p_max = 0
    for i in range(k):
        others = [grow[j] for j in range(k) if j != i]
        ci = (k ** s[i] if s[i] >= 0 else 1.0) * math.prod(g.c for g in others)
        sig_i = s[i] - sum(g.e for g in others)
        c_tot += ci
        sigma = min(sigma, sig_i)
        p_max = max(p_max, sum(g.p for g in others))
    return c_tot, sigma, p_max


def _eval_aggregate(kind: str, s, s_agg, z, z_agg, parity, eps: float, max_terms: int) -> SeriesValue:
    k = len(s)
    if any(x == 0 for x in z) or z_agg == 0:
        return SeriesValue(0.0, 0.0, 0)
    rz = max(abs(x) for x in z)
    if rz > 1 and not _is_one(rz) or abs(z_agg) > 1 and not _is_one(abs(z_agg)):
        raise ConvergenceError("no convergence bound: argument outside the closed unit disk")
    rho = rz * abs(z_agg)
    c, sigma, p = _aggregate_growth(s)
    sigma += s_agg
    if _is_one(rho) and (s_agg + min(s) < 3 or sigma <= 1):
        raise ConvergenceError("no convergence bound: need s_agg + min(s) >= 3 on the unit torus")
    N, bound = _choose_n(lambda n: _tail(n, rho, sigma, p, c), eps / 2, 8, max_terms)
    arrays = [_coeffs(si, zi, N, pi) for si, zi, pi in zip(s, z, parity)]
    if kind == "MT":
        shell = arrays[0]
        shell_abs = np.abs(arrays[0])
        for a in arrays[1:]:
            shell = np.convolve(shell, a)[: N + 1]
            shell_abs = np.convolve(shell_abs, np.abs(a))[: N + 1]
    else:
        dtype = np.result_type(*arrays)
        G = [np.zeros(N + 1, dtype=dtype) for _ in range(k + 1)]
        Ga = [np.zeros(N + 1) for _ in range(k + 1)]
        G[0][0] = 1.0
        Ga[0][0] = 1.0
        for v in range(1, N + 1):
            for j in range(min(k, v), 0, -1):
                coef = arrays[j - 1][v]
                if coef == 0:
                    continue
                G[j][v:] += coef * G[j - 1][: N + 1 - v]
                Ga[j][v:] += abs(coef) * Ga[j - 1][: N + 1 - v]
        shell, shell_abs = G[k], Ga[k]
    agg = _coeffs(s_agg, z_agg, N)
    value = np.sum(shell * agg)
    abs_sum = float(np.sum(shell_abs * np.abs(agg)))
    is_c = any(isinstance(x, complex) for x in list(z) + [z_agg])
    return _result(value, abs_sum, bound, N, is_c)


def eval_mt(s: Sequence[int], s_agg: int, z: Sequence, z_agg, eps: float = _DEFAULT_EPS,
            parity: Sequence[str] | None = None, max_terms: int = 1 << 14) -> SeriesValue:
    """Mordell-Tornheim type series over independent indices."""
    parity = tuple(parity) if parity else ("any",) * len(s)
    return _eval_aggregate("MT", tuple(s), int(s_agg), tuple(z), z_agg, parity, eps, max_terms)


def eval_av(s: Sequence[int], s_agg: int, z: Sequence, z_agg, eps: float = _DEFAULT_EPS,
            parity: Sequence[str] | None = None, max_terms: int = 1 << 13) -> SeriesValue:
    """Apostol-Vu type series over strictly increasing indices."""
    parity = tuple(parity) if parity else ("any",) * len(s)
    return _eval_aggregate("AV", tuple(s), int(s_agg), tuple(z), z_agg, parity, eps, max_terms)


def eval_restricted_polylog(spec: PolylogSpec, eps: float = _DEFAULT_EPS, max_terms: int | None = None) -> SeriesValue:
    """Evaluate ``spec`` to absolute accuracy ``eps`` where the term budget allows.

    The returned ``tail_bound`` is always an honest bound; if ``max_terms``
    caps the truncation it can exceed ``eps``. Raises
    :class:`ConvergenceError` when no bound can be certified.
    """
    if spec.total_parity != "any":
        base = replace(spec, total_parity="any")
        flipped = replace(base, z=tuple(-x for x in spec.z))
        a = eval_restricted_polylog(base, eps, max_terms)
        b = eval_restricted_polylog(flipped, eps, max_terms)
        return (a + b if spec.total_parity == "even" else a - b).scaled(0.5)
    if any(x == 0 for x in spec.z):
        return SeriesValue(0.0, 0.0, 0)
    for x in spec.z:
        if abs(x) > 1 and not _is_one(abs(x)):
            raise ConvergenceError("no convergence bound: argument outside the closed unit disk")
    if spec.domain == "P":
        return _eval_product(spec, eps)
    if spec.domain == "MP":
        return _eval_mp(spec, eps, max_terms or (1 << 22))
    if spec.domain == "T":
        return _eval_t(spec, eps, max_terms or 4096)
    if spec.domain == "MT":
        return eval_mt(spec.s, spec.s_agg, spec.z, spec.z_agg, eps, spec.parity, max_terms or (1 << 14))
    return eval_av(spec.s, spec.s_agg, spec.z, spec.z_agg, eps, spec.parity, max_terms or (1 << 13))


# ---------------------------------------------------------------------------
# Euler-Maclaurin machinery


def _rising(s, m: int):
    out = 1
    for i in range(m):
        out *= s + i
    return out


def f_derivative(k: int, s, x: float, t):
    """``k``-th derivative of ``f(t) = x^t t^{-s}``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    lx = math.log(x)
    acc = 0.0
    for j in range(k + 1):
        acc = acc + (
            (-1) ** (k - j) * math.comb(k, j) * _rising(s, k - j)
            * t ** (-(s + k - j)) * x**t * lx**j
        )
    return acc


def F_jk(j: int, k: int, s: int, z: float) -> float:
    """``(b_k/k!) binom(k,j) binom(s+k-j-1, k-j) (k-j)! (ln z)^j``.

    This is the coefficient attached to the ``k``-th derivative. In the
    decomposition of :func:`eml_decompose_T` the Bernoulli factor ``b_k/k!``
    multiplies the ``(k-1)``-th derivative, so the coefficients actually used
    are given by :func:`eml_coefficient`.
    """
    return float(bernoulli(k)) / math.factorial(k) * math.comb(k, j) * _rising(s, k - j) * math.log(z) ** j


def eml_coefficient(j: int, k: int, s: int, z: float) -> float:
    """Coefficient of ``z^B B^{-(s+k-1-j)}`` in ``(b_k/k!) f^{(k-1)}(B)``."""
    m = k - 1
    return (
        float(bernoulli(k)) / math.factorial(k)
        * (-1) ** (m - j) * math.comb(m, j) * _rising(s, m - j) * math.log(z) ** j
    )


_GL_X, _GL_W = np.polynomial.legendre.leggauss(24)


def _unit_interval_integrals(func, lo: int, hi: int) -> np.ndarray:
    """``[int_m^{m+1} func]`` for ``m = lo..hi-1`` with 24-point Gauss-Legendre per interval."""
    if hi <= lo:
        return np.zeros(0)
    m = np.arange(lo, hi, dtype=float)[:, None]
    t = m + 0.5 + 0.5 * _GL_X[None, :]
    return 0.5 * (func(t) @ _GL_W)


def _majorant(N: int, s: int, z: float):
    """Smooth majorant ``g >= |f^{(N)}|`` on ``t > 0``."""
    lz = abs(math.log(z))
    coeffs = [math.comb(N, j) * _rising(s, N - j) * lz**j for j in range(N + 1)]

    def g(t):
        return sum(c * t ** (-(s + N - j)) for j, c in enumerate(coeffs)) * z**t

    return g


def eml_inner_sum(s3: int, z3: float, a: int, b: int, N: int) -> SeriesValue:
    """``sum_{n=a}^{b} z3^n / n^{s3}`` by Euler-Maclaurin with ``N`` Bernoulli orders.

    ``tail_bound`` bounds the remainder integral
    ``|b_N|/N! int_a^b |f^{(N)}|``.
    """
    if a < 1:
        raise ValueError("a must be at least 1")
    if b < a:
        raise ValueError("need a <= b")
    if N < 2 or N % 2:
        raise ValueError("N must be even and at least 2")
    if not 0 < z3 <= 1:
        raise ValueError("z3 must lie in (0, 1]")
    if a == b:
        return SeriesValue(z3**a * a ** (-s3), 0.0, 1)
    f = lambda t: z3**t * t ** (-float(s3))  # noqa: E731
    integral = math.fsum(_unit_interval_integrals(f, a, b))
    value = [integral, 0.5 * (f(a) + f(b))]
    for k in range(2, N + 1):
        if bernoulli(k):
            value.append(float(bernoulli(k)) / math.factorial(k)
                         * (f_derivative(k - 1, s3, z3, b) - f_derivative(k - 1, s3, z3, a)))
    g = _majorant(N, s3, z3)
    rem = abs(float(bernoulli(N))) / math.factorial(N) * math.fsum(_unit_interval_integrals(g, a, b))
    total = math.fsum(value)
    return SeriesValue(total, rem * (1 + 1e-12) + _ROUND * 8 * sum(abs(v) for v in value), N)


@dataclass(frozen=True)
class EmlTerm:
    """One summand ``coefficient * value`` of the decomposition."""

    kind: str  # "AV", "MT" or "integral"
    coefficient: float
    s: tuple  # exponents passed to the series, aggregate last
    value: SeriesValue
    j: int | None = None
    k: int | None = None

    @property
    def contribution(self) -> float:
        return self.coefficient * float(self.value.value)

    def label(self) -> str:
        if self.kind == "integral":
            return "integral term"
        s1, s2, sa = self.s
        name = "Li^AV" if self.kind == "AV" else "Li^MT"
        return f"{name}_{{{s1},{s2};{sa}}}"


@dataclass(frozen=True)
class EmlDecomposition:
    terms: tuple
    remainder_bound: float
    series_bound: float
    total: SeriesValue

    def to_dict(self) -> dict:
        return {
            "total": self.total.to_dict(),
            "remainder_bound": self.remainder_bound,
            "series_bound": self.series_bound,
            "terms": [
                {"kind": t.kind, "label": t.label(), "j": t.j, "k": t.k,
                 "coefficient": t.coefficient, "value": t.value.to_dict()}
                for t in self.terms
            ],
        }


def eml_decompose_T(s1: int, s2: int, s3: int, z, N: int, eps: float = 1e-13, n_outer: int | None = None) -> EmlDecomposition:
    """Split ``Li^T_{s1,s2,s3}(z1,z2,z3)`` by Euler-Maclaurin on the innermost sum.

    For ``A = n2 - n1`` and ``B = n2 + n1``::

        sum_{A<n<B} f(n) = int_A^B f - (f(A)+f(B))/2
                           + sum_k (b_k/k!) (f^{(k-1)}(B) - f^{(k-1)}(A)) + R_N

    Summed against ``z1^n1 z2^n2 / (n1^s1 n2^s2)`` over ``n2 > n1``, each
    ``B``-term is an Apostol-Vu series ``Li^AV_{s1,s2;sigma}(z1,z2;z3)`` and
    each ``A``-term, after ``m = n2 - n1``, a Mordell-Tornheim series
    ``Li^MT_{s1,sigma;s2}(z1,z3;z2)``, with ``sigma = s3 + k - 1 - j``. The
    integral term is summed numerically and ``R_N`` is bounded.
    """
    if N < 2 or N % 2:
        raise ValueError("N must be even and at least 2")
    zs = tuple(z) if isinstance(z, (tuple, list)) else (z, z, z)
    for x in zs:
        if isinstance(x, complex) or not 0 < x < 1:
            raise ValueError("arguments must lie in (0, 1)")
    z1, z2, z3 = zs
    terms: list[EmlTerm] = []

    def av(sig, coef, j=None, k=None):
        v = eval_av((s1, s2), sig, (z1, z2), z3, eps)
        terms.append(EmlTerm("AV", coef, (s1, s2, sig), v, j, k))

    def mt(sig, coef, j=None, k=None):
        v = eval_mt((s1, sig), s2, (z1, z3), z2, eps)
        terms.append(EmlTerm("MT", coef, (s1, sig, s2), v, j, k))

    av(s3, -0.5)
    mt(s3, -0.5)
    for k in range(2, N + 1):
        if not bernoulli(k):
            continue
        for j in range(k):
            c = eml_coefficient(j, k, s3, z3)
            if c == 0:
                continue
            av(s3 + k - 1 - j, c, j, k)
            mt(s3 + k - 1 - j, -c, j, k)

    # outer truncation for the numerically summed pieces
    grow1 = _growth(s1, z1)
    rho = z2
    f = lambda t: z3**t * t ** (-float(s3))  # noqa: E731
    g = _majorant(N, s3, z3)
    lz = abs(math.log(z3))
    f_total = z3 / lz  # int_1^inf z^t dt bounds int f for s3 >= 0
    g_total = sum(math.comb(N, j) * _rising(s3, N - j) * lz**j for j in range(N + 1)) * z3 / lz
    if n_outer is None:
        n_outer, _ = _choose_n(lambda n: _tail(n, rho, s2, 0, grow1.c * max(f_total, g_total)), eps, 16, 1 << 13)
    M = n_outer
    Gf = np.concatenate(([0.0, 0.0], np.cumsum(_unit_interval_integrals(f, 1, 2 * M))))
    Gg = np.concatenate(([0.0, 0.0], np.cumsum(_unit_interval_integrals(g, 1, 2 * M))))
    a1 = _coeffs(s1, z1, M)
    a2 = _coeffs(s2, z2, M)
    integral_parts = []
    rem_parts = []
    for n2 in range(2, M + 1):
        n1 = np.arange(1, n2)
        w = a2[n2] * a1[1:n2]
        integral_parts.append(float(np.dot(w, Gf[n2 + n1] - Gf[n2 - n1])))
        rem_parts.append(float(np.dot(w, Gg[n2 + n1] - Gg[n2 - n1])))
    integral_value = math.fsum(integral_parts)
    outer_tail = _tail(M, rho, s2, 0, grow1.c)
    integral = SeriesValue(
        integral_value, outer_tail * f_total + _ROUND * 16 * abs(integral_value) + 1e-15, M
    )
    terms.append(EmlTerm("integral", 1.0, (s1, s2, s3), integral))
    bn = abs(float(bernoulli(N))) / math.factorial(N)
    remainder = bn * (math.fsum(rem_parts) * (1 + 1e-10) + outer_tail * g_total)
    series_bound = sum(abs(t.coefficient) * t.value.tail_bound for t in terms)
    value = math.fsum(t.coefficient * float(t.value.value) for t in terms)
    total = SeriesValue(value, remainder + series_bound, sum(t.value.terms_used for t in terms))
    return EmlDecomposition(tuple(terms), remainder, series_bound, total)


# ---------------------------------------------------------------------------
# zeta-value reduction of moments of polylogarithms


@lru_cache(maxsize=None)
def freitas_reduce(m: int, n: int) -> ZetaCombination:
    """``int_0^1 x^m Li_n(x) dx`` as an exact combination of zeta values.

    Integration by parts gives ``I(m,n) = (zeta(n) - I(m,n-1)) / (m+1)`` with
    ``I(m,1) = H_{m+1}/(m+1)``.

    >>> str(freitas_reduce(0, 2))
    '-1 + zeta(2)'
    """
    if n <= 0:
        raise ValueError("n must be at least 1")
    if m < 0:
        raise ValueError("m must be nonnegative")
    if n == 1:
        return ZetaCombination.rational(harmonic(m + 1) / (m + 1))
    return (ZetaCombination.zeta(n) - freitas_reduce(m, n - 1)) / (m + 1)
