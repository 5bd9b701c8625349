"""Closed-form assembly of the GRH bounds for L'/L and zeta'/zeta.

Every bound comes back as a :class:`BoundReport`, a list of signed terms
whose sum is the bound. Each term carries a short descriptive tag saying
where it comes from. Moduli q (or heights t) only enter through log q, so
they may be given as ``log_q`` directly; 10^k is then exactly k log 10.

Three levels are kept apart for the main theorems. The *assembled* bound
combines the individual estimates at the chosen lambda. The *full* bound
uses the rounded coefficients of the proof's final display. The
*simplified* bound is the one stated in the theorem. Checks assert
assembled <= full <= simplified on decade grids.
"""
from __future__ import annotations

import math
import re
from dataclasses import asdict, dataclass, field

from .arith_primes import EULER_GAMMA
from .errors import DomainError, NotFoundError

LOG10 = math.log(10.0)
LAMBDA_THM11 = 2.1862
LAMBDA_THM13 = 0.75
LOG_Q_MIN = 30 * LOG10
X_MIN = 60.0

ALPHA = 1 / (1 - math.exp(-2))
BETA = 1 + 1 / LOG_Q_MIN**2

# rounded constants as displayed with the theorems and their proofs
C_CONST = 0.4989
C_THM11_SIMPLE = 5.91
C_THM16_SIMPLE = 5.35
C_MAIN = 3.091
C_THM11_LL = 11.776
C_THM11_LL2 = 0.455
C_THM11_L = 78.906
C_THM16_LL = 9.06
C_THM16_LL2 = 2.137
C_ZERO_SUM_1 = 2.6
C_ALPHA2BETA = 1.338
C_TRIVIAL = 4.3
C_A_SIGMA = 2.079
C_THM13_MID = 5.561
C_THM13_LL = 0.306
C_COROLLARY = 0.224

_REL = 1e-12


@dataclass(frozen=True)
class Term:
    name: str
    tag: str
    value: float


@dataclass
class BoundReport:
    name: str
    inputs: dict
    terms: list[Term]
    comparison: float | None = None
    validity_note: str = ""
    flags: list[str] = field(default_factory=list)
    extras: dict = field(default_factory=dict)

    @property
    def total(self) -> float:
        return math.fsum(t.value for t in self.terms)

    @property
    def slack(self) -> float | None:
        return None if self.comparison is None else self.total - self.comparison

    def reevaluate(self) -> float:
        """Plain left-to-right sum in reverse order, for double evaluation."""
        s = 0.0
        for t in reversed(self.terms):
            s += t.value
        return s

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "inputs": dict(self.inputs),
            "terms": [asdict(t) for t in self.terms],
            "total": self.total,
            "comparison": self.comparison,
            "slack": self.slack,
            "validity_note": self.validity_note,
            "flags": list(self.flags),
            "extras": dict(self.extras),
        }


# --------------------------------------------------------------------------
# inputs


def parse_magnitude(text) -> float:
    """log of a magnitude given as a number, '1e30', '10^153' or 'e^70'."""
    if isinstance(text, (int, float)):
        if text <= 0:
            raise DomainError(f"magnitude must be positive, got {text}")
        return math.log(text)
    s = str(text).strip().replace(" ", "")
    m = re.fullmatch(r"10\^\(?([+-]?\d+(?:\.\d*)?)\)?", s) or re.fullmatch(r"1e([+-]?\d+)", s, re.I)
    if m:
        return float(m.group(1)) * LOG10
    m = re.fullmatch(r"e\^\(?([+-]?\d+(?:\.\d*)?)\)?", s)
    if m:
        return float(m.group(1))
    try:
        v = float(s)
    except ValueError:
        raise DomainError(f"cannot read magnitude {text!r}") from None
    if not math.isfinite(v) or v <= 0:
        raise DomainError(f"magnitude must be positive and finite, got {text!r}")
    return math.log(v)


def _resolve(q=None, log_q=None) -> float:
    if log_q is None:
        if q is None:
            raise DomainError("need q or log_q")
        log_q = parse_magnitude(q)
    return float(log_q)


def _require_range(L: float, what: str = "q"):
    if L < LOG_Q_MIN * (1 - _REL):
        raise DomainError(f"{what} = e^{L:.6g} is below 10^30")


def sigma_range(L: float, upper: str = "loglog") -> tuple[float, float]:
    """Admissible sigma interval: [1/2 + 1/LL, 1 - 1/LL] (or 1 - 1/sqrt(LL))."""
    LL = math.log(L)
    hi = 1 - 1 / LL if upper == "loglog" else 1 - 1 / math.sqrt(LL)
    return 0.5 + 1 / LL, hi


def _require_sigma(sigma: float, L: float, upper: str = "loglog"):
    lo, hi = sigma_range(L, upper)
    if not (lo * (1 - _REL) <= sigma <= hi * (1 + _REL)):
        raise DomainError(f"sigma={sigma} outside the admissible range [{lo:.6f}, {hi:.6f}] for log q = {L:.6g}")


def _xy(sigma: float, lam: float, L: float) -> tuple[float, float]:
    y = math.exp(lam / (sigma - 0.5))
    return L * L / y, y


def _require_xy(sigma: float, lam: float, L: float):
    x, y = _xy(sigma, lam, L)
    if x < X_MIN * (1 - _REL):
        raise DomainError(f"x = {x:.6g} < 60 (sigma={sigma}, lambda={lam}, log q={L:.6g})")
    if y < 2:
        raise DomainError(f"y = {y:.6g} < 2 (sigma={sigma}, lambda={lam})")
    return x, y


# --------------------------------------------------------------------------
# building blocks


def B_sigma_lambda(sigma: float, lam: float) -> float:
    """(2s-1)(1 - exp(-2 lam (1-s)/(2s-1))) / (2 lam (1-s)^2); 0 at s = 1/2."""
    if lam <= 0:
        raise DomainError("lambda must be positive")
    if sigma == 0.5:
        return 0.0
    if not 0.5 < sigma < 1:
        raise DomainError(f"sigma={sigma} outside (1/2, 1)")
    d = 2 * sigma - 1
    return d * -math.expm1(-2 * lam * (1 - sigma) / d) / (2 * lam * (1 - sigma) ** 2)


def A_sigma(sigma: float) -> float:
    if not 0.5 < sigma < 1:
        raise DomainError(f"sigma={sigma} outside (1/2, 1)")
    d = 2 * sigma - 1
    return 2 * d * -math.expm1(-3 * (1 - sigma) / (2 * d)) / (3 * (1 - sigma) ** 2) + C_A_SIGMA


def _divergence_flags(sigma: float) -> list[str]:
    return ["diverges as sigma -> 1"] if 1 - sigma < 1e-3 else []


def trivial_zero_sum_constant() -> float:
    """sum_{n >= 0} (2n + 1/2)^-2 = psi'(1/4)/4."""
    from scipy.special import polygamma

    return float(polygamma(1, 0.25)) / 4


def tail_bound(sigma: float, lam: float, q=None, *, log_q=None) -> float:
    """Bound for the trivial-zero sum of the moment formula."""
    L = _resolve(q, log_q)
    if not 0.5 < sigma <= 1:
        raise DomainError(f"sigma={sigma} outside (1/2, 1]")
    if lam <= 0:
        raise DomainError("lambda must be positive")
    y = math.exp(lam / (sigma - 0.5))
    return C_TRIVIAL * (sigma - 0.5) * (y**sigma + 1) / (lam * L ** (2 * sigma))


# --------------------------------------------------------------------------
# sums over primes


def prime_sum_bound_sigma1(lam: float, q=None, *, log_q=None) -> BoundReport:
    L = _resolve(q, log_q)
    _require_xy(1.0, lam, L)
    LL = math.log(L)
    e = math.exp(lam)
    terms = [
        Term("2 log log q", "prime-sum sigma=1: main", 2 * LL),
        Term("-gamma", "prime-sum sigma=1: Mertens constant", -EULER_GAMMA),
        Term("-lambda", "prime-sum sigma=1: log y / 2 shift", -lam),
        Term("(e^l-1)(2l+1)/(2 pi l) (LL)^2/L", "prime-sum sigma=1: psi(x)-x integral",
             (e - 1) * (2 * lam + 1) / (2 * math.pi * lam) * LL * LL / L),
        Term("0.24 e^l / L", "prime-sum sigma=1: first-lemma remainder", 0.24 * e / L),
    ]
    return BoundReport("prime_sum_bound_sigma1", {"lambda": lam, "log_q": L}, terms,
                       validity_note="requires x = e^(-2 lambda) log^2 q >= 60 and y >= 2")


def prime_sum_bound(sigma: float, lam: float, q=None, *, log_q=None) -> BoundReport:
    L = _resolve(q, log_q)
    _require_sigma(sigma, L)
    _require_xy(sigma, lam, L)
    LL = math.log(L)
    d = 2 * sigma - 1
    terms = [
        Term("B(s,l) L^(2-2s)", "prime-sum: main", B_sigma_lambda(sigma, lam) * L ** (2 - 2 * sigma)),
        Term("-s 2^(1-s)/(1-s)", "prime-sum: lower endpoint", -sigma * 2 ** (1 - sigma) / (1 - sigma)),
        Term("s LL^2/(2^(s-1/2) pi (2s-1))", "prime-sum: psi(x)-x below x",
             sigma * LL * LL / (2 ** (sigma - 0.5) * math.pi * d)),
        Term("(2s/(2s-1) + 1/l)((e^l-1)/2pi) LL^2 L^(1-2s)", "prime-sum: psi(x)-x above x",
             (2 * sigma / d + 1 / lam) * (math.exp(lam) - 1) / (2 * math.pi) * LL * LL * L ** (1 - 2 * sigma)),
    ]
    return BoundReport("prime_sum_bound", {"sigma": sigma, "lambda": lam, "log_q": L}, terms,
                       validity_note="theorem range q >= 10^30, 1/2 + 1/LL <= sigma <= 1 - 1/LL")


# --------------------------------------------------------------------------
# sums over zeros


def zero_sum_bound_sigma1(q=None, *, log_q=None) -> BoundReport:
    """Bound for sum_gamma (1/2)/(1/4 + gamma^2), before and after rounding."""
    L = _resolve(q, log_q)
    _require_range(L)
    LL = math.log(L)
    lqpi = L - math.log(math.pi)
    intermediate = (0.5 + 2 / (L - 2)) * lqpi + 2 * (1 - 2 / L) ** -2 * LL
    terms = [
        Term("(1/2) log(q/pi)", "zero-sum sigma=1: conductor", 0.5 * lqpi),
        Term("2.6 log log q", "zero-sum sigma=1: rounded remainder", C_ZERO_SUM_1 * LL),
    ]
    r = BoundReport("zero_sum_bound_sigma1", {"log_q": L}, terms, validity_note="q >= 10^30")
    r.extras = {"intermediate": intermediate, "margin": r.total - intermediate,
                "choice_z": L * L / 4}
    return r


def zero_sum_bound(sigma: float, q=None, *, log_q=None) -> BoundReport:
    """Bound for sum_gamma a/(a^2 + gamma^2), a = sigma - 1/2."""
    L = _resolve(q, log_q)
    _require_range(L)
    _require_sigma(sigma, L)
    a = sigma - 0.5
    LL = math.log(L)
    p = L ** (2 - 2 * sigma)
    beta_q = 1 + L**-2
    raw = L / 2 + ALPHA * p + (2 * a / (0.25 - a * a)) * p * beta_q * ALPHA**2
    ab = ALPHA * ALPHA * BETA
    intermediate = L / 2 + ALPHA * (1 + 2 * ALPHA * BETA - (sigma + ALPHA * BETA / sigma)) / (1 - sigma) * p
    terms = [
        Term("L/2", "zero-sum: conductor", L / 2),
        Term("1.338/(1-s) L^(2-2s)", "zero-sum: majorant remainder", C_ALPHA2BETA / (1 - sigma) * p),
    ]
    r = BoundReport("zero_sum_bound", {"sigma": sigma, "log_q": L}, terms, flags=_divergence_flags(sigma),
                    validity_note="q >= 10^30, pi Delta = log log q")
    r.extras = {"raw": raw, "intermediate": intermediate, "alpha2beta": ab, "pi_delta": LL}
    return r


# --------------------------------------------------------------------------
# the theorems


def lambda_constant(lam: float) -> float:
    """-gamma - lambda + (e^lambda + 1)/(2 lambda)."""
    return -EULER_GAMMA - lam + (math.exp(lam) + 1) / (2 * lam)


@dataclass(frozen=True)
class LambdaCoefficients:
    """Coefficients of the sigma = 1 bound as functions of lambda."""

    lam: float

    @property
    def constant(self) -> float:
        return lambda_constant(self.lam)

    @property
    def main(self) -> float:
        e = math.exp(self.lam)
        return (e - 1) * (2 * self.lam + 1) / (2 * math.pi * self.lam)

    @property
    def zero_ll(self) -> float:
        return C_ZERO_SUM_1 * (math.exp(self.lam) + 1) / self.lam

    @property
    def log_pi(self) -> float:
        e = math.exp(self.lam)
        return (e + 1) * math.log(math.pi) / (2 * self.lam) - 0.24 * e

    @property
    def trivial(self) -> float:
        return C_TRIVIAL / 2 * (math.exp(2 * self.lam) + 1) / self.lam

    @property
    def zeta_ll(self) -> float:
        return 2 * (math.exp(self.lam) + 1) / self.lam

    @property
    def zeta_l(self) -> float:
        return 0.24 * math.exp(self.lam)


def thm11_bracket(L: float) -> float:
    LL = math.log(L)
    return C_MAIN + C_THM11_LL / LL - C_THM11_LL2 / LL**2 + C_THM11_L / (LL**2 * L)


def thm16_bracket(L: float) -> float:
    LL = math.log(L)
    return C_MAIN + C_THM16_LL / LL + C_THM16_LL2 / LL**2


def thm11_bound(q=None, *, log_q=None, lam: float = LAMBDA_THM11) -> BoundReport:
    """|L'/L(1, chi)| bound; the report total is the stated (simplified) form."""
    L = _resolve(q, log_q)
    _require_range(L)
    _require_xy(1.0, lam, L)
    LL = math.log(L)
    r = LL * LL / L
    c = LambdaCoefficients(lam)
    assembled = [
        Term("2 log log q", "sigma=1: prime-sum main", 2 * LL),
        Term("-gamma - l + (e^l+1)/(2l)", "sigma=1: constant", c.constant),
        Term("c1 LL^2/L", "sigma=1: prime-sum remainder", c.main * r),
        Term("2.6(e^l+1)/l LL/L", "sigma=1: zero-sum", c.zero_ll * LL / L),
        Term("-((e^l+1)log pi/(2l) - 0.24e^l)/L", "sigma=1: conductor and lemma remainder", -c.log_pi / L),
        Term("2.15(e^2l+1)/l / L^2", "sigma=1: trivial zeros", c.trivial / L**2),
    ]
    full = 2 * LL - C_CONST + thm11_bracket(L) * r
    terms = [
        Term("2 log log q", "theorem sigma=1: main", 2 * LL),
        Term("-0.4989", "theorem sigma=1: optimised constant", -C_CONST),
        Term("5.91 LL^2/L", "theorem sigma=1: remainder", C_THM11_SIMPLE * r),
    ]
    rep = BoundReport("thm11", {"log_q": L, "lambda": lam}, terms, validity_note="GRH, primitive chi, q >= 10^30")
    assembled_total = math.fsum(t.value for t in assembled)
    rep.extras = {
        "assembled": assembled_total,
        "assembled_terms": [asdict(t) for t in assembled],
        "full": full,
        "bracket": thm11_bracket(L),
        "full_le_simplified": full <= rep.total,
        "assembled_le_full": assembled_total <= full,
    }
    return rep


def thm16_bound(t=None, *, log_t=None, lam: float = LAMBDA_THM11) -> BoundReport:
    """|zeta'/zeta(1 + it)| bound."""
    L = _resolve(t, log_t)
    _require_range(L, "t")
    LL = math.log(L)
    r = LL * LL / L
    c = LambdaCoefficients(lam)
    x, y = L * L / math.exp(2 * lam), math.exp(2 * lam)
    logy = 2 * lam
    trivial = (x**-3 + (x * y) ** -3) / (1 - x**-2) / 9 / logy + 2 * math.exp(-2 * L) / logy
    assembled = [
        Term("2 log log t", "zeta: prime-sum main", 2 * LL),
        Term("-gamma - l + (e^l+1)/(2l)", "zeta: constant", c.constant),
        Term("c1 LL^2/L", "zeta: prime-sum remainder", c.main * r),
        Term("0.24 e^l / L", "zeta: first-lemma remainder", c.zeta_l / L),
        Term("2(e^l+1)/l LL/L", "zeta: zero-sum", c.zeta_ll * LL / L),
        Term("trivial zeros and pole", "zeta: trivial terms", trivial),
    ]
    full = 2 * LL - C_CONST + thm16_bracket(L) * r
    terms = [
        Term("2 log log t", "theorem zeta: main", 2 * LL),
        Term("-0.4989", "theorem zeta: optimised constant", -C_CONST),
        Term("5.35 LL^2/L", "theorem zeta: remainder", C_THM16_SIMPLE * r),
    ]
    rep = BoundReport("thm16", {"log_t": L, "lambda": lam}, terms, validity_note="RH, t >= 10^30")
    assembled_total = math.fsum(t_.value for t_ in assembled)
    rep.extras = {
        "assembled": assembled_total,
        "assembled_terms": [asdict(t_) for t_ in assembled],
        "full": full,
        "bracket": thm16_bracket(L),
        "full_le_simplified": full <= rep.total,
        "assembled_le_full": assembled_total <= full,
    }
    return rep


def thm13_full_terms(sigma: float, L: float) -> list[Term]:
    """The itemised bound at lambda = 3/4 before the final rounding."""
    LL = math.log(L)
    d = 2 * sigma - 1
    e34 = math.exp(0.75)
    return [
        Term("A L^(2-2s)", "sigma<1: prime and zero main",
             (B_sigma_lambda(sigma, 0.75) + 2 / 3 * (e34 + 1)) * L ** (2 - 2 * sigma)),
        Term("-s 2^(1-s)/(1-s)", "sigma<1: lower endpoint", -sigma * 2 ** (1 - sigma) / (1 - sigma)),
        Term("s LL^2/(2^(s-1/2) pi (2s-1))", "sigma<1: psi(x)-x below x", sigma * LL * LL / (2 ** (sigma - 0.5) * math.pi * d)),
        Term("(14s-4)(e^.75-1)/(6 pi (2s-1)) LL^2 L^(1-2s)", "sigma<1: psi(x)-x above x",
             (14 * sigma - 4) * (e34 - 1) / (6 * math.pi * d) * LL * LL * L ** (1 - 2 * sigma)),
        Term("4(e^.75+1) 1.338/(3(1-s)) L^(3-4s)", "sigma<1: zero-sum remainder",
             4 * (e34 + 1) * C_ALPHA2BETA / (3 * (1 - sigma)) * L ** (3 - 4 * sigma)),
        Term("8.6(2s-1)(e^(3s/(2(2s-1)))+1)/(3 L^2s)", "sigma<1: trivial zeros",
             8.6 * d * (math.exp(3 * sigma / (2 * d)) + 1) / (3 * L ** (2 * sigma))),
    ]


def thm13_bound(sigma: float, q=None, *, log_q=None) -> BoundReport:
    L = _resolve(q, log_q)
    _require_range(L)
    _require_sigma(sigma, L)
    _require_xy(sigma, LAMBDA_THM13, L)
    LL = math.log(L)
    terms = [
        Term("A_s L^(2-2s)", "theorem sigma<1: main", A_sigma(sigma) * L ** (2 - 2 * sigma)),
        Term("-s 2^(1-s)/(1-s)", "theorem sigma<1: lower endpoint", -sigma * 2 ** (1 - sigma) / (1 - sigma)),
        Term("5.561 L^(3-4s)/(1-s)", "theorem sigma<1: zero-sum remainder", C_THM13_MID * L ** (3 - 4 * sigma) / (1 - sigma)),
        Term("0.306 LL^2/(2s-1)", "theorem sigma<1: prime remainder", C_THM13_LL * LL * LL / (2 * sigma - 1)),
    ]
    rep = BoundReport("thm13", {"sigma": sigma, "log_q": L, "lambda": LAMBDA_THM13}, terms,
                      flags=_divergence_flags(sigma), validity_note="GRH, q >= 10^30, 1/2 + 1/LL <= sigma <= 1 - 1/LL")
    full = thm13_full_terms(sigma, L)
    full_total = math.fsum(t.value for t in full)
    rep.extras = {"full": full_total, "full_terms": [asdict(t) for t in full],
                  "full_le_simplified": full_total <= rep.total}
    return rep


def thm15_coefficient(sigma: float) -> float:
    s = sigma
    num = 2 * (-s * s + 3 * s - 1) ** 2 * (-s * s + s + 1)
    den = s**3 * (1 - s) ** 2 * (2 - s)
    return math.sqrt(num / den)


def section6_main_coeffs(sigma: float) -> tuple[float, float]:
    """(lower, upper) coefficients of log log q (log q)^(2-2s) in the bounds for Re (L'/L)'."""
    if not 0.5 < sigma < 1:
        raise DomainError(f"sigma={sigma} outside (1/2, 1)")
    den = sigma * (1 - sigma)
    return (-2 * sigma**2 + 6 * sigma - 2) / den, (-2 * sigma**2 + 2 * sigma + 2) / den


def averaged_coefficient(sigma: float) -> float:
    """2 sqrt(c_up c_low c_g / (c_up + c_low)) from the mean-value averaging."""
    lower, upper = section6_main_coeffs(sigma)
    c_g = (-sigma**2 + 3 * sigma - 1) / (2 * sigma * (1 - sigma))
    return 2 * math.sqrt(upper * lower * c_g / (upper + lower))


def thm15_main_term(sigma: float, q=None, *, log_q=None) -> float:
    """Main term of the imaginary-part bound; the O-term is not included."""
    L = _resolve(q, log_q)
    _require_sigma(sigma, L, upper="sqrt")
    return thm15_coefficient(sigma) * L ** (2 - 2 * sigma)


def corollary_b_bound(q=None, *, log_q=None) -> float:
    L = _resolve(q, log_q)
    _require_range(L)
    return L + 2 * math.log(L) - C_COROLLARY


def corollary_b_report(q=None, *, log_q=None) -> BoundReport:
    L = _resolve(q, log_q)
    _require_range(L)
    LL = math.log(L)
    terms = [
        Term("log q", "corollary: conductor", L),
        Term("2 log log q", "corollary: log-derivative main", 2 * LL),
        Term("-0.224", "corollary: constant", -C_COROLLARY),
    ]
    rep = BoundReport("cor12", {"log_q": L}, terms, validity_note="GRH, primitive chi, q >= 10^30")
    thm = thm11_bound(log_q=L).total
    # termwise triangle inequality |-log q + log 2pi + gamma| <= log q - log 2pi + gamma
    termwise = thm + L - math.log(2 * math.pi) + EULER_GAMMA
    direct = thm + abs(-(L - math.log(2 * math.pi)) + EULER_GAMMA)
    rep.extras = {"termwise_route": termwise, "termwise_margin": rep.total - termwise,
                  "direct_route": direct, "direct_margin": rep.total - direct,
                  "constant_from_route": termwise - L - 2 * LL}
    return rep


def stated_rhs(kind: str, L: float) -> float:
    """The stated right-hand side as a bare formula in L = log q, with no range check.

    Only for tabulating small moduli next to the formula; below 10^30 the
    value carries no claim.
    """
    if L <= 1:
        raise DomainError(f"need log q > 1, got {L}")
    LL = math.log(L)
    if kind == "thm11":
        return 2 * LL - C_CONST + C_THM11_SIMPLE * LL * LL / L
    if kind == "cor12":
        return L + 2 * LL - C_COROLLARY
    raise DomainError(f"unknown formula {kind!r}")


# --------------------------------------------------------------------------
# thresholds


def threshold_passes(kind: str, L: float) -> bool:
    """Full display <= 2 log log at log-magnitude L."""
    LL = math.log(L)
    bracket = thm11_bracket(L) if kind == "dirichlet" else thm16_bracket(L)
    return -C_CONST + bracket * LL * LL / L <= 0


def threshold_search(kind: str, k_min: int = 30, k_max: int = 400) -> dict:
    """Smallest decade 10^k with the full display below 2 log log for all k' >= k up to k_max."""
    if kind not in ("dirichlet", "zeta"):
        raise DomainError(f"kind must be dirichlet or zeta, got {kind!r}")
    passes = [threshold_passes(kind, k * LOG10) for k in range(k_min, k_max + 1)]
    if not passes[-1]:
        raise NotFoundError(f"{kind}: inequality still fails at 10^{k_max}")
    i = len(passes) - 1
    while i > 0 and passes[i - 1]:
        i -= 1
    k = k_min + i
    if i == 0:
        raise NotFoundError(f"{kind}: inequality already holds at the bottom of the grid 10^{k_min}")
    L_fail = (k - 1) * LOG10
    LL = math.log(L_fail)
    bracket = thm11_bracket if kind == "dirichlet" else thm16_bracket
    return {
        "kind": kind,
        "exponent": k,
        "failing_exponent": k - 1,
        "excess_at_failure": bracket(L_fail) * LL * LL / L_fail,
        "excess_at_threshold": bracket(k * LOG10) * math.log(k * LOG10) ** 2 / (k * LOG10),
        "constant": C_CONST,
        "grid": [k_min, k_max],
    }


# --------------------------------------------------------------------------
# rounded constants


@dataclass(frozen=True)
class ConstantCheck:
    name: str
    computed: float
    displayed: float
    direction: str          # "up": displayed >= computed; "down": displayed <= computed
    route: str

    @property
    def margin(self) -> float:
        return self.displayed - self.computed if self.direction == "up" else self.computed - self.displayed

    @property
    def ok(self) -> bool:
        return 0 <= self.margin <= 2e-3


def bound_constants() -> list[ConstantCheck]:
    """Every rounded constant in the bound assembly, recomputed."""
    c = LambdaCoefficients(LAMBDA_THM11)
    e34 = math.exp(0.75)
    L30 = LOG_Q_MIN
    LL30 = math.log(L30)
    zs = zero_sum_bound_sigma1(log_q=L30)
    sigmas = [0.5 + k / 2000 for k in range(1, 1000)]
    mid = max(s * 2 ** (0.5 - s) / math.pi for s in sigmas + [1.0])
    cor = corollary_b_report(log_q=L30)
    return [
        ConstantCheck("0.4989", -c.constant, C_CONST, "down",
                      "gamma + lambda - (e^lambda+1)/(2 lambda) at lambda = 2.1862"),
        ConstantCheck("3.091", c.main, C_MAIN, "up", "(e^l-1)(2l+1)/(2 pi l)"),
        ConstantCheck("11.776", c.zero_ll, C_THM11_LL, "up", "2.6(e^l+1)/l"),
        ConstantCheck("0.455", c.log_pi, C_THM11_LL2, "down", "(e^l+1) log pi/(2l) - 0.24 e^l, subtracted"),
        ConstantCheck("78.906", c.trivial, C_THM11_L, "up", "2.15(e^2l+1)/l"),
        ConstantCheck("9.06", c.zeta_ll, C_THM16_LL, "up", "2(e^l+1)/l"),
        ConstantCheck("2.137", c.zeta_l, C_THM16_LL2, "up", "0.24 e^l"),
        ConstantCheck("5.91", thm11_bracket(L30), C_THM11_SIMPLE, "up", "bracket of the full display at q = 10^30"),
        ConstantCheck("5.35", thm16_bracket(L30), C_THM16_SIMPLE, "up", "bracket of the full display at t = 10^30"),
        ConstantCheck("2.6", (zs.extras["intermediate"] - 0.5 * (L30 - math.log(math.pi))) / LL30, C_ZERO_SUM_1, "up",
                      "(2/(L-2) log(q/pi) + 2(1-2/L)^-2 LL)/LL at q = 10^30"),
        ConstantCheck("1.338", ALPHA * ALPHA * BETA, C_ALPHA2BETA, "up", "alpha^2 beta"),
        ConstantCheck("2.079", 2 / 3 * (e34 + 1), C_A_SIGMA, "up", "(2/3)(e^(3/4)+1)"),
        ConstantCheck("4.3", trivial_zero_sum_constant(), C_TRIVIAL, "up", "psi'(1/4)/4"),
        ConstantCheck("5.561", 4 / 3 * (e34 + 1) * C_ALPHA2BETA, C_THM13_MID, "up", "(4/3)(e^(3/4)+1) 1.338"),
        ConstantCheck("0.306", mid + 10 * (e34 - 1) * math.exp(-2) / (6 * math.pi), C_THM13_LL, "up",
                      "sup s 2^(1/2-s)/pi + 10(e^(3/4)-1) e^-2/(6 pi)"),
        ConstantCheck("0.224", -cor.extras["constant_from_route"], C_COROLLARY, "down",
                      "0.4989 + log 2pi - gamma - 5.91 LL^2/L at q = 10^30"),
    ]
