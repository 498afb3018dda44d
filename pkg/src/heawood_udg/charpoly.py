"""Exact real-root certification of the degree-79 coordinate polynomial.

The zero-dimensional constraint system behind the construction chain induces
a univariate characteristic polynomial for each coordinate: its roots are the
values that coordinate takes over all complex solutions.  The degree-79
polynomial for the x-coordinate of l4 is hard-coded in the table below;
Sturm sequences over exact rational arithmetic isolate and count its
real roots, which certifies the solver's embeddings independently of the
floating-point path that found them.

Coefficients are stored as decimal strings in one table and parsed at load
time; a checksum plus digit-count guard protects the transcription, which is
the single likeliest source of error in this module.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

from .geom import RealContext


class NotSquarefree(Exception):
    """gcd(p, p') is nonconstant: the polynomial has multiple roots."""


# Coefficient table, constant term first.  Do not reformat: the checksum
# below is over exactly these digits.
_XL4_COEFF_STRINGS = (
    "3348011046054687446588586894387",  # T^0
    "273675328487397647237991825000783",  # T^1
    "10528063279784456967398200502468691",  # T^2
    "255652807673380729611728470237761555",  # T^3
    "4422420653730204080254904433581059629",  # T^4
    "58239553681851019741523172701651095197",  # T^5
    "608930205226991194133708856923335926849",  # T^6
    "5203227805425306398124203036880713293545",  # T^7
    "37109973679879574898320679050599920287450",  # T^8
    "224472408717775611491021156521892619843158",  # T^9
    "1166012291532956694933924468283307736346382",  # T^10
    "5253121604626527413065008160498494678879110",  # T^11
    "20690863770430719393270631202371992513434414",  # T^12
    "71715126275516155874072784490774971066237326",  # T^13
    "219897164806211674807756610736580167553542758",  # T^14
    "599083193386406195758633497190777431543886358",  # T^15
    "1455265549140319863369871581645012065857955441",  # T^16
    "3160933625571584072448347845721693351127774301",  # T^17
    "6152912915312070842952691100801887803370907305",  # T^18
    "10751995223766688842173817330681019107518783545",  # T^19
    "16888459659695355326863471817880692818622047623",  # T^20
    "23863989284324858347511498529857889181323950967",  # T^21
    "30346538554876120431728853077314517314609386819",  # T^22
    "34722813139066795200081139797717329223025992699",  # T^23
    "35716781564909427260214641236767872783162088204",  # T^24
    "32963773017875955980864755706102737727974961688",  # T^25
    "27201188778043412156622512508710379868716241416",  # T^26
    "19954407479150801176386566760213350973570196080",  # T^27
    "12902691890291653798206974719870993995735753540",  # T^28
    "7274584518541872070335933586256322019748139172",  # T^29
    "3550298683130683434462662943215234037891507412",  # T^30
    "1533983381070251025995839971747580678500964852",  # T^31
    "664103288660372783854070699409333594554864741",  # T^32
    "355269696471069385886754716351566237266830009",  # T^33
    "213238754173051016042819729417269617854966165",  # T^34
    "77130998985650655864689962089382720577858101",  # T^35
    "-57662664820854923809493690824194000968797973",  # T^36
    "-146045321267662575006252144965793560225509061",  # T^37
    "-164022007275895644197052849670790737036540873",  # T^38
    "-126213399593210124294769323126921742027688497",  # T^39
    "-67869160289243415287139367956058055810404822",  # T^40
    "-19570606574427556470966233073766236628787234",  # T^41
    "6140751881298455069763046326781936407849238",  # T^42
    "12720991312674958659494390034544200285598942",  # T^43
    "9840137643451726574992603743314811193317886",  # T^44
    "5180867575272248126071836905848828341927070",  # T^45
    "1923952833473734147443634652898764867278198",  # T^46
    "286935408276107233753158822122577885606822",  # T^47
    "-343872926425618669220741202688368202345065",  # T^48
    "-451645674349824891937650532097542435080453",  # T^49
    "-325157218431048323421805399697113970403121",  # T^50
    "-152272756904971138353148344210050406803617",  # T^51
    "-30934416501269415569285918492882277029311",  # T^52
    "21867253654523569285667250014704999794577",  # T^53
    "28955348159492426037443729536713509636773",  # T^54
    "17321709733106215547946139735151891780269",  # T^55
    "4733784662326174469816987234959768253776",  # T^56
    "-1650827959998751884275421145646879272940",  # T^57
    "-2435243231716218466580115477132980137292",  # T^58
    "-1097279690260575519531876572540059803892",  # T^59
    "-60617631026953339799378305296984824656",  # T^60
    "200727376265061817580032667984094835280",  # T^61
    "109385892925207478360122518287948266224",  # T^62
    "14201705397119143149709337683063717104",  # T^63
    "-11463391775661584618715895715025904128",  # T^64
    "-6556557400356413683063078157405200320",  # T^65
    "-898635822877066299154282762314323520",  # T^66
    "477056183905245971917488031692938304",  # T^67
    "254616663098419271111012531383618560",  # T^68
    "31343179682405215504161837658819584",  # T^69
    "-14303114368662112977785429692643328",  # T^70
    "-6892489761595983453459595854256128",  # T^71
    "-763800345871643605733535512788992",  # T^72
    "341989984727973884867396338188288",  # T^73
    "149189048927171391219263917572096",  # T^74
    "11025799477301561380923592949760",  # T^75
    "-8175821639408563679884718899200",  # T^76
    "-2120259444356145889512456192000",  # T^77
    "152135800369825007098920960000",  # T^78
    "82521703002365615643033600000",  # T^79
)

# sha256 over ",".join of the signed decimal strings, plus total digit count.
_XL4_SHA256 = "5f8dcac162215c806eeb69e6e7a928c6ff11960456371529b9c4ccfc86477251"
_XL4_DIGIT_COUNT = 3271
_XL4_DEGREE = 79


@dataclass(frozen=True)
class BigPoly:
    """Univariate polynomial with exact integer coefficients, index 0 = T^0."""

    coefficients: tuple

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coefficients)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        if not coeffs:
            coeffs = (0,)
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading_coefficient(self) -> int:
        return self.coefficients[-1]

    def is_zero(self) -> bool:
        return self.coefficients == (0,)

    def derivative(self) -> "BigPoly":
        if self.degree == 0:
            return BigPoly((0,))
        return BigPoly(tuple(k * c for k, c in enumerate(self.coefficients) if k > 0))


@dataclass(frozen=True)
class IsolatingInterval:
    """Open-below rational interval (lo, hi] containing exactly one real root."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"interval endpoints out of order: {self.lo} >= {self.hi}")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2


def charpoly_xl4() -> BigPoly:
    """The degree-79 polynomial whose real roots are the x_l4 values.

    Verifies the transcription guard (checksum, digit count, degree) on
    every call before returning the parsed polynomial.
    """
    joined = ",".join(_XL4_COEFF_STRINGS)
    digest = hashlib.sha256(joined.encode("ascii")).hexdigest()
    if digest != _XL4_SHA256:
        raise AssertionError("coefficient table corrupted: checksum mismatch")
    digits = sum(len(s.lstrip("-")) for s in _XL4_COEFF_STRINGS)
    if digits != _XL4_DIGIT_COUNT:
        raise AssertionError("coefficient table corrupted: digit count mismatch")
    poly = BigPoly(tuple(int(s) for s in _XL4_COEFF_STRINGS))
    if poly.degree != _XL4_DEGREE:
        raise AssertionError("coefficient table corrupted: wrong degree")
    return poly


def eval_exact(p: BigPoly, t) -> Fraction:
    """Exact Horner evaluation at an integer or rational point."""
    t = Fraction(t)
    acc = Fraction(0)
    for c in reversed(p.coefficients):
        acc = acc * t + c
    return acc


def _sign_at(p: BigPoly, num: int, den: int) -> int:
    """Sign of p(num/den) for den > 0 via homogeneous integer evaluation."""
    acc = 0
    power = 1  # den^k for the homogenized term
    for c in reversed(p.coefficients):
        acc = acc * num + c * power
        power *= den
    return (acc > 0) - (acc < 0)


def sign_at(p: BigPoly, t) -> int:
    t = Fraction(t)
    return _sign_at(p, t.numerator, t.denominator)


def _content(coeffs: Sequence[int]) -> int:
    g = 0
    for c in coeffs:
        g = gcd(g, abs(c))
        if g == 1:
            return 1
    return g or 1


def _primitive(coeffs: Sequence[int]) -> tuple:
    g = _content(coeffs)
    return tuple(c // g for c in coeffs)


@lru_cache(maxsize=8)
def sturm_chain(p: BigPoly) -> tuple:
    """Sturm sequence of ``p`` over the integers.

    Uses pseudo-remainders with explicit sign tracking and primitive-part
    normalization: each element equals the classical rational Sturm chain
    element times a positive constant, so sign variations are unchanged
    while coefficients stay polynomially sized.
    """
    chain = [BigPoly(_primitive(p.coefficients))]
    dp = p.derivative()
    if dp.is_zero():
        return tuple(chain)
    chain.append(BigPoly(_primitive(dp.coefficients)))
    while chain[-1].degree > 0:
        f = chain[-2].coefficients
        g = chain[-1].coefficients
        m = len(g) - 1
        lg = g[-1]
        work = list(f)
        mults = 0
        while len(work) - 1 >= m and any(work):
            shift = len(work) - 1 - m
            lf = work[-1]
            work = [lg * c for c in work]
            mults += 1
            for j, cg in enumerate(g):
                work[shift + j] -= lf * cg
            while len(work) > 1 and work[-1] == 0:
                work.pop()
        if not any(work):
            break  # exact division: gcd is the previous element
        # work == lg^mults * rem(f, g); flip so the element is a positive
        # multiple of -rem(f, g), as Sturm's construction requires
        sign_fix = -1 if (lg > 0 or mults % 2 == 0) else 1
        chain.append(BigPoly(_primitive([sign_fix * c for c in work])))
    return tuple(chain)


def _variations(signs: Iterable[int]) -> int:
    cleaned = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(cleaned, cleaned[1:]) if a * b < 0)


def _variations_at(chain: Sequence[BigPoly], t: Fraction) -> int:
    return _variations(_sign_at(q, t.numerator, t.denominator) for q in chain)


def _variations_at_infinity(chain: Sequence[BigPoly], positive: bool) -> int:
    signs = []
    for q in chain:
        s = 1 if q.leading_coefficient > 0 else -1
        if not positive and q.degree % 2 == 1:
            s = -s
        signs.append(s)
    return _variations(signs)


def gcd_with_derivative(p: BigPoly) -> BigPoly:
    """Primitive gcd(p, p') up to sign (last element of the Sturm chain)."""
    return sturm_chain(p)[-1]


def is_squarefree(p: BigPoly) -> bool:
    return gcd_with_derivative(p).degree == 0


def squarefree_part(p: BigPoly) -> BigPoly:
    """p divided by gcd(p, p'): same roots, all simple."""
    g = gcd_with_derivative(p)
    if g.degree == 0:
        return p
    # exact polynomial division over the rationals, renormalized to ZZ
    num = [Fraction(c) for c in p.coefficients]
    den = g.coefficients
    out = [Fraction(0)] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        q = num[k + len(den) - 1] / den[-1]
        out[k] = q
        for j, cg in enumerate(den):
            num[k + j] -= q * cg
    if any(num):
        raise AssertionError("gcd does not divide the polynomial exactly")
    common = 1
    for f in out:
        common = common * f.denominator // gcd(common, f.denominator)
    ints = [int(f * common) for f in out]
    return BigPoly(_primitive(ints))


def count_real_roots(p: BigPoly, lo=None, hi=None, on_multiple: str = "raise") -> int:
    """Number of distinct real roots of ``p`` in (lo, hi]; bounds of None
    mean the corresponding infinity.

    Requires ``p`` squarefree; with ``on_multiple="reduce"`` multiple roots
    are tolerated and counted once (via the squarefree part).
    """
    if p.is_zero():
        raise ValueError("zero polynomial has no root count")
    if not is_squarefree(p):
        if on_multiple != "reduce":
            raise NotSquarefree(
                f"gcd(p, p') has degree {gcd_with_derivative(p).degree}; "
                "pass on_multiple='reduce' to count distinct roots"
            )
        p = squarefree_part(p)
    chain = sturm_chain(p)
    if lo is not None:
        lo = Fraction(lo)
        if sign_at(p, lo) == 0:
            raise ValueError(f"lower bound {lo} is a root; Sturm counting needs p(lo) != 0")
    if hi is not None:
        hi = Fraction(hi)
        if sign_at(p, hi) == 0:
            raise ValueError(f"upper bound {hi} is a root; Sturm counting needs p(hi) != 0")
    if lo is not None and hi is not None and not lo < hi:
        raise ValueError(f"bounds out of order: {lo} >= {hi}")
    v_lo = _variations_at(chain, lo) if lo is not None else _variations_at_infinity(chain, False)
    v_hi = _variations_at(chain, hi) if hi is not None else _variations_at_infinity(chain, True)
    return v_lo - v_hi


def root_bound(p: BigPoly) -> int:
    """Cauchy bound: every real root lies in (-B, B)."""
    lead = abs(p.leading_coefficient)
    biggest = max(abs(c) for c in p.coefficients[:-1]) if p.degree > 0 else 0
    bound = Fraction(biggest, lead) + 1
    return int(bound) + 1


def isolate_real_roots(p: BigPoly) -> list:
    """Disjoint rational isolating intervals, one per distinct real root,
    sorted ascending.  Bisection on exact Sturm counts."""
    if p.is_zero():
        raise ValueError("cannot isolate roots of the zero polynomial")
    if not is_squarefree(p):
        p = squarefree_part(p)
    chain = sturm_chain(p)
    bound = root_bound(p)
    lo, hi = Fraction(-bound), Fraction(bound)
    # Cauchy bound endpoints are never roots
    total = _variations_at(chain, lo) - _variations_at(chain, hi)
    result: list = []
    stack = [(lo, hi, total)]
    while stack:
        a, b, count = stack.pop()
        if count == 0:
            continue
        if count == 1:
            result.append(IsolatingInterval(a, b))
            continue
        mid = (a + b) / 2
        ratio = Fraction(3, 7)
        while sign_at(p, mid) == 0:
            # dodge a root at the split point; the ratios are all distinct
            # and p has finitely many roots, so this terminates
            mid = a + (b - a) * ratio
            ratio = (ratio + Fraction(1, 2)) / 2
        v_mid = _variations_at(chain, mid)
        v_a = _variations_at(chain, a)
        v_b = _variations_at(chain, b)
        stack.append((a, mid, v_a - v_mid))
        stack.append((mid, b, v_mid - v_b))
    result.sort(key=lambda iv: iv.lo)
    return result


def refine_root(p: BigPoly, interval: IsolatingInterval, digits: int):
    """Bisect with exact sign evaluations until width < 10^-digits; returns
    the midpoint at a matching working precision."""
    lo, hi = interval.lo, interval.hi
    s_lo = sign_at(p, lo)
    s_hi = sign_at(p, hi)
    if s_lo == 0 or s_hi == 0:
        raise ValueError("interval endpoint is an exact root; shrink the interval")
    if s_lo == s_hi:
        raise ValueError("no sign change over the interval; not an isolating interval")
    target = Fraction(1, 10 ** digits)
    while hi - lo >= target:
        mid = (lo + hi) / 2
        s_mid = sign_at(p, mid)
        if s_mid == 0:
            lo = hi = mid
            break
        if s_mid == s_lo:
            lo = mid
        else:
            hi = mid
    ctx = RealContext(max(digits + 5, 15))
    mid = (lo + hi) / 2
    return ctx.mpf(mid.numerator) / ctx.mpf(mid.denominator)
