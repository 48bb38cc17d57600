"""Decide multiplicative recurrence of R(a,b,c,d) and attach certificates.

R(a,b,c,d) (non-empty) is recurrent exactly when a == c and a | lcm(b, d).
Otherwise one of three cases applies, each with an explicit finite coloring
and a multiplicative witness function:

(i)   a != c                                   -> Archimedean coloring
(ii)  a == c, v_p(a) > max(v_p(b), v_p(d)),
      v_p(b) == v_p(d)                         -> p-adic unit coloring
(iii) same but v_p(b) != v_p(d)                -> valuation-parity coloring
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .arith import lcm0, trial_factor, vp_int
from .cliques import ReductionCert, normalize, reduce
from .colorings import Archimedean, ColoringSpec, PAdic, Parity, derive_spec
from .ratio_sets import MoebiusParams, is_empty


class Verdict(enum.Enum):
    EMPTY = "Empty"
    RECURRENT = "Recurrent"
    NON_RECURRENT = "NonRecurrent"


CASE_NAMES = {"i": "ArchimedeanCase", "ii": "PAdicEqualCase", "iii": "PAdicUnequalCase"}


@dataclass(frozen=True)
class Case:
    label: str  # "i", "ii" or "iii"
    p: Optional[int] = None
    k: Optional[int] = None

    @property
    def name(self) -> str:
        return CASE_NAMES[self.label]


@dataclass(frozen=True)
class Classification:
    params: MoebiusParams
    verdict: Verdict
    case: Optional[Case] = None
    coloring: Optional[ColoringSpec] = None
    witness: object = None  # a multfun spec
    chromatic_upper_bound: Optional[int] = None
    reduction: Optional[ReductionCert] = None


def criterion_holds(params: MoebiusParams) -> bool:
    """a == c and a | lcm(b, d) (with lcm(x, 0) = 0)."""
    return params.a == params.c and lcm0(params.b, params.d) % params.a == 0


def bad_prime(a: int, b: int, d: int) -> Optional[int]:
    """Least prime p with v_p(a) > max(v_p(b), v_p(d)), if any."""
    for p, e in trial_factor(a):
        if e > max(vp_int(p, b), vp_int(p, d)):
            return p
    return None


def determine_case(params: MoebiusParams) -> Optional[Case]:
    """Non-recurrent case, or None for empty/recurrent parameters."""
    if is_empty(params) or criterion_holds(params):
        return None
    if params.a != params.c:
        return Case("i")
    a, b, d = params.a, params.b, params.d
    p = bad_prime(a, b, d)
    assert p is not None
    vb, vd = vp_int(p, b), vp_int(p, d)
    if vb == vd:
        return Case("ii", p, vp_int(p, b - d))
    return Case("iii", p, abs(vb - vd))


def chromatic_bound(spec: ColoringSpec) -> int:
    if isinstance(spec, Archimedean):
        return spec.k
    if isinstance(spec, PAdic):
        return spec.p**spec.k * (spec.p - 1)
    if isinstance(spec, Parity):
        return 2
    raise TypeError(spec)


def classify(params: MoebiusParams) -> Classification:
    from .multfun import witness_for

    if is_empty(params):
        return Classification(params, Verdict.EMPTY)
    case = determine_case(params)
    if case is None:
        nz = normalize(params.a, params.b, params.d)
        red = reduce(nz.a, nz.b, nz.d, nz)
        return Classification(params, Verdict.RECURRENT, reduction=red)
    spec = derive_spec(params, case.label, case.p or 0)
    return Classification(
        params,
        Verdict.NON_RECURRENT,
        case=case,
        coloring=spec,
        witness=witness_for(params, case),
        chromatic_upper_bound=chromatic_bound(spec),
    )
