"""Decision layer: strata of the geometric lemma, matchings, and the classifiers.

Verdicts come in two kinds: ``dist`` (trivial character) and ``eta``.  The
eta kind of ``ms`` is always computed as the trivial kind of ``ms.chi()``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from . import kernel
from .errors import NotALadderError, SegmentError, SoundnessError, UndefinedGammaError
from .multisegment import (
    NOT_LADDER,
    Multisegment,
    Realization,
    derivative_set,
    is_conjugate_selfdual,
    is_generic,
    is_right_ordered,
    ladder_shape,
    proper_ladder_decomposition,
    pure_components,
)
from .segments import ZERO, Segment, classify_segment, jacquet_segment
from .verdict import NO, UNKNOWN, YES, Verdict
from .weyl import CosetInvolution, enumerate_W2

KINDS = ("dist", "eta")
HALF = Fraction(1, 2)
RULES = ("FIRST-DIR", "SEC-DIR", "JAC-MOD", "LADDER-THM", "LADDER-THM-2", "NOBOTH-THM",
         "NOBOTH-LEM", "KNOWN", "PAIRING")


def kind_of_exponent(e: int) -> str:
    """``eta^e``-distinction: e even is the trivial kind."""
    return "dist" if e % 2 == 0 else "eta"


def twist_for(ms: Multisegment, kind: str) -> Multisegment:
    return ms if kind == "dist" else ms.chi()


@dataclass(frozen=True)
class TraceEntry:
    rule: str
    detail: str
    kind: Optional[str] = None

    def to_json(self) -> dict:
        d = {"rule": self.rule, "detail": self.detail}
        if self.kind is not None:
            d["kind"] = self.kind
        return d


@dataclass
class DistinctionReport:
    dist: Verdict
    eta: Verdict
    trace: list[TraceEntry] = field(default_factory=list)
    family: str = "standard"

    def verdict(self, kind: str) -> Verdict:
        return getattr(self, kind)

    def swapped(self) -> "DistinctionReport":
        return DistinctionReport(self.eta, self.dist, list(self.trace), self.family)

    @property
    def rules(self) -> list[str]:
        return [e.rule for e in self.trace]

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "dist": self.dist.value,
            "eta": self.eta.value,
            "trace": [e.to_json() for e in self.trace],
        }


class _Verdicts:
    """Collects rule firings per kind and refuses contradictions."""

    def __init__(self, subject):
        self.subject = subject
        self.v: dict[str, Optional[Verdict]] = {"dist": None, "eta": None}
        self.trace: list[TraceEntry] = []

    def set(self, kind: str, verdict: Verdict, rule: str, detail: str):
        cur = self.v[kind]
        if cur is not None and cur != verdict:
            raise SoundnessError(
                f"{self.subject}: rule {rule} gives {kind}={verdict} but an earlier rule gave {cur}")
        self.v[kind] = verdict
        self.trace.append(TraceEntry(rule, detail, kind))

    def report(self, family: str) -> DistinctionReport:
        return DistinctionReport(self.v["dist"] or UNKNOWN, self.v["eta"] or UNKNOWN,
                                 self.trace, family)


# -- strata ----------------------------------------------------------------

@dataclass
class StratumAnalysis:
    w: CosetInvolution
    jacquet_pieces: list
    matched: bool
    hom_bound: int
    failure_reason: Optional[str] = None

    def to_json(self) -> dict:
        return {
            "w": self.w.to_json(),
            "jacquet_pieces": [None if p is ZERO else segment_json(p) for p in self.jacquet_pieces],
            "matched": self.matched,
            "hom_bound": self.hom_bound,
            "failure_reason": self.failure_reason,
        }


def _segments_of(r) -> tuple[Segment, ...]:
    if isinstance(r, (Realization, Multisegment)):
        return tuple(r.segments)
    return tuple(r)


def stratum_hom_bound(r, w: CosetInvolution) -> StratumAnalysis:
    """Upper bound on invariant functionals of one geometric-lemma stratum.

    Each tensor factor is at most one-dimensional for segments, so the bound
    is 1 exactly when every Jacquet piece is non-zero, paired cells carry
    Galois-contragredient pieces and fixed cells carry distinguished pieces.
    """
    segs = _segments_of(r)
    if tuple(s.degree for s in segs) != w.base:
        raise SegmentError(f"stratum base {w.base} does not match realization degrees "
                           f"{tuple(s.degree for s in segs)}")
    pieces = []
    reason = None
    for seg, parts in zip(segs, w.refinement):
        jm = jacquet_segment(seg, parts)
        if jm is ZERO:
            pieces.extend([ZERO] * len(parts))
            reason = reason or f"Jacquet module of {seg} along {parts} is zero"
        else:
            pieces.extend(jm)
    if reason is None:
        for c, e in enumerate(w.eps):
            p = pieces[c]
            if e == c:
                if classify_segment(p).dist is not YES:
                    reason = f"fixed cell {w.cells[c]} carries non-distinguished {p}"
                    break
            elif e > c and pieces[e] != p.gd():
                reason = (f"cells {w.cells[c]} and {w.cells[e]} carry {p} and {pieces[e]}, "
                          f"which are not Galois-contragredient")
                break
    matched = reason is None
    return StratumAnalysis(w, pieces, matched, int(matched), reason)


def strata(r, prune: bool = False) -> list[StratumAnalysis]:
    """Analysis of every element of ``W_2[M]`` for the realization ``r``."""
    segs = _segments_of(r)
    M = tuple(s.degree for s in segs)
    divs = tuple(s.tower.degree for s in segs) if prune else None
    return [stratum_hom_bound(segs, w) for w in enumerate_W2(M, divs)]


def mult_one_bound(r, backend: str = None) -> int:
    """Sum of stratum bounds: an upper bound on ``dim Hom_H(S, C)``.

    The geometric lemma filtration of any rangee realization bounds the same
    Hom space; the right-ordered canonical realization is used.
    """
    segs = _segments_of(r)
    if not isinstance(r, Multisegment) and not Realization(segs).is_rangee:
        raise SegmentError("mult_one_bound needs a rangee realization")
    canon = Multisegment(segs).segments
    return int(kernel.stratum_bounds(canon, backend=backend).sum())


def mult_one_bound_of_realization(r, backend: str = None) -> int:
    """Sum of stratum bounds for the given ordering itself (no reordering)."""
    segs = _segments_of(r)
    return int(kernel.stratum_bounds(segs, backend=backend).sum())


@dataclass
class KeyLemmaResult:
    passed: bool
    realization: tuple
    witness: Optional[CosetInvolution] = None

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"


def key_lemma_check(r, backend: str = None) -> KeyLemmaResult:
    """Every non-admissible stratum of a right-ordered realization has bound 0."""
    segs = _segments_of(r)
    if not is_right_ordered(segs):
        raise SegmentError("key_lemma_check needs a right-ordered realization")
    table = kernel.table_for(segs)
    bounds = kernel.stratum_bounds(segs, table, backend=backend)
    bad = (bounds == 1) & ~table.admissible
    if bad.any():
        k = int(bad.nonzero()[0][0])
        return KeyLemmaResult(False, segs, table.elements[k])
    return KeyLemmaResult(True, segs)


# -- matchings -------------------------------------------------------------

def _iter_matchings(segs: Sequence[Segment]) -> Iterator[tuple[int, ...]]:
    n = len(segs)
    eps: list[Optional[int]] = [None] * n
    fixable = [s.is_gd_fixed and classify_segment(s).dist is YES for s in segs]
    gds = [s.gd() for s in segs]

    def rec(i):
        while i < n and eps[i] is not None:
            i += 1
        if i == n:
            yield tuple(eps)
            return
        if fixable[i]:
            eps[i] = i
            yield from rec(i + 1)
        for j in range(i + 1, n):
            if eps[j] is None and segs[j] == gds[i]:
                eps[i], eps[j] = j, i
                yield from rec(i + 1)
                eps[j] = None
        eps[i] = None

    yield from rec(0)


def matching_involutions(ms: Multisegment, kind: str = "dist",
                         limit: Optional[int] = None) -> list[tuple[int, ...]]:
    """Involutions ``eps`` on segment indices (canonical order) with
    ``gd(seg_i) = seg_eps(i)`` and distinguished fixed segments.

    For ``kind="eta"`` the indices refer to ``ms.chi()``, which has the same
    canonical order up to the renaming of towers.
    """
    segs = twist_for(ms, kind).segments
    out = []
    for eps in _iter_matchings(segs):
        out.append(eps)
        if limit is not None and len(out) >= limit:
            break
    return out


def has_matching(ms: Multisegment, kind: str = "dist") -> bool:
    """Counting criterion equivalent to ``bool(matching_involutions(ms, kind))``."""
    segs = twist_for(ms, kind).segments
    counts: dict[Segment, int] = {}
    for s in segs:
        counts[s] = counts.get(s, 0) + 1
    for s, c in counts.items():
        g = s.gd()
        if g == s:
            if classify_segment(s).dist is not YES and c % 2:
                return False
        elif counts.get(g, 0) != c:
            return False
    return True


# -- classifiers -------------------------------------------------------------

def _line_gamma(line) -> int:
    g = line.gamma
    if g is None:
        raise UndefinedGammaError(f"gamma undefined on line {line}")
    return g


def classify_standard(ms: Multisegment) -> DistinctionReport:
    """Three-valued verdict for the standard module attached to ``ms``."""
    v = _Verdicts(ms)
    for kind in KINDS:
        if not has_matching(ms, kind):
            v.set(kind, NO, "FIRST-DIR",
                  "no involution pairs each segment with its Galois-contragredient "
                  "while fixing only distinguished segments"
                  + (" (after chi-twist)" if kind == "eta" else ""))

    if ms.is_pure and len(ms) % 2 == 1:
        line = ms.lines[0]
        if line.self_gd:
            g = _line_gamma(line)
            bad = kind_of_exponent(g + 1)
            v.set(bad, NO, "NOBOTH-LEM",
                  f"pure type {line} with gamma {g} and an odd number ({len(ms)}) of segments")

    if is_conjugate_selfdual(ms):
        comps = pure_components(ms)
        support = {"dist": [], "eta": []}
        for line, comp in comps.items():
            if not line.self_gd:
                for kind in KINDS:
                    support[kind].append(("PAIRING",
                                          f"component {line} is paired with "
                                          f"{line.transform('gd')}"))
                continue
            g = _line_gamma(line)
            support[kind_of_exponent(g)].append(
                ("SEC-DIR", f"self-dual component {line} with gamma {g}"))
            if all(s.re_exponent != 0 for s in comp):
                other = kind_of_exponent(g + 1)
                support[other].append(
                    ("SEC-DIR", f"self-dual component {line} has no segment of real exponent 0"))
        for kind in KINDS:
            if len(support[kind]) == len(comps):
                if v.v[kind] is NO:
                    raise SoundnessError(f"{ms}: sufficiency and necessity disagree on {kind}")
                for rule, detail in support[kind]:
                    v.set(kind, YES, rule, detail)
                if len(comps) > 1:
                    v.set(kind, YES, "JAC-MOD", "product of pure components, each distinguished "
                                                f"for the {kind} kind")
    return v.report("standard")


def classify_ladder(ms: Multisegment) -> DistinctionReport:
    """Definite verdict for the ladder representation with standard module ``ms``."""
    shape = ladder_shape(ms)
    if shape is NOT_LADDER:
        raise NotALadderError(f"{ms} is not a ladder")
    v = _Verdicts(ms)
    if not is_conjugate_selfdual(ms):
        for kind in KINDS:
            v.set(kind, NO, "FIRST-DIR",
                  "standard module is not closed under Galois-contragredient, so pi^tau != pi^vee")
        return v.report("ladder")
    parts = proper_ladder_decomposition(shape)
    k, t = len(parts), shape.t
    if k % 2 == 0:
        for kind in KINDS:
            v.set(kind, YES, "LADDER-THM-2", f"even number k={k} of proper ladder factors")
        return v.report("ladder")
    g = _line_gamma(shape.line)
    yes = kind_of_exponent(g + t + 1)
    no = kind_of_exponent(g + t)
    rule = "LADDER-THM" if k == 1 else "LADDER-THM-2"
    v.set(yes, YES, rule, f"k={k} odd, t={t}, gamma={g}: eta^(gamma+t+1) = eta^{(g + t + 1) % 2}")
    v.set(no, NO, "NOBOTH-THM", f"k={k} odd: cannot be both distinguished and eta-distinguished")
    return v.report("ladder")


def classify(ms: Multisegment, mode: str = "auto") -> DistinctionReport:
    if mode == "ladder":
        return classify_ladder(ms)
    if mode == "standard":
        return classify_standard(ms)
    if mode == "segment":
        if len(ms) != 1:
            raise SegmentError("segment mode needs exactly one segment")
        rep = classify_segment(ms[0])
        return DistinctionReport(rep.dist, rep.eta, [TraceEntry(rep.rule, rep.detail)], "segment")
    if mode == "auto":
        if ladder_shape(ms) is not NOT_LADDER and len(ms) > 0:
            return classify_ladder(ms)
        return classify_standard(ms)
    raise ValueError(f"unknown mode {mode!r}")


# -- derivative consistency ----------------------------------------------------

@dataclass
class DerivCheck:
    status: str
    witnesses: dict = field(default_factory=dict)
    detail: str = ""


def deriv_consistency_check(ms: Multisegment) -> DerivCheck:
    """A distinguished non-generic ladder must have a derivative ladder ``sigma``
    with ``nu^(1/2) sigma`` distinguished (checked per kind)."""
    shape = ladder_shape(ms)
    if shape is NOT_LADDER:
        raise NotALadderError(f"{ms} is not a ladder")
    if is_generic(ms):
        return DerivCheck("NOT_APPLICABLE", detail="generic")
    rep = classify_ladder(ms)
    kinds = [k for k in KINDS if rep.verdict(k) is YES]
    if not kinds:
        return DerivCheck("NOT_APPLICABLE", detail="not distinguished for either kind")
    witnesses = {}
    for kind in kinds:
        src = twist_for(ms, kind)
        found = None
        for sigma in derivative_set(src):
            if len(sigma) == 0:
                continue
            if classify_ladder(sigma.shift(HALF)).dist is YES:
                found = sigma
                break
        if found is None:
            return DerivCheck("FAIL", witnesses,
                              f"no derivative of the {kind}-distinguished ladder is distinguished "
                              "after a half shift")
        witnesses[kind] = found
    return DerivCheck("PASS", witnesses)


def segment_json(s: Segment) -> dict:
    return {
        "tower": s.tower.id,
        "a": [s.a.numerator, s.a.denominator],
        "b": [s.b.numerator, s.b.denominator],
    }
