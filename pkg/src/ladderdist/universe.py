"""Cuspidal towers, their partner involutions, and the gamma-bit calculus.

A *tower* is a symbolic supercuspidal with a unitary anchor.  Every exponent
elsewhere in the package is a rational measured relative to that anchor, so a
cuspidal line is just a tower together with an offset in ``[0, 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Union

from .errors import UniverseError

Rational = Union[int, Fraction, str]

TRANSFORMS = ("tau", "dual", "chi", "gd")


def as_fraction(x: Rational) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(x)


@dataclass(frozen=True)
class Tower:
    """One declared (or synthesized) cuspidal tower.

    Partners are stored as ids and resolved through the owning universe.
    Equality and hashing use the id only.
    """

    id: str
    degree: int = field(compare=False)
    tau_id: str = field(compare=False)
    dual_id: str = field(compare=False)
    chi_id: str = field(compare=False)
    base_gamma: Optional[int] = field(compare=False, default=None)
    synthesized: bool = field(compare=False, default=False)
    universe: "Universe" = field(compare=False, repr=False, default=None)

    @property
    def tau(self) -> "Tower":
        return self.universe[self.tau_id]

    @property
    def dual(self) -> "Tower":
        return self.universe[self.dual_id]

    @property
    def chi(self) -> "Tower":
        return self.universe[self.chi_id]

    @property
    def gd(self) -> "Tower":
        """Galois conjugate of the contragredient."""
        return self.tau.dual

    @property
    def self_gd(self) -> bool:
        return self.gd.id == self.id

    def partner(self, which: str) -> "Tower":
        if which not in TRANSFORMS:
            raise ValueError(f"unknown tower transform {which!r}")
        return getattr(self, which)

    def __str__(self) -> str:
        return self.id


@dataclass(frozen=True)
class Line:
    """The integer nu-orbit of ``nu^offset`` times the anchor of ``tower``."""

    tower: Tower
    offset: Fraction

    def __post_init__(self):
        object.__setattr__(self, "offset", as_fraction(self.offset) % 1)

    @property
    def self_gd(self) -> bool:
        return self.tower.self_gd and (-self.offset) % 1 == self.offset

    @property
    def gamma(self) -> Optional[int]:
        """The gamma bit, or ``None`` where it is undefined."""
        return gamma_of_line(self)

    def transform(self, which: str, shift: Rational = 0) -> "Line":
        return line_transform(self, which, shift)

    def sort_key(self):
        return (self.tower.id, self.offset)

    def __str__(self) -> str:
        if self.offset == 0:
            return f"[{self.tower.id}]"
        return f"[nu^{self.offset} {self.tower.id}]"


def gamma_of_line(line: Line) -> Optional[int]:
    if not line.self_gd:
        return None
    g = line.tower.base_gamma
    if line.offset == 0:
        return g
    # offset 1/2: half shift flips the bit
    return 1 - g


def line_transform(line: Line, which: str, shift: Rational = 0) -> Line:
    """Apply ``tau``, ``dual``, ``chi``, ``gd`` or ``nu_shift`` (by ``shift``)."""
    t = line.tower
    if which == "tau":
        return Line(t.tau, line.offset)
    if which == "chi":
        return Line(t.chi, line.offset)
    if which == "dual":
        return Line(t.dual, -line.offset)
    if which == "gd":
        return Line(t.gd, -line.offset)
    if which == "nu_shift":
        return Line(t, line.offset + as_fraction(shift))
    raise ValueError(f"unknown line transform {which!r}")


@dataclass
class TowerDecl:
    """A tower declaration as written by a user.

    ``tau``/``dual`` of ``None`` mean *self*; ``chi`` of ``None`` asks the
    builder to synthesize a twisted partner.
    """

    id: str
    degree: int
    tau: Optional[str] = None
    dual: Optional[str] = None
    chi: Optional[str] = None
    gamma: Optional[int] = None


class UniverseBuilder:
    def __init__(self):
        self._decls: dict[str, TowerDecl] = {}

    def declare_tower(self, id: str, degree: int, tau: Optional[str] = None,
                      dual: Optional[str] = None, chi: Optional[str] = None,
                      gamma: Optional[int] = None) -> TowerDecl:
        if not isinstance(degree, int) or degree < 1:
            raise UniverseError(f"tower {id!r}: degree must be >= 1")
        if gamma is not None and gamma not in (0, 1):
            raise UniverseError(f"tower {id!r}: gamma must be 0 or 1")
        if id in self._decls:
            raise UniverseError(f"tower {id!r} declared twice")
        decl = TowerDecl(id, degree, tau, dual, chi, gamma)
        self._decls[id] = decl
        return decl

    def add(self, decl: TowerDecl) -> TowerDecl:
        return self.declare_tower(decl.id, decl.degree, decl.tau, decl.dual, decl.chi, decl.gamma)

    def build(self) -> "Universe":
        decls = self._decls
        tau = {k: (d.tau or k) for k, d in decls.items()}
        dual = {k: (d.dual or k) for k, d in decls.items()}
        for k in decls:
            for name, m in (("tau", tau), ("dual", dual)):
                if m[k] not in decls:
                    raise UniverseError(f"tower {k!r}: dangling {name} partner {m[k]!r}")
            c = decls[k].chi
            if c is not None and c not in decls:
                raise UniverseError(f"tower {k!r}: dangling chi partner {c!r}")

        chi: dict[str, str] = {}
        synth: list[str] = []
        for k, d in decls.items():
            if d.chi is not None:
                chi[k] = d.chi
            else:
                name = f"{k}_chi"
                if name in decls:
                    raise UniverseError(
                        f"tower {k!r}: cannot synthesize chi partner, id {name!r} is taken")
                chi[k] = name
                chi[name] = k
                synth.append(name)
        for name in synth:
            src = chi[name]
            tau[name] = chi[tau[src]]
            dual[name] = chi[dual[src]]

        degree = {k: d.degree for k, d in decls.items()}
        gamma = {k: d.gamma for k, d in decls.items()}
        for name in synth:
            src = chi[name]
            degree[name] = degree[src]
            gamma[name] = None if gamma[src] is None else 1 - gamma[src]

        ids = list(decls) + synth
        for k in ids:
            for name, m in (("tau", tau), ("dual", dual), ("chi", chi)):
                p = m[k]
                if m.get(p) != k:
                    raise UniverseError(
                        f"tower {k!r}: {name} partner {p!r} does not map back (not an involution)")
                if degree[p] != degree[k]:
                    raise UniverseError(f"tower {k!r}: {name} partner {p!r} has a different degree")
            if tau[dual[k]] != dual[tau[k]]:
                raise UniverseError(f"tower {k!r}: tau and dual partners do not commute")
            if chi[tau[k]] != tau[chi[k]] or chi[dual[k]] != dual[chi[k]]:
                raise UniverseError(f"tower {k!r}: chi partner does not commute with tau/dual")
            self_gd = dual[tau[k]] == k
            if self_gd and gamma[k] is None:
                raise UniverseError(f"tower {k!r} is self Galois-dual and needs a gamma bit")
            if not self_gd and gamma[k] is not None:
                raise UniverseError(f"tower {k!r} is not self Galois-dual; gamma is not allowed")
        for k in ids:
            if gamma[k] is not None and gamma[chi[k]] == gamma[k]:
                raise UniverseError(
                    f"tower {k!r} and its chi partner {chi[k]!r} must carry opposite gamma bits")

        u = Universe()
        for k in ids:
            u._towers[k] = Tower(k, degree[k], tau[k], dual[k], chi[k], gamma[k],
                                 synthesized=k in synth, universe=u)
        return u


class Universe:
    """Immutable collection of towers, closed under tau, dual and chi."""

    def __init__(self):
        self._towers: dict[str, Tower] = {}

    def __getitem__(self, id: str) -> Tower:
        try:
            return self._towers[id]
        except KeyError:
            raise KeyError(f"unknown tower {id!r}") from None

    def __contains__(self, id) -> bool:
        return id in self._towers

    def __iter__(self) -> Iterator[Tower]:
        return iter(self._towers.values())

    def __len__(self) -> int:
        return len(self._towers)

    @property
    def declared(self) -> list[Tower]:
        return [t for t in self if not t.synthesized]

    def tower(self, t: Union[str, Tower]) -> Tower:
        if isinstance(t, Tower):
            return self[t.id]
        return self[t]

    def line(self, tower: Union[str, Tower], offset: Rational = 0) -> Line:
        return Line(self.tower(tower), as_fraction(offset))

    def segment(self, tower: Union[str, Tower], a: Rational, b: Rational):
        from .segments import make_segment
        return make_segment(self.tower(tower), a, b)

    def multisegment(self, *triples):
        from .multisegment import Multisegment
        return Multisegment(self.segment(*t) for t in triples)

    def lines(self, offsets: Iterable[Rational] = (0, Fraction(1, 2))) -> list[Line]:
        return [Line(t, as_fraction(o)) for t in self for o in offsets]

    def equivalent(self, other: "Universe") -> bool:
        def sig(u):
            return {t.id: (t.degree, t.tau_id, t.dual_id, t.chi_id, t.base_gamma) for t in u}
        return sig(self) == sig(other)

    def __repr__(self) -> str:
        return f"Universe({', '.join(self._towers)})"


def make_universe(*decls: TowerDecl) -> Universe:
    b = UniverseBuilder()
    for d in decls:
        b.add(d)
    return b.build()
