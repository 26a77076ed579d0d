"""K-theoretic invariants of 2-adic group rings of finite 2-groups.

H^1(Wh'(Z2^G)) is computed by the S/C recipe: S = {g : g^2 in [G,G]},
C = <g in S : g conjugate to g^-1, or g in [G,G]>, and the answer is the
elementary abelian quotient S/C.  SK_1(Z2^G) comes from a Schur cover as
stem_part / commuting wedges.  The extension criteria take a central
order-2 subgroup sigma of a cover and test (a) sigma inside the derived
subgroup with its generator not a commutator, (b) the conjugate-to-inverse
lifting condition.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .catalog import Fingerprint, fingerprint
from .linalg import Gf2Span, iter_bits
from .pcgroup import (
    PcError,
    PcGroup,
    QuotientGroup,
    Subgroup,
    conjugacy_classes,
    conjugate_to_inverse_witness,
    derived_subgroup,
    subgroup,
)
from .homology import (
    CoverData,
    commuting_wedges,
    schur_cover,
    subquotient_invariants,
)


@dataclass
class WhPrimeData:
    """H^1(Wh'(Z2^G)) = (Z/2)^rank together with S, C and witnesses."""

    group: object
    s_subgroup: Subgroup
    c_subgroup: Subgroup
    rank: int
    witnesses: List[Tuple[int, int]]  # (g, h) with h^-1 g h = g^-1

    def as_dict(self) -> Dict:
        g = self.group
        return {
            "rank": self.rank,
            "s_order": self.s_subgroup.order,
            "c_order": self.c_subgroup.order,
            "witnesses": [
                [g.element_str(a), g.element_str(h)] for a, h in self.witnesses[:16]
            ],
        }


def h1_wh_prime(group) -> WhPrimeData:
    """Rank r with H^1(Wh'(Z2^G)) isomorphic to (Z/2)^r.

    Fast path for class-<=2 pc groups: conjugating witnesses are solved in
    the GF(2) span of the generator commutators; otherwise orbits.
    """
    der = derived_subgroup(group)
    if isinstance(group, PcGroup) and group.is_fast:
        return _h1_wh_prime_fast(group, der)
    s_elems = frozenset(g for g in group.elements() if group.square(g) in der.elements)
    witnesses: List[Tuple[int, int]] = []
    c_gens = list(der.gens)
    for g in sorted(s_elems, key=group.lexkey):
        if g in der.elements:
            continue
        h = conjugate_to_inverse_witness(group, g)
        if h is not None:
            witnesses.append((g, h))
            c_gens.append(g)
    s_sub = Subgroup(group, sorted(s_elems, key=group.lexkey), s_elems)
    c_sub = subgroup(group, c_gens)
    rank = (s_sub.order // c_sub.order).bit_length() - 1
    return WhPrimeData(group, s_sub, c_sub, rank, witnesses)


def _h1_wh_prime_fast(group: PcGroup, der: Subgroup) -> WhPrimeData:
    dspan = Gf2Span()
    for d in der.elements:
        dspan.add(d)
    s_elems = []
    for g in group.elements():
        if dspan.contains(group.square(g)):
            s_elems.append(g)
    witnesses: List[Tuple[int, int]] = []
    cspan = Gf2Span()  # classes mod derived of the conjugate-to-inverse elements
    c_gens = list(der.gens)
    gens = group.generators
    for g in s_elems:
        if dspan.contains(g):
            continue
        # g ~ g^-1 iff g^-2 = g^2 lies in the span of the [g, x_i]
        span = Gf2Span()
        vecs = [group.comm(g, x) for x in gens]
        for v in vecs:
            span.add(v)
        combo = span.solve(group.square(g))
        if combo is None:
            continue
        h = 0
        for i in iter_bits(combo):
            h = group.mult(h, gens[i])
        witnesses.append((g, h))
        if cspan.add(dspan.reduce(g)):
            c_gens.append(g)
    s_set = frozenset(s_elems)
    s_sub = Subgroup(group, sorted(s_set, key=group.lexkey), s_set)
    c_sub = subgroup(group, c_gens)
    rank = (s_sub.order // c_sub.order).bit_length() - 1
    return WhPrimeData(group, s_sub, c_sub, rank, witnesses)


@dataclass
class SK1Data:
    """SK_1(Z2^G) = stem_part / commuting wedges, with witnesses."""

    group: PcGroup
    cover: CoverData
    wedges: Subgroup
    invariants: Tuple[int, ...]

    @property
    def order(self) -> int:
        n = 1
        for d in self.invariants:
            n *= d
        return n

    def omega_nontrivial(self, stem_element: int) -> bool:
        """True when an element of stem_part maps to a nonzero class of
        SK_1, i.e. lies outside the commuting-wedge subgroup."""
        if stem_element not in self.cover.stem_part.elements:
            raise PcError("element is not in the stem part")
        return stem_element not in self.wedges.elements

    def witnesses(self) -> List[int]:
        """Stem-part elements generating SK_1 (one new generator at a time)."""
        sc = self.cover.cover
        out: List[int] = []
        gens = list(self.wedges.gens)
        span = self.wedges.elements
        for g in self.cover.stem_part.sorted_elements():
            if g in span:
                continue
            out.append(g)
            gens.append(g)
            span = subgroup(sc, gens).elements
            if len(span) == self.cover.stem_part.order:
                break
        return out

    def as_dict(self) -> Dict:
        return {
            "invariants": list(self.invariants),
            "order": self.order,
            "stem_order": self.cover.stem_part.order,
            "wedge_order": self.wedges.order,
            "h2_invariants": list(self.cover.h2_invariants),
        }


def sk1(group: PcGroup, cover: Optional[CoverData] = None) -> SK1Data:
    """Abelian invariants of SK_1 of the 2-adic group ring of G."""
    if cover is None:
        cover = schur_cover(group)
    wedges = commuting_wedges(group, cover)
    invariants = subquotient_invariants(cover.cover, cover.stem_part, wedges)
    return SK1Data(group, cover, wedges, invariants)


@dataclass
class CentralExtensionData:
    """sigma >-> pi~ ->> pi with sigma central of order two."""

    cover_group: object
    sigma: Subgroup
    alpha: object  # GroupHom onto the quotient
    quotient: object
    sigma_in_derived: bool = False
    omega_disjoint: Optional[bool] = None
    lifting_condition: Optional[bool] = None

    @property
    def t(self) -> int:
        for g in self.sigma.elements:
            if g != self.cover_group.identity:
                return g
        raise PcError("sigma is trivial")


def central_extension(cover_group, sigma_word: Sequence[int]) -> CentralExtensionData:
    """Natural quotient extension by the order-2 central subgroup <word>."""
    t = cover_group.element_from_indices(sigma_word) if isinstance(
        cover_group, PcGroup
    ) else sigma_word
    sigma = subgroup(cover_group, [t])
    if sigma.order != 2 or not sigma.is_central:
        raise PcError("sigma must be central of order two")
    q = QuotientGroup(cover_group, sigma)
    der = derived_subgroup(cover_group)
    return CentralExtensionData(
        cover_group=cover_group,
        sigma=sigma,
        alpha=q.projection,
        quotient=q,
        sigma_in_derived=sigma.elements <= der.elements,
    )


def central_extension_from_hom(cover_group, alpha) -> CentralExtensionData:
    """Extension data for an explicit surjection with order-2 central kernel."""
    ker = alpha.kernel()
    if ker.order != 2 or not ker.is_central:
        raise PcError("kernel must be central of order two")
    if not alpha.is_surjective():
        raise PcError("alpha must be surjective")
    der = derived_subgroup(cover_group)
    return CentralExtensionData(
        cover_group=cover_group,
        sigma=ker,
        alpha=alpha,
        quotient=alpha.target,
        sigma_in_derived=ker.elements <= der.elements,
    )


def commutator_values(group) -> frozenset:
    """The set {[g, h] : g, h in G} (not its span)."""
    from .parallel import map_chunks

    if isinstance(group, PcGroup) and group.is_fast:
        # commutators depend only on classes modulo the center
        elems: Sequence[int] = _center_transversal(group)
    else:
        elems = list(group.elements())

    def scan(chunk):
        return {group.comm(g, h) for g in chunk for h in elems}

    out: set = set()
    for part in map_chunks(scan, elems):
        out |= part
    return frozenset(out)


def _center_transversal(group: PcGroup) -> List[int]:
    gens = group.generators
    central_span = Gf2Span()
    reps = []
    seen = set()
    for g in group.elements():
        key = tuple(group.comm(g, x) for x in gens)
        if key not in seen:
            seen.add(key)
            reps.append(g)
    return reps


@dataclass
class CriterionResult:
    holds: bool
    witness: Optional[Dict] = None

    def as_dict(self) -> Dict:
        out = {"holds": self.holds}
        if self.witness:
            out["witness"] = self.witness
        return out


def thm41_check(ext: CentralExtensionData) -> CriterionResult:
    """sigma inside the derived subgroup and its generator not a commutator.

    When this holds, SK_1 of the 2-adic group ring of the quotient is
    nonzero (the map from the cover's SK_1 cannot be surjective).
    """
    g = ext.cover_group
    t = ext.t
    if not ext.sigma_in_derived:
        ext.omega_disjoint = False
        return CriterionResult(False, {"reason": "sigma not inside derived subgroup"})
    pair = find_commutator_pair(g, t)
    if pair is not None:
        ext.omega_disjoint = False
        return CriterionResult(
            False,
            {
                "reason": "sigma generator is a commutator",
                "pair": [g.element_str(pair[0]), g.element_str(pair[1])],
            },
        )
    ext.omega_disjoint = True
    return CriterionResult(True, {"sigma": g.element_str(t)})


def find_commutator_pair(group, t: int) -> Optional[Tuple[int, int]]:
    """A pair (a, b) with [a, b] = t, or None (brute force over pairs)."""
    if isinstance(group, PcGroup) and group.is_fast:
        elems: Sequence[int] = _center_transversal(group)
    else:
        elems = list(group.elements())
    for a in elems:
        for b in elems:
            if group.comm(a, b) == t:
                return (a, b)
    return None


def thm42_check(ext: CentralExtensionData) -> CriterionResult:
    """Every quotient element conjugate to its inverse lifts to one with the
    same property; false comes with the offending element."""
    g = ext.cover_group
    q = ext.quotient
    if not isinstance(q, QuotientGroup):
        raise PcError("lifting check needs the natural quotient form")
    for cls in conjugacy_classes(q):
        h = cls.rep
        if q.inv(h) not in cls.elements:
            continue
        ok = False
        for hl in q.preimages(h):
            if conjugate_to_inverse_witness(g, hl) is not None:
                ok = True
                break
        if not ok:
            ext.lifting_condition = False
            return CriterionResult(
                False, {"counterexample": q.element_str(h)}
            )
    ext.lifting_condition = True
    return CriterionResult(True)


@dataclass
class ExtensionSearchEntry:
    sigma_word: List[int]
    extension: CentralExtensionData
    quotient_fingerprint: Fingerprint
    thm42_holds: bool

    def as_dict(self) -> Dict:
        return {
            "sigma": self.sigma_word,
            "quotient_order": self.extension.quotient.order,
            "quotient_fingerprint": self.quotient_fingerprint.as_dict(),
            "thm42": self.thm42_holds,
        }


def search_central_extensions(group) -> List[ExtensionSearchEntry]:
    """One entry per order-2 central commutator-subgroup element that is not
    itself a commutator; quotients are deduplicated by fingerprint."""
    der = derived_subgroup(group)
    center_elems = [
        g
        for g in group.elements()
        if all(group.comm(g, x) == group.identity for x in group.generators)
    ]
    commutators = commutator_values(group)
    entries: List[ExtensionSearchEntry] = []
    seen_fps = []
    for t in sorted(center_elems, key=group.lexkey):
        if t == group.identity or t not in der.elements:
            continue
        if group.element_order(t) != 2 or t in commutators:
            continue
        sigma = subgroup(group, [t])
        q = QuotientGroup(group, sigma)
        ext = CentralExtensionData(
            cover_group=group,
            sigma=sigma,
            alpha=q.projection,
            quotient=q,
            sigma_in_derived=True,
            omega_disjoint=True,
        )
        fp = fingerprint(q)
        if fp in seen_fps:
            continue
        seen_fps.append(fp)
        t42 = thm42_check(ext)
        entries.append(
            ExtensionSearchEntry(
                sigma_word=[b + 1 for b in iter_bits(t)],
                extension=ext,
                quotient_fingerprint=fp,
                thm42_holds=t42.holds,
            )
        )
    return entries
