"""Lyndon-Hochschild-Serre E_2/E_3 data for central elementary abelian
extensions V >-> G ->> W with W elementary abelian, and degree-4 survival.

The transgression of the dual coordinate of the i-th V-basis vector reads
off the quadratic part of the presentation: squares contribute X_a^2 and
commutators contribute X_a X_b.  The page-3 differential on squares is the
Kudo transgression d_3(zeta^2) = Sq^1(d_2(zeta)).  The edge-kernel ideal is
approximated by the d_2 values together with their Sq^1 images, which is
why survival verdicts carry the page-4 qualifier.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .f2poly import (
    F2Poly,
    MembershipCertificate,
    degree_membership,
    monomials_of_degree,
    sq1,
)
from .linalg import Gf2Span, iter_bits
from .pcgroup import PcGroup, Subgroup, derived_subgroup, subgroup


class LhsError(ValueError):
    pass


@dataclass
class LhsData:
    """d2/d3 tables for one central extension, plus the closed ideal data."""

    group: object
    v_subgroup: Subgroup
    v_basis: List[int]            # V basis elements (single pc generators when possible)
    v_labels: List[int]           # 1-based generator index naming each zeta
    w_gens: List[int]             # pc generators mapping to a basis of W
    w_labels: List[int]           # 1-based generator index naming each X
    variables: Tuple[str, ...]
    d2: Dict[int, F2Poly]         # zeta label -> degree-2 polynomial
    d3_raw: Dict[int, F2Poly]     # zeta label -> Sq1(d2) before reduction
    d3: Dict[int, F2Poly]         # zeta label -> Sq1(d2) reduced mod I2 (degree 3)
    ideal_gens: List[F2Poly]      # d2 values
    ideal_closed: List[F2Poly]    # d2 values plus nonzero Sq1 images

    def poly(self, text: str) -> F2Poly:
        from .f2poly import parse_poly

        return parse_poly(text, self.variables)

    def as_dict(self) -> Dict:
        return {
            "V": [self.group.element_str(b) for b in self.v_basis],
            "W": [f"x{l}" for l in self.w_labels],
            "d2": {f"zeta{l}": str(self.d2[l]) for l in self.v_labels},
            "d3": {f"zeta{l}^2": str(self.d3[l]) for l in self.v_labels},
        }


def _degree_slice_span(gens: Sequence[F2Poly], d: int, variables) -> Gf2Span:
    basis = monomials_of_degree(variables, d)
    index = {m: i for i, m in enumerate(basis)}
    span = Gf2Span()
    for g in gens:
        dg = g.degree()
        if g.is_zero() or dg > d:
            continue
        for m in monomials_of_degree(variables, d - dg):
            prod = g * F2Poly(variables, [m])
            vec = 0
            for mm in prod.monomials:
                vec |= 1 << index[mm]
            span.add(vec)
    return span


def _reduce_mod(gens: Sequence[F2Poly], f: F2Poly, d: int) -> F2Poly:
    if f.is_zero():
        return f
    variables = f.vars
    basis = monomials_of_degree(variables, d)
    index = {m: i for i, m in enumerate(basis)}
    span = _degree_slice_span(gens, d, variables)
    vec = 0
    for m in f.monomials:
        vec |= 1 << index[m]
    residue = span.reduce(vec)
    return F2Poly(variables, [basis[i] for i in iter_bits(residue)])


def d2_table(group, v_subgroup: Subgroup) -> LhsData:
    """Transgression table read off the pc presentation.

    Preconditions (checked): V central elementary abelian, G/V elementary
    abelian, and the pc generators outside V map onto a basis of G/V while
    those inside V give a basis of V.
    """
    if not isinstance(group, PcGroup):
        raise LhsError("LHS tables need a pc-presented group")
    if not v_subgroup.is_central:
        raise LhsError("V is not central")
    for v in v_subgroup.elements:
        if group.square(v) != group.identity:
            raise LhsError("V is not elementary abelian")
    in_v = [i for i in range(group.n) if (1 << i) in v_subgroup.elements]
    out_v = [i for i in range(group.n) if (1 << i) not in v_subgroup.elements]
    if (1 << len(in_v)) != v_subgroup.order:
        raise LhsError("V is not spanned by pc generators")
    for i in out_v:
        if group.square(1 << i) not in v_subgroup.elements:
            raise LhsError("G/V is not elementary abelian")
        for j in out_v:
            if i < j and group.comms[i][j] not in v_subgroup.elements:
                raise LhsError("G/V is not abelian")
    v_index = {g: k for k, g in enumerate(in_v)}

    def v_coords(elem: int) -> int:
        mask = 0
        for b in iter_bits(elem):
            if b not in v_index:
                raise LhsError("relation value escapes V")
            mask |= 1 << v_index[b]
        return mask

    variables = tuple(f"X{i + 1}" for i in out_v)
    var_of = {i: k for k, i in enumerate(out_v)}

    def mono(*pairs) -> F2Poly:
        m = [0] * len(variables)
        for i, e in pairs:
            m[var_of[i]] += e
        return F2Poly(variables, [tuple(m)])

    d2: Dict[int, F2Poly] = {}
    for k, vb in enumerate(in_v):
        label = vb + 1
        acc = F2Poly.zero(variables)
        for a in out_v:
            if v_coords(group.powers[a]) >> k & 1:
                acc = acc + mono((a, 2))
        for ai in range(len(out_v)):
            for bi in range(ai + 1, len(out_v)):
                a, b = out_v[ai], out_v[bi]
                if v_coords(group.comms[a][b]) >> k & 1:
                    acc = acc + mono((a, 1), (b, 1))
        d2[label] = acc
    ideal_gens = [d2[vb + 1] for vb in in_v]
    d3_raw = {vb + 1: sq1(d2[vb + 1]) for vb in in_v}
    d3 = {
        label: _reduce_mod(ideal_gens, val, 3) for label, val in d3_raw.items()
    }
    closed = list(ideal_gens) + [p for p in d3_raw.values() if not p.is_zero()]
    return LhsData(
        group=group,
        v_subgroup=v_subgroup,
        v_basis=[1 << i for i in in_v],
        v_labels=[i + 1 for i in in_v],
        w_gens=[1 << i for i in out_v],
        w_labels=[i + 1 for i in out_v],
        variables=variables,
        d2=d2,
        d3_raw=d3_raw,
        d3=d3,
        ideal_gens=ideal_gens,
        ideal_closed=closed,
    )


def d3_table(data: LhsData) -> Dict[int, F2Poly]:
    """Kudo transgression values reduced modulo the degree-3 part of I2."""
    return dict(data.d3)


def frattini_subgroup(group) -> Subgroup:
    """<squares and commutators>; the quotient is the largest elementary
    abelian one."""
    gens = [group.square(g) for g in group.generators]
    der = derived_subgroup(group)
    gens.extend(der.gens)
    return subgroup(group, gens, normal_closure=True)


def lhs_data_for(group: PcGroup) -> LhsData:
    """LHS data over the Frattini subgroup (checked to be central)."""
    return d2_table(group, frattini_subgroup(group))


@dataclass
class SurvivalVerdict:
    poly: F2Poly
    verdict: str  # "survives_page4" | "dies" | "undecided"
    certificate: Optional[MembershipCertificate]

    def as_dict(self) -> Dict:
        out = {"class": str(self.poly), "verdict": self.verdict}
        if self.certificate is not None:
            out["certificate"] = self.certificate.as_dict()
        return out


def survives_deg4(data: LhsData, f: F2Poly) -> SurvivalVerdict:
    """Page-4 survival of a degree-4 class of the base of the fibration.

    "dies" carries a verified membership certificate in the ideal generated
    by the d2 values and their Kudo images; "survives_page4" means the
    class is nonzero through the page-3 approximation of the edge kernel.
    """
    if f.is_zero():
        cert = degree_membership(f, data.ideal_closed, 4)
        return SurvivalVerdict(f, "dies", cert)
    if not f.is_homogeneous() or f.degree() != 4:
        raise LhsError("survival is defined for homogeneous degree-4 classes")
    cert = degree_membership(f, data.ideal_closed, 4)
    if cert.member:
        return SurvivalVerdict(f, "dies", cert)
    return SurvivalVerdict(f, "survives_page4", cert)


def dead_quartic_subspace(data: LhsData) -> Tuple[List[int], List[F2Poly]]:
    """Vectors c with sum c_a X_a^4 in the closed ideal (degree 4).

    Returns (masks over W-variable indices, the corresponding polynomials).
    """
    nvars = len(data.variables)
    dead_polys = []
    span = _degree_slice_span(data.ideal_closed, 4, data.variables)
    basis = monomials_of_degree(data.variables, 4)
    index = {m: i for i, m in enumerate(basis)}
    quartic_vecs = []
    for a in range(nvars):
        m = [0] * nvars
        m[a] = 4
        quartic_vecs.append(1 << index[tuple(m)])
    residues = [span.reduce(v) for v in quartic_vecs]
    dead_masks = _quartic_kernel(residues)
    for mask in dead_masks:
        acc = F2Poly.zero(data.variables)
        for a in iter_bits(mask):
            m = [0] * nvars
            m[a] = 4
            acc = acc + F2Poly(data.variables, [tuple(m)])
        dead_polys.append(acc)
    return dead_masks, dead_polys


def _quartic_kernel(residues: List[int]) -> List[int]:
    """Kernel of c -> XOR of residues over set bits of c."""
    rows = []
    nbits = max((r.bit_length() for r in residues), default=0)
    for bit in range(nbits):
        row = 0
        for a, r in enumerate(residues):
            if r >> bit & 1:
                row |= 1 << a
        rows.append(row)
    from .linalg import gf2_kernel

    return sorted(gf2_kernel(rows, len(residues)))


@dataclass
class TowerClassRep:
    theta: F2Poly
    sigma_component: Dict[str, int]
    complement: List[str]

    def as_dict(self) -> Dict:
        return {
            "theta": str(self.theta),
            "complement": self.complement,
        }


def extension_class_rep(ext, base_data: Optional[LhsData] = None) -> TowerClassRep:
    """Quadratic representative of the class of sigma >-> G~ ->> G.

    The cover's Frattini subgroup V~ must be central elementary abelian and
    contain sigma; a complement of sigma in V~ is chosen deterministically
    (kernel of the first nonzero coordinate of t in the greedy V~ basis),
    and theta picks up X_a X_b for each commutator and X_a^2 for each
    square whose sigma-component is nonzero.  Variables are expressed
    through the images of the cover's generators in the base.
    """
    cover = ext.cover_group
    if not isinstance(cover, PcGroup):
        raise LhsError("extension class needs a pc-presented cover")
    t = ext.t
    frat = frattini_subgroup(cover)
    vt = subgroup(cover, list(frat.gens) + [t])
    if not vt.is_central:
        raise LhsError("V~ = <Frattini, sigma> is not central")
    for v in vt.elements:
        if cover.square(v) != cover.identity:
            raise LhsError("V~ is not elementary abelian")
    # greedy basis of V~ preferring single pc generators, ascending
    basis: List[int] = []
    coord: Dict[int, int] = {cover.identity: 0}
    candidates = [g for g in cover.generators if g in vt.elements]
    candidates += [g for g in vt.sorted_elements() if g not in candidates]
    for g in candidates:
        if g in coord:
            continue
        for elem, mask in list(coord.items()):
            coord[cover.mult(elem, g)] = mask | (1 << len(basis))
        basis.append(g)
    if len(coord) != vt.order:
        raise LhsError("failed to coordinatize the cover Frattini subgroup")
    tmask = coord[t]
    if tmask == 0:
        raise LhsError("sigma is trivial in the cover Frattini subgroup")
    # complement = kernel of the coordinate of the last basis vector in the
    # support of t, so early generators stay inside the complement
    pivot = tmask.bit_length() - 1

    def sigma_comp(elem: int) -> int:
        return coord[elem] >> pivot & 1

    complement = [cover.element_str(b) for k, b in enumerate(basis) if k != pivot]
    # W-variables of the base: classes of the images of the cover generators
    alpha = ext.alpha
    base = ext.quotient
    base_lhs = base_data
    if base_lhs is None:
        if isinstance(base, PcGroup):
            base_lhs = lhs_data_for(base)
        else:
            raise LhsError("pass base_data for a non-pc base group")
    variables = base_lhs.variables
    w_index = {g: k for k, g in enumerate(base_lhs.w_gens)}
    frat_base = frattini_subgroup(base_lhs.group)
    wcoord: Dict[int, int] = {}
    for d in frat_base.elements:
        wcoord[d] = 0
    for k, g in enumerate(base_lhs.w_gens):
        for elem, mask in list(wcoord.items()):
            wcoord[base_lhs.group.mult(elem, g)] = mask | (1 << k)

    def linear_form(elem_of_base: int) -> F2Poly:
        mask = wcoord[elem_of_base]
        acc = F2Poly.zero(variables)
        for k in iter_bits(mask):
            acc = acc + F2Poly.var(variables, variables[k])
        return acc

    out_gens = [1 << i for i in range(cover.n) if (1 << i) not in vt.elements]
    theta = F2Poly.zero(variables)
    comps: Dict[str, int] = {}
    for a in out_gens:
        c = sigma_comp(cover.square(a))
        comps[f"{cover.element_str(a)}^2"] = c
        if c:
            la = linear_form(alpha(a))
            theta = theta + la * la
    for ai in range(len(out_gens)):
        for bi in range(ai + 1, len(out_gens)):
            a, b = out_gens[ai], out_gens[bi]
            c = sigma_comp(cover.comm(a, b))
            comps[f"[{cover.element_str(a)},{cover.element_str(b)}]"] = c
            if c:
                theta = theta + linear_form(alpha(a)) * linear_form(alpha(b))
    return TowerClassRep(theta=theta, sigma_component=comps, complement=complement)
