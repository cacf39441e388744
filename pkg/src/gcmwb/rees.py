"""Rees algebra presentations and the relation type.

The defining ideal of the Rees algebra over A = k[x]/I is computed as
(I + (T_j - t*x_j : j)) ∩ k[x, T] by eliminating the auxiliary variable t;
it is homogeneous in the T-grading. Minimal generators over the local base
are then extracted by a Nakayama argument: working in increasing T-degree
(ties broken by the ambient order on leading terms), a candidate is
redundant iff it lies, locally at m, in the ideal spanned by the defining
relations of lower T-degree and the candidates already kept. Local
membership in U is decided by eliminating the T-variables from U : f and
testing that the result is not contained in the maximal ideal.

The relation type is the top T-degree of the minimal generators; an ideal
whose Rees algebra is a polynomial ring (no relations) has relation type 1
by convention.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import EngineError
from .ideals import Ideal, contained_in_max_ideal, eliminate, ideal_quotient
from .localring import LocalRing, ParameterSystem
from .orders import DEGREVLEX, elimination_order
from .poly import Polynomial, PolyRing


@dataclass(frozen=True)
class ReesPresentation:
    ring_id: str
    q: str
    tvariables: tuple[str, ...]
    generators: tuple[str, ...]          # minimal relation generators, printed
    generator_tdegrees: tuple[int, ...]
    relation_type: int

    def as_dict(self) -> dict:
        return {"ring": self.ring_id, "Q": self.q,
                "tvars": list(self.tvariables),
                "generators": list(self.generators),
                "tdegrees": list(self.generator_tdegrees),
                "reltype": self.relation_type}


def _fresh_names(taken, base: str, count: int) -> list[str]:
    names = []
    for i in range(1, count + 1):
        name = f"{base}{i}"
        while name in taken or name in names:
            name += "_"
        names.append(name)
    return names


def rees_presentation(A: LocalRing, Q: ParameterSystem) -> ReesPresentation:
    """Defining ideal of the Rees algebra of the parameter ideal, with its
    minimal generators and relation type."""
    d = len(Q.elements)
    if d == 0:
        raise EngineError("Rees presentation needs at least one generator")
    base = A.ring
    tnames = _fresh_names(base.variables, "T", d)
    aux = "s"
    while aux in base.variables or aux in tnames:
        aux += "_"
    # extended ring: ambient variables, then T's, then the auxiliary
    ext = PolyRing(base.field, base.variables + tuple(tnames) + (aux,))
    nx = base.nvars
    nt = d

    def lift(f: Polynomial) -> Polynomial:
        return Polynomial(ext, {e + (0,) * (nt + 1): c
                                for e, c in f.terms.items()})

    tvars = [ext.var(nm) for nm in tnames]
    tpoly = ext.var(aux)
    gens = [lift(g) for g in A.defining.gens]
    for j, xj in enumerate(Q.elements):
        gens.append(tvars[j] - tpoly * lift(xj))
    big = Ideal(ext, gens)
    no_aux = eliminate(big, {aux})

    # drop the auxiliary coordinate; work in k[x, T]
    xt = PolyRing(base.field, base.variables + tuple(tnames))

    def drop_aux(f: Polynomial) -> Polynomial:
        return Polynomial(xt, {e[:-1]: c for e, c in f.terms.items()})

    def tdeg(f: Polynomial) -> int:
        degs = {sum(e[nx:]) for e in f.terms}
        if len(degs) != 1:
            raise EngineError("Rees ideal generator not T-homogeneous")
        return degs.pop()

    rees_ideal = Ideal(xt, [drop_aux(g) for g in no_aux.gens])
    candidates = [g for g in rees_ideal.groebner() if tdeg(g) >= 1]
    keyf = DEGREVLEX.key(xt.nvars)
    candidates.sort(key=lambda g: (tdeg(g), keyf(g.leading()[0])))

    lifted_I = [Polynomial(xt, {e + (0,) * nt: c for e, c in g.terms.items()})
                for g in A.defining.gens]
    kept: list[Polynomial] = []
    kept_deg: list[int] = []
    tindices = set(range(nx, nx + nt))
    for g in candidates:
        span = Ideal(xt, lifted_I + kept)
        if _locally_member(span, g, tindices):
            continue
        kept.append(g)
        kept_deg.append(tdeg(g))
    reltype = max(kept_deg, default=1)
    return ReesPresentation(str(A.presentation), str(Q), tuple(tnames),
                            tuple(str(g) for g in kept), tuple(kept_deg),
                            reltype)


def _locally_member(U: Ideal, f: Polynomial, tindices) -> bool:
    """f in U localized at the base maximal ideal: the T-free part of U : f
    must contain a unit at the origin."""
    if not U.gens:
        return False
    if U.contains(f):
        return True
    colon = ideal_quotient(U, f)
    base_part = eliminate(colon, tindices)
    return not contained_in_max_ideal(base_part)


def relation_type(A: LocalRing, Q: ParameterSystem) -> int:
    return rees_presentation(A, Q).relation_type
