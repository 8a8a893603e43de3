"""Lift invariants via explicit central extensions, the closed-form
cross-checks, the normalizer action on lift values, Modular-Tower
obstruction and level lifting, and BCL cyclotomic data."""

import math

from .groups import (make_group, central_extension, central_lift,
                     ConsistencyError)
from .nielsen import (NielsenSpec, NielsenTuple, inner_canonical,
                      enumerate_tuples, DEFAULT_BUDGET)
from .braid import BraidOrbit, braid_moves, _orbit_partition
from .nielsen import _class_data  # shared canonicalization cache


def _cover_for(spec, cover=None):
    h = spec.group
    if cover is None:
        if h.family == "affine2":
            cover = "heis2" if h.aut_order == 2 else "k22z3"
        elif h.family == "alternating":
            cover = "an_spin"
        else:
            raise ValueError("no default cover for family %r" % h.family)
    if cover == "an_spin":
        return "an_spin"
    if isinstance(cover, str):
        if h.family != "affine2":
            raise ValueError("extension %r needs an affine2 base" % cover)
        if (cover == "heis2") != (h.aut_order == 2):
            raise ValueError("cover %r incompatible with aut order %d"
                             % (cover, h.aut_order))
        cache = getattr(spec, "_cover_cache", None)
        if cache is None:
            cache = spec._cover_cache = {}
        if cover not in cache:
            cache[cover] = central_extension(cover, h.ell, h.k)
        return cache[cover]
    return cover


def lift_invariant(spec, t, cover=None):
    """Product of the unique same-order lifts, read off the central
    coordinate (additively, as the w-exponent in Z/ell^{k+1}); for
    alternating groups the spin value in Z/2 by the closed formula."""
    cov = _cover_for(spec, cover)
    if cov == "an_spin":
        return an_spin(spec, t)
    p = cov.ext.identity
    for g in t.entries:
        p = cov.ext.mul(p, central_lift(cov, g))
    return cov.central_part(p) * cov.unit % cov.L


def an_spin(spec, t):
    """sum_i omega(g_i) mod 2, omega summing (u^2-1)/8 over cycle
    lengths u (odd-order entries only)."""
    return sum(_omega(g) for g in t.entries) % 2


def _omega(p):
    total = 0
    seen = [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        u, j = 0, i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            u += 1
        if u % 2 == 0:
            raise ValueError("even cycle length %d: spin needs odd orders" % u)
        total += (u * u - 1) // 8
    return total % 2


def serre_formula(a, a2p, a3p, L):
    """Closed-form lift value of the involution tuple with translations
    (0,0), (a,a2'), (a,a3'), (0,a3'-a2')."""
    return a * (a3p - a2p) % L


def di_formula(m2, n2, L):
    """Closed-form lift value of the r=3 double-identity shape with
    conjugating vector (m2, n2): the norm form of Z[zeta_3].  Anisotropic
    unless ell = 1 mod 3, where its isotropic lines are exactly the
    eigenlines of the order-3 action (non-generating triples)."""
    return (m2 * m2 + n2 * n2 - m2 * n2) % L


def serre_tuple(spec, a, a2p, a3p):
    """The involution 4-tuple g_{a_sh, a'} in affine2(ell,k,2)."""
    h = spec.group
    L = h.L
    vecs = [(0, 0), (a % L, a2p % L), (a % L, a3p % L),
            (0, (a3p - a2p) % L)]
    entries = tuple((1, v) for v in vecs)
    t = NielsenTuple(("2",) * 4, entries)
    p = h.identity
    for g in entries:
        p = h.mul(p, g)
    if p != h.identity:
        raise ConsistencyError("serre tuple lost product-one")
    return t


def di_triple(spec, m2, n2):
    """The r=3 tuple (alpha^{-1}, v2-conj, v3-conj) in C_- classes with
    v2 = (m2, n2); v3 = (n2, n2-m2) is forced by product-one."""
    h = spec.group
    L = h.L
    ai = (2, (0, 0))
    out = [ai]
    for v in ((m2 % L, n2 % L), (n2 % L, (n2 - m2) % L)):
        out.append(h.conj(ai, (0, v)))
    p = h.identity
    for g in out:
        p = h.mul(p, g)
    if p != h.identity:
        raise ConsistencyError("DI triple lost product-one")
    return NielsenTuple(("C-",) * 3, tuple(out))


def orbit_lift_invariant(spec, orbit, cover=None):
    """The orbit's lift value; constancy over all members is a hard
    gate."""
    vals = {lift_invariant(spec, t, cover) for t in orbit.members}
    if len(vals) != 1:
        raise ConsistencyError("lift invariant not constant on orbit: %s"
                               % sorted(vals))
    return vals.pop()


def normalizer_action_on_lift(spec, lattice, cover=None):
    """Per absolute orbit, the set S of lift values of the inner orbits
    above it; Schur-separated when the sets are pairwise disjoint."""
    inner_vals = [orbit_lift_invariant(spec.as_inner(), o, cover)
                  for o in lattice.inner_orbits]
    sets = {}
    for j, v in enumerate(inner_vals):
        sets.setdefault(lattice.covering[j], set()).add(v)
    svals = {i: sorted(s) for i, s in sets.items()}
    all_vals = [v for s in svals.values() for v in s]
    separated = len(all_vals) == len(set(all_vals))
    return {"S": svals, "schur_separated": separated,
            "inner_values": inner_vals}


def obstructed(spec, orbit, cover=None):
    return orbit_lift_invariant(spec, orbit, cover) != 0


def level_up(h):
    """The next group of the parametrized family (k -> k+1)."""
    if h.family == "affine2":
        return make_group({"family": "affine2", "ell": h.ell, "k": h.k + 1,
                           "order": h.aut_order})
    if h.family == "dihedral":
        p = min(q for q in range(2, h.m + 1) if h.m % q == 0)
        return make_group({"family": "dihedral", "m": h.m * p})
    raise ValueError("no parametrized tower for family %r" % h.family)


def reduce_elem(child, parent, g):
    if child.family == "affine2":
        c, v = g
        return (c, (v[0] % parent.L, v[1] % parent.L))
    if child.family == "dihedral":
        e, t = g
        return (e, t % parent.m)
    raise ValueError("no reduction for family %r" % child.family)


def tower_lift(spec, orbit, budget=DEFAULT_BUDGET):
    """Braid orbits at level k+1 whose entrywise reductions land in the
    given inner orbit.  Hard gate: each child orbit's lift invariant
    reduces (mod the parent modulus) to the base orbit's value.  Note
    the family towers can be nonempty over orbits with nonzero lift
    invariant: the Schur-multiplier obstruction concerns representation
    covers that these abelian-kernel levels never factor through."""
    h = spec.group
    child = level_up(h)
    child_spec = NielsenSpec(child, spec.labels, "inner", spec.T)
    child_forms = enumerate_tuples(child_spec, budget)
    selected = []
    for t in child_forms:
        entries = tuple(reduce_elem(child, h, g) for g in t.entries)
        labels = tuple(h.class_of(g).label for g in entries)
        base = inner_canonical(spec, NielsenTuple(labels, entries))
        if base in orbit.members:
            selected.append(t)
    can = lambda t: inner_canonical(child_spec, t)
    steps = [lambda t, m=m: can(m(t)) for m in braid_moves(child_spec)]
    out = _orbit_partition(child_spec, selected, steps)
    if h.family == "affine2":
        base_val = orbit_lift_invariant(spec, orbit)
        for o in out:
            v = orbit_lift_invariant(child_spec, o)
            if v % h.L != base_val:
                raise ConsistencyError(
                    "child lift invariant %d does not reduce to %d mod %d"
                    % (v, base_val, h.L))
    return out


def mt_parity(spec, t):
    """sum (o(g_i)^2 - 1)/8 mod 2; the ell=2 abelianized-tower test for
    odd-order tuples."""
    h = spec.group
    total = 0
    for g in t.entries:
        o = h.elem_order(g)
        if o % 2 == 0:
            raise ValueError("even order %d entry" % o)
        total += (o * o - 1) // 8
    return total % 2


# ---------------------------------------------------------------------
# BCL cyclotomic data

class BCLData:
    def __init__(self, N_C, M_inn, M_abs, rational_union):
        self.N_C = N_C
        self.M_inn = M_inn
        self.M_abs = M_abs
        self.rational_union = rational_union
        phi = len(_units(N_C))
        self.inner_field_degree = phi // len(M_inn)
        self.abs_field_degree = phi // len(M_abs)

    def __repr__(self):
        return ("BCLData(N=%d, |M_inn|=%d, |M_abs|=%d, rational=%s)"
                % (self.N_C, len(self.M_inn), len(self.M_abs),
                   self.rational_union))


def _units(n):
    return [u for u in range(1, n + 1) if math.gcd(u, n) == 1]


def bcl_data(spec):
    """Stability of the class multiset under C -> C^u, inner and modulo
    the normalizer action."""
    h = spec.group
    orders = [h.classes()[lab].elem_order for lab in spec.labels]
    N = 1
    for o in orders:
        N = N * o // math.gcd(N, o)

    def powered(u):
        out = []
        for lab in spec.labels:
            rep = h.classes()[lab].rep
            out.append(h.class_of(h.power(rep, u)).label)
        return tuple(sorted(out))

    base = tuple(sorted(spec.labels))
    M_inn = [u for u in _units(N) if powered(u) == base]

    # orbit of the label multiset under the automorphism generators
    gens = h.aut_gens(spec.labels)
    reachable = {base}
    frontier = [base]
    while frontier:
        new = []
        for ms in frontier:
            for a in gens:
                img = tuple(sorted(h.class_of(a(h.classes()[lab].rep)).label
                                   for lab in ms))
                if img not in reachable:
                    reachable.add(img)
                    new.append(img)
        frontier = new
    M_abs = [u for u in _units(N) if powered(u) in reachable]

    return BCLData(N, M_inn, M_abs, len(M_inn) == len(_units(N)))


def component_moduli_degree(spec, orbit, cover=None):
    """Orbit length of the lift value under the unit multipliers of the
    cyclic Schur multiplier (Z/ell^{k+1} for affine2 families, Z/2 for
    alternating spin)."""
    s = orbit_lift_invariant(spec, orbit, cover)
    h = spec.group
    if h.family == "affine2":
        L = h.L
        return len({u * s % L for u in _units(L)})
    return 1
