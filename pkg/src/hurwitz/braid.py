"""The Hurwitz-monodromy action on Nielsen classes: twists q_i and the
shift sh, braid-orbit BFS over canonical forms, the braidable-
automorphism test, and the inner/absolute component lattice."""

from .groups import ConsistencyError
from .nielsen import (NielsenTuple, NielsenSpec, inner_canonical,
                      absolute_canonical, absolute_class_map, apply_aut,
                      enumerate_tuples, is_nielsen, DEFAULT_BUDGET)


def q_twist(spec, i, t):
    """q_i: (..., g_i, g_{i+1}, ...) -> (..., g_i g_{i+1} g_i^{-1}, g_i, ...),
    1-based i; labels travel with the entries."""
    h = spec.group
    if not 1 <= i <= spec.r - 1:
        raise ValueError("twist index %d out of range" % i)
    j = i - 1
    e, l = list(t.entries), list(t.labels)
    a, b = e[j], e[j + 1]
    e[j], e[j + 1] = h.conj(b, a), a
    l[j], l[j + 1] = l[j + 1], l[j]
    return NielsenTuple(tuple(l), tuple(e))


def q_untwist(spec, i, t):
    """Inverse twist: (a, b) -> (b, b^{-1} a b)."""
    h = spec.group
    j = i - 1
    e, l = list(t.entries), list(t.labels)
    a, b = e[j], e[j + 1]
    e[j], e[j + 1] = b, h.conj(a, h.inv(b))
    l[j], l[j + 1] = l[j + 1], l[j]
    return NielsenTuple(tuple(l), tuple(e))


def sh(spec, t):
    """Left shift (g_1,...,g_r) -> (g_2,...,g_r,g_1)."""
    return NielsenTuple(t.labels[1:] + t.labels[:1],
                        t.entries[1:] + t.entries[:1])


def braid_moves(spec):
    moves = [lambda t, i=i: q_twist(spec, i, t) for i in range(1, spec.r)]
    moves.append(lambda t: sh(spec, t))
    return moves


class BraidOrbit:
    def __init__(self, spec, members):
        self.spec = spec
        self.members = frozenset(members)
        self.seed = min(members)
        self.size = len(self.members)

    def __repr__(self):
        return "BraidOrbit(size=%d, seed=%s)" % (self.size, (self.seed,))

    def __eq__(self, other):
        return self.members == other.members

    def __hash__(self):
        return hash(self.members)


def _closure(start, steps):
    seen = {start}
    frontier = [start]
    while frontier:
        new = []
        for x in frontier:
            for f in steps:
                y = f(x)
                if y not in seen:
                    seen.add(y)
                    new.append(y)
        frontier = new
    return seen


def orbit(spec, seed):
    """Braid orbit of a canonical seed (BFS under q_i, sh, re-canonicalized
    after every move)."""
    if spec.equivalence == "inner":
        can = lambda t: inner_canonical(spec, t)
    else:
        can = lambda t: absolute_canonical(spec, t)
    if can(seed) != seed:
        raise ValueError("seed is not canonical")
    moves = braid_moves(spec)
    steps = [lambda t, m=m: can(m(t)) for m in moves]
    return BraidOrbit(spec, _closure(seed, steps))


def _orbit_partition(spec, forms, step_fns):
    left = set(forms)
    orbits = []
    for t in sorted(forms):
        if t not in left:
            continue
        members = _closure(t, step_fns)
        if not members <= left:
            raise ConsistencyError("braid orbit escaped the enumeration")
        left -= members
        orbits.append(BraidOrbit(spec, members))
    orbits.sort(key=lambda o: o.seed)
    return orbits


def all_orbits(spec, budget=DEFAULT_BUDGET):
    """Partition of enumerate_tuples(spec) into braid orbits."""
    if spec.equivalence == "inner":
        forms = enumerate_tuples(spec, budget)
        can = lambda t: inner_canonical(spec, t)
        steps = [lambda t, m=m: can(m(t)) for m in braid_moves(spec)]
        return _orbit_partition(spec, forms, steps)
    inner_spec = spec.as_inner()
    inner_forms = enumerate_tuples(inner_spec, budget)
    cmap = absolute_class_map(spec, inner_forms)
    forms = sorted(set(cmap.values()))
    steps = [lambda t, m=m: cmap[inner_canonical(spec, m(t))]
             for m in braid_moves(spec)]
    return _orbit_partition(spec, forms, steps)


def braidable(spec, braid_orbit, a):
    """Is the automorphism a realizable by a braid on this inner orbit?
    Testing the seed alone suffices (conjugation commutes with braids)."""
    return apply_aut(spec, a, braid_orbit.seed) in braid_orbit.members


class ComponentLattice:
    def __init__(self, spec, inner_orbits, abs_orbits, covering, v_data):
        self.spec = spec
        self.inner_orbits = inner_orbits
        self.abs_orbits = abs_orbits
        self.covering = covering      # inner orbit index -> abs orbit index
        self.v_data = v_data          # abs orbit index -> dict

    def v(self, abs_index):
        return self.v_data[abs_index]["v"]


def component_lattice(spec, budget=DEFAULT_BUDGET):
    """Inner orbits, absolute orbits, the covering between them, and the
    verified component count v = (N_T : N^br) per absolute orbit."""
    inner_spec = spec.as_inner()
    abs_spec = NielsenSpec(spec.group, spec.labels, "absolute", spec.T)
    inner_forms = enumerate_tuples(inner_spec, budget)
    cmap = absolute_class_map(abs_spec, inner_forms)

    inner_orbits = all_orbits(inner_spec, budget)
    abs_orbits = all_orbits(abs_spec, budget)

    abs_of_form = {}
    for i, o in enumerate(abs_orbits):
        for t in o.members:
            abs_of_form[t] = i

    covering = {}
    for j, o in enumerate(inner_orbits):
        images = {abs_of_form[cmap[t]] for t in o.members}
        if len(images) != 1:
            raise ConsistencyError("inner orbit maps to %d absolute orbits"
                                   % len(images))
        covering[j] = images.pop()

    # cross-check: merging inner orbits along cmap reproduces the direct
    # absolute partition
    merged = {}
    for j, o in enumerate(inner_orbits):
        merged.setdefault(covering[j], set()).update(cmap[t] for t in o.members)
    for i, o in enumerate(abs_orbits):
        if merged.get(i) != set(o.members):
            raise ConsistencyError("absolute orbits disagree with the "
                                   "inner-orbit merge")

    # v per absolute orbit, verified against braidable coset representatives
    reps = spec.group.coset_rep_auts(spec.labels)
    v_data = {}
    for i in range(len(abs_orbits)):
        above = [j for j in covering if covering[j] == i]
        v = len(above)
        o = inner_orbits[above[0]]
        nbraidable = sum(1 for a in reps if braidable(inner_spec, o, a))
        if reps and v * nbraidable != len(reps):
            raise ConsistencyError(
                "component count v=%d inconsistent with braidable index "
                "%d/%d" % (v, len(reps), nbraidable))
        v_data[i] = {"v": v, "inner_above": above,
                     "coset_reps": len(reps), "braidable": nbraidable}
    return ComponentLattice(spec, inner_orbits, abs_orbits, covering, v_data)
