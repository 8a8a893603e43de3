"""r=4 reduced Nielsen classes: the Klein reduction group
Q'' = <sh^2, q1 q3^{-1}>, the j-line branch cycles gamma_0, gamma_1,
gamma_infty, cusp widths with the middle-product prediction, the reduced
genus with its Euler-characteristic oracle, sh-incidence matrices,
moduli checks, and the Wohlfahrt congruence test.

The width prediction and the genus formula are hard gates: a mismatch
raises ConsistencyError rather than warning.
"""

import math

import numpy as np

from .groups import ConsistencyError, gl_orders, cen_in_Sn
from .nielsen import inner_canonical
from .braid import q_twist, q_untwist, sh


def _can(spec, t):
    return inner_canonical(spec, t)


def _q2(spec, t):
    return _can(spec, q_twist(spec, 2, t))


def _sh2(spec, t):
    return _can(spec, sh(spec, sh(spec, t)))


def _q1q3inv(spec, t):
    return _can(spec, q_untwist(spec, 3, q_twist(spec, 1, t)))


def _qq_elements(spec):
    """The four elements of Q'' as maps on inner classes."""
    return [
        ("id", lambda t: t),
        ("sh2", lambda t: _sh2(spec, t)),
        ("q1q3i", lambda t: _q1q3inv(spec, t)),
        ("sh2*q1q3i", lambda t: _q1q3inv(spec, _sh2(spec, t))),
    ]


class ReducedClass:
    """Q''-orbit data over one braid orbit (the reduced component)."""

    def __init__(self, spec, orbit, qq_orbits):
        self.spec = spec
        self.orbit = orbit
        self.qq_orbits = qq_orbits              # rep -> frozenset
        self.reps = sorted(qq_orbits)
        self._rep_of = {}
        for rep, members in qq_orbits.items():
            for t in members:
                self._rep_of[t] = rep

    def rep_of(self, t):
        return self._rep_of[t]

    @property
    def degree(self):
        return len(self.reps)


def reduce_orbit(orbit):
    """Partition a braid orbit into Q''-orbits."""
    spec = orbit.spec
    if spec.r != 4:
        raise ValueError("reduced classes need r = 4")
    if spec.equivalence != "inner":
        raise ValueError("reduction acts on inner classes")
    moves = [f for _, f in _qq_elements(spec)[1:]]
    left = set(orbit.members)
    qq = {}
    while left:
        t = min(left)
        seen = {t}
        frontier = [t]
        while frontier:
            new = []
            for x in frontier:
                for f in moves:
                    y = f(x)
                    if y not in seen:
                        seen.add(y)
                        new.append(y)
            frontier = new
        if len(seen) not in (1, 2, 4):
            raise ConsistencyError("Q'' orbit of size %d" % len(seen))
        if not seen <= left:
            raise ConsistencyError("Q'' orbit escaped the braid orbit")
        left -= seen
        qq[min(seen)] = frozenset(seen)
    return ReducedClass(spec, orbit, qq)


def gamma_actions(rc):
    """gamma_0 = q1 q2, gamma_1 = q1 q2 q1, gamma_infty = q2 as
    permutations of the reduced representatives; verifies the j-line
    relations gamma_0^3 = gamma_1^2 = gamma_0 gamma_1 gamma_infty = 1."""
    spec = rc.spec

    def word(t, idxs):
        for i in idxs:
            t = q_twist(spec, i, t)
        return rc.rep_of(_can(spec, t))

    g0 = {t: word(t, (1, 2)) for t in rc.reps}
    g1 = {t: word(t, (1, 2, 1)) for t in rc.reps}
    gi = {t: word(t, (2,)) for t in rc.reps}
    for t in rc.reps:
        if g0[g0[g0[t]]] != t or g1[g1[t]] != t:
            raise ConsistencyError("gamma_0/gamma_1 orders wrong")
        if gi[g1[g0[t]]] != t:
            raise ConsistencyError("gamma_0 gamma_1 gamma_infty != 1")
    return g0, g1, gi


def _perm_cycles(perm, domain):
    seen = set()
    cycles = []
    for t in domain:
        if t in seen:
            continue
        cyc = []
        x = t
        while x not in seen:
            seen.add(x)
            cyc.append(x)
            x = perm[x]
        cycles.append(cyc)
    return cycles


class CuspOrbit:
    def __init__(self, reps, width, u, v, f, raw_v, label):
        self.reps = reps          # reduced reps in the gamma_infty orbit
        self.width = width
        self.u = u
        self.v = v                # q2-orbit length on inner classes
        self.f = f                # Q'' shortening: width * f = v
        self.raw_v = raw_v        # q2-orbit length on raw tuples
        self.label = label        # (u, width, a)

    def __repr__(self):
        return "Cusp(u=%d,width=%d,f=%d)" % (self.u, self.width, self.f)


def _middle_product_uv(spec, t):
    """Prop.-style prediction of (u, v): u from the middle product
    g2 g3 modulo the center of <g2, g3>, v the unreduced q2-orbit
    length."""
    h = spec.group
    g2, g3 = t.entries[1], t.entries[2]
    if g2 == g3:
        return 1, 1
    H = h.subgroup_closure([g2, g3])
    Z = [z for z in H
         if h.mul(z, g2) == h.mul(g2, z) and h.mul(z, g3) == h.mul(g3, z)]
    g = h.mul(g2, g3)
    cyc = {h.power(g, i) for i in range(h.elem_order(g))}
    u = h.elem_order(g) // len(cyc & set(Z))
    if u % 2:
        gp = h.mul(g3, g2)
        y = h.power(gp, (u - 1) // 2)
        if h.elem_order(h.mul(y, g3)) == 2:
            return u, u
    return u, 2 * u


def cusps(rc, gi=None):
    """gamma_infty orbits with widths.  Two hard cross-checks per cusp:
    the middle-product prediction (u,v) of the q2-orbit on raw tuples,
    and the Q''-stabilizer shortening f with width * f = q2-orbit length
    on inner classes."""
    spec = rc.spec
    if gi is None:
        gi = gamma_actions(rc)[2]
    out = []
    for a, cyc in enumerate(_perm_cycles(gi, rc.reps)):
        width = len(cyc)
        t = min(min(rc.qq_orbits[r]) for r in cyc)
        # q2 orbit of the inner class t
        orb = [t]
        x = _q2(spec, t)
        while x != t:
            orb.append(x)
            x = _q2(spec, x)
        vlen = len(orb)
        # q2 orbit of the raw tuple: the object Prop.-predicted by (u,v)
        raw_v = 1
        x = q_twist(spec, 2, t)
        while x != t:
            x = q_twist(spec, 2, x)
            raw_v += 1
        u, v_pred = _middle_product_uv(spec, t)
        if v_pred != raw_v:
            raise ConsistencyError(
                "cusp prediction v=%d but raw q2 orbit has length %d "
                "(u=%d, seed %s)" % (v_pred, raw_v, u, (t,)))
        if raw_v % vlen:
            raise ConsistencyError("inner q2 orbit does not divide raw")
        orbset = set(orb)
        stab_g = sum(1 for _, f in _qq_elements(spec) if f(t) == t)
        stab_o = sum(1 for _, f in _qq_elements(spec) if f(t) in orbset)
        if stab_o % stab_g:
            raise ConsistencyError("Q'' stabilizers not nested")
        f = stab_o // stab_g
        if f not in (1, 2, 4) or width * f != vlen:
            raise ConsistencyError(
                "shortening f=%d inconsistent: width %d * f != v %d"
                % (f, width, vlen))
        out.append(CuspOrbit(sorted(cyc), width, u, vlen, f, raw_v,
                             (u, width, a)))
    out.sort(key=lambda c: (c.u, c.width, min(c.reps)))
    for a, c in enumerate(out):
        c.label = (c.u, c.width, a)
    return out


def reduced_genus(rc, gammas=None, cusp_list=None):
    """Genus of the reduced component from the displayed formula,
    cross-checked against the Euler characteristic of the degree-d cover
    of the j-line with monodromy (gamma_0, gamma_1, gamma_infty)."""
    g0, g1, gi = gammas if gammas is not None else gamma_actions(rc)
    if cusp_list is None:
        cusp_list = cusps(rc, gi)
    d = rc.degree
    t0 = sum(1 for t in rc.reps if g0[t] == t)
    t1 = sum(1 for t in rc.reps if g1[t] == t)
    rhs = 2 * (d - t0) / 3 + (d - t1) / 2 + sum(c.width - 1 for c in cusp_list)
    g2 = rhs / 2 + 1 - d
    if g2 != int(g2) or g2 < 0:
        raise ConsistencyError("formula genus %r not a genus" % g2)
    c0 = len(_perm_cycles(g0, rc.reps))
    c1 = len(_perm_cycles(g1, rc.reps))
    ci = len(cusp_list)
    euler = d - c0 - c1 - ci
    if euler % 2:
        raise ConsistencyError("odd Euler term")
    g_euler = euler // 2 + 1
    if int(g2) != g_euler:
        raise ConsistencyError("genus formula %d != Euler oracle %d"
                               % (int(g2), g_euler))
    return int(g2)


def sh_incidence(rc, cusp_list=None):
    """Matrix |O_i  meet  sh(O_j)| over the cusps of one component;
    symmetric for r=4, rows summing to the widths."""
    spec = rc.spec
    if cusp_list is None:
        cusp_list = cusps(rc)
    sets = [set(c.reps) for c in cusp_list]
    sh_sets = [{rc.rep_of(_can(spec, sh(spec, t))) for t in s} for s in sets]
    n = len(cusp_list)
    M = np.zeros((n, n), dtype=int)
    for i in range(n):
        for j in range(n):
            M[i, j] = len(sets[i] & sh_sets[j])
    if not (M == M.T).all():
        raise ConsistencyError("sh-incidence matrix not symmetric")
    widths = np.array([c.width for c in cusp_list])
    if not (M.sum(axis=1) == widths).all():
        raise ConsistencyError("sh-incidence row sums != widths")
    return M, [c.label for c in cusp_list]


def moduli_checks(spec, rc, gammas=None):
    """Fine-moduli style report for one reduced component."""
    h = spec.group
    g0, g1, _ = gammas if gammas is not None else gamma_actions(rc)
    free_qq = all(len(m) == 4 for m in rc.qq_orbits.values())
    t0 = sum(1 for t in rc.reps if g0[t] == t)
    t1 = sum(1 for t in rc.reps if g1[t] == t)
    report = {
        "fine_inner": len(h.center()) == 1,
        "fine_abs": spec.T is not None and cen_in_Sn(h, spec.T) == 1,
        "bfine": free_qq and t0 == 0 and t1 == 0,
        "qq_free": free_qq,
        "elliptic_fixed_points": {"gamma0": t0, "gamma1": t1},
    }
    return report


def wohlfahrt(rc, cusp_list=None):
    """Congruence test via Wohlfahrt's theorem: a modular curve whose
    cusp widths have lcm N comes from a subgroup containing Gamma(N), so
    its degree d divides |PSL_2(Z/N)| and, when the complement order
    |PSL_2(Z/N)|/d forces a Sylow subgroup, the translation T must act
    on the d cosets with cycle type equal to the width multiset."""
    if cusp_list is None:
        cusp_list = cusps(rc)
    N = 1
    for c in cusp_list:
        N = N * c.width // math.gcd(N, c.width)
    d = rc.degree
    widths = sorted(c.width for c in cusp_list)
    if N < 2:
        return {"N": N, "degree": d, "psl2": 1, "widths": widths,
                "verdict": "inconclusive"}
    psl = gl_orders(N)[2]
    out = {"N": N, "degree": d, "psl2": psl, "widths": widths}
    if psl % d:
        out["verdict"] = "not a modular curve"
        out["reason"] = "degree %d does not divide |PSL2(Z/%d)| = %d" \
            % (d, N, psl)
        return out
    sub = psl // d
    ct = _psl2_sylow_cusp_type(N, sub)
    if ct is not None:
        out["sylow_cycle_type"] = ct
        if ct != widths:
            out["verdict"] = "not a modular curve"
            out["reason"] = ("any index-%d subgroup of PSL2(Z/%d) is a "
                            "Sylow subgroup; T acts on its cosets with "
                            "cycle type %s, not the cusp widths %s"
                            % (d, N, ct, widths))
            return out
    out["verdict"] = "inconclusive"
    return out


def _psl2_sylow_cusp_type(N, sub, limit=2000):
    """If every order-`sub` subgroup of PSL2(Z/N) is a Sylow p-subgroup
    (all conjugate, hence one coset action), return the cycle type of
    T = [[1,1],[0,1]] on the cosets; else None."""
    psl = gl_orders(N)[2]
    if psl > limit:
        return None
    # sub must be the full p-part of psl for a single prime p
    p, m = None, sub
    for q in (2, 3, 5, 7, 11, 13):
        if m % q == 0:
            if p is not None and p != q:
                return None
            p = q
            while m % q == 0:
                m //= q
    if m != 1 or p is None or psl % sub or (psl // sub) % p == 0:
        return None

    I = (1, 0, 0, 1)

    def mul(x, y):
        a, b, c, d = x
        e, f, g, h = y
        return ((a * e + b * g) % N, (a * f + b * h) % N,
                (c * e + d * g) % N, (c * f + d * h) % N)

    def norm(x):
        return min(x, tuple((-t) % N for t in x))

    import itertools as it
    P = sorted({norm((a, b, c, d))
                for a, b, c, d in it.product(range(N), repeat=4)
                if (a * d - b * c) % N == 1})

    def order(x):
        o, y = 1, x
        while norm(y) != I:
            y = mul(y, x)
            o += 1
        return o

    def closure(gens):
        seen = {I}
        frontier = [I]
        while frontier:
            new = []
            for x in frontier:
                for g in gens:
                    y = norm(mul(x, g))
                    if y not in seen:
                        seen.add(y)
                        new.append(y)
            frontier = new
        return seen

    def inv(x):
        a, b, c, d = x
        return (d % N, (-b) % N, (-c) % N, a % N)

    # grow a Sylow p-subgroup: a proper p-subgroup always has a p-element
    # in its normalizer outside itself
    H = {I}
    gens = []
    while len(H) < sub:
        grew = False
        for x in P:
            if x in H:
                continue
            ox = order(x)
            if ox == 1 or ox != p ** _valuation(ox, p):
                continue
            # x normalizes H?
            if all(norm(mul(mul(x, h), inv(x))) in H for h in H):
                cand = closure(gens + [x])
                if len(cand) == p ** _valuation(len(cand), p) \
                        and len(cand) <= sub:
                    gens.append(x)
                    H = cand
                    grew = True
                    break
        if not grew:
            return None
    Hf = frozenset(H)

    def coset(x):
        return min(norm(mul(x, h)) for h in Hf)

    reps = sorted({coset(x) for x in P})
    T = (1, 1 % N, 0, 1)
    perm = {r: coset(mul(T, r)) for r in reps}
    seen, ct = set(), []
    for r in reps:
        if r in seen:
            continue
        n, x = 0, r
        while x not in seen:
            seen.add(x)
            x = perm[x]
            n += 1
        ct.append(n)
    return sorted(ct)


def _valuation(n, p):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v
