"""Finite group families used throughout: element arithmetic, conjugacy
classes, generation tests, automorphism data, and the central extensions
that feed the lift-invariant machinery.

Elements are plain (nested) tuples of ints, so they hash, compare and
serialize for free; each GroupHandle supplies the operations.  The total
order on elements is the lexicographic order on these tuples -- canonical
forms downstream depend on it being stable.
"""

from functools import lru_cache
from itertools import permutations, product
import math


class ConsistencyError(RuntimeError):
    """An internal oracle disagreed with a computed value.  Never caught."""


class BudgetExceeded(RuntimeError):
    pass


def inverse_mod(a, m):
    return pow(a, -1, m)


class ConjClass:
    __slots__ = ("label", "rep", "members", "elem_order")

    def __init__(self, label, rep, members, elem_order):
        self.label = label
        self.rep = rep              # minimal member
        self.members = members      # frozenset
        self.elem_order = elem_order

    def __len__(self):
        return len(self.members)

    def __repr__(self):
        return "ConjClass(%r, size=%d, order=%d)" % (
            self.label, len(self.members), self.elem_order)


class Automorphism:
    """A bijection of the group given by an element map; `name` keeps
    reports deterministic and debuggable."""

    def __init__(self, name, fn):
        self.name = name
        self.fn = fn

    def __call__(self, g):
        return self.fn(g)

    def __repr__(self):
        return "Automorphism(%s)" % self.name


MAX_ORDER = 10 ** 4


class GroupHandle:
    family = None

    def __init__(self):
        self._inv = {}
        self._order_cache = {}
        self._classes = None
        self._gens = None

    def _check_enumerable(self):
        # element-level operations (elements/classes) only; pointwise
        # arithmetic stays available on larger groups (e.g. big covers)
        if self.order > MAX_ORDER:
            raise ValueError("group order %d exceeds limit %d"
                             % (self.order, MAX_ORDER))

    # -- families override these three --------------------------------
    def mul(self, a, b):
        raise NotImplementedError

    def _all_elements(self):
        raise NotImplementedError

    def to_spec(self):
        raise NotImplementedError

    # -- generic machinery --------------------------------------------
    @property
    def one(self):
        return self.identity

    def elements(self):
        if not hasattr(self, "_elements"):
            self._check_enumerable()
            self._elements = sorted(self._all_elements())
            assert len(self._elements) == self.order
        return self._elements

    def elem_order(self, g):
        o = self._order_cache.get(g)
        if o is None:
            o, x = 1, g
            while x != self.identity:
                x = self.mul(x, g)
                o += 1
            self._order_cache[g] = o
        return o

    def inv(self, a):
        b = self._inv.get(a)
        if b is None:
            prev, x = self.identity, a
            while x != self.identity:
                prev, x = x, self.mul(x, a)
            b = prev      # a^(ord-1)
            self._inv[a] = b
            self._inv[b] = a
        return b

    def conj(self, g, h):
        """h g h^{-1}."""
        return self.mul(self.mul(h, g), self.inv(h))

    def power(self, g, n):
        n %= self.elem_order(g)
        x = self.identity
        for _ in range(n):
            x = self.mul(x, g)
        return x

    def gens(self):
        """A small generating set, found greedily in element order."""
        if self._gens is None:
            gens, closure = [], {self.identity}
            for g in self.elements():
                if g not in closure:
                    gens.append(g)
                    closure = self.subgroup_closure(gens)
                    if len(closure) == self.order:
                        break
            self._gens = gens
        return self._gens

    def subgroup_closure(self, elems, limit=None):
        seen = {self.identity}
        seen.update(elems)
        frontier = list(seen)
        while frontier:
            new = []
            for x in frontier:
                for g in elems:
                    y = self.mul(x, g)
                    if y not in seen:
                        seen.add(y)
                        new.append(y)
                        if limit is not None and len(seen) > limit:
                            return seen
            frontier = new
        return seen

    def generates(self, elems):
        # any proper subgroup has order <= |G|/2, so stop early
        bound = self.order // 2
        closure = self.subgroup_closure(elems, limit=bound)
        return len(closure) > bound

    def class_of(self, g):
        if not hasattr(self, "_class_index"):
            self._class_index = {}
            for cl in self.classes().values():
                for x in cl.members:
                    self._class_index[x] = cl
        return self._class_index[g]

    def conj_class(self, g):
        seen = {g}
        frontier = [g]
        gens = self.gens()
        while frontier:
            new = []
            for x in frontier:
                for h in gens:
                    y = self.conj(x, h)
                    if y not in seen:
                        seen.add(y)
                        new.append(y)
            frontier = new
        members = frozenset(seen)
        return ConjClass("?", min(members), members, self.elem_order(g))

    def classes(self):
        if self._classes is None:
            raw = []
            left = set(self.elements())
            while left:
                cl = self.conj_class(min(left))
                left -= cl.members
                raw.append(cl)
            raw.sort(key=lambda c: c.rep)
            self._classes = self._label_classes(raw)
        return self._classes

    def _label_classes(self, raw):
        out = {}
        counts = {}
        for cl in raw:
            base = str(cl.elem_order)
            counts[base] = counts.get(base, 0) + 1
            label = base if counts[base] == 1 else "%s_%d" % (base, counts[base])
            cl.label = label
            out[label] = cl
        return out

    def center(self):
        gens = self.gens()
        return [g for g in self.elements()
                if all(self.mul(g, h) == self.mul(h, g) for h in gens)]

    def centralizer(self, g):
        return [h for h in self.elements() if self.mul(g, h) == self.mul(h, g)]

    # -- automorphism data (families override) ------------------------
    def aut_gens(self, labels):
        """Generators of the normalizer/automorphism action used for
        absolute equivalence; must preserve the labelled class multiset."""
        return fallback_aut_gens(self, labels)

    def coset_rep_auts(self, labels):
        """A complete family of coset representatives used to verify the
        component count v of the inner->absolute covering."""
        return fallback_aut_gens(self, labels)

    # -- permutation representations ----------------------------------
    def stabilizer(self, T):
        """Point stabilizer for the named coset representation T."""
        if T == "regular":
            return [self.identity]
        raise ValueError("representation %r not available for %s" % (T, self.family))

    def coset_action_orbit_count(self, g, T):
        """Number of <g>-orbits on the cosets of stabilizer(T)."""
        H = frozenset(self.stabilizer(T))
        reps = {}
        for x in self.elements():
            key = min(self.mul(x, h) for h in H)
            reps.setdefault(key, key)
        cosets = sorted(reps)
        index = {c: i for i, c in enumerate(cosets)}

        def act(c):
            return min(self.mul(self.mul(g, c), h) for h in H)

        seen, orbits = set(), 0
        for c in cosets:
            if index[c] in seen:
                continue
            orbits += 1
            x = c
            while index[x] not in seen:
                seen.add(index[x])
                x = act(x)
        return orbits, len(cosets)


# ---------------------------------------------------------------------
# permutation families

def _pmul(p, q):
    # (p*q)(i) = p(q(i)) : apply q first
    return tuple(p[i] for i in q)


def _cycle_type(p):
    n = len(p)
    seen = [False] * n
    parts = []
    for i in range(n):
        if seen[i]:
            continue
        ln, j = 0, i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            ln += 1
        parts.append(ln)
    return tuple(sorted(parts, reverse=True))


def _parity(p):
    return sum(l - 1 for l in _cycle_type(p)) % 2


class PermGroup(GroupHandle):
    def __init__(self, n, even_only):
        self.n = n
        self.even_only = even_only
        self.identity = tuple(range(n))
        self.order = math.factorial(n) // (2 if even_only else 1)
        super().__init__()

    def mul(self, a, b):
        return _pmul(a, b)

    def inv(self, a):
        out = [0] * self.n
        for i, j in enumerate(a):
            out[j] = i
        return tuple(out)

    def _all_elements(self):
        ps = permutations(range(self.n))
        if self.even_only:
            return [p for p in ps if _parity(p) == 0]
        return list(ps)

    def _label_classes(self, raw):
        # cycle-type labels; classes that split in A_n get +/- suffixes,
        # "+" on the one holding the smaller minimal representative.
        by_type = {}
        for cl in raw:
            t = _cycle_type(cl.rep)
            key = ".".join(str(l) for l in t if l > 1) or "1"
            by_type.setdefault(key, []).append(cl)
        out = {}
        for key, cls in sorted(by_type.items()):
            if len(cls) == 1:
                cls[0].label = key
            elif len(cls) == 2:
                cls.sort(key=lambda c: c.rep)
                cls[0].label = key + "+"
                cls[1].label = key + "-"
            else:
                raise ConsistencyError("cycle type %s in >2 classes" % key)
            for cl in cls:
                out[cl.label] = cl
        return out

    def stabilizer(self, T):
        if T == "natural":
            return [p for p in self.elements() if p[0] == 0]
        return super().stabilizer(T)

    def coset_action_orbit_count(self, g, T):
        if T == "natural":
            seen, orbits = set(), 0
            for i in range(self.n):
                if i in seen:
                    continue
                orbits += 1
                j = i
                while j not in seen:
                    seen.add(j)
                    j = g[j]
            return orbits, self.n
        return super().coset_action_orbit_count(g, T)


class Alternating(PermGroup):
    family = "alternating"

    def __init__(self, n):
        super().__init__(n, even_only=True)

    def to_spec(self):
        return {"family": "alternating", "n": self.n}

    def aut_gens(self, labels):
        t = list(range(self.n))
        t[0], t[1] = t[1], t[0]
        t = tuple(t)
        a = Automorphism("conj(0 1)", lambda g, t=t: _pmul(_pmul(t, g), t))
        return [a] if _aut_preserves(self, a, labels) else []

    def coset_rep_auts(self, labels):
        return [Automorphism("id", lambda g: g)] + self.aut_gens(labels)


class Symmetric(PermGroup):
    family = "symmetric"

    def __init__(self, n):
        super().__init__(n, even_only=False)

    def to_spec(self):
        return {"family": "symmetric", "n": self.n}

    def aut_gens(self, labels):
        return []

    def coset_rep_auts(self, labels):
        return [Automorphism("id", lambda g: g)]


# ---------------------------------------------------------------------
# dihedral

class Dihedral(GroupHandle):
    """D_m = Z/m x| Z/2, elements (eps, t) with (e1,t1)(e2,t2) =
    (e1+e2, (-1)^e2 t1 + t2) -- Eq.-style (n1 n2, m1^{n2} m2)."""

    family = "dihedral"

    def __init__(self, m):
        self.m = m
        self.identity = (0, 0)
        self.order = 2 * m
        super().__init__()

    def mul(self, a, b):
        (e1, t1), (e2, t2) = a, b
        return ((e1 + e2) % 2, ((t1 if e2 == 0 else -t1) + t2) % self.m)

    def _all_elements(self):
        return [(e, t) for e in (0, 1) for t in range(self.m)]

    def to_spec(self):
        return {"family": "dihedral", "m": self.m}

    def _label_classes(self, raw):
        out = {}
        for cl in raw:
            e, t = cl.rep
            if e == 1:
                # reflections; for odd m a single class
                label = "2" if "2" not in out else "2_%d" % t
            elif t == 0:
                label = "1"
            else:
                label = "rot%d" % t
            cl.label = label
            out[label] = cl
        return out

    def _unit_maps(self, bs):
        maps = []
        for b in bs:
            maps.append(Automorphism(
                "t*%d" % b, lambda g, b=b: (g[0], (b * g[1]) % self.m)))
        return maps

    def aut_gens(self, labels):
        return self._unit_maps([primitive_root(self.m)])

    def coset_rep_auts(self, labels):
        units = [b for b in range(1, self.m) if math.gcd(b, self.m) == 1]
        return self._unit_maps(units)

    def stabilizer(self, T):
        if T == "involution-cosets":
            return [(0, 0), (1, 0)]
        return super().stabilizer(T)


def primitive_root(m):
    """Smallest primitive root mod m (m an odd prime power here)."""
    phi = sum(1 for b in range(1, m) if math.gcd(b, m) == 1)
    for g in range(2, m):
        if math.gcd(g, m) != 1:
            continue
        o, x = 1, g % m
        while x != 1:
            x = x * g % m
            o += 1
        if o == phi:
            return g
    raise ValueError("no primitive root mod %d" % m)


# ---------------------------------------------------------------------
# affine families  (Z/ell^{k+1})^2 x| Z/2 or Z/3

A_STAR = ((0, -1), (1, -1))     # order 3, left action on column vectors


def _matvec(M, v, L):
    return ((M[0][0] * v[0] + M[0][1] * v[1]) % L,
            (M[1][0] * v[0] + M[1][1] * v[1]) % L)


def _matmul(M, N, L):
    return tuple(tuple(sum(M[i][t] * N[t][j] for t in range(2)) % L
                       for j in range(2)) for i in range(2))


class Affine2(GroupHandle):
    family = "affine2"

    def __init__(self, ell, k, aut_order):
        if aut_order not in (2, 3):
            raise ValueError("aut order must be 2 or 3")
        self.ell = ell
        self.k = k
        self.L = ell ** (k + 1)
        self.aut_order = aut_order
        self.identity = (0, (0, 0))
        self.order = aut_order * self.L ** 2
        if aut_order == 3:
            I = ((1, 0), (0, 1))
            self._apow = [I]
            for _ in range(2):
                self._apow.append(_matmul(A_STAR, self._apow[-1], self.L))
            assert _matmul(A_STAR, self._apow[2], self.L) == tuple(
                tuple(x % self.L for x in row) for row in I)
        super().__init__()

    def _act(self, c, v):
        """A^c v (A = -1 for order 2, A = A* for order 3)."""
        if self.aut_order == 2:
            return v if c % 2 == 0 else ((-v[0]) % self.L, (-v[1]) % self.L)
        return _matvec(self._apow[c % 3], v, self.L)

    def mul(self, a, b):
        (c1, v1), (c2, v2) = a, b
        w = self._act(-c2 % self.aut_order, v1)
        return ((c1 + c2) % self.aut_order,
                ((w[0] + v2[0]) % self.L, (w[1] + v2[1]) % self.L))

    def _all_elements(self):
        R = range(self.L)
        return [(c, (x, y)) for c in range(self.aut_order) for x in R for y in R]

    def generates(self, elems):
        """Exact fast path: with g1 = (c1, v1), c1 a unit mod the aut
        order, the generated subgroup is <g1> * M with M the Z[A]-span of
        the c-cancelled differences; M is full iff it is full mod ell
        (Nakayama).  Falls back to the generic closure otherwise."""
        cs = [g[0] % self.aut_order for g in elems]
        pivot = next((i for i, c in enumerate(cs) if c != 0), None)
        if pivot is None or math.gcd(cs[pivot], self.aut_order) != 1:
            return super().generates(elems)
        g1 = elems[pivot]
        inv1 = self.inv(g1)
        ic1 = inverse_mod(cs[pivot], self.aut_order)
        spans = []
        for i, g in enumerate(elems):
            h = g
            for _ in range(cs[i] * ic1 % self.aut_order):
                h = self.mul(h, inv1)
            assert h[0] == 0
            spans.append(h[1])
        if self.aut_order == 3:
            spans.extend([self._act(1, v) for v in list(spans)])
        ell = self.ell
        red = [(v[0] % ell, v[1] % ell) for v in spans]
        for i, (a, b) in enumerate(red):
            if a % ell:
                f = inverse_mod(a, ell)
                return any((d - f * c * b) % ell for c, d in red)
            if b % ell:
                f = inverse_mod(b, ell)
                return any((c - f * d * a) % ell for c, d in red)
        return False

    def to_spec(self):
        return {"family": "affine2", "ell": self.ell, "k": self.k,
                "order": self.aut_order}

    def _label_classes(self, raw):
        out = {}
        for cl in raw:
            c, v = cl.rep
            if self.aut_order == 3 and c == 1 and v == (0, 0):
                cl.label = "C+"
            elif self.aut_order == 3 and c == 2 and v == (0, 0):
                cl.label = "C-"
            elif self.aut_order == 2 and c == 1 and v == (0, 0):
                cl.label = "2"
            elif cl.rep == self.identity:
                cl.label = "1"
            else:
                cl.label = "c%d|%d,%d" % (c, v[0], v[1])
            out[cl.label] = cl
        return out

    def _vec_maps(self, named_mats, det_twists=()):
        """Automorphisms (c,v) -> (c, Mv) and class-swapping
        (c,v) -> (-c, Nv) variants."""
        out = []
        for name, M in named_mats:
            out.append(Automorphism(
                name, lambda g, M=M: (g[0], _matvec(M, g[1], self.L))))
        for name, N in det_twists:
            out.append(Automorphism(
                name, lambda g, N=N: ((-g[0]) % self.aut_order,
                                      _matvec(N, g[1], self.L))))
        return out

    def aut_gens(self, labels):
        if self.aut_order == 2:
            b = primitive_root(self.L) if self.ell != 2 else 1
            mats = [("T1", ((1, 1), (0, 1))), ("T2", ((1, 0), (1, 1))),
                    ("scal%d" % b, ((b, 0), (0, b)))]
            gens = self._vec_maps(mats)
        else:
            # centralizer units x + y*A of A*, plus the A <-> A^2 swap
            gens = self._vec_maps(
                [(n, M) for n, M in self._za_unit_gens()],
                det_twists=[("swap", ((0, 1), (1, 0)))])
        return [a for a in gens if _aut_preserves(self, a, labels)]

    def coset_rep_auts(self, labels):
        if self.aut_order == 2:
            # scalar coset reps of the braidable part, per the normalizer
            # action b:(a,a') -> b(a,a')
            maps = self._vec_maps(
                [("scal%d" % b, ((b, 0), (0, b)))
                 for b in range(1, self.L) if math.gcd(b, self.ell) == 1])
        else:
            units = self._za_units()
            maps = self._vec_maps(
                [("u%d,%d" % (x, y), M) for (x, y), M in units],
                det_twists=[("swap*u%d,%d" % (x, y),
                             _matmul(((0, 1), (1, 0)), M, self.L))
                            for (x, y), M in units])
        return [a for a in maps if _aut_preserves(self, a, labels)]

    def _za_units(self):
        I = ((1, 0), (0, 1))
        out = []
        for x in range(self.L):
            for y in range(self.L):
                M = tuple(tuple((x * I[i][j] + y * A_STAR[i][j]) % self.L
                                for j in range(2)) for i in range(2))
                det = (M[0][0] * M[1][1] - M[0][1] * M[1][0]) % self.L
                if math.gcd(det, self.ell) == 1:
                    out.append(((x, y), M))
        return out

    def _za_unit_gens(self):
        units = self._za_units()
        mats = {M for _, M in units}
        I = ((1, 0), (0, 1))

        def closure_of(gens):
            seen = {I}
            frontier = [I]
            while frontier:
                new = []
                for X in frontier:
                    for g in gens:
                        Y = _matmul(X, g, self.L)
                        if Y not in seen:
                            seen.add(Y)
                            new.append(Y)
                frontier = new
            return seen

        gens, closure = [], {I}
        for (x, y), M in units:
            if M not in closure:
                gens.append(("u%d,%d" % (x, y), M))
                closure = closure_of([g for _, g in gens])
                if len(closure) == len(mats):
                    break
        return gens

    def stabilizer(self, T):
        if T == "involution-cosets" and self.aut_order == 2:
            return [self.identity, (1, (0, 0))]
        if T == "alpha-cosets" and self.aut_order == 3:
            return [(c, (0, 0)) for c in range(3)]
        return super().stabilizer(T)


def _aut_preserves(h, a, labels):
    """Does automorphism a preserve the labelled class multiset?"""
    classes = h.classes()
    want = sorted(labels)
    got = []
    for lab in labels:
        img = a(classes[lab].rep)
        got.append(h.class_of(img).label)
    return sorted(got) == want


# ---------------------------------------------------------------------
# small Heisenberg central extension of affine2(ell,k,2)

class Heis2(GroupHandle):
    """(sign, M(a,a',w)) with M-multiplication adding a1*a2' to w and the
    Z/2 part acting by M(a,a',w) -> M(-a,-a',w)."""

    family = "heis2"

    def __init__(self, ell, k):
        self.ell = ell
        self.k = k
        self.L = ell ** (k + 1)
        self.identity = (0, (0, 0, 0))
        self.order = 2 * self.L ** 3
        super().__init__()

    def _hmul(self, m1, m2):
        a1, p1, w1 = m1
        a2, p2, w2 = m2
        L = self.L
        return ((a1 + a2) % L, (p1 + p2) % L, (w1 + w2 + a1 * p2) % L)

    def _beta(self, m):
        a, p, w = m
        return ((-a) % self.L, (-p) % self.L, w)

    def mul(self, a, b):
        (s1, m1), (s2, m2) = a, b
        if s2 == 1:
            m1 = self._beta(m1)
        return ((s1 + s2) % 2, self._hmul(m1, m2))

    def _all_elements(self):
        R = range(self.L)
        return [(s, (a, p, w)) for s in (0, 1) for a in R for p in R for w in R]

    def to_spec(self):
        return {"family": "heis2", "ell": self.ell, "k": self.k}


# ---------------------------------------------------------------------
# rank-2 exponent-ell^{k+1} central extension carrying the Z/3 action

class K22Z3(GroupHandle):
    """Standard forms x^m y^n w^u with y x = x y w, extended by the order-3
    map alpha: x -> y -> (xy)^{-1}.  For ell = 2 compatibility with alpha
    forces the quaternion-type carry x^L = y^L = w^{s}, 3s = L/2 mod L
    (k=0: x^2 = y^2 = w, giving SL(2,3)); odd ell needs no carry."""

    family = "k22z3"

    def __init__(self, ell, k):
        self.ell = ell
        self.k = k
        self.L = L = ell ** (k + 1)
        if ell == 2:
            self.carry = (L // 2) * inverse_mod(3, L) % L
        else:
            self.carry = 0
        self.identity = (0, (0, 0, 0))
        self.order = 3 * L ** 3
        self._alpha_maps = None
        super().__init__()

    def _kmul(self, k1, k2):
        m1, n1, u1 = k1
        m2, n2, u2 = k2
        L = self.L
        u = u1 + u2 + n1 * m2
        if self.carry:
            u += self.carry * ((m1 + m2) // L + (n1 + n2) // L)
        return ((m1 + m2) % L, (n1 + n2) % L, u % L)

    def _kinv(self, k1):
        m, n, u = k1
        L = self.L
        mi, ni = (-m) % L, (-n) % L
        # solve (m,n,u)(mi,ni,ui) = identity for ui
        ui = -(u + n * mi)
        if self.carry:
            ui -= self.carry * ((m + mi) // L + (n + ni) // L)
        return (mi, ni, ui % L)

    def _alpha_k(self, k1, power):
        """alpha^power on the normal part, via images of x and y."""
        if self._alpha_maps is None:
            x, y = (1, 0, 0), (0, 1, 0)
            xy_inv = self._kinv(self._kmul(x, y))
            img1 = {"x": y, "y": xy_inv}                       # alpha
            img2 = {"x": self._apply_imgs(img1, img1["x"]),    # alpha^2
                    "y": self._apply_imgs(img1, img1["y"])}
            self._alpha_maps = (img1, img2)
        if power % 3 == 0:
            return k1
        imgs = self._alpha_maps[power % 3 - 1]
        return self._apply_imgs(imgs, k1)

    def _apply_imgs(self, imgs, k1):
        m, n, u = k1
        out = (0, 0, u)     # w is alpha-fixed
        xm = self._kpow(imgs["x"], m)
        yn = self._kpow(imgs["y"], n)
        return self._kmul(self._kmul(xm, yn), out)

    def _kpow(self, k1, e):
        assert e >= 0
        out = (0, 0, 0)
        for _ in range(e):
            out = self._kmul(out, k1)
        return out

    def mul(self, a, b):
        (c1, k1), (c2, k2) = a, b
        k1 = self._alpha_k(k1, (-c2) % 3)
        return ((c1 + c2) % 3, self._kmul(k1, k2))

    def alpha(self, g, power=1):
        """The order-3 automorphism extending the x,y images; fixes w."""
        c, k1 = g
        return (c, self._alpha_k(k1, power))

    def _all_elements(self):
        R = range(self.L)
        return [(c, (m, n, u)) for c in range(3) for m in R for n in R for u in R]

    def to_spec(self):
        return {"family": "k22z3", "ell": self.ell, "k": self.k}


# ---------------------------------------------------------------------
# factory / serialization

def make_group(spec):
    """spec: dict like {"family":"affine2","ell":5,"k":0,"order":3}."""
    fam = spec["family"]
    if fam == "alternating":
        return Alternating(spec["n"])
    if fam == "symmetric":
        return Symmetric(spec["n"])
    if fam == "dihedral":
        return Dihedral(spec["m"])
    if fam == "affine2":
        return Affine2(spec["ell"], spec["k"], spec["order"])
    if fam == "heis2":
        return Heis2(spec["ell"], spec["k"])
    if fam == "k22z3":
        return K22Z3(spec["ell"], spec["k"])
    raise ValueError("unsupported family %r" % fam)


def conj_class(h, g):
    return h.conj_class(g)


def generates(h, elems):
    return h.generates(elems)


def center(h):
    return h.center()


def cen_in_Sn(h, T):
    """Cen_{S_n}(G) for the coset representation T, computed as
    N_G(G(1))/G(1).  Returns the quotient order (1 means trivial)."""
    H = frozenset(h.stabilizer(T))
    norm = [g for g in h.elements()
            if frozenset(h.conj(x, g) for x in H) == H]
    q, r = divmod(len(norm), len(H))
    if r:
        raise ConsistencyError("|N_G(H)| not divisible by |H|")
    return q


# ---------------------------------------------------------------------
# generic automorphism fallback (|G| <= 500)

@lru_cache(maxsize=None)
def _automorphism_maps(h_key):
    h = _FALLBACK_REGISTRY[h_key]
    if h.order > 500:
        raise ValueError("no built-in automorphism data and |G|=%d > 500"
                         % h.order)
    gens = h.gens()
    orders = [h.elem_order(g) for g in gens]
    sizes = [len(h.class_of(g).members) for g in gens]
    candidates = []
    for i, g in enumerate(gens):
        candidates.append([x for x in h.elements()
                           if h.elem_order(x) == orders[i]
                           and len(h.class_of(x).members) == sizes[i]])
    auts = []
    for images in product(*candidates):
        m = _extend_hom(h, gens, images)
        if m is not None:
            auts.append(m)
    return auts


def _extend_hom(h, gens, images):
    """Extend gens->images to a homomorphism by closure; None on conflict."""
    e = h.identity
    m = {e: e}
    frontier = [(e, e)]
    while frontier:
        new = []
        for x, fx in frontier:
            for g, fg in zip(gens, images):
                y, fy = h.mul(x, g), h.mul(fx, fg)
                if y in m:
                    if m[y] != fy:
                        return None
                else:
                    m[y] = fy
                    new.append((y, fy))
        frontier = new
    if len(m) != h.order or len(set(m.values())) != h.order:
        return None
    return m


_FALLBACK_REGISTRY = {}


def fallback_aut_gens(h, labels):
    key = tuple(sorted(h.to_spec().items()))
    _FALLBACK_REGISTRY[key] = h
    maps = _automorphism_maps(key)
    auts = [Automorphism("aut%d" % i, lambda g, m=m: m[g])
            for i, m in enumerate(maps)]
    return [a for a in auts if _aut_preserves(h, a, labels)]


# ---------------------------------------------------------------------
# central extension covers and the unique same-order lift

class CentralCover:
    """A central extension ext ->> base with kernel <z> = Z/L.

    `unit` fixes the generator of the kernel that lift values are read
    against (values scale by a unit under that choice); it is chosen once
    per extension kind so the closed-form invariants come out in lowest
    terms: a(a3'-a2') for heis2 involution tuples, m^2+n^2-mn for k22z3
    order-3 triples."""

    def __init__(self, kind, ext, base, unit=1):
        self.kind = kind
        self.ext = ext
        self.base = base
        self.L = ext.L
        self.unit = unit % self.L

    def project(self, ghat):
        c, k = ghat
        return (c, (k[0], k[1]))

    def section(self, g):
        c, v = g
        return (c, (v[0], v[1], 0))

    def central(self, u):
        return (0, (0, 0, u % self.L))

    def central_part(self, ghat):
        c, k = ghat
        if (c, (k[0], k[1])) != self.base.identity:
            raise ValueError("element is not central over the identity")
        return k[2]


def central_extension(kind, ell, k):
    if kind == "heis2":
        if ell == 2:
            raise ValueError("heis2 lifts need ell odd (division by 2)")
        return CentralCover(kind, Heis2(ell, k), Affine2(ell, k, 2), unit=-2)
    if kind == "k22z3":
        if ell == 3:
            raise ValueError("k22z3 lifts need ell != 3 (ell' condition)")
        return CentralCover(kind, K22Z3(ell, k), Affine2(ell, k, 3), unit=-1)
    raise ValueError("unknown extension tag %r" % kind)


def central_lift(cover, g):
    """The unique lift of g with the same order (order coprime to ell)."""
    d = cover.base.elem_order(g)
    if math.gcd(d, cover.ext.ell) != 1:
        raise ValueError("order %d not coprime to %d" % (d, cover.ext.ell))
    ghat = cover.section(g)
    t = cover.central_part(cover.ext.power(ghat, d))
    corr = (-t * inverse_mod(d, cover.L)) % cover.L
    lift = cover.ext.mul(ghat, cover.central(corr))
    if cover.ext.elem_order(lift) != d or cover.project(lift) != g:
        raise ConsistencyError("same-order lift failed for %r" % (g,))
    return lift


# ---------------------------------------------------------------------
# orders of GL2/SL2/PSL2 over Z/N

def gl_orders(N):
    """(|GL2|, |SL2|, |PSL2|) over Z/N by CRT + prime-power counting;
    cross-checked against matrix brute force for N <= 12."""
    if N < 2:
        raise ValueError("N >= 2 required")
    gl = sl = 1
    M = N
    p = 2
    while M > 1:
        if M % p == 0:
            e = 0
            while M % p == 0:
                M //= p
                e += 1
            gl *= p ** (4 * e - 3) * (p - 1) * (p * p - 1)
            sl *= p ** (3 * e - 2) * (p * p - 1)
        p += 1
    psl = sl // (2 if N > 2 else 1)
    if N <= 12:
        bg, bs = _gl_brute(N)
        if (bg, bs) != (gl, sl):
            raise ConsistencyError("gl_orders(%d) CRT %s vs brute %s"
                                   % (N, (gl, sl), (bg, bs)))
    return gl, sl, psl


def _gl_brute(N):
    units = {a for a in range(N) if math.gcd(a, N) == 1}
    gl = sl = 0
    for a in range(N):
        for b in range(N):
            for c in range(N):
                for d in range(N):
                    det = (a * d - b * c) % N
                    if det in units:
                        gl += 1
                        if det == 1:
                            sl += 1
    return gl, sl
