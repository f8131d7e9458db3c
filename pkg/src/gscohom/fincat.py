"""Finite categories, posets with meets, and their simplicial nerves.

Objects and morphisms are interned string identifiers; all orderings used
for output are lexicographic so that every computation downstream is
deterministic.
"""

from dataclasses import dataclass


@dataclass(frozen=True, order=True)
class Morphism:
    name: str
    source: str
    target: str

    def __repr__(self):
        return "%s: %s -> %s" % (self.name, self.source, self.target)


class FiniteCategory:
    """A finite category with an explicit composition table.

    `compose(g, f)` is g after f (for f: A -> B, g: B -> C).  Associativity
    and the unit laws are verified exhaustively at construction.
    """

    def __init__(self, objects, morphisms, composition, identities):
        self.objects = tuple(sorted(objects))
        self.morphisms = {m.name: m for m in morphisms}
        self._comp = dict(composition)      # (g.name, f.name) -> name of g o f
        self.identities = dict(identities)  # object -> morphism name
        self._nerve_cache = {}
        self._validate()

    def _validate(self):
        objs = set(self.objects)
        for m in self.morphisms.values():
            assert m.source in objs and m.target in objs, m
        for obj, i in self.identities.items():
            m = self.morphisms[i]
            assert m.source == obj and m.target == obj
        for g in self.morphisms.values():
            for f in self.morphisms.values():
                if f.target == g.source:
                    h = self.morphisms[self._comp[(g.name, f.name)]]
                    assert h.source == f.source and h.target == g.target
        # unit laws
        for f in self.morphisms.values():
            assert self._comp[(self.identities[f.target], f.name)] == f.name
            assert self._comp[(f.name, self.identities[f.source])] == f.name
        # associativity
        for f in self.morphisms.values():
            for g in self.morphisms.values():
                if g.source != f.target:
                    continue
                for h in self.morphisms.values():
                    if h.source != g.target:
                        continue
                    assert self._comp[(h.name, self._comp[(g.name, f.name)])] == \
                        self._comp[(self._comp[(h.name, g.name)], f.name)]

    def compose(self, g, f):
        """The composite g o f, by morphism name."""
        return self._comp[(g, f)]

    def same_shape(self, other):
        """Structural equality: same objects, morphisms and composition."""
        return (self is other or
                (self.objects == other.objects and
                 self.morphisms == other.morphisms and
                 self._comp == other._comp and
                 self.identities == other.identities))

    def identity(self, obj):
        return self.identities[obj]

    def is_identity(self, name):
        m = self.morphisms[name]
        return self.identities.get(m.source) == name

    def hom_from(self, obj):
        return sorted(m.name for m in self.morphisms.values() if m.source == obj)

    def source(self, name):
        return self.morphisms[name].source

    def target(self, name):
        return self.morphisms[name].target

    def nerve(self, p):
        """All p-simplices: composable chains of p arrows (objects for p=0)."""
        assert p >= 0
        if p in self._nerve_cache:
            return self._nerve_cache[p]
        if p == 0:
            simplices = [Simplex(self, (), obj) for obj in self.objects]
        else:
            simplices = []
            for prev in self.nerve(p - 1):
                tail = prev.codomain
                for m in sorted(self.morphisms.values()):
                    if m.source == tail:
                        simplices.append(Simplex(self, prev.arrows + (m.name,),
                                                 prev.domain))
            simplices.sort(key=lambda s: s.arrows)
        self._nerve_cache[p] = tuple(simplices)
        return self._nerve_cache[p]


class Simplex:
    """A p-simplex: composable arrows u_1, ..., u_p from `domain` to `codomain`."""

    __slots__ = ("cat", "arrows", "domain", "codomain")

    def __init__(self, cat, arrows, domain):
        self.cat = cat
        self.arrows = tuple(arrows)
        self.domain = domain
        tail = domain
        for name in self.arrows:
            assert cat.source(name) == tail, "arrows are not composable"
            tail = cat.target(name)
        self.codomain = tail

    @property
    def degree(self):
        return len(self.arrows)

    def objects(self):
        """The object chain (U_0, ..., U_p)."""
        out = [self.domain]
        for name in self.arrows:
            out.append(self.cat.target(name))
        return tuple(out)

    def composite(self):
        """The composite arrow domain -> codomain (identity for degree 0)."""
        acc = self.cat.identity(self.domain)
        for name in self.arrows:
            acc = self.cat.compose(name, acc)
        return acc

    def face(self, i):
        """The i-th face: drop the first arrow (i=0), the last (i=p), or
        compose u_{i+1} u_i for interior i."""
        p = self.degree
        assert p >= 1
        if not (0 <= i <= p):
            raise IndexError("face index %d out of range for a %d-simplex" % (i, p))
        if i == 0:
            return Simplex(self.cat, self.arrows[1:], self.cat.target(self.arrows[0]))
        if i == p:
            return Simplex(self.cat, self.arrows[:-1], self.domain)
        merged = self.cat.compose(self.arrows[i], self.arrows[i - 1])
        return Simplex(self.cat, self.arrows[:i - 1] + (merged,) + self.arrows[i + 1:],
                       self.domain)

    def is_degenerate(self):
        return any(self.cat.is_identity(a) for a in self.arrows)

    def key(self):
        return (self.domain,) + self.arrows

    def label(self):
        return self.domain if not self.arrows else ";".join(self.arrows)

    def __eq__(self, other):
        return self.cat is other.cat and self.domain == other.domain and \
            self.arrows == other.arrows

    def __hash__(self):
        return hash((id(self.cat), self.domain, self.arrows))

    def __repr__(self):
        return "Simplex(%s)" % (self.label(),)


def poset_category(objects, le_pairs):
    """The category of a poset: one morphism V -> U for each relation V <= U.

    `le_pairs` lists strict relations (V, U); reflexivity and transitivity
    are closed off automatically.  Morphism V -> U is named "V->U".
    """
    objects = sorted(objects)
    le = {(o, o) for o in objects}
    le |= {(v, u) for v, u in le_pairs}
    changed = True
    while changed:
        changed = False
        for (a, b) in list(le):
            for (c, d) in list(le):
                if b == c and (a, d) not in le:
                    le.add((a, d))
                    changed = True
    for (a, b) in le:
        assert (b, a) not in le or a == b, "relation is not antisymmetric"
    morphisms = [Morphism("%s->%s" % (v, u), v, u) for (v, u) in sorted(le)]
    comp = {}
    for g in morphisms:
        for f in morphisms:
            if f.target == g.source:
                comp[(g.name, f.name)] = "%s->%s" % (f.source, g.target)
    identities = {o: "%s->%s" % (o, o) for o in objects}
    return FiniteCategory(objects, morphisms, comp, identities)


class MeetPoset:
    """A finite poset with binary meets, as a category plus a meet table."""

    def __init__(self, objects, le_pairs):
        self.category = poset_category(objects, le_pairs)
        self.objects = self.category.objects
        self._le = {(m.source, m.target) for m in self.category.morphisms.values()}
        self._meets = {}
        for a in self.objects:
            for b in self.objects:
                lower = [c for c in self.objects
                         if (c, a) in self._le and (c, b) in self._le]
                glb = [c for c in lower
                       if all((d, c) in self._le for d in lower)]
                assert len(glb) == 1, "no meet for (%s, %s)" % (a, b)
                self._meets[(a, b)] = glb[0]

    def le(self, a, b):
        return (a, b) in self._le

    def meet(self, a, b):
        return self._meets[(a, b)]

    def meet_all(self, objs):
        objs = list(objs)
        acc = objs[0]
        for o in objs[1:]:
            acc = self.meet(acc, o)
        return acc

    def morphism(self, src, tgt):
        assert self.le(src, tgt)
        return "%s->%s" % (src, tgt)

    def nerve(self, p):
        return self.category.nerve(p)


def slice_category(cat, base_obj):
    """The slice category C/U: objects are arrows w: V -> U (named by w),
    a morphism from w': V' -> U to w: V -> U is v: V' -> V with w v = w'.

    Morphisms are named "v|w" (the underlying arrow plus the target object).
    """
    objects = [m for m in cat.morphisms.values() if m.target == base_obj]
    obj_names = [m.name for m in objects]
    morphisms = []
    under = {}
    for w in objects:
        for v in cat.morphisms.values():
            if v.target != cat.source(w.name):
                continue
            w_prime = cat.compose(w.name, v.name)
            name = "%s|%s" % (v.name, w.name)
            morphisms.append(Morphism(name, w_prime, w.name))
            under[name] = v.name
    comp = {}
    for g in morphisms:
        for f in morphisms:
            if f.target == g.source:
                v = cat.compose(under[g.name], under[f.name])
                comp[(g.name, f.name)] = "%s|%s" % (v, g.target)
    identities = {w: "%s|%s" % (cat.identity(cat.source(w)), w) for w in obj_names}
    sliced = FiniteCategory(obj_names, morphisms, comp, identities)
    sliced.underlying_arrow = under
    sliced.anchor = base_obj
    return sliced
