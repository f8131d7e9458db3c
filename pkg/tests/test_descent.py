from fractions import Fraction as F

import pytest

from gscohom.linalg import RatMatrix
from gscohom.algebra import FinModule
from gscohom.presheaf import TwistedPresheaf, strict_presheaf
from gscohom.gs import GSComplex
from gscohom.deform import deform, deformation_from_cochain
from gscohom.descent import (DescentMachine, PreDescentDatum, check_descent,
                             canonical_free_datum, check_datum_morphism,
                             pointwise_kernel, pointwise_cokernel,
                             q_functor, q_functor_hom_check,
                             verify_pseudonatural, check_semiseparated,
                             ExactnessFailure, CentralityRequired)
from gscohom import presets


def two_point_cover():
    """A geometric fixture: Q x Q on the wings restricting to Q by
    evaluation; every restriction is a flat epimorphism."""
    poset = presets.v_poset()
    cat = poset.category
    qq = presets.two_points()
    q = presets.rationals()
    algebras = {"U0": qq, "U1": qq, "U01": q}
    restr = {}
    for name, m in cat.morphisms.items():
        if m.source == m.target:
            restr[name] = RatMatrix.identity(algebras[m.source].dim)
        else:
            restr[name] = RatMatrix.from_rows([[1, 1]])   # second point value
    return strict_presheaf(cat, algebras, restr)


def global_section_endomorphism(machine, datum, a0, a1):
    """Endomorphisms of the structure datum are left multiplications by a
    matching family of sections: a0 on U0, a1 on U1 with equal restrictions."""
    p = machine.presheaf
    comps = {
        "U0": p.algebras["U0"].left_mult_matrix(a0),
        "U1": p.algebras["U1"].left_mult_matrix(a1),
        "U01": p.algebras["U01"].left_mult_matrix(
            p.restrictions["U01->U0"].apply(a0)),
    }
    assert p.restrictions["U01->U0"].apply(a0) == \
        p.restrictions["U01->U1"].apply(a1)
    return comps


def test_free_datum_is_descent(fixtures):
    for name, p in fixtures.items():
        machine = DescentMachine(p)
        rep = check_descent(canonical_free_datum(machine))
        assert rep["classification"] == "descent", name


def test_zeroed_map_is_pre_descent():
    p = presets.v_poset_commutative()
    machine = DescentMachine(p)
    free = canonical_free_datum(machine)
    maps = dict(free.maps)
    maps["U01->U0"] = RatMatrix.zeros(maps["U01->U0"].rows,
                                      maps["U01->U0"].cols)
    rep = check_descent(PreDescentDatum(machine, free.modules, maps))
    assert rep["classification"] == "pre-descent"


def test_twisted_free_datum_needs_trivialization():
    twisted, x = presets.twisted_diamond()
    machine = DescentMachine(twisted)
    corrected = canonical_free_datum(machine, trivialization=x)
    assert check_descent(corrected)["classification"] == "descent"
    naive = check_descent(canonical_free_datum(machine))
    assert naive["classification"] == "invalid"
    assert any(f[0] == "compatibility" for f in naive["failures"])


def test_deformed_free_datum_with_coboundary_twist():
    # a deformation whose c1 is a simplicial coboundary: the corrected free
    # datum over Q[eps] passes with the twist-corrected identity
    p = presets.diamond_mixed()
    gs = GSComplex(p)
    cat = p.category
    # x1 supported on A->T; c1 = d_simp(x1) as bottom-row cochain
    from gscohom.deform import EquivalencePair
    x1 = {name: (F(0),) * p.algebras[m.source].dim
          for name, m in cat.morphisms.items()}
    x1["A->T"] = (F(1),)
    pair = EquivalencePair(p, {}, {u: tuple(-c for c in v)
                                   for u, v in x1.items()})
    boundary = gs.d(pair.as_cochain(gs))
    triple = deformation_from_cochain(p, boundary)
    defn = deform(p, triple, gs=gs)
    assert defn.twisted.twists        # the twist is nontrivial
    machine = DescentMachine(defn.twisted)
    trivialization = {}
    for name, m in cat.morphisms.items():
        a = p.algebras[m.source]
        trivialization[name] = tuple(a.unit) + x1[name]
    corrected = canonical_free_datum(machine, trivialization=trivialization)
    assert check_descent(corrected)["classification"] == "descent"
    naive = check_descent(canonical_free_datum(machine))
    assert naive["classification"] == "invalid"


def test_kernels_and_cokernels_identity_and_zero():
    p = two_point_cover()
    machine = DescentMachine(p)
    free = canonical_free_datum(machine)
    ident = {o: RatMatrix.identity(free.modules[o].dim)
             for o in p.category.objects}
    zero = {o: RatMatrix.zeros(free.modules[o].dim, free.modules[o].dim)
            for o in p.category.objects}
    k_id = pointwise_kernel(free, free, ident)
    assert all(m.dim == 0 for m in k_id.modules.values())
    k_zero = pointwise_kernel(free, free, zero)
    assert all(k_zero.modules[o].dim == free.modules[o].dim
               for o in p.category.objects)
    assert check_descent(k_zero)["classification"] == "descent"
    c_id = pointwise_cokernel(free, free, ident)
    assert all(m.dim == 0 for m in c_id.modules.values())
    c_zero = pointwise_cokernel(free, free, zero)
    assert check_descent(c_zero)["classification"] == "descent"


def test_kernels_cokernels_of_sampled_morphisms(rng):
    p = two_point_cover()
    machine = DescentMachine(p)
    free = canonical_free_datum(machine)
    checked = 0
    for _ in range(12):
        # sections of Q x Q: values at the two points
        s0, t0 = F(rng.randint(-2, 2)), F(rng.randint(-2, 2))
        s1 = F(rng.randint(-2, 2))
        a0 = (s0, t0 - s0)          # basis (1, e2): value (s0, t0)
        a1 = (s1, t0 - s1)          # matching second-point value t0
        comps = global_section_endomorphism(machine, free, a0, a1)
        assert not check_datum_morphism(free, free, comps)
        ker = pointwise_kernel(free, free, comps)
        cok = pointwise_cokernel(free, free, comps)
        assert check_descent(ker)["classification"] == "descent"
        assert check_descent(cok)["classification"] == "descent"
        checked += 1
    assert checked >= 10


def test_exactness_failure_on_non_flat_restriction():
    # over the dual numbers the restriction to Q is not flat: the kernel of
    # the projection onto the trivial module does not commute with tensoring
    p = presets.v_poset_commutative()
    machine = DescentMachine(p)
    free = canonical_free_datum(machine)
    dn = p.algebras["U0"]
    triv = FinModule(dn, 1, [RatMatrix.identity(1), RatMatrix.zeros(1, 1)])
    q_free = FinModule.free(p.algebras["U01"])
    modules = {"U0": triv, "U1": triv, "U01": q_free}
    maps = {}
    for name, m in p.category.morphisms.items():
        t = machine.tensor(modules[m.target], name)
        tgt = modules[m.source]
        # the canonical scalar map: everything here is 1-dimensional
        maps[name] = RatMatrix(tgt.dim, t.dim,
                               {(0, 0): F(1)} if tgt.dim and t.dim else {})
    target = PreDescentDatum(machine, modules, maps)
    assert check_descent(target)["classification"] == "descent"
    comps = {
        "U0": RatMatrix.from_rows([[1, 0]]),    # DN -> DN/(x)
        "U1": RatMatrix.from_rows([[1, 0]]),
        "U01": RatMatrix.identity(1),
    }
    assert not check_datum_morphism(free, target, comps)
    with pytest.raises(ExactnessFailure):
        pointwise_kernel(free, target, comps)


def test_q_functor_hom_dimensions(rng):
    p = presets.v_poset_commutative()
    machine = DescentMachine(p)
    dn = p.algebras["U0"]
    free = FinModule.free(dn)
    triv = FinModule(dn, 1, [RatMatrix.identity(1), RatMatrix.zeros(1, 1)])
    two = FinModule(dn, 2, [RatMatrix.identity(2), RatMatrix.zeros(2, 2)])
    mods = [free, triv, two]
    pairs = 0
    for a in mods:
        for b in mods:
            presheaf_dim, module_dim = q_functor_hom_check(machine, "U0", a, b)
            assert presheaf_dim == module_dim, (a.dim, b.dim)
            pairs += 1
    assert pairs >= 9


def test_q_functor_free_and_zero():
    p = presets.v_poset_commutative()
    machine = DescentMachine(p)
    dn = p.algebras["U0"]
    qt = q_functor(machine, "U0", FinModule.free(dn))
    # M = A(U): each slice value has the dimension of the local algebra
    for w, t in qt.tensors.items():
        local = p.algebras[p.category.source(w)]
        assert t.dim == local.dim
    zero = q_functor(machine, "U0", FinModule.zero(dn))
    assert all(t.dim == 0 for t in zero.tensors.values())


def test_q_functor_requires_central_twists():
    p = presets.v_poset_triangular()
    cat = p.category
    ident0 = cat.identity("U0")
    elt = (F(1), F(0), F(1))
    twisted = TwistedPresheaf(cat, p.algebras, p.restrictions,
                              {(ident0, ident0): elt})
    machine = DescentMachine(twisted)
    with pytest.raises(CentralityRequired):
        q_functor(machine, "U0", FinModule.free(p.algebras["U0"]))


def test_pseudonaturality_strict_and_twisted():
    # strict: both sides are plain canonical isomorphism composites
    p = presets.v_poset_commutative()
    machine = DescentMachine(p)
    dn = p.algebras["U0"]
    samples = {
        "U0": [FinModule.free(dn),
               FinModule(dn, 1, [RatMatrix.identity(1),
                                 RatMatrix.zeros(1, 1)])],
        "U1": [FinModule.free(dn)],
        "U01": [FinModule.free(p.algebras["U01"])],
    }
    rep = verify_pseudonatural(machine, samples)
    assert rep["checked"] > 0 and not rep["failures"]
    # twisted: the w*(c^{u,v}) right multiplication enters and still matches
    twisted, _ = presets.twisted_diamond()
    machine_t = DescentMachine(twisted)
    samples_t = {o: [FinModule.free(twisted.algebras[o])]
                 for o in twisted.category.objects}
    rep_t = verify_pseudonatural(machine_t, samples_t)
    assert rep_t["checked"] > 0 and not rep_t["failures"]


def test_pseudonaturality_on_deformation_with_twist():
    # a deformation with c1 != 0 needs nondegenerate 2-simplices, so it
    # lives on the diamond (a height-1 poset forces c1 = 0 by reduction);
    # the twists are central over Q[eps] and the coherence holds exactly
    p = presets.diamond_mixed()
    gs = GSComplex(p)
    from gscohom.deform import EquivalencePair
    x1 = {name: (F(0),) * p.algebras[m.source].dim
          for name, m in p.category.morphisms.items()}
    x1["A->T"] = (F(1),)
    pair = EquivalencePair(p, {}, {u: tuple(-c for c in v)
                                   for u, v in x1.items()})
    triple = deformation_from_cochain(p, gs.d(pair.as_cochain(gs)))
    defn = deform(p, triple, gs=gs)
    assert defn.twisted.twists
    machine = DescentMachine(defn.twisted)
    samples = {o: [FinModule.free(defn.twisted.algebras[o])]
               for o in p.category.objects}
    rep2 = verify_pseudonatural(machine, samples)
    assert rep2["checked"] > 0 and not rep2["failures"]


def test_zero_module_pseudonaturality():
    p = presets.v_poset_commutative()
    machine = DescentMachine(p)
    samples = {"U0": [FinModule.zero(p.algebras["U0"])]}
    rep = verify_pseudonatural(machine, samples)
    assert not rep["failures"]


def test_semiseparated_diagnostics():
    p = two_point_cover()
    poset = presets.v_poset()
    rep = check_semiseparated(p, poset)
    for name, flags in rep["flat_epi"].items():
        assert flags["epimorphism"] and flags["flat"], name
    for key, flags in rep["meet_iso"].items():
        assert flags["dim_match"] and flags["product_map_iso"], key
    # the dual-numbers fixture is not flat along its inclusions
    p2 = presets.v_poset_commutative()
    rep2 = check_semiseparated(p2, poset)
    assert not rep2["flat_epi"]["U01->U0"]["flat"]
