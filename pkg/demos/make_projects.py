"""Regenerate the JSON project files under demos/projects/.

Each file is a complete CLI input: category, algebras, presheaf, a couple
of named cochains (a genuine 2-cocycle harvested from the computed
cohomology, a deliberately perturbed non-cocycle, and a degree-1 pair), a
module, and descent-datum blocks.
"""

import json
import os

from gscohom import presets
from gscohom.gs import GSComplex
from gscohom.deform import deformation_from_cochain
from gscohom.project import (SCHEMA, algebra_json, presheaf_json, matrix_json,
                             vector_json)

HERE = os.path.dirname(os.path.abspath(__file__))
OUT = os.path.join(HERE, "projects")


def cocycle_blocks(presheaf):
    """A representative 2-cocycle and a perturbed variant, as file blocks."""
    gs = GSComplex(presheaf)
    betti, reps = gs.cohomology(2, "normalized_reduced")
    triple = deformation_from_cochain(presheaf, reps[0])
    block = {
        "m1": {o: matrix_json(m) for o, m in triple.m1.items()
               if not m.is_zero()},
        "f1": {u: matrix_json(m) for u, m in triple.f1.items()
               if not m.is_zero()},
        "c1": {"%s;%s" % k: vector_json(v) for k, v in triple.c1.items()
               if any(v)},
    }
    bad = json.loads(json.dumps(block))
    # perturb: add a unit-slot violation to m1 at the first object
    first = presheaf.category.objects[0]
    a = presheaf.algebras[first]
    rows = bad.setdefault("m1", {}).get(first)
    if rows is None:
        rows = [["0"] * (a.dim ** 2) for _ in range(a.dim)]
    rows[a.dim - 1][0] = "1"   # m1(1, 1) component: breaks normalization
    bad["m1"][first] = rows
    return block, bad, betti


def v_poset_project():
    presheaf = presets.v_poset_commutative()
    cat_block = {"objects": ["U0", "U1", "U01"],
                 "relations": [["U01", "U0"], ["U01", "U1"]]}
    names = {"U0": "dual_numbers", "U1": "dual_numbers", "U01": "rationals"}
    good, bad, betti = cocycle_blocks(presheaf)
    cochains = {
        "rep_cocycle": good,
        "perturbed": bad,
        "zero": {"m1": {}, "f1": {}, "c1": {}},
        # x -> x on A(U0): a normalized cocycle pair, hence a self-equivalence
        "gauge": {
            "g1": {"U0": [["0", "0"], ["0", "1"]]},
            "tau1": {},
        },
    }
    dn = presets.dual_numbers()
    modules = {
        "free_U0": {"object": "U0", "dim": 2,
                    "action": [matrix_json(dn.right_mult_matrix(e))
                               for e in dn.basis()]},
    }
    data = {"structure": {"type": "free"}}
    return {
        "schema": SCHEMA,
        "category": cat_block,
        "algebras": {"dual_numbers": algebra_json(presets.dual_numbers(),
                                                  ["1", "x"]),
                     "rationals": algebra_json(presets.rationals(), ["1"])},
        "presheaf": presheaf_json(presheaf, names),
        "cochains": cochains,
        "modules": modules,
        "data": data,
    }


def one_object_project():
    presheaf = presets.one_object_dual_numbers()
    cat_block = {"objects": ["pt"], "relations": []}
    names = {"pt": "dual_numbers"}
    good, bad, _ = cocycle_blocks(presheaf)
    return {
        "schema": SCHEMA,
        "category": cat_block,
        "algebras": {"dual_numbers": algebra_json(presets.dual_numbers(),
                                                  ["1", "x"])},
        "presheaf": presheaf_json(presheaf, names),
        "cochains": {"rep_cocycle": good, "perturbed": bad},
    }


def diamond_project():
    presheaf = presets.diamond_mixed()
    cat_block = {"objects": ["T", "A", "B", "AB"],
                 "relations": [["A", "T"], ["B", "T"],
                               ["AB", "A"], ["AB", "B"]]}
    names = {"T": "dual_numbers", "A": "rationals", "B": "rationals",
             "AB": "rationals"}
    twisted, x = presets.twisted_diamond()
    data = {
        "structure": {"type": "free"},
    }
    return {
        "schema": SCHEMA,
        "category": cat_block,
        "algebras": {"dual_numbers": algebra_json(presets.dual_numbers(),
                                                  ["1", "x"]),
                     "rationals": algebra_json(presets.rationals(), ["1"])},
        "presheaf": presheaf_json(presheaf, names),
        "data": data,
    }


def twisted_diamond_project():
    twisted, x = presets.twisted_diamond()
    cat_block = {"objects": ["T", "A", "B", "AB"],
                 "relations": [["A", "T"], ["B", "T"],
                               ["AB", "A"], ["AB", "B"]]}
    names = {"T": "dual_numbers", "A": "rationals", "B": "rationals",
             "AB": "rationals"}
    data = {
        "structure": {"type": "free",
                      "trivialization": {m: vector_json(v)
                                         for m, v in x.items()
                                         if any(c != 0 for c in v)}},
        "naive": {"type": "free"},
    }
    return {
        "schema": SCHEMA,
        "category": cat_block,
        "algebras": {"dual_numbers": algebra_json(presets.dual_numbers(),
                                                  ["1", "x"]),
                     "rationals": algebra_json(presets.rationals(), ["1"])},
        "presheaf": presheaf_json(twisted, names),
        "data": data,
    }


def main():
    os.makedirs(OUT, exist_ok=True)
    files = {
        "v_poset.json": v_poset_project(),
        "one_object.json": one_object_project(),
        "diamond.json": diamond_project(),
        "twisted_diamond.json": twisted_diamond_project(),
    }
    for name, payload in files.items():
        path = os.path.join(OUT, name)
        with open(path, "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
        print("wrote", path)


if __name__ == "__main__":
    main()
