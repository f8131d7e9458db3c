"""Self-contained JSON project files: category, algebras, presheaf,
named cochains, modules and descent data.

Rationals are serialized as strings "p/q" (or "p" when the denominator is
one); matrices as lists of rows of such strings.  Categories are given
either as a poset ("relations": pairs [V, U] meaning V <= U) or explicitly
with a composition table.  The loader rewrites any algebra whose unit is
not a basis vector into an equivalent basis containing the unit, and
transports all dependent matrices accordingly.
"""

import json
from fractions import Fraction

from .linalg import RatMatrix
from .fincat import FiniteCategory, Morphism, poset_category, MeetPoset
from .algebra import FinAlgebra, FinModule
from .presheaf import TwistedPresheaf

SCHEMA = "gscohom-project/1"


class SchemaError(Exception):
    """The project file violates the input schema; the message carries a
    JSON-pointer-style path."""


def parse_rat(s, path="?"):
    try:
        if isinstance(s, int):
            return Fraction(s)
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise SchemaError("%s: cannot parse rational %r" % (path, s))


def rat_str(x):
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


def parse_matrix(rows, path="?"):
    if not isinstance(rows, list) or not rows:
        raise SchemaError("%s: matrix must be a nonempty list of rows" % path)
    parsed = [[parse_rat(v, path) for v in row] for row in rows]
    return RatMatrix.from_rows(parsed)


def matrix_json(mat):
    return [[rat_str(v) for v in row] for row in mat.to_rows()]


def vector_json(vec):
    return [rat_str(v) for v in vec]


def parse_vector(vals, path="?"):
    return tuple(parse_rat(v, path) for v in vals)


def _twist_key(key):
    """Composable-pair keys: canonical "u;v", with "(u,v)" also accepted."""
    if key.startswith("(") and key.endswith(")") and ";" not in key:
        inner = key[1:-1]
        if inner.count(",") == 1:
            u, v = inner.split(",")
            return u.strip(), v.strip()
    if key.count(";") != 1:
        raise SchemaError("/presheaf/twists/%s: expected 'u;v'" % key)
    u, v = key.split(";")
    return u, v


class Project:
    """A loaded project: category (plus meet-poset view when available),
    presheaf, and the named auxiliary blocks."""

    def __init__(self, category, poset, presheaf, cochains, modules, data,
                 changes):
        self.category = category
        self.poset = poset
        self.presheaf = presheaf
        self.cochains = cochains
        self.modules = modules
        self.data = data
        self.basis_changes = changes


def _load_category(block):
    if "relations" in block:
        return poset_category(block["objects"],
                              [tuple(p) for p in block["relations"]])
    morphisms = [Morphism(m["name"], m["source"], m["target"])
                 for m in block["morphisms"]]
    comp = {}
    for key, val in block["composition"].items():
        g, f = key.split(";")
        comp[(g, f)] = val
    return FiniteCategory(block["objects"], morphisms, comp,
                          block["identities"])


def _load_algebra(name, block):
    basis = block["basis"]
    dim = len(basis)
    path = "/algebras/%s" % name
    zero = [Fraction(0)] * dim
    mult = [[list(zero) for _ in range(dim)] for _ in range(dim)]
    seen = set()
    for entry in block["mult"]:
        i, j, coeffs = entry
        if not (0 <= i < dim and 0 <= j < dim) or len(coeffs) != dim:
            raise SchemaError("%s/mult: bad entry %r" % (path, entry))
        if (i, j) in seen:
            raise SchemaError("%s/mult: duplicate pair (%d, %d)" % (path, i, j))
        seen.add((i, j))
        mult[i][j] = [parse_rat(c, path) for c in coeffs]
    unit = parse_vector(block["unit"], path)
    try:
        alg = FinAlgebra(dim, mult, unit, name=name)
    except AssertionError as exc:
        raise SchemaError("%s: %s" % (path, exc))
    return alg.rebased_with_unit()


def load_project(path_or_dict):
    if isinstance(path_or_dict, dict):
        raw = path_or_dict
    else:
        with open(path_or_dict) as fh:
            raw = json.load(fh)
    if raw.get("schema") != SCHEMA:
        raise SchemaError("/schema: expected %r" % SCHEMA)
    for key in ("category", "algebras", "presheaf"):
        if key not in raw:
            raise SchemaError("/%s: missing block" % key)
    poset = None
    if "relations" in raw["category"]:
        try:
            poset = MeetPoset(raw["category"]["objects"],
                              [tuple(p) for p in raw["category"]["relations"]])
        except AssertionError:
            poset = None
    # share one category instance between the poset and presheaf views
    category = poset.category if poset is not None \
        else _load_category(raw["category"])

    algebras = {}
    changes = {}
    for name, block in raw["algebras"].items():
        algebras[name], changes[name] = _load_algebra(name, block)

    pblock = raw["presheaf"]
    assignment = pblock["algebras"]
    for obj in category.objects:
        if obj not in assignment:
            raise SchemaError("/presheaf/algebras/%s: missing" % obj)
        if assignment[obj] not in algebras:
            raise SchemaError("/presheaf/algebras/%s: unknown algebra %r"
                              % (obj, assignment[obj]))
    alg_of = {obj: algebras[assignment[obj]] for obj in category.objects}
    chg = {obj: changes[assignment[obj]] for obj in category.objects}
    chg_inv = {obj: chg[obj].inverse() for obj in category.objects}

    restrictions = {}
    for name in category.morphisms:
        m = category.morphisms[name]
        if name not in pblock["restrictions"]:
            if m.source == m.target and category.is_identity(name):
                restrictions[name] = RatMatrix.identity(alg_of[m.source].dim)
                continue
            raise SchemaError("/presheaf/restrictions/%s: missing" % name)
        mat = parse_matrix(pblock["restrictions"][name],
                           "/presheaf/restrictions/%s" % name)
        if mat.rows != alg_of[m.source].dim or mat.cols != alg_of[m.target].dim:
            raise SchemaError("/presheaf/restrictions/%s: shape mismatch" % name)
        restrictions[name] = chg_inv[m.source] @ mat @ chg[m.target]

    twists = {}
    for key, coeffs in pblock.get("twists", {}).items():
        u, v = _twist_key(key)
        if u not in category.morphisms or v not in category.morphisms:
            raise SchemaError("/presheaf/twists/%s: unknown morphisms" % key)
        w_obj = category.source(v)
        twists[(u, v)] = chg_inv[w_obj].apply(
            parse_vector(coeffs, "/presheaf/twists/%s" % key))
    z = {}
    for obj, coeffs in pblock.get("z", {}).items():
        z[obj] = chg_inv[obj].apply(parse_vector(coeffs, "/presheaf/z/%s" % obj))
    presheaf = TwistedPresheaf(category, alg_of, restrictions, twists, z)

    cochains = {}
    for name, block in raw.get("cochains", {}).items():
        cochains[name] = _load_cochain(name, block, category, alg_of,
                                       chg, chg_inv)
    modules = {}
    for name, block in raw.get("modules", {}).items():
        path = "/modules/%s" % name
        obj = block["object"]
        if obj not in category.objects:
            raise SchemaError("%s/object: unknown %r" % (path, obj))
        alg = alg_of[obj]
        dim = block["dim"]
        mats = block["action"]
        if len(mats) != alg.dim:
            raise SchemaError("%s/action: need one matrix per basis element"
                              % path)
        raw_action = [parse_matrix(m, path + "/action") for m in mats]
        action = []
        for j in range(alg.dim):
            col = chg[obj].column(j)
            acc = RatMatrix.zeros(dim, dim)
            for k, c in enumerate(col):
                if c:
                    acc = acc + raw_action[k].scale(c)
            action.append(acc)
        try:
            modules[name] = (obj, FinModule(alg, dim, action))
        except AssertionError as exc:
            raise SchemaError("%s: not a module: %s" % (path, exc))
    data = {}
    for name, block in raw.get("data", {}).items():
        data[name] = block
    return Project(category, poset, presheaf, cochains, modules, data, chg)


def _load_cochain(name, block, category, alg_of, chg, chg_inv):
    path = "/cochains/%s" % name
    out = {"name": name}
    if "m1" in block or "f1" in block or "c1" in block:
        m1 = {}
        for obj, rows in block.get("m1", {}).items():
            mat = parse_matrix(rows, path + "/m1/" + obj)
            d = alg_of[obj].dim
            if (mat.rows, mat.cols) != (d, d * d):
                raise SchemaError("%s/m1/%s: shape mismatch" % (path, obj))
            m1[obj] = chg_inv[obj] @ mat @ chg[obj].kron(chg[obj])
        f1 = {}
        for mname, rows in block.get("f1", {}).items():
            m = category.morphisms[mname]
            mat = parse_matrix(rows, path + "/f1/" + mname)
            f1[mname] = chg_inv[m.source] @ mat @ chg[m.target]
        c1 = {}
        for key, coeffs in block.get("c1", {}).items():
            u1, u2 = key.split(";")
            dom = category.source(u1)
            c1[(u1, u2)] = chg_inv[dom].apply(
                parse_vector(coeffs, path + "/c1/" + key))
        out.update({"kind": "triple", "m1": m1, "f1": f1, "c1": c1})
    elif "g1" in block or "tau1" in block:
        g1 = {}
        for obj, rows in block.get("g1", {}).items():
            mat = parse_matrix(rows, path + "/g1/" + obj)
            g1[obj] = chg_inv[obj] @ mat @ chg[obj]
        tau1 = {}
        for mname, coeffs in block.get("tau1", {}).items():
            src = category.source(mname)
            tau1[mname] = chg_inv[src].apply(
                parse_vector(coeffs, path + "/tau1/" + mname))
        out.update({"kind": "pair", "g1": g1, "tau1": tau1})
    else:
        raise SchemaError("%s: expected (m1, f1, c1) or (g1, tau1)" % path)
    return out


# -- writers (used by the preset generator and tests)

def algebra_json(alg, basis_names=None):
    mult = []
    for i in range(alg.dim):
        for j in range(alg.dim):
            coeffs = alg.mult[i][j]
            if any(coeffs):
                mult.append([i, j, [rat_str(c) for c in coeffs]])
    return {
        "basis": basis_names or ["e%d" % i for i in range(alg.dim)],
        "mult": mult,
        "unit": vector_json(alg.unit),
    }


def presheaf_json(presheaf, algebra_names):
    cat = presheaf.category
    out = {
        "algebras": {obj: algebra_names[obj] for obj in cat.objects},
        "restrictions": {name: matrix_json(mat)
                         for name, mat in presheaf.restrictions.items()},
    }
    twists = {"%s;%s" % key: vector_json(val)
              for key, val in presheaf.twists.items()}
    if twists:
        out["twists"] = twists
    zs = {obj: vector_json(val) for obj, val in presheaf.z.items()}
    if zs:
        out["z"] = zs
    return out


def project_json(category_block, algebras, presheaf, algebra_names,
                 cochains=None, modules=None, data=None):
    out = {
        "schema": SCHEMA,
        "category": category_block,
        "algebras": {name: algebra_json(alg)
                     for name, alg in algebras.items()},
        "presheaf": presheaf_json(presheaf, algebra_names),
    }
    if cochains:
        out["cochains"] = cochains
    if modules:
        out["modules"] = modules
    if data:
        out["data"] = data
    return out
