"""Canonical JSON interchange for every value the library trades in.

Output is byte-deterministic: object keys are sorted, rationals are
decimal-free "p/q" strings (plain "p" for integers), floats are rendered
with up to 17 significant digits, and no locale-dependent formatting is
involved anywhere.
"""

import json
import math
from fractions import Fraction

from .baire import BaireVector, ExponentP, P_ZERO
from .bases import BasisKind, NormValue
from .errors import ParseError, ValidationError
from .steps import BushLevels, DyadicStep
from .trees import FiniteTree, Segment, make_tree, node_key
from .verdicts import Verdict


def format_fraction(q):
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_fraction(text):
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"bad rational {text!r}: {exc}")


def format_exponent(p):
    return "0" if p.is_zero else format_fraction(p.value)


def parse_exponent(text):
    q = parse_fraction(text)
    return P_ZERO if q == 0 else ExponentP.of(q)


# ---------------------------------------------------------------------------
# canonical emitter

def _emit(obj, out):
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        if not math.isfinite(obj):
            raise ValidationError("non-finite float in output")
        out.append(format(obj, ".17g"))
    elif isinstance(obj, str):
        out.append(json.dumps(obj, ensure_ascii=True))
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, item in enumerate(obj):
            if i:
                out.append(",")
            _emit(item, out)
        out.append("]")
    elif isinstance(obj, dict):
        out.append("{")
        for i, key in enumerate(sorted(obj)):
            if not isinstance(key, str):
                raise ValidationError("object keys must be strings")
            if i:
                out.append(",")
            out.append(json.dumps(key, ensure_ascii=True))
            out.append(":")
            _emit(obj[key], out)
        out.append("}")
    else:
        raise ValidationError(f"cannot serialize {type(obj).__name__}")


def dumps_canonical(obj):
    out = []
    _emit(jsonable(obj), out)
    return "".join(out)


def jsonable(value):
    """Recursively convert library values to plain JSON-ready data."""
    if isinstance(value, Fraction):
        return format_fraction(value)
    if isinstance(value, NormValue):
        return norm_to_json(value)
    if isinstance(value, Segment):
        return segment_to_json(value)
    if isinstance(value, FiniteTree):
        return tree_to_json(value)
    if isinstance(value, BaireVector):
        return vector_to_json(value)
    if isinstance(value, DyadicStep):
        return step_to_json(value)
    if isinstance(value, Verdict):
        return verdict_to_json(value)
    if isinstance(value, ExponentP):
        return format_exponent(value)
    if isinstance(value, BasisKind):
        return value.value
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = list(value)
        if isinstance(value, (set, frozenset)):
            items = sorted(items)
        return [jsonable(v) for v in items]
    return value


# ---------------------------------------------------------------------------
# per-type converters

def tree_to_json(tree):
    return {"nodes": [list(n) for n in tree]}


def tree_from_json(obj):
    if not isinstance(obj, dict) or "nodes" not in obj:
        raise ValidationError('a tree object needs a "nodes" array')
    nodes = obj["nodes"]
    if not isinstance(nodes, list):
        raise ValidationError('"nodes" must be an array of arrays')
    return make_tree([tuple(int(e) for e in n) for n in nodes])


def vector_to_json(x):
    entries = [
        {"node": list(n), "coef": format_fraction(c)}
        for n, c in sorted(x.coeffs.items(), key=lambda kv: node_key(kv[0]))
    ]
    return {"tree": tree_to_json(x.tree), "entries": entries}


def vector_from_json(obj, tree=None):
    if not isinstance(obj, dict):
        raise ValidationError("a vector object must be a JSON object")
    if tree is None:
        tree = tree_from_json(obj.get("tree", {}))
    entries = obj.get("entries", [])
    coeffs = {}
    for e in entries:
        node = tuple(int(v) for v in e["node"])
        coeffs[node] = coeffs.get(node, Fraction(0)) + parse_fraction(e["coef"])
    return BaireVector(tree, coeffs)


def segment_to_json(seg):
    return {"min": list(seg.min_node), "max": list(seg.max_node)}


def norm_to_json(nv, witness=None):
    doc = {
        "approx": float(nv.approx),
        "exact": (
            {
                "power_base": format_fraction(nv.power_base),
                "inv_exp": format_fraction(nv.inv_exp),
            }
            if nv.is_exact
            else None
        ),
    }
    if witness is not None:
        doc["witness"] = [segment_to_json(s) for s in witness]
    return doc


def verdict_to_json(v):
    return {
        "status": v.status,
        "witness": jsonable(v.witness) if v.witness is not None else None,
        "tested": v.tested,
    }


def step_to_json(f):
    return {
        "resolution": f.resolution,
        "values": [format_fraction(v) for v in f.values],
    }


def step_from_json(obj):
    if not isinstance(obj, dict):
        raise ValidationError("a step object must be a JSON object")
    return DyadicStep(
        int(obj["resolution"]), tuple(parse_fraction(v) for v in obj["values"])
    )


def bush_to_json(bush):
    return {
        "K": bush.top_level,
        "levels": [[step_to_json(f) for f in level] for level in bush.levels],
    }


def bush_from_json(obj):
    if not isinstance(obj, dict) or "levels" not in obj:
        raise ValidationError('a bush object needs a "levels" array')
    levels = tuple(
        tuple(step_from_json(f) for f in level) for level in obj["levels"]
    )
    bush = BushLevels(levels)
    if "K" in obj and int(obj["K"]) != bush.top_level:
        raise ValidationError("bush K field disagrees with the level count")
    return bush


def family_to_json(family):
    from .checkers import StepContext

    ctx = family.context
    if isinstance(ctx, StepContext):
        return {"steps": [step_to_json(f) for f in family.vectors]}
    return {
        "basis": ctx.kind.value,
        "p": format_exponent(ctx.p),
        "tree": tree_to_json(family.vectors[0].tree),
        "vectors": [
            [
                {"node": list(n), "coef": format_fraction(c)}
                for n, c in sorted(x.coeffs.items(), key=lambda kv: node_key(kv[0]))
            ]
            for x in family.vectors
        ],
    }


def family_from_json(obj):
    from .checkers import BaireContext, StepContext, VectorFamily

    if not isinstance(obj, dict):
        raise ValidationError("a family object must be a JSON object")
    if "steps" in obj:
        steps = [step_from_json(f) for f in obj["steps"]]
        return VectorFamily(steps, StepContext())
    kind = BasisKind.from_tag(obj.get("basis", ""))
    p = parse_exponent(obj.get("p", "1"))
    tree = tree_from_json(obj.get("tree", {}))
    vectors = []
    for entries in obj.get("vectors", []):
        coeffs = {}
        for e in entries:
            node = tuple(int(v) for v in e["node"])
            coeffs[node] = coeffs.get(node, Fraction(0)) + parse_fraction(e["coef"])
        vectors.append(BaireVector(tree, coeffs))
    return VectorFamily(vectors, BaireContext(kind, p))


def probe_to_json(verdict):
    return {
        "status": verdict.status,
        "prefix": list(verdict.prefix) if verdict.prefix is not None else None,
    }


def load_json_file(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise ParseError(path, "-", "file not found")
    except json.JSONDecodeError as exc:
        raise ParseError(path, f"line {exc.lineno} col {exc.colno}", exc.msg)
