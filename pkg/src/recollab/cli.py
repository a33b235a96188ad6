"""Command-line front end: algebra description files, verifier suites, reports.

Input files are JSON algebra documents (quiver presentation, raw structure
constants, or nested constructions); reports are JSON with all numbers exact
(rationals as "p/q" strings) and deterministic byte-for-byte for fixed inputs
and configuration.  Exit codes: 0 success, 1 usage/parse error, 2 failed
precondition (e.g. the idempotent is not stratifying), 3 a theorem instance
was falsified (loud, build-stopping), 4 resource/budget exceeded.

A content-addressed resolution cache can be enabled with --cache-dir or the
RECOLLAB_CACHE_DIR environment variable; cache hits never change numerical
output, and the cache directory is safe to delete wholesale.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from pathlib import Path

from .algebra import (
    Algebra,
    Idempotent,
    QuiverPresentation,
    center,
    corner,
    discover_basic,
    from_quiver,
    ideal_and_quotient,
    opposite,
    radical,
    tensor,
    triangular,
)
from .complexes import ProjectiveResolution
from .errors import (
    BudgetExceeded,
    CertificationFailed,
    InvalidRelation,
    NotFiniteDimensional,
    NotStratifying,
    QuotientIsZero,
    RecollabError,
    UnsupportedField,
)
from .exactfield import Matrix, QQ, field_tag_str, parse_field
from .homology import bar_oracle, hochschild_cohomology, hochschild_homology
from .modules import Bimodule, ModuleMap, RightModule
from .recollement import check_stratifying, from_idempotent
from .verify import (
    cohomology_les,
    gldim_equivalence,
    keller_homology,
    smoothness_equivalence,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PRECONDITION = 2
EXIT_FALSIFIED = 3
EXIT_BUDGET = 4


class ParseError(RecollabError):
    pass


# --------------------------------------------------------------------------
# Algebra documents.
# --------------------------------------------------------------------------


def _schema_path(name):
    return Path(__file__).parent / "schemas" / name


def load_schema(name):
    with open(_schema_path(name), "r", encoding="utf-8") as fh:
        return json.load(fh)


def validate_algebra_doc(doc):
    """Structural validation against the shipped algebra_doc schema."""
    if not isinstance(doc, dict):
        raise ParseError("algebra doc must be an object")
    kind = doc.get("kind")
    if kind not in ("quiver", "structure_constants", "construction"):
        raise ParseError(f"unknown kind {kind!r}")
    if kind != "construction":
        fieldtag = doc.get("field")
        if not isinstance(fieldtag, str):
            raise ParseError("missing field tag")
        parse_field(fieldtag)
    if kind == "quiver":
        if not isinstance(doc.get("vertices"), list) or not doc["vertices"]:
            raise ParseError("quiver needs a nonempty vertex list")
        for arr in doc.get("arrows", []):
            if not all(k in arr for k in ("source", "target", "label")):
                raise ParseError("arrow needs source/target/label")
        for rel in doc.get("relations", []):
            for term in rel:
                if "path" not in term or len(term["path"]) < 2:
                    raise ParseError("relation terms need paths of length >= 2")
    elif kind == "structure_constants":
        for key in ("dim", "table", "unit"):
            if key not in doc:
                raise ParseError(f"structure_constants doc missing {key!r}")
    else:
        op = doc.get("op")
        if op not in ("tensor", "opposite", "enveloping", "triangular",
                      "corner", "quotient"):
            raise ParseError(f"unknown construction op {op!r}")
        args = doc.get("args")
        if not isinstance(args, list) or not args:
            raise ParseError("construction needs args")
        for sub in args:
            validate_algebra_doc(sub)
    return True


def algebra_from_doc(doc):
    """Build an Algebra from a validated document."""
    validate_algebra_doc(doc)
    kind = doc["kind"]
    if kind == "quiver":
        field = parse_field(doc["field"])
        q = QuiverPresentation(
            tuple(doc["vertices"]),
            tuple((a["source"], a["target"], a["label"])
                  for a in doc.get("arrows", [])),
            tuple(tuple((term.get("coeff", 1), tuple(term["path"]))
                        for term in rel)
                  for rel in doc.get("relations", [])),
        )
        return from_quiver(q, field, degree_bound=doc.get("degree_bound", 32))
    if kind == "structure_constants":
        field = parse_field(doc["field"])
        dim = doc["dim"]
        table = doc["table"]
        if len(table) != dim:
            raise ParseError("table size != dim")
        struct = [[tuple(field.parse(str(x)) for x in table[i][j])
                   for j in range(dim)] for i in range(dim)]
        unit = tuple(field.parse(str(x)) for x in doc["unit"])
        alg = Algebra(field, struct, unit, labels=doc.get("labels"))
        if field == QQ:
            try:
                alg = discover_basic(alg)
            except RecollabError:
                pass
        return alg
    op = doc["op"]
    args = [algebra_from_doc(sub) for sub in doc["args"]]
    if op == "opposite":
        return opposite(args[0])
    if op == "tensor":
        out = args[0]
        for nxt in args[1:]:
            out = tensor(out, nxt)
        return out
    if op == "enveloping":
        return tensor(opposite(args[0]), args[0])
    if op == "triangular":
        if len(args) != 2:
            raise ParseError("triangular needs exactly two diagonal algebras")
        bim = _bimodule_from_doc(doc.get("bimodule"), args[1], args[0])
        alg, e1, e2 = triangular(args[0], args[1], bim)
        return alg
    if op == "corner":
        e = parse_idempotent(args[0], doc.get("idempotent"))
        return corner(args[0], e)
    if op == "quotient":
        e = parse_idempotent(args[0], doc.get("idempotent"))
        iq = ideal_and_quotient(args[0], e)
        if iq.ideal_is_whole:
            from .errors import QuotientIsZero
            raise QuotientIsZero(
                "AeA = A: the quotient is the zero ring and cannot feed a "
                "construction that needs a unital algebra")
        return iq.quotient
    raise ParseError(f"unhandled op {op!r}")


def _bimodule_from_doc(spec, a2, a1):
    if spec is None:
        raise ParseError("triangular construction needs a bimodule spec")
    f = a2.field
    dim = spec["dim"]

    def mats(rows_list, count):
        out = []
        for mat in rows_list:
            rows = [[f.parse(str(x)) for x in row] for row in mat]
            out.append(Matrix(f, rows, ncols=dim))
        if len(out) != count:
            raise ParseError("bimodule action count mismatch")
        return tuple(out)

    return Bimodule(a2, a1, dim,
                    mats(spec["left_action"], a2.dim),
                    mats(spec["right_action"], a1.dim))


def parse_idempotent(alg, spec):
    """Idempotent grammar: "e:v", "e:v1+v3", or an explicit coordinate list."""
    if spec is None:
        raise ParseError("an idempotent spec is required")
    f = alg.field
    if isinstance(spec, list):
        coords = tuple(f.parse(str(x)) for x in spec)
        return Idempotent(alg, coords, label="explicit")
    if isinstance(spec, str) and spec.startswith("e:"):
        if alg.basic is None:
            raise ParseError("vertex idempotents need a quiver-presented algebra")
        table = dict(zip(alg.basic.idempotent_labels, alg.basic.idempotent_coords))
        total = None
        for name in spec[2:].split("+"):
            name = name.strip()
            if name not in table:
                raise ParseError(f"unknown vertex {name!r}; have {sorted(table)}")
            v = table[name]
            total = v if total is None else tuple(f.add(x, y)
                                                  for x, y in zip(total, v))
        return Idempotent(alg, total, label=spec)
    if isinstance(spec, str):
        try:
            data = json.loads(spec)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad idempotent spec {spec!r}") from exc
        return parse_idempotent(alg, data)
    raise ParseError(f"bad idempotent spec {spec!r}")


# --------------------------------------------------------------------------
# Resolution cache.
# --------------------------------------------------------------------------


class ResolutionCache:
    """Content-addressed store of serialized resolutions (safe to delete)."""

    def __init__(self, root):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self.hits = 0
        self.misses = 0

    @staticmethod
    def _filename(key):
        alg_hash, mod_hash, depth = key
        h = hashlib.sha256(f"{alg_hash}:{mod_hash}:{depth}".encode()).hexdigest()
        return f"res_{h}.json"

    def get(self, key):
        path = self.root / self._filename(key)
        if not path.exists():
            self.misses += 1
            return None
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        self.hits += 1
        return data

    def put(self, key, res):
        path = self.root / self._filename(key)
        if path.exists():
            return
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(res, fh, sort_keys=True)


def _encode_resolution(res):
    f = res.module.field

    def enc(mat):
        return mat.to_str_rows()

    return {
        "version": 1,
        "levels": [{"dim": p.dim, "action": [enc(m) for m in p.action]}
                   for p in res.modules],
        "diffs": [enc(d.matrix) for d in res.diffs],
        "augmentation": enc(res.augmentation.matrix),
        "tags": [list(t) for t in res.summand_tags],
        "stabilized": res.stabilized,
        "minimal": res.minimal,
        "periodicity": list(res.periodicity) if res.periodicity else None,
        "syzygy_dims": list(res.syzygy_dims),
    }


def _decode_resolution(data, module):
    a = module.algebra
    f = a.field
    mods = []
    for lvl in data["levels"]:
        action = tuple(Matrix.from_str_rows(f, m, ncols=lvl["dim"])
                       for m in lvl["action"])
        mods.append(RightModule(a, lvl["dim"], action, _validate=False))
    diffs = []
    for n, rows in enumerate(data["diffs"], start=1):
        diffs.append(ModuleMap(mods[n], mods[n - 1],
                               Matrix.from_str_rows(f, rows, ncols=mods[n - 1].dim),
                               _validate=False))
    aug = ModuleMap(mods[0], module,
                    Matrix.from_str_rows(f, data["augmentation"], ncols=module.dim),
                    _validate=False)
    return ProjectiveResolution(
        module=module, modules=mods, diffs=diffs, augmentation=aug,
        summand_tags=[tuple(t) for t in data["tags"]],
        stabilized=data["stabilized"], minimal=data["minimal"],
        periodicity=tuple(data["periodicity"]) if data["periodicity"] else None,
        syzygy_dims=list(data["syzygy_dims"]),
    )


def _make_cache(args):
    root = getattr(args, "cache_dir", None) or os.environ.get("RECOLLAB_CACHE_DIR")
    if not root:
        return None
    return _CacheFacade(ResolutionCache(root))


class _CacheFacade:
    """The cache object handed to projective_resolution(cache=...)."""

    def __init__(self, store):
        self.store = store

    def get(self, key, module):
        data = self.store.get(key)
        if data is None:
            return None
        return _decode_resolution(data, module)

    def put(self, key, res):
        if isinstance(res, ProjectiveResolution):
            self.store.put(key, _encode_resolution(res))


# --------------------------------------------------------------------------
# Report helpers.
# --------------------------------------------------------------------------


def _les_to_json(rep, with_matrices=False):
    out = {
        "terms": [{"label": t.label, "degree": t.degree, "dim": t.dim}
                  for t in rep.terms],
        "joints": [{"index": j.index, "exact": j.exact, "assessed": j.assessed,
                    "rank_in": j.rank_in, "rank_out": j.rank_out,
                    "composite_zero": j.composite_zero} for j in rep.joints],
        "exact": rep.exact,
    }
    if with_matrices:
        out["maps"] = [m.to_str_rows() for m in rep.maps]
    return out


def _report_json(payload):
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _emit(args, payload):
    text = _report_json(payload)
    if getattr(args, "report", None):
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text)
    sys.stdout.write(text)


def _doc_hash(doc):
    return hashlib.sha256(json.dumps(doc, sort_keys=True).encode()).hexdigest()


def _load_doc(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}")
    except OSError as exc:
        raise ParseError(f"{path}: {exc}")


# --------------------------------------------------------------------------
# Commands.
# --------------------------------------------------------------------------


def cmd_define(args):
    doc = _load_doc(args.file)
    alg = algebra_from_doc(doc)
    try:
        rad_dim = radical(alg).nrows
    except UnsupportedField:
        rad_dim = None
    idems = {}
    if alg.basic is not None:
        idems = {lbl: i for i, lbl in enumerate(alg.basic.idempotent_labels)}
    payload = {
        "schema": "recollab.define.v1",
        "input_sha256": _doc_hash(doc),
        "field": field_tag_str(alg.field),
        "dim": alg.dim,
        "content_hash": alg.content_hash(),
        "center_dim": center(alg).nrows,
        "radical_dim": rad_dim,
        "vertex_idempotents": sorted(idems),
        "basis_labels": list(alg.basis_labels),
    }
    _emit(args, payload)
    return EXIT_OK


def cmd_stratify(args):
    doc = _load_doc(args.file)
    alg = algebra_from_doc(doc)
    e = parse_idempotent(alg, args.idempotent)
    cache = _make_cache(args)
    report, cb = check_stratifying(alg, e, args.max_degree, cache=cache)
    payload = {
        "schema": "recollab.stratify.v1",
        "input_sha256": _doc_hash(doc),
        "field": field_tag_str(alg.field),
        "algebra_hash": alg.content_hash(),
        "idempotent": str(args.idempotent),
        "report": report.as_dict(),
        "dims": {"A": alg.dim, "Ae": cb.ae.dim, "eA": cb.ea.dim,
                 "AeA": cb.aea.dim, "A/AeA": cb.quotient.dim},
    }
    _emit(args, payload)
    return EXIT_OK


SUITES = ("keller", "cohomology", "smoothness", "gldim")


def cmd_verify(args):
    doc = _load_doc(args.file)
    alg = algebra_from_doc(doc)
    e = parse_idempotent(alg, args.idempotent)
    cache = _make_cache(args)
    wanted = SUITES if args.suite == "all" else (args.suite,)
    t0 = time.monotonic()
    try:
        r = from_idempotent(alg, e, n_max=args.max_degree, cache=cache)
    except NotStratifying as exc:
        payload = {
            "schema": "recollab.verify.v1",
            "input_sha256": _doc_hash(doc),
            "error": "not_stratifying",
            "detail": str(exc),
            "report": exc.report.as_dict() if exc.report else None,
        }
        _emit(args, payload)
        return EXIT_PRECONDITION
    falsified = False
    suites_out = {}
    for suite in SUITES:
        if suite not in wanted:
            continue
        if suite == "keller":
            rep = keller_homology(r, args.max_degree, cache=cache)
            suites_out["keller"] = {
                "les": _les_to_json(rep.les, args.with_matrices),
                "identification_eAe": rep.side2_identification,
                "identification_quotient": rep.side1_identification,
                "additivity": rep.additivity,
                "perfect_status": rep.perfect_status,
                "ok": rep.ok,
            }
            falsified = falsified or not rep.ok
        elif suite == "cohomology":
            rep = cohomology_les(r, args.max_degree, cache=cache)
            suites_out["cohomology"] = {
                "covariant": _les_to_json(rep.seq_covariant, args.with_matrices),
                "contravariant": _les_to_json(rep.seq_contravariant,
                                              args.with_matrices),
                "mixed": _les_to_json(rep.seq_mixed, args.with_matrices),
                "orthogonality": rep.orthogonality,
                "identification_quotient": rep.identification_quotient,
                "identification_corner": rep.identification_corner,
                "ok": rep.ok,
            }
            falsified = falsified or not rep.ok
        elif suite == "smoothness":
            rep = smoothness_equivalence(r, cutoff=args.cutoff, cache=cache)
            suites_out["smoothness"] = rep.as_dict()
            falsified = falsified or rep.verdict == "FALSIFIED"
        elif suite == "gldim":
            rep = gldim_equivalence(r, cutoff=args.cutoff, cache=cache)
            suites_out["gldim"] = rep.as_dict()
            falsified = falsified or rep.verdict == "FALSIFIED"
    payload = {
        "schema": "recollab.verify.v1",
        "input_sha256": _doc_hash(doc),
        "field": field_tag_str(alg.field),
        "algebra_hash": alg.content_hash(),
        "idempotent": str(args.idempotent),
        "config": {"max_degree": args.max_degree, "cutoff": args.cutoff,
                   "suites": sorted(wanted)},
        "stratifying": r.stratifying_report.as_dict(),
        "perfect": {"status": r.perfect.status, "pd": r.perfect.pd.label()},
        "degenerate_quotient": r.is_degenerate_quotient,
        "certificate_ok": r.certificate.ok,
        "suites": suites_out,
        "falsified": falsified,
    }
    if args.timings:
        payload["wall_time_seconds"] = round(time.monotonic() - t0, 3)
    _emit(args, payload)
    return EXIT_FALSIFIED if falsified else EXIT_OK


def cmd_hochschild(args):
    doc = _load_doc(args.file)
    alg = algebra_from_doc(doc)
    cache = _make_cache(args)
    hh = hochschild_homology(alg, args.max_degree, cache=cache)
    hhc = hochschild_cohomology(alg, args.max_degree, cache=cache)
    payload = {
        "schema": "recollab.hochschild.v1",
        "input_sha256": _doc_hash(doc),
        "field": field_tag_str(alg.field),
        "algebra_hash": alg.content_hash(),
        "max_degree": args.max_degree,
        "hh": {str(n): hh.dim(n) for n in range(args.max_degree + 1)},
        "hh_cohomology": {str(n): hhc.dim(n) for n in range(args.max_degree + 1)},
    }
    if args.oracle:
        bar_h, bar_c = bar_oracle(alg, args.max_degree, budget=args.budget)
        agree = {str(n): (hh.dim(n) == bar_h.dim(n)
                          and hhc.dim(n) == bar_c.dim(n))
                 for n in range(args.max_degree + 1)}
        payload["oracle"] = {
            "hh": {str(n): bar_h.dim(n) for n in range(args.max_degree + 1)},
            "hh_cohomology": {str(n): bar_c.dim(n)
                              for n in range(args.max_degree + 1)},
            "agreement": agree,
        }
        if not all(agree.values()):
            _emit(args, payload)
            return EXIT_FALSIFIED
    _emit(args, payload)
    return EXIT_OK


# --------------------------------------------------------------------------
# Entry point.
# --------------------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(
        prog="recollab",
        description="Exact verification of recollement and Hochschild "
                    "theory instances for finite-dimensional algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, idempotent=False, degrees=False):
        sp.add_argument("file", help="algebra description JSON file")
        sp.add_argument("--report", help="also write the JSON report to this path")
        sp.add_argument("--cache-dir", help="resolution cache directory "
                        "(or RECOLLAB_CACHE_DIR)")
        if idempotent:
            sp.add_argument("--idempotent", required=True,
                            help='e.g. "e:2", "e:1+3", or "[0,1,0]"')
        if degrees:
            sp.add_argument("--max-degree", type=int, default=6)

    d = sub.add_parser("define", help="parse a file and summarize the algebra")
    common(d)
    d.set_defaults(func=cmd_define)

    s = sub.add_parser("stratify", help="check the stratifying conditions")
    common(s, idempotent=True, degrees=True)
    s.set_defaults(func=cmd_stratify)

    v = sub.add_parser("verify", help="run theorem-instance verifier suites")
    common(v, idempotent=True, degrees=True)
    v.add_argument("--suite", choices=SUITES + ("all",), default="all")
    v.add_argument("--cutoff", type=int, default=8)
    v.add_argument("--with-matrices", action="store_true",
                   help="embed LES matrices in the report")
    v.add_argument("--timings", action="store_true",
                   help="include wall time (breaks byte-determinism)")
    v.set_defaults(func=cmd_verify)

    h = sub.add_parser("hochschild", help="Hochschild homology and cohomology")
    common(h, degrees=True)
    h.add_argument("--oracle", action="store_true",
                   help="cross-check against the truncated bar complex")
    h.add_argument("--budget", type=int, default=20000,
                   help="per-term dimension budget for the bar oracle")
    h.set_defaults(func=cmd_hochschild)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NotFiniteDimensional, InvalidRelation) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (NotStratifying,) as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except CertificationFailed as exc:
        print(f"FALSIFIED: {exc}", file=sys.stderr)
        return EXIT_FALSIFIED
    except (UnsupportedField, QuotientIsZero) as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
