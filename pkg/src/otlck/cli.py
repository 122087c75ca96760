"""Batch interface: ``otlck <command> <input.json>`` writes one JSON report.

Input keys: ``minpoly`` (ascending integer coefficients), ``generators``
(power-basis coordinate vectors), ``lattice`` and ``sublattices`` (integer or
rational vectors), ``options`` (precision_bits, box, max_precision_bits,
display_digits). Numbers are JSON integers or strings "p/q" / "-1.25";
binary floats are rejected. Command-line flags override ``options``.

Exit codes: 0 success or criterion holds, 1 criterion fails, 2 validation or
hypothesis error, 3 indeterminate.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import Any, Optional

from . import lckcheck as L
from .embeddings import MAX_BITS, field_embeddings
from .errors import FullRankSublatticeError, HypothesisError, NotAUnitError, OTError
from .intervals import Interval, fraction_to_decimal
from .loglattice import IntegerLattice, UnitSubgroup, dirichlet_residual, lemma_witness, log_embedding, subgroup_rank
from .numfield import NumberField, validate_field

SCHEMA = 1
EXIT_OK, EXIT_FAILS, EXIT_INVALID, EXIT_INDETERMINATE = 0, 1, 2, 3
DEFAULTS = {"precision_bits": 128, "box": 2, "max_precision_bits": MAX_BITS, "display_digits": 30}

_RATIONAL = re.compile(r"[+-]?\d+(/\d+)?\Z")
_DECIMAL = re.compile(r"[+-]?\d*\.\d+\Z|[+-]?\d+\.\d*\Z")


class InputError(OTError, ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


class _FloatLiteral(str):
    pass


# -- parsing ------------------------------------------------------------------

def parse_rational(value: Any, path: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, _FloatLiteral):
        raise InputError(path, f"binary/float literal {value!r} not allowed; quote it as a decimal or p/q string")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if _RATIONAL.match(text):
            if "/" in text and int(text.split("/")[1]) == 0:
                raise InputError(path, "zero denominator")
            return Fraction(text)
        if _DECIMAL.match(text):
            return Fraction(text)
        raise InputError(path, f"malformed rational {value!r}")
    raise InputError(path, f"expected a number string, got {type(value).__name__}")


def parse_integer(value: Any, path: str) -> int:
    q = parse_rational(value, path)
    if q.denominator != 1:
        raise InputError(path, f"non-integer coefficient {value!r}")
    return q.numerator


def parse_vector(value: Any, path: str, length: Optional[int] = None) -> list[Fraction]:
    if not isinstance(value, list):
        raise InputError(path, "expected a list")
    if length is not None and len(value) != length:
        raise InputError(path, f"expected {length} entries, got {len(value)}")
    return [parse_rational(v, f"{path}[{i}]") for i, v in enumerate(value)]


def load_input(text: str) -> dict:
    try:
        data = json.loads(text, parse_float=_FloatLiteral)
    except json.JSONDecodeError as exc:
        raise InputError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    if not isinstance(data, dict):
        raise InputError("<root>", "expected an object")
    return data


def parse_minpoly(data: dict) -> list[int]:
    if "minpoly" not in data:
        raise InputError("minpoly", "missing")
    raw = data["minpoly"]
    if not isinstance(raw, list) or not raw:
        raise InputError("minpoly", "expected a non-empty list of integer coefficients")
    return [parse_integer(c, f"minpoly[{i}]") for i, c in enumerate(raw)]


def parse_generators(data: dict, K: NumberField):
    raw = data.get("generators", [])
    if not isinstance(raw, list):
        raise InputError("generators", "expected a list of coordinate vectors")
    return [K.element(parse_vector(g, f"generators[{i}]", K.degree)) for i, g in enumerate(raw)]


def parse_lattice(value: Any, path: str, dimension: Optional[int]) -> IntegerLattice:
    if not isinstance(value, list):
        raise InputError(path, "expected a list of vectors")
    vecs = [parse_vector(v, f"{path}[{i}]", dimension) for i, v in enumerate(value)]
    if dimension is None:
        if not vecs:
            raise InputError(path, "cannot infer the dimension of an empty basis")
        dimension = len(vecs[0])
        for i, v in enumerate(vecs):
            if len(v) != dimension:
                raise InputError(f"{path}[{i}]", f"expected {dimension} entries, got {len(v)}")
    return IntegerLattice(vecs, dimension=dimension)


def resolve_options(data: dict, args: argparse.Namespace) -> dict:
    opts = dict(DEFAULTS)
    raw = data.get("options", {})
    if not isinstance(raw, dict):
        raise InputError("options", "expected an object")
    for key, value in raw.items():
        if key not in DEFAULTS:
            raise InputError(f"options.{key}", "unknown option")
        opts[key] = parse_integer(value, f"options.{key}")
    for key in DEFAULTS:
        flag = getattr(args, key, None)
        if flag is not None:
            opts[key] = flag
    if opts["precision_bits"] < 1 or opts["max_precision_bits"] < opts["precision_bits"]:
        raise InputError("options", "need 1 <= precision_bits <= max_precision_bits")
    if opts["box"] < 0:
        raise InputError("options.box", "box radius must be non-negative")
    return opts


# -- serialization -------------------------------------------------------------

def q_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def interval_json(iv: Interval, digits: int) -> list[str]:
    """Outward-rounded decimal endpoints."""
    return [fraction_to_decimal(iv.lo, digits, "down"), fraction_to_decimal(iv.hi, digits, "up")]


def field_json(K: NumberField) -> dict:
    return {"minpoly": [q_str(c) for c in K.minpoly.coeffs], "n": K.degree, "s": K.s, "t": K.t}


def embedding_json(K: NumberField, digits: int) -> list[dict]:
    emb = field_embeddings(K, max(64, 4 * digits))
    out = []
    for i, kind, _ in emb.index_map():
        b = emb.ball(i)
        entry = {"index": i, "kind": kind, "re": interval_json(Interval(b.re - b.rad, b.re + b.rad), digits)}
        if kind != "real":
            entry["im"] = interval_json(Interval(b.im - b.rad, b.im + b.rad), digits)
        if kind == "lower":
            entry["conjugate_of"] = emb.conjugate_index(i)
        out.append(entry)
    return out


def rank_json(r) -> dict:
    return {"rank": r.rank, "status": r.status, "relations": [list(x) for x in r.relations],
            "independent": list(r.independent), "precision_bits": r.precision_bits,
            "lower": r.lower, "upper": r.upper}


def classification_json(c: L.Classification) -> dict:
    out: dict = {"kind": c.kind, "degree": c.degree}
    if c.subfield_signature is not None:
        out["subfield_signature"] = list(c.subfield_signature)
        out["subfield_rank"] = c.subfield_rank
    if c.triples:
        out["triples"] = [list(x) for x in c.triples]
    if c.undecided_triples:
        out["undecided_triples"] = [list(x) for x in c.undecided_triples]
    return out


def dump(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


# -- commands ------------------------------------------------------------------

def _units(data: dict, K: NumberField) -> UnitSubgroup:
    gens = parse_generators(data, K)
    try:
        return UnitSubgroup(K, gens)
    except NotAUnitError as exc:
        raise InputError("generators", str(exc)) from None


def cmd_signature(data: dict, opts: dict) -> tuple[dict, int]:
    K = validate_field(parse_minpoly(data))
    result = {"n": K.degree, "s": K.s, "t": K.t, "embeddings": embedding_json(K, opts["display_digits"])}
    return {"field": field_json(K), "result": result}, EXIT_OK


def cmd_lck_check(data: dict, opts: dict) -> tuple[dict, int]:
    K = validate_field(parse_minpoly(data))
    U = _units(data, K)
    warnings = []
    if len(U) == 0:
        warnings.append("empty generator list: criterion holds vacuously")
    v = L.lck_criterion(U, opts["precision_bits"], opts["max_precision_bits"])
    cls = L.classify_signature(K.s, K.t)
    result = {
        "status": v.status,
        "holds": [h for h in v.holds],
        "overall": v.overall,
        "comparisons": [{"generator": g, "i": i, "j": j, "decision": d.value} for g, i, j, d in v.comparisons],
        "classification": {"label": cls.label, "reason": cls.reason},
    }
    if len(U):
        result["ot_admissibility"] = L.ot_admissibility(U, opts["precision_bits"], opts["max_precision_bits"])
    code = {True: EXIT_OK, False: EXIT_FAILS, None: EXIT_INDETERMINATE}[v.overall]
    undecided = sum(d is L.Decision.INDETERMINATE for *_, d in v.comparisons)
    meta = {"precision_bits": v.precision_bits, "indeterminate": undecided}
    return {"field": field_json(K), "result": result, "certification": meta, "warnings": warnings}, code


def cmd_audit(data: dict, opts: dict) -> tuple[dict, int]:
    K = validate_field(parse_minpoly(data))
    L.check_hypothesis(K.s, K.t)
    U = _units(data, K)
    a = L.nolck_audit(U, opts["box"], opts["precision_bits"], opts["max_precision_bits"])
    result = {
        "box": a.box,
        "enumerated": a.enumerated,
        "totally_positive": a.totally_positive,
        "satisfiers": [{"exponents": list(x.exponents), "sign": x.sign,
                        "classification": classification_json(x.classification)} for x in a.satisfiers],
        "indeterminate": [{"exponents": list(e), "sign": s} for e, s in a.indeterminate],
        "satisfier_rank": rank_json(a.satisfier_rank),
        "conclusion": a.conclusion,
        "subfield_bounds": {str(d): [{"signature": list(b.signature), "rank": b.rank,
                                      "satisfies_bound": b.satisfies_bound}
                                     for b in L.subfield_rank_bound(K.degree, d, K.s, K.t)]
                            for d in range(2, K.degree + 1) if K.degree % d == 0},
    }
    code = EXIT_INDETERMINATE if a.conclusion == "withheld" else EXIT_OK
    meta = {"precision_bits": a.precision_bits, "indeterminate": len(a.indeterminate)}
    return {"field": field_json(K), "result": result, "certification": meta}, code


def cmd_lemma_witness(data: dict, opts: dict) -> tuple[dict, int]:
    if "lattice" not in data:
        raise InputError("lattice", "missing")
    lattice = parse_lattice(data["lattice"], "lattice", None)
    raw = data.get("sublattices", [])
    if not isinstance(raw, list):
        raise InputError("sublattices", "expected a list of bases")
    subs = [parse_lattice(b, f"sublattices[{i}]", lattice.dimension) for i, b in enumerate(raw)]
    w = lemma_witness(lattice, subs)
    result = {"witness": [q_str(x) for x in w], "lattice_rank": lattice.rank,
              "sublattice_ranks": [s.rank for s in subs]}
    return {"result": result}, EXIT_OK


def cmd_rank(data: dict, opts: dict) -> tuple[dict, int]:
    K = validate_field(parse_minpoly(data))
    U = _units(data, K)
    r = subgroup_rank(U, opts["precision_bits"], opts["max_precision_bits"])
    code = EXIT_OK if r.certified else EXIT_INDETERMINATE
    return {"field": field_json(K), "result": rank_json(r),
            "certification": {"precision_bits": r.precision_bits, "indeterminate": int(not r.certified)}}, code


def cmd_log_embedding(data: dict, opts: dict) -> tuple[dict, int]:
    K = validate_field(parse_minpoly(data))
    U = _units(data, K)
    digits = opts["display_digits"]
    rows = []
    for g in U.generators:
        v = log_embedding(g, opts["precision_bits"], opts["max_precision_bits"], check_unit=False)
        res = dirichlet_residual(v)
        rows.append({"entries": [interval_json(e, digits) for e in v.entries],
                     "dirichlet_residual": interval_json(res, digits),
                     "residual_contains_zero": res.contains_zero()})
    return {"field": field_json(K), "result": {"log_vectors": rows},
            "certification": {"precision_bits": opts["precision_bits"], "indeterminate": 0}}, EXIT_OK


COMMANDS = {
    "signature": cmd_signature,
    "lck-check": cmd_lck_check,
    "audit": cmd_audit,
    "lemma-witness": cmd_lemma_witness,
    "rank": cmd_rank,
    "log-embedding": cmd_log_embedding,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="otlck", description="LCK criterion and rank-obstruction audits "
                                                               "for Oeljeklaus-Toma data.")
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("input", help="JSON input file, or - for stdin")
    parser.add_argument("--precision-bits", dest="precision_bits", type=int, default=None,
                        help=f"starting precision (default {DEFAULTS['precision_bits']})")
    parser.add_argument("--box", type=int, default=None, help=f"exponent box radius (default {DEFAULTS['box']})")
    parser.add_argument("--max-precision-bits", dest="max_precision_bits", type=int, default=None,
                        help=f"precision cap (default {DEFAULTS['max_precision_bits']})")
    parser.add_argument("--digits", dest="display_digits", type=int, default=None,
                        help=f"decimal digits for enclosures (default {DEFAULTS['display_digits']})")
    parser.add_argument("--output", default="-", help="report path, or - for stdout (default)")
    return parser


def run(command: str, text: str, args: argparse.Namespace) -> tuple[dict, int]:
    """Execute one command on input text; always returns a report and an exit code."""
    report: dict = {"schema": SCHEMA, "command": command}
    try:
        data = load_input(text)
        opts = resolve_options(data, args)
        report["options"] = opts
        body, code = COMMANDS[command](data, opts)
        report.update(body)
    except HypothesisError as exc:
        report["error"] = {"kind": "hypothesis", "message": str(exc)}
        code = EXIT_INVALID
    except InputError as exc:
        report["error"] = {"kind": "input", "path": exc.path, "message": str(exc)}
        code = EXIT_INVALID
    except FullRankSublatticeError as exc:
        report["error"] = {"kind": "full-rank-sublattice", "message": str(exc)}
        code = EXIT_INVALID
    except OTError as exc:
        reason = getattr(exc, "reason", None)
        report["error"] = {"kind": "validation", "message": str(exc)}
        if reason:
            report["error"]["reason"] = reason
        code = EXIT_INVALID
    report["exit_status"] = code
    return report, code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.input == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            print(f"otlck: cannot read {args.input}: {exc.strerror}", file=sys.stderr)
            return EXIT_INVALID
    report, code = run(args.command, text, args)
    out = dump(report)
    if args.output == "-":
        sys.stdout.write(out)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    if "error" in report:
        print(f"otlck: {report['error']['message']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
