"""Command line front end.

Usage: ``qblowup COMMAND FILE [options]``. Problem files are line oriented::

    # cusp
    ring x, y order grevlex
    ideal I = y^2 - x^3
    ideal J = x, y
    relations = ...                     (optional ambient relations)
    poly f = y^2 - x^3
    divisor D = (x)^2 (y)^3
    divisor: [ {factor: "x", mult: 2}, {factor: "y", mult: 3} ]
    point p = (0, 0)

Exit status: 0 on success (a false verdict is a success), 2 on input
errors, 3 when a resource cap is exhausted.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import re
import sys
from dataclasses import dataclass, field

from . import serialize
from .blowup import (
    BlowupError,
    Center,
    DivisibilityError,
    blowup_charts,
    controlled_transform,
    strict_transform,
    total_transform,
)
from .divisors import (
    DivisorError,
    FactoredDivisor,
    monomial_check,
    separate_components,
    snc_check_at_point,
    snc_check_global,
    strnorm_surface,
)
from .groebner import ResourceCapExceeded, limits
from .ideal import (
    Ideal,
    NotZeroDimensional,
    QuotientPresentation,
    contains_one,
    normal_form,
    radical_membership,
    saturation,
)
from .poly import MonomialOrder, PolynomialSyntaxError, PolyRing, Q
from .resolve import (
    ResolutionError,
    principalize_strict_transform,
    resolve_plane_curve,
)
from .singularity import is_smooth, jacobian_ideal, max_order_locus, singular_locus_ideal
from .verify import verify_resolution

log = logging.getLogger("qblowup")

COMMANDS = (
    "gb", "membership", "saturate", "blowup", "transform", "jacobian-ideal",
    "smooth-check", "singular-locus", "max-order", "snc-check", "monomial-check",
    "separate", "principalize", "strnorm", "resolve-curve", "verify",
)

EXIT_OK, EXIT_INPUT, EXIT_CAP = 0, 2, 3


class InputError(ValueError):
    def __init__(self, message, line=None, column=None):
        loc = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(loc + message)


@dataclass
class ProblemFile:
    ring: PolyRing
    ideals: dict = field(default_factory=dict)
    polys: dict = field(default_factory=dict)
    divisors: dict = field(default_factory=dict)
    points: dict = field(default_factory=dict)
    relations: list = field(default_factory=list)
    params: dict = field(default_factory=dict)

    @property
    def ambient(self) -> QuotientPresentation:
        return QuotientPresentation(self.ring, Ideal(self.ring, self.relations))


@dataclass
class RunConfig:
    order: str | None = None
    output: str = "text"
    max_steps: int = 32
    sat_cap: int = 64
    gb_cap: int = 200000
    max_degree: int = 64
    summary: bool = False
    verbose: bool = False
    ideal: str | None = None
    kind: str = "strict"
    c: int = 0
    n_max: int = 8


_RING = re.compile(r"ring\s+(?P<vars>[^#]*?)(?:\s+order\s+(?P<order>\S+))?\s*$")
_DECL = re.compile(r"(?P<kw>ideal|poly|divisor|point|param)\s+(?P<name>[A-Za-z_][A-Za-z0-9_]*)\s*=\s*(?P<body>.*)$")
_REL = re.compile(r"relations\s*=\s*(?P<body>.*)$")
_DIVLIST = re.compile(r"divisor(?:\s+(?P<name>[A-Za-z_][A-Za-z0-9_]*))?\s*:\s*\[(?P<body>.*)\]\s*$")
_DIVITEM = re.compile(r"\{\s*factor\s*:\s*\"(?P<f>[^\"]*)\"\s*,\s*mult\s*:\s*(?P<m>\d+)\s*\}")
_DIVFACTOR = re.compile(r"\(\s*(?P<f>[^()]*)\)\s*(?:\^\s*(?P<m>\d+))?\s*\*?\s*")


def _parse_poly(ring, text, lineno, col):
    try:
        return ring.parse(text)
    except PolynomialSyntaxError as e:
        raise InputError(str(e).split(" at offset")[0], lineno, col + e.offset + 1) from None


def _split_commas(body, start):
    parts = []
    pos = 0
    for chunk in body.split(","):
        lead = len(chunk) - len(chunk.lstrip())
        parts.append((chunk.strip(), start + pos + lead))
        pos += len(chunk) + 1
    return parts


def parse_problem(text: str, order_override: str | None = None) -> ProblemFile:
    lines = text.splitlines()
    prob = None
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].rstrip()
        stripped = line.strip()
        if not stripped:
            continue
        indent = len(line) - len(line.lstrip())
        if prob is None:
            m = _RING.fullmatch(stripped)
            if not m:
                raise InputError("the first statement must declare the ring", lineno, indent + 1)
            names = [v.strip() for v in m.group("vars").split(",")]
            order = order_override or m.group("order") or "grevlex"
            try:
                ring = PolyRing(tuple(names), MonomialOrder.parse(order))
            except ValueError as e:
                raise InputError(str(e), lineno, indent + 1) from None
            prob = ProblemFile(ring)
            continue
        m = _DIVLIST.fullmatch(stripped)
        if m:
            name = m.group("name") or "D"
            items = []
            off = indent + m.start("body")
            for it in _DIVITEM.finditer(m.group("body")):
                items.append((_parse_poly(prob.ring, it.group("f"), lineno, off + it.start("f")), int(it.group("m"))))
            if not items:
                raise InputError("empty divisor list", lineno, off + 1)
            _unique(prob, name, lineno)
            prob.divisors[name] = items
            continue
        m = _REL.fullmatch(stripped)
        if m:
            for part, col in _split_commas(m.group("body"), indent + m.start("body")):
                prob.relations.append(_parse_poly(prob.ring, part, lineno, col))
            continue
        m = _DECL.fullmatch(stripped)
        if not m:
            raise InputError(f"cannot parse statement {stripped!r}", lineno, indent + 1)
        kw, name, body = m.group("kw"), m.group("name"), m.group("body")
        start = indent + m.start("body")
        _unique(prob, name, lineno)
        if kw == "ideal":
            prob.ideals[name] = Ideal(prob.ring, [_parse_poly(prob.ring, p, lineno, c) for p, c in _split_commas(body, start)])
        elif kw == "poly":
            prob.polys[name] = _parse_poly(prob.ring, body.strip(), lineno, start)
        elif kw == "divisor":
            items = []
            pos = 0
            body_s = body.strip()
            while pos < len(body_s):
                fm = _DIVFACTOR.match(body_s, pos)
                if not fm or fm.end() == pos:
                    raise InputError("expected '(polynomial)^mult'", lineno, start + pos + 1)
                items.append((_parse_poly(prob.ring, fm.group("f"), lineno, start + fm.start("f")), int(fm.group("m") or 1)))
                pos = fm.end()
            prob.divisors[name] = items
        elif kw == "point":
            pm = re.fullmatch(r"\(\s*(.*?)\s*\)", body.strip())
            if not pm:
                raise InputError("expected '(c1, c2, ...)'", lineno, start + 1)
            try:
                coords = [Q(c.strip()) for c in pm.group(1).split(",")]
            except ValueError:
                raise InputError("bad rational coordinate", lineno, start + 1) from None
            if len(coords) != prob.ring.nvars:
                raise InputError("point arity does not match the ring", lineno, start + 1)
            prob.points[name] = coords
        else:
            prob.params[name] = body.strip()
    if prob is None:
        raise InputError("empty problem file")
    return prob


def _unique(prob, name, lineno):
    if any(name in d for d in (prob.ideals, prob.polys, prob.divisors, prob.points, prob.params)):
        raise InputError(f"duplicate name {name!r}", lineno, 1)


# ---------------------------------------------------------------------------
# command helpers


def _pick_ideal(prob, cfg, exclude=()):
    if cfg.ideal:
        if cfg.ideal not in prob.ideals:
            raise InputError(f"no ideal named {cfg.ideal!r}")
        return cfg.ideal, prob.ideals[cfg.ideal]
    for name, I in prob.ideals.items():
        if name not in exclude:
            return name, I
    raise InputError("problem file declares no ideal")


def _nth_ideals(prob, k):
    items = list(prob.ideals.items())
    if len(items) < k:
        raise InputError(f"command needs {k} ideals")
    return items[:k]


def _curve_poly(prob, cfg):
    if prob.polys:
        return next(iter(prob.polys.values()))
    _, I = _pick_ideal(prob, cfg)
    gens = I.nonzero_generators()
    if len(gens) != 1:
        raise InputError("expected a single polynomial")
    return gens[0]


def _presentation(prob, cfg):
    if prob.relations:
        return prob.ambient
    if prob.ideals:
        _, I = _pick_ideal(prob, cfg)
        return QuotientPresentation(prob.ring, I)
    return prob.ambient


def _center(prob, cfg):
    if "center" in prob.ideals:
        return prob.ideals["center"]
    _, I = _pick_ideal(prob, cfg)
    return I


def _divisor(prob):
    if not prob.divisors:
        raise InputError("problem file declares no divisor")
    name, items = next(iter(prob.divisors.items()))
    return FactoredDivisor(prob.ambient, items)


def _chart_json(ch):
    return {
        "generator_index": ch.index,
        "ring": {"vars": list(ch.ring.variables)},
        "relations": serialize.poly_list(ch.relations),
        "exceptional": str(ch.generator),
    }


def _failures(v):
    return [{"components": [i + 1 for i in S], "reason": r} for S, r in v.failures]


def run_command(command: str, prob: ProblemFile, cfg: RunConfig) -> dict:
    if command == "gb":
        name, I = _pick_ideal(prob, cfg)
        return {"ideal": name, "order": str(prob.ring.order), "basis": serialize.basis_list(I)}
    if command == "membership":
        name, I = _pick_ideal(prob, cfg)
        if not prob.polys:
            raise InputError("membership needs a 'poly' declaration")
        pname, f = next(iter(prob.polys.items()))
        return {
            "poly": pname,
            "ideal": name,
            "member": I.contains(f),
            "radical_member": radical_membership(f, I),
            "normal_form": str(normal_form(f, I.groebner())),
        }
    if command == "saturate":
        (n1, I), (n2, J) = _nth_ideals(prob, 2)
        S, k = saturation(I, J)
        return {"ideal": n1, "by": n2, "saturation": serialize.basis_list(S), "exponent": k}
    if command == "blowup":
        step = blowup_charts(Center(prob.ambient, _center(prob, cfg)))
        return {"center": serialize.poly_list(step.center.ideal), "charts": [_chart_json(c) for c in step.charts]}
    if command == "transform":
        C = _center(prob, cfg)
        name, I = _pick_ideal(prob, cfg, exclude=("center",))
        step = blowup_charts(Center(prob.ambient, C))
        charts = []
        for ch in step.charts:
            if cfg.kind == "total":
                T = total_transform(ch, I)
            elif cfg.kind == "controlled":
                T = controlled_transform(ch, I, cfg.c)
            else:
                T = strict_transform(ch, I)
            d = _chart_json(ch)
            d["transform"] = serialize.basis_list(T)
            charts.append(d)
        return {"ideal": name, "kind": cfg.kind, "center": serialize.poly_list(C), "charts": charts}
    if command == "jacobian-ideal":
        return {"jacobian_ideal": serialize.basis_list(jacobian_ideal(_presentation(prob, cfg)))}
    if command == "smooth-check":
        v = is_smooth(_presentation(prob, cfg))
        out = {"smooth": v.smooth}
        if not v.smooth:
            out["singular_points"] = [str(g) for g in v.witness]
        return out
    if command == "singular-locus":
        S = singular_locus_ideal(_presentation(prob, cfg))
        return {"singular_locus": serialize.basis_list(S), "empty": contains_one(S)}
    if command == "max-order":
        mu, locus = max_order_locus(_curve_poly(prob, cfg))
        return {"mu": mu, "locus": serialize.basis_list(locus)}
    if command == "snc-check":
        D = _divisor(prob)
        v = snc_check_global(D)
        out = {"snc": v.snc, "failures": _failures(v)}
        for pname, p in prob.points.items():
            pv = snc_check_at_point(D, p)
            out.setdefault("points", {})[pname] = {"snc": pv.snc, "failures": _failures(pv)}
        return out
    if command == "monomial-check":
        return {"monomial": monomial_check(_divisor(prob))}
    if command == "separate":
        (n1, I1), (n2, I2) = _nth_ideals(prob, 2)
        step, sep = separate_components(prob.ambient, I1, I2)
        return {"separated": sep, "center": serialize.poly_list(step.center.ideal),
                "charts": [_chart_json(c) for c in step.charts]}
    if command == "principalize":
        (n1, I), (n2, J) = _nth_ideals(prob, 2)
        n_max = int(prob.params.get("n_max", cfg.n_max))
        res = principalize_strict_transform(prob.ambient, I, J, n_max)
        charts = []
        for ch, g in zip(res.step.charts, res.generators):
            d = _chart_json(ch)
            d["strict_generator"] = str(g)
            charts.append(d)
        return {"n": res.n, "center": serialize.poly_list(res.step.center.ideal), "charts": charts}
    if command == "strnorm":
        D = _divisor(prob)
        tree, verdicts = strnorm_surface(D, cfg.max_steps)
        return {
            "tree": serialize.tree_json(tree),
            "leaves": [{"path": list(p), "snc": v.snc} for p, v in verdicts.items()],
        }
    if command == "resolve-curve":
        trace = resolve_plane_curve(_curve_poly(prob, cfg), cfg.max_steps)
        doc = serialize.trace_json(trace)
        if cfg.summary:
            doc["summary"] = trace.summary().splitlines()
        return doc
    if command == "verify":
        trace = resolve_plane_curve(_curve_poly(prob, cfg), cfg.max_steps)
        return _verify_doc(trace)
    raise InputError(f"unknown command {command!r}")


def _verify_doc(trace) -> dict:
    rep = verify_resolution(trace)
    return {"verified": rep.ok, "failures": [{"path": list(p), "reason": m} for p, m in rep.failures]}


# keys whose values are generator lists, printed as ideals
_IDEAL_KEYS = {
    "basis", "saturation", "jacobian_ideal", "singular_locus", "locus", "center",
    "relations", "transform", "singular_points",
}


def _fmt_value(v, key=None):
    if isinstance(v, bool):
        return "true" if v else "false"
    if key in _IDEAL_KEYS:
        return "(" + ", ".join(v) + ")"
    if isinstance(v, (list, dict)):
        return json.dumps(v, ensure_ascii=False)
    return str(v)


def render_text(command: str, doc: dict) -> str:
    if command == "resolve-curve":
        lines = []
        if "summary" in doc:
            lines.extend(doc["summary"])
        lines.append(f"blow ups: {len(doc['steps'])}")
        lines.append(f"resolved: {_fmt_value(doc['verdicts']['resolved'])}")
        for leaf in doc["verdicts"]["leaves"]:
            path = "/".join(str(i) for i in leaf["path"]) or "root"
            lines.append(f"leaf {path}: smooth {_fmt_value(leaf['smooth'])}, snc {_fmt_value(leaf['snc'])}")
        return "\n".join(lines) + "\n"
    if command in ("blowup", "transform", "separate", "principalize"):
        lines = [f"{k}: {_fmt_value(v, k)}" for k, v in doc.items() if k != "charts"]
        for ch in doc.get("charts", []):
            lines.append(f"chart {ch['generator_index']}: ring ({', '.join(ch['ring']['vars'])})")
            for k, v in ch.items():
                if k not in ("generator_index", "ring"):
                    lines.append(f"  {k}: {_fmt_value(v, k)}")
        return "\n".join(lines) + "\n"
    if command == "strnorm":
        lines = [f"leaf {'/'.join(str(i) for i in l['path']) or 'root'}: snc {_fmt_value(l['snc'])}" for l in doc["leaves"]]
        return "\n".join(lines) + "\n"
    return "".join(f"{k}: {_fmt_value(v, k)}\n" for k, v in doc.items())


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qblowup", description="Blow ups and curve resolution over the rationals.")
    p.add_argument("command")
    p.add_argument("file", help="problem file (or a JSON trace for 'verify')")
    p.add_argument("--order", help="override the ring's monomial order")
    p.add_argument("--json", action="store_true", help="emit a JSON document")
    p.add_argument("--max-steps", type=int, default=32)
    p.add_argument("--sat-cap", type=int, default=64)
    p.add_argument("--gb-cap", type=int, default=200000, help="S-pair limit")
    p.add_argument("--max-degree", type=int, default=64)
    p.add_argument("--summary", action="store_true")
    p.add_argument("--verbose", action="store_true")
    p.add_argument("--ideal", help="name of the ideal to operate on")
    p.add_argument("--kind", choices=("strict", "total", "controlled"), default="strict")
    p.add_argument("--c", type=int, default=0, help="exceptional power for controlled transforms")
    p.add_argument("--n-max", type=int, default=8)
    return p


def _positive(name, v):
    if v <= 0:
        raise InputError(f"{name} must be positive")


def main(argv=None) -> int:
    level = os.environ.get("QBLOWUP_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    if args.verbose:
        log.setLevel(logging.DEBUG)
    cfg = RunConfig(
        order=args.order, output="json" if args.json else "text", max_steps=args.max_steps,
        sat_cap=args.sat_cap, gb_cap=args.gb_cap, max_degree=args.max_degree, summary=args.summary,
        verbose=args.verbose, ideal=args.ideal, kind=args.kind, c=args.c, n_max=args.n_max,
    )
    try:
        if args.command not in COMMANDS:
            raise InputError(f"unknown command {args.command!r}")
        for name in ("max_steps", "sat_cap", "gb_cap", "max_degree", "n_max"):
            _positive(name.replace("_", "-"), getattr(cfg, name))
        try:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise InputError(f"cannot read {args.file}: {e.strerror}") from None
        with limits(max_pairs=cfg.gb_cap, max_degree=cfg.max_degree, sat_cap=cfg.sat_cap):
            if args.command == "verify" and text.lstrip().startswith("{"):
                try:
                    trace = serialize.trace_from_json(json.loads(text))
                except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
                    raise InputError(f"malformed trace document: {e}") from None
                doc = _verify_doc(trace)
            else:
                prob = parse_problem(text, cfg.order)
                log.debug("parsed problem over %s", prob.ring)
                doc = run_command(args.command, prob, cfg)
    except InputError as e:
        print(f"{args.file}: error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceCapExceeded as e:
        print(f"{args.file}: resource cap exhausted: {e}", file=sys.stderr)
        return EXIT_CAP
    except (BlowupError, DivisorError, ResolutionError, DivisibilityError, NotZeroDimensional, ValueError) as e:
        print(f"{args.file}: error: {e}", file=sys.stderr)
        return EXIT_INPUT
    doc = {"command": args.command, **doc}
    if cfg.output == "json":
        sys.stdout.write(serialize.dumps(doc))
    else:
        sys.stdout.write(render_text(args.command, doc))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
