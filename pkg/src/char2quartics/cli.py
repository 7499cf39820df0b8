"""Command-line front end.

Every subcommand builds a :class:`Report` (text, a JSON-ready dict, and
optionally CSV rows or a DOT graph).  JSON reports carry a ``claim`` tag
naming the statement being checked and whether it held, so result files can
be grepped.  Exit status: 0 on success, 2 on violated preconditions or usage
errors, 1 on internal inconsistencies and failed checks.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from dataclasses import dataclass, field as dc_field
from importlib import resources

import jsonschema

from . import fibrations as fib
from .algebra import BaseField
from .errors import InternalInconsistency, QuarticsError
from .function_fields import (FunctionFieldModel, check_closure, check_prime_data, delta,
                              embed_quadrics, lemma_holds, random_model, rr_basis,
                              rr_basis_text, to_canonical_quartic, validate)
from .isomorphism import (automorphisms, coefficient_bounds, invariant_of, param_bijection,
                          search_transform)
from .resolution import cover_table, resolve

FORMATS = ("text", "json", "csv", "dot")


@dataclass
class CommandConfig:
    m: int = 1
    r: int = 1
    precision: int = 16
    max_ext: int = 4
    degree: int = 0
    workers: int = 1
    format: str = "text"
    seed: int = 0

    def __post_init__(self):
        for name in ("m", "r", "precision", "max_ext", "workers"):
            if getattr(self, name) < 1:
                raise ValueError(f"--{name.replace('_', '-')} must be positive")
        if self.degree < 0:
            raise ValueError("--degree must be non-negative")
        if self.format not in FORMATS:
            raise ValueError(f"--format must be one of {', '.join(FORMATS)}")


@dataclass
class Report:
    command: str
    text: str
    data: dict
    claim: str | None = None
    holds: bool | None = None
    rows: list | None = None          # CSV rows (dicts with identical keys)
    dot: str | None = None
    extra_claims: list = dc_field(default_factory=list)

    @property
    def failed(self):
        return self.holds is False or any(c["holds"] is False for c in self.extra_claims)

    def payload(self):
        claims = ([{"id": self.claim, "holds": self.holds}] if self.claim else []) + self.extra_claims
        return {"command": self.command, "claims": claims, "result": self.data}


def _schema(command):
    try:
        text = resources.files("char2quartics.schemas").joinpath(f"{command}.json").read_text()
    except FileNotFoundError:
        return None
    return json.loads(text)


def render(rep: Report, fmt: str) -> str:
    if fmt == "text":
        return rep.text
    if fmt == "json":
        payload = rep.payload()
        schema = _schema(rep.command)
        if schema is not None:
            jsonschema.validate(payload, schema)
        return json.dumps(payload, indent=2)
    if fmt == "csv":
        if rep.rows is None:
            raise ValueError(f"{rep.command} has no CSV output")
        buf = io.StringIO()
        if rep.rows:
            w = csv.DictWriter(buf, fieldnames=list(rep.rows[0]), lineterminator="\n")
            w.writeheader()
            w.writerows(rep.rows)
        return buf.getvalue().rstrip("\n")
    if rep.dot is None:
        raise ValueError(f"{rep.command} has no DOT output")
    return rep.dot


# -- helpers ------------------------------------------------------------------------

def _base(args) -> BaseField:
    return BaseField.parse(args.base)


def _models(args, cfg):
    """The --model argument, or --random N models of --variant (seeded)."""
    K = _base(args)
    if getattr(args, "random", None):
        if not args.variant:
            raise ValueError("--random needs --variant")
        rng = random.Random(cfg.seed)
        return [random_model(args.variant, K, rng) for _ in range(args.random)]
    if not args.model:
        raise ValueError("give --model or --variant with --random")
    return [FunctionFieldModel.from_text(args.model, K)]


def _model(args):
    return FunctionFieldModel.from_text(args.model, _base(args))


def _field_elements(text, m):
    F = BaseField.parse(f"F{1 << m}")
    return tuple(F(v.strip()).const_value() for v in text.split(","))


# -- function fields ------------------------------------------------------------------

def cmd_validate(args, cfg):
    out, data, ok = [], [], True
    for model in _models(args, cfg):
        pd = validate(model)
        try:
            check_prime_data(pd)
        except InternalInconsistency:
            ok = False
        degs = ",".join(map(str, pd.degrees))
        out.append(f"{model.to_text()}: valid; degrees={degs} "
                   f"residue={pd.residue_text(0)} deltas={','.join(map(str, pd.deltas))}")
        data.append({"model": model.to_text(), **pd.to_dict()})
    return Report("validate", "\n".join(out), {"models": data}, "prime-data.consistent", ok)


def _delta_claim(variant):
    return "delta.genus3" if variant.startswith(("G3", "Q4")) else "delta.quasi-elliptic"


def _delta_expected(variant):
    return (3, 1, 0) if variant.startswith(("G3", "Q4")) else (1, 0, 0)


def cmd_delta(args, cfg):
    out, data, ok, lemma_ok = [], [], True, True
    models = _models(args, cfg)
    for model in models:
        rep = delta(model, cfg.precision)
        pd = validate(model)
        got = (rep.delta_p, rep.delta_p1, rep.delta_p2)
        ok = ok and got == _delta_expected(model.variant)
        lemma = None
        if rep.branch == "ramified":
            lemma = lemma_holds(rep, pd.degrees[0])
            lemma_ok = lemma_ok and lemma
        out.append(rep.text() if len(models) == 1 else f"{model.to_text()}: {rep.text()}")
        d = {"model": model.to_text(), **rep.to_dict()}
        d.pop("expansion", None)
        d["lemma"] = lemma
        data.append(d)
    extra = [{"id": "delta.lemma-inequality", "holds": lemma_ok}]
    return Report("delta", "\n".join(out), {"models": data}, _delta_claim(models[0].variant), ok,
                  extra_claims=extra)


def cmd_rr(args, cfg):
    model = _model(args)
    basis = rr_basis(model, args.level, args.power)
    names = rr_basis_text(basis)
    text = f"H^0(p{args.level}^{args.power}): dim {len(names)}\n  " + " ".join(names)
    data = {"model": model.to_text(), "level": args.level, "power": args.power,
            "basis": names}
    holds = None
    if args.closure:
        res = check_closure(model, args.level, args.power)
        holds = res["independent"] and res["closed"]
        text += f"\n  independent: {res['independent']}  closed under products: {res['closed']}"
        data["closure"] = {"independent": res["independent"], "closed": res["closed"],
                           "failures": [[f.fmt(), g.fmt()] for f, g in res["failures"]]}
    return Report("rr", text, data, "rr.closure" if args.closure else None, holds)


def cmd_embed(args, cfg):
    model = _model(args)
    quads = embed_quadrics(model)
    text = "\n".join(q.text() for q in quads)
    return Report("embed", text, {"model": model.to_text(), "quadrics": [q.text() for q in quads]},
                  "embed.two-quadrics", True)


def cmd_canonical(args, cfg):
    model = _model(args)
    q4 = to_canonical_quartic(model)
    validate(q4)
    return Report("canonical", q4.to_text(), {"model": model.to_text(), "quartic": q4.to_text()},
                  "canonical.quartic-valid", True)


# -- isomorphism ------------------------------------------------------------------------

def cmd_invariant(args, cfg):
    from .isomorphism import Transform, apply_transform
    model = _model(args)
    inv = invariant_of(model)
    text = f"invariant={inv}"
    data = {"model": model.to_text(), "invariant": str(inv)}
    holds = None
    if args.transform:
        tr = Transform.from_text(model.variant, args.transform, model.K)
        image = apply_transform(model, tr)
        inv2 = invariant_of(image)
        holds = inv2 == inv
        text += f"\ntransformed: {image.to_text()}\ninvariant={inv2} preserved={holds}"
        data.update(transformed=image.to_text(), transformed_invariant=str(inv2))
    return Report("invariant", text, data, "invariant.preserved" if args.transform else None,
                  holds)


def cmd_iso(args, cfg):
    m1 = _model(args)
    m2 = FunctionFieldModel.from_text(args.model2, _base(args))
    if m1.variant in ("G3-ii", "Q4-ii") and m2.variant == m1.variant \
            and invariant_of(m1) != invariant_of(m2):
        text = "not isomorphic: invariants differ"
        return Report("iso", text, {"found": False, "transform": None, "candidates": 0,
                                    "reason": "invariants differ"})
    res = search_transform(m1, m2, coefficient_bounds(m1.K, cfg.degree))
    if res.transform is None:
        text = f"no transform within bounds ({res.candidates} candidates)"
    else:
        text = f"isomorphic: {res.transform.text(m1)} ({res.candidates} candidates)"
    return Report("iso", text, res.to_dict(m1))


def cmd_aut(args, cfg):
    model = _model(args)
    auts = automorphisms(model, coefficient_bounds(model.K, cfg.degree))
    text = f"{len(auts)} automorphisms within bounds\n" + "\n".join(
        "  " + a.text(model) for a in auts)
    return Report("aut", text.rstrip(), {"model": model.to_text(), "count": len(auts),
                                         "automorphisms": [a.to_dict(model) for a in auts]})


def cmd_bijection(args, cfg):
    K = _base(args)
    vals = tuple(K(v.strip()) for v in args.values.split(","))
    if len(vals) != 4:
        raise ValueError("--values takes four comma-separated elements")
    back = "inverse" if args.direction == "forward" else "forward"
    out = param_bijection(args.direction, vals)
    again = param_bijection(back, out)
    holds = again == vals
    names = ("a", "b", "c", "d") if args.direction == "forward" else ("a2", "c1", "a0", "c2")
    text = " ".join(f"{n}={v}".replace(" ", "") for n, v in zip(names, out))
    return Report("bijection", text, {"direction": args.direction,
                                      "values": dict(zip(names, map(str, out))),
                                      "round_trip": holds}, "bijection.round-trip", holds)


# -- fibrations ----------------------------------------------------------------------------

def _pencil_claim(spec, point):
    """The smooth pencil fibres of S carry one singular point of multiplicity 2."""
    if spec.family == "S" and point[0] != 0:
        return "pencil.fiber-double-point"
    return None


def cmd_fiber(args, cfg):
    from .errors import NonReduced
    from .plane_geometry import singular_points
    spec = fib.get_family(args.family)
    point = _field_elements(args.point, cfg.m)
    curve = fib.fiber_at(spec, point, cfg.m)
    lines = [f"family={spec.family} base={fib.point_text(spec, point, cfg.m)}",
             f"  fiber: {curve.text()}"]
    data = {"family": spec.family, "base_point": fib.point_text(spec, point, cfg.m),
            "fiber": curve.text()}
    try:
        sings = singular_points(curve, cfg.max_ext)
    except NonReduced as exc:
        lines.append(f"  non-reduced: ({exc.support.text()})^{exc.power}")
        data.update(non_reduced=True, singular_points=[])
        return Report("fiber", "\n".join(lines), data)
    lines += [f"  singular: {s.text()}" for s in sings] or ["  smooth"]
    data.update(non_reduced=False, singular_points=[s.to_dict() for s in sings])
    claim = _pencil_claim(spec, point)
    holds = None
    if claim:
        holds = len(sings) == 1 and sings[0].multiplicity == 2 and sings[0].unibranch_cone
    return Report("fiber", "\n".join(lines), data, claim, holds)


def cmd_classify(args, cfg):
    spec = fib.get_family(args.family)
    point = _field_elements(args.point, cfg.m)
    rep = fib.classify_fiber(spec, point, cfg.m, cfg.max_ext)
    return Report("classify", rep.text(), rep.to_dict(), "fiber.taxonomy", not rep.mismatches,
                  rows=[rep.csv_row()])


def cmd_scan(args, cfg):
    spec = fib.get_family(args.family)
    pred = fib.parse_filter(args.filter)
    rep = fib.scan(spec, cfg.m, pred, cfg.max_ext, cfg.workers)
    return Report("scan", rep.text(), rep.to_dict(), "fiber.taxonomy", not rep.mismatches,
                  rows=[r.csv_row() for r in rep.reports])


def cmd_cover(args, cfg):
    if args.table:
        tab = cover_table()
        return Report("cover", tab.text(), {"mode": "table", **tab.to_dict()},
                      "cover.curve-mapping", tab.ok())
    c = _field_elements(args.c, cfg.m)[0]
    rec = fib.cover_check(c, cfg.m)
    return Report("cover", rec.text(), {"mode": "points", **rec.to_dict()},
                  "cover.bijective-on-points", rec.ok())


# -- resolution ------------------------------------------------------------------------------

def _resolution(args):
    res = resolve(args.family, args.max_rounds)
    name = "S_tilde" if res.family == "S" else "Sprime_tilde"
    return res, name


def cmd_resolve(args, cfg):
    res, name = _resolution(args)
    trace = "\n".join(f"  round {t['round']}: blow up {tuple(t['center'])} in chart {t['chart']}"
                      f" (exponent {t['exponent']})" for t in res.trace())
    text = res.text() + "\ntrace:\n" + trace
    return Report("resolve", text, res.to_dict(), "resolution.fiber-orthogonality", True,
                  dot=res.graph.to_dot(name))


def cmd_graph(args, cfg):
    res, name = _resolution(args)
    g = res.graph
    return Report("graph", g.text(), {"family": res.family, **g.to_dict()},
                  "resolution.fiber-orthogonality", True, dot=g.to_dot(name))


# -- parser ------------------------------------------------------------------------------------

COMMANDS = {
    "validate": (cmd_validate, "check a model's preconditions and print its prime data"),
    "delta": (cmd_delta, "singularity degrees of the singular prime and its restrictions"),
    "rr": (cmd_rr, "Riemann-Roch basis of H^0(p_n^k), optionally with the closure check"),
    "embed": (cmd_embed, "two quadrics in P^3 cutting out a quasi-elliptic curve"),
    "canonical": (cmd_canonical, "canonical plane quartic of a genus-3 model"),
    "invariant": (cmd_invariant, "isomorphism invariant, optionally under a transform"),
    "iso": (cmd_iso, "bounded search for an isomorphism between two models"),
    "aut": (cmd_aut, "automorphisms with coefficients within bounds"),
    "bijection": (cmd_bijection, "G3-ii (a2,c1,a0,c2) <-> Q4-ii (a,b,c,d)"),
    "fiber": (cmd_fiber, "fiber of a family over one base point and its singular points"),
    "classify": (cmd_classify, "classification of one fiber with recomputed evidence"),
    "scan": (cmd_scan, "classify every fiber of a family over GF(2^m)"),
    "cover": (cmd_cover, "the inseparable cover S -> S' on points, or --table on curves"),
    "resolve": (cmd_resolve, "resolve the singular point of S or Sprime"),
    "graph": (cmd_graph, "dual graph of the exceptional fibre of S or Sprime"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", default="text", choices=FORMATS)
    common.add_argument("--m", type=int, default=1, help="field exponent: base points in GF(2^m)")
    common.add_argument("--r", type=int, default=1, help="number of base variables (informational)")
    common.add_argument("--precision", type=int, default=16, help="series precision")
    common.add_argument("--max-ext", type=int, default=4, help="extension bound for point searches")
    common.add_argument("--degree", type=int, default=0,
                        help="max degree of rational-function search coefficients")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="char2quartics",
                                description="Quasi-elliptic and genus-3 function fields in "
                                            "characteristic 2, their quartic fibrations and "
                                            "the resolution of the pencil surfaces.")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")
    parsers = {name: sub.add_parser(name, parents=[common], help=h, description=h)
               for name, (_, h) in COMMANDS.items()}

    for name in ("validate", "delta", "rr", "embed", "canonical", "invariant", "iso", "aut"):
        q = parsers[name]
        q.add_argument("--model", help='e.g. "G3-i a0=0 a2=0 a4=t"')
        q.add_argument("--base", default="F2(t)", help="base field, e.g. F2(t), F4(t,s)")
    for name in ("validate", "delta"):
        parsers[name].add_argument("--variant", help="variant for --random")
        parsers[name].add_argument("--random", type=int, help="check N seeded random models")
    parsers["rr"].add_argument("--level", type=int, default=0, help="n in p_n")
    parsers["rr"].add_argument("--power", type=int, default=2, help="k in p_n^k")
    parsers["rr"].add_argument("--closure", action="store_true")
    parsers["invariant"].add_argument("--transform", help='e.g. "eps=1 gamma=t eta=0 tau=0"')
    parsers["iso"].add_argument("--model2", required=True)
    parsers["bijection"].add_argument("--direction", choices=("forward", "inverse"),
                                      default="forward")
    parsers["bijection"].add_argument("--values", required=True, help="four elements, a,b,c,d")
    parsers["bijection"].add_argument("--base", default="F2(t)")
    for name in ("fiber", "classify", "scan"):
        parsers[name].add_argument("--family", required=True, help="Z, V, Vbar, S or Sprime")
    for name in ("fiber", "classify"):
        parsers[name].add_argument("--point", required=True,
                                   help="base point coordinates, e.g. 1,g,0,g3")
    parsers["scan"].add_argument("--filter", help='e.g. "b!=0,a=1"')
    parsers["cover"].add_argument("--c", default="1", help="pencil parameter in GF(2^m)")
    parsers["cover"].add_argument("--table", action="store_true",
                                  help="map the curves of the resolved surfaces instead")
    for name in ("resolve", "graph"):
        parsers[name].add_argument("--family", default="S", help="S or Sprime")
        parsers[name].add_argument("--max-rounds", type=int, default=12)
    return p


def config_from(args) -> CommandConfig:
    return CommandConfig(m=args.m, r=args.r, precision=args.precision, max_ext=args.max_ext,
                         degree=args.degree, workers=args.workers, format=args.format,
                         seed=args.seed)


def run(argv=None) -> tuple[int, str, str]:
    """(exit status, stdout text, stderr text) without touching the real streams."""
    parser = build_parser()
    err = io.StringIO()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (0 if exc.code == 0 else 2), "", err.getvalue()
    try:
        cfg = config_from(args)
        rep = COMMANDS[args.command][0](args, cfg)
        out = render(rep, cfg.format)
    except InternalInconsistency as exc:
        return 1, "", f"error: internal inconsistency: {exc}"
    except (QuarticsError, ValueError) as exc:
        return 2, "", f"error: {type(exc).__name__}: {exc}\n{parser.prog} {args.command} --help"
    except jsonschema.ValidationError as exc:
        return 1, "", f"error: output does not match its schema: {exc.message}"
    return (1 if rep.failed else 0), out, ""


def main(argv=None) -> int:
    code, out, err = run(argv)
    if out:
        print(out)
    if err:
        print(err, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
