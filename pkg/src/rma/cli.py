"""Command-line front end.

Subcommands::

    rma verify-paper [--format text|json] [--golden PATH]
    rma fiber (--builtin NAME | --map PATH) --point v1 v2 ...
    rma dense (--builtin NAME | --map PATH) [--samples N]
    rma emit-curves {asymptotic,singular,levelset} [--c C] [--out PATH]
    rma reduce (--builtin NAME | --map PATH) --target {yagzhev,symmetric} [--out DIR]

Exit codes: 0 ok, 1 verification failure, 2 input error, 3 resource
bound, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import DomainError, ResourceError, RmaError, StructuralError
from .exactpoly import MPoly, format_rational
from .fieldext import (
    AnnihilatorPoly, companion_vector_field, eliminate_minimal_poly, extension_degree,
    find_primitive_element, load_golden_fullR, verify_annihilation,
)
from .pinchuk import (
    p3_chart_point_check, asymptotic_curve, asymptotic_rows, build_pinchuk,
    case2_quadratic_check, csv_text, extra_point_check, jacobian_sos_identity, level_set_param,
    levelset_rows, ranges_match, singular_branches, singular_rows, table1_expected, table1_scan,
    verify_y_axis_image,
)
from .ratfield import RatFunc, RMap
from .realroots import SampleSpec, dense_image_test, fiber_count
from .reductions import PolyMap, symmetric_checks, symmetric_extend, symmetric_fiber_check, to_yagzhev
from .seeds import resolve_seed

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_INPUT = 2
EXIT_RESOURCE = 3
EXIT_IO = 4

BUILTINS = ("pinchuk", "example-uni", "cubic-demo", "square")
TABLE1_VALUES = ("3", "1/2", "0", "-1/2", "-3/4", "-1", "-5/4", "-2", "7")


class InputError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    input_path: str | None = None
    builtin: str | None = None
    seed: int = 0
    sample_budget: int | None = None
    output_format: str = "text"
    out: str | None = None
    expensive: bool = False


# ---------------------------------------------------------------------------
# map loading


@dataclass(frozen=True)
class LoadedMap:
    name: str
    F: RMap
    t: MPoly | None = None
    R: AnnihilatorPoly | None = None


def builtin_map(name: str) -> LoadedMap:
    if name == "pinchuk":
        b = build_pinchuk()
        return LoadedMap(name, b.map(), b.h, b.R)
    x = MPoly.var(0, 1)
    if name == "example-uni":
        return LoadedMap(name, RMap(1, (RatFunc(MPoly.one(1), x * x + 1),), ("x",)), x)
    if name == "cubic-demo":
        return LoadedMap(name, RMap.from_polys([x + x ** 3], ("x",)), x)
    if name == "square":
        return LoadedMap(name, RMap.from_polys([x * x], ("x",)), x)
    raise InputError(f"unknown built-in map {name!r}; choose from {', '.join(BUILTINS)}")


def load_map(cfg: RunConfig) -> LoadedMap:
    if cfg.builtin:
        return builtin_map(cfg.builtin)
    if not cfg.input_path:
        raise InputError("give --map PATH or --builtin NAME")
    try:
        with open(cfg.input_path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {cfg.input_path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{cfg.input_path} is not valid JSON: {exc}") from exc
    try:
        F = RMap.from_json(data)
        t = MPoly.parse(data["t"], F.names) if isinstance(data, dict) and "t" in data else None
    except (RmaError, ValueError, TypeError) as exc:
        raise InputError(f"malformed map in {cfg.input_path}: {exc}") from exc
    return LoadedMap(os.path.basename(cfg.input_path), F, t)


def annihilator_for(m: LoadedMap) -> AnnihilatorPoly:
    if m.R is not None:
        return m.R
    if m.t is not None:
        return eliminate_minimal_poly(m.F, m.t)
    if m.F.domain_arity == 1:
        return eliminate_minimal_poly(m.F, MPoly.var(0, 1))
    search = find_primitive_element(m.F)
    if search.annihilator is None:
        raise DomainError("no primitive element candidate found")
    return search.annihilator


def parse_point(values: Sequence[str]) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(v) for v in values)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad point coordinate: {exc}") from exc


# ---------------------------------------------------------------------------
# verify-paper


def _dR_checks(R: AnnihilatorPoly) -> dict[str, bool]:
    field = companion_vector_field(R)
    P, Q, T = MPoly.gens(3)
    dQ = AnnihilatorPoly(2, field.grad_y[1], R.names).as_mpoly()
    dP = AnnihilatorPoly(2, field.grad_y[0], R.names).as_mpoly()
    dP_on_diag = dP.substitute([T, Q, T])
    return {
        "dR/dQ": dQ == -((T - P) ** 2),
        "dR/dP at P=T": dP_on_diag == T ** 3 * (6 * T * T + 14 * T + 8),
    }


def verification_items(golden: str | None = None) -> list[tuple[str, Callable[[], tuple[bool, str]]]]:
    """Named checks in a fixed order; each returns ``(passed, note)``."""
    cache: dict = {}

    def bundle():
        if "b" not in cache:
            cache["b"] = build_pinchuk()
        return cache["b"]

    def all_true(d: dict) -> tuple[bool, str]:
        bad = [k for k, v in d.items() if not v]
        return not bad, ("failed: " + ", ".join(bad)) if bad else ""

    def degrees():
        b = bundle()
        dp, dq = b.P.total_degree(), b.Q.total_degree()
        return (dp, dq) == (10, 25), f"deg P={dp}, deg Q={dq}"

    def full_r():
        try:
            g = load_golden_fullR(golden)
        except (OSError, RmaError, ValueError) as exc:
            return False, f"golden unreadable: {exc}"
        return g.to_json() == bundle().R.to_json(), f"degree {bundle().R.degree}"

    def annihilation():
        b = bundle()
        return verify_annihilation(b.R, b.map(), b.h), "R(P,Q)(h) = 0"

    def extension():
        d = extension_degree(bundle().R)
        return d == 6, f"degree {d}"

    def curve_points():
        c = asymptotic_curve()
        pts = {s: c.point(Fraction(s)) for s in (1, -1, 0)}
        ok = pts[1] == (0, 0) and pts[-1] == (0, 208) and pts[0] == (-1, Fraction(-163, 4))
        return ok, "s=1,-1,0 -> (0,0), (0,208), (-1,-163/4)"

    def p3():
        vals = asymptotic_curve().intersections_with_P(3)
        ok = vals == [Fraction(-4235, 4), Fraction(16821, 4)]
        return ok, "Q in {-4235/4, 16821/4}"

    def branches():
        out = {}
        for br in singular_branches(bundle()):
            for k, v in br.verify(bundle()).items():
                out[f"{br.name}: {k}"] = v
        return all_true(out)

    def chart_generic():
        (ch,) = level_set_param(None)
        return all_true(ch.verify(bundle()))

    def charts_special():
        out = {}
        for c in (0, -1):
            for ch in level_set_param(c):
                for k, v in ch.verify(bundle()).items():
                    out[f"{ch.name}: {k}"] = v
        return all_true(out)

    def table1():
        bad = []
        for cs in TABLE1_VALUES:
            c = Fraction(cs)
            scans = table1_scan(bundle(), c)
            found = [r for s in scans for r in s.ranges()]
            mono = all(comp.monotone for s in scans for comp in s.components)
            if not (mono and ranges_match(found, table1_expected(c))):
                bad.append(cs)
        return not bad, ("rows failed: " + ", ".join(bad)) if bad else f"{len(TABLE1_VALUES)} rows"

    def chart_point():
        a = p3_chart_point_check()
        ok = a.matches_golden and a.ordering == ("case2 plus", "A", "case1 x<0", "case2 minus")
        pt = ", ".join(format_rational(v) for v in a.point)
        return ok, f"A=({pt}); top to bottom: {', '.join(a.ordering)}"

    return [
        ("bundle identities", lambda: all_true(bundle().invariant_checks())),
        ("jacobian SOS", lambda: (jacobian_sos_identity(bundle()), "j = t^2 + (t+f(13+15h))^2 + f^2")),
        ("degrees", degrees),
        ("fullR", full_r),
        ("annihilation", annihilation),
        ("extension degree", extension),
        ("asymptotic equation", lambda: (asymptotic_curve().identity_holds(), "min_equation(P(s),Q(s)) = 0")),
        ("asymptotic points", curve_points),
        ("extra Zariski point", lambda: all_true(extra_point_check(asymptotic_curve()))),
        ("P=3 intersections", p3),
        ("companion partials", lambda: all_true(_dR_checks(bundle().R))),
        ("singular branches", branches),
        ("case2 quadratic extension", lambda: all_true(case2_quadratic_check(bundle(), -2))),
        ("y-axis line", lambda: (verify_y_axis_image(bundle()), "4Q = 200P + 33")),
        ("generic chart", chart_generic),
        ("special charts", charts_special),
        ("table 1 ranges", table1),
        ("chart point at P=3", chart_point),
    ]


def cmd_verify_paper(cfg: RunConfig, golden: str | None = None) -> tuple[int, str]:
    results = []
    for name, check in verification_items(golden):
        try:
            ok, note = check()
        except RmaError as exc:
            ok, note = False, f"{type(exc).__name__}: {exc}"
        results.append({"name": name, "passed": bool(ok), "note": note})
    failed = [r["name"] for r in results if not r["passed"]]
    if cfg.output_format == "json":
        text = json.dumps({"ok": not failed, "results": results}, indent=2) + "\n"
    else:
        lines = [f"{'PASS' if r['passed'] else 'FAIL'}  {r['name']}" + (f"  ({r['note']})" if r["note"] else "")
                 for r in results]
        lines.append(f"first failure: {failed[0]}" if failed else f"all {len(results)} checks passed")
        text = "\n".join(lines) + "\n"
    return (EXIT_VERIFY if failed else EXIT_OK), text


# ---------------------------------------------------------------------------
# fiber / dense


def cmd_fiber(cfg: RunConfig, point: Sequence[str]) -> tuple[int, str]:
    m = load_map(cfg)
    pt = parse_point(point)
    if len(pt) != m.F.dim:
        raise InputError(f"point has {len(pt)} coordinates, map image has {m.F.dim}")
    R = annihilator_for(m)
    report = fiber_count(R, pt)
    if cfg.output_format == "json":
        return EXIT_OK, json.dumps(report.to_json(), indent=2) + "\n"
    head = [f"map: {m.name}", f"annihilator degree: {R.degree}"]
    if report.status.value == "DegreeDrop":
        head.append("warning: degree drop at this point")
    return EXIT_OK, "\n".join(head + [report.render()]) + "\n"


def cmd_dense(cfg: RunConfig) -> tuple[int, str]:
    m = load_map(cfg)
    R = annihilator_for(m)
    budget = SampleSpec.random_count if cfg.sample_budget is None else cfg.sample_budget
    res = dense_image_test(R, SampleSpec(random_count=budget, seed=cfg.seed))
    if cfg.output_format == "json":
        data = {"verdict": res.verdict.value, "samples": res.samples,
                "point": None if res.point is None else [format_rational(v) for v in res.point]}
        return EXIT_OK, json.dumps(data, indent=2) + "\n"
    return EXIT_OK, f"map: {m.name}\n{res.describe()}\n"


# ---------------------------------------------------------------------------
# emit-curves


def _write(path: str, text: str) -> None:
    try:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc


def cmd_emit_curves(cfg: RunConfig, which: str, c: str | None) -> tuple[int, str]:
    if which == "asymptotic":
        text = csv_text(("s", "P", "Q"), asymptotic_rows())
        if cfg.out:
            _write(cfg.out, text)
            return EXIT_OK, f"wrote {cfg.out}\n"
        return EXIT_OK, text
    if which == "levelset":
        if c is None:
            raise InputError("levelset needs --c VALUE")
        try:
            cv = Fraction(c)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad level value: {exc}") from exc
        text = csv_text(("h", "x", "y", "Q"), levelset_rows(build_pinchuk(), cv))
        if cfg.out:
            _write(cfg.out, text)
            return EXIT_OK, f"wrote {cfg.out}\n"
        return EXIT_OK, text
    if which == "singular":
        if not cfg.out:
            raise InputError("singular writes four files; give --out DIRECTORY")
        try:
            os.makedirs(cfg.out, exist_ok=True)
        except OSError as exc:
            raise OSError(f"cannot create {cfg.out}: {exc}") from exc
        written = []
        for br in singular_branches():
            fname = "singular_" + br.name.replace(" ", "_").replace(">", "gt").replace("<", "lt") + ".csv"
            path = os.path.join(cfg.out, fname)
            _write(path, csv_text(("param", "x", "y"), singular_rows(br)))
            written.append(path)
        return EXIT_OK, "".join(f"wrote {p}\n" for p in written)
    raise InputError(f"unknown curve selector {which!r}")


# ---------------------------------------------------------------------------
# reduce


def cmd_reduce(cfg: RunConfig, target: str) -> tuple[int, str]:
    m = load_map(cfg)
    samples = 32 if cfg.sample_budget is None else cfg.sample_budget
    if target == "yagzhev":
        if not m.F.is_polynomial():
            raise InputError("yagzhev reduction needs a polynomial map")
        if m.name == "pinchuk" and not cfg.expensive:
            raise ResourceError("the Pinchuk reduction is gated; rerun with --expensive")
        F = PolyMap.from_rmap(m.F)
        rep = to_yagzhev(F, seed=cfg.seed, samples=samples)
        out_map = rep.form.base.to_json()
        trace = rep.trace.to_json()
        checks = rep.checks
        summary = [f"yagzhev dimension: {rep.dimension}", f"lowered dimension: {rep.lowered.nvars}"]
    elif target == "symmetric":
        G = symmetric_extend(m.F)
        checks = dict(symmetric_checks(m.F, G))
        checks["fiber_bijection_sampled"] = symmetric_fiber_check(m.F, G, seed=cfg.seed, samples=samples)
        out_map = G.to_json()
        trace = [{"kind": "symmetric_extend", "input_dim": m.F.dim}]
        summary = [f"symmetric dimension: {G.dim}"]
    else:
        raise InputError(f"unknown target {target!r}")
    if cfg.out:
        try:
            os.makedirs(cfg.out, exist_ok=True)
        except OSError as exc:
            raise OSError(f"cannot create {cfg.out}: {exc}") from exc
        _write(os.path.join(cfg.out, "map.json"), json.dumps(out_map, indent=2, sort_keys=True) + "\n")
        _write(os.path.join(cfg.out, "trace.json"), json.dumps(trace, indent=2, sort_keys=True) + "\n")
    ok = all(checks.values())
    if cfg.output_format == "json":
        text = json.dumps({"summary": summary, "checks": checks, "map": out_map}, indent=2, sort_keys=True) + "\n"
    else:
        lines = summary + [f"{'PASS' if v else 'FAIL'}  {k}" for k, v in checks.items()]
        text = "\n".join(lines) + "\n"
    return (EXIT_OK if ok else EXIT_VERIFY), text


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=lambda s: int(s, 0), default=None, help="RNG seed (default 0xA5F00D or $RMA_SEED)")
    common.add_argument("--samples", type=int, default=None,
                        help="sample budget (default 256 random points for dense, 32 for reduce)")
    common.add_argument("--format", choices=("text", "json", "csv"), default="text", dest="output_format")
    common.add_argument("--out", default=None, help="output file or directory")
    common.add_argument("--expensive", action="store_true", help="allow long-running computations")

    source = argparse.ArgumentParser(add_help=False)
    group = source.add_mutually_exclusive_group()
    group.add_argument("--map", dest="input_path", help="map JSON file")
    group.add_argument("--builtin", choices=BUILTINS, help="built-in map")

    parser = argparse.ArgumentParser(prog="rma", description="Exact analysis of real rational maps.")
    sub = parser.add_subparsers(dest="command", required=True)
    vp = sub.add_parser("verify-paper", parents=[common], help="run the Pinchuk identity suite")
    vp.add_argument("--golden", default=None, help="alternate fullR.json to compare against")
    fb = sub.add_parser("fiber", parents=[common, source], help="count real roots over a point")
    fb.add_argument("--point", nargs="+", required=True)
    sub.add_parser("dense", parents=[common, source], help="dense-image test")
    ec = sub.add_parser("emit-curves", parents=[common], help="write curve samples as CSV")
    ec.add_argument("which", choices=("asymptotic", "singular", "levelset"))
    ec.add_argument("--c", default=None, help="level value for levelset")
    rd = sub.add_parser("reduce", parents=[common, source], help="normal-form reductions")
    rd.add_argument("--target", choices=("yagzhev", "symmetric"), required=True)
    return parser


def run(argv: Sequence[str] | None = None) -> tuple[int, str, str]:
    """Run the CLI and return ``(exit_code, stdout_text, stderr_text)``."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (EXIT_OK if exc.code == 0 else EXIT_INPUT), "", ""
    cfg = RunConfig(
        command=args.command,
        input_path=getattr(args, "input_path", None),
        builtin=getattr(args, "builtin", None),
        seed=resolve_seed(args.seed),
        sample_budget=args.samples,
        output_format=args.output_format,
        out=args.out,
        expensive=args.expensive,
    )
    try:
        if cfg.command == "verify-paper":
            code, text = cmd_verify_paper(cfg, args.golden)
        elif cfg.command == "fiber":
            code, text = cmd_fiber(cfg, args.point)
        elif cfg.command == "dense":
            code, text = cmd_dense(cfg)
        elif cfg.command == "emit-curves":
            code, text = cmd_emit_curves(cfg, args.which, args.c)
        else:
            code, text = cmd_reduce(cfg, args.target)
    except InputError as exc:
        return EXIT_INPUT, "", f"error: {exc}\n"
    except ResourceError as exc:
        return EXIT_RESOURCE, "", f"resource limit: {exc}\n"
    except OSError as exc:
        return EXIT_IO, "", f"I/O error: {exc}\n"
    except (StructuralError, DomainError) as exc:
        return EXIT_INPUT, "", f"error: {exc}\n"
    return code, text, ""


def main(argv: Sequence[str] | None = None) -> int:
    code, out, err = run(argv)
    if out:
        sys.stdout.write(out)
    if err:
        sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
