"""Command-line front end: ``cherednik <subcommand> ...``.

Exit status is 0 on success, 1 when a certification fails and 2 on usage
errors.  Saito frames are cached under ``$CHEREDNIK_CACHE`` (default
``./.cache``), keyed by a hash of the group descriptor.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .coxeter import parse_group
from .dunkl import is_singular
from .field import format_rational, parse_rational
from .poly import MultiPoly
from .residues import (
    ComplexGroupSpec,
    complex_dunkl_all,
    complex_group_action_check,
    complex_singular_family,
    residue_twisted_period,
)
from .saito import SaitoFrame, saito_frame, verify_saito
from .serialize import SchemaError, dumps, family_to_json, frame_from_json, frame_to_json, loads_poly, poly_to_json
from .shift import certify_family, homogeneous_twisted_periods, singular_family

__all__ = ["RunReport", "UsageError", "build_parser", "run", "main", "load_frame"]

CACHE_VERSION = 1


class UsageError(ValueError):
    pass


@dataclass
class RunReport:
    command: list[str]
    params: dict = field(default_factory=dict)
    outputs: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)
    seconds: float = 0.0
    cache_hits: int = 0
    text: list[str] = field(default_factory=list)

    def check(self, name: str, passed: bool, residuals=()) -> None:
        self.checks[name] = {"passed": bool(passed), "residuals": [poly_to_json(r) for r in residuals if r]}

    @property
    def ok(self) -> bool:
        return all(c["passed"] for c in self.checks.values())

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def to_json(self) -> dict:
        out = asdict(self)
        out.pop("text")
        out["ok"] = self.ok
        return out

    def render_text(self) -> str:
        lines = [f"command   {' '.join(self.command)}"]
        for k, v in self.params.items():
            lines.append(f"{k:<9} {v}")
        lines.extend(self.text)
        for name, c in self.checks.items():
            lines.append(f"{'pass' if c['passed'] else 'FAIL':<9} {name}")
        lines.append(f"status    {'ok' if self.ok else 'certification failed'}")
        return "\n".join(lines)


# -- frame cache --------------------------------------------------------------


def cache_dir() -> Path:
    return Path(os.environ.get("CHEREDNIK_CACHE", "./.cache"))


def _cache_key(rs) -> str:
    payload = json.dumps({"v": CACHE_VERSION, "descriptor": rs.descriptor()}, sort_keys=True)
    return hashlib.sha256(payload.encode()).hexdigest()


def load_frame(group: str, report: RunReport | None = None) -> SaitoFrame:
    """Cached Saito frame; a corrupt or stale cache entry is recomputed."""
    rs = parse_group(group)
    path = cache_dir() / f"frame-{rs.name}-{_cache_key(rs)[:16]}.json"
    if path.exists():
        try:
            frame = frame_from_json(json.loads(path.read_text(encoding="utf-8")))
            if report is not None:
                report.cache_hits += 1
            return frame
        except (SchemaError, ValueError, OSError):
            pass
    frame = saito_frame(rs)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(dumps(frame_to_json(frame)), encoding="utf-8")
        tmp.replace(path)
    except OSError:
        pass
    return frame


# -- subcommands ----------------------------------------------------------------


def _rational(text: str):
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _group(text: str):
    try:
        return parse_group(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _show(p: MultiPoly) -> str:
    return p.to_string()


def cmd_roots(args, report: RunReport) -> None:
    rs = args.group
    report.params["group"] = rs.name
    desc = rs.descriptor()
    desc["simple_roots"] = [[format_rational(a) for a in r] for r in rs.simple_roots]
    report.outputs["root_system"] = desc
    report.text.append(f"roots     {len(rs.roots)} positive")
    report.text.append(f"degrees   {list(rs.degrees)}")
    report.text.append(f"h         {rs.h}")
    for r in desc["roots"]:
        report.text.append("          (" + ", ".join(r) + ")")


def cmd_saito(args, report: RunReport) -> None:
    rs = args.group
    report.params["group"] = rs.name
    frame = load_frame(rs.name, report)
    data = frame_to_json(frame)
    report.outputs["frame"] = data
    v = verify_saito(frame)
    report.check("saito_flatness", v.ok)
    for a, t in enumerate(frame.t):
        report.text.append(f"t^{a + 1:<7} {_show(t)}")
    for r in v.residuals:
        report.text.append(f"residual  {r}")
    if args.out:
        Path(args.out).write_text(dumps(data), encoding="utf-8")


def cmd_singular(args, report: RunReport) -> None:
    rs = args.group
    report.params.update(group=rs.name, beta=args.beta, m=args.m)
    if not 1 <= args.beta <= rs.rank:
        raise UsageError(f"--beta must lie in 1..{rs.rank}")
    if args.m < 0:
        raise UsageError("--m must be nonnegative")
    frame = load_frame(rs.name, report)
    fam = singular_family(frame, args.beta, args.m)
    report.params["c"] = format_rational(fam.c)
    report.text.append(f"degree    {fam.degree}")
    report.text.append(f"Q         {_show(fam.Q)}")
    for i, qi in enumerate(fam.q):
        report.text.append(f"q_{i + 1:<7} {_show(qi)}")
    if args.verify:
        certify_family(rs, fam)
        for name, ok in fam.checks.items():
            report.check(name, ok)
        report.outputs["singular"] = fam.checks["dunkl_annihilated"]
    report.outputs["family"] = family_to_json(fam)


def cmd_periods(args, report: RunReport) -> None:
    rs = args.group
    report.params.update(group=rs.name, nu=format_rational(args.nu), degree=args.degree)
    if args.degree < 1:
        raise UsageError("--degree must be positive")
    basis = homogeneous_twisted_periods(rs, None, args.nu, args.degree)
    report.outputs["dimension"] = len(basis)
    report.outputs["basis"] = [poly_to_json(p) for p in basis]
    report.text.append(f"dimension {len(basis)}")
    for p in basis:
        report.text.append(f"          {_show(p)}")


def cmd_residue(args, report: RunReport) -> None:
    report.params.update(kind=args.kind, rank=args.rank, s=args.s, m=args.m)
    p = residue_twisted_period(args.kind, args.rank, args.s, args.m, normalize=not args.raw)
    report.outputs["polynomial"] = poly_to_json(p)
    report.text.append(f"residue   {_show(p)}")


def _free_params(items) -> dict:
    out = {}
    for item in items or ():
        if "=" not in item:
            raise UsageError(f"--c expects b=p/q, got {item!r}")
        b, v = item.split("=", 1)
        try:
            out[int(b)] = parse_rational(v)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return out


def cmd_complex(args, report: RunReport) -> None:
    spec = ComplexGroupSpec(args.n, args.ell, args.q, args.s, args.m, _free_params(args.c))
    report.params.update(n=args.n, ell=args.ell, q=args.q, s=args.s, m=args.m)
    report.params["c"] = [format_rational(x) for x in spec.params]
    report.params["nu"] = format_rational(spec.nu)
    fs = complex_singular_family(spec)
    report.outputs["family"] = [poly_to_json(f) for f in fs]
    report.outputs["degree"] = spec.degree
    report.text.append(f"degree    {spec.degree}")
    for j, f in enumerate(fs):
        report.text.append(f"f_{j + 1:<7} {_show(f)}")
    if args.verify:
        for j, f in enumerate(fs):
            res = complex_dunkl_all(spec, f)
            report.check(f"dunkl_annihilates_f{j + 1}", all(r.is_zero() for r in res), res)
        report.check("equivariance", complex_group_action_check(spec, fs))


def _read_poly(source: str) -> MultiPoly:
    if source == "-":
        text = sys.stdin.read()
    elif source.lstrip().startswith("{"):
        text = source
    else:
        try:
            text = Path(source).read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read {source}: {exc}") from None
    return loads_poly(text)


def cmd_verify(args, report: RunReport) -> None:
    rs = args.group
    p = _read_poly(args.poly)
    report.params.update(group=rs.name, c=format_rational(args.c))
    if p.nvars != rs.ambient_dim:
        raise UsageError(f"{rs.name} needs polynomials in {rs.ambient_dim} variables, got {p.nvars}")
    if p.is_zero():
        raise UsageError("the zero polynomial cannot be certified")
    cert = is_singular(rs, args.c, p)
    report.outputs["certificate"] = {
        "residuals": [poly_to_json(r) for r in cert.residuals],
        "singular": cert.singular,
    }
    report.check("singular", cert.singular, cert.residuals)
    for i, r in enumerate(cert.residuals):
        report.text.append(f"nabla_{i + 1:<3} {_show(r)}")


def cmd_selftest(args, report: RunReport) -> None:
    from .acceptance import CRITERIA, run_all

    numbers = None
    if args.only:
        try:
            numbers = sorted({int(x) for x in args.only.split(",")})
        except ValueError:
            raise UsageError("--only expects comma-separated criterion numbers") from None
        unknown = [k for k in numbers if k not in CRITERIA]
        if unknown:
            raise UsageError(f"unknown criteria {unknown}")
    results = run_all(numbers)
    for r in results:
        report.text.append(r.line())
        report.checks[f"criterion_{r.number}"] = {
            "passed": r.passed and r.checked > 0,
            "title": r.title,
            "checked": r.checked,
            "failures": r.failures,
            "seconds": round(r.seconds, 3),
        }


COMMANDS = {
    "roots": cmd_roots,
    "saito": cmd_saito,
    "singular": cmd_singular,
    "periods": cmd_periods,
    "residue": cmd_residue,
    "complex": cmd_complex,
    "verify": cmd_verify,
    "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--json", metavar="PATH", help="also write the JSON report to PATH")

    parser = argparse.ArgumentParser(prog="cherednik", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("roots", parents=[common], help="root system descriptor")
    p.add_argument("--group", type=_group, required=True)

    p = sub.add_parser("saito", parents=[common], help="Saito flat coordinates")
    p.add_argument("--group", type=_group, required=True)
    p.add_argument("--out", help="write the frame JSON here")

    p = sub.add_parser("singular", parents=[common], help="singular family from the shift recursion")
    p.add_argument("--group", type=_group, required=True)
    p.add_argument("--beta", type=int, required=True, help="1-based Saito index")
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--verify", action="store_true")

    p = sub.add_parser("periods", parents=[common], help="homogeneous invariant twisted periods")
    p.add_argument("--group", type=_group, required=True)
    p.add_argument("--nu", type=_rational, required=True)
    p.add_argument("--degree", type=int, required=True)

    p = sub.add_parser("residue", parents=[common], help="residue twisted period")
    p.add_argument("--kind", choices=("A", "B", "D-infinity", "D-zero"), required=True)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--s", type=int, default=0)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--raw", action="store_true", help="skip normalization to leading coefficient 1")

    p = sub.add_parser("complex", parents=[common], help="G(l,1,n) singular family")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--s", type=int, default=0)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--c", action="append", metavar="B=P/Q", help="value of an unconstrained c_b")
    p.add_argument("--verify", action="store_true")

    p = sub.add_parser("verify", parents=[common], help="certify a polynomial as singular")
    p.add_argument("--group", type=_group, required=True)
    p.add_argument("--c", type=_rational, required=True)
    p.add_argument("--poly", required=True, help="polynomial JSON: file path, inline object, or - for stdin")

    p = sub.add_parser("selftest", parents=[common], help="run the acceptance checks")
    p.add_argument("--only", help="comma-separated criterion numbers")
    return parser


def run(argv=None) -> tuple[RunReport, int]:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    report = RunReport(command=["cherednik"] + argv)
    start = time.perf_counter()
    try:
        COMMANDS[args.command](args, report)
    except (UsageError, SchemaError, ValueError) as exc:
        parser.exit(2, f"cherednik {args.command}: error: {exc}\n")
    report.seconds = round(time.perf_counter() - start, 3)
    if args.json:
        Path(args.json).write_text(dumps(report.to_json()), encoding="utf-8")
    out = dumps(report.to_json()) if args.format == "json" else report.render_text()
    print(out)
    return report, report.exit_code


def main(argv=None) -> int:
    return run(argv)[1]


if __name__ == "__main__":
    sys.exit(main())
