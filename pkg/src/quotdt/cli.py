"""Command line interface: one subcommand per operation family, JSON in and out.

Exit status: 0 on success, 1 on a validation error, 2 when ``verify`` finds
a failing check.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from . import bps, dtpt, macmahon, motivic, quiver, verify
from .errors import CostGuardExceeded, InvalidInput
from .ringcore import (
    HalfLaurent,
    TruncSeries,
    euler_specialize,
    format_scalar,
    parse_scalar,
    series_arith,
    series_exp_log,
    series_inv,
    series_pow,
    substitute_sign,
)

MAX_ORDER = 64
MAX_ENUMERATION = macmahon.DEFAULT_ENUMERATION_BOUND
MAX_ORACLE_DIM = 3

SUBCOMMANDS = (
    "macmahon", "wall-factor", "motivic", "virtual-chi", "n-invariants",
    "quiver-check", "potential", "dtpt-convert", "bps", "poly", "series", "verify",
)


@dataclass
class CommandRequest:
    subcommand: str
    params: dict[str, Any] = field(default_factory=dict)
    input: Any = None


class ValidationError(InvalidInput):
    pass


def _guard(value: int, limit: int, what: str, force: bool) -> None:
    if value <= limit:
        return
    if not force:
        raise CostGuardExceeded(f"{what}={value} exceeds guard {limit}; pass --force to override")
    print(f"warning: {what}={value} exceeds guard {limit}; this may be slow", file=sys.stderr)


def _require(params: dict, *names: str) -> None:
    missing = [n for n in names if params.get(n) is None]
    if missing:
        raise ValidationError(f"missing required option(s): {', '.join('--' + m for m in missing)}")


def _order(params: dict) -> int:
    _require(params, "order")
    N = int(params["order"])
    if N < 0:
        raise ValidationError("--order must be >= 0")
    _guard(N, MAX_ORDER, "order", params.get("force", False))
    return N


def _rank(params: dict) -> int:
    _require(params, "rank")
    r = int(params["rank"])
    if r < 1:
        raise ValidationError("--rank must be >= 1")
    return r


def _payload(req: CommandRequest) -> Any:
    if req.input is None:
        raise ValidationError(f"{req.subcommand} needs a JSON payload (--json PATH or stdin)")
    return req.input


def _series_json(s: TruncSeries) -> dict:
    return s.to_json()


def _theta(text: str) -> quiver.Theta:
    try:
        a, b = (Fraction(x) for x in text.split(","))
    except ValueError:
        raise ValidationError(f"--theta must look like '1,0', got {text!r}") from None
    return quiver.Theta(a, b)


def _cmd_macmahon(req: CommandRequest) -> dict:
    p = req.params
    N = _order(p)
    r = int(p.get("rank") or 1)
    if r < 1:
        raise ValidationError("--rank must be >= 1")
    out = {"coeffs": [str(c) for c in series_pow(macmahon.macmahon_series(N), r)]}
    if p.get("oracle"):
        _guard(N, MAX_ENUMERATION, "enumeration size", p.get("force", False))
        bound = max(N, MAX_ENUMERATION)
        out["oracle"] = [str(macmahon.colored_count(r, n, bound)) for n in range(N + 1)]
    return out


def _cmd_wall_factor(req: CommandRequest) -> dict:
    p = req.params
    _require(p, "chi")
    return _series_json(macmahon.wall_crossing_factor(_rank(p), int(p["chi"]), _order(p)))


def _cmd_motivic(req: CommandRequest) -> dict:
    return motivic.motivic_quot_series(_rank(req.params), _order(req.params)).to_json()


def _cmd_virtual_chi(req: CommandRequest) -> dict:
    p = req.params
    r, N = _rank(p), _order(p)
    out = _series_json(motivic.virtual_chi_series(r, N))
    if p.get("check"):
        _guard(N, MAX_ENUMERATION, "enumeration size", p.get("force", False))
        bound = max(N, MAX_ENUMERATION)
        pairs = [motivic.signed_chi_check(r, n, bound) for n in range(N + 1)]
        out["signed_check"] = [[str(a), str(b)] for a, b in pairs]
        out["signed_check_ok"] = all(a == b for a, b in pairs)
    return out


def _cmd_n_invariants(req: CommandRequest) -> dict:
    p = req.params
    _require(p, "chi")
    r, chi, N = _rank(p), int(p["chi"]), _order(p)
    ns, rebuilt = macmahon.n_invariants_roundtrip(r, chi, N)
    return {
        "n_invariants": [format_scalar(x) for x in ns],
        "factor": _series_json(rebuilt),
        "matches_wall_factor": rebuilt == macmahon.wall_crossing_factor(r, chi, N),
    }


def _cmd_quiver_check(req: CommandRequest) -> dict:
    p = req.params
    rep = quiver.FramedRep.from_json(_payload(req))
    theta = _theta(p.get("theta") or "1,0")
    dim, basis = quiver.generation_closure(rep)
    out: dict[str, Any] = {
        "n": rep.n,
        "r": rep.r,
        "closure_dim": dim,
        "closure_basis": [[format_scalar(x) for x in v] for v in basis],
        "generated": dim == rep.n,
        "slope": format_scalar(quiver.slope(theta, (1, rep.n))),
    }
    if theta.theta1 >= theta.theta2:
        out["stable"] = quiver.is_stable_via_generation(rep, theta)
    else:
        out["stable"] = None
    if p.get("brute_force"):
        force = p.get("force", False)
        _guard(rep.n, MAX_ORACLE_DIM, "oracle dimension", force)
        big = 10 ** 6 if force else None
        kwargs = {"max_n": big, "max_p": big} if big else {}
        out["brute_force"] = quiver.brute_force_stability(rep, theta, **kwargs).value
    return out


def _cmd_potential(req: CommandRequest) -> dict:
    rep = quiver.FramedRep.from_json(_payload(req))

    def m(M):
        return [[format_scalar(x) for x in row] for row in M]

    dA, dB, dC = quiver.potential_gradient(rep)
    return {
        "value": format_scalar(quiver.potential_value(rep)),
        "gradient": {"A": m(dA), "B": m(dB), "C": m(dC)},
        "critical": quiver.is_critical_point(rep),
    }


def _cmd_dtpt_convert(req: CommandRequest) -> dict:
    p = req.params
    _require(p, "chi", "dir")
    series = TruncSeries.from_json(_payload(req))
    _guard(series.order, MAX_ORDER, "order", p.get("force", False))
    label = dtpt.LocalSeriesLabel(_rank(p), int(p["chi"]), p.get("flavor") or "behrend-weighted")
    return _series_json(dtpt.dt_pt_convert(series, label, p["dir"]))


def _cmd_bps(req: CommandRequest) -> dict:
    payload = _payload(req)
    if not isinstance(payload, dict):
        raise ValidationError("bps payload must be {'offset', 'coeffs', 'genus'}")
    genus = req.params.get("genus")
    if genus is None:
        genus = payload.get("genus")
    if genus is None:
        raise ValidationError("genus missing (payload 'genus' or --genus)")
    try:
        offset = int(payload["offset"])
        coeffs = [parse_scalar(c) for c in payload["coeffs"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed bps payload: {exc}") from None
    return bps.bps_summary(coeffs, offset, int(genus))


def _cmd_poly(req: CommandRequest) -> dict:
    payload = _payload(req)
    if isinstance(payload, list):
        payload = {"coeffs": payload}
    try:
        P = [parse_scalar(c) for c in payload["coeffs"]]
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed poly payload: {exc}") from None
    d = int(payload.get("degree", max(len(P) - 1, 0)))
    out: dict[str, Any] = {
        "reciprocal": [format_scalar(c) for c in dtpt.reciprocal_polynomial(P, d)],
        "palindromic": dtpt.palindrome_check(P),
    }
    if "ell" in payload:
        out["degree_matches_ell"] = dtpt.reflexive_degree_check(P, int(payload["ell"]))
    return out


def _cmd_series(req: CommandRequest) -> dict:
    p = req.params
    op = p.get("op")
    payload = _payload(req)
    if op in ("add", "mul"):
        if not isinstance(payload, dict) or "a" not in payload or "b" not in payload:
            raise ValidationError("binary series ops need {'a': series, 'b': series}")
        return series_arith(TruncSeries.from_json(payload["a"]), TruncSeries.from_json(payload["b"]), op).to_json()
    if op == "euler":
        if isinstance(payload, dict) and "terms" in payload:
            return {"value": str(euler_specialize(HalfLaurent.from_json(payload)))}
        return TruncSeries.from_json(payload).map(euler_specialize).to_json()
    a = TruncSeries.from_json(payload)
    if op == "inv":
        return series_inv(a).to_json()
    if op == "pow":
        _require(p, "power")
        return series_pow(a, int(p["power"])).to_json()
    if op in ("exp", "log"):
        return series_exp_log(a, op).to_json()
    if op == "sign":
        return substitute_sign(a, int(p.get("sign") or -1)).to_json()
    raise ValidationError(f"unknown series op {op!r}")


def _cmd_verify(req: CommandRequest) -> dict:
    p = req.params
    suite = p.get("suite") or "all"
    if suite != "all" and suite not in verify.SUITES:
        raise ValidationError(f"unknown suite {suite!r}; choose from all, {', '.join(verify.SUITES)}")
    N = int(p.get("order") or 8)
    _guard(N, MAX_ORDER, "order", p.get("force", False))
    seed = int(p.get("seed") or 0)
    checks = verify.run_suite(suite, N, seed)
    return {"suite": suite, "order": N, "seed": seed, "checks": checks,
            "passed": all(c["passed"] for c in checks)}


HANDLERS = {
    "macmahon": _cmd_macmahon,
    "wall-factor": _cmd_wall_factor,
    "motivic": _cmd_motivic,
    "virtual-chi": _cmd_virtual_chi,
    "n-invariants": _cmd_n_invariants,
    "quiver-check": _cmd_quiver_check,
    "potential": _cmd_potential,
    "dtpt-convert": _cmd_dtpt_convert,
    "bps": _cmd_bps,
    "poly": _cmd_poly,
    "series": _cmd_series,
    "verify": _cmd_verify,
}


def run_command(req: CommandRequest) -> tuple[dict, int]:
    handler = HANDLERS.get(req.subcommand)
    if handler is None:
        return {"error": "unknown-subcommand", "message": f"unknown subcommand {req.subcommand!r}"}, 1
    try:
        result = handler(req)
    except CostGuardExceeded as exc:
        return {"error": "guard-exceeded", "message": str(exc)}, 1
    except (InvalidInput, ValueError) as exc:
        return {"error": "invalid-input", "message": str(exc)}, 1
    if req.subcommand == "verify" and not result["passed"]:
        return result, 2
    return result, 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="quotdt", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", parser_class=_Parser)

    def add(name: str, help: str, *flags: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help)
        if "order" in flags:
            sp.add_argument("--order", "-N", type=int)
        if "rank" in flags:
            sp.add_argument("--rank", "-r", type=int)
        if "chi" in flags:
            sp.add_argument("--chi", type=int)
        if "json" in flags:
            sp.add_argument("--json", help="payload file, '-' or omitted for stdin")
        sp.add_argument("--force", action="store_true", help="lift cost guards (prints a warning)")
        return sp

    sp = add("macmahon", "MacMahon coefficients, optionally powered and enumerated", "order", "rank")
    sp.add_argument("--oracle", action="store_true", help="also count r-tuples of plane partitions")
    add("wall-factor", "M((-1)^r q)^(r chi)", "order", "rank", "chi")
    add("motivic", "motivic Quot-scheme series", "order", "rank")
    sp = add("virtual-chi", "Euler specialization of the motivic series", "order", "rank")
    sp.add_argument("--check", action="store_true", help="compare with signed fixed-point counts")
    add("n-invariants", "N-invariants and the rebuilt wall-crossing factor", "order", "rank", "chi")
    sp = add("quiver-check", "joint generation, slope and stability of a framed rep", "json")
    sp.add_argument("--theta", default="1,0")
    sp.add_argument("--field", help="accepted for symmetry; the payload's field is authoritative")
    sp.add_argument("--brute-force", action="store_true", dest="brute_force")
    add("potential", "Tr A[B,C], its gradient and criticality", "json")
    sp = add("dtpt-convert", "convert a local DT/PT series", "order", "rank", "chi", "json")
    sp.add_argument("--dir", choices=["pt2dt", "dt2pt"])
    sp.add_argument("--flavor", choices=[f.value for f in dtpt.Flavor], default="behrend-weighted")
    sp = add("bps", "BPS numbers and rationality of a Laurent series", "json")
    sp.add_argument("--genus", type=int)
    add("poly", "reciprocal, palindrome and degree checks", "json")
    sp = add("series", "truncated series arithmetic", "json")
    sp.add_argument("--op", choices=["add", "mul", "inv", "pow", "exp", "log", "sign", "euler"], required=True)
    sp.add_argument("--power", type=int)
    sp.add_argument("--sign", type=int, choices=[1, -1])
    sp = add("verify", "run the built-in identity checks", "order")
    sp.add_argument("--suite", default="all")
    sp.add_argument("--seed", type=int, default=0)
    return parser


NEEDS_PAYLOAD = {"quiver-check", "potential", "dtpt-convert", "bps", "poly", "series"}


def _read_payload(source: str | None) -> Any:
    try:
        if source in (None, "-"):
            text = sys.stdin.read()
        else:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise ValidationError(f"cannot read payload: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed JSON payload: {exc}") from None


def parse_request(argv: list[str]) -> CommandRequest:
    args = build_parser().parse_args(argv)
    if args.subcommand is None:
        raise ValidationError(f"a subcommand is required: {', '.join(SUBCOMMANDS)}")
    params = {k: v for k, v in vars(args).items() if k not in ("subcommand", "json")}
    payload = _read_payload(getattr(args, "json", None)) if args.subcommand in NEEDS_PAYLOAD else None
    return CommandRequest(args.subcommand, params, payload)


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if argv and not argv[0].startswith("-") and argv[0] not in HANDLERS:
        result, status = run_command(CommandRequest(argv[0]))
        print(json.dumps(result, separators=(",", ":")))
        return status
    try:
        req = parse_request(argv)
    except InvalidInput as exc:
        result, status = {"error": "invalid-request", "message": str(exc)}, 1
    else:
        result, status = run_command(req)
    print(json.dumps(result, separators=(",", ":")))
    return status


if __name__ == "__main__":
    sys.exit(main())
