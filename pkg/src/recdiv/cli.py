"""recdiv command line.

Every subcommand writes a single report (CSV or JSON lines) to --output or
stdout. Exit status: 0 on success, 1 when an input violates a domain
precondition, 2 on usage errors and unreadable spec files.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys

from recdiv import census as cen
from recdiv import constructions as con
from recdiv import lucas, smoothness, splitting
from recdiv.errors import DomainError
from recdiv.modular import period_mod
from recdiv.recurrence import RecurrenceSpec

SUBCOMMANDS = (
    "census",
    "census-m",
    "census-poly",
    "z",
    "t-index",
    "q-gamma",
    "psi",
    "pi-smooth",
    "special-primes",
    "lucas-special",
    "disc-power",
    "zero-term",
    "verify-remark",
    "period",
)


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _number(text: str) -> int:
    """Integer, also accepting forms like 1e6."""
    try:
        return int(text)
    except ValueError:
        pass
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}")
    if not value.is_integer():
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    return int(value)


def resolve_seed(args) -> int:
    env = os.environ.get("RECDIV_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"RECDIV_SEED must be an integer, got {env!r}")
    return args.seed


def load_spec(args) -> RecurrenceSpec:
    """Spec from --spec file, --coeffs/--init, or --a1/--a2 (Lucas)."""
    if args.spec:
        try:
            with open(args.spec) as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read spec file: {exc}")
        try:
            return RecurrenceSpec.from_json(text)
        except DomainError as exc:
            raise UsageError(f"malformed spec file {args.spec}: {exc}")
    if args.coeffs is not None or args.init is not None:
        if args.coeffs is None or args.init is None:
            raise UsageError("--coeffs and --init must be given together")
        return RecurrenceSpec(tuple(args.coeffs), tuple(args.init))
    if args.a1 is not None and args.a2 is not None:
        return RecurrenceSpec((args.a1, args.a2), (0, 1))
    raise UsageError("a recurrence is required: --spec, --coeffs/--init or --a1/--a2")


def load_lucas(args) -> lucas.LucasSpec:
    if args.a1 is None or args.a2 is None:
        raise UsageError("--a1 and --a2 are required")
    return lucas.lucas_spec(args.a1, args.a2)


def _require(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError("missing " + ", ".join("--" + n.replace("_", "-") for n in missing))


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _json_line(obj) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"


def _table(args, header, rows) -> str:
    if args.format == "jsonl":
        return "".join(_json_line(dict(zip(header, r))) for r in rows)
    return _csv(header, rows)


def _census_output(args, report) -> str:
    if args.format == "jsonl":
        return _json_line(report.to_dict())
    return report.to_csv()


# ---------------------------------------------------------------------------
# Subcommand handlers; each returns the output text
# ---------------------------------------------------------------------------


def cmd_census(args):
    _require(args, "x")
    spec = load_spec(args)
    report = cen.census(spec, args.x, args.checkpoints, workers=args.workers)
    return _census_output(args, report)


def cmd_census_m(args):
    _require(args, "x")
    spec = load_spec(args)
    report = cen.census_excluding_zero_multiples(
        spec, args.x, args.zero_bound, args.checkpoints, workers=args.workers
    )
    return _census_output(args, report)


def cmd_census_poly(args):
    _require(args, "x", "g")
    spec = load_spec(args)
    report = cen.census_poly(spec, cen.PolySpec(tuple(args.g)), args.x, args.checkpoints, workers=args.workers)
    return _census_output(args, report)


def cmd_z(args):
    ls = load_lucas(args)
    if args.m is not None:
        out = {"m": args.m, "z": lucas.z_composite(ls, args.m).z}
    else:
        _require(args, "p")
        if not smoothness.is_prime(args.p):
            raise DomainError(f"p = {args.p} is not prime (use --m for composite moduli)")
        if args.e is not None and args.e > 1:
            out = {"p": args.p, "e": args.e, "z": lucas.z_prime_power(ls, args.p, args.e).z}
        else:
            out = {"p": args.p, "z": lucas.z_prime(ls, args.p).z}
    return _json_line(out)


def _t_dict(res):
    return {
        "p": res.p,
        "t": res.t,
        "witness": list(res.witness) if res.witness is not None else None,
        "capped": res.capped,
        "divides_discriminant": res.divides_discriminant,
    }


def cmd_t_index(args):
    _require(args, "p")
    if not smoothness.is_prime(args.p):
        raise DomainError(f"p = {args.p} is not prime")
    spec = load_spec(args)
    res = splitting.t_general(spec, args.p, cap=args.cap, seed=resolve_seed(args))
    return _json_line(_t_dict(res))


def cmd_q_gamma(args):
    _require(args, "x", "gamma")
    ls = load_lucas(args)
    rep = lucas.q_gamma_set(ls, args.x, args.gamma)
    return _json_line(
        {"x": args.x, "gamma": args.gamma, "count": len(rep.primes), "primes": list(rep.primes), "lemma_ratio": rep.lemma_ratio}
    )


def cmd_psi(args):
    _require(args, "x", "y")
    if args.x < 1 or args.y < 1:
        raise DomainError("psi needs x >= 1 and y >= 1")
    rep = smoothness.psi(args.x, args.y)
    return _table(args, ("x", "y", "count", "v", "reference"), [(args.x, args.y, rep.count, rep.v, rep.reference)])


def cmd_pi_smooth(args):
    _require(args, "x", "y")
    if args.x < 2 or args.y < 2:
        raise DomainError("pi-smooth needs x >= 2 and y >= 2")
    count = smoothness.pi_smooth(args.x, args.y)
    return _table(args, ("x", "y", "count"), [(args.x, args.y, count)])


def cmd_special_primes(args):
    _require(args, "y")
    z = args.z if args.z is not None else int(math.floor(args.y**args.v))
    sp = con.special_primes(args.y, z)
    return _json_line({"y": sp.y, "z": sp.z, "primes": list(sp.primes)})


def _certificates(certs) -> str:
    return "".join(c.to_json() + "\n" for c in certs)


def cmd_lucas_special(args):
    _require(args, "x", "y")
    ls = load_lucas(args)
    certs = con.lucas_special_members(args.x, args.y, args.r_mode, args.v)
    return _certificates(con.verify_membership(ls, certs, args.workers))


def cmd_disc_power(args):
    _require(args, "x")
    ls = load_lucas(args)
    certs = con.discriminant_power_members(ls, args.x, args.e or 2, seed=resolve_seed(args), workers=args.workers)
    return _certificates(certs)


def cmd_zero_term(args):
    _require(args, "x", "n0")
    spec = load_spec(args)
    return _certificates(con.zero_term_members(spec, args.n0, args.x, args.workers))


def cmd_verify_remark(args):
    _require(args, "x")
    return _json_line(con.verify_remark_sequence(args.x).to_dict())


def cmd_period(args):
    _require(args, "m")
    if args.m < 1:
        raise DomainError("m must be >= 1")
    spec = load_spec(args)
    rec = period_mod(spec, args.m)
    return _table(args, ("modulus", "period", "preperiod"), [(rec.modulus, rec.period, rec.preperiod)])


HANDLERS = {
    "census": cmd_census,
    "census-m": cmd_census_m,
    "census-poly": cmd_census_poly,
    "z": cmd_z,
    "t-index": cmd_t_index,
    "q-gamma": cmd_q_gamma,
    "psi": cmd_psi,
    "pi-smooth": cmd_pi_smooth,
    "special-primes": cmd_special_primes,
    "lucas-special": cmd_lucas_special,
    "disc-power": cmd_disc_power,
    "zero-term": cmd_zero_term,
    "verify-remark": cmd_verify_remark,
    "period": cmd_period,
}


HELP = {
    "census": "N_u(x) with checkpoint counts and ratio columns",
    "census-m": "census minus the p * n0 members (u_{n0} = 0)",
    "census-poly": "n <= x with g(n) | u_n",
    "z": "rank of apparition z(p), z(p^e) or z(m) of a Lucas sequence",
    "t-index": "T(p) from the splitting-field determinant search",
    "q-gamma": "primes p <= x with z(p) <= p^gamma",
    "psi": "count of y-smooth n <= x",
    "pi-smooth": "count of primes p <= x with p^2 - 1 y-smooth",
    "special-primes": "special primes in (y, z]",
    "lucas-special": "verified certificates n = 2 s M_y",
    "disc-power": "verified discriminant-power certificates",
    "zero-term": "verified certificates p * n0",
    "verify-remark": "check 2p | u_{2p} for 10^n - 7^n - 2 5^n - 1",
    "period": "period and preperiod of u mod m",
}


def _common(p: argparse.ArgumentParser):
    p.add_argument("--spec", help="recurrence spec JSON file")
    p.add_argument("--coeffs", type=_int_list, help="a_1,...,a_k")
    p.add_argument("--init", type=_int_list, help="u_0,...,u_{k-1}")
    p.add_argument("--a1", type=int)
    p.add_argument("--a2", type=int)
    p.add_argument("--x", type=_number)
    p.add_argument("--y", type=_number)
    p.add_argument("--z", type=_number)
    p.add_argument("--v", type=float, default=con.DEFAULT_V)
    p.add_argument("--gamma", type=float)
    p.add_argument("--p", type=int)
    p.add_argument("--m", type=_number)
    p.add_argument("--e", type=int)
    p.add_argument("--n0", type=int)
    p.add_argument("--g", type=_int_list, help="coefficients of g, constant term first")
    p.add_argument("--cap", type=int, help="search cap for t-index (default max(p^2, 64))")
    p.add_argument("--r-mode", choices=("all", "exact-r"), default="all")
    p.add_argument("--zero-bound", type=int, default=10**4)
    p.add_argument("--checkpoints", type=_int_list)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=None, help="default: available CPUs")
    p.add_argument("--output", "-o", help="output path (default stdout)")
    p.add_argument("--format", choices=("csv", "jsonl"), default="csv")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="recdiv", description="Experiments on n | u_n for linear recurrences.")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True
    for name in SUBCOMMANDS:
        _common(sub.add_parser(name, help=HELP[name]))
    return parser


def _attach_negative_values(argv):
    # argparse reads "--init -1,0" as two options; rewrite to "--init=-1,0"
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if tok.startswith("--") and "=" not in tok and nxt is not None and re.match(r"-\d", nxt):
            out.append(f"{tok}={nxt}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def run(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parser.parse_args(_attach_negative_values(argv))
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else 2
    try:
        text = HANDLERS[args.command](args)
    except UsageError as exc:
        print(f"recdiv {args.command}: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"recdiv {args.command}: {exc}", file=sys.stderr)
        return 1
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
