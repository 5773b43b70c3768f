#!/usr/bin/env python3
"""
Command-line front end.

Exit codes: 0 success, 1 domain failure (invalid code, UNSAT, BUDGET, FAIL),
2 usage or parse error. Results go to stdout, status and logs to stderr.
"""

import argparse
import json
import logging
import math
import re
import sys
from os import path
from typing import List, Optional, Sequence, Tuple

from cvstab import config
from cvstab.channel import MeasurementNoise, parse_error_literal, parse_model
from cvstab.code import (
    LogicalBasis,
    StabilizerCode,
    builtin,
    builtin_entry,
    builtin_names,
    check_logical_basis,
    concatenate,
    dump_code,
    encoding_map,
    load_code,
    logical_basis,
    normalize_pair,
    operator_string,
    syndrome_observables,
    validate,
)
from cvstab.console import print_error, print_status, print_success, print_warning
from cvstab.decode import (
    DECODERS,
    SINGLE_MODE,
    check_single_mode_correctability,
    decode,
    parse_syndrome_literal,
    syndrome,
)
from cvstab.errors import (
    BudgetExceeded,
    CvstabError,
    InvalidModel,
    ParseError,
    UnknownCode,
    Unsatisfiable,
)
from cvstab.lift import lift_logicals, lift_signs, parse_binary_text, verify_lift
from cvstab.sim import SIGMA, SWEEP_PARAMETERS, records_frame, run_trials, summary_frame, sweep, write_csv
from cvstab.symplectic import CONVENTIONS, SYMPLECTIC, fourier_conjugate
from cvstab.textformat import format_vector
from cvstab.validation import CatalogValidator, overall_exit_code

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

# options whose value may be a comma-separated list starting with a minus sign
NUMERIC_LIST_OPTIONS = ("--syndrome", "--grid")


def fmt_float(value: float) -> str:
    return config.FLOAT_FORMAT % (value + 0.0)


def fmt_floats(values: Sequence[float]) -> str:
    return "(" + ", ".join(fmt_float(float(v)) for v in values) + ")"


def resolve_code(ref: str, catalog_path: str = config.CATALOG_PATH) -> Tuple[StabilizerCode, LogicalBasis]:
    """Builtin name or path to a cvstab file; files without logical lines get a derived basis"""
    if ref in builtin_names(catalog_path):
        return builtin(ref, catalog_path)
    if path.isfile(ref):
        with open(ref) as f:
            code, basis = load_code(f.read(), name=path.basename(ref))
        return code, basis or logical_basis(code)
    raise UnknownCode(ref, builtin_names(catalog_path))


def describe_code(code: StabilizerCode, basis: LogicalBasis, extra: Sequence[str] = ()) -> List[str]:
    lines = list(extra)
    lines.append(f"n={code.n} k={code.k} logical modes={code.logical_modes}")
    lines.append("syndrome observables:")
    lines += [f"  {m}" for m in syndrome_observables(code)]
    if basis.pairs:
        lines.append("logical operators:")
        for i, (x, z) in enumerate(basis.pairs, start=1):
            lines.append(f"  x{i} = {operator_string(x)}")
            lines.append(f"  z{i} = {operator_string(z)}")
    lines.append("encoding:")
    lines += [f"  {line}" for line in encoding_map(code, basis).describe()]
    return lines


def conjugate_code(code: StabilizerCode, basis: LogicalBasis, convention: str) -> Tuple[StabilizerCode, LogicalBasis]:
    generators = [fourier_conjugate(u, convention) for u in code.generators]
    name = f"F({code.name})" if code.name else None
    conjugated = validate(generators, n=code.n, name=name)
    pairs = tuple(normalize_pair(fourier_conjugate(x, convention), fourier_conjugate(z, convention)) for x, z in basis.pairs)
    return conjugated, LogicalBasis(pairs, derived=basis.derived)


def cmd_show(args) -> int:
    code, basis = resolve_code(args.code)
    extra = []
    if args.code in builtin_names():
        entry = builtin_entry(args.code)
        extra += [f"{args.code}: {entry['description']}", f"source: {entry['source']}"]
        if entry.get("notes"):
            extra.append(f"note: {entry['notes']}")
    if args.fourier:
        code, basis = conjugate_code(code, basis, args.fourier)
        extra.append(f"Fourier conjugate ({args.fourier} convention)")
    sys.stdout.write(dump_code(code, basis, describe_code(code, basis, extra)))
    return EXIT_OK


def cmd_validate(args) -> int:
    try:
        with open(args.file) as f:
            code, basis = load_code(f.read(), name=path.basename(args.file))
    except ParseError:
        raise
    except CvstabError as e:
        print(f"FAIL {e}")
        return EXIT_FAILURE
    print(f"PASS n={code.n} k={code.k} logical modes={code.logical_modes}")
    if basis is not None:
        print(f"logical basis: {len(basis.pairs)} pairs, omega(x_i, z_j) = delta_ij")
    return EXIT_OK


def cmd_logicals(args) -> int:
    code, printed = resolve_code(args.code)
    basis = printed if args.printed else logical_basis(code)
    print(f"{code.logical_modes} logical modes ({'printed' if args.printed else 'derived'} basis)")
    for i, (x, z) in enumerate(basis.pairs, start=1):
        print(f"x{i} {format_vector(x.coords)}    {operator_string(x)}")
        print(f"z{i} {format_vector(z.coords)}    {operator_string(z)}")
    return EXIT_OK


def cmd_complement(args) -> int:
    code, _ = resolve_code(args.code)
    w_omega = code.normalizer_space()
    print(f"dim W^omega = {w_omega.dim} (2n - k = {2 * code.n} - {code.k})")
    for v in w_omega.basis:
        print(f"row {format_vector(v.coords)}")
    return EXIT_OK


def cmd_concatenate(args) -> int:
    outer, outer_basis = resolve_code(args.outer)
    inner, inner_basis = resolve_code(args.inner)
    code, basis = concatenate(outer, inner, outer_basis, inner_basis)
    sys.stdout.write(dump_code(code, basis, describe_code(code, basis, [f"{code.name}: concatenation"])))
    return EXIT_OK


def cmd_lift(args) -> int:
    with open(args.file) as f:
        document = parse_binary_text(f.read())
    name = path.basename(args.file)
    try:
        signs = lift_signs(document.h, budget=args.max_nodes)
        code = verify_lift(document.h, signs, name=name)
        lifted = lift_logicals([b for pair in document.logicals for b in pair], code, budget=args.max_nodes)
    except Unsatisfiable as e:
        print("UNSAT")
        print_error(str(e))
        return EXIT_FAILURE
    except BudgetExceeded as e:
        print("BUDGET")
        print_error(str(e))
        return EXIT_FAILURE

    comments = [f"lifted from {name}"]
    basis = None
    if lifted:
        try:
            basis = LogicalBasis(tuple(normalize_pair(lifted[i], lifted[i + 1]) for i in range(0, len(lifted), 2)), derived=False)
            check_logical_basis(code, basis)
        except CvstabError as e:
            print_warning(f"lifted logicals do not form a symplectic basis: {e}")
            comments += [f"lifted logical {v}" for v in lifted]
            basis = None
    sys.stdout.write(dump_code(code, basis, comments))
    return EXIT_OK


def _error_for(args, code: StabilizerCode):
    return parse_error_literal(args.error, code.n) if args.error else None


def cmd_syndrome(args) -> int:
    code, _ = resolve_code(args.code)
    s = syndrome(code, parse_error_literal(args.error, code.n))
    print(fmt_floats(s.values))
    return EXIT_OK


def cmd_decode(args) -> int:
    code, basis = resolve_code(args.code)
    error = _error_for(args, code)
    if args.syndrome is not None:
        s = parse_syndrome_literal(args.syndrome, code)
    elif error is not None:
        s = syndrome(code, error)
    else:
        raise InvalidModel("decode needs --syndrome or --error")
    result = decode(code, s, args.decoder, basis, error, tol=args.tol, syndrome_tol=args.syndrome_tol)

    c = result.correction
    if result.mode is not None:
        print(f"mode {result.mode + 1}: q={fmt_float(c.s[result.mode])} p={fmt_float(c.t[result.mode])}")
    elif args.decoder == SINGLE_MODE:
        print("identity")
    print(f"correction {fmt_floats(c.displacement)}")
    print(f"syndrome residual {fmt_float(result.syndrome_residual)}")
    if result.logical_displacement is not None:
        print(f"logical displacement {fmt_floats(result.logical_displacement)}")
    print("SUCCESS" if result.success else "FAIL")
    return EXIT_OK if result.success else EXIT_FAILURE


def cmd_check(args) -> int:
    code, basis = resolve_code(args.code)
    report = check_single_mode_correctability(code, basis)
    for family in ("q", "p", "both"):
        print(f"{family}: {'PASS' if report.families[family] else 'FAIL'}")
        for failure in report.failures[family]:
            modes = ",".join(str(m + 1) for m in failure.modes)
            action = ", ".join(str(a) for a in failure.action)
            print(f"  modes {modes}: witness {failure.witness} logical action ({action})")
    return EXIT_OK if report.passed else EXIT_FAILURE


def _emit_csv(frame, target: Optional[str]):
    if target:
        with open(target, "w", newline="") as f:
            write_csv(frame, f)
        print_success(f"wrote {len(frame)} rows to {target}")
    else:
        write_csv(frame, sys.stdout)


def cmd_simulate(args) -> int:
    code, basis = resolve_code(args.code)
    model = parse_model(args.model)
    summary = run_trials(
        code,
        basis,
        model,
        args.decoder,
        MeasurementNoise(args.sigma_m),
        args.trials,
        args.seed,
        tol=args.tol,
        keep_records=bool(args.records),
        param=model.sigma if model.sigma is not None else math.nan,
    )
    print_status(f"{summary.failures}/{summary.trials} failures, max logical displacement {fmt_float(summary.max_logical_disp)}")
    _emit_csv(summary_frame([summary]), args.csv)
    if args.records:
        _emit_csv(records_frame(summary.records), args.records)
    return EXIT_OK


def cmd_sweep(args) -> int:
    code, basis = resolve_code(args.code)
    try:
        grid = [float(v) for v in args.grid.split(",") if v.strip()]
    except ValueError:
        raise InvalidModel(f"grid '{args.grid}' is not a comma-separated list of numbers")
    frame = sweep(
        code,
        basis,
        parse_model(args.model),
        args.param,
        grid,
        args.decoder,
        MeasurementNoise(args.sigma_m),
        args.trials,
        args.seed,
        tol=args.tol,
    )
    _emit_csv(frame, args.csv)
    return EXIT_OK


def cmd_catalog(args) -> int:
    validator = CatalogValidator(quiet=args.json)
    results = validator.validate_all()
    if args.json:
        print(json.dumps(results, indent=2, default=str))
    else:
        validator.print_summary()
    return overall_exit_code(results)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cvstab",
        description="Continuous-variable stabilizer codes: build, validate, lift, decode and simulate",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress at INFO level")
    sub = parser.add_subparsers(dest="command", required=True)

    def code_command(name: str, handler, help_text: str):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("code", help=f"builtin name ({', '.join(builtin_names())}) or cvstab file")
        p.set_defaults(handler=handler)
        return p

    def tolerances(p):
        p.add_argument("--tol", type=float, default=config.TOLERANCE, help="logical displacement tolerance")
        p.add_argument("--syndrome-tol", type=float, default=config.SYNDROME_TOLERANCE, help="syndrome match tolerance")

    def simulation(p):
        p.add_argument("--model", required=True, help="e.g. single-mode-gaussian:sigma=0.5,restrict=q")
        p.add_argument("--decoder", choices=DECODERS, default=SINGLE_MODE)
        p.add_argument("--sigma-m", type=float, default=0.0, help="syndrome measurement noise")
        p.add_argument("--trials", type=int, default=1000)
        p.add_argument("--seed", type=int, default=config.SEED)
        p.add_argument("--csv", help="output path (default: stdout)")
        p.add_argument("--tol", type=float, default=config.TOLERANCE, help="logical displacement tolerance")

    p = code_command("show", cmd_show, "print a code with its logicals and syndrome observables")
    p.add_argument("--fourier", choices=CONVENTIONS, nargs="?", const=SYMPLECTIC, help="apply the Fourier transform on every mode")

    p = sub.add_parser("validate", help="check isotropy and rank of a cvstab file")
    p.add_argument("file")
    p.set_defaults(handler=cmd_validate)

    p = code_command("logicals", cmd_logicals, "print a hyperbolic logical basis")
    p.add_argument("--printed", action="store_true", help="show the catalog or file logicals instead of the derived ones")

    code_command("complement", cmd_complement, "print a basis of the symplectic complement")

    p = sub.add_parser("concatenate", help="encode every mode of OUTER with INNER")
    p.add_argument("outer")
    p.add_argument("inner")
    p.set_defaults(handler=cmd_concatenate)

    p = sub.add_parser("lift", help="sign a binary check matrix into a CV code")
    p.add_argument("file", help="Pauli strings or a 'bits 1' document")
    p.add_argument("--max-nodes", type=int, default=config.MAX_NODES, help="search node budget")
    p.set_defaults(handler=cmd_lift)

    p = code_command("syndrome", cmd_syndrome, "syndrome of a shift error")
    p.add_argument("--error", required=True, help="e.g. mode=2,q=0.3,p=-0.1 (1-based mode)")

    p = code_command("decode", cmd_decode, "decode a syndrome")
    p.add_argument("--syndrome", help='comma-separated values, e.g. "-0.3,0"')
    p.add_argument("--error", help="true error, used for the syndrome and the logical residual")
    p.add_argument("--decoder", choices=DECODERS, default=SINGLE_MODE)
    tolerances(p)

    code_command("check", cmd_check, "certify single-mode correctability")

    p = code_command("simulate", cmd_simulate, "Monte Carlo failure rate")
    simulation(p)
    p.add_argument("--records", help="also write per-trial records to this path")

    p = code_command("sweep", cmd_sweep, "failure rate over a parameter grid")
    simulation(p)
    p.add_argument("--param", choices=SWEEP_PARAMETERS, default=SIGMA)
    p.add_argument("--grid", required=True, help='e.g. "0,0.01,0.1"')

    p = sub.add_parser("catalog", help="validate every builtin code")
    p.add_argument("--json", action="store_true", help="output results in JSON format")
    p.set_defaults(handler=cmd_catalog)
    return parser


def attach_numeric_values(argv: Sequence[str]) -> List[str]:
    """Rewrite '--syndrome -0.3,0' as '--syndrome=-0.3,0'; argparse takes '-0.3,0' for a flag"""
    out = []
    i = 0
    while i < len(argv):
        token = argv[i]
        if token in NUMERIC_LIST_OPTIONS and i + 1 < len(argv) and re.match(r"-\.?\d", argv[i + 1]):
            out.append(f"{token}={argv[i + 1]}")
            i += 2
        else:
            out.append(token)
            i += 1
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(attach_numeric_values(sys.argv[1:] if argv is None else list(argv)))
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    logging.basicConfig(
        level=logging.INFO if args.verbose else config.LOG_LEVEL,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.handler(args)
    except (ParseError, UnknownCode, InvalidModel, OSError) as e:
        logger.error(f"{args.command}: {e}")
        print_error(str(e))
        return EXIT_USAGE
    except CvstabError as e:
        logger.error(f"{args.command}: {e}")
        print_error(str(e))
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
