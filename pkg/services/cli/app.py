"""Command-line surface: matrix, classify, section, fiber, witness and verify.

Exit codes: 0 definite result, 2 usage error, 3 unresolved strata or time
budget, 4 input error, 5 precondition violation, 6 computation failure.
"""
import argparse
import sys
import time
from pathlib import Path

from shared import __version__
from shared.errors import InputError, TotalRealError
from shared.logging import cleanup_old_logs, setup_logger
from shared.models import ABSENT_ON_SAMPLED_CELLS, RunManifest, Verdict, dump_report, point_text
from services.classify import ClassifyService
from services.groebner import check_radical_generic, groebner_basis, load_system
from services.hermite import hermite_matrix, signature_rank, specialize
from services.mpoly.syntax import parse_rational
from services.oracle import oracle_count
from services.sections import SectionService, load_curve, parse_form, totally_real_fibers

logger = setup_logger('cli')

EXIT_OK = 0
EXIT_UNRESOLVED = 3


def _chart(text):
    try:
        i, j = (int(part) for part in text.split(','))
    except ValueError:
        raise argparse.ArgumentTypeError(f'chart must be "i,j" (normalized coefficient, chart coordinate), got {text!r}')
    return i, j


def _assignment(text):
    name, sep, value = text.partition('=')
    if not sep:
        raise argparse.ArgumentTypeError(f'expected name=value, got {text!r}')
    try:
        return name.strip(), parse_rational(value)
    except InputError as e:
        raise argparse.ArgumentTypeError(str(e))


def _coefficients(text):
    try:
        return [parse_rational(part) for part in text.split(',')]
    except InputError as e:
        raise argparse.ArgumentTypeError(str(e))


def _add_output_flags(p):
    p.add_argument('--json', action='store_true', help='Print the machine-readable report instead of text.')
    p.add_argument('--out', type=Path, help='Also write the report to this file.')
    p.add_argument('--timings', action='store_true', help='Include timings in the machine-readable report.')


def _add_classify_flags(p):
    mode = p.add_mutually_exclusive_group()
    mode.add_argument('--certified', dest='mode', action='store_const', const='certified',
                      help='Open-cell sampling: a point in every component of {w != 0} (default).')
    mode.add_argument('--randomized', dest='mode', action='store_const', const='randomized',
                      help='Seeded random rational samples only.')
    p.add_argument('--samples', type=int, help='Random sample count.')
    p.add_argument('--seed', type=int, help='Seed for random samples and coordinate changes.')
    p.add_argument('--max-minutes', type=float, dest='max_minutes', help='Time budget; exhausting it gives exit 3.')
    p.add_argument('--max-parameters', type=int, dest='max_parameters',
                   help='Largest parameter count handled in certified mode.')
    p.add_argument('--jobs', type=int, help='Worker processes (default: TOTALREAL_JOBS or [app] jobs).')


def build_parser():
    parser = argparse.ArgumentParser(
        prog='totalreal',
        description='Real root classification of parametric systems and totally real sections of curves.')
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('matrix', help='Print the parametric Hermite matrix of a system.')
    p.add_argument('system', type=Path)
    p.add_argument('--check-radical', action='store_true', dest='check_radical',
                   help='Run the randomized radicality audit.')
    _add_output_flags(p)

    p = sub.add_parser('classify', help='Classify the number of real solutions over parameter space.')
    p.add_argument('system', type=Path)
    p.add_argument('--target-count', type=int, dest='target', help='Also search a verified witness with this count.')
    _add_classify_flags(p)
    _add_output_flags(p)

    p = sub.add_parser('section', help='Search a simple totally real hyperplane section of a curve.')
    p.add_argument('curve', type=Path)
    p.add_argument('--chart', type=_chart, help='Normalized coefficient index and chart coordinate index, "i,j".')
    p.add_argument('--all-charts', action='store_true', dest='all_charts',
                   help='Run every normalization pass (default unless --chart is given).')
    p.add_argument('--target-count', type=int, dest='target', help='Real point count to look for (default: degree).')
    _add_classify_flags(p)
    _add_output_flags(p)

    p = sub.add_parser('fiber', help='Classify the fibers of a pencil [Q1 : Q2] on a plane curve.')
    p.add_argument('curve', type=Path)
    p.add_argument('q1', nargs='?')
    p.add_argument('q2', nargs='?')
    p.add_argument('--pencil', type=Path, help='File with Q1 and Q2 on two lines (instead of q1 q2).')
    _add_classify_flags(p)
    _add_output_flags(p)

    p = sub.add_parser('witness', help='Find a verified parameter point with a given real count.')
    p.add_argument('system', type=Path)
    p.add_argument('--target-count', type=int, dest='target', required=True)
    _add_classify_flags(p)
    _add_output_flags(p)

    p = sub.add_parser('verify', help='Count solutions of a specialized system or a hyperplane section.')
    p.add_argument('input', type=Path, help='System file, or curve file with --hyperplane.')
    p.add_argument('--at', type=_assignment, action='append', default=[], metavar='NAME=VALUE',
                   help='Parameter value (repeatable).')
    p.add_argument('--hyperplane', type=_coefficients, help='Comma-separated hyperplane coefficients c0,...,cn.')
    p.add_argument('--chart', type=int, help='Chart coordinate index for --hyperplane.')
    _add_output_flags(p)
    return parser


def _classify_service(args):
    return ClassifyService(mode=args.mode, samples=args.samples, seed=args.seed, max_minutes=args.max_minutes,
                           max_parameters=args.max_parameters, jobs=args.jobs)


def _flags(args):
    skip = {'command', 'system', 'curve', 'pencil', 'input', 'json', 'out', 'timings', 'q1', 'q2'}
    flags = {}
    for key, value in sorted(vars(args).items()):
        if key in skip or value is None or value is False or value == []:
            continue
        if isinstance(value, (list, tuple)):
            value = [list(map(str, v)) if isinstance(v, tuple) else str(v) for v in value]
        elif not isinstance(value, (bool, int, str)):
            value = str(value)
        flags[key] = value
    return flags


def cmd_matrix(args):
    system = load_system(args.system)
    gb = groebner_basis(system)
    H = hermite_matrix(system, gb=gb)
    body = {
        'delta': H.dim,
        'basis': list(H.basis_text),
        'entries': H.entries_text(),
        'winfty': H.winfty.to_text(),
        'winfty_factors': [f.to_text() for f in H.winfty_factors],
        'raw_det': H.raw_det.to_text(),
        'wh': H.wh.to_text(),
        'w': H.w.to_text(),
        'degrees': H.degrees(),
    }
    lines = [f'Hermite matrix of {system.name} (delta = {H.dim})',
             f'  basis: {", ".join(H.basis_text)}']
    for i, row in enumerate(H.entries_text()):
        lines.append(f'  row {i}: ' + ' | '.join(row))
    lines += [f'  wInfty = {body["winfty"]}', f'  det (raw) = {body["raw_det"]}', f'  wH = {body["wh"]}',
              f'  w = {body["w"]}',
              '  degrees: ' + ', '.join(f'{k} {v}' for k, v in sorted(body['degrees'].items()))]
    if args.check_radical:
        audit = check_radical_generic(gb, system)
        body['radical_audit'] = audit
        lines.append(f'  radicality audit: {audit}')
    return body, '\n'.join(lines), EXIT_OK, None


def cmd_classify(args):
    system = load_system(args.system)
    service = _classify_service(args)
    report = service.classify(system, args.target)
    status = EXIT_UNRESOLVED if report.incomplete or report.unresolved else EXIT_OK
    return report.to_dict(), report.to_text(), status, service.seed


def cmd_section(args):
    curve = load_curve(args.curve)
    classify = _classify_service(args)
    service = SectionService(classify)
    all_charts = args.all_charts or args.chart is None
    verdict = service.totally_real_section(curve, args.chart, all_charts, args.target)
    status = EXIT_UNRESOLVED if verdict.verdict is Verdict.INCOMPLETE else EXIT_OK
    return verdict.to_dict(), verdict.to_text(), status, classify.seed


def _pencil_forms(args):
    if args.pencil is None:
        if args.q1 is None or args.q2 is None:
            raise InputError('fiber needs q1 and q2, or --pencil FILE')
        return args.q1, args.q2
    try:
        lines = [line.split('#', 1)[0].strip() for line in args.pencil.read_text().splitlines()]
    except OSError as e:
        raise InputError(f'cannot read pencil file {args.pencil}: {e}') from e
    forms = [line for line in lines if line]
    if len(forms) != 2:
        raise InputError(f'{args.pencil}: expected two forms, found {len(forms)}')
    return forms


def cmd_fiber(args):
    curve = load_curve(args.curve)
    q1, q2 = (parse_form(text, curve) for text in _pencil_forms(args))
    classify = _classify_service(args)
    report = SectionService(classify).fiber_classify(curve, q1, q2)
    fibers = totally_real_fibers(report)
    body = {**report.to_dict(), 'totally_real_fibers': fibers}
    text = report.to_text() + '\nTotally real fibers: ' + (', '.join(fibers) if fibers else 'none')
    status = EXIT_UNRESOLVED if report.incomplete or report.unresolved else EXIT_OK
    return body, text, status, classify.seed


def cmd_witness(args):
    system = load_system(args.system)
    service = _classify_service(args)
    found = service.find_witness(system, args.target)
    if found is ABSENT_ON_SAMPLED_CELLS:
        body = {'target': args.target, 'witness': str(found)}
        text = f'{system.name}: no parameter point with {args.target} real solutions ({found})'
    else:
        body = {'target': args.target, 'witness': found.to_dict()}
        text = (f'{system.name}: {point_text(found.point)} gives {found.real_count} real of '
                f'{found.complex_distinct} distinct solutions (oracle: {found.oracle_real})')
    return body, text, EXIT_OK, service.seed


def cmd_verify(args):
    if args.hyperplane is not None:
        curve = load_curve(args.input)
        check = SectionService(ClassifyService()).verify_hyperplane(curve, args.hyperplane, args.chart)
        return check.to_dict(), check.to_text(), EXIT_OK, None
    system = load_system(args.input)
    point = dict(args.at)
    missing = [p for p in system.varset.params if p not in point]
    if missing:
        raise InputError(f'values required for parameters {", ".join(missing)} (use --at name=value)')
    fiber = system.specialize(point)
    result = oracle_count(fiber)
    body = {'point': {k: str(v) for k, v in point.items()}, **result.to_dict()}
    lines = [f'{system.name} at {point_text(point) or "no parameters"}: '
             f'{result.real_distinct} real of {result.complex_distinct} distinct solutions']
    try:
        sig, rank = signature_rank(specialize(hermite_matrix(fiber), {}))
    except TotalRealError as e:
        logger.warning(f"Hermite cross-check skipped: {e}")
    else:
        body['hermite'] = {'signature': sig, 'rank': rank}
        lines.append(f'  Hermite signature {sig}, rank {rank}')
    for box in result.real_boxes:
        lines.append('  ' + ', '.join(f'{v} in [{lo}, {hi}]' for v, (lo, hi) in zip(result.variables, box)))
    return body, '\n'.join(lines), EXIT_OK, None


COMMANDS = {
    'matrix': cmd_matrix,
    'classify': cmd_classify,
    'section': cmd_section,
    'fiber': cmd_fiber,
    'witness': cmd_witness,
    'verify': cmd_verify,
}


def run(argv=None, stdout=None):
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    inputs = [getattr(args, key) for key in ('system', 'curve', 'pencil', 'input') if getattr(args, key, None)]
    started = time.monotonic()
    try:
        body, text, status, seed = COMMANDS[args.command](args)
    except TotalRealError as e:
        logger.error(f"{args.command}: {e}")
        print(f'error: {e}', file=sys.stderr)
        return e.exit_code
    manifest = RunManifest.create(args.command, inputs, _flags(args), seed)
    manifest.timings[args.command] = round(time.monotonic() - started, 3)
    output = dump_report(manifest, body, args.timings) if args.json else text
    print(output, file=stdout)
    if args.out:
        args.out.write_text(output + '\n')
        logger.info(f"Report written to {args.out}")
    return status


def main(argv=None):
    cleanup_old_logs()
    return run(argv)
