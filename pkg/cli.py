#!/usr/bin/env python3
"""
Heisenberg-Noether Command Line

Symmetry catalogs, bracket tables, Noether classification and conservation
laws of the semilinear Kohn-Laplace equation on H^1.

Usage:
    python cli.py symmetries --case zero --format latex
    python cli.py brackets --case linear
    python cli.py noether --case exp
    python cli.py claw derive --case arbitrary --symmetry T
    python cli.py claw compare --case zero --symmetry V3
    python cli.py eval "u_x*u_t" --op dx
    python cli.py heisenberg
    python cli.py selftest

Exit codes: 0 success, 1 mathematical mismatch, 2 usage error.
"""

import argparse
import logging
import sys
from typing import List, Optional

import config
import expr_core
from expr_core import ExprError
from nonlinearity import ARBITRARY, CaseError, NonlinearityCase
from utils import clean_expression_text, setup_logging, write_output

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2


class UsageError(Exception):
    """Bad invocation; reported as 'Error: ...' with exit code 2."""


# =============================================================================
# COMMANDS
# =============================================================================

def cmd_symmetries(case: NonlinearityCase, args: argparse.Namespace) -> int:
    from reference.schemas import CatalogModel, FieldModel
    from symmetry_engine import catalog

    generators = catalog(case)
    if args.format == 'json':
        model = CatalogModel(
            case=case.selector,
            description=case.describe(),
            generators=[FieldModel(name=g.name, xi=[expr_core.to_text(c) for c in g.xi],
                                   eta=expr_core.to_text(g.eta)) for g in generators],
        )
        write_output(model.model_dump_json(indent=2), args.out)
    elif args.format == 'latex':
        lines = [f"% {case.describe()}", "\\begin{align*}"]
        lines += [f"{g.latex} &= {g.to_latex()}\\\\" for g in generators]
        lines.append("\\end{align*}")
        write_output('\n'.join(lines), args.out)
    else:
        lines = [f"{case.describe()}: {len(generators)} generators"]
        lines += [f"  {g.name} = {g.to_text()}" for g in generators]
        write_output('\n'.join(lines), args.out)
    return EXIT_OK


def cmd_brackets(case: NonlinearityCase, args: argparse.Namespace) -> int:
    from symmetry_engine import bracket_table, render_table

    table = bracket_table(case)
    write_output(render_table(table, args.format), args.out)
    return EXIT_MISMATCH if table.unclassified() else EXIT_OK


def cmd_noether(case: NonlinearityCase, args: argparse.Namespace) -> int:
    from noether_engine import classify_case, format_certificate, is_noether, matches_theorem
    from reference import FixtureManager
    from reference.schemas import ClassificationModel
    from symmetry_engine import find_generator

    expected = FixtureManager().expected_noether_set(case)
    if args.symmetry:
        field = find_generator(case, args.symmetry)
        certificate = is_noether(field, case)
        write_output(format_certificate(certificate, args.format), args.out)
        return EXIT_OK if certificate.accepted == (field.name in expected) else EXIT_MISMATCH

    certificates = classify_case(case)
    matches = matches_theorem(case)
    if args.format == 'json':
        model = ClassificationModel(
            case=case.selector,
            certificates=[c.to_model() for c in certificates.values()],
            accepted=[name for name, c in certificates.items() if c.accepted],
            expected=list(expected),
            matches=matches,
        )
        write_output(model.model_dump_json(indent=2), args.out)
    else:
        blocks = [format_certificate(c, args.format) for c in certificates.values()]
        accepted = ', '.join(name for name, c in certificates.items() if c.accepted)
        blocks.append(f"accepted: {accepted}")
        blocks.append("matches the known Noether set" if matches
                      else f"MISMATCH: expected {', '.join(expected)}")
        write_output('\n'.join(blocks), args.out)
    return EXIT_OK if matches else EXIT_MISMATCH


def _parse_beta(text: str):
    cleaned = clean_expression_text(text)
    if not cleaned:
        raise UsageError("--beta needs an expression in x, y, t")
    return expr_core.parse(cleaned)


def _derived_vector(case: NonlinearityCase, args: argparse.Namespace):
    from conservation import conserved_vector, derive_with_beta
    from noether_engine import is_noether
    from symmetry_engine import find_generator

    if args.beta:
        return derive_with_beta(case, _parse_beta(args.beta))
    field = find_generator(case, args.symmetry)
    certificate = is_noether(field, case)
    if not certificate.accepted:
        raise UsageError(f"{field.name} is not a Noether symmetry in case {case.selector}; "
                         f"Euler witness: {expr_core.to_text(certificate.witness)}")
    return conserved_vector(certificate, field)


def _claw_derive(case: NonlinearityCase, args: argparse.Namespace) -> int:
    from conservation import derive_all, format_vector

    vectors = [_derived_vector(case, args)] if (args.symmetry or args.beta) else derive_all(case)
    if args.format == 'json' and len(vectors) > 1:
        content = '[\n' + ',\n'.join(v.to_model().model_dump_json(indent=2) for v in vectors) + '\n]'
    else:
        content = '\n\n'.join(format_vector(v, args.format) for v in vectors)
    write_output(content, args.out)
    return EXIT_OK


def _claw_verify(case: NonlinearityCase, args: argparse.Namespace) -> int:
    from conservation import paper_vector, verify_conservation
    from reference.schemas import VerificationModel

    if args.paper:
        vector = paper_vector(case, args.symmetry)
    else:
        vector = _derived_vector(case, args)
    check = verify_conservation(vector)
    if args.format == 'json':
        content = VerificationModel(symmetry=vector.symmetry, case=case.selector,
                                    provenance=vector.provenance.value, ok=check.ok,
                                    residual=expr_core.to_json_model(check.residual)).model_dump_json(indent=2)
    else:
        head = f"{vector.symmetry} [{case.selector}] ({vector.provenance.value}): "
        content = head + ('ok' if check.ok else f"FAIL, residual {expr_core.print_expr(check.residual, args.format)}")
    write_output(content, args.out)
    return EXIT_OK if check.ok else EXIT_MISMATCH


def _comparison_reports(case: NonlinearityCase, symmetry: Optional[str]):
    from conservation import compare, derive, ledger_covered, paper_vector, paper_vectors

    papers = [paper_vector(case, symmetry)] if symmetry else paper_vectors(case)
    results = []
    for paper in papers:
        report = compare(paper, derive(case, paper.symmetry))
        covered = None if report.is_empty() else ledger_covered(report)
        results.append((report, covered))
    return results


def _render_reports(results, fmt: str) -> str:
    from conservation import format_report, report_model

    if fmt == 'json':
        if len(results) == 1:
            return report_model(*results[0]).model_dump_json(indent=2)
        return '[\n' + ',\n'.join(report_model(r, c).model_dump_json(indent=2) for r, c in results) + '\n]'
    return '\n\n'.join(format_report(r, fmt, c) for r, c in results)


def _claw_compare(case: NonlinearityCase, args: argparse.Namespace) -> int:
    results = _comparison_reports(case, args.symmetry)
    write_output(_render_reports(results, args.format), args.out)
    return EXIT_OK if all(r.is_empty() or covered for r, covered in results) else EXIT_MISMATCH


def _claw_ledger(case: NonlinearityCase, args: argparse.Namespace) -> int:
    results = [(r, c) for r, c in _comparison_reports(case, None) if not r.is_empty()]
    if not results:
        write_output(f"no discrepancies in case {case.selector}", args.out)
        return EXIT_OK
    write_output(_render_reports(results, args.format), args.out)
    return EXIT_OK if all(covered for _, covered in results) else EXIT_MISMATCH


def cmd_claw(case: NonlinearityCase, args: argparse.Namespace) -> int:
    if args.action == 'verify' and not (args.symmetry or args.beta):
        raise UsageError("claw verify needs --symmetry (or --beta)")
    if args.paper and not args.symmetry:
        raise UsageError("--paper needs --symmetry")
    if args.beta and args.action in ('compare', 'ledger'):
        raise UsageError(f"--beta is not supported by claw {args.action}")
    actions = {'derive': _claw_derive, 'verify': _claw_verify, 'compare': _claw_compare, 'ledger': _claw_ledger}
    return actions[args.action](case, args)


def cmd_eval(case: NonlinearityCase, args: argparse.Namespace) -> int:
    from jet_calculus import PdeIdeal, euler_operator, is_total_divergence, reduce_mod_pde, total_derivative

    text = clean_expression_text(args.expression)
    if not text:
        raise UsageError("empty expression")
    e = expr_core.parse(text)
    op = args.op
    if op in ('dx', 'dy', 'dt'):
        result = total_derivative(e, op[1])
    elif op == 'euler':
        result = case.specialize(euler_operator(e))
    elif op == 'reduce':
        result = reduce_mod_pde(case.specialize(e), PdeIdeal.for_case(case))
    elif op == 'div-test':
        ideal = PdeIdeal.for_case(case) if case.beta_k is not None else None
        verdict = is_total_divergence(e, ideal)
        if verdict.ok:
            write_output("total divergence", args.out)
            return EXIT_OK
        write_output(f"not a total divergence; witness {expr_core.print_expr(verdict.witness, args.format)}",
                     args.out)
        return EXIT_MISMATCH
    else:
        result = e
    write_output(expr_core.print_expr(result, args.format), args.out)
    return EXIT_OK


def cmd_heisenberg(case: NonlinearityCase, args: argparse.Namespace) -> int:
    from symmetry_engine import heisenberg_report

    report = heisenberg_report()
    if args.format == 'json':
        write_output(report.model_dump_json(indent=2), args.out)
        return EXIT_OK
    lines = [
        f"identity element: {'ok' if report.identity_ok else 'FAIL'}",
        f"associativity: {'ok' if report.associative else 'FAIL'}",
        f"operator: {report.displayed_operator}",
    ]
    for field_set in report.field_sets:
        lines.append('')
        lines.append(f"fields {field_set.label}:")
        lines += [f"  {name} = {text}" for name, text in field_set.fields.items()]
        lines.append(f"  [X, Y] = {field_set.bracket_xy}")
        lines.append(f"  X^2 u + Y^2 u = {field_set.sublaplacian}")
        verdict = 'matches the operator' if field_set.matches_displayed_operator else \
            f"differs from the operator by {field_set.difference}"
        lines.append(f"  {verdict}")
    write_output('\n'.join(lines), args.out)
    return EXIT_OK


def cmd_selftest(case: Optional[NonlinearityCase], args: argparse.Namespace) -> int:
    from acceptance import format_selftest, run_selftest

    report = run_selftest(case)
    write_output(format_selftest(report, args.format), args.out)
    return EXIT_OK if report.passed else EXIT_MISMATCH


COMMANDS = {
    'symmetries': cmd_symmetries,
    'brackets': cmd_brackets,
    'noether': cmd_noether,
    'claw': cmd_claw,
    'eval': cmd_eval,
    'heisenberg': cmd_heisenberg,
    'selftest': cmd_selftest,
}


# =============================================================================
# ARGUMENT PARSING
# =============================================================================

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--case', default=None,
                        help="arbitrary | zero | linear | power:<p> | exp | cubic (default: arbitrary)")
    common.add_argument('--format', default=config.DEFAULT_FORMAT, choices=config.OUTPUT_FORMATS,
                        help="output format (default from HN_FORMAT)")
    common.add_argument('--max-order', type=int, default=None, help="override the maximal jet order")
    common.add_argument('--degree', type=int, default=None, help="override the reconstruction basis degree")
    common.add_argument('--out', default=None, help="write the report to this file")
    common.add_argument('--debug', action='store_true', help="debug logging")

    parser = argparse.ArgumentParser(
        prog='cli.py',
        description="Noether symmetries and conservation laws of the Kohn-Laplace equation on H^1.",
    )
    sub = parser.add_subparsers(dest='command', required=True)

    sub.add_parser('symmetries', parents=[common], help="list the symmetry catalog")
    sub.add_parser('brackets', parents=[common], help="classified bracket table")

    noether = sub.add_parser('noether', parents=[common], help="Noether classification")
    noether.add_argument('--symmetry', default=None, help="certify one generator")

    claw = sub.add_parser('claw', parents=[common], help="conservation laws")
    claw.add_argument('action', choices=('derive', 'verify', 'compare', 'ledger'))
    claw.add_argument('--symmetry', default=None, help="generator name")
    claw.add_argument('--beta', default=None, help="concrete beta(x, y, t) for W_beta")
    claw.add_argument('--paper', action='store_true', help="verify the transcribed vector")

    evaluate = sub.add_parser('eval', parents=[common], help="evaluate an expression")
    evaluate.add_argument('expression')
    evaluate.add_argument('--op', default='normalize',
                          choices=('normalize', 'dx', 'dy', 'dt', 'div-test', 'euler', 'reduce'))

    sub.add_parser('heisenberg', parents=[common], help="group law and sub-Laplacian report")
    sub.add_parser('selftest', parents=[common], help="run the acceptance suite")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    setup_logging(config.LOG_FILE, args.debug or config.DEBUG, config.VERBOSE_LOGGING)
    logger.info(f"Command: {args.command}")

    try:
        from reference.schemas import CliConfig

        config.validate_config()
        config.apply_overrides(args.max_order, args.degree)
        if args.case is None:
            case = None if args.command == 'selftest' else ARBITRARY
        else:
            case = NonlinearityCase.from_selector(args.case)
            CliConfig(case=args.case, format=args.format, max_order=args.max_order, basis_degree=args.degree)
        status = COMMANDS[args.command](case, args)
    except (UsageError, CaseError, ExprError, ValueError) as e:
        print(f"Error: {e}", file=sys.stderr)
        logger.info(f"Command {args.command} rejected: {e}")
        return EXIT_USAGE
    except Exception as e:
        logger.error(f"Command {args.command} failed: {e}")
        return EXIT_MISMATCH

    logger.info(f"Command {args.command} finished with exit code {status}")
    return status


if __name__ == "__main__":
    sys.exit(main())
