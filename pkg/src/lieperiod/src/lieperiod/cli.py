"""lieperiod: verify the bracket identities, list relations, emit period polynomials, report kernels.

Reports go to stdout, logs to stderr. Exit codes: 0 pass, 1 a check failed, 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Callable, Iterator, Sequence

from loguru import logger

from common import settings as common_settings
from common.models.error_models import CheckFailure
from common.models.report_models import RunReport
from common.utils.exceptions import DomainException
from common.utils.logger_utils import setup_logging
from common.utils.timer_logger import TimerLogger
from lieperiod.arith import format_rational
from lieperiod.freelie import NCPoly
from lieperiod.ihara import (
    Sign,
    bracket_from_derivations,
    bracket_from_ihara,
    d_phi_closed,
    ihara_bracket_closed,
    phi_derivation,
    phi_ihara,
    phi_lie,
)
from lieperiod.models import KernelReportModel, PairRelationModel, PeriodRecordModel, RelationRecordModel, WeightedPolyModel
from lieperiod.period import WeightedPoly, is_period_polynomial, kz_building_block, substitute_relation
from lieperiod.relations import PairRelation, relation_cor1, relation_cor2, relation_dpcroch1, relation_dpcroch2
from lieperiod.relkernel import bracket_matrix, cusp_form_dimension, kernel_basis, kernel_relations
from lieperiod.series import SERIES_IDENTITIES, series_identity_mismatches

FORMATS = ("text", "json")
VERIFY_FAMILIES = ("dptop2", "ptof", "dpcroch", "ltop", "series")
RELATION_FAMILIES = ("cor1", "cor2", "dpcroch", "all")

Case = tuple[int, int]


def _check_weight(weight: int, *, minimum: int, maximum: int | None = None) -> None:
    if weight < minimum or weight % 2:
        raise DomainException(f"Weight must be even and >= {minimum}, got {weight}")
    if maximum is not None and weight > maximum:
        raise DomainException(f"Weight {weight} exceeds KERNEL_MAX_WEIGHT={maximum}")


def _dptop2_cases(max_weight: int) -> list[Case]:
    """(n, p) by weight then n; the n = 1 cases come last."""
    cases = [(n, w - n) for w in range(2, max_weight + 1) for n in range(1, w)]
    return [c for c in cases if c[0] > 1] + [c for c in cases if c[0] == 1]


def _identity_cases(family: str, max_weight: int, sign: Sign) -> Iterator[tuple[Case, NCPoly, NCPoly]]:
    """(case, closed form, brute force) for one closed-form family."""
    if family == "dptop2":
        for n, p in _dptop2_cases(max_weight):
            yield (n, p), d_phi_closed(n, p), phi_derivation(n, p, sign)
    elif family == "ptof":
        for w in range(2, max_weight + 1):
            for n in range(1, w):
                yield (n, w - n), ihara_bracket_closed(n, w - n), phi_ihara(n, w - n, sign)
    elif family == "dpcroch":
        for w in range(3, max_weight + 1):
            for n in range(2, w):
                yield (n, w - n), bracket_from_derivations(n, w - n, sign=sign), phi_lie(n, w - n)
    elif family == "ltop":
        for w in range(4, max_weight + 1):
            for m in range(2, w - 1, 2):
                yield (m, w - m), bracket_from_ihara(m, w - m, sign=sign), phi_lie(m, w - m)
    else:
        raise DomainException(f"Unknown identity family {family!r}")


def series_order_for(max_weight: int) -> int:
    return min(common_settings.SERIES_ORDER, max(2, max_weight - 2))


def cmd_verify(
    max_weight: int, which: Sequence[str], *, series_order: int | None = None, sign: Sign = 1
) -> RunReport:
    if max_weight < 4:
        raise DomainException(f"--max-weight must be >= 4, got {max_weight}")
    families = [f for f in VERIFY_FAMILIES if f in which or "all" in which]
    order = series_order if series_order is not None else series_order_for(max_weight)
    report = RunReport(command="verify", parameters={"max_weight": max_weight, "which": families})
    summary = []
    with TimerLogger("verify", {"max_weight": max_weight}) as timer:
        for family in families:
            cases = failures = 0
            with TimerLogger(family, {"max_weight": max_weight}):
                if family == "series":
                    for identity in SERIES_IDENTITIES:
                        cases += 1
                        bad = series_identity_mismatches(identity, order, sign=sign)
                        if bad:
                            failures += 1
                            dx, dy = bad[0]
                            report.fail(
                                CheckFailure(formula=f"series:{identity}", n=dx + 1, p=dy + 1, detail=f"order {order}")
                            )
                else:
                    for (n, p), closed, brute in _identity_cases(family, max_weight, sign):
                        cases += 1
                        if closed != brute:
                            failures += 1
                            report.fail(CheckFailure(formula=family, n=n, p=p))
            if failures:
                logger.error(f"{family}: {failures} of {cases} cases failed")
            summary.append({"family": family, "cases": cases, "failures": failures})
    report.payload = {"families": summary, "series_order": order if "series" in families else None}
    report.elapsed_ms = timer.elapsed_ms
    return report


def _relation_records(weight: int, family: str) -> Iterator[tuple[str, list[int], PairRelation]]:
    if family in ("cor1", "all") and weight % 4 == 0:
        yield "cor1", [weight // 4], relation_cor1(weight // 4)
    if family in ("cor2", "all"):
        half = weight // 2
        for n in range(1, half // 2 + 1):
            yield "cor2", [n, half - n], relation_cor2(n, half - n)
    if family == "dpcroch":
        yield "dpcroch1", [weight // 2], relation_dpcroch1(weight // 2)
        for n in range(2, weight // 2 + 1):
            yield "dpcroch2", [n, weight - n], relation_dpcroch2(n, weight - n)


def cmd_relations(weight: int, family: str) -> RunReport:
    _check_weight(weight, minimum=8)
    if family not in RELATION_FAMILIES:
        raise DomainException(f"Unknown relation family {family!r}")
    report = RunReport(command="relations", parameters={"weight": weight, "family": family})
    records = []
    with TimerLogger("relations", {"weight": weight, "family": family}) as timer:
        for name, arguments, rel in _relation_records(weight, family):
            if rel.is_empty():
                logger.debug(f"{name}{tuple(arguments)} is empty after canonicalization")
                continue
            ok = rel.annihilates()
            if not ok:
                report.fail(
                    CheckFailure(formula=name, n=arguments[0], p=(arguments[1:] or [None])[0], detail="does not annihilate")
                )
            records.append(
                RelationRecordModel(
                    family=name, arguments=arguments, relation=PairRelationModel.from_relation(rel), annihilates=ok
                ).model_dump(mode="json")
            )
    report.payload = {"relations": records}
    report.elapsed_ms = timer.elapsed_ms
    return report


def _period_record(source: str, P: WeightedPoly) -> dict:
    return PeriodRecordModel(
        source=source,
        polynomial=WeightedPolyModel.from_poly(P),
        text=P.to_text(),
        is_period_polynomial=is_period_polynomial(P),
    ).model_dump(mode="json")


def cmd_period(weight: int) -> RunReport:
    _check_weight(weight, minimum=8, maximum=common_settings.KERNEL_MAX_WEIGHT)
    report = RunReport(command="period", parameters={"weight": weight})
    records = []
    with TimerLogger("period", {"weight": weight}) as timer:
        for index, rel in enumerate(kernel_relations(weight)):
            records.append(_period_record(f"kernel[{index}]", substitute_relation(rel)))
        w = weight - 2
        for n in range(1, w, 2):
            records.append(_period_record(f"kz+[n={n}]", WeightedPoly(kz_building_block(n, weight, 1), w)))
        for n in range(2, w, 2):
            block = kz_building_block(n, weight, -1)
            if block.is_zero():
                logger.debug(f"kz-[n={n}] vanishes at weight {weight}")
                continue
            records.append(_period_record(f"kz-[n={n}]", WeightedPoly(block, w)))
        for record in records:
            if not record["is_period_polynomial"]:
                report.fail(CheckFailure(formula="period", n=weight, detail=record["source"]))
    report.payload = {"polynomials": records}
    report.elapsed_ms = timer.elapsed_ms
    return report


def cmd_kernel(weight: int) -> RunReport:
    _check_weight(weight, minimum=8, maximum=common_settings.KERNEL_MAX_WEIGHT)
    report = RunReport(command="kernel", parameters={"weight": weight})
    with TimerLogger("kernel", {"weight": weight}) as timer:
        M = bracket_matrix(weight)
        basis = kernel_basis(M)
        cusp_dim = cusp_form_dimension(weight)
    if len(basis) != cusp_dim:
        report.fail(
            CheckFailure(formula="dimension", n=weight, detail=f"kernel dim {len(basis)} != cusp form dim {cusp_dim}")
        )
    report.payload = KernelReportModel(
        weight=weight,
        pairs=list(M.col_labels),
        kernel=[[format_rational(c) for c in vector] for vector in basis],
        dim=len(basis),
        cusp_dim=cusp_dim,
    ).model_dump(mode="json")
    report.elapsed_ms = timer.elapsed_ms
    return report


def _relation_text(record: dict) -> str:
    rel = PairRelationModel.model_validate(record["relation"]).to_relation()
    args = ", ".join(str(a) for a in record["arguments"])
    verdict = "annihilates" if record["annihilates"] else "DOES NOT ANNIHILATE"
    return f"{record['family']}({args}): {rel.to_text()}  [{verdict}]"


def render_text(report: RunReport) -> str:
    lines = [f"{report.command}: {report.status}"]
    payload = report.payload or {}
    if report.command == "verify":
        for row in payload["families"]:
            lines.append(f"  {row['family']}: {row['cases']} cases, {row['failures']} failures")
    elif report.command == "relations":
        lines.extend(f"  {_relation_text(record)}" for record in payload["relations"])
        if not payload["relations"]:
            lines.append("  (no relations)")
    elif report.command == "period":
        for record in payload["polynomials"]:
            verdict = "period polynomial" if record["is_period_polynomial"] else "NOT a period polynomial"
            lines.append(f"  {record['source']} (w={record['polynomial']['w']}): {record['text']}  [{verdict}]")
    elif report.command == "kernel":
        pairs = ", ".join(f"({i},{j})" for i, j in payload["pairs"])
        lines.append(f"  weight {payload['weight']}: pairs [{pairs}]")
        lines.extend(f"  [{', '.join(vector)}]" for vector in payload["kernel"])
        lines.append(f"  dim {payload['dim']}, cusp_dim {payload['cusp_dim']}")
    if report.failure is not None:
        lines.append(f"  first failure: {report.failure.message}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lieperiod", description=__doc__.splitlines()[0])
    parser.add_argument("--format", choices=FORMATS, default="text", help="Report format (default: text)")
    # also accepted after the subcommand name
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS, help="Report format")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", parents=[fmt], help="Check the closed forms against brute force")
    verify.add_argument("--max-weight", type=int, default=common_settings.DEFAULT_MAX_WEIGHT)
    verify.add_argument("--which", nargs="+", choices=(*VERIFY_FAMILIES, "all"), default=["all"])
    verify.add_argument("--series-order", type=int, default=None, help="Truncation order for --which series")
    verify.add_argument("--flip-derivation-sign", action="store_true", help=argparse.SUPPRESS)

    relations = sub.add_parser("relations", parents=[fmt], help="List the relation families at a weight")
    relations.add_argument("--weight", type=int, required=True)
    relations.add_argument("--family", choices=RELATION_FAMILIES, default="all")

    period = sub.add_parser(
        "period",
        parents=[fmt],
        help="Period polynomials from the relation kernel, plus the nonzero KZ blocks P+ (odd n) and P- (even n)",
    )
    period.add_argument("--weight", type=int, required=True)

    kernel = sub.add_parser("kernel", parents=[fmt], help="Relation kernel vs cusp form dimension")
    kernel.add_argument("--weight", type=int, required=True)
    return parser


COMMANDS: dict[str, Callable[[argparse.Namespace], RunReport]] = {
    "verify": lambda args: cmd_verify(
        args.max_weight,
        args.which,
        series_order=args.series_order,
        sign=-1 if args.flip_derivation_sign else 1,
    ),
    "relations": lambda args: cmd_relations(args.weight, args.family),
    "period": lambda args: cmd_period(args.weight),
    "kernel": lambda args: cmd_kernel(args.weight),
}


def main(argv: Sequence[str] | None = None) -> int:
    setup_logging()
    args = build_parser().parse_args(argv)
    logger.info(f"Running {args.command}")
    try:
        report = COMMANDS[args.command](args)
    except DomainException as e:
        logger.error(f"{args.command}: {e.message}")
        print(f"lieperiod {args.command}: error: {e.message}", file=sys.stderr)
        return 2
    if report.failure is not None:
        logger.error(report.failure.message)
    logger.info(f"{args.command} finished with status {report.status}")
    print(report.dump_json() if args.format == "json" else render_text(report))
    return report.exit_code
