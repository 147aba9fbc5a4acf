"""
Nilsoliton Checker command-line front end

Subcommands: analyze, family, reproduce, gram, der, ricci
"""

import argparse
import json
import logging
import os
import sys
from typing import Any, Dict, List, Optional, Sequence, Tuple

from colorama import Fore, Style, init

from nilsoliton_checker.core.algebra_file import parse_algebra, serialize_algebra
from nilsoliton_checker.core.families import FamilySpec, family_extended
from nilsoliton_checker.core.liecore import LieAlgebra
from nilsoliton_checker.core.metric import DiagonalMetric
from nilsoliton_checker.core.report import (
    analyze_report,
    der_report,
    family_report,
    gram_report,
    ricci_report,
    to_jsonable,
)
from nilsoliton_checker.core.reproduce import ReproduceOptions, reproduce_report
from nilsoliton_checker.utils.config import Config
from nilsoliton_checker.utils.file_utils import read_text_file, safe_write_file
from nilsoliton_checker.utils.logging import setup_logging
from nilsoliton_checker.utils.validation import (
    ValidationError,
    parse_positive_rational,
    validate_max_k,
    validate_metric_text,
)

init(autoreset=True)

EXIT_INPUT_ERROR = 64
EXIT_INTERNAL_ERROR = 70

OK = f"{Fore.GREEN}✓{Style.RESET_ALL}"
BAD = f"{Fore.RED}✗{Style.RESET_ALL}"
WARN = f"{Fore.YELLOW}⚠{Style.RESET_ALL}"

VERDICT_COLORS = {"Soliton": Fore.GREEN, "Nonsoliton": Fore.RED, "Inapplicable": Fore.YELLOW}
CLAIM_MARKERS = {"PASS": OK, "FAIL": BAD, "DISCREPANCY": WARN}

CommandResult = Tuple[Dict[str, Any], int]


def print_error(message: str):
    print(f"{Fore.RED}Error: {message}{Style.RESET_ALL}", file=sys.stderr)


def format_json_output(report: dict) -> str:
    """Format a report as JSON with every number as an exact string"""
    try:
        return json.dumps(to_jsonable(report), indent=2)
    except (TypeError, ValueError) as e:
        logging.getLogger("nilsoliton_checker").error(f"JSON serialization error: {e}")
        return json.dumps({"error": "Failed to serialize report", "details": str(e)}, indent=2)


def _header(title: str) -> List[str]:
    return [f"\n{'=' * 60}", title, f"{'=' * 60}\n"]


def _section(title: str) -> str:
    return f"\n{Fore.YELLOW}{Style.BRIGHT}{title}{Style.RESET_ALL}"


def _line(key: str, value: Any, marker: str = "") -> str:
    if marker:
        return f"  {marker} {key:.<40} {value}"
    return f"    {key:.<40} {value}"


def _flag(value: bool) -> str:
    return OK if value else BAD


def _vector(values: Sequence[Any]) -> str:
    return "(" + ", ".join(values) + ")"


def _matrix_lines(rows: Sequence[Sequence[str]]) -> List[str]:
    if not rows:
        return []
    width = max(len(entry) for row in rows for entry in row)
    return ["    [" + " ".join(entry.rjust(width) for entry in row) + "]" for row in rows]


def _summary_lines(report: dict) -> List[str]:
    lines = [f"Algebra ID: {report.get('algebra_id', 'N/A')}", f"Source:     {report.get('source') or 'N/A'}"]
    algebra = report.get("algebra")
    if algebra:
        lines.append(_section("Algebra"))
        lines.append(_line("Dimension", algebra["dim"]))
        lines.append(_line("Nonzero structure constants", algebra["bracket_count"]))
        lines.append(_line("Center dimension", algebra["center_dim"]))
        lines.append(_line("Commutator dimension", algebra["commutator_dim"]))
        if algebra["nilpotent"]:
            lines.append(_line("Nilpotent", f"yes, type ({', '.join(algebra['type'])})", OK))
            lines.append(_line("Step", algebra["step"]))
        else:
            lines.append(_line("Nilpotent", "no", BAD))
    return lines


def _grading_lines(grading: Optional[dict]) -> List[str]:
    if grading is None:
        return [_line("Positive grading", "none found", WARN)]
    return [_line("Positive grading", _vector(grading["weights"]), OK)]


def _gram_lines(gram: Optional[dict]) -> List[str]:
    lines = [_section("Gram Matrix")]
    if gram is None:
        lines.append(_line("Index set", "empty (abelian)"))
        return lines
    lines.append(_line("Index set size", gram["size"]))
    lines.append(_line("Index set", " ".join(gram["index_set"])))
    lines.append(_line("Nice (no entry 2)", "yes" if gram["nice"] else "no", _flag(gram["nice"])))
    if "matrix" in gram:
        lines.extend(_matrix_lines(gram["matrix"]))
    return lines


def _verdict_lines(verdict: dict) -> List[str]:
    tag = verdict["tag"]
    lines = [_section("Soliton Test"), f"  Verdict: {VERDICT_COLORS.get(tag, '')}{Style.BRIGHT}{tag}{Style.RESET_ALL}"]
    if tag == "Soliton":
        lines.append(_line("Positive solution", _vector(verdict["witness"]), OK))
    elif tag == "Nonsoliton":
        evidence = verdict["evidence"]
        lines.append(_line("U v = [1] consistent", "yes" if evidence["consistent"] else "no"))
        lines.append(_line("Best smallest component t*", evidence["t_star"] if evidence["t_star"] is not None else "N/A"))
        lines.append(_line("Simplex iterations", evidence["simplex_iterations"]))
        if evidence["particular"] is not None:
            lines.append(_line("Particular solution", _vector(evidence["particular"])))
            for index, direction in enumerate(evidence["nullspace_basis"], start=1):
                lines.append(_line(f"Direction {index}", _vector(direction)))
        zeros = evidence["zero_components"]
        if zeros:
            lines.append(_line("Identically zero components", ", ".join(zeros), BAD))
    else:
        lines.append(_line("Reason", verdict["reason"], WARN))
    return lines


def _derivation_lines(derivations: dict) -> List[str]:
    lines = [_section("Derivations")]
    lines.append(_line("dim Der", derivations["dimension"]))
    lines.append(_line("Diagonal torus dimension", derivations["diagonal_torus_dim"]))
    for index, vector in enumerate(derivations["diagonal_torus_basis"], start=1):
        lines.append(_line(f"Torus generator {index}", _vector(vector)))
    nikolayevsky = derivations["nikolayevsky"]
    if nikolayevsky is None:
        lines.append(_line("Nikolayevsky derivation", "not diagonal in this basis", WARN))
    else:
        lines.append(_line("Nikolayevsky derivation", "diag" + _vector(nikolayevsky["diagonal"]),
                           _flag(nikolayevsky["verified"])))
    if "basis" in derivations:
        lines.append(_section("Derivation Basis"))
        for index, matrix in enumerate(derivations["basis"], start=1):
            lines.append(f"  D{index}")
            lines.extend(_matrix_lines(matrix))
    return lines


def _family_lines(family: dict) -> List[str]:
    return [
        _section("Family"),
        _line("Parameters", f"m = {family['m']}, k = {family['k']}, q = {family['q']}"),
        _line("Grading weights", _vector(family["grading_weights"])),
        _line("Grading derivation", "yes" if family["d_candidate_is_derivation"] else "no",
              _flag(family["d_candidate_is_derivation"])),
        _line("lambda", family["lambda"]),
        _line("trace(D)/trace(D^2)", family["rank_one_scale"]),
        _line("lambda D is pre-Einstein", "yes" if family["pre_einstein_check"] else "no",
              _flag(family["pre_einstein_check"])),
    ]


def _ricci_lines(report: dict) -> List[str]:
    soliton = report["soliton_metric"]
    lines = [_section("Ricci Curvature"), _line("Metric", "diag" + _vector(report["metric"]))]
    lines.append("  Ricci form")
    lines.extend(_matrix_lines(report["ricci_form"]))
    lines.append("  Ricci endomorphism")
    lines.extend(_matrix_lines(report["ricci_endomorphism"]))
    lines.append(_line("Scalar curvature", report["scalar_curvature"]))
    lines.append(_section("Metric Soliton Check"))
    if soliton["is_soliton"]:
        lines.append(_line("Ric = beta Id + D", "yes", OK))
        lines.append(_line("beta", soliton["beta"]))
        lines.append("  D")
        lines.extend(_matrix_lines(soliton["derivation"]))
    else:
        lines.append(_line("Ric = beta Id + D", "no", BAD))
    return lines


def _reproduce_lines(report: dict) -> List[str]:
    lines = [f"q values: {', '.join(report['q_values'])}", f"max k:    {report['max_k']}", _section("Claims")]
    for claim in report["claims"]:
        marker = CLAIM_MARKERS.get(claim["status"], "")
        lines.append(f"  {marker} {claim['id']:.<40} {claim['status']}")
        lines.append(f"      {claim['description']}")
        lines.append(f"      {Style.DIM}{claim['detail']}{Style.RESET_ALL}")
    summary = report["summary"]
    lines.append(_section("Summary"))
    for status, count in summary.items():
        lines.append(_line(status, count, CLAIM_MARKERS.get(status, "")))
    return lines


def format_text_output(report: dict) -> str:
    """Format a report as human-readable text"""
    report = to_jsonable(report)
    command = report.get("command")
    titles = {
        "analyze": "Nilsoliton Analysis Report",
        "family": "Family Member Report",
        "gram": "Gram Matrix Report",
        "der": "Derivation Algebra Report",
        "ricci": "Ricci Curvature Report",
        "reproduce": "Published Claims Reproduction",
    }
    output = _header(titles.get(command, "Report"))

    if command == "reproduce":
        output.extend(_reproduce_lines(report))
    elif command == "gram":
        output.extend(_summary_lines(report))
        output.extend(_gram_lines(report["gram"]))
    elif command == "der":
        output.extend(_summary_lines(report))
        output.append(_section("Grading"))
        output.append(_line("Positive grading", _vector(report["grading"]) if report["grading"] else "none found",
                            OK if report["grading"] else WARN))
        output.extend(_derivation_lines(report["derivations"]))
    elif command == "ricci":
        output.extend(_summary_lines(report))
        output.extend(_ricci_lines(report))
    else:
        output.extend(_summary_lines(report))
        if "family" in report:
            output.extend(_family_lines(report["family"]))
        output.append(_section("Grading"))
        output.extend(_grading_lines(report["grading"]))
        output.extend(_gram_lines(report["gram"]))
        output.extend(_verdict_lines(report["verdict"]))
        output.extend(_derivation_lines(report["derivations"]))
        if "written_files" in report:
            output.append(_section("Files"))
            for path in report["written_files"]:
                output.append(_line("Written", path, OK))

    output.append("")
    return "\n".join(output)


def load_algebra(path: str) -> LieAlgebra:
    """Read and parse a structure-constant file"""
    return parse_algebra(read_text_file(path))


def cmd_analyze(args, config: Config) -> CommandResult:
    g = load_algebra(args.file)
    report = analyze_report(g, source=args.file, include_gram=config.get("analysis.include_gram_matrix", True))
    return report, report["exit_code"]


def cmd_family(args, config: Config) -> CommandResult:
    spec = FamilySpec(args.m, args.k, args.q)
    member = family_extended(spec.m, spec.k, spec.q)
    report = family_report(spec, member, include_gram=config.get("analysis.include_gram_matrix", True))

    output_dir = args.output_dir or config.get_path("storage.output_dir")
    if output_dir:
        output_dir = os.path.expanduser(output_dir)
        algebra_path = os.path.join(output_dir, f"{spec.label}.alg")
        report_path = os.path.join(output_dir, f"{spec.label}.json")
        written = []
        if safe_write_file(algebra_path, serialize_algebra(member.algebra), "family"):
            written.append(algebra_path)
        if safe_write_file(report_path, format_json_output(report) + "\n", "family"):
            written.append(report_path)
        report["written_files"] = written
        if len(written) < 2:
            print(f"{Fore.YELLOW}Warning: could not write every output file to {output_dir}{Style.RESET_ALL}",
                  file=sys.stderr)
    return report, report["exit_code"]


def _reproduce_options(args, config: Config) -> ReproduceOptions:
    q_texts = args.q or config.get("reproduce.q_values")
    q_values = tuple(parse_positive_rational(str(q), "q") for q in q_texts)
    max_k = args.max_k if args.max_k is not None else config.get("reproduce.max_k")
    if not validate_max_k(max_k):
        raise ValidationError(f"--max-k must be an integer between 0 and 50, got {max_k}")
    return ReproduceOptions(
        q_values=q_values,
        max_k=max_k,
        sample_count=config.get("reproduce.sample_count"),
        sample_seed=config.get("reproduce.sample_seed"),
        coefficient_bound=config.get("reproduce.coefficient_bound"),
        workers=config.get("reproduce.workers"),
    )


def cmd_reproduce(args, config: Config) -> CommandResult:
    report = reproduce_report(_reproduce_options(args, config))
    return report, report["exit_code"]


def cmd_gram(args, config: Config) -> CommandResult:
    return gram_report(load_algebra(args.file), source=args.file), 0


def cmd_der(args, config: Config) -> CommandResult:
    return der_report(load_algebra(args.file), source=args.file), 0


def cmd_ricci(args, config: Config) -> CommandResult:
    g = load_algebra(args.file)
    if args.metric:
        metric = DiagonalMetric(tuple(validate_metric_text(args.metric, g.dim)))
    else:
        metric = DiagonalMetric.identity(g.dim)
    return ricci_report(g, metric, source=args.file), 0


COMMANDS = {
    "analyze": cmd_analyze,
    "family": cmd_family,
    "reproduce": cmd_reproduce,
    "gram": cmd_gram,
    "der": cmd_der,
    "ricci": cmd_ricci,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=["text", "json"],
        help="Output format (default: analysis.default_format from config)"
    )
    common.add_argument(
        "--config",
        help="Path to config file"
    )
    common.add_argument(
        "--verbose",
        action="store_true",
        help="Enable verbose logging"
    )

    parser = argparse.ArgumentParser(
        prog="nilsoliton_checker.py",
        description="Nilsoliton Checker - exact soliton tests for nilpotent Lie algebras",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  nilsoliton_checker.py analyze fixtures/n8_q1.alg
  nilsoliton_checker.py family --m 8 --k 1 --q 2 --format json
  nilsoliton_checker.py reproduce --q 7/3 --max-k 3
  nilsoliton_checker.py ricci fixtures/h3.alg --metric 1,1,4
        """
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    analyze = subparsers.add_parser("analyze", parents=[common], help="Full analysis of a structure-constant file")
    analyze.add_argument("file", help="Structure-constant file")

    family = subparsers.add_parser("family", parents=[common], help="Generate and analyze a family member")
    family.add_argument("--m", type=int, required=True, help="Base dimension, 8 or 9")
    family.add_argument("--k", type=int, default=0, help="Number of generator pairs (default: 0)")
    family.add_argument("--q", default="1", help="Family parameter, 'p' or 'p/q' (default: 1)")
    family.add_argument("--output-dir", help="Directory for the .alg and .json files (default: storage.output_dir)")

    reproduce = subparsers.add_parser("reproduce", parents=[common], help="Check every published claim")
    reproduce.add_argument("--q", action="append", help="Family parameter; repeat for several (default: from config)")
    reproduce.add_argument("--max-k", type=int, help="Largest extension size to check (default: from config)")

    gram = subparsers.add_parser("gram", parents=[common], help="Index set and Gram matrix")
    gram.add_argument("file", help="Structure-constant file")

    der = subparsers.add_parser("der", parents=[common], help="Derivation algebra basis and diagonal torus")
    der.add_argument("file", help="Structure-constant file")

    ricci = subparsers.add_parser("ricci", parents=[common], help="Ricci curvature of a diagonal metric")
    ricci.add_argument("file", help="Structure-constant file")
    ricci.add_argument("--metric", help="Diagonal metric entries, e.g. '1,1,4' (default: identity)")

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main CLI entry point"""
    parser = build_parser()
    args = parser.parse_args(argv)

    config = Config(args.config)
    log_level = "DEBUG" if args.verbose else config.get("logging.level", "WARNING")
    logger = setup_logging(
        level=log_level,
        log_file=config.get_path("logging.file"),
        max_file_size_mb=config.get("logging.max_file_size_mb", 10),
        backup_count=config.get("logging.backup_count", 5),
        command=args.command
    )
    output_format = args.format or config.get("analysis.default_format", "text")
    logger.info(f"Running {args.command}")

    try:
        report, exit_code = COMMANDS[args.command](args, config)
    except (ValidationError, OSError) as e:
        print_error(str(e))
        logger.debug(f"{args.command} rejected its input: {e}")
        return EXIT_INPUT_ERROR
    except Exception as e:
        logger.exception(f"Unexpected error in {args.command}: {e}")
        print_error(f"internal error: {e}")
        return EXIT_INTERNAL_ERROR

    if output_format == "json":
        print(format_json_output(report))
    else:
        print(format_text_output(report))
    logger.info(f"{args.command} finished with exit code {exit_code}")
    return exit_code
