"""``divmod`` command line.

Every subcommand reads one JSON job (see ``divmodule.jobs``) and prints a
report, JSON by default.  Reports are built with a fixed field order so the
same job and seed always give the same bytes.

Exit codes: 0 success, 1 bad input, 2 mathematical precondition failed,
3 step budget exhausted, 4 internal inconsistency or failed corpus check.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import (BudgetExceeded, CertificationError, DivModError, InputError, InternalError,
                     PreconditionError)
from .groebner import Ideal
from .jobs import JobSpec, load_job
from .ring import GREVLEX

EXIT_OK, EXIT_INPUT, EXIT_PRECONDITION, EXIT_BUDGET, EXIT_INTERNAL = 0, 1, 2, 3, 4

COMMANDS = ("fitting", "det0", "norm", "psi", "bourbaki", "rees", "fiber", "spread", "reduction", "classify",
            "zak", "nonfree-locus", "verify-corpus")
# results that only have their local meaning for graded input
LOCAL_COMMANDS = {"bourbaki", "rees", "fiber", "spread", "reduction", "classify", "zak", "nonfree-locus", "psi",
                  "norm"}
IDEAL_KEYS = {"ideal", "K", "fiber_ideal", "numerator"}


def ideal_json(i: Ideal):
    return [str(g) for g in i.groebner(GREVLEX)]


def matrix_json(m):
    return m.to_strings()


# -- commands ---------------------------------------------------------------

def _fitting(job: JobSpec, args):
    from .presmod import fitting_ideal
    if args.index is None:
        raise InputError("fitting needs --index")
    return {"index": args.index, "ideal": ideal_json(fitting_ideal(job.presentation(), args.index))}


def _det0(job, args):
    from .divisors import cokernel_presentation, det0
    from .groebner import ideal_equal
    from .presmod import fitting_ideal
    E = job.require_embedded("det0")
    d = det0(E)
    return {"ideal": ideal_json(d),
            "cokernel_fitting_agrees": ideal_equal(d, fitting_ideal(cokernel_presentation(E), 0))}


def _norm(job, args):
    from .divisors import norm_representative
    from .presmod import is_pd_at_most_one
    M = job.presentation()
    cert = norm_representative(M, job.options["seed"])
    return {"columns": list(cert.columns), "rho": matrix_json(cert.rho), "ideal": ideal_json(cert.ideal),
            "pd_one": is_pd_at_most_one(M)}


def _psi(job, args):
    from .divisors import find_psi
    from .presmod import theta_image
    M = job.presentation()
    k = M.rank - 1
    psi = find_psi(M, k)
    return {"rows_excluded": k, "psi": matrix_json(psi), "ideal": ideal_json(theta_image(psi))}


def _bourbaki(job, args):
    from .bourbaki import generic_bourbaki, verify_bourbaki
    E = job.require_embedded("bourbaki")
    r = generic_bourbaki(E, U=job.reduction, seed=job.options["seed"])
    checks = verify_bourbaki(r, E)
    return {"seed_used": r.seed, "attempts": r.attempts,
            "coefficients": [[str(c) for c in row] for row in r.coefficients],
            "generators": matrix_json(r.generators), "phi": matrix_json(r.presentation.phi),
            "psi": matrix_json(r.psi), "ideal": ideal_json(r.ideal),
            "certificates": dict(sorted(r.certificates.items())), "checks": checks}


def _rees(job, args):
    from .rees import rees_presentation
    rp = rees_presentation(job.require_embedded("rees"))
    return {"t": list(rp.t_names), "y": list(rp.y_names), "K": ideal_json(rp.K)}


def _fiber(job, args):
    from .rees import fiber_cone
    fc = fiber_cone(job.require_embedded("fiber"))
    return {"y": list(fc.ideal.ring.variables), "fiber_ideal": ideal_json(fc.ideal), "dimension": fc.dimension}


def _spread(job, args):
    from .rees import analytic_spread
    return {"spread": analytic_spread(job.require_embedded("spread"))}


def _reduction(job, args):
    from .rees import reduction_number
    E = job.require_embedded("reduction")
    if args.u is not None:
        try:
            u = sorted({int(s) for s in args.u.split(",") if s.strip()})
        except ValueError as exc:
            raise InputError(f"--u expects comma-separated generator indices, got {args.u!r}") from exc
    elif job.reduction is not None:
        u = job.reduction
    else:
        raise InputError("reduction needs --u or a 'reduction' field in the job")
    out = reduction_number(u, E, job.options["rmax"])
    return {"u": u, "rmax": out.rmax, "r": out.r, "outcome": str(out)}


def _classify(job, args):
    from .rees import classify_module
    return classify_module(job.require_embedded("classify")).to_dict()


def _zak(job, args):
    from .divisors import zak_report
    return zak_report(job.require_embedded("zak"), job.options["seed"])


def _nonfree(job, args):
    from .divisors import fractional_inverse, det0, is_free_local, nonfree_locus_ideal, nonfree_locus_matches
    E = job.require_embedded("nonfree-locus")
    inv = fractional_inverse(det0(E))
    return {"ideal": ideal_json(nonfree_locus_ideal(E)),
            "inverse": {"numerator": ideal_json(inv.numerator), "denominator": str(inv.denominator)},
            "free_at_origin": is_free_local(E), "matches_fitting_locus": nonfree_locus_matches(E)}


HANDLERS = {"fitting": _fitting, "det0": _det0, "norm": _norm, "psi": _psi, "bourbaki": _bourbaki, "rees": _rees,
            "fiber": _fiber, "spread": _spread, "reduction": _reduction, "classify": _classify, "zak": _zak,
            "nonfree-locus": _nonfree}


def _homogeneous(job: JobSpec):
    if job.embedded is not None:
        return job.embedded.is_homogeneous()
    return job.presented.phi.is_homogeneous()


def run(job: JobSpec, command: str, args) -> dict:
    """Execute ``command`` on ``job`` and return the report dictionary."""
    warnings = []
    if command in LOCAL_COMMANDS and not _homogeneous(job):
        warnings.append("input is not homogeneous: local invariants are computed globally and may differ")
    result = HANDLERS[command](job, args)
    return {"command": command, "label": job.label, "ring": job.ring.to_json(),
            "options": {"seed": job.options["seed"], "rmax": job.options["rmax"]},
            "warnings": warnings, "result": result}


def run_corpus(seed: int, tag=None) -> dict:
    from .corpus import verify_all
    s = verify_all(tag, seed=seed)
    return {"command": "verify-corpus", "label": None, "ring": None,
            "options": {"seed": seed, "tag": tag}, "warnings": [], "result": s.to_dict()}


# -- rendering --------------------------------------------------------------

def _render(key, value, indent, lines):
    pad = "  " * indent
    if isinstance(value, dict):
        lines.append(f"{pad}{key}:")
        for k, v in value.items():
            _render(k, v, indent + 1, lines)
    elif key in IDEAL_KEYS and isinstance(value, list):
        lines.append(f"{pad}{key}: ({', '.join(value)})" if value else f"{pad}{key}: (0)")
    elif isinstance(value, list) and value and all(isinstance(r, list) for r in value):
        lines.append(f"{pad}{key}:")
        for row in value:
            lines.append(f"{pad}  [" + "  ".join(str(c) for c in row) + "]")
    elif isinstance(value, list):
        lines.append(f"{pad}{key}: [" + ", ".join(str(v) for v in value) + "]")
    elif value is None:
        lines.append(f"{pad}{key}: n/a")
    elif isinstance(value, bool):
        lines.append(f"{pad}{key}: {'yes' if value else 'no'}")
    else:
        lines.append(f"{pad}{key}: {value}")


def format_corpus(report: dict) -> str:
    res = report["result"]
    lines = [f"verify-corpus (seed {report['options']['seed']})", ""]
    width = max((len(t) for t in res["tags"]), default=3)
    lines.append(f"{'tag'.ljust(width)}  passed  failed")
    for tag, counts in res["tags"].items():
        lines.append(f"{tag.ljust(width)}  {counts['passed']:6d}  {counts['failed']:6d}")
    failures = [c for c in res["checks"] if not c["pass"]]
    if failures:
        lines.append("")
        lines.append("failures:")
        for c in failures:
            lines.append(f"  {c['entry']} [{c['tag']}] {c['check']}: computed {c['computed']!r}, "
                         f"expected {c['expected']!r}")
    lines.append("")
    lines.append(f"total: {res['passed']} passed, {res['failed']} failed")
    return "\n".join(lines) + "\n"


def format_report(report: dict) -> str:
    """Human-readable rendering; ideals print as ``(g1, g2)``, ``(0)`` or ``(1)``."""
    if "error" in report:
        err = report["error"]
        return f"{report['command']}: error ({err['kind']}): {err['message']}\n"
    if report["command"] == "verify-corpus":
        return format_corpus(report)
    lines = [f"{report['command']}" + (f" [{report['label']}]" if report.get("label") else "")]
    ring = report["ring"]
    field = ring["field"] if isinstance(ring["field"], str) else f"F{ring['field']['Fp']}"
    lines.append(f"ring: {field}[{', '.join(ring['vars'])}] ({ring['order']})")
    lines.append(f"seed: {report['options']['seed']}")
    for w in report["warnings"]:
        lines.append(f"warning: {w}")
    for k, v in report["result"].items():
        _render(k, v, 0, lines)
    return "\n".join(lines) + "\n"


def dump_json(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


# -- entry point -------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", help="JSON job file")
    common.add_argument("--seed", type=int, help="seed for random specialization (default 0)")
    common.add_argument("--rmax", type=int, help="largest reduction number tried (default 5)")
    common.add_argument("--order", choices=("grevlex", "lex"), help="monomial order for the computation")
    common.add_argument("--format", choices=("json", "text"), default="json")
    parser = _Parser(prog="divmod", description="Divisors, Fitting ideals and Rees invariants of modules.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "fitting":
            p.add_argument("--index", type=int)
        if name == "reduction":
            p.add_argument("--u", help="comma-separated generator indices of the reduction")
        if name == "verify-corpus":
            p.add_argument("--tag", help="only run checks with this tag")
    return parser


def _emit(report, fmt, out):
    out.write(format_report(report) if fmt == "text" else dump_json(report))


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    command = args.command
    try:
        if command == "verify-corpus":
            report = run_corpus(args.seed or 0, args.tag)
            _emit(report, args.format, out)
            return EXIT_OK if report["result"]["failed"] == 0 else EXIT_INTERNAL
        if not args.input:
            raise InputError(f"{command} needs --input FILE")
        job = load_job(args.input, args.order)
        if args.seed is not None:
            job.options["seed"] = args.seed
        if args.rmax is not None:
            job.options["rmax"] = args.rmax
        if command == "fitting" and args.index is not None and args.index < 0:
            raise InputError("--index must be non-negative")
        report = run(job, command, args)
        for w in report["warnings"]:
            print(f"divmod: warning: {w}", file=sys.stderr)
        _emit(report, args.format, out)
        return EXIT_OK
    except DivModError as exc:
        code = {InputError: EXIT_INPUT, PreconditionError: EXIT_PRECONDITION, CertificationError: EXIT_PRECONDITION,
                BudgetExceeded: EXIT_BUDGET, InternalError: EXIT_INTERNAL}
        exit_code = next((c for cls, c in code.items() if isinstance(exc, cls)), EXIT_INTERNAL)
        report = {"command": command, "error": {"kind": type(exc).__name__, "message": str(exc),
                                                "exit_code": exit_code}}
        print(f"divmod {command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        _emit(report, args.format, out)
        return exit_code


def console_main():
    sys.exit(main())


if __name__ == "__main__":
    console_main()
