"""Command-line front end.

Subcommands
-----------

- ``fraction``    evaluate a continued fraction, name the knot, mirror terms,
                  canonical even expansion
- ``h1``          order of H_1 of an n-fold cyclic branched cover, by any or
                  all of the three methods (presentation SNF, Alexander
                  resultant oracle, closed-form table)
- ``identities``  the symbolic determinant-identity suites and the
                  matrix-vs-formula grid suite
- ``cert``        generate and verify quasi-alternating certificates
- ``lo-elim``     sign-pattern elimination reports (the five-generator table
                  and the three-generator level-0 analysis)

Conventions: negative numbers go after ``--`` or inside a comma-separated
option value; report commands print a header line (tool version, seed, grid,
table provenance) to stderr so stdout stays diff-clean against the golden
files; the exit code is 0 exactly when every requested check passes, 1 on a
failed check or rejected certificate, 2 on usage errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from . import __version__
from .goeritz import (
    IdentityCheck,
    IdentityReport,
    build_A_star,
    build_L_star,
    det_exact,
    table_formula,
    table_row,
    verify_additivity,
    verify_substitution_identities,
)
from .loelim import (
    EliminationReport,
    Genus2Report,
    genus2_level0,
    genus2_report_text,
    report_csv,
    report_text,
    table1_report,
)
from .multipoly import MultiPoly
from .presentations import genus_one_presentation, h1_order, mv_presentation
from .qacert import (
    CertError,
    CertParseError,
    deserialize,
    generate_A_cert,
    generate_L_cert,
    serialize,
    verify,
)
from .twobridge import (
    EvenExpansion,
    cf_value,
    even_expansion_from_fraction,
    h1_cyclic_cover_order,
    knot_name,
    mirror_terms,
)
from .words import SignLattice, WordError

OUTDIR_ENV = "BRIDGECOVER_OUTDIR"
_PARAM_NAMES = ("q", "s", "t", "l")


# ---------------------------------------------------------------------------
# Run configuration
# ---------------------------------------------------------------------------

@dataclass
class RunConfig:
    """Settings shared by the grid and report commands.

    The grid maps each parameter to an inclusive integer range; ranges must
    be nonempty, and the seed is recorded in every report header.
    """

    grid: Dict[str, Tuple[int, int]] = field(
        default_factory=lambda: {name: (1, 3) for name in _PARAM_NAMES})
    output_dir: str = "."
    fmt: str = "text"
    seed: int = 0

    def validate(self) -> None:
        for name, (lo, hi) in self.grid.items():
            if lo > hi:
                raise ValueError(f"empty grid range {name}={lo}..{hi}")

    def values(self, name: str) -> range:
        lo, hi = self.grid[name]
        return range(lo, hi + 1)

    def points(self, names: Sequence[str]):
        """All grid points over the given parameters, as dicts."""
        for combo in itertools.product(*(self.values(n) for n in names)):
            yield dict(zip(names, combo))

    def grid_text(self) -> str:
        ranges = {self.grid[n] for n in _PARAM_NAMES}
        if len(ranges) == 1:
            lo, hi = next(iter(ranges))
            return f"q,s,t,l={lo}..{hi}"
        return " ".join(f"{n}={lo}..{hi}"
                        for n, (lo, hi) in self.grid.items())


def _parse_range(text: str) -> Tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise ValueError(f"range must look like LO..HI, got {text!r}")
    return int(lo), int(hi)


def load_config(path: str) -> Dict[str, Tuple[int, int]]:
    """Read grid overrides from a ``key = value`` text file.

    Accepted keys: ``grid`` (all four parameters at once) and the individual
    parameter names ``q``, ``s``, ``t``, ``l``; values are ``LO..HI`` ranges.
    Blank lines and ``#`` comments are ignored.
    """
    overrides: Dict[str, Tuple[int, int]] = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ValueError(f"{path}:{lineno}: expected key = value")
            key, value = key.strip(), value.strip()
            if key not in ("grid",) + _PARAM_NAMES:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            rng = _parse_range(value)
            if key == "grid":
                for name in _PARAM_NAMES:
                    overrides[name] = rng
            else:
                overrides[key] = rng
    return overrides


def _emit_header(cfg: RunConfig, grid: str, source: str) -> None:
    print(f"# bridgecover {__version__} | seed {cfg.seed} | grid {grid}"
          f" | source {source}", file=sys.stderr)


# ---------------------------------------------------------------------------
# Shared argument helpers
# ---------------------------------------------------------------------------

class _CliError(Exception):
    """Usage-level failure (exit code 2)."""


def _parse_terms(raw: Sequence[str]) -> List[int]:
    if not raw:
        raise _CliError("no continued-fraction terms given (put them after --)")
    try:
        terms = [int(t) for t in raw]
    except ValueError:
        raise _CliError(f"terms must be integers, got {list(raw)}")
    for i, a in enumerate(terms, start=1):
        if a == 0:
            raise _CliError(f"zero term at index {i} (terms are 1-indexed)")
    return terms


def _parse_params(text: str, count: int) -> List[int]:
    parts = [p.strip() for p in text.split(",")]
    try:
        values = [int(p) for p in parts]
    except ValueError:
        raise _CliError(f"--params must be comma-separated integers, got {text!r}")
    if len(values) != count:
        raise _CliError(f"expected {count} parameters, got {len(values)}")
    return values


def _bracket(values: Sequence[int]) -> str:
    return "[" + ",".join(str(v) for v in values) + "]"


_GLUED_OPTIONS = ("--params", "--signs", "--grid")


def _glue_option_values(argv: List[str]) -> List[str]:
    """Join value-taking options with their argument (``--params -1,1`` ->
    ``--params=-1,1``) so values starting with ``-`` parse cleanly."""
    out: List[str] = []
    i = 0
    while i < len(argv):
        arg = argv[i]
        if arg == "--":
            out.extend(argv[i:])
            break
        if arg in _GLUED_OPTIONS and i + 1 < len(argv):
            out.append(f"{arg}={argv[i + 1]}")
            i += 2
            continue
        out.append(arg)
        i += 1
    return out


def _is_int_token(text: str) -> bool:
    try:
        int(text)
    except ValueError:
        return False
    return True


def _hoist_terms(argv: List[str]) -> List[str]:
    """Allow options to precede the ``--`` term block (``h1 --cover 3 -- 2 2``)
    or follow it (``h1 -- 2 2 --cover 3``) by splicing the integer run after
    ``--`` in with the leading positionals.  The separator itself is dropped:
    bare integers (negative included) parse fine as positionals, argparse
    mishandles a literal ``--`` across subparsers, and positionals split on
    both sides of an option would land in separate match runs."""
    if "--" not in argv:
        return argv
    i = argv.index("--")
    head, rest = argv[:i], argv[i + 1:]
    j = 0
    while j < len(rest) and _is_int_token(rest[j]):
        j += 1
    k = 0
    while k < len(head) and not head[k].startswith("-"):
        k += 1
    return head[:k] + rest[:j] + head[k:] + rest[j:]


# ---------------------------------------------------------------------------
# fraction
# ---------------------------------------------------------------------------

def _cmd_fraction(args, cfg: RunConfig) -> int:
    terms = _parse_terms(args.terms)
    base = mirror_terms(terms) if args.mirror else terms
    try:
        fr = cf_value(base)
    except ValueError as exc:
        raise _CliError(str(exc))
    if args.even_form:
        try:
            expansion = even_expansion_from_fraction(fr)
        except ValueError as exc:
            raise _CliError(str(exc))
        print(_bracket(expansion.terms))
        return 0
    if args.mirror:
        print(_bracket(base))
        return 0
    name = knot_name(fr)
    det = abs(fr.numerator)
    if name is not None:
        print(f"{fr} (knot {name} class, det {det})")
    else:
        print(f"{fr} (det {det})")
    return 0


# ---------------------------------------------------------------------------
# h1
# ---------------------------------------------------------------------------

class _Inapplicable(Exception):
    """A homology method that does not cover the given input."""


def _expansion_for(terms: List[int], fr: Fraction) -> EvenExpansion:
    if len(terms) % 2 == 0 and all(a % 2 == 0 for a in terms):
        return EvenExpansion(terms)
    return even_expansion_from_fraction(fr)


def _genus_one_params(expansion: EvenExpansion) -> Tuple[int, int]:
    a, b = expansion.terms
    return a // 2, -b // 2


def _genus_two_params(expansion: EvenExpansion) -> Dict[str, int]:
    a, b, c, d = expansion.terms
    return {"q": -a // 2, "s": b // 2, "t": -c // 2, "l": d // 2}


def _h1_snf(expansion: Optional[EvenExpansion], n: int):
    if expansion is None:
        return 1  # the unknot: every cyclic cover is the 3-sphere
    if expansion.genus == 1:
        k, l = _genus_one_params(expansion)
        return h1_order(genus_one_presentation(k, l, n))
    if expansion.genus == 2:
        p = _genus_two_params(expansion)
        return h1_order(mv_presentation(p["q"], p["s"], p["t"], p["l"], n))
    raise _Inapplicable(
        f"no cover-presentation family for a genus-{expansion.genus} "
        f"expansion (the presentation families cover genus 1 and 2)")


def _h1_oracle(expansion: Optional[EvenExpansion], n: int):
    if expansion is None:
        return 1
    return h1_cyclic_cover_order(expansion, n)


def _h1_table(expansion: Optional[EvenExpansion], n: int):
    if expansion is None or expansion.genus != 2:
        raise _Inapplicable(
            "the closed-form determinant table covers the four-parameter "
            "genus-2 family only")
    if n != 3:
        raise _Inapplicable(
            "the closed-form value is tabulated for the 3-fold cover only")
    return abs(table_formula("L", "*,*,*", _genus_two_params(expansion)))


_H1_METHODS = (("snf", _h1_snf), ("oracle", _h1_oracle), ("table", _h1_table))


def _cmd_h1(args, cfg: RunConfig) -> int:
    terms = _parse_terms(args.terms)
    if args.cover < 2:
        raise _CliError(f"--cover must be >= 2, got {args.cover}")
    try:
        fr = cf_value(terms)
    except ValueError as exc:
        raise _CliError(str(exc))
    if fr.numerator % 2 == 0:
        raise _CliError(
            f"numerator {fr.numerator} is even: a two-component link, "
            f"not a knot")
    try:
        expansion = (None if abs(fr.numerator) == 1
                     else _expansion_for(terms, fr))
    except ValueError as exc:
        raise _CliError(str(exc))

    if args.method == "all":
        values = []
        for name, method in _H1_METHODS:
            try:
                values.append(method(expansion, args.cover))
            except _Inapplicable:
                continue
        agree = all(v == values[0] for v in values)
        print(",".join(str(v) for v in values)
              + (" AGREE" if agree else " DISAGREE"))
        return 0 if agree else 1
    method = dict(_H1_METHODS)[args.method]
    try:
        print(method(expansion, args.cover))
    except _Inapplicable as exc:
        raise _CliError(f"method {args.method!r} not applicable: {exc}")
    return 0


# ---------------------------------------------------------------------------
# identities
# ---------------------------------------------------------------------------

_IDENTIFIED_ROWS = {
    1: (("inf,0,0", "0,inf,0"), "0,0,*"),
    2: (("inf,0,inf", "inf,inf,0"), "0,inf,inf"),
}


def _identification_checks(family: str, lemma: str) -> List[IdentityCheck]:
    """Items (1) and (2): resolutions identified with a tabulated row."""
    checks = []
    for item, (sources, target) in _IDENTIFIED_ROWS.items():
        label = f"{lemma}({item})"
        ok = all(
            table_row(family, res).identified_via == label
            and table_row(family, res).poly == table_row(family, target).poly
            for res in sources)
        statement = (f"det {family}({sources[0]}) = det {family}({sources[1]})"
                     f" = det {family}({target})")
        checks.append(IdentityCheck(label, statement,
                                    MultiPoly.const(0 if ok else 1)))
    return checks


def _lemma_item_suite(family: str, lemma: str) -> IdentityReport:
    """All five numbered items of a substitution lemma as one suite."""
    wanted = [c for c in verify_substitution_identities().checks
              if c.name.startswith(lemma)]
    return IdentityReport(_identification_checks(family, lemma) + wanted)


def _identity_suite(name: str, cfg: RunConfig) -> IdentityReport:
    if name == "lemma5.4":
        return verify_additivity("A")
    if name == "lemma5.12":
        return verify_additivity("L")
    if name == "lemma5.3":
        return _lemma_item_suite("A", "Lemma 5.3")
    if name == "lemma5.11":
        return _lemma_item_suite("L", "Lemma 5.11")
    raise _CliError(f"unknown identity suite {name!r}")


@dataclass
class _AgreementRow:
    family: str
    params: Tuple[str, ...]
    points: int
    agree: int

    @property
    def ok(self) -> bool:
        return self.agree == self.points


def _tables_agreement(cfg: RunConfig) -> List[_AgreementRow]:
    """Star-row determinants: block matrix against closed formula, on the
    configured grid."""
    rows = []
    specs = (
        ("A", ("q", "s", "t"),
         lambda p: det_exact(build_A_star(p["q"], p["s"], p["t"]))),
        ("A(t=1)", ("q", "s"),
         lambda p: det_exact(build_A_star(p["q"], p["s"], 1))),
        ("B", ("q", "s", "t"),
         lambda p: det_exact(build_L_star(p["q"], p["s"], p["t"], 1))),
        ("L", ("q", "s", "t", "l"),
         lambda p: det_exact(build_L_star(p["q"], p["s"], p["t"], p["l"]))),
    )
    for family, names, matrix_det in specs:
        points = agree = 0
        for point in cfg.points(names):
            points += 1
            if abs(matrix_det(point)) == abs(table_formula(family, "*,*,*",
                                                           point)):
                agree += 1
        rows.append(_AgreementRow(family, names, points, agree))
    return rows


def _print_identity_report(report: IdentityReport, fmt: str) -> None:
    passed = sum(1 for c in report.checks if c.ok)
    total = len(report.checks)
    summary = f"{passed}/{total} " + ("PASS" if passed == total else "FAIL")
    if fmt == "text":
        sys.stdout.write(report.to_text())
        print(summary)
    elif fmt == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["name", "statement", "status"])
        for c in report.checks:
            writer.writerow([c.name, c.statement,
                             "PASS" if c.ok else "FAIL"])
        print(summary)
    else:
        payload = {
            "checks": [{"name": c.name, "statement": c.statement,
                        "ok": c.ok} for c in report.checks],
            "passed": passed,
            "total": total,
        }
        print(json.dumps(payload, indent=2))


def _print_agreement(rows: List[_AgreementRow], fmt: str) -> None:
    passed = sum(1 for r in rows if r.ok)
    summary = f"{passed}/{len(rows)} " + ("PASS" if passed == len(rows)
                                          else "FAIL")
    if fmt == "text":
        cells = [("family", "params", "points", "agree")]
        cells += [(r.family, ",".join(r.params), str(r.points), str(r.agree))
                  for r in rows]
        widths = [max(len(row[i]) for row in cells) for i in range(4)]
        for row in cells:
            print("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
        print(summary)
    elif fmt == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["family", "params", "points", "agree", "status"])
        for r in rows:
            writer.writerow([r.family, " ".join(r.params), r.points, r.agree,
                             "PASS" if r.ok else "FAIL"])
        print(summary)
    else:
        payload = {
            "rows": [{"family": r.family, "params": list(r.params),
                      "points": r.points, "agree": r.agree, "ok": r.ok}
                     for r in rows],
            "passed": passed,
            "total": len(rows),
        }
        print(json.dumps(payload, indent=2))


_SUITE_SOURCES = {
    "lemma5.4": "Table 3 rows (family A)",
    "lemma5.12": "Table 5 rows (family L)",
    "lemma5.3": "Tables 2-3 rows (family A)",
    "lemma5.11": "Tables 4-5 rows (family L)",
    "tables": "Tables 2-5 star rows",
}


def _cmd_identities(args, cfg: RunConfig) -> int:
    _emit_header(cfg, cfg.grid_text(), _SUITE_SOURCES[args.suite])
    if args.suite == "tables":
        rows = _tables_agreement(cfg)
        _print_agreement(rows, cfg.fmt)
        return 0 if all(r.ok for r in rows) else 1
    report = _identity_suite(args.suite, cfg)
    if args.suite in ("lemma5.4", "lemma5.12") and args.grid is not None:
        family = "A" if args.suite == "lemma5.4" else "L"
        names = ("q", "s", "t") if family == "A" else _PARAM_NAMES
        report = verify_additivity(family, grid=list(cfg.points(names)))
    _print_identity_report(report, cfg.fmt)
    return 0 if report.all_ok else 1


# ---------------------------------------------------------------------------
# cert
# ---------------------------------------------------------------------------

def _cmd_cert(args, cfg: RunConfig) -> int:
    if args.action == "generate":
        if args.params is None:
            raise _CliError("generate needs --params (or parameters after --)")
        if args.family == "A":
            q, s, t = _parse_params(args.params, 3)
            try:
                cert = generate_A_cert(q, s, t)
            except CertError as exc:
                print(f"generation failed: {exc}", file=sys.stderr)
                return 1
        else:
            q, s, t, l = _parse_params(args.params, 4)
            try:
                cert = generate_L_cert(q, s, t, l)
            except CertError as exc:
                print(f"generation failed: {exc}", file=sys.stderr)
                return 1
        text = serialize(cert)
        if args.out is None:
            sys.stdout.write(text)
            return 0
        out_path = args.out
        if not os.path.isabs(out_path):
            out_path = os.path.join(cfg.output_dir, out_path)
        with open(out_path, "w", encoding="utf-8") as handle:
            handle.write(text)
        print(f"wrote {out_path}", file=sys.stderr)
        return 0

    if args.infile is None:
        raise _CliError("verify needs --in FILE")
    try:
        with open(args.infile, encoding="utf-8") as handle:
            data = handle.read()
    except OSError as exc:
        raise _CliError(str(exc))
    try:
        cert = deserialize(data)
    except CertParseError as exc:
        print(f"REJECT {exc}")
        return 1
    verdict = verify(cert)
    print(verdict)
    return 0 if verdict else 1


# ---------------------------------------------------------------------------
# lo-elim
# ---------------------------------------------------------------------------

def _parse_signs(text: str) -> Tuple[int, int, int, int]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 4 or any(p not in ("+", "-") for p in parts):
        raise _CliError(
            f"--signs must be four comma-separated + or - entries, got {text!r}")
    return tuple(1 if p == "+" else -1 for p in parts)  # type: ignore[return-value]


def _sign_text(sign: Optional[SignLattice]) -> str:
    if sign is None:
        return ""
    return ">1" if sign is SignLattice.STRICT_POS else "<1"


def _elimination_json(report: EliminationReport) -> Dict[str, object]:
    return {
        "generators": list(report.generators),
        "patterns": [
            {"index": v.index, "signs": v.assignment.text(),
             "verdict": "eliminated" if v.eliminated else "survives",
             "witness": v.witness, "witness_sign": _sign_text(v.witness_sign)}
            for v in report.verdicts
        ],
        "orbits": [{"canonical": o.canonical.text(), "members": list(o.members)}
                   for o in report.orbits],
        "survivors": [v.index for v in report.survivors()],
    }


def _genus2_json(report: Genus2Report) -> Dict[str, object]:
    return {
        "signs": list(report.signs),
        "case": report.case_label,
        "patterns": [
            {"index": v.index, "signs": v.assignment.text(),
             "verdict": "eliminated" if v.eliminated else "survives",
             "witness": v.witness, "witness_sign": _sign_text(v.witness_sign)}
            for v in report.verdicts
        ],
        "canonical": report.canonical.text(),
        "wings": [{"name": w.name, "sign": _sign_text(w.sign) or "unknown",
                   "form": w.form} for w in report.wings],
        "subcases": [
            {"index": sc.index,
             "assumed": [[name, _sign_text(s)] for name, s in sc.assumed],
             "derived": [[d.atom, _sign_text(d.sign), d.via]
                         for d in sc.derived],
             "closed": sc.closed, "witness": sc.witness,
             "witness_sign": _sign_text(sc.witness_sign)}
            for sc in report.subcases
        ],
        "residual": len(report.residual()),
    }


def _cmd_loelim(args, cfg: RunConfig) -> int:
    if args.family == "genus1":
        if not args.table1:
            raise _CliError("--family genus1 needs --table1")
        if args.signs is not None:
            raise _CliError("--signs applies to --family genus2 only")
        _emit_header(cfg, "k>=2,l>=1 symbolic", "Table 1")
        report = table1_report()
        if cfg.fmt == "csv":
            sys.stdout.write(report_csv(report))
        elif cfg.fmt == "json":
            print(json.dumps(_elimination_json(report), indent=2))
        else:
            sys.stdout.write(report_text(report))
        return 0

    if args.table1:
        raise _CliError("--table1 applies to --family genus1 only")
    if args.signs is None:
        raise _CliError("--family genus2 needs --signs like +,+,-,+")
    signs = _parse_signs(args.signs)
    _emit_header(cfg, "q,s,t,l signs only", "level-0 sign analysis")
    report = genus2_level0(*signs)
    if cfg.fmt == "json":
        print(json.dumps(_genus2_json(report), indent=2))
    elif cfg.fmt == "csv":
        raise _CliError("csv output covers the genus1 table only")
    else:
        sys.stdout.write(genus2_report_text(report))
    return 0


# ---------------------------------------------------------------------------
# Parser and entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bridgecover",
        description="Exact invariants of two-bridge knots and their branched"
                    " covers.")
    parser.add_argument("--version", action="version",
                        version=f"bridgecover {__version__}")
    parser.add_argument("--config", metavar="FILE",
                        help="key = value file overriding the grid defaults")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed recorded in report headers (default 0)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fraction", help="evaluate a continued fraction")
    p.add_argument("--mirror", action="store_true",
                   help="print the mirror-image term list")
    p.add_argument("--even-form", action="store_true",
                   help="print the canonical even expansion")
    p.add_argument("terms", nargs="*", metavar="TERM",
                   help="continued-fraction terms (negatives after --)")

    p = sub.add_parser("h1", help="homology order of a cyclic branched cover")
    p.add_argument("--cover", type=int, default=2, metavar="N",
                   help="cover degree n >= 2 (default 2)")
    p.add_argument("--method", choices=("snf", "oracle", "table", "all"),
                   default="oracle")
    p.add_argument("terms", nargs="*", metavar="TERM")

    p = sub.add_parser("identities", help="symbolic determinant identities")
    p.add_argument("--suite", required=True,
                   choices=("lemma5.4", "lemma5.12", "lemma5.3", "lemma5.11",
                            "tables"))
    p.add_argument("--grid", metavar="LO..HI",
                   help="numeric grid for the table suites")
    p.add_argument("--format", choices=("text", "csv", "json"), default=None)

    p = sub.add_parser("cert", help="quasi-alternating certificates")
    p.add_argument("action", choices=("generate", "verify"))
    p.add_argument("--family", choices=("A", "L"), default="L")
    p.add_argument("--params", metavar="Q,S,T[,L]",
                   help="comma-separated parameters")
    p.add_argument("--out", metavar="FILE",
                   help="write the certificate here instead of stdout")
    p.add_argument("--in", dest="infile", metavar="FILE",
                   help="certificate to verify")
    p.add_argument("params_tail", nargs="*", metavar="PARAM",
                   help="alternative to --params: values after --")

    p = sub.add_parser("lo-elim", help="sign-pattern elimination reports")
    p.add_argument("--family", choices=("genus1", "genus2"), required=True)
    p.add_argument("--table1", action="store_true",
                   help="the five-generator elimination table")
    p.add_argument("--signs", metavar="+,+,-,+",
                   help="sign class of (q, s, t, l) for the level-0 analysis")
    p.add_argument("--format", choices=("text", "csv", "json"), default=None)

    return parser


_COMMANDS = {
    "fraction": _cmd_fraction,
    "h1": _cmd_h1,
    "identities": _cmd_identities,
    "cert": _cmd_cert,
    "lo-elim": _cmd_loelim,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(_glue_option_values(_hoist_terms(argv)))

    cfg = RunConfig(seed=args.seed)
    cfg.output_dir = os.environ.get(OUTDIR_ENV, cfg.output_dir)
    try:
        if args.config is not None:
            cfg.grid.update(load_config(args.config))
        grid_arg = getattr(args, "grid", None)
        if grid_arg is not None:
            rng = _parse_range(grid_arg)
            cfg.grid = {name: rng for name in _PARAM_NAMES}
        cfg.validate()
    except (OSError, ValueError) as exc:
        parser.error(str(exc))
    if getattr(args, "format", None) is not None:
        cfg.fmt = args.format
    if getattr(args, "params", None) is None and getattr(args, "params_tail",
                                                         None):
        args.params = ",".join(args.params_tail)

    try:
        return _COMMANDS[args.command](args, cfg)
    except _CliError as exc:
        parser.error(str(exc))
        return 2  # unreachable; parser.error exits
    except (WordError, CertError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
