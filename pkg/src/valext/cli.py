"""Scenario-file driver.

Scenario grammar (line oriented; blank lines and lines starting with ``#``
are ignored; unknown sections or keys are rejected)::

    [base]
    base: Q | F<p>                     # base field of the coefficient tower
    gens: a: transcendental; r: algebraic y^2 + a
    k-prefix: 1                        # how many gens belong to the subfield k

    [valuation]                        # present only for extension scenarios
    vars: x1, x2                       # monomial valuation variables
    order: lex

    [extension]
    kprime-gens: s: algebraic y^2 + a  # steps of k' over k

    [options]
    truncation-N: 1
    point-index: 0
    seed: 0

Tower steps use the polynomial syntax ``y^2 - a*x + 3/2`` with ``y`` the
step variable.  A file without a ``[valuation]`` section describes a
compositum triple: M is the ``[base]`` tower, K its ``k-prefix``, and L is K
extended by ``kprime-gens``.

Commands::

    valext decompose <file>
    valext extend <file> [--verify] [--point <i>] [--truncate <N>]
    valext selftest [--seed <n>]

Exit codes: 0 success, 1 parse error, 2 capability error, 3 precondition
error, 4 selftest failure.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from . import poly as poly_mod
from .builder import (
    ExtensionScenario,
    build_general,
    build_strictly_maximal,
    prime_counts,
    render_report,
    spectrum_correspondence,
    verify_weakly_unramified,
)
from .compositum import tensor_decompose
from .errors import (
    CapabilityError,
    PreconditionError,
    ScenarioParseError,
    StructuralError,
)
from .fields import FieldTower
from .valuations import MonomialValuation

_SECTIONS = {"base", "valuation", "extension", "options"}
_KEYS = {
    "base": {"base", "gens", "k-prefix"},
    "valuation": {"vars", "order"},
    "extension": {"kprime-gens"},
    "options": {"truncation-N", "point-index", "seed"},
}


@dataclass
class ScenarioFile:
    """Parsed scenario: either an extension scenario or a compositum triple."""

    f_tower: FieldTower
    k_len: int
    kprime: FieldTower
    variables: tuple[str, ...] | None  # None: compositum triple
    truncation: int | None = None
    point_index: int = 0
    seed: int = 0

    @property
    def is_extension(self) -> bool:
        return self.variables is not None

    def to_extension_scenario(self) -> ExtensionScenario:
        if not self.is_extension:
            raise ScenarioParseError("scenario has no [valuation] section")
        v = MonomialValuation(self.f_tower, self.variables)
        return ExtensionScenario(
            valuation=v,
            k_len=self.k_len,
            kprime=self.kprime,
            point_index=self.point_index,
            truncation=self.truncation,
            seed=self.seed,
        )


def _parse_steps(tower: FieldTower, text: str, line: int) -> FieldTower:
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        head, sep, kind = part.partition(":")
        if not sep:
            raise ScenarioParseError(f"malformed tower step {part!r}", line)
        name = head.strip()
        kind = kind.strip()
        try:
            if kind == "transcendental":
                tower = tower.extend_transcendental(name)
            elif kind.startswith("algebraic"):
                f = poly_mod.Polynomial.parse(kind[len("algebraic") :].strip(), tower, ("y",))
                tower = tower.extend_algebraic(name, f.univariate_coeffs())
            else:
                raise ScenarioParseError(f"unknown step kind in {part!r}", line)
        except StructuralError as exc:
            raise ScenarioParseError(str(exc), line) from None
    return tower


def parse_scenario(text: str) -> ScenarioFile:
    section = None
    seen_sections: set[str] = set()
    values: dict[tuple[str, str], tuple[str, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip()
            if section not in _SECTIONS:
                raise ScenarioParseError(f"unknown section [{section}]", lineno)
            seen_sections.add(section)
            continue
        if section is None:
            raise ScenarioParseError("content before the first section", lineno)
        key, sep, value = line.partition(":")
        if not sep:
            raise ScenarioParseError(f"expected 'key: value', got {line!r}", lineno)
        key = key.strip()
        if key not in _KEYS[section]:
            raise ScenarioParseError(f"unknown key {key!r} in section [{section}]", lineno)
        if (section, key) in values:
            raise ScenarioParseError(f"duplicate key {key!r}", lineno)
        values[(section, key)] = (value.strip(), lineno)

    def get(section: str, key: str, default=None):
        return values.get((section, key), (default, 0))

    base_text, base_line = get("base", "base")
    if base_text is None:
        raise ScenarioParseError("missing base field ([base] base: ...)")
    if base_text == "Q":
        tower = FieldTower.rationals()
    elif base_text.startswith("F") and base_text[1:].isdigit():
        try:
            tower = FieldTower.prime_field(int(base_text[1:]))
        except StructuralError as exc:
            raise ScenarioParseError(str(exc), base_line) from None
    else:
        raise ScenarioParseError(f"unknown base field {base_text!r}", base_line)

    gens_text, gens_line = get("base", "gens")
    if gens_text:
        tower = _parse_steps(tower, gens_text, gens_line)

    k_text, k_line = get("base", "k-prefix")
    k_len = tower.level if k_text is None else _parse_int(k_text, k_line, "k-prefix")
    if not 0 <= k_len <= tower.level:
        raise ScenarioParseError(f"k-prefix {k_len} out of range", k_line)

    kprime = tower.prefix(k_len)
    kp_text, kp_line = get("extension", "kprime-gens")
    if kp_text:
        kprime = _parse_steps(kprime, kp_text, kp_line)

    variables = None
    vars_text, vars_line = get("valuation", "vars")
    if "valuation" in seen_sections and vars_text is None:
        raise ScenarioParseError("the [valuation] section needs a vars key")
    if vars_text is not None:
        variables = tuple(v.strip() for v in vars_text.split(",") if v.strip())
        if not variables:
            raise ScenarioParseError("empty variable list", vars_line)
        order_text, order_line = get("valuation", "order")
        if order_text is None:
            raise ScenarioParseError("missing order key in [valuation]", vars_line)
        if order_text != "lex":
            raise ScenarioParseError(f"unsupported order {order_text!r}", order_line)

    trunc_text, trunc_line = get("options", "truncation-N")
    truncation = None if trunc_text is None else _parse_int(trunc_text, trunc_line, "truncation-N")
    pi_text, pi_line = get("options", "point-index")
    point_index = 0 if pi_text is None else _parse_int(pi_text, pi_line, "point-index")
    seed_text, seed_line = get("options", "seed")
    seed = 0 if seed_text is None else _parse_int(seed_text, seed_line, "seed")

    return ScenarioFile(
        f_tower=tower,
        k_len=k_len,
        kprime=kprime,
        variables=variables,
        truncation=truncation,
        point_index=point_index,
        seed=seed,
    )


def _parse_int(text: str, line: int, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ScenarioParseError(f"{what} must be an integer, got {text!r}", line) from None


def render_scenario(s: ScenarioFile) -> str:
    """Canonical text form; parse(render(s)) reproduces s exactly."""

    def steps_text(tower: FieldTower, start: int) -> str:
        parts = []
        for i in range(start, tower.level):
            step = tower.steps[i]
            if step.is_algebraic:
                f = poly_mod.Polynomial.from_coeffs(
                    tower.prefix(i), "y", tower.minpoly_coeffs(i)
                )
                parts.append(f"{step.name}: algebraic {f}")
            else:
                parts.append(f"{step.name}: transcendental")
        return "; ".join(parts)

    lines = ["[base]", f"base: {s.f_tower.base.describe()}"]
    gens = steps_text(s.f_tower, 0)
    if gens:
        lines.append(f"gens: {gens}")
    lines.append(f"k-prefix: {s.k_len}")
    if s.variables is not None:
        lines.append("")
        lines.append("[valuation]")
        lines.append(f"vars: {', '.join(s.variables)}")
        lines.append("order: lex")
    kp = steps_text(s.kprime, s.k_len)
    if kp:
        lines.append("")
        lines.append("[extension]")
        lines.append(f"kprime-gens: {kp}")
    opts = []
    if s.truncation is not None:
        opts.append(f"truncation-N: {s.truncation}")
    if s.point_index != 0:
        opts.append(f"point-index: {s.point_index}")
    if s.seed != 0:
        opts.append(f"seed: {s.seed}")
    if opts:
        lines.append("")
        lines.append("[options]")
        lines.extend(opts)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Commands


def cmd_decompose(path: str, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        scenario = parse_scenario(_read(path))
        points = tensor_decompose(scenario.kprime, scenario.f_tower, scenario.k_len)
    except ScenarioParseError as exc:
        print(f"parse error: {exc}", file=err)
        return 1
    except CapabilityError as exc:
        print(f"capability error: {exc}", file=err)
        return 2
    except PreconditionError as exc:
        print(f"precondition error: {exc}", file=err)
        return 3
    print(f"{len(points)} point(s)", file=out)
    for pt in points:
        for line in pt.describe_lines():
            print(line, file=out)
    return 0


def cmd_extend(
    path: str,
    verify: bool = False,
    point: int | None = None,
    truncate: int | None = None,
    out=None,
    err=None,
) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        scenario = parse_scenario(_read(path))
        if not scenario.is_extension:
            raise ScenarioParseError("extend needs a [valuation] section")
        if point is not None:
            scenario.point_index = point
        if truncate is not None:
            scenario.truncation = truncate
        scn = scenario.to_extension_scenario()
        if scenario.truncation is not None:
            built = build_general(scn, scenario.truncation)
        else:
            built = build_strictly_maximal(scn)
        weak = spectrum = None
        if verify:
            weak = verify_weakly_unramified(built)
            if built.path == "strictly-maximal":
                spectrum = spectrum_correspondence(built)
        report = render_report(built, weak, spectrum)
        if verify and spectrum is None:
            nv, nw = prime_counts(built)
            report += f"PRIME COUNTS\n  V: {nv} <-> W: {nw}\n"
    except ScenarioParseError as exc:
        print(f"parse error: {exc}", file=err)
        return 1
    except CapabilityError as exc:
        print(f"capability error: {exc}", file=err)
        return 2
    except PreconditionError as exc:
        print(f"precondition error: {exc}", file=err)
        return 3
    print(report, end="", file=out)
    return 0


def cmd_selftest(seed: int = 0, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    from .selftest import run_selftest

    result = run_selftest(seed=seed)
    for line in result.lines:
        print(line, file=out)
    if result.failed:
        print(f"{len(result.failed)} case(s) failed", file=err)
        return 4
    return 0


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="valext", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p_dec = sub.add_parser("decompose", help="decompose a tensor product of fields")
    p_dec.add_argument("file")
    p_ext = sub.add_parser("extend", help="build the valuation ring extension")
    p_ext.add_argument("file")
    p_ext.add_argument("--verify", action="store_true")
    p_ext.add_argument("--point", type=int, default=None)
    p_ext.add_argument("--truncate", type=int, default=None)
    p_self = sub.add_parser("selftest", help="run the embedded golden corpus")
    p_self.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)
    if args.command == "decompose":
        return cmd_decompose(args.file)
    if args.command == "extend":
        return cmd_extend(args.file, args.verify, args.point, args.truncate)
    return cmd_selftest(args.seed)


if __name__ == "__main__":
    sys.exit(main())
