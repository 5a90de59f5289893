"""Command-line interface: model files in, deterministic text or JSON out.

A model file is line-oriented with sections. [algebroid] declares the chart,
rank, anchor entries and structure functions; optional [multivector NAME] and
[form NAME] blocks hold graded elements; [poisson] declares a chart and
bivector entries. Exit codes: 0 success, 1 verification failure (with a
residual report), 2 usage or parse errors.

Commands that print tables reuse the model-file syntax, so outputs can be fed
back in; element results print one `[indices] = expr` line per component.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field

from . import algebroid as _alg
from . import calculus as _cal
from . import dualpoisson as _dual
from . import poisson as _poi
from .expr import ParseError, parse, validate_chart

ALGEBROID_COMMANDS = (
    "check", "bracket", "d", "lie", "interior", "pair", "wedge",
    "schouten", "reconstruct", "dual", "dual-verify",
)
POISSON_COMMANDS = ("poisson-check", "sharp", "cotangent", "koszul", "lichnerowicz")


class ModelError(Exception):
    """Model-file grammar or validation failure; always exits with code 2."""


class CommandError(Exception):
    """Bad operands or operand/context mismatch; always exits with code 2."""


@dataclass
class AlgebroidSection:
    base: tuple = ()
    rank: int = 0
    anchor: dict = field(default_factory=dict)  # (a, i) -> raw expr string
    structure: dict = field(default_factory=dict)  # (c, a, b) -> raw expr string

    def build(self):
        rows = [[parse(self.anchor.get((a, i), "0"), self.base) for i in range(1, len(self.base) + 1)]
                for a in range(1, self.rank + 1)]
        table = {}
        for (c, a, b), text in self.structure.items():
            table.setdefault((a, b), {})[c] = parse(text, self.base)
        return _alg.new_algebroid(self.base, self.rank, rows, table)


@dataclass
class PoissonSection:
    base: tuple = ()
    entries: dict = field(default_factory=dict)  # (i, j) -> raw expr string

    def build(self, verify=True):
        table = {key: parse(text, self.base) for key, text in self.entries.items()}
        return _poi.new_poisson(self.base, table, verify=verify)


@dataclass
class ElementBlock:
    kind: str  # "multivector" or "form"
    name: str
    entries: dict = field(default_factory=dict)  # index tuple -> raw expr string


@dataclass
class ModelFile:
    algebroid: AlgebroidSection = None
    poisson: PoissonSection = None
    elements: dict = field(default_factory=dict)


_QUOTED_RE = re.compile(r'^"([^"]*)"$')
_ANCHOR_RE = re.compile(r"^anchor\[(\d+)\]\[(\d+)\]$")
_STRUCT_RE = re.compile(r"^C\[(\d+)\]\[(\d+)\]\[(\d+)\]$")
_BIVEC_RE = re.compile(r"^L\[(\d+)\]\[(\d+)\]$")
_TUPLE_RE = re.compile(r"^\d+(\s*,\s*\d+)*$")
_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def _unquote(value, where):
    m = _QUOTED_RE.match(value.strip())
    if not m:
        raise ModelError(f'{where}: expected a quoted string, got {value.strip()!r}')
    return m.group(1)


def _parse_base_list(value, where):
    text = value.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ModelError(f"{where}: expected a [ ... ] list")
    inner = text[1:-1].strip()
    if not inner:
        return ()
    names = []
    for token in inner.split(","):
        token = token.strip()
        m = _QUOTED_RE.match(token)
        if not m:
            raise ModelError(f"{where}: expected quoted coordinate names, got {token!r}")
        names.append(m.group(1))
    return tuple(names)


def parse_model(text, source="<model>"):
    model = ModelFile()
    section = None  # ("algebroid",) | ("poisson",) | ("element", name)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        where = f"{source}:{lineno}"
        if not line or line.startswith("#"):
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ModelError(f"{where}:{len(raw)}: unterminated section header")
            header = line[1:-1].strip()
            if header == "algebroid":
                if model.algebroid is not None:
                    raise ModelError(f"{where}: duplicate [algebroid] section")
                model.algebroid = AlgebroidSection()
                section = ("algebroid",)
            elif header == "poisson":
                if model.poisson is not None:
                    raise ModelError(f"{where}: duplicate [poisson] section")
                model.poisson = PoissonSection()
                section = ("poisson",)
            else:
                parts = header.split()
                if len(parts) != 2 or parts[0] not in ("multivector", "form") or not _NAME_RE.match(parts[1]):
                    raise ModelError(f"{where}: unknown section header [{header}]")
                kind, name = parts
                if name in model.elements:
                    raise ModelError(f"{where}: duplicate element name {name!r}")
                model.elements[name] = ElementBlock(kind, name)
                section = ("element", name)
            continue
        if "=" not in line:
            raise ModelError(f"{where}:1: expected 'key = value'")
        if section is None:
            raise ModelError(f"{where}: entry outside of any section")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if section[0] == "algebroid":
            sec = model.algebroid
            if key == "base":
                sec.base = _parse_base_list(value, f"{where}: base")
            elif key == "rank":
                try:
                    sec.rank = int(value)
                except ValueError:
                    raise ModelError(f"{where}: rank must be an integer, got {value!r}") from None
            elif m := _ANCHOR_RE.match(key):
                a, i = int(m.group(1)), int(m.group(2))
                if (a, i) in sec.anchor:
                    raise ModelError(f"{where}: duplicate key {key}")
                sec.anchor[(a, i)] = _unquote(value, f"{where}: {key}")
            elif m := _STRUCT_RE.match(key):
                c, a, b = (int(m.group(g)) for g in (1, 2, 3))
                if (c, a, b) in sec.structure:
                    raise ModelError(f"{where}: duplicate key {key}")
                sec.structure[(c, a, b)] = _unquote(value, f"{where}: {key}")
            else:
                raise ModelError(f"{where}: unknown key {key!r} in [algebroid]")
        elif section[0] == "poisson":
            sec = model.poisson
            if key == "base":
                sec.base = _parse_base_list(value, f"{where}: base")
            elif m := _BIVEC_RE.match(key):
                i, j = int(m.group(1)), int(m.group(2))
                if (i, j) in sec.entries:
                    raise ModelError(f"{where}: duplicate key {key}")
                sec.entries[(i, j)] = _unquote(value, f"{where}: {key}")
            else:
                raise ModelError(f"{where}: unknown key {key!r} in [poisson]")
        else:
            block = model.elements[section[1]]
            if key == "scalar":
                index = ()
            elif _TUPLE_RE.match(key):
                index = tuple(int(t) for t in key.split(","))
            else:
                raise ModelError(f"{where}: bad element index {key!r}")
            if index in block.entries:
                raise ModelError(f"{where}: duplicate index {key!r} in [{block.kind} {block.name}]")
            block.entries[index] = _unquote(value, f"{where}: {key}")
    _validate_model(model, source)
    return model


def _validate_model(model, source):
    if model.algebroid is not None:
        sec = model.algebroid
        try:
            validate_chart(sec.base)
        except ValueError as exc:
            raise ModelError(f"{source}: [algebroid] base: {exc}") from None
        if sec.rank < 0:
            raise ModelError(f"{source}: [algebroid] rank must be nonnegative")
        n = len(sec.base)
        for (a, i), text in sec.anchor.items():
            if not (1 <= a <= sec.rank and 1 <= i <= n):
                raise ModelError(f"{source}: anchor[{a}][{i}]: index out of range")
            _parse_entry(text, sec.base, f"{source}: anchor[{a}][{i}]")
        for (c, a, b), text in sec.structure.items():
            if not (1 <= a < b <= sec.rank):
                raise ModelError(f"{source}: C[{c}][{a}][{b}]: non-increasing or out-of-range section pair")
            if not (1 <= c <= sec.rank):
                raise ModelError(f"{source}: C[{c}][{a}][{b}]: component index out of range")
            _parse_entry(text, sec.base, f"{source}: C[{c}][{a}][{b}]")
    if model.poisson is not None:
        sec = model.poisson
        try:
            validate_chart(sec.base)
        except ValueError as exc:
            raise ModelError(f"{source}: [poisson] base: {exc}") from None
        n = len(sec.base)
        for (i, j), text in sec.entries.items():
            if not (1 <= i < j <= n):
                raise ModelError(f"{source}: L[{i}][{j}]: non-increasing or out-of-range index pair")
            _parse_entry(text, sec.base, f"{source}: L[{i}][{j}]")
    if model.elements:
        if model.algebroid is not None:
            chart, rank = model.algebroid.base, model.algebroid.rank
        elif model.poisson is not None:
            chart, rank = model.poisson.base, len(model.poisson.base)
        else:
            raise ModelError(f"{source}: element blocks need an [algebroid] or [poisson] section")
        for block in model.elements.values():
            for index, text in block.entries.items():
                label = ",".join(str(t) for t in index) if index else "scalar"
                where = f"{source}: [{block.kind} {block.name}] {label}"
                if any(index[t] >= index[t + 1] for t in range(len(index) - 1)):
                    raise ModelError(f"{where}: indices must be strictly increasing")
                if index and not (1 <= index[0] and index[-1] <= rank):
                    raise ModelError(f"{where}: index out of range 1..{rank}")
                _parse_entry(text, chart, where)


def _parse_entry(text, chart, where):
    try:
        return parse(text, chart)
    except ParseError as exc:
        raise ModelError(f"{where}: {exc}") from None


def load_model(path):
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ModelError(f"cannot read model file: {exc}") from None
    return parse_model(text, source=str(path))


def save_model(model, path=None):
    """Canonical text for a ModelFile; parse_model(save_model(m)) == m."""
    lines = []
    if model.algebroid is not None:
        sec = model.algebroid
        lines.append("[algebroid]")
        lines.append(f"base = {_format_base(sec.base)}")
        lines.append(f"rank = {sec.rank}")
        for (a, i) in sorted(sec.anchor):
            lines.append(f'anchor[{a}][{i}] = "{sec.anchor[(a, i)]}"')
        for (c, a, b) in sorted(sec.structure, key=lambda t: (t[1], t[2], t[0])):
            lines.append(f'C[{c}][{a}][{b}] = "{sec.structure[(c, a, b)]}"')
        lines.append("")
    for block in model.elements.values():
        lines.append(f"[{block.kind} {block.name}]")
        for index in sorted(block.entries):
            key = ",".join(str(t) for t in index) if index else "scalar"
            lines.append(f'{key} = "{block.entries[index]}"')
        lines.append("")
    if model.poisson is not None:
        sec = model.poisson
        lines.append("[poisson]")
        lines.append(f"base = {_format_base(sec.base)}")
        for (i, j) in sorted(sec.entries):
            lines.append(f'L[{i}][{j}] = "{sec.entries[(i, j)]}"')
        lines.append("")
    text = "\n".join(lines)
    if path is not None:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
    return text


def _format_base(names):
    if not names:
        return "[ ]"
    inner = ", ".join(f'"{name}"' for name in names)
    return f"[ {inner} ]"


def _index_key(index):
    return ",".join(str(t) for t in index)


def _element_lines(element, chart):
    lines = [element.variance]
    if element.is_zero():
        lines.append("zero")
        return lines
    for degree in sorted(element.components):
        table = element.components[degree]
        for index in sorted(table):
            lines.append(f"[{_index_key(index)}] = {table[index].to_text(chart)}")
    return lines


def _element_json(element, chart):
    return {
        "variance": element.variance,
        "components": {
            str(degree): {_index_key(index): value.to_text(chart) for index, value in table.items()}
            for degree, table in element.components.items()
        },
    }


def _algebroid_block(algebroid):
    lines = ["[algebroid]"]
    lines.append(f"base = {_format_base(algebroid.chart)}")
    lines.append(f"rank = {algebroid.rank}")
    for a in range(1, algebroid.rank + 1):
        for i in range(1, len(algebroid.chart) + 1):
            entry = algebroid.anchor_entry(a, i)
            if entry:
                lines.append(f'anchor[{a}][{i}] = "{entry.to_text(algebroid.chart)}"')
    for (a, b) in sorted(algebroid.structure):
        table = algebroid.structure[(a, b)]
        for c in sorted(table):
            lines.append(f'C[{c}][{a}][{b}] = "{table[c].to_text(algebroid.chart)}"')
    return lines


def _algebroid_json(algebroid):
    anchor = {}
    for a in range(1, algebroid.rank + 1):
        for i in range(1, len(algebroid.chart) + 1):
            entry = algebroid.anchor_entry(a, i)
            if entry:
                anchor[f"{a},{i}"] = entry.to_text(algebroid.chart)
    structure = {}
    for (a, b), table in algebroid.structure.items():
        for c, value in table.items():
            structure[f"{c},{a},{b}"] = value.to_text(algebroid.chart)
    return {"base": list(algebroid.chart), "rank": algebroid.rank, "anchor": anchor, "C": structure}


def _poisson_block(ps):
    lines = ["[poisson]"]
    lines.append(f"base = {_format_base(ps.chart)}")
    for (i, j) in sorted(ps.bivector.components.get(2, {})):
        value = ps.bivector.components[2][(i, j)]
        lines.append(f'L[{i}][{j}] = "{value.to_text(ps.chart)}"')
    return lines


def _poisson_json(ps):
    table = {
        f"{i},{j}": value.to_text(ps.chart)
        for (i, j), value in ps.bivector.components.get(2, {}).items()
    }
    return {"base": list(ps.chart), "L": table}


def _axiom_report_lines(report, algebroid):
    lines = [f"axioms: {'PASS' if report.passed else 'FAIL'}"]
    for (a, b) in sorted(report.anchor_residuals):
        for i, value in enumerate(report.anchor_residuals[(a, b)], start=1):
            if value:
                lines.append(f"anchor ({a},{b}) {algebroid.chart[i - 1]} = {value.to_text(algebroid.chart)}")
    for key in sorted(report.jacobi_residuals):
        section = report.jacobi_residuals[key]
        for index in sorted(section.components.get(1, {})):
            value = section.components[1][index]
            label = ",".join(str(t) for t in key)
            lines.append(f"jacobi ({label}) [{index[0]}] = {value.to_text(algebroid.chart)}")
    return lines


def _axiom_report_json(report, algebroid):
    anchor = {}
    for (a, b), residual in report.anchor_residuals.items():
        entries = {
            algebroid.chart[i]: value.to_text(algebroid.chart)
            for i, value in enumerate(residual)
            if value
        }
        if entries:
            anchor[f"{a},{b}"] = entries
    jacobi = {}
    for key, section in report.jacobi_residuals.items():
        entries = {
            str(index[0]): value.to_text(algebroid.chart)
            for index, value in section.components.get(1, {}).items()
        }
        if entries:
            jacobi[",".join(str(t) for t in key)] = entries
    return {"passed": report.passed, "anchor": anchor, "jacobi": jacobi}


def _require_algebroid(model):
    if model.algebroid is None:
        raise CommandError("this command needs an [algebroid] section in the model")
    return model.algebroid.build()


def _require_poisson(model, verify):
    if model.poisson is None:
        raise CommandError("this command needs a [poisson] section in the model")
    return model.poisson.build(verify=verify)


def _get_element(model, name, context):
    block = model.elements.get(name)
    if block is None:
        raise CommandError(f"model has no element named {name!r}")
    variance = _cal.MULTIVECTOR if block.kind == "multivector" else _cal.FORM
    components = {}
    for index, text in block.entries.items():
        try:
            expr = parse(text, context.chart)
        except ParseError as exc:
            raise CommandError(f"element {name!r}, entry {_index_key(index) or 'scalar'}: {exc}") from None
        components.setdefault(len(index), {})[index] = expr
    try:
        return _cal.GradedElement(context, variance, components)
    except ValueError as exc:
        raise CommandError(f"element {name!r} does not fit this context: {exc}") from None


def execute(command, model, operands=(), json_output=False, force=False):
    """Run one command against a loaded model. Returns (exit code, text)."""
    out_json = None
    lines = []
    code = 0

    if command == "check":
        algebroid = _require_algebroid(model)
        report = _alg.verify_axioms(algebroid)
        lines = _axiom_report_lines(report, algebroid)
        out_json = _axiom_report_json(report, algebroid)
        code = 0 if report.passed else 1

    elif command in ("bracket", "wedge", "schouten", "interior", "pair", "lie"):
        algebroid = _require_algebroid(model)
        x = _get_element(model, operands[0], algebroid)
        y = _get_element(model, operands[1], algebroid)
        try:
            if command == "bracket":
                result = _alg.bracket_sections(algebroid, x, y)
            elif command == "wedge":
                result = _cal.wedge(x, y)
            elif command == "schouten":
                result = _cal.schouten_bracket(algebroid, x, y)
            elif command == "interior":
                result = _cal.interior_product(x, y)
            elif command == "lie":
                if y.variance == _cal.FORM:
                    result = _cal.lie_derivative_form(algebroid, x, y)
                else:
                    result = _cal.lie_derivative_multivector(algebroid, x, y)
            else:
                value = _cal.pairing(x, y)
                lines = [value.to_text(algebroid.chart)]
                out_json = {"value": value.to_text(algebroid.chart)}
        except ValueError as exc:
            raise CommandError(str(exc)) from None
        if command != "pair":
            lines = _element_lines(result, algebroid.chart)
            out_json = _element_json(result, algebroid.chart)

    elif command == "d":
        algebroid = _require_algebroid(model)
        eta = _get_element(model, operands[0], algebroid)
        try:
            result = _cal.exterior_derivative(algebroid, eta)
        except ValueError as exc:
            raise CommandError(str(exc)) from None
        lines = _element_lines(result, algebroid.chart)
        out_json = _element_json(result, algebroid.chart)

    elif command == "reconstruct":
        algebroid = _require_algebroid(model)
        delta = _cal.OperatorValue(lambda eta: _cal.exterior_derivative(algebroid, eta), 1)
        try:
            rebuilt = _cal.delta_reconstruct(algebroid.chart, algebroid.rank, delta)
        except _cal.ReconstructionError as exc:
            return 1, f"reconstruct: FAIL\n{exc}\n"
        lines = _algebroid_block(rebuilt)
        out_json = _algebroid_json(rebuilt)

    elif command in ("dual", "dual-verify"):
        algebroid = _require_algebroid(model)
        report = _alg.verify_axioms(algebroid)
        if not report.passed and not force:
            lines = _axiom_report_lines(report, algebroid)
            return 1, "\n".join(lines) + "\n"
        ps = _dual.dual_poisson(algebroid, force=force)
        if command == "dual":
            lines = _poisson_block(ps)
            out_json = _poisson_json(ps)
        else:
            jacobi = ps.verified
            hom = _dual.homogeneity_check(ps)
            residuals = _dual.transpose_anchor_check(algebroid, ps)
            hom_ok = hom.is_zero()
            map_ok = all(not r for r in residuals)
            lines = [f"jacobi: {'PASS' if jacobi else 'FAIL'}"]
            if not jacobi:
                ja = _poi.is_poisson(ps)
                lines.extend(
                    f"[{_index_key(index)}] = {value.to_text(ps.chart)}"
                    for index in sorted(ja.residual.components.get(3, {}))
                    for value in [ja.residual.components[3][index]]
                )
            lines.append(f"homogeneity: {'PASS' if hom_ok else 'FAIL'}")
            if not hom_ok:
                lines.extend(_element_lines(hom, ps.chart)[1:])
            lines.append(f"poisson-map: {'PASS' if map_ok else 'FAIL'}")
            if not map_ok:
                names = list(ps.chart)
                idx = 0
                for u in range(len(names)):
                    for v in range(u + 1, len(names)):
                        if residuals[idx]:
                            lines.append(
                                f"({names[u]},{names[v]}) = {residuals[idx].to_text(ps.chart)}"
                            )
                        idx += 1
            ok = jacobi and hom_ok and map_ok
            out_json = {"jacobi": jacobi, "homogeneity": hom_ok, "poisson_map": map_ok}
            code = 0 if ok else 1

    elif command == "poisson-check":
        ps = _require_poisson(model, verify=False)
        report = _poi.is_poisson(ps)
        lines = [f"poisson: {'PASS' if report.passed else 'FAIL'}"]
        residual_table = report.residual.components.get(3, {})
        for index in sorted(residual_table):
            lines.append(f"[{_index_key(index)}] = {residual_table[index].to_text(ps.chart)}")
        out_json = {
            "passed": report.passed,
            "residual": {
                _index_key(index): value.to_text(ps.chart) for index, value in residual_table.items()
            },
        }
        code = 0 if report.passed else 1

    elif command in ("sharp", "cotangent", "koszul", "lichnerowicz"):
        gated = command != "sharp"
        ps = _require_poisson(model, verify=gated)
        if gated and not ps.verified and not force:
            report = _poi.is_poisson(ps)
            lines = ["poisson: FAIL"]
            residual_table = report.residual.components.get(3, {})
            for index in sorted(residual_table):
                lines.append(f"[{_index_key(index)}] = {residual_table[index].to_text(ps.chart)}")
            return 1, "\n".join(lines) + "\n"
        tangent = ps.bivector.algebroid
        try:
            if command == "sharp":
                eta = _get_element(model, operands[0], tangent)
                result = _poi.sharp(ps, eta)
                lines = _element_lines(result, ps.chart)
                out_json = _element_json(result, ps.chart)
            elif command == "cotangent":
                built = _poi.cotangent_algebroid(ps, force=True)
                lines = _algebroid_block(built)
                out_json = _algebroid_json(built)
            elif command == "koszul":
                eta = _get_element(model, operands[0], tangent)
                zeta = _get_element(model, operands[1], tangent)
                result = _poi.koszul_bracket(ps, eta, zeta, force=True)
                lines = _element_lines(result, ps.chart)
                out_json = _element_json(result, ps.chart)
            else:
                P = _get_element(model, operands[0], tangent)
                result = _poi.lichnerowicz_differential(ps, P, force=True)
                lines = _element_lines(result, ps.chart)
                out_json = _element_json(result, ps.chart)
        except ValueError as exc:
            raise CommandError(str(exc)) from None

    else:
        raise CommandError(f"unknown command {command!r}")

    if json_output and out_json is not None:
        return code, json.dumps(out_json, sort_keys=True, indent=2) + "\n"
    return code, "\n".join(lines) + "\n"


_OPERAND_COUNTS = {
    "check": 0, "bracket": 2, "d": 1, "lie": 2, "interior": 2, "pair": 2,
    "wedge": 2, "schouten": 2, "poisson-check": 0, "sharp": 1, "cotangent": 0,
    "koszul": 2, "lichnerowicz": 1, "dual": 0, "dual-verify": 0, "reconstruct": 0,
}

_OPERAND_HELP = {
    "check": "verify the algebroid axioms",
    "bracket": "bracket of two degree-1 multivector elements",
    "d": "exterior derivative of a form element",
    "lie": "Lie derivative of the second element along the first (a section)",
    "interior": "interior product of a form by a multivector",
    "pair": "pairing of a form with a multivector",
    "wedge": "exterior product of two elements of the same kind",
    "schouten": "Schouten bracket of two multivector elements",
    "poisson-check": "Jacobi check of the [poisson] bivector",
    "sharp": "musical map applied to a form element",
    "cotangent": "print the cotangent algebroid of the [poisson] structure",
    "koszul": "Koszul bracket of two form elements",
    "lichnerowicz": "bracket the bivector with a multivector element",
    "dual": "print the dual-bundle Poisson structure of the algebroid",
    "dual-verify": "check the three dual-bundle properties",
    "reconstruct": "rebuild the algebroid from its exterior derivative",
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="algebroids",
        description="Exterior calculus and Poisson constructions over Lie algebroid model files.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", required=True, help="path to the model file")
    common.add_argument("--json", action="store_true", dest="json_output", help="emit JSON instead of text")
    common.add_argument("--force", action="store_true", help="skip verified-precondition gates")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command, count in _OPERAND_COUNTS.items():
        sub = subparsers.add_parser(command, parents=[common], help=_OPERAND_HELP[command])
        for position in range(count):
            sub.add_argument(f"name{position + 1}", help="element name in the model file")
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else int(exc.code)
    operands = tuple(
        getattr(args, f"name{position + 1}") for position in range(_OPERAND_COUNTS[args.command])
    )
    try:
        model = load_model(args.model)
        code, text = execute(
            args.command, model, operands, json_output=args.json_output, force=args.force
        )
    except (ModelError, CommandError) as exc:
        print(f"algebroids: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
