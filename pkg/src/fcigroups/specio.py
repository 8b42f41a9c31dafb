"""JSON spec documents, the bundled spec corpus, and classification reports."""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Any

from .abelian import AbelianPComponent
from .dedekind import (
    ComponentElementSpec,
    DedekindElementSpec,
    DedekindSpec,
    IDENTITY_ELEMENT,
    TailRule,
)
from .errors import SpecError
from .extension import FciGroupSpec, classify, validate_all
from .power_aut import PowerAutSpec, UnitLabel

__all__ = [
    "BUNDLED_FCI",
    "bundled_names",
    "classification_report",
    "load_bundled",
    "load_spec_file",
    "parse_spec_document",
    "resolve_spec_token",
    "spec_document",
]

# Bundled specs that classify as fci; the corpus also ships a trivial-extension
# spec, a valid-but-negative spec, and deliberately broken ones for error paths.
BUNDLED_FCI = (
    "z5_teichmuller4",
    "z2_inversion_split",
    "z2_inversion_fiber",
    "q8_z3_inversion",
    "tail_mod4",
    "mixed_pi0",
)


def _expect(condition: bool, message: str) -> None:
    if not condition:
        raise SpecError(message)


def _as_int(value: Any, where: str) -> int:
    _expect(isinstance(value, int) and not isinstance(value, bool), f"{where} must be an integer")
    return value


def _parse_component(doc: Any) -> AbelianPComponent:
    _expect(isinstance(doc, dict), "component entries must be objects")
    p = _as_int(doc.get("p"), "component p")
    cyclic = doc.get("cyclic", [])
    _expect(isinstance(cyclic, list), f"component {p}: cyclic must be a list")
    quasi = doc.get("quasicyclic", 0)
    try:
        return AbelianPComponent(p, tuple(_as_int(e, "cyclic exponent") for e in cyclic),
                                 _as_int(quasi, "quasicyclic count"))
    except ValueError as exc:
        raise SpecError(f"component at p={p}: {exc}") from exc


def _parse_unit(raw: Any, p: int) -> UnitLabel:
    if isinstance(raw, int) and not isinstance(raw, bool):
        return UnitLabel.unit(raw)
    if isinstance(raw, str):
        if raw == "identity":
            return UnitLabel.identity()
        if raw == "inversion":
            return UnitLabel.inversion()
        if raw.startswith("teichmuller:"):
            tail = raw.split(":", 1)[1]
            _expect(tail.lstrip("-").isdigit(), f"bad teichmuller value {tail!r} at prime {p}")
            return UnitLabel.teichmuller(int(tail))
    raise SpecError(f"unit for prime {p} must be an integer, 'identity', 'inversion', or 'teichmuller:t0'")


def _parse_element(raw: Any) -> DedekindElementSpec:
    if raw == "identity" or raw is None:
        return IDENTITY_ELEMENT
    _expect(isinstance(raw, dict), "n must be \"identity\" or an element object")
    q8 = raw.get("q8", "1")
    _expect(isinstance(q8, str), "element q8 part must be a string label")
    parts = []
    for entry in raw.get("components", []):
        _expect(isinstance(entry, dict), "element components must be objects")
        p = _as_int(entry.get("p"), "element component p")
        cyclic = tuple(_as_int(c, "element coordinate") for c in entry.get("cyclic", []))
        quasi_raw = entry.get("quasicyclic", [])
        _expect(isinstance(quasi_raw, list), f"element at p={p}: quasicyclic must be a list")
        quasi = []
        for pair in quasi_raw:
            _expect(
                isinstance(pair, list) and len(pair) == 2,
                f"element at p={p}: quasicyclic entries are [numerator, depth] pairs",
            )
            quasi.append((_as_int(pair[0], "numerator"), _as_int(pair[1], "depth")))
        try:
            parts.append(ComponentElementSpec(p, cyclic, tuple(quasi)))
        except ValueError as exc:
            raise SpecError(f"element at p={p}: {exc}") from exc
    try:
        return DedekindElementSpec(q8, tuple(parts))
    except ValueError as exc:
        raise SpecError(str(exc)) from exc


def parse_spec_document(doc: Any) -> FciGroupSpec:
    """Decode a JSON document into an extension spec (schema errors raise SpecError)."""
    _expect(isinstance(doc, dict), "spec document must be a JSON object")
    ded_doc = doc.get("dedekind")
    _expect(isinstance(ded_doc, dict), "missing or malformed 'dedekind' section")
    components = tuple(_parse_component(c) for c in ded_doc.get("components", []))
    tail = None
    if ded_doc.get("tail") is not None:
        tail_doc = ded_doc["tail"]
        _expect(isinstance(tail_doc, dict), "'tail' must be an object")
        try:
            tail = TailRule(
                _as_int(tail_doc.get("m"), "tail m"),
                _as_int(tail_doc.get("min_prime", 3), "tail min_prime"),
            )
        except ValueError as exc:
            raise SpecError(f"tail rule: {exc}") from exc
    dedekind = DedekindSpec(bool(ded_doc.get("has_q8", False)), components, tail)

    phi_doc = doc.get("phi", {})
    _expect(isinstance(phi_doc, dict), "'phi' must be an object")
    labels = []
    for entry in phi_doc.get("per_prime", []):
        _expect(isinstance(entry, dict), "per_prime entries must be objects")
        p = _as_int(entry.get("p"), "per_prime p")
        labels.append((p, _parse_unit(entry.get("unit"), p)))
    tail_rule = phi_doc.get("tail_rule")
    _expect(
        tail_rule is None or isinstance(tail_rule, str),
        "phi tail_rule must be a string when present",
    )
    try:
        phi = PowerAutSpec(tuple(labels), tail_rule)
    except ValueError as exc:
        raise SpecError(str(exc)) from exc

    ext_doc = doc.get("extension", {})
    _expect(isinstance(ext_doc, dict), "'extension' must be an object")
    m = _as_int(ext_doc.get("m", 1), "extension m")
    n = _parse_element(ext_doc.get("n", "identity"))
    return FciGroupSpec(dedekind, phi, m, n)


def _unit_json(label: UnitLabel) -> int | str:
    if label.kind == "unit":
        return label.value
    if label.kind == "teichmuller":
        return f"teichmuller:{label.value}"
    return label.kind


def spec_document(spec: FciGroupSpec) -> dict:
    """Re-encode a spec as a JSON-ready document (inverse of parsing)."""
    ded: dict[str, Any] = {
        "has_q8": spec.dedekind.has_q8,
        "components": [
            {"p": c.p, "cyclic": list(c.cyclic_exponents), "quasicyclic": c.quasicyclic_count}
            for c in spec.dedekind.components
        ],
    }
    if spec.dedekind.tail is not None:
        ded["tail"] = {"m": spec.dedekind.tail.m, "min_prime": spec.dedekind.tail.min_prime}
    phi: dict[str, Any] = {
        "per_prime": [{"p": p, "unit": _unit_json(lbl)} for p, lbl in spec.phi.labels]
    }
    if spec.phi.tail_rule is not None:
        phi["tail_rule"] = spec.phi.tail_rule
    if spec.n.is_identity():
        n_doc: Any = "identity"
    else:
        n_doc = {
            "q8": spec.n.q8,
            "components": [
                {
                    "p": part.p,
                    "cyclic": list(part.cyclic),
                    "quasicyclic": [list(pair) for pair in part.quasicyclic],
                }
                for part in spec.n.parts
            ],
        }
    return {"dedekind": ded, "phi": phi, "extension": {"m": spec.m, "n": n_doc}}


def load_spec_file(path: str | Path) -> FciGroupSpec:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SpecError(f"cannot read spec file {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"spec file {path} is not valid JSON: {exc}") from exc
    return parse_spec_document(doc)


def _specs_root():
    return resources.files(__package__) / "specs"


def bundled_names() -> list[str]:
    return sorted(p.name[: -len(".json")] for p in _specs_root().iterdir() if p.name.endswith(".json"))


def load_bundled(name: str) -> FciGroupSpec:
    res = _specs_root() / f"{name}.json"
    try:
        text = res.read_text(encoding="utf-8")
    except (FileNotFoundError, OSError) as exc:
        raise SpecError(f"no bundled spec named {name!r}") from exc
    return parse_spec_document(json.loads(text))


def resolve_spec_token(token: str) -> list[tuple[str, FciGroupSpec]]:
    """Resolve a CLI spec token: 'bundled/all', 'bundled/NAME', or a file path."""
    if token == "bundled/all":
        return [(name, load_bundled(name)) for name in BUNDLED_FCI]
    if token.startswith("bundled/"):
        name = token.split("/", 1)[1]
        return [(name, load_bundled(name))]
    return [(Path(token).stem, load_spec_file(token))]


def classification_report(spec: FciGroupSpec) -> dict:
    """The classification section of a report, with violations when invalid."""
    violations = validate_all(spec)
    if violations:
        return {"classification": "invalid", "violations": violations}
    result = classify(spec)
    report: dict[str, Any] = {"classification": result.kind}
    if result.certificate is not None:
        report["certificate"] = result.certificate.to_json()
    if result.reason is not None:
        report["reason"] = result.reason
    return report
