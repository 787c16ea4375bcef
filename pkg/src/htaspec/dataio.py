"""Meson data file loading.

Input schema (JSON):

    {"mesons": [
        {"label": str,
         "m_q": GeV, "m_qbar": GeV,
         "params": {"real7": {"a","b","delta"}, "complex5": {...}},   # optional per variant
         "fit_levels": {"real7": ["1S", ...], ...},                   # optional; default =
                                                                      # every level with data
         "levels": [
            {"label": "1S",
             "exp_mass": GeV or null,
             "include_in_fit": bool,                                  # optional override
             "this_work": {"real7": GeV, ...},                        # optional, reference output
             "reference_masses": {model_name: GeV, ...}}              # optional comparison data
         ]}
    ]}

A bundled dataset covering ccbar/bbbar/bcbar ships with the package and is
used when no input path is given.  The bundled fit_levels mark, per variant,
the calibration subsets that reproduce the published parameters (three
states pinned per meson); strip them to fit against every measured level.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources

from .core import CornellParams, MesonSystem, QuantumState, Variant
from .errors import DomainError, InputError
from .fitting import ExperimentalLevel

__all__ = ["MesonRecord", "load_dataset", "builtin_dataset_text", "DEFAULT_DATASET"]

DEFAULT_DATASET = "builtin:mesons"


@dataclass(frozen=True)
class MesonRecord:
    """One meson's data: masses, optional per-variant parameters, levels."""

    label: str
    m_q: float
    m_qbar: float
    params: dict[Variant, CornellParams]
    levels: tuple[dict, ...]
    fit_levels: dict[Variant, tuple[str, ...]]

    def system(self, variant: Variant | str) -> MesonSystem:
        variant = Variant.parse(variant)
        if variant not in self.params:
            raise InputError(f"meson {self.label!r} has no stored parameters for {variant.value}")
        return MesonSystem(self.m_q, self.m_qbar, self.params[variant], self.label)

    def experimental_levels(self, variant: Variant | str) -> list[ExperimentalLevel]:
        """Levels with per-variant include_in_fit resolved.

        Priority: explicit per-level include_in_fit, then membership in the
        meson's fit_levels list for this variant, then "has a measured
        mass".
        """
        variant = Variant.parse(variant)
        chosen = self.fit_levels.get(variant)
        out = []
        for raw in self.levels:
            label = raw["label"]
            mass = raw.get("exp_mass")
            if "include_in_fit" in raw:
                include = bool(raw["include_in_fit"])
            elif chosen is not None:
                include = label in chosen
            else:
                include = mass is not None
            out.append(
                ExperimentalLevel(
                    label=label,
                    state=QuantumState.from_label(label),
                    mass=mass,
                    include_in_fit=include and mass is not None,
                )
            )
        return out

    def this_work(self, label: str, variant: Variant | str) -> float | None:
        variant = Variant.parse(variant)
        for raw in self.levels:
            if raw["label"] == label:
                return (raw.get("this_work") or {}).get(variant.value)
        return None

    def reference_masses(self, label: str) -> dict[str, float]:
        for raw in self.levels:
            if raw["label"] == label:
                return dict(raw.get("reference_masses") or {})
        return {}


def builtin_dataset_text() -> str:
    return resources.files("htaspec.data").joinpath("mesons.json").read_text()


def _parse_params(raw: dict, label: str) -> dict[Variant, CornellParams]:
    out = {}
    for token, p in (raw or {}).items():
        variant = Variant.parse(token)
        try:
            out[variant] = CornellParams(float(p["a"]), float(p["b"]), float(p["delta"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"meson {label!r}: bad {token} parameter block: {exc}") from None
    return out


def load_dataset(source: str | None = None) -> list[MesonRecord]:
    """Parse a dataset path (or the bundled one when source is None)."""
    if source is None or source == DEFAULT_DATASET:
        text = builtin_dataset_text()
        origin = DEFAULT_DATASET
    else:
        try:
            with open(source, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read input file {source!r}: {exc}") from None
        origin = source
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{origin}: not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or not isinstance(doc.get("mesons"), list) or not doc["mesons"]:
        raise InputError(f"{origin}: expected a top-level object with a non-empty 'mesons' list")
    records = []
    for raw in doc["mesons"]:
        try:
            label = raw["label"]
            m_q = float(raw["m_q"])
            m_qbar = float(raw["m_qbar"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"{origin}: malformed meson entry: {exc}") from None
        if not (m_q > 0 and m_qbar > 0):
            raise InputError(f"{origin}: meson {label!r}: quark masses must be positive")
        levels = raw.get("levels") or []
        for lv in levels:
            if "label" not in lv:
                raise InputError(f"{origin}: meson {label!r}: level without a label")
            try:
                QuantumState.from_label(lv["label"])
            except DomainError as exc:
                raise InputError(f"{origin}: meson {label!r}: {exc}") from None
            mass = lv.get("exp_mass")
            if mass is not None:
                if not (isinstance(mass, (int, float)) and math.isfinite(mass)):
                    raise InputError(f"{origin}: meson {label!r} level {lv['label']}: bad mass {mass!r}")
                if mass <= m_q + m_qbar - 1.0:
                    raise InputError(
                        f"{origin}: meson {label!r} level {lv['label']}: mass {mass} below the "
                        f"constituent-sum sanity bound"
                    )
        fit_levels = {}
        for token, labels in (raw.get("fit_levels") or {}).items():
            fit_levels[Variant.parse(token)] = tuple(labels)
        records.append(
            MesonRecord(
                label=label,
                m_q=m_q,
                m_qbar=m_qbar,
                params=_parse_params(raw.get("params"), label),
                levels=tuple(levels),
                fit_levels=fit_levels,
            )
        )
    return records
