"""Delimited/JSON serialization of sweep and fit results.

CSV is the canonical artifact: header
``model,rg_step,subsystem,bare,flowed,coherence,derivative``, floats printed
with 12 significant digits, subsystems as ``all`` or dash-joined 1-based site
indices, absent derivatives as an empty field.  Files are written atomically
(write-then-rename).
"""

from __future__ import annotations

import json
import os
import tempfile

from .analysis import ScalingFit, SweepRow, system_size

CSV_HEADER = "model,rg_step,subsystem,bare,flowed,coherence,derivative"


def fmt_float(x):
    return f"{x:.12g}"


def subsystem_label(sub):
    return "all" if not sub else "-".join(str(s) for s in sub)


def parse_subsystem_label(text):
    if text == "all":
        return ()
    return tuple(int(s) for s in text.split("-"))


def rows_to_csv(rows):
    lines = [CSV_HEADER]
    for r in rows:
        derivative = "" if r.derivative is None else fmt_float(r.derivative)
        lines.append(
            ",".join(
                (
                    r.model,
                    str(r.rg_step),
                    subsystem_label(r.subsystem),
                    fmt_float(r.bare),
                    fmt_float(r.flowed),
                    fmt_float(r.coherence),
                    derivative,
                )
            )
        )
    return "\n".join(lines) + "\n"


def rows_from_csv(text):
    lines = text.strip().split("\n")
    if lines[0] != CSV_HEADER:
        raise ValueError(f"unexpected CSV header: {lines[0]!r}")
    rows = []
    for line in lines[1:]:
        model, step, sub, bare, flowed, coh, deriv = line.split(",")
        rows.append(
            SweepRow(
                model=model,
                rg_step=int(step),
                subsystem=parse_subsystem_label(sub),
                bare=float(bare),
                flowed=float(flowed),
                coherence=float(coh),
                derivative=None if deriv == "" else float(deriv),
            )
        )
    return rows


def rows_to_json(rows):
    payload = [
        {
            "model": r.model,
            "rg_step": r.rg_step,
            "subsystem": subsystem_label(r.subsystem),
            "bare": _round12(r.bare),
            "flowed": _round12(r.flowed),
            "coherence": _round12(r.coherence),
            "derivative": None if r.derivative is None else _round12(r.derivative),
        }
        for r in rows
    ]
    return json.dumps(payload, indent=2) + "\n"


def scaling_to_json(model, peaks, fit: ScalingFit):
    payload = {
        "model": model,
        "points": [
            {
                "rg_step": p.rg_step,
                "system_size": system_size(model, p.rg_step),
                "x_max": _round12(p.x_max),
                "f_max": _round12(p.f_max),
            }
            for p in peaks
        ],
        "fit": {
            "theta": _round12(fit.theta),
            "intercept": _round12(fit.intercept),
            "r_squared": _round12(fit.r_squared),
            "nu_from_theta": _round12(fit.nu_from_theta),
        },
    }
    return json.dumps(payload, indent=2) + "\n"


def fixed_point_to_json(result):
    payload = {
        "g_c": _round12(result.g_c),
        "residual": _round12(result.residual),
        "bracket": [_round12(result.bracket[0]), _round12(result.bracket[1])],
        "nu": _round12(result.nu),
    }
    return json.dumps(payload, indent=2) + "\n"


def _round12(x):
    return float(fmt_float(x))


def write_text_atomic(path, text):
    """Write the full text, then rename into place."""
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
