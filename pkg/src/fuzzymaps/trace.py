"""Machine-readable run traces.

One line per component per step, plus header, input, mask, and final
lines. All indices and coordinates are 1-based in the file. State vectors
render like `[0 1 I]` using the scalar text syntax, several states joined
by `|`. The format is deterministic: the same run options yield the same
bytes, and a trace alone is enough to re-derive (and thus audit) the
final hidden pattern.
"""

from __future__ import annotations

import re

from .dynamics import (
    FixedPoint,
    HiddenPattern,
    LimitCycle,
    describe_outcome,
)
from .errors import FuzzymapsError, ParseError
from .special import CM, RM, SpecialMatrix, render_part
from .values import parse_scalar, render_scalar

TRACE_VERSION = "1"


class TraceError(FuzzymapsError):
    """A trace file that is malformed or does not support its own
    recorded outcome."""


def _fmt_state(part) -> str:
    return render_part(part)


def _fmt_states(parts) -> str:
    return "|".join(render_part(p) for p in parts)


def render_trace(pattern: HiddenPattern, special: SpecialMatrix, *,
                 experts=None, policy=None, threshold_k=0.0, op=None,
                 model_class=None, name="") -> str:
    """Serialize a run result. `special` supplies the component tags; the
    optional model metadata is embedded for audit but not needed for
    verification."""
    out = [f"trace {TRACE_VERSION}"]
    run_fields = [f"side={pattern.side}", f"steps={pattern.steps}",
                  f"components={len(special)}"]
    if model_class is not None:
        run_fields.append(f"class={model_class.value}")
    if name:
        run_fields.append(f"name=[{name}]")
    if policy is not None:
        run_fields.append(f"policy={policy.value}")
    run_fields.append(f"threshold-k={render_scalar(threshold_k)}")
    run_fields.append(f"op={op if op is not None else 'tagged'}")
    out.append("run " + " ".join(run_fields))
    for idx, (mat, tag) in enumerate(special):
        fields = [f"kind={tag.kind}", f"algebra={tag.algebra}",
                  f"op={tag.op}", f"rows={mat.rows}", f"cols={mat.cols}"]
        if experts is not None:
            fields.append(f"expert=[{experts[idx]}]")
        out.append(f"component {idx + 1} " + " ".join(fields))
    for idx, coords in enumerate(pattern.mask.on):
        body = " ".join(str(c + 1) for c in coords)
        out.append(f"mask {idx + 1} [{body}]")
    for idx, part in enumerate(pattern.input.parts):
        out.append(f"input {idx + 1} {_fmt_state(part)}")
    for record in pattern.trace:
        for idx, (mat, tag) in enumerate(special):
            side = pattern.side if tag.kind == CM else record.side
            frozen = "yes" if record.frozen[idx] else "no"
            out.append(
                f"step {record.step} component={idx + 1} side={side} "
                f"frozen={frozen} "
                f"raw={_fmt_state(record.raw.parts[idx])} "
                f"thresholded={_fmt_state(record.thresholded.parts[idx])} "
                f"updated={_fmt_state(record.updated.parts[idx])}")
    for idx, outcome in enumerate(pattern.outcomes):
        settled = pattern.settled_steps[idx]
        if isinstance(outcome, FixedPoint):
            if isinstance(outcome.state[0], tuple):
                d, r = outcome.state
                out.append(f"final {idx + 1} fixed-pair period=1 "
                           f"settled={settled} domain={_fmt_state(d)} "
                           f"range={_fmt_state(r)}")
            else:
                out.append(f"final {idx + 1} fixed-point period=1 "
                           f"settled={settled} "
                           f"state={_fmt_state(outcome.state)}")
        else:
            if isinstance(outcome.states[0][0], tuple):
                ds = _fmt_states([s[0] for s in outcome.states])
                rs = _fmt_states([s[1] for s in outcome.states])
                out.append(f"final {idx + 1} pair-cycle "
                           f"period={outcome.period} settled={settled} "
                           f"domains={ds} ranges={rs}")
            else:
                out.append(f"final {idx + 1} limit-cycle "
                           f"period={outcome.period} settled={settled} "
                           f"states={_fmt_states(outcome.states)}")
    out.append("end")
    return "\n".join(out) + "\n"


_FIELD_RE = re.compile(
    r"([\w-]+)=((?:\[[^\]]*\])(?:\|\[[^\]]*\])*|\S+)")


def _parse_state(text: str, lineno: int):
    if not (text.startswith("[") and text.endswith("]")):
        raise TraceError(f"line {lineno}: bad state {text!r}")
    body = text[1:-1].strip()
    if not body:
        return tuple()
    try:
        return tuple(parse_scalar(tok) for tok in body.split())
    except ParseError as exc:
        raise TraceError(f"line {lineno}: {exc}") from None


def _parse_states(text: str, lineno: int):
    return tuple(_parse_state(chunk, lineno) for chunk in text.split("|"))


def parse_trace(text: str) -> dict:
    """Structural parse into a dict: side, kinds, inputs, steps, finals.
    Raises TraceError on malformed input."""
    side = None
    kinds = {}
    inputs = {}
    masks = {}
    steps = []
    finals = {}
    saw_end = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        if head == "trace":
            if rest.strip() != TRACE_VERSION:
                raise TraceError(
                    f"line {lineno}: unsupported trace version "
                    f"{rest.strip()!r}")
        elif head == "run":
            fields = dict(_FIELD_RE.findall(rest))
            side = fields.get("side")
            if side not in ("domain", "range"):
                raise TraceError(f"line {lineno}: bad or missing run side")
        elif head == "component":
            tokens = rest.split(None, 1)
            idx = int(tokens[0]) - 1
            fields = dict(_FIELD_RE.findall(tokens[1]))
            if fields.get("kind") not in (CM, RM):
                raise TraceError(f"line {lineno}: bad component kind")
            kinds[idx] = fields["kind"]
        elif head == "input":
            tokens = rest.split(None, 1)
            inputs[int(tokens[0]) - 1] = _parse_state(tokens[1].strip(),
                                                      lineno)
        elif head == "mask":
            tokens = rest.split(None, 1)
            body = tokens[1].strip()
            if not (body.startswith("[") and body.endswith("]")):
                raise TraceError(f"line {lineno}: bad mask")
            coords = body[1:-1].split()
            masks[int(tokens[0]) - 1] = tuple(int(c) - 1 for c in coords)
        elif head == "step":
            tokens = rest.split(None, 1)
            fields = dict(_FIELD_RE.findall(tokens[1]))
            steps.append({
                "step": int(tokens[0]),
                "component": int(fields["component"]) - 1,
                "side": fields["side"],
                "frozen": fields["frozen"] == "yes",
                "raw": _parse_state(fields["raw"], lineno),
                "thresholded": _parse_state(fields["thresholded"], lineno),
                "updated": _parse_state(fields["updated"], lineno),
            })
        elif head == "final":
            tokens = rest.split(None, 1)
            idx = int(tokens[0]) - 1
            fields = dict(_FIELD_RE.findall(tokens[1]))
            shape = tokens[1].split()[0]
            entry = {"shape": shape, "period": int(fields["period"]),
                     "settled": int(fields["settled"])}
            if shape == "fixed-point":
                entry["state"] = _parse_state(fields["state"], lineno)
            elif shape == "fixed-pair":
                entry["domain"] = _parse_state(fields["domain"], lineno)
                entry["range"] = _parse_state(fields["range"], lineno)
            elif shape == "limit-cycle":
                entry["states"] = _parse_states(fields["states"], lineno)
            elif shape == "pair-cycle":
                entry["domains"] = _parse_states(fields["domains"], lineno)
                entry["ranges"] = _parse_states(fields["ranges"], lineno)
            else:
                raise TraceError(f"line {lineno}: unknown final shape "
                                 f"{shape!r}")
            finals[idx] = entry
        elif head == "end":
            saw_end = True
        else:
            raise TraceError(f"line {lineno}: unknown record {head!r}")
    if side is None:
        raise TraceError("trace has no run line")
    if not saw_end:
        raise TraceError("trace has no end line")
    if set(kinds) != set(inputs) or set(kinds) != set(finals):
        raise TraceError("component, input, and final lines disagree")
    return {"side": side, "kinds": kinds, "inputs": inputs, "masks": masks,
            "steps": steps, "finals": finals}


def _rebuild_outcome(kind, side, input_state, comp_steps):
    """Re-detect one component's pattern from its recorded states."""
    history = [input_state]
    landing_steps = [0]
    opposite = {}
    for entry in comp_steps:
        if entry["frozen"]:
            continue
        if entry["side"] == side:
            history.append(entry["updated"])
            landing_steps.append(entry["step"])
        else:
            opposite[entry["step"]] = entry["updated"]
    seen = {history[0]: 0}
    hit = None
    for i in range(1, len(history)):
        if history[i] in seen:
            hit = (seen[history[i]], i)
            break
        seen[history[i]] = i
    if hit is None:
        raise TraceError("recorded states never recur; trace incomplete")
    start, at = hit
    cycle = history[start:at]
    if kind == CM:
        if len(cycle) == 1:
            return FixedPoint(cycle[0])
        return LimitCycle(tuple(cycle), len(cycle))
    pairs = []
    for i in range(start, at):
        partner_step = landing_steps[i] + 1
        if partner_step not in opposite:
            raise TraceError(
                f"missing opposite-side state at step {partner_step}")
        partner = opposite[partner_step]
        pairs.append((history[i], partner) if side == "domain"
                     else (partner, history[i]))
    if len(pairs) == 1:
        return FixedPoint(pairs[0])
    return LimitCycle(tuple(pairs), len(pairs))


def _recorded_outcome(entry):
    shape = entry["shape"]
    if shape == "fixed-point":
        return FixedPoint(entry["state"])
    if shape == "fixed-pair":
        return FixedPoint((entry["domain"], entry["range"]))
    if shape == "limit-cycle":
        return LimitCycle(entry["states"], entry["period"])
    return LimitCycle(tuple(zip(entry["domains"], entry["ranges"])),
                      entry["period"])


def verify_trace(text: str) -> tuple:
    """Re-derive every component's final pattern from the recorded step
    states and check it against the recorded finals. Returns the verified
    outcomes in component order."""
    data = parse_trace(text)
    outcomes = []
    for idx in sorted(data["kinds"]):
        comp_steps = [e for e in data["steps"] if e["component"] == idx]
        comp_steps.sort(key=lambda e: e["step"])
        rebuilt = _rebuild_outcome(data["kinds"][idx], data["side"],
                                   data["inputs"][idx], comp_steps)
        recorded = _recorded_outcome(data["finals"][idx])
        if rebuilt != recorded:
            raise TraceError(
                f"component {idx + 1}: recorded final "
                f"({describe_outcome(recorded)}) does not match the "
                f"states in the trace ({describe_outcome(rebuilt)})")
        outcomes.append(rebuilt)
    return tuple(outcomes)
