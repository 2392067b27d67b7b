"""The hidden-pattern engine: thresholding/updating of raw state unions and
iteration to fixed points, limit cycles, and fixed binary pairs.

Update discipline, per component kind and operator:

* circle-operator components are thresholded onto {0,1} (fuzzy) or {0,1,I}
  (neutrosophic) after every application, and the coordinates that were ON
  in the user's initial vector are pinned back to 1 - but only when the
  result lands on the seeded side. A square (CM) component lives entirely
  in the seeded space, so it is pinned on every step; a rectangular (RM)
  component is pinned only when it returns to the seeded side.
* maxmin/minmax components pass through raw: no thresholding, no pinning.
  Their values stay inside the finite set of stored inputs, so runs still
  terminate.

Components settle independently: once a component's state recurs it is
frozen and carried unchanged while the others keep iterating.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    ComponentCountMismatch,
    InvalidInput,
    IterationCapExceeded,
    NonCMComponent,
    NonRMComponent,
    ShapeMismatch,
)
from .matrices import transpose
from .special import (
    CM,
    DOMAIN_SIDE,
    OPS,
    RM,
    SpecialMatrix,
    SpecialStateVector,
    apply_part,
    other_side,
    render_part,
)
from .values import ONE, OrderPolicy, ThresholdMode, ZERO, threshold_scalar

DEFAULT_MAX_STEPS = 10_000


@dataclass(frozen=True)
class InputMask:
    """Which coordinates were ON in the user's initial vector (0-based,
    per component) and which side received the input."""

    side: str
    on: tuple  # tuple of sorted tuples of int

    @classmethod
    def from_state(cls, state: SpecialStateVector) -> "InputMask":
        on = tuple(
            tuple(i for i, v in enumerate(part) if v == ONE)
            for part in state.parts)
        return cls(side=state.side, on=on)


@dataclass(frozen=True)
class FixedPoint:
    """Period-1 hidden pattern. For RM components the state is a
    (domain_state, range_state) pair of tuples."""

    state: tuple

    @property
    def period(self):
        return 1


@dataclass(frozen=True)
class LimitCycle:
    """Recurrent hidden pattern of period >= 2; states lists one full
    cycle in iteration order."""

    states: tuple
    period: int


class _NotYet:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NotYet"


NotYet = _NotYet()


def detect_cycle(history):
    """Classify a state history: the first recurrence of an earlier state
    closes the run. Period = distance back to the match; period 1 is a
    fixed point. Returns NotYet while all states are distinct."""
    history = list(history)
    if not history:
        raise ValueError("history must be nonempty")
    last = history[-1]
    for j in range(len(history) - 1):
        if history[j] == last:
            period = (len(history) - 1) - j
            if period == 1:
                return FixedPoint(last)
            return LimitCycle(tuple(history[j:len(history) - 1]), period)
    return NotYet


@dataclass(frozen=True)
class IterationRecord:
    """One engine step: the raw union, its thresholded form, and the form
    after pinning. `frozen` marks components that had already settled and
    were carried unchanged through this step. `side` is where RM parts land
    on this step (CM parts always sit on the seeded side)."""

    step: int
    side: str
    raw: SpecialStateVector
    thresholded: SpecialStateVector
    updated: SpecialStateVector
    frozen: tuple


@dataclass(frozen=True)
class HiddenPattern:
    """Run result: one outcome per component plus the full trace."""

    outcomes: tuple
    trace: tuple
    mask: InputMask
    side: str
    steps: int
    settled_steps: tuple
    input: SpecialStateVector

    def describe(self) -> str:
        lines = []
        for idx, outcome in enumerate(self.outcomes):
            lines.append(f"component {idx + 1}: {describe_outcome(outcome)}")
        return "\n".join(lines)


def describe_outcome(outcome) -> str:
    if isinstance(outcome, FixedPoint):
        if _is_pair(outcome.state):
            d, r = outcome.state
            return (f"fixed pair: domain={render_part(d)} "
                    f"range={render_part(r)}")
        return f"fixed point: {render_part(outcome.state)}"
    if _is_pair(outcome.states[0]):
        body = " -> ".join(
            f"domain={render_part(d)} range={render_part(r)}"
            for d, r in outcome.states)
        return f"pair cycle (period {outcome.period}): {body}"
    body = " -> ".join(render_part(s) for s in outcome.states)
    return f"limit cycle (period {outcome.period}): {body}"


def _is_pair(state):
    # RM outcomes are (domain_tuple, range_tuple); CM states are flat
    # tuples of scalars, so a tuple first element marks a pair.
    return len(state) == 2 and isinstance(state[0], tuple)


def _threshold_part(part, mode):
    if mode is None:
        return tuple(part)
    return tuple(threshold_scalar(v, mode) for v in part)


def _pin_part(part, on_indices):
    if not on_indices:
        return tuple(part)
    out = list(part)
    for idx in on_indices:
        if idx >= len(out):
            raise ShapeMismatch(
                f"mask index {idx + 1} outside state of length {len(out)}")
        out[idx] = ONE
    return tuple(out)


def threshold_update(raw: SpecialStateVector, mask: InputMask,
                     mode) -> SpecialStateVector:
    """Threshold every coordinate, then force the masked ON coordinates
    back to 1 - but only when the raw union is on the masked side.

    `mode` is a ThresholdMode applied to every part, or a per-part sequence
    whose entries may be None to pass a part through untouched. Passthrough
    parts are never pinned: cutting and pinning travel together.
    """
    if len(raw.parts) != len(mask.on):
        raise ShapeMismatch(
            f"state has {len(raw.parts)} parts, mask has {len(mask.on)}")
    if isinstance(mode, ThresholdMode) or mode is None:
        modes = [mode] * len(raw.parts)
    else:
        modes = list(mode)
        if len(modes) != len(raw.parts):
            raise ShapeMismatch(
                f"state has {len(raw.parts)} parts, got {len(modes)} modes")
    pin = raw.side == mask.side
    parts = []
    for part, part_mode, on in zip(raw.parts, modes, mask.on):
        thresholded = _threshold_part(part, part_mode)
        if pin and part_mode is not None:
            thresholded = _pin_part(thresholded, on)
        parts.append(thresholded)
    return SpecialStateVector(parts, raw.side)


def _component_mode(tag, k):
    if tag.op != "circle":
        return None  # maxmin/minmax parts flow raw
    if tag.algebra == "neutrosophic":
        return ThresholdMode.neutrosophic(k)
    return ThresholdMode.fuzzy(k)


def _validate_input(m: SpecialMatrix, x0: SpecialStateVector):
    if len(x0) != len(m):
        raise ComponentCountMismatch(
            f"input has {len(x0)} parts, union has {len(m)} components")
    for idx, ((mat, tag), part) in enumerate(zip(m, x0.parts)):
        expected = mat.rows
        if tag.kind == RM and x0.side != DOMAIN_SIDE:
            expected = mat.cols
        if len(part) != expected:
            raise ShapeMismatch(
                f"component {idx + 1}: input length {len(part)} does not "
                f"match the {x0.side} space of {mat.rows}x{mat.cols}")
        for coord, value in enumerate(part):
            if value != ZERO and value != ONE:
                raise InvalidInput(
                    f"component {idx + 1}, coordinate {coord + 1}: input "
                    f"entries must be 0 or 1")


class _ComponentRun:
    """Mutable per-component iteration state."""

    def __init__(self, index, matrix, tag, start, seeded_side, mask_on, k,
                 policy):
        self.index = index
        self.matrix = matrix
        self.tag = tag
        self.mode = _component_mode(tag, k)
        self.policy = policy
        self.seeded_side = seeded_side
        self.mask_on = mask_on if tag.op == "circle" else ()
        self.cur = start
        self.cur_side = seeded_side  # space the current state addresses
        self.frozen = False
        self.outcome = None
        self.settled_step = 0
        self.history = [start]
        self.seen = {start: 0}

    # -- stepping ----------------------------------------------------------
    def active_matrix(self):
        if self.tag.kind == CM:
            return self.matrix
        if self.cur_side == DOMAIN_SIDE:
            return self.matrix
        return transpose(self.matrix)

    def step(self):
        """Advance one application; returns (raw, thresholded, updated)."""
        raw = apply_part(self.cur, self.active_matrix(), self.tag.op,
                         self.policy)
        thresholded = _threshold_part(raw, self.mode)
        land_side = (self.seeded_side if self.tag.kind == CM
                     else other_side(self.cur_side))
        pinned = (land_side == self.seeded_side)
        updated = _pin_part(thresholded, self.mask_on) if pinned \
            else thresholded
        self.cur = updated
        self.cur_side = land_side
        return raw, thresholded, updated

    def observe(self, step_index):
        """Record the new state for cycle detection when it is comparable
        (CM: every step; RM: seeded-side landings only)."""
        if self.tag.kind == RM and self.cur_side != self.seeded_side:
            return
        state = self.cur
        if state in self.seen:
            start = self.seen[state]
            cycle = self.history[start:]
            self._settle(cycle, step_index)
        else:
            self.seen[state] = len(self.history)
            self.history.append(state)

    # -- outcomes ------------------------------------------------------------
    def _partner(self, state):
        """The opposite-side state an RM component derives from a
        seeded-side state (threshold only; the far side is never pinned)."""
        mat = self.matrix if self.seeded_side == DOMAIN_SIDE \
            else transpose(self.matrix)
        raw = apply_part(state, mat, self.tag.op, self.policy)
        return _threshold_part(raw, self.mode)

    def _as_pair(self, state):
        partner = self._partner(state)
        if self.seeded_side == DOMAIN_SIDE:
            return (state, partner)
        return (partner, state)

    def _settle(self, cycle, step_index):
        if self.tag.kind == RM:
            states = tuple(self._as_pair(s) for s in cycle)
        else:
            states = tuple(cycle)
        if len(states) == 1:
            self.outcome = FixedPoint(states[0])
        else:
            self.outcome = LimitCycle(states, len(states))
        self.frozen = True
        self.settled_step = step_index
        self._verify()

    def _verify(self):
        """Post-hoc fixed-point check, independent of the detector: one
        explicit extra step from a reported fixed point must return it."""
        if not isinstance(self.outcome, FixedPoint):
            return
        if self.tag.kind == CM:
            state = self.outcome.state
            raw = apply_part(state, self.matrix, self.tag.op, self.policy)
            nxt = _pin_part(_threshold_part(raw, self.mode), self.mask_on)
            ok = nxt == state
        else:
            domain_state, range_state = self.outcome.state
            fwd = apply_part(domain_state, self.matrix, self.tag.op,
                             self.policy)
            back = apply_part(range_state, transpose(self.matrix),
                              self.tag.op, self.policy)
            fwd_t = _threshold_part(fwd, self.mode)
            back_t = _threshold_part(back, self.mode)
            if self.seeded_side == DOMAIN_SIDE:
                back_t = _pin_part(back_t, self.mask_on)
            else:
                fwd_t = _pin_part(fwd_t, self.mask_on)
            ok = fwd_t == range_state and back_t == domain_state
        if not ok:
            raise RuntimeError(
                f"internal error: component {self.index + 1} reported a "
                f"fixed point that does not map to itself")


def _run(m: SpecialMatrix, x0: SpecialStateVector, *, op=None,
         policy=OrderPolicy.BOOK_DEFAULT, threshold_k=0.0,
         max_steps=DEFAULT_MAX_STEPS) -> HiddenPattern:
    if op is not None and op not in OPS:
        raise ValueError(f"unknown operator {op!r}")
    _validate_input(m, x0)
    mask = InputMask.from_state(x0)
    has_rm = any(tag.kind == RM for _, tag in m)
    runs = []
    for idx, (mat, tag) in enumerate(m):
        if op is not None and tag.op != op:
            tag = type(tag)(kind=tag.kind, algebra=tag.algebra, op=op)
        runs.append(_ComponentRun(idx, mat, tag, x0.parts[idx], x0.side,
                                  mask.on[idx], threshold_k, policy))
    records = []
    steps_taken = 0
    for step in range(1, max_steps + 1):
        if all(r.frozen for r in runs):
            break
        frozen_before = tuple(r.frozen for r in runs)
        raw_parts, thr_parts, upd_parts = [], [], []
        for r in runs:
            if r.frozen:
                raw_parts.append(r.cur)
                thr_parts.append(r.cur)
                upd_parts.append(r.cur)
            else:
                raw, thresholded, updated = r.step()
                raw_parts.append(raw)
                thr_parts.append(thresholded)
                upd_parts.append(updated)
        side = other_side(x0.side) if (has_rm and step % 2 == 1) else x0.side
        records.append(IterationRecord(
            step=step,
            side=side,
            raw=SpecialStateVector(raw_parts, side),
            thresholded=SpecialStateVector(thr_parts, side),
            updated=SpecialStateVector(upd_parts, side),
            frozen=frozen_before,
        ))
        steps_taken = step
        for r in runs:
            if not r.frozen:
                r.observe(step)
    if not all(r.frozen for r in runs):
        pending = [str(r.index + 1) for r in runs if not r.frozen]
        raise IterationCapExceeded(
            f"components {', '.join(pending)} still unsettled after "
            f"{max_steps} steps")
    return HiddenPattern(
        outcomes=tuple(r.outcome for r in runs),
        trace=tuple(records),
        mask=mask,
        side=x0.side,
        steps=steps_taken,
        settled_steps=tuple(r.settled_step for r in runs),
        input=x0,
    )


def run_cm(m: SpecialMatrix, x0: SpecialStateVector, *, op=None,
           policy=OrderPolicy.BOOK_DEFAULT, threshold_k=0.0,
           max_steps=DEFAULT_MAX_STEPS) -> HiddenPattern:
    """Iterate a union of square components to its hidden pattern."""
    for idx, (_, tag) in enumerate(m):
        if tag.kind != CM:
            raise NonCMComponent(f"component {idx + 1} is tagged {tag.kind}")
    return _run(m, x0, op=op, policy=policy, threshold_k=threshold_k,
                max_steps=max_steps)


def run_rm(m: SpecialMatrix, x0: SpecialStateVector, *, op=None,
           policy=OrderPolicy.BOOK_DEFAULT, threshold_k=0.0,
           max_steps=DEFAULT_MAX_STEPS) -> HiddenPattern:
    """Alternate rectangular components with their transposes until each
    settles into a fixed binary pair (or a cycle of pairs)."""
    for idx, (_, tag) in enumerate(m):
        if tag.kind != RM:
            raise NonRMComponent(f"component {idx + 1} is tagged {tag.kind}")
    return _run(m, x0, op=op, policy=policy, threshold_k=threshold_k,
                max_steps=max_steps)


def run_mixed(m: SpecialMatrix, x0: SpecialStateVector, *, op=None,
              policy=OrderPolicy.BOOK_DEFAULT, threshold_k=0.0,
              max_steps=DEFAULT_MAX_STEPS) -> HiddenPattern:
    """Run an arbitrary CM/RM mixture: square components advance against
    their own matrix every step while rectangular ones alternate sides."""
    return _run(m, x0, op=op, policy=policy, threshold_k=threshold_k,
                max_steps=max_steps)
