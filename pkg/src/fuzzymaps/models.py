"""Named multi-expert model classes over component unions.

Each class is a constraint predicate on the tags/shapes of the underlying
union plus bookkeeping (attribute labels, one expert identifier per
component). The model layer validates and dispatches; it never changes
the arithmetic of the run itself.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import reduce

from .errors import (
    ClassViolation,
    InvalidInput,
    NonzeroDiagonal,
    WrongEntryPoint,
)
from .dynamics import run_cm, run_mixed, run_rm
from .matrices import Matrix, mat_add
from .special import (
    CM,
    DOMAIN_SIDE,
    RM,
    SpecialMatrix,
    SpecialStateVector,
    make_special,
)
from .values import ONE, ValueDomain, ZERO, _ancestors


class ModelClass(enum.Enum):
    SFCM = "SFCM"
    SMFCM = "SMFCM"
    SNCM = "SNCM"
    SMNCM = "SMNCM"
    SFNCM = "SFNCM"
    SFRM = "SFRM"
    SMFRM = "SMFRM"
    SNRM = "SNRM"
    SMNRM = "SMNRM"
    SFNRM = "SFNRM"
    SMFCFRM = "SMFCFRM"
    SMNCNRM = "SMNCNRM"
    SMFCRNCRM = "SMFCRNCRM"
    SFRE = "SFRE"
    SMFRE = "SMFRE"
    SNRE = "SNRE"
    SMNRE = "SMNRE"
    SSHM = "SSHM"

    @classmethod
    def parse(cls, text: str) -> "ModelClass":
        try:
            return cls[text.strip().upper()]
        except KeyError:
            raise ValueError(f"unknown model class {text!r}") from None


# Classes whose components describe relational equations rather than
# dynamical systems; they are built here but solved by the fre module.
FRE_CLASSES = frozenset(
    {ModelClass.SFRE, ModelClass.SMFRE, ModelClass.SNRE, ModelClass.SMNRE})

_CM_CLASSES = frozenset({ModelClass.SFCM, ModelClass.SMFCM, ModelClass.SNCM,
                         ModelClass.SMNCM, ModelClass.SFNCM})
_RM_CLASSES = frozenset({ModelClass.SFRM, ModelClass.SMFRM, ModelClass.SNRM,
                         ModelClass.SMNRM, ModelClass.SFNRM})
_MIX_CLASSES = frozenset({ModelClass.SMFCFRM, ModelClass.SMNCNRM,
                          ModelClass.SMFCRNCRM, ModelClass.SSHM})


@dataclass(frozen=True)
class _ClassRule:
    """Decidable structural constraints for one model class."""

    kinds: frozenset  # allowed component kinds
    algebras: frozenset  # allowed component algebras
    ops: frozenset  # allowed component operators; empty = any
    uniform_shape: bool = False  # all components share one shape
    require_kinds: frozenset = frozenset()  # each must appear at least once
    require_algebras: frozenset = frozenset()


_F = frozenset({"fuzzy"})
_N = frozenset({"neutrosophic"})
_FN = frozenset({"fuzzy", "neutrosophic"})
_CIRCLE = frozenset({"circle"})
_MAXMIN = frozenset({"maxmin"})
_CM_ONLY = frozenset({CM})
_RM_ONLY = frozenset({RM})
_ANY_KIND = frozenset({CM, RM})

_RULES = {
    ModelClass.SFCM: _ClassRule(_CM_ONLY, _F, _CIRCLE, uniform_shape=True),
    ModelClass.SMFCM: _ClassRule(_CM_ONLY, _F, _CIRCLE),
    ModelClass.SNCM: _ClassRule(_CM_ONLY, _N, _CIRCLE, uniform_shape=True),
    ModelClass.SMNCM: _ClassRule(_CM_ONLY, _N, _CIRCLE),
    ModelClass.SFNCM: _ClassRule(_CM_ONLY, _FN, _CIRCLE,
                                 require_algebras=_FN),
    ModelClass.SFRM: _ClassRule(_RM_ONLY, _F, _CIRCLE, uniform_shape=True),
    ModelClass.SMFRM: _ClassRule(_RM_ONLY, _F, _CIRCLE),
    ModelClass.SNRM: _ClassRule(_RM_ONLY, _N, _CIRCLE, uniform_shape=True),
    ModelClass.SMNRM: _ClassRule(_RM_ONLY, _N, _CIRCLE),
    ModelClass.SFNRM: _ClassRule(_RM_ONLY, _FN, _CIRCLE,
                                 require_algebras=_FN),
    ModelClass.SMFCFRM: _ClassRule(_ANY_KIND, _F, _CIRCLE,
                                   require_kinds=_ANY_KIND),
    ModelClass.SMNCNRM: _ClassRule(_ANY_KIND, _N, _CIRCLE,
                                   require_kinds=_ANY_KIND),
    ModelClass.SMFCRNCRM: _ClassRule(_ANY_KIND, _FN, frozenset()),
    ModelClass.SSHM: _ClassRule(_ANY_KIND, _FN, frozenset()),
    ModelClass.SFRE: _ClassRule(_RM_ONLY, _F, _MAXMIN, uniform_shape=True),
    ModelClass.SMFRE: _ClassRule(_RM_ONLY, _F, _MAXMIN),
    ModelClass.SNRE: _ClassRule(_RM_ONLY, _N, _MAXMIN, uniform_shape=True),
    ModelClass.SMNRE: _ClassRule(_RM_ONLY, _N, _MAXMIN),
}

# A component's declared value domain must sit inside the carrier its
# algebra/operator combination works over: signed tags for the circle
# operator, memberships for maxmin/minmax.
_REQUIRED_DOMAIN = {
    ("circle", "fuzzy"): ValueDomain.TRI,
    ("circle", "neutrosophic"): ValueDomain.NEUTRO_TRI,
    ("maxmin", "fuzzy"): ValueDomain.UNIT,
    ("maxmin", "neutrosophic"): ValueDomain.NEUTRO_UNIT,
    ("minmax", "fuzzy"): ValueDomain.UNIT,
    ("minmax", "neutrosophic"): ValueDomain.NEUTRO_UNIT,
}


def _domain_fits(declared: ValueDomain, required: ValueDomain) -> bool:
    return required in _ancestors(declared)


@dataclass(frozen=True)
class Model:
    """A validated union with class, labels, and expert provenance."""

    model_class: ModelClass
    matrix: SpecialMatrix
    labels: tuple  # per component: (row_labels,) for CM, (rows, cols) for RM
    experts: tuple

    def __post_init__(self):
        if len(self.labels) != len(self.matrix):
            raise ClassViolation(
                f"{len(self.labels)} label groups for "
                f"{len(self.matrix)} components")
        if len(self.experts) != len(self.matrix):
            raise ClassViolation(
                f"{len(self.experts)} expert names for "
                f"{len(self.matrix)} components")


def class_diagnostics(model_class: ModelClass,
                      special: SpecialMatrix) -> list:
    """Every way `special` violates the class predicate, as messages
    naming the component and the broken rule. Empty means valid."""
    rule = _RULES[model_class]
    name = model_class.value
    out = []
    shapes = set()
    seen_kinds = set()
    seen_algebras = set()
    for idx, (mat, tag) in enumerate(special):
        where = f"component {idx + 1}"
        seen_kinds.add(tag.kind)
        seen_algebras.add(tag.algebra)
        shapes.add(mat.shape)
        if tag.kind not in rule.kinds:
            out.append(f"{where}: kind {tag.kind} not allowed in {name}")
        if tag.algebra not in rule.algebras:
            out.append(
                f"{where}: {tag.algebra} components not allowed in {name}")
        if rule.ops and tag.op not in rule.ops:
            out.append(
                f"{where}: operator {tag.op} not allowed in {name}")
        required = _REQUIRED_DOMAIN[(tag.op, tag.algebra)]
        if not _domain_fits(mat.domain, required):
            out.append(
                f"{where}: values declared {mat.domain.value}, but a "
                f"{tag.algebra} {tag.op} component needs {required.value}")
    if rule.uniform_shape and len(shapes) > 1:
        out.append(f"{name} components must share one shape; "
                   f"got {sorted(shapes)}")
    for kind in sorted(rule.require_kinds):
        if kind not in seen_kinds:
            out.append(f"{name} needs at least one {kind} component")
    for algebra in sorted(rule.require_algebras):
        if algebra not in seen_algebras:
            out.append(f"{name} needs at least one {algebra} component")
    return out


def diagonal_diagnostics(special: SpecialMatrix) -> list:
    """Every nonzero diagonal cell of every square connection component.

    Only circle-operator squares are signed connection matrices with the
    no-self-influence rule; maxmin/minmax squares are membership relations
    whose diagonal is meaningful data.
    """
    out = []
    for idx, (mat, tag) in enumerate(special):
        if tag.kind != CM or tag.op != "circle":
            continue
        for i in range(mat.rows):
            if mat.at(i, i) != ZERO:
                out.append(f"component {idx + 1}: diagonal cell "
                           f"({i + 1},{i + 1}) is {mat.at(i, i)}, "
                           f"must be 0")
    return out


def _default_labels(special: SpecialMatrix) -> tuple:
    groups = []
    for mat, tag in special:
        if tag.kind == CM:
            groups.append((tuple(f"c{i + 1}" for i in range(mat.rows)),))
        else:
            groups.append((tuple(f"d{i + 1}" for i in range(mat.rows)),
                           tuple(f"r{j + 1}" for j in range(mat.cols))))
    return tuple(groups)


def _normalize_labels(special: SpecialMatrix, labels) -> tuple:
    defaults = _default_labels(special)
    if labels is None:
        return defaults
    if len(labels) != len(special):
        raise ClassViolation(
            f"{len(labels)} label groups for {len(special)} components")
    groups = []
    for idx, ((mat, tag), group) in enumerate(zip(special, labels)):
        if group is None:
            groups.append(defaults[idx])
            continue
        where = f"component {idx + 1}"
        if tag.kind == CM:
            if group and isinstance(group[0], (list, tuple)):
                group = group[0]  # accept ([rows],) form for squares too
            names = tuple(str(n) for n in group)
            if len(names) != mat.rows:
                raise ClassViolation(
                    f"{where}: {len(names)} labels for {mat.rows} nodes")
            groups.append((names,))
        else:
            if len(group) != 2:
                raise ClassViolation(
                    f"{where}: rectangular components take "
                    f"(row labels, column labels)")
            rows = tuple(str(n) for n in group[0])
            cols = tuple(str(n) for n in group[1])
            if len(rows) != mat.rows or len(cols) != mat.cols:
                raise ClassViolation(
                    f"{where}: {len(rows)}x{len(cols)} labels for a "
                    f"{mat.rows}x{mat.cols} component")
            groups.append((rows, cols))
    return tuple(groups)


def build_model(model_class: ModelClass, components, labels=None,
                experts=None) -> Model:
    """Validate a union against a class predicate and wrap it.

    `components` is a SpecialMatrix or a sequence of (Matrix, ComponentTag)
    pairs. Every square component must carry a zero diagonal.
    """
    if isinstance(model_class, str):
        model_class = ModelClass.parse(model_class)
    special = components if isinstance(components, SpecialMatrix) \
        else make_special(components)
    diagonal_problems = diagonal_diagnostics(special)
    if diagonal_problems:
        raise NonzeroDiagonal("; ".join(diagonal_problems))
    problems = class_diagnostics(model_class, special)
    if problems:
        raise ClassViolation("; ".join(problems))
    if experts is None:
        experts = tuple(f"expert {i + 1}" for i in range(len(special)))
    else:
        experts = tuple(str(e) for e in experts)
    return Model(model_class=model_class, matrix=special,
                 labels=_normalize_labels(special, labels), experts=experts)


def combine_maps(matrices) -> Matrix:
    """Entrywise sum of equally shaped opinion matrices (the combined-map
    construction; opposite opinions cancel)."""
    mats = list(matrices)
    if not mats:
        raise ValueError("need at least one matrix")
    return reduce(mat_add, mats)


def validate_input(model: Model, x: SpecialStateVector) -> list:
    """Diagnostics for an initial vector against a model: component count,
    per-side lengths, crisp {0,1} entries. Empty list means ok."""
    out = []
    if len(x) != len(model.matrix):
        out.append(f"input has {len(x)} parts, model has "
                   f"{len(model.matrix)} components")
        return out
    for idx, ((mat, tag), part) in enumerate(zip(model.matrix, x.parts)):
        where = f"component {idx + 1}"
        if tag.kind == CM:
            if x.side != DOMAIN_SIDE:
                out.append(f"{where}: square component has no "
                           f"{x.side} space")
            expected = mat.rows
        else:
            expected = mat.rows if x.side == DOMAIN_SIDE else mat.cols
        if len(part) != expected:
            out.append(f"{where}: input length {len(part)} does not match "
                       f"the {x.side} space of {mat.rows}x{mat.cols}")
            continue
        for coord, value in enumerate(part):
            if value != ZERO and value != ONE:
                out.append(f"{where}, coordinate {coord + 1}: non-crisp "
                           f"input {value}; entries must be 0 or 1")
    return out


def run(model: Model, x0: SpecialStateVector, *, op=None, policy=None,
        threshold_k=0.0, max_steps=None):
    """Dispatch a validated model to the matching engine."""
    if model.model_class in FRE_CLASSES:
        raise WrongEntryPoint(
            f"{model.model_class.value} describes relational equations; "
            f"solve it with the fre module, not a dynamical run")
    problems = validate_input(model, x0)
    if problems:
        raise InvalidInput("; ".join(problems))
    kwargs = {"op": op, "threshold_k": threshold_k}
    if policy is not None:
        kwargs["policy"] = policy
    if max_steps is not None:
        kwargs["max_steps"] = max_steps
    if model.model_class in _CM_CLASSES:
        return run_cm(model.matrix, x0, **kwargs)
    if model.model_class in _RM_CLASSES:
        return run_rm(model.matrix, x0, **kwargs)
    return run_mixed(model.matrix, x0, **kwargs)
