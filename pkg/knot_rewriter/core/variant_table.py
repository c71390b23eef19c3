"""
Variant Table for Moves II and III

Oriented and signed versions of moves II and III are data, not code. Each
variant lists the endpoints of its arcs as (role, chord tag) pairs plus sign
constraints between tags. The move engine binds tags to the chords found at
a site and checks the constraints; nothing else decides legality.

Tables are read from JSON (or YAML) and validated here.
"""

import json
import logging
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Literal, Mapping, Optional, Sequence, Tuple, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, ValidationError, field_validator, model_validator

from .exceptions.rewriter_exceptions import VariantTableError
from .models import Endpoint, Role, Sign

logger = logging.getLogger(__name__)

DEFAULT_TABLE_PATH = Path(__file__).resolve().parent.parent / "data" / "variant_table.json"


class EndpointPattern(BaseModel):
    """One endpoint of a variant arc."""
    model_config = ConfigDict(frozen=True)

    role: Role
    chord: str


class SignConstraint(BaseModel):
    """
    Sign rule over chord tags.

    ``equal``/``opposite`` relate two tags; ``+``/``-`` fix one tag's sign.
    """
    model_config = ConfigDict(frozen=True)

    chords: List[str]
    relation: Literal["equal", "opposite", "+", "-"]

    @model_validator(mode="after")
    def _arity(self) -> "SignConstraint":
        expected = 1 if self.relation in ("+", "-") else 2
        if len(self.chords) != expected:
            raise ValueError(f"Constraint '{self.relation}' needs {expected} chord tag(s)")
        return self

    def holds(self, binding: Mapping[str, int], signs: Mapping[int, Sign]) -> bool:
        values = [signs[binding[tag]] for tag in self.chords]
        if self.relation == "equal":
            return values[0] == values[1]
        if self.relation == "opposite":
            return values[0] != values[1]
        return values[0] == Sign.from_symbol(self.relation)


Arc = List[EndpointPattern]


def _check_arc(arc: Arc, label: str) -> None:
    if len(arc) != 2:
        raise ValueError(f"Arc '{label}' must have exactly two endpoints")
    if arc[0].chord == arc[1].chord:
        raise ValueError(f"Arc '{label}' holds two endpoints of one chord")


def _check_chords(arcs: Sequence[Arc], constraints: Sequence[SignConstraint]) -> List[str]:
    """Every tag gets exactly one Head and one Tail; constraints use known tags."""
    roles: Dict[str, List[Role]] = {}
    for arc in arcs:
        for endpoint in arc:
            roles.setdefault(endpoint.chord, []).append(endpoint.role)
    for tag, found in roles.items():
        if sorted(found) != sorted([Role.TAIL, Role.HEAD]):
            raise ValueError(f"Chord tag '{tag}' needs exactly one Head and one Tail")
    for constraint in constraints:
        for tag in constraint.chords:
            if tag not in roles:
                raise ValueError(f"Sign constraint names unknown chord tag '{tag}'")
    return list(roles)


class R2Variant(BaseModel):
    """
    Move II pattern: two arcs, one holding both Tails and one both Heads.

    Arc 1 is the arc at the first insertion gap. Tag order is the order of
    first appearance in arc 1; the first tag takes the instance's sign.
    """
    id: str
    description: Optional[str] = None
    strands: Literal["parallel", "antiparallel"]
    arcs: Tuple[Arc, Arc]
    signs: List[SignConstraint] = Field(default_factory=list)

    @model_validator(mode="after")
    def _self_consistent(self) -> "R2Variant":
        for index, arc in enumerate(self.arcs, 1):
            _check_arc(arc, f"{self.id}[{index}]")
            if arc[0].role != arc[1].role:
                raise ValueError(f"Variant {self.id}: arc {index} mixes a Head and a Tail")
        tags = _check_chords(self.arcs, self.signs)
        if len(tags) != 2:
            raise ValueError(f"Variant {self.id}: move II involves exactly two chords")
        if not any(c.relation == "opposite" and set(c.chords) == set(tags) for c in self.signs):
            raise ValueError(f"Variant {self.id}: the two chords must carry opposite signs")
        parallel = [e.chord for e in self.arcs[0]] == [e.chord for e in self.arcs[1]]
        if parallel != (self.strands == "parallel"):
            raise ValueError(f"Variant {self.id}: arc order does not match strands '{self.strands}'")
        return self

    @property
    def tags(self) -> List[str]:
        return [endpoint.chord for endpoint in self.arcs[0]]

    @property
    def pattern(self) -> List[Arc]:
        return list(self.arcs)


class R3Arcs(BaseModel):
    top: Arc
    middle: Arc
    bottom: Arc

    def as_list(self) -> List[Arc]:
        return [self.top, self.middle, self.bottom]


class R3Variant(BaseModel):
    """
    Move III pattern over the top, middle and bottom strands.

    Applying the move swaps the two endpoints of every arc; ``post`` names
    the variant that matches the result.
    """
    id: str
    description: Optional[str] = None
    arcs: R3Arcs
    signs: List[SignConstraint] = Field(default_factory=list)
    post: str

    @model_validator(mode="after")
    def _self_consistent(self) -> "R3Variant":
        for name, arc in zip(("top", "middle", "bottom"), self.arcs.as_list()):
            _check_arc(arc, f"{self.id}.{name}")
        if any(e.role != Role.TAIL for e in self.arcs.top):
            raise ValueError(f"Variant {self.id}: the top arc must hold two Tails")
        if any(e.role != Role.HEAD for e in self.arcs.bottom):
            raise ValueError(f"Variant {self.id}: the bottom arc must hold two Heads")
        if {e.role for e in self.arcs.middle} != {Role.HEAD, Role.TAIL}:
            raise ValueError(f"Variant {self.id}: the middle arc must hold a Head and a Tail")
        tags = _check_chords(self.arcs.as_list(), self.signs)
        if len(tags) != 3:
            raise ValueError(f"Variant {self.id}: move III involves exactly three chords")
        for i, first in enumerate(tags):
            for second in tags[i + 1:]:
                shared = sum(
                    1 for arc in self.arcs.as_list()
                    if {first, second} <= {e.chord for e in arc}
                )
                if shared != 1:
                    raise ValueError(
                        f"Variant {self.id}: chords '{first}' and '{second}' must share exactly one arc"
                    )
        return self

    @property
    def pattern(self) -> List[Arc]:
        return self.arcs.as_list()

    def swapped_pattern(self) -> List[List[Tuple[Role, str]]]:
        return [[(e.role, e.chord) for e in reversed(arc)] for arc in self.pattern]


class VariantTable(BaseModel):
    """Catalog of legal move II and move III patterns."""
    r2_variants: List[R2Variant]
    r3_variants: List[R3Variant]

    _r2_index: Dict[str, R2Variant] = PrivateAttr(default_factory=dict)
    _r3_index: Dict[str, R3Variant] = PrivateAttr(default_factory=dict)

    @field_validator("r2_variants", "r3_variants")
    @classmethod
    def _unique_ids(cls, variants: list) -> list:
        ids = [variant.id for variant in variants]
        duplicates = sorted({vid for vid in ids if ids.count(vid) > 1})
        if duplicates:
            raise ValueError(f"Duplicate variant ids: {', '.join(duplicates)}")
        return variants

    @model_validator(mode="after")
    def _index_and_link(self) -> "VariantTable":
        self._r2_index = {variant.id: variant for variant in self.r2_variants}
        self._r3_index = {variant.id: variant for variant in self.r3_variants}
        for variant in self.r3_variants:
            post = self._r3_index.get(variant.post)
            if post is None:
                raise ValueError(f"Variant {variant.id}: post-state variant '{variant.post}' not in table")
            expected = variant.swapped_pattern()
            actual = [[(e.role, e.chord) for e in arc] for arc in post.pattern]
            if expected != actual:
                raise ValueError(
                    f"Variant {variant.id}: '{variant.post}' does not describe the swapped arcs"
                )
            if {(tuple(c.chords), c.relation) for c in variant.signs} != \
                    {(tuple(c.chords), c.relation) for c in post.signs}:
                raise ValueError(f"Variant {variant.id}: post-state '{variant.post}' changes sign rules")
        return self

    def r2(self, variant_id: str) -> Optional[R2Variant]:
        return self._r2_index.get(variant_id)

    def r3(self, variant_id: str) -> Optional[R3Variant]:
        return self._r3_index.get(variant_id)

    @classmethod
    def load(cls, path: Union[str, Path]) -> "VariantTable":
        """Load a table from a JSON or YAML file."""
        path = Path(path)
        if not path.exists():
            raise VariantTableError(f"Variant table not found: {path}")

        try:
            with open(path, 'r', encoding='utf-8') as f:
                if path.suffix.lower() in (".yaml", ".yml"):
                    data = yaml.safe_load(f)
                else:
                    data = json.load(f)
        except (json.JSONDecodeError, yaml.YAMLError) as e:
            raise VariantTableError(f"Cannot read variant table {path}: {e}") from e

        try:
            table = cls.model_validate(data)
        except ValidationError as e:
            raise VariantTableError(f"Invalid variant table {path}: {e}") from e

        logger.debug(
            "Loaded variant table %s (%d move II, %d move III variants)",
            path, len(table.r2_variants), len(table.r3_variants)
        )
        return table


@lru_cache(maxsize=1)
def default_table() -> VariantTable:
    """The table shipped with the package."""
    return VariantTable.load(DEFAULT_TABLE_PATH)


def bind(
    pattern: Sequence[Arc],
    arcs: Sequence[Sequence[Endpoint]]
) -> Optional[Dict[str, int]]:
    """
    Match actual arcs against a variant pattern.

    Returns the tag-to-chord binding, or None when roles differ or the tags
    cannot be bound one-to-one.
    """
    binding: Dict[str, int] = {}
    bound_chords: Dict[int, str] = {}
    for expected_arc, actual_arc in zip(pattern, arcs):
        for expected, actual in zip(expected_arc, actual_arc):
            if expected.role != actual.role:
                return None
            tag = bound_chords.get(actual.chord)
            if tag is None:
                if expected.chord in binding:
                    return None
                binding[expected.chord] = actual.chord
                bound_chords[actual.chord] = expected.chord
            elif tag != expected.chord:
                return None
    return binding


def signs_allowed(
    constraints: Sequence[SignConstraint],
    binding: Mapping[str, int],
    signs: Mapping[int, Sign]
) -> bool:
    return all(constraint.holds(binding, signs) for constraint in constraints)


def resolve_signs(
    constraints: Sequence[SignConstraint],
    tags: Sequence[str],
    first_sign: Sign
) -> Optional[Dict[str, Sign]]:
    """
    Assign signs to tags: the first tag gets ``first_sign`` and the rest follow
    from the constraints. Returns None when the constraints cannot be met.
    """
    assigned: Dict[str, Sign] = {tags[0]: first_sign}
    changed = True
    while changed:
        changed = False
        for constraint in constraints:
            if constraint.relation in ("+", "-"):
                tag = constraint.chords[0]
                if tag not in assigned:
                    assigned[tag] = Sign.from_symbol(constraint.relation)
                    changed = True
                continue
            first, second = constraint.chords
            for known, unknown in ((first, second), (second, first)):
                if known in assigned and unknown not in assigned:
                    value = assigned[known]
                    assigned[unknown] = value if constraint.relation == "equal" else value.opposite
                    changed = True
    if any(tag not in assigned for tag in tags):
        return None
    binding = {tag: index for index, tag in enumerate(tags)}
    by_index = {index: assigned[tag] for tag, index in binding.items()}
    if not signs_allowed(constraints, binding, by_index):
        return None
    return assigned
