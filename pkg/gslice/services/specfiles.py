# gslice/services/specfiles.py
"""Text formats for actions and slices.

Action file, one declaration per line (``#`` comments)::

    name: binary-quadratics
    source: A, B, C
    group: a, b, c, d
    det: a*d - b*c
    character: 0
    A = A*a^2 + B*a*c + C*c^2 / det^1
    ...

Slice file, sections separated by `` / `` or new lines::

    vanish: A1, C2 / avoid: {B1,C1}, {A2,B2} / components: [b; c], [c; A2*b+B2*d @ b]
"""
import logging
import re
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Tuple

from pydantic import ValidationError

from gslice.core.errors import SpecFileError
from gslice.ring.coeffs import CoeffRing
from gslice.ring.poly import PolyRing
from gslice.schemas.slice import SliceSpec
from gslice.services.action import ActionMap

logger = logging.getLogger(__name__)

IMAGE_LINE = re.compile(r"^(?P<name>[A-Za-z][A-Za-z0-9]*)\s*=\s*(?P<body>.+?)(?P<det>/\s*det(?:\^(?P<power>\d+))?)?\s*$")
SLICE_KEYS = ("vanish", "avoid", "components", "labels", "codimension")


def _names(text: str) -> List[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def _read(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise SpecFileError(f"cannot read {path}: {e.strerror}")


def parse_action_text(text: str, coeff: CoeffRing) -> ActionMap:
    header: Dict[str, str] = {}
    images: Dict[str, Tuple[str, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, colon, value = line.partition(":")
        if colon and key.strip() in ("name", "source", "group", "det", "character"):
            header[key.strip()] = value.strip()
            continue
        match = IMAGE_LINE.match(line)
        if not match:
            raise SpecFileError(f"line {lineno}: expected 'key: value' or 'var = image [/ det^k]'")
        name = match.group("name")
        if name in images:
            raise SpecFileError(f"line {lineno}: second image for {name}")
        power = match.group("power")
        has_det = match.group("det") is not None
        images[name] = (match.group("body"), int(power) if power else (1 if has_det else 0))
    for key in ("source", "group", "det"):
        if key not in header:
            raise SpecFileError(f"action file has no '{key}:' line")
    source = PolyRing(coeff, tuple(_names(header["source"])))
    group = PolyRing(coeff, tuple(_names(header["group"])))
    missing = [v for v in source.variables if v not in images]
    if missing:
        raise SpecFileError(f"no image given for {', '.join(missing)}")
    try:
        character = Fraction(header.get("character", "0"))
    except (ValueError, ZeroDivisionError):
        raise SpecFileError(f"character must be a rational number, got {header['character']!r}")
    return ActionMap.build(source, group, images, header["det"], character=character, label=header.get("name", ""))


def load_action(path, coeff: CoeffRing) -> ActionMap:
    action = parse_action_text(_read(path), coeff)
    logger.info(f"loaded action {action.label or path} with {action.source.nvars} source variables")
    return action


def _sections(text: str) -> Dict[str, str]:
    sections: Dict[str, str] = {}
    key = None
    for chunk in re.split(r"\s/\s|\n", text):
        chunk = chunk.split("#", 1)[0].strip()
        if not chunk:
            continue
        head, colon, value = chunk.partition(":")
        if colon and head.strip() in SLICE_KEYS:
            key = head.strip()
            if key in sections:
                raise SpecFileError(f"section '{key}' appears twice")
            sections[key] = value.strip()
        elif key is not None:
            sections[key] += " " + chunk
        else:
            raise SpecFileError(f"text outside a section: {chunk!r}")
    return sections


def parse_slice_text(text: str) -> SliceSpec:
    sections = _sections(text)
    fields = {
        "vanish": _names(sections.get("vanish", "")),
        "avoid": [_names(group) for group in re.findall(r"\{([^}]*)\}", sections.get("avoid", ""))],
        "components": [[part.strip() for part in group.split(";") if part.strip()]
                       for group in re.findall(r"\[([^\]]*)\]", sections.get("components", ""))],
        "labels": _names(sections.get("labels", "")),
    }
    if "codimension" in sections:
        fields["codimension"] = sections["codimension"]
    try:
        return SliceSpec(**fields)
    except ValidationError as e:
        raise SpecFileError(f"invalid slice: {e.errors()[0]['msg']}")


def load_slice(path) -> SliceSpec:
    return parse_slice_text(_read(path))
