"""JSON interchange for families, designs and query results."""

from __future__ import annotations

import json
from pathlib import Path

from .designs import Design
from .families import BlockFamily
from .groups import group_from_description

FORMAT_VERSION = 1


class FormatError(ValueError):
    pass


def family_to_json(family: BlockFamily) -> dict:
    return {
        "type": "family",
        "version": FORMAT_VERSION,
        "group": family.group.describe(),
        "label": dict(family.label),
        "v": family.v,
        "k": family.k,
        "blocks": [list(b) for b in family.blocks],
    }


def family_from_json(data: dict) -> BlockFamily:
    if data.get("type") != "family":
        raise FormatError("not a family document")
    group = group_from_description(data["group"])
    if list(group.ctx.modulus) != list(data["group"]["modulus"]):
        raise FormatError("modulus does not match the deterministic choice for these parameters")
    blocks = tuple(tuple(sorted(int(x) for x in b)) for b in data["blocks"])
    for blk in blocks:
        if any(not 0 <= x < group.order for x in blk):
            raise FormatError("element index out of range")
    return BlockFamily(group, blocks, dict(data.get("label", {})))


def design_to_json(design: Design, lam: int | None = None) -> dict:
    out = {
        "type": "design",
        "version": FORMAT_VERSION,
        "v": design.v,
        "k": design.k,
        "lambda": lam,
        "origin": design.origin,
        "blocks": [list(b) for b in design.blocks],
    }
    return out


def design_from_json(data: dict) -> Design:
    if data.get("type") != "design":
        raise FormatError("not a design document")
    group = None
    desc = data.get("origin", {}).get("group")
    if desc is not None:
        group = group_from_description(desc)
        if group.order != data["v"]:
            raise FormatError("group order does not match v")
    try:
        blocks = tuple(tuple(sorted(int(x) for x in b)) for b in data["blocks"])
        return Design(int(data["v"]), blocks, dict(data.get("origin", {})), group)
    except (TypeError, ValueError) as exc:
        raise FormatError(str(exc)) from exc


def dumps(data: dict) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":")) + "\n"


def read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc


def load_schema(name: str) -> dict:
    """The published JSON schema for a subcommand output (family, design, verify, ...)."""
    from importlib.resources import files

    return json.loads(files("ddfdesign").joinpath("schemas", f"{name}.schema.json").read_text())
