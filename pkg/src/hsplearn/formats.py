"""Plain-text serialization for groups, subgroups, and instances.

Blank lines and ``#`` comments are ignored.  One item per section:

group section::

    abelian                      table n=<N>
    component p=<prime> n=<int>  <N rows of N space-separated indices>

subgroup section (abelian: one ``basis`` row per generator, components in
declaration order; table: an explicit element list)::

    hidden rank=<k1,...,km>      hidden elements=<i1,i2,...>
    basis <r1> ... <r_{n_i}>

An instance file is a group section, a subgroup section, and ``salt=<u64>``.
Instance files carry no family section; on load the family is inferred as
the rank-profile family of the hidden subgroup (abelian) or the singleton
family (table), which is what the learner's plan needs.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import DomainError
from .groups import AbelianGroup, TableGroup
from .oracle import HspInstance
from .subgroups import AbelianSubgroup, ExplicitFamily, RankFamily, TableSubgroup


def _clean_lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def format_group(group) -> str:
    if isinstance(group, AbelianGroup):
        lines = ["abelian"]
        lines += [f"component p={p} n={n}" for p, n in group.components]
        return "\n".join(lines) + "\n"
    if isinstance(group, TableGroup):
        lines = [f"table n={group.order}"]
        lines += [" ".join(str(int(v)) for v in row) for row in group.table]
        return "\n".join(lines) + "\n"
    raise DomainError(f"cannot format group of type {type(group).__name__}")


def _parse_group_at(lines: list[str], at: int):
    if at >= len(lines):
        raise DomainError("missing group section")
    head = lines[at]
    if head == "abelian":
        at += 1
        components = []
        while at < len(lines) and lines[at].startswith("component "):
            fields = dict(
                part.split("=", 1) for part in lines[at].split()[1:] if "=" in part
            )
            if set(fields) != {"p", "n"}:
                raise DomainError(f"malformed component line: {lines[at]!r}")
            components.append((int(fields["p"]), int(fields["n"])))
            at += 1
        if not components:
            raise DomainError("abelian group needs at least one component line")
        return AbelianGroup(components), at
    if head.startswith("table "):
        fields = dict(part.split("=", 1) for part in head.split()[1:] if "=" in part)
        if set(fields) != {"n"}:
            raise DomainError(f"malformed table header: {head!r}")
        n = int(fields["n"])
        rows = []
        for r in range(n):
            if at + 1 + r >= len(lines):
                raise DomainError(f"table needs {n} rows, found {r}")
            entries = lines[at + 1 + r].split()
            if len(entries) != n:
                raise DomainError(f"table row {r} has {len(entries)} entries, expected {n}")
            rows.append([int(v) for v in entries])
        return TableGroup(rows), at + 1 + n
    raise DomainError(f"unrecognized group header: {head!r}")


def parse_group(text: str):
    group, at = _parse_group_at(_clean_lines(text), 0)
    return group


def format_subgroup(subgroup) -> str:
    if isinstance(subgroup, AbelianSubgroup):
        lines = ["hidden rank=" + ",".join(str(k) for k in subgroup.ranks)]
        for basis in subgroup.bases:
            for col in basis.T:
                lines.append("basis " + " ".join(str(int(v)) for v in col))
        return "\n".join(lines) + "\n"
    if isinstance(subgroup, TableSubgroup):
        return "hidden elements=" + ",".join(str(e) for e in subgroup.elements()) + "\n"
    raise DomainError(f"cannot format subgroup of type {type(subgroup).__name__}")


def _parse_subgroup_at(lines: list[str], at: int, group):
    if at >= len(lines) or not lines[at].startswith("hidden "):
        raise DomainError("missing 'hidden' subgroup line")
    head = lines[at].split(None, 1)[1]
    if head.startswith("rank="):
        if not isinstance(group, AbelianGroup):
            raise DomainError("rank-form subgroups require an abelian group")
        ranks = [int(v) for v in head[len("rank="):].split(",")]
        if len(ranks) != len(group.components):
            raise DomainError(
                f"expected {len(group.components)} ranks, got {len(ranks)}"
            )
        at += 1
        bases = []
        for (p, n), k in zip(group.components, ranks):
            cols = []
            for _ in range(k):
                if at >= len(lines) or not lines[at].startswith("basis "):
                    raise DomainError("missing basis row for declared rank")
                vec = [int(v) for v in lines[at].split()[1:]]
                if len(vec) != n:
                    raise DomainError(
                        f"basis row has {len(vec)} residues, expected {n}"
                    )
                cols.append(vec)
                at += 1
            bases.append(np.asarray(cols, dtype=np.int64).reshape(k, n).T)
        subgroup = AbelianSubgroup(group, bases)
        if subgroup.ranks != tuple(ranks):
            raise DomainError(
                f"declared ranks {tuple(ranks)} but basis rows span {subgroup.ranks}"
            )
        return subgroup, at
    if head.startswith("elements="):
        if not isinstance(group, TableGroup):
            raise DomainError("element-form subgroups require a table group")
        elems = [int(v) for v in head[len("elements="):].split(",")]
        return TableSubgroup(group, elems), at + 1
    raise DomainError(f"unrecognized subgroup form: {lines[at]!r}")


def parse_subgroup(text: str, group):
    subgroup, _ = _parse_subgroup_at(_clean_lines(text), 0, group)
    return subgroup


def format_instance(instance: HspInstance) -> str:
    return (
        format_group(instance.group)
        + format_subgroup(instance.hidden)
        + f"salt={instance.salt}\n"
    )


def parse_instance(text: str) -> HspInstance:
    lines = _clean_lines(text)
    group, at = _parse_group_at(lines, 0)
    hidden, at = _parse_subgroup_at(lines, at, group)
    if at >= len(lines) or not lines[at].startswith("salt="):
        raise DomainError("missing salt line")
    salt = int(lines[at][len("salt="):])
    if isinstance(hidden, AbelianSubgroup):
        family = RankFamily(group, hidden.ranks)
    else:
        family = ExplicitFamily([hidden])
    return HspInstance(group, hidden, family, salt)


def save_instance(path, instance: HspInstance) -> None:
    Path(path).write_text(format_instance(instance), encoding="utf-8")


def load_instance(path) -> HspInstance:
    return parse_instance(Path(path).read_text(encoding="utf-8"))
