"""
Check reports: a list of named pass/fail records rendered as a table, a
tree of sections, or JSON lines.
"""
from __future__ import annotations

import json
import logging
import os

from dataclasses import asdict, dataclass, field
from typing import Any, Optional

from tabulate import tabulate
from treelib import Node, Tree

from .color import Color, paint, status


@dataclass
class CheckRecord:
    name: str
    passed: bool
    detail: str = ""
    anchor: str = ""
    section: str = ""
    witness: Optional[str] = None


@dataclass
class Report:
    command: str
    records: list[CheckRecord] = field(default_factory=list)
    facts: dict[str, Any] = field(default_factory=dict)

    def add(
        self,
        name: str,
        passed: bool,
        detail: Any = "",
        anchor: str = "",
        section: str = "",
        witness: Optional[str] = None,
    ) -> CheckRecord:
        record = CheckRecord(name, bool(passed), str(detail), anchor, section, witness)
        self.records.append(record)
        if not record.passed:
            logging.debug(f"check failed: {name} ({detail})")
        return record

    def extend(self, other: Report, section: str = "") -> None:
        for record in other.records:
            if section and not record.section:
                record.section = section
            self.records.append(record)
        self.facts.update(other.facts)

    @property
    def passed(self) -> bool:
        return all(record.passed for record in self.records)

    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def machine_lines(self) -> list[str]:
        lines = [json.dumps(asdict(record), sort_keys=True) for record in self.records]
        summary = {
            "command": self.command,
            "facts": self.facts,
            "checks": len(self.records),
            "failed": sum(1 for record in self.records if not record.passed),
            "status": "pass" if self.passed else "fail",
        }
        lines.append(json.dumps(summary, sort_keys=True, default=str))
        return lines

    def to_machine(self) -> str:
        return "\n".join(self.machine_lines()) + "\n"

    def to_table(self) -> str:
        rows = [
            [record.section, record.name, str(status(record.passed)), record.detail, record.anchor]
            for record in self.records
        ]
        table = tabulate(rows, headers=["Section", "Check", "Status", "Detail", "Anchor"])
        overall = paint("all checks pass", Color.GREEN) if self.passed else paint("some checks failed", Color.RED)
        facts = "\n".join(f"{key}: {value}" for key, value in self.facts.items())
        return "\n".join(part for part in (table, facts, str(overall)) if part)

    def show(self, fmt: str = "human") -> None:
        if fmt == "machine":
            print(self.to_machine(), end="")
        else:
            print(self.to_table())

    def save(self, directory: str) -> str:
        """
        Writes the machine form to ``<directory>/<command>.jsonl`` and returns the path.
        """
        file_name = os.path.join(directory, f"{self.command.replace(' ', '-')}.jsonl")
        with open(file_name, "w+") as f:
            f.write(self.to_machine())
        logging.info(f"report saved to {file_name}")
        return file_name


class CheckNode(Node):
    def __init__(self, record: CheckRecord, occurrence: int = 1) -> None:
        super().__init__()
        self.identifier = f"{record.section}/{record.name}"
        if occurrence > 1:
            self.identifier += f"#{occurrence}"
        self.tag = f"{record.name} [{'pass' if record.passed else 'FAIL'}]"
        self.record = record


class ReportTree(Tree):
    """
    Sections of a report as a tree: command at the root, sections below, checks as leaves.
    """

    def __init__(self, report: Report) -> None:
        super().__init__()
        self._report = report

    def load(self) -> None:
        root = self._report.command
        self.create_node(f"{root} [{'pass' if self._report.passed else 'FAIL'}]", identifier=root)
        for record in self._report.records:
            section = record.section or "general"
            section_id = f"{root}/{section}"
            if not self.contains(section_id):
                self.create_node(section, identifier=section_id, parent=root)
            occurrence = 1
            while self.contains(CheckNode(record, occurrence).identifier):
                occurrence += 1
            if occurrence > 1:
                logging.debug(f"repeated check name {section}/{record.name}")
            self.add_node(CheckNode(record, occurrence), parent=section_id)

    def render(self) -> str:
        return str(self)
