"""Operation counters backing the empirical running-time checks."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class WorkCounters:
    """Monotone work tallies for one tree / one accounting bucket."""

    edge_scans: int = 0
    level_increases: int = 0
    tree_edge_removals: int = 0
    nodes_pruned: int = 0

    def total(self) -> int:
        return (self.edge_scans + self.level_increases
                + self.tree_edge_removals + self.nodes_pruned)

    def snapshot(self) -> "WorkCounters":
        return WorkCounters(self.edge_scans, self.level_increases,
                            self.tree_edge_removals, self.nodes_pruned)


@dataclass
class LevelCounters:
    """Per-hierarchy-level accounting: persistent trees, work done inside
    the splitter, and cascade separators are tracked in separate buckets."""

    ges: WorkCounters = field(default_factory=WorkCounters)
    split: WorkCounters = field(default_factory=WorkCounters)
    separator: WorkCounters = field(default_factory=WorkCounters)
    ges_reinits: int = 0

    def work_total(self) -> int:
        return (self.ges.total() + self.split.total()
                + self.separator.total() + self.ges_reinits)
