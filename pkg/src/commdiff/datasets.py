"""Published statistics for the benchmark networks, used to flag mismatches.

Several published average degrees disagree with ``2m/n`` for the listed node
and edge counts (Strike: 2*34/24 = 2.83, listed 3.16). The computed value is
always reported; :func:`check_stats` only flags the disagreement.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import GraphStats


@dataclass(frozen=True)
class ReferenceStats:
    nodes: int
    edges: int
    avg_degree: float


REFERENCE_STATS = {
    "riskmap": ReferenceStats(42, 83, 3.95),
    "football": ReferenceStats(115, 613, 10.66),
    "polblogs": ReferenceStats(1222, 16718, 27.31),
    "jazz": ReferenceStats(198, 2742, 27.70),
    "dolphin": ReferenceStats(62, 159, 5.12),
    "polbooks": ReferenceStats(105, 441, 8.4),
    "strike": ReferenceStats(24, 34, 3.16),
    "sawmill": ReferenceStats(36, 37, 3.44),
}


def check_stats(label: str, stats: GraphStats) -> list[str]:
    """Human-readable mismatches between ``stats`` and the reference for ``label``.

    Unknown labels yield no findings. Average degree is compared at the two
    decimals it is published with.
    """
    ref = REFERENCE_STATS.get(label.lower())
    if ref is None:
        return []
    findings = []
    if stats.nodes != ref.nodes:
        findings.append(f"{label}: nodes {stats.nodes} != published {ref.nodes}")
    if stats.edges != ref.edges:
        findings.append(f"{label}: edges {stats.edges} != published {ref.edges}")
    if abs(round(stats.avg_degree, 2) - ref.avg_degree) > 0.005:
        findings.append(f"{label}: avg degree {stats.avg_degree:.2f} != published {ref.avg_degree:.2f}")
    return findings
