"""Skill-usage analytics over finished runs."""

from __future__ import annotations

from typing import Iterable


def skill_stats(rows: Iterable) -> dict:
    """Count induction attempts, successes, and reuse over task rows.

    ``attempted``/``successful`` count tasks whose episode triggered an
    induction attempt or yielded a placed skill; ``reuse`` counts tasks
    whose episode called at least one skill; ``total`` is all tasks.
    """
    rows = list(rows)
    return {
        "attempted": sum(1 for r in rows if r.induction_attempted),
        "successful": sum(1 for r in rows if r.induction_succeeded),
        "reuse": sum(1 for r in rows if r.skills_reused >= 1),
        "total": len(rows),
    }
