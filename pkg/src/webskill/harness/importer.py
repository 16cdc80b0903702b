"""Cross-site library import and update shadowing."""

from __future__ import annotations

from pathlib import Path
from typing import Union

from ..agent.library import SkillLibrary, load_library


def import_library(path: Union[str, Path], namespace: str) -> SkillLibrary:
    """Load a saved library for reuse under a new site namespace.

    Skills keep their origin namespace and verified status; the commit
    sequence carries over so later commits order after imported skills.
    """
    imported = load_library(path)
    return SkillLibrary(
        namespace=namespace,
        skills=dict(imported.skills),
        imported_from=str(path),
        deprecated=list(imported.deprecated),
        commit_seq=imported.commit_seq,
    )


def updatable_names(library: SkillLibrary) -> frozenset:
    """Names an update run may shadow: skills induced elsewhere.

    Skills from the current namespace are never shadowable, so one run
    can never replace a skill it committed itself.
    """
    return frozenset(
        name for name, skill in library.skills.items()
        if skill.namespace != library.namespace
    )
