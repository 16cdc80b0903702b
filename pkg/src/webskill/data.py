"""Paths to the site, task, and replay fixtures bundled with the package."""

from __future__ import annotations

from importlib.resources import files

BUNDLED_SITES = ("mini_shop", "mini_admin", "mini_forum", "mini_gitlab", "mini_map")


def bundled_site_path(site_id: str) -> str:
    """Path to the bundled site definition for `site_id`."""
    return _resource("sites", f"{site_id}.json")


def bundled_tasks_path(site_id: str) -> str:
    """Path to the bundled task suite for `site_id`."""
    return _resource("sites", f"{site_id}_tasks.json")


def bundled_replay_path(name: str) -> str:
    """Path to a bundled scripted-backend transcript."""
    return _resource("replays", f"{name}.jsonl")


def _resource(folder: str, filename: str) -> str:
    path = files("webskill").joinpath(folder, filename)
    if not path.is_file():
        raise FileNotFoundError(f"no bundled resource {folder}/{filename}")
    return str(path)
