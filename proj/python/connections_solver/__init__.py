"""Engine for playing NYT-style Connections puzzles through prompt pipelines.

The heavy lifting lives in the compiled `_core` module; this package adds
path helpers for the bundled prompt catalog and puzzle fixtures.
"""

import os

from ._core import (  # noqa: F401
    ConnectionsError,
    FinalGuessList,
    GameState,
    PromptCatalog,
    Puzzle,
    SolutionGroup,
    canonical_word,
    check_guess,
    compute_metrics,
    difficulty_bucket,
    format_bad_guesses,
    inject_moles,
    load_archive,
    mole_reject,
    parse_guess,
    run_experiment,
    run_game,
)

_DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


def _data_path(*parts: str) -> str:
    """Installed package data if present, else the repository layout."""
    packaged = os.path.join(_DATA_DIR, *parts)
    if os.path.exists(packaged):
        return packaged
    env_root = os.environ.get("CONNECTIONS_ROOT")
    if env_root:
        candidate = os.path.join(env_root, *parts)
        if os.path.exists(candidate):
            return candidate
    return packaged


def default_prompts_dir() -> str:
    return _data_path("prompts")


def default_fixture_archive() -> str:
    return _data_path("fixtures", "archive.json")


def load_default_catalog() -> PromptCatalog:
    return PromptCatalog.load(default_prompts_dir())
