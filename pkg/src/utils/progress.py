"""Progress indicators for sweeps and long exact diagonalizations."""

from contextlib import contextmanager
from typing import Iterator

from rich.progress import (
    BarColumn,
    MofNCompleteColumn,
    Progress,
    SpinnerColumn,
    TextColumn,
    TimeElapsedColumn,
    TimeRemainingColumn,
)


@contextmanager
def create_progress(disable: bool = False) -> Iterator[Progress]:
    """Progress bar counting junction counts as they finish.

    Args:
        disable: Suppress all rendering (library and test use)

    Yields:
        Progress instance; one task per sweep
    """
    with Progress(
        SpinnerColumn(),
        TextColumn("[progress.description]{task.description}"),
        BarColumn(),
        MofNCompleteColumn(),
        TimeRemainingColumn(),
        transient=True,
        disable=disable,
    ) as progress:
        yield progress


def create_spinner_progress(disable: bool = False) -> Progress:
    """Spinner with elapsed time for a solve of unknown length."""
    return Progress(
        SpinnerColumn(),
        TextColumn("[progress.description]{task.description}"),
        TimeElapsedColumn(),
        transient=True,
        disable=disable,
    )
