from __future__ import annotations

from collections.abc import Callable, Sequence
from concurrent.futures import ProcessPoolExecutor, ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from enum import Enum
from functools import partial
from typing import Any, Generic, TypeVar

T = TypeVar("T")
R = TypeVar("R")

# Worker state for process-based parallelism (initialized per worker process)
_worker_state: dict[str, Any] = {}


def _init_worker(func: Callable[[Any], Any]) -> None:
    """Initialize a worker process with the task function."""
    _worker_state["func"] = func


def _call_worker(item: Any) -> TaskResult[Any]:
    """Run one task with the worker's function."""
    func = _worker_state.get("func")
    if func is None:
        return TaskResult(value=None, success=False, error="Worker function not initialized")
    return _call(func, item)


def _call(func: Callable[[T], R], item: T) -> TaskResult[R]:
    try:
        return TaskResult(value=func(item), success=True)
    except Exception as e:
        return TaskResult(value=None, success=False, error=f"{type(e).__name__}: {e}")


class ExecutorType(str, Enum):
    """Type of executor for parallel work."""

    THREAD = "thread"
    PROCESS = "process"


@dataclass
class TaskResult(Generic[R]):
    """Result of one task; failures carry the error instead of a value."""

    value: R | None
    success: bool
    error: str | None = None


def run_ordered(
    func: Callable[[T], R],
    items: Sequence[T],
    max_workers: int = 1,
    executor: ExecutorType = ExecutorType.THREAD,
) -> list[TaskResult[R]]:
    """Apply ``func`` to every item, optionally in parallel.

    Results are stored by item index, so the output order matches
    ``items`` whatever the completion order. Exceptions become failed
    results instead of propagating.

    Args:
        func: Task function. Must be picklable for the process executor
            (a module-level function or a ``functools.partial`` of one).
        items: Task inputs.
        max_workers: Number of parallel workers. 1 means sequential.
        executor: Type of executor to use for parallel execution.

    Returns:
        List of TaskResult in item order.
    """
    items_list = list(items)

    # Sequential execution
    if max_workers <= 1 or len(items_list) <= 1:
        return [_call(func, item) for item in items_list]

    results: list[TaskResult[R] | None] = [None] * len(items_list)

    if executor == ExecutorType.PROCESS:
        # Process executor: hand the function to each worker once
        initializer = partial(_init_worker, func)
        with ProcessPoolExecutor(max_workers=max_workers, initializer=initializer) as pool:
            future_to_idx = {
                pool.submit(_call_worker, item): i for i, item in enumerate(items_list)
            }
            for future in as_completed(future_to_idx):
                idx = future_to_idx[future]
                try:
                    results[idx] = future.result()
                except Exception as e:
                    results[idx] = TaskResult(value=None, success=False, error=str(e))
    else:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            future_to_idx = {
                pool.submit(_call, func, item): i for i, item in enumerate(items_list)
            }
            for future in as_completed(future_to_idx):
                idx = future_to_idx[future]
                results[idx] = future.result()

    return results  # type: ignore[return-value]
