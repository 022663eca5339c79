"""ThreadManager utilities for pooled background work and diagnostics."""

from __future__ import annotations

import logging
import time
import traceback
from collections import deque
from concurrent.futures import Future, ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Deque, Dict, Iterable, List, Optional, TypeVar

T = TypeVar("T")
R = TypeVar("R")


class TaskStatus(Enum):
    QUEUED = "queued"
    RUNNING = "running"
    FINISHED = "finished"
    FAILED = "failed"
    CANCELLED = "cancelled"


@dataclass
class TaskRecord:
    name: str
    description: str
    status: TaskStatus = TaskStatus.QUEUED
    tags: List[str] = field(default_factory=list)
    started_at: Optional[float] = None
    finished_at: Optional[float] = None
    last_duration_s: Optional[float] = None
    total_runtime_s: float = 0.0
    start_count: int = 0
    item_count: int = 0
    last_error: Optional[str] = None
    last_traceback: Optional[str] = None


class ThreadManager:
    """Pooled task runner with per-task diagnostics and clean shutdown.

    ``max_workers`` is a degree-of-parallelism hint; with a single worker every
    task runs inline on the calling thread.
    """

    def __init__(self, max_workers: int = 1) -> None:
        self.logger = logging.getLogger("ThreadManager")
        self._tasks: Dict[str, TaskRecord] = {}
        self._history: Deque[str] = deque(maxlen=200)
        self._shutdown_started = False
        self.max_workers = int(max(1, max_workers))
        self.executor: Optional[ThreadPoolExecutor] = None
        if self.max_workers > 1:
            self.executor = ThreadPoolExecutor(max_workers=self.max_workers, thread_name_prefix="AnchorTopicsPool")

    def __enter__(self) -> "ThreadManager":
        return self

    def __exit__(self, *exc_info) -> None:
        self.shutdown()

    def submit_task(self, func: Callable[..., R], *args, **kwargs) -> Future:
        """Run punctual work on the shared executor (or inline when single-threaded).

        Raises:
            RuntimeError: If shutdown has started.
        """
        if self._shutdown_started:
            raise RuntimeError("ThreadManager is shutting down; pooled tasks are rejected")
        if self.executor is None:
            future: Future = Future()
            try:
                future.set_result(func(*args, **kwargs))
            except Exception as exc:
                future.set_exception(exc)
            return future
        return self.executor.submit(func, *args, **kwargs)

    def map_ordered(self, task_name: str, func: Callable[[T], R], items: Iterable[T]) -> List[R]:
        """Apply ``func`` to every item and return results in submission order.

        The task is recorded under ``task_name`` in the diagnostics. The first
        failing item re-raises its exception after the record is marked FAILED.
        """
        item_list = list(items)
        record = self._ensure_task(task_name, description=getattr(func, "__name__", str(func)))
        record.status = TaskStatus.RUNNING
        record.started_at = time.time()
        record.finished_at = None
        record.start_count += 1
        record.item_count = len(item_list)
        record.last_error = None
        record.last_traceback = None
        try:
            futures = [self.submit_task(func, item) for item in item_list]
            results = [future.result() for future in futures]
        except Exception as exc:
            self._record_error(task_name, str(exc), traceback.format_exc())
            self._finish(task_name)
            raise
        self._finish(task_name)
        return results

    def _finish(self, task_name: str) -> None:
        record = self._tasks.get(task_name)
        if record is None:
            return
        record.finished_at = time.time()
        if record.started_at:
            record.last_duration_s = max(0.0, record.finished_at - record.started_at)
            record.total_runtime_s += record.last_duration_s or 0.0
        if record.status == TaskStatus.RUNNING:
            record.status = TaskStatus.FINISHED
        self._retain_history(task_name)
        self.logger.debug("Task '%s' %s in %.3fs", task_name, record.status.value, record.last_duration_s or 0.0)

    def shutdown(self, wait: bool = True) -> None:
        """Stop accepting work and release the executor."""
        if self._shutdown_started:
            return
        self._shutdown_started = True
        for record in self._tasks.values():
            if record.status in (TaskStatus.QUEUED, TaskStatus.RUNNING):
                record.status = TaskStatus.CANCELLED
        if self.executor is not None:
            try:
                self.executor.shutdown(wait=wait, cancel_futures=True)
            except Exception:
                self.logger.exception("Executor shutdown failed")

    def _ensure_task(self, task_name: str, description: str) -> TaskRecord:
        record = self._tasks.get(task_name)
        if record is None:
            record = TaskRecord(name=task_name, description=description)
            self._tasks[task_name] = record
        else:
            record.description = description
        return record

    def _record_error(self, task_name: str, msg: str, tb: Optional[str] = None) -> None:
        record = self._tasks.get(task_name)
        if record:
            record.last_error = msg
            record.last_traceback = tb
            record.status = TaskStatus.FAILED
        self.logger.error("[%s] Task error: %s", task_name, msg)

    def _retain_history(self, task_name: str) -> None:
        if task_name in self._history:
            return
        oldest = self._history[0] if len(self._history) == self._history.maxlen else None
        self._history.append(task_name)
        if oldest and oldest in self._tasks:
            self._tasks.pop(oldest, None)

    def get_diagnostics(self) -> Dict[str, Any]:
        """Return task diagnostics keyed by task name."""
        out: Dict[str, Any] = {}
        for name, rec in self._tasks.items():
            out[name] = {
                "status": rec.status,
                "description": rec.description,
                "tags": list(rec.tags),
                "start_count": rec.start_count,
                "item_count": rec.item_count,
                "last_duration_s": rec.last_duration_s,
                "total_runtime_s": rec.total_runtime_s,
                "started_at": rec.started_at,
                "finished_at": rec.finished_at,
                "last_error": rec.last_error,
                "last_traceback": rec.last_traceback,
            }
        return out

    def diagnostics_summary(self) -> str:
        """Return a textual summary of task diagnostics."""
        lines = []
        for name, rec in self._tasks.items():
            last = f"{rec.last_duration_s:.3f}s" if isinstance(rec.last_duration_s, (int, float)) else "-"
            lines.append(
                f"- {name} [{rec.status.value}] starts={rec.start_count} items={rec.item_count} "
                f"last={last} total={rec.total_runtime_s:.3f}s last_error={rec.last_error or '-'}"
            )
        if not lines:
            return "No task statistics available."
        return "Task diagnostics:\n" + "\n".join(lines)
