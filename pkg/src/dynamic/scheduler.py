"""
Worst-case rebuilding with two structure copies.

Updates are grouped into intervals of 4*Delta, Delta = ceil(T_div / 4). Within
an interval the serving copy D1 absorbs every update at once, while the
other copy works through three phases:

  j in [1, 2*Delta]          tear down the structure retired at the last swap
  end of j = 2*Delta         snapshot the graph
  j in (2*Delta, 3*Delta]    build the new copy D2 from the snapshot in slices
  j in (3*Delta, 4*Delta]    replay two logged updates per step into D2

At j = 4*Delta the copies swap. Every call is held to a fixed work budget: the
build is a resumable job whose slices are sized from the measured cost of the
last full build, and background work never runs past the budget. If the
background copy is still behind at 4*Delta (the graph grew faster than the
slack allows) the swap waits until it has caught up, still within budget.
"""

import logging
import math
from typing import Callable, Iterator, List, Optional, Tuple

from src.dynamic.base_structure import DynamicStructure, UpdateAction, resolve_action
from src.errors import InvariantViolation
from src.graph.weighted_graph import EdgeAction, WeightedGraph

logger = logging.getLogger(__name__)

StructureFactory = Callable[..., DynamicStructure]

# One graph mutation plus at most three region sparsifier computations
UPDATE_WORK = 1 + 3
REPLAYS_PER_STEP = 2


class RebuildScheduler:
    """Serves queries from D1 while D2 is rebuilt in bounded work slices."""

    def __init__(self, factory: StructureFactory, graph: WeightedGraph):
        """
        Initialize the scheduler.

        Args:
            factory: Callable ``factory(graph, build=...)`` returning a structure
            graph: Initial graph
        """
        self.factory = factory
        self.serving: DynamicStructure = factory(graph, build=True)
        self.serving.auto_rebuild = False

        self.rebuild_period = self.serving.rebuild_period
        self.delta = max(1, math.ceil(self.rebuild_period / 4))
        self.interval_length = 4 * self.delta
        self.position = 0
        self.log: List[EdgeAction] = []
        self.replayed = 0
        self.swaps = 0
        self.delayed_swaps = 0

        self.building: Optional[DynamicStructure] = None
        self._build_job: Optional[Iterator[int]] = None
        self._teardown_job: Optional[Iterator[int]] = None
        self._teardown_slice = 1

        # Each update adds at most a constant number of pieces, so the next
        # build costs at most the last one plus a term linear in the interval.
        self.build_cap = 2 * self.serving.stats.last_build_work + 4 * self.delta
        self._build_slice = math.ceil((self.build_cap + 1) / self.delta)
        teardown_cap = self.build_cap + 1
        self.budget = UPDATE_WORK + max(
            math.ceil(teardown_cap / (2 * self.delta)),
            self._build_slice,
            REPLAYS_PER_STEP * UPDATE_WORK,
        )
        self.work_log: List[int] = []
        self.max_work = 0
        logger.info(
            "Rebuild scheduler: T_div=%d, Delta=%d, build slice %d, per-call work budget %d",
            self.rebuild_period, self.delta, self._build_slice, self.budget,
        )

    @property
    def phase(self) -> str:
        if self.position <= 2 * self.delta:
            return "teardown"
        if self.position <= 3 * self.delta:
            return "build"
        return "catch-up"

    @property
    def build_complete(self) -> bool:
        return self.building is not None and self._build_job is None

    def _run(self, job: Iterator[int], limit: int) -> Tuple[int, bool]:
        """Advance a job by at most ``limit`` units; report whether it finished."""
        done = 0
        while done < limit:
            try:
                done += next(job)
            except StopIteration:
                return done, True
        return done, False

    def _update_work(self, structure: DynamicStructure, action: EdgeAction) -> int:
        structure.apply_update(action)
        return 1 + structure.stats.last_update_builds

    def _start_build(self) -> None:
        snapshot = self.serving.graph.copy()
        self.building = self.factory(snapshot, build=False)
        self.building.auto_rebuild = False
        self._build_job = self.building.iter_build()
        self.replayed = len(self.log)

    def apply(self, action: UpdateAction) -> int:
        """
        Apply one update to D1 and run one budgeted slice of background work.

        Args:
            action: InsertEdge, DeleteEdge or DeleteBetween

        Returns:
            Work units executed by this call

        Raises:
            InvariantViolation: If the serving update alone exceeds the budget
        """
        action = resolve_action(self.serving.graph, action)
        work = self._update_work(self.serving, action)
        self.log.append(action)
        self.position += 1
        j, delta = self.position, self.delta

        if self._teardown_job is not None:
            done, finished = self._run(self._teardown_job, min(self._teardown_slice, self.budget - work))
            work += done
            if finished:
                self._teardown_job = None

        if j == 2 * delta:
            self._start_build()
        elif self._build_job is not None:
            done, finished = self._run(self._build_job, min(self._build_slice, self.budget - work))
            work += done
            if finished or self.building.stats.rebuilds > 0:
                self._build_job = None

        if self.build_complete and j > 3 * delta:
            for _ in range(REPLAYS_PER_STEP):
                if self.replayed >= len(self.log) or self.budget - work < UPDATE_WORK:
                    break
                work += self._update_work(self.building, self.log[self.replayed])
                self.replayed += 1

        if j >= self.interval_length:
            if self.build_complete and self.replayed == len(self.log):
                self._swap()
            elif j == self.interval_length:
                self.delayed_swaps += 1
                logger.warning(
                    "Scheduler swap delayed: background copy has %d of %d updates",
                    self.replayed, len(self.log),
                )

        if work > self.budget:
            raise InvariantViolation(f"Scheduler step {j} used {work} work units (budget {self.budget})")
        self.work_log.append(work)
        self.max_work = max(self.max_work, work)
        return work

    def _swap(self) -> None:
        retired = self.serving
        self.serving = self.building
        self.building = None
        self._teardown_job = retired.iter_teardown()
        self._teardown_slice = max(1, math.ceil((len(retired.sparsifiers) + 1) / (2 * self.delta)))
        self.log = []
        self.replayed = 0
        self.position = 0
        self.swaps += 1
        logger.info("Scheduler swap %d: serving a structure with %d regions", self.swaps, self.serving.division.region_count)

    def query(self, s: int, t: int) -> float:
        return self.serving.query(s, t)


def wc_new(factory: StructureFactory, graph: WeightedGraph) -> RebuildScheduler:
    return RebuildScheduler(factory, graph)


def wc_apply(scheduler: RebuildScheduler, action: UpdateAction) -> None:
    scheduler.apply(action)


def wc_query(scheduler: RebuildScheduler, s: int, t: int) -> float:
    return scheduler.query(s, t)
