"""The sampler's partial view of the world, built from monitor reports.

Only what reports reveal is known: a node is observed once any monitor
names it as a neighbor, an edge is known only when one of its endpoints
has been monitored, and a color is known only for monitored nodes. The
state also keeps every recorded claim and a 2x2x2 table of verified
claims (speaker color x said color x subject's true color), filled in
whenever a claim's subject later gets monitored. From this it derives,
for any candidate node, the nine-entry feature vector the learning
strategy consumes and the trust-weighted probability that the candidate
is red.

Per-candidate counts are maintained incrementally during ingest so that
scoring every candidate at every step stays cheap; the test suite checks
them against a from-scratch recomputation of the report log.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .graph import Color
from .oracle import MonitorReport

FEATURE_NAMES = (
    "red_neighbors",
    "blue_neighbors",
    "red_triangles",
    "red_score",
    "red_say_red",
    "red_say_blue",
    "blue_say_red",
    "blue_say_blue",
    "inferred_red",
)

# Index layout of the per-node statement counters.
_RSR, _RSB, _BSR, _BSB = 0, 1, 2, 3


@dataclass(frozen=True)
class FeatureVector:
    """Per-candidate classification features.

    The first eight are non-negative counts over the candidate's
    monitored neighbors and their claims about it; `inferred_red` is the
    trust-weighted mean probability in [0, 1].
    """

    red_neighbors: int
    blue_neighbors: int
    red_triangles: int
    red_score: int
    red_say_red: int
    red_say_blue: int
    blue_say_red: int
    blue_say_blue: int
    inferred_red: float

    def as_tuple(self) -> tuple[float, ...]:
        return (
            float(self.red_neighbors),
            float(self.blue_neighbors),
            float(self.red_triangles),
            float(self.red_score),
            float(self.red_say_red),
            float(self.red_say_blue),
            float(self.blue_say_red),
            float(self.blue_say_blue),
            float(self.inferred_red),
        )


class ObserverState:
    """Mutable crawl knowledge for one run, keyed by dense node ids.

    Public fields:
      observed_nodes   set of node ids ever seen (monitored or named as a
                       neighbor); the start node is observed from step 0.
      observed_edges   set of (u, v) pairs with u < v, only edges incident
                       to a monitored node.
      monitored        node id -> true Color, in monitor order.
      statements       (speaker, subject) -> said Color.
      verified_counts  (speaker color, said color, subject true color) ->
                       count of claims whose subject is now monitored.
      start            the initially known node.
      report_log       ingested reports, in order.
    """

    def __init__(self, start: int):
        self.start = start
        self.observed_nodes: set[int] = {start}
        self.observed_edges: set[tuple[int, int]] = set()
        self.monitored: dict[int, Color] = {}
        self.statements: dict[tuple[int, int], Color] = {}
        self.verified_counts: dict[tuple[Color, Color, Color], int] = {
            (sp, said, sub): 0 for sp in Color for said in Color for sub in Color
        }
        self.report_log: list[MonitorReport] = []
        # Incremental per-node counters backing features().
        self._red_mon_nbrs: dict[int, set[int]] = {}
        self._blue_mon_count: dict[int, int] = {}
        self._red_tri: dict[int, int] = {}
        self._say: dict[int, list[int]] = {}
        self._stmts_about: dict[int, list[tuple[int, Color]]] = {}

    @classmethod
    def replay(cls, start: int, reports) -> "ObserverState":
        """Rebuild a state by ingesting an ordered report log from scratch."""
        state = cls(start)
        for report in reports:
            state.ingest(report)
        return state

    def candidates(self) -> list[int]:
        """Observed-but-unmonitored node ids, ascending (the legal monitor targets)."""
        return sorted(v for v in self.observed_nodes if v not in self.monitored)

    def ingest(self, report: MonitorReport) -> "ObserverState":
        """Fold one monitor report into the state.

        The target is recorded with its true color, its neighbors and
        incident edges become observed, its claims are recorded, and the
        verified-claim table picks up both old claims about the target and
        new claims about already-monitored subjects. Ingesting the same
        target twice is an error: a monitor placement spends budget once.
        """
        t = report.target
        if t in self.monitored:
            raise ValueError(f"node {t} is already monitored")
        if t not in self.observed_nodes:
            raise ValueError(f"node {t} has not been observed; monitors go on observed nodes")
        self.monitored[t] = report.true_color
        t_red = report.true_color is Color.RED
        t_nbrs = set(report.neighbors)

        for v in report.neighbors:
            self.observed_nodes.add(v)
            self.observed_edges.add((t, v) if t < v else (v, t))
            if t_red:
                known_reds = self._red_mon_nbrs.get(v)
                if known_reds:
                    self._red_tri[v] = self._red_tri.get(v, 0) + len(known_reds & t_nbrs)
                self._red_mon_nbrs.setdefault(v, set()).add(t)
            else:
                self._blue_mon_count[v] = self._blue_mon_count.get(v, 0) + 1

        for stmt in report.statements:
            self.statements[(t, stmt.subject)] = stmt.said
            self._stmts_about.setdefault(stmt.subject, []).append((t, stmt.said))
            counts = self._say.setdefault(stmt.subject, [0, 0, 0, 0])
            if t_red:
                counts[_RSR if stmt.said is Color.RED else _RSB] += 1
            else:
                counts[_BSR if stmt.said is Color.RED else _BSB] += 1
            subject_color = self.monitored.get(stmt.subject)
            if subject_color is not None:
                self.verified_counts[(report.true_color, stmt.said, subject_color)] += 1

        for speaker, said in self._stmts_about.get(t, ()):
            self.verified_counts[(self.monitored[speaker], said, report.true_color)] += 1

        self.report_log.append(report)
        return self

    def conditional_trust(self, speaker_color: Color, said: Color) -> float:
        """P(subject is red | a speaker of this color said this), from verified claims.

        Add-one smoothed: (verified red subjects + 1) / (verified total + 2),
        so the value is 0.5 before any evidence and approaches the raw
        verified ratio as counts grow.
        """
        reds = self.verified_counts[(speaker_color, said, Color.RED)]
        blues = self.verified_counts[(speaker_color, said, Color.BLUE)]
        return (reds + 1) / (reds + blues + 2)

    def inferred_red_probability(self, v: int) -> float:
        """Trust-weighted mean over all claims about candidate `v`.

        Each monitored neighbor's claim contributes the trust value for
        its (speaker color, said color) cell; with no claims the neutral
        0.5 is returned. Only candidates have a meaningful inferred
        probability, so monitored nodes are rejected.
        """
        if v in self.monitored:
            raise ValueError(f"node {v} is monitored; its color is known, not inferred")
        if v not in self.observed_nodes:
            raise ValueError(f"node {v} has not been observed")
        return self._inferred_red(v)

    def _inferred_red(self, v: int) -> float:
        counts = self._say.get(v)
        if not counts:
            return 0.5
        total = counts[_RSR] + counts[_RSB] + counts[_BSR] + counts[_BSB]
        if total == 0:
            return 0.5
        acc = (
            counts[_RSR] * self.conditional_trust(Color.RED, Color.RED)
            + counts[_RSB] * self.conditional_trust(Color.RED, Color.BLUE)
            + counts[_BSR] * self.conditional_trust(Color.BLUE, Color.RED)
            + counts[_BSB] * self.conditional_trust(Color.BLUE, Color.BLUE)
        )
        return acc / total

    def features(self, v: int, allow_monitored: bool = False) -> FeatureVector:
        """Feature vector for node `v` from current knowledge.

        By default `v` must be a candidate. Training-set assembly passes
        `allow_monitored=True` to compute the same vector for a monitored
        node; nothing a node's own report reveals feeds back into its own
        counts, so the vector matches what a candidate in its position
        would show.
        """
        if v not in self.observed_nodes:
            raise ValueError(f"node {v} has not been observed")
        if not allow_monitored and v in self.monitored:
            raise ValueError(f"node {v} is monitored; features are for candidates")
        say = self._say.get(v, (0, 0, 0, 0))
        return FeatureVector(
            red_neighbors=len(self._red_mon_nbrs.get(v, ())),
            blue_neighbors=self._blue_mon_count.get(v, 0),
            red_triangles=self._red_tri.get(v, 0),
            red_score=say[_RSR] + say[_BSR],
            red_say_red=say[_RSR],
            red_say_blue=say[_RSB],
            blue_say_red=say[_BSR],
            blue_say_blue=say[_BSB],
            inferred_red=self._inferred_red(v),
        )

    # Cheap single-count accessors for the non-learning strategies.

    def red_neighbor_count(self, v: int) -> int:
        return len(self._red_mon_nbrs.get(v, ()))

    def red_score(self, v: int) -> int:
        say = self._say.get(v)
        return say[_RSR] + say[_BSR] if say else 0

    def red_say_red_count(self, v: int) -> int:
        say = self._say.get(v)
        return say[_RSR] if say else 0

    def dump_report_log(self, path) -> None:
        """Write the report log as JSON lines, one report per line."""
        with open(path, "w", encoding="utf-8") as fh:
            for report in self.report_log:
                fh.write(json.dumps({
                    "target": report.target,
                    "true_color": report.true_color.value,
                    "neighbors": list(report.neighbors),
                    "statements": [
                        {"subject": s.subject, "said": s.said.value} for s in report.statements
                    ],
                }) + "\n")
