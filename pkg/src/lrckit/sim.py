"""Single-process distributed-storage simulator.

One logical node per codeword symbol; failures mark nodes dead, repair
restores them through a fixed strategy ladder, and every action lands in
an ordered event log so runs are replayable and comparable.  Bandwidth is
counted in symbols: contacting a node transfers exactly its one symbol.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence, Union

from .errors import (
    AffineRankDeficient,
    DecodingFailure,
    LengthMismatch,
    NoSpanningDirections,
    TooManyFailures,
    Unrecoverable,
)
from .evalset import Codeword
from .lrc2 import LrcCode, decode_global2, encode2
from .lrc3 import Lrc3Code, decode_global3, encode3


@dataclass(frozen=True)
class Event:
    seq: int
    kind: str  # fail | local2 | local3 | cooperative | global | unrecoverable
    nodes: tuple[int, ...]
    contacts: tuple[int, ...] = ()
    transferred: int = 0

    def as_dict(self) -> dict:
        return {
            "seq": self.seq,
            "kind": self.kind,
            "nodes": list(self.nodes),
            "contacts": list(self.contacts),
            "transferred": self.transferred,
        }


@dataclass
class Cluster:
    code: Union[LrcCode, Lrc3Code]
    symbols: dict[int, int]
    alive: set[int]
    history: list[Event] = dc_field(default_factory=list)

    def _log(self, kind: str, nodes, contacts=(), transferred: int = 0) -> Event:
        ev = Event(len(self.history), kind, tuple(sorted(nodes)),
                   tuple(sorted(contacts)), transferred)
        self.history.append(ev)
        return ev

    @property
    def dead(self) -> list[int]:
        return sorted(set(self.symbols) - self.alive)

    def readable(self) -> dict[int, int]:
        return {n: self.symbols[n] for n in sorted(self.alive)}

    def received_vector(self) -> list[Optional[int]]:
        return [
            self.symbols[n] if n in self.alive else None
            for n in range(1, len(self.symbols) + 1)
        ]


def place(code: Union[LrcCode, Lrc3Code], codeword: Codeword) -> Cluster:
    """One symbol per node, all alive."""
    if len(codeword) != code.n_nodes:
        raise LengthMismatch(
            f"codeword length {len(codeword)} != node count {code.n_nodes}"
        )
    symbols = {n: codeword.symbol(n) for n in range(1, code.n_nodes + 1)}
    return Cluster(code=code, symbols=symbols, alive=set(symbols))


def inject_failures(cluster: Cluster, nodes: Sequence[int] | None = None,
                    count: int | None = None, seed: int | None = None) -> Cluster:
    """Mark nodes dead, either an explicit list or a seeded random draw."""
    if (nodes is None) == (count is None):
        raise ValueError("pass exactly one of nodes= or count=")
    if nodes is None:
        if count > len(cluster.symbols):
            raise TooManyFailures(
                f"{count} failures requested, only {len(cluster.symbols)} nodes"
            )
        rng = random.Random(seed)
        nodes = rng.sample(sorted(cluster.alive), count)
    chosen = sorted(set(int(n) for n in nodes))
    for n in chosen:
        if n not in cluster.symbols:
            raise ValueError(f"node {n} does not exist")
    cluster.alive -= set(chosen)
    cluster._log("fail", chosen)
    return cluster


@dataclass(frozen=True)
class RepairStats:
    events: tuple[Event, ...]
    repaired: tuple[int, ...]
    unrecoverable: tuple[int, ...]

    @property
    def total_contacts(self) -> int:
        return sum(len(e.contacts) for e in self.events)

    @property
    def total_transferred(self) -> int:
        return sum(e.transferred for e in self.events)


def _line_phase(cluster: Cluster) -> list[Event]:
    """Repair along registered lines until no line makes progress.

    A line with enough survivors restores every dead node on it from one
    interpolation; freshly restored nodes count as survivors for later
    lines, so recoveries cascade deterministically in registry order.
    """
    code = cluster.code
    r = code.locality
    es = code.eval_set
    from .evalset import interpolate_line_value

    events = []
    progress = True
    while progress:
        progress = False
        for line in es.lines:
            dead_on = sorted(n for n in line.nodes if n not in cluster.alive)
            if not dead_on:
                continue
            survivors = sorted(n for n in line.nodes if n in cluster.alive)
            if len(survivors) < r:
                continue
            chosen = survivors[:r]
            samples = [(line.t_of(n), cluster.symbols[n]) for n in chosen]
            for node in dead_on:
                value = interpolate_line_value(
                    es.field, samples, r - 1, line.t_of(node))
                cluster.symbols[node] = value
                cluster.alive.add(node)
            kind = "cooperative" if len(dead_on) > 1 else f"local{r}"
            events.append(cluster._log(kind, dead_on, chosen, len(chosen)))
            progress = True
    return events


def _global_phase(cluster: Cluster) -> tuple[list[Event], list[int]]:
    code = cluster.code
    dead = cluster.dead
    if not dead:
        return [], []
    received = cluster.received_vector()
    try:
        if isinstance(code, Lrc3Code):
            res = decode_global3(code, received[: code.sum_set.size])
            fresh = encode3(code, res.message)
        else:
            res = decode_global2(code, received, minimal_read=True)
            fresh = encode2(code, res.message)
    except (DecodingFailure, NoSpanningDirections, AffineRankDeficient):
        ev = cluster._log("unrecoverable", dead)
        return [ev], dead
    for node in dead:
        cluster.symbols[node] = fresh.symbol(node)
        cluster.alive.add(node)
    ev = cluster._log("global", dead, res.read_nodes, len(res.read_nodes))
    return [ev], []


def auto_repair(cluster: Cluster, strict: bool = False) -> RepairStats:
    """Strategy ladder: line repair (single or cooperative) first, then one
    global decode and re-encode for whatever remains.

    Global decoding never runs while any line can still make progress, so
    the event log itself witnesses the ladder ordering.  Unrecoverable
    nodes leave the cluster degraded unless strict=True.
    """
    before_dead = cluster.dead
    events = _line_phase(cluster)
    g_events, lost = _global_phase(cluster)
    events.extend(g_events)
    repaired = tuple(n for n in before_dead if n in cluster.alive)
    if lost and strict:
        raise Unrecoverable(lost)
    return RepairStats(tuple(events), repaired, tuple(lost))


def stats_report(cluster: Cluster) -> dict:
    """Aggregate the event log: per-kind counts, transfer totals, and mean
    contacts per repaired node."""
    by_kind: dict[str, int] = {}
    contacts = 0
    transferred = 0
    repaired_nodes = 0
    unrecoverable: set[int] = set()
    for ev in cluster.history:
        by_kind[ev.kind] = by_kind.get(ev.kind, 0) + 1
        contacts += len(ev.contacts)
        transferred += ev.transferred
        if ev.kind in ("local2", "local3", "cooperative", "global"):
            repaired_nodes += len(ev.nodes)
        if ev.kind == "unrecoverable":
            unrecoverable |= set(ev.nodes)
    return {
        "events": len(cluster.history),
        "by_kind": dict(sorted(by_kind.items())),
        "contacts_total": contacts,
        "symbols_transferred_total": transferred,
        "repaired_nodes": repaired_nodes,
        "mean_contacts_per_repaired_node": (
            contacts / repaired_nodes if repaired_nodes else 0.0
        ),
        "unrecoverable": sorted(unrecoverable),
        "alive": len(cluster.alive),
        "nodes": len(cluster.symbols),
    }
