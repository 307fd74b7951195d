"""Finite parity games under the min-parity convention.

Player 0 (Even) wins an infinite play iff the least priority seen
infinitely often is even.  A player who has to move from a position
without successors loses.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Mapping

EVEN, ODD = 0, 1


@dataclass(frozen=True, eq=False)
class ParityGame:
    owner: Mapping[Hashable, int]
    priority: Mapping[Hashable, int]
    edges: Mapping[Hashable, tuple]

    def __post_init__(self):
        object.__setattr__(self, "owner", dict(self.owner))
        object.__setattr__(self, "priority", dict(self.priority))
        object.__setattr__(self, "edges",
                           {v: tuple(self.edges.get(v, ())) for v in self.owner})
        if set(self.owner) != set(self.priority):
            raise ValueError("owner and priority must cover the same positions")
        for v, succ in self.edges.items():
            for w in succ:
                if w not in self.owner:
                    raise ValueError(f"edge {v!r} -> {w!r} leaves the arena")
        for v, o in self.owner.items():
            if o not in (EVEN, ODD):
                raise ValueError(f"bad owner {o!r} at {v!r}")
            if self.priority[v] < 0:
                raise ValueError(f"negative priority at {v!r}")

    @property
    def positions(self):
        return list(self.owner)

    def __len__(self):
        return len(self.owner)

    def dual(self) -> "ParityGame":
        """Swap owners and shift priorities by one."""
        return ParityGame({v: 1 - o for v, o in self.owner.items()},
                          {v: p + 1 for v, p in self.priority.items()},
                          self.edges)


@dataclass
class GameSolution:
    regions: tuple[set, set]
    strategies: tuple[dict, dict] = field(default_factory=lambda: ({}, {}))

    @property
    def even_region(self):
        return self.regions[EVEN]

    @property
    def odd_region(self):
        return self.regions[ODD]

    def winner(self, v) -> int:
        return EVEN if v in self.regions[EVEN] else ODD


class _Sink:
    def __init__(self, name):
        self.name = name

    def __repr__(self):
        return self.name


def _attractor(arena, V, target, player):
    owner, succ, pred = arena
    attr = set(target)
    strat = {}
    count = {v: sum(1 for w in succ[v] if w in V) for v in V}
    queue = list(attr)
    while queue:
        w = queue.pop()
        for v in pred[w]:
            if v not in V or v in attr:
                continue
            if owner[v] == player:
                attr.add(v)
                strat[v] = w
                queue.append(v)
            else:
                count[v] -= 1
                if count[v] == 0:
                    attr.add(v)
                    queue.append(v)
    return attr, strat


def _zielonka(arena, prio, V):
    owner, succ, _ = arena
    if not V:
        return (set(), set()), {}
    p = min(prio[v] for v in V)
    alpha = p % 2
    top = {v for v in V if prio[v] == p}
    A, attr_strat = _attractor(arena, V, top, alpha)
    (W_sub, strat_sub) = _zielonka(arena, prio, V - A)
    if not W_sub[1 - alpha]:
        W = [set(), set()]
        W[alpha] = set(V)
        strat = {v: w for v, w in strat_sub.items() if owner[v] == alpha}
        strat.update(attr_strat)
        for v in top:
            if owner[v] == alpha:
                strat[v] = next(w for w in succ[v] if w in V)
        return (W[0], W[1]), strat
    B, b_strat = _attractor(arena, V, W_sub[1 - alpha], 1 - alpha)
    W2, strat2 = _zielonka(arena, prio, V - B)
    W = [set(W2[0]), set(W2[1])]
    W[1 - alpha] |= B
    strat = dict(strat2)
    strat.update({v: w for v, w in strat_sub.items()
                  if v in W_sub[1 - alpha] and owner[v] == 1 - alpha})
    strat.update(b_strat)
    return (W[0], W[1]), strat


def solve(game: ParityGame) -> GameSolution:
    """Winning regions and positional winning strategies (Zielonka)."""
    owner = dict(game.owner)
    prio = dict(game.priority)
    succ = {v: list(dict.fromkeys(game.edges[v])) for v in owner}
    sinks = {EVEN: _Sink("<even wins>"), ODD: _Sink("<odd wins>")}
    for player, s in sinks.items():
        owner[s] = player
        prio[s] = player
        succ[s] = [s]
    for v in game.owner:
        if not succ[v]:
            succ[v] = [sinks[1 - owner[v]]]
    pred = {v: [] for v in owner}
    for v, ws in succ.items():
        for w in ws:
            pred[w].append(v)
    (W0, W1), strat = _zielonka((owner, succ, pred), prio, set(owner))
    W = (W0 - set(sinks.values()), W1 - set(sinks.values()))
    strategies = ({}, {})
    for v, w in strat.items():
        if v in game.owner and w in game.owner and v in W[owner[v]]:
            strategies[owner[v]][v] = w
    return GameSolution(W, strategies)


def _on_bad_cycle(graph, prio, v):
    """Is ``v`` on a cycle through positions of priority >= prio[v]?"""
    bound = prio[v]
    seen, stack = set(), [v]
    while stack:
        x = stack.pop()
        for y in graph[x]:
            if prio[y] < bound:
                continue
            if y == v:
                return True
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return False


def verify_strategy(game: ParityGame, solution: GameSolution) -> bool:
    """Check that each claimed region is won by the claimed strategy."""
    W = solution.regions
    if W[0] & W[1] or (W[0] | W[1]) != set(game.owner):
        return False
    for player in (EVEN, ODD):
        region, strat = W[player], solution.strategies[player]
        graph = {}
        for v, w in strat.items():
            if v not in region or game.owner[v] != player or w not in game.edges[v]:
                return False
        for v in region:
            if game.owner[v] == player:
                if not game.edges[v]:
                    return False
                if v not in strat or strat[v] not in region:
                    return False
                graph[v] = (strat[v],)
            else:
                if any(w not in region for w in game.edges[v]):
                    return False
                graph[v] = game.edges[v]
        for v in region:
            if game.priority[v] % 2 != player and _on_bad_cycle(graph, game.priority, v):
                return False
    return True
