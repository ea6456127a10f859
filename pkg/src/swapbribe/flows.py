"""Minimum-cost flow via successive shortest augmenting paths.

Small dense instances only (tens of nodes), so shortest paths use plain
Bellman-Ford over the residual network, which also copes with the negative
residual costs created by augmentation.  Capacities and costs are integers,
so every optimum found is integral.
"""

from __future__ import annotations

INF = float("inf")


class MinCostFlow:
    def __init__(self, num_nodes: int):
        self.n = num_nodes
        self.adj: list[list[int]] = [[] for _ in range(num_nodes)]
        # Parallel arrays; edge 2e is the forward arc, 2e+1 its residual twin.
        self.to: list[int] = []
        self.cap: list[int] = []
        self.cost: list[int] = []

    def add_node(self) -> int:
        self.adj.append([])
        self.n += 1
        return self.n - 1

    def add_edge(self, u: int, v: int, cap: int, cost: int) -> int:
        """Add a forward arc; returns an id usable with `edge_flow`."""
        eid = len(self.to)
        self.to.extend((v, u))
        self.cap.extend((cap, 0))
        self.cost.extend((cost, -cost))
        self.adj[u].append(eid)
        self.adj[v].append(eid + 1)
        return eid

    def edge_flow(self, eid: int) -> int:
        return self.cap[eid ^ 1]

    def _shortest_path(self, s: int, t: int):
        dist = [INF] * self.n
        dist[s] = 0
        parent_edge = [-1] * self.n
        for _ in range(self.n - 1):
            changed = False
            for u in range(self.n):
                du = dist[u]
                if du is INF:
                    continue
                for eid in self.adj[u]:
                    if self.cap[eid] > 0 and du + self.cost[eid] < dist[self.to[eid]]:
                        dist[self.to[eid]] = du + self.cost[eid]
                        parent_edge[self.to[eid]] = eid
                        changed = True
            if not changed:
                break
        if dist[t] is INF:
            return None
        path = []
        node = t
        while node != s:
            eid = parent_edge[node]
            path.append(eid)
            node = self.to[eid ^ 1]
        path.reverse()
        return path

    def min_cost_flow(self, s: int, t: int, limit: int | None = None) -> tuple[int, int]:
        """Push up to `limit` units (all it can otherwise); returns (flow, cost)."""
        flow = 0
        total_cost = 0
        while limit is None or flow < limit:
            path = self._shortest_path(s, t)
            if path is None:
                break
            push = min(self.cap[eid] for eid in path)
            if limit is not None:
                push = min(push, limit - flow)
            for eid in path:
                self.cap[eid] -= push
                self.cap[eid ^ 1] += push
                total_cost += push * self.cost[eid]
            flow += push
        return flow, total_cost


def flow_with_lower_bounds(num_nodes: int,
                           edges: list[tuple[int, int, int, int, int]],
                           s: int, t: int, value: int):
    """Min-cost s-t flow of exactly `value` units with per-edge lower bounds.

    `edges` holds (u, v, lower, upper, cost) tuples.  Returns
    (total_cost, per_edge_flows) or None when no feasible flow exists.
    Uses the standard excess transformation onto a plain min-cost flow.
    """
    excess = [0] * num_nodes
    base_cost = 0
    net = MinCostFlow(num_nodes)
    ids = []
    for u, v, lower, upper, cost in edges:
        if lower > upper:
            return None
        ids.append(net.add_edge(u, v, upper - lower, cost) if upper > lower else None)
        excess[v] += lower
        excess[u] -= lower
        base_cost += lower * cost
    # Demand exactly `value` units from s to t.
    excess[s] += value
    excess[t] -= value
    ss = net.add_node()
    tt = net.add_node()
    need = 0
    for node, ex in enumerate(excess):
        if ex > 0:
            net.add_edge(ss, node, ex, 0)
            need += ex
        elif ex < 0:
            net.add_edge(node, tt, -ex, 0)
    flow, cost = net.min_cost_flow(ss, tt)
    if flow != need:
        return None
    flows = []
    for (u, v, lower, upper, _), eid in zip(edges, ids):
        flows.append(lower + (net.edge_flow(eid) if eid is not None else 0))
    return base_cost + cost, flows
