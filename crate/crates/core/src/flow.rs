//! Integral max-flow / min-cut (Edmonds-Karp) with symbolic infinite
//! capacities, flow path decomposition, and capacitated bipartite
//! assignment with Hall-violator extraction.

use std::collections::VecDeque;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Capacity {
    Finite(u64),
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub cap: Capacity,
}

#[derive(Clone, Debug)]
pub struct FlowNetwork {
    nodes: usize,
    source: usize,
    sink: usize,
    arcs: Vec<Arc>,
}

impl FlowNetwork {
    pub fn new(nodes: usize, source: usize, sink: usize) -> Self {
        assert!(source < nodes && sink < nodes && source != sink);
        FlowNetwork { nodes, source, sink, arcs: Vec::new() }
    }

    pub fn add_node(&mut self) -> usize {
        self.nodes += 1;
        self.nodes - 1
    }

    /// Adds an arc and returns its index. Arcs into the source or out of
    /// the sink are rejected.
    pub fn add_arc(&mut self, from: usize, to: usize, cap: Capacity) -> usize {
        assert!(from < self.nodes && to < self.nodes, "arc endpoint out of range");
        assert!(to != self.source, "no arc may enter the source");
        assert!(from != self.sink, "no arc may leave the sink");
        self.arcs.push(Arc { from, to, cap });
        self.arcs.len() - 1
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// Capacity of the cut whose source side is `side`.
    pub fn cut_capacity(&self, side: &[bool]) -> Capacity {
        let mut total = 0u64;
        for a in &self.arcs {
            if side[a.from] && !side[a.to] {
                match a.cap {
                    Capacity::Infinite => return Capacity::Infinite,
                    Capacity::Finite(c) => total += c,
                }
            }
        }
        Capacity::Finite(total)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxFlow {
    pub value: Capacity,
    /// Per-arc flow, absent when the value is infinite.
    pub flow: Option<Vec<u64>>,
    /// Source side of a minimum cut, absent when the value is infinite.
    pub min_cut: Option<Vec<bool>>,
}

struct Residual {
    head: Vec<usize>,
    // None = infinite
    cap: Vec<Option<u64>>,
    out: Vec<Vec<usize>>,
}

impl Residual {
    fn build(net: &FlowNetwork) -> Self {
        let mut r = Residual { head: Vec::new(), cap: Vec::new(), out: vec![Vec::new(); net.nodes] };
        for a in &net.arcs {
            let cap = match a.cap {
                Capacity::Finite(c) => Some(c),
                Capacity::Infinite => None,
            };
            r.out[a.from].push(r.head.len());
            r.head.push(a.to);
            r.cap.push(cap);
            r.out[a.to].push(r.head.len());
            r.head.push(a.from);
            r.cap.push(Some(0));
        }
        r
    }

    fn positive(&self, e: usize) -> bool {
        self.cap[e] != Some(0)
    }

    fn bfs(&self, s: usize) -> Vec<Option<usize>> {
        let mut pred = vec![None; self.out.len()];
        let mut seen = vec![false; self.out.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.out[u] {
                let w = self.head[e];
                if !seen[w] && self.positive(e) {
                    seen[w] = true;
                    pred[w] = Some(e);
                    queue.push_back(w);
                }
            }
        }
        pred
    }

    fn reachable(&self, s: usize) -> Vec<bool> {
        let pred = self.bfs(s);
        (0..self.out.len()).map(|v| v == s || pred[v].is_some()).collect()
    }
}

fn infinite_path_exists(net: &FlowNetwork) -> bool {
    let mut out = vec![Vec::new(); net.nodes];
    for a in net.arcs.iter().filter(|a| a.cap == Capacity::Infinite) {
        out[a.from].push(a.to);
    }
    let mut seen = vec![false; net.nodes];
    let mut stack = vec![net.source];
    seen[net.source] = true;
    while let Some(u) = stack.pop() {
        if u == net.sink {
            return true;
        }
        for &w in &out[u] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    false
}

/// Maximum `s`-`t` flow with BFS augmenting paths.
pub fn max_flow(net: &FlowNetwork) -> MaxFlow {
    if infinite_path_exists(net) {
        return MaxFlow { value: Capacity::Infinite, flow: None, min_cut: None };
    }
    let mut res = Residual::build(net);
    let mut value = 0u64;
    loop {
        let pred = res.bfs(net.source);
        if pred[net.sink].is_none() {
            break;
        }
        let mut bottleneck = u64::MAX;
        let mut v = net.sink;
        while v != net.source {
            let e = pred[v].unwrap();
            if let Some(c) = res.cap[e] {
                bottleneck = bottleneck.min(c);
            }
            v = res.head[e ^ 1];
        }
        debug_assert!(bottleneck != u64::MAX, "augmenting path without a finite arc");
        let mut v = net.sink;
        while v != net.source {
            let e = pred[v].unwrap();
            if let Some(c) = res.cap[e].as_mut() {
                *c -= bottleneck;
            }
            if let Some(c) = res.cap[e ^ 1].as_mut() {
                *c += bottleneck;
            }
            v = res.head[e ^ 1];
        }
        value += bottleneck;
    }
    let flow = (0..net.arcs.len()).map(|i| res.cap[2 * i + 1].unwrap()).collect();
    let min_cut = res.reachable(net.source);
    MaxFlow { value: Capacity::Finite(value), flow: Some(flow), min_cut: Some(min_cut) }
}

/// Splits an integral flow into source-sink paths (as node sequences) after
/// cancelling any circulations. Each path carries `amount` units.
pub fn decompose_paths(net: &FlowNetwork, flow: &[u64]) -> Vec<(Vec<usize>, u64)> {
    let mut remaining = flow.to_vec();
    let mut out_arcs = vec![Vec::new(); net.nodes];
    for (i, a) in net.arcs.iter().enumerate() {
        out_arcs[a.from].push(i);
    }
    let mut paths = Vec::new();
    loop {
        let mut nodes = vec![net.source];
        let mut used: Vec<usize> = Vec::new();
        let mut position = vec![usize::MAX; net.nodes];
        position[net.source] = 0;
        let mut u = net.source;
        let mut restart = false;
        while u != net.sink {
            let Some(&e) = out_arcs[u].iter().find(|&&e| remaining[e] > 0) else {
                break;
            };
            let w = net.arcs[e].to;
            if position[w] != usize::MAX {
                // cancel the cycle w -> ... -> u -> w
                let start = position[w];
                let cycle: Vec<usize> = used[start..].iter().copied().chain([e]).collect();
                let amount = cycle.iter().map(|&c| remaining[c]).min().unwrap();
                for c in cycle {
                    remaining[c] -= amount;
                }
                restart = true;
                break;
            }
            used.push(e);
            position[w] = nodes.len();
            nodes.push(w);
            u = w;
        }
        if restart {
            continue;
        }
        if u != net.sink {
            break;
        }
        let amount = used.iter().map(|&e| remaining[e]).min().unwrap();
        for &e in &used {
            remaining[e] -= amount;
        }
        paths.push((nodes, amount));
    }
    paths
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Assignment {
    /// `map[c]` is the center (index into the capacity vector) serving client `c`.
    Assigned(Vec<usize>),
    /// Clients `U` with `|U|` larger than the total capacity they may reach.
    HallViolation(Vec<usize>),
}

/// Assigns every client to an allowed center without exceeding center
/// capacities, or returns a Hall-violating client set.
pub fn capacitated_assignment(allowed: &[Vec<usize>], caps: &[u64]) -> Assignment {
    let m = allowed.len();
    let c = caps.len();
    let (s, t) = (0, 1);
    let client = |i: usize| 2 + i;
    let center = |j: usize| 2 + m + j;
    let mut net = FlowNetwork::new(2 + m + c, s, t);
    let mut edges = Vec::new();
    for (i, list) in allowed.iter().enumerate() {
        net.add_arc(s, client(i), Capacity::Finite(1));
        for &j in list {
            edges.push((i, j, net.add_arc(client(i), center(j), Capacity::Infinite)));
        }
    }
    for (j, &cap) in caps.iter().enumerate() {
        if cap > 0 {
            net.add_arc(center(j), t, Capacity::Finite(cap));
        }
    }
    let result = max_flow(&net);
    let flow = result.flow.expect("client arcs bound the flow");
    if result.value == Capacity::Finite(m as u64) {
        let mut map = vec![usize::MAX; m];
        for (i, j, e) in edges {
            if flow[e] > 0 {
                map[i] = j;
            }
        }
        Assignment::Assigned(map)
    } else {
        let side = result.min_cut.unwrap();
        Assignment::HallViolation((0..m).filter(|&i| side[client(i)]).collect())
    }
}
