//! Dinic's maximum flow on integer capacities.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: i64,
    rev: usize,
}

#[derive(Debug, Clone)]
pub(crate) struct FlowNetwork {
    adj: Vec<Vec<Arc>>,
    level: Vec<i32>,
    next: Vec<usize>,
}

pub(crate) const INFINITE: i64 = i64::MAX / 4;

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork {
            adj: vec![Vec::new(); nodes],
            level: vec![0; nodes],
            next: vec![0; nodes],
        }
    }

    pub fn add_arc(&mut self, from: usize, to: usize, cap: i64) {
        debug_assert!(cap >= 0);
        let rev_to = self.adj[to].len() + usize::from(from == to);
        let rev_from = self.adj[from].len();
        self.adj[from].push(Arc {
            to,
            cap,
            rev: rev_to,
        });
        self.adj[to].push(Arc {
            to: from,
            cap: 0,
            rev: rev_from,
        });
    }

    fn bfs(&mut self, source: usize, sink: usize) -> bool {
        self.level.fill(-1);
        self.level[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for arc in &self.adj[u] {
                if arc.cap > 0 && self.level[arc.to] < 0 {
                    self.level[arc.to] = self.level[u] + 1;
                    queue.push_back(arc.to);
                }
            }
        }
        self.level[sink] >= 0
    }

    fn dfs(&mut self, u: usize, sink: usize, pushed: i64) -> i64 {
        if u == sink {
            return pushed;
        }
        while self.next[u] < self.adj[u].len() {
            let i = self.next[u];
            let Arc { to, cap, rev } = self.adj[u][i];
            if cap > 0 && self.level[to] == self.level[u] + 1 {
                let got = self.dfs(to, sink, pushed.min(cap));
                if got > 0 {
                    self.adj[u][i].cap -= got;
                    self.adj[to][rev].cap += got;
                    return got;
                }
            }
            self.next[u] += 1;
        }
        0
    }

    pub fn max_flow(&mut self, source: usize, sink: usize) -> i64 {
        let mut total = 0;
        while self.bfs(source, sink) {
            self.next.fill(0);
            loop {
                let pushed = self.dfs(source, sink, INFINITE);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
        total
    }

    /// Nodes reachable from `source` in the residual network. After
    /// [`max_flow`](Self::max_flow) this is the source side of a minimum cut.
    pub fn source_side(&self, source: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[source] = true;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for arc in &self.adj[u] {
                if arc.cap > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    queue.push_back(arc.to);
                }
            }
        }
        seen
    }
}
