//! Small Dinic max-flow used for vertex connectivity and fan construction.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: i32,
    flow: i32,
}

#[derive(Debug, Clone)]
pub(crate) struct FlowNetwork {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
    level: Vec<i32>,
    cursor: Vec<usize>,
}

impl FlowNetwork {
    pub(crate) fn new(nodes: usize) -> Self {
        FlowNetwork { arcs: Vec::new(), out: vec![Vec::new(); nodes], level: vec![0; nodes], cursor: vec![0; nodes] }
    }

    pub(crate) fn add_arc(&mut self, from: usize, to: usize, cap: i32) {
        self.out[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap, flow: 0 });
        self.out[to].push(self.arcs.len());
        self.arcs.push(Arc { to: from, cap: 0, flow: 0 });
    }

    fn residual(&self, a: usize) -> i32 {
        self.arcs[a].cap - self.arcs[a].flow
    }

    fn build_levels(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &a in &self.out[u] {
                let v = self.arcs[a].to;
                if self.level[v] < 0 && self.residual(a) > 0 {
                    self.level[v] = self.level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        self.level[t] >= 0
    }

    fn augment(&mut self, u: usize, t: usize, pushed: i32) -> i32 {
        if u == t {
            return pushed;
        }
        while self.cursor[u] < self.out[u].len() {
            let a = self.out[u][self.cursor[u]];
            let v = self.arcs[a].to;
            let r = self.residual(a);
            if r > 0 && self.level[v] == self.level[u] + 1 {
                let got = self.augment(v, t, pushed.min(r));
                if got > 0 {
                    self.arcs[a].flow += got;
                    self.arcs[a ^ 1].flow -= got;
                    return got;
                }
            }
            self.cursor[u] += 1;
        }
        0
    }

    /// Pushes flow from `s` to `t` until saturated or `limit` is reached.
    pub(crate) fn max_flow(&mut self, s: usize, t: usize, limit: i32) -> i32 {
        let mut total = 0;
        while total < limit && self.build_levels(s, t) {
            self.cursor.iter_mut().for_each(|c| *c = 0);
            loop {
                let got = self.augment(s, t, limit - total);
                if got == 0 {
                    break;
                }
                total += got;
                if total >= limit {
                    break;
                }
            }
        }
        total
    }

    /// Nodes reachable from `s` in the residual network (source side of a min cut).
    pub(crate) fn residual_reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.out.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &a in &self.out[u] {
                let v = self.arcs[a].to;
                if !seen[v] && self.residual(a) > 0 {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }

    /// Splits the current flow into `s`-`t` node sequences (excluding `s`).
    /// Assumes unit throughput per intermediate node, so each walk is simple.
    pub(crate) fn decompose(&mut self, s: usize, t: usize) -> Vec<Vec<usize>> {
        let mut paths = Vec::new();
        loop {
            let mut walk = Vec::new();
            let mut u = s;
            while u != t {
                let Some(&a) = self.out[u].iter().find(|&&a| a % 2 == 0 && self.arcs[a].flow > 0) else {
                    break;
                };
                self.arcs[a].flow -= 1;
                self.arcs[a ^ 1].flow += 1;
                u = self.arcs[a].to;
                walk.push(u);
            }
            if u != t {
                return paths;
            }
            paths.push(walk);
        }
    }
}
