//! A small finite-domain constraint solver: binary table constraints,
//! all-different groups, minimum-remaining-values ordering and forward
//! checking with an undo trail.

use std::ops::ControlFlow;

/// Outcome of a search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome<T> {
    /// The visitor accepted a solution.
    Found(T),
    /// Every assignment was explored.
    Exhausted,
    /// The node budget ran out first.
    Budget,
}

impl<T> Outcome<T> {
    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Outcome<U> {
        match self {
            Outcome::Found(t) => Outcome::Found(f(t)),
            Outcome::Exhausted => Outcome::Exhausted,
            Outcome::Budget => Outcome::Budget,
        }
    }

    pub fn found(self) -> Option<T> {
        match self {
            Outcome::Found(t) => Some(t),
            _ => None,
        }
    }
}

struct Table {
    a: usize,
    b: usize,
    /// `allowed[i * db + j]` for value index `i` of `a` and `j` of `b`.
    allowed: Vec<bool>,
    db: usize,
}

/// Variables take values from explicit domains of `u32` labels.
pub struct Problem {
    domains: Vec<Vec<u32>>,
    tables: Vec<Table>,
    groups: Vec<Vec<usize>>,
}

impl Problem {
    pub fn new() -> Self {
        Problem {
            domains: Vec::new(),
            tables: Vec::new(),
            groups: Vec::new(),
        }
    }

    pub fn add_variable(&mut self, domain: Vec<u32>) -> usize {
        self.domains.push(domain);
        self.domains.len() - 1
    }

    pub fn num_variables(&self) -> usize {
        self.domains.len()
    }

    pub fn domain(&self, var: usize) -> &[u32] {
        &self.domains[var]
    }

    /// Restricts the pair `(a, b)` to label pairs satisfying `ok`.
    pub fn constrain(&mut self, a: usize, b: usize, mut ok: impl FnMut(u32, u32) -> bool) {
        let (da, db) = (&self.domains[a], &self.domains[b]);
        let mut allowed = Vec::with_capacity(da.len() * db.len());
        for &x in da {
            for &y in db {
                allowed.push(ok(x, y));
            }
        }
        if allowed.iter().all(|&x| x) {
            return;
        }
        self.tables.push(Table {
            a,
            b,
            allowed,
            db: db.len(),
        });
    }

    /// The listed variables must take pairwise different labels.
    pub fn all_different(&mut self, vars: Vec<usize>) {
        if vars.len() > 1 {
            self.groups.push(vars);
        }
    }

    /// Depth-first search. `visit` sees each complete assignment (labels
    /// indexed by variable) and either stops with a value or asks for more.
    pub fn solve<T>(
        &self,
        budget: u64,
        mut visit: impl FnMut(&[u32]) -> ControlFlow<T>,
    ) -> Outcome<T> {
        let n = self.domains.len();
        let mut adj: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
        for (i, t) in self.tables.iter().enumerate() {
            adj[t.a].push((i, true));
            adj[t.b].push((i, false));
        }
        let mut group_of: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, g) in self.groups.iter().enumerate() {
            for &v in g {
                group_of[v].push(i);
            }
        }
        let mut s = State {
            p: self,
            adj,
            group_of,
            alive: self.domains.iter().map(|d| vec![true; d.len()]).collect(),
            count: self.domains.iter().map(|d| d.len()).collect(),
            assigned: vec![None; n],
            trail: Vec::new(),
            nodes: 0,
            budget,
        };
        if s.count.contains(&0) {
            return Outcome::Exhausted;
        }
        match s.search(&mut visit) {
            Step::Stop(t) => Outcome::Found(t),
            Step::Budget => Outcome::Budget,
            Step::Continue => Outcome::Exhausted,
        }
    }
}

impl Default for Problem {
    fn default() -> Self {
        Self::new()
    }
}

enum Step<T> {
    Stop(T),
    Budget,
    Continue,
}

struct State<'a> {
    p: &'a Problem,
    adj: Vec<Vec<(usize, bool)>>,
    group_of: Vec<Vec<usize>>,
    alive: Vec<Vec<bool>>,
    count: Vec<usize>,
    assigned: Vec<Option<usize>>,
    trail: Vec<(usize, usize)>,
    nodes: u64,
    budget: u64,
}

impl State<'_> {
    fn remove(&mut self, var: usize, idx: usize) -> bool {
        if self.alive[var][idx] {
            self.alive[var][idx] = false;
            self.count[var] -= 1;
            self.trail.push((var, idx));
        }
        self.count[var] > 0
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (var, idx) = self.trail.pop().expect("trail above mark");
            self.alive[var][idx] = true;
            self.count[var] += 1;
        }
    }

    fn pick(&self) -> Option<usize> {
        (0..self.count.len())
            .filter(|&v| self.assigned[v].is_none())
            .min_by_key(|&v| (self.count[v], v))
    }

    /// Prunes neighbours of `var := idx`; false on a wipe-out.
    fn propagate(&mut self, var: usize, idx: usize) -> bool {
        for k in 0..self.adj[var].len() {
            let (ti, first) = self.adj[var][k];
            let t = &self.p.tables[ti];
            let other = if first { t.b } else { t.a };
            if self.assigned[other].is_some() {
                continue;
            }
            let len = self.p.domains[other].len();
            for j in 0..len {
                if !self.alive[other][j] {
                    continue;
                }
                let ok = if first {
                    t.allowed[idx * t.db + j]
                } else {
                    t.allowed[j * t.db + idx]
                };
                if !ok && !self.remove(other, j) {
                    return false;
                }
            }
        }
        let label = self.p.domains[var][idx];
        for gi in 0..self.group_of[var].len() {
            let g = self.group_of[var][gi];
            for m in 0..self.p.groups[g].len() {
                let other = self.p.groups[g][m];
                if other == var || self.assigned[other].is_some() {
                    continue;
                }
                for j in 0..self.p.domains[other].len() {
                    if self.alive[other][j] && self.p.domains[other][j] == label && !self.remove(other, j) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn search<T>(&mut self, visit: &mut impl FnMut(&[u32]) -> ControlFlow<T>) -> Step<T> {
        let Some(var) = self.pick() else {
            let labels: Vec<u32> = self
                .assigned
                .iter()
                .enumerate()
                .map(|(v, i)| self.p.domains[v][i.expect("complete")])
                .collect();
            return match visit(&labels) {
                ControlFlow::Break(t) => Step::Stop(t),
                ControlFlow::Continue(()) => Step::Continue,
            };
        };
        for idx in 0..self.p.domains[var].len() {
            if !self.alive[var][idx] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Step::Budget;
            }
            let mark = self.trail.len();
            self.assigned[var] = Some(idx);
            if self.propagate(var, idx) {
                match self.search(visit) {
                    Step::Continue => {}
                    other => {
                        self.assigned[var] = None;
                        self.undo(mark);
                        return other;
                    }
                }
            }
            self.assigned[var] = None;
            self.undo(mark);
        }
        Step::Continue
    }
}
