//! Exact 0-1 set multicover by branch and bound.
//!
//! Minimizes `|chosen|` subject to `|chosen ∩ F| >= k` for every fort `F`.
//! Among all optimal covers the lexicographically smallest (by sorted member
//! list) is returned.
//!
//! The optimum is found first by depth-first search under a size limit that
//! grows from a lower bound, branching inside the short fort with the least
//! slack.
//! [`solve_multicover`] then builds the canonical cover vertex by vertex in
//! ascending order: a vertex is kept exactly when some optimal cover contains
//! it together with every vertex kept so far and none of those dropped.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::vertex_set::{word_count, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverInstance {
    pub universe_size: usize,
    pub forts: Vec<VertexSet>,
    /// Required coverage per fort.
    pub multiplicity: usize,
    pub fixed_in: VertexSet,
    pub fixed_out: VertexSet,
    /// When set, a fort smaller than `multiplicity` only has to be covered
    /// completely instead of making the instance infeasible.
    pub cap_demand_at_fort_size: bool,
    /// A value known not to exceed the optimum. Lets the search stop as soon
    /// as it reaches a cover of that size.
    pub known_lower_bound: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverSolution {
    pub chosen: VertexSet,
    pub objective: usize,
    pub optimal: bool,
    pub nodes_explored: u64,
}

impl CoverInstance {
    pub fn new(universe_size: usize, forts: Vec<VertexSet>, multiplicity: usize) -> Self {
        Self {
            universe_size,
            forts,
            multiplicity,
            fixed_in: VertexSet::empty(universe_size),
            fixed_out: VertexSet::empty(universe_size),
            cap_demand_at_fort_size: false,
            known_lower_bound: 0,
        }
    }

    pub fn with_fixed_in(mut self, fixed_in: VertexSet) -> Self {
        self.fixed_in = fixed_in;
        self
    }

    pub fn with_fixed_out(mut self, fixed_out: VertexSet) -> Self {
        self.fixed_out = fixed_out;
        self
    }

    /// Coverage fort `i` must receive.
    pub fn demand(&self, i: usize) -> usize {
        if self.cap_demand_at_fort_size {
            self.multiplicity.min(self.forts[i].len())
        } else {
            self.multiplicity
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.universe_size;
        if self.multiplicity == 0 {
            return Err(Error::Logic("multiplicity must be at least 1".into()));
        }
        for s in [&self.fixed_in, &self.fixed_out]
            .into_iter()
            .chain(self.forts.iter())
        {
            if s.universe() != n {
                return Err(Error::Logic(format!(
                    "set over {} vertices in an instance over {n}",
                    s.universe()
                )));
            }
        }
        if !self.fixed_in.is_disjoint(&self.fixed_out) {
            return Err(Error::Logic("fixed_in and fixed_out overlap".into()));
        }
        for (i, fort) in self.forts.iter().enumerate() {
            if fort.is_empty() {
                return Err(Error::Logic(format!("fort {i} is empty")));
            }
            if fort.difference(&self.fixed_out).len() < self.demand(i) {
                return Err(Error::Infeasible { fort_index: i });
            }
        }
        Ok(())
    }

    /// True when `chosen` meets every fort's demand and respects the fixings.
    pub fn is_feasible(&self, chosen: &VertexSet) -> bool {
        self.fixed_in.is_subset(chosen)
            && chosen.is_disjoint(&self.fixed_out)
            && self
                .forts
                .iter()
                .enumerate()
                .all(|(i, f)| f.intersection_len(chosen) >= self.demand(i))
    }
}

/// `k` times the size of a greedily packed family of pairwise-disjoint forts
/// (smallest forts first). A cover needs `k` distinct members from each.
pub fn disjoint_fort_lower_bound(inst: &CoverInstance) -> usize {
    let mut order: Vec<usize> = (0..inst.forts.len()).collect();
    order.sort_by_key(|&i| (inst.forts[i].len(), i));
    let mut used = VertexSet::empty(inst.universe_size);
    let mut bound = 0;
    for i in order {
        let f = &inst.forts[i];
        if f.is_disjoint(&used) {
            used.union_with(f);
            bound += inst.demand(i);
        }
    }
    bound
}

/// Feasible cover built by repeatedly taking the vertex that helps the most
/// under-covered forts (ties to the smallest index). Not optimal in general.
pub fn greedy_upper_bound(inst: &CoverInstance) -> Result<CoverSolution> {
    inst.validate()?;
    let n = inst.universe_size;
    let mut chosen = inst.fixed_in.clone();
    let mut coverage: Vec<usize> = inst
        .forts
        .iter()
        .map(|f| f.intersection_len(&chosen))
        .collect();
    loop {
        let short: Vec<usize> = (0..inst.forts.len())
            .filter(|&i| coverage[i] < inst.demand(i))
            .collect();
        if short.is_empty() {
            break;
        }
        let mut score = vec![0usize; n];
        for &i in &short {
            for v in inst.forts[i].iter() {
                score[v] += 1;
            }
        }
        let pick = (0..n)
            .filter(|&v| !chosen.contains(v) && !inst.fixed_out.contains(v) && score[v] > 0)
            .max_by_key(|&v| (score[v], std::cmp::Reverse(v)));
        let Some(v) = pick else {
            return Err(Error::Infeasible {
                fort_index: short[0],
            });
        };
        chosen.insert(v);
        for (i, f) in inst.forts.iter().enumerate() {
            if f.contains(v) {
                coverage[i] += 1;
            }
        }
    }
    Ok(CoverSolution {
        objective: chosen.len(),
        chosen,
        optimal: false,
        nodes_explored: 0,
    })
}

/// Minimum-cardinality cover, lexicographically smallest among optima.
///
/// `known_lower_bound` must not exceed the optimum.
pub fn solve_multicover(inst: &CoverInstance) -> Result<CoverSolution> {
    solve(inst, true)
}

/// A minimum-cardinality cover without the lexicographic guarantee. Much
/// cheaper on large fort pools; still deterministic.
pub fn minimum_cover(inst: &CoverInstance) -> Result<CoverSolution> {
    solve(inst, false)
}

/// Tries to turn a cover of an earlier, smaller fort pool into a cover of
/// `inst` of the same size. Keeps it if it still works, then tries single
/// swaps (removed vertex ascending, then added vertex ascending), then a
/// bounded local search. Deterministic; `None` says nothing about whether
/// such a cover exists. `previous` must respect the fixings.
pub fn repair_cover(inst: &CoverInstance, previous: &VertexSet) -> Option<VertexSet> {
    if !inst.fixed_in.is_subset(previous) || !previous.is_disjoint(&inst.fixed_out) {
        return None;
    }
    if inst.is_feasible(previous) {
        return Some(previous.clone());
    }
    let short: Vec<usize> = (0..inst.forts.len())
        .filter(|&i| inst.forts[i].intersection_len(previous) < inst.demand(i))
        .collect();
    // Every added vertex must serve the first short fort.
    let candidates = inst.forts[short[0]]
        .difference(previous)
        .difference(&inst.fixed_out);
    for out in previous.difference(&inst.fixed_in).iter() {
        let mut trial = previous.clone();
        trial.remove(out);
        for add in candidates.iter() {
            trial.insert(add);
            if inst.is_feasible(&trial) {
                return Some(trial);
            }
            trial.remove(add);
        }
    }
    LocalSearch::new(inst, previous).run(LOCAL_SEARCH_STEPS)
}

const LOCAL_SEARCH_STEPS: usize = 20_000;

/// Fixed-size swap search with fort weights: each step adds the best member
/// of a random short fort, drops the chosen vertex whose removal hurts least,
/// and bumps the weight of every fort still short.
struct LocalSearch<'a> {
    inst: &'a CoverInstance,
    members: Vec<Vec<usize>>,
    incidence: Vec<Vec<usize>>,
    coverage: Vec<usize>,
    weight: Vec<u64>,
    chosen: VertexSet,
    /// Step at which each vertex last changed state.
    stamp: Vec<usize>,
    rng: ChaCha8Rng,
}

impl<'a> LocalSearch<'a> {
    fn new(inst: &'a CoverInstance, start: &VertexSet) -> Self {
        let n = inst.universe_size;
        let members: Vec<Vec<usize>> = inst.forts.iter().map(VertexSet::to_vec).collect();
        let mut incidence = vec![Vec::new(); n];
        for (i, m) in members.iter().enumerate() {
            for &v in m {
                incidence[v].push(i);
            }
        }
        Self {
            coverage: inst
                .forts
                .iter()
                .map(|f| f.intersection_len(start))
                .collect(),
            weight: vec![1; inst.forts.len()],
            chosen: start.clone(),
            stamp: vec![0; n],
            rng: ChaCha8Rng::seed_from_u64(inst.forts.len() as u64),
            members,
            incidence,
            inst,
        }
    }

    fn short(&self) -> Vec<usize> {
        (0..self.members.len())
            .filter(|&i| self.coverage[i] < self.inst.demand(i))
            .collect()
    }

    fn flip(&mut self, v: usize, step: usize) {
        let adding = self.chosen.insert(v);
        if !adding {
            self.chosen.remove(v);
        }
        for &i in &self.incidence[v] {
            if adding {
                self.coverage[i] += 1;
            } else {
                self.coverage[i] -= 1;
            }
        }
        self.stamp[v] = step;
    }

    fn run(mut self, steps: usize) -> Option<VertexSet> {
        let mut last_removed = usize::MAX;
        for step in 1..=steps {
            let short = self.short();
            if short.is_empty() {
                debug_assert!(self.inst.is_feasible(&self.chosen));
                return Some(self.chosen);
            }
            let target = short[self.rng.gen_range(0..short.len())];
            let gain = |v: usize| -> u64 {
                self.incidence[v]
                    .iter()
                    .filter(|&&i| self.coverage[i] < self.inst.demand(i))
                    .map(|&i| self.weight[i])
                    .sum()
            };
            let add = self.members[target]
                .iter()
                .copied()
                .filter(|&v| !self.chosen.contains(v) && !self.inst.fixed_out.contains(v))
                .filter(|&v| v != last_removed)
                .max_by_key(|&v| (gain(v), std::cmp::Reverse(self.stamp[v])))?;
            self.flip(add, step);
            let loss = |u: usize| -> u64 {
                self.incidence[u]
                    .iter()
                    .filter(|&&i| self.coverage[i] <= self.inst.demand(i))
                    .map(|&i| self.weight[i])
                    .sum()
            };
            let drop = self
                .chosen
                .iter()
                .filter(|&u| u != add && !self.inst.fixed_in.contains(u))
                .min_by_key(|&u| (loss(u), self.stamp[u]))?;
            self.flip(drop, step);
            last_removed = drop;
            for i in self.short() {
                self.weight[i] += 1;
            }
        }
        None
    }
}

fn solve(inst: &CoverInstance, canonical: bool) -> Result<CoverSolution> {
    let incumbent = greedy_upper_bound(inst)?;
    let w = word_count(inst.universe_size);
    let mut forts = Vec::with_capacity(inst.forts.len() * w);
    for f in &inst.forts {
        forts.extend_from_slice(f.words());
    }
    let demand: Vec<u32> = (0..inst.forts.len())
        .map(|i| inst.demand(i) as u32)
        .collect();
    let mut search = Search {
        w,
        forts: &forts,
        demand: &demand,
        nodes: 0,
        counts: vec![0; inst.universe_size],
        sorted: Vec::new(),
    };
    let fixed_in = inst.fixed_in.words().to_vec();
    let fixed_out = inst.fixed_out.words().to_vec();

    // Smallest size limit that admits a cover.
    let start = inst
        .known_lower_bound
        .max(inst.fixed_in.len())
        .max(disjoint_fort_lower_bound(inst))
        .min(incumbent.objective);
    let mut optimum = incumbent.objective;
    let mut witness = incumbent.chosen.words().to_vec();
    for limit in start..incumbent.objective {
        if let Some(cover) = search.find(&fixed_in, &fixed_out, limit) {
            optimum = limit;
            witness = cover;
            break;
        }
    }

    if canonical {
        witness = search.lex_smallest(inst, fixed_in, fixed_out, optimum, witness);
    }
    let chosen = VertexSet::from_words(inst.universe_size, &witness);
    debug_assert!(inst.is_feasible(&chosen));
    Ok(CoverSolution {
        objective: chosen.len(),
        chosen,
        optimal: true,
        nodes_explored: search.nodes,
    })
}

fn popcount(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

struct Search<'a> {
    w: usize,
    forts: &'a [u64],
    demand: &'a [u32],
    nodes: u64,
    counts: Vec<u32>,
    sorted: Vec<u32>,
}

struct Open {
    need: u32,
    avail_count: u32,
    offset: usize,
}

impl Search<'_> {
    fn fort(&self, i: usize) -> &[u64] {
        &self.forts[i * self.w..(i + 1) * self.w]
    }

    /// Decides vertices in ascending order, keeping each one whenever some
    /// cover of size `optimum` agrees with every decision so far. `witness`
    /// is any such cover.
    fn lex_smallest(
        &mut self,
        inst: &CoverInstance,
        mut included: Vec<u64>,
        mut excluded: Vec<u64>,
        optimum: usize,
        mut witness: Vec<u64>,
    ) -> Vec<u64> {
        for v in 0..inst.universe_size {
            if popcount(&included) == optimum {
                break;
            }
            let (word, bit) = (v / 64, 1u64 << (v % 64));
            if (included[word] | excluded[word]) & bit != 0 {
                continue;
            }
            included[word] |= bit;
            if witness[word] & bit != 0 {
                continue;
            }
            match self.find(&included, &excluded, optimum) {
                Some(cover) => witness = cover,
                None => {
                    included[word] &= !bit;
                    excluded[word] |= bit;
                }
            }
        }
        debug_assert_eq!(included, witness);
        witness
    }

    /// Some cover of size at most `limit` containing `included` and avoiding
    /// `excluded`, if one exists.
    fn find(&mut self, included: &[u64], excluded: &[u64], limit: usize) -> Option<Vec<u64>> {
        let mut chosen = included.to_vec();
        let mut excluded = excluded.to_vec();
        let size = popcount(&chosen);
        self.dfs(&mut chosen, &mut excluded, size, limit)
            .then_some(chosen)
    }

    /// Fewest extra vertices that could meet the remaining demand, counting
    /// how many open forts each candidate vertex could help. Leaves those
    /// per-vertex counts in `self.counts`.
    fn degree_bound(&mut self, open: &[Open], avail_words: &[u64]) -> usize {
        let w = self.w;
        self.counts.iter_mut().for_each(|c| *c = 0);
        let mut remaining: u64 = 0;
        for o in open {
            remaining += o.need as u64;
            for (j, &x) in avail_words[o.offset..o.offset + w].iter().enumerate() {
                let mut bits = x;
                while bits != 0 {
                    self.counts[j * 64 + bits.trailing_zeros() as usize] += 1;
                    bits &= bits - 1;
                }
            }
        }
        self.sorted.clone_from(&self.counts);
        self.sorted.sort_unstable_by(|a, b| b.cmp(a));
        let mut taken = 0;
        for &c in &self.sorted {
            if remaining == 0 || c == 0 {
                break;
            }
            remaining = remaining.saturating_sub(c as u64);
            taken += 1;
        }
        taken
    }

    /// On success `chosen` holds the cover found.
    fn dfs(
        &mut self,
        chosen: &mut Vec<u64>,
        excluded: &mut Vec<u64>,
        mut size: usize,
        limit: usize,
    ) -> bool {
        self.nodes += 1;
        let w = self.w;
        let fort_count = self.demand.len();
        let mut open: Vec<Open> = Vec::new();
        let mut avail_words: Vec<u64> = Vec::new();

        // Propagate forced inclusions, then collect the forts still short.
        loop {
            open.clear();
            avail_words.clear();
            let mut forced = false;
            for i in 0..fort_count {
                let f = self.fort(i);
                let mut cov = 0u32;
                let mut avail_count = 0u32;
                for j in 0..w {
                    cov += (f[j] & chosen[j]).count_ones();
                }
                let d = self.demand[i];
                if cov >= d {
                    continue;
                }
                let offset = avail_words.len();
                for j in 0..w {
                    let a = f[j] & !chosen[j] & !excluded[j];
                    avail_count += a.count_ones();
                    avail_words.push(a);
                }
                let need = d - cov;
                if avail_count < need {
                    return false;
                }
                if avail_count == need {
                    for j in 0..w {
                        chosen[j] |= avail_words[offset + j];
                    }
                    size += avail_count as usize;
                    forced = true;
                    break;
                }
                open.push(Open {
                    need,
                    avail_count,
                    offset,
                });
            }
            if size > limit {
                return false;
            }
            if !forced {
                break;
            }
        }
        if open.is_empty() {
            return true;
        }
        if size == limit {
            return false;
        }

        // Disjoint-packing bound over the remaining candidates.
        let mut order: Vec<usize> = (0..open.len()).collect();
        order.sort_by_key(|&i| (open[i].avail_count - open[i].need, i));
        let mut used = vec![0u64; w];
        let mut packing = 0usize;
        for &i in &order {
            let a = &avail_words[open[i].offset..open[i].offset + w];
            if a.iter().zip(&used).all(|(x, u)| x & u == 0) {
                for j in 0..w {
                    used[j] |= a[j];
                }
                packing += open[i].need as usize;
            }
        }
        if size + packing > limit || size + self.degree_bound(&open, &avail_words) > limit {
            return false;
        }

        // Branch on the member of the tightest fort that meets the most open
        // forts, lowest index on ties.
        let tight = &open[order[0]];
        let mut branch = usize::MAX;
        for (j, &x) in avail_words[tight.offset..tight.offset + w]
            .iter()
            .enumerate()
        {
            let mut bits = x;
            while bits != 0 {
                let v = j * 64 + bits.trailing_zeros() as usize;
                if branch == usize::MAX || self.counts[v] > self.counts[branch] {
                    branch = v;
                }
                bits &= bits - 1;
            }
        }
        let (word, bit) = (branch / 64, 1u64 << (branch % 64));

        let mut inc = chosen.clone();
        inc[word] |= bit;
        let mut exc_for_inc = excluded.clone();
        if self.dfs(&mut inc, &mut exc_for_inc, size + 1, limit) {
            *chosen = inc;
            return true;
        }
        excluded[word] |= bit;
        self.dfs(chosen, excluded, size, limit)
    }
}
