//! Backtracking engines over left cosets of `A`.
//!
//! All three engines walk a deterministic order, count every tentative
//! choice as a node, and memoise failed states so that the same partial
//! assignment is never explored twice. Exceeding the node budget aborts with
//! [`SearchOutcome::BudgetExceeded`].

use fixedbitset::FixedBitSet;
use rustc_hash::FxHashSet;

use super::{SearchOutcome, SearchResult};
use crate::group::{CosetDecomposition, PermGroup};

const NONE: u32 = u32::MAX;
/// Failed-state memo entries kept per search.
const MEMO_CAP: usize = 2_000_000;

struct OutOfBudget;

fn sorted_members(cosets: &CosetDecomposition) -> Vec<Vec<u32>> {
    cosets
        .members
        .iter()
        .map(|m| {
            let mut m = m.clone();
            m.sort_unstable();
            m
        })
        .collect()
}

/// Inverse-closed left transversal of `A` restricted to a set of cosets that
/// is closed under taking inverses (all of `G`, or one `A{g,g^-1}A`).
pub(crate) struct InverseClosedSearch<'a> {
    g: &'a PermGroup,
    coset_of: &'a [u32],
    members: Vec<Vec<u32>>,
    order: Vec<usize>,
    covered: FixedBitSet,
    chosen: Vec<u32>,
    failed: FxHashSet<FixedBitSet>,
    nodes: u64,
    budget: u64,
}

impl<'a> InverseClosedSearch<'a> {
    /// `order` lists the cosets to cover in processing order.
    pub fn new(g: &'a PermGroup, cosets: &'a CosetDecomposition, order: Vec<usize>, budget: u64) -> Self {
        InverseClosedSearch {
            g,
            coset_of: &cosets.coset_of,
            members: sorted_members(cosets),
            order,
            covered: FixedBitSet::with_capacity(cosets.len()),
            chosen: Vec::new(),
            failed: FxHashSet::default(),
            nodes: 0,
            budget,
        }
    }

    /// Number of elements of coset `c` that could ever be chosen for it.
    pub fn static_candidates(g: &PermGroup, cosets: &CosetDecomposition, c: usize) -> usize {
        cosets.members[c]
            .iter()
            .filter(|&&x| {
                let xi = g.inv(x as usize);
                cosets.coset_of[xi] as usize != c || xi == x as usize
            })
            .count()
    }

    pub fn run(mut self) -> SearchResult {
        let outcome = match self.recurse(0) {
            Ok(true) => {
                let mut x: Vec<u32> = self.chosen.clone();
                x.sort_unstable();
                SearchOutcome::Found(x.into_iter().map(|i| self.g.element(i as usize).clone()).collect())
            }
            Ok(false) => SearchOutcome::Exhausted,
            Err(OutOfBudget) => SearchOutcome::BudgetExceeded,
        };
        SearchResult {
            outcome,
            nodes: self.nodes,
        }
    }

    fn recurse(&mut self, from: usize) -> Result<bool, OutOfBudget> {
        let Some(pos) = (from..self.order.len()).find(|&i| !self.covered.contains(self.order[i])) else {
            return Ok(true);
        };
        let c = self.order[pos];
        for k in 0..self.members[c].len() {
            let x = self.members[c][k] as usize;
            let xi = self.g.inv(x);
            let d = self.coset_of[xi] as usize;
            if d == c {
                if xi != x {
                    continue;
                }
            } else if self.covered.contains(d) {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(OutOfBudget);
            }
            self.covered.insert(c);
            self.covered.insert(d);
            let pushed = if d == c { 1 } else { 2 };
            self.chosen.push(x as u32);
            if d != c {
                self.chosen.push(xi as u32);
            }
            if !self.failed.contains(&self.covered) {
                if self.recurse(pos + 1)? {
                    return Ok(true);
                }
                if self.failed.len() < MEMO_CAP {
                    self.failed.insert(self.covered.clone());
                }
            }
            for _ in 0..pushed {
                self.chosen.pop();
            }
            self.covered.set(c, false);
            self.covered.set(d, false);
        }
        Ok(false)
    }
}

/// Shared tables for the pair searches.
pub(crate) struct PairTables<'a> {
    pub g: &'a PermGroup,
    pub cosets_a: &'a CosetDecomposition,
    pub cosets_h: &'a CosetDecomposition,
    pub h_elems: &'a [u32],
}

/// Left transversal `X` of `A` with `XH = HX^-1`.
///
/// Since `XH` only depends on the left `H`-coset chosen inside each left
/// `A`-coset, the search assigns one `H`-coset per `A`-coset; the condition
/// says the union `S` of the chosen cosets is inverse-closed, so choosing
/// `xH` forces, for each `z ∈ xH`, the `H`-coset of `z^-1` inside its
/// `A`-coset. Those forced choices are propagated eagerly.
pub(crate) struct PairSearch<'a> {
    t: PairTables<'a>,
    /// `H`-cosets inside each `A`-coset, canonical order.
    h_in_a: Vec<Vec<u32>>,
    /// Forced `(A-coset, H-coset)` pairs implied by choosing an `H`-coset.
    req: Vec<Vec<(u32, u32)>>,
    self_consistent: Vec<bool>,
    assign: Vec<u32>,
    trail: Vec<usize>,
    failed: FxHashSet<Vec<u32>>,
    nodes: u64,
    budget: u64,
}

impl<'a> PairSearch<'a> {
    pub fn new(t: PairTables<'a>, budget: u64) -> Self {
        let na = t.cosets_a.len();
        let nh = t.cosets_h.len();
        let mut h_in_a = vec![Vec::new(); na];
        for l in 0..nh {
            let rep = t.cosets_h.rep_indices[l] as usize;
            h_in_a[t.cosets_a.coset_of[rep] as usize].push(l as u32);
        }
        let mut req = Vec::with_capacity(nh);
        let mut self_consistent = Vec::with_capacity(nh);
        for l in 0..nh {
            let own_a = t.cosets_a.coset_of[t.cosets_h.rep_indices[l] as usize];
            let mut r: Vec<(u32, u32)> = t.cosets_h.members[l]
                .iter()
                .map(|&z| {
                    let zi = t.g.inv(z as usize);
                    (t.cosets_a.coset_of[zi], t.cosets_h.coset_of[zi])
                })
                .collect();
            r.sort_unstable();
            r.dedup();
            let ok = r.windows(2).all(|w| w[0].0 != w[1].0)
                && r.iter().all(|&(c, m)| c != own_a || m == l as u32);
            req.push(r);
            self_consistent.push(ok);
        }
        PairSearch {
            t,
            h_in_a,
            req,
            self_consistent,
            assign: vec![NONE; na],
            trail: Vec::new(),
            failed: FxHashSet::default(),
            nodes: 0,
            budget,
        }
    }

    pub fn run(mut self) -> SearchResult {
        let outcome = match self.recurse() {
            Ok(true) => SearchOutcome::Found(
                self.assign
                    .iter()
                    .map(|&l| self.t.cosets_h.representatives[l as usize].clone())
                    .collect(),
            ),
            Ok(false) => SearchOutcome::Exhausted,
            Err(OutOfBudget) => SearchOutcome::BudgetExceeded,
        };
        SearchResult {
            outcome,
            nodes: self.nodes,
        }
    }

    fn viable(&self, l: u32) -> bool {
        self.self_consistent[l as usize]
            && self.req[l as usize]
                .iter()
                .all(|&(c, m)| self.assign[c as usize] == NONE || self.assign[c as usize] == m)
    }

    fn propagate(&mut self, c: usize, l: u32) -> bool {
        let mut stack = vec![(c as u32, l)];
        while let Some((c, l)) = stack.pop() {
            let cur = self.assign[c as usize];
            if cur == l {
                continue;
            }
            if cur != NONE || !self.self_consistent[l as usize] {
                return false;
            }
            self.assign[c as usize] = l;
            self.trail.push(c as usize);
            stack.extend(self.req[l as usize].iter().copied());
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let c = self.trail.pop().unwrap();
            self.assign[c] = NONE;
        }
    }

    fn recurse(&mut self) -> Result<bool, OutOfBudget> {
        // fail-first: the unassigned A-coset with the fewest viable choices
        let mut best: Option<(usize, usize)> = None;
        for c in 0..self.assign.len() {
            if self.assign[c] != NONE {
                continue;
            }
            let count = self.h_in_a[c].iter().filter(|&&l| self.viable(l)).count();
            if best.is_none_or(|(_, b)| count < b) {
                best = Some((c, count));
                if count == 0 {
                    break;
                }
            }
        }
        let Some((c, count)) = best else {
            return Ok(true);
        };
        if count == 0 {
            return Ok(false);
        }
        for k in 0..self.h_in_a[c].len() {
            let l = self.h_in_a[c][k];
            if !self.viable(l) {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(OutOfBudget);
            }
            let mark = self.trail.len();
            if self.propagate(c, l) && !self.failed.contains(&self.assign) {
                if self.recurse()? {
                    return Ok(true);
                }
                if self.failed.len() < MEMO_CAP {
                    self.failed.insert(self.assign.clone());
                }
            }
            self.undo(mark);
        }
        Ok(false)
    }
}

#[derive(Clone, Copy)]
enum Event {
    Choose(u32, u32),
    Require(u32, u32),
}

/// Inverse-closed left transversal `X` of `A`, within a set of `A`-cosets,
/// such that `HX ⊆ XH` (equivalently `XH = HX`, the two having equal size).
pub(crate) struct SymmetricSearch<'a> {
    t: PairTables<'a>,
    scope: Vec<usize>,
    in_scope: FixedBitSet,
    members: Vec<Vec<u32>>,
    /// Cached `(A-coset, H-coset)` of `h*x` over `h ∈ H`, per element `x`.
    h_left: Vec<Option<Vec<(u32, u32)>>>,
    chosen: Vec<u32>,
    required: Vec<u32>,
    trail: Vec<(bool, usize)>,
    failed: FxHashSet<Vec<u32>>,
    nodes: u64,
    budget: u64,
}

impl<'a> SymmetricSearch<'a> {
    pub fn new(t: PairTables<'a>, scope: Vec<usize>, budget: u64) -> Self {
        let na = t.cosets_a.len();
        let mut in_scope = FixedBitSet::with_capacity(na);
        for &c in &scope {
            in_scope.insert(c);
        }
        let members = sorted_members(t.cosets_a);
        let order = t.g.order();
        SymmetricSearch {
            t,
            scope,
            in_scope,
            members,
            h_left: vec![None; order],
            chosen: vec![NONE; na],
            required: vec![NONE; na],
            trail: Vec::new(),
            failed: FxHashSet::default(),
            nodes: 0,
            budget,
        }
    }

    pub fn run(mut self) -> SearchResult {
        let outcome = match self.recurse() {
            Ok(true) => {
                let mut x: Vec<u32> = self.scope.iter().map(|&c| self.chosen[c]).collect();
                x.sort_unstable();
                SearchOutcome::Found(x.into_iter().map(|i| self.t.g.element(i as usize).clone()).collect())
            }
            Ok(false) => SearchOutcome::Exhausted,
            Err(OutOfBudget) => SearchOutcome::BudgetExceeded,
        };
        SearchResult {
            outcome,
            nodes: self.nodes,
        }
    }

    fn left_products(&mut self, x: usize) -> &[(u32, u32)] {
        if self.h_left[x].is_none() {
            let mut v: Vec<(u32, u32)> = self
                .t
                .h_elems
                .iter()
                .map(|&h| {
                    let z = self.t.g.mul(h as usize, x);
                    (self.t.cosets_a.coset_of[z], self.t.cosets_h.coset_of[z])
                })
                .collect();
            v.sort_unstable();
            v.dedup();
            self.h_left[x] = Some(v);
        }
        self.h_left[x].as_deref().unwrap()
    }

    fn viable(&self, c: usize, x: usize) -> bool {
        let ch = self.t.cosets_h.coset_of[x];
        if self.required[c] != NONE && self.required[c] != ch {
            return false;
        }
        let xi = self.t.g.inv(x);
        let d = self.t.cosets_a.coset_of[xi] as usize;
        if d == c {
            return xi == x;
        }
        if !self.in_scope.contains(d) {
            return false;
        }
        (self.chosen[d] == NONE || self.chosen[d] as usize == xi)
            && (self.required[d] == NONE || self.required[d] == self.t.cosets_h.coset_of[xi])
    }

    fn propagate(&mut self, c: usize, x: usize) -> bool {
        let mut stack = vec![Event::Choose(c as u32, x as u32)];
        while let Some(ev) = stack.pop() {
            match ev {
                Event::Choose(c, x) => {
                    let (c, x) = (c as usize, x as usize);
                    if !self.in_scope.contains(c) {
                        return false;
                    }
                    if self.chosen[c] != NONE {
                        if self.chosen[c] as usize == x {
                            continue;
                        }
                        return false;
                    }
                    let xh = self.t.cosets_h.coset_of[x];
                    if self.required[c] != NONE && self.required[c] != xh {
                        return false;
                    }
                    self.chosen[c] = x as u32;
                    self.trail.push((true, c));
                    let xi = self.t.g.inv(x);
                    stack.push(Event::Choose(self.t.cosets_a.coset_of[xi], xi as u32));
                    let reqs: Vec<(u32, u32)> = self.left_products(x).to_vec();
                    stack.extend(reqs.into_iter().map(|(c2, l2)| Event::Require(c2, l2)));
                }
                Event::Require(c, l) => {
                    let c = c as usize;
                    if !self.in_scope.contains(c) {
                        return false;
                    }
                    if self.required[c] == l {
                        continue;
                    }
                    if self.required[c] != NONE {
                        return false;
                    }
                    if self.chosen[c] != NONE && self.t.cosets_h.coset_of[self.chosen[c] as usize] != l {
                        return false;
                    }
                    self.required[c] = l;
                    self.trail.push((false, c));
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (is_choice, c) = self.trail.pop().unwrap();
            if is_choice {
                self.chosen[c] = NONE;
            } else {
                self.required[c] = NONE;
            }
        }
    }

    fn recurse(&mut self) -> Result<bool, OutOfBudget> {
        let mut best: Option<(usize, usize)> = None;
        for &c in &self.scope {
            if self.chosen[c] != NONE {
                continue;
            }
            let count = self.members[c]
                .iter()
                .filter(|&&x| self.viable(c, x as usize))
                .count();
            if best.is_none_or(|(_, b)| count < b) {
                best = Some((c, count));
                if count == 0 {
                    break;
                }
            }
        }
        let Some((c, count)) = best else {
            return Ok(true);
        };
        if count == 0 {
            return Ok(false);
        }
        for k in 0..self.members[c].len() {
            let x = self.members[c][k] as usize;
            if !self.viable(c, x) {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(OutOfBudget);
            }
            let mark = self.trail.len();
            if self.propagate(c, x) && !self.failed.contains(&self.chosen) {
                if self.recurse()? {
                    return Ok(true);
                }
                if self.failed.len() < MEMO_CAP {
                    self.failed.insert(self.chosen.clone());
                }
            }
            self.undo(mark);
        }
        Ok(false)
    }
}
