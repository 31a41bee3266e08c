//! Perfect codes of a group pair `(G, H)`.

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;

use super::search::{PairSearch, PairTables, SymmetricSearch};
use super::subgroup::{combine, is_perfect_code_group, CosetData};
use super::{
    certify, Check, DecisionPath, PairInstance, SearchOutcome, SearchResult, Status, Verdict,
    DEFAULT_BUDGET,
};
use crate::error::{Error, Result};
use crate::group::{double_coset_union, normal_closure_mask};
use crate::perm::Perm;

impl PairInstance {
    fn tables(&self) -> PairTables<'_> {
        PairTables {
            g: &self.g,
            cosets_a: &self.cosets_a,
            cosets_h: &self.cosets_h,
            h_elems: &self.h_emb.elems,
        }
    }

    fn coset_data(&self) -> CosetData {
        CosetData::with_cosets(&self.g, self.a_emb.clone(), self.cosets_a.clone())
    }

    /// `∪_{y ∈ A} H^y` as a mask over `G`.
    fn conjugates_of_h(&self) -> FixedBitSet {
        let mut mask = FixedBitSet::with_capacity(self.g.order());
        for &y in &self.a_emb.elems {
            for &h in &self.h_emb.elems {
                mask.insert(self.g.conj(h as usize, y as usize));
            }
        }
        mask
    }
}

fn search_verdict(path: DecisionPath, r: SearchResult) -> Verdict {
    match r.outcome {
        SearchOutcome::Found(x) => Verdict::positive(path, x, r.nodes),
        SearchOutcome::Exhausted => Verdict::negative(path, None, r.nodes),
        SearchOutcome::BudgetExceeded => Verdict::unknown(path, r.nodes),
    }
}

/// Searches for a left transversal `X` of `A` with `XH = HX^-1`.
pub fn search_pair_transversal(inst: &PairInstance, budget: u64) -> Verdict {
    let r = PairSearch::new(inst.tables(), budget).run();
    search_verdict(DecisionPath::PairTransversalSearch, r)
}

/// For every `g`: `|A{g,g^-1}A|/|A|` is even, or `gA` contains some `x`
/// with `x^2 ∈ H^y` for some `y ∈ A`.
///
/// Both alternatives only depend on `gA`, so one representative per coset
/// is checked; the first failing representative is returned.
pub fn necessary_condition(inst: &PairInstance) -> Check {
    let data = inst.coset_data();
    let squares = inst.conjugates_of_h();
    let g = &inst.g;
    for (c, members) in inst.cosets_a.members.iter().enumerate() {
        let rep = inst.cosets_a.rep_indices[c] as usize;
        if data.union_ratio(rep) % 2 == 0 {
            continue;
        }
        if !members.iter().any(|&x| squares.contains(g.mul(x as usize, x as usize))) {
            return Check::Violated(inst.cosets_a.representatives[c].clone());
        }
    }
    Check::Holds
}

/// The necessary condition at a single element, computed from explicit
/// products rather than coset tables.
pub fn necessary_condition_at(inst: &PairInstance, g: &Perm) -> Result<bool> {
    let union = double_coset_union(&inst.g, &inst.a, g)?;
    if union.coset_count() % 2 == 0 {
        return Ok(true);
    }
    let conjugates: Vec<Perm> = inst
        .a
        .elements()
        .iter()
        .flat_map(|y| inst.h.elements().iter().map(move |h| h.conjugate_by(y)))
        .collect();
    Ok(inst.a.elements().iter().any(|a| {
        let x = g.then(a);
        conjugates.contains(&x.square())
    }))
}

/// Data certifying that `H` nonnormal, `H` a perfect code of `G`, and
/// `H^G <= A <= N_G(H)` all hold.
#[derive(Serialize, Clone, Debug)]
pub struct ObstructionCertificate {
    /// `(s, t, t^s)` with `s` a generator of `G`, `t ∈ H`, `t^s ∉ H`.
    pub nonnormal_witness: (Perm, Perm, Perm),
    /// Inverse-closed left transversal of `H` in `G`.
    pub h_code_witness: Vec<Perm>,
    pub normal_closure_order: usize,
    pub normalizer_contains_a: bool,
    pub closure_inside_a: bool,
}

fn nonnormal_witness(inst: &PairInstance) -> Option<(Perm, Perm, Perm)> {
    for s in inst.g.generators() {
        for t in inst.h.generators() {
            let ts = t.conjugate_by(s);
            if !inst.h.contains(&ts) {
                return Some((s.clone(), t.clone(), ts));
            }
        }
    }
    None
}

fn obstruction_with(inst: &PairInstance, h_code: &Verdict) -> Option<Verdict> {
    let witness = nonnormal_witness(inst)?;
    if !h_code.is_positive() {
        return None;
    }
    let closure = normal_closure_mask(&inst.g, &inst.h_emb);
    if !closure.is_subset(&inst.a_emb.mask) {
        return None;
    }
    let normalizes = inst
        .a
        .generators()
        .iter()
        .all(|a| inst.h.generators().iter().all(|t| inst.h.contains(&t.conjugate_by(a))));
    if !normalizes {
        return None;
    }
    let mut v = Verdict::negative(DecisionPath::NormalClosureObstruction, None, h_code.search_nodes);
    v.obstruction = Some(ObstructionCertificate {
        nonnormal_witness: witness,
        h_code_witness: h_code.witness.clone().unwrap_or_default(),
        normal_closure_order: closure.count_ones(..),
        normalizer_contains_a: true,
        closure_inside_a: true,
    });
    Some(v)
}

/// Fires when `H` is nonnormal in `G`, `H` is a perfect code of `G`, and
/// `H^G <= A <= N_G(H)`; `A` is then not a perfect code of `(G, H)`.
pub fn normal_closure_obstruction(inst: &PairInstance, budget: u64) -> Result<Option<Verdict>> {
    if nonnormal_witness(inst).is_none() {
        return Ok(None);
    }
    let h_code = is_perfect_code_group(&inst.g, &inst.h, budget)?;
    Ok(obstruction_with(inst, &h_code))
}

fn require_h_code(inst: &PairInstance, budget: u64) -> Result<()> {
    match is_perfect_code_group(&inst.g, &inst.h, budget)?.status {
        Status::PerfectCode => Ok(()),
        s => Err(Error::HypothesisNotMet(format!(
            "H is not known to be a perfect code of G ({s:?})"
        ))),
    }
}

fn symmetric_all(inst: &PairInstance, budget: u64) -> SearchResult {
    let scope: Vec<usize> = (0..inst.index()).collect();
    SymmetricSearch::new(inst.tables(), scope, budget).run()
}

fn symmetric_per_union(inst: &PairInstance, budget: u64) -> SearchResult {
    let classes = inst.coset_data().union_classes();
    let results = classes
        .into_par_iter()
        .map(|class| SymmetricSearch::new(inst.tables(), class, budget).run())
        .collect();
    combine(results)
}

/// Searches for an inverse-closed left transversal `X` of `A` with
/// `XH = HX`. Requires `H` to be a perfect code of `G`.
pub fn symmetric_transversal_search(inst: &PairInstance, budget: u64) -> Result<SearchResult> {
    require_h_code(inst, budget)?;
    Ok(symmetric_all(inst, budget))
}

/// The same search run inside each `A{g,g^-1}A` separately. Requires `H`
/// to be a perfect code of `G`.
pub fn symmetric_transversals_per_union(inst: &PairInstance, budget: u64) -> Result<SearchResult> {
    require_h_code(inst, budget)?;
    Ok(symmetric_per_union(inst, budget))
}

#[derive(Clone, Copy, Debug)]
pub struct DecideOptions {
    /// Node budget for each search.
    pub budget: u64,
    /// Run every applicable procedure instead of stopping at the first
    /// definite answer.
    pub run_all: bool,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            budget: DEFAULT_BUDGET,
            run_all: false,
        }
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct PairDecision {
    pub verdict: Verdict,
    /// Every procedure that ran, in pipeline order.
    pub paths: Vec<Verdict>,
}

/// Decides whether `A` is a perfect code of `(G, H)` with the default
/// options.
pub fn decide_pair(inst: &PairInstance, budget: u64) -> Result<PairDecision> {
    decide_pair_with(
        inst,
        DecideOptions {
            budget,
            ..Default::default()
        },
    )
}

/// Pipeline: necessary condition, normal-closure obstruction, the
/// symmetric searches (only when `H` is a perfect code of `G`), then the
/// general transversal search. Definite answers from different procedures
/// must agree, and positive witnesses are re-checked.
pub fn decide_pair_with(inst: &PairInstance, opts: DecideOptions) -> Result<PairDecision> {
    let mut paths = Vec::new();
    let settled = |paths: &Vec<Verdict>| !opts.run_all && paths.iter().any(|v: &Verdict| v.status != Status::Unknown);

    if let Check::Violated(x) = necessary_condition(inst) {
        paths.push(Verdict::negative(DecisionPath::NecessaryCondition, Some(x), 0));
    }
    if !settled(&paths) {
        let h_code = is_perfect_code_group(&inst.g, &inst.h, opts.budget)?;
        if let Some(v) = obstruction_with(inst, &h_code) {
            paths.push(v);
        }
        if h_code.is_positive() && !settled(&paths) {
            let r = symmetric_all(inst, opts.budget);
            paths.push(search_verdict(DecisionPath::SymmetricTransversalSearch, r));
            if opts.run_all {
                let r = symmetric_per_union(inst, opts.budget);
                paths.push(search_verdict(DecisionPath::SymmetricTransversalsPerUnion, r));
            }
        }
    }
    if !settled(&paths) {
        paths.push(search_pair_transversal(inst, opts.budget));
    }

    for v in &paths {
        if let Some(x) = &v.witness {
            if !certify::pair_condition_holds(&inst.g, &inst.a, &inst.h, x) {
                return Err(Error::ConsistencyViolation(format!(
                    "{:?} witness fails XH = HX^-1",
                    v.decision_path
                )));
            }
            let symmetric = matches!(
                v.decision_path,
                DecisionPath::SymmetricTransversalSearch | DecisionPath::SymmetricTransversalsPerUnion
            );
            if symmetric && !certify::symmetric_condition_holds(&inst.g, &inst.a, &inst.h, x) {
                return Err(Error::ConsistencyViolation(format!(
                    "{:?} witness is not an inverse-closed transversal with XH = HX",
                    v.decision_path
                )));
            }
        }
    }
    let definite: Vec<&Verdict> = paths.iter().filter(|v| v.status != Status::Unknown).collect();
    if let Some(first) = definite.first() {
        if let Some(other) = definite.iter().find(|v| v.status != first.status) {
            return Err(Error::ConsistencyViolation(format!(
                "{:?} and {:?} disagree",
                first.decision_path, other.decision_path
            )));
        }
    }
    let verdict = definite
        .first()
        .map(|v| (*v).clone())
        .unwrap_or_else(|| paths.last().cloned().expect("pair search always runs"));
    Ok(PairDecision { verdict, paths })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::symmetric;
    use crate::group::PermGroup;

    fn stabilizer_chain(l: usize, m: usize, n: usize) -> PairInstance {
        let g = symmetric(n);
        let sym_on = |k: usize| {
            let gens: Vec<Perm> = (1..k).map(|i| Perm::transposition(n, 0, i)).collect();
            PermGroup::closure(n, &gens).unwrap()
        };
        PairInstance::new(g, sym_on(m), sym_on(l)).unwrap()
    }

    fn d8_triple() -> PairInstance {
        // rotation a = (1 2 3 4), reflection b = (2 4)
        let a = Perm::parse_cycles(4, "(1 2 3 4)").unwrap();
        let b = Perm::parse_cycles(4, "(2 4)").unwrap();
        let g = PermGroup::closure(4, &[a.clone(), b.clone()]).unwrap();
        let big = PermGroup::closure(4, &[a.pow(2), b.clone()]).unwrap();
        let h = PermGroup::closure(4, &[b]).unwrap();
        PairInstance::new(g, big, h).unwrap()
    }

    #[test]
    fn dihedral_counterexample() {
        let inst = d8_triple();
        assert!(necessary_condition(&inst).holds());
        let v = search_pair_transversal(&inst, 1000);
        assert_eq!(v.status, Status::NotPerfectCode);
        assert!(normal_closure_obstruction(&inst, 1000).unwrap().is_some());
        let d = decide_pair_with(&inst, DecideOptions { budget: 1000, run_all: true }).unwrap();
        assert_eq!(d.verdict.status, Status::NotPerfectCode);
        assert_eq!(d.verdict.decision_path, DecisionPath::NormalClosureObstruction);
    }

    #[test]
    fn symmetric_chain_345() {
        let inst = stabilizer_chain(3, 4, 5);
        let r = symmetric_transversal_search(&inst, 100_000).unwrap();
        let x = r.found().unwrap();
        assert!(certify::symmetric_condition_holds(&inst.g, &inst.a, &inst.h, x));
        let d = decide_pair_with(&inst, DecideOptions { budget: 100_000, run_all: true }).unwrap();
        assert!(d.verdict.is_positive());
        assert!(d.paths.iter().all(|v| v.is_positive()));
    }

    #[test]
    fn whole_group_as_a() {
        let g = symmetric(4);
        let h = PermGroup::closure(4, &[Perm::transposition(4, 0, 1)]).unwrap();
        let inst = PairInstance::new(g.clone(), g, h).unwrap();
        let d = decide_pair(&inst, 1000).unwrap();
        assert_eq!(d.verdict.witness.as_deref(), Some(&[Perm::identity(4)][..]));
    }

    #[test]
    fn trivial_h_matches_group_search() {
        let g = symmetric(4);
        for a in crate::group::all_subgroups(&g) {
            let inst = PairInstance::new(g.clone(), a.clone(), PermGroup::trivial(4)).unwrap();
            let pair = search_pair_transversal(&inst, 100_000).status;
            let group = is_perfect_code_group(&g, &a, 100_000).unwrap().status;
            assert_eq!(pair, group, "A of order {}", a.order());
        }
    }

    #[test]
    fn necessary_condition_is_coset_invariant() {
        let inst = d8_triple();
        for x in inst.g.elements() {
            assert!(necessary_condition_at(&inst, x).unwrap());
        }
    }

    #[test]
    fn hypothesis_is_enforced() {
        let c4 = crate::catalog::cyclic(4);
        let h = PermGroup::closure(4, &[c4.generators()[0].pow(2)]).unwrap();
        let inst = PairInstance::new(c4.clone(), c4, h).unwrap();
        assert!(matches!(
            symmetric_transversal_search(&inst, 100),
            Err(Error::HypothesisNotMet(_))
        ));
    }
}
