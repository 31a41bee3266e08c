//! Decision procedures for subgroup perfect codes.
//!
//! Two questions are answered here:
//!
//! * is a subgroup `A` a perfect code of a group `G` (some Cayley graph of
//!   `G` has `A` as a perfect code), and
//! * is `A` a perfect code of a pair `(G, H)` with `H <= A <= G` (the left
//!   cosets of `H` in `A` form a perfect code of some coset graph on `G/H`).
//!
//! Every positive answer carries a transversal witness that
//! [`certify`] re-checks from scratch; every negative answer names the
//! obstruction or exhausted search that produced it.

mod certify;
mod pair;
mod search;
mod subgroup;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{left_cosets_embedded, CosetDecomposition, Embedded, PermGroup};
use crate::perm::Perm;

pub use certify::{
    is_inverse_closed, is_left_transversal, pair_condition_holds, product_set,
    symmetric_condition_holds,
};
pub use pair::{
    decide_pair, decide_pair_with, necessary_condition, necessary_condition_at,
    normal_closure_obstruction, search_pair_transversal, symmetric_transversal_search,
    symmetric_transversals_per_union, DecideOptions, ObstructionCertificate, PairDecision,
};
pub(crate) use subgroup::CosetData;
pub use subgroup::{
    double_coset_condition, find_inverse_closed_transversal, inverse_closed_per_union,
    is_perfect_code_group, square_coset_condition, sylow_reduction_check, union_classes,
};

/// Default node budget for the backtracking searches.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Serialize, Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    PerfectCode,
    NotPerfectCode,
    Unknown,
}

/// Which procedure produced a verdict.
#[derive(Serialize, Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[serde(rename_all = "kebab-case")]
pub enum DecisionPath {
    /// Involution-in-coset condition over `x` with `x^2 ∈ A`.
    SquareCosetCondition,
    /// Involution-in-coset condition over `x` with `AxA = Ax^-1A`.
    DoubleCosetCondition,
    /// Search for an inverse-closed left transversal of `A` in `G`.
    InverseClosedTransversal,
    /// Inverse-closed transversals inside each `A{g,g^-1}A`.
    InverseClosedPerUnion,
    /// Search for a left transversal `X` with `XH = HX^-1`.
    PairTransversalSearch,
    /// Parity / conjugate-square necessary condition failed.
    NecessaryCondition,
    /// `H` nonnormal, a perfect code of `G`, and `H^G <= A <= N_G(H)`.
    NormalClosureObstruction,
    /// Search for an inverse-closed transversal `X` with `XH = HX`.
    SymmetricTransversalSearch,
    /// The same search, run independently inside each `A{g,g^-1}A`.
    SymmetricTransversalsPerUnion,
}

/// Decision outcome with its certificate.
#[derive(Serialize, Clone, Debug)]
pub struct Verdict {
    pub status: Status,
    pub decision_path: DecisionPath,
    /// Transversal witness for positive verdicts.
    pub witness: Option<Vec<Perm>>,
    /// Element violating a condition, for negative verdicts that have one.
    pub violating_element: Option<Perm>,
    pub search_nodes: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<ObstructionCertificate>,
    /// Wall-clock time; left empty unless the caller asks for timing so that
    /// reports stay reproducible.
    pub elapsed_ms: Option<u64>,
}

impl Verdict {
    pub fn positive(path: DecisionPath, witness: Vec<Perm>, nodes: u64) -> Self {
        Verdict {
            status: Status::PerfectCode,
            decision_path: path,
            witness: Some(witness),
            violating_element: None,
            search_nodes: nodes,
            obstruction: None,
            elapsed_ms: None,
        }
    }

    pub fn negative(path: DecisionPath, violating: Option<Perm>, nodes: u64) -> Self {
        Verdict {
            status: Status::NotPerfectCode,
            decision_path: path,
            witness: None,
            violating_element: violating,
            search_nodes: nodes,
            obstruction: None,
            elapsed_ms: None,
        }
    }

    pub fn unknown(path: DecisionPath, nodes: u64) -> Self {
        Verdict {
            status: Status::Unknown,
            decision_path: path,
            witness: None,
            violating_element: None,
            search_nodes: nodes,
            obstruction: None,
            elapsed_ms: None,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.status == Status::PerfectCode
    }
}

/// Outcome of a condition that quantifies over group elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Check {
    Holds,
    /// The first violating element in canonical order.
    Violated(Perm),
}

impl Check {
    pub fn holds(&self) -> bool {
        matches!(self, Check::Holds)
    }
}

/// Result of a budgeted backtracking search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Vec<Perm>),
    Exhausted,
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub outcome: SearchOutcome,
    pub nodes: u64,
}

impl SearchResult {
    pub fn found(&self) -> Option<&[Perm]> {
        match &self.outcome {
            SearchOutcome::Found(x) => Some(x),
            _ => None,
        }
    }
}

/// A validated triple `H <= A <= G` with its coset bookkeeping.
#[derive(Clone, Debug)]
pub struct PairInstance {
    pub g: PermGroup,
    pub a: PermGroup,
    pub h: PermGroup,
    pub cosets_a: CosetDecomposition,
    pub cosets_h: CosetDecomposition,
    pub(crate) a_emb: Embedded,
    pub(crate) h_emb: Embedded,
}

impl PairInstance {
    pub fn new(g: PermGroup, a: PermGroup, h: PermGroup) -> Result<Self> {
        let a_emb = g.embed(&a)?;
        let h_emb = g.embed(&h)?;
        if !h.is_subgroup_of(&a) {
            return Err(Error::NotASubgroup("H is not contained in A".into()));
        }
        let cosets_a = left_cosets_embedded(&g, &a_emb);
        let cosets_h = left_cosets_embedded(&g, &h_emb);
        Ok(PairInstance {
            g,
            a,
            h,
            cosets_a,
            cosets_h,
            a_emb,
            h_emb,
        })
    }

    pub fn index(&self) -> usize {
        self.cosets_a.len()
    }
}
