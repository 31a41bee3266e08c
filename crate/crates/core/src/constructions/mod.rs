//! Explicit families of triples `H <= A <= G`, the transversals and
//! involutions that certify their properties, and a catalog of maximal
//! subgroups of small symmetric groups.

mod chain;
mod families;
mod involutions;
mod maximal;

use serde::Serialize;

use crate::codes::{
    decide_pair, is_perfect_code_group, necessary_condition, normal_closure_obstruction,
    sylow_reduction_check, CosetData, PairInstance, Status,
};
use crate::error::{Error, Result};
use crate::ffield::FieldHeader;
use crate::group::conjugate_index;
use crate::perm::Perm;

pub use chain::{
    certify_chain_transversal, chain_element, chain_partner, chain_transversal, injections,
    preimage_chain, ChainCertificate, ChainTransversal,
};
pub use families::{
    build_affine, build_dihedral, build_field_agammal, build_field_c2, build_intransitive,
    build_sym_chain,
};
pub use involutions::{intransitive_involution, semiregular_normalizer_involution};
pub use maximal::{certify_catalog, maximal_catalog, CatalogCertificate, MaximalEntry};

#[derive(Serialize, Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Dihedral8n,
    FieldC2,
    FieldAGammaL,
    SymChain,
    IntransitiveMax,
    Affine,
}

/// A property a family is known to have.
#[derive(Serialize, Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    /// Every left coset of `A` contains an element squaring to `e`.
    InvolutionInEveryCoset,
    /// Parity or conjugate-square condition at every `g`.
    NecessaryConditionHolds,
    /// `|AgA|/|A| = 2` for every `g` outside `A`.
    DoubleCosetRatioTwoOutsideA,
    /// `|A{g,g^-1}A|/|A|` is even for every `g` outside `A`.
    UnionRatioEvenOutsideA,
    /// The only coset `gA ≠ A` with `AgA = Ag^-1A` is `s^((q-1)/2) A`.
    SelfPairedOnlyAtHalfTurn,
    /// `H` nonnormal, a perfect code of `G`, and `H^G <= A <= N_G(H)`.
    ObstructionFires,
    AOddOrder,
    APerfectCodeOfG,
    NotPerfectCodeOfPair,
    PerfectCodeOfPair,
    /// The explicit chain transversal passes its certificate.
    ChainTransversalCertified,
    /// The explicit intransitive involution lies in `xA` for every `x` with
    /// `x^2 ∈ A`.
    InvolutionWitnessesAccepted,
    /// Deciding `A` and deciding its Sylow 2-subgroup agree.
    SylowReductionAgrees,
}

/// A built family member with the claims expected of it.
#[derive(Clone, Debug)]
pub struct TripleSpec {
    pub family: Family,
    pub parameters: Vec<u64>,
    pub instance: PairInstance,
    pub expected: Vec<Claim>,
    /// Distinguished elements of the construction.
    pub named: Vec<(String, Perm)>,
    pub field: Option<FieldHeader>,
}

#[derive(Serialize, Clone, Debug)]
pub struct TripleSummary {
    pub family: Family,
    pub parameters: Vec<u64>,
    pub degree: usize,
    pub order_g: usize,
    pub order_a: usize,
    pub order_h: usize,
    pub index_a: usize,
    pub index_h_in_a: usize,
    pub generators_g: Vec<Perm>,
    pub generators_a: Vec<Perm>,
    pub generators_h: Vec<Perm>,
    pub named: Vec<(String, Perm)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldHeader>,
}

impl TripleSpec {
    pub fn summary(&self) -> TripleSummary {
        let i = &self.instance;
        TripleSummary {
            family: self.family,
            parameters: self.parameters.clone(),
            degree: i.g.degree(),
            order_g: i.g.order(),
            order_a: i.a.order(),
            order_h: i.h.order(),
            index_a: i.index(),
            index_h_in_a: i.a.order() / i.h.order(),
            generators_g: i.g.generators().to_vec(),
            generators_a: i.a.generators().to_vec(),
            generators_h: i.h.generators().to_vec(),
            named: self.named.clone(),
            field: self.field.clone(),
        }
    }

    pub fn named(&self, name: &str) -> Option<&Perm> {
        self.named.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }
}

/// Builds a family member from `name:p1,p2,..`, e.g. `dihedral:1`,
/// `field-c2:2`, `agammal:3,3`, `sym-chain:1,2,3`, `affine:5`,
/// `intransitive:2,5`.
pub fn parse_family(text: &str) -> Result<TripleSpec> {
    let (name, params) = text
        .split_once(':')
        .ok_or_else(|| Error::InvalidInput(format!("expected family:params, got {text:?}")))?;
    let params: Vec<usize> = params
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::InvalidInput(format!("bad parameter list {params:?}")))?;
    let arity = |k: usize| {
        if params.len() == k {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!("{name} takes {k} parameter(s)")))
        }
    };
    match name.trim() {
        "dihedral" => arity(1).and_then(|_| build_dihedral(params[0])),
        "field-c2" => arity(1).and_then(|_| build_field_c2(params[0] as u32)),
        "agammal" => arity(2).and_then(|_| build_field_agammal(params[0] as u32, params[1] as u32)),
        "sym-chain" => arity(3).and_then(|_| build_sym_chain(params[0], params[1], params[2])),
        "affine" => arity(1).and_then(|_| build_affine(params[0])),
        "intransitive" => arity(2).and_then(|_| build_intransitive(params[0], params[1])),
        other => Err(Error::InvalidInput(format!("unknown family {other:?}"))),
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct ClaimCheck {
    pub claim: Claim,
    /// `None` when a search ran out of budget.
    pub holds: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

fn status_is(s: Status, want: Status) -> Option<bool> {
    match s {
        Status::Unknown => None,
        s => Some(s == want),
    }
}

/// Evaluates one claim on a built triple.
pub fn check_claim(spec: &TripleSpec, claim: Claim, budget: u64) -> Result<ClaimCheck> {
    let inst = &spec.instance;
    let g = &inst.g;
    let mut detail = None;
    let holds = match claim {
        Claim::InvolutionInEveryCoset => Some(
            inst.cosets_a
                .members
                .iter()
                .all(|m| m.iter().any(|&x| g.mul(x as usize, x as usize) == 0)),
        ),
        Claim::NecessaryConditionHolds => Some(necessary_condition(inst).holds()),
        Claim::DoubleCosetRatioTwoOutsideA | Claim::UnionRatioEvenOutsideA => {
            let data = CosetData::with_cosets(g, inst.a_emb.clone(), inst.cosets_a.clone());
            Some(inst.cosets_a.rep_indices.iter().skip(1).all(|&r| {
                if claim == Claim::DoubleCosetRatioTwoOutsideA {
                    conjugate_index(g, &inst.a_emb, r as usize) == 2
                } else {
                    data.union_ratio(r as usize) % 2 == 0
                }
            }))
        }
        Claim::SelfPairedOnlyAtHalfTurn => {
            let half = spec
                .named("s^((q-1)/2)")
                .ok_or_else(|| Error::InvalidInput("family has no half-turn element".into()))?;
            let target = inst.cosets_a.coset_of_element(g, half)?;
            let data = CosetData::with_cosets(g, inst.a_emb.clone(), inst.cosets_a.clone());
            let paired: Vec<usize> = (1..inst.index())
                .filter(|&c| {
                    let d = data.dc.of_coset[c] as usize;
                    data.dc_inverse[d] as usize == d
                })
                .collect();
            detail = Some(format!("self-paired cosets outside A: {paired:?}"));
            Some(paired == [target])
        }
        Claim::ObstructionFires => Some(normal_closure_obstruction(inst, budget)?.is_some()),
        Claim::AOddOrder => Some(inst.a.order() % 2 == 1),
        Claim::APerfectCodeOfG => {
            status_is(is_perfect_code_group(g, &inst.a, budget)?.status, Status::PerfectCode)
        }
        Claim::NotPerfectCodeOfPair | Claim::PerfectCodeOfPair => {
            let d = decide_pair(inst, budget)?;
            detail = Some(format!("{:?}", d.verdict.decision_path));
            let want = if claim == Claim::PerfectCodeOfPair {
                Status::PerfectCode
            } else {
                Status::NotPerfectCode
            };
            status_is(d.verdict.status, want)
        }
        Claim::ChainTransversalCertified => {
            let p = &spec.parameters;
            let x = chain_transversal(p[0] as usize, p[1] as usize, p[2] as usize)?;
            Some(certify_chain_transversal(spec, &x)?.holds())
        }
        Claim::InvolutionWitnessesAccepted => {
            let (m, n) = (spec.parameters[0] as usize, spec.parameters[1] as usize);
            let mut checked = 0usize;
            let mut ok = true;
            for x in g.elements() {
                if !inst.a.contains(&x.square()) {
                    continue;
                }
                let y = intransitive_involution(x, m, n)?;
                ok &= y.square().is_identity() && inst.a.contains(&x.inverse().then(&y));
                checked += 1;
            }
            detail = Some(format!("{checked} elements squaring into A"));
            Some(ok)
        }
        Claim::SylowReductionAgrees => {
            status_is(sylow_reduction_check(g, &inst.a, budget)?, Status::PerfectCode)
        }
    };
    Ok(ClaimCheck { claim, holds, detail })
}

/// Evaluates every expected claim of a triple.
pub fn check_claims(spec: &TripleSpec, budget: u64) -> Result<Vec<ClaimCheck>> {
    spec.expected.iter().map(|&c| check_claim(spec, c, budget)).collect()
}
