//! Builders for the group triples studied here.

use super::{Claim, Family, TripleSpec};
use crate::catalog::{affine_general_linear, symmetric, symmetric_on};
use crate::codes::PairInstance;
use crate::error::{Error, Result};
use crate::ffield::{embed_permutations, is_prime, make_field, DEFAULT_FIELD_CAP};
use crate::group::PermGroup;
use crate::perm::Perm;

fn out_of_range(msg: String) -> Error {
    Error::ParameterOutOfRange(msg)
}

/// Dihedral group of order `8n` on a `4n`-gon with `A = <a^{2n}, b>` and
/// `H = <b>`, where `a` is the rotation `i -> i+1` and `b` the reflection
/// `i -> -i`.
pub fn build_dihedral(n: usize) -> Result<TripleSpec> {
    if n == 0 || n > 256 {
        return Err(out_of_range(format!("dihedral parameter {n} outside 1..=256")));
    }
    let k = 4 * n;
    let a = Perm::cycle_on_prefix(k, k);
    let b = Perm::from_images((0..k).map(|i| (k - i) % k).collect())?;
    let g = PermGroup::closure(k, &[a.clone(), b.clone()])?;
    let big = PermGroup::closure(k, &[a.pow(2 * n as u64), b.clone()])?;
    let h = PermGroup::closure(k, &[b.clone()])?;
    Ok(TripleSpec {
        family: Family::Dihedral8n,
        parameters: vec![n as u64],
        instance: PairInstance::new(g, big, h)?,
        expected: vec![
            Claim::InvolutionInEveryCoset,
            Claim::NecessaryConditionHolds,
            Claim::NotPerfectCodeOfPair,
        ],
        named: vec![("a".into(), a), ("b".into(), b)],
        field: None,
    })
}

/// On `F_{4^d}`: `G = V ⋊ (<s^{2^d-1}> ⋊ <phi^d>)`, `A = V ⋊ <phi^d>`,
/// `H = <R(w), R(w^{2^d})>`.
pub fn build_field_c2(d: u32) -> Result<TripleSpec> {
    if !(2..=6).contains(&d) {
        return Err(out_of_range(format!("field-c2 parameter {d} outside 2..=6")));
    }
    let spec = make_field(2, 2 * d)?;
    let perms = embed_permutations(&spec);
    let q = spec.order() as usize;
    let v_gens = perms.translations_group.generators().to_vec();
    let s_power = perms.singer.pow((1u64 << d) - 1);
    let phi_power = perms.frobenius.pow(d as u64);
    let mut g_gens = v_gens.clone();
    g_gens.extend([s_power.clone(), phi_power.clone()]);
    let mut a_gens = v_gens;
    a_gens.push(phi_power.clone());
    let r_w = perms.translations[spec.omega() as usize].clone();
    let r_w2 = perms.translations[spec.omega_pow(1 << d) as usize].clone();
    let g = PermGroup::closure(q, &g_gens)?;
    let big = PermGroup::closure(q, &a_gens)?;
    let h = PermGroup::closure(q, &[r_w.clone(), r_w2.clone()])?;
    Ok(TripleSpec {
        family: Family::FieldC2,
        parameters: vec![d as u64],
        instance: PairInstance::new(g, big, h)?,
        expected: vec![
            Claim::DoubleCosetRatioTwoOutsideA,
            Claim::UnionRatioEvenOutsideA,
            Claim::NecessaryConditionHolds,
            Claim::ObstructionFires,
            Claim::NotPerfectCodeOfPair,
        ],
        named: vec![
            ("s^(2^d-1)".into(), s_power),
            ("phi^d".into(), phi_power),
            ("R(w)".into(), r_w),
            ("R(w^(2^d))".into(), r_w2),
        ],
        field: Some(spec.header()),
    })
}

/// `AΓL(1, p^f)` on `F_q`: `G = V ⋊ (<s> ⋊ <phi>)`, `A = V ⋊ <phi>`,
/// `H = <R(1)>`, for odd `p` and odd `f`.
pub fn build_field_agammal(p: u32, f: u32) -> Result<TripleSpec> {
    if p == 2 || !is_prime(p as u64) {
        return Err(out_of_range(format!("{p} is not an odd prime")));
    }
    if f % 2 == 0 {
        return Err(out_of_range(format!("extension degree {f} is not odd")));
    }
    let q = (p as u64).checked_pow(f).unwrap_or(u64::MAX);
    if q > DEFAULT_FIELD_CAP {
        return Err(out_of_range(format!("{p}^{f} exceeds the field cap")));
    }
    let spec = make_field(p, f)?;
    let perms = embed_permutations(&spec);
    let v_gens = perms.translations_group.generators().to_vec();
    let mut g_gens = v_gens.clone();
    g_gens.extend([perms.singer.clone(), perms.frobenius.clone()]);
    let mut a_gens = v_gens;
    a_gens.push(perms.frobenius.clone());
    let r1 = perms.translations[spec.one() as usize].clone();
    let n = q as usize;
    let g = PermGroup::closure(n, &g_gens)?;
    let big = PermGroup::closure(n, &a_gens)?;
    let h = PermGroup::closure(n, &[r1.clone()])?;
    let half_turn = perms.singer.pow((q - 1) / 2);
    let mut expected = vec![
        Claim::NecessaryConditionHolds,
        Claim::SelfPairedOnlyAtHalfTurn,
        Claim::AOddOrder,
        Claim::APerfectCodeOfG,
    ];
    if f == 1 {
        // R(1) generates V = A, so H = A is normal and trivially a code
        expected.push(Claim::PerfectCodeOfPair);
    } else {
        expected.extend([Claim::ObstructionFires, Claim::NotPerfectCodeOfPair]);
    }
    Ok(TripleSpec {
        family: Family::FieldAGammaL,
        parameters: vec![p as u64, f as u64],
        instance: PairInstance::new(g, big, h)?,
        expected,
        named: vec![
            ("s".into(), perms.singer),
            ("phi".into(), perms.frobenius),
            ("R(1)".into(), r1),
            ("s^((q-1)/2)".into(), half_turn),
        ],
        field: Some(spec.header()),
    })
}

/// `Sym(l) < Sym(m) < Sym(n)`, each the pointwise stabiliser of the points
/// beyond its degree.
pub fn build_sym_chain(l: usize, m: usize, n: usize) -> Result<TripleSpec> {
    if !(1 <= l && l < m && m < n && n <= 8) {
        return Err(out_of_range(format!("need 1 <= l < m < n <= 8, got ({l},{m},{n})")));
    }
    let prefix = |k: usize| symmetric_on(n, &(0..k).collect::<Vec<_>>());
    Ok(TripleSpec {
        family: Family::SymChain,
        parameters: vec![l as u64, m as u64, n as u64],
        instance: PairInstance::new(symmetric(n), prefix(m), prefix(l))?,
        expected: vec![Claim::ChainTransversalCertified, Claim::PerfectCodeOfPair],
        named: vec![],
        field: None,
    })
}

/// `Sym(m) × Sym(n-m)` in `Sym(n)`, paired with the trivial subgroup.
pub fn build_intransitive(m: usize, n: usize) -> Result<TripleSpec> {
    if !(1 <= m && m < n && n <= 9) {
        return Err(out_of_range(format!("need 1 <= m < n <= 9, got ({m},{n})")));
    }
    let low: Vec<Perm> = symmetric_on(n, &(0..m).collect::<Vec<_>>()).generators().to_vec();
    let high: Vec<Perm> = symmetric_on(n, &(m..n).collect::<Vec<_>>()).generators().to_vec();
    let big = PermGroup::closure(n, &[low, high].concat())?;
    Ok(TripleSpec {
        family: Family::IntransitiveMax,
        parameters: vec![m as u64, n as u64],
        instance: PairInstance::new(symmetric(n), big, PermGroup::trivial(n))?,
        expected: vec![Claim::APerfectCodeOfG, Claim::InvolutionWitnessesAccepted],
        named: vec![],
        field: None,
    })
}

/// `AGL(1, p)` in `Sym(p)`, paired with the trivial subgroup.
pub fn build_affine(p: usize) -> Result<TripleSpec> {
    if p == 2 || p > 13 || !is_prime(p as u64) {
        return Err(out_of_range(format!("{p} is not an odd prime <= 13")));
    }
    let g = symmetric_checked(p)?;
    Ok(TripleSpec {
        family: Family::Affine,
        parameters: vec![p as u64],
        instance: PairInstance::new(g, affine_general_linear(p), PermGroup::trivial(p))?,
        expected: vec![Claim::APerfectCodeOfG, Claim::SylowReductionAgrees],
        named: vec![],
        field: None,
    })
}

fn symmetric_checked(n: usize) -> Result<PermGroup> {
    let gens = [Perm::transposition(n, 0, 1), Perm::cycle_on_prefix(n, n)];
    PermGroup::closure(n, &gens)
}
