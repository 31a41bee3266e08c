//! Maximal subgroups of `Sym(n)`, `n <= 7`, up to conjugacy.
//!
//! The list follows the classical O'Nan–Scott description for small degree:
//! the alternating group, the intransitive `Sym(m) × Sym(n-m)` with
//! `n != 2m`, the imprimitive wreath products, and the primitive groups
//! `AGL(1, p)` (prime degree) and `PGL(2, 5)` (degree 6). Maximality is
//! taken from the classification; what is verified here is orders,
//! properness, and that no entry lies inside a conjugate of another.

use serde::Serialize;

use crate::catalog::{affine_general_linear, alternating, symmetric, symmetric_on};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::{parse_perm_list, Perm};

#[derive(Clone, Debug, Serialize)]
pub struct MaximalEntry {
    pub name: String,
    pub order: usize,
    pub generators: Vec<Perm>,
    #[serde(skip)]
    pub group: PermGroup,
}

fn entry(name: impl Into<String>, group: PermGroup) -> MaximalEntry {
    MaximalEntry {
        name: name.into(),
        order: group.order(),
        generators: group.generators().to_vec(),
        group,
    }
}

fn from_cycles(n: usize, gens: &str) -> PermGroup {
    let gens = parse_perm_list(n, gens).expect("catalog generators parse");
    PermGroup::closure(n, &gens).expect("catalog group within cap")
}

fn intransitive(m: usize, n: usize) -> PermGroup {
    let mut gens = symmetric_on(n, &(0..m).collect::<Vec<_>>()).generators().to_vec();
    gens.extend_from_slice(symmetric_on(n, &(m..n).collect::<Vec<_>>()).generators());
    PermGroup::closure(n, &gens).unwrap()
}

/// Representatives of the conjugacy classes of maximal subgroups of
/// `Sym(n)` for `2 <= n <= 7`.
pub fn maximal_catalog(n: usize) -> Result<Vec<MaximalEntry>> {
    if !(2..=7).contains(&n) {
        return Err(Error::ParameterOutOfRange(format!("catalog covers 2 <= n <= 7, got {n}")));
    }
    let mut out = vec![entry(format!("A{n}"), alternating(n))];
    // Sym(m) x Sym(n-m) with the larger factor first; m = n/2 is not maximal
    for m in (n / 2 + 1..n).rev() {
        out.push(entry(format!("S{m}xS{}", n - m), intransitive(m, n)));
    }
    match n {
        4 => out.push(entry("S2wrS2", from_cycles(4, "[(1 2),(1 3)(2 4)]"))),
        5 => out.push(entry("AGL1_5", affine_general_linear(5))),
        6 => {
            out.push(entry("S2wrS3", from_cycles(6, "[(1 2),(1 3)(2 4),(1 3 5)(2 4 6)]")));
            out.push(entry("S3wrS2", from_cycles(6, "[(1 2),(1 2 3),(1 4)(2 5)(3 6)]")));
            // PGL(2,5) on the projective line {0,..,4,inf}: z+1, 2z, -1/z
            out.push(entry("PGL2_5", from_cycles(6, "[(1 2 3 4 5),(2 3 5 4),(1 6)(2 5)]")));
        }
        7 => out.push(entry("AGL1_7", affine_general_linear(7))),
        _ => {}
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogCertificate {
    pub degree: usize,
    pub entries: usize,
    pub all_proper: bool,
    /// No entry is contained in a conjugate of a different entry.
    pub pairwise_non_containment: bool,
}

impl CatalogCertificate {
    pub fn holds(&self) -> bool {
        self.all_proper && self.pairwise_non_containment
    }
}

pub fn certify_catalog(n: usize) -> Result<CatalogCertificate> {
    let entries = maximal_catalog(n)?;
    let g = symmetric(n);
    let all_proper = entries
        .iter()
        .all(|e| e.group.is_subgroup_of(&g) && e.order < g.order());
    let mut non_containment = true;
    for (i, a) in entries.iter().enumerate() {
        for (j, b) in entries.iter().enumerate() {
            if i == j || a.order > b.order || b.order % a.order != 0 {
                continue;
            }
            let inside_conjugate = g.elements().iter().any(|x| {
                a.group
                    .generators()
                    .iter()
                    .all(|t| b.group.contains(&t.conjugate_by(x)))
            });
            if inside_conjugate {
                non_containment = false;
            }
        }
    }
    Ok(CatalogCertificate {
        degree: n,
        entries: entries.len(),
        all_proper,
        pairwise_non_containment: non_containment,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orders(n: usize) -> Vec<usize> {
        maximal_catalog(n).unwrap().iter().map(|e| e.order).collect()
    }

    #[test]
    fn catalog_orders() {
        assert_eq!(orders(3), [3, 2]);
        assert_eq!(orders(4), [12, 6, 8]);
        assert_eq!(orders(5), [60, 24, 12, 20]);
        assert_eq!(orders(6), [360, 120, 48, 48, 72, 120]);
        assert_eq!(orders(7), [2520, 720, 240, 144, 42]);
    }

    #[test]
    fn catalog_certificates() {
        for n in 2..=7 {
            assert!(certify_catalog(n).unwrap().holds(), "degree {n}");
        }
    }

    #[test]
    fn out_of_range() {
        assert!(maximal_catalog(8).is_err());
        assert!(maximal_catalog(1).is_err());
    }

    #[test]
    fn projective_group_is_transitive() {
        let pgl = &maximal_catalog(6).unwrap()[5].group;
        let orbit: std::collections::BTreeSet<usize> = pgl.elements().iter().map(|p| p.apply(0)).collect();
        assert_eq!(orbit.len(), 6);
    }
}
