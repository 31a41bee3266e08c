//! Explicit transversal for `Sym(m)` in the pair `(Sym(n), Sym(l))`.
//!
//! Points are 0-based: `[m]` is `{0, .., m-1}`. An injection `sigma` from
//! `{m, .., n-1}` into `{0, .., n-1}` is stored as its image list, entry
//! `i - m` holding the image of `i`.

use serde::Serialize;

use crate::codes::{is_left_transversal, pair_condition_holds};
use crate::constructions::TripleSpec;
use crate::error::{Error, Result};
use crate::perm::Perm;

fn check_params(l: usize, m: usize, n: usize) -> Result<()> {
    if 1 <= l && l < m && m < n && n <= 8 {
        Ok(())
    } else {
        Err(Error::ParameterOutOfRange(format!(
            "need 1 <= l < m < n <= 8, got ({l},{m},{n})"
        )))
    }
}

/// All injections from `{m, .., n-1}` into `{0, .., n-1}`, lexicographic.
pub fn injections(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n - m);
    let mut used = vec![false; n];
    fn rec(k: usize, n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(k, n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    rec(n - m, n, &mut cur, &mut used, &mut out);
    out
}

fn preimage(sigma: &[usize], m: usize, point: usize) -> Option<usize> {
    sigma.iter().position(|&v| v == point).map(|i| i + m)
}

fn check_injection(sigma: &[usize], m: usize, n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if sigma.len() != n - m {
        return Err(Error::InvalidInput(format!("injection needs {} images", n - m)));
    }
    for &v in sigma {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return Err(Error::InvalidInput("not an injection into the point set".into()));
        }
    }
    Ok(())
}

/// The backward chain `k, k^{sigma^-1}, ..., k^{sigma^-j}` for `k < m`,
/// stopping at the first point outside the image of `sigma`.
pub fn preimage_chain(sigma: &[usize], m: usize, k: usize) -> Vec<usize> {
    let n = sigma.len() + m;
    let mut chain = vec![k];
    let mut cur = k;
    while let Some(prev) = preimage(sigma, m, cur) {
        // the chain visits distinct points, so it is shorter than n
        assert!(chain.len() < n, "preimage chain longer than the point count");
        chain.push(prev);
        cur = prev;
    }
    chain
}

/// `x(sigma)`: agrees with `sigma` beyond `m`, and sends `k < m` to the end
/// of its preimage chain.
pub fn chain_element(sigma: &[usize], m: usize) -> Perm {
    let n = sigma.len() + m;
    let mut images = vec![0; n];
    for k in 0..m {
        images[k] = *preimage_chain(sigma, m, k).last().unwrap();
    }
    images[m..].copy_from_slice(sigma);
    Perm::from_images(images).expect("x(sigma) is a permutation")
}

/// Transversal `{x(sigma)}` indexed by the injections in lexicographic
/// order.
#[derive(Clone, Debug, Serialize)]
pub struct ChainTransversal {
    pub injections: Vec<Vec<usize>>,
    pub elements: Vec<Perm>,
}

pub fn chain_transversal(l: usize, m: usize, n: usize) -> Result<ChainTransversal> {
    check_params(l, m, n)?;
    let injections = injections(m, n);
    let elements = injections.iter().map(|s| chain_element(s, m)).collect();
    Ok(ChainTransversal { injections, elements })
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainCertificate {
    pub size: usize,
    pub expected_size: usize,
    pub is_transversal: bool,
    /// `X Sym(l) = Sym(l) X^-1`.
    pub pair_condition: bool,
    /// Every cycle of every `x(sigma)` meets `[m]` at most once.
    pub one_low_point_per_cycle: bool,
}

impl ChainCertificate {
    pub fn holds(&self) -> bool {
        self.size == self.expected_size
            && self.is_transversal
            && self.pair_condition
            && self.one_low_point_per_cycle
    }
}

/// Re-checks the chain transversal against the instance of
/// [`build_sym_chain`](super::build_sym_chain).
pub fn certify_chain_transversal(spec: &TripleSpec, x: &ChainTransversal) -> Result<ChainCertificate> {
    let inst = &spec.instance;
    let m = spec.parameters[1] as usize;
    let expected_size = inst.g.order() / inst.a.order();
    Ok(ChainCertificate {
        size: x.elements.len(),
        expected_size,
        is_transversal: is_left_transversal(&inst.g, &inst.a, &x.elements),
        pair_condition: pair_condition_holds(&inst.g, &inst.a, &inst.h, &x.elements),
        one_low_point_per_cycle: x
            .elements
            .iter()
            .all(|p| p.cycles().iter().all(|c| c.iter().filter(|&&v| v < m).count() <= 1)),
    })
}

/// `y(sigma)` for `h ∈ Sym(l)`: cycles of `x(sigma)` inside `{m, ..}` are
/// inverted, and each chain cycle `(k^{sigma^-j}, .., k^{sigma^-1}, k)`
/// becomes `(k^{sigma^-1}, .., k^{sigma^-j}, k^h)`.
pub fn chain_partner(l: usize, m: usize, n: usize, sigma: &[usize], h: &Perm) -> Result<Perm> {
    check_params(l, m, n)?;
    check_injection(sigma, m, n)?;
    if h.degree() != n || (l..n).any(|i| !h.fixes(i)) {
        return Err(Error::InvalidInput(format!("{h} is not in Sym({l})")));
    }
    let x = chain_element(sigma, m);
    let mut images: Vec<usize> = (0..n).collect();
    for cycle in x.cycles() {
        if cycle.iter().all(|&v| v >= m) {
            let len = cycle.len();
            for t in 0..len {
                images[cycle[(t + 1) % len]] = cycle[t];
            }
        }
    }
    for k in 0..m {
        let chain = preimage_chain(sigma, m, k);
        if chain.len() == 1 {
            continue;
        }
        let mut seq: Vec<usize> = chain[1..].to_vec();
        seq.push(h.apply(k));
        let len = seq.len();
        for t in 0..len {
            images[seq[t]] = seq[(t + 1) % len];
        }
    }
    Ok(Perm::from_images(images)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_chain() {
        let x = chain_transversal(1, 2, 3).unwrap();
        assert_eq!(x.injections.len(), 3);
        let mut shown: Vec<String> = x.elements.iter().map(|p| p.to_string()).collect();
        shown.sort();
        assert_eq!(shown, ["()", "(1 3)", "(2 3)"]);
    }

    #[test]
    fn identity_injection_gives_identity() {
        let sigma: Vec<usize> = (2..5).collect();
        assert!(chain_element(&sigma, 2).is_identity());
        let y = chain_partner(1, 2, 5, &sigma, &Perm::identity(5)).unwrap();
        assert!(y.is_identity());
    }

    #[test]
    fn partner_of_three_to_one() {
        // 1-based sigma: 3 -> 1
        let sigma = vec![0];
        let x = chain_element(&sigma, 2);
        let y = chain_partner(1, 2, 3, &sigma, &Perm::identity(3)).unwrap();
        assert_eq!(y.to_string(), "(1 3)");
        assert!(x.then(&y).is_identity());
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(chain_transversal(2, 2, 3).is_err());
        let h = Perm::transposition(4, 0, 3);
        assert!(matches!(chain_partner(2, 3, 4, &[0], &h), Err(Error::InvalidInput(_))));
        assert!(chain_partner(2, 3, 4, &[0, 1], &Perm::identity(4)).is_err());
    }
}
