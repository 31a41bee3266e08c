//! Explicit involutions inside cosets, used as witnesses for the
//! involution-in-coset condition.

use crate::error::{Error, Result};
use crate::group::{is_semiregular, PermGroup};
use crate::perm::Perm;

/// For `x ∈ Sym(n)` with `x^2 ∈ Sym(m) × Sym(n-m)`: the product of the
/// transpositions `(k, k^x)` over `k < m` with `k^x >= m`. It is an
/// involution (or `e`) lying in `(Sym(m) × Sym(n-m)) x`.
pub fn intransitive_involution(x: &Perm, m: usize, n: usize) -> Result<Perm> {
    if x.degree() != n || m == 0 || m >= n {
        return Err(Error::PreconditionViolated(format!(
            "need a permutation of degree {n} and 1 <= m < n"
        )));
    }
    let sq = x.square();
    if (0..m).any(|k| sq.apply(k) >= m) {
        return Err(Error::PreconditionViolated(format!(
            "{x} squares outside Sym({m}) x Sym({})",
            n - m
        )));
    }
    let swaps: Vec<Vec<usize>> = (0..m)
        .filter(|&k| x.apply(k) >= m)
        .map(|k| vec![k, x.apply(k)])
        .collect();
    Ok(Perm::from_cycles(n, &swaps)?)
}

/// For `Q` semiregular of order `2^t` on a domain of size `2^t * s` (`s`
/// odd) and `x ∈ N_G(Q) \ Q` with `x^2 ∈ Q`: an involution in `xQ`, namely
/// the nontrivial element of `<Q, x>` fixing the smallest point of the
/// first orbit of length `2^t`.
pub fn semiregular_normalizer_involution(
    g: &PermGroup,
    q: &PermGroup,
    x: &Perm,
    domain: &[usize],
) -> Result<Perm> {
    let fail = |m: &str| Err(Error::PreconditionViolated(m.into()));
    let order = q.order();
    if !order.is_power_of_two() || order < 2 {
        return fail("Q does not have order 2^t with t >= 1");
    }
    if domain.len() % order != 0 || (domain.len() / order) % 2 == 0 {
        return fail("domain size is not 2^t times an odd number");
    }
    if !q.is_subgroup_of(g) {
        return fail("Q is not a subgroup of G");
    }
    if !is_semiregular(g, domain).map(|_| true).unwrap_or(false) {
        return fail("domain is not invariant under G");
    }
    if !is_semiregular(q, domain)? {
        return fail("Q is not semiregular on the domain");
    }
    if !g.contains(x) {
        return fail("x is not in G");
    }
    if q.contains(x) {
        return fail("x lies in Q");
    }
    if q.generators().iter().any(|t| !q.contains(&t.conjugate_by(x))) {
        return fail("x does not normalise Q");
    }
    if !q.contains(&x.square()) {
        return fail("x^2 is not in Q");
    }
    let mut gens = q.generators().to_vec();
    gens.push(x.clone());
    let big = PermGroup::closure(g.degree(), &gens)?;
    let mut seen = vec![false; g.degree()];
    for &start in domain {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start] = true;
        let mut head = 0;
        while head < orbit.len() {
            let v = orbit[head];
            head += 1;
            for s in big.generators() {
                let w = s.apply(v);
                if !seen[w] {
                    seen[w] = true;
                    orbit.push(w);
                }
            }
        }
        if orbit.len() != order {
            continue;
        }
        let alpha = *orbit.iter().min().unwrap();
        let y = big
            .elements()
            .iter()
            .find(|y| !y.is_identity() && y.fixes(alpha))
            .expect("point stabiliser of a short orbit has order 2")
            .clone();
        debug_assert!(q.contains(&x.inverse().then(&y)));
        return Ok(y);
    }
    fail("no orbit of length |Q|")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::symmetric;

    #[test]
    fn intransitive_examples() {
        let x = Perm::parse_cycles(4, "(1 3)(2 4)").unwrap();
        assert_eq!(intransitive_involution(&x, 2, 4).unwrap(), x);
        let inside = Perm::parse_cycles(4, "(1 2)(3 4)").unwrap();
        assert!(intransitive_involution(&inside, 2, 4).unwrap().is_identity());
        let bad = Perm::parse_cycles(4, "(1 3 2 4)").unwrap();
        assert!(matches!(
            intransitive_involution(&bad, 1, 4),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn involution_returned_for_multiplication_by_minus_one() {
        // G = Sym({1,..,4}) inside Sym(5), Q = <v -> 2v> of order 4 on F_5^*
        let g = crate::catalog::symmetric_on(5, &[1, 2, 3, 4]);
        let q = PermGroup::closure(5, &[Perm::parse_cycles(5, "(2 3 5 4)").unwrap()]).unwrap();
        let domain = [1, 2, 3, 4];
        let mut found = 0;
        for x in g.elements() {
            if q.contains(x) || !q.contains(&x.square()) {
                continue;
            }
            if q.generators().iter().any(|t| !q.contains(&t.conjugate_by(x))) {
                continue;
            }
            let y = semiregular_normalizer_involution(&g, &q, x, &domain).unwrap();
            assert!(y.is_involution());
            assert!(q.contains(&x.inverse().then(&y)));
            found += 1;
        }
        assert!(found > 0);
        let s5 = symmetric(5);
        let x = Perm::parse_cycles(5, "(2 3)").unwrap();
        assert!(semiregular_normalizer_involution(&s5, &q, &x, &domain).is_err());
    }
}
