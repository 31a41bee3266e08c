//! Arithmetic in `GF(p^f)` in a polynomial basis, and the permutations of the
//! field induced by translations, by multiplication with a primitive element
//! (a Singer cycle), and by the Frobenius map.
//!
//! Internally an element is coded as the integer `sum c_i p^i`. As points of
//! `Sym(F_q)` the elements are ordered lexicographically by coefficient
//! vector `[c0, c1, ..]`, so `0` is point 0.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Perm;

pub const DEFAULT_FIELD_CAP: u64 = 4096;

/// An element of `GF(p^f)` as its coefficient vector, low degree first.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FieldElement {
    pub coeffs: Vec<u32>,
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

impl Serialize for FieldElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug)]
pub struct FieldSpec {
    p: u32,
    f: u32,
    q: u32,
    /// Monic modulus, low degree first, length `f + 1`.
    modulus: Vec<u32>,
    omega: u32,
    /// `exp[k] = omega^k` for `k < q - 1`.
    exp: Vec<u32>,
    /// Inverse of `exp`; entry 0 is unused.
    log: Vec<u32>,
}

/// Header data recorded in reports.
#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct FieldHeader {
    pub p: u32,
    pub f: u32,
    pub modulus: Vec<u32>,
    pub omega: FieldElement,
    pub point_order: &'static str,
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

pub fn make_field(p: u32, f: u32) -> Result<FieldSpec> {
    make_field_with_cap(p, f, DEFAULT_FIELD_CAP)
}

pub fn make_field_with_cap(p: u32, f: u32, cap: u64) -> Result<FieldSpec> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if f == 0 {
        return Err(Error::ParameterOutOfRange("extension degree must be at least 1".into()));
    }
    let order = (p as u64).checked_pow(f).unwrap_or(u64::MAX);
    if order > cap {
        return Err(Error::FieldTooLarge { order, cap });
    }
    let q = order as u32;
    let mut first_irreducible: Option<Vec<u32>> = None;
    // lower coefficients enumerated lexicographically on (c0, c1, .., c_{f-1})
    for rank in 0..q {
        let mut modulus = lex_digits(rank, p, f);
        modulus.push(1);
        if !poly::is_irreducible(&modulus, p) {
            continue;
        }
        let x = if f == 1 { (p - modulus[0]) % p } else { p };
        let spec = FieldSpec::with_generator(p, f, modulus.clone(), x);
        if let Some(spec) = spec {
            return Ok(spec);
        }
        first_irreducible.get_or_insert(modulus);
    }
    let modulus = first_irreducible.expect("an irreducible polynomial of every degree exists");
    for rank in 1..q {
        let code = code_from_digits(&lex_digits(rank, p, f), p);
        if let Some(spec) = FieldSpec::with_generator(p, f, modulus.clone(), code) {
            return Ok(spec);
        }
    }
    unreachable!("the multiplicative group of a finite field is cyclic")
}

/// Digits of `rank` in base `p`, most significant first, as `f` coefficients.
fn lex_digits(mut rank: u32, p: u32, f: u32) -> Vec<u32> {
    let mut out = vec![0; f as usize];
    for slot in out.iter_mut().rev() {
        *slot = rank % p;
        rank /= p;
    }
    out
}

fn code_from_digits(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

impl FieldSpec {
    /// Builds tables with `omega = candidate` if it has order `q - 1`.
    fn with_generator(p: u32, f: u32, modulus: Vec<u32>, candidate: u32) -> Option<Self> {
        let q = p.pow(f);
        let mut spec = FieldSpec {
            p,
            f,
            q,
            modulus,
            omega: candidate,
            exp: Vec::new(),
            log: Vec::new(),
        };
        if candidate == 0 {
            return None;
        }
        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut cur = 1u32;
        for k in 0..q - 1 {
            if k > 0 && cur == 1 {
                return None;
            }
            exp.push(cur);
            cur = spec.mul_slow(cur, candidate);
        }
        if cur != 1 {
            return None;
        }
        let mut log = vec![0u32; q as usize];
        for (k, &e) in exp.iter().enumerate() {
            log[e as usize] = k as u32;
        }
        spec.exp = exp;
        spec.log = log;
        Some(spec)
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let pa = self.coeffs_of(a);
        let pb = self.coeffs_of(b);
        let prod = poly::mul(&pa, &pb, self.p);
        let r = poly::rem(&prod, &self.modulus, self.p);
        let mut c = r;
        c.resize(self.f as usize, 0);
        code_from_digits(&c, self.p)
    }

    fn coeffs_of(&self, mut code: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.f as usize);
        for _ in 0..self.f {
            out.push(code % self.p);
            code /= self.p;
        }
        out
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.f
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn header(&self) -> FieldHeader {
        FieldHeader {
            p: self.p,
            f: self.f,
            modulus: self.modulus.clone(),
            omega: self.element(self.omega),
            point_order: "coefficient-vector lexicographic, zero first",
        }
    }

    // --- element codes ---

    pub fn zero(&self) -> u32 {
        0
    }

    pub fn one(&self) -> u32 {
        1
    }

    pub fn omega(&self) -> u32 {
        self.omega
    }

    /// `omega^k` for any integer `k`.
    pub fn omega_pow(&self, k: i64) -> u32 {
        let m = (self.q - 1) as i64;
        self.exp[k.rem_euclid(m) as usize]
    }

    pub fn log_omega(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.f {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.f {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let m = self.q - 1;
        self.exp[((self.log[a as usize] + self.log[b as usize]) % m) as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let m = self.q - 1;
        Ok(self.exp[((m - self.log[a as usize]) % m) as usize])
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let m = (self.q - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (e % m)) % m) as usize]
    }

    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.p as u64)
    }

    pub fn element(&self, code: u32) -> FieldElement {
        FieldElement {
            coeffs: self.coeffs_of(code),
        }
    }

    pub fn code(&self, e: &FieldElement) -> Result<u32> {
        if e.coeffs.len() != self.f as usize || e.coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidInput(format!("{e} is not an element of GF({})", self.q)));
        }
        Ok(code_from_digits(&e.coeffs, self.p))
    }

    /// Point of `Sym(F_q)` representing the element with the given code.
    pub fn point_of(&self, code: u32) -> usize {
        let c = self.coeffs_of(code);
        c.iter().fold(0usize, |acc, &d| acc * self.p as usize + d as usize)
    }

    pub fn code_of_point(&self, point: usize) -> u32 {
        code_from_digits(&lex_digits(point as u32, self.p, self.f), self.p)
    }

    /// Permutation of the points induced by a map on element codes.
    pub fn permutation(&self, map: impl Fn(u32) -> u32) -> Perm {
        let images = (0..self.q as usize)
            .map(|pt| self.point_of(map(self.code_of_point(pt))))
            .collect();
        Perm::from_images(images).expect("field map is a bijection")
    }

    /// `R(u): v -> v + u`.
    pub fn translation(&self, u: u32) -> Perm {
        self.permutation(|v| self.add(v, u))
    }

    // --- FieldElement facing operations ---

    pub fn add_elements(&self, u: &FieldElement, v: &FieldElement) -> Result<FieldElement> {
        Ok(self.element(self.add(self.code(u)?, self.code(v)?)))
    }

    pub fn mul_elements(&self, u: &FieldElement, v: &FieldElement) -> Result<FieldElement> {
        Ok(self.element(self.mul(self.code(u)?, self.code(v)?)))
    }

    pub fn inv_element(&self, u: &FieldElement) -> Result<FieldElement> {
        Ok(self.element(self.inv(self.code(u)?)?))
    }

    pub fn frobenius_element(&self, u: &FieldElement) -> Result<FieldElement> {
        Ok(self.element(self.frobenius(self.code(u)?)))
    }
}

/// The permutation data of a field: translations `V`, the Singer cycle `s`,
/// and the Frobenius map `phi`.
#[derive(Clone, Debug)]
pub struct FieldPermutations {
    pub translations_group: PermGroup,
    pub singer: Perm,
    pub frobenius: Perm,
    /// `R(u)` indexed by element code `u`.
    pub translations: Vec<Perm>,
}

pub fn embed_permutations(spec: &FieldSpec) -> FieldPermutations {
    let translations: Vec<Perm> = (0..spec.order()).map(|u| spec.translation(u)).collect();
    // the additive group is generated by translations along the basis
    let basis: Vec<Perm> = (0..spec.degree())
        .map(|i| translations[spec.characteristic().pow(i) as usize].clone())
        .collect();
    let translations_group =
        PermGroup::closure(spec.order() as usize, &basis).expect("translation group is small");
    FieldPermutations {
        translations_group,
        singer: spec.permutation(|v| spec.mul(v, spec.omega())),
        frobenius: spec.permutation(|v| spec.frobenius(v)),
        translations,
    }
}

/// Dense polynomial helpers over `GF(p)`, low degree first.
mod poly {
    fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        let mut r = 1u64;
        let (mut b, mut e) = (a as u64, p as u64 - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p as u64;
            }
            b = b * b % p as u64;
            e >>= 1;
        }
        r as u32
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u32; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(out)
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let m = trim(m.to_vec());
        let mut r = trim(a.to_vec());
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p);
        while r.len() > dm {
            let shift = r.len() - 1 - dm;
            let factor = r[r.len() - 1] * lead_inv % p;
            for (i, &c) in m.iter().enumerate() {
                let idx = i + shift;
                r[idx] = (r[idx] + p - factor * c % p) % p;
            }
            r = trim(r);
        }
        r
    }

    fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(out)
    }

    fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    fn powmod(base: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
        let mut acc = vec![1u32];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(&mul(&acc, &b, p), m, p);
            }
            b = rem(&mul(&b, &b, p), m, p);
            e >>= 1;
        }
        acc
    }

    /// Rabin-style test: no factor of degree `k <= f/2`, checked through
    /// `gcd(m, x^(p^k) - x)`.
    pub fn is_irreducible(m: &[u32], p: u32) -> bool {
        let f = m.len() - 1;
        if f <= 1 {
            return f == 1;
        }
        let x = vec![0u32, 1];
        let mut xp = x.clone();
        for _ in 1..=f / 2 {
            xp = powmod(&xp, p as u64, m, p);
            let g = gcd(m, &sub(&xp, &x, p), p);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }

}

#[cfg(test)]
mod tests {
    use super::*;

    /// Multiplicative order by repeated multiplication.
    fn brute_order(spec: &FieldSpec, a: u32) -> u32 {
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = spec.mul_slow(x, a);
            k += 1;
        }
        k
    }

    #[test]
    fn gf2_has_omega_one() {
        let f = make_field(2, 1).unwrap();
        assert_eq!(f.omega(), 1);
        assert_eq!(f.order(), 2);
    }

    #[test]
    fn gf27_omega_order() {
        let f = make_field(3, 3).unwrap();
        let w = f.omega();
        assert_eq!(brute_order(&f, w), 26);
        assert_ne!(f.pow(w, 13), 1);
        assert_ne!(f.pow(w, 2), 1);
        assert_eq!(f.pow(w, 26), 1);
    }

    #[test]
    fn gf16_omega_order() {
        let f = make_field(2, 4).unwrap();
        assert_eq!(brute_order(&f, f.omega()), 15);
    }

    #[test]
    fn gf4_multiplication_table() {
        let f = make_field(2, 2).unwrap();
        // the only irreducible quadratic over GF(2) is x^2 + x + 1
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let w = f.omega();
        let w2 = f.mul(w, w);
        assert_eq!(f.element(w2).coeffs, vec![1, 1]); // w^2 = w + 1
        assert_eq!(f.mul(w2, w), 1);
    }

    #[test]
    fn errors() {
        assert_eq!(make_field(4, 1).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(make_field(2, 13), Err(Error::FieldTooLarge { .. })));
        let f = make_field(3, 2).unwrap();
        assert_eq!(f.inv(0), Err(Error::DivisionByZero));
        assert!(f.code(&FieldElement { coeffs: vec![3, 0] }).is_err());
    }

    #[test]
    fn identities_and_frobenius_order() {
        for (p, fdeg) in [(2, 3), (3, 2), (5, 2), (7, 1)] {
            let f = make_field(p, fdeg).unwrap();
            for u in 0..f.order() {
                assert_eq!(f.add(u, 0), u);
                assert_eq!(f.mul(u, 1), u);
                assert_eq!(f.add(u, f.neg(u)), 0);
                let mut x = u;
                for _ in 0..fdeg {
                    x = f.frobenius(x);
                }
                assert_eq!(x, u);
                if u != 0 {
                    assert_eq!(f.mul(u, f.inv(u).unwrap()), 1);
                }
            }
        }
    }

    #[test]
    fn frobenius_is_an_automorphism() {
        let f = make_field(3, 3).unwrap();
        for u in 0..f.order() {
            for v in 0..f.order() {
                assert_eq!(f.frobenius(f.add(u, v)), f.add(f.frobenius(u), f.frobenius(v)));
                assert_eq!(f.frobenius(f.mul(u, v)), f.mul(f.frobenius(u), f.frobenius(v)));
            }
        }
    }

    #[test]
    fn log_tables_agree_with_polynomial_multiplication() {
        let f = make_field(2, 5).unwrap();
        for u in 0..f.order() {
            for v in 0..f.order() {
                assert_eq!(f.mul(u, v), f.mul_slow(u, v));
            }
        }
    }

    #[test]
    fn point_order_is_lexicographic() {
        let f = make_field(3, 2).unwrap();
        let mut prev: Option<Vec<u32>> = None;
        for pt in 0..f.order() as usize {
            let c = f.element(f.code_of_point(pt)).coeffs;
            if let Some(prev) = prev {
                assert!(prev < c);
            }
            assert_eq!(f.point_of(f.code_of_point(pt)), pt);
            prev = Some(c);
        }
        assert_eq!(f.code_of_point(0), 0);
    }

    #[test]
    fn element_facing_api() {
        let f = make_field(2, 2).unwrap();
        let w = f.element(f.omega());
        let one = f.element(1);
        assert_eq!(f.mul_elements(&w, &one).unwrap(), w);
        assert_eq!(f.add_elements(&w, &w).unwrap(), f.element(0));
        assert_eq!(f.inv_element(&f.element(0)), Err(Error::DivisionByZero));
        assert_eq!(w.to_string(), "[0,1]");
        assert_eq!(f.frobenius_element(&w).unwrap(), f.mul_elements(&w, &w).unwrap());
    }

    #[test]
    fn conjugation_identities_on_permutations() {
        for (p, fdeg) in [(2, 4), (3, 3), (5, 2), (2, 6), (7, 1)] {
            let f = make_field(p, fdeg).unwrap();
            let e = embed_permutations(&f);
            let q = f.order() as u64;
            assert_eq!(e.singer.order(), q - 1);
            assert_eq!(e.frobenius.order(), fdeg as u64);
            assert!(e.singer.fixes(0));
            assert!(e.frobenius.fixes(0));
            assert!(e.frobenius.fixes(f.point_of(1)));
            assert_eq!(e.singer.conjugate_by(&e.frobenius), e.singer.pow(p as u64));
            assert_eq!(e.translations_group.order() as u64, q);
            for u in 0..f.order() {
                let r = &e.translations[u as usize];
                assert_eq!(r.conjugate_by(&e.singer), f.translation(f.mul(u, f.omega())));
                assert_eq!(r.conjugate_by(&e.frobenius), f.translation(f.frobenius(u)));
                assert_eq!(r.order(), if u == 0 { 1 } else { p as u64 });
            }
            assert!(crate::group::is_semiregular(
                &e.translations_group,
                &(0..q as usize).collect::<Vec<_>>()
            )
            .unwrap());
        }
    }
}
