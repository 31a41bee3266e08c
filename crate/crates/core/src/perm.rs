//! Permutations on `{0, .., n-1}` acting on the right.
//!
//! Products follow the right-action convention used throughout group theory
//! texts and GAP: `p * q` applies `p` first and then `q`, so
//! `i^(p*q) = (i^p)^q`. Conjugation is `x^g = g^-1 * x * g`.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use crate::error::ParseError;

/// Point type. Every degree handled by this crate fits comfortably in 16 bits.
pub type Point = u16;

/// A permutation stored as its image array: `images[i]` is the image of `i`.
///
/// The derived ordering is lexicographic on the image array, which is the
/// canonical element order used for every enumerated group.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<Point>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        assert!(degree <= Point::MAX as usize + 1, "degree {degree} too large");
        Perm {
            images: (0..degree).map(|i| i as Point).collect(),
        }
    }

    /// Builds a permutation from its image array, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self, ParseError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in &images {
            if img >= n || seen[img] {
                return Err(ParseError::NotABijection);
            }
            seen[img] = true;
        }
        Ok(Perm {
            images: images.into_iter().map(|i| i as Point).collect(),
        })
    }

    /// Builds a permutation of the given degree from disjoint cycles with
    /// 0-based points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, ParseError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &pt) in cycle.iter().enumerate() {
                if pt >= degree {
                    return Err(ParseError::PointOutOfRange { point: pt + 1, degree });
                }
                if touched[pt] {
                    return Err(ParseError::RepeatedPoint(pt + 1));
                }
                touched[pt] = true;
                images[pt] = cycle[(k + 1) % cycle.len()];
            }
        }
        Perm::from_images(images)
    }

    /// Transposition of two 0-based points.
    pub fn transposition(degree: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<Point> = (0..degree).map(|i| i as Point).collect();
        images.swap(a, b);
        Perm { images }
    }

    /// The cycle `(0 1 .. k-1)` inside `Sym(degree)`.
    pub fn cycle_on_prefix(degree: usize, k: usize) -> Self {
        let mut images: Vec<Point> = (0..degree).map(|i| i as Point).collect();
        for (i, img) in images.iter_mut().enumerate().take(k) {
            *img = ((i + 1) % k) as Point;
        }
        Perm { images }
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[Point] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| i == p as usize)
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0 as Point; self.images.len()];
        for (i, &p) in self.images.iter().enumerate() {
            inv[p as usize] = i as Point;
        }
        Perm { images: inv }
    }

    /// `self * other`: apply `self`, then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: self.images.iter().map(|&p| other.images[p as usize]).collect(),
        }
    }

    /// `self^g = g^-1 * self * g`.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        // i^(g^-1 x g) = ((i^g^-1)^x)^g, equivalently (j^x)^g at position j^g.
        let mut images = vec![0 as Point; self.images.len()];
        for (j, &xj) in self.images.iter().enumerate() {
            images[g.images[j] as usize] = g.images[xj as usize];
        }
        Perm { images }
    }

    pub fn pow(&self, mut e: u64) -> Perm {
        let mut base = self.clone();
        let mut acc = Perm::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }

    pub fn square(&self) -> Perm {
        self.then(self)
    }

    pub fn is_involution(&self) -> bool {
        !self.is_identity() && self.square().is_identity()
    }

    pub fn fixes(&self, point: usize) -> bool {
        self.apply(point) == point
    }

    /// Element order, computed as the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    /// Disjoint cycles of length at least two, each starting at its smallest
    /// point, listed by increasing first point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut cur = self.apply(start);
            while cur != start {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.apply(cur);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Parses 1-based disjoint cycle notation such as `(1 2 3)(4 5)` or `()`.
    /// Commas between points are accepted.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Perm, ParseError> {
        let cycles = parse_cycle_list(text)?;
        let zero_based: Vec<Vec<usize>> = cycles
            .into_iter()
            .map(|c| {
                c.into_iter()
                    .map(|p| {
                        if p == 0 || p > degree {
                            Err(ParseError::PointOutOfRange { point: p, degree })
                        } else {
                            Ok(p - 1)
                        }
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<_, _>>()?;
        Perm::from_cycles(degree, &zero_based)
    }

    /// Largest 1-based point mentioned in a cycle string; used to infer a
    /// degree for raw generator input.
    pub fn max_point_in(text: &str) -> Result<usize, ParseError> {
        Ok(parse_cycle_list(text)?
            .into_iter()
            .flatten()
            .max()
            .unwrap_or(0))
    }
}

fn parse_cycle_list(text: &str) -> Result<Vec<Vec<usize>>, ParseError> {
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    if rest.is_empty() {
        return Err(ParseError::Empty);
    }
    while !rest.is_empty() {
        let Some(body) = rest.strip_prefix('(') else {
            return Err(ParseError::Syntax(text.to_string()));
        };
        let close = body
            .find(')')
            .ok_or_else(|| ParseError::Syntax(text.to_string()))?;
        let inner = &body[..close];
        let points = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<usize>()
                    .map_err(|_| ParseError::Syntax(text.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if points.len() > 1 {
            cycles.push(points);
        } else if points.len() == 1 && points[0] == 0 {
            return Err(ParseError::PointOutOfRange { point: 0, degree: 0 });
        }
        rest = body[close + 1..].trim_start();
    }
    Ok(cycles)
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl Mul for &Perm {
    type Output = Perm;

    fn mul(self, rhs: &Perm) -> Perm {
        self.then(rhs)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses a bracketed, comma separated list of permutations in cycle notation,
/// e.g. `[(1 2 3),(1 2)]`. Commas inside parentheses are point separators.
pub fn parse_perm_list(degree: usize, text: &str) -> Result<Vec<Perm>, ParseError> {
    split_perm_list(text)?
        .iter()
        .map(|s| Perm::parse_cycles(degree, s))
        .collect()
}

/// Splits `[(..),(..)]` into its element strings without parsing them.
pub fn split_perm_list(text: &str) -> Result<Vec<String>, ParseError> {
    let t = text.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .unwrap_or(t);
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for ch in inner.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                if depth == 0 {
                    return Err(ParseError::Syntax(text.to_string()));
                }
                depth -= 1;
                cur.push(ch);
            }
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur).trim().to_string());
            }
            _ => cur.push(ch),
        }
    }
    if depth != 0 {
        return Err(ParseError::Syntax(text.to_string()));
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    if out.iter().any(|s| s.is_empty()) {
        return Err(ParseError::Syntax(text.to_string()));
    }
    Ok(out)
}

impl FromStr for Perm {
    type Err = ParseError;

    /// Parses cycle notation with the degree inferred from the largest point.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let degree = Perm::max_point_in(s)?;
        Perm::parse_cycles(degree, s)
    }
}

impl serde::Serialize for Perm {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn right_action_product() {
        // (1 2) then (2 3): 1 -> 2 -> 3, so 1 maps to 3.
        let a = Perm::parse_cycles(3, "(1 2)").unwrap();
        let b = Perm::parse_cycles(3, "(2 3)").unwrap();
        let ab = &a * &b;
        assert_eq!(ab.apply(0), 2);
        assert_eq!(ab.to_string(), "(1 3 2)");
    }

    #[test]
    fn conjugation_matches_definition() {
        let x = Perm::parse_cycles(4, "(1 2 3)").unwrap();
        let g = Perm::parse_cycles(4, "(1 4)(2 3)").unwrap();
        let direct = g.inverse().then(&x).then(&g);
        assert_eq!(x.conjugate_by(&g), direct);
    }

    #[test]
    fn identity_prints_as_empty_cycle() {
        assert_eq!(Perm::identity(5).to_string(), "()");
        assert_eq!(Perm::parse_cycles(5, "()").unwrap(), Perm::identity(5));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            Perm::parse_cycles(3, "(1 4)"),
            Err(ParseError::PointOutOfRange { .. })
        ));
        assert!(matches!(
            Perm::parse_cycles(3, "(1 2)(2 3)"),
            Err(ParseError::RepeatedPoint(2))
        ));
        assert!(Perm::parse_cycles(3, "1 2").is_err());
        assert!(Perm::parse_cycles(3, "(1 2").is_err());
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn list_parsing_with_commas() {
        let gens = parse_perm_list(4, "[(1,2,3),(1 2), (3 4)]").unwrap();
        assert_eq!(gens.len(), 3);
        assert_eq!(gens[0].to_string(), "(1 2 3)");
    }

    #[test]
    fn order_and_power() {
        let x = Perm::parse_cycles(5, "(1 2 3)(4 5)").unwrap();
        assert_eq!(x.order(), 6);
        assert!(x.pow(6).is_identity());
        assert!(!x.pow(3).is_identity());
    }

    fn arb_perm(max_degree: usize) -> impl Strategy<Value = Perm> {
        (1..=max_degree)
            .prop_flat_map(|n| Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
            .prop_map(|v| Perm::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn inverse_is_two_sided(p in arb_perm(12)) {
            prop_assert!(p.then(&p.inverse()).is_identity());
            prop_assert!(p.inverse().then(&p).is_identity());
        }

        #[test]
        fn cycle_notation_round_trips(p in arb_perm(12)) {
            let text = p.to_string();
            prop_assert_eq!(Perm::parse_cycles(p.degree(), &text).unwrap(), p);
        }
    }
}
