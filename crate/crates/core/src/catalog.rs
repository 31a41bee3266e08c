//! Named small groups used by tests, the survey, and the command line.

use crate::error::{Error, ParseError, Result};
use crate::group::PermGroup;
use crate::perm::Perm;

pub fn symmetric(n: usize) -> PermGroup {
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(Perm::transposition(n, 0, 1));
    }
    if n >= 3 {
        gens.push(Perm::cycle_on_prefix(n, n));
    }
    PermGroup::closure(n, &gens).expect("symmetric group within cap")
}

pub fn alternating(n: usize) -> PermGroup {
    let gens: Vec<Perm> = (2..n)
        .map(|k| Perm::from_cycles(n, &[vec![0, 1, k]]).unwrap())
        .collect();
    PermGroup::closure(n, &gens).expect("alternating group within cap")
}

/// Cyclic group of order `n` acting regularly on `n` points.
pub fn cyclic(n: usize) -> PermGroup {
    PermGroup::closure(n, &[Perm::cycle_on_prefix(n, n)]).unwrap()
}

/// Dihedral group of the given order `2k`, acting on the `k`-gon for
/// `k >= 3`; order 4 is the Klein group on four points.
pub fn dihedral(order: usize) -> PermGroup {
    assert!(order >= 2 && order % 2 == 0, "dihedral order must be even");
    let k = order / 2;
    match k {
        1 => cyclic(2),
        2 => PermGroup::closure(
            4,
            &[
                Perm::transposition(4, 0, 1),
                Perm::transposition(4, 2, 3),
            ],
        )
        .unwrap(),
        _ => {
            let rot = Perm::cycle_on_prefix(k, k);
            let refl = Perm::from_images((0..k).map(|i| (k - i) % k).collect()).unwrap();
            PermGroup::closure(k, &[rot, refl]).unwrap()
        }
    }
}

/// Quaternion group of order 8 in its regular representation.
pub fn quaternion8() -> PermGroup {
    // elements 0..8 encode ±1, ±i, ±j, ±k as sign * unit with index 2*unit + sign
    fn mul(x: usize, y: usize) -> usize {
        let (ux, sx) = (x / 2, x % 2);
        let (uy, sy) = (y / 2, y % 2);
        // unit products: table[ux][uy] = (unit, negate)
        const TABLE: [[(usize, usize); 4]; 4] = [
            [(0, 0), (1, 0), (2, 0), (3, 0)],
            [(1, 0), (0, 1), (3, 0), (2, 1)],
            [(2, 0), (3, 1), (0, 1), (1, 0)],
            [(3, 0), (2, 0), (1, 1), (0, 1)],
        ];
        let (u, s) = TABLE[ux][uy];
        2 * u + (sx + sy + s) % 2
    }
    let right = |g: usize| Perm::from_images((0..8).map(|x| mul(x, g)).collect()).unwrap();
    PermGroup::closure(8, &[right(2), right(4)]).unwrap()
}

/// `AGL(1,p)` on the points `0..p`, generated by `v -> v+1` and
/// `v -> v*w` for the smallest primitive root `w`.
pub fn affine_general_linear(p: usize) -> PermGroup {
    let w = smallest_primitive_root(p);
    let shift = Perm::from_images((0..p).map(|v| (v + 1) % p).collect()).unwrap();
    let scale = Perm::from_images((0..p).map(|v| (v * w) % p).collect()).unwrap();
    PermGroup::closure(p, &[shift, scale]).unwrap()
}

pub(crate) fn smallest_primitive_root(p: usize) -> usize {
    if p == 2 {
        return 1;
    }
    (2..p)
        .find(|&w| {
            let mut x = 1;
            for k in 1..p {
                x = x * w % p;
                if x == 1 {
                    return k == p - 1;
                }
            }
            false
        })
        .expect("prime has a primitive root")
}

/// 2x2 matrices over `F_p` acting on the right of the `p^2 - 1` nonzero row
/// vectors. Point `i` is the vector `(x, y)` with `x + p*y = i + 1`.
fn matrix_group(p: usize, mats: &[[[usize; 2]; 2]]) -> PermGroup {
    let n = p * p - 1;
    let gens: Vec<Perm> = mats
        .iter()
        .map(|m| {
            let images = (0..n)
                .map(|i| {
                    let (x, y) = ((i + 1) % p, (i + 1) / p);
                    let nx = (x * m[0][0] + y * m[1][0]) % p;
                    let ny = (x * m[0][1] + y * m[1][1]) % p;
                    nx + p * ny - 1
                })
                .collect();
            Perm::from_images(images).unwrap()
        })
        .collect();
    PermGroup::closure(n, &gens).unwrap()
}

pub fn special_linear_2(p: usize) -> PermGroup {
    matrix_group(p, &[[[1, 1], [0, 1]], [[1, 0], [1, 1]]])
}

pub fn general_linear_2(p: usize) -> PermGroup {
    let w = smallest_primitive_root(p);
    matrix_group(p, &[[[1, 1], [0, 1]], [[1, 0], [1, 1]], [[w, 0], [0, 1]]])
}

/// Direct product acting on the disjoint union of the two point sets.
pub fn direct_product(a: &PermGroup, b: &PermGroup) -> PermGroup {
    let (da, db) = (a.degree(), b.degree());
    let lift_a = |p: &Perm| {
        Perm::from_images((0..da + db).map(|i| if i < da { p.apply(i) } else { i }).collect())
            .unwrap()
    };
    let lift_b = |p: &Perm| {
        Perm::from_images(
            (0..da + db)
                .map(|i| if i < da { i } else { da + p.apply(i - da) })
                .collect(),
        )
        .unwrap()
    };
    let gens: Vec<Perm> = a
        .generators()
        .iter()
        .map(lift_a)
        .chain(b.generators().iter().map(lift_b))
        .collect();
    PermGroup::closure(da + db, &gens).unwrap()
}

/// `Sym(points)` embedded in `Sym(degree)`, fixing every other point.
pub fn symmetric_on(degree: usize, points: &[usize]) -> PermGroup {
    let mut gens = Vec::new();
    if points.len() >= 2 {
        gens.push(Perm::from_cycles(degree, &[vec![points[0], points[1]]]).unwrap());
    }
    if points.len() >= 3 {
        gens.push(Perm::from_cycles(degree, &[points.to_vec()]).unwrap());
    }
    PermGroup::closure(degree, &gens).unwrap()
}

/// Resolves names such as `S4`, `A5`, `C6`, `D8`, `Q8`, `SL2_3`, `GL2_3`,
/// `AGL1_5`.
pub fn preset(name: &str) -> Result<PermGroup> {
    let name = name.trim();
    let unknown = || Error::Parse(ParseError::UnknownPreset(name.to_string()));
    let num = |s: &str| s.parse::<usize>().map_err(|_| unknown());
    let upper = name.to_ascii_uppercase();
    let small = |n: usize| if n <= 9 { Ok(n) } else { Err(unknown()) };
    if upper == "Q8" {
        return Ok(quaternion8());
    }
    if let Some(p) = upper.strip_prefix("SL2_") {
        return prime_param(num(p)?, 7).map(special_linear_2);
    }
    if let Some(p) = upper.strip_prefix("GL2_") {
        return prime_param(num(p)?, 7).map(general_linear_2);
    }
    if let Some(p) = upper.strip_prefix("AGL1_") {
        return prime_param(num(p)?, 97).map(affine_general_linear);
    }
    if let Some(n) = upper.strip_prefix('S') {
        return Ok(symmetric(small(num(n)?)?));
    }
    if let Some(n) = upper.strip_prefix('A') {
        return Ok(alternating(small(num(n)?)?));
    }
    if let Some(n) = upper.strip_prefix('C') {
        let n = num(n)?;
        return if n >= 1 && n <= 4096 { Ok(cyclic(n)) } else { Err(unknown()) };
    }
    if let Some(n) = upper.strip_prefix('D') {
        let n = num(n)?;
        return if n >= 2 && n % 2 == 0 && n <= 8192 { Ok(dihedral(n)) } else { Err(unknown()) };
    }
    Err(unknown())
}

fn prime_param(p: usize, max: usize) -> Result<usize> {
    if p < 2 || p > max || !(2..p).all(|d| p % d != 0) {
        return Err(Error::ParameterOutOfRange(format!("{p} is not a prime in 2..={max}")));
    }
    Ok(p)
}

/// Groups of order at most 48 (plus the two smallest field constructions'
/// ambient groups are added by callers) used for exhaustive subgroup scans.
pub fn small_catalog() -> Vec<(String, PermGroup)> {
    let c2 = cyclic(2);
    vec![
        ("C2".into(), cyclic(2)),
        ("C3".into(), cyclic(3)),
        ("C4".into(), cyclic(4)),
        ("C2xC2".into(), dihedral(4)),
        ("C6".into(), cyclic(6)),
        ("S3".into(), symmetric(3)),
        ("C8".into(), cyclic(8)),
        ("C4xC2".into(), direct_product(&cyclic(4), &c2)),
        ("C2xC2xC2".into(), direct_product(&dihedral(4), &c2)),
        ("D8".into(), dihedral(8)),
        ("Q8".into(), quaternion8()),
        ("D12".into(), dihedral(12)),
        ("A4".into(), alternating(4)),
        ("D16".into(), dihedral(16)),
        ("AGL1_5".into(), affine_general_linear(5)),
        ("S4".into(), symmetric(4)),
        ("SL2_3".into(), special_linear_2(3)),
        ("S3xS3".into(), direct_product(&symmetric(3), &symmetric(3))),
        ("Q8xC2".into(), direct_product(&quaternion8(), &c2)),
        ("S4xC2".into(), direct_product(&symmetric(4), &c2)),
        ("GL2_3".into(), general_linear_2(3)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(symmetric(5).order(), 120);
        assert_eq!(alternating(5).order(), 60);
        assert_eq!(alternating(2).order(), 1);
        assert_eq!(dihedral(8).order(), 8);
        assert_eq!(dihedral(4).order(), 4);
        assert_eq!(quaternion8().order(), 8);
        assert_eq!(affine_general_linear(7).order(), 42);
        assert_eq!(special_linear_2(3).order(), 24);
        assert_eq!(general_linear_2(3).order(), 48);
    }

    #[test]
    fn quaternion_has_one_involution() {
        let q = quaternion8();
        assert_eq!(q.elements().iter().filter(|x| x.is_involution()).count(), 1);
    }

    #[test]
    fn catalog_orders_are_small() {
        for (name, g) in small_catalog() {
            assert!(g.order() <= 48, "{name}");
        }
    }

    #[test]
    fn presets_resolve() {
        assert_eq!(preset("S4").unwrap().order(), 24);
        assert_eq!(preset("a5").unwrap().order(), 60);
        assert_eq!(preset("D8").unwrap().order(), 8);
        assert_eq!(preset("C6").unwrap().order(), 6);
        assert_eq!(preset("Q8").unwrap().order(), 8);
        assert_eq!(preset("GL2_3").unwrap().order(), 48);
        assert_eq!(preset("AGL1_7").unwrap().order(), 42);
        assert!(preset("X3").is_err());
        assert!(preset("D7").is_err());
        assert!(preset("AGL1_9").is_err());
    }
}
