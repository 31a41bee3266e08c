//! Brute-force oracles built from raw permutation products, compared with
//! the library's decision procedures on every small case.

use perfect_codes::catalog::{alternating, cyclic, dihedral, quaternion8, symmetric};
use perfect_codes::codes::{decide_pair, is_perfect_code_group, PairInstance, Status};
use perfect_codes::group::{all_subgroups, PermGroup};
use perfect_codes::perm::Perm;

fn pos(elems: &[Perm], p: &Perm) -> usize {
    elems.iter().position(|q| q == p).expect("closed under products")
}

/// Tries every inverse-closed connection set `S ⊆ G \ {e}` and reports
/// whether `A` is a perfect code of `Cay(G, S)` (every `g ∉ A` has exactly
/// one neighbour `sg` in `A`).
fn cayley_oracle(g: &PermGroup, a: &PermGroup) -> bool {
    let elems = g.elements();
    let n = elems.len();
    let id = Perm::identity(g.degree());
    // classes {s, s^-1}
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut done = vec![false; n];
    for (i, s) in elems.iter().enumerate() {
        if *s == id || done[i] {
            continue;
        }
        let j = pos(elems, &s.inverse());
        done[i] = true;
        done[j] = true;
        classes.push(if i == j { vec![i] } else { vec![i, j] });
    }
    let outside: Vec<usize> = (0..n).filter(|&v| !a.contains(&elems[v])).collect();
    // hits[c][i]: number of s in class c with s * outside[i] in A
    let hits: Vec<Vec<u32>> = classes
        .iter()
        .map(|c| {
            outside
                .iter()
                .map(|&v| c.iter().filter(|&&s| a.contains(&elems[s].then(&elems[v]))).count() as u32)
                .collect()
        })
        .collect();
    let k = classes.len();
    assert!(k < 24, "too many classes for brute force");
    (0u64..1 << k).any(|mask| {
        outside.iter().enumerate().all(|(i, _)| {
            (0..k).filter(|c| mask >> c & 1 == 1).map(|c| hits[c][i]).sum::<u32>() == 1
        })
    })
}

/// Tries every inverse-closed union `U` of `H`-double cosets outside `H`
/// and tests whether the cosets of `H` in `A` form a perfect code of
/// `Cos(G, H, U)`, where `xH ~ yH` iff `x^-1 y ∈ U`.
fn coset_oracle(g: &PermGroup, a: &PermGroup, h: &PermGroup) -> Option<bool> {
    let elems = g.elements();
    let n = elems.len();
    let mut double_of = vec![usize::MAX; n];
    let mut doubles: Vec<Vec<usize>> = Vec::new();
    for (i, x) in elems.iter().enumerate() {
        if double_of[i] != usize::MAX {
            continue;
        }
        let mut d: Vec<usize> = h
            .elements()
            .iter()
            .flat_map(|s| h.elements().iter().map(move |t| pos(elems, &s.then(x).then(t))))
            .collect();
        d.sort();
        d.dedup();
        for &j in &d {
            double_of[j] = doubles.len();
        }
        doubles.push(d);
    }
    let in_h = double_of[pos(elems, &Perm::identity(g.degree()))];
    // classes HxH ∪ Hx^-1H, excluding H itself
    let mut class_of_double = vec![usize::MAX; doubles.len()];
    let mut classes = 0;
    for (d, members) in doubles.iter().enumerate() {
        if d == in_h || class_of_double[d] != usize::MAX {
            continue;
        }
        let inv = double_of[pos(elems, &elems[members[0]].inverse())];
        class_of_double[d] = classes;
        class_of_double[inv] = classes;
        classes += 1;
    }
    if classes > 16 {
        return None;
    }
    // left cosets of H, one representative each
    let mut reps: Vec<usize> = Vec::new();
    let mut covered = vec![false; n];
    for (i, x) in elems.iter().enumerate() {
        if covered[i] {
            continue;
        }
        for t in h.elements() {
            covered[pos(elems, &x.then(t))] = true;
        }
        reps.push(i);
    }
    let in_code: Vec<bool> = reps.iter().map(|&r| a.contains(&elems[r])).collect();
    let between = |u: usize, v: usize| double_of[pos(elems, &elems[reps[u]].inverse().then(&elems[reps[v]]))];
    Some((0u64..1 << classes).any(|mask| {
        let adjacent = |u: usize, v: usize| {
            let d = between(u, v);
            d != in_h && mask >> class_of_double[d] & 1 == 1
        };
        (0..reps.len())
            .filter(|&u| !in_code[u])
            .all(|u| (0..reps.len()).filter(|&v| in_code[v] && adjacent(u, v)).count() == 1)
    }))
}

fn small_groups() -> Vec<(&'static str, PermGroup)> {
    vec![
        ("C4", cyclic(4)),
        ("C6", cyclic(6)),
        ("S3", symmetric(3)),
        ("D8", dihedral(8)),
        ("Q8", quaternion8()),
        ("D12", dihedral(12)),
        ("A4", alternating(4)),
        ("S4", symmetric(4)),
    ]
}

#[test]
fn group_codes_match_cayley_graph_brute_force() {
    for (name, g) in small_groups() {
        for a in all_subgroups(&g) {
            let expected = cayley_oracle(&g, &a);
            let v = is_perfect_code_group(&g, &a, 10_000_000).unwrap();
            assert_ne!(v.status, Status::Unknown);
            assert_eq!(v.is_positive(), expected, "{name}, A of order {} generated by {:?}", a.order(), a.generators());
        }
    }
}

#[test]
fn pair_codes_match_coset_graph_brute_force() {
    let mut compared = 0;
    for (name, g) in small_groups() {
        let subs = all_subgroups(&g);
        for a in &subs {
            for h in subs.iter().filter(|h| h.is_subgroup_of(a)) {
                let Some(expected) = coset_oracle(&g, a, h) else { continue };
                let inst = PairInstance::new(g.clone(), a.clone(), h.clone()).unwrap();
                let d = decide_pair(&inst, 10_000_000).unwrap();
                assert_ne!(d.verdict.status, Status::Unknown);
                assert_eq!(
                    d.verdict.is_positive(),
                    expected,
                    "{name}: |A| = {}, |H| = {}",
                    a.order(),
                    h.order()
                );
                compared += 1;
            }
        }
    }
    assert!(compared > 300, "only {compared} pairs compared");
}

#[test]
fn literal_and_independent_modes_agree_on_subgroup_codes() {
    use perfect_codes::graphs::{find_witness_connection_set, Mode};
    let mut compared = 0;
    for (name, g) in small_groups() {
        let subs = all_subgroups(&g);
        for a in &subs {
            for h in subs.iter().filter(|h| h.is_subgroup_of(a)) {
                let inst = PairInstance::new(g.clone(), a.clone(), h.clone()).unwrap();
                let literal = match find_witness_connection_set(&inst, Mode::Literal, 1 << 16) {
                    Ok(w) => w.is_some(),
                    Err(_) => continue,
                };
                let independent = find_witness_connection_set(&inst, Mode::Independent, 1 << 16)
                    .unwrap()
                    .is_some();
                assert_eq!(literal, independent, "{name}: |A| = {}, |H| = {}", a.order(), h.order());
                compared += 1;
            }
        }
    }
    assert!(compared > 300);
}
