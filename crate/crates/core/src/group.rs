//! Permutation groups with fully enumerated element sets.
//!
//! Every group keeps its elements sorted in the canonical (lexicographic on
//! image arrays) order, so element index 0 is always the identity. Subgroup
//! computations are set computations over those indices.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;
use rustc_hash::{FxHashMap, FxHashSet};

use crate::error::{Error, Result};
use crate::perm::Perm;

/// Default upper bound on the number of elements a group may enumerate.
pub const DEFAULT_ENUMERATION_CAP: usize = 1_000_000;

/// A finitely generated permutation group together with its element list.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: FxHashMap<Perm, u32>,
    inverses: Vec<u32>,
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for PermGroup {}

impl PermGroup {
    /// Closure of `generators` under composition, with the default cap.
    pub fn closure(degree: usize, generators: &[Perm]) -> Result<Self> {
        Self::closure_with_cap(degree, generators, DEFAULT_ENUMERATION_CAP)
    }

    pub fn closure_with_cap(degree: usize, generators: &[Perm], cap: usize) -> Result<Self> {
        for g in generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let gens: Vec<Perm> = generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        let id = Perm::identity(degree);
        let mut seen: FxHashSet<Perm> = FxHashSet::default();
        seen.insert(id.clone());
        let mut elements = vec![id];
        let mut head = 0;
        while head < elements.len() {
            let x = elements[head].clone();
            head += 1;
            for g in &gens {
                let y = x.then(g);
                if !seen.contains(&y) {
                    if elements.len() >= cap {
                        return Err(Error::EnumerationCapExceeded { cap });
                    }
                    seen.insert(y.clone());
                    elements.push(y);
                }
            }
        }
        drop(seen);
        Ok(Self::from_sorted(degree, gens, elements))
    }

    fn from_sorted(degree: usize, generators: Vec<Perm>, mut elements: Vec<Perm>) -> Self {
        elements.sort_unstable();
        let index: FxHashMap<Perm, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        let inverses = elements.iter().map(|p| index[&p.inverse()]).collect();
        PermGroup {
            degree,
            generators,
            elements,
            index,
            inverses,
        }
    }

    /// Builds a group from an element set already known to be closed. A small
    /// generating set is chosen greedily in canonical order.
    pub fn from_closed_set(degree: usize, mut elements: Vec<Perm>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        let mut generators: Vec<Perm> = Vec::new();
        let mut span: FxHashSet<Perm> = FxHashSet::default();
        span.insert(Perm::identity(degree));
        for x in &elements {
            if span.contains(x) {
                continue;
            }
            generators.push(x.clone());
            // extend the span: closure of the previous span with the new generator
            let mut queue: Vec<Perm> = span.iter().cloned().collect();
            let mut head = 0;
            while head < queue.len() {
                let y = queue[head].clone();
                head += 1;
                for g in &generators {
                    let z = y.then(g);
                    if span.insert(z.clone()) {
                        queue.push(z);
                    }
                }
            }
            if span.len() == elements.len() {
                break;
            }
        }
        debug_assert_eq!(span.len(), elements.len(), "element set is not closed");
        Self::from_sorted(degree, generators, elements)
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_sorted(degree, Vec::new(), vec![Perm::identity(degree)])
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    #[inline]
    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    #[inline]
    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).map(|&i| i as usize)
    }

    pub fn contains(&self, p: &Perm) -> bool {
        p.degree() == self.degree && self.index.contains_key(p)
    }

    /// Index of the product `elements[i] * elements[j]`.
    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        let p = self.elements[i].then(&self.elements[j]);
        self.index[&p] as usize
    }

    #[inline]
    pub fn inv(&self, i: usize) -> usize {
        self.inverses[i] as usize
    }

    /// Index of `elements[i]^elements[g]`.
    #[inline]
    pub fn conj(&self, i: usize, g: usize) -> usize {
        let p = self.elements[i].conjugate_by(&self.elements[g]);
        self.index[&p] as usize
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    /// Element indices (in `self`) of a subgroup, or `NotASubgroup`.
    pub fn embed(&self, sub: &PermGroup) -> Result<Embedded> {
        if sub.degree != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: sub.degree,
            });
        }
        let mut mask = FixedBitSet::with_capacity(self.order());
        let mut elems = Vec::with_capacity(sub.order());
        for p in &sub.elements {
            let i = self
                .index_of(p)
                .ok_or_else(|| Error::NotASubgroup(p.to_string()))?;
            mask.insert(i);
            elems.push(i as u32);
        }
        Ok(Embedded { elems, mask })
    }

    /// Subgroup whose element set is given by indices into `self`.
    pub fn subgroup_from_indices(&self, indices: impl IntoIterator<Item = usize>) -> PermGroup {
        let elems = indices.into_iter().map(|i| self.elements[i].clone()).collect();
        PermGroup::from_closed_set(self.degree, elems)
    }

    /// Subgroup of `self` generated by elements given as indices. Closure is
    /// computed on indices, so it stays inside `self`.
    pub fn subgroup_generated_by(&self, gens: &[usize]) -> PermGroup {
        let mask = self.closure_mask(gens);
        let gens_perm: Vec<Perm> = gens
            .iter()
            .filter(|&&g| g != 0)
            .map(|&g| self.elements[g].clone())
            .collect();
        let elements = mask.ones().map(|i| self.elements[i].clone()).collect();
        PermGroup::from_sorted(self.degree, gens_perm, elements)
    }

    /// Closure of a set of element indices under multiplication, as a mask.
    pub fn closure_mask(&self, gens: &[usize]) -> FixedBitSet {
        let mut mask = FixedBitSet::with_capacity(self.order());
        mask.insert(0);
        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !mask.contains(y) {
                    mask.insert(y);
                    queue.push(y);
                }
            }
        }
        mask
    }

    /// Checks membership of `g` and returns its index.
    pub fn require(&self, g: &Perm) -> Result<usize> {
        self.index_of(g)
            .ok_or_else(|| Error::ElementNotInGroup(g.to_string()))
    }
}

/// A subgroup expressed through element indices of an ambient group.
#[derive(Clone, Debug)]
pub struct Embedded {
    pub elems: Vec<u32>,
    pub mask: FixedBitSet,
}

impl Embedded {
    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.mask.contains(i)
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }
}

/// Left cosets `xA` of a subgroup in an enumerated group.
#[derive(Clone, Debug)]
pub struct CosetDecomposition {
    /// Canonical representative of each coset: its smallest element.
    pub representatives: Vec<Perm>,
    /// Ambient element indices of the representatives.
    pub rep_indices: Vec<u32>,
    /// Coset number of every ambient element.
    pub coset_of: Vec<u32>,
    /// Ambient element indices of each coset, in the order `rep * a` for `a`
    /// running through the subgroup.
    pub members: Vec<Vec<u32>>,
    pub subgroup_order: usize,
}

impl CosetDecomposition {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn coset_of_element(&self, g: &PermGroup, x: &Perm) -> Result<usize> {
        Ok(self.coset_of[g.require(x)?] as usize)
    }
}

/// Partition of `G` into left cosets of `A`, numbered by increasing
/// representative.
pub fn left_cosets(g: &PermGroup, a: &PermGroup) -> Result<CosetDecomposition> {
    let emb = g.embed(a)?;
    Ok(left_cosets_embedded(g, &emb))
}

pub fn left_cosets_embedded(g: &PermGroup, a: &Embedded) -> CosetDecomposition {
    let n = g.order();
    let mut coset_of = vec![u32::MAX; n];
    let mut reps = Vec::new();
    let mut members = Vec::new();
    for x in 0..n {
        if coset_of[x] != u32::MAX {
            continue;
        }
        // x is the smallest unassigned element, hence the smallest of its coset
        let c = reps.len() as u32;
        reps.push(x as u32);
        let mut coset = Vec::with_capacity(a.len());
        for &h in &a.elems {
            let y = g.mul(x, h as usize);
            coset_of[y] = c;
            coset.push(y as u32);
        }
        members.push(coset);
    }
    CosetDecomposition {
        representatives: reps.iter().map(|&i| g.element(i as usize).clone()).collect(),
        rep_indices: reps,
        coset_of,
        members,
        subgroup_order: a.len(),
    }
}

/// Right cosets `Ax`, indexed like [`left_cosets`].
pub fn right_cosets_embedded(g: &PermGroup, a: &Embedded) -> CosetDecomposition {
    let n = g.order();
    let mut coset_of = vec![u32::MAX; n];
    let mut reps = Vec::new();
    let mut members = Vec::new();
    for x in 0..n {
        if coset_of[x] != u32::MAX {
            continue;
        }
        let c = reps.len() as u32;
        reps.push(x as u32);
        let mut coset = Vec::with_capacity(a.len());
        for &h in &a.elems {
            let y = g.mul(h as usize, x);
            coset_of[y] = c;
            coset.push(y as u32);
        }
        members.push(coset);
    }
    CosetDecomposition {
        representatives: reps.iter().map(|&i| g.element(i as usize).clone()).collect(),
        rep_indices: reps,
        coset_of,
        members,
        subgroup_order: a.len(),
    }
}

/// Double cosets `AxA`, obtained as orbits of `A` acting on the left cosets
/// of `A` by left multiplication.
#[derive(Clone, Debug)]
pub struct DoubleCosets {
    /// Double coset number of each left coset.
    pub of_coset: Vec<u32>,
    /// Left coset numbers making up each double coset.
    pub cosets: Vec<Vec<u32>>,
}

impl DoubleCosets {
    pub fn of_element(&self, cosets: &CosetDecomposition, x: usize) -> usize {
        self.of_coset[cosets.coset_of[x] as usize] as usize
    }
}

pub fn double_cosets(g: &PermGroup, a: &Embedded, cosets: &CosetDecomposition) -> DoubleCosets {
    // generating set of A as ambient indices
    let gens = small_generating_set(g, a);
    let k = cosets.len();
    let mut of_coset = vec![u32::MAX; k];
    let mut out = Vec::new();
    for start in 0..k {
        if of_coset[start] != u32::MAX {
            continue;
        }
        let d = out.len() as u32;
        of_coset[start] = d;
        let mut orbit = vec![start as u32];
        let mut head = 0;
        while head < orbit.len() {
            let c = orbit[head] as usize;
            head += 1;
            let rep = cosets.rep_indices[c] as usize;
            for &h in &gens {
                let t = cosets.coset_of[g.mul(h, rep)] as usize;
                if of_coset[t] == u32::MAX {
                    of_coset[t] = d;
                    orbit.push(t as u32);
                }
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    DoubleCosets {
        of_coset,
        cosets: out,
    }
}

/// Greedy generating set of an embedded subgroup, as ambient indices.
pub fn small_generating_set(g: &PermGroup, a: &Embedded) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = FixedBitSet::with_capacity(g.order());
    span.insert(0);
    let mut count = 1;
    for &x in &a.elems {
        let x = x as usize;
        if span.contains(x) {
            continue;
        }
        gens.push(x);
        span = g.closure_mask(&gens);
        count = span.count_ones(..);
        if count == a.len() {
            break;
        }
    }
    debug_assert_eq!(count, a.len());
    gens
}

/// `|A|/|A ∩ A^x|` for ambient element index `x`, i.e. the number of left
/// cosets of `A` in `AxA`.
pub fn conjugate_index(g: &PermGroup, a: &Embedded, x: usize) -> usize {
    let common = a
        .elems
        .iter()
        .filter(|&&h| a.contains(g.conj(h as usize, x)))
        .count();
    a.len() / common
}

/// The set `A{g, g^-1}A` together with whether `AgA = Ag^-1A`.
#[derive(Clone, Debug)]
pub struct DoubleCosetUnion {
    pub seed: Perm,
    /// Sorted elements of `AgA ∪ Ag^-1A`.
    pub elements: Vec<Perm>,
    pub symmetric: bool,
    /// `|AgA|`, kept separately from the union.
    pub single_size: usize,
    pub base_order: usize,
}

impl DoubleCosetUnion {
    /// `|A{g,g^-1}A| / |A|`.
    pub fn coset_count(&self) -> usize {
        self.elements.len() / self.base_order
    }
}

pub fn double_coset_union(g: &PermGroup, a: &PermGroup, seed: &Perm) -> Result<DoubleCosetUnion> {
    let emb = g.embed(a)?;
    let x = g.require(seed)?;
    let xi = g.inv(x);
    let single = double_coset_indices(g, &emb, x);
    let mut union = single.clone();
    let symmetric = single.contains(xi);
    if !symmetric {
        union.union_with(&double_coset_indices(g, &emb, xi));
    }
    let single_size = single.count_ones(..);
    debug_assert_eq!(
        single_size * (a.order() / conjugate_index(g, &emb, x)),
        a.order() * a.order()
    );
    Ok(DoubleCosetUnion {
        seed: seed.clone(),
        elements: union.ones().map(|i| g.element(i).clone()).collect(),
        symmetric,
        single_size,
        base_order: a.order(),
    })
}

pub(crate) fn double_coset_indices(g: &PermGroup, a: &Embedded, x: usize) -> FixedBitSet {
    let mut mask = FixedBitSet::with_capacity(g.order());
    for &h in &a.elems {
        let hx = g.mul(h as usize, x);
        for &k in &a.elems {
            mask.insert(g.mul(hx, k as usize));
        }
    }
    mask
}

/// `A^x = x^-1 A x` as a group.
pub fn conjugate_subgroup(a: &PermGroup, x: &Perm) -> Result<PermGroup> {
    if x.degree() != a.degree() {
        return Err(Error::DegreeMismatch {
            expected: a.degree(),
            found: x.degree(),
        });
    }
    let gens: Vec<Perm> = a.generators().iter().map(|h| h.conjugate_by(x)).collect();
    let elems = a.elements().iter().map(|h| h.conjugate_by(x)).collect();
    let mut out = PermGroup::from_sorted(a.degree(), Vec::new(), elems);
    out.generators = gens;
    Ok(out)
}

pub fn intersect(a: &PermGroup, b: &PermGroup) -> Result<PermGroup> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch {
            expected: a.degree(),
            found: b.degree(),
        });
    }
    let (small, large) = if a.order() <= b.order() { (a, b) } else { (b, a) };
    let elems = small
        .elements()
        .iter()
        .filter(|p| large.contains(p))
        .cloned()
        .collect();
    Ok(PermGroup::from_closed_set(a.degree(), elems))
}

/// Ambient indices of `N_G(H)`.
pub fn normalizer_indices(g: &PermGroup, h: &Embedded) -> Vec<usize> {
    let gens = small_generating_set(g, h);
    (0..g.order())
        .filter(|&x| gens.iter().all(|&t| h.contains(g.conj(t, x))))
        .collect()
}

pub fn normalizer(g: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    let emb = g.embed(h)?;
    Ok(g.subgroup_from_indices(normalizer_indices(g, &emb)))
}

/// Smallest normal subgroup of `G` containing `H`, as a mask over `G`.
pub fn normal_closure_mask(g: &PermGroup, h: &Embedded) -> FixedBitSet {
    let ggens: Vec<usize> = g
        .generators()
        .iter()
        .map(|p| g.index_of(p).expect("generator in group"))
        .collect();
    let mut gens = small_generating_set(g, h);
    let mut mask = g.closure_mask(&gens);
    let mut pending: VecDeque<usize> = gens.iter().copied().collect();
    while let Some(t) = pending.pop_front() {
        for &s in &ggens {
            let c = g.conj(t, s);
            if !mask.contains(c) {
                gens.push(c);
                mask = g.closure_mask(&gens);
                pending.push_back(c);
            }
        }
    }
    mask
}

pub fn normal_closure(g: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    let emb = g.embed(h)?;
    Ok(g.subgroup_from_indices(normal_closure_mask(g, &emb).ones()))
}

pub fn is_normal(g: &PermGroup, h: &PermGroup) -> Result<bool> {
    let emb = g.embed(h)?;
    let hgens = small_generating_set(g, &emb);
    Ok(g.generators().iter().all(|s| {
        let s = g.index_of(s).expect("generator in group");
        hgens.iter().all(|&t| emb.contains(g.conj(t, s)))
    }))
}

/// Largest power of two dividing `n`.
pub fn two_part(n: usize) -> usize {
    1 << n.trailing_zeros()
}

/// A Sylow 2-subgroup, grown one step at a time inside normalizers: while
/// `|P|` is below the 2-part of `|G|`, adjoin the first `x ∈ N_G(P) \ P`
/// (canonical order) with `x^2 ∈ P`.
pub fn sylow_2(g: &PermGroup) -> PermGroup {
    let target = two_part(g.order());
    let mut gens: Vec<usize> = Vec::new();
    let mut p = g.closure_mask(&gens);
    while p.count_ones(..) < target {
        let emb = Embedded {
            elems: p.ones().map(|i| i as u32).collect(),
            mask: p.clone(),
        };
        let next = normalizer_indices(g, &emb)
            .into_iter()
            .find(|&x| !p.contains(x) && p.contains(g.mul(x, x)))
            .expect("a 2-subgroup below Sylow order has a proper 2-overgroup in its normalizer");
        gens.push(next);
        p = g.closure_mask(&gens);
    }
    g.subgroup_generated_by(&gens)
}

/// True when only the identity fixes a point of `domain`. The domain must be
/// invariant under the group.
pub fn is_semiregular(g: &PermGroup, domain: &[usize]) -> Result<bool> {
    let mut in_domain = vec![false; g.degree()];
    for &pt in domain {
        if pt >= g.degree() {
            return Err(Error::DomainNotInvariant);
        }
        in_domain[pt] = true;
    }
    for s in g.generators() {
        if domain.iter().any(|&pt| !in_domain[s.apply(pt)]) {
            return Err(Error::DomainNotInvariant);
        }
    }
    Ok(g
        .elements()
        .iter()
        .skip(1)
        .all(|x| domain.iter().all(|&pt| !x.fixes(pt))))
}

/// All subgroups of `G`, found by joining cyclic subgroups until no new
/// subgroup appears. Sorted by order, then by canonical element list.
pub fn all_subgroups(g: &PermGroup) -> Vec<PermGroup> {
    let n = g.order();
    let mut seen: FxHashSet<FixedBitSet> = FxHashSet::default();
    let mut cyclic: Vec<(usize, FixedBitSet)> = Vec::new();
    for x in 0..n {
        let m = g.closure_mask(&[x]);
        if seen.insert(m.clone()) {
            cyclic.push((x, m));
        }
    }
    // subgroups as (generators, mask)
    let mut subgroups: Vec<(Vec<usize>, FixedBitSet)> = cyclic
        .iter()
        .map(|(x, m)| (if *x == 0 { vec![] } else { vec![*x] }, m.clone()))
        .collect();
    let mut frontier: Vec<usize> = (0..subgroups.len()).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &s in &frontier {
            for (x, cm) in &cyclic {
                if cm.is_subset(&subgroups[s].1) {
                    continue;
                }
                let mut gens = subgroups[s].0.clone();
                gens.push(*x);
                let m = g.closure_mask(&gens);
                if seen.insert(m.clone()) {
                    subgroups.push((gens, m));
                    next.push(subgroups.len() - 1);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<(usize, Vec<usize>, Vec<usize>)> = subgroups
        .into_iter()
        .map(|(gens, m)| (m.count_ones(..), m.ones().collect(), gens))
        .collect();
    out.sort();
    out.into_iter()
        .map(|(_, elems, gens)| {
            let mut sg = g.subgroup_from_indices(elems);
            if !gens.is_empty() {
                sg.generators = gens.iter().map(|&i| g.element(i).clone()).collect();
            }
            sg
        })
        .collect()
}
