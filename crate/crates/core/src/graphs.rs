//! Cayley graphs, coset graphs, and perfect codes in them.

use std::fmt::Write as _;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use rustc_hash::FxHashSet;
use serde::Serialize;

use crate::codes::{CosetData, PairInstance};
use crate::error::{Error, Result};
use crate::group::{left_cosets, PermGroup};
use crate::perm::Perm;

/// Simple undirected graph with bitset adjacency rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexGraph {
    labels: Vec<Perm>,
    rows: Vec<FixedBitSet>,
}

#[derive(Serialize)]
struct EdgeList<'a> {
    vertices: Vec<String>,
    edges: &'a [(usize, usize)],
}

impl VertexGraph {
    fn empty(labels: Vec<Perm>) -> Self {
        let n = labels.len();
        VertexGraph {
            labels,
            rows: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    fn add_edge(&mut self, u: usize, v: usize) {
        if u != v {
            self.rows[u].insert(v);
            self.rows[v].insert(u);
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    /// Vertex labels: group elements or coset representatives.
    pub fn labels(&self) -> &[Perm] {
        &self.labels
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[v].ones()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones(..)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, row) in self.rows.iter().enumerate() {
            out.extend(row.ones().filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let edges = self.edges();
        let list = EdgeList {
            vertices: self.labels.iter().map(|p| p.to_string()).collect(),
            edges: &edges,
        };
        serde_json::to_string(&list).expect("edge list serializes")
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph G {\n");
        for (i, l) in self.labels.iter().enumerate() {
            let _ = writeln!(s, "  {i} [label=\"{l}\"];");
        }
        for (u, v) in self.edges() {
            let _ = writeln!(s, "  {u} -- {v};");
        }
        s.push_str("}\n");
        s
    }
}

/// Inverse-closed set of group elements used to define edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectionSet {
    pub elements: Vec<Perm>,
}

impl ConnectionSet {
    pub fn new(mut elements: Vec<Perm>) -> Self {
        elements.sort();
        elements.dedup();
        ConnectionSet { elements }
    }

    pub fn is_inverse_closed(&self) -> bool {
        crate::codes::is_inverse_closed(&self.elements)
    }
}

fn connection_indices(g: &PermGroup, s: &ConnectionSet) -> Result<Vec<usize>> {
    if !s.is_inverse_closed() {
        return Err(Error::InvalidConnectionSet("not inverse-closed".into()));
    }
    s.elements
        .iter()
        .map(|p| {
            g.index_of(p)
                .ok_or_else(|| Error::InvalidConnectionSet(format!("{p} is not in the group")))
        })
        .collect()
}

/// `Cay(G, S)`: vertices are the elements of `G`, edges `{g, sg}`.
pub fn cayley_graph(g: &PermGroup, s: &ConnectionSet) -> Result<VertexGraph> {
    let idx = connection_indices(g, s)?;
    if idx.contains(&0) {
        return Err(Error::InvalidConnectionSet("contains the identity".into()));
    }
    let mut graph = VertexGraph::empty(g.elements().to_vec());
    for x in 0..g.order() {
        for &t in &idx {
            graph.add_edge(x, g.mul(t, x));
        }
    }
    Ok(graph)
}

/// `HUH` as sorted ambient indices.
pub fn saturate(g: &PermGroup, h: &PermGroup, u: &ConnectionSet) -> Result<Vec<usize>> {
    let idx = connection_indices(g, u)?;
    let h_idx: Vec<usize> = h.elements().iter().map(|p| g.require(p)).collect::<Result<_>>()?;
    let mut out = FxHashSet::default();
    for &x in &idx {
        for &a in &h_idx {
            let ax = g.mul(a, x);
            for &b in &h_idx {
                out.insert(g.mul(ax, b));
            }
        }
    }
    let mut out: Vec<usize> = out.into_iter().collect();
    out.sort_unstable();
    Ok(out)
}

/// `Cos(G, H, U)`: vertices are the left cosets of `H` (numbered as in
/// [`left_cosets`]), with `xH ~ yH` iff `x^-1 y ∈ HUH`. `U` is saturated to
/// `HUH` first.
pub fn coset_graph(g: &PermGroup, h: &PermGroup, u: &ConnectionSet) -> Result<VertexGraph> {
    let cosets = left_cosets(g, h)?;
    let sat = saturate(g, h, u)?;
    if sat.iter().any(|&x| cosets.coset_of[x] == 0) {
        return Err(Error::InvalidConnectionSet("meets H".into()));
    }
    let mut graph = VertexGraph::empty(cosets.representatives.clone());
    for (i, &x) in cosets.rep_indices.iter().enumerate() {
        for &t in &sat {
            graph.add_edge(i, cosets.coset_of[g.mul(x as usize, t)] as usize);
        }
    }
    Ok(graph)
}

/// Whether left multiplication by each generator of `G` maps edges of a
/// coset graph on `G/H` to edges.
pub fn left_action_preserves_edges(g: &PermGroup, h: &PermGroup, graph: &VertexGraph) -> Result<bool> {
    let cosets = left_cosets(g, h)?;
    if cosets.len() != graph.vertex_count() {
        return Err(Error::InvalidInput("graph is not on the cosets of H".into()));
    }
    for s in g.generators() {
        let s = g.require(s)?;
        let image: Vec<usize> = cosets
            .rep_indices
            .iter()
            .map(|&x| cosets.coset_of[g.mul(s, x as usize)] as usize)
            .collect();
        for (u, v) in graph.edges() {
            if !graph.is_adjacent(image[u], image[v]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Reading of "perfect code" in a graph.
#[derive(Serialize, Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Every vertex outside `C` has exactly one neighbour in `C`.
    #[default]
    Literal,
    /// Additionally no two vertices of `C` are adjacent.
    Independent,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "literal" => Ok(Mode::Literal),
            "independent" => Ok(Mode::Independent),
            _ => Err(Error::InvalidInput(format!("unknown mode {s:?}"))),
        }
    }
}

pub fn is_perfect_code_in_graph(graph: &VertexGraph, code: &FixedBitSet, mode: Mode) -> bool {
    for v in 0..graph.vertex_count() {
        let hits = graph.rows[v].intersection(code).count();
        if code.contains(v) {
            if mode == Mode::Independent && hits > 0 {
                return false;
            }
        } else if hits != 1 {
            return false;
        }
    }
    true
}

/// A connection set found by [`find_witness_connection_set`].
#[derive(Serialize, Clone, Debug)]
pub struct WitnessConnectionSet {
    /// `U`, already a union of `H`-double cosets.
    pub connection_set: ConnectionSet,
    /// One representative per chosen class `H{g,g^-1}H`.
    pub class_representatives: Vec<Perm>,
    /// Indices of the chosen classes among all classes outside `H`.
    pub class_labels: Vec<usize>,
    pub classes_total: usize,
    pub subsets_tried: u64,
}

/// The vertex set of `Cos(G, H, ·)` formed by the cosets of `H` in `A`.
pub fn code_of_a(inst: &PairInstance) -> FixedBitSet {
    let mut code = FixedBitSet::with_capacity(inst.cosets_h.len());
    for a in inst.a.elements() {
        code.insert(inst.cosets_h.coset_of[inst.g.index_of(a).expect("A <= G")] as usize);
    }
    code
}

/// Searches the inverse-closed unions of `H`-double cosets in `G \ H`, in
/// reflected Gray-code order, for one making the cosets of `H` in `A` a
/// perfect code of the coset graph. At most `max_subsets` subsets are
/// allowed; more classes than that is an error.
pub fn find_witness_connection_set(
    inst: &PairInstance,
    mode: Mode,
    max_subsets: u64,
) -> Result<Option<WitnessConnectionSet>> {
    let g = &inst.g;
    let data = CosetData::with_cosets(g, inst.h_emb.clone(), inst.cosets_h.clone());
    let classes: Vec<Vec<usize>> = data.union_classes().into_iter().filter(|c| c[0] != 0).collect();
    let k = classes.len();
    if k >= 64 || (1u64 << k) > max_subsets {
        return Err(Error::TooManyDoubleCosetClasses {
            classes: k,
            budget: max_subsets,
        });
    }
    let n = inst.cosets_h.len();
    let mut class_of_coset = vec![usize::MAX; n];
    for (i, c) in classes.iter().enumerate() {
        for &v in c {
            class_of_coset[v] = i;
        }
    }
    let code = code_of_a(inst);
    let code_vertices: Vec<usize> = code.ones().collect();
    let outside: Vec<usize> = (0..n).filter(|v| !code.contains(*v)).collect();
    let reps = &inst.cosets_h.rep_indices;
    let class_between = |v: usize, w: usize| {
        let x = g.inv(reps[v] as usize);
        class_of_coset[inst.cosets_h.coset_of[g.mul(x, reps[w] as usize)] as usize]
    };
    // contrib[c][i]: C-neighbours of outside[i] through class c
    let mut contrib = vec![vec![0u32; outside.len()]; k];
    for (i, &v) in outside.iter().enumerate() {
        for &w in &code_vertices {
            contrib[class_between(v, w)][i] += 1;
        }
    }
    // classes joining two vertices of C
    let mut internal = vec![false; k];
    for &v in &code_vertices {
        for &w in &code_vertices {
            if v != w {
                internal[class_between(v, w)] = true;
            }
        }
    }

    let mut chosen = vec![false; k];
    let mut counts = vec![0u32; outside.len()];
    let mut exact = counts.iter().filter(|&&c| c == 1).count();
    let mut internal_chosen = 0usize;
    let total = 1u64 << k;
    let mut tried = 0u64;
    for step in 0..total {
        if step > 0 {
            let c = step.trailing_zeros() as usize;
            let add = !chosen[c];
            chosen[c] = add;
            if internal[c] {
                if add {
                    internal_chosen += 1;
                } else {
                    internal_chosen -= 1;
                }
            }
            for (i, cnt) in counts.iter_mut().enumerate() {
                let d = contrib[c][i];
                if d == 0 {
                    continue;
                }
                let before = *cnt == 1;
                if add {
                    *cnt += d;
                } else {
                    *cnt -= d;
                }
                match (before, *cnt == 1) {
                    (true, false) => exact -= 1,
                    (false, true) => exact += 1,
                    _ => {}
                }
            }
        }
        tried += 1;
        let ok = exact == outside.len() && (mode == Mode::Literal || internal_chosen == 0);
        if !ok {
            continue;
        }
        let labels: Vec<usize> = (0..k).filter(|&c| chosen[c]).collect();
        let mut elements = Vec::new();
        for &c in &labels {
            for &v in &classes[c] {
                elements.extend(inst.cosets_h.members[v].iter().map(|&x| g.element(x as usize).clone()));
            }
        }
        let witness = WitnessConnectionSet {
            connection_set: ConnectionSet::new(elements),
            class_representatives: labels
                .iter()
                .map(|&c| inst.cosets_h.representatives[classes[c][0]].clone())
                .collect(),
            class_labels: labels,
            classes_total: k,
            subsets_tried: tried,
        };
        let graph = coset_graph(g, &inst.h, &witness.connection_set)?;
        if !is_perfect_code_in_graph(&graph, &code, mode) {
            return Err(Error::ConsistencyViolation(
                "incremental count disagrees with the built coset graph".into(),
            ));
        }
        return Ok(Some(witness));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cyclic, dihedral, symmetric};

    fn cycle6() -> VertexGraph {
        let g = cyclic(6);
        let s = g.generators()[0].clone();
        cayley_graph(&g, &ConnectionSet::new(vec![s.clone(), s.inverse()])).unwrap()
    }

    fn set(n: usize, vs: &[usize]) -> FixedBitSet {
        let mut b = FixedBitSet::with_capacity(n);
        vs.iter().for_each(|&v| b.insert(v));
        b
    }

    #[test]
    fn six_cycle_codes() {
        let c6 = cycle6();
        assert!((0..6).all(|v| c6.degree(v) == 2));
        assert_eq!(c6.edges().len(), 6);
        // antipodal pair: find a vertex at distance 3 from 0
        let far = (0..6)
            .find(|&v| v != 0 && !c6.is_adjacent(0, v) && c6.neighbors(v).all(|w| !c6.is_adjacent(0, w)))
            .unwrap();
        let adj = c6.neighbors(0).next().unwrap();
        for mode in [Mode::Literal, Mode::Independent] {
            assert!(is_perfect_code_in_graph(&c6, &set(6, &[0, far]), mode));
            assert!(!is_perfect_code_in_graph(&c6, &set(6, &[0, adj]), mode));
            assert_eq!(is_perfect_code_in_graph(&c6, &set(6, &[0, 1, 2, 3, 4, 5]), mode), mode == Mode::Literal);
        }
    }

    #[test]
    fn empty_connection_set_is_edgeless() {
        let g = symmetric(3);
        let gr = cayley_graph(&g, &ConnectionSet::new(vec![])).unwrap();
        assert!(gr.edges().is_empty());
    }

    #[test]
    fn involutions_of_d8() {
        let g = dihedral(8);
        let inv: Vec<Perm> = g.elements().iter().filter(|p| p.is_involution()).cloned().collect();
        assert_eq!(inv.len(), 5);
        let gr = cayley_graph(&g, &ConnectionSet::new(inv)).unwrap();
        assert!((0..8).all(|v| gr.degree(v) == 5));
        assert!(left_action_preserves_edges(&g, &PermGroup::trivial(4), &gr).unwrap());
    }

    #[test]
    fn trivial_h_gives_cayley_graph() {
        // {g, sg} versus x^-1 y ∈ U: the two labelings differ by inversion
        let g = symmetric(4);
        let s = ConnectionSet::new(vec![
            Perm::transposition(4, 0, 1),
            Perm::parse_cycles(4, "(1 2 3 4)").unwrap(),
            Perm::parse_cycles(4, "(1 4 3 2)").unwrap(),
        ]);
        let cos = coset_graph(&g, &PermGroup::trivial(4), &s).unwrap();
        let cay = cayley_graph(&g, &s).unwrap();
        assert_eq!(cos.labels(), cay.labels());
        assert_eq!(cos.edges().len(), cay.edges().len());
        for (u, v) in cay.edges() {
            assert!(cos.is_adjacent(g.inv(u), g.inv(v)));
        }
    }

    #[test]
    fn complement_of_h_gives_complete_graph() {
        let g = symmetric(4);
        let h = PermGroup::closure(4, &[Perm::transposition(4, 0, 1)]).unwrap();
        let u: Vec<Perm> = g.elements().iter().filter(|p| !h.contains(p)).cloned().collect();
        let gr = coset_graph(&g, &h, &ConnectionSet::new(u)).unwrap();
        assert!((0..12).all(|v| gr.degree(v) == 11));
    }

    #[test]
    fn s3_over_transposition() {
        let g = symmetric(3);
        let h = PermGroup::closure(3, &[Perm::transposition(3, 0, 1)]).unwrap();
        let r = Perm::parse_cycles(3, "(1 2 3)").unwrap();
        let gr = coset_graph(&g, &h, &ConnectionSet::new(vec![r.clone(), r.inverse()])).unwrap();
        assert_eq!(gr.vertex_count(), 3);
        assert_eq!(gr.edges().len(), 3);
        let bad = coset_graph(&g, &h, &ConnectionSet::new(vec![Perm::transposition(3, 0, 1)]));
        assert!(matches!(bad, Err(Error::InvalidConnectionSet(_))));
        let not_closed = cayley_graph(&g, &ConnectionSet::new(vec![r]));
        assert!(matches!(not_closed, Err(Error::InvalidConnectionSet(_))));
    }

    #[test]
    fn witness_search_examples() {
        let g = symmetric(4);
        let h = PermGroup::closure(4, &[Perm::transposition(4, 0, 1)]).unwrap();
        let inst = PairInstance::new(g.clone(), g.clone(), h.clone()).unwrap();
        let w = find_witness_connection_set(&inst, Mode::Literal, 1 << 20).unwrap().unwrap();
        assert!(w.connection_set.elements.is_empty());

        let a = Perm::parse_cycles(4, "(1 2 3 4)").unwrap();
        let b = Perm::parse_cycles(4, "(2 4)").unwrap();
        let d8 = PermGroup::closure(4, &[a.clone(), b.clone()]).unwrap();
        let big = PermGroup::closure(4, &[a.pow(2), b.clone()]).unwrap();
        let hb = PermGroup::closure(4, &[b]).unwrap();
        let inst = PairInstance::new(d8, big, hb).unwrap();
        for mode in [Mode::Literal, Mode::Independent] {
            assert!(find_witness_connection_set(&inst, mode, 1 << 20).unwrap().is_none());
        }
        assert!(matches!(
            find_witness_connection_set(&inst, Mode::Literal, 1),
            Err(Error::TooManyDoubleCosetClasses { .. })
        ));
    }

    #[test]
    fn exports() {
        let c6 = cycle6();
        assert!(c6.to_dot().starts_with("graph G {"));
        let v: serde_json::Value = serde_json::from_str(&c6.to_json()).unwrap();
        assert_eq!(v["edges"].as_array().unwrap().len(), 6);
    }
}
