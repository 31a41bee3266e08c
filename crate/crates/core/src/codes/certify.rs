//! Witness re-checks computed directly from element products, without the
//! coset tables the searches use.

use rustc_hash::FxHashSet;

use crate::group::PermGroup;
use crate::perm::Perm;

/// `{x * y : x ∈ left, y ∈ right}`.
pub fn product_set(left: &[Perm], right: &[Perm]) -> FxHashSet<Perm> {
    let mut out = FxHashSet::default();
    for x in left {
        for y in right {
            out.insert(x.then(y));
        }
    }
    out
}

/// `X` meets every left coset of `A` in `G` exactly once.
pub fn is_left_transversal(g: &PermGroup, a: &PermGroup, x: &[Perm]) -> bool {
    if x.len() * a.order() != g.order() || x.iter().any(|t| !g.contains(t)) {
        return false;
    }
    product_set(x, a.elements()).len() == g.order()
}

pub fn is_inverse_closed(x: &[Perm]) -> bool {
    let set: FxHashSet<&Perm> = x.iter().collect();
    x.iter().all(|t| set.contains(&t.inverse()))
}

/// `X` is a left transversal of `A` in `G` and `XH = HX^-1`.
pub fn pair_condition_holds(g: &PermGroup, a: &PermGroup, h: &PermGroup, x: &[Perm]) -> bool {
    if !is_left_transversal(g, a, x) {
        return false;
    }
    let inv: Vec<Perm> = x.iter().map(Perm::inverse).collect();
    product_set(x, h.elements()) == product_set(h.elements(), &inv)
}

/// `X` is an inverse-closed left transversal of `A` in `G` and `XH = HX`.
pub fn symmetric_condition_holds(g: &PermGroup, a: &PermGroup, h: &PermGroup, x: &[Perm]) -> bool {
    is_left_transversal(g, a, x)
        && is_inverse_closed(x)
        && product_set(x, h.elements()) == product_set(h.elements(), x)
}
