//! Isomorphism testing: invariant fingerprints as a cheap filter, then an
//! exhaustive generator-image search with a node budget. Exceeding the budget
//! is a resource error, never a wrong answer.

use crate::error::{Error, Result};
use crate::group::PermGroup;
use std::collections::BTreeMap;

/// Default node budget for the generator-image search.
pub const ISO_NODE_BUDGET: u64 = 5_000_000;

/// Isomorphism-invariant fingerprint used for hashing and as a filter.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint {
    pub order: u64,
    pub abelian: bool,
    /// (element order, multiplicity), sorted.
    pub element_orders: Vec<(u64, u32)>,
    /// (element order, class size, multiplicity), sorted.
    pub class_profile: Vec<(u64, u64, u32)>,
    pub center_order: u64,
    pub derived_orders: Vec<u64>,
    /// Element-order multiset of G/G' (pins the abelianization type).
    pub abelianization: Vec<(u64, u32)>,
}

pub fn fingerprint(g: &PermGroup) -> Result<Fingerprint> {
    let elems = g.elements()?;
    let mut ord_counts: BTreeMap<u64, u32> = BTreeMap::new();
    for e in elems.iter() {
        *ord_counts.entry(e.order()).or_insert(0) += 1;
    }
    let classes = g.conjugacy_classes()?;
    let mut profile: BTreeMap<(u64, u64), u32> = BTreeMap::new();
    for c in &classes.classes {
        let rep = &elems[c[0] as usize];
        *profile.entry((rep.order(), c.len() as u64)).or_insert(0) += 1;
    }
    let derived_orders = g.derived_series_orders()?;
    // Abelianization: quotient by the derived subgroup.
    let derived = g.derived_of_elements(elems.as_ref())?;
    let dsub = crate::group::Subgroup::from_elements(g, derived);
    let q = crate::structure::quotient(g, &dsub)?;
    let qelems = q.group.elements()?;
    let mut ab: BTreeMap<u64, u32> = BTreeMap::new();
    for e in qelems.iter() {
        *ab.entry(e.order()).or_insert(0) += 1;
    }
    Ok(Fingerprint {
        order: g.order(),
        abelian: g.is_abelian(),
        element_orders: ord_counts.into_iter().collect(),
        class_profile: profile.into_iter().map(|((o, s), m)| (o, s, m)).collect(),
        center_order: g.center_order()?,
        derived_orders,
        abelianization: ab.into_iter().collect(),
    })
}

/// Per-element invariant inside a group: (order, size of conjugacy class).
fn element_invariants(g: &PermGroup) -> Result<Vec<(u64, u64)>> {
    let elems = g.elements()?;
    let classes = g.conjugacy_classes()?;
    Ok(elems
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let csize = classes.classes[classes.class_of[i] as usize].len() as u64;
            (e.order(), csize)
        })
        .collect())
}

/// Decides isomorphism. Fingerprints filter first; equal fingerprints fall
/// through to a backtracking generator-image search that closes a partial map
/// over the multiplication structure.
pub fn is_isomorphic(g: &PermGroup, h: &PermGroup) -> Result<bool> {
    is_isomorphic_budgeted(g, h, ISO_NODE_BUDGET)
}

pub fn is_isomorphic_budgeted(g: &PermGroup, h: &PermGroup, budget: u64) -> Result<bool> {
    if g.order() != h.order() {
        return Ok(false);
    }
    if g.order() == 1 {
        return Ok(true);
    }
    let fp_g = fingerprint(g)?;
    if fp_g != fingerprint(h)? {
        return Ok(false);
    }
    // Finite abelian groups are classified by their element-order multiset,
    // which the fingerprint already pins down.
    if fp_g.abelian {
        return Ok(true);
    }
    let g_elems = g.elements()?;
    let h_elems = h.elements()?;
    let g_inv = element_invariants(g)?;
    let h_inv = element_invariants(h)?;

    // Generating sequence for G from the greedy small set.
    let gens = crate::group::small_generating_set(g_elems.as_ref());
    let gen_ids: Vec<usize> = gens
        .iter()
        .map(|p| g_elems.binary_search(p).unwrap())
        .collect();

    // Candidate images per generator, filtered on (order, class size).
    // The first generator ranges over class representatives only: any
    // isomorphism can be normalized by an inner automorphism of H.
    let h_classes = h.conjugacy_classes()?;
    let mut candidates: Vec<Vec<usize>> = Vec::new();
    for (k, &gi) in gen_ids.iter().enumerate() {
        let want = g_inv[gi];
        let cands: Vec<usize> = if k == 0 {
            h_classes
                .classes
                .iter()
                .map(|c| c[0] as usize)
                .filter(|&j| h_inv[j] == want)
                .collect()
        } else {
            (0..h_elems.len()).filter(|&j| h_inv[j] == want).collect()
        };
        if cands.is_empty() {
            return Ok(false);
        }
        candidates.push(cands);
    }

    let mut nodes: u64 = 0;
    let mut images: Vec<usize> = Vec::new();
    search(
        g,
        h,
        &gen_ids,
        &candidates,
        &mut images,
        &mut nodes,
        budget,
    )
}

fn search(
    g: &PermGroup,
    h: &PermGroup,
    gen_ids: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
    nodes: &mut u64,
    budget: u64,
) -> Result<bool> {
    if images.len() == gen_ids.len() {
        return check_homomorphism(g, h, gen_ids, images, nodes, budget);
    }
    let level = images.len();
    for &cand in &candidates[level] {
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::Resource {
                what: "isomorphism search nodes",
                limit: budget,
                actual: *nodes,
            });
        }
        images.push(cand);
        // Quick pruning: partial map must be consistent on the subgroup
        // generated so far; full verification happens at the leaves.
        if check_partial(g, h, gen_ids, images)? {
            if search(g, h, gen_ids, candidates, images, nodes, budget)? {
                return Ok(true);
            }
        }
        images.pop();
    }
    Ok(false)
}

/// Closes the partial map over products; fails on any conflict.
/// Returns whether the assignment so far is consistent.
fn check_partial(g: &PermGroup, h: &PermGroup, gen_ids: &[usize], images: &[usize]) -> Result<bool> {
    close_map(g, h, gen_ids, images).map(|m| m.is_some())
}

fn close_map(
    g: &PermGroup,
    h: &PermGroup,
    gen_ids: &[usize],
    images: &[usize],
) -> Result<Option<Vec<u32>>> {
    let g_elems = g.elements()?;
    let h_elems = h.elements()?;
    let g_idx = g.element_indices()?;
    let h_idx = h.element_indices()?;
    let n = g_elems.len();
    const UNSET: u32 = u32::MAX;
    let mut map = vec![UNSET; n];
    let id_g = g.element_index(&g.identity())?;
    let id_h = h.element_index(&h.identity())?;
    map[id_g as usize] = id_h;
    let mut queue: Vec<u32> = vec![id_g];
    for (k, &gi) in gen_ids.iter().enumerate().take(images.len()) {
        let hi = images[k] as u32;
        if map[gi] != UNSET {
            if map[gi] != hi {
                return Ok(None);
            }
        } else {
            map[gi] = hi;
            queue.push(gi as u32);
        }
    }
    let mut head = 0;
    while head < queue.len() {
        let xi = queue[head] as usize;
        head += 1;
        for (k, &gi) in gen_ids.iter().enumerate().take(images.len()) {
            let x = &g_elems[xi];
            let y = x.compose(&g_elems[gi]);
            let yi = g_idx[&y] as usize;
            let hx = &h_elems[map[xi] as usize];
            let hy = hx.compose(&h_elems[images[k]]);
            let hyi = h_idx[&hy];
            if map[yi] == UNSET {
                map[yi] = hyi;
                queue.push(yi as u32);
            } else if map[yi] != hyi {
                return Ok(None);
            }
        }
    }
    Ok(Some(map))
}

fn check_homomorphism(
    g: &PermGroup,
    h: &PermGroup,
    gen_ids: &[usize],
    images: &[usize],
    nodes: &mut u64,
    budget: u64,
) -> Result<bool> {
    let map = match close_map(g, h, gen_ids, images)? {
        Some(m) => m,
        None => return Ok(false),
    };
    // Total and injective?
    let n = map.len();
    if map.iter().any(|&m| m == u32::MAX) {
        // Generators must generate; a partial closure means gen_ids were not
        // a generating set, which small_generating_set rules out.
        return Ok(false);
    }
    let mut seen = vec![false; n];
    for &m in &map {
        if seen[m as usize] {
            return Ok(false);
        }
        seen[m as usize] = true;
    }
    // Verify multiplicativity on all pairs (x, generator).
    let g_elems = g.elements()?;
    let h_elems = h.elements()?;
    let g_idx = g.element_indices()?;
    for xi in 0..n {
        *nodes += n as u64;
        if *nodes > budget {
            return Err(Error::Resource {
                what: "isomorphism search nodes",
                limit: budget,
                actual: *nodes,
            });
        }
        for (k, &gi) in gen_ids.iter().enumerate() {
            let y = g_elems[xi].compose(&g_elems[gi]);
            let yi = g_idx[&y] as usize;
            let lhs = &h_elems[map[yi] as usize];
            let rhs = h_elems[map[xi] as usize].compose(&h_elems[images[k]]);
            if *lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::*;

    #[test]
    fn abelian_vs_nonabelian() {
        let c6 = cyclic(6).unwrap();
        let s3 = symmetric(3).unwrap();
        assert!(!is_isomorphic(&c6, &s3).unwrap());
    }

    #[test]
    fn product_c2_c3_is_c6() {
        let p = direct_product(&cyclic(2).unwrap(), &cyclic(3).unwrap()).unwrap();
        let c6 = cyclic(6).unwrap();
        assert!(is_isomorphic(&p, &c6).unwrap());
    }

    #[test]
    fn d4_vs_q8() {
        // Element-order multisets differ: D4 has five involutions, Q8 one.
        let d4 = dihedral(4).unwrap();
        let q8 = quaternion(8).unwrap();
        let f1 = fingerprint(&d4).unwrap();
        let f2 = fingerprint(&q8).unwrap();
        assert_ne!(f1.element_orders, f2.element_orders);
        assert!(!is_isomorphic(&d4, &q8).unwrap());
    }

    #[test]
    fn s3_is_d3() {
        assert!(is_isomorphic(&symmetric(3).unwrap(), &dihedral(3).unwrap()).unwrap());
    }

    #[test]
    fn elementary_abelian_needs_many_generators() {
        let v = direct_product(&dihedral(2).unwrap(), &dihedral(2).unwrap()).unwrap();
        let w = direct_product(
            &direct_product(&cyclic(2).unwrap(), &cyclic(2).unwrap()).unwrap(),
            &direct_product(&cyclic(2).unwrap(), &cyclic(2).unwrap()).unwrap(),
        )
        .unwrap();
        assert!(is_isomorphic(&v, &w).unwrap());
        let c4c4 = direct_product(&cyclic(4).unwrap(), &cyclic(4).unwrap()).unwrap();
        let c2c8 = direct_product(&cyclic(2).unwrap(), &cyclic(8).unwrap()).unwrap();
        assert!(!is_isomorphic(&c4c4, &c2c8).unwrap());
    }

    #[test]
    fn budget_is_respected() {
        let a = symmetric(4).unwrap();
        let b = symmetric(4).unwrap();
        match is_isomorphic_budgeted(&a, &b, 1) {
            Err(Error::Resource { .. }) => {}
            other => panic!("expected resource error, got {other:?}"),
        }
    }

    #[test]
    fn same_order_nonisomorphic_pairs() {
        // C4 x C2 vs D4 vs Q8 vs C8 vs C2^3: all order 8, pairwise distinct.
        let groups = vec![
            direct_product(&cyclic(4).unwrap(), &cyclic(2).unwrap()).unwrap(),
            dihedral(4).unwrap(),
            quaternion(8).unwrap(),
            cyclic(8).unwrap(),
            direct_product(&dihedral(2).unwrap(), &cyclic(2).unwrap()).unwrap(),
        ];
        for i in 0..groups.len() {
            for j in 0..groups.len() {
                assert_eq!(
                    is_isomorphic(&groups[i], &groups[j]).unwrap(),
                    i == j,
                    "pair ({i},{j})"
                );
            }
        }
    }
}
