//! Finite permutation groups with a stabilizer-chain backbone and cached
//! element-level data (elements, conjugacy classes, normal subgroups).
//!
//! Groups are immutable after construction; every lazy cache sits behind a
//! `OnceLock`, so shared references are safe across threads.

use crate::error::{Error, Result};
use crate::perm::Perm;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, OnceLock};

/// Hard cap on the permutation degree accepted by constructors.
pub const DEGREE_CAP: usize = 512;
/// Hard cap on |G| for element-enumeration algorithms.
pub const ORDER_CAP: u64 = 10_000;
/// Cap on |G| for full subgroup-lattice enumeration (Frattini and S_all).
pub const LATTICE_CAP: u64 = 2_000;

/// One level of the stabilizer chain: a base point and the transversal of
/// its fundamental orbit.
struct ChainLevel {
    base: usize,
    transversal: HashMap<usize, Perm>,
}

/// Stabilizer chain built from the full (capped) element enumeration; the
/// fundamental-orbit product therefore equals the group order exactly.
struct Chain {
    levels: Vec<ChainLevel>,
}

impl Chain {
    fn from_elements(degree: usize, elements: &[Perm]) -> Chain {
        let mut levels = Vec::new();
        let mut current: Vec<Perm> = elements.to_vec();
        while current.len() > 1 {
            let base = (0..degree)
                .find(|&p| current.iter().any(|e| e.apply(p) != p))
                .expect("nontrivial stabilizer moves a point");
            let mut transversal: HashMap<usize, Perm> = HashMap::new();
            let mut next: Vec<Perm> = Vec::new();
            for e in &current {
                let img = e.apply(base);
                transversal.entry(img).or_insert_with(|| e.clone());
                if img == base {
                    next.push(e.clone());
                }
            }
            levels.push(ChainLevel { base, transversal });
            current = next;
        }
        Chain { levels }
    }

    fn order(&self) -> u64 {
        self.levels
            .iter()
            .map(|l| l.transversal.len() as u64)
            .product()
    }

    fn contains(&self, g: &Perm) -> bool {
        let mut g = g.clone();
        for level in &self.levels {
            let image = g.apply(level.base);
            match level.transversal.get(&image) {
                Some(rep) => g = g.compose(&rep.inverse()),
                None => return false,
            }
        }
        g.is_identity()
    }
}

/// Conjugacy-class data: classes as sorted element-index lists.
pub struct ConjClasses {
    /// Sorted element indices per class; classes sorted by (size, first element).
    pub classes: Vec<Vec<u32>>,
    /// Map element index -> class index.
    pub class_of: Vec<u32>,
}

struct GroupData {
    degree: usize,
    generators: Vec<Perm>,
    chain: Chain,
    order: u64,
    name: Option<String>,
    elements: OnceLock<Arc<Vec<Perm>>>,
    elem_index: OnceLock<HashMap<Perm, u32>>,
    conj: OnceLock<Arc<ConjClasses>>,
    center_order: OnceLock<u64>,
    derived_orders: OnceLock<Vec<u64>>,
}

/// A finite permutation group on `{1..degree}`.
#[derive(Clone)]
pub struct PermGroup(Arc<GroupData>);

impl PermGroup {
    /// Builds the group generated by `gens` acting on `{1..degree}`.
    ///
    /// Elements are enumerated eagerly (the order cap makes this cheap), and
    /// the stabilizer chain is derived from them.
    pub fn from_generators(degree: usize, gens: Vec<Perm>) -> Result<PermGroup> {
        Self::build(degree, gens, None)
    }

    fn build(degree: usize, gens: Vec<Perm>, name: Option<String>) -> Result<PermGroup> {
        if degree == 0 || degree > DEGREE_CAP {
            return Err(Error::Resource {
                what: "degree",
                limit: DEGREE_CAP as u64,
                actual: degree as u64,
            });
        }
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::input(format!(
                    "generator degree {} does not match group degree {}",
                    g.degree(),
                    degree
                )));
            }
        }
        let kept: Vec<Perm> = gens.into_iter().filter(|g| !g.is_identity()).collect();
        let elements = enumerate_elements(degree, &kept)?;
        let chain = Chain::from_elements(degree, &elements);
        let order = elements.len() as u64;
        debug_assert_eq!(order, chain.order());
        let data = GroupData {
            degree,
            generators: kept,
            chain,
            order,
            name,
            elements: OnceLock::new(),
            elem_index: OnceLock::new(),
            conj: OnceLock::new(),
            center_order: OnceLock::new(),
            derived_orders: OnceLock::new(),
        };
        let _ = data.elements.set(Arc::new(elements));
        Ok(PermGroup(Arc::new(data)))
    }

    pub fn named(self, name: impl Into<String>) -> PermGroup {
        PermGroup::build(self.0.degree, self.0.generators.clone(), Some(name.into()))
            .expect("renaming an already constructed group cannot fail")
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn order(&self) -> u64 {
        self.0.order
    }

    pub fn name(&self) -> Option<&str> {
        self.0.name.as_deref()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.0.generators
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.0.degree)
    }

    pub fn is_trivial(&self) -> bool {
        self.0.order == 1
    }

    /// Chain-based membership test.
    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.0.degree && self.0.chain.contains(g)
    }

    /// Product of the fundamental orbit lengths; equals `order()` by construction.
    pub fn chain_orbit_product(&self) -> u64 {
        self.0.chain.order()
    }

    /// Base points of the stabilizer chain.
    pub fn chain_base(&self) -> Vec<usize> {
        self.0.chain.levels.iter().map(|l| l.base).collect()
    }

    /// Strong generators per chain level, derived from the element list on
    /// demand: level k generates the stabilizer of the first k base points.
    pub fn chain_strong_generators(&self) -> Vec<Vec<Perm>> {
        let elems = self
            .0
            .elements
            .get()
            .expect("elements are enumerated at construction");
        let mut current: Vec<Perm> = elems.as_ref().clone();
        let mut out = Vec::new();
        for level in &self.0.chain.levels {
            out.push(small_generating_set(&current));
            current.retain(|e| e.apply(level.base) == level.base);
        }
        out
    }

    /// All elements, sorted.
    pub fn elements(&self) -> Result<Arc<Vec<Perm>>> {
        Ok(self
            .0
            .elements
            .get()
            .expect("elements are enumerated at construction")
            .clone())
    }

    /// Index of an element within the sorted element list.
    pub fn element_index(&self, g: &Perm) -> Result<u32> {
        let idx = self.element_indices()?;
        idx.get(g)
            .copied()
            .ok_or_else(|| Error::precondition(format!("{g} is not an element of this group")))
    }

    pub fn element_indices(&self) -> Result<&HashMap<Perm, u32>> {
        let elems = self.elements()?;
        Ok(self.0.elem_index.get_or_init(|| {
            elems
                .iter()
                .enumerate()
                .map(|(i, p)| (p.clone(), i as u32))
                .collect()
        }))
    }

    /// Conjugacy classes, deterministically ordered by (size, least member).
    pub fn conjugacy_classes(&self) -> Result<Arc<ConjClasses>> {
        let elems = self.elements()?;
        let index = self.element_indices()?;
        Ok(self
            .0
            .conj
            .get_or_init(|| {
                let n = elems.len();
                let mut assigned: Vec<bool> = vec![false; n];
                let mut classes: Vec<Vec<u32>> = Vec::new();
                for start in 0..n {
                    if assigned[start] {
                        continue;
                    }
                    let mut orbit: Vec<u32> = vec![start as u32];
                    assigned[start] = true;
                    let mut head = 0;
                    while head < orbit.len() {
                        let x = elems[orbit[head] as usize].clone();
                        head += 1;
                        for g in &self.0.generators {
                            let y = x.conjugate_by(g);
                            let yi = index[&y];
                            if !assigned[yi as usize] {
                                assigned[yi as usize] = true;
                                orbit.push(yi);
                            }
                        }
                    }
                    orbit.sort_unstable();
                    classes.push(orbit);
                }
                classes.sort_by_key(|c| (c.len(), c[0]));
                let mut class_of = vec![0u32; n];
                for (ci, c) in classes.iter().enumerate() {
                    for &e in c {
                        class_of[e as usize] = ci as u32;
                    }
                }
                Arc::new(ConjClasses { classes, class_of })
            })
            .clone())
    }

    pub fn center_order(&self) -> Result<u64> {
        let classes = self.conjugacy_classes()?;
        Ok(*self
            .0
            .center_order
            .get_or_init(|| classes.classes.iter().filter(|c| c.len() == 1).count() as u64))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.0.generators;
        for i in 0..gens.len() {
            for j in (i + 1)..gens.len() {
                if gens[i].compose(&gens[j]) != gens[j].compose(&gens[i]) {
                    return false;
                }
            }
        }
        true
    }

    /// Closure of a subset under multiplication; returns the sorted subgroup.
    pub fn subgroup_closure(&self, seed: &[Perm]) -> Result<Vec<Perm>> {
        let mut seen: HashSet<Perm> = HashSet::new();
        seen.insert(self.identity());
        let mut queue: Vec<Perm> = vec![self.identity()];
        for s in seed {
            if seen.insert(s.clone()) {
                queue.push(s.clone());
            }
        }
        let gens: Vec<Perm> = seed.to_vec();
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head].clone();
            head += 1;
            for g in &gens {
                let y = x.compose(g);
                if seen.insert(y.clone()) {
                    queue.push(y);
                }
            }
        }
        let mut out: Vec<Perm> = seen.into_iter().collect();
        out.sort();
        Ok(out)
    }

    /// Normal closure of a subset: subgroup generated by all conjugates
    /// (the conjugation orbit under the group generators suffices).
    pub fn normal_closure(&self, seed: &[Perm]) -> Result<Vec<Perm>> {
        let mut conjugates: HashSet<Perm> = seed.iter().cloned().collect();
        let mut queue: Vec<Perm> = seed.to_vec();
        while let Some(x) = queue.pop() {
            for g in &self.0.generators {
                let y = x.conjugate_by(g);
                if conjugates.insert(y.clone()) {
                    queue.push(y);
                }
            }
        }
        let conj_vec: Vec<Perm> = conjugates.into_iter().collect();
        self.subgroup_closure(&conj_vec)
    }

    /// Orders of the derived series G >= G' >= G'' >= ... until it stabilizes.
    pub fn derived_series_orders(&self) -> Result<Vec<u64>> {
        if let Some(v) = self.0.derived_orders.get() {
            return Ok(v.clone());
        }
        let mut orders = vec![self.order()];
        let mut current: Vec<Perm> = self.elements()?.as_ref().clone();
        loop {
            let derived = derived_subgroup_of(self, &current)?;
            let ord = derived.len() as u64;
            if ord == *orders.last().unwrap() {
                break;
            }
            orders.push(ord);
            if ord == 1 {
                break;
            }
            current = derived;
        }
        let _ = self.0.derived_orders.set(orders.clone());
        Ok(orders)
    }

    /// Elements of the derived subgroup of the subgroup given by `elems`.
    pub fn derived_of_elements(&self, elems: &[Perm]) -> Result<Vec<Perm>> {
        derived_subgroup_of(self, elems)
    }
}

/// Derived subgroup of the subgroup given by `elems`: the normal closure in
/// that subgroup of the commutators of a small generating set.
fn derived_subgroup_of(g: &PermGroup, elems: &[Perm]) -> Result<Vec<Perm>> {
    let gens = small_generating_set(elems);
    let mut seeds: HashSet<Perm> = HashSet::new();
    for a in &gens {
        for b in &gens {
            let c = a.commutator(b);
            if !c.is_identity() {
                seeds.insert(c);
            }
        }
    }
    // Conjugation orbit of the seeds under the subgroup's generators.
    let mut conj: HashSet<Perm> = seeds.clone();
    let mut queue: Vec<Perm> = seeds.into_iter().collect();
    while let Some(x) = queue.pop() {
        for h in &gens {
            let y = x.conjugate_by(h);
            if conj.insert(y.clone()) {
                queue.push(y);
            }
        }
    }
    let seed: Vec<Perm> = conj.into_iter().collect();
    g.subgroup_closure(&seed)
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.name {
            Some(n) => write!(f, "{} (order {}, degree {})", n, self.0.order, self.0.degree),
            None => write!(f, "group of order {} on {} points", self.0.order, self.0.degree),
        }
    }
}

/// A subgroup of a parent group, held as a sorted element list; a small
/// generating set is derived lazily.
#[derive(Clone)]
pub struct Subgroup {
    parent: PermGroup,
    elements: Arc<Vec<Perm>>,
    generators: Arc<OnceLock<Vec<Perm>>>,
}

impl Subgroup {
    pub fn from_elements(parent: &PermGroup, mut elements: Vec<Perm>) -> Subgroup {
        elements.sort();
        elements.dedup();
        Subgroup {
            parent: parent.clone(),
            elements: Arc::new(elements),
            generators: Arc::new(OnceLock::new()),
        }
    }

    pub fn trivial(parent: &PermGroup) -> Subgroup {
        Subgroup::from_elements(parent, vec![parent.identity()])
    }

    pub fn full(parent: &PermGroup) -> Result<Subgroup> {
        let elems = parent.elements()?;
        let generators = Arc::new(OnceLock::new());
        let _ = generators.set(parent.generators().to_vec());
        Ok(Subgroup {
            parent: parent.clone(),
            elements: elems.clone(),
            generators,
        })
    }

    pub fn parent(&self) -> &PermGroup {
        &self.parent
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn elements(&self) -> &Arc<Vec<Perm>> {
        &self.elements
    }

    pub fn generators(&self) -> &[Perm] {
        self.generators
            .get_or_init(|| small_generating_set(&self.elements))
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_full(&self) -> bool {
        self.order() == self.parent.order()
    }

    /// Checks normality in the parent by conjugating generators.
    pub fn is_normal(&self) -> bool {
        for g in self.parent.generators() {
            for h in self.generators() {
                if !self.contains(&h.conjugate_by(g)) {
                    return false;
                }
            }
        }
        true
    }

    pub fn contains_subgroup(&self, other: &Subgroup) -> bool {
        if other.order() > self.order() {
            return false;
        }
        other.elements.iter().all(|g| self.contains(g))
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        let elems: Vec<Perm> = self
            .elements
            .iter()
            .filter(|e| other.contains(e))
            .cloned()
            .collect();
        Subgroup::from_elements(&self.parent, elems)
    }

    /// Join of two normal subgroups (the product set, closed by construction).
    pub fn join_normal(&self, other: &Subgroup) -> Result<Subgroup> {
        let mut seed: Vec<Perm> = self.generators().to_vec();
        seed.extend(other.generators().iter().cloned());
        let elems = self.parent.subgroup_closure(&seed)?;
        Ok(Subgroup::from_elements(&self.parent, elems))
    }

    /// The subgroup viewed as a standalone permutation group on the same points.
    pub fn as_group(&self) -> Result<PermGroup> {
        PermGroup::from_generators(self.parent.degree(), self.generators().to_vec())
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}
impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "subgroup of order {}", self.order())
    }
}

/// BFS closure of the generators, failing fast past the order cap.
fn enumerate_elements(degree: usize, gens: &[Perm]) -> Result<Vec<Perm>> {
    let mut seen: HashSet<Perm> = HashSet::new();
    let id = Perm::identity(degree);
    seen.insert(id.clone());
    let mut queue = vec![id];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head].clone();
        head += 1;
        for g in gens {
            let y = x.compose(g);
            if seen.insert(y.clone()) {
                if seen.len() as u64 > ORDER_CAP {
                    return Err(Error::Resource {
                        what: "group order (element enumeration)",
                        limit: ORDER_CAP,
                        actual: seen.len() as u64,
                    });
                }
                queue.push(y);
            }
        }
    }
    let mut all: Vec<Perm> = seen.into_iter().collect();
    all.sort();
    Ok(all)
}

/// Greedy small generating set for a sorted element list: scan elements by
/// descending order, keep those that enlarge the running closure.
pub fn small_generating_set(elements: &[Perm]) -> Vec<Perm> {
    if elements.len() <= 1 {
        return Vec::new();
    }
    let degree = elements[0].degree();
    let orders: Vec<u64> = elements.iter().map(|p| p.order()).collect();
    let mut order_idx: Vec<usize> = (0..elements.len()).collect();
    order_idx.sort_by_key(|&i| std::cmp::Reverse(orders[i]));
    let by_order: Vec<&Perm> = order_idx.iter().map(|&i| &elements[i]).collect();
    let mut gens: Vec<Perm> = Vec::new();
    let mut closure: HashSet<Perm> = HashSet::new();
    closure.insert(Perm::identity(degree));
    for cand in by_order {
        if closure.contains(cand) {
            continue;
        }
        gens.push(cand.clone());
        // Recompute closure with the new generator.
        let mut queue: Vec<Perm> = closure.iter().cloned().collect();
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head].clone();
            head += 1;
            for g in &gens {
                let y = x.compose(g);
                if closure.insert(y.clone()) {
                    queue.push(y);
                }
            }
        }
        if closure.len() == elements.len() {
            break;
        }
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> PermGroup {
        PermGroup::from_generators(
            3,
            vec![
                Perm::parse_cycles("(1 2)", 3).unwrap(),
                Perm::parse_cycles("(1 2 3)", 3).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn order_via_chain_matches_enumeration() {
        // Oracle: exhaustive closure count, independent of the chain.
        let g = s3();
        assert_eq!(g.order(), 6);
        assert_eq!(g.elements().unwrap().len(), 6);
        assert_eq!(g.chain_orbit_product(), 6);
    }

    #[test]
    fn trivial_group() {
        let g = PermGroup::from_generators(1, vec![]).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.is_trivial());
    }

    #[test]
    fn membership() {
        let g = s3();
        assert!(g.contains(&Perm::parse_cycles("(1 3)", 3).unwrap()));
        let h = PermGroup::from_generators(3, vec![Perm::parse_cycles("(1 2 3)", 3).unwrap()])
            .unwrap();
        assert_eq!(h.order(), 3);
        assert!(!h.contains(&Perm::parse_cycles("(1 2)", 3).unwrap()));
        for gen in g.generators() {
            assert!(g.contains(gen));
        }
    }

    #[test]
    fn conjugacy_classes_of_s3() {
        let g = s3();
        let cc = g.conjugacy_classes().unwrap();
        let mut sizes: Vec<usize> = cc.classes.iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert_eq!(g.center_order().unwrap(), 1);
    }

    #[test]
    fn derived_series() {
        let g = s3();
        assert_eq!(g.derived_series_orders().unwrap(), vec![6, 3, 1]);
    }

    #[test]
    fn subgroup_basics() {
        let g = s3();
        let a3: Vec<Perm> = g
            .elements()
            .unwrap()
            .iter()
            .filter(|p| p.order() != 2)
            .cloned()
            .collect();
        let h = Subgroup::from_elements(&g, a3);
        assert_eq!(h.order(), 3);
        assert!(h.is_normal());
        let two = Subgroup::from_elements(
            &g,
            vec![g.identity(), Perm::parse_cycles("(1 2)", 3).unwrap()],
        );
        assert!(!two.is_normal());
        assert_eq!(h.intersect(&two).order(), 1);
    }

    #[test]
    fn degree_cap_enforced() {
        assert!(matches!(
            PermGroup::from_generators(DEGREE_CAP + 1, vec![]),
            Err(Error::Resource { .. })
        ));
    }
}
