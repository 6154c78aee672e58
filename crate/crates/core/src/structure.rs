//! Structural computations: normal subgroup enumeration, quotients with their
//! natural maps, socle and chief series, centralizers of sections, the
//! Frattini subgroup, and class residuals.

use crate::error::{Error, Result};
use crate::group::{small_generating_set, PermGroup, Subgroup, LATTICE_CAP};
use crate::perm::Perm;
use std::collections::{HashMap, HashSet};
use std::sync::Arc;

/// Cap on |G| for the dense multiplication table used by the subgroup
/// enumeration routines.
const TABLE_CAP: u64 = 2_048;

/// Dense multiplication table over element indices.
pub struct MulTable {
    n: usize,
    t: Vec<u32>,
}

impl MulTable {
    pub fn build(g: &PermGroup) -> Result<Option<MulTable>> {
        if g.order() > TABLE_CAP {
            return Ok(None);
        }
        let elems = g.elements()?;
        let idx = g.element_indices()?;
        let n = elems.len();
        let mut t = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                t[i * n + j] = idx[&elems[i].compose(&elems[j])];
            }
        }
        Ok(Some(MulTable { n, t }))
    }

    #[inline]
    pub fn mul(&self, i: u32, j: u32) -> u32 {
        self.t[i as usize * self.n + j as usize]
    }

    /// Subgroup closure of a seed set of element indices (0 is not assumed to
    /// be the identity; the identity index must be supplied by the caller or
    /// arises as a power). Returns sorted indices.
    pub fn closure(&self, seed: &[u32]) -> Vec<u32> {
        let mut member = vec![false; self.n];
        let mut list: Vec<u32> = Vec::new();
        for &s in seed {
            if !member[s as usize] {
                member[s as usize] = true;
                list.push(s);
            }
        }
        let mut head = 0;
        while head < list.len() {
            let x = list[head];
            head += 1;
            // Multiply against every current member, both sides.
            for k in 0..list.len() {
                let y = list[k];
                for z in [self.mul(x, y), self.mul(y, x)] {
                    if !member[z as usize] {
                        member[z as usize] = true;
                        list.push(z);
                    }
                }
            }
        }
        list.sort_unstable();
        list
    }

    /// Product set of two subgroups given as index lists (exact for normal
    /// factors).
    pub fn product_set(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let mut member = vec![false; self.n];
        let mut out = Vec::new();
        for &x in a {
            for &y in b {
                let z = self.mul(x, y);
                if !member[z as usize] {
                    member[z as usize] = true;
                    out.push(z);
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// All normal subgroups of `g`, sorted by (order, element list).
///
/// Every normal subgroup is a union of conjugacy classes and is generated by
/// the classes it contains, so the list is the join-closure of the normal
/// closures of single classes. Joins of normal subgroups are product sets.
pub fn normal_subgroups(g: &PermGroup) -> Result<Vec<Subgroup>> {
    let elems = g.elements()?;
    let classes = g.conjugacy_classes()?;
    let table = MulTable::build(g)?;
    let id_idx = g.element_index(&g.identity())?;
    let mut atom_sets: HashSet<Vec<u32>> = HashSet::new();
    match &table {
        Some(t) => {
            for class in &classes.classes {
                let mut seed = class.clone();
                seed.push(id_idx);
                atom_sets.insert(t.closure(&seed));
            }
        }
        None => {
            for class in &classes.classes {
                let seed: Vec<Perm> =
                    class.iter().map(|&i| elems[i as usize].clone()).collect();
                let sub = g.subgroup_closure(&seed)?;
                let idxs: Result<Vec<u32>> =
                    sub.iter().map(|p| g.element_index(p)).collect();
                let mut idxs = idxs?;
                idxs.sort_unstable();
                atom_sets.insert(idxs);
            }
        }
    }
    let mut atoms: Vec<Vec<u32>> = atom_sets.into_iter().collect();
    atoms.sort();
    let mut found: HashSet<Vec<u32>> = HashSet::new();
    found.insert(vec![id_idx]);
    let mut queue: Vec<Vec<u32>> = Vec::new();
    for a in &atoms {
        if found.insert(a.clone()) {
            queue.push(a.clone());
        }
    }
    while let Some(s) = queue.pop() {
        for a in &atoms {
            if is_index_subset(a, &s) {
                continue;
            }
            let join = match &table {
                Some(t) => t.product_set(&s, a),
                None => {
                    let seed: Vec<Perm> = s
                        .iter()
                        .chain(a.iter())
                        .map(|&i| elems[i as usize].clone())
                        .collect();
                    let sub = g.subgroup_closure(&seed)?;
                    let idxs: Result<Vec<u32>> =
                        sub.iter().map(|p| g.element_index(p)).collect();
                    let mut idxs = idxs?;
                    idxs.sort_unstable();
                    idxs
                }
            };
            if found.insert(join.clone()) {
                queue.push(join);
            }
        }
    }
    let mut list: Vec<Vec<u32>> = found.into_iter().collect();
    list.sort_by_key(|s| (s.len(), s.clone()));
    Ok(list
        .into_iter()
        .map(|idxs| {
            let set: Vec<Perm> = idxs.iter().map(|&i| elems[i as usize].clone()).collect();
            Subgroup::from_elements(g, set)
        })
        .collect())
}

fn is_index_subset(a: &[u32], b: &[u32]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

/// Minimal normal subgroups: minimal nontrivial members of the normal lattice.
pub fn minimal_normal_subgroups(g: &PermGroup) -> Result<Vec<Subgroup>> {
    let normals = normal_subgroups(g)?;
    let proper: Vec<&Subgroup> = normals.iter().filter(|n| !n.is_trivial()).collect();
    let mut minimal = Vec::new();
    'outer: for n in &proper {
        for m in &proper {
            if m.order() < n.order() && n.contains_subgroup(m) {
                continue 'outer;
            }
        }
        minimal.push((*n).clone());
    }
    Ok(minimal)
}

/// Socle data: the minimal normal subgroups, their join, and the monolith
/// when there is exactly one minimal normal subgroup.
pub struct SocleData {
    pub minimal_normals: Vec<Subgroup>,
    pub socle: Subgroup,
    pub monolith: Option<Subgroup>,
}

pub fn socle_and_monolith(g: &PermGroup) -> Result<SocleData> {
    if g.is_trivial() {
        return Err(Error::precondition(
            "socle of the trivial group is undefined here",
        ));
    }
    let minimal_normals = minimal_normal_subgroups(g)?;
    let mut socle = minimal_normals[0].clone();
    for m in &minimal_normals[1..] {
        socle = socle.join_normal(m)?;
    }
    let monolith = if minimal_normals.len() == 1 {
        Some(minimal_normals[0].clone())
    } else {
        None
    };
    Ok(SocleData {
        minimal_normals,
        socle,
        monolith,
    })
}

/// A quotient group together with the natural map from the parent.
pub struct Quotient {
    pub group: PermGroup,
    parent: PermGroup,
    kernel: Arc<Vec<Perm>>,
    /// Sorted minimal coset representatives; coset i is `kernel * reps[i]`.
    reps: Vec<Perm>,
    /// Map parent element index -> coset index.
    coset_of: Vec<u32>,
}

impl Quotient {
    /// Image of a parent element in the quotient group.
    pub fn image(&self, x: &Perm) -> Result<Perm> {
        let n = self.reps.len();
        let idx = self.parent.element_indices()?;
        let mut img = vec![0u16; n];
        for (i, rep) in self.reps.iter().enumerate() {
            let y = rep.compose(x);
            img[i] = self.coset_of[idx[&y] as usize] as u16;
        }
        Perm::from_images(img)
    }

    /// Preimage in the parent of a set of quotient elements.
    pub fn preimage_elements(&self, quotient_elems: &[Perm]) -> Result<Vec<Perm>> {
        let parent_elems = self.parent.elements()?;
        let target: HashSet<&Perm> = quotient_elems.iter().collect();
        let mut out = Vec::new();
        for x in parent_elems.iter() {
            let im = self.image(x)?;
            if target.contains(&im) {
                out.push(x.clone());
            }
        }
        Ok(out)
    }

    pub fn kernel_elements(&self) -> &Arc<Vec<Perm>> {
        &self.kernel
    }
}

/// Quotient of `g` by the normal subgroup `n`, acting faithfully on the
/// right cosets of `n`.
pub fn quotient(g: &PermGroup, n: &Subgroup) -> Result<Quotient> {
    if !n.is_normal() {
        return Err(Error::precondition(
            "quotient requires a normal subgroup".to_string(),
        ));
    }
    let elems = g.elements()?;
    let idx = g.element_indices()?;
    let n_set: &Vec<Perm> = n.elements();
    // Partition into right cosets N*x with minimal-element representatives.
    let mut coset_of = vec![u32::MAX; elems.len()];
    let mut reps: Vec<Perm> = Vec::new();
    for (i, x) in elems.iter().enumerate() {
        if coset_of[i] != u32::MAX {
            continue;
        }
        let c = reps.len() as u32;
        let mut members: Vec<u32> = Vec::with_capacity(n_set.len());
        let mut min_elem: Option<Perm> = None;
        for h in n_set.iter() {
            let y = h.compose(x);
            let yi = idx[&y];
            members.push(yi);
            if min_elem.as_ref().map_or(true, |m| y < *m) {
                min_elem = Some(y);
            }
        }
        for yi in members {
            coset_of[yi as usize] = c;
        }
        reps.push(min_elem.unwrap());
    }
    // Renumber cosets so that representatives are sorted (identity coset first).
    let mut order: Vec<usize> = (0..reps.len()).collect();
    order.sort_by_key(|&i| reps[i].clone());
    let mut renum = vec![0u32; reps.len()];
    for (new_i, &old_i) in order.iter().enumerate() {
        renum[old_i] = new_i as u32;
    }
    let reps: Vec<Perm> = order.iter().map(|&i| reps[i].clone()).collect();
    for c in coset_of.iter_mut() {
        *c = renum[*c as usize];
    }
    let q_degree = reps.len();
    // Generator images: coset i * g = coset of reps[i]*g.
    let mut q_gens = Vec::new();
    for gen in g.generators() {
        let mut img = vec![0u16; q_degree];
        for (i, rep) in reps.iter().enumerate() {
            let y = rep.compose(gen);
            img[i] = coset_of[idx[&y] as usize] as u16;
        }
        q_gens.push(Perm::from_images(img)?);
    }
    let group = PermGroup::from_generators(q_degree.max(1), q_gens)?;
    Ok(Quotient {
        group,
        parent: g.clone(),
        kernel: Arc::new(n_set.clone()),
        reps,
        coset_of,
    })
}

/// Centralizer of the section H/K in G: elements g with [g, h] in K for all h.
pub fn section_centralizer(g: &PermGroup, h: &Subgroup, k: &Subgroup) -> Result<Subgroup> {
    if !h.is_normal() || !k.is_normal() {
        return Err(Error::precondition(
            "section centralizer needs normal H and K".to_string(),
        ));
    }
    if !h.contains_subgroup(k) {
        return Err(Error::precondition("K must lie inside H".to_string()));
    }
    let elems = g.elements()?;
    let mut cent = Vec::new();
    'outer: for x in elems.iter() {
        for hgen in h.generators() {
            if !k.contains(&x.commutator(hgen)) {
                continue 'outer;
            }
        }
        cent.push(x.clone());
    }
    Ok(Subgroup::from_elements(g, cent))
}

/// A chief series G = G_0 > G_1 > ... > G_k = 1 with every term normal in G
/// and no G-normal subgroup strictly between consecutive terms.
pub struct ChiefSeries {
    /// Descending chain of normal subgroups, starting at G and ending at 1.
    pub terms: Vec<Subgroup>,
}

impl ChiefSeries {
    /// The (upper, lower) pairs of consecutive terms.
    pub fn factors(&self) -> Vec<(Subgroup, Subgroup)> {
        self.terms
            .windows(2)
            .map(|w| (w[0].clone(), w[1].clone()))
            .collect()
    }

    pub fn factor_orders(&self) -> Vec<u64> {
        self.terms
            .windows(2)
            .map(|w| w[0].order() / w[1].order())
            .collect()
    }
}

/// Builds a chief series by ascending through minimal members of the normal
/// lattice above each term, then reversing the chain.
pub fn chief_series(g: &PermGroup) -> Result<ChiefSeries> {
    let normals = normal_subgroups(g)?;
    let mut chain: Vec<Subgroup> = vec![Subgroup::trivial(g)];
    loop {
        let current = chain.last().unwrap().clone();
        if current.order() == g.order() {
            break;
        }
        // Normals are sorted by order, so the first strict extension is minimal.
        let next = normals
            .iter()
            .find(|n| n.order() > current.order() && n.contains_subgroup(&current))
            .expect("G itself always extends the chain");
        chain.push(next.clone());
    }
    chain.reverse();
    Ok(ChiefSeries { terms: chain })
}

/// An alternative chief series that prefers a different minimal extension at
/// each ascent; used to cross-check series-independence of verdicts.
pub fn chief_series_alternative(g: &PermGroup) -> Result<ChiefSeries> {
    let normals = normal_subgroups(g)?;
    let mut chain: Vec<Subgroup> = vec![Subgroup::trivial(g)];
    loop {
        let current = chain.last().unwrap().clone();
        if current.order() == g.order() {
            break;
        }
        let extensions: Vec<&Subgroup> = normals
            .iter()
            .filter(|n| n.order() > current.order() && n.contains_subgroup(&current))
            .collect();
        let mut minimal: Vec<&Subgroup> = Vec::new();
        'outer: for n in &extensions {
            for m in &extensions {
                if m.order() < n.order() && n.contains_subgroup(m) {
                    continue 'outer;
                }
            }
            minimal.push(n);
        }
        // Last minimal extension instead of the first.
        let next = *minimal.last().expect("chain extension exists");
        chain.push(next.clone());
    }
    chain.reverse();
    Ok(ChiefSeries { terms: chain })
}

/// All subgroups of `g` (sorted element sets), via join-closure of the cyclic
/// subgroups. Bounded by `LATTICE_CAP`.
pub fn all_subgroups(g: &PermGroup) -> Result<Vec<Vec<Perm>>> {
    if g.order() > LATTICE_CAP {
        return Err(Error::Resource {
            what: "group order (subgroup lattice)",
            limit: LATTICE_CAP,
            actual: g.order(),
        });
    }
    let elems = g.elements()?;
    let table = MulTable::build(g)?.expect("lattice cap is below the table cap");
    let id_idx = g.element_index(&g.identity())?;
    // Cyclic subgroups as index sets, remembering one generator each.
    let mut cyclics: HashMap<Vec<u32>, u32> = HashMap::new();
    for (i, _) in elems.iter().enumerate() {
        let mut sub = vec![id_idx];
        let mut x = i as u32;
        while x != id_idx {
            sub.push(x);
            x = table.mul(x, i as u32);
        }
        sub.sort_unstable();
        cyclics.entry(sub).or_insert(i as u32);
    }
    let cyclics: Vec<(Vec<u32>, u32)> = {
        let mut v: Vec<(Vec<u32>, u32)> = cyclics.into_iter().collect();
        v.sort();
        v
    };
    let mut found: HashSet<Vec<u32>> = cyclics.iter().map(|(s, _)| s.clone()).collect();
    let mut work: Vec<Vec<u32>> = found.iter().cloned().collect::<Vec<Vec<u32>>>();
    while let Some(s) = work.pop() {
        for (c, cgen) in &cyclics {
            if is_index_subset(c, &s) {
                continue;
            }
            let mut seed = s.clone();
            seed.push(*cgen);
            let join = table.closure(&seed);
            if found.insert(join.clone()) {
                work.push(join);
            }
        }
    }
    let mut list: Vec<Vec<u32>> = found.into_iter().collect();
    list.sort_by_key(|s| (s.len(), s.clone()));
    Ok(list
        .into_iter()
        .map(|idxs| idxs.iter().map(|&i| elems[i as usize].clone()).collect())
        .collect())
}

/// Frattini subgroup: intersection of the maximal subgroups.
pub fn frattini(g: &PermGroup) -> Result<Subgroup> {
    if g.is_trivial() {
        return Ok(Subgroup::trivial(g));
    }
    let subs = all_subgroups(g)?;
    let full_order = g.order() as usize;
    let proper: Vec<&Vec<Perm>> = subs.iter().filter(|s| s.len() < full_order).collect();
    let mut maximal: Vec<&Vec<Perm>> = Vec::new();
    'outer: for s in &proper {
        for t in &proper {
            if t.len() > s.len() && s.iter().all(|x| t.binary_search(x).is_ok()) {
                continue 'outer;
            }
        }
        maximal.push(s);
    }
    let elems = g.elements()?;
    let mut inter: Vec<Perm> = elems.as_ref().clone();
    for m in maximal {
        inter.retain(|x| m.binary_search(x).is_ok());
    }
    Ok(Subgroup::from_elements(g, inter))
}

/// Three-valued membership verdict used by the class machinery.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl Verdict {
    pub fn and(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (No, _) | (_, No) => No,
            (Yes, Yes) => Yes,
            _ => Unknown,
        }
    }

    pub fn or(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Yes, _) | (_, Yes) => Yes,
            (No, No) => No,
            _ => Unknown,
        }
    }

    pub fn from_bool(b: bool) -> Verdict {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }

    pub fn is_definite(self) -> bool {
        self != Verdict::Unknown
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Yes => write!(f, "Yes"),
            Verdict::No => write!(f, "No"),
            Verdict::Unknown => write!(f, "Unknown"),
        }
    }
}

/// Residual of `g` with respect to a class given by its membership test on
/// quotients: the intersection of all normal subgroups with quotient in the
/// class. Errors with the blocking subgroup when a quotient query is Unknown.
pub fn residual_by<F>(g: &PermGroup, mut member: F) -> Result<Subgroup>
where
    F: FnMut(&PermGroup) -> Result<Verdict>,
{
    let normals = normal_subgroups(g)?;
    let mut goods: Vec<&Subgroup> = Vec::new();
    for n in &normals {
        let q = quotient(g, n)?;
        match member(&q.group)? {
            Verdict::Yes => goods.push(n),
            Verdict::No => {}
            Verdict::Unknown => {
                return Err(Error::Indeterminate(format!(
                    "membership of G/N unknown for |N| = {}",
                    n.order()
                )))
            }
        }
    }
    if goods.is_empty() {
        // Even G/G = 1 failed, so the class is empty; residual G by convention.
        return Subgroup::full(g);
    }
    let mut inter = goods[0].clone();
    for n in &goods[1..] {
        inter = inter.intersect(n);
    }
    Ok(inter)
}

/// Small generating set re-export for callers working with raw element lists.
pub fn generating_set(elements: &[Perm]) -> Vec<Perm> {
    small_generating_set(elements)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::*;

    /// Brute-force oracle: count the class unions that are closed under
    /// multiplication (independent of the join-closure implementation).
    fn normal_count_oracle(g: &PermGroup) -> usize {
        let elems = g.elements().unwrap();
        let classes = g.conjugacy_classes().unwrap();
        let k = classes.classes.len();
        assert!(k <= 20, "oracle only for small class counts");
        let idx = g.element_indices().unwrap();
        let mut count = 0;
        for mask in 0..(1u32 << k) {
            let id_class = classes.class_of[idx[&g.identity()] as usize];
            if mask & (1 << id_class) == 0 {
                continue;
            }
            let members: Vec<&Perm> = (0..k)
                .filter(|i| mask & (1 << i) != 0)
                .flat_map(|i| classes.classes[i].iter())
                .map(|&e| &elems[e as usize])
                .collect();
            let set: HashSet<&Perm> = members.iter().copied().collect();
            let closed = members
                .iter()
                .all(|a| members.iter().all(|b| set.contains(&a.compose(b))));
            if closed {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn normal_subgroups_s3_d4_a5() {
        let s3 = symmetric(3).unwrap();
        let ns = normal_subgroups(&s3).unwrap();
        assert_eq!(ns.len(), 3);
        assert_eq!(ns.len(), normal_count_oracle(&s3));

        let d4 = dihedral(4).unwrap();
        let nd4 = normal_subgroups(&d4).unwrap();
        assert_eq!(nd4.len(), 6);
        assert_eq!(nd4.len(), normal_count_oracle(&d4));

        let a5 = alternating(5).unwrap();
        assert_eq!(normal_subgroups(&a5).unwrap().len(), 2);
    }

    #[test]
    fn normal_lattice_closed_under_meet_and_join() {
        for g in [symmetric(4).unwrap(), dihedral(6).unwrap()] {
            let ns = normal_subgroups(&g).unwrap();
            for a in &ns {
                assert!(a.is_normal());
                for b in &ns {
                    let meet = a.intersect(b);
                    assert!(ns.iter().any(|n| *n == meet));
                    let join = a.join_normal(b).unwrap();
                    assert!(ns.iter().any(|n| *n == join));
                }
            }
        }
    }

    #[test]
    fn quotient_s3_by_a3() {
        let s3 = symmetric(3).unwrap();
        let ns = normal_subgroups(&s3).unwrap();
        let a3 = ns.iter().find(|n| n.order() == 3).unwrap();
        let q = quotient(&s3, a3).unwrap();
        assert_eq!(q.group.order(), 2);
        assert_eq!(q.group.order() * a3.order(), s3.order());
        let x = Perm::parse_cycles("(1 2 3)", 3).unwrap();
        assert!(q.image(&x).unwrap().is_identity());
        let y = Perm::parse_cycles("(1 2)", 3).unwrap();
        assert!(!q.image(&y).unwrap().is_identity());
    }

    #[test]
    fn quotient_edge_cases() {
        let g = symmetric(3).unwrap();
        let whole = Subgroup::full(&g).unwrap();
        assert_eq!(quotient(&g, &whole).unwrap().group.order(), 1);
        let triv = Subgroup::trivial(&g);
        assert_eq!(quotient(&g, &triv).unwrap().group.order(), 6);
        let two = Subgroup::from_elements(
            &g,
            vec![g.identity(), Perm::parse_cycles("(1 2)", 3).unwrap()],
        );
        assert!(quotient(&g, &two).is_err());
    }

    #[test]
    fn quotient_composition_consistent() {
        // |(G/N) / (M/N)| = |G/M| for N <= M both normal.
        let g = dihedral(6).unwrap();
        let ns = normal_subgroups(&g).unwrap();
        for n in &ns {
            for m in &ns {
                if m.contains_subgroup(n) {
                    let q1 = quotient(&g, m).unwrap();
                    let qn = quotient(&g, n).unwrap();
                    let m_img: Vec<Perm> =
                        m.elements().iter().map(|x| qn.image(x).unwrap()).collect();
                    let m_in_q = Subgroup::from_elements(&qn.group, m_img);
                    let q2 = quotient(&qn.group, &m_in_q).unwrap();
                    assert_eq!(q1.group.order(), q2.group.order());
                }
            }
        }
    }

    #[test]
    fn socle_cases() {
        let s3 = symmetric(3).unwrap();
        let soc = socle_and_monolith(&s3).unwrap();
        assert_eq!(soc.minimal_normals.len(), 1);
        assert_eq!(soc.socle.order(), 3);
        assert_eq!(soc.monolith.as_ref().unwrap().order(), 3);

        let c6 = cyclic(6).unwrap();
        let soc6 = socle_and_monolith(&c6).unwrap();
        let mut orders: Vec<u64> = soc6.minimal_normals.iter().map(|m| m.order()).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![2, 3]);
        assert_eq!(soc6.socle.order(), 6);
        assert!(soc6.monolith.is_none());

        let a5 = alternating(5).unwrap();
        let soca5 = socle_and_monolith(&a5).unwrap();
        assert_eq!(soca5.socle.order(), 60);
        assert_eq!(soca5.monolith.as_ref().unwrap().order(), 60);

        assert!(socle_and_monolith(&cyclic(1).unwrap()).is_err());
    }

    #[test]
    fn chief_series_s3_and_s4() {
        let s3 = symmetric(3).unwrap();
        let cs = chief_series(&s3).unwrap();
        assert_eq!(cs.factor_orders(), vec![2, 3]);

        let s4 = symmetric(4).unwrap();
        let cs4 = chief_series(&s4).unwrap();
        assert_eq!(cs4.factor_orders(), vec![2, 3, 4]);
        // Chief factors admit no intermediate G-normal subgroup.
        let normals = normal_subgroups(&s4).unwrap();
        for (upper, lower) in cs4.factors() {
            for n in &normals {
                let between = n.order() > lower.order()
                    && n.order() < upper.order()
                    && upper.contains_subgroup(n)
                    && n.contains_subgroup(&lower);
                assert!(!between, "chief factor admits intermediate normal");
            }
        }
    }

    #[test]
    fn section_centralizer_s3() {
        let s3 = symmetric(3).unwrap();
        let ns = normal_subgroups(&s3).unwrap();
        let a3 = ns.iter().find(|n| n.order() == 3).unwrap();
        let triv = Subgroup::trivial(&s3);
        let c = section_centralizer(&s3, a3, &triv).unwrap();
        assert_eq!(c.order(), 3);
        // Abelian case: the centralizer is all of G.
        let c6 = cyclic(6).unwrap();
        let ns6 = normal_subgroups(&c6).unwrap();
        let h = ns6.iter().find(|n| n.order() == 3).unwrap();
        let t6 = Subgroup::trivial(&c6);
        assert_eq!(section_centralizer(&c6, h, &t6).unwrap().order(), 6);
    }

    #[test]
    fn frattini_values() {
        // Oracle: the full subgroup lattice of C4 is 1 < C2 < C4.
        let c4 = cyclic(4).unwrap();
        assert_eq!(all_subgroups(&c4).unwrap().len(), 3);
        assert_eq!(frattini(&c4).unwrap().order(), 2);
        assert_eq!(frattini(&symmetric(3).unwrap()).unwrap().order(), 1);
        let v4 = dihedral(2).unwrap();
        assert_eq!(frattini(&v4).unwrap().order(), 1);
        assert_eq!(frattini(&quaternion(8).unwrap()).unwrap().order(), 2);
    }

    #[test]
    fn all_subgroups_s4_count() {
        let s4 = symmetric(4).unwrap();
        assert_eq!(all_subgroups(&s4).unwrap().len(), 30);
    }

    #[test]
    fn residual_examples() {
        let s3 = symmetric(3).unwrap();
        let r = residual_by(&s3, |q| {
            Ok(Verdict::from_bool(q.order().is_power_of_two()))
        })
        .unwrap();
        assert_eq!(r.order(), 3);
        let r_all = residual_by(&s3, |_| Ok(Verdict::Yes)).unwrap();
        assert_eq!(r_all.order(), 1);
        let r_one = residual_by(&s3, |q| Ok(Verdict::from_bool(q.order() == 1))).unwrap();
        assert_eq!(r_one.order(), 6);
        // Minimality: no strictly smaller normal subgroup has 2-group quotient.
        let ns = normal_subgroups(&s3).unwrap();
        for n in &ns {
            if n.order() < 3 {
                let q = quotient(&s3, n).unwrap();
                assert!(!q.group.order().is_power_of_two());
            }
        }
    }
}
