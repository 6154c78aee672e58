//! The evaluation session: an isomorphism-deduplicated intern table of groups,
//! a quotient-closed universe, and the memoized three-valued membership engine
//! for class expressions.
//!
//! Definite verdicts are sound by construction: Yes comes from an explicit
//! closure derivation, No from a certificate (predicate separator, coverage
//! bound, or monolithic descent). Everything else is reported Unknown.

use crate::classes::{BlockSel, ClassExpr, Functor, GenBase, GenKind, GroupId, SigmaFn};
use crate::error::{Error, Result};
use crate::group::{PermGroup, Subgroup, LATTICE_CAP};
use crate::iso::{self, Fingerprint};
use crate::perm::Perm;
use crate::sigma::{self, BlockId, SigmaPartition};
use crate::structure::{self, Verdict};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

/// A normal subgroup of a session representative, with the interned
/// isomorphism classes of the subgroup itself and of the quotient.
#[derive(Clone)]
pub struct NormalRec {
    pub subgroup: Subgroup,
    pub sub_id: GroupId,
    pub quot_id: GroupId,
}

struct GroupSigmaData {
    blocks: BTreeSet<BlockId>,
    soluble: bool,
    nilpotent: bool,
    abelian: bool,
    exponent: u64,
    /// Derived length; None when the derived series does not reach 1.
    derived_length: Option<u32>,
}

struct Entry {
    group: PermGroup,
    fp: Fingerprint,
}

#[derive(Default)]
struct Inner {
    groups: Vec<Entry>,
    by_order: HashMap<u64, Vec<GroupId>>,
    memo: HashMap<(ClassExpr, GroupId), Verdict>,
    fixpoints: HashMap<ClassExpr, Arc<BTreeSet<GroupId>>>,
    normal_recs: HashMap<GroupId, Arc<Vec<NormalRec>>>,
    all_sub_ids: HashMap<GroupId, Arc<Vec<GroupId>>>,
    fblock_quot: HashMap<(GroupId, BlockId), GroupId>,
    sigma_data: HashMap<GroupId, Arc<GroupSigmaData>>,
    minimal_normals: HashMap<GroupId, Arc<Vec<usize>>>,
}

/// Seed list and order bound for a universe.
pub struct UniverseSpec {
    pub bound: u64,
    pub seeds: Vec<(String, PermGroup)>,
}

/// An evaluation session: sigma-partition, interned groups, universe, caches.
pub struct Session {
    sigma: SigmaPartition,
    bound: u64,
    state: Mutex<Inner>,
    universe: Vec<GroupId>,
    catalog: BTreeMap<String, GroupId>,
}

impl Session {
    /// Builds a session: interns the seeds (erroring when a seed exceeds the
    /// bound) and closes the universe under quotients up to isomorphism.
    pub fn new(sigma: SigmaPartition, spec: UniverseSpec) -> Result<Session> {
        let session = Session {
            sigma,
            bound: spec.bound,
            state: Mutex::new(Inner::default()),
            universe: Vec::new(),
            catalog: BTreeMap::new(),
        };
        let mut universe: BTreeSet<GroupId> = BTreeSet::new();
        let mut catalog = BTreeMap::new();
        for (name, g) in &spec.seeds {
            if g.order() > spec.bound {
                return Err(Error::input(format!(
                    "seed {name} has order {} beyond the bound {}",
                    g.order(),
                    spec.bound
                )));
            }
            let id = session.intern(g)?;
            universe.insert(id);
            catalog.entry(name.clone()).or_insert(id);
        }
        // Quotient closure.
        let mut work: Vec<GroupId> = universe.iter().copied().collect();
        while let Some(gid) = work.pop() {
            for rec in session.normal_recs(gid)?.iter() {
                if universe.insert(rec.quot_id) {
                    work.push(rec.quot_id);
                }
            }
        }
        let mut universe: Vec<GroupId> = universe.into_iter().collect();
        universe.sort_by_key(|&id| (session.group(id).order(), id));
        Ok(Session {
            universe,
            catalog,
            ..session
        })
    }

    pub fn sigma(&self) -> &SigmaPartition {
        &self.sigma
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// Universe members (sorted by order, then intern id).
    pub fn universe(&self) -> &[GroupId] {
        &self.universe
    }

    /// Universe members with order at most `max_order`.
    pub fn universe_upto(&self, max_order: u64) -> Vec<GroupId> {
        self.universe
            .iter()
            .copied()
            .filter(|&id| self.group(id).order() <= max_order)
            .collect()
    }

    pub fn catalog(&self) -> &BTreeMap<String, GroupId> {
        &self.catalog
    }

    pub fn lookup(&self, name: &str) -> Option<GroupId> {
        self.catalog.get(name).copied()
    }

    pub fn group(&self, id: GroupId) -> PermGroup {
        let state = self.state.lock().expect("session state");
        state.groups[id.0 as usize].group.clone()
    }

    pub fn group_count(&self) -> usize {
        self.state.lock().expect("session state").groups.len()
    }

    /// Display name for an interned group: seed name if it has one, else a
    /// synthetic `order<N>#<id>` tag.
    pub fn group_label(&self, id: GroupId) -> String {
        let g = self.group(id);
        match g.name() {
            Some(n) => n.to_string(),
            None => format!("order{}#{}", g.order(), id.0),
        }
    }

    /// Interns a group up to isomorphism and returns its id.
    pub fn intern(&self, g: &PermGroup) -> Result<GroupId> {
        let fp = iso::fingerprint(g)?;
        let mut state = self.state.lock().expect("session state");
        if let Some(cands) = state.by_order.get(&g.order()) {
            let cands = cands.clone();
            for id in cands {
                let entry = &state.groups[id.0 as usize];
                if entry.fp == fp {
                    let existing = entry.group.clone();
                    if iso::is_isomorphic(&existing, g)? {
                        return Ok(id);
                    }
                }
            }
        }
        let id = GroupId(state.groups.len() as u32);
        state.by_order.entry(g.order()).or_default().push(id);
        state.groups.push(Entry {
            group: g.clone(),
            fp,
        });
        Ok(id)
    }

    pub fn sigma_blocks(&self, id: GroupId) -> Result<BTreeSet<BlockId>> {
        Ok(self.group_sigma(id)?.blocks.clone())
    }

    fn group_sigma(&self, id: GroupId) -> Result<Arc<GroupSigmaData>> {
        {
            let state = self.state.lock().expect("session state");
            if let Some(d) = state.sigma_data.get(&id) {
                return Ok(d.clone());
            }
        }
        let g = self.group(id);
        let blocks = self.sigma.sigma_of_group(&g);
        let soluble = sigma::is_sigma_soluble(&self.sigma, &g)?;
        let nilpotent = sigma::is_sigma_nilpotent(&self.sigma, &g)?;
        let abelian = g.is_abelian();
        let exponent = g
            .elements()?
            .iter()
            .fold(1u64, |acc, e| crate::perm::lcm(acc, e.order()));
        let dorders = g.derived_series_orders()?;
        let derived_length = if *dorders.last().unwrap() == 1 {
            Some((dorders.len() - 1) as u32)
        } else {
            None
        };
        let data = Arc::new(GroupSigmaData {
            blocks,
            soluble,
            nilpotent,
            abelian,
            exponent,
            derived_length,
        });
        let mut state = self.state.lock().expect("session state");
        state.sigma_data.insert(id, data.clone());
        Ok(data)
    }

    /// Normal subgroups of the representative with interned quotients.
    pub fn normal_recs(&self, id: GroupId) -> Result<Arc<Vec<NormalRec>>> {
        {
            let state = self.state.lock().expect("session state");
            if let Some(r) = state.normal_recs.get(&id) {
                return Ok(r.clone());
            }
        }
        let g = self.group(id);
        let normals = structure::normal_subgroups(&g)?;
        let mut recs = Vec::with_capacity(normals.len());
        for n in normals {
            let sub_id = self.intern(&n.as_group()?)?;
            let q = structure::quotient(&g, &n)?;
            let quot_id = self.intern(&q.group)?;
            recs.push(NormalRec {
                subgroup: n,
                sub_id,
                quot_id,
            });
        }
        let recs = Arc::new(recs);
        let mut state = self.state.lock().expect("session state");
        state.normal_recs.insert(id, recs.clone());
        Ok(recs)
    }

    /// Indices into `normal_recs` of the minimal nontrivial normal subgroups.
    fn minimal_normal_indices(&self, id: GroupId) -> Result<Arc<Vec<usize>>> {
        {
            let state = self.state.lock().expect("session state");
            if let Some(r) = state.minimal_normals.get(&id) {
                return Ok(r.clone());
            }
        }
        let recs = self.normal_recs(id)?;
        let mut minimal = Vec::new();
        'outer: for (i, r) in recs.iter().enumerate() {
            if r.subgroup.is_trivial() {
                continue;
            }
            for s in recs.iter() {
                if s.subgroup.is_trivial() {
                    continue;
                }
                if s.subgroup.order() < r.subgroup.order()
                    && r.subgroup.contains_subgroup(&s.subgroup)
                {
                    continue 'outer;
                }
            }
            minimal.push(i);
        }
        let minimal = Arc::new(minimal);
        let mut state = self.state.lock().expect("session state");
        state.minimal_normals.insert(id, minimal.clone());
        Ok(minimal)
    }

    /// Interned iso classes of all subgroups (bounded by the lattice cap).
    pub fn all_subgroup_ids(&self, id: GroupId) -> Result<Arc<Vec<GroupId>>> {
        {
            let state = self.state.lock().expect("session state");
            if let Some(r) = state.all_sub_ids.get(&id) {
                return Ok(r.clone());
            }
        }
        let g = self.group(id);
        if g.order() > LATTICE_CAP {
            return Err(Error::Resource {
                what: "group order (subgroup lattice)",
                limit: LATTICE_CAP,
                actual: g.order(),
            });
        }
        let subs = structure::all_subgroups(&g)?;
        let mut ids = BTreeSet::new();
        for s in subs {
            let sub = Subgroup::from_elements(&g, s);
            ids.insert(self.intern(&sub.as_group()?)?);
        }
        let ids = Arc::new(ids.into_iter().collect::<Vec<_>>());
        let mut state = self.state.lock().expect("session state");
        state.all_sub_ids.insert(id, ids.clone());
        Ok(ids)
    }

    /// Interned quotient G / F_block(G).
    pub fn fblock_quotient(&self, id: GroupId, block: &str) -> Result<GroupId> {
        {
            let state = self.state.lock().expect("session state");
            if let Some(&q) = state.fblock_quot.get(&(id, block.to_string())) {
                return Ok(q);
            }
        }
        let g = self.group(id);
        let radical = sigma::f_block(&self.sigma, &g, block)?;
        let q = structure::quotient(&g, &radical)?;
        let qid = self.intern(&q.group)?;
        let mut state = self.state.lock().expect("session state");
        state.fblock_quot.insert((id, block.to_string()), qid);
        Ok(qid)
    }

    // ------------------------------------------------------------------
    // Membership engine
    // ------------------------------------------------------------------

    pub fn member(&self, c: &ClassExpr, id: GroupId) -> Result<Verdict> {
        {
            let state = self.state.lock().expect("session state");
            if let Some(&v) = state.memo.get(&(c.clone(), id)) {
                return Ok(v);
            }
        }
        let v = self.eval(c, id)?;
        let mut state = self.state.lock().expect("session state");
        state.memo.insert((c.clone(), id), v);
        Ok(v)
    }

    /// Convenience wrapper interning the group first.
    pub fn member_group(&self, c: &ClassExpr, g: &PermGroup) -> Result<Verdict> {
        let id = self.intern(g)?;
        self.member(c, id)
    }

    fn eval(&self, c: &ClassExpr, id: GroupId) -> Result<Verdict> {
        match c {
            ClassExpr::Empty => Ok(Verdict::No),
            ClassExpr::One => Ok(Verdict::from_bool(self.group(id).is_trivial())),
            ClassExpr::All => Ok(Verdict::Yes),
            ClassExpr::Gpi(sel) => {
                let blocks = self.sigma_blocks(id)?;
                Ok(Verdict::from_bool(sel.contains_all(&blocks)))
            }
            ClassExpr::Ssol(sel) => {
                let data = self.group_sigma(id)?;
                Ok(Verdict::from_bool(
                    data.soluble && sel.contains_all(&data.blocks),
                ))
            }
            ClassExpr::Nsigma => Ok(Verdict::from_bool(self.group_sigma(id)?.nilpotent)),
            ClassExpr::Meet(items) => {
                let mut v = Verdict::Yes;
                for item in items {
                    v = v.and(self.member(item, id)?);
                    if v == Verdict::No {
                        break;
                    }
                }
                Ok(v)
            }
            ClassExpr::Union(items) => {
                let mut v = Verdict::No;
                for item in items {
                    v = v.or(self.member(item, id)?);
                    if v == Verdict::Yes {
                        break;
                    }
                }
                Ok(v)
            }
            ClassExpr::Prod(m, h) => self.eval_product(m, h, id),
            ClassExpr::Gen {
                kind,
                tau,
                level,
                base,
            } => self.eval_gen(c, *kind, *tau, *level, base, id),
            ClassExpr::Lf(f) => self.lf_member(f, id),
        }
    }

    /// Membership in the product MH via the H-residual.
    fn eval_product(&self, m: &ClassExpr, h: &ClassExpr, id: GroupId) -> Result<Verdict> {
        let recs = self.normal_recs(id)?;
        let mut goods: Vec<&NormalRec> = Vec::new();
        let mut unknown = false;
        for rec in recs.iter() {
            match self.member(h, rec.quot_id)? {
                Verdict::Yes => goods.push(rec),
                Verdict::No => {}
                Verdict::Unknown => unknown = true,
            }
        }
        if goods.is_empty() {
            // Not even G/G lies in H: H excludes the trivial group, so the
            // product class is empty below G.
            return Ok(if unknown { Verdict::Unknown } else { Verdict::No });
        }
        if unknown {
            // The residual may be smaller than the intersection we can see.
            return Ok(Verdict::Unknown);
        }
        let g = self.group(id);
        let mut inter: Vec<Perm> = goods[0].subgroup.elements().as_ref().clone();
        for rec in &goods[1..] {
            inter.retain(|x| rec.subgroup.contains(x));
        }
        let residual = Subgroup::from_elements(&g, inter);
        let rid = self.intern(&residual.as_group()?)?;
        self.member(m, rid)
    }

    fn eval_gen(
        &self,
        key: &ClassExpr,
        kind: GenKind,
        tau: Functor,
        level: u32,
        base: &GenBase,
        id: GroupId,
    ) -> Result<Verdict> {
        if let GenBase::Groups(gens) = base {
            if gens.is_empty() {
                return Ok(Verdict::No);
            }
        }
        match kind {
            GenKind::Semiformation => {
                let gens = match base {
                    GenBase::Groups(g) => g,
                    GenBase::Class(_) => {
                        return Err(Error::precondition(
                            "semiformation closure needs explicit generators",
                        ))
                    }
                };
                let set = self.semiformation_set(tau, gens)?;
                Ok(Verdict::from_bool(set.contains(&id)))
            }
            GenKind::Formation if level == 0 => {
                let set = self.formation_fixpoint(key, tau, base)?;
                if set.contains(&id) {
                    return Ok(Verdict::Yes);
                }
                if self.gen_no_certificate(tau, 0, base, id)? {
                    return Ok(Verdict::No);
                }
                Ok(Verdict::Unknown)
            }
            GenKind::Formation => {
                let gens = match base {
                    GenBase::Groups(g) => g.clone(),
                    GenBase::Class(_) => {
                        return Err(Error::precondition(
                            "leveled closures need explicit generators",
                        ))
                    }
                };
                let f = self.smallest_definition(&gens, level, tau)?;
                let v = self.lf_member(&f, id)?;
                if v == Verdict::Unknown && self.gen_no_certificate(tau, level, base, id)? {
                    return Ok(Verdict::No);
                }
                Ok(v)
            }
        }
    }

    /// Membership in the class defined by a formation sigma-function: the
    /// trivial group always belongs; otherwise every block of sigma(G) must
    /// accept the corresponding radical quotient.
    pub fn lf_member(&self, f: &SigmaFn, id: GroupId) -> Result<Verdict> {
        let g = self.group(id);
        if g.is_trivial() {
            return Ok(Verdict::Yes);
        }
        let blocks = self.sigma_blocks(id)?;
        let mut v = Verdict::Yes;
        for b in &blocks {
            let value = f.value(b);
            if value.is_empty_class() {
                return Ok(Verdict::No);
            }
            let qid = self.fblock_quotient(id, b)?;
            v = v.and(self.member(value, qid)?);
            if v == Verdict::No {
                return Ok(Verdict::No);
            }
        }
        Ok(v)
    }

    /// The blockwise quotient classes of a finite group set: all G/F_block(G)
    /// for members with the block among their order's blocks.
    pub fn class_at(&self, gens: &[GroupId], block: &str) -> Result<Vec<GroupId>> {
        let mut out = BTreeSet::new();
        for &gid in gens {
            if self.sigma_blocks(gid)?.contains(block) {
                out.insert(self.fblock_quotient(gid, block)?);
            }
        }
        Ok(out.into_iter().collect())
    }

    /// Union of the blocks of the generators.
    pub fn sigma_of_set(&self, gens: &[GroupId]) -> Result<BTreeSet<BlockId>> {
        let mut out = BTreeSet::new();
        for &gid in gens {
            out.extend(self.sigma_blocks(gid)?);
        }
        Ok(out)
    }

    /// Smallest definition of the level-`n` generated formation of a finite
    /// group set: blockwise level-(n-1) closures of the quotient classes, with
    /// empty values off the generators' blocks.
    pub fn smallest_definition(
        &self,
        gens: &[GroupId],
        n: u32,
        tau: Functor,
    ) -> Result<SigmaFn> {
        assert!(n >= 1, "smallest definitions exist for level >= 1");
        let mut f = SigmaFn::empty();
        for block in self.sigma_of_set(gens)? {
            let at = self.class_at(gens, &block)?;
            f = f.with(
                block,
                ClassExpr::Gen {
                    kind: GenKind::Formation,
                    tau,
                    level: n - 1,
                    base: GenBase::Groups(at),
                },
            );
        }
        Ok(f)
    }

    // ------------------------------------------------------------------
    // Closure machinery
    // ------------------------------------------------------------------

    fn quotient_ids(&self, id: GroupId) -> Result<Vec<GroupId>> {
        Ok(self.normal_recs(id)?.iter().map(|r| r.quot_id).collect())
    }

    fn tau_sub_ids(&self, id: GroupId, tau: Functor) -> Result<Vec<GroupId>> {
        match tau {
            Functor::Trivial => Ok(vec![id]),
            Functor::Normal => Ok(self.normal_recs(id)?.iter().map(|r| r.sub_id).collect()),
            Functor::All => Ok(self.all_subgroup_ids(id)?.as_ref().clone()),
        }
    }

    /// The tau-closed semiformation generated by `gens`: iterated closure of
    /// the generators under quotients and tau-subgroups. Iterating covers the
    /// closure functor of tau, so no separate tau-bar computation is needed.
    pub fn semiformation_set(
        &self,
        tau: Functor,
        gens: &[GroupId],
    ) -> Result<Arc<BTreeSet<GroupId>>> {
        let key = ClassExpr::gen_semiformation(tau, gens.to_vec());
        {
            let state = self.state.lock().expect("session state");
            if let Some(s) = state.fixpoints.get(&key) {
                return Ok(s.clone());
            }
        }
        let mut set: BTreeSet<GroupId> = gens.iter().copied().collect();
        loop {
            let mut added: Vec<GroupId> = Vec::new();
            for &gid in &set {
                for q in self.quotient_ids(gid)? {
                    if !set.contains(&q) {
                        added.push(q);
                    }
                }
                for s in self.tau_sub_ids(gid, tau)? {
                    if !set.contains(&s) {
                        added.push(s);
                    }
                }
            }
            if added.is_empty() {
                break;
            }
            set.extend(added);
        }
        let set = Arc::new(set);
        let mut state = self.state.lock().expect("session state");
        state.fixpoints.insert(key, set.clone());
        Ok(set)
    }

    /// Fixpoint of the level-0 formation closure: semiformation start set,
    /// then closure under quotients, tau-subgroups, and universe-internal
    /// subdirect completions.
    fn formation_fixpoint(
        &self,
        key: &ClassExpr,
        tau: Functor,
        base: &GenBase,
    ) -> Result<Arc<BTreeSet<GroupId>>> {
        {
            let state = self.state.lock().expect("session state");
            if let Some(s) = state.fixpoints.get(key) {
                return Ok(s.clone());
            }
        }
        let mut set: BTreeSet<GroupId> = match base {
            GenBase::Groups(gens) => self.semiformation_set(tau, gens)?.as_ref().clone(),
            GenBase::Class(c) => {
                let mut s = BTreeSet::new();
                for &u in &self.universe {
                    if self.member(c, u)? == Verdict::Yes {
                        s.insert(u);
                    }
                }
                s
            }
        };
        loop {
            let mut changed = false;
            let current: Vec<GroupId> = set.iter().copied().collect();
            for gid in current {
                for q in self.quotient_ids(gid)? {
                    if set.insert(q) {
                        changed = true;
                    }
                }
                for s in self.tau_sub_ids(gid, tau)? {
                    if set.insert(s) {
                        changed = true;
                    }
                }
            }
            for &u in &self.universe {
                if set.contains(&u) {
                    continue;
                }
                if self.subdirectly_reachable(u, &set)? {
                    set.insert(u);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let set = Arc::new(set);
        let mut state = self.state.lock().expect("session state");
        state.fixpoints.insert(key.clone(), set.clone());
        Ok(set)
    }

    /// Whether `id` has normal subgroups with trivial intersection (at most
    /// four of them) whose quotients all lie in `set`.
    fn subdirectly_reachable(&self, id: GroupId, set: &BTreeSet<GroupId>) -> Result<bool> {
        let recs = self.normal_recs(id)?;
        let goods: Vec<&NormalRec> = recs
            .iter()
            .filter(|r| set.contains(&r.quot_id))
            .collect();
        Ok(search_trivial_intersection(&goods, 4))
    }

    // ------------------------------------------------------------------
    // No-certificates
    // ------------------------------------------------------------------

    /// Sound nonmembership certificates for generated formation closures.
    fn gen_no_certificate(
        &self,
        tau: Functor,
        level: u32,
        base: &GenBase,
        id: GroupId,
    ) -> Result<bool> {
        match base {
            GenBase::Groups(gens) => {
                if gens.is_empty() {
                    return Ok(true);
                }
                let data = self.group_sigma(id)?;
                // Coverage: generated classes stay inside the blocks of the
                // generators (valid at every level, for every functor).
                let cover = self.sigma_of_set(gens)?;
                if !data.blocks.iter().all(|b| cover.contains(b)) {
                    return Ok(true);
                }
                // Hereditary totally sigma-local separators.
                let mut all_soluble = true;
                let mut all_nilpotent = true;
                let mut all_abelian = true;
                let mut max_dl: Option<u32> = Some(0);
                let mut exp_lcm: u64 = 1;
                for &g in gens {
                    let d = self.group_sigma(g)?;
                    all_soluble &= d.soluble;
                    all_nilpotent &= d.nilpotent;
                    all_abelian &= d.abelian;
                    exp_lcm = crate::perm::lcm(exp_lcm, d.exponent);
                    max_dl = match (max_dl, d.derived_length) {
                        (Some(a), Some(b)) => Some(a.max(b)),
                        _ => None,
                    };
                }
                if all_soluble && !data.soluble {
                    return Ok(true);
                }
                if all_nilpotent && !data.nilpotent {
                    return Ok(true);
                }
                if level == 0 {
                    // Formation-only separators (not saturated, so level 0 only).
                    if all_abelian && !data.abelian {
                        return Ok(true);
                    }
                    // Exponent-divides-e is a hereditary formation.
                    if exp_lcm % data.exponent != 0 {
                        return Ok(true);
                    }
                    if let (Some(bound), Some(dl)) = (max_dl, data.derived_length) {
                        if dl > bound {
                            return Ok(true);
                        }
                    }
                    if max_dl.is_some() && data.derived_length.is_none() {
                        return Ok(true);
                    }
                }
                let semi = self.semiformation_set(tau, gens)?;
                self.monolithic_no(id, level, |qid| {
                    Ok(Verdict::from_bool(semi.contains(&qid)))
                })
            }
            GenBase::Class(c) => self.monolithic_no(id, level, |qid| self.member(c, qid)),
        }
    }

    /// Monolithic descent rules. `x_member` decides membership in the
    /// (quotient-closed) base class.
    fn monolithic_no<F>(&self, id: GroupId, level: u32, mut x_member: F) -> Result<bool>
    where
        F: FnMut(GroupId) -> Result<Verdict>,
    {
        let g = self.group(id);
        if g.is_trivial() {
            return Ok(false);
        }
        let minimal = self.minimal_normal_indices(id)?;
        if minimal.len() != 1 {
            return Ok(false);
        }
        let recs = self.normal_recs(id)?;
        let soc = &recs[minimal[0]];
        // Non-primary socle: membership must already hold in the base class.
        let soc_blocks = self.sigma.sigma_of_int(soc.subgroup.order());
        if soc_blocks.len() >= 2 && x_member(id)? == Verdict::No {
            return Ok(true);
        }
        // Self-centralizing socle forces the quotient into the base class.
        if level == 0 {
            let trivial = Subgroup::trivial(&g);
            let cent = structure::section_centralizer(&g, &soc.subgroup, &trivial)?;
            if cent == soc.subgroup && x_member(soc.quot_id)? == Verdict::No {
                return Ok(true);
            }
        }
        Ok(false)
    }

    // ------------------------------------------------------------------
    // Public class operations
    // ------------------------------------------------------------------

    /// The tau-subgroup images of a group set, deduplicated up to isomorphism.
    pub fn s_tau(&self, tau: Functor, gens: &[GroupId]) -> Result<Vec<GroupId>> {
        let mut out = BTreeSet::new();
        for &gid in gens {
            out.extend(self.tau_sub_ids(gid, tau)?);
        }
        Ok(out.into_iter().collect())
    }

    /// Subdirect-product membership relative to an arbitrary class predicate:
    /// Yes when normal subgroups with trivial intersection and X-quotients
    /// exist (at most four factors); No when every quotient verdict is
    /// definite and no family works; Unknown otherwise.
    pub fn r0_member(&self, id: GroupId, x: &ClassExpr) -> Result<Verdict> {
        let recs = self.normal_recs(id)?;
        let mut goods: Vec<&NormalRec> = Vec::new();
        let mut unknown = false;
        for rec in recs.iter() {
            match self.member(x, rec.quot_id)? {
                Verdict::Yes => goods.push(rec),
                Verdict::No => {}
                Verdict::Unknown => unknown = true,
            }
        }
        if search_trivial_intersection(&goods, 4) {
            return Ok(Verdict::Yes);
        }
        Ok(if unknown {
            Verdict::Unknown
        } else {
            Verdict::No
        })
    }

    /// A replayable nonmembership certificate for monolithic groups, against
    /// a quotient-closed base class.
    pub fn monolithic_descent_certificate(
        &self,
        id: GroupId,
        x: &ClassExpr,
    ) -> Result<Option<DescentCertificate>> {
        let g = self.group(id);
        if g.is_trivial() {
            return Ok(None);
        }
        let minimal = self.minimal_normal_indices(id)?;
        if minimal.len() != 1 {
            return Ok(None);
        }
        let recs = self.normal_recs(id)?;
        let soc = &recs[minimal[0]];
        let trivial = Subgroup::trivial(&g);
        let cent = structure::section_centralizer(&g, &soc.subgroup, &trivial)?;
        if cent == soc.subgroup && self.member(x, soc.quot_id)? == Verdict::No {
            return Ok(Some(DescentCertificate::SelfCentralizingSocle {
                socle_order: soc.subgroup.order(),
                quotient: soc.quot_id,
            }));
        }
        let soc_blocks = self.sigma.sigma_of_int(soc.subgroup.order());
        if soc_blocks.len() >= 2 && self.member(x, id)? == Verdict::No {
            return Ok(Some(DescentCertificate::NonPrimarySocle {
                socle_order: soc.subgroup.order(),
            }));
        }
        Ok(None)
    }

    /// Per-group comparison of two classes over the universe (restricted to
    /// orders up to `max_order`).
    pub fn class_equal_on_universe(
        &self,
        c1: &ClassExpr,
        c2: &ClassExpr,
        max_order: u64,
    ) -> Result<EqualityReport> {
        let mut report = EqualityReport::default();
        for &u in &self.universe_upto(max_order) {
            let v1 = self.member(c1, u)?;
            let v2 = self.member(c2, u)?;
            match (v1, v2) {
                (Verdict::Yes, Verdict::Yes) | (Verdict::No, Verdict::No) => {
                    report.agreements += 1
                }
                (Verdict::Unknown, _) | (_, Verdict::Unknown) => report.unknown.push(u),
                _ => report.disagreements.push((u, v1, v2)),
            }
        }
        Ok(report)
    }

    /// Direct access to the fixpoint member set of a generated class (used by
    /// reporting and the lattice suites).
    pub fn generated_yes_set(&self, c: &ClassExpr) -> Result<Arc<BTreeSet<GroupId>>> {
        match c {
            ClassExpr::Gen {
                kind: GenKind::Formation,
                tau,
                level: 0,
                base,
            } => self.formation_fixpoint(c, *tau, base),
            ClassExpr::Gen {
                kind: GenKind::Semiformation,
                tau,
                base: GenBase::Groups(gens),
                ..
            } => self.semiformation_set(*tau, gens),
            _ => Err(Error::precondition(
                "yes-set extraction needs a level-0 generated class",
            )),
        }
    }

    /// Universe members with a definite Yes for the class.
    pub fn universe_yes_set(&self, c: &ClassExpr, max_order: u64) -> Result<Vec<GroupId>> {
        let mut out = Vec::new();
        for &u in &self.universe_upto(max_order) {
            if self.member(c, u)? == Verdict::Yes {
                out.push(u);
            }
        }
        Ok(out)
    }
}

/// Searches for a sub-family (size <= `max_factors`) of the given normal
/// subgroups whose intersection is trivial.
fn search_trivial_intersection(goods: &[&NormalRec], max_factors: usize) -> bool {
    fn rec(
        goods: &[&NormalRec],
        start: usize,
        current: Option<Vec<Perm>>,
        depth: usize,
        max: usize,
    ) -> bool {
        if let Some(cur) = &current {
            if cur.len() == 1 {
                return true;
            }
        }
        if depth == max {
            return false;
        }
        for i in start..goods.len() {
            let next: Vec<Perm> = match &current {
                None => goods[i].subgroup.elements().as_ref().clone(),
                Some(cur) => {
                    let filtered: Vec<Perm> = cur
                        .iter()
                        .filter(|x| goods[i].subgroup.contains(x))
                        .cloned()
                        .collect();
                    if filtered.len() == cur.len() {
                        continue; // no progress
                    }
                    filtered
                }
            };
            if rec(goods, i + 1, Some(next), depth + 1, max) {
                return true;
            }
        }
        false
    }
    // Sort by ascending order so small intersections are found early.
    let mut sorted: Vec<&NormalRec> = goods.to_vec();
    sorted.sort_by_key(|r| (r.subgroup.order(), r.subgroup.elements().as_ref().clone()));
    rec(&sorted, 0, None, 0, max_factors)
}

/// Monolithic nonmembership certificate with replay data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DescentCertificate {
    /// The socle is self-centralizing and G/Soc(G) falls outside the class.
    SelfCentralizingSocle { socle_order: u64, quotient: GroupId },
    /// The socle spans several blocks and G itself falls outside the class.
    NonPrimarySocle { socle_order: u64 },
}

#[derive(Debug, Default)]
pub struct EqualityReport {
    pub agreements: usize,
    pub disagreements: Vec<(GroupId, Verdict, Verdict)>,
    pub unknown: Vec<GroupId>,
}

impl EqualityReport {
    pub fn clean(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Block selection covering sigma(X) of a generator set.
pub fn cover_selection(session: &Session, gens: &[GroupId]) -> Result<BlockSel> {
    Ok(BlockSel::These(session.sigma_of_set(gens)?))
}
