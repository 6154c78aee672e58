//! Operations on formation sigma-functions: membership in the class they
//! define, smallest and canonical definitions of generated formations, the
//! two evaluation routes for leveled generated membership, the blockwise
//! locality criterion with its evidence-based index, and the socle
//! decomposition and radical-transfer checks used by the suites.

use crate::classes::{BlockSel, ClassExpr, Functor, GenBase, GenKind, GroupId, SigmaFn};
use crate::error::{Error, Result};
use crate::session::Session;
use crate::sigma::BlockId;
use crate::structure::Verdict;
use std::collections::BTreeSet;

/// Spec-level wrapper: membership in LF(f).
pub fn lf_member(session: &Session, f: &SigmaFn, g: GroupId) -> Result<Verdict> {
    session.lf_member(f, g)
}

/// The canonical (full, integrated) definition derived from `f`: each value
/// becomes `Gpi{block} * (f(block) meet LF(f))`.
///
/// Values are materialized on the explicitly assigned blocks plus the given
/// extra blocks (callers pass the blocks their queries can reach, typically
/// the universe's); a non-empty default cannot stay symbolic because the
/// canonical value depends on the block itself.
pub fn canonical_from(f: &SigmaFn, blocks: &BTreeSet<BlockId>) -> SigmaFn {
    let lf = ClassExpr::lf(f.clone());
    let mut out = SigmaFn::empty();
    let mut all_blocks: BTreeSet<BlockId> = f.assignments.keys().cloned().collect();
    if f.has_nonempty_default() {
        all_blocks.extend(blocks.iter().cloned());
    }
    for b in all_blocks {
        let value = f.value(&b);
        if value.is_empty_class() {
            continue;
        }
        out = out.with(
            b.clone(),
            ClassExpr::prod(
                ClassExpr::Gpi(BlockSel::one(b.clone())),
                ClassExpr::meet(vec![value.clone(), lf.clone()]),
            ),
        );
    }
    out
}

/// Canonical definition materialized over the session's universe blocks.
pub fn canonical_on_universe(session: &Session, f: &SigmaFn) -> Result<SigmaFn> {
    let mut blocks = BTreeSet::new();
    for &u in session.universe() {
        blocks.extend(session.sigma_blocks(u)?);
    }
    Ok(canonical_from(f, &blocks))
}

/// Membership in the level-`n` generated formation, the definitional route:
/// recursion over the smallest definition (level 0 is the plain closure).
pub fn generated_member(
    session: &Session,
    g: GroupId,
    gens: &[GroupId],
    n: u32,
    tau: Functor,
) -> Result<Verdict> {
    let class = ClassExpr::gen_formation(tau, n, gens.to_vec());
    session.member(&class, g)
}

/// The same class along the union-of-block-products route: the plain
/// formation closure of the union over blocks of
/// `Gpi{block} * (level-(n-1) closure of the block quotients)`.
pub fn generated_member_product_route(
    session: &Session,
    g: GroupId,
    gens: &[GroupId],
    n: u32,
    tau: Functor,
) -> Result<Verdict> {
    assert!(n >= 1, "the product route applies to leveled closures");
    let union = product_route_union(session, gens, n, tau)?;
    let class = ClassExpr::gen_formation_of_class(Functor::Trivial, 0, union);
    session.member(&class, g)
}

fn product_route_union(
    session: &Session,
    gens: &[GroupId],
    n: u32,
    tau: Functor,
) -> Result<ClassExpr> {
    let mut parts = Vec::new();
    for block in session.sigma_of_set(gens)? {
        let at = session.class_at(gens, &block)?;
        parts.push(ClassExpr::prod(
            ClassExpr::Gpi(BlockSel::one(block)),
            ClassExpr::Gen {
                kind: GenKind::Formation,
                tau,
                level: n - 1,
                base: GenBase::Groups(at),
            },
        ));
    }
    Ok(ClassExpr::union(parts))
}

/// Outcome of the blockwise locality criterion on the universe.
#[derive(Debug, Default)]
pub struct CriterionReport {
    /// (block, group, class verdict) triples where the product class holds
    /// but the tested class definitely does not.
    pub violations: Vec<(BlockId, GroupId)>,
    /// (block, group) pairs left undecided.
    pub gaps: Vec<(BlockId, GroupId)>,
    pub checked: usize,
}

impl CriterionReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Evidence for n-multiple locality of a class: for every block meeting the
/// sweep, the product `Gpi{block} * gen_{n-1}(class_at(F, block))` must stay
/// inside F on the universe. Violations are definitive; a clean run is
/// evidence, not proof.
pub fn locality_criterion(
    session: &Session,
    class: &ClassExpr,
    n: u32,
    tau: Functor,
    sweep_order: u64,
) -> Result<CriterionReport> {
    locality_criterion_with(session, class, n, tau, sweep_order, &[])
}

/// The criterion sweep over the universe plus explicitly supplied probes.
pub fn locality_criterion_with(
    session: &Session,
    class: &ClassExpr,
    n: u32,
    tau: Functor,
    sweep_order: u64,
    extras: &[GroupId],
) -> Result<CriterionReport> {
    assert!(n >= 1);
    let members = session.universe_yes_set(class, session.bound())?;
    let mut report = CriterionReport::default();
    let mut blocks = BTreeSet::new();
    for &u in &members {
        blocks.extend(session.sigma_blocks(u)?);
    }
    let mut probes = session.universe_upto(sweep_order);
    for &e in extras {
        if !probes.contains(&e) {
            probes.push(e);
        }
    }
    for block in blocks {
        let at = session.class_at(&members, &block)?;
        let product = ClassExpr::prod(
            ClassExpr::Gpi(BlockSel::one(block.clone())),
            ClassExpr::Gen {
                kind: GenKind::Formation,
                tau,
                level: n - 1,
                base: GenBase::Groups(at),
            },
        );
        for &u in &probes {
            report.checked += 1;
            let in_product = session.member(&product, u)?;
            let in_class = session.member(class, u)?;
            match (in_product, in_class) {
                (Verdict::Yes, Verdict::No) => report.violations.push((block.clone(), u)),
                (Verdict::Unknown, _) | (_, Verdict::Unknown) => {
                    report.gaps.push((block.clone(), u))
                }
                _ => {}
            }
        }
    }
    Ok(report)
}

/// Criterion check against an explicitly supplied witness group (for classes
/// whose violation lies outside the sweep).
pub fn locality_criterion_witness(
    session: &Session,
    class: &ClassExpr,
    n: u32,
    tau: Functor,
    block: &str,
    witness: GroupId,
) -> Result<(Verdict, Verdict)> {
    let members = session.universe_yes_set(class, session.bound())?;
    let at = session.class_at(&members, block)?;
    let product = ClassExpr::prod(
        ClassExpr::Gpi(BlockSel::one(block.to_string())),
        ClassExpr::Gen {
            kind: GenKind::Formation,
            tau,
            level: n - 1,
            base: GenBase::Groups(at),
        },
    );
    Ok((session.member(&product, witness)?, session.member(class, witness)?))
}

/// Evidence-based locality index, capped at `n_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LocalityIndex {
    /// The criterion failed at the first level: not sigma-local on evidence.
    Zero,
    /// Exactly this index on evidence.
    Exact(u32),
    /// The recursion stayed clean up to the cap.
    AtLeast(u32),
    /// Unknown verdicts blocked a definite answer below the cap.
    Range(u32, u32),
}

impl std::fmt::Display for LocalityIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LocalityIndex::Zero => write!(f, "0 (on evidence)"),
            LocalityIndex::Exact(n) => write!(f, "{n} (on evidence)"),
            LocalityIndex::AtLeast(n) => write!(f, ">= {n}"),
            LocalityIndex::Range(a, b) => write!(f, "in [{a}, {b}] (gaps)"),
        }
    }
}

/// Index computation via the criterion cascade: a definite violation at
/// level n bounds the index above by n-1 (sound); a clean level-n run is
/// evidence for n-multiple locality and subsumes the levels below it. Gaps
/// widen the answer to a bracketed range.
pub fn sigma_locality_index(
    session: &Session,
    class: &ClassExpr,
    n_max: u32,
    tau: Functor,
    sweep_order: u64,
    extras: &[GroupId],
) -> Result<LocalityIndex> {
    if n_max == 0 {
        return Ok(LocalityIndex::AtLeast(0));
    }
    let mut max_clean = 0u32;
    for n in 1..=n_max {
        let r = locality_criterion_with(session, class, n, tau, sweep_order, extras)?;
        if !r.holds() {
            return Ok(if n == 1 {
                LocalityIndex::Zero
            } else {
                LocalityIndex::Exact(n - 1)
            });
        }
        if r.gaps.is_empty() {
            max_clean = n;
        }
    }
    Ok(if max_clean == n_max {
        LocalityIndex::AtLeast(n_max)
    } else {
        LocalityIndex::Range(max_clean, n_max)
    })
}

/// One factor of the socle decomposition relative to a block with trivial
/// radical, together with its verification outcomes.
#[derive(Debug)]
pub struct DecompositionFactor {
    pub complement_order: u64,
    pub quotient: GroupId,
    pub quotient_monolithic: bool,
    pub monolith_matches: bool,
    pub block_radical_trivial: bool,
}

#[derive(Debug)]
pub struct Decomposition {
    pub factors: Vec<DecompositionFactor>,
    pub intersection_trivial: bool,
}

impl Decomposition {
    pub fn all_checks_pass(&self) -> bool {
        self.intersection_trivial
            && self.factors.iter().all(|f| {
                f.quotient_monolithic && f.monolith_matches && f.block_radical_trivial
            })
    }
}

/// Splits a group with several minimal normal subgroups along a block whose
/// radical is trivial: for each factor of a direct decomposition of the
/// socle, the maximal normal subgroup containing the other factors but not
/// this one; the quotients must be monolithic with matching monoliths and
/// the chosen subgroups must intersect trivially.
pub fn socle_split(session: &Session, g: GroupId, block: &str) -> Result<Decomposition> {
    let group = session.group(g);
    let sigma = session.sigma();
    let block_primes = sigma
        .primes_of(block)
        .ok_or_else(|| Error::input(format!("unknown block {block:?}")))?;
    let o_block = crate::sigma::o_pi(&group, &block_primes)?;
    if !o_block.is_trivial() {
        return Err(Error::precondition(format!(
            "block radical must be trivial, has order {}",
            o_block.order()
        )));
    }
    let recs = session.normal_recs(g)?;
    // Minimal normal subgroups, then a greedy direct decomposition of the socle.
    let mut minimal: Vec<&crate::session::NormalRec> = Vec::new();
    'outer: for r in recs.iter() {
        if r.subgroup.is_trivial() {
            continue;
        }
        for s in recs.iter() {
            if !s.subgroup.is_trivial()
                && s.subgroup.order() < r.subgroup.order()
                && r.subgroup.contains_subgroup(&s.subgroup)
            {
                continue 'outer;
            }
        }
        minimal.push(r);
    }
    let mut factors: Vec<&crate::session::NormalRec> = Vec::new();
    let mut span = crate::group::Subgroup::trivial(&group);
    for r in &minimal {
        if span.intersect(&r.subgroup).is_trivial() {
            factors.push(r);
            span = span.join_normal(&r.subgroup)?;
        }
    }
    if factors.len() < 2 {
        return Err(Error::precondition(
            "socle splitting needs at least two independent minimal normals",
        ));
    }
    let mut out = Vec::new();
    let mut intersection: Option<crate::group::Subgroup> = None;
    for (k, nk) in factors.iter().enumerate() {
        // Product of the other factors.
        let mut others = crate::group::Subgroup::trivial(&group);
        for (j, nj) in factors.iter().enumerate() {
            if j != k {
                others = others.join_normal(&nj.subgroup)?;
            }
        }
        // Maximal normal subgroup containing `others` but not `nk`
        // (deterministic: largest order, then least element list).
        let mut best: Option<&crate::session::NormalRec> = None;
        for r in recs.iter() {
            if r.subgroup.contains_subgroup(&others) && !r.subgroup.contains_subgroup(&nk.subgroup)
            {
                best = match best {
                    None => Some(r),
                    Some(b) if r.subgroup.order() > b.subgroup.order() => Some(r),
                    Some(b) => Some(b),
                };
            }
        }
        let mk = best.ok_or_else(|| {
            Error::precondition("no normal subgroup separates the socle factor")
        })?;
        intersection = Some(match intersection {
            None => mk.subgroup.clone(),
            Some(i) => i.intersect(&mk.subgroup),
        });
        // Verify the quotient shape.
        let q = crate::structure::quotient(&group, &mk.subgroup)?;
        let q_soc = crate::structure::socle_and_monolith(&q.group)?;
        let quotient_monolithic = q_soc.monolith.is_some();
        let monolith_matches = match &q_soc.monolith {
            Some(m) => {
                let mono_group = m.as_group()?;
                let nk_group = nk.subgroup.as_group()?;
                crate::iso::is_isomorphic(&mono_group, &nk_group)?
            }
            None => false,
        };
        let o_block_q = crate::sigma::o_pi(&q.group, &block_primes)?;
        out.push(DecompositionFactor {
            complement_order: mk.subgroup.order(),
            quotient: session.intern(&q.group)?,
            quotient_monolithic,
            monolith_matches,
            block_radical_trivial: o_block_q.is_trivial(),
        });
    }
    Ok(Decomposition {
        factors: out,
        intersection_trivial: intersection.map_or(false, |i| i.is_trivial()),
    })
}

/// The definition with value `class` on the given blocks and empty values
/// elsewhere; with `BlockSel::All` the value becomes the function's default.
pub fn nilpotent_product_definition(class: &ClassExpr, pi: &BlockSel) -> SigmaFn {
    match pi {
        BlockSel::All => SigmaFn::constant(class.clone()),
        BlockSel::These(blocks) => {
            let mut f = SigmaFn::empty();
            for b in blocks {
                f = f.with(b.clone(), class.clone());
            }
            f
        }
    }
}

/// The product class whose left factor is the sigma-nilpotent groups
/// restricted to the blocks of `pi`.
pub fn nilpotent_product_class(class: &ClassExpr, pi: &BlockSel) -> ClassExpr {
    let nil_pi = match pi {
        BlockSel::All => ClassExpr::Nsigma,
        BlockSel::These(_) => {
            ClassExpr::meet(vec![ClassExpr::Nsigma, ClassExpr::Gpi(pi.clone())])
        }
    };
    ClassExpr::prod(nil_pi, class.clone())
}

/// Radical-transfer check: a member of the level-`n` closure of `gens` with
/// trivial block radical must lie in the closure of the blockwise radical
/// quotients of the generators.
#[derive(Debug, PartialEq, Eq)]
pub enum TransferOutcome {
    Holds,
    Violated,
    Undecided,
    Skipped(&'static str),
}

pub fn radical_transfer_check(
    session: &Session,
    g: GroupId,
    gens: &[GroupId],
    block: &str,
    n: u32,
    tau: Functor,
) -> Result<TransferOutcome> {
    let group = session.group(g);
    if group.is_trivial() {
        return Ok(TransferOutcome::Holds);
    }
    let block_primes = session
        .sigma()
        .primes_of(block)
        .ok_or_else(|| Error::input(format!("unknown block {block:?}")))?;
    if !crate::sigma::o_pi(&group, &block_primes)?.is_trivial() {
        return Ok(TransferOutcome::Skipped("block radical is nontrivial"));
    }
    if generated_member(session, g, gens, n, tau)? != Verdict::Yes {
        return Ok(TransferOutcome::Skipped("membership precondition not met"));
    }
    // Quotients of the generators by their block radicals.
    let mut images = BTreeSet::new();
    for &x in gens {
        let xg = session.group(x);
        let rad = crate::sigma::o_pi(&xg, &block_primes)?;
        let q = crate::structure::quotient(&xg, &rad)?;
        images.insert(session.intern(&q.group)?);
    }
    let images: Vec<GroupId> = images.into_iter().collect();
    match generated_member(session, g, &images, n, tau)? {
        Verdict::Yes => Ok(TransferOutcome::Holds),
        Verdict::No => Ok(TransferOutcome::Violated),
        Verdict::Unknown => Ok(TransferOutcome::Undecided),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifest::default_session;
    use crate::sigma::SigmaPartition;

    fn session() -> Session {
        default_session(SigmaPartition::singletons(), 24).unwrap()
    }

    #[test]
    fn lf_with_identity_values_matches_examples() {
        let s = session();
        let f = SigmaFn::constant(ClassExpr::One);
        let s3 = s.lookup("S3").unwrap();
        assert_eq!(lf_member(&s, &f, s3).unwrap(), Verdict::No);
        let c1 = s.lookup("C1").unwrap();
        assert_eq!(lf_member(&s, &f, c1).unwrap(), Verdict::Yes);
        let all = SigmaFn::constant(ClassExpr::All);
        assert_eq!(lf_member(&s, &all, s3).unwrap(), Verdict::Yes);
        // C6 is nilpotent: both block radicals are the whole group.
        let c6 = s.lookup("C6").unwrap();
        assert_eq!(lf_member(&s, &f, c6).unwrap(), Verdict::Yes);
    }

    #[test]
    fn class_at_examples() {
        let s = session();
        let s3 = s.lookup("S3").unwrap();
        let at3 = s.class_at(&[s3], "3").unwrap();
        assert_eq!(at3.len(), 1);
        assert_eq!(s.group(at3[0]).order(), 2);
        let at2 = s.class_at(&[s3], "2").unwrap();
        assert_eq!(at2.len(), 1);
        assert_eq!(s.group(at2[0]).order(), 1);
        assert!(s.class_at(&[s3], "5").unwrap().is_empty());
    }

    #[test]
    fn smallest_definition_of_s3_and_c6() {
        let s = session();
        let s3 = s.lookup("S3").unwrap();
        let f = s.smallest_definition(&[s3], 1, Functor::Trivial).unwrap();
        // Support is exactly sigma(S3) = {2, 3}.
        let support = f.explicit_support();
        let expected: BTreeSet<String> = ["2".to_string(), "3".to_string()].into();
        assert_eq!(support, expected);
        assert!(!f.supports("5"));
        // f(2) is generated by the trivial group, f(3) by C2 (frozen via the
        // radical computations checked in the sigma module).
        match f.value("2") {
            ClassExpr::Gen { base: GenBase::Groups(g), .. } => {
                assert_eq!(g.len(), 1);
                assert_eq!(s.group(g[0]).order(), 1);
            }
            other => panic!("unexpected value {other:?}"),
        }
        match f.value("3") {
            ClassExpr::Gen { base: GenBase::Groups(g), .. } => {
                assert_eq!(g.len(), 1);
                assert_eq!(s.group(g[0]).order(), 2);
            }
            other => panic!("unexpected value {other:?}"),
        }

        let c6 = s.lookup("C6").unwrap();
        let fc6 = s.smallest_definition(&[c6], 1, Functor::Trivial).unwrap();
        for b in ["2", "3"] {
            match fc6.value(b) {
                ClassExpr::Gen { base: GenBase::Groups(g), .. } => {
                    assert_eq!(g.len(), 1, "block {b}");
                    assert_eq!(s.group(g[0]).order(), 1, "block {b}");
                }
                other => panic!("unexpected value {other:?}"),
            }
        }
    }

    #[test]
    fn generated_membership_recursion() {
        let s = session();
        let s3 = s.lookup("S3").unwrap();
        let c6 = s.lookup("C6").unwrap();
        let c1 = s.lookup("C1").unwrap();
        assert_eq!(
            generated_member(&s, c6, &[s3], 1, Functor::Trivial).unwrap(),
            Verdict::Yes
        );
        assert_eq!(
            generated_member(&s, c1, &[s3], 1, Functor::Trivial).unwrap(),
            Verdict::Yes
        );
        // Coverage certificate: sigma(A5) is not inside sigma(S3).
        let a5 = s.intern(&crate::construct::alternating(5).unwrap()).unwrap();
        assert_eq!(
            generated_member(&s, a5, &[s3], 1, Functor::Trivial).unwrap(),
            Verdict::No
        );
    }

    #[test]
    fn product_route_consistency_small() {
        let s = session();
        let s3 = s.lookup("S3").unwrap();
        let c6 = s.lookup("C6").unwrap();
        let c4 = s.lookup("C4").unwrap();
        for probe in [s3, c6, c4] {
            let a = generated_member(&s, probe, &[s3], 1, Functor::Trivial).unwrap();
            let b =
                generated_member_product_route(&s, probe, &[s3], 1, Functor::Trivial).unwrap();
            if a.is_definite() && b.is_definite() {
                assert_eq!(a, b, "routes disagree on {probe:?}");
            }
        }
    }

    #[test]
    fn canonical_definition_of_identity_function() {
        let s = session();
        // f == (1) everywhere; canonical values must behave as Gpi{block}.
        let f = SigmaFn::constant(ClassExpr::One);
        let canonical = canonical_on_universe(&s, &f).unwrap();
        for block in ["2", "3"] {
            let value = canonical.value(block);
            let gpi = ClassExpr::Gpi(BlockSel::one(block.to_string()));
            let report = s.class_equal_on_universe(value, &gpi, 24).unwrap();
            assert!(report.clean(), "block {block}: {:?}", report.disagreements);
            assert!(report.unknown.is_empty());
        }
        // LF of the canonical definition agrees with LF(f) on the universe.
        let lf_f = ClassExpr::lf(f);
        let lf_canon = ClassExpr::lf(canonical);
        let report = s.class_equal_on_universe(&lf_f, &lf_canon, 24).unwrap();
        assert!(report.clean());
    }

    #[test]
    fn canonical_idempotence_on_universe() {
        let s = session();
        let s3 = s.lookup("S3").unwrap();
        let f = s.smallest_definition(&[s3], 1, Functor::Trivial).unwrap();
        let c1 = canonical_on_universe(&s, &f).unwrap();
        let c2 = canonical_on_universe(&s, &c1).unwrap();
        let report = s
            .class_equal_on_universe(&ClassExpr::lf(c1.clone()), &ClassExpr::lf(c2.clone()), 24)
            .unwrap();
        assert!(report.clean());
        // Blockwise verdict agreement as well.
        for b in ["2", "3"] {
            let r = s.class_equal_on_universe(c1.value(b), c2.value(b), 24).unwrap();
            assert!(r.clean(), "block {b}: {:?}", r.disagreements);
        }
    }

    #[test]
    fn socle_split_c6() {
        let s = session();
        let c6 = s.lookup("C6").unwrap();
        let d = socle_split(&s, c6, "5").unwrap();
        assert_eq!(d.factors.len(), 2);
        assert!(d.all_checks_pass());
        let mut qorders: Vec<u64> = d.factors.iter().map(|f| s.group(f.quotient).order()).collect();
        qorders.sort_unstable();
        assert_eq!(qorders, vec![2, 3]);
    }

    #[test]
    fn socle_split_klein_four() {
        let s = session();
        let v4 = s.lookup("D2").unwrap();
        let d = socle_split(&s, v4, "3").unwrap();
        assert_eq!(d.factors.len(), 2, "greedy pair among three minimal normals");
        assert!(d.all_checks_pass());
    }

    #[test]
    fn socle_split_preconditions() {
        let s = session();
        let s3 = s.lookup("S3").unwrap();
        // Monolithic: t = 1.
        assert!(socle_split(&s, s3, "5").is_err());
        // Nontrivial block radical.
        let c6 = s.lookup("C6").unwrap();
        assert!(socle_split(&s, c6, "2").is_err());
    }

    #[test]
    fn nilpotent_product_examples() {
        let s = session();
        // Pi = {2,3}, class = form{C2}: S3 passes both routes.
        let c2 = s.lookup("C2").unwrap();
        let class = ClassExpr::gen_formation(Functor::Trivial, 0, vec![c2]);
        let pi = BlockSel::of(["2".to_string(), "3".to_string()]);
        let f = nilpotent_product_definition(&class, &pi);
        let s3 = s.lookup("S3").unwrap();
        assert_eq!(s.lf_member(&f, s3).unwrap(), Verdict::Yes);
        let product = nilpotent_product_class(&class, &pi);
        assert_eq!(s.member(&product, s3).unwrap(), Verdict::Yes);
        // A 5-group falls outside Pi: both routes reject it.
        let c5 = s.lookup("C5").unwrap();
        assert_eq!(s.lf_member(&f, c5).unwrap(), Verdict::No);
        assert_eq!(s.member(&product, c5).unwrap(), Verdict::No);
    }

    #[test]
    fn radical_transfer_examples() {
        let s = session();
        let c3 = s.lookup("C3").unwrap();
        let c6 = s.lookup("C6").unwrap();
        assert_eq!(
            radical_transfer_check(&s, c3, &[c6], "2", 0, Functor::Trivial).unwrap(),
            TransferOutcome::Holds
        );
        // Nontrivial block radical: skipped.
        assert_eq!(
            radical_transfer_check(&s, c6, &[c6], "2", 0, Functor::Trivial).unwrap(),
            TransferOutcome::Skipped("block radical is nontrivial")
        );
        // Trivial group: vacuously holds.
        let c1 = s.lookup("C1").unwrap();
        assert_eq!(
            radical_transfer_check(&s, c1, &[c6], "2", 0, Functor::Trivial).unwrap(),
            TransferOutcome::Holds
        );
    }
}
