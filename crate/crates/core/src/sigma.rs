//! Partitions of the primes into named blocks, the block sets attached to
//! integers and groups, the radical subgroups O_pi, O_{pi,nu} and the
//! blockwise Fitting-style radicals, and the sigma-indexed solubility and
//! nilpotency predicates.

use crate::error::{Error, Result};
use crate::group::{PermGroup, Subgroup};
use crate::structure::{self, Quotient};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Identifier of a partition block. Listed blocks carry their configured
/// names; every unlisted prime forms its own singleton block whose synthetic
/// id is the prime's decimal string.
pub type BlockId = String;

/// A partition of all primes: finitely many named blocks plus the residual
/// rule assigning every unlisted prime to its own singleton block.
///
/// The empty configuration is the all-singletons partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaPartition {
    /// Listed blocks, keyed by id, each a non-empty set of primes.
    blocks: BTreeMap<BlockId, BTreeSet<u64>>,
    /// Reverse lookup for listed primes.
    prime_to_block: BTreeMap<u64, BlockId>,
}

impl SigmaPartition {
    /// The all-singletons partition.
    pub fn singletons() -> SigmaPartition {
        SigmaPartition {
            blocks: BTreeMap::new(),
            prime_to_block: BTreeMap::new(),
        }
    }

    pub fn from_blocks(blocks: Vec<(String, Vec<u64>)>) -> Result<SigmaPartition> {
        let mut out = SigmaPartition::singletons();
        for (id, primes) in blocks {
            out.add_block(id, primes)?;
        }
        Ok(out)
    }

    fn add_block(&mut self, id: String, primes: Vec<u64>) -> Result<()> {
        if primes.is_empty() {
            return Err(Error::input(format!("block {id} is empty")));
        }
        if !valid_block_id(&id) {
            return Err(Error::input(format!(
                "block id {id:?} must match [A-Za-z0-9_]+"
            )));
        }
        if self.blocks.contains_key(&id) {
            return Err(Error::input(format!("duplicate block id {id}")));
        }
        let mut set = BTreeSet::new();
        for p in primes {
            if !is_prime(p) {
                return Err(Error::input(format!("{p} is not prime (block {id})")));
            }
            if let Some(other) = self.prime_to_block.get(&p) {
                return Err(Error::input(format!(
                    "prime {p} already lies in block {other}"
                )));
            }
            set.insert(p);
        }
        for &p in &set {
            self.prime_to_block.insert(p, id.clone());
        }
        self.blocks.insert(id, set);
        Ok(())
    }

    /// Parses the sigma-config text format: lines `block <id>: p1 p2 ...`,
    /// with `#` comments and blank lines ignored. Empty input gives the
    /// all-singletons partition.
    pub fn parse(text: &str) -> Result<SigmaPartition> {
        let mut out = SigmaPartition::singletons();
        for raw in text.lines() {
            let line = match raw.find('#') {
                Some(i) => &raw[..i],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let rest = line
                .strip_prefix("block")
                .ok_or_else(|| Error::input(format!("expected `block <id>: ...`: {line:?}")))?
                .trim();
            let (id, primes_text) = rest
                .split_once(':')
                .ok_or_else(|| Error::input(format!("missing ':' in block line: {line:?}")))?;
            let mut primes = Vec::new();
            for tok in primes_text.split_whitespace() {
                let p: u64 = tok
                    .parse()
                    .map_err(|_| Error::input(format!("bad prime {tok:?}")))?;
                primes.push(p);
            }
            out.add_block(id.trim().to_string(), primes)?;
        }
        Ok(out)
    }

    /// The block containing a prime (total over all primes).
    pub fn block_of(&self, p: u64) -> BlockId {
        match self.prime_to_block.get(&p) {
            Some(id) => id.clone(),
            None => p.to_string(),
        }
    }

    /// Primes of a block id; `None` if the id neither is listed nor denotes a
    /// residual singleton (i.e. a prime whose block is listed elsewhere).
    pub fn primes_of(&self, id: &str) -> Option<BTreeSet<u64>> {
        if let Some(set) = self.blocks.get(id) {
            return Some(set.clone());
        }
        if let Ok(p) = id.parse::<u64>() {
            if is_prime(p) && !self.prime_to_block.contains_key(&p) {
                return Some(BTreeSet::from([p]));
            }
        }
        None
    }

    /// Checks that a block id resolves under this partition.
    pub fn resolve(&self, id: &str) -> Result<BlockId> {
        if self.primes_of(id).is_some() {
            Ok(id.to_string())
        } else {
            Err(Error::input(format!(
                "block id {id:?} does not resolve in this partition"
            )))
        }
    }

    pub fn listed_blocks(&self) -> &BTreeMap<BlockId, BTreeSet<u64>> {
        &self.blocks
    }

    /// sigma(n): blocks meeting the prime divisors of n. sigma(1) is empty.
    pub fn sigma_of_int(&self, n: u64) -> BTreeSet<BlockId> {
        prime_divisors(n)
            .into_iter()
            .map(|p| self.block_of(p))
            .collect()
    }

    /// sigma(G) = sigma(|G|).
    pub fn sigma_of_group(&self, g: &PermGroup) -> BTreeSet<BlockId> {
        self.sigma_of_int(g.order())
    }

    /// Whether all primes of `n` lie inside the named block.
    pub fn int_in_block(&self, n: u64, id: &str) -> bool {
        prime_divisors(n).iter().all(|&p| self.block_of(p) == id)
    }

    pub fn config_text(&self) -> String {
        let mut out = String::new();
        for (id, primes) in &self.blocks {
            let list: Vec<String> = primes.iter().map(|p| p.to_string()).collect();
            out.push_str(&format!("block {id}: {}\n", list.join(" ")));
        }
        out
    }
}

impl fmt::Display for SigmaPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return write!(f, "all-singletons");
        }
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|(id, ps)| {
                let list: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
                format!("{id}={{{}}}", list.join(","))
            })
            .collect();
        write!(f, "{} + singletons", parts.join(" "))
    }
}

fn valid_block_id(id: &str) -> bool {
    !id.is_empty()
        && id
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn prime_divisors(mut n: u64) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.insert(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.insert(n);
    }
    out
}

/// Largest normal subgroup of `g` whose order has all prime divisors inside
/// `pi` (the join of all normal pi-subgroups).
pub fn o_pi(g: &PermGroup, pi: &BTreeSet<u64>) -> Result<Subgroup> {
    let normals = structure::normal_subgroups(g)?;
    let mut best = Subgroup::trivial(g);
    for n in &normals {
        if prime_divisors(n.order()).is_subset(pi) && n.order() > best.order() {
            best = n.clone();
        }
    }
    Ok(best)
}

/// O_{pi,nu}(G): the preimage in G of O_nu(G / O_pi(G)).
pub fn o_pi_nu(g: &PermGroup, pi: &BTreeSet<u64>, nu: &BTreeSet<u64>) -> Result<Subgroup> {
    let opi = o_pi(g, pi)?;
    let q: Quotient = structure::quotient(g, &opi)?;
    let onu_q = o_pi(&q.group, nu)?;
    let pre = q.preimage_elements(onu_q.elements())?;
    Ok(Subgroup::from_elements(g, pre))
}

/// The blockwise radical F_{block}(G) = O_{block',block}(G), where block' is
/// realized as the complement of the block's primes within pi(G).
pub fn f_block(sigma: &SigmaPartition, g: &PermGroup, block: &str) -> Result<Subgroup> {
    let block_primes = sigma
        .primes_of(block)
        .ok_or_else(|| Error::input(format!("unknown block {block:?}")))?;
    let pi_g = prime_divisors(g.order());
    let complement: BTreeSet<u64> = pi_g.difference(&block_primes).copied().collect();
    o_pi_nu(g, &complement, &block_primes)
}

/// sigma-primary: the order's primes lie in at most one block.
pub fn is_sigma_primary(sigma: &SigmaPartition, g: &PermGroup) -> bool {
    sigma.sigma_of_group(g).len() <= 1
}

fn int_sigma_primary(sigma: &SigmaPartition, n: u64) -> bool {
    sigma.sigma_of_int(n).len() <= 1
}

/// A chief factor H/K of G is sigma-central when the semidirect product
/// (H/K) x| (G / C_G(H/K)) is sigma-primary; the order of that product is
/// |H/K| * [G : C_G(H/K)], so only the two orders matter.
pub fn is_chief_factor_sigma_central(
    sigma: &SigmaPartition,
    g: &PermGroup,
    upper: &Subgroup,
    lower: &Subgroup,
) -> Result<bool> {
    let cent = structure::section_centralizer(g, upper, lower)?;
    let factor_order = upper.order() / lower.order();
    let index = g.order() / cent.order();
    Ok(int_sigma_primary(sigma, factor_order * index))
}

/// sigma-soluble: trivial, or every chief factor is sigma-primary.
pub fn is_sigma_soluble(sigma: &SigmaPartition, g: &PermGroup) -> Result<bool> {
    if g.is_trivial() {
        return Ok(true);
    }
    let cs = structure::chief_series(g)?;
    for (upper, lower) in cs.factors() {
        if !int_sigma_primary(sigma, upper.order() / lower.order()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// sigma-nilpotent: every chief factor is sigma-central.
pub fn is_sigma_nilpotent(sigma: &SigmaPartition, g: &PermGroup) -> Result<bool> {
    if g.is_trivial() {
        return Ok(true);
    }
    let cs = structure::chief_series(g)?;
    for (upper, lower) in cs.factors() {
        if !is_chief_factor_sigma_central(sigma, g, &upper, &lower)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::*;

    #[test]
    fn parse_and_block_of() {
        let s = SigmaPartition::parse("block s1: 2 3\n").unwrap();
        assert_eq!(s.block_of(2), "s1");
        assert_eq!(s.block_of(3), "s1");
        assert_eq!(s.block_of(7), "7");
        let empty = SigmaPartition::parse("").unwrap();
        assert_eq!(empty.block_of(7), "7");
        assert!(SigmaPartition::parse("block a: 2\nblock b: 2\n").is_err());
        assert!(SigmaPartition::parse("block a: 4\n").is_err());
        assert!(SigmaPartition::parse("block a:\n").is_err());
    }

    #[test]
    fn sigma_of_values() {
        let singles = SigmaPartition::singletons();
        let s12: Vec<BlockId> = singles.sigma_of_int(12).into_iter().collect();
        assert_eq!(s12, vec!["2".to_string(), "3".to_string()]);
        let merged = SigmaPartition::parse("block s1: 2 3\n").unwrap();
        let m12: Vec<BlockId> = merged.sigma_of_int(12).into_iter().collect();
        assert_eq!(m12, vec!["s1".to_string()]);
        assert!(singles.sigma_of_int(1).is_empty());
        assert!(singles
            .sigma_of_group(&cyclic(1).unwrap())
            .is_empty());
    }

    #[test]
    fn o_pi_values() {
        let s3 = symmetric(3).unwrap();
        let three: BTreeSet<u64> = [3].into();
        assert_eq!(o_pi(&s3, &three).unwrap().order(), 3);
        let five: BTreeSet<u64> = [5].into();
        assert_eq!(o_pi(&s3, &five).unwrap().order(), 1);
        let all: BTreeSet<u64> = [2, 3].into();
        assert_eq!(o_pi(&s3, &all).unwrap().order(), 6);
        // O_pi contains every normal pi-subgroup.
        let normals = structure::normal_subgroups(&s3).unwrap();
        let opi3 = o_pi(&s3, &three).unwrap();
        for n in &normals {
            if prime_divisors(n.order()).is_subset(&three) {
                assert!(opi3.contains_subgroup(n));
            }
        }
    }

    #[test]
    fn o_pi_nu_values() {
        let s3 = symmetric(3).unwrap();
        let three: BTreeSet<u64> = [3].into();
        let two: BTreeSet<u64> = [2].into();
        // O_{3}(S3) = A3, then O_2(S3/A3) = C2, preimage = S3.
        assert_eq!(o_pi_nu(&s3, &three, &two).unwrap().order(), 6);
        // Empty pi: degenerates to O_nu.
        let empty: BTreeSet<u64> = BTreeSet::new();
        assert_eq!(
            o_pi_nu(&s3, &empty, &two).unwrap().order(),
            o_pi(&s3, &two).unwrap().order()
        );
    }

    #[test]
    fn f_block_values() {
        let sigma = SigmaPartition::singletons();
        let s3 = symmetric(3).unwrap();
        assert_eq!(f_block(&sigma, &s3, "3").unwrap().order(), 3);
        assert_eq!(f_block(&sigma, &s3, "2").unwrap().order(), 6);
        // Block outside sigma(G): O_{block'}(G) = G, so the radical is G.
        assert_eq!(f_block(&sigma, &s3, "5").unwrap().order(), 6);
        // A block-primary group is its own block radical.
        let c4 = cyclic(4).unwrap();
        assert_eq!(f_block(&sigma, &c4, "2").unwrap().order(), 4);
    }

    #[test]
    fn f_block_quotient_identity() {
        // F_block(G)/O_{block'}(G) is isomorphic to O_block(G/O_{block'}(G));
        // checked on orders for a few groups.
        let sigma = SigmaPartition::singletons();
        for g in [symmetric(4).unwrap(), dihedral(6).unwrap(), cyclic(12).unwrap()] {
            for block in ["2", "3"] {
                let primes = sigma.primes_of(block).unwrap();
                let pi_g = prime_divisors(g.order());
                let compl: BTreeSet<u64> = pi_g.difference(&primes).copied().collect();
                let opi = o_pi(&g, &compl).unwrap();
                let q = structure::quotient(&g, &opi).unwrap();
                let onu_q = o_pi(&q.group, &primes).unwrap();
                let fbl = f_block(&sigma, &g, block).unwrap();
                assert_eq!(fbl.order(), opi.order() * onu_q.order());
            }
        }
    }

    #[test]
    fn sigma_predicates() {
        let singles = SigmaPartition::singletons();
        let s3 = symmetric(3).unwrap();
        assert!(is_sigma_soluble(&singles, &s3).unwrap());
        assert!(!is_sigma_nilpotent(&singles, &s3).unwrap());
        assert!(!is_sigma_primary(&singles, &s3));

        let merged = SigmaPartition::parse("block s23: 2 3\n").unwrap();
        assert!(is_sigma_primary(&merged, &s3));
        assert!(is_sigma_nilpotent(&merged, &s3).unwrap());
        assert!(is_sigma_soluble(&merged, &s3).unwrap());

        let a5 = alternating(5).unwrap();
        assert!(!is_sigma_soluble(&singles, &a5).unwrap());
        assert!(!is_sigma_nilpotent(&singles, &a5).unwrap());
    }

    #[test]
    fn nilpotency_matches_coprime_commuting_oracle() {
        // Classical fact: a finite group is nilpotent iff elements of coprime
        // order commute. With all-singleton blocks the sigma-nilpotency
        // predicate must agree with that element-level oracle.
        let singles = SigmaPartition::singletons();
        let samples = vec![
            cyclic(12).unwrap(),
            dihedral(4).unwrap(),
            dihedral(6).unwrap(),
            symmetric(3).unwrap(),
            symmetric(4).unwrap(),
            quaternion(8).unwrap(),
            direct_product(&cyclic(3).unwrap(), &dihedral(4).unwrap()).unwrap(),
            alternating(4).unwrap(),
        ];
        for g in samples {
            let elems = g.elements().unwrap();
            let mut oracle = true;
            'o: for a in elems.iter() {
                for b in elems.iter() {
                    if crate::perm::gcd(a.order(), b.order()) == 1
                        && a.compose(b) != b.compose(a)
                    {
                        oracle = false;
                        break 'o;
                    }
                }
            }
            assert_eq!(
                is_sigma_nilpotent(&singles, &g).unwrap(),
                oracle,
                "{g:?}"
            );
        }
    }

    #[test]
    fn verdicts_agree_across_chief_series() {
        let singles = SigmaPartition::singletons();
        for g in [symmetric(4).unwrap(), dihedral(6).unwrap(), cyclic(30).unwrap()] {
            let a = structure::chief_series(&g).unwrap();
            let b = structure::chief_series_alternative(&g).unwrap();
            let via = |cs: &structure::ChiefSeries| -> (bool, bool) {
                let mut sol = true;
                let mut nil = true;
                for (u, l) in cs.factors() {
                    if !int_sigma_primary(&singles, u.order() / l.order()) {
                        sol = false;
                    }
                    if !is_chief_factor_sigma_central(&singles, &g, &u, &l).unwrap() {
                        nil = false;
                    }
                }
                (sol, nil)
            };
            assert_eq!(via(&a), via(&b));
        }
    }

    #[test]
    fn sigma_nilpotent_implies_sigma_soluble() {
        let sigma = SigmaPartition::parse("block s23: 2 3\n").unwrap();
        for g in [
            symmetric(3).unwrap(),
            symmetric(4).unwrap(),
            cyclic(30).unwrap(),
            dihedral(5).unwrap(),
        ] {
            if is_sigma_nilpotent(&sigma, &g).unwrap() {
                assert!(is_sigma_soluble(&sigma, &g).unwrap());
            }
        }
    }
}
