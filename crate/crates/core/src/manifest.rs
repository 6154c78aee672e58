//! Seed catalogs for universes: the default seed family (cyclic, dihedral,
//! symmetric/alternating, quaternion, wreath and affine groups, and pairwise
//! direct products within the bound) and the session constructors on top.

use crate::construct;
use crate::error::Result;
use crate::group::PermGroup;
use crate::session::{Session, UniverseSpec};
use crate::sigma::SigmaPartition;

/// The default seed family for a given order bound: base constructors plus
/// all pairwise direct products fitting under the bound. The universe builder
/// closes the result under quotients and deduplicates up to isomorphism.
pub fn default_seeds(bound: u64) -> Result<Vec<(String, PermGroup)>> {
    let mut base: Vec<(String, PermGroup)> = Vec::new();
    for n in 1..=bound {
        base.push((format!("C{n}"), construct::cyclic(n)?));
    }
    for n in 2..=bound / 2 {
        base.push((format!("D{n}"), construct::dihedral(n)?));
    }
    for n in 3..=5u64 {
        let s = construct::symmetric(n)?;
        if s.order() <= bound {
            base.push((format!("S{n}"), s));
        }
        let a = construct::alternating(n)?;
        if a.order() <= bound {
            base.push((format!("A{n}"), a));
        }
    }
    for n in [8u64, 16, 32] {
        if n <= bound {
            base.push((format!("Q{n}"), construct::quaternion(n)?));
        }
    }
    // Small regular wreath products of cyclic groups.
    for a in 2..=6u64 {
        for b in 2..=6u64 {
            let Some(pow) = a.checked_pow(b as u32) else {
                continue;
            };
            let Some(order) = pow.checked_mul(b) else {
                continue;
            };
            if order <= bound {
                let w = construct::regular_wreath(&construct::cyclic(a)?, &construct::cyclic(b)?)?;
                base.push((format!("C{a}wrC{b}"), w.group));
            }
        }
    }
    // Affine one-dimensional-style groups q:d for prime powers q.
    for q in [4u64, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27] {
        for d in 2..q {
            if (q - 1) % d != 0 {
                continue;
            }
            if q * d <= bound {
                base.push((format!("Aff{q}_{d}"), construct::affine_frobenius(q, d)?));
            }
        }
    }
    // Pairwise direct products within the bound.
    let mut out = base.clone();
    let n = base.len();
    for i in 0..n {
        for j in i..n {
            let (na, a) = &base[i];
            let (nb, b) = &base[j];
            if a.order() <= 1 || b.order() <= 1 {
                continue;
            }
            let Some(order) = a.order().checked_mul(b.order()) else {
                continue;
            };
            if order <= bound {
                out.push((format!("{na}x{nb}"), construct::direct_product(a, b)?));
            }
        }
    }
    Ok(out)
}

pub fn default_universe_spec(bound: u64) -> Result<UniverseSpec> {
    Ok(UniverseSpec {
        bound,
        seeds: default_seeds(bound)?,
    })
}

/// Session over the default seeds at the given bound.
pub fn default_session(sigma: SigmaPartition, bound: u64) -> Result<Session> {
    Session::new(sigma, default_universe_spec(bound)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_one_universe_is_trivial() {
        let s = default_session(SigmaPartition::singletons(), 1).unwrap();
        assert_eq!(s.universe().len(), 1);
        assert_eq!(s.group(s.universe()[0]).order(), 1);
    }

    #[test]
    fn seed_beyond_bound_is_rejected() {
        let spec = UniverseSpec {
            bound: 24,
            seeds: vec![(
                "big".to_string(),
                construct::affine_frobenius(25, 6).unwrap(),
            )],
        };
        assert!(Session::new(SigmaPartition::singletons(), spec).is_err());
    }
}
