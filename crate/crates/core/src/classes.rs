//! Group-class expressions: predicate atoms, products, intersections, and
//! generated closures, together with subgroup functors and formation
//! sigma-functions. Evaluation lives in the session module; everything here
//! is inert, hashable data so verdicts can be memoized per (class, group).

use crate::sigma::BlockId;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Identifier of an interned isomorphism class within a session.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupId(pub u32);

/// The three supported subgroup functors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Functor {
    /// tau(G) = {G}.
    Trivial,
    /// tau(G) = normal subgroups of G.
    Normal,
    /// tau(G) = all subgroups of G.
    All,
}

impl Functor {
    pub fn name(self) -> &'static str {
        match self {
            Functor::Trivial => "trivial",
            Functor::Normal => "normal",
            Functor::All => "all",
        }
    }

    pub fn parse(s: &str) -> Option<Functor> {
        match s {
            "trivial" => Some(Functor::Trivial),
            "normal" => Some(Functor::Normal),
            "all" => Some(Functor::All),
            _ => None,
        }
    }
}

/// A set of partition blocks: either every block, or a finite list of ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockSel {
    All,
    These(BTreeSet<BlockId>),
}

impl BlockSel {
    pub fn contains_all(&self, blocks: &BTreeSet<BlockId>) -> bool {
        match self {
            BlockSel::All => true,
            BlockSel::These(set) => blocks.iter().all(|b| set.contains(b)),
        }
    }

    pub fn one(id: impl Into<BlockId>) -> BlockSel {
        BlockSel::These(BTreeSet::from([id.into()]))
    }

    pub fn of(ids: impl IntoIterator<Item = BlockId>) -> BlockSel {
        BlockSel::These(ids.into_iter().collect())
    }
}

impl fmt::Display for BlockSel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockSel::All => write!(f, "{{*}}"),
            BlockSel::These(set) => {
                let items: Vec<&str> = set.iter().map(|s| s.as_str()).collect();
                write!(f, "{{{}}}", items.join(","))
            }
        }
    }
}

/// Closure kind for generated classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenKind {
    /// Quotient-and-subgroup closure (a semiformation).
    Semiformation,
    /// Formation closure; `level` many sigma-local refinement layers on top.
    Formation,
}

/// What a generated class is generated from.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenBase {
    /// A finite list of interned groups.
    Groups(Vec<GroupId>),
    /// A quotient-closed class given by its membership predicate.
    Class(Box<ClassExpr>),
}

/// A class of groups with three-valued membership.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassExpr {
    /// The empty class.
    Empty,
    /// The class of trivial groups.
    One,
    /// All groups.
    All,
    /// Groups whose order's blocks lie inside the selection.
    Gpi(BlockSel),
    /// Sigma-soluble groups with blocks inside the selection.
    Ssol(BlockSel),
    /// Sigma-nilpotent groups.
    Nsigma,
    /// Formation product: G belongs iff the residual of G by the right-hand
    /// class belongs to the left-hand class.
    Prod(Box<ClassExpr>, Box<ClassExpr>),
    Meet(Vec<ClassExpr>),
    Union(Vec<ClassExpr>),
    /// Generated closure within the session's universe.
    Gen {
        kind: GenKind,
        tau: Functor,
        level: u32,
        base: GenBase,
    },
    /// The class defined by a formation sigma-function.
    Lf(Box<SigmaFn>),
}

impl ClassExpr {
    pub fn prod(m: ClassExpr, h: ClassExpr) -> ClassExpr {
        ClassExpr::Prod(Box::new(m), Box::new(h))
    }

    pub fn meet(items: Vec<ClassExpr>) -> ClassExpr {
        ClassExpr::Meet(items)
    }

    pub fn union(items: Vec<ClassExpr>) -> ClassExpr {
        ClassExpr::Union(items)
    }

    pub fn gen_formation(tau: Functor, level: u32, gens: Vec<GroupId>) -> ClassExpr {
        ClassExpr::Gen {
            kind: GenKind::Formation,
            tau,
            level,
            base: GenBase::Groups(gens),
        }
    }

    pub fn gen_semiformation(tau: Functor, gens: Vec<GroupId>) -> ClassExpr {
        ClassExpr::Gen {
            kind: GenKind::Semiformation,
            tau,
            level: 0,
            base: GenBase::Groups(gens),
        }
    }

    pub fn gen_formation_of_class(tau: Functor, level: u32, base: ClassExpr) -> ClassExpr {
        ClassExpr::Gen {
            kind: GenKind::Formation,
            tau,
            level,
            base: GenBase::Class(Box::new(base)),
        }
    }

    pub fn lf(f: SigmaFn) -> ClassExpr {
        ClassExpr::Lf(Box::new(f))
    }

    pub fn is_empty_class(&self) -> bool {
        matches!(self, ClassExpr::Empty)
            || matches!(self, ClassExpr::Gen { base: GenBase::Groups(g), .. } if g.is_empty())
    }
}

/// A formation sigma-function: finitely many explicit block values plus a
/// default for every other block (Empty unless configured otherwise).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SigmaFn {
    pub assignments: BTreeMap<BlockId, ClassExpr>,
    pub default: ClassExpr,
}

impl SigmaFn {
    pub fn empty() -> SigmaFn {
        SigmaFn {
            assignments: BTreeMap::new(),
            default: ClassExpr::Empty,
        }
    }

    /// The constant function assigning `value` to every block.
    pub fn constant(value: ClassExpr) -> SigmaFn {
        SigmaFn {
            assignments: BTreeMap::new(),
            default: value,
        }
    }

    pub fn with(mut self, block: impl Into<BlockId>, value: ClassExpr) -> SigmaFn {
        self.assignments.insert(block.into(), value);
        self
    }

    pub fn value(&self, block: &str) -> &ClassExpr {
        self.assignments.get(block).unwrap_or(&self.default)
    }

    /// Whether the value at `block` is (syntactically) non-empty.
    pub fn supports(&self, block: &str) -> bool {
        !self.value(block).is_empty_class()
    }

    /// Explicitly assigned blocks with non-empty values.
    pub fn explicit_support(&self) -> BTreeSet<BlockId> {
        self.assignments
            .iter()
            .filter(|(_, v)| !v.is_empty_class())
            .map(|(k, _)| k.clone())
            .collect()
    }

    pub fn has_nonempty_default(&self) -> bool {
        !self.default.is_empty_class()
    }

    /// Blockwise intersection (the meet of definitions).
    pub fn meet(&self, other: &SigmaFn) -> SigmaFn {
        let mut blocks: BTreeSet<BlockId> = self.assignments.keys().cloned().collect();
        blocks.extend(other.assignments.keys().cloned());
        let mut out = SigmaFn {
            assignments: BTreeMap::new(),
            default: meet_values(&self.default, &other.default),
        };
        for b in blocks {
            let v = meet_values(self.value(&b), other.value(&b));
            out.assignments.insert(b, v);
        }
        out
    }
}

fn meet_values(a: &ClassExpr, b: &ClassExpr) -> ClassExpr {
    if a.is_empty_class() || b.is_empty_class() {
        ClassExpr::Empty
    } else {
        ClassExpr::meet(vec![a.clone(), b.clone()])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_fn_support() {
        let f = SigmaFn::empty().with("2", ClassExpr::One).with("3", ClassExpr::Empty);
        assert!(f.supports("2"));
        assert!(!f.supports("3"));
        assert!(!f.supports("5"));
        let g = SigmaFn::constant(ClassExpr::One);
        assert!(g.supports("5"));
        assert!(g.has_nonempty_default());
    }

    #[test]
    fn meet_of_definitions() {
        let f = SigmaFn::empty().with("2", ClassExpr::All);
        let g = SigmaFn::empty()
            .with("2", ClassExpr::Nsigma)
            .with("3", ClassExpr::All);
        let m = f.meet(&g);
        assert!(m.supports("2"));
        assert!(!m.supports("3"), "meet with empty value is empty");
        assert!(!m.supports("5"));
    }

    #[test]
    fn block_sel() {
        let sel = BlockSel::of(["2".to_string(), "3".to_string()]);
        let mut blocks = BTreeSet::new();
        blocks.insert("2".to_string());
        assert!(sel.contains_all(&blocks));
        blocks.insert("5".to_string());
        assert!(!sel.contains_all(&blocks));
        assert!(BlockSel::All.contains_all(&blocks));
    }
}
