//! Permutations on the points `{1..degree}`, stored 0-based internally.
//!
//! The text format used throughout is disjoint-cycle notation on 1-based
//! points, e.g. `(1 2 3)(4 5)`; the identity is written `()`.

use crate::error::{Error, Result};
use std::fmt;

/// A bijection of `{0..degree-1}` given by its image vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u16>,
}

impl Perm {
    /// Builds a permutation from an image vector, checking bijectivity.
    pub fn from_images(images: Vec<u16>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if (x as usize) >= n || seen[x as usize] {
                return Err(Error::input(format!(
                    "image vector {:?} is not a bijection of 0..{}",
                    images, n
                )));
            }
            seen[x as usize] = true;
        }
        Ok(Perm { images })
    }

    pub fn identity(degree: usize) -> Perm {
        Perm {
            images: (0..degree as u16).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u16 == x)
    }

    /// Composition acting left-to-right: `(a * b)(x) = b(a(x))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u16; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u16;
        }
        Perm { images: inv }
    }

    /// `other^-1 * self * other`.
    pub fn conjugate_by(&self, other: &Perm) -> Perm {
        other.inverse().compose(self).compose(other)
    }

    /// Commutator `self^-1 other^-1 self other`.
    pub fn commutator(&self, other: &Perm) -> Perm {
        self.inverse()
            .compose(&other.inverse())
            .compose(self)
            .compose(other)
    }

    /// Multiplicative order (lcm of cycle lengths).
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.degree()];
        let mut ord: u64 = 1;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len: u64 = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.apply(p);
                len += 1;
            }
            ord = lcm(ord, len);
        }
        ord
    }

    pub fn pow(&self, mut e: u64) -> Perm {
        let mut acc = Perm::identity(self.degree());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    /// Extends (or restricts is disallowed) to a larger degree, fixing new points.
    pub fn extend_degree(&self, degree: usize) -> Perm {
        assert!(degree >= self.degree());
        let mut images: Vec<u16> = self.images.clone();
        for i in self.degree()..degree {
            images.push(i as u16);
        }
        Perm { images }
    }

    /// Disjoint cycle decomposition on 0-based points, cycles sorted by least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cyc = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cyc.push(p);
                p = self.apply(p);
            }
            out.push(cyc);
        }
        out
    }

    /// Parses disjoint-cycle notation with 1-based points, e.g. `(1 2 3)(4 5)`.
    /// `()` denotes the identity. Commas and whitespace both separate points.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Perm> {
        let mut images: Vec<u16> = (0..degree as u16).collect();
        let mut moved = vec![false; degree];
        let mut chars = text.chars().peekable();
        let mut saw_cycle = false;
        while let Some(&c) = chars.peek() {
            if c.is_whitespace() {
                chars.next();
                continue;
            }
            if c != '(' {
                return Err(Error::input(format!("expected '(' in cycles: {text:?}")));
            }
            chars.next();
            saw_cycle = true;
            let mut cyc: Vec<usize> = Vec::new();
            let mut cur = String::new();
            loop {
                match chars.next() {
                    Some(')') => {
                        if !cur.is_empty() {
                            cyc.push(parse_point(&cur, degree)?);
                        }
                        break;
                    }
                    Some(ch) if ch.is_ascii_digit() => cur.push(ch),
                    Some(ch) if ch.is_whitespace() || ch == ',' => {
                        if !cur.is_empty() {
                            cyc.push(parse_point(&cur, degree)?);
                            cur.clear();
                        }
                    }
                    Some(ch) => {
                        return Err(Error::input(format!("unexpected {ch:?} in cycles")));
                    }
                    None => return Err(Error::input("unterminated cycle".to_string())),
                }
            }
            for p in &cyc {
                if moved[*p] {
                    return Err(Error::input(format!(
                        "point {} repeated across cycles",
                        p + 1
                    )));
                }
                moved[*p] = true;
            }
            for i in 0..cyc.len() {
                images[cyc[i]] = cyc[(i + 1) % cyc.len()] as u16;
            }
        }
        if !saw_cycle {
            return Err(Error::input(format!("no cycles found in {text:?}")));
        }
        Perm::from_images(images)
    }
}

fn parse_point(token: &str, degree: usize) -> Result<usize> {
    let v: usize = token
        .parse()
        .map_err(|_| Error::input(format!("bad point {token:?}")))?;
    if v == 0 || v > degree {
        return Err(Error::input(format!(
            "point {v} outside 1..{degree}"
        )));
    }
    Ok(v - 1)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

impl fmt::Display for Perm {
    /// 1-based disjoint-cycle notation; identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cyc in cycles {
            write!(f, "(")?;
            for (i, p) in cyc.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
