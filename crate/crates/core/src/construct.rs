//! Constructors for the standard groups the suites draw on, plus the group
//! file format (`degree N` header, one generator per line in cycle notation).

use crate::error::{Error, Result};
use crate::group::{PermGroup, Subgroup, DEGREE_CAP};
use crate::perm::Perm;

pub fn cyclic(n: u64) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::input("cyclic(0) is not a group"));
    }
    if n == 1 {
        return Ok(PermGroup::from_generators(1, vec![])?.named("C1"));
    }
    let images: Vec<u16> = (0..n as usize).map(|i| ((i + 1) % n as usize) as u16).collect();
    let g = Perm::from_images(images)?;
    Ok(PermGroup::from_generators(n as usize, vec![g])?.named(format!("C{n}")))
}

pub fn dihedral(n: u64) -> Result<PermGroup> {
    match n {
        0 => Err(Error::input("dihedral(0) is not a group")),
        1 => Ok(cyclic(2)?.named("D1")),
        2 => Ok(direct_product(&cyclic(2)?, &cyclic(2)?)?.named("D2")),
        _ => {
            let m = n as usize;
            let rot: Vec<u16> = (0..m).map(|i| ((i + 1) % m) as u16).collect();
            let refl: Vec<u16> = (0..m).map(|i| ((m - i) % m) as u16).collect();
            let gens = vec![Perm::from_images(rot)?, Perm::from_images(refl)?];
            Ok(PermGroup::from_generators(m, gens)?.named(format!("D{n}")))
        }
    }
}

pub fn symmetric(n: u64) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::input("symmetric(0) is not a group"));
    }
    if n == 1 {
        return Ok(PermGroup::from_generators(1, vec![])?.named("S1"));
    }
    let m = n as usize;
    let mut swap: Vec<u16> = (0..m as u16).collect();
    swap.swap(0, 1);
    let cycle: Vec<u16> = (0..m).map(|i| ((i + 1) % m) as u16).collect();
    let gens = vec![Perm::from_images(swap)?, Perm::from_images(cycle)?];
    Ok(PermGroup::from_generators(m, gens)?.named(format!("S{n}")))
}

pub fn alternating(n: u64) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::input("alternating(0) is not a group"));
    }
    if n <= 2 {
        return Ok(PermGroup::from_generators(n.max(1) as usize, vec![])?.named(format!("A{n}")));
    }
    let m = n as usize;
    let three = Perm::parse_cycles("(1 2 3)", m)?;
    let mut gens = vec![three];
    if m > 3 {
        if m % 2 == 1 {
            let cyc: Vec<u16> = (0..m).map(|i| ((i + 1) % m) as u16).collect();
            gens.push(Perm::from_images(cyc)?);
        } else {
            // (2 3 ... n), an even cycle for even n.
            let mut img: Vec<u16> = (0..m as u16).collect();
            for i in 1..m {
                img[i] = if i + 1 < m { (i + 1) as u16 } else { 1 };
            }
            gens.push(Perm::from_images(img)?);
        }
    }
    Ok(PermGroup::from_generators(m, gens)?.named(format!("A{n}")))
}

/// Generalized quaternion group of order `n` (n a power of two, n >= 8),
/// realized by its right-regular representation.
pub fn quaternion(n: u64) -> Result<PermGroup> {
    if n < 8 || !n.is_power_of_two() {
        return Err(Error::input(format!(
            "quaternion({n}): order must be a power of two, at least 8"
        )));
    }
    let half = (n / 2) as usize;
    let quarter = half / 2;
    // Elements x^i y^j encoded as i + half * j.
    let encode = |i: usize, j: usize| (i % half) + half * (j % 2);
    // Right multiplication by the generators x and y.
    let mul = |e: usize, gen_is_y: bool| -> usize {
        let (i, j) = (e % half, e / half);
        if !gen_is_y {
            // (x^i y^j) * x = x^{i + (-1)^j} y^j
            if j == 0 {
                encode(i + 1, 0)
            } else {
                encode((i + half - 1) % half, 1)
            }
        } else {
            // (x^i y^j) * y : j=0 -> x^i y ; j=1 -> x^i y^2 = x^{i+quarter}
            if j == 0 {
                encode(i, 1)
            } else {
                encode(i + quarter, 0)
            }
        }
    };
    let x = Perm::from_images((0..n as usize).map(|e| mul(e, false) as u16).collect())?;
    let y = Perm::from_images((0..n as usize).map(|e| mul(e, true) as u16).collect())?;
    Ok(PermGroup::from_generators(n as usize, vec![x, y])?.named(format!("Q{n}")))
}

pub fn direct_product(a: &PermGroup, b: &PermGroup) -> Result<PermGroup> {
    let degree = a.degree() + b.degree();
    if degree > DEGREE_CAP {
        return Err(Error::Resource {
            what: "degree",
            limit: DEGREE_CAP as u64,
            actual: degree as u64,
        });
    }
    let mut gens: Vec<Perm> = a
        .generators()
        .iter()
        .map(|g| g.extend_degree(degree))
        .collect();
    let shift = a.degree() as u16;
    for g in b.generators() {
        let mut img: Vec<u16> = (0..degree as u16).collect();
        for i in 0..b.degree() {
            img[a.degree() + i] = shift + g.apply(i) as u16;
        }
        gens.push(Perm::from_images(img)?);
    }
    PermGroup::from_generators(degree, gens)
}

/// The right-regular representation of a group, with the embedding of the
/// original elements (indexed by the sorted element list).
pub struct RegularRep {
    pub group: PermGroup,
    elems: std::sync::Arc<Vec<Perm>>,
    source_degree: usize,
}

impl RegularRep {
    pub fn of(g: &PermGroup) -> Result<RegularRep> {
        let elems = g.elements()?;
        let n = elems.len();
        let index = g.element_indices()?;
        let mut gens = Vec::new();
        for gen in g.generators() {
            let mut img = vec![0u16; n];
            for (i, e) in elems.iter().enumerate() {
                img[i] = index[&e.compose(gen)] as u16;
            }
            gens.push(Perm::from_images(img)?);
        }
        Ok(RegularRep {
            group: PermGroup::from_generators(n.max(1), gens)?,
            elems: elems.clone(),
            source_degree: g.degree(),
        })
    }

    /// Image of a source-group element under the regular embedding.
    pub fn embed(&self, e: &Perm) -> Result<Perm> {
        if e.degree() != self.source_degree {
            return Err(Error::precondition("element degree mismatch".to_string()));
        }
        let n = self.elems.len();
        let mut img = vec![0u16; n];
        for (i, x) in self.elems.iter().enumerate() {
            let y = x.compose(e);
            let j = self
                .elems
                .binary_search(&y)
                .map_err(|_| Error::precondition("element not in source group".to_string()))?;
            img[i] = j as u16;
        }
        Perm::from_images(img)
    }
}

/// Regular wreath product `A wr B` in its imprimitive action on
/// `|A| * |B|` points, with the base subgroup and top embedding exposed.
pub struct Wreath {
    pub group: PermGroup,
    /// The base subgroup: the direct power of A acting blockwise.
    pub base: Subgroup,
    /// A in its regular representation (block shape).
    pub a_regular: PermGroup,
    /// B in its regular representation (block index action).
    pub b_regular: PermGroup,
}

impl Wreath {
    /// Embeds an element of `b_regular` as a block permutation of the wreath.
    pub fn embed_top(&self, b: &Perm) -> Result<Perm> {
        let a_deg = self.a_regular.degree();
        let b_deg = self.b_regular.degree();
        if b.degree() != b_deg {
            return Err(Error::precondition(
                "top element degree mismatch".to_string(),
            ));
        }
        let degree = a_deg * b_deg;
        let mut img = vec![0u16; degree];
        for block in 0..b_deg {
            let target = b.apply(block);
            for pt in 0..a_deg {
                img[block * a_deg + pt] = (target * a_deg + pt) as u16;
            }
        }
        Perm::from_images(img)
    }

    /// The image of a set of `b_regular` elements inside the wreath.
    pub fn embed_top_subgroup(&self, elems: &[Perm]) -> Result<Vec<Perm>> {
        elems.iter().map(|e| self.embed_top(e)).collect()
    }
}

pub fn regular_wreath(a: &PermGroup, b: &PermGroup) -> Result<Wreath> {
    let a_reg = RegularRep::of(a)?.group;
    let b_reg = RegularRep::of(b)?.group;
    let a_deg = a_reg.degree();
    let b_deg = b_reg.degree();
    let degree = a_deg * b_deg;
    if degree > DEGREE_CAP {
        return Err(Error::Resource {
            what: "degree",
            limit: DEGREE_CAP as u64,
            actual: degree as u64,
        });
    }
    // Copy of an A-generator acting on one block.
    let block_copy = |g: &Perm, block: usize| -> Result<Perm> {
        let mut img: Vec<u16> = (0..degree as u16).collect();
        for pt in 0..a_deg {
            img[block * a_deg + pt] = (block * a_deg + g.apply(pt)) as u16;
        }
        Perm::from_images(img)
    };
    let mut base_gens = Vec::new();
    for block in 0..b_deg {
        for g in a_reg.generators() {
            base_gens.push(block_copy(g, block)?);
        }
    }
    let mut top_gens = Vec::new();
    for g in b_reg.generators() {
        let mut img = vec![0u16; degree];
        for block in 0..b_deg {
            let target = g.apply(block);
            for pt in 0..a_deg {
                img[block * a_deg + pt] = (target * a_deg + pt) as u16;
            }
        }
        top_gens.push(Perm::from_images(img)?);
    }
    let mut gens = base_gens.clone();
    gens.extend(top_gens);
    let group = PermGroup::from_generators(degree, gens)?;
    let base_elems = group.subgroup_closure(&base_gens)?;
    let base = Subgroup::from_elements(&group, base_elems);
    Ok(Wreath {
        group,
        base,
        a_regular: a_reg,
        b_regular: b_reg,
    })
}

/// A small finite field F_q with q = p^k, elements indexed 0..q-1.
pub struct FiniteField {
    pub p: u64,
    pub k: u32,
    pub q: u64,
    /// Low-order coefficients of the monic irreducible modulus (degree k).
    modulus: Vec<u64>,
}

impl FiniteField {
    pub fn new(q: u64) -> Result<FiniteField> {
        let (p, k) =
            prime_power(q).ok_or_else(|| Error::input(format!("{q} is not a prime power")))?;
        let modulus = if k == 1 {
            vec![0]
        } else {
            find_irreducible(p, k)
        };
        Ok(FiniteField { p, k, q, modulus })
    }

    fn to_poly(&self, mut idx: u64) -> Vec<u64> {
        let mut c = vec![0u64; self.k as usize];
        for coef in c.iter_mut() {
            *coef = idx % self.p;
            idx /= self.p;
        }
        c
    }

    fn from_poly(&self, c: &[u64]) -> u64 {
        let mut idx = 0u64;
        for &coef in c.iter().rev() {
            idx = idx * self.p + coef;
        }
        idx
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let pa = self.to_poly(a);
        let pb = self.to_poly(b);
        let sum: Vec<u64> = pa
            .iter()
            .zip(pb.iter())
            .map(|(x, y)| (x + y) % self.p)
            .collect();
        self.from_poly(&sum)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let pa = self.to_poly(a);
        let pb = self.to_poly(b);
        let k = self.k as usize;
        let mut prod = vec![0u64; 2 * k];
        for (i, &x) in pa.iter().enumerate() {
            for (j, &y) in pb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        // Reduce modulo x^k + modulus: x^k = -modulus.
        for d in (k..2 * k).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (j, &m) in self.modulus.iter().enumerate() {
                let pos = d - k + j;
                prod[pos] = (prod[pos] + c * ((self.p - m % self.p) % self.p)) % self.p;
            }
        }
        prod.truncate(k);
        self.from_poly(&prod)
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    fn mult_order(&self, a: u64) -> u64 {
        let mut x = a;
        let mut ord = 1;
        while x != 1 {
            x = self.mul(x, a);
            ord += 1;
        }
        ord
    }

    /// The least element of multiplicative order exactly d (d | q-1).
    pub fn element_of_order(&self, d: u64) -> Result<u64> {
        if d == 0 || (self.q - 1) % d != 0 {
            return Err(Error::input(format!(
                "order {d} does not divide q-1 = {}",
                self.q - 1
            )));
        }
        if d == 1 {
            return Ok(1);
        }
        for a in 2..self.q {
            if self.mult_order(a) == d {
                return Ok(a);
            }
        }
        unreachable!("multiplicative group of a finite field is cyclic")
    }
}

fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = q;
    for d in 2..q {
        if d * d > q {
            break;
        }
        if q % d == 0 {
            p = d;
            break;
        }
    }
    let mut rest = q;
    let mut k = 0;
    while rest > 1 {
        if rest % p != 0 {
            return None;
        }
        rest /= p;
        k += 1;
    }
    Some((p, k))
}

/// Lexicographically least monic irreducible polynomial of degree k over F_p,
/// returned as its k low-order coefficients.
fn find_irreducible(p: u64, k: u32) -> Vec<u64> {
    let k = k as usize;
    let total = p.pow(k as u32);
    for idx in 0..total {
        let mut coeffs = Vec::with_capacity(k);
        let mut v = idx;
        for _ in 0..k {
            coeffs.push(v % p);
            v /= p;
        }
        if is_irreducible(p, &coeffs) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist for every degree")
}

fn is_irreducible(p: u64, low: &[u64]) -> bool {
    let k = low.len();
    let mut f: Vec<u64> = low.to_vec();
    f.push(1);
    for deg in 1..=k / 2 {
        let total = p.pow(deg as u32);
        for idx in 0..total {
            let mut g = Vec::with_capacity(deg + 1);
            let mut v = idx;
            for _ in 0..deg {
                g.push(v % p);
                v /= p;
            }
            g.push(1);
            if poly_divides(p, &g, &f) {
                return false;
            }
        }
    }
    true
}

fn poly_divides(p: u64, g: &[u64], f: &[u64]) -> bool {
    let mut rem: Vec<u64> = f.to_vec();
    while rem.len() >= g.len() {
        let lead = *rem.last().unwrap();
        if lead != 0 {
            let shift = rem.len() - g.len();
            for (i, &gc) in g.iter().enumerate() {
                rem[shift + i] = (rem[shift + i] + (p - gc % p) * lead) % p;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&c| c == 0)
}

/// The affine group `{x -> ax + b : a in <g>, b in F_q}` on the q field
/// points, with the multiplier g of multiplicative order d (d | q-1).
pub fn affine_frobenius(q: u64, d: u64) -> Result<PermGroup> {
    let field = FiniteField::new(q)?;
    if d == 0 || (q - 1) % d != 0 {
        return Err(Error::input(format!(
            "affine({q},{d}): {d} does not divide q-1 = {}",
            q - 1
        )));
    }
    if q as usize > DEGREE_CAP {
        return Err(Error::Resource {
            what: "degree",
            limit: DEGREE_CAP as u64,
            actual: q,
        });
    }
    let mut gens = Vec::new();
    // Translations by the additive basis 1, x, x^2, ... (element indices p^j).
    for j in 0..field.k {
        let b = field.p.pow(j);
        let img: Vec<u16> = (0..q).map(|v| field.add(v, b) as u16).collect();
        gens.push(Perm::from_images(img)?);
    }
    if d > 1 {
        let a = field.element_of_order(d)?;
        let img: Vec<u16> = (0..q).map(|v| field.mul(a, v) as u16).collect();
        gens.push(Perm::from_images(img)?);
    }
    Ok(PermGroup::from_generators(q as usize, gens)?.named(format!("Aff({q},{d})")))
}

/// Parses the group file format: first line `degree N`, then one generator
/// per line in cycle notation; `#` comments and blank lines are ignored.
pub fn parse_group_file(text: &str) -> Result<PermGroup> {
    let mut degree: Option<usize> = None;
    let mut gens = Vec::new();
    for raw in text.lines() {
        let line = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        match degree {
            None => {
                let rest = line
                    .strip_prefix("degree")
                    .ok_or_else(|| Error::input("group file must start with `degree N`"))?;
                let n: usize = rest
                    .trim()
                    .parse()
                    .map_err(|_| Error::input(format!("bad degree line: {line:?}")))?;
                if n == 0 {
                    return Err(Error::input("degree must be positive"));
                }
                degree = Some(n);
            }
            Some(n) => {
                if line == "()" {
                    continue;
                }
                gens.push(Perm::parse_cycles(line, n)?);
            }
        }
    }
    let degree = degree.ok_or_else(|| Error::input("empty group file"))?;
    PermGroup::from_generators(degree, gens)
}

pub fn print_group_file(g: &PermGroup) -> String {
    let mut out = format!("degree {}\n", g.degree());
    if g.generators().is_empty() {
        out.push_str("()\n");
    }
    for gen in g.generators() {
        out.push_str(&format!("{gen}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_orders() {
        assert_eq!(cyclic(6).unwrap().order(), 6);
        assert_eq!(dihedral(4).unwrap().order(), 8);
        assert_eq!(dihedral(2).unwrap().order(), 4);
        assert_eq!(symmetric(4).unwrap().order(), 24);
        assert_eq!(alternating(4).unwrap().order(), 12);
        assert_eq!(alternating(5).unwrap().order(), 60);
        assert_eq!(quaternion(8).unwrap().order(), 8);
        assert_eq!(quaternion(16).unwrap().order(), 16);
    }

    #[test]
    fn quaternion_has_unique_involution() {
        for n in [8u64, 16] {
            let q = quaternion(n).unwrap();
            let invols = q
                .elements()
                .unwrap()
                .iter()
                .filter(|e| e.order() == 2)
                .count();
            assert_eq!(invols, 1, "Q{n} must have a unique involution");
        }
    }

    #[test]
    fn direct_product_order() {
        let g = direct_product(&cyclic(2).unwrap(), &cyclic(3).unwrap()).unwrap();
        assert_eq!(g.order(), 6);
    }

    #[test]
    fn wreath_c2_c6() {
        let w = regular_wreath(&cyclic(2).unwrap(), &cyclic(6).unwrap()).unwrap();
        assert_eq!(w.group.order(), 64 * 6);
        assert_eq!(w.group.degree(), 12);
        assert_eq!(w.base.order(), 64);
        assert!(w.base.is_normal());
        // Top embedding is a homomorphism into the wreath.
        let b = w.b_regular.generators()[0].clone();
        let tb = w.embed_top(&b).unwrap();
        assert!(w.group.contains(&tb));
        assert_eq!(tb.order(), b.order());
    }

    #[test]
    fn affine_frobenius_25_6() {
        // Oracle: 25 translations times 6 multipliers, transitive on 25 points.
        let g = affine_frobenius(25, 6).unwrap();
        assert_eq!(g.order(), 150);
        let mut orbit = std::collections::HashSet::new();
        orbit.insert(0usize);
        let mut queue = vec![0usize];
        while let Some(p) = queue.pop() {
            for gen in g.generators() {
                let q = gen.apply(p);
                if orbit.insert(q) {
                    queue.push(q);
                }
            }
        }
        assert_eq!(orbit.len(), 25);
    }

    #[test]
    fn affine_rejects_bad_divisor() {
        assert!(affine_frobenius(25, 7).is_err());
        assert!(affine_frobenius(24, 2).is_err());
    }

    #[test]
    fn field_arithmetic_f25() {
        let f = FiniteField::new(25).unwrap();
        assert_eq!((f.p, f.k), (5, 2));
        let g = f.element_of_order(24).unwrap();
        assert_eq!(f.pow(g, 24), 1);
        assert_ne!(f.pow(g, 12), 1);
        assert_ne!(f.pow(g, 8), 1);
        let six = f.element_of_order(6).unwrap();
        assert_eq!(f.pow(six, 6), 1);
        assert_ne!(f.pow(six, 3), 1);
        assert_ne!(f.pow(six, 2), 1);
    }

    #[test]
    fn group_file_roundtrip() {
        let text = "# sample\ndegree 3\n(1 2)\n(1 2 3)\n";
        let g = parse_group_file(text).unwrap();
        assert_eq!(g.order(), 6);
        let printed = print_group_file(&g);
        let h = parse_group_file(&printed).unwrap();
        assert_eq!(h.order(), 6);
        assert!(parse_group_file("degree 2\n(1 3)\n").is_err());
        assert_eq!(parse_group_file("degree 1\n()\n").unwrap().order(), 1);
    }
}
