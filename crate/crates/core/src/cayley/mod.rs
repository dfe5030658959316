//! Finite groups given by tables or as `F_p^n`, their automorphism groups,
//! and Cayley graphs.

mod analysis;
mod search;

pub use analysis::{
    is_cayley, lemma_2_2_check, lemma_5_1_analyze, CayleyWitness, Lemma22Report, Lemma51Case,
    Lemma51Report,
};

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::PermGroup;
use crate::perm::Permutation;

/// Largest order accepted for groups given by a multiplication table.
pub const TABLE_MAX_ORDER: usize = 256;
/// Largest order accepted for `F_p^n`.
pub const VECTOR_MAX_ORDER: usize = 1024;

/// A finite group on elements `0..order`, with `0` the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiniteGroup {
    Table { mul: Vec<Vec<u32>>, inv: Vec<u32> },
    /// `F_p^n`; element index is `sum x_i p^(n-1-i)`.
    ElementaryAbelian { p: u32, n: u32 },
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl FiniteGroup {
    /// Validates a multiplication table: identity `0`, Latin rows and
    /// columns, associativity.
    pub fn from_table(mul: Vec<Vec<u32>>) -> Result<Self> {
        let n = mul.len();
        if n == 0 {
            return Err(Error::input("empty multiplication table"));
        }
        if n > TABLE_MAX_ORDER {
            return Err(Error::capability(format!(
                "table groups are limited to order {TABLE_MAX_ORDER}"
            )));
        }
        for (i, row) in mul.iter().enumerate() {
            if row.len() != n {
                return Err(Error::input(format!("row {i} has length {}", row.len())));
            }
            let mut seen = vec![false; n];
            for &x in row {
                if x as usize >= n || std::mem::replace(&mut seen[x as usize], true) {
                    return Err(Error::input(format!("row {i} is not a permutation")));
                }
            }
        }
        for x in 0..n {
            if mul[0][x] as usize != x || mul[x][0] as usize != x {
                return Err(Error::input("element 0 is not the identity"));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mul[a][b] as usize;
                for c in 0..n {
                    if mul[ab][c] != mul[a][mul[b][c] as usize] {
                        return Err(Error::input(format!("not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        let mut inv = vec![0u32; n];
        for a in 0..n {
            let col = (0..n).find(|&b| mul[a][b] == 0).ok_or_else(|| {
                Error::input(format!("element {a} has no inverse"))
            })?;
            inv[a] = col as u32;
        }
        Ok(FiniteGroup::Table { mul, inv })
    }

    pub fn elementary_abelian(p: u32, n: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::input(format!("{p} is not prime")));
        }
        if n == 0 {
            return Err(Error::input("dimension must be positive"));
        }
        let order = (p as u64).checked_pow(n).unwrap_or(u64::MAX);
        if order > VECTOR_MAX_ORDER as u64 {
            return Err(Error::capability(format!(
                "F_p^n is limited to order {VECTOR_MAX_ORDER}"
            )));
        }
        Ok(FiniteGroup::ElementaryAbelian { p, n })
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        let mul = (0..n)
            .map(|a| (0..n).map(|b| ((a + b) % n) as u32).collect())
            .collect();
        Self::from_table(mul)
    }

    pub fn order(&self) -> usize {
        match self {
            FiniteGroup::Table { mul, .. } => mul.len(),
            FiniteGroup::ElementaryAbelian { p, n } => (*p as usize).pow(*n),
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match self {
            FiniteGroup::Table { mul, .. } => mul[a as usize][b as usize],
            FiniteGroup::ElementaryAbelian { p, n } => {
                let (mut a, mut b) = (a, b);
                let mut out = 0;
                let mut place = 1;
                for _ in 0..*n {
                    out += ((a % p + b % p) % p) * place;
                    a /= p;
                    b /= p;
                    place *= p;
                }
                out
            }
        }
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        match self {
            FiniteGroup::Table { inv, .. } => inv[a as usize],
            FiniteGroup::ElementaryAbelian { p, n } => {
                let mut a = a;
                let mut out = 0;
                let mut place = 1;
                for _ in 0..*n {
                    out += ((p - a % p) % p) * place;
                    a /= p;
                    place *= p;
                }
                out
            }
        }
    }

    pub fn element_order(&self, a: u32) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        match self {
            FiniteGroup::ElementaryAbelian { .. } => true,
            FiniteGroup::Table { mul, .. } => {
                let n = mul.len();
                (0..n).all(|a| (0..n).all(|b| mul[a][b] == mul[b][a]))
            }
        }
    }

    /// Coordinates of an element of `F_p^n`, most significant first.
    pub fn vector(&self, a: u32) -> Option<Vec<u32>> {
        let FiniteGroup::ElementaryAbelian { p, n } = self else {
            return None;
        };
        let mut v = vec![0; *n as usize];
        let mut a = a;
        for slot in v.iter_mut().rev() {
            *slot = a % p;
            a /= p;
        }
        Some(v)
    }

    pub fn from_vector(&self, v: &[u32]) -> Result<u32> {
        let FiniteGroup::ElementaryAbelian { p, n } = self else {
            return Err(Error::input("vector notation needs an F_p^n group"));
        };
        if v.len() != *n as usize || v.iter().any(|&x| x >= *p) {
            return Err(Error::input(format!("{v:?} is not a vector of F_{p}^{n}")));
        }
        Ok(v.iter().fold(0, |acc, &x| acc * p + x))
    }

    /// Subgroup generated by `gens`, as a sorted element list.
    pub fn generated(&self, gens: &[u32]) -> Vec<u32> {
        let n = self.order();
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0u32]);
        let mut out = vec![0u32];
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !std::mem::replace(&mut seen[y as usize], true) {
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// `x -> x h` as a permutation of the elements.
    pub fn right_multiplication(&self, h: u32) -> Permutation {
        let images = (0..self.order() as u32).map(|x| self.mul(x, h)).collect();
        Permutation::from_images_unchecked(images)
    }

    /// Greedy generating sequence: elements of `preferred` first, then the
    /// remaining elements in order, each kept only if it enlarges the
    /// subgroup generated so far.
    pub fn generating_sequence(&self, preferred: &[u32]) -> Vec<u32> {
        let n = self.order();
        let mut seq = Vec::new();
        let mut inside = vec![false; n];
        inside[0] = true;
        let mut size = 1;
        for x in preferred.iter().copied().chain(0..n as u32) {
            if size == n {
                break;
            }
            if !inside[x as usize] {
                seq.push(x);
                for y in self.generated(&seq) {
                    inside[y as usize] = true;
                }
                size = inside.iter().filter(|&&b| b).count();
            }
        }
        seq
    }

    /// The right regular representation `H_R`.
    pub fn right_regular(&self) -> PermGroup {
        let gens = self
            .generating_sequence(&[])
            .into_iter()
            .map(|h| self.right_multiplication(h))
            .collect();
        PermGroup::from_gens_unchecked(self.order(), gens)
    }

    /// `alpha` (as images of the elements) respects multiplication.
    pub fn is_automorphism(&self, alpha: &Permutation) -> bool {
        let n = self.order() as u32;
        alpha.degree() == n as usize
            && alpha.image(0) == 0
            && (0..n).all(|a| {
                (0..n).all(|b| {
                    alpha.image(self.mul(a, b) as usize) as u32
                        == self.mul(alpha.image(a as usize) as u32, alpha.image(b as usize) as u32)
                })
            })
    }

    pub fn describe(&self) -> String {
        match self {
            FiniteGroup::Table { mul, .. } => format!("table group of order {}", mul.len()),
            FiniteGroup::ElementaryAbelian { p, n } => format!("F_{p}^{n}"),
        }
    }
}

/// A Cayley graph datum: group and connection set.
#[derive(Clone, Debug)]
pub struct CayleySpec {
    pub group: FiniteGroup,
    pub connection: Vec<u32>,
}

/// Serializable summary of a [`CayleySpec`].
#[derive(Clone, Debug, Serialize)]
pub struct CayleySummary {
    pub group: String,
    pub order: usize,
    pub connection: Vec<u32>,
    pub connected: bool,
}

impl CayleySpec {
    /// Checks `1 ∉ S` and `S = S^{-1}`; `S` is stored sorted.
    pub fn new(group: FiniteGroup, connection: Vec<u32>) -> Result<Self> {
        let n = group.order() as u32;
        let mut s = connection;
        s.sort_unstable();
        s.dedup();
        if let Some(&x) = s.iter().find(|&&x| x >= n) {
            return Err(Error::input(format!("element {x} outside the group")));
        }
        if s.contains(&0) {
            return Err(Error::input("connection set contains the identity"));
        }
        if let Some(&x) = s.iter().find(|&&x| s.binary_search(&group.inv(x)).is_err()) {
            return Err(Error::input(format!(
                "connection set is not inverse-closed: missing the inverse of {x}"
            )));
        }
        Ok(CayleySpec { group, connection: s })
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.connection.binary_search(&x).is_ok()
    }

    /// `<S> = H`.
    pub fn is_connected(&self) -> bool {
        self.group.generated(&self.connection).len() == self.order()
    }

    /// Edges `{g, s g}`.
    pub fn graph(&self) -> Graph {
        let n = self.order();
        let mut edges = Vec::new();
        for g in 0..n as u32 {
            for &s in &self.connection {
                let h = self.group.mul(s, g);
                if g < h {
                    edges.push((g as usize, h as usize));
                }
            }
        }
        Graph::from_edges(n, edges).expect("in range")
    }

    pub fn summary(&self) -> CayleySummary {
        CayleySummary {
            group: self.group.describe(),
            order: self.order(),
            connection: self.connection.clone(),
            connected: self.is_connected(),
        }
    }

    /// Parses the Cayley spec file format.
    ///
    /// ```text
    /// # comment
    /// group: F_3^2
    /// S: (1,0) (2,0) (0,1) (0,2)
    /// ```
    ///
    /// or `group: table` followed by a `table:` line and one row of
    /// whitespace-separated entries per line. Elements in `S` are indices
    /// or, for `F_p^n`, parenthesised coordinate vectors.
    pub fn parse(text: &str) -> Result<Self> {
        let mut group: Option<FiniteGroup> = None;
        let mut is_table = false;
        let mut rows: Vec<Vec<u32>> = Vec::new();
        let mut in_table = false;
        let mut s_line: Option<(usize, usize, String)> = None;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("");
            if line.trim().is_empty() {
                continue;
            }
            let indent = line.len() - line.trim_start().len();
            let line = line.trim();
            if let Some(rest) = line.strip_prefix("group:") {
                let spec = rest.trim();
                if spec == "table" {
                    is_table = true;
                } else if let Some(body) = spec.strip_prefix("F_") {
                    let (p, n) = body.split_once('^').ok_or_else(|| {
                        Error::parse(line_no, indent, "expected F_p^n")
                    })?;
                    let p: u32 = p.parse().map_err(|_| Error::parse(line_no, indent + 8, "bad p"))?;
                    let n: u32 = n.parse().map_err(|_| Error::parse(line_no, indent + 8, "bad n"))?;
                    group = Some(FiniteGroup::elementary_abelian(p, n)?);
                } else if let Some(n) = spec.strip_prefix("Z_") {
                    let n: usize = n.parse().map_err(|_| Error::parse(line_no, indent + 8, "bad order"))?;
                    group = Some(FiniteGroup::cyclic(n)?);
                } else {
                    return Err(Error::parse(line_no, indent + 6, format!("unknown group `{spec}`")));
                }
                in_table = false;
            } else if line == "table:" {
                in_table = true;
            } else if let Some(rest) = line.strip_prefix("S:") {
                s_line = Some((line_no, indent + 2, rest.to_string()));
                in_table = false;
            } else if in_table {
                let mut row = Vec::new();
                for tok in line.split_whitespace() {
                    let off = indent + tok.as_ptr() as usize - line.as_ptr() as usize;
                    row.push(tok.parse().map_err(|_| {
                        Error::parse(line_no, off, format!("bad table entry `{tok}`"))
                    })?);
                }
                rows.push(row);
            } else {
                return Err(Error::parse(line_no, indent, format!("unexpected line `{line}`")));
            }
        }
        let group = match (group, is_table) {
            (Some(g), false) => g,
            (None, true) => FiniteGroup::from_table(rows)?,
            _ => return Err(Error::parse(1, 0, "exactly one group declaration is required")),
        };
        let (line_no, offset, body) =
            s_line.ok_or_else(|| Error::parse(1, 0, "missing `S:` line"))?;
        let s = parse_elements(&group, &body, line_no, offset)?;
        CayleySpec::new(group, s)
    }

    pub fn format(&self) -> String {
        let mut out = String::new();
        match &self.group {
            FiniteGroup::ElementaryAbelian { p, n } => {
                out.push_str(&format!("group: F_{p}^{n}\nS:"));
                for &s in &self.connection {
                    let v = self.group.vector(s).expect("vector group");
                    let coords: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                    out.push_str(&format!(" ({})", coords.join(",")));
                }
            }
            FiniteGroup::Table { mul, .. } => {
                out.push_str("group: table\ntable:\n");
                for row in mul {
                    let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                    out.push_str(&cells.join(" "));
                    out.push('\n');
                }
                out.push_str("S:");
                for &s in &self.connection {
                    out.push_str(&format!(" {s}"));
                }
            }
        }
        out.push('\n');
        out
    }
}

fn parse_elements(group: &FiniteGroup, body: &str, line: usize, base: usize) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    let bytes = body.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b' ' | b'\t' | b',' => i += 1,
            b'(' => {
                let end = body[i..]
                    .find(')')
                    .ok_or_else(|| Error::parse(line, base + i, "unclosed vector"))?;
                let inner = &body[i + 1..i + end];
                let coords: std::result::Result<Vec<u32>, _> =
                    inner.split(',').map(|t| t.trim().parse()).collect();
                let coords = coords.map_err(|_| Error::parse(line, base + i, "bad coordinate"))?;
                out.push(
                    group
                        .from_vector(&coords)
                        .map_err(|e| Error::parse(line, base + i, e.to_string()))?,
                );
                i += end + 1;
            }
            b'0'..=b'9' => {
                let end = body[i..]
                    .find(|c: char| !c.is_ascii_digit())
                    .map_or(body.len(), |e| i + e);
                out.push(body[i..end].parse().expect("digits"));
                i = end;
            }
            _ => return Err(Error::parse(line, base + i, "unexpected character in S")),
        }
    }
    Ok(out)
}

/// A primitive root modulo the prime `p`.
pub(crate) fn primitive_root(p: u32) -> u32 {
    if p == 2 {
        return 1;
    }
    (2..p)
        .find(|&g| {
            let mut x = 1u64;
            (1..p - 1).all(|_| {
                x = x * g as u64 % p as u64;
                x != 1
            })
        })
        .expect("prime modulus")
}

/// Permutation of `F_p^n` induced by the linear map sending coordinate
/// vector `x` to `f(x)`.
pub(crate) fn linear_map(group: &FiniteGroup, f: impl Fn(&[u32]) -> Vec<u32>) -> Permutation {
    let images = (0..group.order() as u32)
        .map(|a| {
            let v = group.vector(a).expect("vector group");
            group.from_vector(&f(&v)).expect("in range")
        })
        .collect();
    Permutation::from_images_unchecked(images)
}

/// `Aut(H)` as a permutation group on the elements of `H`.
pub fn aut_group(h: &FiniteGroup) -> Result<PermGroup> {
    match h {
        FiniteGroup::ElementaryAbelian { p, n } => {
            let (p, n) = (*p, *n as usize);
            let mut gens = Vec::new();
            let w = primitive_root(p);
            if w != 1 {
                gens.push(linear_map(h, |x| {
                    let mut y = x.to_vec();
                    y[0] = y[0] * w % p;
                    y
                }));
            }
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        gens.push(linear_map(h, |x| {
                            let mut y = x.to_vec();
                            y[i] = (y[i] + y[j]) % p;
                            y
                        }));
                    }
                }
            }
            PermGroup::new(h.order(), gens)
        }
        FiniteGroup::Table { .. } => Ok(search::automorphisms(h, None)),
    }
}

/// `Aut(H, S)`: automorphisms of `H` stabilising `S` setwise.
pub fn aut_h_s(spec: &CayleySpec) -> Result<PermGroup> {
    Ok(search::automorphisms(&spec.group, Some(&spec.connection)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z3sq() -> FiniteGroup {
        FiniteGroup::elementary_abelian(3, 2).unwrap()
    }

    #[test]
    fn vector_indexing() {
        let h = z3sq();
        assert_eq!(h.vector(5), Some(vec![1, 2]));
        assert_eq!(h.from_vector(&[2, 1]).unwrap(), 7);
        assert_eq!(h.mul(5, 7), 0);
        assert_eq!(h.inv(5), 7);
        assert_eq!(h.element_order(5), 3);
    }

    #[test]
    fn table_validation() {
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(FiniteGroup::from_table(vec![vec![1, 0], vec![0, 1]]).is_err());
        let z4 = FiniteGroup::cyclic(4).unwrap();
        assert_eq!(z4.element_order(1), 4);
        assert_eq!(z4.inv(1), 3);
    }

    #[test]
    fn aut_orders() {
        assert_eq!(aut_group(&z3sq()).unwrap().order(), 48);
        let v4 = FiniteGroup::elementary_abelian(2, 2).unwrap();
        assert_eq!(aut_group(&v4).unwrap().order(), 6);
        assert_eq!(aut_group(&FiniteGroup::cyclic(5).unwrap()).unwrap().order(), 4);
        assert_eq!(aut_group(&FiniteGroup::elementary_abelian(5, 1).unwrap()).unwrap().order(), 4);
        // Table version of Z_2^2 agrees with the linear fast path.
        let mul = (0..4u32).map(|a| (0..4u32).map(|b| a ^ b).collect()).collect();
        let table = FiniteGroup::from_table(mul).unwrap();
        assert_eq!(aut_group(&table).unwrap().order(), 6);
        assert_eq!(aut_group(&FiniteGroup::cyclic(12).unwrap()).unwrap().order(), 4);
    }

    #[test]
    fn automorphisms_preserve_the_table() {
        let h = FiniteGroup::cyclic(8).unwrap();
        let aut = aut_group(&h).unwrap();
        for a in aut.elements().unwrap() {
            assert!(h.is_automorphism(&a));
        }
    }

    #[test]
    fn cayley_graphs() {
        let z5 = FiniteGroup::cyclic(5).unwrap();
        let c5 = CayleySpec::new(z5.clone(), vec![1, 4]).unwrap();
        let g = c5.graph();
        assert_eq!(g.edge_count(), 5);
        assert_eq!(g.regular_degree(), Some(2));
        assert!(c5.group.right_regular().is_regular());
        assert!(CayleySpec::new(z5.clone(), vec![1]).is_err());
        assert!(CayleySpec::new(z5, vec![0, 1, 4]).is_err());
        let v4 = FiniteGroup::elementary_abelian(2, 2).unwrap();
        let c4 = CayleySpec::new(v4, vec![1, 2]).unwrap();
        assert_eq!(c4.graph().girth(), Some(4));
        let h = z3sq();
        let s = [[1, 0], [2, 0], [0, 1], [0, 2]].iter().map(|v| h.from_vector(v).unwrap()).collect();
        let spec = CayleySpec::new(h, s).unwrap();
        let g = spec.graph();
        assert_eq!((g.n(), g.regular_degree(), g.girth()), (9, Some(4), Some(3)));
    }

    #[test]
    fn spec_files() {
        let spec = CayleySpec::parse("# H(2,3)\ngroup: F_3^2\nS: (1,0) (2,0) (0,1) (0,2)\n").unwrap();
        assert_eq!(spec.connection, vec![1, 2, 3, 6]);
        let back = CayleySpec::parse(&spec.format()).unwrap();
        assert_eq!(back.connection, spec.connection);
        let t = CayleySpec::parse("group: table\ntable:\n0 1 2\n1 2 0\n2 0 1\nS: 1 2\n").unwrap();
        assert_eq!(t.graph().edge_count(), 3);
        let err = CayleySpec::parse("group: F_3^2\nS: (1,0) x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, offset: 9, .. }), "{err:?}");
        assert!(CayleySpec::parse("group: F_4^2\nS: 1\n").is_err());
    }
}
