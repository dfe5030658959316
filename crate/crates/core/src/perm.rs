//! Permutations of `{0, .., n-1}` acting on the right.
//!
//! `p.then(&q)` is "apply `p`, then `q`", so that `x^(pq) = (x^p)^q`. Text
//! forms are cycle notation `(0 1 2)(3 4)` and image lists `[1,2,0,4,3]`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image list, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for (i, &x) in images.iter().enumerate() {
            if x >= n {
                return Err(Error::input(format!(
                    "image {x} of point {i} out of range for degree {n}"
                )));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::input(format!("point {x} is hit twice")));
            }
        }
        Ok(Permutation {
            images: images.into_iter().map(|x| x as u32).collect(),
        })
    }

    /// Unchecked constructor for internal callers that build bijections by
    /// construction.
    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Self::from_images(images.iter().map(|&x| x as usize).collect()).is_ok());
        Permutation { images }
    }

    /// Builds a permutation of the given degree from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                if a >= degree {
                    return Err(Error::input(format!(
                        "point {a} out of range for degree {degree}"
                    )));
                }
                if std::mem::replace(&mut touched[a], true) {
                    return Err(Error::input(format!("point {a} appears in two cycles")));
                }
                images[a] = cycle[(i + 1) % cycle.len()];
            }
        }
        Self::from_images(images)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.images.iter().map(|&x| x as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in product");
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `self^-1 * other * self`, i.e. `other` conjugated by `self`.
    pub fn conjugate(&self, other: &Permutation) -> Permutation {
        self.inverse().then(other).then(self)
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &x)| other.images[x as usize] == self.images[other.images[i] as usize])
    }

    /// Nontrivial cycles, each starting at its smallest point, ordered by
    /// that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.image(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.image(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.image(x);
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .map(|c| c.len() as u64)
            .fold(1, |acc, l| acc / gcd(acc, l) * l)
    }

    pub fn fixes(&self, point: usize) -> bool {
        self.image(point) == point
    }

    pub fn moved_points(&self) -> impl Iterator<Item = usize> + '_ {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &x)| *i as u32 != x)
            .map(|(i, _)| i)
    }

    pub fn is_fixed_point_free(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 != x)
    }

    pub fn map_tuple(&self, tuple: &[usize]) -> Vec<usize> {
        tuple.iter().map(|&x| self.image(x)).collect()
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    /// Image-list notation, e.g. `[1,2,0]`.
    pub fn to_image_list(&self) -> String {
        let body: Vec<String> = self.images.iter().map(|x| x.to_string()).collect();
        format!("[{}]", body.join(","))
    }

    /// Parses either notation. Cycle notation needs the degree; an image
    /// list must agree with it when one is supplied.
    pub fn parse(text: &str, degree: Option<usize>) -> Result<Self> {
        parse_perm(text, degree, 1)
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn parse_perm(text: &str, degree: Option<usize>, line: usize) -> Result<Permutation> {
    let trimmed = text.trim();
    let lead = text.len() - text.trim_start().len();
    if trimmed.starts_with('[') {
        let Some(inner) = trimmed.strip_prefix('[').and_then(|s| s.strip_suffix(']')) else {
            return Err(Error::parse(line, lead, "unterminated image list"));
        };
        let mut images = Vec::new();
        if !inner.trim().is_empty() {
            let mut offset = lead + 1;
            for tok in inner.split(',') {
                let v = tok.trim().parse::<usize>().map_err(|_| {
                    Error::parse(line, offset, format!("bad integer {:?}", tok.trim()))
                })?;
                images.push(v);
                offset += tok.len() + 1;
            }
        }
        if let Some(d) = degree {
            if d != images.len() {
                return Err(Error::parse(
                    line,
                    lead,
                    format!("image list has length {}, expected {d}", images.len()),
                ));
            }
        }
        return Permutation::from_images(images).map_err(|e| Error::parse(line, lead, e.to_string()));
    }
    let Some(degree) = degree else {
        return Err(Error::parse(line, lead, "cycle notation requires a known degree"));
    };
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut current: Option<Vec<usize>> = None;
    let mut number = String::new();
    let mut number_start = 0;
    for (off, ch) in text.char_indices() {
        match ch {
            '(' => {
                if current.is_some() {
                    return Err(Error::parse(line, off, "nested '('"));
                }
                current = Some(Vec::new());
            }
            ')' | ' ' | ',' | '\t' => {
                if !number.is_empty() {
                    let Some(cur) = current.as_mut() else {
                        return Err(Error::parse(line, number_start, "number outside a cycle"));
                    };
                    cur.push(number.parse().map_err(|_| {
                        Error::parse(line, number_start, "bad integer")
                    })?);
                    number.clear();
                }
                if ch == ')' {
                    match current.take() {
                        Some(c) => cycles.push(c),
                        None => return Err(Error::parse(line, off, "unmatched ')'")),
                    }
                }
            }
            d if d.is_ascii_digit() => {
                if number.is_empty() {
                    number_start = off;
                }
                number.push(d);
            }
            other => {
                return Err(Error::parse(line, off, format!("unexpected character {other:?}")));
            }
        }
    }
    if current.is_some() || !number.is_empty() {
        return Err(Error::parse(line, text.len(), "unterminated cycle"));
    }
    let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
    Permutation::from_cycles(degree, &refs).map_err(|e| Error::parse(line, lead, e.to_string()))
}

/// Parses a generator file: a `degree: n` header followed by one generator
/// per line. Blank lines and `#` comments are ignored.
pub fn parse_generator_file(text: &str) -> Result<(usize, Vec<Permutation>)> {
    let mut degree = None;
    let mut gens = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        if degree.is_none() {
            let t = line.trim();
            let Some(rest) = t.strip_prefix("degree:") else {
                return Err(Error::parse(line_no, 0, "expected 'degree: <n>' header"));
            };
            let d = rest
                .trim()
                .parse::<usize>()
                .map_err(|_| Error::parse(line_no, 7, "bad degree"))?;
            degree = Some(d);
            continue;
        }
        gens.push(parse_perm(line, degree, line_no)?);
    }
    let degree = degree.ok_or_else(|| Error::parse(1, 0, "missing 'degree:' header"))?;
    Ok((degree, gens))
}

/// Writes the generator-file format read by [`parse_generator_file`].
pub fn format_generator_file(degree: usize, gens: &[Permutation]) -> String {
    let mut out = format!("degree: {degree}\n");
    for g in gens {
        out.push_str(&g.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_acts_on_the_right() {
        let a = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        // 0 -a-> 1 -b-> 2
        assert_eq!(a.then(&b).image(0), 2);
        assert_eq!(a.then(&a.inverse()), Permutation::identity(3));
    }

    #[test]
    fn cycle_and_image_notation_agree() {
        let p = Permutation::parse("(0 1 2)(3 4)", Some(5)).unwrap();
        let q = Permutation::parse("[1,2,0,4,3]", None).unwrap();
        assert_eq!(p, q);
        assert_eq!(p.to_string(), "(0 1 2)(3 4)");
        assert_eq!(p.order(), 6);
        assert_eq!(Permutation::identity(4).to_string(), "()");
    }

    #[test]
    fn parse_errors_carry_offsets() {
        match Permutation::parse("(0 1 x)", Some(4)) {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(Permutation::parse("(0 1)(1 2)", Some(3)).is_err());
        assert!(Permutation::parse("[0,0]", None).is_err());
        assert!(Permutation::parse("(0 5)", Some(3)).is_err());
    }

    #[test]
    fn generator_file() {
        let text = "# S_3\ndegree: 3\n(0 1)\n[1,2,0]\n";
        let (d, gens) = parse_generator_file(text).unwrap();
        assert_eq!(d, 3);
        assert_eq!(gens.len(), 2);
        let again = parse_generator_file(&format_generator_file(d, &gens)).unwrap();
        assert_eq!(again.1, gens);
        assert!(matches!(
            parse_generator_file("(0 1)\n"),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn commuting_and_conjugation() {
        let a = Permutation::parse("(0 1)(2 3)", Some(4)).unwrap();
        let b = Permutation::parse("(0 2)(1 3)", Some(4)).unwrap();
        let c = Permutation::parse("(0 1 2)", Some(4)).unwrap();
        assert!(a.commutes_with(&b));
        assert!(!a.commutes_with(&c));
        let conj = c.conjugate(&a);
        assert_eq!(conj.cycles().len(), 2);
        assert_eq!(c.pow(3), Permutation::identity(4));
    }
}
