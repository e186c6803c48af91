use std::fmt;

use crate::error::{Error, Result};

/// Element of the symmetric group on `{0, …, κ−1}`, stored as its image list
/// (`image[i] = π(i)`). The degree κ is always explicit.
///
/// Cycle notation for display and parsing is 1-based: `(13)(57)` swaps
/// positions 0↔2 and 4↔6.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self {
            image: (0..degree).collect(),
        }
    }

    pub fn from_image(image: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; image.len()];
        for &p in &image {
            if p >= image.len() || seen[p] {
                return Err(Error::Permutation(format!("{image:?} is not a bijection")));
            }
            seen[p] = true;
        }
        Ok(Self { image })
    }

    /// Builds from 0-based cycles; unlisted points are fixed.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut image: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a >= degree || used[a] {
                    return Err(Error::Permutation(format!(
                        "point {} repeated or out of range in cycles {cycles:?}",
                        a + 1
                    )));
                }
                used[a] = true;
                image[a] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Self { image })
    }

    pub fn transposition(degree: usize, a: usize, b: usize) -> Result<Self> {
        if a == b {
            return Err(Error::Permutation("transposition needs two distinct points".into()));
        }
        Self::from_cycles(degree, &[&[a, b]])
    }

    /// Parses 1-based cycle notation such as `"(13)(57)"` or `"(1 10)(2 3)"`.
    /// Points are single digits unless a cycle contains spaces or commas.
    /// `"()"`, `"id"` and the empty string denote the identity.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() || text == "id" || text == "()" {
            return Ok(Self::identity(degree));
        }
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Permutation(format!("expected '(' in {text:?}")))?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::Permutation(format!("unclosed cycle in {text:?}")))?;
            let body = &open[..close];
            let points: Vec<&str> = if body.contains([' ', ',']) {
                body.split([' ', ',']).filter(|s| !s.is_empty()).collect()
            } else {
                body.char_indices().map(|(i, c)| &body[i..i + c.len_utf8()]).collect()
            };
            let mut cycle = Vec::with_capacity(points.len());
            for p in points {
                let v: usize = p
                    .parse()
                    .map_err(|_| Error::Permutation(format!("bad point {p:?} in {text:?}")))?;
                if v == 0 || v > degree {
                    return Err(Error::Permutation(format!(
                        "point {v} outside 1..={degree} in {text:?}"
                    )));
                }
                cycle.push(v - 1);
            }
            cycles.push(cycle);
            rest = open[close + 1..].trim_start();
        }
        let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
        Self::from_cycles(degree, &refs)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// `self ∘ other`, i.e. `other` is applied first.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "composing permutations of different degree");
        Self {
            image: other.image.iter().map(|&i| self.image[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.degree()];
        for (i, &p) in self.image.iter().enumerate() {
            inv[p] = i;
        }
        Self { image: inv }
    }

    /// `g ∘ self ∘ g⁻¹`.
    pub fn conjugate_by(&self, g: &Self) -> Self {
        g.compose(self).compose(&g.inverse())
    }

    /// All cycles including fixed points, each rotated to start at its
    /// smallest element and sorted by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut j = self.image[start];
            while j != start {
                seen[j] = true;
                cycle.push(j);
                j = self.image[j];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    /// Cycle lengths in non-increasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    /// `(−1)^(κ − #cycles)`.
    pub fn sign(&self) -> i64 {
        if (self.degree() - self.cycle_count()) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Lifts a permutation of `positions.len()` points onto `positions`
    /// inside a ground set of size `degree`, fixing everything else.
    pub fn embed(&self, positions: &[usize], degree: usize) -> Result<Self> {
        if positions.len() != self.degree() {
            return Err(Error::Permutation(format!(
                "cannot embed degree-{} permutation onto {} positions",
                self.degree(),
                positions.len()
            )));
        }
        let mut image: Vec<usize> = (0..degree).collect();
        for (i, &p) in positions.iter().enumerate() {
            if p >= degree {
                return Err(Error::Permutation(format!("position {p} outside degree {degree}")));
            }
            image[p] = positions[self.image[i]];
        }
        Self::from_image(image)
    }

    /// Every permutation of `degree` points, in lexicographic image order.
    pub fn all(degree: usize) -> Vec<Self> {
        use itertools::Itertools;
        (0..degree)
            .permutations(degree)
            .map(|image| Self { image })
            .collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.degree() > 9;
        let mut any = false;
        for cycle in self.cycles().into_iter().filter(|c| c.len() > 1) {
            any = true;
            let pts: Vec<String> = cycle.iter().map(|p| (p + 1).to_string()).collect();
            write!(f, "({})", pts.join(if wide { " " } else { "" }))?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}∈S{}", self.degree())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let p = Permutation::parse_cycles("(13)(57)", 8).unwrap();
        assert_eq!(p.image(), &[2, 1, 0, 3, 6, 5, 4, 7]);
        assert_eq!(p.to_string(), "(13)(57)");
        assert_eq!(Permutation::parse_cycles("()", 3).unwrap(), Permutation::identity(3));
        let wide = Permutation::parse_cycles("(1 10)", 10).unwrap();
        assert_eq!(wide.apply(0), 9);
        assert_eq!(wide.to_string(), "(1 10)");
    }

    #[test]
    fn parse_errors() {
        assert!(Permutation::parse_cycles("(19)", 8).is_err());
        assert!(Permutation::parse_cycles("(11)", 8).is_err());
        assert!(Permutation::parse_cycles("(12", 8).is_err());
        assert!(Permutation::parse_cycles("12", 8).is_err());
    }

    #[test]
    fn cycles_are_canonical() {
        let p = Permutation::from_image(vec![2, 0, 1, 3, 5, 4]).unwrap();
        assert_eq!(p.cycles(), vec![vec![0, 2, 1], vec![3], vec![4, 5]]);
        assert_eq!(p.cycle_type(), vec![3, 2, 1]);
        assert_eq!(p.sign(), -1);
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Permutation::from_image(vec![0, 0]).is_err());
        assert!(Permutation::from_image(vec![0, 2]).is_err());
    }

    #[test]
    fn compose_applies_right_first() {
        let a = Permutation::parse_cycles("(12)", 3).unwrap();
        let b = Permutation::parse_cycles("(23)", 3).unwrap();
        // (a∘b)(1) = a(b(1)) = a(1) = 2 in 1-based terms.
        assert_eq!(a.compose(&b).apply(0), 1);
        assert_eq!(a.compose(&b).to_string(), "(123)");
    }

    #[test]
    fn embed_onto_odd_positions() {
        let c = Permutation::parse_cycles("(12)", 2).unwrap();
        let e = c.embed(&[0, 2], 4).unwrap();
        assert_eq!(e.to_string(), "(13)");
        assert_eq!(Permutation::all(4).len(), 24);
    }
}
