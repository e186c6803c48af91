use std::collections::BTreeMap;

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use super::realize::{basis_map, permutation_trace};
use super::Permutation;
use crate::error::{Error, Result};
use crate::tensor::{ComplexMatrix, SubsystemLayout};

pub type Rational = Ratio<i64>;

pub(crate) fn rational_to_f64(r: Rational) -> f64 {
    r.to_f64().expect("rational fits in f64")
}

/// Symmetrizer (`+`) or antisymmetrizer (`−`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProjectorSign {
    Symmetric,
    Antisymmetric,
}

/// Formal sum `Σ c_π π` in the group algebra of `S_κ`, with exact rational
/// coefficients. Terms with zero coefficient are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalGroupSum {
    degree: usize,
    terms: BTreeMap<Permutation, Rational>,
}

impl FormalGroupSum {
    pub fn zero(degree: usize) -> Self {
        Self {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(degree: usize) -> Self {
        Self::single(Permutation::identity(degree), Rational::from_integer(1))
    }

    pub fn single(pi: Permutation, coefficient: Rational) -> Self {
        let mut s = Self::zero(pi.degree());
        s.add_term(pi, coefficient);
        s
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, pi: &Permutation) -> Rational {
        self.terms.get(pi).copied().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Permutation, &Rational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, pi: Permutation, coefficient: Rational) {
        assert_eq!(pi.degree(), self.degree, "term degree differs from sum degree");
        let updated = self.coefficient(&pi) + coefficient;
        if updated.is_zero() {
            self.terms.remove(&pi);
        } else {
            self.terms.insert(pi, updated);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (p, &c) in &other.terms {
            out.add_term(p.clone(), c);
        }
        out
    }

    pub fn scale(&self, s: Rational) -> Self {
        if s.is_zero() {
            return Self::zero(self.degree);
        }
        Self {
            degree: self.degree,
            terms: self.terms.iter().map(|(p, &c)| (p.clone(), c * s)).collect(),
        }
    }

    /// Convolution under composition: `(Σ a_π π)(Σ b_ν ν) = Σ a_π b_ν (π∘ν)`.
    pub fn multiply(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "multiplying sums over different groups");
        let mut acc: BTreeMap<Permutation, Rational> = BTreeMap::new();
        for (p, &a) in &self.terms {
            for (q, &b) in &other.terms {
                *acc.entry(p.compose(q)).or_insert_with(Rational::zero) += a * b;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Self {
            degree: self.degree,
            terms: acc,
        }
    }

    /// `Σ c_π V(π)` as a dense matrix.
    pub fn realize(&self, layout: &SubsystemLayout) -> Result<ComplexMatrix> {
        if layout.len() != self.degree {
            return Err(Error::Layout(format!(
                "sum over S{} realized on {} subsystems",
                self.degree,
                layout.len()
            )));
        }
        let n = layout.total_dim();
        let mut m = ComplexMatrix::zeros(n, n);
        for (p, &c) in &self.terms {
            let c = Complex64::new(rational_to_f64(c), 0.0);
            for (j, i) in basis_map(p, layout)?.into_iter().enumerate() {
                m[(i, j)] += c;
            }
        }
        Ok(m)
    }

    /// Trace of the realization, computed from cycle counts.
    pub fn trace(&self, layout: &SubsystemLayout) -> Result<f64> {
        let mut t = 0.0;
        for (p, &c) in &self.terms {
            t += rational_to_f64(c) * permutation_trace(p, layout)?;
        }
        Ok(t)
    }
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// `P^±_X = (1/|X|!) Σ_{π∈S_X} sgn(π)^{[−]} π`, embedded in `S_degree`.
/// `subset` holds 0-based positions.
pub fn symmetric_projector(degree: usize, subset: &[usize], sign: ProjectorSign) -> Result<FormalGroupSum> {
    if subset.is_empty() {
        return Err(Error::Domain("projector needs a nonempty subset".into()));
    }
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != subset.len() || sorted.iter().any(|&p| p >= degree) {
        return Err(Error::Domain(format!(
            "subset {subset:?} must be distinct positions below {degree}"
        )));
    }
    let weight = Rational::new(1, factorial(sorted.len()));
    let mut sum = FormalGroupSum::zero(degree);
    for local in Permutation::all(sorted.len()) {
        let c = match sign {
            ProjectorSign::Symmetric => weight,
            ProjectorSign::Antisymmetric => weight * local.sign(),
        };
        sum.add_term(local.embed(&sorted, degree)?, c);
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn p(s: &str, k: usize) -> Permutation {
        Permutation::parse_cycles(s, k).unwrap()
    }

    #[test]
    fn pair_projector_matches_half_identity_plus_swap() {
        let s = symmetric_projector(4, &[0, 2], ProjectorSign::Symmetric).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.coefficient(&Permutation::identity(4)), r(1, 2));
        assert_eq!(s.coefficient(&p("(13)", 4)), r(1, 2));
        let a = symmetric_projector(4, &[0, 2], ProjectorSign::Antisymmetric).unwrap();
        assert_eq!(a.coefficient(&p("(13)", 4)), r(-1, 2));
    }

    #[test]
    fn singleton_projector_is_identity() {
        let s = symmetric_projector(3, &[0], ProjectorSign::Symmetric).unwrap();
        assert_eq!(s, FormalGroupSum::identity(3));
    }

    #[test]
    fn sym_times_antisym_vanishes() {
        let s = symmetric_projector(4, &[0, 2], ProjectorSign::Symmetric).unwrap();
        let a = symmetric_projector(4, &[0, 2], ProjectorSign::Antisymmetric).unwrap();
        assert!(s.multiply(&a).is_zero());
        assert_eq!(s.multiply(&s), s);
    }

    #[test]
    fn disjoint_pair_product_has_four_quarter_terms() {
        let s13 = symmetric_projector(4, &[0, 2], ProjectorSign::Symmetric).unwrap();
        let s24 = symmetric_projector(4, &[1, 3], ProjectorSign::Symmetric).unwrap();
        let prod = s13.multiply(&s24);
        assert_eq!(prod.len(), 4);
        assert!(prod.iter().all(|(_, &c)| c == r(1, 4)));
    }

    #[test]
    fn four_point_antisymmetrizer_vanishes_on_qubits() {
        let a = symmetric_projector(8, &[0, 2, 4, 6], ProjectorSign::Antisymmetric).unwrap();
        assert_eq!(a.len(), 24);
        assert_eq!(a.iter().filter(|(_, c)| **c < Rational::zero()).count(), 12);
        // Tr on (ℂ²)^⊗8: antisymmetric part of four qubits is empty.
        let layout = SubsystemLayout::new(vec![2; 8]).unwrap();
        assert!(a.trace(&layout).unwrap().abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_subsets() {
        assert!(symmetric_projector(4, &[], ProjectorSign::Symmetric).is_err());
        assert!(symmetric_projector(4, &[0, 0], ProjectorSign::Symmetric).is_err());
        assert!(symmetric_projector(4, &[4], ProjectorSign::Symmetric).is_err());
    }
}
