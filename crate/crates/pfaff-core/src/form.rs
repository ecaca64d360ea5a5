//! Differential forms with polynomial coefficients.
//!
//! A degree-p form stores one polynomial per strictly increasing index
//! tuple, with permutation signs normalized away at construction. That
//! makes the representation unique, so `ω ∧ dω ≡ 0` and friends are
//! structural equality tests on canonical data.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{join_terms, term_text, Poly};
use crate::scalar::CScalar;
use crate::space::{space_mismatch, VarSpace};
use crate::vfield::VField;

/// Strictly increasing tuple of variable indices.
pub type IndexTuple = Vec<u8>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KForm {
    space: VarSpace,
    degree: usize,
    terms: BTreeMap<IndexTuple, Poly>,
}

/// Sign of the permutation sorting `indices`, with `None` on a repeat.
/// Counts inversions; the tuple lengths here are at most the space
/// dimension, so quadratic counting is fine.
fn sort_sign(indices: &mut Vec<u8>) -> Option<i32> {
    let mut sign = 1;
    for i in 1..indices.len() {
        let mut j = i;
        while j > 0 && indices[j - 1] >= indices[j] {
            if indices[j - 1] == indices[j] {
                return None;
            }
            indices.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    Some(sign)
}

impl KForm {
    pub fn zero(space: &VarSpace, degree: usize) -> Self {
        KForm {
            space: space.clone(),
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Degree-0 form: a polynomial in disguise.
    pub fn from_poly(p: Poly) -> Self {
        let mut form = KForm::zero(p.space(), 0);
        if !p.is_zero() {
            form.terms.insert(Vec::new(), p);
        }
        form
    }

    /// The basis covector `d<var>`.
    pub fn basis_covector(space: &VarSpace, idx: usize) -> Self {
        assert!(idx < space.dim(), "variable index out of range");
        let mut form = KForm::zero(space, 1);
        form.terms.insert(vec![idx as u8], Poly::one(space));
        form
    }

    /// A 1-form from one coefficient per variable.
    pub fn one_form(space: &VarSpace, comps: Vec<Poly>) -> Result<Self> {
        if comps.len() != space.dim() {
            return Err(Error::Dimension(format!(
                "{} coefficients for a {}-variable space",
                comps.len(),
                space.dim()
            )));
        }
        let mut form = KForm::zero(space, 1);
        for (i, p) in comps.into_iter().enumerate() {
            if p.space() != space {
                return Err(space_mismatch(space, p.space()));
            }
            form.insert_term(vec![i as u8], p);
        }
        Ok(form)
    }

    /// Adds `coeff` (with sign normalization) at an arbitrary index tuple.
    pub fn add_at(&mut self, mut indices: Vec<u8>, coeff: Poly) {
        debug_assert_eq!(indices.len(), self.degree);
        if coeff.is_zero() {
            return;
        }
        match sort_sign(&mut indices) {
            None => {}
            Some(1) => self.insert_term(indices, coeff),
            Some(_) => self.insert_term(indices, -&coeff),
        }
    }

    fn insert_term(&mut self, indices: IndexTuple, coeff: Poly) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(indices) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn space(&self) -> &VarSpace {
        &self.space
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IndexTuple, &Poly)> {
        self.terms.iter()
    }

    /// Coefficient at a strictly increasing tuple (zero when absent).
    pub fn coeff(&self, indices: &[u8]) -> Poly {
        self.terms
            .get(indices)
            .cloned()
            .unwrap_or_else(|| Poly::zero(&self.space))
    }

    /// The underlying polynomial of a degree-0 form.
    pub fn as_poly(&self) -> Option<Poly> {
        if self.degree != 0 {
            return None;
        }
        Some(self.coeff(&[]))
    }

    /// Coefficients of a 1-form, one per variable.
    pub fn one_form_components(&self) -> Option<Vec<Poly>> {
        if self.degree != 1 {
            return None;
        }
        Some(
            (0..self.space.dim())
                .map(|i| self.coeff(&[i as u8]))
                .collect(),
        )
    }

    pub fn add(&self, rhs: &KForm) -> Result<KForm> {
        if self.space != rhs.space {
            return Err(space_mismatch(&self.space, &rhs.space));
        }
        if self.degree != rhs.degree {
            // A zero form acts as the identity at any degree; the sum
            // keeps the degree of the side that carries terms.
            if rhs.is_zero() {
                return Ok(self.clone());
            }
            if self.is_zero() {
                return Ok(rhs.clone());
            }
            return Err(Error::Dimension(format!(
                "cannot add forms of degree {} and {}",
                self.degree, rhs.degree
            )));
        }
        let mut out = self.clone();
        for (idx, p) in &rhs.terms {
            out.insert_term(idx.clone(), p.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> KForm {
        KForm {
            space: self.space.clone(),
            degree: self.degree,
            terms: self.terms.iter().map(|(i, p)| (i.clone(), -p)).collect(),
        }
    }

    pub fn sub(&self, rhs: &KForm) -> Result<KForm> {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: &CScalar) -> KForm {
        if c.is_zero() {
            return KForm::zero(&self.space, self.degree);
        }
        KForm {
            space: self.space.clone(),
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(i, p)| (i.clone(), p.scale(c)))
                .collect(),
        }
    }

    pub fn scale_poly(&self, f: &Poly) -> Result<KForm> {
        if f.space() != &self.space {
            return Err(space_mismatch(&self.space, f.space()));
        }
        let mut out = KForm::zero(&self.space, self.degree);
        for (idx, p) in &self.terms {
            out.insert_term(idx.clone(), p.checked_mul(f)?);
        }
        Ok(out)
    }

    /// Exterior product. Bilinear and associative; the result is returned
    /// in canonical strictly-increasing-index form, and any product whose
    /// degree exceeds the space dimension is the zero form.
    pub fn wedge(&self, rhs: &KForm) -> Result<KForm> {
        if self.space != rhs.space {
            return Err(space_mismatch(&self.space, &rhs.space));
        }
        let degree = self.degree + rhs.degree;
        let mut out = KForm::zero(&self.space, degree);
        if degree > self.space.dim() {
            return Ok(out);
        }
        for (ia, pa) in &self.terms {
            for (ib, pb) in &rhs.terms {
                let mut merged = Vec::with_capacity(ia.len() + ib.len());
                merged.extend_from_slice(ia);
                merged.extend_from_slice(ib);
                // Repeated index: term vanishes. Checked by sort_sign.
                let product = pa.checked_mul(pb)?;
                out.add_at(merged, product);
            }
        }
        Ok(out)
    }

    /// Exterior derivative. On degree 0 it is the total differential
    /// `Σ (∂f/∂x_i) dx_i`; in general it raises degree by one and
    /// satisfies `d∘d = 0`.
    pub fn dform(&self) -> KForm {
        let mut out = KForm::zero(&self.space, self.degree + 1);
        if self.degree + 1 > self.space.dim() {
            return out;
        }
        for (idx, f) in &self.terms {
            for i in 0..self.space.dim() {
                let g = f.partial(i);
                if g.is_zero() {
                    continue;
                }
                let mut merged = Vec::with_capacity(idx.len() + 1);
                merged.push(i as u8);
                merged.extend_from_slice(idx);
                out.add_at(merged, g);
            }
        }
        out
    }

    /// `ω(X)` for a 1-form: the polynomial `Σ ω_i X_i`.
    pub fn contract(&self, field: &VField) -> Result<Poly> {
        if self.space != *field.space() {
            return Err(space_mismatch(&self.space, field.space()));
        }
        if self.degree != 1 {
            return Err(Error::Dimension(format!(
                "contract expects a 1-form, got degree {}",
                self.degree
            )));
        }
        let mut acc = Poly::zero(&self.space);
        for (idx, p) in &self.terms {
            acc = &acc + &p.checked_mul(field.component(idx[0] as usize))?;
        }
        Ok(acc)
    }

    /// `β(X, Y)` for a 2-form: `Σ_{i<j} β_ij (X_i Y_j − X_j Y_i)`.
    pub fn eval_two_form(&self, x: &VField, y: &VField) -> Result<Poly> {
        if self.space != *x.space() {
            return Err(space_mismatch(&self.space, x.space()));
        }
        if self.space != *y.space() {
            return Err(space_mismatch(&self.space, y.space()));
        }
        if self.degree != 2 {
            return Err(Error::Dimension(format!(
                "eval_two_form expects a 2-form, got degree {}",
                self.degree
            )));
        }
        let mut acc = Poly::zero(&self.space);
        for (idx, p) in &self.terms {
            let (i, j) = (idx[0] as usize, idx[1] as usize);
            let cross = &x.component(i).checked_mul(y.component(j))?
                - &x.component(j).checked_mul(y.component(i))?;
            acc = &acc + &p.checked_mul(&cross)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 0 {
            return write!(f, "{}", self.coeff(&[]));
        }
        if self.is_zero() {
            // Keep the degree visible so the text round-trips: 0*dx^dy
            // re-parses as the zero form of the same degree.
            if self.degree <= self.space.dim() {
                let basis: Vec<String> = (0..self.degree)
                    .map(|i| format!("d{}", self.space.name(i)))
                    .collect();
                return write!(f, "0*{}", basis.join("^"));
            }
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (idx, p) in &self.terms {
            let basis: Vec<String> = idx
                .iter()
                .map(|&i| format!("d{}", self.space.name(i as usize)))
                .collect();
            let basis = basis.join("^");
            if p.num_terms() == 1 {
                let (m, c) = p.terms().next().unwrap();
                let mono = crate::poly::monomial_text(&self.space, m);
                let body = match mono {
                    Some(mt) => format!("{mt}*{basis}"),
                    None => basis,
                };
                parts.push(term_text(c, Some(&body)));
            } else {
                parts.push((false, format!("({p})*{basis}")));
            }
        }
        write!(f, "{}", join_terms(parts))
    }
}
