//! Sparse multivariate polynomials over Gaussian rationals.
//!
//! Canonical form: a term map holding no zero coefficients, keyed by
//! exponent vectors ordered graded-lexicographically in the variable
//! space's declared order. Two polynomials over the same space are equal
//! iff their term maps are equal, which makes every `== 0` test in the
//! integrability layer a structural check.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::CScalar;
use crate::space::{space_mismatch, VarSpace};

/// Exponent vector, one entry per variable of the space.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn constant(dim: usize) -> Self {
        Monomial(vec![0; dim])
    }

    pub fn var(dim: usize, idx: usize) -> Self {
        let mut e = vec![0; dim];
        e[idx] = 1;
        Monomial(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

/// Graded lexicographic: total degree first, then lex on the exponent
/// vector in declared variable order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    space: VarSpace,
    terms: BTreeMap<Monomial, CScalar>,
}

impl Poly {
    pub fn zero(space: &VarSpace) -> Self {
        Poly {
            space: space.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(space: &VarSpace, c: CScalar) -> Self {
        let mut p = Poly::zero(space);
        if !c.is_zero() {
            p.terms.insert(Monomial::constant(space.dim()), c);
        }
        p
    }

    pub fn one(space: &VarSpace) -> Self {
        Poly::constant(space, CScalar::one())
    }

    pub fn int(space: &VarSpace, n: i64) -> Self {
        Poly::constant(space, CScalar::from_int(n))
    }

    /// The coordinate polynomial `x_idx`. Panics on an out-of-range index.
    pub fn var(space: &VarSpace, idx: usize) -> Self {
        assert!(idx < space.dim(), "variable index out of range");
        let mut p = Poly::zero(space);
        p.terms
            .insert(Monomial::var(space.dim(), idx), CScalar::one());
        p
    }

    pub fn from_terms<I>(space: &VarSpace, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, CScalar)>,
    {
        let mut p = Poly::zero(space);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: CScalar) {
        debug_assert_eq!(m.0.len(), self.space.dim());
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
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

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &CScalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(|m| m.total_degree() == 0)
    }

    /// The constant coefficient (zero when absent).
    pub fn constant_term(&self) -> CScalar {
        self.terms
            .get(&Monomial::constant(self.space.dim()))
            .cloned()
            .unwrap_or_else(CScalar::zero)
    }

    /// As a scalar, when the polynomial is constant.
    pub fn as_scalar(&self) -> Option<CScalar> {
        if self.is_constant() {
            Some(self.constant_term())
        } else {
            None
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(Monomial::total_degree)
            .max()
            .unwrap_or(0)
    }

    /// Variable indices that occur with a nonzero exponent.
    pub fn support(&self) -> Vec<usize> {
        let mut used = vec![false; self.space.dim()];
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    used[i] = true;
                }
            }
        }
        used.iter()
            .enumerate()
            .filter_map(|(i, &u)| u.then_some(i))
            .collect()
    }

    pub fn scale(&self, c: &CScalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.space);
        }
        Poly {
            space: self.space.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    /// Product with the space's degree cap enforced; the cap turns runaway
    /// wedge chains into a reportable resource error instead of an
    /// ever-growing computation.
    pub fn checked_mul(&self, rhs: &Poly) -> Result<Poly> {
        if self.space != rhs.space {
            return Err(space_mismatch(&self.space, &rhs.space));
        }
        if self.is_zero() || rhs.is_zero() {
            return Ok(Poly::zero(&self.space));
        }
        let attempted = self.total_degree() + rhs.total_degree();
        let cap = self.space.degree_cap();
        if attempted > cap {
            return Err(Error::DegreeCap { cap, attempted });
        }
        let mut out = Poly::zero(&self.space);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn checked_pow(&self, exp: u32) -> Result<Poly> {
        let mut out = Poly::one(&self.space);
        for _ in 0..exp {
            out = out.checked_mul(self)?;
        }
        Ok(out)
    }

    /// Partial derivative with respect to variable `idx`.
    pub fn partial(&self, idx: usize) -> Poly {
        assert!(idx < self.space.dim(), "variable index out of range");
        let mut out = Poly::zero(&self.space);
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut lower = m.clone();
            lower.0[idx] = e - 1;
            out.add_term(lower, c * &CScalar::from_int(e as i64));
        }
        out
    }

    /// Exact evaluation at a point.
    pub fn eval(&self, point: &[CScalar]) -> Result<CScalar> {
        if point.len() != self.space.dim() {
            return Err(Error::Dimension(format!(
                "point has {} coordinates, space has {}",
                point.len(),
                self.space.dim()
            )));
        }
        let mut acc = CScalar::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = &term * &point[i].pow(e);
                }
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Substitutes `comps[i]` for variable `i`; the result lives in
    /// `target`, the common space of the components.
    pub fn substitute(&self, target: &VarSpace, comps: &[Poly]) -> Result<Poly> {
        if comps.len() != self.space.dim() {
            return Err(Error::Dimension(format!(
                "{} substitution components for {} variables",
                comps.len(),
                self.space.dim()
            )));
        }
        for c in comps {
            if c.space() != target {
                return Err(space_mismatch(target, c.space()));
            }
        }
        let mut acc = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term.checked_mul(&comps[i].checked_pow(e)?)?;
                }
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Re-bases the polynomial onto `target`, sending variable `i` of the
    /// current space to variable `mapping[i]` of the target. Variables that
    /// map to `None` must not occur.
    pub fn rename_into(&self, target: &VarSpace, mapping: &[Option<usize>]) -> Result<Poly> {
        assert_eq!(mapping.len(), self.space.dim());
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; target.dim()];
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match mapping[i] {
                    Some(j) => exps[j] += e,
                    None => {
                        return Err(Error::InvalidGeneratingFunction {
                            variable: self.space.name(i).to_string(),
                        })
                    }
                }
            }
            out.add_term(Monomial(exps), c.clone());
        }
        Ok(out)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.space, rhs.space, "polynomial spaces differ");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            space: self.space.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c))
                .collect(),
        }
    }
}

/// Unchecked product for small internal arithmetic; panics if the space's
/// degree cap is exceeded. Fallible paths use [`Poly::checked_mul`].
impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("polynomial degree cap exceeded")
    }
}

/// How a scalar renders inside a term, so sums can fold signs into the
/// `+`/`-` separators.
pub(crate) enum CoeffText {
    /// Sign extracted; body may be empty (coefficient 1 on a monomial).
    Signed { negative: bool, body: String },
    /// Mixed complex value; must be parenthesized next to a monomial.
    Complex(String),
}

pub(crate) fn coeff_text(c: &CScalar) -> CoeffText {
    use num::{Signed, Zero};
    if c.im().is_zero() {
        let neg = c.re().is_negative();
        let abs = if neg { -c.re().clone() } else { c.re().clone() };
        CoeffText::Signed {
            negative: neg,
            body: abs.to_string(),
        }
    } else if c.re().is_zero() {
        let neg = c.im().is_negative();
        let abs = if neg { -c.im().clone() } else { c.im().clone() };
        let body = if num::One::is_one(&abs) {
            "i".to_string()
        } else {
            format!("{abs}i")
        };
        CoeffText::Signed {
            negative: neg,
            body,
        }
    } else {
        CoeffText::Complex(c.to_string())
    }
}

pub(crate) fn monomial_text(space: &VarSpace, m: &Monomial) -> Option<String> {
    if m.total_degree() == 0 {
        return None;
    }
    let parts: Vec<String> = m
        .0
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                space.name(i).to_string()
            } else {
                format!("{}^{}", space.name(i), e)
            }
        })
        .collect();
    Some(parts.join("*"))
}

/// Renders one `coefficient * basis` term. `basis` is the monomial and/or
/// wedge text; `None` for a bare constant. Returns the join sign and body.
pub(crate) fn term_text(c: &CScalar, basis: Option<&str>) -> (bool, String) {
    match (coeff_text(c), basis) {
        (CoeffText::Signed { negative, body }, None) => (negative, body),
        (CoeffText::Signed { negative, body }, Some(b)) => {
            if body == "1" {
                (negative, b.to_string())
            } else {
                (negative, format!("{body}*{b}"))
            }
        }
        (CoeffText::Complex(s), None) => (false, format!("({s})")),
        (CoeffText::Complex(s), Some(b)) => (false, format!("({s})*{b}")),
    }
}

pub(crate) fn join_terms(parts: Vec<(bool, String)>) -> String {
    let mut out = String::new();
    for (k, (neg, body)) in parts.into_iter().enumerate() {
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Leading (highest grlex) term first.
        let parts: Vec<(bool, String)> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| term_text(c, monomial_text(&self.space, m).as_deref()))
            .collect();
        write!(f, "{}", join_terms(parts))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyz() -> VarSpace {
        VarSpace::new(["x", "y", "z"]).unwrap()
    }

    #[test]
    fn canonical_form_drops_zeros() {
        let s = xyz();
        let x = Poly::var(&s, 0);
        let diff = &x - &x;
        assert!(diff.is_zero());
        assert_eq!(diff.num_terms(), 0);
    }

    #[test]
    fn grlex_ordering() {
        let s = xyz();
        // x^2 > x*y > y^2? grlex at equal degree falls back to lex on
        // exponent vectors: (2,0,0) > (1,1,0) > (0,2,0).
        let x = Poly::var(&s, 0);
        let y = Poly::var(&s, 1);
        let p = &(&(&x * &x) + &(&x * &y)) + &(&y * &y);
        let text = p.to_string();
        assert_eq!(text, "x^2 + x*y + y^2");
    }

    #[test]
    fn display_examples() {
        let s = xyz();
        let x = Poly::var(&s, 0);
        let y = Poly::var(&s, 1);
        let p = &(&x.scale(&CScalar::from_int(3)) - &y) + &Poly::int(&s, -2);
        assert_eq!(p.to_string(), "3*x - y - 2");
        let q = x.scale(&CScalar::new(
            num::BigRational::from_integer(1.into()),
            num::BigRational::from_integer(2.into()),
        ));
        assert_eq!(q.to_string(), "(1 + 2i)*x");
        let r = y.scale(&CScalar::i());
        assert_eq!(r.to_string(), "i*y");
    }

    #[test]
    fn partial_derivative() {
        let s = xyz();
        let x = Poly::var(&s, 0);
        let p = x.checked_pow(2).unwrap();
        assert_eq!(p.partial(0).to_string(), "2*x");
        assert!(p.partial(1).is_zero());
    }

    #[test]
    fn lie_derivative_weighting_example() {
        // x*d/dx applied to x*y gives x*y back.
        let s = xyz();
        let x = Poly::var(&s, 0);
        let y = Poly::var(&s, 1);
        let f = &x * &y;
        let lx = &x * &f.partial(0);
        assert_eq!(lx, f);
    }

    #[test]
    fn degree_cap_triggers() {
        let s = VarSpace::with_degree_cap(["x"], 8).unwrap();
        let x = Poly::var(&s, 0);
        let p = x.checked_pow(8).unwrap();
        let err = p.checked_mul(&x).unwrap_err();
        assert!(matches!(err, Error::DegreeCap { cap: 8, attempted: 9 }));
    }

    #[test]
    fn substitute_composes() {
        // f(x, y) = x^2 + y, with x -> t, y -> t^2 gives 2 t^2.
        let s = VarSpace::new(["x", "y"]).unwrap();
        let t_space = VarSpace::new(["t"]).unwrap();
        let f = &Poly::var(&s, 0).checked_pow(2).unwrap() + &Poly::var(&s, 1);
        let t = Poly::var(&t_space, 0);
        let t2 = t.checked_pow(2).unwrap();
        let g = f.substitute(&t_space, &[t, t2]).unwrap();
        assert_eq!(g.to_string(), "2*t^2");
    }

    #[test]
    fn eval_exact() {
        let s = xyz();
        let p = &(&Poly::var(&s, 0) * &Poly::var(&s, 1)) - &Poly::int(&s, 1);
        let v = p
            .eval(&[
                CScalar::from_ratio(1, 2),
                CScalar::from_int(4),
                CScalar::zero(),
            ])
            .unwrap();
        assert_eq!(v, CScalar::from_int(1));
    }
}
