//! Polynomial vector fields and Lie operations.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{join_terms, term_text, Poly};
use crate::space::{space_mismatch, VarSpace};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VField {
    space: VarSpace,
    components: Vec<Poly>,
}

impl VField {
    pub fn new(space: &VarSpace, components: Vec<Poly>) -> Result<Self> {
        if components.len() != space.dim() {
            return Err(Error::Dimension(format!(
                "{} components for a {}-variable space",
                components.len(),
                space.dim()
            )));
        }
        for c in &components {
            if c.space() != space {
                return Err(space_mismatch(space, c.space()));
            }
        }
        Ok(VField {
            space: space.clone(),
            components,
        })
    }

    /// The coordinate field `∂/∂x_idx`.
    pub fn basis(space: &VarSpace, idx: usize) -> Self {
        let comps = (0..space.dim())
            .map(|i| {
                if i == idx {
                    Poly::one(space)
                } else {
                    Poly::zero(space)
                }
            })
            .collect();
        VField {
            space: space.clone(),
            components: comps,
        }
    }

    pub fn zero(space: &VarSpace) -> Self {
        VField {
            space: space.clone(),
            components: vec![Poly::zero(space); space.dim()],
        }
    }

    pub fn space(&self) -> &VarSpace {
        &self.space
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn component(&self, idx: usize) -> &Poly {
        &self.components[idx]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    pub fn neg(&self) -> VField {
        VField {
            space: self.space.clone(),
            components: self.components.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, rhs: &VField) -> Result<VField> {
        if self.space != rhs.space {
            return Err(space_mismatch(&self.space, &rhs.space));
        }
        Ok(VField {
            space: self.space.clone(),
            components: self
                .components
                .iter()
                .zip(&rhs.components)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// The Lie derivative `X f = Σ X_i ∂f/∂x_i`.
    pub fn lie_derivative(&self, f: &Poly) -> Result<Poly> {
        if f.space() != &self.space {
            return Err(space_mismatch(&self.space, f.space()));
        }
        let mut acc = Poly::zero(&self.space);
        for (i, xi) in self.components.iter().enumerate() {
            acc = &acc + &xi.checked_mul(&f.partial(i))?;
        }
        Ok(acc)
    }

    /// The commutator `[X, Y]`, componentwise `(X·∇)Y − (Y·∇)X`.
    pub fn lie_bracket(&self, other: &VField) -> Result<VField> {
        if self.space != other.space {
            return Err(space_mismatch(&self.space, &other.space));
        }
        let comps = other
            .components
            .iter()
            .zip(&self.components)
            .map(|(yk, xk)| Ok(&self.lie_derivative(yk)? - &other.lie_derivative(xk)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(VField {
            space: self.space.clone(),
            components: comps,
        })
    }
}

impl fmt::Display for VField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (i, p) in self.components.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let basis = format!("d/d{}", self.space.name(i));
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
