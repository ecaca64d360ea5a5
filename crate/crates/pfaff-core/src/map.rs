//! Polynomial maps between variable spaces, and pullback of forms.

use std::fmt;

use crate::error::{Error, Result};
use crate::form::KForm;
use crate::poly::Poly;
use crate::scalar::CScalar;
use crate::space::{space_mismatch, VarSpace};

/// A polynomial map `source → target`: one source-space polynomial per
/// target coordinate. Curves are the special case of a 1-dimensional
/// source (the parameter `t`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMap {
    source: VarSpace,
    target: VarSpace,
    components: Vec<Poly>,
}

impl PolyMap {
    pub fn new(source: &VarSpace, target: &VarSpace, components: Vec<Poly>) -> Result<Self> {
        if components.len() != target.dim() {
            return Err(Error::Dimension(format!(
                "{} components for a {}-dimensional target",
                components.len(),
                target.dim()
            )));
        }
        for c in &components {
            if c.space() != source {
                return Err(space_mismatch(source, c.space()));
            }
        }
        Ok(PolyMap {
            source: source.clone(),
            target: target.clone(),
            components,
        })
    }

    pub fn identity(space: &VarSpace) -> Self {
        PolyMap {
            source: space.clone(),
            target: space.clone(),
            components: (0..space.dim()).map(|i| Poly::var(space, i)).collect(),
        }
    }

    /// The constant map onto `point`.
    pub fn constant(source: &VarSpace, target: &VarSpace, point: &[CScalar]) -> Result<Self> {
        if point.len() != target.dim() {
            return Err(Error::Dimension(format!(
                "{} coordinates for a {}-dimensional target",
                point.len(),
                target.dim()
            )));
        }
        Ok(PolyMap {
            source: source.clone(),
            target: target.clone(),
            components: point
                .iter()
                .map(|c| Poly::constant(source, c.clone()))
                .collect(),
        })
    }

    pub fn source(&self) -> &VarSpace {
        &self.source
    }

    pub fn target(&self) -> &VarSpace {
        &self.target
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn component(&self, idx: usize) -> &Poly {
        &self.components[idx]
    }

    /// `self ∘ inner`: first apply `inner`, then `self`.
    pub fn compose(&self, inner: &PolyMap) -> Result<PolyMap> {
        if self.source != inner.target {
            return Err(space_mismatch(&self.source, &inner.target));
        }
        let comps = self
            .components
            .iter()
            .map(|c| c.substitute(&inner.source, &inner.components))
            .collect::<Result<Vec<_>>>()?;
        PolyMap::new(&inner.source, &self.target, comps)
    }

    pub fn eval(&self, point: &[CScalar]) -> Result<Vec<CScalar>> {
        self.components.iter().map(|c| c.eval(point)).collect()
    }

    /// Pullback of a form along this map. This is the algebra morphism
    /// determined by `φ*(f) = f ∘ φ` on coefficients and
    /// `φ*(dx_k) = d(φ_k)` on covectors; it commutes with wedge and with
    /// the exterior derivative.
    pub fn pullback(&self, form: &KForm) -> Result<KForm> {
        if form.space() != &self.target {
            return Err(space_mismatch(&self.target, form.space()));
        }
        let mut out = KForm::zero(&self.source, form.degree());
        if form.degree() > self.source.dim() {
            return Ok(out);
        }
        // d(φ_k) for each target coordinate, computed once.
        let differentials: Vec<KForm> = self
            .components
            .iter()
            .map(|c| KForm::from_poly(c.clone()).dform())
            .collect();
        for (idx, f) in form.terms() {
            let pulled_coeff = f.substitute(&self.source, &self.components)?;
            if pulled_coeff.is_zero() {
                continue;
            }
            let mut term = KForm::from_poly(pulled_coeff);
            for &k in idx {
                term = term.wedge(&differentials[k as usize])?;
                if term.is_zero() {
                    break;
                }
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }
}

impl fmt::Display for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{} = {}", self.target.name(i), c)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::CScalar;

    fn xyz() -> VarSpace {
        VarSpace::new(["x", "y", "z"]).unwrap()
    }

    fn t_space() -> VarSpace {
        VarSpace::new(["t"]).unwrap()
    }

    fn omega_sym(s: &VarSpace) -> KForm {
        let x = Poly::var(s, 0);
        let y = Poly::var(s, 1);
        KForm::one_form(s, vec![-&y, x, Poly::int(s, -1)]).unwrap()
    }

    #[test]
    fn identity_pullback_is_identity() {
        let s = xyz();
        let omega = omega_sym(&s);
        let id = PolyMap::identity(&s);
        assert_eq!(id.pullback(&omega).unwrap(), omega);
    }

    #[test]
    fn cubic_curve_is_admissible() {
        // (t, t^2, t^3/3) pulls x dy - y dx - dz back to zero.
        let ts = t_space();
        let s = xyz();
        let t = Poly::var(&ts, 0);
        let t2 = t.checked_pow(2).unwrap();
        let t3_over_3 = t.checked_pow(3).unwrap().scale(&CScalar::from_ratio(1, 3));
        let curve = PolyMap::new(&ts, &s, vec![t, t2, t3_over_3]).unwrap();
        let pulled = curve.pullback(&omega_sym(&s)).unwrap();
        assert!(pulled.is_zero());
        assert_eq!(pulled.degree(), 1);
    }

    #[test]
    fn equivalence_map_sends_standard_to_symmetric() {
        // φ(x,y,z) = (2x, y, −xy−z) pulls x dy + dz back to x dy − y dx − dz.
        let s = xyz();
        let x = Poly::var(&s, 0);
        let y = Poly::var(&s, 1);
        let z = Poly::var(&s, 2);
        let phi = PolyMap::new(
            &s,
            &s,
            vec![x.scale(&CScalar::from_int(2)), y.clone(), -&(&(&x * &y) + &z)],
        )
        .unwrap();
        let omega_std =
            KForm::one_form(&s, vec![Poly::zero(&s), x, Poly::one(&s)]).unwrap();
        assert_eq!(phi.pullback(&omega_std).unwrap(), omega_sym(&s));
    }

    #[test]
    fn compose_then_eval() {
        let s = xyz();
        let ts = t_space();
        let t = Poly::var(&ts, 0);
        let c = PolyMap::new(&ts, &s, vec![t.clone(), t.clone(), t]).unwrap();
        let id = PolyMap::identity(&s);
        let both = id.compose(&c).unwrap();
        assert_eq!(both, c);
        let p = both.eval(&[CScalar::from_int(2)]).unwrap();
        assert_eq!(p, vec![CScalar::from_int(2); 3]);
    }
}
