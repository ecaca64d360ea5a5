//! Integrability classification of hyperplane distributions given by a
//! 1-form: the Frobenius 3-form, the minimal class `k` with
//! `ω ∧ (dω)^k ≡ 0`, and the bracket criterion tied to Cartan's formula.

use crate::error::{Error, Result};
use crate::form::KForm;
use crate::poly::Poly;
use crate::vfield::VField;

/// Outcome of the class computation. `k` is the minimal natural number
/// with `ω ∧ (dω)^k ≡ 0` (so `k = 1` is the integrable case), and
/// `witness = ω ∧ (dω)^{k−1}` is the last nonzero form in the chain.
#[derive(Clone, Debug)]
pub struct ContactClassReport {
    pub k: u32,
    pub witness: KForm,
    pub integrable: bool,
}

fn check_one_form(omega: &KForm) -> Result<()> {
    if omega.degree() != 1 {
        return Err(Error::Dimension(format!(
            "expected a 1-form, got degree {}",
            omega.degree()
        )));
    }
    if omega.is_zero() {
        return Err(Error::DegenerateForm(
            "the zero 1-form defines no hyperplane distribution".into(),
        ));
    }
    Ok(())
}

/// `ω ∧ dω`, the obstruction whose identical vanishing is the Frobenius
/// integrability criterion. In 3 variables the result has a single
/// coefficient slot, the tuple (1,2,3).
pub fn frobenius_form(omega: &KForm) -> Result<KForm> {
    check_one_form(omega)?;
    omega.wedge(&omega.dform())
}

/// Iterates exact wedges `ω ∧ (dω)^k` for k = 1, 2, … until the zero form
/// appears. Terminates because the degree `2k+1` eventually exceeds the
/// space dimension, which bounds `k ≤ floor((n+1)/2)`.
pub fn contact_class(omega: &KForm) -> Result<ContactClassReport> {
    check_one_form(omega)?;
    let d_omega = omega.dform();
    let mut prev = omega.clone();
    let mut k = 1u32;
    loop {
        let next = prev.wedge(&d_omega)?;
        if next.is_zero() {
            return Ok(ContactClassReport {
                k,
                witness: prev,
                integrable: k == 1,
            });
        }
        prev = next;
        k += 1;
    }
}

/// The four-term combination that Cartan's formula forces to vanish:
/// `dω(X,Y) − X ω(Y) + Y ω(X) + ω([X,Y])`. Evaluating it is a
/// machine-checkable identity; any nonzero output signals a bug in the
/// exterior-calculus layer, never in the inputs.
pub fn cartan_residual(omega: &KForm, x: &VField, y: &VField) -> Result<Poly> {
    check_one_form(omega)?;
    let d_omega = omega.dform();
    let pairing = d_omega.eval_two_form(x, y)?;
    let x_of_wy = x.lie_derivative(&omega.contract(y)?)?;
    let y_of_wx = y.lie_derivative(&omega.contract(x)?)?;
    let bracket_term = omega.contract(&x.lie_bracket(y)?)?;
    Ok(&(&(&pairing - &x_of_wy) + &y_of_wx) + &bracket_term)
}

/// `ω([X, Y])` for fields tangent to the distribution. A nonzero value at
/// a point certifies that bracket motion leaves the hyperplane there; for
/// an integrable distribution it vanishes identically.
pub fn bracket_defect(omega: &KForm, x: &VField, y: &VField) -> Result<Poly> {
    check_one_form(omega)?;
    let wx = omega.contract(x)?;
    if !wx.is_zero() {
        return Err(Error::TangencyViolation {
            field: "X",
            value: wx.to_string(),
        });
    }
    let wy = omega.contract(y)?;
    if !wy.is_zero() {
        return Err(Error::TangencyViolation {
            field: "Y",
            value: wy.to_string(),
        });
    }
    omega.contract(&x.lie_bracket(y)?)
}
