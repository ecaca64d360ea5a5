//! Synthesis of admissible holomorphic curves and broken lines for the two
//! standard contact forms on 3-space, plus Legendrian charts from
//! generating functions.
//!
//! Everything here is exact: a `Curve` cannot be constructed unless the
//! pullback of its form along its map is the zero polynomial, and a `Plan`
//! cannot be constructed unless consecutive links chain endpoint-to-
//! endpoint exactly.

use std::fmt;

use crate::error::{Error, Result};
use crate::form::KForm;
use crate::map::PolyMap;
use crate::poly::Poly;
use crate::scalar::CScalar;
use crate::space::VarSpace;

pub type Point = Vec<CScalar>;

/// The 3-space (x, y, z) both standard forms live on.
pub fn contact_space() -> VarSpace {
    VarSpace::new(["x", "y", "z"]).expect("static space")
}

/// The (2n+1)-space carrying `Σ x_i dy_i + dz`. For n = 1 the coordinates
/// are (x, y, z); for larger n they are (x1, y1, …, xn, yn, z).
pub fn ambient_space(n: usize) -> VarSpace {
    assert!(n >= 1, "ambient dimension parameter must be positive");
    let mut names = Vec::with_capacity(2 * n + 1);
    if n == 1 {
        names.push("x".to_string());
        names.push("y".to_string());
    } else {
        for i in 1..=n {
            names.push(format!("x{i}"));
            names.push(format!("y{i}"));
        }
    }
    names.push("z".to_string());
    VarSpace::new(names).expect("static space")
}

/// Index of `x_i` (1-based i) in [`ambient_space`].
fn x_slot(i: usize) -> usize {
    2 * (i - 1)
}

/// Index of `y_i` (1-based i) in [`ambient_space`].
fn y_slot(i: usize) -> usize {
    2 * (i - 1) + 1
}

/// The parameter line for curves.
pub fn curve_space() -> VarSpace {
    VarSpace::new(["t"]).expect("static space")
}

/// `x dy + dz` on (x, y, z).
pub fn omega_std() -> KForm {
    standard_form(1)
}

/// `Σ x_i dy_i + dz` on [`ambient_space`]`(n)`.
pub fn standard_form(n: usize) -> KForm {
    let space = ambient_space(n);
    let mut comps = vec![Poly::zero(&space); space.dim()];
    for i in 1..=n {
        comps[y_slot(i)] = Poly::var(&space, x_slot(i));
    }
    comps[2 * n] = Poly::one(&space);
    KForm::one_form(&space, comps).expect("static form")
}

/// `x dy − y dx − dz` on (x, y, z).
pub fn omega_sym() -> KForm {
    let space = contact_space();
    let x = Poly::var(&space, 0);
    let y = Poly::var(&space, 1);
    KForm::one_form(&space, vec![-&y, x, Poly::int(&space, -1)]).expect("static form")
}

pub fn origin3() -> Point {
    vec![CScalar::zero(), CScalar::zero(), CScalar::zero()]
}

/// The dt-coefficient of the pullback of `omega` along `curve`; the zero
/// polynomial exactly when the curve is admissible.
pub fn residual(omega: &KForm, curve: &PolyMap) -> Result<Poly> {
    if curve.source().dim() != 1 {
        return Err(Error::Dimension(format!(
            "residual expects a curve (1-dimensional source), got {}",
            curve.source().dim()
        )));
    }
    if omega.degree() != 1 {
        return Err(Error::Dimension(format!(
            "residual expects a 1-form, got degree {}",
            omega.degree()
        )));
    }
    let pulled = curve.pullback(omega)?;
    Ok(pulled.coeff(&[0]))
}

/// A parametrized polynomial curve together with the 1-form it is
/// admissible for. Construction verifies the residual is exactly zero.
/// Curves are directionless as algebraic objects; orientation lives in
/// the (t_start, t_end) pair, and a reversed traversal is the same map
/// with the bounds swapped.
#[derive(Clone, Debug)]
pub struct Curve {
    map: PolyMap,
    t_start: CScalar,
    t_end: CScalar,
    form: KForm,
}

impl Curve {
    pub fn new(map: PolyMap, t_start: CScalar, t_end: CScalar, form: &KForm) -> Result<Self> {
        let r = residual(form, &map)?;
        if !r.is_zero() {
            return Err(Error::NotAdmissible {
                residual: r.to_string(),
            });
        }
        Ok(Curve {
            map,
            t_start,
            t_end,
            form: form.clone(),
        })
    }

    pub fn map(&self) -> &PolyMap {
        &self.map
    }

    pub fn form(&self) -> &KForm {
        &self.form
    }

    pub fn t_start(&self) -> &CScalar {
        &self.t_start
    }

    pub fn t_end(&self) -> &CScalar {
        &self.t_end
    }

    pub fn start(&self) -> Point {
        self.map
            .eval(std::slice::from_ref(&self.t_start))
            .expect("curve map evaluates on its parameter")
    }

    pub fn end(&self) -> Point {
        self.map
            .eval(std::slice::from_ref(&self.t_end))
            .expect("curve map evaluates on its parameter")
    }

    /// The same curve pushed through `phi`, re-verified against `form`.
    pub fn map_through(&self, phi: &PolyMap, form: &KForm) -> Result<Curve> {
        let composed = phi.compose(&self.map)?;
        Curve::new(composed, self.t_start.clone(), self.t_end.clone(), form)
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}  (t: {} -> {})", self.map, self.t_start, self.t_end)
    }
}

/// An ordered chain of admissible curves over a common form.
#[derive(Clone, Debug)]
pub struct Plan {
    form: KForm,
    links: Vec<Curve>,
    start: Point,
    end: Point,
}

impl Plan {
    pub fn empty(form: &KForm, at: &[CScalar]) -> Plan {
        Plan {
            form: form.clone(),
            links: Vec::new(),
            start: at.to_vec(),
            end: at.to_vec(),
        }
    }

    pub fn new(form: &KForm, links: Vec<Curve>, start: Point, end: Point) -> Result<Plan> {
        let plan = Plan {
            form: form.clone(),
            links,
            start,
            end,
        };
        plan.verify()?;
        Ok(plan)
    }

    pub fn from_curve(curve: Curve) -> Plan {
        let start = curve.start();
        let end = curve.end();
        Plan {
            form: curve.form.clone(),
            links: vec![curve],
            start,
            end,
        }
    }

    pub fn form(&self) -> &KForm {
        &self.form
    }

    pub fn links(&self) -> &[Curve] {
        &self.links
    }

    pub fn link_count(&self) -> usize {
        self.links.len()
    }

    pub fn start(&self) -> &[CScalar] {
        &self.start
    }

    pub fn end(&self) -> &[CScalar] {
        &self.end
    }

    /// Recomputes every link residual and the endpoint chain from scratch.
    pub fn verify(&self) -> Result<()> {
        if self.links.is_empty() {
            if self.start != self.end {
                return Err(Error::BrokenChain { link: 0 });
            }
            return Ok(());
        }
        let mut at = self.start.clone();
        for (i, link) in self.links.iter().enumerate() {
            if link.form != self.form {
                return Err(Error::Dimension(format!(
                    "link {i} is admissible for a different form"
                )));
            }
            let r = residual(&self.form, &link.map)?;
            if !r.is_zero() {
                return Err(Error::NotAdmissible {
                    residual: r.to_string(),
                });
            }
            if link.start() != at {
                return Err(Error::BrokenChain { link: i });
            }
            at = link.end();
        }
        if at != self.end {
            return Err(Error::BrokenChain {
                link: self.links.len(),
            });
        }
        Ok(())
    }

    /// The image plan under `phi`. Every link is re-verified against
    /// `form`, so this only succeeds for maps that actually preserve the
    /// kernel (translations, dilations, the std/sym equivalence).
    pub fn map_through(&self, phi: &PolyMap, form: &KForm) -> Result<Plan> {
        let links = self
            .links
            .iter()
            .map(|l| l.map_through(phi, form))
            .collect::<Result<Vec<_>>>()?;
        Plan::new(
            form,
            links,
            phi.eval(&self.start)?,
            phi.eval(&self.end)?,
        )
    }
}

fn is_zero_point(p: &[CScalar]) -> bool {
    p.iter().all(CScalar::is_zero)
}

fn require_point3(target: &[CScalar]) -> Result<()> {
    if target.len() != 3 {
        return Err(Error::Dimension(format!(
            "expected a 3-space point, got {} coordinates",
            target.len()
        )));
    }
    Ok(())
}

/// Single-curve construction for `x dy − y dx − dz`, reaching
/// `(x1, y1, z1)` from the origin at t = 1 with the cubic family
/// `(x1 t, (y1 − c) t² + c t, z1 t³)`, where `c = y1 − 3 z1 / x1` solves
/// the endpoint condition. For `x1 = 0, y1 ≠ 0` the same construction is
/// used with the variables interchanged (x ↔ y, z ↦ −z).
pub fn plan_single_curve_sym(target: &[CScalar]) -> Result<Curve> {
    require_point3(target)?;
    let (x1, y1, z1) = (&target[0], &target[1], &target[2]);
    if !x1.is_zero() {
        single_curve_x_branch(x1, y1, z1)
    } else if !y1.is_zero() {
        let inner = single_curve_x_branch(y1, x1, &-z1)?;
        let space = contact_space();
        let ts = curve_space();
        let comps = inner.map.components();
        let swapped = PolyMap::new(
            &ts,
            &space,
            vec![comps[1].clone(), comps[0].clone(), -&comps[2]],
        )?;
        Curve::new(swapped, CScalar::zero(), CScalar::one(), &omega_sym())
    } else {
        Err(Error::DelegatesRequired)
    }
}

fn single_curve_x_branch(x1: &CScalar, y1: &CScalar, z1: &CScalar) -> Result<Curve> {
    let space = contact_space();
    let ts = curve_space();
    let t = Poly::var(&ts, 0);
    let t2 = t.checked_pow(2)?;
    let t3 = t.checked_pow(3)?;
    // c from z1 = (1/3) x1 y1 - (1/3) c x1, i.e. c = y1 - 3 z1 / x1.
    let three_z_over_x = &(&CScalar::from_int(3) * z1) / x1;
    let c = y1 - &three_z_over_x;
    let x_poly = t.scale(x1);
    let y_poly = &t2.scale(&three_z_over_x) + &t.scale(&c);
    let z_poly = t3.scale(z1);
    let map = PolyMap::new(&ts, &space, vec![x_poly, y_poly, z_poly])?;
    Curve::new(map, CScalar::zero(), CScalar::one(), &omega_sym())
}

/// Generating-function construction for `x dy + dz`: the Legendrian curve
/// of `S(x) = a x² + b x³` is `(t, 2a t + 3b t², −a t² − 2b t³)`, and the
/// 2×2 endpoint system at t = x1 has determinant −x1⁴. For `x1 = 0,
/// y1 ≠ 0` the y-variant `S(y) = a y² + b y³` is used instead.
pub fn plan_generating_std(target: &[CScalar]) -> Result<Curve> {
    require_point3(target)?;
    let (x1, y1, z1) = (&target[0], &target[1], &target[2]);
    let space = contact_space();
    let ts = curve_space();
    let t = Poly::var(&ts, 0);
    let t2 = t.checked_pow(2)?;
    let t3 = t.checked_pow(3)?;
    let two = CScalar::from_int(2);
    let three = CScalar::from_int(3);
    if !x1.is_zero() {
        // 2a x1 + 3b x1² = y1, −a x1² − 2b x1³ = z1.
        let x1_2 = x1.pow(2);
        let x1_3 = x1.pow(3);
        let a = &(&(&(&two * x1) * y1) + &(&three * z1)) / &x1_2;
        let b = -&(&(&(x1 * y1) + &(&two * z1)) / &x1_3);
        let y_poly = &t.scale(&(&two * &a)) + &t2.scale(&(&three * &b));
        let z_poly = &t2.scale(&-&a) + &t3.scale(&-&(&two * &b));
        let map = PolyMap::new(&ts, &space, vec![t, y_poly, z_poly])?;
        Curve::new(map, CScalar::zero(), x1.clone(), &omega_std())
    } else if !y1.is_zero() {
        // −2a y1 − 3b y1² = x1, a y1² + b y1³ = z1.
        let y1_2 = y1.pow(2);
        let y1_3 = y1.pow(3);
        let a = &(&(x1 * y1) + &(&three * z1)) / &y1_2;
        let b = -&(&(&(x1 * y1) + &(&two * z1)) / &y1_3);
        let x_poly = &t.scale(&-&(&two * &a)) + &t2.scale(&-&(&three * &b));
        let z_poly = &t2.scale(&a) + &t3.scale(&b);
        let map = PolyMap::new(&ts, &space, vec![x_poly, t, z_poly])?;
        Curve::new(map, CScalar::zero(), y1.clone(), &omega_std())
    } else {
        Err(Error::DelegatesRequired)
    }
}

/// Broken-line construction for `x dy − y dx − dz`: a cubic to
/// `(t1, t1², z1)`, a line contracting to `(0, 0, z1)`, and a line
/// expanding to the target, dropping degenerate links. The cubic's
/// parameter `t1` must satisfy `t1³ = 3 z1`; Gaussian rationals are not
/// closed under cube roots, so whenever `z1 ≠ 0` the caller supplies it
/// as `cube_root_hint`.
pub fn plan_three_link(target: &[CScalar], cube_root_hint: Option<&CScalar>) -> Result<Plan> {
    require_point3(target)?;
    let form = omega_sym();
    if is_zero_point(target) {
        return Ok(Plan::empty(&form, target));
    }
    let (x1, y1, z1) = (&target[0], &target[1], &target[2]);
    let space = contact_space();
    let ts = curve_space();
    let t = Poly::var(&ts, 0);

    if z1.is_zero() {
        // Already on the z = 0 admissible line through the origin.
        let line = PolyMap::new(
            &ts,
            &space,
            vec![t.scale(x1), t.scale(y1), Poly::zero(&ts)],
        )?;
        let link = Curve::new(line, CScalar::zero(), CScalar::one(), &form)?;
        return Plan::new(&form, vec![link], origin3(), target.to_vec());
    }

    let t1 = cube_root_hint.ok_or_else(|| Error::HintRequired { z: z1.to_string() })?;
    let cube = t1.pow(3);
    let three_z = &CScalar::from_int(3) * z1;
    if cube != three_z {
        return Err(Error::InvalidHint {
            hint: t1.to_string(),
            cube: cube.to_string(),
            expected: three_z.to_string(),
        });
    }

    let mut links = Vec::new();
    // Link 1: reparametrized cubic (t1 t, t1² t², z1 t³), origin to apex.
    let t2 = t.checked_pow(2)?;
    let t3 = t.checked_pow(3)?;
    let cubic = PolyMap::new(
        &ts,
        &space,
        vec![t.scale(t1), t2.scale(&t1.pow(2)), t3.scale(z1)],
    )?;
    links.push(Curve::new(cubic, CScalar::zero(), CScalar::one(), &form)?);

    let apex = (t1.clone(), t1.pow(2));
    if (&apex.0, &apex.1) != (x1, y1) {
        // Link 2: the admissible line through the apex, traversed in
        // reverse (swapped bounds) down to the z-axis.
        let contracting = PolyMap::new(
            &ts,
            &space,
            vec![
                t.scale(&apex.0),
                t.scale(&apex.1),
                Poly::constant(&ts, z1.clone()),
            ],
        )?;
        links.push(Curve::new(
            contracting,
            CScalar::one(),
            CScalar::zero(),
            &form,
        )?);
        if !(x1.is_zero() && y1.is_zero()) {
            // Link 3: expand back out along the target's line.
            let expanding = PolyMap::new(
                &ts,
                &space,
                vec![t.scale(x1), t.scale(y1), Poly::constant(&ts, z1.clone())],
            )?;
            links.push(Curve::new(
                expanding,
                CScalar::zero(),
                CScalar::one(),
                &form,
            )?);
        }
    }
    Plan::new(&form, links, origin3(), target.to_vec())
}

/// The affine symmetry `(x, y, z) ↦ (x+a, y+b, z + a y − b x + c)` sending
/// the origin to `p = (a, b, c)`. It pulls `x dy − y dx − dz` back to
/// itself exactly, which is what lets every construction be based at the
/// origin.
pub fn heisenberg_translate(p: &[CScalar]) -> Result<PolyMap> {
    require_point3(p)?;
    let (a, b, c) = (&p[0], &p[1], &p[2]);
    let space = contact_space();
    let x = Poly::var(&space, 0);
    let y = Poly::var(&space, 1);
    let z = Poly::var(&space, 2);
    let x_comp = &x + &Poly::constant(&space, a.clone());
    let y_comp = &y + &Poly::constant(&space, b.clone());
    let z_comp = &(&(&z + &y.scale(a)) - &x.scale(b)) + &Poly::constant(&space, c.clone());
    PolyMap::new(&space, &space, vec![x_comp, y_comp, z_comp])
}

fn neg_point(p: &[CScalar]) -> Point {
    p.iter().map(|c| -c).collect()
}

/// `φ(x, y, z) = (2x, y, −xy−z)`, which pulls `x dy + dz` back to
/// `x dy − y dx − dz`.
pub fn equivalence_map() -> PolyMap {
    let space = contact_space();
    let x = Poly::var(&space, 0);
    let y = Poly::var(&space, 1);
    let z = Poly::var(&space, 2);
    let xy = &x * &y;
    PolyMap::new(
        &space,
        &space,
        vec![x.scale(&CScalar::from_int(2)), y, -&(&xy + &z)],
    )
    .expect("static map")
}

/// Inverse of [`equivalence_map`]: `(x/2, y, −xy/2 − z)`.
pub fn equivalence_map_inv() -> PolyMap {
    let space = contact_space();
    let x = Poly::var(&space, 0);
    let y = Poly::var(&space, 1);
    let z = Poly::var(&space, 2);
    let half_xy = (&x * &y).scale(&CScalar::from_ratio(1, 2));
    PolyMap::new(
        &space,
        &space,
        vec![x.scale(&CScalar::from_ratio(1, 2)), y, -&(&half_xy + &z)],
    )
    .expect("static map")
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Strategy {
    Single,
    ThreeLink,
    Generating,
}

impl Strategy {
    /// The form the strategy's plans are admissible for.
    pub fn form(&self) -> KForm {
        match self {
            Strategy::Single | Strategy::ThreeLink => omega_sym(),
            Strategy::Generating => omega_std(),
        }
    }
}

impl std::str::FromStr for Strategy {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "single" => Ok(Strategy::Single),
            "three_link" => Ok(Strategy::ThreeLink),
            "generating" => Ok(Strategy::Generating),
            other => Err(format!(
                "unknown strategy {other:?} (expected single, three_link or generating)"
            )),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::Single => write!(f, "single"),
            Strategy::ThreeLink => write!(f, "three_link"),
            Strategy::Generating => write!(f, "generating"),
        }
    }
}

/// Plan from `p0` to `p1` by conjugating an origin-based construction
/// with the translation symmetry: `q = T_{p0}^{-1}(p1)`, plan to `q`, push
/// the links through `T_{p0}`. For the generating strategy the
/// translation preserving `x dy + dz` is obtained by conjugating the
/// Heisenberg translation through the std/sym equivalence.
pub fn plan_between(
    p0: &[CScalar],
    p1: &[CScalar],
    strategy: Strategy,
    cube_root_hint: Option<&CScalar>,
) -> Result<Plan> {
    require_point3(p0)?;
    require_point3(p1)?;
    let form = strategy.form();
    if p0 == p1 {
        return Ok(Plan::empty(&form, p0));
    }
    let (translate, q) = match strategy {
        Strategy::Single | Strategy::ThreeLink => {
            let t = heisenberg_translate(p0)?;
            let t_inv = heisenberg_translate(&neg_point(p0))?;
            let q = t_inv.eval(p1)?;
            (t, q)
        }
        Strategy::Generating => {
            let phi = equivalence_map();
            let psi = equivalence_map_inv();
            let base = psi.eval(p0)?;
            let t = phi.compose(&heisenberg_translate(&base)?)?.compose(&psi)?;
            let t_inv = phi
                .compose(&heisenberg_translate(&neg_point(&base))?)?
                .compose(&psi)?;
            let q = t_inv.eval(p1)?;
            (t, q)
        }
    };
    let origin_plan = match strategy {
        Strategy::Single => Plan::from_curve(plan_single_curve_sym(&q)?),
        Strategy::ThreeLink => plan_three_link(&q, cube_root_hint)?,
        Strategy::Generating => Plan::from_curve(plan_generating_std(&q)?),
    };
    origin_plan.map_through(&translate, &form)
}

/// A Legendrian chart for `Σ x_i dy_i + dz`, produced from a generating
/// function. The defining invariant — the pullback of the standard form
/// under `map` vanishes identically — is checked at construction.
#[derive(Clone, Debug)]
pub struct LegendrianChart {
    pub generating: Poly,
    pub partition: (Vec<usize>, Vec<usize>),
    pub map: PolyMap,
}

/// Builds the chart `y_I = ∂S/∂x_I, x_J = −∂S/∂y_J,
/// z = S − x_I ∂S/∂x_I` over the parameters `(x_I, y_J)`.
///
/// `s` is a polynomial over [`ambient_space`]`(n)` that may depend only on
/// the variables `x_i (i ∈ I)` and `y_j (j ∈ J)`; `i_set`/`j_set` are
/// 1-based and must partition `1..=n`.
pub fn legendrian_from_s(
    s: &Poly,
    i_set: &[usize],
    j_set: &[usize],
    n: usize,
) -> Result<LegendrianChart> {
    if n < 1 {
        return Err(Error::Dimension("n must be at least 1".into()));
    }
    let ambient = ambient_space(n);
    if s.space() != &ambient {
        return Err(crate::space::space_mismatch(&ambient, s.space()));
    }
    let mut seen = vec![false; n + 1];
    for &i in i_set.iter().chain(j_set) {
        if i < 1 || i > n {
            return Err(Error::Dimension(format!(
                "partition index {i} outside 1..={n}"
            )));
        }
        if seen[i] {
            return Err(Error::Dimension(format!(
                "index {i} appears twice in the partition"
            )));
        }
        seen[i] = true;
    }
    if seen[1..].iter().any(|s| !s) {
        return Err(Error::Dimension(format!(
            "partition does not cover 1..={n}"
        )));
    }

    // Parameter space: for each index, the x variable when it is in I and
    // the y variable when it is in J, in index order.
    let in_i = |idx: usize| i_set.contains(&idx);
    let param_names: Vec<String> = (1..=n)
        .map(|idx| {
            let slot = if in_i(idx) { x_slot(idx) } else { y_slot(idx) };
            ambient.name(slot).to_string()
        })
        .collect();
    let params = VarSpace::new(param_names)?;

    // Re-base S onto the parameter space; any excluded variable in its
    // support is reported by name.
    let mut mapping = vec![None; ambient.dim()];
    for idx in 1..=n {
        let slot = if in_i(idx) { x_slot(idx) } else { y_slot(idx) };
        mapping[slot] = Some(idx - 1);
    }
    let s_param = s.rename_into(&params, &mapping)?;

    let mut comps = vec![Poly::zero(&params); ambient.dim()];
    let mut z_comp = s_param.clone();
    for idx in 1..=n {
        let param = Poly::var(&params, idx - 1);
        let ds = s_param.partial(idx - 1);
        if in_i(idx) {
            comps[x_slot(idx)] = param.clone();
            comps[y_slot(idx)] = ds.clone();
            z_comp = &z_comp - &param.checked_mul(&ds)?;
        } else {
            comps[x_slot(idx)] = -&ds;
            comps[y_slot(idx)] = param;
        }
    }
    comps[2 * n] = z_comp;
    let map = PolyMap::new(&params, &ambient, comps)?;

    let pulled = map.pullback(&standard_form(n))?;
    if !pulled.is_zero() {
        return Err(Error::NotAdmissible {
            residual: pulled.to_string(),
        });
    }
    Ok(LegendrianChart {
        generating: s_param,
        partition: (i_set.to_vec(), j_set.to_vec()),
        map,
    })
}

/// The quasi-homogeneous dilation `(x, y, z) ↦ (αx, αy, α²z)`.
pub fn dilation_map(alpha: &CScalar) -> Result<PolyMap> {
    if alpha.is_zero() {
        return Err(Error::DegenerateDilation);
    }
    let space = contact_space();
    let x = Poly::var(&space, 0);
    let y = Poly::var(&space, 1);
    let z = Poly::var(&space, 2);
    PolyMap::new(
        &space,
        &space,
        vec![x.scale(alpha), y.scale(alpha), z.scale(&alpha.pow(2))],
    )
}

#[derive(Clone, Debug)]
pub struct DilationReport {
    pub alpha: CScalar,
    /// `α²`, the exact factor the pullback multiplies both standard forms by.
    pub scale: CScalar,
    pub preserves_sym: bool,
    pub preserves_std: bool,
    /// Planner-produced links mapped through the dilation and re-verified.
    pub links_checked: usize,
}

/// Verifies that the dilation rescales both standard forms by `α²` (hence
/// preserves their kernels) and maps a battery of planner outputs to
/// admissible curves again.
pub fn dilation_check(alpha: &CScalar) -> Result<DilationReport> {
    let d = dilation_map(alpha)?;
    let scale = alpha.pow(2);
    let sym = omega_sym();
    let std = omega_std();
    let preserves_sym = d.pullback(&sym)? == sym.scale(&scale);
    let preserves_std = d.pullback(&std)? == std.scale(&scale);

    let one = CScalar::one();
    let battery = [
        Plan::from_curve(plan_single_curve_sym(&[one.clone(), one.clone(), one.clone()])?),
        plan_three_link(
            &[one.clone(), CScalar::from_int(2), CScalar::from_int(9)],
            Some(&CScalar::from_int(3)),
        )?,
        Plan::from_curve(plan_generating_std(&[one.clone(), one.clone(), one])?),
    ];
    let mut links_checked = 0;
    for plan in &battery {
        let image = plan.map_through(&d, plan.form())?;
        links_checked += image.link_count();
    }
    Ok(DilationReport {
        alpha: alpha.clone(),
        scale,
        preserves_sym,
        preserves_std,
        links_checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn point(coords: [i64; 3]) -> Point {
        coords.iter().map(|&c| CScalar::from_int(c)).collect()
    }

    fn check_curve_reaches(curve: &Curve, target: &[CScalar]) {
        assert_eq!(curve.start(), origin3());
        assert_eq!(curve.end(), target.to_vec());
    }

    #[test]
    fn paper_cubic_and_line_are_admissible() {
        let ts = curve_space();
        let space = contact_space();
        let t = Poly::var(&ts, 0);
        let cubic = PolyMap::new(
            &ts,
            &space,
            vec![
                t.clone(),
                t.checked_pow(2).unwrap(),
                t.checked_pow(3).unwrap().scale(&CScalar::from_ratio(1, 3)),
            ],
        )
        .unwrap();
        assert!(residual(&omega_sym(), &cubic).unwrap().is_zero());

        // (x1 t, y1 t, z1) for a rational instance of the constants.
        let line = PolyMap::new(
            &ts,
            &space,
            vec![
                t.scale(&CScalar::from_ratio(5, 2)),
                t.scale(&CScalar::from_int(-7)),
                Poly::constant(&ts, CScalar::from_ratio(1, 3)),
            ],
        )
        .unwrap();
        assert!(residual(&omega_sym(), &line).unwrap().is_zero());
    }

    #[test]
    fn non_admissible_witness() {
        // (t, t, t) against x dy + dz leaves t + 1.
        let ts = curve_space();
        let t = Poly::var(&ts, 0);
        let diag = PolyMap::new(&ts, &contact_space(), vec![t.clone(), t.clone(), t]).unwrap();
        let r = residual(&omega_std(), &diag).unwrap();
        assert_eq!(r.to_string(), "t + 1");
    }

    #[test]
    fn single_curve_to_unit_target() {
        // c = -2, curve (t, 3t² − 2t, t³).
        let target = point([1, 1, 1]);
        let curve = plan_single_curve_sym(&target).unwrap();
        check_curve_reaches(&curve, &target);
        let comps = curve.map().components();
        assert_eq!(comps[0].to_string(), "t");
        assert_eq!(comps[1].to_string(), "3*t^2 - 2*t");
        assert_eq!(comps[2].to_string(), "t^3");
    }

    #[test]
    fn single_curve_axis_target() {
        let target = point([1, 0, 0]);
        let curve = plan_single_curve_sym(&target).unwrap();
        check_curve_reaches(&curve, &target);
        let comps = curve.map().components();
        assert_eq!(comps[0].to_string(), "t");
        assert!(comps[1].is_zero());
        assert!(comps[2].is_zero());
    }

    #[test]
    fn single_curve_solves_linear_equation() {
        // target (2, 3, 1): c = 3/2, so y = (3/2)t² + (3/2)t.
        let target = point([2, 3, 1]);
        let curve = plan_single_curve_sym(&target).unwrap();
        check_curve_reaches(&curve, &target);
        assert_eq!(
            curve.map().components()[1].to_string(),
            "3/2*t^2 + 3/2*t"
        );
    }

    #[test]
    fn single_curve_swapped_branch() {
        let target = point([0, 2, 3]);
        let curve = plan_single_curve_sym(&target).unwrap();
        check_curve_reaches(&curve, &target);
    }

    #[test]
    fn single_curve_rejects_axis_targets() {
        let target = point([0, 0, 5]);
        assert!(matches!(
            plan_single_curve_sym(&target),
            Err(Error::DelegatesRequired)
        ));
    }

    #[test]
    fn generating_curve_matches_solved_coefficients() {
        // a = 5, b = -3: (t, 10t − 9t², −5t² + 6t³).
        let target = point([1, 1, 1]);
        let curve = plan_generating_std(&target).unwrap();
        check_curve_reaches(&curve, &target);
        let comps = curve.map().components();
        assert_eq!(comps[1].to_string(), "-9*t^2 + 10*t");
        assert_eq!(comps[2].to_string(), "6*t^3 - 5*t^2");
    }

    #[test]
    fn generating_curve_degenerate_s() {
        let target = point([1, 0, 0]);
        let curve = plan_generating_std(&target).unwrap();
        check_curve_reaches(&curve, &target);
        assert!(curve.map().components()[1].is_zero());
        assert!(curve.map().components()[2].is_zero());
    }

    #[test]
    fn generating_curve_y_branch() {
        let target = point([0, 3, 2]);
        let curve = plan_generating_std(&target).unwrap();
        check_curve_reaches(&curve, &target);
    }

    #[test]
    fn three_link_on_the_z_axis() {
        // target (0, 0, 9), hint 3: cubic to (3, 9, 9), line back; 2 links.
        let target = point([0, 0, 9]);
        let hint = CScalar::from_int(3);
        let plan = plan_three_link(&target, Some(&hint)).unwrap();
        assert_eq!(plan.link_count(), 2);
        assert_eq!(plan.links()[0].end(), point([3, 9, 9]));
        assert_eq!(plan.end(), &target[..]);
    }

    #[test]
    fn three_link_trivial_target() {
        let plan = plan_three_link(&origin3(), None).unwrap();
        assert_eq!(plan.link_count(), 0);
    }

    #[test]
    fn three_link_general_target() {
        let target = point([1, 2, 9]);
        let hint = CScalar::from_int(3);
        let plan = plan_three_link(&target, Some(&hint)).unwrap();
        assert_eq!(plan.link_count(), 3);
        assert_eq!(plan.end(), &target[..]);
    }

    #[test]
    fn three_link_hint_contract() {
        let target = point([0, 0, 9]);
        assert!(matches!(
            plan_three_link(&target, None),
            Err(Error::HintRequired { .. })
        ));
        let bad = CScalar::from_int(2);
        assert!(matches!(
            plan_three_link(&target, Some(&bad)),
            Err(Error::InvalidHint { .. })
        ));
    }

    #[test]
    fn three_link_no_hint_needed_at_level_zero() {
        let target = point([4, -5, 0]);
        let plan = plan_three_link(&target, None).unwrap();
        assert_eq!(plan.link_count(), 1);
        assert_eq!(plan.end(), &target[..]);
    }

    #[test]
    fn heisenberg_fixes_form_and_moves_origin() {
        let p = point([1, 2, 3]);
        let t = heisenberg_translate(&p).unwrap();
        assert_eq!(t.pullback(&omega_sym()).unwrap(), omega_sym());
        assert_eq!(t.eval(&origin3()).unwrap(), p);
    }

    #[test]
    fn heisenberg_zero_is_identity() {
        let t = heisenberg_translate(&origin3()).unwrap();
        assert_eq!(t, PolyMap::identity(&contact_space()));
    }

    #[test]
    fn heisenberg_inverse_composes_to_identity() {
        let p = vec![
            CScalar::from_ratio(3, 2),
            CScalar::from_int(-2),
            CScalar::i(),
        ];
        let t = heisenberg_translate(&p).unwrap();
        let t_inv = heisenberg_translate(&neg_point(&p)).unwrap();
        let both = t.compose(&t_inv).unwrap();
        assert_eq!(both, PolyMap::identity(&contact_space()));
    }

    #[test]
    fn plan_between_fixed_points() {
        let p = point([2, -1, 5]);
        let plan = plan_between(&p, &p, Strategy::Single, None).unwrap();
        assert_eq!(plan.link_count(), 0);
    }

    #[test]
    fn plan_between_general_points_single() {
        let p0 = point([1, 1, 1]);
        let p1 = point([2, 2, 2]);
        let plan = plan_between(&p0, &p1, Strategy::Single, None).unwrap();
        assert_eq!(plan.start(), &p0[..]);
        assert_eq!(plan.end(), &p1[..]);
        plan.verify().unwrap();
    }

    #[test]
    fn plan_between_from_origin_matches_direct() {
        let p1 = point([1, 1, 1]);
        let plan = plan_between(&origin3(), &p1, Strategy::Single, None).unwrap();
        let direct = plan_single_curve_sym(&p1).unwrap();
        assert_eq!(plan.link_count(), 1);
        assert_eq!(plan.links()[0].map(), direct.map());
    }

    #[test]
    fn plan_between_generating_conjugated() {
        let p0 = point([1, 0, 2]);
        let p1 = point([-1, 3, 1]);
        let plan = plan_between(&p0, &p1, Strategy::Generating, None).unwrap();
        assert_eq!(plan.start(), &p0[..]);
        assert_eq!(plan.end(), &p1[..]);
        assert_eq!(plan.form(), &omega_std());
    }

    #[test]
    fn legendrian_matches_generating_construction() {
        // S = 5x² − 3x³ gives the chart (x, 10x − 9x², −5x² + 6x³).
        let ambient = ambient_space(1);
        let x = Poly::var(&ambient, 0);
        let s = &x.checked_pow(2).unwrap().scale(&CScalar::from_int(5))
            - &x.checked_pow(3).unwrap().scale(&CScalar::from_int(3));
        let chart = legendrian_from_s(&s, &[1], &[], 1).unwrap();
        let comps = chart.map.components();
        assert_eq!(comps[0].to_string(), "x");
        assert_eq!(comps[1].to_string(), "-9*x^2 + 10*x");
        assert_eq!(comps[2].to_string(), "6*x^3 - 5*x^2");
    }

    #[test]
    fn legendrian_zero_generating_function() {
        let ambient = ambient_space(1);
        let s = Poly::zero(&ambient);
        let chart = legendrian_from_s(&s, &[1], &[], 1).unwrap();
        assert_eq!(chart.map.components()[0].to_string(), "x");
        assert!(chart.map.components()[1].is_zero());
        assert!(chart.map.components()[2].is_zero());
    }

    #[test]
    fn legendrian_mixed_partition() {
        // n = 2, I = {1}, J = {2}, S = x1 y2: chart (x1, y2, −x1, y2, 0).
        let ambient = ambient_space(2);
        let x1 = Poly::var(&ambient, 0);
        let y2 = Poly::var(&ambient, 3);
        let s = &x1 * &y2;
        let chart = legendrian_from_s(&s, &[1], &[2], 2).unwrap();
        let comps = chart.map.components();
        assert_eq!(comps[0].to_string(), "x1");
        assert_eq!(comps[1].to_string(), "y2");
        assert_eq!(comps[2].to_string(), "-x1");
        assert_eq!(comps[3].to_string(), "y2");
        assert!(comps[4].is_zero());
    }

    #[test]
    fn legendrian_rejects_excluded_variables() {
        let ambient = ambient_space(1);
        let y = Poly::var(&ambient, 1);
        let s = y.checked_pow(2).unwrap();
        let err = legendrian_from_s(&s, &[1], &[], 1).unwrap_err();
        assert!(matches!(
            err,
            Error::InvalidGeneratingFunction { variable } if variable == "y"
        ));
    }

    #[test]
    fn dilation_scales_by_alpha_squared() {
        let report = dilation_check(&CScalar::from_int(2)).unwrap();
        assert_eq!(report.scale, CScalar::from_int(4));
        assert!(report.preserves_sym && report.preserves_std);
        assert!(report.links_checked >= 5);

        let unit = dilation_check(&CScalar::one()).unwrap();
        assert_eq!(unit.scale, CScalar::one());

        // α = i squares to −1; the kernel is unchanged.
        let gauss = dilation_check(&CScalar::i()).unwrap();
        assert_eq!(gauss.scale, CScalar::from_int(-1));
        assert!(gauss.preserves_sym && gauss.preserves_std);
    }

    #[test]
    fn dilation_rejects_zero() {
        assert!(matches!(
            dilation_check(&CScalar::zero()),
            Err(Error::DegenerateDilation)
        ));
    }
}
