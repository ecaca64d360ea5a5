//! Floating-point reachability: paths constrained to the common kernel of
//! a Pfaffian system.
//!
//! The symbolic layer hands over exact 1-forms; this module realifies
//! complex coordinates (w ↦ (Re w, Im w), one holomorphic form ↦ two real
//! forms), projects desired velocities onto the kernel pointwise, and
//! integrates with a fixed-step classical 4th-order scheme. Everything is
//! deterministic for fixed inputs and seed.

pub mod fixtures;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::form::KForm;
use crate::poly::Poly;
use crate::scalar::CScalar;
use crate::space::VarSpace;

/// Relative threshold below which the covector rows count as rank-deficient.
const RANK_TOL: f64 = 1e-10;

/// A polynomial with f64 coefficients, compiled from an exact [`Poly`].
#[derive(Clone, Debug)]
pub struct RealPoly {
    nvars: usize,
    terms: Vec<(Vec<u32>, f64)>,
}

impl RealPoly {
    /// Compiles the real part of each coefficient.
    pub fn from_poly_re(p: &Poly) -> RealPoly {
        RealPoly {
            nvars: p.space().dim(),
            terms: p
                .terms()
                .map(|(m, c)| (m.0.clone(), c.to_f64_pair().0))
                .filter(|(_, c)| *c != 0.0)
                .collect(),
        }
    }

    /// Compiles the imaginary part of each coefficient.
    pub fn from_poly_im(p: &Poly) -> RealPoly {
        RealPoly {
            nvars: p.space().dim(),
            terms: p
                .terms()
                .map(|(m, c)| (m.0.clone(), c.to_f64_pair().1))
                .filter(|(_, c)| *c != 0.0)
                .collect(),
        }
    }

    /// Compiles a polynomial that must have purely real coefficients.
    pub fn from_poly_checked(p: &Poly) -> Result<RealPoly> {
        for (_, c) in p.terms() {
            if !c.is_real() {
                return Err(Error::NonRealCoefficient(c.to_string()));
            }
        }
        Ok(RealPoly::from_poly_re(p))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn eval(&self, p: &[f64]) -> f64 {
        debug_assert_eq!(p.len(), self.nvars);
        let mut acc = 0.0;
        for (exps, c) in &self.terms {
            let mut term = *c;
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    term *= p[i].powi(e as i32);
                }
            }
            acc += term;
        }
        acc
    }
}

/// One real 1-form, as a coefficient polynomial per coordinate.
#[derive(Clone, Debug)]
pub struct NumForm {
    comps: Vec<RealPoly>,
}

impl NumForm {
    pub fn covector_at(&self, p: &[f64]) -> Vec<f64> {
        self.comps.iter().map(|c| c.eval(p)).collect()
    }
}

/// A Pfaffian system evaluated in floating point: the distribution is the
/// common kernel of `forms` at each point.
#[derive(Clone, Debug)]
pub struct NumDist {
    names: Vec<String>,
    forms: Vec<NumForm>,
}

impl NumDist {
    /// From 1-forms with real rational coefficients on a real space.
    pub fn from_real_forms(space: &VarSpace, forms: &[KForm]) -> Result<NumDist> {
        let mut out = Vec::with_capacity(forms.len());
        for omega in forms {
            let comps = omega
                .one_form_components()
                .ok_or_else(|| Error::Dimension("distribution forms must have degree 1".into()))?;
            if omega.space() != space {
                return Err(crate::space::space_mismatch(space, omega.space()));
            }
            let comps = comps
                .iter()
                .map(RealPoly::from_poly_checked)
                .collect::<Result<Vec<_>>>()?;
            out.push(NumForm { comps });
        }
        Ok(NumDist {
            names: space.names().to_vec(),
            forms: out,
        })
    }

    /// Realifies holomorphic 1-forms on a complex space: each complex
    /// coordinate w becomes the real pair (w_re, w_im), and each form
    /// contributes its real and imaginary parts as two real forms.
    pub fn realified(space: &VarSpace, forms: &[KForm]) -> Result<NumDist> {
        let rspace = realify_space(space)?;
        // w_k ↦ w_k_re + i w_k_im as exact polynomials over the real space.
        let subs: Vec<Poly> = (0..space.dim())
            .map(|k| {
                &Poly::var(&rspace, 2 * k)
                    + &Poly::var(&rspace, 2 * k + 1).scale(&CScalar::i())
            })
            .collect();
        let mut out = Vec::with_capacity(2 * forms.len());
        for omega in forms {
            if omega.space() != space {
                return Err(crate::space::space_mismatch(space, omega.space()));
            }
            let comps = omega
                .one_form_components()
                .ok_or_else(|| Error::Dimension("distribution forms must have degree 1".into()))?;
            let mut re_comps = vec![Poly::zero(&rspace); rspace.dim()];
            let mut im_comps = vec![Poly::zero(&rspace); rspace.dim()];
            for (k, f) in comps.iter().enumerate() {
                let g = f.substitute(&rspace, &subs)?;
                let (a, b) = split_re_im(&g);
                // (A + iB)(du + i dv) = (A du − B dv) + i (B du + A dv)
                re_comps[2 * k] = &re_comps[2 * k] + &a;
                re_comps[2 * k + 1] = &re_comps[2 * k + 1] - &b;
                im_comps[2 * k] = &im_comps[2 * k] + &b;
                im_comps[2 * k + 1] = &im_comps[2 * k + 1] + &a;
            }
            for comps in [re_comps, im_comps] {
                out.push(NumForm {
                    comps: comps
                        .iter()
                        .map(RealPoly::from_poly_checked)
                        .collect::<Result<Vec<_>>>()?,
                });
            }
        }
        Ok(NumDist {
            names: rspace.names().to_vec(),
            forms: out,
        })
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn num_forms(&self) -> usize {
        self.forms.len()
    }

    pub fn covectors_at(&self, p: &[f64]) -> Vec<Vec<f64>> {
        self.forms.iter().map(|f| f.covector_at(p)).collect()
    }
}

/// The real space obtained by splitting every variable w into (w_re, w_im).
pub fn realify_space(space: &VarSpace) -> Result<VarSpace> {
    let mut names = Vec::with_capacity(2 * space.dim());
    for n in space.names() {
        names.push(format!("{n}_re"));
        names.push(format!("{n}_im"));
    }
    VarSpace::with_degree_cap(names, space.degree_cap())
}

/// Splits a Gaussian-rational polynomial into (real part, imaginary part),
/// both with real coefficients.
pub fn split_re_im(p: &Poly) -> (Poly, Poly) {
    let space = p.space();
    let mut re = Poly::zero(space);
    let mut im = Poly::zero(space);
    for (m, c) in p.terms() {
        re.add_term(m.clone(), CScalar::from_real(c.re().clone()));
        im.add_term(m.clone(), CScalar::from_real(c.im().clone()));
    }
    (re, im)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Orthogonal projection (Euclidean inner product) of `v` onto the
/// intersection of the kernels of all forms at `p`. Errors when the
/// covector rows are rank-deficient at `p`.
pub fn project_kernel(dist: &NumDist, p: &[f64], v: &[f64]) -> Result<Vec<f64>> {
    let rows = dist.covectors_at(p);
    let basis = orthonormal_rows(&rows, p, 0, &[])?;
    let mut out = v.to_vec();
    // Two elimination passes keep the residual near machine precision.
    for _ in 0..2 {
        for q in &basis {
            let c = dot(q, &out);
            for (o, qi) in out.iter_mut().zip(q) {
                *o -= c * qi;
            }
        }
    }
    Ok(out)
}

fn orthonormal_rows(
    rows: &[Vec<f64>],
    p: &[f64],
    step: usize,
    partial: &[Vec<f64>],
) -> Result<Vec<Vec<f64>>> {
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(rows.len());
    for row in rows {
        let norm0 = norm(row);
        let mut w = row.clone();
        for _ in 0..2 {
            for q in &basis {
                let c = dot(q, &w);
                for (wi, qi) in w.iter_mut().zip(q) {
                    *wi -= c * qi;
                }
            }
        }
        let norm1 = norm(&w);
        if !(norm1 > RANK_TOL * norm0) || norm0 == 0.0 {
            return Err(Error::SingularPoint {
                step,
                point: p.to_vec(),
                partial: partial.to_vec(),
            });
        }
        for wi in &mut w {
            *wi /= norm1;
        }
        basis.push(w);
    }
    Ok(basis)
}

/// Desired-velocity schedules for tangent integration.
#[derive(Clone, Debug)]
pub enum Schedule {
    /// One velocity for the whole horizon.
    Constant(Vec<f64>),
    /// Equal-length segments of constant velocity over `horizon`.
    Piecewise {
        velocities: Vec<Vec<f64>>,
        horizon: f64,
    },
    /// Velocity components as polynomials in the single variable t.
    TimePoly(Vec<RealPoly>),
}

impl Schedule {
    pub fn velocity(&self, t: f64, _p: &[f64]) -> Vec<f64> {
        match self {
            Schedule::Constant(v) => v.clone(),
            Schedule::Piecewise {
                velocities,
                horizon,
            } => {
                let seg_len = horizon / velocities.len() as f64;
                let idx = ((t / seg_len) as usize).min(velocities.len() - 1);
                velocities[idx].clone()
            }
            Schedule::TimePoly(comps) => comps.iter().map(|c| c.eval(&[t])).collect(),
        }
    }
}

/// A kernel-constrained discrete path.
#[derive(Clone, Debug)]
pub struct NumPath {
    pub samples: Vec<Vec<f64>>,
    pub step: f64,
    /// Max over steps and forms of |ω_i(p_k)(chord_k)|, where chord_k is
    /// the discrete velocity (p_{k+1} − p_k)/h.
    pub max_residual: f64,
    pub controls: Schedule,
}

impl NumPath {
    pub fn endpoint(&self) -> &[f64] {
        self.samples.last().expect("paths hold at least the start")
    }

    /// Recomputes the stored residual from the samples; must agree with
    /// `max_residual` to 1e−12.
    pub fn recompute_max_residual(&self, dist: &NumDist) -> f64 {
        let mut worst: f64 = 0.0;
        for pair in self.samples.windows(2) {
            let chord: Vec<f64> = pair[0]
                .iter()
                .zip(&pair[1])
                .map(|(a, b)| (b - a) / self.step)
                .collect();
            for row in dist.covectors_at(&pair[0]) {
                worst = worst.max(dot(&row, &chord).abs());
            }
        }
        worst
    }
}

/// Integrates `dp/dt = project_kernel(dist, p, schedule(t, p))` with the
/// classical 4th-order one-step method at fixed step `h` over `[0, t_max]`.
/// Deterministic for fixed inputs. A rank-deficient point aborts with the
/// partial path attached to the error.
pub fn integrate_tangent(
    dist: &NumDist,
    p0: &[f64],
    schedule: Schedule,
    h: f64,
    t_max: f64,
) -> Result<NumPath> {
    if !(h > 0.0) {
        return Err(Error::Config("step h must be positive".into()));
    }
    if t_max < h {
        return Err(Error::Config("horizon must be at least one step".into()));
    }
    if p0.len() != dist.dim() {
        return Err(Error::Dimension(format!(
            "start point has {} coordinates, distribution lives in {}",
            p0.len(),
            dist.dim()
        )));
    }
    let n_steps = (t_max / h).round().max(1.0) as usize;
    let mut samples = Vec::with_capacity(n_steps + 1);
    samples.push(p0.to_vec());
    let mut p = p0.to_vec();
    let mut max_residual: f64 = 0.0;

    let field = |t: f64, q: &[f64], step: usize, partial: &[Vec<f64>]| -> Result<Vec<f64>> {
        let rows = dist.covectors_at(q);
        let basis = orthonormal_rows(&rows, q, step, partial)?;
        let mut out = schedule.velocity(t, q);
        for _ in 0..2 {
            for b in &basis {
                let c = dot(b, &out);
                for (o, bi) in out.iter_mut().zip(b) {
                    *o -= c * bi;
                }
            }
        }
        Ok(out)
    };

    for k in 0..n_steps {
        let t = k as f64 * h;
        let k1 = field(t, &p, k, &samples)?;
        let q2: Vec<f64> = p.iter().zip(&k1).map(|(a, b)| a + 0.5 * h * b).collect();
        let k2 = field(t + 0.5 * h, &q2, k, &samples)?;
        let q3: Vec<f64> = p.iter().zip(&k2).map(|(a, b)| a + 0.5 * h * b).collect();
        let k3 = field(t + 0.5 * h, &q3, k, &samples)?;
        let q4: Vec<f64> = p.iter().zip(&k3).map(|(a, b)| a + h * b).collect();
        let k4 = field(t + h, &q4, k, &samples)?;
        let next: Vec<f64> = (0..p.len())
            .map(|i| p[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
            .collect();
        let chord: Vec<f64> = p.iter().zip(&next).map(|(a, b)| (b - a) / h).collect();
        for row in dist.covectors_at(&p) {
            max_residual = max_residual.max(dot(&row, &chord).abs());
        }
        samples.push(next.clone());
        p = next;
    }
    Ok(NumPath {
        samples,
        step: h,
        max_residual,
        controls: schedule,
    })
}

/// Max over path samples of |F(p) − F(p0)|: the escape of a candidate
/// invariant. For an exact form dF in the system this is pure integration
/// drift and stays at the scheme's accuracy floor.
pub fn drift(f: &RealPoly, path: &NumPath) -> f64 {
    let f0 = f.eval(&path.samples[0]);
    path.samples
        .iter()
        .map(|p| (f.eval(p) - f0).abs())
        .fold(0.0, f64::max)
}

#[derive(Clone, Debug)]
pub struct ReachConfig {
    pub n: usize,
    pub radius: f64,
    pub seed: u64,
    /// Integration step.
    pub step: f64,
    /// Piecewise-constant control segments per horizon.
    pub segments: usize,
    /// Candidate invariant to report escape for.
    pub invariant: Option<RealPoly>,
}

impl ReachConfig {
    pub fn new(n: usize, radius: f64, seed: u64) -> Self {
        ReachConfig {
            n,
            radius,
            seed,
            step: 1e-3,
            segments: 16,
            invariant: None,
        }
    }

    pub fn with_invariant(mut self, f: RealPoly) -> Self {
        self.invariant = Some(f);
        self
    }

    fn validate(&self, dist: &NumDist, p0: &[f64]) -> Result<()> {
        if self.n < 1 {
            return Err(Error::Config("need at least one sample".into()));
        }
        if !(self.radius > 0.0) {
            return Err(Error::Config("radius must be positive".into()));
        }
        if self.segments < 1 {
            return Err(Error::Config("need at least one control segment".into()));
        }
        if p0.len() != dist.dim() {
            return Err(Error::Dimension(format!(
                "start point has {} coordinates, distribution lives in {}",
                p0.len(),
                dist.dim()
            )));
        }
        Ok(())
    }
}

/// Endpoint cloud plus the two dichotomy measurements: transversal escape
/// of the candidate invariant and the Euclidean spread of the cloud.
#[derive(Clone, Debug)]
pub struct ReachSummary {
    /// Endpoints of successful samples, in sample-index order.
    pub endpoints: Vec<Vec<f64>>,
    /// (sample index, diagnostic) for samples that hit a singular point.
    pub skipped: Vec<(usize, String)>,
    pub invariant_start: Option<f64>,
    /// max |F(endpoint) − F(p0)| when an invariant was supplied.
    pub escape: Option<f64>,
    /// max ‖endpoint − p0‖₂: travel within (and across) leaves.
    pub spread: f64,
    /// Worst per-path discrete tangency residual.
    pub max_residual: f64,
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Per-sample generator seed, derived only from (seed, index) so results
/// do not depend on evaluation order.
fn sample_seed(seed: u64, idx: usize) -> u64 {
    splitmix64(seed ^ (idx as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn run_one_sample(
    dist: &NumDist,
    p0: &[f64],
    cfg: &ReachConfig,
    idx: usize,
) -> Result<(Vec<f64>, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(sample_seed(cfg.seed, idx));
    let horizon = cfg.radius;
    let velocities: Vec<Vec<f64>> = (0..cfg.segments)
        .map(|_| {
            (0..dist.dim())
                .map(|_| rng.gen::<f64>() * 2.0 - 1.0)
                .collect()
        })
        .collect();
    let schedule = Schedule::Piecewise {
        velocities,
        horizon,
    };
    let path = integrate_tangent(dist, p0, schedule, cfg.step, horizon)?;
    Ok((path.endpoint().to_vec(), path.max_residual))
}

fn summarize(
    results: Vec<(usize, Result<(Vec<f64>, f64)>)>,
    p0: &[f64],
    cfg: &ReachConfig,
) -> ReachSummary {
    let mut endpoints = Vec::new();
    let mut skipped = Vec::new();
    let mut max_residual: f64 = 0.0;
    for (idx, r) in results {
        match r {
            Ok((end, resid)) => {
                endpoints.push(end);
                max_residual = max_residual.max(resid);
            }
            Err(e) => skipped.push((idx, e.to_string())),
        }
    }
    let invariant_start = cfg.invariant.as_ref().map(|f| f.eval(p0));
    let escape = cfg.invariant.as_ref().map(|f| {
        let f0 = f.eval(p0);
        endpoints
            .iter()
            .map(|e| (f.eval(e) - f0).abs())
            .fold(0.0, f64::max)
    });
    let spread = endpoints
        .iter()
        .map(|e| {
            e.iter()
                .zip(p0)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt()
        })
        .fold(0.0, f64::max);
    ReachSummary {
        endpoints,
        skipped,
        invariant_start,
        escape,
        spread,
        max_residual,
    }
}

/// Samples `cfg.n` endpoints of randomized kernel-constrained paths from
/// `p0`: piecewise-constant velocities resampled every 1/segments of the
/// horizon, projected onto the kernel, integrated for total time equal to
/// `cfg.radius`. Deterministic per seed; with the `parallel` feature the
/// samples are evaluated concurrently with identical results.
pub fn reach_sample(dist: &NumDist, p0: &[f64], cfg: &ReachConfig) -> Result<ReachSummary> {
    cfg.validate(dist, p0)?;
    #[cfg(feature = "parallel")]
    let results: Vec<(usize, Result<(Vec<f64>, f64)>)> = {
        use rayon::prelude::*;
        (0..cfg.n)
            .into_par_iter()
            .map(|idx| (idx, run_one_sample(dist, p0, cfg, idx)))
            .collect()
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<(usize, Result<(Vec<f64>, f64)>)> = (0..cfg.n)
        .map(|idx| (idx, run_one_sample(dist, p0, cfg, idx)))
        .collect();
    Ok(summarize(results, p0, cfg))
}

/// Sequential evaluation of the same sampling; bit-identical to
/// [`reach_sample`] and kept as the comparison baseline for benchmarks.
pub fn reach_sample_seq(dist: &NumDist, p0: &[f64], cfg: &ReachConfig) -> Result<ReachSummary> {
    cfg.validate(dist, p0)?;
    let results: Vec<(usize, Result<(Vec<f64>, f64)>)> = (0..cfg.n)
        .map(|idx| (idx, run_one_sample(dist, p0, cfg, idx)))
        .collect();
    Ok(summarize(results, p0, cfg))
}
