//! Seeded generators of random scalars, polynomials, forms, fields and
//! maps, shared by the randomized identity suites.

use rand::Rng;

use crate::form::KForm;
use crate::map::PolyMap;
use crate::poly::{Monomial, Poly};
use crate::scalar::CScalar;
use crate::space::VarSpace;
use crate::vfield::VField;

/// Small Gaussian rational: numerators in [−6, 6], denominators in [1, 4].
pub fn scalar<R: Rng>(rng: &mut R) -> CScalar {
    let re = CScalar::from_ratio(rng.gen_range(-6..=6), rng.gen_range(1..=4));
    let im = CScalar::from_ratio(rng.gen_range(-6..=6), rng.gen_range(1..=4));
    &re + &(&im * &CScalar::i())
}

pub fn nonzero_scalar<R: Rng>(rng: &mut R) -> CScalar {
    loop {
        let s = scalar(rng);
        if !s.is_zero() {
            return s;
        }
    }
}

pub fn point<R: Rng>(rng: &mut R, dim: usize) -> Vec<CScalar> {
    (0..dim).map(|_| scalar(rng)).collect()
}

fn monomial<R: Rng>(rng: &mut R, dim: usize, max_degree: u32) -> Monomial {
    let degree = rng.gen_range(0..=max_degree);
    let mut exps = vec![0u32; dim];
    for _ in 0..degree {
        exps[rng.gen_range(0..dim)] += 1;
    }
    Monomial(exps)
}

pub fn poly<R: Rng>(rng: &mut R, space: &VarSpace, max_degree: u32, max_terms: usize) -> Poly {
    let n_terms = rng.gen_range(0..=max_terms);
    Poly::from_terms(
        space,
        (0..n_terms).map(|_| (monomial(rng, space.dim(), max_degree), scalar(rng))),
    )
}

pub fn nonzero_poly<R: Rng>(
    rng: &mut R,
    space: &VarSpace,
    max_degree: u32,
    max_terms: usize,
) -> Poly {
    loop {
        let p = poly(rng, space, max_degree, max_terms.max(1));
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn kform<R: Rng>(
    rng: &mut R,
    space: &VarSpace,
    degree: usize,
    max_poly_degree: u32,
) -> KForm {
    if degree > space.dim() {
        return KForm::zero(space, degree);
    }
    let mut out = KForm::zero(space, degree);
    let n_terms = rng.gen_range(0..=3);
    for _ in 0..n_terms {
        let mut idx: Vec<u8> = (0..space.dim() as u8).collect();
        for k in 0..degree {
            let swap = rng.gen_range(k..idx.len());
            idx.swap(k, swap);
        }
        let mut tuple: Vec<u8> = idx[..degree].to_vec();
        tuple.sort_unstable();
        out.add_at(tuple, poly(rng, space, max_poly_degree, 2));
    }
    out
}

pub fn nonzero_one_form<R: Rng>(rng: &mut R, space: &VarSpace, max_poly_degree: u32) -> KForm {
    loop {
        let f = kform(rng, space, 1, max_poly_degree);
        if !f.is_zero() {
            return f;
        }
    }
}

pub fn vfield<R: Rng>(rng: &mut R, space: &VarSpace, max_degree: u32) -> VField {
    let comps = (0..space.dim())
        .map(|_| poly(rng, space, max_degree, 2))
        .collect();
    VField::new(space, comps).expect("component count matches by construction")
}

/// Random polynomial map with components of degree at most `max_degree`.
pub fn polymap<R: Rng>(
    rng: &mut R,
    source: &VarSpace,
    target: &VarSpace,
    max_degree: u32,
) -> PolyMap {
    let comps = (0..target.dim())
        .map(|_| poly(rng, source, max_degree, 3))
        .collect();
    PolyMap::new(source, target, comps).expect("component count matches by construction")
}

/// Random invertible linear map, rejection-sampled on the exact
/// determinant.
pub fn invertible_linear_map<R: Rng>(rng: &mut R, space: &VarSpace) -> PolyMap {
    let n = space.dim();
    loop {
        let entries: Vec<Vec<CScalar>> = (0..n)
            .map(|_| (0..n).map(|_| scalar(rng)).collect())
            .collect();
        if det(&entries).is_zero() {
            continue;
        }
        let comps = (0..n)
            .map(|row| {
                let mut acc = Poly::zero(space);
                for (col, e) in entries[row].iter().enumerate() {
                    acc = &acc + &Poly::var(space, col).scale(e);
                }
                acc
            })
            .collect();
        return PolyMap::new(space, space, comps).expect("square linear map");
    }
}

/// Exact determinant by Laplace expansion; the matrices here are at most
/// 5×5.
fn det(m: &[Vec<CScalar>]) -> CScalar {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = CScalar::zero();
    for col in 0..n {
        if m[0][col].is_zero() {
            continue;
        }
        let minor: Vec<Vec<CScalar>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != col)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let cofactor = &m[0][col] * &det(&minor);
        if col % 2 == 0 {
            acc = &acc + &cofactor;
        } else {
            acc = &acc - &cofactor;
        }
    }
    acc
}
