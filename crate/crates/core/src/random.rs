//! Seeded generators of random polynomials, forms and field configurations
//! for the identity suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeff::{rational, Poly, Rational};
use crate::exterior::{BasisIndex, Form, FrameVector};

pub type SuiteRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SuiteRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small nonzero rational with numerator in `[-5, 5]` and denominator in `[1, 3]`.
pub fn small_rational(rng: &mut impl Rng) -> Rational {
    loop {
        let n: i64 = rng.gen_range(-5..=5);
        if n != 0 {
            return rational(n, rng.gen_range(1..=3));
        }
    }
}

/// Random polynomial of total degree at most `max_degree`, with up to `max_terms`
/// terms, restricted to the coordinates listed in `axes`.
pub fn poly_in(
    rng: &mut impl Rng,
    dim: usize,
    axes: &[usize],
    max_degree: u32,
    max_terms: usize,
) -> Poly {
    let n_terms = rng.gen_range(1..=max_terms);
    let terms = (0..n_terms).map(|_| {
        let mut exps = vec![0u32; dim];
        let degree = rng.gen_range(0..=max_degree);
        for _ in 0..degree {
            if axes.is_empty() {
                break;
            }
            exps[axes[rng.gen_range(0..axes.len())]] += 1;
        }
        (small_rational(rng), exps)
    });
    Poly::from_terms(dim, terms.collect::<Vec<_>>())
}

pub fn poly(rng: &mut impl Rng, dim: usize, max_degree: u32, max_terms: usize) -> Poly {
    let axes: Vec<usize> = (0..dim).collect();
    poly_in(rng, dim, &axes, max_degree, max_terms)
}

/// Random homogeneous form of degree `p`; each basis element is present with
/// probability one half (at least one is always kept).
pub fn homogeneous_form(rng: &mut impl Rng, dim: usize, p: usize, max_degree: u32) -> Form {
    let axes: Vec<usize> = (0..dim).collect();
    homogeneous_form_in(rng, dim, p, &axes, max_degree)
}

pub fn homogeneous_form_in(
    rng: &mut impl Rng,
    dim: usize,
    p: usize,
    axes: &[usize],
    max_degree: u32,
) -> Form {
    let indices: Vec<BasisIndex> = (0u32..(1 << dim))
        .map(|m| BasisIndex::from_mask(m as u16))
        .filter(|k| k.degree() == p)
        .collect();
    let mut form = Form::zero(dim);
    let forced = rng.gen_range(0..indices.len());
    for (i, k) in indices.iter().enumerate() {
        if i == forced || rng.gen_bool(0.5) {
            form.add_term(*k, poly_in(rng, dim, axes, max_degree, 3));
        }
    }
    form
}

/// Random mixed-degree form: a sum of homogeneous pieces of random degrees.
pub fn mixed_form(rng: &mut impl Rng, dim: usize, max_degree: u32) -> Form {
    let mut form = Form::zero(dim);
    let pieces = rng.gen_range(1..=3);
    for _ in 0..pieces {
        let p = rng.gen_range(0..=dim);
        form = &form + &homogeneous_form(rng, dim, p, max_degree);
    }
    form
}

/// Random constant vector with small integer components, not all zero.
pub fn constant_vector(rng: &mut impl Rng, dim: usize) -> FrameVector {
    loop {
        let v = FrameVector::new(
            (0..dim)
                .map(|_| rational(rng.gen_range(-3..=3), 1))
                .collect(),
        );
        if !v.is_zero() {
            return v;
        }
    }
}

/// Random homogeneous degree `p` form with random degree, uniform in `0..=dim`.
pub fn any_homogeneous(rng: &mut impl Rng, dim: usize, max_degree: u32) -> (usize, Form) {
    let p = rng.gen_range(0..=dim);
    (p, homogeneous_form(rng, dim, p, max_degree))
}
