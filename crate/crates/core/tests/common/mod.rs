#![allow(dead_code)]

use grossone::{normalize, GrossNumber, LinearSystem, Rational};
use num_traits::Zero;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: i64) -> GrossNumber {
    GrossNumber::from_integer(n)
}

pub fn arb_rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=6).prop_map(|(n, d)| q(n, d))
}

pub fn arb_nonzero_rational() -> impl Strategy<Value = Rational> {
    arb_rational().prop_filter("nonzero", |r| !r.is_zero())
}

/// Finite grosspowers, mostly integers, sometimes fractional.
pub fn arb_rational_power() -> impl Strategy<Value = GrossNumber> {
    prop_oneof![
        4 => (-4i64..=4).prop_map(int),
        1 => (-12i64..=12, 1i64..=4).prop_map(|(n, d)| GrossNumber::from_rational(q(n, d))),
    ]
}

/// Grosspowers of depth at most 1: rationals or `a·① + c`.
pub fn arb_power() -> impl Strategy<Value = GrossNumber> {
    prop_oneof![
        5 => arb_rational_power(),
        1 => ((-3i64..=3).prop_filter("nonzero", |a| *a != 0), -3i64..=3)
            .prop_map(|(a, c)| &(&int(a) * &GrossNumber::grossone()) + &int(c)),
    ]
}

fn from_pairs(pairs: Vec<(Rational, GrossNumber)>) -> GrossNumber {
    normalize(pairs).expect("generated grosspowers have depth at most 1")
}

/// Numerals with up to four terms, including infinite grosspowers.
pub fn arb_gross() -> impl Strategy<Value = GrossNumber> {
    prop::collection::vec((arb_rational(), arb_power()), 0..=4).prop_map(from_pairs)
}

/// Numerals whose grosspowers are all integers: a Laurent polynomial in ①.
pub fn arb_laurent() -> impl Strategy<Value = GrossNumber> {
    prop::collection::vec((arb_rational(), (-4i64..=4).prop_map(int)), 0..=4).prop_map(from_pairs)
}

pub fn arb_nonzero_gross() -> impl Strategy<Value = GrossNumber> {
    arb_gross().prop_filter("nonzero", |g| !g.is_zero())
}

/// Rational elimination with row interchanges, written independently of
/// the library; `None` for a singular matrix.
pub fn reference_solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = b.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| row.iter().cloned().chain([bi.clone()]).collect())
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, p);
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = &row[col] / &pivot_row[col];
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    *v -= &f * p;
                }
            }
        }
    }
    Some((0..n).map(|i| &m[i][n] / &m[i][i]).collect())
}

/// Exact determinant of a small integer matrix by fraction-free elimination.
fn det(a: &[Vec<i64>]) -> i128 {
    let n = a.len();
    let mut m: Vec<Vec<i128>> = a
        .iter()
        .map(|r| r.iter().map(|&v| v.into()).collect())
        .collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| m[r][k] != 0) else {
            return 0;
        };
        if p != k {
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * prev
}

/// Leading principal minors that vanish, i.e. zero pivots met by elimination
/// without row interchanges before any perturbation.
pub fn zero_leading_minors(a: &[Vec<i64>]) -> usize {
    (1..=a.len())
        .filter(|&k| {
            let block: Vec<Vec<i64>> = a[..k].iter().map(|r| r[..k].to_vec()).collect();
            det(&block) == 0
        })
        .count()
}

/// A nonsingular integer system of size 2..=8 whose rows are permuted so that
/// exactly `zeros` leading principal minors vanish.
pub fn random_system<R: Rng>(rng: &mut R, zeros: usize) -> LinearSystem {
    loop {
        let n = rng.gen_range(2..=8);
        let a: Vec<Vec<i64>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        if rng.gen_bool(0.35) {
                            0
                        } else {
                            rng.gen_range(-5..=5)
                        }
                    })
                    .collect()
            })
            .collect();
        if det(&a) == 0 {
            continue;
        }
        let mut order: Vec<usize> = (0..n).collect();
        for _ in 0..400 {
            order.shuffle(rng);
            let rows: Vec<Vec<i64>> = order.iter().map(|&i| a[i].clone()).collect();
            if zero_leading_minors(&rows) == zeros {
                let b: Vec<i64> = (0..n).map(|_| rng.gen_range(-9..=9)).collect();
                return LinearSystem::from_integers(&rows, &b).expect("square by construction");
            }
        }
    }
}
