//! Square linear systems solved without row interchanges.
//!
//! Whenever elimination meets an exactly zero pivot, the pivot is replaced by
//! ①⁻¹ and elimination simply continues. Each such injection raises the
//! truncation depth `z`; pivot-row divisions keep quotient terms down to
//! grosspower `-z` only. The answer to the original system is the vector of
//! finite parts. [`solve_exact_oracle`] solves the same system by ordinary
//! rational elimination with row interchanges and serves as a cross-check.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::division::{divide, divide_exact};
use crate::error::{Error, Result};
use crate::io::{parse_digit, print_canonical, print_rational};
use crate::number::{GrossNumber, Rational};

/// `A·x = b` with a square rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem {
    a: Vec<Vec<Rational>>,
    b: Vec<Rational>,
}

impl LinearSystem {
    pub fn new(a: Vec<Vec<Rational>>, b: Vec<Rational>) -> Result<Self> {
        let n = b.len();
        if a.len() != n {
            return Err(Error::Schema(format!(
                "matrix has {} rows but right-hand side has {n} entries",
                a.len()
            )));
        }
        if let Some((i, row)) = a.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::Schema(format!(
                "row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        Ok(LinearSystem { a, b })
    }

    /// Convenience constructor from integer entries.
    pub fn from_integers(a: &[Vec<i64>], b: &[i64]) -> Result<Self> {
        let int = |v: &i64| Rational::from_integer((*v).into());
        Self::new(
            a.iter().map(|row| row.iter().map(int).collect()).collect(),
            b.iter().map(int).collect(),
        )
    }

    /// Reads the `{"A": [[...]], "b": [...]}` file format, entries being
    /// decimal or rational literals.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: SystemFile =
            serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        let cell =
            |s: &String| parse_digit(s).map_err(|e| Error::Schema(format!("entry {s:?}: {e}")));
        let a = raw
            .a
            .iter()
            .map(|row| row.iter().map(cell).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let b = raw.b.iter().map(cell).collect::<Result<Vec<_>>>()?;
        Self::new(a, b)
    }

    pub fn to_json(&self) -> String {
        let file = SystemFile {
            a: self
                .a
                .iter()
                .map(|row| row.iter().map(print_rational).collect())
                .collect(),
            b: self.b.iter().map(print_rational).collect(),
        };
        serde_json::to_string(&file).expect("plain strings serialize")
    }

    pub fn dim(&self) -> usize {
        self.b.len()
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.a
    }

    pub fn rhs(&self) -> &[Rational] {
        &self.b
    }

    /// `A·x - b` for a numeral-valued `x`.
    pub fn residual(&self, x: &[GrossNumber]) -> Vec<GrossNumber> {
        self.a
            .iter()
            .zip(&self.b)
            .map(|(row, bi)| {
                let ax: GrossNumber = row
                    .iter()
                    .zip(x)
                    .map(|(aij, xj)| xj * &GrossNumber::from_rational(aij.clone()))
                    .sum();
                &ax - &GrossNumber::from_rational(bi.clone())
            })
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
struct SystemFile {
    #[serde(rename = "A")]
    a: Vec<Vec<String>>,
    b: Vec<String>,
}

/// Which elimination produced a [`SolveReport`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveMethod {
    /// Gauss–Jordan with pivot-row divisions truncated at grosspower `-z`.
    Truncated,
    /// Fraction-free elimination with exact intermediate values, used when
    /// the truncated run fails its residual check.
    FractionFree,
}

impl SolveMethod {
    pub fn name(self) -> &'static str {
        match self {
            SolveMethod::Truncated => "truncated",
            SolveMethod::FractionFree => "fraction-free",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveReport {
    /// Truncated numeral solution of the perturbed system.
    pub solution: Vec<GrossNumber>,
    /// Finite parts of `solution`: the solution of the original system.
    pub finite_solution: Vec<Rational>,
    /// Rows whose pivot was replaced by ①⁻¹, in elimination order.
    pub injected_pivots: Vec<usize>,
    /// Leading grosspower of `A·solution - b`; `None` when the residual is zero.
    pub residual_leading_power: Option<GrossNumber>,
    pub method: SolveMethod,
}

impl SolveReport {
    /// Number of injected infinitesimal pivots.
    pub fn z(&self) -> usize {
        self.injected_pivots.len()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "solution": self.solution.iter().map(print_canonical).collect::<Vec<_>>(),
            "finite_solution": self.finite_solution.iter().map(print_rational).collect::<Vec<_>>(),
            "z": self.z(),
            "injected_pivot_rows": self.injected_pivots,
            "residual_leading_power": match &self.residual_leading_power {
                Some(p) => print_canonical(p),
                None => "zero".to_string(),
            },
            "method": self.method.name(),
        })
    }
}

/// Solves `A·x = b` without row interchanges.
///
/// The truncated Gauss–Jordan run is tried first. `A` is rational, so the
/// finite part of `A·x - b` equals `A·fin(x) - b`, and a residual without a
/// finite or infinite part certifies `fin(x)` exactly. Truncation can leave a
/// spurious infinitesimal where the exact pivot vanishes, in which case the
/// certificate fails, or an infinite part appears, and the fraction-free run
/// with the same injection rule answers instead.
pub fn solve_grossone(sys: &LinearSystem) -> Result<SolveReport> {
    let truncated = truncated_elimination(sys)
        .and_then(|(solution, injected)| finish(sys, solution, injected, SolveMethod::Truncated));
    if let Ok(report) = truncated {
        let certified = report
            .residual_leading_power
            .as_ref()
            .is_none_or(|p| p.is_negative());
        if certified {
            return Ok(report);
        }
    }
    let (solution, injected) = fraction_free_elimination(sys)?;
    finish(sys, solution, injected, SolveMethod::FractionFree)
}

fn augmented(sys: &LinearSystem) -> Vec<Vec<GrossNumber>> {
    sys.a
        .iter()
        .zip(&sys.b)
        .map(|(row, bi)| {
            row.iter()
                .chain(std::iter::once(bi))
                .map(|v| GrossNumber::from_rational(v.clone()))
                .collect()
        })
        .collect()
}

fn truncated_elimination(sys: &LinearSystem) -> Result<(Vec<GrossNumber>, Vec<usize>)> {
    let n = sys.dim();
    let mut m = augmented(sys);
    let mut injected = Vec::new();
    for k in 0..n {
        if m[k][k].is_zero() {
            m[k][k] = GrossNumber::grossone_pow(-1);
            injected.push(k);
        }
        let pivot = std::mem::replace(&mut m[k][k], GrossNumber::one());
        if !pivot.is_one() {
            // the cutoff follows the number of injections made so far
            let min_power = GrossNumber::from_integer(-(injected.len() as i64));
            for v in m[k][k + 1..].iter_mut().filter(|v| !v.is_zero()) {
                *v = divide(v, &pivot, &min_power)?.quotient;
            }
        }
        let (upper, lower) = m.split_at_mut(k + 1);
        let pivot_row = &upper[k];
        for row in lower.iter_mut() {
            let factor = std::mem::take(&mut row[k]);
            if factor.is_zero() {
                continue;
            }
            for j in k + 1..=n {
                if !pivot_row[j].is_zero() {
                    row[j] = &row[j] - &(&factor * &pivot_row[j]);
                }
            }
        }
    }

    // rows are unit upper triangular now
    let mut solution = vec![GrossNumber::zero(); n];
    for k in (0..n).rev() {
        let mut xk = m[k][n].clone();
        for j in k + 1..n {
            if !m[k][j].is_zero() {
                xk = &xk - &(&m[k][j] * &solution[j]);
            }
        }
        solution[k] = xk;
    }
    Ok((solution, injected))
}

/// Bareiss elimination on the perturbed matrix. Entry `(i, j)` after step `k`
/// is the minor on rows `0..=k, i` and columns `0..=k, j`, so every division
/// is exact. Adding ①⁻¹ to `A[k][k]` adds ①⁻¹ times the previous pivot to the
/// current one and changes no other entry.
fn fraction_free_elimination(sys: &LinearSystem) -> Result<(Vec<GrossNumber>, Vec<usize>)> {
    let n = sys.dim();
    let mut m = augmented(sys);
    let mut injected = Vec::new();
    let mut prev = GrossNumber::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            m[k][k] = prev.mul_monomial(&Rational::one(), &GrossNumber::from_integer(-1));
            injected.push(k);
        }
        let (upper, lower) = m.split_at_mut(k + 1);
        let pivot_row = &upper[k];
        for row in lower.iter_mut() {
            let factor = std::mem::take(&mut row[k]);
            for j in k + 1..=n {
                let v = &(&pivot_row[k] * &row[j]) - &(&factor * &pivot_row[j]);
                row[j] = exact_quotient(&v, &prev)?;
            }
        }
        prev = m[k][k].clone();
    }

    // y = det·x solves the scaled triangular system exactly
    let det = prev;
    let mut y = vec![GrossNumber::zero(); n];
    for k in (0..n).rev() {
        let mut v = &det * &m[k][n];
        for j in k + 1..n {
            v = &v - &(&m[k][j] * &y[j]);
        }
        y[k] = exact_quotient(&v, &m[k][k])?;
    }
    let min_power = GrossNumber::from_integer(-(injected.len() as i64));
    let solution = y
        .iter()
        .map(|yk| Ok(divide(yk, &det, &min_power)?.quotient))
        .collect::<Result<Vec<_>>>()?;
    Ok((solution, injected))
}

fn exact_quotient(v: &GrossNumber, d: &GrossNumber) -> Result<GrossNumber> {
    divide_exact(v, d)?.ok_or_else(|| {
        Error::SingularSystem("fraction-free elimination met an inexact quotient".into())
    })
}

fn finish(
    sys: &LinearSystem,
    solution: Vec<GrossNumber>,
    injected: Vec<usize>,
    method: SolveMethod,
) -> Result<SolveReport> {
    if let Some(i) = solution.iter().position(|x| !x.is_finite()) {
        return Err(Error::SingularSystem(format!(
            "component {i} keeps an infinite part {}",
            print_canonical(&solution[i].infinite_part())
        )));
    }
    let finite_solution = solution.iter().map(|x| x.finite_part()).collect();
    let residual_leading_power = sys
        .residual(&solution)
        .iter()
        .filter_map(|r| r.leading_power().cloned())
        .max();
    Ok(SolveReport {
        solution,
        finite_solution,
        injected_pivots: injected,
        residual_leading_power,
        method,
    })
}

/// Plain rational Gauss elimination with row interchange on a zero pivot.
pub fn solve_exact_oracle(sys: &LinearSystem) -> Result<Vec<Rational>> {
    let n = sys.dim();
    let mut m: Vec<Vec<Rational>> = sys
        .a
        .iter()
        .zip(&sys.b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for k in 0..n {
        let p = (k..n)
            .find(|&i| !m[i][k].is_zero())
            .ok_or_else(|| Error::SingularSystem(format!("no nonzero pivot in column {k}")))?;
        m.swap(k, p);
        let pivot = m[k][k].clone();
        for v in &mut m[k][k..] {
            *v /= &pivot;
        }
        let (upper, lower) = m.split_at_mut(k + 1);
        for row in lower.iter_mut() {
            let factor = row[k].clone();
            if factor.is_zero() {
                continue;
            }
            for (v, p) in row[k..].iter_mut().zip(&upper[k][k..]) {
                *v -= &factor * p;
            }
        }
    }
    let mut x = vec![Rational::zero(); n];
    for k in (0..n).rev() {
        let mut v = m[k][n].clone();
        for j in k + 1..n {
            v -= &m[k][j] * &x[j];
        }
        debug_assert!(m[k][k].is_one());
        x[k] = v;
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn gp(n: i64) -> GrossNumber {
        GrossNumber::grossone_pow(n)
    }

    #[test]
    fn two_by_two_with_zero_pivot() {
        let sys = LinearSystem::from_integers(&[vec![0, 1], vec![2, 2]], &[2, 2]).unwrap();
        let r = solve_grossone(&sys).unwrap();
        assert_eq!(r.finite_solution, vec![q(-1), q(2)]);
        assert_eq!(r.z(), 1);
        assert_eq!(r.injected_pivots, vec![0]);
        assert_eq!(r.solution[0], GrossNumber::from_integer(-1));
        assert_eq!(r.solution[1], &GrossNumber::from_integer(2) + &gp(-1));
        assert_eq!(
            r.residual_leading_power,
            Some(GrossNumber::from_integer(-1))
        );
    }

    #[test]
    fn three_by_three_with_two_zero_pivots() {
        let sys = LinearSystem::from_integers(
            &[vec![0, 0, 1], vec![2, 0, -1], vec![1, 2, 3]],
            &[1, 3, 1],
        )
        .unwrap();
        let r = solve_grossone(&sys).unwrap();
        assert_eq!(r.finite_solution, vec![q(2), q(-2), q(1)]);
        assert_eq!(r.z(), 2);
        assert_eq!(r.injected_pivots, vec![0, 1]);
        assert_eq!(r.solution[0], GrossNumber::from_integer(2));
        assert_eq!(r.solution[1], GrossNumber::from_integer(-2));
        assert_eq!(
            r.solution[2],
            &GrossNumber::from_integer(1) - &(&GrossNumber::from_integer(2) * &gp(-1))
        );
    }

    fn assert_matches_oracle(a: &[Vec<i64>], b: &[i64], expected: &[&str]) {
        let sys = LinearSystem::from_integers(a, b).unwrap();
        let oracle = solve_exact_oracle(&sys).unwrap();
        let expected: Vec<Rational> = expected.iter().map(|s| parse_digit(s).unwrap()).collect();
        assert_eq!(oracle, expected);
        let r = solve_grossone(&sys).unwrap();
        assert_eq!(r.finite_solution, expected);
        assert!(r.residual_leading_power.is_none_or(|p| p.is_negative()));
    }

    #[test]
    fn spurious_infinitesimal_pivots_fall_back() {
        assert_matches_oracle(
            &[
                vec![0, 4, 0, -2, 0, -1],
                vec![1, 0, 0, -5, -2, -4],
                vec![-3, 1, 4, 3, 0, 0],
                vec![0, 0, -3, 0, 0, 2],
                vec![0, 0, -4, 0, 0, -3],
                vec![4, 5, 1, 0, 4, 0],
            ],
            &[-8, 6, -3, 6, 9, -2],
            &[
                "-8813/102",
                "-38",
                "-36/17",
                "-2445/34",
                "13661/102",
                "-3/17",
            ],
        );
        assert_matches_oracle(
            &[
                vec![0, 0, -1, 0, 1, 0],
                vec![-5, 0, 0, 2, -3, 0],
                vec![0, -3, 0, 2, -4, -2],
                vec![-5, 0, -2, 0, 2, 4],
                vec![-1, 0, 0, 0, 0, -3],
                vec![1, -3, -3, 5, 1, 0],
            ],
            &[2, 6, 4, -1, 2, 4],
            &[
                "7/19",
                "656/247",
                "-1123/247",
                "25/247",
                "-629/247",
                "-15/19",
            ],
        );
    }

    #[test]
    fn spurious_infinite_parts_fall_back() {
        let cases = [
            (
                r#"{"A":[["0","-4","3","-5","4"],["5","0","4","1","-1"],["1","1","1","0","1"],["4","4","4","0","0"],["-5","-2","-1","-3","4"]],"b":["-5","-9","7","-2","-5"]}"#,
                vec!["515/53", "99/53", "-1281/106", "-185/106", "15/2"],
            ),
            (
                r#"{"A":[["0","4","-4","-2","0","4","-5","5"],["2","0","1","-5","-2","-1","0","-1"],["0","5","0","0","-1","0","4","-3"],["0","3","0","0","5","0","-3","-4"],["5","2","-4","0","-4","0","0","0"],["-4","1","0","4","1","0","-4","5"],["2","4","0","1","0","0","0","-1"],["0","0","0","0","0","0","-1","-2"]],"b":["0","2","-3","7","-2","7","-3","0"]}"#,
                vec![
                    "-14407/10030",
                    "1573/5015",
                    "-89219/40120",
                    "-5342/5015",
                    "5442/5015",
                    "-170811/40120",
                    "-3176/5015",
                    "1588/5015",
                ],
            ),
        ];
        for (json, expected) in cases {
            let sys = LinearSystem::from_json(json).unwrap();
            let expected: Vec<Rational> =
                expected.iter().map(|s| parse_digit(s).unwrap()).collect();
            assert_eq!(solve_exact_oracle(&sys).unwrap(), expected);
            let r = solve_grossone(&sys).unwrap();
            assert_eq!(r.method, SolveMethod::FractionFree);
            assert_eq!(r.finite_solution, expected);
        }
    }

    #[test]
    fn fraction_free_agrees_on_worked_systems() {
        let sys = LinearSystem::from_integers(&[vec![0, 1], vec![2, 2]], &[2, 2]).unwrap();
        let (x, injected) = fraction_free_elimination(&sys).unwrap();
        assert_eq!(injected, vec![0]);
        // x1 = -1 - ①⁻¹ - ..., x2 = 2 + ①⁻¹ + ... cut at ①⁻¹
        assert_eq!(x[0], &GrossNumber::from_integer(-1) - &gp(-1));
        assert_eq!(x[1], &GrossNumber::from_integer(2) + &gp(-1));
        let sys = LinearSystem::from_integers(
            &[vec![0, 0, 1], vec![2, 0, -1], vec![1, 2, 3]],
            &[1, 3, 1],
        )
        .unwrap();
        let (x, injected) = fraction_free_elimination(&sys).unwrap();
        assert_eq!(injected, vec![0, 1]);
        let fin: Vec<Rational> = x.iter().map(GrossNumber::finite_part).collect();
        assert_eq!(fin, vec![q(2), q(-2), q(1)]);
    }

    #[test]
    fn identity_needs_no_injection() {
        let sys = LinearSystem::from_integers(&[vec![1, 0], vec![0, 1]], &[5, 7]).unwrap();
        let r = solve_grossone(&sys).unwrap();
        assert_eq!(r.finite_solution, vec![q(5), q(7)]);
        assert_eq!(r.z(), 0);
        assert_eq!(r.residual_leading_power, None);
        assert_eq!(solve_exact_oracle(&sys).unwrap(), vec![q(5), q(7)]);
    }

    #[test]
    fn oracle_pivots_rows() {
        let sys = LinearSystem::from_integers(&[vec![0, 1], vec![2, 2]], &[2, 2]).unwrap();
        assert_eq!(solve_exact_oracle(&sys).unwrap(), vec![q(-1), q(2)]);
    }

    #[test]
    fn singular_systems_are_reported() {
        // inconsistent: x + y = 1, x + y = 2
        let sys = LinearSystem::from_integers(&[vec![1, 1], vec![1, 1]], &[1, 2]).unwrap();
        assert!(matches!(
            solve_grossone(&sys),
            Err(Error::SingularSystem(_))
        ));
        assert!(matches!(
            solve_exact_oracle(&sys),
            Err(Error::SingularSystem(_))
        ));
    }

    #[test]
    fn shape_is_checked() {
        assert!(matches!(
            LinearSystem::from_integers(&[vec![1, 0]], &[1, 2]),
            Err(Error::Schema(_))
        ));
        assert!(matches!(
            LinearSystem::from_integers(&[vec![1], vec![0, 1]], &[1, 2]),
            Err(Error::Schema(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let sys =
            LinearSystem::from_json(r#"{"A": [["0", "1"], ["2", "2.5"]], "b": ["1/3", "2"]}"#)
                .unwrap();
        assert_eq!(sys.matrix()[1][1], Rational::new(5.into(), 2.into()));
        assert_eq!(sys.rhs()[0], Rational::new(1.into(), 3.into()));
        assert_eq!(LinearSystem::from_json(&sys.to_json()).unwrap(), sys);
        assert!(matches!(
            LinearSystem::from_json(r#"{"A": [["x"]], "b": ["1"]}"#),
            Err(Error::Schema(_))
        ));
        assert!(matches!(
            LinearSystem::from_json("[]"),
            Err(Error::Schema(_))
        ));
    }

    #[test]
    fn report_json_shape() {
        let sys = LinearSystem::from_integers(&[vec![0, 1], vec![2, 2]], &[2, 2]).unwrap();
        let v = solve_grossone(&sys).unwrap().to_json();
        assert_eq!(v["finite_solution"], serde_json::json!(["-1", "2"]));
        assert_eq!(v["z"], 1);
        assert_eq!(v["solution"], serde_json::json!(["-1", "2 + 1*G^-1"]));
        assert_eq!(v["residual_leading_power"], "-1");
        assert_eq!(v["method"], "truncated");
    }
}
