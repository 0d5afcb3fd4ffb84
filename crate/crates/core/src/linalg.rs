//! Exact kernels.
//!
//! Rows are scaled to integers and reduced by fraction-free (Bareiss)
//! elimination; only the final back substitution touches rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::{Poly, RatFunc, Rational, Ring};

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    row.iter().map(|r| r.numer() * (&l / r.denom())).collect()
}

/// Row echelon form by fraction-free elimination; returns the reduced
/// matrix and its pivot columns.
fn bareiss(mut m: Vec<Vec<BigInt>>, ncols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut row = 0;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        let Some(p) = (row..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        for r in (row + 1)..nrows {
            for c in (col + 1)..ncols {
                let v = &m[row][col] * &m[r][c] - &m[r][col] * &m[row][c];
                m[r][c] = v / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[row][col].clone();
        pivots.push(col);
        row += 1;
    }
    m.truncate(row);
    (m, pivots)
}

/// Basis of `{x : M x = 0}` for a matrix given by rows of length `ncols`.
///
/// One basis vector per free column, with a 1 in that column and 0 in the
/// other free columns.
pub fn kernel(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let ints: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), ncols, "ragged matrix");
            integer_row(r)
        })
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    let (ech, pivots) = bareiss(ints, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rational::zero(); ncols];
            x[f] = Rational::one();
            for (i, &pc) in pivots.iter().enumerate().rev() {
                let mut s = Rational::zero();
                for c in (pc + 1)..ncols {
                    if !ech[i][c].is_zero() && !x[c].is_zero() {
                        s = s + Rational::from_bigint(ech[i][c].clone()) * x[c].clone();
                    }
                }
                x[pc] = -s / Rational::from_bigint(ech[i][pc].clone());
            }
            x
        })
        .collect()
}

pub fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    ncols - kernel(rows, ncols).len()
}

/// All rational linear relations `Σ c_i f_i = 0` among rational functions,
/// by clearing denominators and equating coefficients of `t`.
pub fn ratfunc_relations(funcs: &[RatFunc]) -> Vec<Vec<Rational>> {
    let den = funcs.iter().fold(Poly::<Rational>::one(), |acc, f| {
        let g = acc.gcd(f.denom());
        acc.clone() * f.denom().div_exact(&g)
    });
    let polys: Vec<Poly<Rational>> = funcs
        .iter()
        .map(|f| f.numer().clone() * den.div_exact(f.denom()))
        .collect();
    let height = polys.iter().filter_map(|p| p.degree()).max().map_or(0, |d| d + 1);
    let rows: Vec<Vec<Rational>> = (0..height)
        .map(|k| polys.iter().map(|p| p.coeff(k)).collect())
        .collect();
    kernel(&rows, funcs.len())
}

/// Scale to coprime integers with a positive first nonzero entry.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    let ints = integer_row(v);
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    let sign = match ints.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    ints.iter().map(|x| x / &g * &sign).collect()
}

/// Solve `M x = b` when the solution is unique.
pub fn solve_unique(rows: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let n = rows.first()?.len();
    let augmented: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| r.iter().cloned().chain(std::iter::once(-b.clone())).collect())
        .collect();
    let ker = kernel(&augmented, n + 1);
    if ker.len() != 1 || ker[0][n].is_zero() {
        return None;
    }
    let last = ker[0][n].clone();
    Some(ker[0][..n].iter().map(|x| x.clone() / last.clone()).collect())
}

/// `true` when `x` is a rational linear combination `Σ c_i basis_i`.
pub fn in_span(basis: &[Vec<Rational>], x: &[Rational]) -> bool {
    let n = x.len();
    let rows: Vec<Vec<Rational>> = (0..n)
        .map(|k| basis.iter().map(|b| b[k].clone()).chain(std::iter::once(x[k].clone())).collect())
        .collect();
    let with = rank(&rows, basis.len() + 1);
    let without_rows: Vec<Vec<Rational>> = rows.iter().map(|r| r[..basis.len()].to_vec()).collect();
    with == rank(&without_rows, basis.len())
}
