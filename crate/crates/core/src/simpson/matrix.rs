//! Small dense matrices over `A` (or `A′`).

use crate::error::{precondition, Result};
use crate::ring::RingDescriptor;
use crate::twisted::AElem;

pub type AMatrix = Vec<Vec<AElem>>;

pub fn zero_matrix(ring: RingDescriptor, r: usize) -> AMatrix {
    vec![vec![AElem::zero(ring); r]; r]
}

pub fn identity(ring: RingDescriptor, r: usize) -> AMatrix {
    let mut m = zero_matrix(ring, r);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = AElem::one(ring);
    }
    m
}

pub fn mat_mul(a: &AMatrix, b: &AMatrix) -> AMatrix {
    let n = a.len();
    let ring = a.first().and_then(|r| r.first()).map(AElem::ring).unwrap_or(RingDescriptor::GenericZt);
    let mut out = zero_matrix(ring, n);
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] = &out[i][j] + &(&a[i][k] * &b[k][j]);
                }
            }
        }
    }
    out
}

pub fn mat_sub(a: &AMatrix, b: &AMatrix) -> AMatrix {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect()
}

pub fn mat_map(a: &AMatrix, f: impl Fn(&AElem) -> AElem) -> AMatrix {
    a.iter().map(|r| r.iter().map(&f).collect()).collect()
}

pub fn is_zero_matrix(a: &AMatrix) -> bool {
    a.iter().flatten().all(AElem::is_zero)
}

fn minor(a: &AMatrix, skip_row: usize, skip_col: usize) -> AMatrix {
    a.iter()
        .enumerate()
        .filter(|(i, _)| *i != skip_row)
        .map(|(_, r)| r.iter().enumerate().filter(|(j, _)| *j != skip_col).map(|(_, c)| c.clone()).collect())
        .collect()
}

/// Laplace expansion; meant for the small ranks used here.
pub fn det(a: &AMatrix) -> AElem {
    match a.len() {
        0 => unreachable!("empty matrix"),
        1 => a[0][0].clone(),
        n => {
            let mut acc = AElem::zero(a[0][0].ring());
            for j in 0..n {
                if a[0][j].is_zero() {
                    continue;
                }
                let t = &a[0][j] * &det(&minor(a, 0, j));
                acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
            }
            acc
        }
    }
}

/// The adjugate, so that `adj(a)·a = det(a)·1`.
pub fn adjugate(a: &AMatrix) -> AMatrix {
    let n = a.len();
    let ring = a[0][0].ring();
    if n == 1 {
        return identity(ring, 1);
    }
    let mut out = zero_matrix(ring, n);
    for (i, row) in out.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            let d = det(&minor(a, j, i));
            *slot = if (i + j) % 2 == 0 { d } else { -&d };
        }
    }
    out
}

/// Division with remainder by a polynomial with invertible leading coefficient.
pub fn poly_divrem(a: &AElem, b: &AElem) -> Result<(AElem, AElem)> {
    let ring = a.ring();
    let Some(db) = b.max_exp() else { return precondition("division by zero polynomial") };
    let Some(inv) = b.coeff(db).try_invert() else { return precondition("leading coefficient is not a unit") };
    let mut quo = AElem::zero(ring);
    let mut rem = a.clone();
    while let Some(dr) = rem.max_exp() {
        if dr < db {
            break;
        }
        let t = AElem::monomial(&rem.coeff(dr) * &inv, dr - db);
        rem = &rem - &(&t * b);
        quo = &quo + &t;
    }
    Ok((quo, rem))
}

/// Row echelon form over `K[x]` by Euclidean reduction; zero rows are dropped.
pub fn euclid_echelon(rows: &[Vec<AElem>]) -> Result<Vec<Vec<AElem>>> {
    let mut m: Vec<Vec<AElem>> = rows.iter().filter(|r| r.iter().any(|c| !c.is_zero())).cloned().collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut top = 0;
    for c in 0..ncols {
        loop {
            let live: Vec<usize> = (top..m.len()).filter(|&r| !m[r][c].is_zero()).collect();
            let Some(&best) = live.iter().min_by_key(|&&r| m[r][c].max_exp()) else { break };
            m.swap(top, best);
            if live.len() == 1 {
                top += 1;
                break;
            }
            let piv = m[top].clone();
            for row in m.iter_mut().skip(top + 1) {
                if row[c].is_zero() {
                    continue;
                }
                let (qt, _) = poly_divrem(&row[c], &piv[c])?;
                for (x, y) in row.iter_mut().zip(&piv) {
                    *x = &*x - &(&qt * y);
                }
            }
        }
        if top == m.len() {
            break;
        }
    }
    m.retain(|r| r.iter().any(|c| !c.is_zero()));
    Ok(m)
}
