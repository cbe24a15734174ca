//! Exact linear algebra over the coefficient rings.
//!
//! Fields use Gauss-Jordan elimination. Domains use fraction-free elimination,
//! so kernels come back as vectors over the ring itself.

use crate::ring::{RingDescriptor, RingElem};

/// A row-reduced matrix together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rows: Vec<Vec<RingElem>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
    ring: RingDescriptor,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Basis of the right kernel.
    pub fn kernel(&self) -> Vec<Vec<RingElem>> {
        let ring = self.ring;
        let field = ring.is_field();
        let free: Vec<usize> = (0..self.ncols).filter(|c| !self.pivots.contains(c)).collect();
        let pivs: Vec<RingElem> = self.pivots.iter().enumerate().map(|(r, &c)| self.rows[r][c].clone()).collect();
        let others = |skip: usize| -> RingElem {
            pivs.iter().enumerate().filter(|(i, _)| *i != skip).fold(RingElem::one(ring), |acc, (_, p)| &acc * p)
        };
        free.iter()
            .map(|&f| {
                let mut v = vec![RingElem::zero(ring); self.ncols];
                v[f] = if field { RingElem::one(ring) } else { others(usize::MAX) };
                for (r, &c) in self.pivots.iter().enumerate() {
                    let a = &self.rows[r][f];
                    if a.is_zero() {
                        continue;
                    }
                    v[c] = if field { -a } else { -(a * &others(r)) };
                }
                if !field {
                    for p in &pivs {
                        cancel_factor(&mut v, p);
                    }
                }
                v
            })
            .collect()
    }
}

/// Divides `v` by `d` as long as every entry stays exactly divisible.
fn cancel_factor(v: &mut [RingElem], d: &RingElem) {
    if d.try_invert().is_some() {
        return;
    }
    loop {
        let q: Option<Vec<RingElem>> = v.iter().map(|a| a.exact_div(d).ok()).collect();
        match q {
            Some(q) if q.iter().any(|a| !a.is_zero()) => v.clone_from_slice(&q),
            _ => return,
        }
    }
}

/// Reduced row echelon form (fraction-free over domains).
pub fn echelon(ring: RingDescriptor, rows: &[Vec<RingElem>], ncols: usize) -> Echelon {
    let field = ring.is_field();
    let mut m: Vec<Vec<RingElem>> = rows.iter().filter(|r| r.iter().any(|c| !c.is_zero())).cloned().collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(r) = (row..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(row, r);
        if field {
            let inv = m[row][c].try_invert().expect("nonzero element of a field");
            m[row] = m[row].iter().map(|a| a * &inv).collect();
        }
        let pivot_row = m[row].clone();
        let piv = pivot_row[c].clone();
        for (i, other) in m.iter_mut().enumerate() {
            if i == row || other[c].is_zero() {
                continue;
            }
            let f = other[c].clone();
            *other = if field {
                other.iter().zip(&pivot_row).map(|(a, b)| a - &(&f * b)).collect()
            } else {
                other.iter().zip(&pivot_row).map(|(a, b)| &(&piv * a) - &(&f * b)).collect()
            };
        }
        pivots.push(c);
        row += 1;
    }
    m.truncate(row);
    Echelon { rows: m, pivots, ncols, ring }
}

pub fn kernel(ring: RingDescriptor, rows: &[Vec<RingElem>], ncols: usize) -> Vec<Vec<RingElem>> {
    echelon(ring, rows, ncols).kernel()
}

pub fn rank(ring: RingDescriptor, rows: &[Vec<RingElem>], ncols: usize) -> usize {
    echelon(ring, rows, ncols).rank()
}

/// Whether two families of vectors span the same subspace over the fraction field.
pub fn same_span(ring: RingDescriptor, a: &[Vec<RingElem>], b: &[Vec<RingElem>], ncols: usize) -> bool {
    let ra = rank(ring, a, ncols);
    let rb = rank(ring, b, ncols);
    let both: Vec<Vec<RingElem>> = a.iter().chain(b).cloned().collect();
    ra == rb && rank(ring, &both, ncols) == ra
}

/// Solves `M v = b` over a field, returning one solution if any exists.
pub fn solve(ring: RingDescriptor, m: &[Vec<RingElem>], b: &[RingElem], ncols: usize) -> Option<Vec<RingElem>> {
    assert!(ring.is_field(), "solve needs a field");
    let aug: Vec<Vec<RingElem>> =
        m.iter().zip(b).map(|(row, bi)| row.iter().cloned().chain(std::iter::once(bi.clone())).collect()).collect();
    let e = echelon(ring, &aug, ncols + 1);
    if e.pivots.contains(&ncols) {
        return None;
    }
    let mut v = vec![RingElem::zero(ring); ncols];
    for (r, &c) in e.pivots.iter().enumerate() {
        v[c] = e.rows[r][ncols].clone();
    }
    Some(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::ZPoly;

    fn ints(ring: RingDescriptor, rows: &[&[i64]]) -> Vec<Vec<RingElem>> {
        rows.iter().map(|r| r.iter().map(|&c| RingElem::from_i64(ring, c)).collect()).collect()
    }

    fn apply(m: &[Vec<RingElem>], v: &[RingElem]) -> Vec<RingElem> {
        m.iter()
            .map(|row| row.iter().zip(v).fold(RingElem::zero(v[0].ring()), |acc, (a, b)| &acc + &(a * b)))
            .collect()
    }

    #[test]
    fn field_kernel() {
        let r = RingDescriptor::PrimeField(7);
        let m = ints(r, &[&[1, 2, 3], &[2, 4, 6]]);
        let k = kernel(r, &m, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(apply(&m, v).iter().all(RingElem::is_zero));
        }
    }

    #[test]
    fn domain_kernel() {
        let r = RingDescriptor::GenericZt;
        let t = RingElem::from_zpoly(r, &ZPoly::t());
        let one = RingElem::one(r);
        let m = vec![vec![t.clone(), one.clone(), RingElem::zero(r)], vec![one.clone(), t.clone(), one.clone()]];
        let k = kernel(r, &m, 3);
        assert_eq!(k.len(), 1);
        assert!(apply(&m, &k[0]).iter().all(RingElem::is_zero));
        assert!(!k[0].iter().all(RingElem::is_zero));
    }

    #[test]
    fn spans_and_solutions() {
        let r = RingDescriptor::CyclotomicField(3);
        let a = ints(r, &[&[1, 1, 0], &[0, 1, 1]]);
        let b = ints(r, &[&[1, 0, -1], &[1, 2, 1]]);
        assert!(same_span(r, &a, &b, 3));
        let c = ints(r, &[&[1, 0, 0]]);
        assert!(!same_span(r, &a, &c, 3));
        let x = solve(r, &a, &[RingElem::from_i64(r, 2), RingElem::from_i64(r, 3)], 3).unwrap();
        assert_eq!(apply(&a, &x), vec![RingElem::from_i64(r, 2), RingElem::from_i64(r, 3)]);
    }
}
