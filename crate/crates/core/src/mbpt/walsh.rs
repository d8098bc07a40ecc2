//! Closed-form Walsh-Hadamard coefficients of the perturbative spectrum.
//!
//! Zeroth order contributes up to weight 1, first order up to weight 2 and
//! second order up to weight 3; every other coefficient vanishes
//! identically.

use std::io::Write;

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::precision::Real;

use super::tensors::PtTensors;

/// Order-`order` contribution to `w_{ℓ₁…ℓ_m}` for `m = positions.len() ≤ 3`.
pub fn wh_pt<T: Real>(positions: &[usize], order: u8, tensors: &PtTensors<T>) -> Result<T> {
    validate(positions, tensors.n())?;
    if order > 2 {
        return Err(Error::UnsupportedOrder(order));
    }
    if positions.len() > usize::from(order) + 1 {
        return Ok(T::zero());
    }
    Ok(match order {
        0 => order0(positions, tensors),
        1 => order1(positions, tensors),
        _ => order2(positions, tensors),
    })
}

/// Sum of the order 0, 1 and 2 contributions.
pub fn wh_pt_total<T: Real>(positions: &[usize], tensors: &PtTensors<T>) -> Result<T> {
    Ok(wh_pt(positions, 0, tensors)? + wh_pt(positions, 1, tensors)? + wh_pt(positions, 2, tensors)?)
}

fn validate(positions: &[usize], n: usize) -> Result<()> {
    if positions.len() > 3 {
        return Err(Error::TooManyPositions(positions.len()));
    }
    for (k, &p) in positions.iter().enumerate() {
        if p >= n {
            return Err(Error::PositionOutOfRange { pos: p, n });
        }
        if positions[..k].contains(&p) {
            return Err(Error::DuplicatePosition(p));
        }
    }
    Ok(())
}

fn c<T: Real>(x: f64) -> T {
    T::from_f64(x)
}

fn order0<T: Real>(pos: &[usize], t: &PtTensors<T>) -> T {
    match pos {
        [] => c::<T>(0.5) * (0..t.n()).map(|mu| t.energy(mu)).sum(),
        [l] => c::<T>(0.5) * t.energy(*l),
        _ => T::zero(),
    }
}

fn order1<T: Real>(pos: &[usize], t: &PtTensors<T>) -> T {
    let n = t.n();
    let ec = c::<T>(t.ec());
    match pos {
        [] => {
            let mut off = T::zero();
            for mu in 0..n {
                for nu in 0..n {
                    if mu != nu {
                        off += t.emat(mu, nu);
                    }
                }
            }
            c::<T>(0.25) * off - c::<T>(0.5 * n as f64) * ec
        }
        [l] => {
            let off: T = (0..n).filter(|&mu| mu != *l).map(|mu| t.emat(mu, *l)).sum();
            c::<T>(0.5) * off - c::<T>(0.5) * ec
        }
        [l1, l2] => c::<T>(0.5) * t.emat(*l1, *l2),
        _ => T::zero(),
    }
}

fn order2<T: Real>(pos: &[usize], t: &PtTensors<T>) -> T {
    let n = t.n();
    let two = c::<T>(2.0);
    match pos {
        [] => {
            let mut pair_all = T::zero();
            let mut pair_diag = T::zero();
            let mut all = T::zero();
            let mut diag = T::zero();
            let mut coincide = T::zero();
            for a in 0..n {
                pair_diag += t.dsum2(a, a);
                diag += t.f(a, a, a);
                for b in 0..n {
                    pair_all += t.dsum2(a, b);
                    coincide += t.f(a, a, b) + t.f(a, b, a) + t.f(a, b, b);
                    for m in 0..n {
                        all += t.f(a, b, m);
                    }
                }
            }
            let distinct = all + two * diag - coincide;
            c::<T>(0.25) * (pair_all - pair_diag) + c::<T>(0.125) * distinct
        }
        [l] => {
            let l = *l;
            let pair: T = (0..n).filter(|&nu| nu != l).map(|nu| t.dsum2(l, nu)).sum();
            // Σ F[ℓνα] and Σ F[μνℓ] over indices distinct from each other and from ℓ.
            let mut lead_all = T::zero();
            let mut tail_all = T::zero();
            let mut lead_coincide = T::zero();
            let mut tail_coincide = T::zero();
            for a in 0..n {
                lead_coincide += t.f(l, a, a) + t.f(l, l, a) + t.f(l, a, l);
                tail_coincide += t.f(a, a, l) + t.f(l, a, l) + t.f(a, l, l);
                for b in 0..n {
                    lead_all += t.f(l, a, b);
                    tail_all += t.f(a, b, l);
                }
            }
            let fll = two * t.f(l, l, l);
            let lead = lead_all - lead_coincide + fll;
            let tail = tail_all - tail_coincide + fll;
            c::<T>(0.5) * pair + c::<T>(0.125) * (two * lead + tail)
        }
        [l1, l2] => {
            let (l1, l2) = (*l1, *l2);
            let mut acc = T::zero();
            for a in 0..n {
                if a != l1 && a != l2 {
                    acc += t.f(l1, l2, a) + t.f(l1, a, l2) + t.f(l2, a, l1);
                }
            }
            c::<T>(0.5) * t.dsum2(l1, l2) + c::<T>(0.25) * acc
        }
        [l1, l2, l3] => {
            let (l1, l2, l3) = (*l1, *l2, *l3);
            c::<T>(0.25) * (t.f(l1, l2, l3) + t.f(l1, l3, l2) + t.f(l2, l3, l1))
        }
        _ => T::zero(),
    }
}

/// One row of the perturbative Walsh-Hadamard table.
#[derive(Debug, Clone, PartialEq)]
pub struct PtWalshRow {
    pub positions: Vec<usize>,
    pub orders: [f64; 3],
    pub total: f64,
    /// Largest pairwise Manhattan distance; `None` below weight 2.
    pub range: Option<usize>,
}

/// Every coefficient of weight `≤ max_weight` (at most 3), positions
/// ascending and tuples in lexicographic order.
pub fn pt_walsh_rows(tensors: &PtTensors, lattice: &Lattice, max_weight: usize) -> Result<Vec<PtWalshRow>> {
    if max_weight > 3 {
        return Err(Error::TooManyPositions(max_weight));
    }
    let n = tensors.n();
    if lattice.n_sites() != n {
        return Err(Error::DimensionMismatch {
            what: "tensors",
            got: n,
            expected: lattice.n_sites(),
        });
    }
    let mut tuples: Vec<Vec<usize>> = vec![vec![]];
    for w in 1..=max_weight {
        combinations(n, w, &mut Vec::with_capacity(w), 0, &mut tuples);
    }
    tuples
        .into_iter()
        .map(|positions| {
            let orders = [
                wh_pt(&positions, 0, tensors)?,
                wh_pt(&positions, 1, tensors)?,
                wh_pt(&positions, 2, tensors)?,
            ];
            let range = max_range(lattice, &positions);
            Ok(PtWalshRow {
                total: orders[0] + orders[1] + orders[2],
                positions,
                orders,
                range,
            })
        })
        .collect()
}

fn combinations(n: usize, k: usize, cur: &mut Vec<usize>, start: usize, out: &mut Vec<Vec<usize>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for i in start..n {
        cur.push(i);
        combinations(n, k, cur, i + 1, out);
        cur.pop();
    }
}

/// Largest pairwise Manhattan distance among `positions`.
pub fn max_range(lattice: &Lattice, positions: &[usize]) -> Option<usize> {
    let mut best = None;
    for (k, &a) in positions.iter().enumerate() {
        for &b in &positions[k + 1..] {
            let d = lattice.distance(a, b);
            best = Some(best.map_or(d, |x: usize| x.max(d)));
        }
    }
    best
}

/// Writes `weight,l1,l2,l3,order0_ghz,order1_ghz,order2_ghz,total_ghz,range_l`.
pub fn write_pt_walsh_csv<W: Write>(rows: &[PtWalshRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "weight", "l1", "l2", "l3", "order0_ghz", "order1_ghz", "order2_ghz", "total_ghz", "range_l",
    ])?;
    for row in rows {
        let pos = |k: usize| row.positions.get(k).map_or(String::new(), |p| p.to_string());
        w.write_record(&[
            row.positions.len().to_string(),
            pos(0),
            pos(1),
            pos(2),
            row.orders[0].to_string(),
            row.orders[1].to_string(),
            row.orders[2].to_string(),
            row.total.to_string(),
            row.range.map_or(String::new(), |r| r.to_string()),
        ])?;
    }
    w.flush()?;
    Ok(())
}
