//! Differential resultants of pairs of commuting operators.
//!
//! For operators P (order n) and Q (order m), each carrying one attached
//! spectral indeterminate, the matrix S0 stacks the coefficient rows of
//! D^(m-1)(P - vp), ..., P - vp, then D^(n-1)(Q - vq), ..., Q - vq against
//! the power basis D^(n+m-1), ..., 1.  Its determinant is the differential
//! resultant: for commuting pairs it is a polynomial in the indeterminates
//! alone, and it generates the algebraic relation satisfied by the pair.
//!
//! Dropping the top row of each block and the leftmost column gives S1,
//! whose two rightmost maximal minors phi0 (without the D column) and phi1
//! (without the 1 column) encode the order-one right factor D + phi0/phi1
//! of P - vp at points of the curve.

use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::mpoly::{CurveVar, MPoly3, PolyMatrix};

/// Rows for D^(count-1)(op - var), ..., D^0(op - var) against the power
/// basis D^(width-1), ..., 1.
fn operator_rows(op: &DiffOp, var: CurveVar, count: usize, width: usize) -> Vec<Vec<MPoly3>> {
    let mut rows = Vec::with_capacity(count);
    let mut cur = op.clone();
    for k in 0..count {
        if k > 0 {
            cur = cur.premul_d();
        }
        let mut row = vec![MPoly3::zero(); width];
        for (j, c) in cur.coeffs().iter().enumerate() {
            row[width - 1 - j] = MPoly3::from_coeff(c.clone());
        }
        // The attached indeterminate rides on D^k.
        row[width - 1 - k] = &row[width - 1 - k] - &MPoly3::var(var);
        rows.push(row);
    }
    rows.reverse();
    rows
}

/// The full resultant matrix of the pair; square of size n + m.
pub fn sylvester_s0(
    p: &DiffOp,
    vp: CurveVar,
    q: &DiffOp,
    vq: CurveVar,
) -> Result<PolyMatrix> {
    let n = p.order().filter(|&n| n >= 1).ok_or(Error::OrderTooSmall)?;
    let m = q.order().filter(|&m| m >= 1).ok_or(Error::OrderTooSmall)?;
    let width = n + m;
    let mut rows = operator_rows(p, vp, m, width);
    rows.extend(operator_rows(q, vq, n, width));
    Ok(PolyMatrix::new(rows))
}

/// The first-subresultant matrix; (n + m - 2) rows, n + m - 1 columns.
pub fn sylvester_s1(
    p: &DiffOp,
    vp: CurveVar,
    q: &DiffOp,
    vq: CurveVar,
) -> Result<PolyMatrix> {
    let n = p.order().filter(|&n| n >= 1).ok_or(Error::OrderTooSmall)?;
    let m = q.order().filter(|&m| m >= 1).ok_or(Error::OrderTooSmall)?;
    if n + m < 3 {
        return Err(Error::OrderTooSmall);
    }
    let width = n + m - 1;
    let mut rows = operator_rows(p, vp, m - 1, width);
    rows.extend(operator_rows(q, vq, n - 1, width));
    Ok(PolyMatrix::new(rows))
}

/// Differential resultant of the pair; requires the result to be free of x,
/// which holds whenever the operators commute.
pub fn diff_resultant(
    p: &DiffOp,
    vp: CurveVar,
    q: &DiffOp,
    vq: CurveVar,
) -> Result<MPoly3> {
    let det = sylvester_s0(p, vp, q, vq)?.determinant()?;
    if !det.is_constant_in_x() {
        return Err(Error::NotXFree);
    }
    Ok(det)
}

/// The two rightmost maximal minors of S1.
#[derive(Debug, Clone, PartialEq)]
pub struct SubresultantPair {
    /// Minor without the D column.
    pub phi0: MPoly3,
    /// Minor without the constant column.
    pub phi1: MPoly3,
}

/// First subresultant minors of the pair.  At a point P0 of the spectral
/// curve with phi1(P0) != 0, the operator D + phi0(P0)/phi1(P0) is a right
/// factor of P - vp(P0).
pub fn first_subresultant(
    p: &DiffOp,
    vp: CurveVar,
    q: &DiffOp,
    vq: CurveVar,
) -> Result<SubresultantPair> {
    let s1 = sylvester_s1(p, vp, q, vq)?;
    let ncols = s1.ncols();
    let phi0 = s1.without_column(ncols - 2).determinant()?;
    let phi1 = s1.without_column(ncols - 1).determinant()?;
    Ok(SubresultantPair { phi0, phi1 })
}
