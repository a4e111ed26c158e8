//! Finite-difference Christoffel symbols and Riemann curvature on a
//! lattice metric field, second-order central stencils throughout.
//!
//! Constancy of a metric over the lattice already implies flatness in
//! those coordinates; differencing the field and bounding |Γ| and |R|
//! certifies it by a strictly stronger route that also catches fields
//! that are merely near-constant.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

use super::tensors::{Tensor3, Tensor4};
use super::MetricField;

fn metric_derivatives(field: &MetricField, index: &[usize]) -> Tensor3 {
    let n = field.grid_dim();
    // dg.get(d, a, b) = ∂_d g_ab
    let mut dg = Tensor3::zeros(n);
    for d in 0..n {
        let mut plus = index.to_vec();
        plus[d] += 1;
        let mut minus = index.to_vec();
        minus[d] -= 1;
        let g_plus = &field.value(&plus).g;
        let g_minus = &field.value(&minus).g;
        let inv_2h = 0.5 / field.axes()[d].spacing();
        for a in 0..n {
            for b in 0..n {
                dg.set(d, a, b, (g_plus[(a, b)] - g_minus[(a, b)]) * inv_2h);
            }
        }
    }
    dg
}

fn inverse_metric(g: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    g.clone()
        .try_inverse()
        .ok_or_else(|| Error::Singular("metric is not invertible at the requested point".into()))
}

/// Γ^a_bc = ½ g^{ad} (∂_b g_dc + ∂_c g_db − ∂_d g_bc) by central
/// differences; needs a 1-deep interior point. Symmetric in (b, c).
pub fn christoffel(field: &MetricField, index: &[usize]) -> Result<Tensor3> {
    check_index(field, index, 1)?;
    let n = field.grid_dim();
    let g_inv = inverse_metric(&field.value(index).g)?;
    let dg = metric_derivatives(field, index);

    let mut gamma = Tensor3::zeros(n);
    for a in 0..n {
        for b in 0..n {
            for c in b..n {
                let mut sum = 0.0;
                for d in 0..n {
                    sum += g_inv[(a, d)] * (dg.get(b, d, c) + dg.get(c, d, b) - dg.get(d, b, c));
                }
                gamma.set(a, b, c, 0.5 * sum);
                gamma.set(a, c, b, 0.5 * sum);
            }
        }
    }
    Ok(gamma)
}

/// R^a_{bcd} = ∂_c Γ^a_{db} − ∂_d Γ^a_{cb} + Γ^a_{ce}Γ^e_{db} −
/// Γ^a_{de}Γ^e_{cb}; needs a 2-deep interior point (the Γ derivatives are
/// themselves central differences of 1-deep quantities).
pub fn riemann(field: &MetricField, index: &[usize]) -> Result<Tensor4> {
    check_index(field, index, 2)?;
    let n = field.grid_dim();
    let gamma = christoffel(field, index)?;

    // dgamma[c].get(a, d, b) = ∂_c Γ^a_{db}
    let mut dgamma = Vec::with_capacity(n);
    for c in 0..n {
        let mut plus = index.to_vec();
        plus[c] += 1;
        let mut minus = index.to_vec();
        minus[c] -= 1;
        let gamma_plus = christoffel(field, &plus)?;
        let gamma_minus = christoffel(field, &minus)?;
        let inv_2h = 0.5 / field.axes()[c].spacing();
        let mut dg = Tensor3::zeros(n);
        for a in 0..n {
            for d in 0..n {
                for b in 0..n {
                    dg.set(
                        a,
                        d,
                        b,
                        (gamma_plus.get(a, d, b) - gamma_minus.get(a, d, b)) * inv_2h,
                    );
                }
            }
        }
        dgamma.push(dg);
    }

    let mut r = Tensor4::zeros(n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let mut value = dgamma[c].get(a, d, b) - dgamma[d].get(a, c, b);
                    for e in 0..n {
                        value += gamma.get(a, c, e) * gamma.get(e, d, b)
                            - gamma.get(a, d, e) * gamma.get(e, c, b);
                    }
                    r.set(a, b, c, d, value);
                }
            }
        }
    }
    Ok(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    FlatWithinTol,
    NotFlat,
}

/// Flatness certificate for a metric field.
#[derive(Debug, Clone)]
pub struct CurvatureReport {
    pub max_abs_christoffel: f64,
    pub max_abs_riemann: f64,
    /// Number of (2-deep interior) lattice points where curvature was
    /// evaluated.
    pub eval_points: usize,
    pub tol: f64,
    pub verdict: Verdict,
}

/// Sweep the lattice interior: max |Γ| over 1-deep points, max |R| over
/// 2-deep points; flat iff both stay below `tol`.
///
/// For quadrature-sourced fields the tolerance must absorb integration
/// noise divided by spacing² (second differencing); 1e-3 is a reasonable
/// default there, while analytic fields support 1e-9.
pub fn flatness_report(field: &MetricField, tol: f64) -> Result<CurvatureReport> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::argument("flatness tolerance must be positive"));
    }
    let n = field.grid_dim();
    let mut max_gamma: f64 = 0.0;
    let mut max_riemann: f64 = 0.0;
    let mut eval_points = 0usize;

    let counts: Vec<usize> = field.axes().iter().map(|a| a.count).collect();
    let total: usize = counts.iter().product();
    let mut index = vec![0usize; n];
    for _ in 0..total {
        let depth = field.interior_depth(&index);
        if depth >= 1 {
            max_gamma = max_gamma.max(christoffel(field, &index)?.max_abs());
        }
        if depth >= 2 {
            max_riemann = max_riemann.max(riemann(field, &index)?.max_abs());
            eval_points += 1;
        }
        let mut d = n;
        while d > 0 {
            d -= 1;
            index[d] += 1;
            if index[d] < counts[d] {
                break;
            }
            index[d] = 0;
        }
    }

    let verdict = if max_gamma <= tol && max_riemann <= tol {
        Verdict::FlatWithinTol
    } else {
        Verdict::NotFlat
    };
    Ok(CurvatureReport {
        max_abs_christoffel: max_gamma,
        max_abs_riemann: max_riemann,
        eval_points,
        tol,
        verdict,
    })
}

fn check_index(field: &MetricField, index: &[usize], depth: usize) -> Result<()> {
    if index.len() != field.grid_dim() {
        return Err(Error::argument(format!(
            "lattice index has length {}, grid dimension is {}",
            index.len(),
            field.grid_dim()
        )));
    }
    for (d, (&i, axis)) in index.iter().zip(field.axes()).enumerate() {
        if i >= axis.count {
            return Err(Error::argument(format!(
                "lattice index {i} out of range on axis {d}"
            )));
        }
    }
    if field.interior_depth(index) < depth {
        return Err(Error::argument(format!(
            "lattice point is not {depth}-deep interior; stencils would cross the boundary"
        )));
    }
    Ok(())
}
