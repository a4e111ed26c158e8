//! 15-point Kronrod rule with embedded 7-point Gauss rule on a finite panel.

// published rule constants carry more digits than f64 keeps
#![allow(clippy::excessive_precision)]

/// Kronrod abscissae (positive half), 15-point rule.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

/// Kronrod weights matching `XGK`.
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

/// 7-point Gauss weights; node i of the Gauss rule is `XGK[2*i + 1]`.
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

pub(crate) const PANEL_EVALS: u64 = 15;

/// K15 nodes on [a, b] with their Kronrod and (embedded, zero-padded) Gauss
/// weights: `(position, w_kronrod, w_gauss)`.
pub(crate) fn k15_nodes(a: f64, b: f64) -> [(f64, f64, f64); 15] {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut out = [(0.0, 0.0, 0.0); 15];
    out[7] = (center, WGK[7] * half, WG[3] * half);
    for i in 0..7 {
        let dx = half * XGK[i];
        let wg = if i % 2 == 1 { WG[i / 2] * half } else { 0.0 };
        out[i] = (center - dx, WGK[i] * half, wg);
        out[14 - i] = (center + dx, WGK[i] * half, wg);
    }
    out
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct PanelEstimate {
    pub integral: f64,
    pub error: f64,
}

/// Evaluate the G7/K15 pair on [a, b] and derive the QUADPACK-style error
/// estimate from the embedded difference.
pub(crate) fn g7k15<F: Fn(f64) -> f64 + ?Sized>(f: &F, a: f64, b: f64) -> PanelEstimate {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let fc = f(center);
    let mut resk = WGK[7] * fc;
    let mut resg = WG[3] * fc;
    let mut resabs = resk.abs();

    let mut values = [0.0f64; 15];
    values[7] = fc;

    for i in 0..7 {
        let dx = half * XGK[i];
        let f_lo = f(center - dx);
        let f_hi = f(center + dx);
        values[i] = f_lo;
        values[14 - i] = f_hi;
        let sum = f_lo + f_hi;
        resk += WGK[i] * sum;
        resabs += WGK[i] * (f_lo.abs() + f_hi.abs());
        if i % 2 == 1 {
            resg += WG[i / 2] * sum;
        }
    }

    let reskh = resk * 0.5;
    let mut resasc = WGK[7] * (fc - reskh).abs();
    for i in 0..7 {
        resasc += WGK[i] * ((values[i] - reskh).abs() + (values[14 - i] - reskh).abs());
    }

    let integral = resk * half;
    let resabs = resabs * half.abs();
    let resasc = resasc * half.abs();
    let mut error = ((resk - resg) * half).abs();

    if resasc != 0.0 && error != 0.0 {
        error = resasc * (200.0 * error / resasc).powf(1.5).min(1.0);
    }
    let round_off = 50.0 * f64::EPSILON * resabs;
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(round_off);
    }

    PanelEstimate { integral, error }
}
