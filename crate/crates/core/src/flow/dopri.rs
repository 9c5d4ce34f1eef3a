//! Dormand–Prince 5(4) with continuous extension on a complex 2-vector.

use num_complex::Complex64;

pub type State = [Complex64; 2];

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

fn lin<const N: usize>(y: &[Complex64; N], terms: &[(f64, &[Complex64; N])], h: Complex64) -> [Complex64; N] {
    let mut out = *y;
    for (c, k) in terms {
        let f = h * *c;
        for (o, ki) in out.iter_mut().zip(k.iter()) {
            *o += f * ki;
        }
    }
    out
}

/// One attempted step: the new state, the last stage (the derivative at the
/// new state), the error estimate and the dense-output coefficients.
pub struct Step<const N: usize = 2> {
    pub y1: [Complex64; N],
    pub k7: [Complex64; N],
    pub err: f64,
    pub dense: Dense<N>,
}

/// Continuous extension on `[t0, t0 + h]`.
#[derive(Clone, Copy)]
pub struct Dense<const N: usize = 2> {
    r: [[Complex64; N]; 5],
}

impl<const N: usize> Dense<N> {
    pub fn eval(&self, theta: f64) -> [Complex64; N] {
        let th1 = 1.0 - theta;
        let mut out = [Complex64::new(0.0, 0.0); N];
        for (i, o) in out.iter_mut().enumerate() {
            let r = &self.r;
            *o = r[0][i] + (r[1][i] + (r[2][i] + (r[3][i] + r[4][i] * th1) * theta) * th1) * theta;
        }
        out
    }
}

/// Performs one DP5 step of complex size `h` (time may be complex).
pub fn step<const N: usize>(
    f: &impl Fn(&[Complex64; N]) -> [Complex64; N],
    y0: &[Complex64; N],
    k1: &[Complex64; N],
    h: Complex64,
    rtol: f64,
    atol: f64,
) -> Step<N> {
    let k2 = f(&lin(y0, &[(A21, k1)], h));
    let k3 = f(&lin(y0, &[(A31, k1), (A32, &k2)], h));
    let k4 = f(&lin(y0, &[(A41, k1), (A42, &k2), (A43, &k3)], h));
    let k5 = f(&lin(y0, &[(A51, k1), (A52, &k2), (A53, &k3), (A54, &k4)], h));
    let k6 = f(&lin(y0, &[(A61, k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)], h));
    let y1 = lin(y0, &[(A71, k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)], h);
    let k7 = f(&y1);
    let mut acc = 0.0;
    for i in 0..N {
        let e = h * (k1[i] * E1 + k3[i] * E3 + k4[i] * E4 + k5[i] * E5 + k6[i] * E6 + k7[i] * E7);
        let sc = atol + rtol * y0[i].norm().max(y1[i].norm());
        acc += (e.norm() / sc).powi(2);
    }
    let err = (acc / N as f64).sqrt();
    let mut r = [[Complex64::new(0.0, 0.0); N]; 5];
    for i in 0..N {
        let dy = y1[i] - y0[i];
        let bspl = h * k1[i] - dy;
        r[0][i] = y0[i];
        r[1][i] = dy;
        r[2][i] = bspl;
        r[3][i] = dy - h * k7[i] - bspl;
        r[4][i] = h * (k1[i] * D1 + k3[i] * D3 + k4[i] * D4 + k5[i] * D5 + k6[i] * D6 + k7[i] * D7);
    }
    Step { y1, k7, err, dense: Dense { r } }
}

/// Step-size factor from an error estimate.
pub fn step_factor(err: f64) -> f64 {
    if err == 0.0 {
        return 5.0;
    }
    (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
}

/// Fixed-step integration of `dz/dτ = f(z)` along complex time
/// `0 → h_total` with `n` equal steps.
pub fn fixed<const N: usize>(
    f: &impl Fn(&[Complex64; N]) -> [Complex64; N],
    y0: &[Complex64; N],
    h_total: Complex64,
    n: usize,
) -> [Complex64; N] {
    let h = h_total / n as f64;
    let mut y = *y0;
    let mut k1 = f(&y);
    for _ in 0..n {
        let s = step(f, &y, &k1, h, 1.0, 1.0);
        y = s.y1;
        k1 = s.k7;
    }
    y
}
