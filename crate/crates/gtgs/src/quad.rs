//! Adaptive Gauss–Kronrod (10/21 point) quadrature for real or complex integrands.

use num_complex::Complex64;
use std::collections::BinaryHeap;
use std::cmp::Ordering;
use std::ops::{Add, Mul, Sub};

use crate::error::{GtgsError, Result};

const XGK: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077600640047073,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];
const WG: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

/// Values the integrator can accumulate.
pub trait QuadValue: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn modulus(&self) -> f64;
    fn is_finite_value(&self) -> bool;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn modulus(&self) -> f64 {
        self.abs()
    }
    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn modulus(&self) -> f64 {
        self.norm()
    }
    fn is_finite_value(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

/// Tolerances for a single adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct QuadOpts {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadOpts {
    fn default() -> Self {
        QuadOpts { abs_tol: 1e-14, rel_tol: 1e-12, max_subdivisions: 4000 }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult<T> {
    pub value: T,
    pub error: f64,
    pub evals: usize,
}

struct Segment<T> {
    a: f64,
    b: f64,
    value: T,
    error: f64,
}

impl<T> PartialEq for Segment<T> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<T> Eq for Segment<T> {}
impl<T> PartialOrd for Segment<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T> Ord for Segment<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.partial_cmp(&other.error).unwrap_or(Ordering::Equal)
    }
}

fn kronrod<T: QuadValue, F: FnMut(f64) -> T>(f: &mut F, a: f64, b: f64) -> (T, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut resk = fc * WGK[10];
    let mut resg = T::zero();
    let mut resabs = fc.modulus() * WGK[10];
    let mut fv1 = [T::zero(); 10];
    let mut fv2 = [T::zero(); 10];
    for j in 0..10 {
        let dx = h * XGK[j];
        let f1 = f(c - dx);
        let f2 = f(c + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk = resk + (f1 + f2) * WGK[j];
        resabs += WGK[j] * (f1.modulus() + f2.modulus());
        if j % 2 == 1 {
            resg = resg + (f1 + f2) * WG[j / 2];
        }
    }
    let mean = resk * 0.5;
    let mut resasc = WGK[10] * (fc - mean).modulus();
    for j in 0..10 {
        resasc += WGK[j] * ((fv1[j] - mean).modulus() + (fv2[j] - mean).modulus());
    }
    let value = resk * h;
    resabs *= h.abs();
    resasc *= h.abs();
    let mut err = ((resk - resg) * h).modulus();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    (value, err)
}

/// Integrates `f` over the finite interval `[a, b]`.
pub fn integrate<T: QuadValue, F: FnMut(f64) -> T>(mut f: F, a: f64, b: f64, opts: QuadOpts) -> Result<QuadResult<T>> {
    integrate_points(&mut f, &[a, b], opts)
}

/// Integrates over consecutive pieces `[p0,p1]`, `[p1,p2]`, ... sharing one error budget.
pub fn integrate_points<T: QuadValue, F: FnMut(f64) -> T>(f: &mut F, points: &[f64], opts: QuadOpts) -> Result<QuadResult<T>> {
    let mut heap = BinaryHeap::new();
    let mut total = T::zero();
    let mut total_err = 0.0;
    let mut evals = 0;
    for w in points.windows(2) {
        if w[0] == w[1] {
            continue;
        }
        let (v, e) = kronrod(f, w[0], w[1]);
        evals += 21;
        total = total + v;
        total_err += e;
        heap.push(Segment { a: w[0], b: w[1], value: v, error: e });
    }
    let mut iterations = 0;
    loop {
        if !total.is_finite_value() {
            return Err(GtgsError::QuadratureFailure("non-finite integrand value".into()));
        }
        let target = opts.abs_tol.max(opts.rel_tol * total.modulus());
        if total_err <= target {
            break;
        }
        if iterations >= opts.max_subdivisions {
            if total_err <= 1e3 * target {
                break;
            }
            return Err(GtgsError::QuadratureFailure(format!(
                "subdivision limit reached, error estimate {total_err:.3e} vs target {target:.3e}"
            )));
        }
        let seg = match heap.pop() {
            Some(s) => s,
            None => break,
        };
        let mid = 0.5 * (seg.a + seg.b);
        if mid <= seg.a.min(seg.b) || mid >= seg.a.max(seg.b) {
            heap.push(seg);
            break;
        }
        let (v1, e1) = kronrod(f, seg.a, mid);
        let (v2, e2) = kronrod(f, mid, seg.b);
        evals += 42;
        total = total - seg.value + v1 + v2;
        total_err += e1 + e2 - seg.error;
        heap.push(Segment { a: seg.a, b: mid, value: v1, error: e1 });
        heap.push(Segment { a: mid, b: seg.b, value: v2, error: e2 });
        iterations += 1;
    }
    // Re-sum to wash out accumulated cancellation in the running totals.
    let mut value = T::zero();
    let mut error = 0.0;
    for s in heap.iter() {
        value = value + s.value;
        error += s.error;
    }
    Ok(QuadResult { value, error, evals })
}

/// Integrates over `[a, ∞)` via `x = a + t/(1-t)`.
pub fn integrate_to_inf<T: QuadValue, F: FnMut(f64) -> T>(mut f: F, a: f64, opts: QuadOpts) -> Result<QuadResult<T>> {
    let mut g = |t: f64| {
        if t >= 1.0 {
            return T::zero();
        }
        let s = 1.0 - t;
        let v = f(a + t / s);
        if v.is_finite_value() {
            v * (1.0 / (s * s))
        } else {
            T::zero()
        }
    };
    integrate_points(&mut g, &[0.0, 1.0], opts)
}

/// Integrates over `[a, ∞)` using the substitution `x = a·e^u` on `u ∈ (0, ∞)`, suited to power tails.
pub fn integrate_log_tail<T: QuadValue, F: FnMut(f64) -> T>(mut f: F, a: f64, opts: QuadOpts) -> Result<QuadResult<T>> {
    assert!(a > 0.0);
    let g = |u: f64| {
        let x = a * u.exp();
        if !x.is_finite() {
            return T::zero();
        }
        let v = f(x) * x;
        if v.is_finite_value() {
            v
        } else {
            T::zero()
        }
    };
    integrate_to_inf(g, 0.0, opts)
}
