//! Test-side oracles that share no code with the library.
#![allow(dead_code)]

use std::collections::BinaryHeap;

use spectral_ce::Complex64;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7]
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn kronrod<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut k = f(c) * WGK[7];
    let mut g = f(c) * WG[3];
    for i in 0..7 {
        let dx = h * XGK[i];
        let pair = f(c - dx) + f(c + dx);
        k += pair * WGK[i];
        if i % 2 == 1 {
            g += pair * WG[i / 2];
        }
    }
    (k * h, ((k - g) * h).norm())
}

struct Panel {
    lo: f64,
    hi: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn panel<F: Fn(f64) -> Complex64>(f: &F, lo: f64, hi: f64) -> Panel {
    let (value, error) = kronrod(f, lo, hi);
    Panel { lo, hi, value, error }
}

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature of a complex
/// integrand: the panel with the largest error estimate is bisected until the
/// summed estimate drops below `tol` or the panel budget runs out.
pub fn integrate<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, tol: f64) -> Complex64 {
    let initial = ((b - a).ceil() as usize).max(1);
    let h = (b - a) / initial as f64;
    let mut heap: BinaryHeap<Panel> = (0..initial)
        .map(|i| panel(&f, a + i as f64 * h, a + (i + 1) as f64 * h))
        .collect();
    let mut total: f64 = heap.iter().map(|p| p.error).sum();
    for _ in 0..2000 {
        if total <= tol {
            break;
        }
        let worst = heap.pop().unwrap();
        let mid = 0.5 * (worst.lo + worst.hi);
        let (left, right) = (panel(&f, worst.lo, mid), panel(&f, mid, worst.hi));
        total += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    heap.iter().map(|p| p.value).sum()
}

/// `w(z) = (i/π) ∫ e^{−t²}/(z − t) dt` for `Im z > 0`.
pub fn faddeeva_by_quadrature(z: Complex64) -> Complex64 {
    assert!(z.im > 0.0);
    let i = Complex64::new(0.0, 1.0);
    let lo = z.re.min(0.0) - 10.0;
    let hi = z.re.max(0.0) + 10.0;
    let integral = integrate(|t| (-t * t).exp() / (z - t), lo, hi, 1e-14);
    i * integral / std::f64::consts::PI
}

/// `erfcx(y) = (2/√π) ∫₀^∞ e^{−t² − 2yt} dt` for `y ≥ 0`.
pub fn erfcx_by_quadrature(y: f64) -> f64 {
    let v = integrate(|t| Complex64::new((-t * t - 2.0 * y * t).exp(), 0.0), 0.0, 10.0, 1e-15);
    2.0 * v.re / std::f64::consts::PI.sqrt()
}

/// Gaussian moments `(2n−1)!!` as exact integers.
pub fn double_factorials(count: usize) -> Vec<num_bigint::BigInt> {
    let mut out = Vec::with_capacity(count);
    let mut acc = num_bigint::BigInt::from(1);
    for n in 0..count {
        if n > 0 {
            acc *= 2 * n - 1;
        }
        out.push(acc.clone());
    }
    out
}
