//! Adaptive Gauss–Kronrod (7/15) quadrature for complex-valued integrands.

use alloc::vec::Vec;

use num_complex::Complex64;

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

// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct Quad {
    pub value: Complex64,
    pub error: f64,
    pub converged: bool,
    pub evaluations: usize,
}

/// One G7K15 panel: `(kronrod, |kronrod - gauss|)`.
pub fn gk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let r = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for i in 0..7 {
        let dx = r * XGK[i];
        let pair = f(c - dx) + f(c + dx);
        k += pair * WGK[i];
        if i % 2 == 1 {
            g += pair * WG[i / 2];
        }
    }
    (k * r, ((k - g) * r).norm())
}

#[derive(Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

/// Integrates `f` over `[a, b]`, starting from `initial` equal panels and
/// bisecting the worst panel until the summed error is below
/// `max(abs_tol, rel_tol·|I|)` or `max_panels` is reached.
pub fn integrate<F: Fn(f64) -> Complex64>(
    f: F,
    a: f64,
    b: f64,
    initial: usize,
    abs_tol: f64,
    rel_tol: f64,
    max_panels: usize,
) -> Quad {
    let initial = initial.max(1);
    let mut panels: Vec<Panel> = Vec::with_capacity(initial * 2);
    let width = (b - a) / initial as f64;
    for i in 0..initial {
        let pa = a + width * i as f64;
        let pb = if i + 1 == initial { b } else { pa + width };
        let (value, error) = gk15(&f, pa, pb);
        panels.push(Panel {
            a: pa,
            b: pb,
            value,
            error,
        });
    }
    let mut evaluations = 15 * initial;
    let mut total: Complex64 = panels.iter().map(|p| p.value).sum();
    let mut error: f64 = panels.iter().map(|p| p.error).sum();
    loop {
        let target = abs_tol.max(rel_tol * total.norm());
        if error <= target || panels.len() >= max_panels {
            // resum to shed accumulated update drift
            let total: Complex64 = panels.iter().map(|p| p.value).sum();
            let error: f64 = panels.iter().map(|p| p.error).sum();
            return Quad {
                value: total,
                error,
                converged: error <= abs_tol.max(rel_tol * total.norm()),
                evaluations,
            };
        }
        let (worst, _) = panels.iter().enumerate().fold((0, -1.0), |acc, (i, p)| {
            if p.error > acc.1 {
                (i, p.error)
            } else {
                acc
            }
        });
        let p = panels.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        if !(mid > p.a && mid < p.b) {
            // panel cannot be split further in binary64
            error -= p.error;
            panels.push(Panel { error: 0.0, ..p });
            continue;
        }
        let (lv, le) = gk15(&f, p.a, mid);
        let (rv, re) = gk15(&f, mid, p.b);
        evaluations += 30;
        total += lv + rv - p.value;
        error += le + re - p.error;
        panels.push(Panel {
            a: p.a,
            b: mid,
            value: lv,
            error: le,
        });
        panels.push(Panel {
            a: mid,
            b: p.b,
            value: rv,
            error: re,
        });
    }
}

/// Real-valued convenience wrapper around [`integrate`].
pub fn integrate_real<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    initial: usize,
    abs_tol: f64,
    rel_tol: f64,
    max_panels: usize,
) -> (f64, f64, bool) {
    let q = integrate(
        |x| Complex64::new(f(x), 0.0),
        a,
        b,
        initial,
        abs_tol,
        rel_tol,
        max_panels,
    );
    (q.value.re, q.error, q.converged)
}
