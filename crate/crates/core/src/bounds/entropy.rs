//! Entropy-method estimates and small numeric optimizers.

use num_bigint::BigInt;

use crate::series::binomial;

/// Binary entropy in bits; zero at the endpoints, NaN outside `[0, 1]`.
pub fn h(x: f64) -> f64 {
    if !(0.0..=1.0).contains(&x) {
        return f64::NAN;
    }
    if x == 0.0 || x == 1.0 {
        return 0.0;
    }
    -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
}

/// `log2 C(a n, b n) / n ≈ a H(b/a)`.
pub fn binomial_exponent(a: f64, b: f64) -> f64 {
    if a == 0.0 && b == 0.0 {
        return 0.0;
    }
    a * h(b / a)
}

/// `log2` of a positive big integer.
pub fn log2_big(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_string().parse::<f64>().expect("finite").log2();
    }
    let shift = bits - 64;
    let top: BigInt = x >> shift;
    top.to_string().parse::<f64>().expect("finite").log2() + shift as f64
}

/// `log2 C(n, round(δ n)) / n`, exactly computed.
pub fn empirical_binomial_exponent(n: u64, delta: f64) -> f64 {
    let k = (delta * n as f64).round() as u64;
    log2_big(&binomial(n, k)) / n as f64
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Maximizes a unimodal `f` on `[a, b]` to width `tol`.
pub fn golden_max(mut f: impl FnMut(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    (a + b) / 2.0
}

/// Value `NaN` (outside the domain) counts as `-inf`.
fn value(f: &impl Fn(&[f64]) -> f64, x: &[f64]) -> f64 {
    let v = f(x);
    if v.is_nan() {
        f64::NEG_INFINITY
    } else {
        v
    }
}

/// Grid search with spacing `step` over `(0, upper_i)` in every coordinate,
/// followed by rounds of coordinate-wise golden-section refinement until
/// the point moves less than `tol`.
pub fn maximize(f: impl Fn(&[f64]) -> f64, upper: &[f64], step: f64, tol: f64) -> (Vec<f64>, f64) {
    let dims = upper.len();
    let counts: Vec<usize> = upper.iter().map(|u| (u / step).round() as usize).collect();
    let mut best = (vec![0.0; dims], f64::NEG_INFINITY);
    let mut idx = vec![1usize; dims];
    let mut x = vec![0.0; dims];
    'grid: loop {
        for (d, &i) in idx.iter().enumerate() {
            x[d] = i as f64 * step;
        }
        let v = value(&f, &x);
        if v > best.1 {
            best = (x.clone(), v);
        }
        for d in 0..dims {
            idx[d] += 1;
            if idx[d] < counts[d] {
                continue 'grid;
            }
            idx[d] = 1;
        }
        break;
    }
    let (mut x, mut fx) = best;
    let mut radius = step;
    for _ in 0..200 {
        let before = x.clone();
        for d in 0..dims {
            let lo = (x[d] - radius).max(0.0);
            let hi = (x[d] + radius).min(upper[d]);
            let mut probe = x.clone();
            let t = golden_max(
                |t| {
                    probe[d] = t;
                    value(&f, &probe)
                },
                lo,
                hi,
                tol / 10.0,
            );
            let mut cand = x.clone();
            cand[d] = t;
            let v = value(&f, &cand);
            if v >= fx {
                x = cand;
                fx = v;
            }
        }
        let moved = x.iter().zip(&before).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        if moved < tol {
            if radius <= tol {
                break;
            }
            radius /= 4.0;
        }
    }
    (x, fx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entropy_values() {
        assert_eq!(h(0.5), 1.0);
        assert_eq!(h(0.0), 0.0);
        assert!(h(1.5).is_nan());
        assert!((h(0.25) - h(0.75)).abs() < 1e-15);
    }

    #[test]
    fn binomial_estimate() {
        for delta in [0.1, 0.267, 0.5] {
            assert!((empirical_binomial_exponent(10_000, delta) - h(delta)).abs() < 1e-2);
        }
    }

    #[test]
    fn golden_finds_parabola_top() {
        let x = golden_max(|x| -(x - 0.3) * (x - 0.3), 0.0, 1.0, 1e-9);
        assert!((x - 0.3).abs() < 1e-8);
    }

    #[test]
    fn maximize_two_dims() {
        let (x, v) = maximize(|p| -(p[0] - 0.2).powi(2) - (p[1] - 0.7).powi(2), &[1.0, 1.0], 0.01, 1e-8);
        assert!((x[0] - 0.2).abs() < 1e-6 && (x[1] - 0.7).abs() < 1e-6 && v.abs() < 1e-10);
    }
}
