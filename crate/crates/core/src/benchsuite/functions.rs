//! The test-function definitions: objective, analytic gradient, standard
//! start point and (where analytic) the minimum value.
//!
//! Conventions: "extended" functions act on consecutive pairs (or quadruples
//! for the Powell function) of coordinates; separable functions act
//! coordinate-wise with 1-based index weights.

/// f = sum over pairs of 100 (b - a^2)^2 + (1 - a)^2, start (-1.2, 1, ...).
pub fn ext_rosenbrock_f(x: &[f64]) -> f64 {
    x.chunks_exact(2)
        .map(|p| {
            let t = p[1] - p[0] * p[0];
            100.0 * t * t + (1.0 - p[0]) * (1.0 - p[0])
        })
        .sum()
}

pub fn ext_rosenbrock_g(x: &[f64]) -> Vec<f64> {
    let mut g = vec![0.0; x.len()];
    for (i, p) in x.chunks_exact(2).enumerate() {
        let t = p[1] - p[0] * p[0];
        g[2 * i] = -400.0 * p[0] * t - 2.0 * (1.0 - p[0]);
        g[2 * i + 1] = 200.0 * t;
    }
    g
}

/// f = sum over pairs of 100 (b - a^3)^2 + (1 - a)^2, start (-1.2, 1, ...).
pub fn ext_white_holst_f(x: &[f64]) -> f64 {
    x.chunks_exact(2)
        .map(|p| {
            let t = p[1] - p[0] * p[0] * p[0];
            100.0 * t * t + (1.0 - p[0]) * (1.0 - p[0])
        })
        .sum()
}

pub fn ext_white_holst_g(x: &[f64]) -> Vec<f64> {
    let mut g = vec![0.0; x.len()];
    for (i, p) in x.chunks_exact(2).enumerate() {
        let t = p[1] - p[0] * p[0] * p[0];
        g[2 * i] = -600.0 * p[0] * p[0] * t - 2.0 * (1.0 - p[0]);
        g[2 * i + 1] = 200.0 * t;
    }
    g
}

/// Beale residuals on each pair, start (1, 0.8, ...), minimum at (3, 0.5).
pub fn ext_beale_f(x: &[f64]) -> f64 {
    x.chunks_exact(2)
        .map(|p| {
            let (a, b) = (p[0], p[1]);
            let t1 = 1.5 - a * (1.0 - b);
            let t2 = 2.25 - a * (1.0 - b * b);
            let t3 = 2.625 - a * (1.0 - b * b * b);
            t1 * t1 + t2 * t2 + t3 * t3
        })
        .sum()
}

pub fn ext_beale_g(x: &[f64]) -> Vec<f64> {
    let mut g = vec![0.0; x.len()];
    for (i, p) in x.chunks_exact(2).enumerate() {
        let (a, b) = (p[0], p[1]);
        let t1 = 1.5 - a * (1.0 - b);
        let t2 = 2.25 - a * (1.0 - b * b);
        let t3 = 2.625 - a * (1.0 - b * b * b);
        g[2 * i] = -2.0 * (t1 * (1.0 - b) + t2 * (1.0 - b * b) + t3 * (1.0 - b * b * b));
        g[2 * i + 1] = 2.0 * (t1 * a + t2 * 2.0 * a * b + t3 * 3.0 * a * b * b);
    }
    g
}

/// Himmelblau on each pair, start (1, 1, ...).
pub fn ext_himmelblau_f(x: &[f64]) -> f64 {
    x.chunks_exact(2)
        .map(|p| {
            let q = p[0] * p[0] + p[1] - 11.0;
            let r = p[0] + p[1] * p[1] - 7.0;
            q * q + r * r
        })
        .sum()
}

pub fn ext_himmelblau_g(x: &[f64]) -> Vec<f64> {
    let mut g = vec![0.0; x.len()];
    for (i, p) in x.chunks_exact(2).enumerate() {
        let q = p[0] * p[0] + p[1] - 11.0;
        let r = p[0] + p[1] * p[1] - 7.0;
        g[2 * i] = 4.0 * p[0] * q + 2.0 * r;
        g[2 * i + 1] = 2.0 * q + 4.0 * p[1] * r;
    }
    g
}

/// f = sum_{i<n} (x_i - 1)^2 + (sum_j x_j^2 - 1/4)^2, start (1, 2, ..., n).
pub fn ext_penalty_f(x: &[f64]) -> f64 {
    let n = x.len();
    let head: f64 = x[..n - 1].iter().map(|v| (v - 1.0) * (v - 1.0)).sum();
    let t = x.iter().map(|v| v * v).sum::<f64>() - 0.25;
    head + t * t
}

pub fn ext_penalty_g(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let t = x.iter().map(|v| v * v).sum::<f64>() - 0.25;
    let mut g: Vec<f64> = x.iter().map(|v| 4.0 * v * t).collect();
    for i in 0..n - 1 {
        g[i] += 2.0 * (x[i] - 1.0);
    }
    g
}

/// f = sum i x_i^2 + (sum x_j)^2 / 100, start (0.5, ...).
pub fn perturbed_quadratic_f(x: &[f64]) -> f64 {
    let s: f64 = x.iter().sum();
    x.iter()
        .enumerate()
        .map(|(i, v)| (i + 1) as f64 * v * v)
        .sum::<f64>()
        + s * s / 100.0
}

pub fn perturbed_quadratic_g(x: &[f64]) -> Vec<f64> {
    let s: f64 = x.iter().sum();
    x.iter()
        .enumerate()
        .map(|(i, v)| 2.0 * (i + 1) as f64 * v + s / 50.0)
        .collect()
}

/// f = sum (i/10)(exp(x_i) - x_i), start (1, ...), minimum at the origin.
pub fn raydan1_f(x: &[f64]) -> f64 {
    x.iter()
        .enumerate()
        .map(|(i, v)| (i + 1) as f64 / 10.0 * (v.exp() - v))
        .sum()
}

pub fn raydan1_g(x: &[f64]) -> Vec<f64> {
    x.iter()
        .enumerate()
        .map(|(i, v)| (i + 1) as f64 / 10.0 * (v.exp() - 1.0))
        .collect()
}

/// f = sum (exp(x_i) - x_i), start (1, ...), minimum n at the origin.
pub fn raydan2_f(x: &[f64]) -> f64 {
    x.iter().map(|v| v.exp() - v).sum()
}

pub fn raydan2_g(x: &[f64]) -> Vec<f64> {
    x.iter().map(|v| v.exp() - 1.0).collect()
}

/// f = sum (exp(x_i) - i x_i), start (1/n, ...), minimum at x_i = ln i.
pub fn diagonal1_f(x: &[f64]) -> f64 {
    x.iter()
        .enumerate()
        .map(|(i, v)| v.exp() - (i + 1) as f64 * v)
        .sum()
}

pub fn diagonal1_g(x: &[f64]) -> Vec<f64> {
    x.iter()
        .enumerate()
        .map(|(i, v)| v.exp() - (i + 1) as f64)
        .collect()
}

/// f = sum (exp(x_i) - x_i / i), start (1/i per coordinate), minimum at
/// x_i = -ln i.
pub fn diagonal2_f(x: &[f64]) -> f64 {
    x.iter()
        .enumerate()
        .map(|(i, v)| v.exp() - v / (i + 1) as f64)
        .sum()
}

pub fn diagonal2_g(x: &[f64]) -> Vec<f64> {
    x.iter()
        .enumerate()
        .map(|(i, v)| v.exp() - 1.0 / (i + 1) as f64)
        .collect()
}

/// f = sum_{i<n} (x_i + x_{i+1} - 3)^2 + (x_i - x_{i+1} + 1)^4, start (2, ...).
pub fn gen_tridiagonal1_f(x: &[f64]) -> f64 {
    x.windows(2)
        .map(|w| {
            let p = w[0] + w[1] - 3.0;
            let q = w[0] - w[1] + 1.0;
            p * p + q * q * q * q
        })
        .sum()
}

pub fn gen_tridiagonal1_g(x: &[f64]) -> Vec<f64> {
    let mut g = vec![0.0; x.len()];
    for i in 0..x.len() - 1 {
        let p = x[i] + x[i + 1] - 3.0;
        let q = x[i] - x[i + 1] + 1.0;
        let q3 = 4.0 * q * q * q;
        g[i] += 2.0 * p + q3;
        g[i + 1] += 2.0 * p - q3;
    }
    g
}

/// Pairwise version of the tridiagonal function, start (2, ...), minimum 0
/// at repeating (1, 2).
pub fn ext_tridiagonal1_f(x: &[f64]) -> f64 {
    x.chunks_exact(2)
        .map(|p| {
            let a = p[0] + p[1] - 3.0;
            let b = p[0] - p[1] + 1.0;
            a * a + b * b * b * b
        })
        .sum()
}

pub fn ext_tridiagonal1_g(x: &[f64]) -> Vec<f64> {
    let mut g = vec![0.0; x.len()];
    for (i, p) in x.chunks_exact(2).enumerate() {
        let a = p[0] + p[1] - 3.0;
        let b = p[0] - p[1] + 1.0;
        let b3 = 4.0 * b * b * b;
        g[2 * i] = 2.0 * a + b3;
        g[2 * i + 1] = 2.0 * a - b3;
    }
    g
}

/// Powell's singular function on quadruples, start (3, -1, 0, 1, ...).
pub fn ext_powell_f(x: &[f64]) -> f64 {
    x.chunks_exact(4)
        .map(|c| {
            let p = c[0] + 10.0 * c[1];
            let q = c[2] - c[3];
            let r = c[1] - 2.0 * c[2];
            let t = c[0] - c[3];
            p * p + 5.0 * q * q + r.powi(4) + 10.0 * t.powi(4)
        })
        .sum()
}

pub fn ext_powell_g(x: &[f64]) -> Vec<f64> {
    let mut g = vec![0.0; x.len()];
    for (i, c) in x.chunks_exact(4).enumerate() {
        let p = c[0] + 10.0 * c[1];
        let q = c[2] - c[3];
        let r = c[1] - 2.0 * c[2];
        let t = c[0] - c[3];
        let r3 = 4.0 * r * r * r;
        let t3 = 40.0 * t * t * t;
        g[4 * i] = 2.0 * p + t3;
        g[4 * i + 1] = 20.0 * p + r3;
        g[4 * i + 2] = 10.0 * q - 2.0 * r3;
        g[4 * i + 3] = -10.0 * q - t3;
    }
    g
}

/// f = sum (exp(x_i) - sqrt(i) x_i), start (1, ...).
pub fn hager_f(x: &[f64]) -> f64 {
    x.iter()
        .enumerate()
        .map(|(i, v)| v.exp() - ((i + 1) as f64).sqrt() * v)
        .sum()
}

pub fn hager_g(x: &[f64]) -> Vec<f64> {
    x.iter()
        .enumerate()
        .map(|(i, v)| v.exp() - ((i + 1) as f64).sqrt())
        .collect()
}

/// f = 1/2 sum i x_i^2 - x_n, start (0.5, ...), minimum -1/(2n).
pub fn qf1_f(x: &[f64]) -> f64 {
    let n = x.len();
    0.5 * x
        .iter()
        .enumerate()
        .map(|(i, v)| (i + 1) as f64 * v * v)
        .sum::<f64>()
        - x[n - 1]
}

pub fn qf1_g(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let mut g: Vec<f64> = x
        .iter()
        .enumerate()
        .map(|(i, v)| (i + 1) as f64 * v)
        .collect();
    g[n - 1] -= 1.0;
    g
}

/// f = sum_{i<n} (x_i^2 - 2)^2 + (sum x_j^2 - 1/2)^2, start (1, ...).
pub fn qp1_f(x: &[f64]) -> f64 {
    let n = x.len();
    let head: f64 = x[..n - 1]
        .iter()
        .map(|v| {
            let t = v * v - 2.0;
            t * t
        })
        .sum();
    let t = x.iter().map(|v| v * v).sum::<f64>() - 0.5;
    head + t * t
}

pub fn qp1_g(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let t = x.iter().map(|v| v * v).sum::<f64>() - 0.5;
    let mut g: Vec<f64> = x.iter().map(|v| 4.0 * v * t).collect();
    for i in 0..n - 1 {
        g[i] += 4.0 * x[i] * (x[i] * x[i] - 2.0);
    }
    g
}

/// f = sum i x_i^2, start (1, ...).
pub fn sum_squares_f(x: &[f64]) -> f64 {
    x.iter()
        .enumerate()
        .map(|(i, v)| (i + 1) as f64 * v * v)
        .sum()
}

pub fn sum_squares_g(x: &[f64]) -> Vec<f64> {
    x.iter()
        .enumerate()
        .map(|(i, v)| 2.0 * (i + 1) as f64 * v)
        .collect()
}

/// DENSCHNB on each pair, start (1, ...), minimum 0 at (2, -1).
pub fn ext_denschnb_f(x: &[f64]) -> f64 {
    x.chunks_exact(2)
        .map(|p| {
            let a = p[0] - 2.0;
            a * a + a * a * p[1] * p[1] + (p[1] + 1.0) * (p[1] + 1.0)
        })
        .sum()
}

pub fn ext_denschnb_g(x: &[f64]) -> Vec<f64> {
    let mut g = vec![0.0; x.len()];
    for (i, p) in x.chunks_exact(2).enumerate() {
        let a = p[0] - 2.0;
        g[2 * i] = 2.0 * a + 2.0 * a * p[1] * p[1];
        g[2 * i + 1] = 2.0 * a * a * p[1] + 2.0 * (p[1] + 1.0);
    }
    g
}

/// Six-hump camel function (n = 2), start (0.5, 0.5).
pub fn camel6_f(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    4.0 * a * a - 2.1 * a.powi(4) + a.powi(6) / 3.0 + a * b - 4.0 * b * b + 4.0 * b.powi(4)
}

pub fn camel6_g(x: &[f64]) -> Vec<f64> {
    let (a, b) = (x[0], x[1]);
    vec![
        8.0 * a - 8.4 * a.powi(3) + 2.0 * a.powi(5) + b,
        a - 8.0 * b + 16.0 * b.powi(3),
    ]
}

/// Booth function (n = 2), start (0, 0), minimum 0 at (1, 3).
pub fn booth_f(x: &[f64]) -> f64 {
    let p = x[0] + 2.0 * x[1] - 7.0;
    let q = 2.0 * x[0] + x[1] - 5.0;
    p * p + q * q
}

pub fn booth_g(x: &[f64]) -> Vec<f64> {
    let p = x[0] + 2.0 * x[1] - 7.0;
    let q = 2.0 * x[0] + x[1] - 5.0;
    vec![2.0 * p + 4.0 * q, 4.0 * p + 2.0 * q]
}
