//! Small dense complex-matrix helpers shared by the group layer.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMat = DMatrix<Complex64>;

pub fn eye(n: usize) -> CMat {
    CMat::identity(n, n)
}

pub fn frob_norm(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn dist(a: &CMat, b: &CMat) -> f64 {
    frob_norm(&(a - b))
}

/// Matrix exponential by scaling and squaring with a truncated series.
/// Accurate to around 1e-14 for norms up to ~5 after scaling.
pub fn expm(x: &CMat) -> CMat {
    let norm = frob_norm(x);
    let s = if norm > 0.25 {
        (norm / 0.25).log2().ceil() as u32
    } else {
        0
    };
    let scaled = x.map(|z| z / (2f64.powi(s as i32)));
    let n = x.nrows();
    let mut term = eye(n);
    let mut acc = eye(n);
    for k in 1..=18u32 {
        term = &term * &scaled;
        term /= Complex64::new(k as f64, 0.0);
        acc += &term;
    }
    let mut out = acc;
    for _ in 0..s {
        out = &out * &out;
    }
    out
}

/// Principal logarithm via inverse scaling (repeated square roots) and a
/// Mercator series. Intended for matrices in a neighborhood of the
/// identity (group elements reached by short curves).
pub fn logm(m: &CMat) -> CMat {
    let n = m.nrows();
    let mut a = m.clone();
    let mut k = 0u32;
    while dist(&a, &eye(n)) > 0.25 {
        a = sqrtm(&a);
        k += 1;
        if k > 40 {
            break;
        }
    }
    let e = &a - eye(n);
    let mut term = eye(n);
    let mut acc = CMat::zeros(n, n);
    for j in 1..=30u32 {
        term = &term * &e;
        let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
        acc += term.map(|z| z * sign / j as f64);
    }
    acc.map(|z| z * 2f64.powi(k as i32))
}

/// Denman–Beavers square root iteration.
fn sqrtm(m: &CMat) -> CMat {
    let n = m.nrows();
    let mut y = m.clone();
    let mut z = eye(n);
    for _ in 0..60 {
        let yi = y.clone().try_inverse().expect("sqrtm: singular iterate");
        let zi = z.clone().try_inverse().expect("sqrtm: singular iterate");
        let y_next = (&y + &zi).map(|v| v * 0.5);
        let z_next = (&z + &yi).map(|v| v * 0.5);
        let delta = dist(&y_next, &y);
        y = y_next;
        z = z_next;
        if delta < 1e-15 {
            break;
        }
    }
    y
}

/// Kernel dimension of the linear map whose matrix has one row per input
/// basis vector: `nrows - rank`, with singular values below `ratio` times
/// the largest counting as zero.
pub fn null_dimension(m: &DMatrix<f64>, ratio: f64) -> usize {
    if m.nrows() == 0 {
        return 0;
    }
    let svd = m.clone().svd(false, false);
    let mut sv: Vec<f64> = svd.singular_values.iter().cloned().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let smax = sv.first().cloned().unwrap_or(0.0);
    if smax == 0.0 {
        return m.nrows();
    }
    let rank = sv.iter().filter(|&&s| s > ratio * smax).count();
    m.nrows() - rank.min(m.nrows())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C;

    #[test]
    fn expm_matches_plain_series() {
        // Independent oracle: raw Taylor sum, no scaling.
        let x = CMat::from_row_slice(
            2,
            2,
            &[
                C::new(0.0, 0.7),
                C::new(0.3, 0.1),
                C::new(-0.3, 0.1),
                C::new(0.0, -0.7),
            ],
        );
        let mut term = eye(2);
        let mut oracle = eye(2);
        for k in 1..=40u32 {
            term = &term * &x;
            term /= C::new(k as f64, 0.0);
            oracle += &term;
        }
        assert!(dist(&expm(&x), &oracle) < 1e-13);
    }

    #[test]
    fn logm_inverts_expm() {
        let x = CMat::from_row_slice(
            2,
            2,
            &[
                C::new(0.0, 0.4),
                C::new(0.2, 0.0),
                C::new(-0.2, 0.0),
                C::new(0.0, -0.4),
            ],
        );
        let m = expm(&x);
        assert!(dist(&logm(&m), &x) < 1e-12);
    }

    #[test]
    fn null_dimension_detects_rank() {
        let m = DMatrix::<f64>::from_row_slice(3, 3, &[1.0, 0.0, 0.0, 0.0, 2.0, 0.0, 1.0, 2.0, 0.0]);
        // Third column zero, rows dependent: rank 2, nullity (as row kernel) 1.
        assert_eq!(null_dimension(&m, 1e-10), 1);
        let z = DMatrix::<f64>::zeros(2, 5);
        assert_eq!(null_dimension(&z, 1e-10), 2);
    }
}
