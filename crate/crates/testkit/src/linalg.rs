//! Dense determinant by Gaussian elimination with partial pivoting.

/// `(sign, ln |det m|)`; the matrix is rescaled by its largest entry first
/// so huge entries do not overflow.
pub fn log_abs_det(m: &[Vec<f64>]) -> (f64, f64) {
    let k = m.len();
    let top = m.iter().flatten().fold(0.0_f64, |a, x| a.max(x.abs()));
    if top == 0.0 {
        return (0.0, f64::NEG_INFINITY);
    }
    let mut a: Vec<Vec<f64>> = m.iter().map(|row| row.iter().map(|x| x / top).collect()).collect();
    let mut sign = 1.0;
    let mut log = k as f64 * top.ln();
    for col in 0..k {
        let pivot = (col..k).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())).unwrap();
        if a[pivot][col] == 0.0 {
            return (0.0, f64::NEG_INFINITY);
        }
        if pivot != col {
            a.swap(pivot, col);
            sign = -sign;
        }
        let p = a[col][col];
        sign *= p.signum();
        log += p.abs().ln();
        for i in col + 1..k {
            let factor = a[i][col] / p;
            for j in col..k {
                a[i][j] -= factor * a[col][j];
            }
        }
    }
    (sign, log)
}
