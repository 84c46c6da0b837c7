use super::lu;
use super::matrix::GeneralMatrix;

// Degree-13 Padé numerator coefficients.
const B: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

const THETA_13: f64 = 5.371920351148152;

/// e^{b t} by scaling-and-squaring with a degree-13 Padé approximant.
pub fn mat_exp(b: &GeneralMatrix, t: f64) -> GeneralMatrix {
    let d = b.dim();
    let mut a = b.scale(t);

    let norm = one_norm(&a);
    let squarings = if norm > THETA_13 {
        (norm / THETA_13).log2().ceil() as u32
    } else {
        0
    };
    if squarings > 0 {
        a = a.scale(0.5_f64.powi(squarings as i32));
    }

    let ident = GeneralMatrix::identity(d);
    let a2 = a.mul(&a);
    let a4 = a2.mul(&a2);
    let a6 = a2.mul(&a4);

    let u_inner = a6.scale(B[13]).add(&a4.scale(B[11])).add(&a2.scale(B[9]));
    let u = a.mul(
        &a6.mul(&u_inner)
            .add(&a6.scale(B[7]))
            .add(&a4.scale(B[5]))
            .add(&a2.scale(B[3]))
            .add(&ident.scale(B[1])),
    );
    let v_inner = a6.scale(B[12]).add(&a4.scale(B[10])).add(&a2.scale(B[8]));
    let v = a6
        .mul(&v_inner)
        .add(&a6.scale(B[6]))
        .add(&a4.scale(B[4]))
        .add(&a2.scale(B[2]))
        .add(&ident.scale(B[0]));

    // (V - U) X = (V + U); the denominator is nonsingular at this scaling.
    let mut x = lu::solve(&v.sub(&u), &v.add(&u), "Padé denominator")
        .expect("Padé denominator is nonsingular for scaled input");

    for _ in 0..squarings {
        x = x.mul(&x);
    }
    x
}

fn one_norm(a: &GeneralMatrix) -> f64 {
    let d = a.dim();
    let mut best = 0.0_f64;
    for j in 0..d {
        let col: f64 = (0..d).map(|i| a.at(i, j).abs()).sum();
        best = best.max(col);
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_time_is_identity() {
        let b = GeneralMatrix::from_rows(2, &[0.3, -1.0, 2.0, 0.1]).unwrap();
        let e = mat_exp(&b, 0.0);
        assert!(e.max_abs_diff(&GeneralMatrix::identity(2)) < 1e-15);
    }

    #[test]
    fn scalar_case() {
        let b = GeneralMatrix::from_rows(1, &[0.7]).unwrap();
        let e = mat_exp(&b, 1.0);
        assert!((e.at(0, 0) - 0.7_f64.exp()).abs() < 1e-14);
    }

    #[test]
    fn group_law_oracle() {
        let b =
            GeneralMatrix::from_rows(3, &[0.2, -0.8, 0.5, 1.1, 0.0, -0.4, 0.3, 0.9, -0.6]).unwrap();
        let whole = mat_exp(&b, 1.0);
        let parts = mat_exp(&b, 0.3).mul(&mat_exp(&b, 0.7));
        let tol = 1e-10 * whole.max_abs().max(1.0);
        assert!(whole.max_abs_diff(&parts) < tol);
    }

    #[test]
    fn transpose_commutes() {
        let b = GeneralMatrix::from_rows(2, &[0.5, 2.0, -1.0, 0.25]).unwrap();
        let lhs = mat_exp(&b, 0.9).transpose();
        let rhs = mat_exp(&b.transpose(), 0.9);
        assert!(lhs.max_abs_diff(&rhs) < 1e-12 * lhs.max_abs().max(1.0));
    }

    #[test]
    fn large_norm_scaling() {
        let b = GeneralMatrix::from_rows(2, &[3.0, 1.0, 0.0, 2.5]).unwrap();
        let e = mat_exp(&b, 2.0);
        // Triangular: diagonal of the exponential is exp of the diagonal.
        assert!((e.at(0, 0) - 6.0_f64.exp()).abs() < 1e-9 * 6.0_f64.exp());
        assert!((e.at(1, 1) - 5.0_f64.exp()).abs() < 1e-9 * 5.0_f64.exp());
    }
}
