//! Sign certificates for v(t) = sum t^a_j - sum t^b_j on [0, 1].
use hypermellin::conditions::{check_v_nonneg, v_func, weak_supermajorization};
use hypermellin::series::ParamVec;

fn main() -> hypermellin::Result<()> {
    let cases: [(&[f64], &[f64]); 3] = [(&[0.5, 2.0], &[1.0, 1.5]), (&[1.0, 1.0], &[0.5, 1.5]), (&[0.3, 2.5], &[0.4, 2.2])];
    for (a, b) in cases {
        let (pa, pb) = (ParamVec::real(a), ParamVec::real(b));
        let cert = check_v_nonneg(&pa, &pb, 12);
        println!(
            "a={a:?} b={b:?}: majorized={} v(0.5)={:+.4} -> {:?} via {:?} (witness {:?})",
            weak_supermajorization(&pa, &pb)?,
            v_func(&pa, &pb, 0.5)?,
            cert.status,
            cert.method,
            cert.witness
        );
    }
    Ok(())
}
