//! Core signature algebra on a small 2D path: computing a truncated
//! signature, reading individual coefficients, checking Chen's identity
//! by splitting the path, and round-tripping through the tensor log.
//!
//!     cargo run --example signature_basics

use dyadsig::signature::{log_signature, path_signature, Path, TruncatedTensor};

fn max_abs_diff(a: &TruncatedTensor, b: &TruncatedTensor) -> f64 {
    (0..=a.depth())
        .flat_map(|k| a.level(k).iter().zip(b.level(k)))
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn main() -> dyadsig::Result<()> {
    // A five-point planar path, roughly a half loop.
    let points = vec![
        vec![0.0, 0.0],
        vec![1.0, 0.5],
        vec![1.5, 2.0],
        vec![0.5, 3.0],
        vec![-1.0, 2.5],
    ];
    let path = Path::from_rows(2, &points)?;
    let sig = path_signature(&path, 3);

    // Level 1 is the total displacement, independent of the route taken.
    let d = path.total_displacement();
    println!("level 1       : {:?}", sig.level(1));
    println!("displacement  : [{}, {}]", d[0], d[1]);

    // The antisymmetric part of level 2 is the signed (Levy) area
    // between the path and its chord.
    let area = 0.5 * (sig.coeff(&[1, 2]) - sig.coeff(&[2, 1]));
    println!("signed area   : {area:.6}");

    // Chen: the signature of the whole path is the tensor product of
    // the signatures of its halves.
    let first = path_signature(&Path::from_rows(2, &points[..3])?, 3);
    let second = path_signature(&Path::from_rows(2, &points[2..])?, 3);
    let glued = first.concat(&second)?;
    println!("chen residue  : {:.3e}", max_abs_diff(&glued, &sig));

    // log then exp recovers the signature; the log-signature itself has
    // fewer coordinates because it drops the algebraic redundancy.
    let round_trip = sig.log()?.exp()?;
    println!("log/exp error : {:.3e}", max_abs_diff(&round_trip, &sig));

    let logsig = log_signature(&path, 3);
    println!("\nlog-signature on the Lyndon basis:");
    for (word, coord) in logsig.words().iter().zip(logsig.coords()) {
        println!("  [{word}]  {coord:>10.6}");
    }
    Ok(())
}
