//! Head-movement features from two tracked people.
//!
//! Each person contributes a pixel-coordinate track. The patient's
//! time-augmented 3D path and the joint 4D path (patient x, y alongside
//! clinician x, y) are summarized by depth-3 log-signatures; the joint
//! coordinates capture co-movement that neither track shows alone.
//!
//!     cargo run --example movement_features

use dyadsig::interaction::{build_movement_paths, movement_features, HeadTrack, Role, TrackSample};

fn main() -> dyadsig::Result<()> {
    // Patient sways on a slow circle; clinician mirrors it at half
    // amplitude a quarter turn later, plus a slow rightward drift.
    let n = 240u64;
    let sample = |f: u64, phase: f64, amp: f64, cx: f64| {
        let angle = f as f64 / 24.0 + phase;
        TrackSample {
            frame: f,
            x: cx + amp * angle.cos() + f as f64 * 0.02,
            y: 260.0 + amp * angle.sin(),
        }
    };
    let patient = HeadTrack::new(
        Role::Patient,
        (0..n).map(|f| sample(f, 0.0, 40.0, 320.0)).collect(),
    )?;
    let clinician = HeadTrack::new(
        Role::Clinician,
        (0..n).map(|f| sample(f, std::f64::consts::FRAC_PI_2, 20.0, 960.0)).collect(),
    )?;

    let paths = build_movement_paths(&patient, &clinician, n, 15.0)?;
    println!(
        "patient path: {} points x {} dims   joint path: {} points x {} dims",
        paths.patient.len(),
        paths.patient.point(0).len(),
        paths.joint.len(),
        paths.joint.point(0).len()
    );

    let features = movement_features(&paths, 3);
    println!("{} movement features\n", features.len());
    println!("dispersion:");
    for name in ["x_p_std", "y_p_std"] {
        println!("  {name:<18} {:>12.4}", features.get(name).unwrap());
    }
    println!("patient path, level 2 (x=1, y=2, time=3):");
    for name in ["video_p_L2_12", "video_p_L2_13", "video_p_L2_23"] {
        println!("  {name:<18} {:>12.4}", features.get(name).unwrap());
    }
    println!("joint path, cross-person areas (patient 1,2 vs clinician 3,4):");
    for name in ["video_joint_L2_13", "video_joint_L2_14", "video_joint_L2_23", "video_joint_L2_24"] {
        println!("  {name:<18} {:>12.4}", features.get(name).unwrap());
    }
    Ok(())
}
