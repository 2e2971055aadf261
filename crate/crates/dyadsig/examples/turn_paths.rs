//! Turn-taking dynamics as a 3D path.
//!
//! Diarized speech turns become a path whose axes accumulate silence,
//! clinician speech, and patient speech. Totals live at level 1 of its
//! log-signature; level 2 records who tended to speak after whom, so
//! reordering the same turns moves the level-2 coordinates while the
//! level-1 totals stay put.
//!
//!     cargo run --example turn_paths

use dyadsig::interaction::{build_turn_path, speech_stats, Role, SpeechSegment};
use dyadsig::signature::log_signature;

fn segments(order: &[(Role, f64)]) -> Vec<SpeechSegment> {
    // Half a second of silence between consecutive turns.
    let mut t = 0.0;
    order
        .iter()
        .map(|&(speaker, dur)| {
            t += 0.5;
            let seg = SpeechSegment { start_s: t, end_s: t + dur, speaker };
            t = seg.end_s;
            seg
        })
        .collect()
}

fn main() -> dyadsig::Result<()> {
    use Role::{Clinician, Patient};
    let window_s = 60.0;
    let conversation = [
        (Clinician, 6.0),
        (Patient, 2.5),
        (Clinician, 4.0),
        (Patient, 9.0),
        (Clinician, 1.5),
        (Patient, 7.0),
    ];
    let segs = segments(&conversation);

    let stats = speech_stats(&segs, window_s)?;
    println!("turn-taking statistics:");
    for name in ["p_cnt", "c_cnt", "p_t", "c_t", "s_t", "p_r", "c_r", "s_r"] {
        println!("  {name:<6} {:>8.3}", stats.get(name).unwrap());
    }

    let ls = log_signature(build_turn_path(&segs, window_s)?.as_path(), 2);
    println!("\nturn-path log-signature (1=silence, 2=clinician, 3=patient):");
    for (word, coord) in ls.words().iter().zip(ls.coords()) {
        println!("  [{word}]  {coord:>10.3}");
    }

    // Same turns, last two swapped: totals unchanged, order terms move.
    let mut reordered = conversation;
    reordered.swap(4, 5);
    let ls_swapped = log_signature(build_turn_path(&segments(&reordered), window_s)?.as_path(), 2);
    println!("\nafter swapping the last two turns:");
    for w in ["1", "2", "3", "12", "13", "23"] {
        let a = ls.get(w).unwrap();
        let b = ls_swapped.get(w).unwrap();
        println!("  [{w:<2}]  {a:>10.3} -> {b:>10.3}   {}", if (a - b).abs() > 1e-12 { "moved" } else { "unchanged" });
    }
    Ok(())
}
