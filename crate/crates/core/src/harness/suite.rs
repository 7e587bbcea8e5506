use std::thread;

use super::fd::FdOptions;
use super::main_finite::{verify_main_finite, verify_single_leaf};
use super::report::{Tolerance, VerificationReport};
use super::scenarios::{octahedral_family, random_tet_family, rigid_motion_family, rng, DEFAULT_SEED};
use super::verify::{verify_corollary2, verify_schlafli, Corruption};
use crate::error::Result;
use crate::pleated::random_pleat_scenario;

/// Environment variable that overrides the recorded suite seed.
pub const SEED_VAR: &str = "SCHLAFLI_SEED";

/// The suite seed: `SCHLAFLI_SEED` if set and numeric, else the default.
pub fn suite_seed() -> u64 {
    std::env::var(SEED_VAR).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_SEED)
}

/// A scenario run queued for [`run_jobs`].
pub type Job = Box<dyn FnOnce() -> Result<VerificationReport> + Send>;

fn failed(label: &str, e: &crate::Error) -> VerificationReport {
    VerificationReport::new(label, f64::NAN, f64::NAN, 0.0, Tolerance::default()).with_note(format!("error: {e}"))
}

/// Runs independent jobs on scoped threads; the output keeps job order.
pub fn run_jobs(jobs: Vec<(String, Job)>) -> Vec<VerificationReport> {
    let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(jobs.len().max(1));
    let mut slots: Vec<Option<(String, Job)>> = jobs.into_iter().map(Some).collect();
    let mut out: Vec<Option<VerificationReport>> = vec![None; slots.len()];
    thread::scope(|s| {
        let chunk = slots.len().div_ceil(workers).max(1);
        for (js, outs) in slots.chunks_mut(chunk).zip(out.chunks_mut(chunk)) {
            s.spawn(move || {
                for (j, o) in js.iter_mut().zip(outs.iter_mut()) {
                    let (label, job) = j.take().expect("each job runs once");
                    *o = Some(job().unwrap_or_else(|e| failed(&label, &e)));
                }
            });
        }
    });
    out.into_iter().map(|r| r.expect("every job reports")).collect()
}

/// The built-in verification suite: seeded random tetrahedra and a rigid
/// motion, octahedral spheres, the single closed leaf and seeded pleated
/// rectangles. Every report records the seed.
pub fn run_suite(seed: u64) -> Vec<VerificationReport> {
    let opts = FdOptions::default();
    let tol = Tolerance::default();
    let mut g = rng(seed);
    let mut jobs: Vec<(String, Job)> = Vec::new();
    for i in 0..50 {
        let f = random_tet_family(&mut g, format!("tetrahedron {i}"));
        jobs.push((f.label.clone(), Box::new(move || verify_schlafli(&f, 0.0, &opts, tol, Corruption::None))));
    }
    let rigid = rigid_motion_family(&mut g);
    jobs.push((rigid.label.clone(), Box::new(move || verify_schlafli(&rigid, 0.0, &opts, tol, Corruption::None))));
    for i in 0..20 {
        let f = octahedral_family(&mut g, format!("octahedral sphere {i}"));
        jobs.push((f.label.clone(), Box::new(move || verify_corollary2(&f, 0.0, &opts, tol, Corruption::None))));
    }
    jobs.push(("single closed leaf".into(), Box::new(move || verify_single_leaf(0.01, &opts, tol))));
    for n in [0, 1, 5] {
        let s = random_pleat_scenario(&mut g, format!("pleated rectangle, {n} leaves"), n);
        jobs.push((
            s.label.clone(),
            Box::new(move || Ok(verify_main_finite(&s.family(), &s.bend_family(), 0.01, &opts, tol)?.report)),
        ));
    }
    run_jobs(jobs).into_iter().map(|r| r.with_seed(seed)).collect()
}
