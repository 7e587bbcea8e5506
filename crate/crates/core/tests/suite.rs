use std::time::Instant;

use schlafli_core::harness::scenarios::octahedron_triangles;
use schlafli_core::harness::*;

#[test]
fn suite_passes_and_is_reproducible() {
    let start = Instant::now();
    let a = run_suite(17);
    let elapsed = start.elapsed();
    for r in &a {
        assert!(r.pass, "{r:?}");
        assert_eq!(r.seed, Some(17));
    }
    assert_eq!(a.len(), 50 + 1 + 20 + 1 + 3);
    let b = run_suite(17);
    assert_eq!(emit_report(&a, ReportFormat::Csv), emit_report(&b, ReportFormat::Csv));
    eprintln!("suite took {elapsed:?}");
}

#[test]
fn jobs_keep_their_order_and_errors_fail() {
    let jobs: Vec<(String, Job)> = (0..7)
        .map(|i| {
            let label = format!("job {i}");
            let l = label.clone();
            let job: Job = if i == 3 {
                Box::new(|| Err(schlafli_core::Error::Precondition("no".into())))
            } else {
                Box::new(move || Ok(VerificationReport::new(l, 1.0, 1.0, 1e-4, Tolerance::default())))
            };
            (label, job)
        })
        .collect();
    let out = run_jobs(jobs);
    let names: Vec<&str> = out.iter().map(|r| r.scenario.as_str()).collect();
    assert_eq!(names, ["job 0", "job 1", "job 2", "job 3", "job 4", "job 5", "job 6"]);
    assert!(!out[3].pass && out.iter().filter(|r| r.pass).count() == 6);
}

#[test]
fn polyhedron_family_file_round_trip() {
    let text = r#"{
        "label": "moving vertex",
        "vertices": [[[0.3, 0.1, 0.0]], [[-0.2, 0.4, 0.1]], [[0.0, -0.3, 0.2], [0.5, 0.1, 0.0]], [[0.1, 0.0, -0.5]]],
        "t0": 0.01
    }"#;
    let f = PolyhedronFamilyFile::from_json(text).unwrap();
    assert_eq!(f.run.t0, Some(0.01));
    assert_eq!(PolyhedronFamilyFile::from_json(&f.to_json().unwrap()).unwrap(), f);
    let fam = f.family().unwrap();
    let r = verify_schlafli(&fam, 0.01, &FdOptions::default(), Tolerance::default(), Corruption::None).unwrap();
    assert!(r.pass);
    assert!(PolyhedronFamilyFile::from_json(r#"{"label": "x", "vertices": [[]]}"#).is_err());
}

#[test]
fn surface_family_file_verifies() {
    let mut vertices = Vec::new();
    for k in 0..3 {
        for s in [1.0, -1.0] {
            let mut c = [0.0; 3];
            c[k] = 0.9 * s;
            let mut v = [0.0; 3];
            v[(k + 1) % 3] = 0.3;
            vertices.push(vec![c, v]);
        }
    }
    let f = SurfaceFamilyFile {
        label: "octahedron".into(),
        epsilon: 0.05,
        triangles: octahedron_triangles(),
        vertices,
        apex: vec![[0.1, 0.05, 0.0]],
        run: RunSettings::default(),
    };
    let back = SurfaceFamilyFile::from_json(&f.to_json().unwrap()).unwrap();
    assert_eq!(back, f);
    let r = verify_corollary2(&back.family().unwrap(), 0.0, &FdOptions::default(), Tolerance::default(), Corruption::None)
        .unwrap();
    assert!(r.pass, "{r:?}");
}
