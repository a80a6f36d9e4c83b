//! End-to-end exercises of the command-line surface: subcommands, file
//! formats, and exit codes (0 = success, 1 = verification failure,
//! 2 = usage error).

use std::fs;
use tracts::cli::dispatch;

fn run(args: &[&str]) -> i32 {
    let mut full = vec!["tracts"];
    full.extend_from_slice(args);
    dispatch(full)
}

fn write_exp_model(dir: &std::path::Path) -> std::path::PathBuf {
    let path = dir.join("model.json");
    fs::write(
        &path,
        r#"{"family": "exp", "lambda": [1.0, 0.0], "r_prime": 3.0}"#,
    )
    .unwrap();
    path
}

#[test]
fn no_arguments_is_a_usage_error() {
    assert_eq!(run(&[]), 2);
    assert_eq!(run(&["frobnicate"]), 2);
    assert_eq!(run(&["ray", "--bogus-flag"]), 2);
}

#[test]
fn ray_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let model = write_exp_model(dir.path());
    let out = dir.path().join("ray.csv");
    let code = run(&[
        "ray",
        "--model",
        model.to_str().unwrap(),
        "--address",
        "0",
        "--depth",
        "12",
        "--out",
        out.to_str().unwrap(),
        "--potentials",
        "0,1,2,3",
    ]);
    assert_eq!(code, 0);
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("potential,re,im,depth,error_bound"));
    assert_eq!(text.lines().count(), 5);
    let pts = tracts::rays::parse_ray_csv(&text).unwrap();
    assert_eq!(pts.len(), 4);
}

#[test]
fn verify_slope_and_wiggling_pass_for_exp() {
    let dir = tempfile::tempdir().unwrap();
    let model = write_exp_model(dir.path());
    let out = dir.path().join("slope.json");
    let code = run(&[
        "verify",
        "slope",
        "--model",
        model.to_str().unwrap(),
        "--samples",
        "2000",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(json["schema_version"], 1);
    assert_eq!(json["pass"], true);
    assert!(json["report"]["fitted"]["alpha"].as_f64().unwrap() <= 0.5);

    let out = dir.path().join("wiggling.json");
    let code = run(&[
        "verify",
        "wiggling",
        "--model",
        model.to_str().unwrap(),
        "--samples",
        "200",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);

    let out = dir.path().join("headstart.json");
    let code = run(&[
        "verify",
        "headstart",
        "--model",
        model.to_str().unwrap(),
        "--samples",
        "2000",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(json["report"]["vacuous"], false);
}

#[test]
fn counterexample_pass_and_fail_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cert.json");
    let code = run(&[
        "counterexample",
        "--M",
        "1.5",
        "--kmax",
        "6",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(json["pass"], true);
    assert_eq!(json["folding"]["bound"], 1024);
    assert_eq!(json["growth"]["verdict"], true);
    assert_eq!(json["growth"]["sharpness_probe_fails"], true);

    // Deliberately small ξ₀: a starred inequality fails, exit code 1.
    let code = run(&["counterexample", "--M", "1.5", "--xi0", "3", "--kmax", "6"]);
    assert_eq!(code, 1);
}

#[test]
fn render_writes_pgm_and_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("render.json");
    fs::write(
        &spec,
        r#"{
            "window": [-4.0, 4.0, -4.0, 4.0],
            "width": 80, "height": 60,
            "escape_radius": 100.0, "maxiter": 30,
            "model": {"family": "exp", "lambda": [0.2, 0.0]}
        }"#,
    )
    .unwrap();
    let out1 = dir.path().join("a.pgm");
    let out2 = dir.path().join("b.pgm");
    for out in [&out1, &out2] {
        let code = run(&[
            "render",
            "--spec",
            spec.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
    }
    let a = fs::read(&out1).unwrap();
    let b = fs::read(&out2).unwrap();
    assert_eq!(a, b, "renders must be byte-identical");
    let img = tracts::render::read_pgm(&a).unwrap();
    assert_eq!((img.width, img.height), (80, 60));

    // Overlay a traced ray on top.
    let model = write_exp_model(dir.path());
    let ray = dir.path().join("ray.csv");
    assert_eq!(
        run(&[
            "ray",
            "--model",
            model.to_str().unwrap(),
            "--address",
            "0",
            "--depth",
            "10",
            "--out",
            ray.to_str().unwrap(),
        ]),
        0
    );
    let out3 = dir.path().join("c.pgm");
    let code = run(&[
        "render",
        "--spec",
        spec.to_str().unwrap(),
        "--out",
        out3.to_str().unwrap(),
        "--ray",
        ray.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
}

#[test]
fn realize_quick_checks() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("realize.json");
    let code = run(&[
        "realize",
        "--psi",
        "id",
        "--rho",
        "1.5",
        "--eta",
        "2.0",
        "--checks",
        "quick",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(json["schema_version"], 1);
    assert!(json["report"]["m_est"].as_f64().unwrap() > 0.0);
    assert_eq!(
        run(&["realize", "--psi", "nope", "--rho", "1.5", "--eta", "2.0"]),
        2
    );
}
