use sk_spectra::cli::{run_from_args, EXIT_FAILED, EXIT_OK, EXIT_USAGE};
use sk_spectra::families::{clement, j_matrix, JParams};
use sk_spectra::io::write_matrix_market;
use sk_spectra::Rational;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("sk-spectra").chain(args.iter().copied());
    let code = run_from_args(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn reread(text: &str) -> Vec<Vec<f64>> {
    let m: sprs::TriMat<f64> =
        sprs::io::read_matrix_market_from_bufread(&mut std::io::Cursor::new(text.as_bytes())).expect("valid file");
    let mut dense = vec![vec![0.0; m.cols()]; m.rows()];
    for (v, (i, j)) in m.triplet_iter() {
        dense[i][j] += *v;
    }
    dense
}

#[test]
fn gen_clement_matrix_market() {
    let (code, out, _) = run(&["gen", "--family", "clement", "--n", "3", "--format", "matrixmarket"]);
    assert_eq!(code, EXIT_OK);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("%%MatrixMarket matrix coordinate real general"));
    assert_eq!(lines.next(), Some("4 4 6"));
    assert_eq!(lines.count(), 6);
}

#[test]
fn matrix_market_round_trip_through_sprs() {
    let (_, out, _) = run(&["gen", "--family", "clement", "--n", "5", "--format", "matrixmarket"]);
    let expected: Vec<Vec<f64>> = clement::<f64>(5).to_dense();
    assert_eq!(reread(&out), expected);

    let p = JParams { n: 6, z0: 0.375, z1: -2.5 };
    let mut buf = Vec::new();
    write_matrix_market(&mut buf, &j_matrix(&p)).unwrap();
    assert_eq!(reread(&String::from_utf8(buf).unwrap()), j_matrix(&p).to_dense());
}

#[test]
fn rational_gen_needs_exact_decimals() {
    let (code, out, _) = run(&["gen", "--family", "j", "--n", "2", "--params", "1/4,3/2", "--format", "matrixmarket"]);
    assert_eq!(code, EXIT_OK);
    let dense = reread(&out);
    let exact = j_matrix(&JParams { n: 2, z0: 0.25, z1: 1.5 }).to_dense();
    assert_eq!(dense, exact);

    let (code, _, err) = run(&["gen", "--family", "j", "--n", "2", "--params", "1/3,0", "--format", "matrixmarket"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(!err.is_empty());
}

#[test]
fn spectrum_csv_for_clement_like_j() {
    let (code, out, _) = run(&["spectrum", "--family", "j", "--n", "3", "--params", "0,0", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().collect::<Vec<_>>(), ["-3", "-1", "1", "3"]);
}

#[test]
fn spectrum_csv_has_n_plus_one_rows() {
    for (family, params) in [("j", "1/2,3"), ("m", "1,2,-1,3"), ("m_plus", "1,2,3"), ("clement", "")] {
        for n in [0usize, 1, 4, 9] {
            let n_arg = n.to_string();
            let mut args = vec!["spectrum", "--family", family, "--n", &n_arg, "--format", "csv"];
            if !params.is_empty() {
                args.extend(["--params", params]);
            }
            for mode in ["rational", "numeric"] {
                let mut a = args.clone();
                a.extend(["--mode", mode]);
                let (code, out, err) = run(&a);
                assert_eq!(code, EXIT_OK, "{family} {n} {mode}: {err}");
                assert_eq!(out.lines().count(), n + 1, "{family} n={n} {mode}:\n{out}");
            }
        }
    }
}

#[test]
fn det_and_charpoly_text() {
    let (code, out, _) = run(&["det", "--family", "clement", "--n", "3"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.lines().any(|l| l == "closed_form: 9"), "{out}");
    assert!(out.lines().any(|l| l == "equal: true"), "{out}");
    let (code, out, _) = run(&["charpoly", "--family", "clement", "--n", "3"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("λ^4 - 10*λ^2 + 9"), "{out}");
}

#[test]
fn verify_json_report() {
    let (code, out, _) = run(&["verify", "--family", "all", "--n-max", "8", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let reports: serde_json::Value = serde_json::from_str(&out).unwrap();
    let reports = reports.as_array().expect("array");
    assert!(!reports.is_empty());
    let mut last_n = 0;
    for r in reports {
        for key in ["family", "n", "mode", "passed", "witness", "elapsed_ms"] {
            assert!(r.get(key).is_some(), "missing {key} in {r}");
        }
        assert_eq!(r["passed"], true);
        let n = r["n"].as_u64().unwrap();
        assert!(n >= last_n, "reports not ordered by n");
        last_n = n;
    }
}

#[test]
fn verify_rational_and_numeric_modes() {
    let (code, _, err) = run(&["verify", "--family", "m", "--n-max", "6", "--mode", "rational", "--draws", "5"]);
    assert_eq!(code, EXIT_OK, "{err}");
    let (code, out, _) = run(&["verify", "--family", "mpm", "--n-max", "6", "--mode", "numeric", "--draws", "5", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 1 + 2 * 7);
}

#[test]
fn verify_failure_exits_one() {
    // r = 1, a = -2.575..., b = 1.209... is one of the negative-coupling
    // draws where the float continuant loses all accuracy at n = 50.
    let (code, _, _) = run(&[
        "verify",
        "--family",
        "mpm",
        "--sign",
        "plus",
        "--n",
        "50",
        "--mode",
        "numeric",
        "--params",
        "-2.575349452565181,1.2091075416472474,-1.069417903174518",
    ]);
    assert_eq!(code, EXIT_FAILED);
}

#[test]
fn bench_usage_errors() {
    let (code, _, err) = run(&["bench", "--repetitions", "0"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(!err.is_empty());
    let (code, _, _) = run(&["bench", "--n-schedule", "20", "--methods", "cofactor_dense"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn bench_small_schedule_csv() {
    let (code, out, _) = run(&["bench", "--family", "clement", "--n-schedule", "3,5", "--repetitions", "1", "--min-sample-ms", "0.1"]);
    assert_eq!(code, EXIT_OK);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("n,method,nanoseconds"));
    assert_eq!(lines.count(), 6);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["det", "--family", "j", "--n", "3", "--params", "1"][..],
        &["det", "--family", "m", "--n", "3", "--params", "1,2,x,4"],
        &["det", "--family", "nope", "--n", "3"],
        &["frobnicate"],
    ] {
        let (code, _, err) = run(args);
        assert_eq!(code, EXIT_USAGE, "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
}

#[test]
fn rational_params_stay_exact() {
    let (code, out, _) = run(&["det", "--family", "m", "--n", "2", "--params", "1/3,-2/3,1,1"]);
    assert_eq!(code, EXIT_OK);
    let p = sk_spectra::families::MParams::<Rational> {
        n: 2,
        x: sk_spectra::exact_arith::rat(1, 3),
        y: sk_spectra::exact_arith::rat(-2, 3),
        u: sk_spectra::exact_arith::rat(1, 1),
        v: sk_spectra::exact_arith::rat(1, 1),
    };
    let want = format!("continuant: {}", sk_spectra::families::m_matrix(&p).det());
    assert!(out.lines().any(|l| l == want), "{out}");
}
