use std::fs;
use std::path::Path;
use std::process::Command;

use randcx::cli::run;
use randcx::corpus;
use randcx::format::read_complex;
use randcx_core::measure::{probability, ProbVector};
use randcx_core::rational::parse_rational_list;
use randcx_core::AmbientContext;

/// Runs the command in-process and returns (exit code, stdout, stderr).
fn randcx(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("randcx").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn binary(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_randcx")).args(args).output().unwrap()
}

#[test]
fn density_of_tetrahedron_boundary() {
    let (code, out, _) = randcx(&["density", "corpus:boundary_tetrahedron"]);
    assert_eq!(code, 0);
    assert!(out.contains("mu = [1, 2/3, 1]"), "{out}");
    assert!(out.contains("balanced = true"), "{out}");
}

#[test]
fn dim_of_two_dimensional_regime() {
    let (code, out, _) = randcx(&["dim", "--alpha", "0,0.5,0.6,0"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("dim = 2 a.a.s."));
}

#[test]
fn probability_of_empty_complex() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.txt");
    fs::write(&empty, "# nothing here\n").unwrap();
    let (code, out, _) = randcx(&["prob", empty.to_str().unwrap(), "--n", "4", "--p", "1/2"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "1/16");
}

#[test]
fn exit_codes() {
    assert_eq!(randcx(&[]).0, 1);
    assert_eq!(randcx(&["density"]).0, 1);
    assert_eq!(randcx(&["sample", "--n", "5", "--p", "1/2", "--format", "csv"]).0, 1);
    assert_eq!(randcx(&["--help"]).0, 0);

    let (code, _, err) = randcx(&["density", "/definitely/missing.txt"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error:"));
    assert_eq!(randcx(&["density", "corpus:nope"]).0, 2);
    assert_eq!(randcx(&["predict", "corpus:s3", "--alpha", "0,-1,0"]).0, 2);
    assert_eq!(randcx(&["prob", "corpus:s3", "--n", "3", "--p", "1/2,1/2,1/2"]).0, 2);

    let (code, out, err) = randcx(&["--max-vertices", "4", "balance", "corpus:torus_seven"]);
    assert_eq!(code, 3);
    assert!(out.is_empty());
    assert!(err.contains("cap"), "{err}");
}

#[test]
fn binary_reports_exit_codes_and_env_cap() {
    let ok = binary(&["corpus"]);
    assert!(ok.status.success());
    assert_eq!(String::from_utf8(ok.stdout).unwrap().lines().count(), corpus::CORPUS.len());

    let capped = Command::new(env!("CARGO_BIN_EXE_randcx"))
        .args(["density", "corpus:rp2_six"])
        .env("RANDCX_MAX_VERTICES", "5")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(3));
    assert_eq!(binary(&["prob"]).status.code(), Some(1));
}

#[test]
fn balance_and_predict_outputs() {
    let (_, out, _) = randcx(&["balance", "corpus:unbalanced_disc"]);
    assert!(out.starts_with("unbalanced: W = {1,2,3,4,5,6,7}"), "{out}");
    let (_, out, _) = randcx(&["balance", "corpus:torus_seven", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["balanced"], true);

    let (_, out, _) = randcx(&["predict", "corpus:s4", "--alpha", "0,1/4,5/8", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], "indeterminate_boundary");
    let (_, out, _) = randcx(&["predict", "corpus:s3", "--alpha", "0,1/10,1/10"]);
    assert_eq!(out.lines().next(), Some("contains_aas"));
}

#[test]
fn density_json_of_s3() {
    let (code, out, _) = randcx(&["density", "corpus:s3", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["mu"], serde_json::json!(["1/1", "2/3", "4/1"]));
    let ws: Vec<&serde_json::Value> = v["domain"]["constraints"].as_array().unwrap().iter().map(|c| &c["W"]).collect();
    assert_eq!(ws, [&serde_json::json!([1, 2, 3]), &serde_json::json!([1, 2, 3, 4])]);
    assert_eq!(v["domain"]["polygon_2d"][2], serde_json::json!([[1, 3], [2, 1]]));
}

fn round_trip(format: &str, dir: &Path) {
    let path = dir.join(format!("sample.{format}"));
    let args = ["sample", "--n", "9", "--alpha", "0,0.3,0.4", "--seed", "17", "--format", format, "-o", path.to_str().unwrap()];
    assert_eq!(randcx(&args).0, 0);
    let text = fs::read_to_string(&path).unwrap();
    let loaded = read_complex(&text).unwrap();
    assert!(!loaded.complex.is_empty());

    // Re-reading through `prob` gives the same exact value as the in-memory complex.
    let p = "1/3,1/2,2/5";
    let (code, out, _) = randcx(&["prob", path.to_str().unwrap(), "--n", "9", "--p", p]);
    assert_eq!(code, 0);
    let ctx = AmbientContext::new(9, 2).unwrap();
    let expected = probability(&loaded.complex, &ctx, &ProbVector::new(parse_rational_list(p).unwrap()).unwrap()).unwrap();
    assert_eq!(out.trim(), expected.to_string());
    assert_eq!(randcx(&["density", path.to_str().unwrap()]).0, 0);

    // The same sample regenerated in memory matches what was written.
    let (_, again, _) = randcx(&args[..args.len() - 2]);
    assert_eq!(again, text);
}

#[test]
fn sample_round_trips_through_both_formats() {
    let dir = tempfile::tempdir().unwrap();
    round_trip("text", dir.path());
    round_trip("json", dir.path());
    let text = read_complex(&fs::read_to_string(dir.path().join("sample.text")).unwrap()).unwrap();
    let json = read_complex(&fs::read_to_string(dir.path().join("sample.json")).unwrap()).unwrap();
    assert_eq!(text.complex, json.complex);
    assert_eq!((json.n, json.r, json.seed), (Some(9), Some(2), Some(17)));
}

#[test]
fn identical_invocations_write_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("sweep.toml");
    fs::write(
        &spec,
        "kind = \"containment\"\ncomplex = \"corpus:s3\"\nn = [40, 80]\ntrials = 40\nseed = 5\n\
         [[rays]]\ndirection = \"0,1/2,3/2\"\nsteps = [\"1/2\", \"1\", \"3/2\"]\n",
    )
    .unwrap();
    let mut outputs = Vec::new();
    for (i, threads) in ["1", "3", "1"].iter().enumerate() {
        let out = dir.path().join(format!("run{i}.csv"));
        let status = binary(&["--threads", threads, "experiment", spec.to_str().unwrap(), "-o", out.to_str().unwrap()]);
        assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
        outputs.push(fs::read(out).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[0], outputs[2]);
    let text = String::from_utf8(outputs[0].clone()).unwrap();
    assert_eq!(text.lines().count(), 1 + 3 * 2);
    assert!(text.starts_with("alpha_0,alpha_1,alpha_2,n,trials,contain_freq,inconclusive,dim_mode,dim_mass,predicted,seed\n"));

    let a = binary(&["sample", "--n", "30", "--p", "1,1/4,1/2", "--seed", "99"]);
    let b = binary(&["sample", "--n", "30", "--p", "1,1/4,1/2", "--seed", "99"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn experiment_jsonl_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("dim.toml");
    fs::write(&spec, "kind = \"dimension\"\nalphas = [\"0,1/2,3/5,0\", \"2,0,0,0\"]\nn = [50]\ntrials = 20\n").unwrap();
    let (code, out, err) = randcx(&["experiment", spec.to_str().unwrap(), "--format", "jsonl", "--summary"]);
    assert_eq!(code, 0, "{err}");
    let lines: Vec<serde_json::Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 2);
    let total: u64 = lines[0]["dim_histogram"].as_object().unwrap().values().map(|v| v.as_u64().unwrap()).sum();
    assert_eq!(total, 20);
    assert!(lines[1]["predicted"].as_str().unwrap().starts_with("degenerate"));
    assert!(err.contains("2 cell(s)"), "{err}");

    fs::write(&spec, "kind = \"containment\"\nn = [50]\ntrials = 20\n").unwrap();
    assert_eq!(randcx(&["experiment", spec.to_str().unwrap()]).0, 2);
}

#[test]
fn corpus_files_parse() {
    for (name, complex) in corpus::all() {
        let (code, out, _) = randcx(&["corpus", name]);
        assert_eq!(code, 0);
        assert_eq!(read_complex(&out).unwrap().complex, complex);
    }
}
