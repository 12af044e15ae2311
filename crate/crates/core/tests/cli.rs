use std::fs;
use std::path::PathBuf;
use std::process::Command;

use arithgroup::cli::{dispatch, Outcome};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

fn golden(name: &str) -> Vec<u8> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn run(args: &[&str]) -> Outcome {
    let mut v = vec!["arithgroup", "--no-cache"];
    v.extend_from_slice(args);
    dispatch(v)
}

#[test]
fn golden_sanov_scan() {
    let o = run(&["cong", "scan", "--group", "sanov", "--pmax", "31"]);
    assert_eq!(o.code, 0);
    assert_eq!(o.stdout, golden("sanov_scan_p31.json"));
}

#[test]
fn golden_qi_chebotarev() {
    let o = run(&["nf", "chebotarev", "--field", "qi", "--bound", "10000"]);
    assert_eq!(o.stdout, golden("qi_chebotarev_1e4.json"));
}

#[test]
fn golden_sl2_lie() {
    let o = run(&["group", "lie", "--group", "sl2"]);
    assert_eq!(o.stdout, golden("sl2_lie.json"));
}

#[test]
fn golden_reports_have_sorted_keys() {
    fn check(v: &Value) {
        match v {
            Value::Object(m) => {
                let keys: Vec<&String> = m.keys().collect();
                assert!(keys.windows(2).all(|w| w[0] < w[1]));
                m.values().for_each(check);
            }
            Value::Array(a) => a.iter().for_each(check),
            _ => {}
        }
    }
    for name in ["sanov_scan_p31.json", "qi_chebotarev_1e4.json", "sl2_lie.json"] {
        check(&serde_json::from_slice(&golden(name)).unwrap());
    }
}

#[test]
fn cached_and_fresh_results_agree() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap().to_string();
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let groups = ["sanov", "sl2z", "triangular", "elementary2", "borel"];
    let fields = ["qi", "qsqrt2", "qcbrt2", "qzeta5"];
    for _ in 0..20 {
        let args: Vec<String> = match rng.gen_range(0..3) {
            0 => vec![
                "cong".into(),
                "scan".into(),
                "--group".into(),
                groups[rng.gen_range(0..groups.len())].into(),
                "--pmax".into(),
                rng.gen_range(2..30u64).to_string(),
            ],
            1 => vec![
                "nf".into(),
                "chebotarev".into(),
                "--field".into(),
                fields[rng.gen_range(0..fields.len())].into(),
                "--bound".into(),
                rng.gen_range(2..3000u64).to_string(),
            ],
            _ => vec![
                "lubotzky".into(),
                "scan".into(),
                "--group".into(),
                groups[rng.gen_range(0..groups.len())].into(),
                "--pmax".into(),
                rng.gen_range(2..14u64).to_string(),
            ],
        };
        let format = if rng.gen_bool(0.5) { "json" } else { "text" };
        let mut fresh = vec!["arithgroup".to_string(), "--no-cache".into(), "--format".into(), format.into()];
        fresh.extend(args.iter().cloned());
        let mut cached = vec!["arithgroup".to_string(), "--cache-dir".into(), cache.clone(), "--format".into(), format.into()];
        cached.extend(args.iter().cloned());
        let a = dispatch(fresh);
        let b = dispatch(cached.clone());
        let c = dispatch(cached);
        assert_eq!(a.code, 0, "{args:?}: {}", a.stderr);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.stdout, c.stdout, "{args:?}");
    }
    assert!(fs::read_dir(dir.path()).unwrap().count() >= 1);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["nf", "factor", "--field", "qi", "--prime", "5"]).code, 0);
    assert_eq!(run(&["nf", "factor", "--field", "qi", "--prime", "-1"]).code, 2);
    assert_eq!(run(&["cong", "scan", "--group", "sanov", "--pmax", "1"]).code, 2);
    let o = run(&["density", "check", "--group", "no_such_group"]);
    assert_eq!(o.code, 1);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "UnknownGroup");
    assert_eq!(v["error"]["message"], "UnknownGroup: no_such_group");
}

#[test]
fn every_subcommand_runs() {
    let cases: &[&[&str]] = &[
        &["nf", "factor", "--field", "qzeta5", "--prime", "11"],
        &["nf", "chebotarev", "--field", "qsqrt2", "--bound", "500"],
        &["nf", "signature", "--field", "qcbrt2"],
        &["padic", "lift", "--poly", "1,0,1", "--root", "2", "--prime", "5", "--precision", "20"],
        &["padic", "eval", "--value", "-1/3", "--prime", "5", "--precision", "8"],
        &["group", "lie", "--group", "sl3"],
        &["group", "ros", "--group", "gm", "--field", "qsqrt2"],
        &["group", "reduce", "--group", "sp2", "--prime", "7"],
        &["cong", "scan", "--group", "sl2z", "--pmax", "13", "--exp", "2"],
        &["cong", "image", "--group", "sanov", "--mod", "4"],
        &["cong", "index", "--n", "2", "--mod", "12"],
        &["cong", "oneforall", "--groups", "sanov,sl2z", "--pmax", "13"],
        &["density", "check", "--group", "sanov"],
        &["lubotzky", "scan", "--group", "triangular", "--pmax", "11"],
    ];
    for args in cases {
        let o = run(args);
        assert_eq!(o.code, 0, "{args:?}: {}", o.stderr);
        let _: Value = serde_json::from_slice(&o.stdout).unwrap();
        let t = run(&[&["--format", "text"], *args].concat());
        assert_eq!(t.code, 0);
        assert!(!t.stdout.is_empty());
    }
}

#[test]
fn spec_style_examples() {
    let v: Value = serde_json::from_slice(&run(&["nf", "factor", "--field", "qi", "--prime", "5"]).stdout).unwrap();
    let f = v["factors"].as_array().unwrap();
    assert_eq!(f.len(), 2);
    assert!(f.iter().all(|x| x["e"] == 1 && x["f"] == 1));

    let v: Value = serde_json::from_slice(&run(&["cong", "image", "--group", "sanov", "--mod", "4"]).stdout).unwrap();
    assert_eq!(v["surjective"], false);

    let v: Value = serde_json::from_slice(&run(&["cong", "index", "--mod", "5"]).stdout).unwrap();
    assert_eq!(v["index"], 120);

    let v: Value = serde_json::from_slice(&run(&["lubotzky", "scan", "--group", "sanov", "--pmax", "31"]).stdout).unwrap();
    assert_eq!(v["density"]["verdict"], "DENSE_EVIDENCE");
    let psl: Vec<u64> = v["primes"]
        .as_array()
        .unwrap()
        .iter()
        .filter_map(|r| r["psl2_order"].as_u64())
        .collect();
    assert_eq!(&psl[..3], &[12, 60, 168]);
}

#[test]
fn files_as_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let gens = dir.path().join("gens.txt");
    fs::write(&gens, "label=mine\n1 3\n0 1\n\n1 0\n3 1\n").unwrap();
    let o = run(&["cong", "scan", "--group", gens.to_str().unwrap(), "--pmax", "7"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["group"], "mine");
    assert_eq!(v["exceptional_primes"], serde_json::json!([3]));

    let pres = dir.path().join("sl2.txt");
    fs::write(&pres, arithgroup::algebraic_group::sl_group(2).unwrap().to_string()).unwrap();
    let a = run(&["group", "lie", "--group", pres.to_str().unwrap()]);
    let b = run(&["group", "lie", "--group", "sl2"]);
    assert_eq!(a.stdout, b.stdout);

    let out = dir.path().join("report.json");
    let o = run(&["--out", out.to_str().unwrap(), "nf", "signature", "--field", "qi"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_slice(&fs::read(&out).unwrap()).unwrap();
    assert_eq!(v["r2"], 1);
}

#[test]
fn binary_honours_config_and_cache_env() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "# scan defaults\nprime_bound=7\nformat=json\n").unwrap();
    let cache = dir.path().join("cache");
    let exe = env!("CARGO_BIN_EXE_arithgroup");
    let go = || {
        Command::new(exe)
            .args(["--config", cfg.to_str().unwrap(), "cong", "scan", "--group", "sanov"])
            .env("ARITHGROUP_CACHE_DIR", &cache)
            .output()
            .unwrap()
    };
    let first = go();
    let second = go();
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let v: Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(v["prime_bound"], 7);
    assert_eq!(fs::read_dir(&cache).unwrap().count(), 1);

    let bad = Command::new(exe)
        .args(["nf", "factor", "--field", "qi", "--prime", "-1"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("--prime"));

    fs::write(&cfg, "prime_bound=1\n").unwrap();
    let o = Command::new(exe)
        .args(["--config", cfg.to_str().unwrap(), "nf", "signature", "--field", "qi"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}
