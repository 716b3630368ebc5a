mod common;

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use twgender::model::ModelFile;
use twgender::pipeline::extract_dataset;
use twgender::resources::Resources;
use twgender::{generate_synthetic, load_dataset, SyntheticConfig};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_twgender"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

struct Corpus {
    dir: tempfile::TempDir,
    users: PathBuf,
    celebs: PathBuf,
}

fn corpus(users_per_class: usize, seed: u64) -> Corpus {
    let dir = tempfile::tempdir().unwrap();
    let cfg = SyntheticConfig {
        users_per_class,
        tweets_per_user: (15, 30),
        celebrities: 100,
        ..SyntheticConfig::default()
    };
    let (users, celebs) = common::write_dataset(&generate_synthetic(&cfg, seed).unwrap(), dir.path());
    Corpus { dir, users, celebs }
}

impl Corpus {
    fn args<'a>(&'a self, cmd: &'a str) -> Vec<&'a str> {
        vec![
            cmd,
            "--users",
            s(&self.users),
            "--celebrities",
            s(&self.celebs),
            "--reference-date",
            "2013-06-01",
        ]
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }
}

#[test]
fn normalize_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.txt");
    let out = dir.path().join("out.txt");
    std::fs::write(&input, "idk #BestDayEver\nsee u tomorow :-)\n").unwrap();
    let o = run(&["normalize", "--input", s(&input), "--out", s(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(
        std::fs::read_to_string(&out).unwrap(),
        "I don't know Best Day Ever\nsee you tomorrow :-)\n"
    );
    assert!(stderr(&o).contains("corrected 1 words, expanded 2 shorthands, split 1 hashtags"), "{}", stderr(&o));
}

#[test]
fn normalize_empty_input() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.txt");
    let out = dir.path().join("out.txt");
    std::fs::write(&input, "").unwrap();
    let o = run(&["normalize", "--input", s(&input), "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&out).unwrap(), "");
}

#[test]
fn normalize_missing_dictionary() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.txt");
    std::fs::write(&input, "hello\n").unwrap();
    let missing = dir.path().join("no_such_words.txt");
    let o = run(&["normalize", "--input", s(&input), "--words", s(&missing)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("no_such_words.txt"), "{}", stderr(&o));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["evaluate", "--k", "1"]).status.code(), Some(2));
    assert_eq!(run(&["evaluate"]).status.code(), Some(2));
    let c = corpus(10, 1);
    let mut args = c.args("evaluate");
    args.extend(["--families", "nothing"]);
    assert_eq!(run(&args).status.code(), Some(2));
    let cfg = c.path("bad.toml");
    std::fs::write(&cfg, "unknown_key = 3\n").unwrap();
    assert_eq!(run(&["evaluate", "--config", s(&cfg)]).status.code(), Some(2));
}

#[test]
fn runtime_errors_exit_1() {
    let c = corpus(10, 1);
    std::fs::write(&c.users, "{\"id\":\"a\",\"label\":\"robot\"}\n").unwrap();
    let o = run(&c.args("evaluate"));
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("unknown label at line 1"), "{}", stderr(&o));
}

#[test]
fn evaluate_with_toggles() {
    let c = corpus(15, 2);
    for (families, label) in [("behavior,linguistic", "behavior+linguistic"), ("gender", "gender")] {
        let out = c.path(families);
        let mut args = c.args("evaluate");
        args.extend(["--families", families, "--seed", "3", "--out", s(&out)]);
        let o = run(&args);
        assert!(o.status.success(), "{}", stderr(&o));
        let report: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
        assert_eq!(report["families"], label);
        assert_eq!(report["n_users"], 30);
        let table = String::from_utf8_lossy(&o.stdout);
        assert!(table.contains("Overall accuracy = "));
        assert_eq!(std::fs::read_to_string(out.join("report.txt")).unwrap(), table);
    }
}

#[test]
fn config_file_and_flag_override() {
    let c = corpus(12, 4);
    let cfg = c.path("run.toml");
    std::fs::write(
        &cfg,
        format!(
            "k = 4\nseed = 9\n[data]\nusers = {:?}\ncelebrities = {:?}\nreference_date = \"2013-06-01\"\n[features]\ncap_n = 20\n",
            s(&c.users),
            s(&c.celebs)
        ),
    )
    .unwrap();
    let out = c.path("cfg_out");
    let o = run(&["evaluate", "--config", s(&cfg), "--k", "3", "--out", s(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(report["k"], 3);
    assert_eq!(report["seed"], 9);
}

#[test]
fn train_then_predict() {
    let c = corpus(15, 5);
    let model = c.path("model.json");
    let mut args = c.args("train");
    args.extend(["--out", s(&model)]);
    let o = run(&args);
    assert!(o.status.success(), "{}", stderr(&o));

    let preds = c.path("pred.csv");
    let mut args = c.args("predict");
    args.extend(["--model", s(&model), "--out", s(&preds)]);
    let o = run(&args);
    assert!(o.status.success(), "{}", stderr(&o));

    let file = ModelFile::load(&model).unwrap();
    let ds = load_dataset(&c.users, &c.celebs, chrono::NaiveDate::from_ymd_opt(2013, 6, 1).unwrap()).unwrap();
    let m = extract_dataset(&ds, &Resources::builtin(), &file.features).unwrap();
    let mut reader = csv::Reader::from_path(&preds).unwrap();
    assert_eq!(reader.headers().unwrap(), vec!["id", "predicted", "decision_value"]);
    let records: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(records.len(), ds.users.len());
    for (rec, (id, row)) in records.iter().zip(m.user_ids.iter().zip(&m.rows)) {
        assert_eq!(&rec[0], id);
        let d: f64 = rec[2].parse().unwrap();
        assert_eq!(d, file.model.decision_value(row).unwrap());
        assert_eq!(&rec[1], if d >= 0.0 { "male" } else { "female" });
    }
}

#[test]
fn predict_schema_mismatch() {
    let c = corpus(10, 6);
    let model = c.path("model.json");
    let mut args = c.args("train");
    args.extend(["--families", "behavior", "--out", s(&model)]);
    assert!(run(&args).status.success());
    let file = ModelFile::load(&model).unwrap();
    let mut args = c.args("predict");
    args.extend(["--model", s(&model), "--families", "behavior,gender"]);
    let o = run(&args);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("schema mismatch"), "{err}");
    assert!(err.contains(&file.schema_fingerprint), "{err}");
}

#[test]
fn features_csv() {
    let c = corpus(10, 7);
    let mut args = c.args("features");
    args.extend(["--families", "behavior"]);
    let o = run(&args);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "id,tweet_frequency,hashtag_frequency,avg_tweet_length,retweet_frequency,follower_ratio,celebrity_tendency,label"
    );
    assert_eq!(lines.count(), 20);
}

#[test]
fn synth_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for out in [&a, &b] {
        let o = run(&["synth", "--seed", "4", "--users-per-class", "10", "--out", s(out)]);
        assert!(o.status.success(), "{}", stderr(&o));
    }
    for f in ["users.jsonl", "celebrities.tsv"] {
        assert_eq!(std::fs::read(a.join(f)).unwrap(), std::fs::read(b.join(f)).unwrap());
    }
    assert_eq!(std::fs::read_to_string(a.join("users.jsonl")).unwrap().lines().count(), 20);
    assert_eq!(run(&["synth", "--users-per-class", "5", "--out", s(&a)]).status.code(), Some(2));
}
