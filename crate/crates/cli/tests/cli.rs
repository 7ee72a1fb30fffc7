//! Black-box tests of the `besg` binary: golden outputs, exit codes,
//! certificate round-trips, and determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn besg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_besg"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("besg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

const SMALL_CORNER_CSV: &str = "# universes 4 4 7\nrow,col,label\n0,0,0\n0,1,1\n1,0,1\n";

#[test]
fn construct_bes_interval_golden() {
    let out = besg(&["construct", "bes-interval", "--t", "3", "--k", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), SMALL_CORNER_CSV);
    assert_eq!(stderr(&out), "faces=3 span=6\n");

    let path = scratch("bes-interval.csv");
    let out = besg(&[
        "construct",
        "bes-interval",
        "--t",
        "3",
        "--k",
        "4",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "faces=3 span=6\n");
    assert_eq!(std::fs::read_to_string(&path).unwrap(), SMALL_CORNER_CSV);
}

#[test]
fn construct_interval_golden() {
    let out = besg(&["construct", "interval", "--v", "6", "--k", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), SMALL_CORNER_CSV);
    assert_eq!(stderr(&out), "faces=3 span=6\n");
}

#[test]
fn construct_block_golden() {
    let out = besg(&["construct", "block", "--v", "12", "--p", "2", "--m", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stderr(&out), "faces=16 span=12\n");
    let csv = stdout(&out);
    assert!(csv.starts_with("# universes 8 8 8\nrow,col,label\n"), "{csv}");
    assert_eq!(csv.lines().count(), 2 + 16);
}

#[test]
fn oracle_max_faces_golden() {
    let out = besg(&[
        "oracle", "--group", "Z9", "--interval", "3", "max-faces", "--v", "6",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "{\"optimum\":3,\"exhaustive\":true,\"witness\":[[0,0,0],[0,1,1],[1,0,1]]}\n"
    );
}

#[test]
fn oracle_min_span_golden() {
    let out = besg(&["oracle", "--group", "Z2^2", "min-span", "--t", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "{\"optimum\":6,\"exhaustive\":true,\"witness\":[[0,0,0],[0,1,1],[1,0,1],[1,1,0]]}\n"
    );
}

#[test]
fn oracle_zero_vertices_is_trivially_exhaustive() {
    let out = besg(&["oracle", "--group", "Z2^2", "max-faces", "--v", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "{\"optimum\":0,\"exhaustive\":true,\"witness\":[]}\n"
    );
}

#[test]
fn oracle_reads_grids_from_csv() {
    let path = scratch("oracle-input.csv");
    std::fs::write(&path, SMALL_CORNER_CSV).unwrap();
    let out = besg(&[
        "oracle", "--csv", path.to_str().unwrap(), "max-faces", "--v", "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "{\"optimum\":1,\"exhaustive\":true,\"witness\":[[0,0,0]]}\n"
    );
}

#[test]
fn oracle_node_budget_exhaustion_exits_3() {
    let out = besg(&[
        "oracle", "--group", "Z5", "--max-nodes", "5", "max-faces", "--v", "9",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("\"exhaustive\":false"), "{}", stdout(&out));
}

#[test]
fn table_cap_bound_golden() {
    let out = besg(&["table", "F-bounds", "--t", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "t,bound_F,t_plus_3,seven_sqrt_t\n3,6,6,12\n");
}

#[test]
fn table_cap_bound_at_one_hundred_respects_both_envelopes() {
    let out = besg(&["table", "F-bounds", "--t", "100"]);
    assert_eq!(out.status.code(), Some(0));
    let body = stdout(&out);
    let row = body.lines().nth(1).unwrap();
    let fields: Vec<u64> = row.split(',').map(|f| f.parse().unwrap()).collect();
    assert_eq!(fields[0], 100);
    assert_eq!(fields[2], 103); // t + 3
    assert_eq!(fields[3], 70); // ⌊7√100⌋
    assert!(fields[1] <= 84, "bound_F(100) = {} over 7√100 + 14", fields[1]);
}

#[test]
fn table_face_bounds_oracle_column_matches_known_values() {
    let out = besg(&["table", "f-bounds", "--v", "3..9"]);
    assert_eq!(out.status.code(), Some(0));
    let body = stdout(&out);
    let mut lines = body.lines();
    assert_eq!(lines.next().unwrap(), "v,construction,oracle,ref_num,ref_den");
    let oracle_column: Vec<u64> = lines
        .map(|row| row.split(',').nth(2).unwrap().parse().unwrap())
        .collect();
    assert_eq!(oracle_column, vec![1, 1, 2, 3, 4, 5, 7]);
}

#[test]
fn pipeline_certificate_round_trips_through_verify() {
    let cert = scratch("roundtrip.json");
    let input = scratch("roundtrip.csv");
    let out = besg(&[
        "pipeline",
        "--group",
        "Z60",
        "--full",
        "--k",
        "3",
        "--out",
        cert.to_str().unwrap(),
        "--save-input",
        input.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let out = besg(&["verify", cert.to_str().unwrap(), input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(stdout(&out), "ok\n");
}

#[test]
fn verify_names_the_cell_deleted_from_the_data() {
    let certforge = scratch("hunt-ap.json");
    let data = scratch("hunt-ap.csv");
    // A full 3 × 3 progression grid at difference 1 in Z3, plus noise.
    let mut csv = String::from("# universes 3 3 1\nrow,col,label\n");
    for r in 0..3 {
        for c in 0..3 {
            csv.push_str(&format!("{r},{c},0\n"));
        }
    }
    std::fs::write(&data, &csv).unwrap();
    let out = besg(&[
        "hunt",
        "ap-grid",
        "--csv",
        data.to_str().unwrap(),
        "--k",
        "3",
        "--out",
        certforge.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let out = besg(&["verify", certforge.to_str().unwrap(), data.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));

    // Drop the cell (1, 2) and the same certificate must fail, naming it.
    let tampered = csv.replace("1,2,0\n", "");
    std::fs::write(&data, tampered).unwrap();
    let out = besg(&["verify", certforge.to_str().unwrap(), data.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(5));
    let msg = stderr(&out);
    assert!(msg.starts_with("invalid:"), "{msg}");
    assert!(msg.contains("(1, 2)"), "{msg}");
}

#[test]
fn verify_rejects_a_difference_of_too_small_order() {
    let cert = scratch("bad-order.json");
    std::fs::write(
        &cert,
        "{\"type\":\"ap_grid\",\"a\":0,\"b\":0,\"d\":4,\"k\":3,\"n\":8}\n",
    )
    .unwrap();
    let data = scratch("bad-order.csv");
    std::fs::write(&data, "# universes 8 8 1\nrow,col,label\n0,0,0\n").unwrap();
    let out = besg(&["verify", cert.to_str().unwrap(), data.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(5));
    assert!(stderr(&out).contains("order"), "{}", stderr(&out));
}

#[test]
fn verify_unparseable_certificate_exits_2() {
    let cert = scratch("garbage.json");
    std::fs::write(&cert, "{\"type\":\"nonsense\"}").unwrap();
    let data = scratch("garbage.csv");
    std::fs::write(&data, "# universes 2 2 1\nrow,col,label\n0,0,0\n").unwrap();
    let out = besg(&["verify", cert.to_str().unwrap(), data.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn hunt_subspace_certificate_round_trips() {
    let words = scratch("even-weight.words");
    std::fs::write(&words, "000\n011\n101\n110\n").unwrap();
    let cert = scratch("even-weight.json");
    let out = besg(&[
        "hunt",
        "subspace",
        "--words",
        words.to_str().unwrap(),
        "--alphabet",
        "2",
        "--k",
        "1",
        "--out",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let body = std::fs::read_to_string(&cert).unwrap();
    assert!(body.contains("\"type\":\"subspace\""), "{body}");
    let out = besg(&["verify", cert.to_str().unwrap(), words.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "ok\n");
}

#[test]
fn hunt_coset_grid_certificate_round_trips() {
    let data = scratch("translate.csv");
    std::fs::write(
        &data,
        "# universes 4 4 1\nrow,col,label\n2,2,0\n2,3,0\n3,2,0\n3,3,0\n",
    )
    .unwrap();
    let cert = scratch("translate.json");
    let out = besg(&[
        "hunt",
        "coset-grid",
        "--csv",
        data.to_str().unwrap(),
        "--p",
        "2",
        "--n",
        "2",
        "--k",
        "1",
        "--out",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let out = besg(&["verify", cert.to_str().unwrap(), data.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn hunt_finding_nothing_exits_4() {
    let data = scratch("sparse.csv");
    std::fs::write(&data, "# universes 7 7 1\nrow,col,label\n0,0,0\n1,2,0\n3,1,0\n").unwrap();
    let out = besg(&[
        "hunt", "ap-grid", "--csv", data.to_str().unwrap(), "--k", "3",
    ]);
    assert_eq!(out.status.code(), Some(4));
    assert!(!stderr(&out).is_empty());
}

#[test]
fn pipeline_with_no_viable_branch_exits_4() {
    let out = besg(&["pipeline", "--group", "Z6", "--full", "--k", "3", "--m", "2"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr(&out).contains("failed"), "{}", stderr(&out));
}

#[test]
fn invalid_inputs_exit_2() {
    let out = besg(&["oracle", "--group", "Zx", "max-faces", "--v", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error:"), "{}", stderr(&out));

    let out = besg(&["construct", "interval", "--v", "2", "--k", "3"]);
    assert_eq!(out.status.code(), Some(2));

    let out = besg(&["oracle", "--csv", "/no/such/file.csv", "max-faces", "--v", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("file.csv"), "{}", stderr(&out));

    // clap usage errors share the invalid-input code.
    let out = besg(&["construct"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn group_order_cap_honors_the_environment_override() {
    let run = |cap: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_besg"));
        cmd.args(["oracle", "--group", "Z150", "max-faces", "--v", "0"]);
        match cap {
            Some(value) => cmd.env("BESG_MAX_ORDER", value),
            None => cmd.env_remove("BESG_MAX_ORDER"),
        };
        cmd.output().unwrap()
    };
    // Z150 fits the default cap…
    assert_eq!(run(None).status.code(), Some(0));
    // …is rejected under a lowered one…
    let reject = run(Some("100"));
    assert_eq!(reject.status.code(), Some(2));
    assert!(stderr(&reject).contains("150"), "{}", stderr(&reject));
    // …and a malformed override is itself an input error.
    assert_eq!(run(Some("lots")).status.code(), Some(2));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = [
        "pipeline", "--group", "Z2^6", "--density", "0.8", "--seed", "7", "--k", "2",
        "--m", "2",
    ];
    let first = besg(&args);
    let second = besg(&args);
    assert_eq!(first.status.code(), second.status.code());
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.stderr, second.stderr);

    let args = ["oracle", "--group", "Z6", "max-faces", "--v", "7"];
    let first = besg(&args);
    let second = besg(&args);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.status.code(), Some(0));
}

#[test]
fn fractional_density_accepts_num_slash_den() {
    let args = [
        "pipeline", "--group", "Z2^4", "--density", "1/1", "--seed", "0", "--k", "2",
        "--m", "2",
    ];
    let fraction = besg(&args);
    // Density 1 keeps every triple, so this matches --full exactly.
    let full = besg(&["pipeline", "--group", "Z2^4", "--full", "--k", "2", "--m", "2"]);
    assert_eq!(fraction.status.code(), full.status.code());
    assert_eq!(fraction.stdout, full.stdout);
}
