use std::path::Path;
use std::process::{Command, Output};

fn tsa_exo(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tsa-exo"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn statics_prints_forces_with_units() {
    let dir = tempfile::tempdir().unwrap();
    let out = tsa_exo(&["statics", "--beta-deg", "60"], dir.path());
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("2.4525 N·m"), "{text}");
    assert!(text.contains("61.3125 N"), "{text}");
    assert!(
        text.contains("reported design torque is 2.77 N·m"),
        "{text}"
    );
}

#[test]
fn statics_without_beta_is_a_missing_parameter() {
    let dir = tempfile::tempdir().unwrap();
    let out = tsa_exo(&["statics"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr(&out).starts_with("error[missing-parameter]"),
        "{}",
        stderr(&out)
    );
    assert!(stderr(&out).contains("linkage.beta_deg"));
}

#[test]
fn config_file_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("project.json"),
        r#"{"forearm": {"mass_kg": 0}, "linkage": {"beta_deg": 45}}"#,
    )
    .unwrap();
    let out = tsa_exo(&["--config", "project.json", "statics"], dir.path());
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("m·g·d:       0 N·m"));

    let out = tsa_exo(
        &[
            "--config",
            "project.json",
            "--set",
            "forearm.mass_kg=2.5",
            "statics",
        ],
        dir.path(),
    );
    assert!(stdout(&out).contains("2.4525 N·m"), "{}", stdout(&out));
}

#[test]
fn sweep_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = tsa_exo(
        &[
            "sweep",
            "--mass-min",
            "0",
            "--mass-max",
            "1",
            "--steps",
            "2",
            "-o",
            "s.csv",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let csv = std::fs::read_to_string(dir.path().join("s.csv")).unwrap();
    assert_eq!(
        csv,
        "mass_kg,required_torque_nm\n0,0\n1,0.9810000000000001\n"
    );

    let out = tsa_exo(&["sweep", "-o", "default.csv"], dir.path());
    assert!(out.status.success());
    let csv = std::fs::read_to_string(dir.path().join("default.csv")).unwrap();
    assert_eq!(csv.lines().count(), 17);

    let out = tsa_exo(
        &[
            "sweep",
            "--mass-min",
            "2.5",
            "--mass-max",
            "2.5",
            "-o",
            "bad.csv",
        ],
        dir.path(),
    );
    assert!(!out.status.success());
    assert!(!dir.path().join("bad.csv").exists());

    let out = tsa_exo(&["sweep", "-o", "missing/dir/s.csv"], dir.path());
    assert!(stderr(&out).starts_with("error[io]"), "{}", stderr(&out));
}

#[test]
fn tsa_operating_points() {
    let dir = tempfile::tempdir().unwrap();
    let out = tsa_exo(&["tsa", "--contraction-m", "0.033"], dir.path());
    assert!(stdout(&out).contains("11.6619 rad"), "{}", stdout(&out));
    let out = tsa_exo(&["tsa", "--theta-deg", "69.7"], dir.path());
    assert!(stdout(&out).contains("X: 0.0349789 m"), "{}", stdout(&out));
    let out = tsa_exo(&["tsa", "--theta-rad", "0"], dir.path());
    assert!(stdout(&out).contains("singular at zero twist"));

    let out = tsa_exo(
        &["tsa", "--theta-rad", "1", "--contraction-m", "0.03"],
        dir.path(),
    );
    assert!(
        stderr(&out).starts_with("error[invalid-input]"),
        "{}",
        stderr(&out)
    );
    let out = tsa_exo(&["tsa", "--theta-rad", "36"], dir.path());
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn simulate_from_event_scripts() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("full.txt"), "# uninterrupted\n0 ACTIVATE\n").unwrap();
    std::fs::write(dir.path().join("early.txt"), "0 ACTIVATE\n4 DEACTIVATE\n").unwrap();
    std::fs::write(dir.path().join("empty.txt"), "# nothing\n").unwrap();
    std::fs::write(dir.path().join("broken.txt"), "0 ACTIVATE\n2 JUMP\n").unwrap();

    let out = tsa_exo(
        &["simulate", "--events", "full.txt", "-o", "full.csv"],
        dir.path(),
    );
    assert!(
        stdout(&out).starts_with("5 cycles, stopped at 50.00 s, reason: max_cycles"),
        "{}",
        stdout(&out)
    );
    let csv = std::fs::read_to_string(dir.path().join("full.csv")).unwrap();
    assert_eq!(
        csv.lines().next().unwrap(),
        "time_s,state,motor_angle_rad,encoder_count,joint_angle_deg,top_string_m,bottom_string_m"
    );
    assert_eq!(csv.lines().count(), 5002);
    assert!(csv.lines().last().unwrap().starts_with("50,STOPPED,"));

    let out = tsa_exo(
        &["simulate", "--events", "early.txt", "-o", "early.csv"],
        dir.path(),
    );
    assert!(
        stdout(&out).starts_with("1 cycle, stopped at 6.00 s, reason: deactivate"),
        "{}",
        stdout(&out)
    );

    let out = tsa_exo(
        &["simulate", "--events", "empty.txt", "-o", "e.csv"],
        dir.path(),
    );
    assert!(
        stderr(&out).starts_with("error[no-activation]"),
        "{}",
        stderr(&out)
    );

    let out = tsa_exo(
        &["simulate", "--events", "broken.txt", "-o", "b.csv"],
        dir.path(),
    );
    assert!(stderr(&out).contains("broken.txt:2"), "{}", stderr(&out));
}

#[test]
fn simulate_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("ev.txt"),
        "0 ACTIVATE\n17.3 INTERRUPT\n30 ACTIVATE\n",
    )
    .unwrap();
    for name in ["a.csv", "b.csv"] {
        let out = tsa_exo(&["simulate", "--events", "ev.txt", "-o", name], dir.path());
        assert!(out.status.success(), "{}", stderr(&out));
    }
    let a = std::fs::read(dir.path().join("a.csv")).unwrap();
    let b = std::fs::read(dir.path().join("b.csv")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn simulate_from_command_lines() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("cmds.txt"), "activate\n\n\n\nDEACTIVATE\n").unwrap();
    let out = tsa_exo(
        &["simulate", "--commands", "cmds.txt", "-o", "c.csv"],
        dir.path(),
    );
    assert!(
        stdout(&out).starts_with("1 cycle, stopped at 6.00 s, reason: deactivate"),
        "{}",
        stdout(&out)
    );

    std::fs::write(dir.path().join("bad.txt"), "HELP\n").unwrap();
    let out = tsa_exo(
        &["simulate", "--commands", "bad.txt", "-o", "c.csv"],
        dir.path(),
    );
    assert!(
        stderr(&out).starts_with("error[unknown-command]"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn select_motor_from_catalogs() {
    let dir = tempfile::tempdir().unwrap();
    let out = tsa_exo(&["select-motor"], dir.path());
    assert!(
        stdout(&out).contains("margin: 0.5475 N·m"),
        "{}",
        stdout(&out)
    );

    let out = tsa_exo(&["select-motor", "--required-torque", "10"], dir.path());
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr(&out).starts_with("error[no-feasible-motor]"));

    std::fs::write(
        dir.path().join("motors.json"),
        r#"[{"name": "exact", "rated_power_w": 30, "rated_speed_rad_s": 10,
             "rated_torque_nm": 3, "voltage_v": 12, "ppr": 11, "gear_ratio": 1}]"#,
    )
    .unwrap();
    let out = tsa_exo(
        &[
            "select-motor",
            "--catalog",
            "motors.json",
            "--required-torque",
            "3",
        ],
        dir.path(),
    );
    let text = stdout(&out);
    assert!(
        text.contains("selected: exact") && text.contains("margin: 0 N·m"),
        "{text}"
    );
}
