use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use invisibody::construct2d::Shape2;
use invisibody::export::{export_mesh, MeshGrid};
use invisibody::geom::{Aabb, Segment2, Vec2};
use invisibody::io::{CustomSurface, ReportFile, SceneFile, SceneSpec};
use invisibody::tracer::Role;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_invisibody"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

/// Builds a scene into `dir/name` and returns its path.
fn build(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let out = dir.path().join(name);
    let mut all = vec!["build"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["-o", p(&out)]);
    let o = run(&all);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    out
}

fn flat_mirror(dir: &TempDir) -> PathBuf {
    let file = SceneFile::new(SceneSpec::Custom {
        domain: Aabb::from_points([Vec2::new(-1.0, -1.0), Vec2::new(1.0, 1.0)]),
        surfaces: vec![CustomSurface {
            shape: Shape2::Segment(Segment2::new(Vec2::new(-0.5, 0.0), Vec2::new(0.5, 0.0))),
            role: Role::Mirror,
            group: "flat".into(),
        }],
    });
    let path = dir.path().join("flat.scene");
    fs::write(&path, file.to_text()).unwrap();
    path
}

#[test]
fn build_is_deterministic_and_complete() {
    let dir = TempDir::new().unwrap();
    let a = build(&dir, "a.scene", &["thin2d", "--depth", "8"]);
    let b = build(&dir, "b.scene", &["thin2d", "--depth", "8"]);
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    let body = match SceneFile::parse(&text).unwrap().build().unwrap() {
        invisibody::io::BuiltScene::Body2(b) => b,
        _ => panic!("planar body expected"),
    };
    // Per family two arcs per level, closing level included.
    let families: BTreeSet<&str> = body.mirrors.iter().map(|m| m.group.split(':').next().unwrap()).collect();
    assert_eq!(families.len(), 4);
    assert_eq!(body.mirrors.len(), 8 * 9);
    assert_eq!(body.blocks.len(), 4);

    let stdout_build = run(&["build", "thin2d", "--depth", "8"]);
    assert_eq!(stdout(&stdout_build), text);
}

#[test]
fn build_rejects_parallel_directions() {
    let o = run(&["build", "rhombus2d", "--depth", "3", "--dir1", "0,1", "--dir2", "0,-1"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("parallel"), "{}", stderr(&o));
}

#[test]
fn build_names_the_violated_inequality() {
    let o = run(&["build", "body3d", "--depth", "3", "--explicit", "0.3,0.1,0.05"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("a_3 violates"), "{}", stderr(&o));
}

#[test]
fn body3d_scene_has_six_sub_bodies() {
    let dir = TempDir::new().unwrap();
    let path = build(&dir, "b.scene", &["body3d", "--c", "1", "--c1", "0.5", "--depth", "6"]);
    let built = SceneFile::parse(&fs::read_to_string(path).unwrap()).unwrap().build().unwrap();
    let subs: BTreeSet<String> = built
        .scene3()
        .unwrap()
        .surfaces
        .iter()
        .map(|s| s.group.split(':').next().unwrap().to_string())
        .collect();
    let want: BTreeSet<String> = ["yz", "xz", "yx", "zx", "zy", "xy"].map(String::from).into();
    assert_eq!(subs, want);
}

#[test]
fn verify_thin_body_passes() {
    let dir = TempDir::new().unwrap();
    let scene = build(&dir, "t.scene", &["thin2d", "--depth", "8"]);
    let report = dir.path().join("t.report");
    let o = run(&["verify", p(&scene), "--rays", "2000", "--seed", "3", "-o", p(&report)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = ReportFile::parse(&fs::read_to_string(&report).unwrap()).unwrap();
    assert!(r.passed());
    assert_eq!(r.directions.len(), 4);
    assert_eq!(r.scene_hash, SceneFile::parse(&fs::read_to_string(&scene).unwrap()).unwrap().hash());
    assert!(r.timing_ms.is_none());
}

#[test]
fn verify_body3d_passes() {
    let dir = TempDir::new().unwrap();
    let scene = build(&dir, "b.scene", &["body3d", "--depth", "6"]);
    let o = run(&["verify", p(&scene), "--rays", "1500"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = ReportFile::parse(&stdout(&o)).unwrap();
    assert_eq!(r.directions.len(), 6);
    assert!(r.directions.iter().all(|d| d.invisible));
}

#[test]
fn flat_mirror_fails_the_verdict() {
    let dir = TempDir::new().unwrap();
    let scene = flat_mirror(&dir);
    let report = dir.path().join("f.report");
    let o = run(&["verify", p(&scene), "--direction", "0,-1", "--rays", "100", "-o", p(&report)]);
    assert_eq!(code(&o), 4);
    // Written regardless of the verdict.
    let r = ReportFile::parse(&fs::read_to_string(&report).unwrap()).unwrap();
    assert!(!r.passed());
    assert!(fs::read_to_string(&report).unwrap().contains("\nverdict fail\n"));

    let o = run(&["verify", p(&scene)]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("--direction"));
}

#[test]
fn resistance_of_a_flat_mirror() {
    let dir = TempDir::new().unwrap();
    let scene = flat_mirror(&dir);
    let o = run(&["resistance", p(&scene), "--direction", "0,-1", "--grid", "--rays", "100"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let line = stdout(&o);
    let words: Vec<&str> = line.split_whitespace().collect();
    let ry: f64 = words[5].parse().unwrap();
    // Half the width-2 cross-section hits the mirror and reverses: 2·1·|v|.
    assert!((ry + 2.0).abs() < 0.05, "{line}");
    assert!(line.trim_end().ends_with("zero false"));
}

#[test]
fn reports_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let scene = build(&dir, "r.scene", &["rhombus2d", "--depth", "4", "--dir1", "0,1", "--dir2", "0.6,0.8"]);
    let args = ["verify", p(&scene), "--rays", "400", "--seed", "11"];
    let a = run(&args);
    let b = run(&args);
    let mut with_jobs = args.to_vec();
    with_jobs.extend_from_slice(&["--jobs", "2"]);
    let c = run(&with_jobs);
    assert_eq!(code(&a), 0, "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);

    let mut timed = args.to_vec();
    timed.push("--timing");
    assert!(stdout(&run(&timed)).contains("\ntiming-ms "));
    let other_seed = run(&["verify", p(&scene), "--rays", "400", "--seed", "12"]);
    assert_ne!(a.stdout, other_seed.stdout);
}

#[test]
fn parse_errors_use_code_two() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.scene");
    fs::write(&bad, "invisibody-scene\nversion 1\nkind body3d\nc 1\ndepth 3\n").unwrap();
    let o = run(&["verify", p(&bad)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("line 5: scene.c1"), "{}", stderr(&o));

    assert_eq!(code(&run(&["verify"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
    let missing = dir.path().join("none.scene");
    assert_eq!(code(&run(&["verify", p(&missing)])), 1);
}

#[test]
fn depth_flag_overrides_the_file() {
    let dir = TempDir::new().unwrap();
    let scene = build(&dir, "t.scene", &["thin2d", "--depth", "2"]);
    let o = run(&["export-svg", p(&scene), "--depth", "3"]);
    assert_eq!(stdout(&o).matches("<path ").count(), 8 * 4);
}

#[test]
fn trace_lists_reflections() {
    let dir = TempDir::new().unwrap();
    let scene = build(&dir, "t.scene", &["thin2d", "--depth", "4"]);
    let o = run(&["trace", p(&scene), "--origin", "-0.75,1.5", "--direction", "0,-1"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.starts_with("reflection ")).count(), 4);
    assert!(out.ends_with("status exited\nreflections 4\n"));

    let o = run(&["trace", p(&scene), "--origin", "0,0,0", "--direction", "0,-1"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn svg_export() {
    let dir = TempDir::new().unwrap();
    let scene = build(&dir, "t.scene", &["thin2d", "--depth", "2"]);
    let svg = dir.path().join("t.svg");
    let o = run(&["export-svg", p(&scene), "--ray", "-0.75,1.5,0,-1", "-o", p(&svg)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let doc = fs::read_to_string(&svg).unwrap();
    assert_eq!(doc.matches("<path ").count(), 8 * 3);
    assert_eq!(doc.matches("<polygon ").count(), 4);
    assert_eq!(doc.matches("<polyline ").count(), 1);
    let again = run(&["export-svg", p(&scene), "--ray", "-0.75,1.5,0,-1"]);
    assert_eq!(stdout(&again), doc);

    let flow = run(&["export-svg", p(&scene), "--flow", "0,-1", "--flow-rays", "5"]);
    assert_eq!(stdout(&flow).matches("<polyline ").count(), 5);

    let body = build(&dir, "b.scene", &["body3d", "--depth", "1"]);
    let o = run(&["export-svg", p(&body)]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("needs a 2D scene"));
}

#[test]
fn mesh_export() {
    let dir = TempDir::new().unwrap();
    let scene = build(&dir, "b.scene", &["body3d", "--depth", "1"]);
    let o = run(&["export-mesh", p(&scene), "--grid", "6,3"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let obj = stdout(&o);
    let built = SceneFile::parse(&fs::read_to_string(&scene).unwrap()).unwrap().build().unwrap();
    let mesh = export_mesh(&built, MeshGrid { along: 6, across: 3 }).unwrap();
    assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), mesh.triangles.len());
    assert_eq!(obj, mesh.to_obj());

    let thin = build(&dir, "t.scene", &["thin2d", "--depth", "2"]);
    assert_eq!(code(&run(&["export-mesh", p(&thin)])), 1);
    assert_eq!(code(&run(&["export-mesh", p(&scene), "--grid", "0,3"])), 1);
}

#[test]
fn case_analysis_runs() {
    let dir = TempDir::new().unwrap();
    let scene = build(&dir, "b.scene", &["body3d", "--depth", "3"]);
    let o = run(&["verify-cases", p(&scene), "--rays", "40", "--seed", "2"]);
    assert_eq!(code(&o), 0, "{}{}", stdout(&o), stderr(&o));
    assert!(!stdout(&o).is_empty());
    let thin = build(&dir, "t.scene", &["thin2d", "--depth", "2"]);
    assert_eq!(code(&run(&["verify-cases", p(&thin)])), 1);
}
