//! End-to-end checks of the command-line interface: flag handling, file
//! schemas, exit codes, and byte determinism of emitted certificates.

use std::path::Path;
use std::process::{Command, Output};

use tropirrat::polytope::{bidegree_box, dilated_simplex, hpt_polytope, LatticePolytope};
use tropirrat::subdivision::lattice_distance_lifting;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tropirrat"))
}

fn write_polytope(dir: &Path, name: &str, p: &LatticePolytope) -> String {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string_pretty(&p.to_json()).unwrap()).unwrap();
    path.to_str().unwrap().to_string()
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("binary runs")
}

#[test]
fn subdivide_slice_flags() {
    let dir = tempfile::tempdir().unwrap();
    let square = LatticePolytope::from_i64(&[&[0, 0], &[2, 0], &[0, 2], &[2, 2]]).unwrap();
    let poly = write_polytope(dir.path(), "square.json", &square);
    let out_path = dir.path().join("sub.json");
    let out = run(bin().args([
        "subdivide",
        "--polytope",
        &poly,
        "--slice-functional",
        "1,-1",
        "--levels",
        "-1,0,1",
        "--out",
        out_path.to_str().unwrap(),
    ]));
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("count"), "face table missing: {stdout}");
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(json["cells"].as_array().unwrap().len(), 4);
}

#[test]
fn subdivide_lifting_file_and_schema_errors() {
    let dir = tempfile::tempdir().unwrap();
    let parent = dilated_simplex(2, 2).unwrap();
    let poly = write_polytope(dir.path(), "p.json", &parent);

    // Valid lifting: constant heights (trivial subdivision).
    let lifting = tropirrat::subdivision::Lifting::constant(
        parent.clone(),
        tropirrat::Rat::from_integer(0.into()),
    );
    let lift_path = dir.path().join("l.json");
    std::fs::write(
        &lift_path,
        serde_json::to_string(&lifting.to_json()).unwrap(),
    )
    .unwrap();
    let out = run(bin().args([
        "subdivide",
        "--polytope",
        &poly,
        "--lifting",
        lift_path.to_str().unwrap(),
    ]));
    assert!(out.status.success());

    // Empty heights: schema error naming the field, nonzero exit.
    std::fs::write(
        &lift_path,
        format!(
            "{{\"polytope\": {}, \"heights\": []}}",
            serde_json::to_string(&parent.to_json()).unwrap()
        ),
    )
    .unwrap();
    let out = run(bin().args([
        "subdivide",
        "--polytope",
        &poly,
        "--lifting",
        lift_path.to_str().unwrap(),
    ]));
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("heights"), "error must name the field: {err}");
}

#[test]
fn certify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();

    // All-rational toy: trivial subdivision of a width-one box.
    let boxy = LatticePolytope::from_i64(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap();
    let poly = write_polytope(dir.path(), "box.json", &boxy);
    let out = run(bin().args([
        "certify",
        "--polytope",
        &poly,
        "--slice-functional",
        "1,0",
        "--levels",
        "1",
    ]));
    assert_eq!(out.status.code(), Some(1), "inconclusive must exit 1");

    // Quartic fivefold slicing. Without the symmetry assumption the two
    // halves are independent wildcards and one of them can absorb the known
    // class, so the verdict is inconclusive; with the assumption it is
    // nontrivial.
    let quartic = tropirrat::repro::degree_simplex(6, 4).unwrap();
    let poly = write_polytope(dir.path(), "quartic.json", &quartic);
    let out = run(bin().args([
        "certify",
        "--polytope",
        &poly,
        "--slice-functional",
        "1,0,0,0,0,0,-1",
        "--levels",
        "0",
    ]));
    assert_eq!(out.status.code(), Some(1), "unconstrained halves admit a substitution");

    let (_, sub) = tropirrat::repro::quartic1_subdivision(5).unwrap();
    let halves: Vec<usize> = sub
        .interior_faces()
        .into_iter()
        .filter(|&i| sub.faces()[i].dim == 6)
        .collect();
    let assume_path = dir.path().join("assume.json");
    std::fs::write(
        &assume_path,
        format!(
            "{{\"equal\": [[\"unknown:{}\", \"unknown:{}\"]]}}",
            halves[0], halves[1]
        ),
    )
    .unwrap();
    let cert_path = dir.path().join("cert.json");
    let out = run(bin().args([
        "certify",
        "--polytope",
        &poly,
        "--slice-functional",
        "1,0,0,0,0,0,-1",
        "--levels",
        "0",
        "--assume",
        assume_path.to_str().unwrap(),
        "--out",
        cert_path.to_str().unwrap(),
    ]));
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let cert: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&cert_path).unwrap()).unwrap();
    assert_eq!(cert["verdict"], "nontrivial");
    // The homogeneous quartic is 6-dimensional in ambient dimension 7.
    assert!(cert["dimension_note"].as_str().unwrap().contains("6"));

    // --require-classified turns the wildcard faces into a hard failure.
    let out = run(bin().args([
        "certify",
        "--polytope",
        &poly,
        "--slice-functional",
        "1,0,0,0,0,0,-1",
        "--levels",
        "0",
        "--require-classified",
    ]));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("UnclassifiedFace"));
}

#[test]
fn certify_bytes_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let parent = bidegree_box(1, 4, 2, 3).unwrap();
    let lifting = lattice_distance_lifting(&parent, &hpt_polytope()).unwrap();
    let poly = write_polytope(dir.path(), "p.json", &parent);
    let lift_path = dir.path().join("l.json");
    std::fs::write(&lift_path, serde_json::to_string(&lifting.to_json()).unwrap()).unwrap();
    let mut outputs = Vec::new();
    for i in 0..2 {
        let cert_path = dir.path().join(format!("cert{i}.json"));
        let out = run(bin().args([
            "certify",
            "--polytope",
            &poly,
            "--lifting",
            lift_path.to_str().unwrap(),
            "--out",
            cert_path.to_str().unwrap(),
        ]));
        assert!(out.status.success());
        outputs.push(std::fs::read(&cert_path).unwrap());
    }
    assert_eq!(outputs[0], outputs[1], "certificate bytes must be identical");
}

#[test]
fn repro_interface() {
    let out = run(bin().args(["repro", "schreieder-table"]));
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("PASS  schreieder-table"));

    let out = run(bin().args(["repro", "no-such-job"]));
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("quartic-fivefold"), "must list job names: {err}");

    // Parallel run over all jobs, output ordered by name.
    let out = run(bin().args(["repro", "--all", "--jobs", "4"]));
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let stdout = String::from_utf8_lossy(&out.stdout);
    let order: Vec<usize> = ["ci-binomials", "coro-hyperplane-variation", "exam-linear"]
        .iter()
        .map(|n| stdout.find(n).unwrap())
        .collect();
    assert!(order[0] < order[1] && order[1] < order[2]);
}
