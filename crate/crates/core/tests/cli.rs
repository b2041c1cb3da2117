use pvf::cli::{execute_command, EXIT_INVALID_INPUT, EXIT_OK};
use pvf::invariants::MetricGraph;
use pvf::PolynomialVF;

fn run(args: &[&str]) -> pvf::cli::CommandResult {
    execute_command(std::iter::once("pvf").chain(args.iter().copied()))
}

#[test]
fn classify_reports_class_and_invariants() {
    let r = run(&["classify", "coeffs: 1, 0, 1"]);
    assert_eq!(r.exit_code, EXIT_OK);
    assert_eq!(r.payload.get("class"), Some("(0 1)"));
    assert_eq!(r.payload.get("status"), Some("ok"));
    assert_eq!(r.payload.get("seed"), Some("0"));
    assert!(r.payload.get("taus").unwrap().starts_with("[3.14159265"));
}

#[test]
fn invalid_input_exit_code() {
    assert_eq!(run(&["classify", "coeffs: 1, 2, 3"]).exit_code, EXIT_INVALID_INPUT);
    assert_eq!(run(&["classify"]).exit_code, EXIT_INVALID_INPUT);
    assert_eq!(run(&["enumerate", "1"]).exit_code, EXIT_INVALID_INPUT);
    assert_eq!(run(&["bifurcations", "(0 1"]).exit_code, EXIT_INVALID_INPUT);
    assert_eq!(run(&["--help"]).exit_code, EXIT_OK);
}

#[test]
fn invariants_file_feeds_realize() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("graph.txt");
    let poly = dir.path().join("poly.txt");
    let r = run(&["invariants", "roots: 1.2+0.3i, -0.7+0.9i, -0.5-1.2i", "--out", graph.to_str().unwrap()]);
    assert_eq!(r.exit_code, EXIT_OK, "{}", r.payload.render());
    assert_eq!(r.artifacts, vec![graph.clone()]);
    let text = std::fs::read_to_string(&graph).unwrap();
    let target = MetricGraph::from_text(&text).unwrap();

    let r = run(&["--seed", "3", "realize", graph.to_str().unwrap(), "--out", poly.to_str().unwrap()]);
    assert_eq!(r.exit_code, EXIT_OK, "{}", r.payload.render());
    let p = PolynomialVF::parse(std::fs::read_to_string(&poly).unwrap().trim()).unwrap();
    for root in ["1.2+0.3i", "-0.7+0.9i", "-0.5-1.2i"] {
        let z = pvf::text::parse_complex(root).unwrap();
        assert!(p.nearest_root(z).1 < 1e-6, "{root} missing from {}", p.roots_text());
    }
    assert_eq!(target.class().degree(), 3);
}

#[test]
fn enumerate_counts_classes() {
    let r = run(&["enumerate", "2"]);
    assert_eq!(r.exit_code, EXIT_OK);
    assert_eq!(r.payload.get("count"), Some("3"));
    let r = run(&["enumerate", "3"]);
    assert_eq!(r.payload.get("count"), Some("17"));
}

#[test]
fn bifurcations_lists_sign_conditions() {
    let r = run(&["bifurcations", "(0 1)(2 3)", "--form", "1,2"]);
    assert_eq!(r.exit_code, EXIT_OK);
    let line = r.payload.get("form.1.2").unwrap();
    assert!(line.contains("possible=true"), "{line}");
    let r = run(&["bifurcations", "(0 1)", "--break", "1,0", "--half-plane", "+"]);
    assert_eq!(r.exit_code, EXIT_OK, "{}", r.payload.render());
    assert!(r.payload.render().contains("[0 1]"));
}

#[test]
fn stability_of_a_landing_separatrix() {
    let r = run(&["stability", "coeffs: -1, 0, 1", "--sep", "1", "--trials", "20"]);
    assert_eq!(r.exit_code, EXIT_OK, "{}", r.payload.render());
    assert!(r.payload.render().contains("20/20") || r.payload.get("continued") == Some("20"));
}

#[test]
fn portrait_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("p.svg");
    let r = run(&["portrait", "coeffs: -1, 0, 1", "--out", out.to_str().unwrap(), "--size", "200", "--streamlines", "3"]);
    assert_eq!(r.exit_code, EXIT_OK, "{}", r.payload.render());
    let svg = std::fs::read_to_string(&out).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains(r#"class="separatrix landing""#));
    assert!(svg.contains(r#"class="stream""#));
    assert_eq!(svg.matches(r#"class="end""#).count(), 2);
}

#[test]
fn sweep_is_reproducible() {
    let a = run(&["--seed", "9", "sweep", "--degree", "2", "--samples", "40"]);
    let b = run(&["--seed", "9", "sweep", "--degree", "2", "--samples", "40"]);
    assert_eq!(a.exit_code, EXIT_OK);
    assert_eq!(a.payload.render(), b.payload.render());
}
