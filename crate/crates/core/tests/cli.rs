use coarse_lab::cli::run_args;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, Value) {
    let (code, out) = run_args(std::iter::once("coarse-lab").chain(args.iter().copied()));
    let json = serde_json::from_str(&out).unwrap_or(Value::Null);
    (code, json)
}

#[test]
fn hyperbolicity_of_a_tree_is_zero() {
    let (code, v) = run(&["hyperbolicity", "--gen", "tree:30", "--seed", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["version"], "coarse-lab/1");
    assert_eq!(v["results"]["delta"], 0);
    assert_eq!(v["inputs"]["seed"], 4);
}

#[test]
fn reports_are_deterministic() {
    let args = ["stability", "--gen", "comb:7x3", "--subset", "0,6", "--L", "3"];
    let (a, b) = (
        run_args(std::iter::once("coarse-lab").chain(args)),
        run_args(std::iter::once("coarse-lab").chain(args)),
    );
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a.1).unwrap();
    assert_eq!(v["results"]["r_observed"], 4);
}

#[test]
fn failing_contraction_exits_with_one() {
    let (code, v) = run(&[
        "contraction",
        "--gen",
        "grid:6x6",
        "--geodesics",
        "0,5",
        "--constants",
        "1,1,2",
    ]);
    assert_eq!(code, 1);
    assert_eq!(v["results"]["check"]["passes"], false);
    let (code, _) = run(&["contraction", "--gen", "tree:40", "--geodesics", "0,7,19", "--L", "2"]);
    assert_eq!(code, 0);
}

#[test]
fn product_demo_certifies_the_pair() {
    let (code, v) = run(&["product-demo", "--x", "path:6", "--y", "path:6"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["paths"]["hausdorff"], 5);
}

#[test]
fn torus_queries() {
    let (_, v) = run(&["farey", "dist", "0/1", "-7/3"]);
    assert_eq!(v["results"]["distance"], 3);
    let (_, v) = run(&["farey", "annular", "1/0", "0/1", "5/1"]);
    assert_eq!(v["results"]["value"], 5);
    let (_, v) = run(&["marking", "neighbors", "(1/0|0/1)"]);
    assert_eq!(v["results"]["twist"], "(1/0|1/1)");
    let (_, v) = run(&["marking", "apply", "--matrix", "2,1,1,1", "(0/1|1/0)"]);
    assert_eq!(v["results"]["marking"], "(1/1|2/1)");
    let (code, v) = run(&["orbit", "--matrix", "1,1,0,1", "--kmax", "5"]);
    assert_eq!((code, v["results"]["e"].as_u64()), (0, Some(5)));
    let (code, v) = run(&["distance-formula", "--radius", "3", "--thresholds", "3,5"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["shadow_lipschitz_violations"], 0);
}

#[test]
fn csv_trace_is_written() {
    let path = std::env::temp_dir().join(format!("coarse-lab-{}.csv", std::process::id()));
    let p = path.to_str().unwrap();
    let (code, _) = run(&["orbit", "--matrix", "2,1,1,1", "--kmax", "3", "--csv", p]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(text.lines().count(), 4);
    assert!(text.starts_with("k,projection_max,shadow_distance"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["stability", "--gen", "bogus", "--subset", "0,1"]).0, 2);
    assert_eq!(run(&["farey", "dist", "0/0", "1/1"]).0, 2);
    assert_eq!(run(&["marking", "shadow", "(0/1|2/5)"]).0, 2);
    assert_eq!(run(&["no-such-command"]).0, 2);
    assert_eq!(run(&["hyperbolicity"]).0, 2);
}

#[test]
fn documented_invocations() {
    let path = std::env::temp_dir().join(format!("coarse-lab-grid5-{}.txt", std::process::id()));
    std::fs::write(&path, coarse_lab::generators::grid(5, 5).to_edge_list()).unwrap();
    let (code, v) = run(&[
        "stability",
        "--graph",
        path.to_str().unwrap(),
        "--subset",
        "0,24",
        "--L",
        "3",
        "--cap",
        "20",
    ]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(code, 0);
    assert!(v["results"]["r_observed"].as_u64().unwrap() >= 3);
    assert_eq!(v["inputs"]["length_cap"], 20);

    let (_, v) = run(&["farey", "dist", "1/0", "2/5"]);
    assert_eq!(v["results"]["distance"], 3);

    let (code, v) = run(&["orbit", "--matrix", "2,1,1,1", "--kmax", "8"]);
    assert_eq!(code, 0);
    let steps = v["results"]["steps"].as_array().unwrap();
    let shadow: Vec<u64> = steps.iter().map(|s| s["shadow_distance"].as_u64().unwrap()).collect();
    assert!(shadow.windows(2).all(|w| w[0] <= w[1]) && shadow[7] > shadow[0]);
    assert!(v["results"]["e"].as_u64().unwrap() <= 3);
}
