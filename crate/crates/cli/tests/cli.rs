use std::io::Write;

use graftdm_cli::run;

fn invoke(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(
        std::iter::once("graftdm").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

struct Doc(tempfile::NamedTempFile);

impl Doc {
    fn arg(&self) -> &str {
        self.0.path().to_str().unwrap()
    }
}

fn doc_file(text: &str) -> Doc {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(text.as_bytes()).unwrap();
    Doc(file)
}

#[test]
fn k2_document_nu() {
    let doc = doc_file(r#"{"version": 1, "vertices": ["u", "v"], "edges": [["u", "v"]], "terminals": ["u", "v"]}"#);
    assert_eq!(invoke(&["--input", doc.arg(), "nu"]), (0, "1\n".into(), String::new()));
}

#[test]
fn empty_graft() {
    let doc = doc_file(r#"{"version": 1, "vertices": [], "edges": [], "terminals": []}"#);
    assert_eq!(invoke(&["-i", doc.arg(), "nu"]).1, "0\n");
    assert_eq!(
        invoke(&["-i", doc.arg(), "components"]),
        (0, String::new(), String::new())
    );
}

#[test]
fn unknown_terminal_is_an_input_error() {
    let doc = doc_file(r#"{"version": 1, "vertices": ["u", "v"], "edges": [["u", "v"]], "terminals": ["u", "w"]}"#);
    let (code, _, err) = invoke(&["-i", doc.arg(), "nu"]);
    assert_eq!(code, 2);
    assert!(err.contains("terminals[1]") && err.contains("`w`"), "{err}");
}

#[test]
fn syntax_error_reports_position() {
    let doc = doc_file("{\"version\": 1,\n\"vertices\": [\"u\" \"v\"]}");
    let (code, _, err) = invoke(&["-i", doc.arg(), "nu"]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2, column"), "{err}");
}

#[test]
fn star_distance() {
    assert_eq!(invoke(&["--named", "star-4", "dist", "b1", "b2"]).1, "-2\n");
    let (code, out, _) = invoke(&["--named", "star-4", "--json", "dist", "b1", "b2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["dist"], -2);
}

#[test]
fn two_pendant_verifies() {
    let (code, out, _) = invoke(&["--named", "two-pendant", "verify"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().count(), 12);
    assert!(out.lines().all(|l| l.starts_with("PASS")), "{out}");
}

#[test]
fn non_comb_poset_exits_2() {
    let doc = doc_file(
        r#"{"version":1,"vertices":["a","b","c","d"],"edges":[["a","b"],["b","c"],["c","d"],["d","a"]],"terminals":["a","b"]}"#,
    );
    let (code, _, err) = invoke(&["-i", doc.arg(), "poset"]);
    assert_eq!(code, 2);
    assert!(err.contains("not comb-bipartite"), "{err}");
}

#[test]
fn cap_exceeded_exits_3() {
    assert_eq!(invoke(&["--named", "C8", "--max-t", "4", "nu"]).0, 3);
    assert_eq!(invoke(&["--named", "C8", "--max-t", "4", "verify"]).0, 3);
}

#[test]
fn usage_errors_exit_2_and_help_exits_0() {
    assert_eq!(invoke(&["nu"]).0, 2);
    assert_eq!(invoke(&["--named", "K2", "--input", "x.json", "nu"]).0, 2);
    assert_eq!(invoke(&["--named", "nope", "nu"]).0, 2);
    assert_eq!(invoke(&["gen", "star", "teeth=3"]).0, 2);
    assert_eq!(invoke(&["gen", "path", "half=2", "bogus=1"]).0, 2);
    let (code, out, _) = invoke(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("classic-dm"));
}

#[test]
fn json_keys_are_sorted() {
    let (_, out, _) = invoke(&["--named", "P4", "--json", "poset"]);
    let keys: Vec<&str> = out
        .lines()
        .filter(|l| l.starts_with("  \""))
        .map(|l| l.trim().split('"').nth(1).unwrap())
        .collect();
    assert_eq!(keys, ["components", "hasse", "order", "spine"]);
}

#[test]
fn generated_document_feeds_back() {
    let (code, doc, _) = invoke(&["gen", "planted", "spine=3", "teeth=4", "m=7", "seed=5"]);
    assert_eq!(code, 0);
    let file = doc_file(&doc);
    let (code, out, _) = invoke(&["-i", file.arg(), "comb"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("comb-bipartite: yes\nspine {a0, a1, a2}"), "{out}");
    assert_eq!(invoke(&["-i", file.arg(), "verify"]).0, 0);
}

#[test]
fn attributes_by_label_or_id() {
    let by_id = invoke(&["--named", "chain", "attributes", "0"]);
    let by_label = invoke(&["--named", "chain", "attributes", "b2"]);
    assert_eq!(by_id, by_label);
    assert_eq!(by_id.1, "C0 {a0, b1, b2}\n{b1}: C1 C3\n{b2}: C2\n");
}

#[test]
fn dot_shapes() {
    let (_, p4, _) = invoke(&["--named", "P4", "dot"]);
    assert_eq!(p4.matches("subgraph cluster_").count(), 2);
    assert_eq!(p4.matches(" -> ").count(), 1);
    let (_, c4, _) = invoke(&["--named", "C4", "dot"]);
    assert_eq!(c4.matches("subgraph cluster_").count(), 1);
    assert_eq!(c4.matches(" -> ").count(), 0);
    let (_, tp, _) = invoke(&["--named", "two-pendant", "dot", "--c0", "a0"]);
    assert!(
        tp.contains("C0 -> C1 [label=\"{b1}\"]") && tp.contains("C0 -> C2 [label=\"{b2}\"]"),
        "{tp}"
    );
}

#[test]
fn spine_hint_is_honored() {
    // K2 is a comb either way round; the hint picks the side
    let doc = doc_file(r#"{"version":1,"vertices":["u","v"],"edges":[["u","v"]],"terminals":["u","v"],"spine":["v"]}"#);
    let (_, out, _) = invoke(&["-i", doc.arg(), "poset"]);
    assert!(out.starts_with("spine {v}\n"), "{out}");
}

#[test]
fn writer_failure_is_reported() {
    struct Broken;
    impl Write for Broken {
        fn write(&mut self, _: &[u8]) -> std::io::Result<usize> {
            Err(std::io::Error::other("closed"))
        }
        fn flush(&mut self) -> std::io::Result<()> {
            Ok(())
        }
    }
    let mut err = Vec::new();
    let code = run(["graftdm", "--named", "K2", "nu"], &mut Broken, &mut err);
    assert_eq!(code, 2);
    assert!(String::from_utf8(err).unwrap().contains("closed"));
}
