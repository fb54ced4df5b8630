use graftdm::decomposition::{
    attributes, comb_designations, defining_sequence, dm_relation, factor_components, kl_partition, CombDesignation,
};
use graftdm::generators::named_instances;
use graftdm::oracle::brute_min_joins;
use graftdm::tjoin::{allowed_edges, dist, min_join, nu, shortest_path_witness};
use graftdm::{EngineOptions, Graft, VertexId};

fn opts() -> EngineOptions {
    EngineOptions::default()
}

fn named(name: &str) -> Graft {
    named_instances().remove(name).unwrap()
}

fn v(graft: &Graft, label: &str) -> VertexId {
    graft.graph().vertex(label).unwrap()
}

fn labels(graft: &Graft, set: &[VertexId]) -> Vec<String> {
    set.iter().map(|&x| graft.graph().label(x).to_string()).collect()
}

fn edge_labels(graft: &Graft, ids: impl IntoIterator<Item = usize>) -> Vec<String> {
    let g = graft.graph();
    ids.into_iter()
        .map(|e| {
            let (a, b) = g.endpoints(e);
            format!("{}{}", g.label(a), g.label(b))
        })
        .collect()
}

fn canonical(graft: &Graft) -> CombDesignation {
    comb_designations(graft, &opts()).unwrap().remove(0)
}

#[test]
fn k2() {
    let g = named("K2");
    assert_eq!(nu(&g, &opts()).unwrap(), 1);
    assert_eq!(dist(&g, v(&g, "u"), v(&g, "v"), &opts()).unwrap(), -1);
    assert_eq!(comb_designations(&g, &opts()).unwrap().len(), 2);
}

#[test]
fn p4() {
    let g = named("P4");
    assert_eq!(nu(&g, &opts()).unwrap(), 2);
    assert_eq!(
        edge_labels(&g, allowed_edges(&g, &opts()).unwrap().iter()),
        ["v1v2", "v3v4"]
    );
    let comps: Vec<_> = factor_components(&g, &opts())
        .unwrap()
        .iter()
        .map(|c| labels(&g, &c.vertices))
        .collect();
    assert_eq!(comps, [["v1", "v2"], ["v3", "v4"]]);

    let d = canonical(&g);
    assert_eq!(labels(&g, &d.spine), ["v1", "v3"]);
    let p = dm_relation(&g, &d, &opts()).unwrap();
    assert_eq!(p.hasse, [(0, 1)]);
    let map = attributes(&g, &d, 0, &opts()).unwrap();
    let kl = kl_partition(&g, &opts()).unwrap();
    assert_eq!(labels(&g, &kl.classes[map.label(1).unwrap()]), ["v2"]);
}

#[test]
fn c4() {
    let g = named("C4");
    assert_eq!(nu(&g, &opts()).unwrap(), 2);
    let (size, joins) = brute_min_joins(&g, &opts()).unwrap();
    assert_eq!((size, joins.len()), (2, 2));
    assert_eq!(
        edge_labels(&g, min_join(&g, &opts()).unwrap().join.iter()),
        ["a1b1", "a2b2"]
    );
    assert_eq!(factor_components(&g, &opts()).unwrap().len(), 1);
    let kl = kl_partition(&g, &opts()).unwrap();
    let classes: Vec<_> = kl.classes.iter().map(|c| labels(&g, c)).collect();
    assert_eq!(classes, [["a1", "a2"], ["b1", "b2"]]);
}

#[test]
fn star_4() {
    let g = named("star-4");
    assert_eq!(nu(&g, &opts()).unwrap(), 4);
    assert_eq!(brute_min_joins(&g, &opts()).unwrap().1.len(), 1);
    for i in 1..=4 {
        for j in i + 1..=4 {
            let (x, y) = (v(&g, &format!("b{i}")), v(&g, &format!("b{j}")));
            assert_eq!(dist(&g, x, y, &opts()).unwrap(), -2);
        }
    }
    let kl = kl_partition(&g, &opts()).unwrap();
    assert!(kl.classes.iter().all(|c| c.len() == 1));
    assert_eq!(kl.classes.len(), 5);
}

#[test]
fn p4_shortest_path_witness() {
    let g = named("P4");
    let w = shortest_path_witness(&g, v(&g, "v1"), v(&g, "v4"), &opts()).unwrap();
    assert_eq!(labels(&g, w.walk.vertices()), ["v1", "v2", "v3", "v4"]);
    assert_eq!(w.weight, -1);
}

#[test]
fn two_pendant() {
    let g = named("two-pendant");
    let d = canonical(&g);
    let p = dm_relation(&g, &d, &opts()).unwrap();
    let comps: Vec<_> = p.components.iter().map(|c| labels(&g, &c.vertices)).collect();
    assert_eq!(comps, [vec!["a0", "b1", "b2"], vec!["x1", "y1"], vec!["x2", "y2"]]);
    let map = attributes(&g, &d, 0, &opts()).unwrap();
    let kl = kl_partition(&g, &opts()).unwrap();
    assert_eq!(labels(&g, &kl.classes[map.label(1).unwrap()]), ["b1"]);
    assert_eq!(labels(&g, &kl.classes[map.label(2).unwrap()]), ["b2"]);
    // D1 and D2 share no upper bound
    assert!((0..p.len()).all(|c| !(p.precedes(1, c) && p.precedes(2, c))));
}

#[test]
fn chain() {
    let g = named("chain");
    let d = canonical(&g);
    let p = dm_relation(&g, &d, &opts()).unwrap();
    assert_eq!(labels(&g, &p.components[3].vertices), ["z1", "w1"]);
    assert_eq!(defining_sequence(&p, 0, 3).unwrap(), [0, 1, 3]);
    let map = attributes(&g, &d, 0, &opts()).unwrap();
    let kl = kl_partition(&g, &opts()).unwrap();
    assert_eq!(labels(&g, &kl.classes[map.label(3).unwrap()]), ["b1"]);
}
