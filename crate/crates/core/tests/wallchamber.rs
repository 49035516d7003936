mod common;

use common::{alg, A2, NAKAYAMA, POINT, RUNNING};
use tautilt_core::stability::brick_slate;
use tautilt_core::tau_tilting::ExchangeGraph;
use tautilt_core::wallchamber::{
    build_fan, chamber_of_pair, emit_dot, emit_fan_json, emit_svg_stereographic, shared_wall, wall_of_brick, Fan,
    Projection, FAN_SCHEMA_VERSION,
};
use tautilt_core::{intmat, Error, Limits, TauTilting};

struct Setup {
    tt: TauTilting,
    graph: ExchangeGraph,
    slates: Vec<tautilt_core::stability::BrickSlate>,
}

fn setup(text: &str) -> Setup {
    let mut tt = TauTilting::new(alg(text), 0);
    let graph = tt.enumerate(Limits::default()).unwrap();
    let slates = graph
        .nodes
        .iter()
        .map(|p| brick_slate(&mut tt, p, 30).unwrap())
        .collect();
    Setup { tt, graph, slates }
}

fn fan(s: &Setup) -> Fan {
    build_fan(&s.tt, &s.graph, &s.slates, 2).unwrap()
}

fn node(s: &Setup, name: &str) -> usize {
    s.graph.nodes.iter().position(|p| s.tt.pair_name(p) == name).unwrap()
}

/// `(pair name, x, y)` for every chamber tag, in plane coordinates.
fn chamber_tags(svg: &str) -> Vec<(String, f64, f64)> {
    svg.lines()
        .filter(|l| l.contains("class=\"chamber\""))
        .map(|l| {
            let attr = |key: &str| {
                let start = l.find(&format!(" {key}=\"")).unwrap() + key.len() + 3;
                l[start..start + l[start..].find('"').unwrap()].to_string()
            };
            let x: f64 = attr("x").parse().unwrap();
            let y: f64 = attr("y").parse().unwrap();
            (attr("data-pair"), x / 100.0, -y / 100.0)
        })
        .collect()
}

#[test]
fn chambers() {
    let s = setup(RUNNING);
    let row2 = &s.graph.nodes[node(&s, "(1\\2 + 2\\3 + 2, 0)")];
    let c = chamber_of_pair(row2, &s.tt.g_matrix(row2).unwrap(), &s.tt.c_matrix(row2).unwrap());
    assert_eq!(c.generators, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 1, -1]]);
    assert_eq!(c.wall_normals, vec![vec![1, 0, 0], vec![0, 1, 1], vec![0, 0, -1]]);

    // the sum of the generators lies strictly inside every chamber
    for pair in &s.graph.nodes {
        let c = chamber_of_pair(pair, &s.tt.g_matrix(pair).unwrap(), &s.tt.c_matrix(pair).unwrap());
        let theta: Vec<i64> = (0..3).map(|i| c.generators.iter().map(|g| g[i]).sum()).collect();
        for normal in &c.wall_normals {
            assert_eq!(intmat::dot(&theta, normal), 1);
        }
    }
}

#[test]
fn walls_of_bricks() {
    let a = alg(RUNNING);
    for i in 0..3 {
        let w = wall_of_brick(&a.simple(i), 0, 2).unwrap();
        assert!(w.facets.is_empty());
    }
    let w = wall_of_brick(&a.projective(0), 0, 2).unwrap();
    assert_eq!((w.normal, w.facets), (vec![1, 1, 0], vec![vec![0, 1, 0]]));
    let w = wall_of_brick(&a.projective(1), 0, 2).unwrap();
    assert_eq!((w.normal, w.facets), (vec![0, 1, 1], vec![vec![0, 0, 1]]));
}

#[test]
fn shared_walls_label_edges() {
    let s = setup(RUNNING);
    let top = node(&s, "(1\\2 + 2\\3 + 3, 0)");
    let mut labels = Vec::new();
    for e in s.graph.edges.iter().filter(|e| e.upper == top) {
        labels.push(shared_wall(&s.graph, &s.slates, e.upper, e.lower).unwrap().0);
    }
    labels.sort();
    assert_eq!(labels, vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);

    let bottom = node(&s, "(0, 1\\2 + 2\\3 + 3)");
    let from = node(&s, "(1, 2\\3 + 3)");
    assert_eq!(shared_wall(&s.graph, &s.slates, bottom, from).unwrap().0, vec![1, 0, 0]);
    assert!(matches!(
        shared_wall(&s.graph, &s.slates, top, bottom),
        Err(Error::NotAdjacent(..))
    ));

    let p = setup(POINT);
    assert_eq!(shared_wall(&p.graph, &p.slates, 0, 1).unwrap().0, vec![1]);
}

#[test]
fn fans() {
    let s = setup(RUNNING);
    let f = fan(&s);
    assert_eq!(f.chambers.len(), 12);
    let mut normals: Vec<Vec<i64>> = f.walls.iter().map(|w| w.normal.clone()).collect();
    normals.sort();
    assert_eq!(
        normals,
        vec![
            vec![0, 0, 1],
            vec![0, 1, 0],
            vec![0, 1, 1],
            vec![1, 0, 0],
            vec![1, 1, 0]
        ]
    );
    assert!(f.complete && f.reachable_only);

    let p = setup(POINT);
    let f = fan(&p);
    assert_eq!((f.chambers.len(), f.walls.len()), (2, 1));

    let a2 = setup(A2);
    assert_eq!(fan(&a2).chambers.len(), 5);
    assert_eq!(fan(&a2).walls.len(), 3);

    // two non-isomorphic bricks share the normal (1,1)
    let n = setup(NAKAYAMA);
    let f = fan(&n);
    assert_eq!(f.walls.iter().filter(|w| w.normal == vec![1, 1]).count(), 2);
}

#[test]
fn json_and_dot() {
    let s = setup(RUNNING);
    let json: serde_json::Value = serde_json::from_str(&emit_fan_json(&s.tt, &fan(&s))).unwrap();
    assert_eq!(json["version"], FAN_SCHEMA_VERSION);
    assert_eq!(json["chambers"].as_array().unwrap().len(), 12);
    assert_eq!(json["walls"].as_array().unwrap().len(), 5);

    let dot = emit_dot(&s.tt, &s.graph, &s.slates).unwrap();
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches(" -> ").count(), 18);
    for label in ["(1,0,0)", "(0,1,0)", "(0,0,1)", "(0,1,1)", "(1,1,0)"] {
        assert!(dot.contains(label));
    }
    let p = setup(POINT);
    assert_eq!(emit_dot(&p.tt, &p.graph, &p.slates).unwrap().matches(" -> ").count(), 1);
}

#[test]
fn projection_round_trip() {
    let proj = Projection::default();
    for x in [[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.6, 0.0, -0.8]] {
        let back = proj.unproject(proj.project(x).unwrap());
        for i in 0..3 {
            assert!((back[i] - x[i]).abs() < 1e-9);
        }
    }
    assert!(proj.project([1.0 / 3f64.sqrt(); 3]).is_none());
}

#[test]
fn stereographic_svg() {
    let s = setup(RUNNING);
    let f = fan(&s);
    let svg = emit_svg_stereographic(&s.tt, &f, &Projection::default()).unwrap();
    assert_eq!(svg, emit_svg_stereographic(&s.tt, &f, &Projection::default()).unwrap());
    assert_eq!(svg.matches("class=\"wall\"").count(), 5);

    // coordinate walls are closed circles, the other two are arcs
    for line in svg.lines().filter(|l| l.contains("class=\"wall\"")) {
        let closed = line.matches('M').count() == 1 && {
            let d = &line[line.find(" d=\"").unwrap() + 4..];
            let d = &d[..d.find('"').unwrap()];
            let pts: Vec<&str> = d.split(['M', 'L']).map(str::trim).filter(|p| !p.is_empty()).collect();
            pts.first() == pts.last()
        };
        let simple = ["(1,0,0)", "(0,1,0)", "(0,0,1)"]
            .iter()
            .any(|n| line.contains(&format!("data-normal=\"{n}\"")));
        assert_eq!(closed, simple, "{line}");
    }

    let proj = Projection::default();
    let tags = chamber_tags(&svg);
    assert_eq!(tags.len(), 12);
    let (_, x, y) = tags.iter().find(|t| t.0 == "(1\\2 + 2\\3 + 3, 0)").unwrap();
    assert!(proj.unproject((*x, *y)).iter().all(|&c| c > 0.0));
    let (_, x, y) = tags.iter().find(|t| t.0 == "(0, 1\\2 + 2\\3 + 3)").unwrap();
    assert!(proj.unproject((*x, *y)).iter().all(|&c| c < 0.0));

    let a2 = setup(A2);
    assert!(matches!(
        emit_svg_stereographic(&a2.tt, &fan(&a2), &Projection::default()),
        Err(Error::NotRankThree(2))
    ));
}
