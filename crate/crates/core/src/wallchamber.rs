//! Chambers spanned by g-vectors, walls cut out by bricks, and the text
//! formats that draw them.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::field::Rational;
use crate::intmat;
use crate::matrix::IntMatrix;
use crate::rep::Representation;
use crate::stability::{submodule_dim_vectors, BrickSlate};
use crate::tau_tilting::{ExchangeGraph, TauPair, TauTilting};

/// Version of the fan JSON layout.
pub const FAN_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Chamber {
    pub pair: TauPair,
    /// Extreme rays: the columns of `G`.
    pub generators: Vec<Vec<i64>>,
    /// Signed normals of the surrounding walls: the columns of `C`.
    pub wall_normals: Vec<Vec<i64>>,
}

/// The cone of a τ-tilting pair. Panics unless `CᵀG = I`.
pub fn chamber_of_pair(pair: &TauPair, g: &IntMatrix, c: &IntMatrix) -> Chamber {
    let n = g.len();
    assert_eq!(
        intmat::mul(&intmat::transpose(c), g),
        intmat::identity(n),
        "wall normals must be dual to the generators"
    );
    Chamber {
        pair: pair.clone(),
        generators: intmat::columns(g),
        wall_normals: intmat::columns(c),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Wall {
    /// `[B]`.
    pub normal: Vec<i64>,
    /// Dimension vectors `[L]` of the proper nonzero submodules of `B`; the
    /// wall is where `⟨θ,[B]⟩ = 0` and `⟨θ,[L]⟩ ≤ 0` for all of them.
    pub facets: Vec<Vec<i64>>,
    /// Registry handle of the brick.
    pub brick: usize,
}

/// The stability space of a brick.
pub fn wall_of_brick(b: &Representation<Rational>, brick: usize, p: u64) -> Result<Wall> {
    let zero = vec![0; b.dims().len()];
    let facets = submodule_dim_vectors(b, p)?
        .into_iter()
        .filter(|d| *d != zero && d.as_slice() != b.dims())
        .map(|d| d.into_iter().map(|x| x as i64).collect())
        .collect();
    Ok(Wall {
        normal: b.dim_vector(),
        facets,
        brick,
    })
}

/// Label of the edge between adjacent nodes: the positive c-vector and the
/// brick on the wall the two chambers share.
pub fn shared_wall(graph: &ExchangeGraph, slates: &[BrickSlate], a: usize, b: usize) -> Result<(Vec<i64>, usize)> {
    let edge = graph
        .edges
        .iter()
        .find(|e| (e.upper, e.lower) == (a, b) || (e.upper, e.lower) == (b, a))
        .ok_or(Error::NotAdjacent(a, b))?;
    let slate = &slates[edge.upper];
    let brick = &slate.bricks[edge.upper_slot];
    if brick.dim_vector() != edge.label {
        return Err(Error::TheoremViolation(format!(
            "edge label {:?} differs from brick dimension {:?}",
            edge.label,
            brick.dim_vector()
        )));
    }
    Ok((edge.label.clone(), slate.brick_ids[edge.upper_slot]))
}

#[derive(Clone, Debug, Serialize)]
pub struct Fan {
    pub chambers: Vec<Chamber>,
    pub walls: Vec<Wall>,
    /// Only chambers reached by mutation from `(A, 0)` are present.
    pub reachable_only: bool,
    pub complete: bool,
}

/// Chambers of all nodes and the walls bounding them, one per brick.
pub fn build_fan(tt: &TauTilting, graph: &ExchangeGraph, slates: &[BrickSlate], p: u64) -> Result<Fan> {
    let mut chambers = Vec::with_capacity(graph.nodes.len());
    let mut walls: BTreeMap<(Vec<i64>, usize), Wall> = BTreeMap::new();
    for (pair, slate) in graph.nodes.iter().zip(slates) {
        chambers.push(chamber_of_pair(pair, &tt.g_matrix(pair)?, &tt.c_matrix(pair)?));
        for (b, &id) in slate.bricks.iter().zip(&slate.brick_ids) {
            let key = (b.dim_vector(), id);
            if let Entry::Vacant(slot) = walls.entry(key) {
                slot.insert(wall_of_brick(b, id, p)?);
            }
        }
    }
    Ok(Fan {
        chambers,
        walls: walls.into_values().collect(),
        reachable_only: true,
        complete: graph.complete,
    })
}

fn vector_text(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// The exchange graph as a DOT digraph, arrows pointing to the smaller
/// torsion class, edges labelled by c-vector and brick.
pub fn emit_dot(tt: &TauTilting, graph: &ExchangeGraph, slates: &[BrickSlate]) -> Result<String> {
    let names: Vec<String> = graph.nodes.iter().map(|p| dot_escape(&tt.pair_name(p))).collect();
    let mut out = String::from("digraph exchange {\n  rankdir=TB;\n");
    for name in &names {
        writeln!(out, "  \"{name}\";").expect("write to string");
    }
    for e in &graph.edges {
        let (label, brick) = shared_wall(graph, slates, e.upper, e.lower)?;
        writeln!(
            out,
            "  \"{}\" -> \"{}\" [label=\"{} {}\"];",
            names[e.upper],
            names[e.lower],
            vector_text(&label),
            dot_escape(&tt.name(brick))
        )
        .expect("write to string");
    }
    out.push_str("}\n");
    Ok(out)
}

/// The fan as pretty-printed JSON.
pub fn emit_fan_json(tt: &TauTilting, fan: &Fan) -> String {
    let chambers: Vec<_> = fan
        .chambers
        .iter()
        .enumerate()
        .map(|(k, c)| {
            json!({
                "pair_id": k,
                "pair": tt.pair_name(&c.pair),
                "generators": c.generators,
                "wall_normals": c.wall_normals,
            })
        })
        .collect();
    let walls: Vec<_> = fan
        .walls
        .iter()
        .map(|w| {
            json!({
                "normal": w.normal,
                "facets": w.facets,
                "brick": tt.name(w.brick),
                "brick_dim": w.normal,
            })
        })
        .collect();
    let doc = json!({
        "version": FAN_SCHEMA_VERSION,
        "reachable_only": fan.reachable_only,
        "complete": fan.complete,
        "chambers": chambers,
        "walls": walls,
    });
    serde_json::to_string_pretty(&doc).expect("json") + "\n"
}

type V3 = [f64; 3];

fn dot3(a: V3, b: V3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn normalize(a: V3) -> V3 {
    let l = dot3(a, a).sqrt();
    [a[0] / l, a[1] / l, a[2] / l]
}

fn cross(a: V3, b: V3) -> V3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn to_v3(v: &[i64]) -> V3 {
    [v[0] as f64, v[1] as f64, v[2] as f64]
}

/// Stereographic projection of the unit sphere from a point onto the plane
/// through the origin orthogonal to it.
#[derive(Clone, Copy, Debug)]
pub struct Projection {
    pole: V3,
    u: V3,
    w: V3,
}

impl Projection {
    pub fn from_point(point: [f64; 3]) -> Self {
        let pole = normalize(point);
        let helper = if pole[2].abs() < 0.9 {
            [0.0, 0.0, 1.0]
        } else {
            [1.0, 0.0, 0.0]
        };
        let u = normalize(cross(helper, pole));
        let w = cross(pole, u);
        Projection { pole, u, w }
    }

    /// Plane coordinates of a sphere point, `None` too close to the pole.
    pub fn project(&self, x: V3) -> Option<(f64, f64)> {
        let denom = 1.0 - dot3(x, self.pole);
        (denom > 1e-9).then(|| (dot3(x, self.u) / denom, dot3(x, self.w) / denom))
    }

    /// The sphere point over plane coordinates; inverse of [`Projection::project`].
    pub fn unproject(&self, (x, y): (f64, f64)) -> [f64; 3] {
        let r2 = x * x + y * y;
        let k = 1.0 / (r2 + 1.0);
        [0, 1, 2].map(|i| k * (2.0 * x * self.u[i] + 2.0 * y * self.w[i] + (r2 - 1.0) * self.pole[i]))
    }
}

impl Default for Projection {
    fn default() -> Self {
        Projection::from_point([1.0, 1.0, 1.0])
    }
}

const SAMPLES: usize = 1440;
const VIEW_RADIUS: f64 = 4.0;
const SCALE: f64 = 100.0;

fn coord(x: f64) -> String {
    let v = x * SCALE;
    if v.abs() < 5e-7 {
        "0.000000".into()
    } else {
        format!("{v:.6}")
    }
}

fn in_view(p: (f64, f64)) -> bool {
    p.0.hypot(p.1) <= VIEW_RADIUS
}

/// Projected runs of the part of `normal^⊥ ∩ S²` satisfying the facets.
fn wall_runs(wall: &Wall, proj: &Projection) -> Vec<Vec<(f64, f64)>> {
    let nu = normalize(to_v3(&wall.normal));
    let k = (0..3)
        .min_by(|&i, &j| nu[i].abs().partial_cmp(&nu[j].abs()).expect("finite"))
        .expect("three coordinates");
    let mut e = [0.0; 3];
    e[k] = 1.0;
    let a = normalize(cross(nu, e));
    let b = cross(nu, a);
    let facets: Vec<V3> = wall.facets.iter().map(|f| to_v3(f)).collect();
    let points: Vec<Option<(f64, f64)>> = (0..SAMPLES)
        .map(|s| {
            let t = std::f64::consts::TAU * s as f64 / SAMPLES as f64;
            let x = [
                t.cos() * a[0] + t.sin() * b[0],
                t.cos() * a[1] + t.sin() * b[1],
                t.cos() * a[2] + t.sin() * b[2],
            ];
            if facets.iter().any(|f| dot3(x, *f) > 1e-9) {
                return None;
            }
            proj.project(x).filter(|&p| in_view(p))
        })
        .collect();
    let Some(start) = points.iter().position(Option::is_none) else {
        // the whole circle is visible
        let mut run: Vec<(f64, f64)> = points.into_iter().flatten().collect();
        run.push(run[0]);
        return vec![run];
    };
    let mut runs = Vec::new();
    let mut current = Vec::new();
    for s in 1..=SAMPLES {
        match points[(start + s) % SAMPLES] {
            Some(p) => current.push(p),
            None => {
                if current.len() > 1 {
                    runs.push(std::mem::take(&mut current));
                }
                current.clear();
            }
        }
    }
    runs
}

/// The walls of a rank-3 fan on the sphere, seen from `proj`, with each
/// chamber tagged by its index at its projected barycentre.
pub fn emit_svg_stereographic(tt: &TauTilting, fan: &Fan, proj: &Projection) -> Result<String> {
    if tt.n() != 3 {
        return Err(Error::NotRankThree(tt.n()));
    }
    let half = VIEW_RADIUS * SCALE;
    let mut out = String::new();
    writeln!(out, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>").expect("write");
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\">",
        coord(-VIEW_RADIUS),
        coord(-VIEW_RADIUS),
        coord(2.0 * VIEW_RADIUS),
        coord(2.0 * VIEW_RADIUS)
    )
    .expect("write");
    writeln!(
        out,
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"white\"/>",
        -half,
        -half,
        2.0 * half,
        2.0 * half
    )
    .expect("write");
    for wall in &fan.walls {
        let runs = wall_runs(wall, proj);
        let mut d = String::new();
        for run in &runs {
            for (k, &(x, y)) in run.iter().enumerate() {
                let op = if k == 0 { 'M' } else { 'L' };
                write!(d, "{op}{} {} ", coord(x), coord(-y)).expect("write");
            }
        }
        let label = vector_text(&wall.normal);
        writeln!(
            out,
            "<path class=\"wall\" data-normal=\"{label}\" d=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>",
            d.trim_end()
        )
        .expect("write");
        if let Some(&(x, y)) = runs.iter().max_by_key(|r| r.len()).and_then(|r| r.get(r.len() / 2)) {
            writeln!(
                out,
                "<text class=\"wall-label\" x=\"{}\" y=\"{}\" font-size=\"12\" fill=\"blue\">{label}&#8869;</text>",
                coord(x),
                coord(-y)
            )
            .expect("write");
        }
    }
    for (k, chamber) in fan.chambers.iter().enumerate() {
        let mut centre = [0.0; 3];
        for g in &chamber.generators {
            let unit = normalize(to_v3(g));
            for i in 0..3 {
                centre[i] += unit[i];
            }
        }
        let centre = normalize(centre);
        let (x, y) = match proj.project(centre) {
            Some(p) if in_view(p) => p,
            Some((x, y)) => {
                let r = x.hypot(y);
                (x / r * (VIEW_RADIUS - 0.2), y / r * (VIEW_RADIUS - 0.2))
            }
            None => (VIEW_RADIUS - 0.3, VIEW_RADIUS - 0.3),
        };
        writeln!(
            out,
            "<text class=\"chamber\" data-pair=\"{}\" x=\"{}\" y=\"{}\" font-size=\"14\" text-anchor=\"middle\">{}</text>",
            xml_escape(&tt.pair_name(&chamber.pair)),
            coord(x),
            coord(-y),
            k + 1
        )
        .expect("write");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BoundQuiver;
    use crate::stability::brick_slate;
    use crate::tau_tilting::Limits;

    fn setup(text: &str) -> (TauTilting, ExchangeGraph, Vec<BrickSlate>) {
        let mut tt = TauTilting::new(BoundQuiver::parse(text).unwrap(), 0);
        let g = tt.enumerate(Limits::default()).unwrap();
        let slates = g.nodes.iter().map(|p| brick_slate(&mut tt, p, 30).unwrap()).collect();
        (tt, g, slates)
    }

    #[test]
    fn chambers_of_extremes() {
        let (tt, g, _) = setup("vertices 3\narrow a: 1 -> 2\narrow b: 2 -> 3\nrelation a*b");
        let top = &g.nodes[0];
        let c = chamber_of_pair(top, &tt.g_matrix(top).unwrap(), &tt.c_matrix(top).unwrap());
        assert_eq!(c.generators, intmat::identity(3));
        assert_eq!(c.wall_normals, intmat::identity(3));
        let bottom = tt.bottom();
        let c = chamber_of_pair(&bottom, &tt.g_matrix(&bottom).unwrap(), &tt.c_matrix(&bottom).unwrap());
        let minus: Vec<Vec<i64>> = (0..3).map(|i| (0..3).map(|j| -i64::from(i == j)).collect()).collect();
        assert_eq!(c.generators, minus);
        assert_eq!(c.wall_normals, minus);
    }

    #[test]
    fn fan_of_the_running_example() {
        let (tt, g, slates) = setup("vertices 3\narrow a: 1 -> 2\narrow b: 2 -> 3\nrelation a*b");
        let fan = build_fan(&tt, &g, &slates, 2).unwrap();
        assert_eq!(fan.chambers.len(), 12);
        let mut normals: Vec<Vec<i64>> = fan.walls.iter().map(|w| w.normal.clone()).collect();
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
        let dot = emit_dot(&tt, &g, &slates).unwrap();
        assert_eq!(dot.matches(" -> ").count(), 18);
        let svg = emit_svg_stereographic(&tt, &fan, &Projection::default()).unwrap();
        assert_eq!(svg.matches("class=\"wall\"").count(), 5);
        assert_eq!(svg.matches("class=\"chamber\"").count(), 12);
        assert_eq!(svg, emit_svg_stereographic(&tt, &fan, &Projection::default()).unwrap());
        let json: serde_json::Value = serde_json::from_str(&emit_fan_json(&tt, &fan)).unwrap();
        assert_eq!(json["version"], 1);
        assert_eq!(json["walls"].as_array().unwrap().len(), 5);
    }

    #[test]
    fn point_fan_and_rank_check() {
        let (tt, g, slates) = setup("vertices 1");
        let fan = build_fan(&tt, &g, &slates, 2).unwrap();
        assert_eq!((fan.walls.len(), fan.chambers.len()), (1, 2));
        assert!(matches!(
            emit_svg_stereographic(&tt, &fan, &Projection::default()),
            Err(Error::NotRankThree(1))
        ));
    }

    #[test]
    fn single_wall_is_one_closed_circle() {
        let wall = Wall {
            normal: vec![1, 0, 0],
            facets: vec![],
            brick: 0,
        };
        let runs = wall_runs(&wall, &Projection::default());
        assert_eq!(runs.len(), 1);
        assert_eq!(runs[0].first(), runs[0].last());
    }

    #[test]
    fn top_chamber_tag_lies_beyond_the_walls() {
        let proj = Projection::default();
        assert!(proj.project(normalize([1.0, 1.0, 1.0])).is_none());
        // points with all coordinates positive land far from the origin
        let (x, y) = proj.project(normalize([1.0, 1.0, 0.9])).unwrap();
        assert!(x.hypot(y) > 3.0);
        let (x, y) = proj.project(normalize([-1.0, -1.0, -1.0])).unwrap();
        assert!(x.hypot(y) < 1e-9);
    }
}
