//! End-to-end analysis of an algebra: enumeration, bricks, and a report of
//! every mechanical check.

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::BoundQuiver;
use crate::decompose::is_isomorphic;
use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::homology::ext1_dim;
use crate::intmat;
use crate::rep::{hom_basis, Representation};
use crate::stability::{
    brick_slate, is_semistable_bruteforce, is_semistable_hom, is_stable_bruteforce, pairing, theta_of_pair,
    theta_of_slot, verify_facm_theorem, BrickSlate,
};
use crate::tau_tilting::{sign_coherence, ExchangeGraph, Limits, TauTilting};

/// An enumerated exchange graph with the brick slate of every node.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub tt: TauTilting,
    pub graph: ExchangeGraph,
    /// One entry per node; `Err` holds the reason the slate could not be built.
    pub slates: Vec<std::result::Result<BrickSlate, String>>,
}

impl Analysis {
    pub fn run(alg: BoundQuiver, limits: Limits, seed: u64) -> Result<Analysis> {
        let mut tt = TauTilting::new(alg, seed);
        let graph = tt.enumerate(limits)?;
        let mut slates = Vec::with_capacity(graph.nodes.len());
        for pair in &graph.nodes {
            slates.push(match brick_slate(&mut tt, pair, limits.max_dim) {
                Ok(s) => Ok(s),
                Err(Error::TheoremViolation(msg)) => Err(msg),
                Err(e) => return Err(e),
            });
        }
        Ok(Analysis { tt, graph, slates })
    }

    /// All slates, or the first failure as a theorem violation.
    pub fn slates(&self) -> Result<Vec<BrickSlate>> {
        self.slates
            .iter()
            .map(|s| s.clone().map_err(Error::TheoremViolation))
            .collect()
    }

    /// Registered indecomposables together with the simples, projectives and
    /// injectives.
    pub fn probes(&mut self) -> Result<Vec<Representation<Rational>>> {
        let alg = self.tt.algebra().clone();
        for m in alg.simples().iter().chain(&alg.projectives()).chain(&alg.injectives()) {
            self.tt.intern(m)?;
        }
        Ok(self.tt.registry().modules().to_vec())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Check {
    fn pass() -> Self {
        Check {
            passed: true,
            witness: None,
        }
    }

    fn fail(witness: Value) -> Self {
        Check {
            passed: false,
            witness: Some(witness),
        }
    }

    fn from_witnesses(w: Vec<Value>) -> Self {
        if w.is_empty() {
            Check::pass()
        } else {
            Check::fail(Value::Array(w))
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BrickInfo {
    pub slot: usize,
    pub name: String,
    pub dim_vector: Vec<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NodeChecks {
    pub tau_tilting: Check,
    pub sign_coherence: Check,
    pub c_eq_xd: Check,
    pub theta_pairing: Check,
    pub hom_orthogonal: Check,
    pub facm_equality: Check,
    pub dual_oracle: Check,
    pub unique_stable_brick: Check,
}

impl NodeChecks {
    pub fn all(&self) -> [&Check; 8] {
        [
            &self.tau_tilting,
            &self.sign_coherence,
            &self.c_eq_xd,
            &self.theta_pairing,
            &self.hom_orthogonal,
            &self.facm_equality,
            &self.dual_oracle,
            &self.unique_stable_brick,
        ]
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NodeReport {
    pub pair: String,
    pub d_diagonal: Vec<i64>,
    pub bricks: Vec<BrickInfo>,
    pub checks: NodeChecks,
    /// Semistability comparisons made, and those skipped for budget reasons.
    pub oracle_comparisons: usize,
    pub oracle_skipped: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SelfExtension {
    pub brick: String,
    pub ext1: usize,
    /// An indecomposable middle term `0 -> B -> E -> B -> 0`, if one is known.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub vertices: usize,
    pub dimension: usize,
    pub pairs: usize,
    pub complete: bool,
    pub regular: bool,
    pub connected: bool,
    pub probes: usize,
    pub nodes: Vec<NodeReport>,
    pub self_extensions: Vec<SelfExtension>,
    pub passed: bool,
}

fn theta_text(theta: &[Rational]) -> Vec<String> {
    theta.iter().map(ToString::to_string).collect()
}

/// Runs every check on every node of an analysis.
pub fn verify(analysis: &mut Analysis, prime: u64) -> Result<Report> {
    let probes = analysis.probes()?;
    let seed = analysis.tt.seed();
    let n = analysis.tt.n();
    let mut nodes = Vec::new();
    for k in 0..analysis.graph.nodes.len() {
        nodes.push(verify_node(analysis, k, &probes, prime, seed)?);
    }
    let self_extensions = self_extensions(analysis, &probes, seed)?;
    let graph = &analysis.graph;
    let regular = graph.is_regular(n);
    let connected = graph.is_connected();
    let passed =
        graph.complete && regular && connected && nodes.iter().all(|r| r.checks.all().iter().all(|c| c.passed));
    Ok(Report {
        vertices: n,
        dimension: analysis.tt.algebra().dim(),
        pairs: graph.nodes.len(),
        complete: graph.complete,
        regular,
        connected,
        probes: probes.len(),
        nodes,
        self_extensions,
        passed,
    })
}

fn verify_node(
    analysis: &Analysis,
    k: usize,
    probes: &[Representation<Rational>],
    prime: u64,
    seed: u64,
) -> Result<NodeReport> {
    let tt = &analysis.tt;
    let pair = &analysis.graph.nodes[k];
    let name = tt.pair_name(pair);
    let g = tt.g_matrix(pair)?;
    let c = tt.c_matrix(pair)?;
    let tau_tilting = if tt.is_tau_tilting(pair)? {
        Check::pass()
    } else {
        Check::fail(json!("not a basic τ-tilting pair"))
    };
    let mixed: Vec<Value> = sign_coherence(&c)
        .iter()
        .enumerate()
        .filter(|(_, s)| s.is_none())
        .map(|(r, _)| json!({ "column": r + 1, "c_vector": intmat::column(&c, r) }))
        .collect();
    let sign_check = Check::from_witnesses(mixed);

    let slate = match &analysis.slates[k] {
        Ok(s) => s,
        Err(msg) => {
            let failed = || Check::fail(json!(msg));
            return Ok(NodeReport {
                pair: name,
                d_diagonal: Vec::new(),
                bricks: Vec::new(),
                checks: NodeChecks {
                    tau_tilting,
                    sign_coherence: sign_check,
                    c_eq_xd: failed(),
                    theta_pairing: failed(),
                    hom_orthogonal: failed(),
                    facm_equality: failed(),
                    dual_oracle: failed(),
                    unique_stable_brick: failed(),
                },
                oracle_comparisons: 0,
                oracle_skipped: 0,
            });
        }
    };

    let gxd = intmat::mul(&intmat::mul(&intmat::transpose(&g), &slate.x_matrix), &slate.d_matrix);
    let c_eq_xd = if gxd == intmat::identity(g.len()) && intmat::mul(&slate.x_matrix, &slate.d_matrix) == c {
        Check::pass()
    } else {
        Check::fail(json!({ "gt_x_d": gxd }))
    };

    let ones = vec![Rational::from_i64(1); pair.len()];
    let theta = theta_of_pair(tt, pair, &ones)?;
    let bad_pairing: Vec<Value> = slate
        .bricks
        .iter()
        .zip(slate.signs())
        .enumerate()
        .filter(|(_, (b, d))| pairing(&theta, b.dims()) != Rational::from_i64(*d))
        .map(|(r, (b, d))| json!({ "slot": r + 1, "pairing": pairing(&theta, b.dims()).to_string(), "d": d }))
        .collect();

    let fac = verify_facm_theorem(tt, slate, probes)?;
    let hom_orthogonal = if fac.hom_orthogonal {
        Check::pass()
    } else {
        Check::fail(json!("B⁺ is not Hom-orthogonal"))
    };
    let own = slate.pair.m.iter().map(|&i| tt.name(i));
    let probe_names: Vec<String> = probes.iter().map(|p| describe(tt, p)).chain(own).collect();
    let facm_equality = Check::from_witnesses(fac.mismatches.iter().map(|&i| json!(probe_names[i])).collect());

    let mut disagreements = Vec::new();
    let mut duplicates = Vec::new();
    let mut comparisons = 0;
    let mut skipped = 0;
    for r in 0..pair.len() {
        let almost = pair.remove_summand(r);
        let theta_r = theta_of_slot(tt, pair, r);
        let brick = &slate.bricks[r];
        match is_stable_bruteforce(brick, &theta_r, prime) {
            Ok(true) => {}
            Ok(false) => duplicates.push(json!({ "slot": r + 1, "brick_not_stable": tt.name(slate.brick_ids[r]) })),
            Err(Error::BudgetExceeded { .. } | Error::DenominatorClash { .. }) => skipped += 1,
            Err(e) => return Err(e),
        }
        for x in probes {
            let by_hom = is_semistable_hom(tt, x, &almost)?;
            let by_force = match is_semistable_bruteforce(x, &theta_r, prime) {
                Ok(v) => v,
                Err(Error::BudgetExceeded { .. } | Error::DenominatorClash { .. }) => {
                    skipped += 1;
                    continue;
                }
                Err(e) => return Err(e),
            };
            comparisons += 1;
            if by_hom != by_force {
                disagreements.push(json!({
                    "slot": r + 1,
                    "theta": theta_text(&theta_r),
                    "module": describe(tt, x),
                    "hom_criterion": by_hom,
                    "brute_force": by_force,
                }));
            }
            if by_force && is_stable_bruteforce(x, &theta_r, prime)? && !is_isomorphic(x, brick, seed)? {
                duplicates.push(json!({ "slot": r + 1, "other_stable": describe(tt, x) }));
            }
        }
    }

    Ok(NodeReport {
        pair: name,
        d_diagonal: slate.signs(),
        bricks: slate
            .bricks
            .iter()
            .zip(&slate.brick_ids)
            .enumerate()
            .map(|(r, (b, &id))| BrickInfo {
                slot: r + 1,
                name: tt.name(id),
                dim_vector: b.dim_vector(),
            })
            .collect(),
        checks: NodeChecks {
            tau_tilting,
            sign_coherence: sign_check,
            c_eq_xd,
            theta_pairing: Check::from_witnesses(bad_pairing),
            hom_orthogonal,
            facm_equality,
            dual_oracle: Check::from_witnesses(disagreements),
            unique_stable_brick: Check::from_witnesses(duplicates),
        },
        oracle_comparisons: comparisons,
        oracle_skipped: skipped,
    })
}

fn describe(tt: &TauTilting, m: &Representation<Rational>) -> String {
    match tt.registry().lookup(m) {
        Ok(Some(id)) => tt.name(id),
        _ => format!("{:?}", m.dims()),
    }
}

/// Bricks with self-extensions, each with an indecomposable probe `E` that
/// is a nonsplit extension of the brick by itself when one exists.
fn self_extensions(analysis: &Analysis, probes: &[Representation<Rational>], seed: u64) -> Result<Vec<SelfExtension>> {
    let tt = &analysis.tt;
    let alg = tt.algebra();
    let mut ids: Vec<usize> = analysis
        .slates
        .iter()
        .flatten()
        .flat_map(|s| s.brick_ids.iter().copied())
        .collect();
    ids.sort_by(|&a, &b| tt.registry().cmp_ids(a, b));
    ids.dedup();
    let mut out = Vec::new();
    for id in ids {
        let b = tt.module(id);
        let ext1 = ext1_dim(alg, b, b)?;
        if ext1 == 0 {
            continue;
        }
        let mut witness = None;
        for e in probes {
            if let Some(name) = extension_witness(tt, b, e, seed)? {
                witness = Some(name);
                break;
            }
        }
        out.push(SelfExtension {
            brick: tt.name(id),
            ext1,
            witness,
        });
    }
    Ok(out)
}

/// `E` when it is indecomposable with a submodule `B` and quotient `B`.
fn extension_witness(
    tt: &TauTilting,
    b: &Representation<Rational>,
    e: &Representation<Rational>,
    seed: u64,
) -> Result<Option<String>> {
    let doubled: Vec<usize> = b.dims().iter().map(|d| 2 * d).collect();
    if e.dims() != doubled.as_slice() {
        return Ok(None);
    }
    for f in hom_basis(b, e)? {
        if f.kernel().module.is_zero() && is_isomorphic(&f.cokernel().module, b, seed)? {
            return Ok(Some(describe(tt, e)));
        }
    }
    Ok(None)
}
