//! τ-rigid and τ-tilting pairs, their G- and C-matrices, mutation and the
//! exchange graph.
//!
//! Pairs are stored as handles into a [`ModuleRegistry`] (the M-part) and
//! vertices (the P-part, standing for `⊕ P(v)`). Slots are numbered with the
//! M-part first, each part in canonical order.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::BoundQuiver;
use crate::decompose::{indecomposable_summands, ModuleRegistry};
use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::homology::{g_vector, projective_vertices, tau};
use crate::intmat;
use crate::matrix::IntMatrix;
use crate::rep::{direct_sum, direct_sum_or_zero, hom_dim, trace, Representation};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TauPair {
    /// Registry handles of the indecomposable summands of `M`.
    pub m: Vec<usize>,
    /// Vertices `v` of the summands `P(v)` of `P`.
    pub p: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    M(usize),
    P(usize),
}

impl TauPair {
    pub fn len(&self) -> usize {
        self.m.len() + self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn slot(&self, r: usize) -> Slot {
        if r < self.m.len() {
            Slot::M(self.m[r])
        } else {
            Slot::P(self.p[r - self.m.len()])
        }
    }

    pub fn slots(&self) -> Vec<Slot> {
        (0..self.len()).map(|r| self.slot(r)).collect()
    }

    pub fn position(&self, slot: Slot) -> Option<usize> {
        match slot {
            Slot::M(id) => self.m.iter().position(|&x| x == id),
            Slot::P(v) => self.p.iter().position(|&x| x == v).map(|k| k + self.m.len()),
        }
    }

    /// `(M,P)_r`: the pair with slot `r` removed.
    pub fn remove_summand(&self, r: usize) -> TauPair {
        let mut out = self.clone();
        if r < self.m.len() {
            out.m.remove(r);
        } else {
            out.p.remove(r - self.m.len());
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_nodes: usize,
    pub max_dim: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_nodes: 10_000,
            max_dim: 30,
        }
    }
}

/// An edge of the exchange graph, oriented from the pair with the larger
/// torsion class to the one with the smaller.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub upper: usize,
    pub lower: usize,
    pub upper_slot: usize,
    pub lower_slot: usize,
    /// The c-vector of `upper` at `upper_slot`.
    pub label: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct ExchangeGraph {
    pub nodes: Vec<TauPair>,
    pub edges: Vec<Edge>,
    pub complete: bool,
    pub truncation: Option<String>,
}

impl ExchangeGraph {
    pub fn degree(&self, node: usize) -> usize {
        self.edges.iter().filter(|e| e.upper == node || e.lower == node).count()
    }

    pub fn is_regular(&self, n: usize) -> bool {
        (0..self.nodes.len()).all(|k| self.degree(k) == n)
    }

    pub fn is_connected(&self) -> bool {
        if self.nodes.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(k) = stack.pop() {
            for e in &self.edges {
                for (a, b) in [(e.upper, e.lower), (e.lower, e.upper)] {
                    if a == k && !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn index_of(&self, pair: &TauPair) -> Option<usize> {
        self.nodes.iter().position(|p| p == pair)
    }

    /// The edge whose lower end is `node` at slot `slot`.
    pub fn edge_into(&self, node: usize, slot: usize) -> Option<&Edge> {
        self.edges.iter().find(|e| e.lower == node && e.lower_slot == slot)
    }

    pub fn edge_out_of(&self, node: usize, slot: usize) -> Option<&Edge> {
        self.edges.iter().find(|e| e.upper == node && e.upper_slot == slot)
    }
}

/// The working context: the algebra, interned indecomposables and their
/// cached τ-translates and g-vectors.
#[derive(Clone, Debug)]
pub struct TauTilting {
    alg: BoundQuiver,
    registry: ModuleRegistry,
    taus: Vec<Representation<Rational>>,
    gs: Vec<Vec<i64>>,
}

impl TauTilting {
    pub fn new(alg: BoundQuiver, seed: u64) -> Self {
        TauTilting {
            alg,
            registry: ModuleRegistry::new(seed),
            taus: Vec::new(),
            gs: Vec::new(),
        }
    }

    pub fn algebra(&self) -> &BoundQuiver {
        &self.alg
    }

    pub fn n(&self) -> usize {
        self.alg.n()
    }

    pub fn registry(&self) -> &ModuleRegistry {
        &self.registry
    }

    pub fn seed(&self) -> u64 {
        self.registry.seed()
    }

    /// Handle of an indecomposable module.
    pub fn intern(&mut self, m: &Representation<Rational>) -> Result<usize> {
        let id = self.registry.intern(m)?;
        if id == self.taus.len() {
            self.taus.push(tau(&self.alg, m));
            self.gs.push(g_vector(&self.alg, m));
        }
        Ok(id)
    }

    pub fn module(&self, id: usize) -> &Representation<Rational> {
        self.registry.get(id)
    }

    pub fn tau_of(&self, id: usize) -> &Representation<Rational> {
        &self.taus[id]
    }

    pub fn g_of(&self, id: usize) -> &[i64] {
        &self.gs[id]
    }

    pub fn name(&self, id: usize) -> String {
        self.registry.describe(id)
    }

    pub fn m_module(&self, ids: &[usize]) -> Representation<Rational> {
        let parts: Vec<_> = ids.iter().map(|&i| self.module(i).clone()).collect();
        direct_sum_or_zero(self.alg.quiver(), &parts)
    }

    pub fn p_module(&self, vertices: &[usize]) -> Representation<Rational> {
        self.alg.projective_sum(vertices)
    }

    /// Sorts both parts canonically and removes repetitions.
    pub fn canonical(&self, mut m: Vec<usize>, mut p: Vec<usize>) -> TauPair {
        m.sort_by(|&a, &b| self.registry.cmp_ids(a, b));
        m.dedup();
        let dims: Vec<Vec<usize>> = (0..self.n()).map(|v| self.alg.projective(v).dims().to_vec()).collect();
        p.sort_by(|&a, &b| dims[b].cmp(&dims[a]).then(a.cmp(&b)));
        p.dedup();
        TauPair { m, p }
    }

    /// The pair `(A, 0)`.
    pub fn top(&mut self) -> Result<TauPair> {
        let ids = (0..self.n())
            .map(|v| {
                let p = self.alg.projective(v);
                self.intern(&p)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.canonical(ids, Vec::new()))
    }

    /// The pair `(0, A)`.
    pub fn bottom(&self) -> TauPair {
        self.canonical(Vec::new(), (0..self.n()).collect())
    }

    /// Interns the summands of `M` and `P`.
    pub fn pair_from_modules(&mut self, m: &Representation<Rational>, p: &Representation<Rational>) -> Result<TauPair> {
        let seed = self.seed();
        let ids = indecomposable_summands(m, seed)?
            .iter()
            .map(|x| self.intern(x))
            .collect::<Result<Vec<_>>>()?;
        let vertices = if p.is_zero() {
            Vec::new()
        } else {
            projective_vertices(&self.alg, p)?
        };
        Ok(self.canonical(ids, vertices))
    }

    pub fn is_rigid(&self, m: &[usize], p: &[usize]) -> Result<bool> {
        for &i in m {
            for &j in m {
                if hom_dim(self.module(i), self.tau_of(j))? != 0 {
                    return Ok(false);
                }
            }
            if p.iter().any(|&v| self.module(i).dims()[v] != 0) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_tau_tilting(&self, pair: &TauPair) -> Result<bool> {
        let mut m = pair.m.clone();
        m.dedup();
        let mut p = pair.p.clone();
        p.sort_unstable();
        p.dedup();
        Ok(m.len() + p.len() == self.n() && pair.len() == self.n() && self.is_rigid(&pair.m, &pair.p)?)
    }

    /// `G = (g^{M_1}, …, -g^{P_1}, …)`, checked to be unimodular.
    pub fn g_matrix(&self, pair: &TauPair) -> Result<IntMatrix> {
        let n = self.n();
        let mut columns: Vec<Vec<i64>> = pair.m.iter().map(|&i| self.g_of(i).to_vec()).collect();
        for &v in &pair.p {
            let mut e = vec![0; n];
            e[v] = -1;
            columns.push(e);
        }
        if columns.len() != n {
            return Err(Error::NotTauTilting(format!(
                "{} summands, expected {n}",
                columns.len()
            )));
        }
        let g = intmat::from_columns(&columns);
        let det = intmat::determinant(&g);
        if det.abs() != 1 {
            return Err(Error::Determinant(det));
        }
        Ok(g)
    }

    /// `C = (G^{-1})^T`.
    pub fn c_matrix(&self, pair: &TauPair) -> Result<IntMatrix> {
        let g = self.g_matrix(pair)?;
        Ok(intmat::inverse_transpose(&g).expect("unimodular"))
    }

    /// `X ∈ Fac(⊕ M_i)`.
    pub fn fac_contains(&self, m: &[usize], x: &Representation<Rational>) -> Result<bool> {
        if x.is_zero() {
            return Ok(true);
        }
        if m.is_empty() {
            return Ok(false);
        }
        Ok(trace(&self.m_module(m), x)?.module.dims() == x.dims())
    }

    /// The completion of an almost pair `(U, Q)` whose torsion class is
    /// `Fac U`: the Ext-projectives of `Fac U`.
    ///
    /// These are `U` together with the summands of the cokernel of the
    /// universal map `A -> U^m`.
    pub fn co_bongartz(&mut self, u: &[usize], q: &[usize], max_dim: usize) -> Result<TauPair> {
        let n = self.n();
        let seed = self.seed();
        let mut ids = u.to_vec();
        if !u.is_empty() {
            let modules: Vec<Representation<Rational>> = u.iter().map(|&i| self.module(i).clone()).collect();
            for v in 0..n {
                let mut copies = Vec::new();
                let mut generator = Vec::new();
                for x in &modules {
                    let d = x.dims()[v];
                    for c in 0..d {
                        copies.push(x.clone());
                        generator.extend((0..d).map(|k| Rational::from_i64(i64::from(k == c))));
                    }
                }
                if copies.is_empty() {
                    continue;
                }
                let target = direct_sum(&copies);
                let sub = target.generated_submodule(&[(v, generator)]);
                let coker = target.quotient(&sub).module;
                for piece in indecomposable_summands(&coker, seed)? {
                    if piece.total_dim() > max_dim {
                        return Err(Error::Truncated);
                    }
                    ids.push(self.intern(&piece)?);
                }
            }
        }
        let m = self.m_module(&ids);
        let p: Vec<usize> = (0..n).filter(|&v| m.dims()[v] == 0).collect();
        let pair = self.canonical(ids, p);
        if pair.len() != n {
            return Err(Error::TheoremViolation(format!(
                "completion of an almost pair has {} summands instead of {n}",
                pair.len()
            )));
        }
        debug_assert!(q.iter().all(|v| pair.p.contains(v)));
        Ok(pair)
    }

    /// The mutation of `pair` at slot `r` when it decreases the torsion
    /// class, with the slot of the new summand.
    pub fn downward_mutation(&mut self, pair: &TauPair, r: usize, max_dim: usize) -> Result<Option<(TauPair, usize)>> {
        let Slot::M(x) = pair.slot(r) else {
            return Ok(None);
        };
        let almost = pair.remove_summand(r);
        if self.fac_contains(&almost.m, &self.module(x).clone())? {
            return Ok(None);
        }
        let lower = self.co_bongartz(&almost.m, &almost.p, max_dim)?;
        let slot = (0..lower.len())
            .find(|&s| almost.position(lower.slot(s)).is_none())
            .ok_or_else(|| Error::TheoremViolation("mutation did not exchange a summand".into()))?;
        Ok(Some((lower, slot)))
    }

    /// The two completions of an almost τ-tilting pair, the one with the
    /// larger torsion class first.
    ///
    /// The smaller one is computed directly. The larger one adds a summand
    /// `X ∉ Fac U`, searched among registered, projective, simple and
    /// injective modules of dimension at most `max_dim`.
    pub fn complete_almost_pair(&mut self, almost: &TauPair, max_dim: usize) -> Result<(TauPair, TauPair)> {
        let smaller = self.co_bongartz(&almost.m, &almost.p, max_dim)?;
        let mut candidates: Vec<Representation<Rational>> = self.registry.modules().to_vec();
        candidates.extend(self.alg.projectives());
        candidates.extend(self.alg.simples());
        candidates.extend(self.alg.injectives());
        let total = candidates.len();
        for x in candidates {
            if x.total_dim() > max_dim || self.fac_contains(&almost.m, &x)? {
                continue;
            }
            if almost.p.iter().any(|&v| x.dims()[v] != 0) {
                continue;
            }
            let id = self.intern(&x)?;
            let mut m = almost.m.clone();
            m.push(id);
            if self.is_rigid(&m, &almost.p)? {
                let larger = self.canonical(m, almost.p.clone());
                return Ok((larger, smaller));
            }
        }
        Err(Error::NoCompletion {
            candidates: total,
            max_dim,
        })
    }

    /// Mutation at slot `r` in either direction, with the new slot.
    pub fn mutate(&mut self, pair: &TauPair, r: usize, max_dim: usize) -> Result<(TauPair, usize)> {
        if let Some(down) = self.downward_mutation(pair, r, max_dim)? {
            return Ok(down);
        }
        let almost = pair.remove_summand(r);
        let (larger, _) = self.complete_almost_pair(&almost, max_dim)?;
        let slot = (0..larger.len())
            .find(|&s| almost.position(larger.slot(s)).is_none())
            .expect("larger completion adds a summand");
        Ok((larger, slot))
    }

    /// Breadth-first closure of `(A, 0)` under mutations that shrink the
    /// torsion class. Each edge of the Hasse diagram is found from its upper
    /// end, so the whole graph is produced when the closure is finite.
    pub fn enumerate(&mut self, limits: Limits) -> Result<ExchangeGraph> {
        let top = self.top()?;
        let mut nodes = vec![top.clone()];
        let mut index: HashMap<TauPair, usize> = HashMap::from([(top, 0)]);
        let mut edges = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        let mut truncation: Option<String> = None;
        while let Some(k) = queue.pop_front() {
            let pair = nodes[k].clone();
            let c = self.c_matrix(&pair)?;
            for r in 0..pair.len() {
                let (lower, lower_slot) = match self.downward_mutation(&pair, r, limits.max_dim) {
                    Ok(Some(found)) => found,
                    Ok(None) => continue,
                    Err(Error::Truncated) => {
                        truncation.get_or_insert_with(|| format!("a summand exceeds dimension {}", limits.max_dim));
                        continue;
                    }
                    Err(e) => return Err(e),
                };
                let j = match index.get(&lower) {
                    Some(&j) => j,
                    None => {
                        if nodes.len() >= limits.max_nodes {
                            truncation.get_or_insert_with(|| format!("more than {} pairs", limits.max_nodes));
                            continue;
                        }
                        nodes.push(lower.clone());
                        index.insert(lower, nodes.len() - 1);
                        queue.push_back(nodes.len() - 1);
                        nodes.len() - 1
                    }
                };
                edges.push(Edge {
                    upper: k,
                    lower: j,
                    upper_slot: r,
                    lower_slot,
                    label: intmat::column(&c, r),
                });
            }
        }
        Ok(ExchangeGraph {
            nodes,
            edges,
            complete: truncation.is_none(),
            truncation,
        })
    }

    /// Reference to a registered module for JSON output.
    pub fn module_json(&self, id: usize) -> Value {
        json!({
            "id": id,
            "name": self.name(id),
            "dim_vector": self.module(id).dims(),
        })
    }

    pub fn pair_name(&self, pair: &TauPair) -> String {
        let m: Vec<String> = pair.m.iter().map(|&i| self.name(i)).collect();
        let p: Vec<String> = pair
            .p
            .iter()
            .map(|&v| {
                let id = self.registry.lookup(&self.alg.projective(v)).ok().flatten();
                id.map_or_else(|| format!("P{}", v + 1), |i| self.name(i))
            })
            .collect();
        let join = |xs: Vec<String>| if xs.is_empty() { "0".to_string() } else { xs.join(" + ") };
        format!("({}, {})", join(m), join(p))
    }

    pub fn pair_json(&self, pair: &TauPair) -> Result<Value> {
        Ok(json!({
            "name": self.pair_name(pair),
            "m_parts": pair.m.iter().map(|&i| self.module_json(i)).collect::<Vec<_>>(),
            "p_parts": pair.p.iter().map(|&v| json!({
                "vertex": v + 1,
                "dim_vector": self.alg.projective(v).dims(),
            })).collect::<Vec<_>>(),
            "g_matrix": self.g_matrix(pair)?,
            "c_matrix": self.c_matrix(pair)?,
        }))
    }
}

/// `Hom(M, τM) = 0` and `Hom(P, M) = 0`.
pub fn is_tau_rigid_pair(
    alg: &BoundQuiver,
    m: &Representation<Rational>,
    p: &Representation<Rational>,
) -> Result<bool> {
    if !p.is_zero() && !alg.is_projective(p) {
        return Err(Error::NotProjective(format!(
            "module with dimension vector {:?}",
            p.dims()
        )));
    }
    Ok(hom_dim(m, &tau(alg, m))? == 0 && hom_dim(p, m)? == 0)
}

/// Sign of each column: `Some(true)` positive, `Some(false)` negative,
/// `None` for a mixed or zero column.
pub fn sign_coherence(c: &IntMatrix) -> Vec<Option<bool>> {
    intmat::columns(c)
        .iter()
        .map(|col| {
            if intmat::is_zero_vector(col) {
                None
            } else if col.iter().all(|&x| x >= 0) {
                Some(true)
            } else if col.iter().all(|&x| x <= 0) {
                Some(false)
            } else {
                None
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a3_ab() -> TauTilting {
        let alg = BoundQuiver::parse("vertices 3\narrow a: 1 -> 2\narrow b: 2 -> 3\nrelation a*b\n").unwrap();
        TauTilting::new(alg, 0)
    }

    #[test]
    fn rigidity_examples() {
        let tt = a3_ab();
        let alg = tt.algebra().clone();
        let zero = Representation::zero(alg.quiver().clone());
        for i in 0..3 {
            assert!(is_tau_rigid_pair(&alg, &alg.projective(i), &zero).unwrap());
        }
        let row2 = direct_sum(&[alg.projective(0), alg.projective(1), alg.simple(1)]);
        assert!(is_tau_rigid_pair(&alg, &row2, &zero).unwrap());
        let s12 = direct_sum(&[alg.simple(0), alg.simple(1)]);
        assert!(!is_tau_rigid_pair(&alg, &s12, &zero).unwrap());
        assert!(matches!(
            is_tau_rigid_pair(&alg, &zero, &alg.simple(1)),
            Err(Error::NotProjective(_))
        ));
    }

    #[test]
    fn g_and_c_of_row_two() {
        let mut tt = a3_ab();
        let alg = tt.algebra().clone();
        let m = direct_sum(&[alg.projective(0), alg.projective(1), alg.simple(1)]);
        let zero = Representation::zero(alg.quiver().clone());
        let pair = tt.pair_from_modules(&m, &zero).unwrap();
        assert_eq!(
            tt.g_matrix(&pair).unwrap(),
            vec![vec![1, 0, 0], vec![0, 1, 1], vec![0, 0, -1]]
        );
        assert_eq!(
            tt.c_matrix(&pair).unwrap(),
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 1, -1]]
        );
        assert_eq!(
            sign_coherence(&tt.c_matrix(&pair).unwrap()),
            vec![Some(true), Some(true), Some(false)]
        );
        let top = tt.top().unwrap();
        assert_eq!(tt.g_matrix(&top).unwrap(), intmat::identity(3));
        let bottom = tt.bottom();
        assert_eq!(
            tt.c_matrix(&bottom).unwrap(),
            vec![vec![-1, 0, 0], vec![0, -1, 0], vec![0, 0, -1]]
        );
    }

    #[test]
    fn completions_of_almost_pairs() {
        let mut tt = a3_ab();
        let top = tt.top().unwrap();
        // removing P(3) = S(3)
        let almost = top.remove_summand(2);
        let (larger, smaller) = tt.complete_almost_pair(&almost, 30).unwrap();
        assert_eq!(larger, top);
        let names: Vec<String> = smaller.m.iter().map(|&i| tt.name(i)).collect();
        assert_eq!(names, vec!["1\\2", "2\\3", "2"]);
        // removing P(1)
        let almost = top.remove_summand(0);
        let (larger, smaller) = tt.complete_almost_pair(&almost, 30).unwrap();
        assert_eq!(larger, top);
        assert_eq!(smaller.p, vec![0]);

        let point = BoundQuiver::parse("vertices 1").unwrap();
        let mut tt = TauTilting::new(point, 0);
        let top = tt.top().unwrap();
        let (larger, smaller) = tt.complete_almost_pair(&top.remove_summand(0), 30).unwrap();
        assert_eq!(larger, top);
        assert_eq!(smaller, tt.bottom());
    }

    #[test]
    fn enumeration_counts() {
        let mut tt = a3_ab();
        let g = tt.enumerate(Limits::default()).unwrap();
        assert!(g.complete);
        assert_eq!(g.nodes.len(), 12);
        assert_eq!(g.edges.len(), 18);
        assert!(g.is_regular(3) && g.is_connected());

        for (text, nodes) in [
            ("vertices 1", 2),
            ("vertices 2\narrow a: 1 -> 2", 5),
            ("vertices 3\narrow a: 1 -> 2\narrow b: 2 -> 3", 14),
            (
                "vertices 2\narrow a: 1 -> 2\narrow b: 2 -> 1\nrelation a*b\nrelation b*a",
                6,
            ),
        ] {
            let mut tt = TauTilting::new(BoundQuiver::parse(text).unwrap(), 0);
            let g = tt.enumerate(Limits::default()).unwrap();
            assert!(g.complete, "{text}");
            assert_eq!(g.nodes.len(), nodes, "{text}");
            assert!(g.is_regular(tt.n()));
        }
    }

    #[test]
    fn kronecker_is_truncated() {
        let alg = BoundQuiver::parse("vertices 2\narrow a: 1 -> 2\narrow b: 1 -> 2").unwrap();
        let mut tt = TauTilting::new(alg, 0);
        let g = tt
            .enumerate(Limits {
                max_nodes: 8,
                max_dim: 12,
            })
            .unwrap();
        assert!(!g.complete);
        assert!(g.nodes.len() <= 8);
    }

    #[test]
    fn mutation_is_an_involution() {
        let mut tt = a3_ab();
        let g = tt.enumerate(Limits::default()).unwrap();
        for pair in &g.nodes {
            for r in 0..3 {
                let (other, s) = tt.mutate(pair, r, 30).unwrap();
                assert_ne!(&other, pair);
                let (back, _) = tt.mutate(&other, s, 30).unwrap();
                assert_eq!(&back, pair);
            }
        }
    }
}
